#pragma once

#include "parabolica/parabolic.hpp"

#include <map>
#include <optional>

namespace parabolica {

/// Homogeneous bundle G x_P W(lambda) for an irreducible P-module with
/// highest weight lambda (integral, dominant on I).
struct BundleSpec {
    ParabolicData parabolic;
    Weight highest_weight;
};

/// Validates integrality and Levi dominance.
BundleSpec make_bundle_spec(ParabolicData p, Weight highest_weight);

/// First Chern class data of a homogeneous bundle.
struct ChernData {
    Integer rank;
    /// lambda(E), supported on Delta \ I.
    Weight lambda_E;
    /// a_alpha(E) for alpha in I (ordered as levi_indices), solving C_I^T a = r lambda_s|_I.
    RationalVector cramer_a;
};

struct SplittingReport {
    ChernData chern;
    /// det(C_I(lambda_s, alpha)) / det(C_I) for alpha in I; equals cramer_a / rank.
    RationalVector cramer_ratio;
    /// beta in Delta \ I -> sum_{alpha in I} ratio_alpha <alpha, beta^vee>.
    std::map<std::size_t, Rational> criterion_values;
    bool splits = false;
    std::optional<Weight> lambda_L0;
    std::optional<Weight> lambda_E0_check;
};

/// Dimension of the irreducible Levi module with highest weight lambda_s,
/// by the Weyl dimension formula over <I>^+. lambda_s must vanish off I
/// (InvalidArgument) and be non-negative on I (NotDominant).
Integer weyl_dim(const ParabolicData& p, const Weight& lambda_s);

/// Cramer determinants det(C_I(lambda_s, alpha)) for alpha in I, by literal row replacement.
RationalVector cramer_determinants(const ParabolicData& p, const Weight& lambda_s);

/// a solving C_I^T a = b, b = r * lambda_s|_I. Computed by Cramer's rule and by
/// direct elimination; the two routes are required to agree.
RationalVector cramer_coefficients(const BundleSpec& spec);

ChernData chern_weight(const BundleSpec& spec);

/// lambda(T^{1,0} X_P) = delta_P.
Weight canonical_weight(const ParabolicData& p);

SplittingReport splitting_report(const BundleSpec& spec);

/// Embeds degrees against the curves P^1_alpha, alpha in Delta \ I (in
/// complement order), as a weight in Lambda_P.
Weight line_bundle_weight(const std::vector<long>& degrees, const ParabolicData& p);

}  // namespace parabolica
