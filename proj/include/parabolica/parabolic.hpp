#pragma once

#include "parabolica/rootsys.hpp"

#include <utility>
#include <vector>

namespace parabolica {

/// Standard parabolic P_I attached to a proper subset I of the simple roots.
/// Indices are 0-based throughout the library.
class ParabolicData {
public:
    const RootSystem& root_system() const { return rs_; }
    std::size_t rank() const { return rs_.rank(); }

    /// I, sorted.
    const std::vector<std::size_t>& levi_indices() const { return levi_; }
    /// Delta \ I, sorted.
    const std::vector<std::size_t>& complement_indices() const { return complement_; }
    bool in_levi(std::size_t i) const;

    /// C_I = (<alpha, beta^vee>)_{alpha, beta in I}.
    const IntMatrix& levi_cartan() const { return levi_cartan_; }
    const Integer& levi_cartan_det() const { return levi_det_; }

    /// Phi_I^+: positive roots with support meeting Delta \ I.
    const std::vector<RootVector>& phi_I_plus() const { return phi_I_plus_; }
    /// <I>^+: positive roots supported inside I.
    const std::vector<RootVector>& levi_roots() const { return levi_roots_; }

    /// delta_P = sum of Phi_I^+, cached at construction.
    const Weight& delta_p() const { return delta_p_; }

    friend ParabolicData build_parabolic(RootSystem rs, std::vector<std::size_t> levi);

private:
    explicit ParabolicData(RootSystem rs) : rs_(std::move(rs)) {}

    RootSystem rs_;
    std::vector<std::size_t> levi_;
    std::vector<std::size_t> complement_;
    std::vector<bool> in_levi_;
    IntMatrix levi_cartan_;
    Integer levi_det_;
    std::vector<RootVector> phi_I_plus_;
    std::vector<RootVector> levi_roots_;
    Weight delta_p_;
};

/// Throws FullSetNotParabolic when I = Delta, IndexOutOfRange on a bad index.
/// Duplicate indices are rejected with InvalidArgument.
ParabolicData build_parabolic(RootSystem rs, std::vector<std::size_t> levi);

/// delta_P recomputed from the root list (cross-check path for the cached value).
Weight sum_of_roots(const std::vector<RootVector>& roots, const RootSystem& rs);

struct WeightSplit {
    Weight lambda_s;  ///< supported on I
    Weight lambda_c;  ///< supported on Delta \ I
};

/// Coordinate projection lambda = lambda_s + lambda_c. Requires lambda integral
/// (NotIntegral) and non-negative on I (NotDominantForLevi).
WeightSplit decompose_weight(const Weight& lambda, const ParabolicData& p);

bool is_dominant_for_levi(const Weight& lambda, const ParabolicData& p);

/// True when every coordinate on I vanishes.
bool is_supported_off_levi(const Weight& lambda, const ParabolicData& p);

}  // namespace parabolica
