#pragma once

#include "parabolica/rational.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace parabolica {

/// Flat torus R^d / (L_1 Z x ... x L_d Z) with its real Fourier eigenbasis.
struct ModelManifold {
    std::size_t dim = 1;
    std::vector<double> sides;

    double volume() const;
};

/// Throws InvalidArgument on dim 0, a side count different from dim, or a non-positive side.
ModelManifold flat_torus(std::size_t dim, double side = 6.283185307179586);
ModelManifold flat_torus(std::vector<double> sides);

struct Mode {
    enum class Kind { Constant, Cos, Sin };
    Kind kind = Kind::Constant;
    /// Wavevector k; the mode is built from 2 pi k.x / L. Zero for the constant mode,
    /// otherwise the first nonzero entry is positive.
    std::vector<long> wavevector;
    double eigenvalue = 0.0;
};

/// The first `count` orthonormal modes, ordered by eigenvalue, then wavevector
/// (lexicographic), with the cosine before the sine of the same wavevector.
std::vector<Mode> enumerate_modes(const ModelManifold& m, std::size_t count);

/// phi_j(x): 1/sqrt(V) for the constant mode, sqrt(2/V) cos or sin otherwise.
double evaluate_mode(const Mode& mode, const ModelManifold& m, std::span<const double> x);

/// Sum with a fixed pairwise tree (deterministic order).
double pairwise_sum(std::span<const double> v);

/// f = sum_j c_j phi_j with a declared L^2 mass tail_sq carried by modes beyond coeffs.
struct SpectralFunction {
    std::vector<double> coeffs;
    double tail_sq = 0.0;

    double l2_norm_sq() const;
};

/// Keeps modes 0..n; everything beyond (including the declared tail) is dropped.
SpectralFunction truncate(const SpectralFunction& f, std::size_t n);

/// ||f - f_n||_{L^2} for every n in [0, coeffs.size()), summed from the tail inwards.
std::vector<double> residual_curve(const SpectralFunction& f);

struct GalerkinSolution {
    std::size_t n = 0;
    /// psi_coeffs[j] = c_j / lambda_j for j in 1..n; psi_coeffs[0] is the absent mean mode and is 0.
    std::vector<double> psi_coeffs;
    /// ||f - f_n||_{L^2}.
    double residual_l2 = 0.0;
    /// (sum_j (1 + lambda_j^2) psi_j^2)^{1/2}.
    double h2_norm = 0.0;
    /// Constant mean curvature of the reference metric, c_0 / sqrt(V).
    double reference_curvature = 0.0;
};

/// Galerkin truncation of Delta psi = f - mean(f) on the first n modes.
GalerkinSolution solve_weight(const SpectralFunction& f, std::size_t n, const ModelManifold& m);

/// Coefficients of K(L, h_n) on modes 0..n: mode 0 from the reference metric,
/// mode j from lambda_j psi_j.
std::vector<double> mean_curvature_coefficients(const GalerkinSolution& sol, const SpectralFunction& f,
                                                const ModelManifold& m);

/// C in the Young-inequality step: max(1 + |kappa| eps, |kappa| / (4 eps)) with
/// eps = 1 / (2 |kappa|); 1 when kappa = 0.
double young_constant(double kappa);

/// (1 + C) sum_{m < j <= n} (1 / lambda_j^2 + 1) c_j^2. Requires n > m.
double h2_cauchy_gap(const SpectralFunction& f, std::size_t n, std::size_t m, const ModelManifold& manifold,
                     double kappa);

/// ||psi_n - psi_m||^2_{H^2} computed from the two Galerkin solutions.
double h2_spectral_gap(const SpectralFunction& f, std::size_t n, std::size_t m, const ModelManifold& manifold);

/// 2 pi hym_c - profile_mean.
double compatibility_constant(double profile_mean, const Rational& hym_c);

/// nu = 2 pi n mu / vol for a user-supplied volume.
double hermite_einstein_constant(double mu, std::size_t complex_dim, double volume);

/// d(x, Y)^{-s} + offset on a torus of real dimension ambient_dim, with Y the
/// coordinate subtorus {x_1 = ... = x_codim = 0} (a point when codim = ambient_dim).
struct SingularProfile {
    std::size_t ambient_dim = 1;
    std::size_t codim = 1;
    double s = 0.5;
    double offset = 0.0;

    bool l2_integrable() const { return s < 0.5 * static_cast<double>(codim); }
};

/// Average of the profile over the torus (midpoint rule, dyadic grids, Richardson).
/// Requires s < codim (L^1).
double profile_mean(const SingularProfile& p, const ModelManifold& m);

/// ||profile||^2_{L^2}. Throws NotL2 when s >= codim / 2.
double profile_l2_norm_sq(const SingularProfile& p, const ModelManifold& m);

/// Coefficients c_0..c_n of the profile; the tail records the rest of the
/// quadrature L^2 mass. Throws NotL2 when s >= codim / 2.
SpectralFunction distance_profile_coefficients(const SingularProfile& p, const ModelManifold& m, std::size_t n);

struct IntegrabilityResult {
    enum class Certificate { Converged, Diverged, Undetermined };
    /// s < k / 2.
    bool finite = false;
    Certificate certificate = Certificate::Undetermined;
    /// int_{eps}^{1} r^{k - 2s - 1} dr at the last cutoff examined.
    double tube_integral = 0.0;
    /// Number of decades eps = 10^{-decades} reached.
    std::size_t decades = 0;

    bool agrees() const;
};

/// Radial model of int d(x,Y)^{-2s}: int_eps^1 r^{k-2s-1} dr as eps shrinks decade by decade.
IntegrabilityResult integrability_check(std::size_t codim, double s);

}  // namespace parabolica
