#pragma once

#include "parabolica/parabolic.hpp"

#include <utility>
#include <vector>

namespace parabolica {

/// Invariant Kahler class phi([omega_0]) = sum_{alpha in Delta \ I} c_alpha varpi_alpha,
/// coefficients listed in complement order.
struct KahlerClass {
    RationalVector coeffs;
    /// Set when the form is 2 pi times the stored class (e.g. the Kahler-Einstein
    /// form rho_0). Stored rationals never carry the factor.
    bool two_pi_scaled = false;
};

/// Throws NotKahler unless every coefficient is positive; DimensionMismatch on a wrong length.
void validate_kahler(const KahlerClass& omega, const ParabolicData& p);

/// The class as a weight supported on Delta \ I.
Weight kahler_weight(const KahlerClass& omega, const ParabolicData& p);

struct EndomorphismSpectrum {
    /// One eigenvalue per beta in Phi_I^+, in Phi_I^+ order.
    std::vector<std::pair<RootVector, Rational>> eigenvalues;

    Rational trace() const;
};

/// q_beta(omega_0^{-1} o psi) = <psi, beta^vee> / <omega_0, beta^vee>.
/// psi must be supported on Delta \ I.
EndomorphismSpectrum endo_eigenvalues(const Weight& psi, const KahlerClass& omega0, const ParabolicData& p);

/// Lambda_{omega_0}(Omega_alpha) for the generator attached to simple root `alpha`
/// (0-based index, must lie outside I).
Rational omega_trace(std::size_t alpha, const KahlerClass& omega0, const ParabolicData& p);

/// (sqrt(-1)/2pi) Lambda_{omega_0} F(h_0) for the invariant metric on the line
/// bundle with weight lambda(L).
Rational hym_constant(const Weight& line_weight, const KahlerClass& omega0, const ParabolicData& p);

/// Class of the invariant Kahler-Einstein metric: coefficients <delta_P, alpha^vee>.
KahlerClass einstein_class(const ParabolicData& p);

}  // namespace parabolica
