#include "parabolica/curvature.hpp"

#include "parabolica/errors.hpp"

namespace parabolica {

void validate_kahler(const KahlerClass& omega, const ParabolicData& p) {
    if (omega.coeffs.size() != p.complement_indices().size())
        throw DimensionMismatch("Kahler class needs " + std::to_string(p.complement_indices().size()) +
                                " coefficients, got " + std::to_string(omega.coeffs.size()));
    for (const auto& c : omega.coeffs)
        if (c <= 0) throw NotKahler("Kahler coefficient " + to_string(c) + " is not positive");
}

Weight kahler_weight(const KahlerClass& omega, const ParabolicData& p) {
    validate_kahler(omega, p);
    Weight w = Weight::zero(p.rank());
    const auto& comp = p.complement_indices();
    for (std::size_t k = 0; k < comp.size(); ++k) w.fw[comp[k]] = omega.coeffs[k];
    return w;
}

Rational EndomorphismSpectrum::trace() const {
    Rational t = 0;
    for (const auto& [beta, q] : eigenvalues) t += q;
    return t;
}

namespace {

void require_off_levi(const Weight& w, const ParabolicData& p, const char* what) {
    if (!is_supported_off_levi(w, p))
        throw NotSupportedOffLevi(std::string(what) + " " + to_string(w) + " has a nonzero coordinate on I");
}

// sum_{beta in Phi_I^+} <w, beta^vee> / <omega, beta^vee>
Rational ratio_sum(const Weight& w, const Weight& omega, const ParabolicData& p) {
    const auto& rs = p.root_system();
    Rational s = 0;
    for (const auto& beta : p.phi_I_plus()) s += pairing(w, beta, rs) / pairing(omega, beta, rs);
    s.canonicalize();
    return s;
}

}  // namespace

EndomorphismSpectrum endo_eigenvalues(const Weight& psi, const KahlerClass& omega0, const ParabolicData& p) {
    const Weight omega = kahler_weight(omega0, p);
    require_off_levi(psi, p, "class");
    const auto& rs = p.root_system();
    EndomorphismSpectrum spec;
    spec.eigenvalues.reserve(p.phi_I_plus().size());
    for (const auto& beta : p.phi_I_plus()) {
        const Rational den = pairing(omega, beta, rs);
        ensure(den > 0, "Kahler class pairs non-positively with a root of Phi_I^+");
        Rational q = pairing(psi, beta, rs) / den;
        q.canonicalize();
        spec.eigenvalues.emplace_back(beta, q);
    }
    return spec;
}

Rational omega_trace(std::size_t alpha, const KahlerClass& omega0, const ParabolicData& p) {
    if (alpha >= p.rank()) throw IndexOutOfRange("simple root index out of range");
    if (p.in_levi(alpha)) throw InvalidArgument("Omega_alpha is defined only for alpha outside I");
    return ratio_sum(Weight::fundamental(p.rank(), alpha), kahler_weight(omega0, p), p);
}

Rational hym_constant(const Weight& line_weight, const KahlerClass& omega0, const ParabolicData& p) {
    const Weight omega = kahler_weight(omega0, p);
    require_off_levi(line_weight, p, "line bundle weight");
    if (!line_weight.is_integral()) throw NotIntegral("line bundle weight " + to_string(line_weight) + " is not integral");
    return ratio_sum(line_weight, omega, p);
}

KahlerClass einstein_class(const ParabolicData& p) {
    KahlerClass k;
    for (auto j : p.complement_indices()) k.coeffs.push_back(p.delta_p().fw[j]);
    k.two_pi_scaled = true;
    return k;
}

}  // namespace parabolica
