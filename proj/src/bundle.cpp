#include "parabolica/bundle.hpp"

#include "parabolica/errors.hpp"

namespace parabolica {

BundleSpec make_bundle_spec(ParabolicData p, Weight highest_weight) {
    // decompose_weight carries the integrality and dominance checks.
    (void)decompose_weight(highest_weight, p);
    return BundleSpec{std::move(p), std::move(highest_weight)};
}

Integer weyl_dim(const ParabolicData& p, const Weight& lambda_s) {
    if (lambda_s.size() != p.rank()) throw DimensionMismatch("weight length differs from the rank");
    for (auto j : p.complement_indices())
        if (lambda_s.fw[j] != 0)
            throw InvalidArgument("Levi highest weight " + to_string(lambda_s) + " is not supported on I");
    for (auto i : p.levi_indices())
        if (lambda_s.fw[i] < 0)
            throw NotDominant("Levi highest weight " + to_string(lambda_s) + " is not dominant");

    const auto& rs = p.root_system();
    Weight rho_I = Weight::zero(p.rank());
    for (auto i : p.levi_indices()) rho_I.fw[i] = 1;
    const Weight shifted = lambda_s + rho_I;

    Rational dim = 1;
    for (const auto& alpha : p.levi_roots()) dim *= pairing(shifted, alpha, rs) / pairing(rho_I, alpha, rs);
    dim.canonicalize();
    ensure(is_integer(dim), "Weyl dimension formula produced a non-integer");
    return dim.get_num();
}

RationalVector cramer_determinants(const ParabolicData& p, const Weight& lambda_s) {
    const auto& levi = p.levi_indices();
    const auto base = to_rational(p.levi_cartan());
    RationalVector dets;
    dets.reserve(levi.size());
    for (std::size_t a = 0; a < levi.size(); ++a) {
        auto m = base;
        for (std::size_t b = 0; b < levi.size(); ++b) m[a][b] = lambda_s.fw[levi[b]];
        dets.push_back(determinant(m));
    }
    return dets;
}

namespace {

RationalVector cramer_ratio(const ParabolicData& p, const Weight& lambda_s) {
    auto r = cramer_determinants(p, lambda_s);
    for (auto& x : r) {
        x /= Rational(p.levi_cartan_det());
        x.canonicalize();
    }
    return r;
}

}  // namespace

RationalVector cramer_coefficients(const BundleSpec& spec) {
    const auto& p = spec.parabolic;
    const auto split = decompose_weight(spec.highest_weight, p);
    const Rational r(weyl_dim(p, split.lambda_s));

    RationalVector via_cramer = cramer_ratio(p, split.lambda_s);
    for (auto& x : via_cramer) x *= r;

    RationalVector b;
    for (auto i : p.levi_indices()) b.push_back(r * split.lambda_s.fw[i]);
    const auto via_solve = solve(transpose(to_rational(p.levi_cartan())), b);
    ensure(via_solve.has_value(), "Levi Cartan matrix is singular");
    ensure(*via_solve == via_cramer, "Cramer's rule and direct solve disagree");
    return via_cramer;
}

ChernData chern_weight(const BundleSpec& spec) {
    const auto& p = spec.parabolic;
    const auto& c = p.root_system().cartan();
    const auto& levi = p.levi_indices();
    const auto split = decompose_weight(spec.highest_weight, p);

    ChernData out;
    out.rank = weyl_dim(p, split.lambda_s);
    out.cramer_a = cramer_coefficients(spec);
    const Rational r(out.rank);

    out.lambda_E = Weight::zero(p.rank());
    for (auto beta : p.complement_indices()) {
        Rational v = 0;
        for (std::size_t a = 0; a < levi.size(); ++a) v += out.cramer_a[a] * c[levi[a]][beta];
        out.lambda_E.fw[beta] = v - r * split.lambda_c.fw[beta];
    }

    // r lambda + lambda(E) = sum_{alpha in I} a_alpha alpha.
    const auto residue = weight_in_root_basis(r * spec.highest_weight + out.lambda_E, p.root_system());
    for (std::size_t i = 0, a = 0; i < p.rank(); ++i) {
        if (p.in_levi(i))
            ensure(residue[i] == out.cramer_a[a++], "residue identity fails on I");
        else
            ensure(residue[i] == 0, "residue identity fails off I");
    }
    for (const auto& x : out.cramer_a) {
        Integer den = x.get_den();
        ensure(p.levi_cartan_det() % den == 0, "denominator of a_alpha does not divide det(C_I)");
    }
    return out;
}

Weight canonical_weight(const ParabolicData& p) { return p.delta_p(); }

SplittingReport splitting_report(const BundleSpec& spec) {
    const auto& p = spec.parabolic;
    const auto& c = p.root_system().cartan();
    const auto& levi = p.levi_indices();
    const auto split = decompose_weight(spec.highest_weight, p);

    SplittingReport rep;
    rep.chern = chern_weight(spec);
    rep.cramer_ratio = cramer_ratio(p, split.lambda_s);

    rep.splits = true;
    for (auto beta : p.complement_indices()) {
        Rational v = 0;
        for (std::size_t a = 0; a < levi.size(); ++a) v += rep.cramer_ratio[a] * c[levi[a]][beta];
        v.canonicalize();
        rep.splits = rep.splits && is_integer(v);
        rep.criterion_values.emplace(beta, v);
    }

    const Rational r(rep.chern.rank);
    const Weight theta = rep.chern.lambda_E / r;
    ensure(theta.is_integral() == rep.splits, "determinant criterion and integrality of lambda(E)/r disagree");
    if (rep.splits) {
        rep.lambda_L0 = theta;
        rep.lambda_E0_check = rep.chern.lambda_E - r * theta;
        ensure(rep.lambda_E0_check->is_zero(), "c1(E0) does not vanish");
    }
    return rep;
}

Weight line_bundle_weight(const std::vector<long>& degrees, const ParabolicData& p) {
    const auto& comp = p.complement_indices();
    if (degrees.size() != comp.size())
        throw DimensionMismatch("expected " + std::to_string(comp.size()) + " degrees (one per node outside I), got " +
                                std::to_string(degrees.size()));
    Weight w = Weight::zero(p.rank());
    for (std::size_t k = 0; k < comp.size(); ++k) w.fw[comp[k]] = degrees[k];
    return w;
}

}  // namespace parabolica
