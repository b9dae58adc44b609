// Acceptance gate: one line per criterion, nonzero exit if any criterion fails.

#include "oracles.hpp"

#include "parabolica/bundle.hpp"
#include "parabolica/cli.hpp"
#include "parabolica/curvature.hpp"
#include "parabolica/errors.hpp"
#include "parabolica/spectral.hpp"

#include <boost/math/special_functions/trigamma.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

using namespace parabolica;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects failed checks without stopping at the first one.
class Checker {
public:
    void check(bool cond, const std::string& what) {
        ++count_;
        if (!cond && failures_.size() < 5) failures_.push_back(what);
        if (!cond) ++failed_;
    }
    Outcome outcome(const std::string& summary) const {
        Outcome o{failed_ == 0, summary + ", " + std::to_string(count_) + " checks"};
        if (failed_) {
            o.detail += "; " + std::to_string(failed_) + " failed:";
            for (const auto& f : failures_) o.detail += " [" + f + "]";
        }
        return o;
    }

private:
    std::size_t count_ = 0;
    std::size_t failed_ = 0;
    std::vector<std::string> failures_;
};

ParabolicData flag(Family f, int n, std::vector<std::size_t> levi_one_based) {
    for (auto& i : levi_one_based) --i;
    return build_parabolic(build_root_system({f, n}), levi_one_based);
}

SplittingReport split(const ParabolicData& p, std::vector<long> w) {
    return splitting_report(make_bundle_spec(p, Weight::from_ints(w)));
}

std::vector<std::size_t> subset(unsigned mask, std::size_t n) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) s.push_back(i);
    return s;
}

// 1. Pinned fixtures, exact.
Outcome pinned_fixtures() {
    Checker c;
    const auto gr = flag(Family::A, 3, {1, 3});
    const auto q5 = flag(Family::B, 3, {2, 3});
    const auto s8 = flag(Family::D, 4, {1, 2});

    const auto uni = split(gr, {1, 0, 0});
    c.check(uni.chern.cramer_a == RationalVector{1, 0}, "universal a");
    c.check(uni.chern.lambda_E == Weight::from_ints({0, -1, 0}), "universal lambda");
    c.check(uni.criterion_values.at(1) == Rational(-1, 2), "universal criterion");
    c.check(!uni.splits, "universal splits");

    const auto spin = split(q5, {0, 0, 1});
    c.check(spin.chern.cramer_a == RationalVector{2, 4}, "spinor a");
    c.check(spin.chern.lambda_E == Weight::from_ints({-2, 0, 0}), "spinor lambda");
    c.check(spin.criterion_values.at(0) == Rational(-1, 2), "spinor criterion");
    c.check(!spin.splits, "spinor splits");

    const auto sq = split(q5, {0, 0, 2});
    c.check(sq.chern.rank == 10, "S2 rank");
    c.check(sq.chern.cramer_a == RationalVector{10, 20}, "S2 a");
    c.check(sq.criterion_values.at(0) == -1, "S2 criterion");
    c.check(sq.splits, "S2 splits");
    c.check(sq.lambda_L0 && *sq.lambda_L0 == Weight::from_ints({-1, 0, 0}), "S2 L0");

    c.check(gr.delta_p() == Weight::from_ints({0, 4, 0}), "Gr2 delta_P in weights");
    c.check(weight_in_root_basis(gr.delta_p(), gr.root_system()) == RationalVector{2, 4, 2}, "Gr2 delta_P in roots");
    const auto tan = split(gr, {1, -2, 1});
    c.check(tan.chern.lambda_E == gr.delta_p(), "tangent lambda = delta_P");
    c.check(tan.chern.lambda_E.fw[1] / Rational(tan.chern.rank) == 1, "tangent 4/4");
    c.check(tan.splits, "tangent splits");

    c.check(s8.levi_cartan_det() == 3, "Spin(8) det C_I");
    for (long m1 = 0; m1 <= 3; ++m1)
        for (long m2 = 0; m2 <= 3; ++m2) {
            const auto r = split(s8, {m1, m2, 0, 0});
            const Rational want(-(m1 + 2 * m2), 3);
            c.check(r.criterion_values.at(2) == want && r.criterion_values.at(3) == want, "Spin(8) criterion");
        }
    c.check(split(s8, {1, 0, 0, 0}).criterion_values.at(2) == Rational(-1, 3), "Spin(8) fail -1/3");
    c.check(!split(s8, {1, 0, 0, 0}).splits, "Spin(8) fail verdict");
    c.check(split(s8, {1, 1, 0, 0}).criterion_values.at(2) == -1, "Spin(8) pass -1");
    c.check(split(s8, {1, 1, 0, 0}).splits, "Spin(8) pass verdict");

    const auto suite = cli::run_paper_suite();
    c.check(suite.size() >= 10, "CLI fixture battery");
    return c.outcome("5 pinned examples + " + std::to_string(suite.size()) + " CLI fixtures");
}

// 2. Structural suites, exact.
Outcome structural() {
    Checker c;
    for (const auto& t : oracle::types_up_to(8)) {
        const auto rs = build_root_system(t);
        c.check(rs.positive_roots().size() == oracle::positive_root_count(t), "root count " + to_string(t));
        Weight sum = Weight::zero(rs.rank());
        for (const auto& r : rs.positive_roots()) sum += root_as_weight(r, rs);
        c.check(sum == Rational(2) * weyl_vector(rs), "sum = 2 rho " + to_string(t));
    }

    std::size_t subsets = 0;
    for (const auto& t : oracle::types_up_to(6)) {
        const auto rs = build_root_system(t);
        const auto n = rs.rank();
        for (unsigned mask = 0; mask + 1 < (1u << n); ++mask) {
            const auto p = build_parabolic(rs, subset(mask, n));
            bool ok = true;
            for (std::size_t i = 0; i < n; ++i) ok = ok && (p.in_levi(i) ? p.delta_p().fw[i] == 0 : p.delta_p().fw[i] > 0);
            c.check(ok, "delta_P sign " + to_string(t) + " mask " + std::to_string(mask));
            ++subsets;
        }
    }

    const auto types = oracle::types_up_to(8);
    std::map<std::string, RootSystem> cache;
    std::size_t specs = 0;
    while (specs < 600) {
        const auto& t = types[static_cast<std::size_t>(oracle::uniform(0, static_cast<long>(types.size()) - 1))];
        auto it = cache.find(to_string(t));
        if (it == cache.end()) it = cache.emplace(to_string(t), build_root_system(t)).first;
        const auto& rs = it->second;
        const auto n = rs.rank();
        std::vector<std::size_t> levi;
        for (std::size_t i = 0; i < n; ++i)
            if (oracle::uniform(0, 2) > 0) levi.push_back(i);
        if (levi.size() == n) continue;
        const auto p = build_parabolic(rs, levi);
        std::vector<long> w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = p.in_levi(i) ? oracle::uniform(0, 2) : oracle::uniform(-3, 3);
        const auto spec = make_bundle_spec(p, Weight::from_ints(w));
        const auto rep = splitting_report(spec);
        const std::string tag = to_string(t) + " " + to_string(spec.highest_weight);

        const auto o = oracle::projection_oracle(t, levi, spec.highest_weight, rep.chern.rank);
        c.check(rep.chern.lambda_E == o.lambda_E, "lambda(E) oracle " + tag);
        const bool b = (o.lambda_E / Rational(rep.chern.rank)).is_integral();
        bool det_ok = true;
        for (const auto& [beta, v] : rep.criterion_values) det_ok = det_ok && is_integer(v);
        c.check(b == det_ok && det_ok == rep.splits, "(B)<=>(C) " + tag);

        // Cramer's rule against the system solved by the oracle.
        c.check(rep.chern.cramer_a == o.a, "Cramer vs solve " + tag);

        std::vector<long> mu(n, 0), w2(w);
        for (auto j : p.complement_indices()) mu[j] = oracle::uniform(-2, 2);
        for (std::size_t i = 0; i < n; ++i) w2[i] += mu[i];
        const auto rep2 = splitting_report(make_bundle_spec(p, Weight::from_ints(w2)));
        bool eq = rep2.splits == rep.splits && rep2.criterion_values == rep.criterion_values &&
                  rep2.chern.lambda_E == rep.chern.lambda_E - Rational(rep.chern.rank) * Weight::from_ints(mu);
        if (rep.splits) eq = eq && *rep2.lambda_L0 == *rep.lambda_L0 - Weight::from_ints(mu);
        c.check(eq, "twist equivariance " + tag);
        ++specs;
    }
    return c.outcome(std::to_string(types.size()) + " types, " + std::to_string(subsets) + " parabolics, " +
                     std::to_string(specs) + " random specs");
}

// 3. Weyl dimensions, exact.
Outcome weyl_dims() {
    Checker c;
    c.check(weyl_dim(flag(Family::A, 3, {1, 3}), Weight::from_ints({1, 0, 0})) == 2, "universal 2");
    c.check(weyl_dim(flag(Family::B, 3, {2, 3}), Weight::from_ints({0, 0, 1})) == 4, "spinor 4");
    c.check(weyl_dim(flag(Family::B, 3, {2, 3}), Weight::from_ints({0, 0, 2})) == 10, "S2 spinor 10");
    const auto sl2 = flag(Family::A, 2, {1});
    for (long m = 0; m <= 20; ++m) c.check(weyl_dim(sl2, Weight::from_ints({m, 0})) == m + 1, "sl2 m=" + std::to_string(m));
    c.check(weyl_dim(flag(Family::A, 3, {1, 2}), Weight::from_ints({1, 1, 0})) == 8, "A2 adjoint 8");
    return c.outcome("pinned modules, sl2 series, A2 adjoint");
}

// 4. Curvature identities, exact.
Outcome curvature() {
    Checker c;
    std::size_t parabolics = 0;
    for (const auto& t : oracle::types_up_to(5)) {
        const auto rs = build_root_system(t);
        const auto n = rs.rank();
        for (unsigned mask = 0; mask + 1 < (1u << n); ++mask) {
            const auto p = build_parabolic(rs, subset(mask, n));
            ++parabolics;
            // Grid of Kahler classes: coefficients from {1, 2, 1/3} cycled across the complement.
            const Rational grid[] = {1, 2, Rational(1, 3)};
            for (int g = 0; g < 3; ++g) {
                KahlerClass k;
                for (std::size_t i = 0; i < p.complement_indices().size(); ++i) k.coeffs.push_back(grid[(g + i) % 3]);
                for (auto a : p.complement_indices())
                    c.check(endo_eigenvalues(Weight::fundamental(n, a), k, p).trace() == omega_trace(a, k, p),
                            "trace " + to_string(t));
            }
            const auto ke = einstein_class(p);
            bool ones = true;
            for (const auto& [beta, q] : endo_eigenvalues(kahler_weight(ke, p), ke, p).eigenvalues) ones = ones && q == 1;
            c.check(ones, "Einstein q = 1 " + to_string(t));
        }
    }
    c.check(hym_constant(Weight::from_ints({1}), KahlerClass{{1}}, flag(Family::A, 1, {})) == 1, "P1 hym O(1)");
    return c.outcome(std::to_string(parabolics) + " parabolics");
}

// 5. Spectral module, floating.
Outcome spectral() {
    Checker c;
    std::mt19937 g(99u);
    auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g); };

    // Exact-mode matching.
    double worst = 0.0;
    for (std::size_t d : {1u, 2u, 3u}) {
        const auto m = flat_torus(d, uni(1.0, 7.0));
        for (int trial = 0; trial < 5; ++trial) {
            SpectralFunction f;
            for (std::size_t j = 0; j < 400; ++j) f.coeffs.push_back(uni(-1, 1) / (1.0 + j));
            for (std::size_t n : {1u, 10u, 100u, 399u}) {
                const auto sol = solve_weight(f, n, m);
                const auto k = mean_curvature_coefficients(sol, f, m);
                for (std::size_t j = 0; j <= n; ++j)
                    worst = std::max(worst, std::abs(k[j] - f.coeffs[j]) / std::abs(f.coeffs[j]));
            }
        }
    }
    c.check(worst <= 1e-12, "mode matching " + std::to_string(worst));

    // Residual tail for c_j = 1/j.
    const auto circle = flat_torus(1);
    const std::size_t N = 4000;
    SpectralFunction h;
    h.coeffs.assign(N + 1, 0.0);
    for (std::size_t j = 1; j <= N; ++j) h.coeffs[j] = 1.0 / static_cast<double>(j);
    double worst_tail = 0.0;
    for (std::size_t n = 10; n <= 1000; ++n) {
        const double closed = std::sqrt(boost::math::trigamma(n + 1.0) - boost::math::trigamma(N + 1.0));
        worst_tail = std::max(worst_tail, std::abs(solve_weight(h, n, circle).residual_l2 - closed) / closed);
    }
    c.check(worst_tail <= 1e-10, "residual tail " + std::to_string(worst_tail));

    // Bochner H2 bound.
    std::size_t bounds = 0;
    for (std::size_t d : {1u, 2u}) {
        const auto m = flat_torus(d, uni(0.5, 8.0));
        for (int trial = 0; trial < 8; ++trial) {
            SpectralFunction f;
            for (std::size_t j = 0; j < 200; ++j) f.coeffs.push_back(uni(-1, 1) / std::pow(1.0 + j, uni(0, 1.5)));
            for (double kappa : {0.0, 1.0, -1.0})
                for (auto [mm, n] : {std::pair{0u, 1u}, {3u, 17u}, {10u, 100u}, {50u, 199u}}) {
                    c.check(h2_spectral_gap(f, n, mm, m) <= h2_cauchy_gap(f, n, mm, m, kappa), "H2 bound");
                    ++bounds;
                }
        }
    }

    // Integrability dichotomy.
    std::size_t grid = 0;
    for (std::size_t k = 1; k <= 12; ++k)
        for (int i = 1; i <= static_cast<int>(5 * k) + 10; ++i) {
            const double s = i / 10.0;
            const auto r = integrability_check(k, s);
            c.check(r.finite == (2 * s < static_cast<double>(k)) && r.agrees(),
                    "dichotomy k=" + std::to_string(k) + " s=" + std::to_string(s));
            ++grid;
        }
    c.check(integrability_check(10, 4.9).finite && integrability_check(10, 4.9).agrees(), "Q5 s=4.9");
    c.check(!integrability_check(10, 5.0).finite && integrability_check(10, 5.0).agrees(), "Q5 s=5");

    // Compatibility constant against the polar quadrature oracle.
    const double pi = std::numbers::pi;
    const int q = 1000000;
    const double hq = (pi / 4) / q;
    double acc = 0.0;
    for (int i = 0; i < q; ++i) acc += std::pow(pi / std::cos((i + 0.5) * hq), 1.5);
    const double oracle_mean = 8.0 * (acc * hq / 1.5) / (4.0 * pi * pi);
    const double c0 = compatibility_constant(profile_mean(SingularProfile{2, 2, 0.5, 0.0}, flat_torus(2)), Rational(1));
    const double c0_err = std::abs(c0 - (2 * pi - oracle_mean));
    c.check(c0_err <= 1e-6, "C0 error " + std::to_string(c0_err));

    std::ostringstream s;
    s.precision(2);
    s << "mode mismatch " << worst << ", tail error " << worst_tail << ", " << bounds << " H2 bounds, " << grid
      << " (k,s) points, C0 error " << c0_err;
    return c.outcome(s.str());
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
        double time_limit;
    };
    const Criterion criteria[] = {
        {1, "fixture battery", pinned_fixtures, 1.0},
        {2, "structural property suites", structural, 0.0},
        {3, "Weyl dimension oracles", weyl_dims, 0.0},
        {4, "curvature identities", curvature, 0.0},
        {5, "spectral module", spectral, 30.0},
    };
    int failed = 0;
    for (const auto& cr : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = cr.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (cr.time_limit > 0.0 && secs >= cr.time_limit) {
            o.pass = false;
            o.detail += "; exceeded " + std::to_string(cr.time_limit) + " s";
        }
        std::printf("[%s] criterion %d: %s (%.3f s) %s\n", o.pass ? "PASS" : "FAIL", cr.id, cr.name, secs,
                    o.detail.c_str());
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
