#include "parabolica/spectral.hpp"

#include "parabolica/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <tuple>

namespace parabolica {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void check_manifold(const ModelManifold& m) {
    if (m.dim == 0) throw InvalidArgument("torus dimension must be positive");
    if (m.sides.size() != m.dim) throw InvalidArgument("torus needs one side length per dimension");
    for (double l : m.sides)
        if (!(l > 0.0) || !std::isfinite(l)) throw InvalidArgument("torus side lengths must be positive");
}

}  // namespace

double ModelManifold::volume() const {
    double v = 1.0;
    for (double l : sides) v *= l;
    return v;
}

ModelManifold flat_torus(std::size_t dim, double side) { return flat_torus(std::vector<double>(dim, side)); }

ModelManifold flat_torus(std::vector<double> sides) {
    ModelManifold m{sides.size(), std::move(sides)};
    check_manifold(m);
    return m;
}

std::vector<Mode> enumerate_modes(const ModelManifold& m, std::size_t count) {
    check_manifold(m);
    std::vector<Mode> out;
    if (count == 0) return out;
    out.push_back(Mode{Mode::Kind::Constant, std::vector<long>(m.dim, 0), 0.0});
    if (count == 1) return out;

    // Equal sides give an exact integer ordering key |k|^2.
    const bool cubic = std::all_of(m.sides.begin(), m.sides.end(), [&](double l) { return l == m.sides[0]; });
    auto key = [&](const std::vector<long>& k) {
        double s = 0.0;
        if (cubic) {
            long n2 = 0;
            for (long ki : k) n2 += ki * ki;
            return static_cast<double>(n2);
        }
        for (std::size_t i = 0; i < k.size(); ++i) s += (k[i] / m.sides[i]) * (k[i] / m.sides[i]);
        return s;
    };

    for (long radius = 1;; radius *= 2) {
        // Every wavevector outside the box [-R, R]^d has key at least `bound`.
        double bound = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m.dim; ++i) {
            const double r1 = static_cast<double>(radius + 1);
            bound = std::min(bound, cubic ? r1 * r1 : (r1 / m.sides[i]) * (r1 / m.sides[i]));
        }

        std::vector<std::pair<double, std::vector<long>>> found;
        std::vector<long> k(m.dim, -radius);
        for (;;) {
            auto first = std::find_if(k.begin(), k.end(), [](long v) { return v != 0; });
            if (first != k.end() && *first > 0) {
                const double kk = key(k);
                if (kk < bound) found.emplace_back(kk, k);
            }
            std::size_t i = m.dim;
            while (i > 0 && k[i - 1] == radius) k[--i] = -radius;
            if (i == 0) break;
            ++k[i - 1];
        }
        if (1 + 2 * found.size() < count) continue;

        std::sort(found.begin(), found.end());
        for (const auto& [kk, wv] : found) {
            double lambda = 0.0;
            for (std::size_t i = 0; i < m.dim; ++i) {
                const double w = two_pi * static_cast<double>(wv[i]) / m.sides[i];
                lambda += w * w;
            }
            for (auto kind : {Mode::Kind::Cos, Mode::Kind::Sin}) {
                if (out.size() == count) return out;
                out.push_back(Mode{kind, wv, lambda});
            }
        }
        return out;
    }
}

double evaluate_mode(const Mode& mode, const ModelManifold& m, std::span<const double> x) {
    if (x.size() != m.dim) throw DimensionMismatch("point dimension differs from the torus dimension");
    const double v = m.volume();
    if (mode.kind == Mode::Kind::Constant) return 1.0 / std::sqrt(v);
    double arg = 0.0;
    for (std::size_t i = 0; i < m.dim; ++i) arg += two_pi * static_cast<double>(mode.wavevector[i]) * x[i] / m.sides[i];
    const double norm = std::sqrt(2.0 / v);
    return norm * (mode.kind == Mode::Kind::Cos ? std::cos(arg) : std::sin(arg));
}

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t h = v.size() / 2;
    return pairwise_sum(v.first(h)) + pairwise_sum(v.subspan(h));
}

namespace {

double sum_sq(std::span<const double> v) {
    std::vector<double> sq(v.size());
    std::transform(v.begin(), v.end(), sq.begin(), [](double x) { return x * x; });
    return pairwise_sum(sq);
}

double coeff(const SpectralFunction& f, std::size_t j) { return j < f.coeffs.size() ? f.coeffs[j] : 0.0; }

}  // namespace

double SpectralFunction::l2_norm_sq() const { return sum_sq(coeffs) + tail_sq; }

SpectralFunction truncate(const SpectralFunction& f, std::size_t n) {
    SpectralFunction out;
    out.coeffs.assign(n + 1, 0.0);
    for (std::size_t j = 0; j <= n && j < f.coeffs.size(); ++j) out.coeffs[j] = f.coeffs[j];
    return out;
}

std::vector<double> residual_curve(const SpectralFunction& f) {
    std::vector<double> r(f.coeffs.size());
    double acc = f.tail_sq;
    for (std::size_t j = f.coeffs.size(); j-- > 0;) {
        r[j] = std::sqrt(acc);
        acc += f.coeffs[j] * f.coeffs[j];
    }
    return r;
}

GalerkinSolution solve_weight(const SpectralFunction& f, std::size_t n, const ModelManifold& m) {
    const auto modes = enumerate_modes(m, n + 1);
    GalerkinSolution sol;
    sol.n = n;
    sol.psi_coeffs.assign(n + 1, 0.0);
    std::vector<double> h2_terms(n);
    for (std::size_t j = 1; j <= n; ++j) {
        const double lambda = modes[j].eigenvalue;
        ensure(lambda > 0.0, "non-constant mode with zero eigenvalue");
        sol.psi_coeffs[j] = coeff(f, j) / lambda;
        h2_terms[j - 1] = (1.0 + lambda * lambda) * sol.psi_coeffs[j] * sol.psi_coeffs[j];
    }
    sol.h2_norm = std::sqrt(pairwise_sum(h2_terms));
    const std::span<const double> all(f.coeffs);
    const double tail = n + 1 < all.size() ? sum_sq(all.subspan(n + 1)) : 0.0;
    sol.residual_l2 = std::sqrt(tail + f.tail_sq);
    sol.reference_curvature = coeff(f, 0) / std::sqrt(m.volume());
    return sol;
}

std::vector<double> mean_curvature_coefficients(const GalerkinSolution& sol, const SpectralFunction& f,
                                                const ModelManifold& m) {
    const auto modes = enumerate_modes(m, sol.n + 1);
    std::vector<double> k(sol.n + 1);
    k[0] = sol.reference_curvature * std::sqrt(m.volume());
    (void)f;
    for (std::size_t j = 1; j <= sol.n; ++j) k[j] = modes[j].eigenvalue * sol.psi_coeffs[j];
    return k;
}

double young_constant(double kappa) {
    const double a = std::abs(kappa);
    if (a == 0.0) return 1.0;
    const double eps = 1.0 / (2.0 * a);
    return std::max(1.0 + a * eps, a / (4.0 * eps));
}

double h2_cauchy_gap(const SpectralFunction& f, std::size_t n, std::size_t m, const ModelManifold& manifold,
                     double kappa) {
    if (n <= m) throw InvalidArgument("h2_cauchy_gap needs n > m");
    const auto modes = enumerate_modes(manifold, n + 1);
    std::vector<double> terms;
    terms.reserve(n - m);
    for (std::size_t j = m + 1; j <= n; ++j) {
        const double l = modes[j].eigenvalue;
        const double c = coeff(f, j);
        terms.push_back((1.0 / (l * l) + 1.0) * c * c);
    }
    return (1.0 + young_constant(kappa)) * pairwise_sum(terms);
}

double h2_spectral_gap(const SpectralFunction& f, std::size_t n, std::size_t m, const ModelManifold& manifold) {
    if (n <= m) throw InvalidArgument("h2_spectral_gap needs n > m");
    const auto modes = enumerate_modes(manifold, n + 1);
    const auto big = solve_weight(f, n, manifold);
    const auto small = solve_weight(f, m, manifold);
    std::vector<double> terms(n);
    for (std::size_t j = 1; j <= n; ++j) {
        const double l = modes[j].eigenvalue;
        const double d = big.psi_coeffs[j] - (j <= m ? small.psi_coeffs[j] : 0.0);
        terms[j - 1] = (1.0 + l * l) * d * d;
    }
    return pairwise_sum(terms);
}

double compatibility_constant(double profile_mean, const Rational& hym_c) {
    return two_pi * hym_c.get_d() - profile_mean;
}

double hermite_einstein_constant(double mu, std::size_t complex_dim, double volume) {
    if (!(volume > 0.0)) throw InvalidArgument("volume must be positive");
    return two_pi * static_cast<double>(complex_dim) * mu / volume;
}

// ---------------------------------------------------------------------------
// Profile quadrature.
//
// The periodic distance to Y only involves the first k = codim coordinates and
// is even in each of them, so every integral reduces to the cube [0, L_i/2]^k
// with a point singularity at the corner. The midpoint rule there has an error
// expansion in h^{k-a} and h^2 for the integrand r^{-a}; three dyadic grids and
// two Richardson steps remove both leading terms.

namespace {

constexpr std::size_t max_quadrature_codim = 8;

std::size_t base_grid(std::size_t k, std::size_t freqs) {
    if (k == 1) {
        std::size_t m = 64;
        while (m < 16 * freqs) m *= 2;
        return std::max<std::size_t>(m, 4096);
    }
    // (4M)^k <= 2^22 points on the finest grid.
    const std::size_t e = 22 / k;
    return e >= 3 ? std::size_t{1} << (e - 2) : 2;
}

// out[q_1..q_k] = h^k sum_x r(x)^{-a} prod cos(2 pi q_i x_i / L_i) over the
// midpoint grid with M cells per axis on [0, L_i/2]^k.
std::vector<double> half_cube_sums(const std::vector<double>& sides, double a, std::size_t M, std::size_t Q) {
    const std::size_t k = sides.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= M;

    std::vector<double> vals(total);
    std::vector<std::size_t> idx(k, 0);
    for (std::size_t p = 0; p < total; ++p) {
        double r2 = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            const double x = (static_cast<double>(idx[i]) + 0.5) * sides[i] / (2.0 * static_cast<double>(M));
            r2 += x * x;
        }
        vals[p] = a == 0.0 ? 1.0 : std::pow(r2, -0.5 * a);
        for (std::size_t i = k; i-- > 0;) {
            if (++idx[i] < M) break;
            idx[i] = 0;
        }
    }

    // cos(pi q (2i+1) / (2M)) with the argument reduced exactly mod 4M.
    std::vector<double> tw(Q * M);
    const std::size_t period = 4 * M;
    for (std::size_t q = 0; q < Q; ++q)
        for (std::size_t i = 0; i < M; ++i) {
            const std::size_t t = (q * (2 * i + 1)) % period;
            tw[q * M + i] = std::cos(std::numbers::pi * static_cast<double>(t) / (2.0 * static_cast<double>(M)));
        }

    // Contract the leading axis and append the frequency axis at the end; after
    // k passes the axes are back in their original order.
    std::size_t rest = total / M;
    std::size_t lead = M;
    for (std::size_t pass = 0; pass < k; ++pass) {
        std::vector<double> next(Q * rest, 0.0);
        for (std::size_t i = 0; i < lead; ++i) {
            const double* row = &vals[i * rest];
            for (std::size_t q = 0; q < Q; ++q) {
                const double w = tw[q * M + i];
                double* dst = &next[q * rest];
                for (std::size_t r = 0; r < rest; ++r) dst[r] += w * row[r];
            }
        }
        // next is laid out [q][rest]; move q to the end.
        vals.assign(rest * Q, 0.0);
        for (std::size_t q = 0; q < Q; ++q)
            for (std::size_t r = 0; r < rest; ++r) vals[r * Q + q] = next[q * rest + r];
        rest = rest / M * Q;
    }

    double cell = 1.0;
    for (double l : sides) cell *= l / (2.0 * static_cast<double>(M));
    for (double& v : vals) v *= cell;
    return vals;
}

double richardson(double i0, double i1, double i2, double p1, double p2) {
    const double f1 = std::pow(2.0, p1);
    const double ra = (f1 * i1 - i0) / (f1 - 1.0);
    const double rb = (f1 * i2 - i1) / (f1 - 1.0);
    const double f2 = std::pow(2.0, p2);
    return (f2 * rb - ra) / (f2 - 1.0);
}

// Extrapolated int_{[0,L/2]^k} r^{-a} prod cos(...) for all q in [0, Q)^k.
std::vector<double> half_cube_integrals(const std::vector<double>& sides, double a, std::size_t Q) {
    const std::size_t k = sides.size();
    if (k > max_quadrature_codim)
        throw InvalidArgument("profile quadrature supports codimension up to " + std::to_string(max_quadrature_codim));
    const std::size_t M = base_grid(k, Q);
    const auto g0 = half_cube_sums(sides, a, M, Q);
    const auto g1 = half_cube_sums(sides, a, 2 * M, Q);
    const auto g2 = half_cube_sums(sides, a, 4 * M, Q);

    double p1 = static_cast<double>(k) - a;
    double p2 = 2.0;
    if (a == 0.0 || std::abs(p1 - p2) < 1e-6) std::tie(p1, p2) = std::pair{2.0, 4.0};
    std::vector<double> out(g0.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = richardson(g0[i], g1[i], g2[i], p1, p2);
    return out;
}

void check_profile(const SingularProfile& p, const ModelManifold& m) {
    check_manifold(m);
    if (p.ambient_dim != m.dim) throw DimensionMismatch("profile dimension differs from the torus dimension");
    if (p.codim == 0 || p.codim > p.ambient_dim)
        throw InvalidArgument("codimension must lie in 1..ambient dimension");
    if (!(p.s >= 0.0) || !std::isfinite(p.s)) throw InvalidArgument("exponent s must be non-negative");
    if (!std::isfinite(p.offset)) throw InvalidArgument("offset must be finite");
}

std::vector<double> singular_sides(const SingularProfile& p, const ModelManifold& m) {
    return {m.sides.begin(), m.sides.begin() + static_cast<std::ptrdiff_t>(p.codim)};
}

// int over the torus of d(x, Y)^{-a}.
double torus_integral(const SingularProfile& p, const ModelManifold& m, double a) {
    const auto sides = singular_sides(p, m);
    double transverse = 1.0;
    for (std::size_t i = p.codim; i < m.dim; ++i) transverse *= m.sides[i];
    return std::ldexp(half_cube_integrals(sides, a, 1)[0], static_cast<int>(p.codim)) * transverse;
}

}  // namespace

double profile_mean(const SingularProfile& p, const ModelManifold& m) {
    check_profile(p, m);
    if (p.s >= static_cast<double>(p.codim)) throw InvalidArgument("profile is not integrable (s >= codim)");
    return torus_integral(p, m, p.s) / m.volume() + p.offset;
}

double profile_l2_norm_sq(const SingularProfile& p, const ModelManifold& m) {
    check_profile(p, m);
    if (!p.l2_integrable()) throw NotL2("d(x,Y)^{-s} is not square integrable for s >= codim/2");
    const double v = m.volume();
    return torus_integral(p, m, 2.0 * p.s) + 2.0 * p.offset * torus_integral(p, m, p.s) + p.offset * p.offset * v;
}

SpectralFunction distance_profile_coefficients(const SingularProfile& p, const ModelManifold& m, std::size_t n) {
    check_profile(p, m);
    if (!p.l2_integrable()) throw NotL2("d(x,Y)^{-s} is not square integrable for s >= codim/2");
    const auto modes = enumerate_modes(m, n + 1);

    long qmax = 0;
    for (const auto& md : modes)
        for (std::size_t i = 0; i < p.codim; ++i) qmax = std::max(qmax, std::abs(md.wavevector[i]));
    const std::size_t Q = static_cast<std::size_t>(qmax) + 1;
    const auto sides = singular_sides(p, m);
    const auto table = half_cube_integrals(sides, p.s, Q);

    const double v = m.volume();
    double transverse = 1.0;
    for (std::size_t i = p.codim; i < m.dim; ++i) transverse *= m.sides[i];
    const double scale = std::ldexp(transverse, static_cast<int>(p.codim));

    SpectralFunction f;
    f.coeffs.assign(n + 1, 0.0);
    for (std::size_t j = 0; j <= n; ++j) {
        const auto& md = modes[j];
        // Sine modes vanish: the profile is even in every coordinate.
        if (md.kind == Mode::Kind::Sin) continue;
        const bool transverse_wave = std::any_of(md.wavevector.begin() + static_cast<std::ptrdiff_t>(p.codim),
                                                 md.wavevector.end(), [](long w) { return w != 0; });
        if (transverse_wave) continue;
        std::size_t flat = 0;
        for (std::size_t i = 0; i < p.codim; ++i) flat = flat * Q + static_cast<std::size_t>(std::abs(md.wavevector[i]));
        const double integral = scale * table[flat];
        if (md.kind == Mode::Kind::Constant)
            f.coeffs[j] = integral / std::sqrt(v) + p.offset * std::sqrt(v);
        else
            f.coeffs[j] = std::sqrt(2.0 / v) * integral;
    }
    f.tail_sq = std::max(0.0, profile_l2_norm_sq(p, m) - sum_sq(f.coeffs));
    return f;
}

// ---------------------------------------------------------------------------

bool IntegrabilityResult::agrees() const {
    return (finite && certificate == Certificate::Converged) || (!finite && certificate == Certificate::Diverged);
}

IntegrabilityResult integrability_check(std::size_t codim, double s) {
    if (codim == 0) throw InvalidArgument("codimension must be positive");
    if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument("exponent s must be positive");
    const double k = static_cast<double>(codim);
    const double p = k - 2.0 * s - 1.0;

    // One decade D = int_{0.1}^{1} r^p dr by midpoint rule and Richardson (smooth integrand).
    auto midpoint = [p](std::size_t cells) {
        const double h = 0.9 / static_cast<double>(cells);
        std::vector<double> v(cells);
        for (std::size_t i = 0; i < cells; ++i) v[i] = std::pow(0.1 + (static_cast<double>(i) + 0.5) * h, p);
        return h * pairwise_sum(v);
    };
    const double decade = richardson(midpoint(4096), midpoint(8192), midpoint(16384), 2.0, 4.0);

    // int_{10^{-(j+1)}}^{10^{-j}} r^p dr = q^j D.
    const double q = std::pow(10.0, -(p + 1.0));
    IntegrabilityResult res;
    res.finite = s < 0.5 * k;
    constexpr std::size_t max_decades = std::size_t{1} << 21;
    double total = 0.0;
    double term = decade;
    for (std::size_t m = 1; m <= max_decades; ++m) {
        total += term;
        res.decades = m;
        res.tube_integral = total;
        if (total > 1e6 * decade) {
            res.certificate = IntegrabilityResult::Certificate::Diverged;
            return res;
        }
        term *= q;
        if (term <= 1e-12 * total) {
            res.certificate = IntegrabilityResult::Certificate::Converged;
            return res;
        }
    }
    return res;
}

}  // namespace parabolica
