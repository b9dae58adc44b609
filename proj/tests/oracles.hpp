#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's linear algebra or root machinery.

#include "parabolica/rootsys.hpp"

#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

using parabolica::Family;
using parabolica::IntMatrix;
using parabolica::Rational;
using parabolica::RationalMatrix;
using parabolica::RationalVector;
using parabolica::SimpleLieType;

inline Rational dot(const RationalVector& a, const RationalVector& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline RationalVector eps(std::size_t dim, std::initializer_list<std::pair<std::size_t, Rational>> terms) {
    RationalVector v(dim);
    for (const auto& [i, c] : terms) v[i - 1] += c;
    return v;
}

/// Simple roots as explicit vectors in Euclidean space, Bourbaki numbering.
inline std::vector<RationalVector> simple_roots_eps(const SimpleLieType& t) {
    const auto n = static_cast<std::size_t>(t.rank);
    std::vector<RationalVector> r;
    const Rational h(1, 2);
    switch (t.family) {
        case Family::A:
            for (std::size_t i = 1; i <= n; ++i) r.push_back(eps(n + 1, {{i, 1}, {i + 1, -1}}));
            break;
        case Family::B:
            for (std::size_t i = 1; i < n; ++i) r.push_back(eps(n, {{i, 1}, {i + 1, -1}}));
            r.push_back(eps(n, {{n, 1}}));
            break;
        case Family::C:
            for (std::size_t i = 1; i < n; ++i) r.push_back(eps(n, {{i, 1}, {i + 1, -1}}));
            r.push_back(eps(n, {{n, 2}}));
            break;
        case Family::D:
            for (std::size_t i = 1; i < n; ++i) r.push_back(eps(n, {{i, 1}, {i + 1, -1}}));
            r.push_back(eps(n, {{n - 1, 1}, {n, 1}}));
            break;
        case Family::E: {
            std::vector<RationalVector> e8;
            e8.push_back(eps(8, {{1, h}, {8, h}, {2, -h}, {3, -h}, {4, -h}, {5, -h}, {6, -h}, {7, -h}}));
            e8.push_back(eps(8, {{1, 1}, {2, 1}}));
            for (std::size_t i = 1; i <= 6; ++i) e8.push_back(eps(8, {{i + 1, 1}, {i, -1}}));
            r.assign(e8.begin(), e8.begin() + static_cast<std::ptrdiff_t>(n));
            break;
        }
        case Family::F:
            r.push_back(eps(4, {{2, 1}, {3, -1}}));
            r.push_back(eps(4, {{3, 1}, {4, -1}}));
            r.push_back(eps(4, {{4, 1}}));
            r.push_back(eps(4, {{1, h}, {2, -h}, {3, -h}, {4, -h}}));
            break;
        case Family::G:
            r.push_back(eps(3, {{1, 1}, {2, -1}}));
            r.push_back(eps(3, {{1, -2}, {2, 1}, {3, 1}}));
            break;
    }
    return r;
}

inline RationalMatrix gram(const std::vector<RationalVector>& roots) {
    RationalMatrix g(roots.size(), RationalVector(roots.size()));
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = 0; j < roots.size(); ++j) g[i][j] = dot(roots[i], roots[j]);
    return g;
}

/// C_ij = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j).
inline IntMatrix cartan_from_gram(const RationalMatrix& g) {
    IntMatrix c(g.size(), std::vector<int>(g.size()));
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) {
            Rational v = 2 * g[i][j] / g[j][j];
            if (v.get_den() != 1) throw std::logic_error("non-integral Cartan entry");
            c[i][j] = static_cast<int>(v.get_num().get_si());
        }
    return c;
}

/// Plain Gaussian elimination with row swaps, no fraction-free tricks.
inline RationalVector gauss_solve(RationalMatrix a, RationalVector b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw std::logic_error("singular system");
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const Rational f = a[r][col] / a[col][col];
            if (f == 0) continue;
            for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
            b[r] -= f * b[col];
        }
    }
    RationalVector x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
        x[i] = s / a[i][i];
    }
    return x;
}

/// Cofactor (Laplace) expansion; fine for the small matrices used in tests.
inline Rational laplace_det(const RationalMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    Rational d = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j] == 0) continue;
        RationalMatrix minor;
        for (std::size_t i = 1; i < n; ++i) {
            RationalVector row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(row);
        }
        d += (j % 2 ? -1 : 1) * m[0][j] * laplace_det(minor);
    }
    return d;
}

/// Euclidean vector of lambda = sum fw_i varpi_i: solves (v, alpha_j^vee) = fw_j
/// inside the span of the simple roots.
inline RationalVector weight_vector(const RationalVector& fw, const std::vector<RationalVector>& simple) {
    const auto g = gram(simple);
    // v = sum_k x_k alpha_k with 2 (v, alpha_j) / (alpha_j, alpha_j) = fw_j.
    RationalMatrix a(simple.size(), RationalVector(simple.size()));
    RationalVector b(simple.size());
    for (std::size_t j = 0; j < simple.size(); ++j) {
        for (std::size_t k = 0; k < simple.size(); ++k) a[j][k] = 2 * g[k][j] / g[j][j];
        b[j] = fw[j];
    }
    const auto x = gauss_solve(a, b);
    RationalVector v(simple.front().size());
    for (std::size_t k = 0; k < simple.size(); ++k)
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += x[k] * simple[k][i];
    return v;
}

inline RationalVector root_vector(const std::vector<int>& coords, const std::vector<RationalVector>& simple) {
    RationalVector v(simple.front().size());
    for (std::size_t k = 0; k < simple.size(); ++k)
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += coords[k] * simple[k][i];
    return v;
}

/// <lambda, beta^vee> computed with explicit vectors.
inline Rational coroot_pairing(const RationalVector& fw, const std::vector<int>& beta,
                               const std::vector<RationalVector>& simple) {
    const auto v = weight_vector(fw, simple);
    const auto b = root_vector(beta, simple);
    return 2 * dot(v, b) / dot(b, b);
}

inline std::vector<SimpleLieType> types_up_to(int max_rank, bool exceptional = true) {
    std::vector<SimpleLieType> out;
    for (int n = 1; n <= max_rank; ++n) out.push_back({Family::A, n});
    for (int n = 2; n <= max_rank; ++n) out.push_back({Family::B, n});
    for (int n = 3; n <= max_rank; ++n) out.push_back({Family::C, n});
    for (int n = 4; n <= max_rank; ++n) out.push_back({Family::D, n});
    if (exceptional) {
        for (int n = 6; n <= std::min(8, max_rank); ++n) out.push_back({Family::E, n});
        if (max_rank >= 4) out.push_back({Family::F, 4});
        out.push_back({Family::G, 2});
    }
    return out;
}

inline std::size_t positive_root_count(const SimpleLieType& t) {
    const auto n = static_cast<std::size_t>(t.rank);
    switch (t.family) {
        case Family::A: return n * (n + 1) / 2;
        case Family::B:
        case Family::C: return n * n;
        case Family::D: return n * (n - 1);
        case Family::E: return n == 6 ? 36 : n == 7 ? 63 : 120;
        case Family::F: return 24;
        case Family::G: return 6;
    }
    return 0;
}

// dim of the GL_N module with highest weight given by the partition `parts`.
inline Rational hook_content_dim(const std::vector<long>& parts, long N) {
    Rational d = 1;
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (long j = 0; j < parts[i]; ++j) {
            long arm = parts[i] - j - 1;
            long leg = 0;
            for (std::size_t k = i + 1; k < parts.size(); ++k)
                if (parts[k] > j) ++leg;
            d *= Rational(N + j - static_cast<long>(i), arm + leg + 1);
        }
    return d;
}

struct Oracle {
    parabolica::Weight lambda_E;
    RationalVector a;
};

// lambda(E) = -r * (orthogonal projection of lambda away from span(I)), by explicit vectors.
inline Oracle projection_oracle(const SimpleLieType& t, const std::vector<std::size_t>& levi, const parabolica::Weight& lambda,
                         const parabolica::Integer& rank) {
    const auto simple = simple_roots_eps(t);
    const auto v = weight_vector(lambda.fw, simple);
    const Rational r(rank);
    RationalVector y;
    if (!levi.empty()) {
        RationalMatrix g(levi.size(), RationalVector(levi.size()));
        RationalVector b(levi.size());
        for (std::size_t i = 0; i < levi.size(); ++i) {
            b[i] = dot(v, simple[levi[i]]);
            for (std::size_t j = 0; j < levi.size(); ++j) g[i][j] = dot(simple[levi[i]], simple[levi[j]]);
        }
        y = gauss_solve(g, b);
    }
    auto perp = v;
    for (std::size_t i = 0; i < levi.size(); ++i)
        for (std::size_t k = 0; k < perp.size(); ++k) perp[k] -= y[i] * simple[levi[i]][k];
    Oracle o;
    o.lambda_E = parabolica::Weight::zero(simple.size());
    for (std::size_t j = 0; j < simple.size(); ++j)
        o.lambda_E.fw[j] = -r * 2 * dot(perp, simple[j]) / dot(simple[j], simple[j]);
    for (auto& x : y) o.a.push_back(r * x);
    return o;
}


/// Fixed-seed generator shared by the randomized suites.
inline std::mt19937& rng() {
    static std::mt19937 g(20240611u);
    return g;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

}  // namespace oracle
