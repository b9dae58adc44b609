#include "parabolica/rootsys.hpp"

#include "parabolica/errors.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace parabolica {

void validate(const SimpleLieType& t) {
    const int n = t.rank;
    bool ok = false;
    switch (t.family) {
        case Family::A: ok = n >= 1; break;
        case Family::B:
        case Family::C: ok = n >= 2; break;
        case Family::D: ok = n >= 3; break;
        case Family::E: ok = n >= 6 && n <= 8; break;
        case Family::F: ok = n == 4; break;
        case Family::G: ok = n == 2; break;
        default: throw InvalidType("unknown family");
    }
    if (!ok) throw InvalidType("rank " + std::to_string(n) + " is out of range for family " +
                               std::string(1, static_cast<char>(t.family)));
}

SimpleLieType parse_lie_type(std::string_view text) {
    if (text.size() < 2) throw InvalidType("expected a Dynkin type such as A3 or E8, got '" + std::string(text) + "'");
    const char f = static_cast<char>(std::toupper(static_cast<unsigned char>(text.front())));
    if (std::string_view("ABCDEFG").find(f) == std::string_view::npos)
        throw InvalidType("unknown family '" + std::string(1, text.front()) + "'");
    const auto digits = text.substr(1);
    if (digits.size() > 3 || !std::all_of(digits.begin(), digits.end(),
                                          [](unsigned char c) { return std::isdigit(c) != 0; }))
        throw InvalidType("bad rank in Dynkin type '" + std::string(text) + "'");
    SimpleLieType t{static_cast<Family>(f), std::stoi(std::string(digits))};
    validate(t);
    return t;
}

std::string to_string(const SimpleLieType& t) {
    return std::string(1, static_cast<char>(t.family)) + std::to_string(t.rank);
}

std::size_t expected_positive_root_count(const SimpleLieType& t) {
    validate(t);
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

int RootVector::height() const { return std::accumulate(coords.begin(), coords.end(), 0); }

Weight Weight::fundamental(std::size_t rank, std::size_t i) {
    if (i >= rank) throw IndexOutOfRange("fundamental weight index out of range");
    Weight w = zero(rank);
    w.fw[i] = 1;
    return w;
}

Weight Weight::from_ints(const std::vector<long>& coords) {
    RationalVector v;
    v.reserve(coords.size());
    for (long c : coords) v.emplace_back(c);
    return Weight(std::move(v));
}

bool Weight::is_zero() const {
    return std::all_of(fw.begin(), fw.end(), [](const Rational& q) { return q == 0; });
}

Weight& Weight::operator+=(const Weight& o) {
    if (o.size() != size()) throw DimensionMismatch("weight lengths differ");
    for (std::size_t i = 0; i < fw.size(); ++i) fw[i] += o.fw[i];
    return *this;
}

Weight& Weight::operator-=(const Weight& o) {
    if (o.size() != size()) throw DimensionMismatch("weight lengths differ");
    for (std::size_t i = 0; i < fw.size(); ++i) fw[i] -= o.fw[i];
    return *this;
}

Weight& Weight::operator*=(const Rational& s) {
    for (auto& c : fw) c *= s;
    return *this;
}

std::string to_string(const Weight& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.fw.size(); ++i) {
        if (i) s += ',';
        s += to_string(w.fw[i]);
    }
    return s + ")";
}

RootVector simple_root(std::size_t rank, std::size_t i) {
    if (i >= rank) throw IndexOutOfRange("simple root index out of range");
    RootVector r{std::vector<int>(rank, 0)};
    r.coords[i] = 1;
    return r;
}

namespace {

struct GramSpec {
    std::vector<int> norms;
    IntMatrix gram;
};

// Symmetric Gram matrix of the simple roots in Bourbaki numbering, scaled to integers.
GramSpec bourbaki_gram(const SimpleLieType& t) {
    validate(t);
    const auto n = static_cast<std::size_t>(t.rank);
    GramSpec g;
    g.norms.assign(n, 2);
    g.gram.assign(n, std::vector<int>(n, 0));
    auto edge = [&](std::size_t i, std::size_t j, int v) {
        if (i < n && j < n) g.gram[i][j] = g.gram[j][i] = v;
    };
    switch (t.family) {
        case Family::A:
            for (std::size_t i = 0; i + 1 < n; ++i) edge(i, i + 1, -1);
            break;
        case Family::B:
            for (std::size_t i = 0; i + 1 < n; ++i) edge(i, i + 1, -1);
            g.norms[n - 1] = 1;
            break;
        case Family::C:
            g.norms.assign(n, 2);
            g.norms[n - 1] = 4;
            for (std::size_t i = 0; i + 2 < n; ++i) edge(i, i + 1, -1);
            edge(n - 2, n - 1, -2);
            break;
        case Family::D:
            for (std::size_t i = 0; i + 2 < n; ++i) edge(i, i + 1, -1);
            edge(n - 3, n - 1, -1);
            break;
        case Family::E:
            edge(0, 2, -1);
            edge(1, 3, -1);
            for (std::size_t i = 2; i + 1 < n; ++i) edge(i, i + 1, -1);
            break;
        case Family::F:
            g.norms = {4, 4, 2, 2};
            edge(0, 1, -2);
            edge(1, 2, -2);
            edge(2, 3, -1);
            break;
        case Family::G:
            g.norms = {2, 6};
            edge(0, 1, -3);
            break;
    }
    for (std::size_t i = 0; i < n; ++i) g.gram[i][i] = g.norms[i];
    return g;
}

}  // namespace

IntMatrix cartan_matrix(const SimpleLieType& t) {
    const auto g = bourbaki_gram(t);
    const std::size_t n = g.norms.size();
    IntMatrix c(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            ensure((2 * g.gram[i][j]) % g.norms[j] == 0, "Cartan entry is not an integer");
            c[i][j] = 2 * g.gram[i][j] / g.norms[j];
        }
    return c;
}

std::vector<RootVector> enumerate_positive_roots(const IntMatrix& cartan) {
    const std::size_t n = cartan.size();
    std::set<std::vector<int>> known;
    std::vector<RootVector> layer;
    for (std::size_t i = 0; i < n; ++i) {
        layer.push_back(simple_root(n, i));
        known.insert(layer.back().coords);
    }
    std::vector<RootVector> all = layer;
    while (!layer.empty()) {
        std::set<std::vector<int>> next;
        for (const auto& alpha : layer) {
            for (std::size_t i = 0; i < n; ++i) {
                // q: how far the alpha_i-string extends downwards from alpha.
                int q = 0;
                for (;;) {
                    auto down = alpha.coords;
                    down[i] -= q + 1;
                    if (down[i] < 0 || !known.contains(down)) break;
                    ++q;
                }
                int pair = 0;
                for (std::size_t j = 0; j < n; ++j) pair += alpha.coords[j] * cartan[j][i];
                if (q - pair > 0) {
                    auto up = alpha.coords;
                    ++up[i];
                    if (!known.contains(up)) next.insert(up);
                }
            }
        }
        layer.clear();
        for (const auto& c : next) {
            known.insert(c);
            layer.push_back(RootVector{c});
        }
        all.insert(all.end(), layer.begin(), layer.end());
    }
    std::sort(all.begin(), all.end(), [](const RootVector& a, const RootVector& b) {
        const int ha = a.height(), hb = b.height();
        return ha != hb ? ha < hb : a.coords < b.coords;
    });
    return all;
}

RootSystem build_root_system(const SimpleLieType& t) {
    const auto g = bourbaki_gram(t);
    RootSystem rs;
    rs.type_ = t;
    rs.cartan_ = cartan_matrix(t);
    rs.root_norms_ = g.norms;
    rs.gram_ = g.gram;

    const std::size_t n = g.norms.size();
    const int l = std::accumulate(g.norms.begin(), g.norms.end(), 1,
                                  [](int a, int b) { return std::lcm(a, b); });
    rs.symmetrizers_.resize(n);
    for (std::size_t i = 0; i < n; ++i) rs.symmetrizers_[i] = l / g.norms[i];
    const int common = std::accumulate(rs.symmetrizers_.begin(), rs.symmetrizers_.end(), 0,
                                       [](int a, int b) { return std::gcd(a, b); });
    for (auto& d : rs.symmetrizers_) d /= common;

    for (std::size_t i = 0; i < n; ++i) {
        ensure(rs.cartan_[i][i] == 2, "Cartan diagonal must be 2");
        for (std::size_t j = 0; j < n; ++j) {
            ensure(rs.symmetrizers_[i] * rs.cartan_[i][j] == rs.symmetrizers_[j] * rs.cartan_[j][i],
                   "symmetrizers do not symmetrize the Cartan matrix");
            if (i != j) ensure(rs.cartan_[i][j] <= 0, "off-diagonal Cartan entry must be non-positive");
        }
    }
    ensure(determinant(rs.cartan_) > 0, "Cartan matrix is not of finite type");

    rs.positive_roots_ = enumerate_positive_roots(rs.cartan_);
    ensure(rs.positive_roots_.size() == expected_positive_root_count(t),
           "positive-root count differs from the closed form");
    return rs;
}

namespace {

void check_sizes(const Weight& lambda, const RootVector& beta, const RootSystem& rs) {
    if (lambda.size() != rs.rank() || beta.coords.size() != rs.rank())
        throw DimensionMismatch("weight/root length differs from the rank");
}

}  // namespace

Integer root_norm(const RootVector& beta, const RootSystem& rs) {
    if (beta.coords.size() != rs.rank()) throw DimensionMismatch("root length differs from the rank");
    Integer s = 0;
    const auto& g = rs.root_gram();
    for (std::size_t i = 0; i < rs.rank(); ++i)
        for (std::size_t j = 0; j < rs.rank(); ++j) s += beta.coords[i] * beta.coords[j] * g[i][j];
    return s;
}

Rational inner_product(const Weight& lambda, const RootVector& beta, const RootSystem& rs) {
    check_sizes(lambda, beta, rs);
    // (varpi_j, alpha_j) = (alpha_j, alpha_j) / 2
    Rational s = 0;
    for (std::size_t j = 0; j < rs.rank(); ++j)
        if (beta.coords[j] != 0) s += lambda.fw[j] * beta.coords[j] * rs.root_norms()[j];
    return s / 2;
}

Rational pairing(const Weight& lambda, const RootVector& beta, const RootSystem& rs) {
    check_sizes(lambda, beta, rs);
    const Integer norm = root_norm(beta, rs);
    if (norm == 0) throw InvalidArgument("pairing with the zero vector");
    Rational num = 0;
    for (std::size_t j = 0; j < rs.rank(); ++j)
        if (beta.coords[j] != 0) num += lambda.fw[j] * beta.coords[j] * rs.root_norms()[j];
    Rational r = num / Rational(norm);
    r.canonicalize();
    return r;
}

Weight root_as_weight(const RootVector& beta, const RootSystem& rs) {
    if (beta.coords.size() != rs.rank()) throw DimensionMismatch("root length differs from the rank");
    Weight w = Weight::zero(rs.rank());
    for (std::size_t i = 0; i < rs.rank(); ++i)
        for (std::size_t j = 0; j < rs.rank(); ++j) w.fw[j] += beta.coords[i] * rs.cartan()[i][j];
    return w;
}

RationalVector weight_in_root_basis(const Weight& lambda, const RootSystem& rs) {
    if (lambda.size() != rs.rank()) throw DimensionMismatch("weight length differs from the rank");
    auto x = solve(transpose(to_rational(rs.cartan())), lambda.fw);
    ensure(x.has_value(), "Cartan matrix is singular");
    return *x;
}

Weight weyl_vector(const RootSystem& rs) { return Weight(RationalVector(rs.rank(), Rational(1))); }

}  // namespace parabolica
