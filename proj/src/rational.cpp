#include "parabolica/rational.hpp"

#include "parabolica/errors.hpp"

#include <algorithm>
#include <cctype>

namespace parabolica {

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Integer& z) { return z.get_str(); }

namespace {

bool is_decimal_integer(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::string strip_plus(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return std::string(s);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    const auto num = text.substr(0, slash);
    if (!is_decimal_integer(num))
        throw InvalidArgument("not a rational number: '" + std::string(text) + "'");
    Rational q;
    if (slash == std::string_view::npos) {
        q = Rational(Integer(strip_plus(num)));
        return q;
    }
    const auto den = text.substr(slash + 1);
    if (!is_decimal_integer(den) || den.front() == '-' || den.front() == '+')
        throw InvalidArgument("not a rational number: '" + std::string(text) + "'");
    const Integer d(std::string{den});
    if (d == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    q = Rational(Integer(strip_plus(num)), d);
    q.canonicalize();
    return q;
}

bool all_integer(std::span<const Rational> v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return is_integer(q); });
}

RationalMatrix to_rational(const IntMatrix& m) {
    RationalMatrix out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        out[i].reserve(m[i].size());
        for (int x : m[i]) out[i].emplace_back(x);
    }
    return out;
}

RationalMatrix transpose(const RationalMatrix& m) {
    if (m.empty()) return {};
    RationalMatrix t(m.front().size(), RationalVector(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

namespace {

Integer bareiss(std::vector<std::vector<Integer>> a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a[i][j] = t;
            }
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

}  // namespace

Integer determinant(const IntMatrix& m) {
    std::vector<std::vector<Integer>> a(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != m.size()) throw DimensionMismatch("determinant of a non-square matrix");
        for (int x : m[i]) a[i].emplace_back(x);
    }
    return bareiss(std::move(a));
}

Rational determinant(const RationalMatrix& m) {
    // Scale each row to integers, take the integer determinant, undo the scale.
    std::vector<std::vector<Integer>> a(m.size());
    Integer scale = 1;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != m.size()) throw DimensionMismatch("determinant of a non-square matrix");
        Integer l = 1;
        for (const auto& q : m[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        for (const auto& q : m[i]) a[i].push_back(q.get_num() * (l / q.get_den()));
        scale *= l;
    }
    Rational d(bareiss(std::move(a)), scale);
    d.canonicalize();
    return d;
}

std::optional<RationalVector> solve(const RationalMatrix& a, const RationalVector& b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw DimensionMismatch("solve: right-hand side length differs from matrix size");
    RationalMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw DimensionMismatch("solve: matrix is not square");
        m[i] = a[i];
        m[i].push_back(b[i]);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(m[col], m[piv]);
        const Rational inv = 1 / m[col][col];
        for (auto& x : m[col]) x *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            const Rational f = m[r][col];
            for (std::size_t c = col; c <= n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    RationalVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
    return x;
}

}  // namespace parabolica
