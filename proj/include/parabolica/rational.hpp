#pragma once

#include <gmpxx.h>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace parabolica {

using Integer = mpz_class;
/// mpq_class whose two-argument constructors always canonicalize.
class Rational : public mpq_class {
public:
    using mpq_class::mpq_class;
    Rational() = default;
    Rational(const mpq_class& q) : mpq_class(q) {}
    template <class T, class U>
    Rational(const __gmp_expr<T, U>& e) : mpq_class(e) {}
    Rational(long num, long den) : mpq_class(Integer(num), Integer(den)) { canonicalize(); }
    Rational(const Integer& num, const Integer& den) : mpq_class(num, den) { canonicalize(); }
};

using IntMatrix = std::vector<std::vector<int>>;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

/// Canonical text form: "p/q" in lowest terms, or "p" when q = 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Accepts "p", "-p", "p/q". Throws InvalidArgument on anything else or q = 0.
Rational parse_rational(std::string_view text);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

bool all_integer(std::span<const Rational> v);

RationalMatrix to_rational(const IntMatrix& m);
RationalMatrix transpose(const RationalMatrix& m);

/// Exact determinant by fraction-free (Bareiss) elimination after clearing
/// row denominators. The 0x0 determinant is 1.
Rational determinant(const RationalMatrix& m);
Integer determinant(const IntMatrix& m);

/// Exact solution of A x = b by Gauss-Jordan elimination over Q.
/// Returns nullopt when A is singular.
std::optional<RationalVector> solve(const RationalMatrix& a, const RationalVector& b);

}  // namespace parabolica
