#pragma once

#include "parabolica/rational.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace parabolica {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

/// Finite simple type such as A3 or E8, simple roots numbered after Bourbaki.
struct SimpleLieType {
    Family family = Family::A;
    int rank = 1;

    friend bool operator==(const SimpleLieType&, const SimpleLieType&) = default;
};

/// Throws InvalidType when the rank is out of range for the family.
void validate(const SimpleLieType& t);

/// Parses "A3", "b3", "E8", ... (case-insensitive). Throws InvalidType.
SimpleLieType parse_lie_type(std::string_view text);
std::string to_string(const SimpleLieType& t);

/// Closed-form number of positive roots.
std::size_t expected_positive_root_count(const SimpleLieType& t);

/// A positive root written in the simple-root basis.
struct RootVector {
    std::vector<int> coords;

    int height() const;
    friend auto operator<=>(const RootVector&, const RootVector&) = default;
};

/// A weight written in the fundamental-weight basis: lambda = sum_i fw[i] * varpi_i.
/// Coordinate i equals <lambda, alpha_i^vee>.
struct Weight {
    RationalVector fw;

    Weight() = default;
    explicit Weight(RationalVector coords) : fw(std::move(coords)) {}
    static Weight zero(std::size_t rank) { return Weight(RationalVector(rank)); }
    static Weight fundamental(std::size_t rank, std::size_t i);
    static Weight from_ints(const std::vector<long>& coords);

    std::size_t size() const { return fw.size(); }
    bool is_integral() const { return all_integer(fw); }
    bool is_zero() const;

    Weight& operator+=(const Weight& o);
    Weight& operator-=(const Weight& o);
    Weight& operator*=(const Rational& s);
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    friend Weight operator*(const Rational& s, Weight a) { return a *= s; }
    friend Weight operator/(Weight a, const Rational& s) { return a *= 1 / s; }
    friend bool operator==(const Weight&, const Weight&) = default;
};

std::string to_string(const Weight& w);

/// Positive roots of an arbitrary finite-type Cartan matrix (possibly
/// reducible or empty), C[i][j] = <alpha_i, alpha_j^vee>. Enumerated by
/// root-string closure from the simple roots; sorted by height, then
/// lexicographically.
std::vector<RootVector> enumerate_positive_roots(const IntMatrix& cartan);

/// Immutable root-system data for one simple type.
class RootSystem {
public:
    const SimpleLieType& lie_type() const { return type_; }
    std::size_t rank() const { return cartan_.size(); }

    /// C[i][j] = <alpha_i, alpha_j^vee>.
    const IntMatrix& cartan() const { return cartan_; }
    /// Minimal positive d with (d_i C_ij) symmetric.
    const std::vector<int>& symmetrizers() const { return symmetrizers_; }
    /// (alpha_i, alpha_i) in the normalisation where the shortest simple
    /// roots have the smallest integer squared length compatible with d.
    const std::vector<int>& root_norms() const { return root_norms_; }
    /// Gram matrix (alpha_i, alpha_j) in the same normalisation.
    const IntMatrix& root_gram() const { return gram_; }
    const std::vector<RootVector>& positive_roots() const { return positive_roots_; }

    friend RootSystem build_root_system(const SimpleLieType& t);

private:
    RootSystem() = default;

    SimpleLieType type_;
    IntMatrix cartan_;
    std::vector<int> symmetrizers_;
    std::vector<int> root_norms_;
    IntMatrix gram_;
    std::vector<RootVector> positive_roots_;
};

RootSystem build_root_system(const SimpleLieType& t);

/// Bourbaki Cartan matrix for the type, orientation C[i][j] = <alpha_i, alpha_j^vee>.
IntMatrix cartan_matrix(const SimpleLieType& t);

/// (beta, beta) for a root given in simple coordinates.
Integer root_norm(const RootVector& beta, const RootSystem& rs);

/// <lambda, beta^vee> = 2 (lambda, beta) / (beta, beta), exact.
Rational pairing(const Weight& lambda, const RootVector& beta, const RootSystem& rs);

/// (lambda, beta) in the root_gram normalisation.
Rational inner_product(const Weight& lambda, const RootVector& beta, const RootSystem& rs);

/// sum_i m_i (row i of C).
Weight root_as_weight(const RootVector& beta, const RootSystem& rs);

/// Coordinates x with lambda = sum_i x_i alpha_i (solves C^T x = fw).
RationalVector weight_in_root_basis(const Weight& lambda, const RootSystem& rs);

/// rho = sum of fundamental weights.
Weight weyl_vector(const RootSystem& rs);

RootVector simple_root(std::size_t rank, std::size_t i);

}  // namespace parabolica
