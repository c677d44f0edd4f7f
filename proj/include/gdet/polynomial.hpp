#ifndef GDET_POLYNOMIAL_HPP
#define GDET_POLYNOMIAL_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gdet/numeric.hpp"

namespace gdet {

/// A monomial over variables x0, x1, ... with positive integer exponents.
///
/// Variables below 16 with exponents below 16 live in 4-bit fields of a
/// single machine word; anything larger falls back to a sorted sparse
/// vector. The representation is canonical: a monomial is packed exactly
/// when it can be, so equality and hashing never cross representations.
class Monomial {
 public:
  using VarExp = std::pair<int, int>;

  Monomial() = default;  // the monomial 1

  static Monomial variable(int var, int exp = 1);
  // Canonicalizes: sorts by variable, merges duplicates, drops zeros.
  static Monomial from_exponents(std::vector<VarExp> pairs);

  int degree() const { return static_cast<int>(degree_); }
  bool is_one() const { return degree_ == 0; }

  Monomial times(const Monomial& other) const;

  std::vector<VarExp> exponents() const;
  int exponent_of(int var) const;

  bool operator==(const Monomial& other) const;
  bool operator!=(const Monomial& other) const { return !(*this == other); }

  // Graded lexicographic: degree first, ties by exponent vector with x0
  // most significant. Returns negative/zero/positive.
  static int grlex_cmp(const Monomial& a, const Monomial& b);

  std::size_t hash() const;

  std::string to_string() const;

 private:
  static constexpr int kPackedVars = 16;
  static constexpr std::uint32_t kPackedMaxExp = 15;

  bool packed() const { return wide_ == nullptr; }

  std::uint64_t packed_ = 0;
  std::uint32_t degree_ = 0;
  std::shared_ptr<const std::vector<VarExp>> wide_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Exact sparse multivariate polynomial with arbitrary-precision integer
/// coefficients. Canonical form: no zero coefficient is ever stored.
class Polynomial {
 public:
  using TermMap = std::unordered_map<Monomial, BigInt, MonomialHash>;

  Polynomial() = default;  // zero

  static Polynomial constant(BigInt value);
  static Polynomial variable(int var);
  static Polynomial term(BigInt coeff, Monomial m);

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  /// Adds coeff * m, purging the term if the result cancels.
  void add_term(const Monomial& m, const BigInt& coeff);

  BigInt coefficient_of(const Monomial& m) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b);
  friend Polynomial operator-(Polynomial a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a);

  Polynomial pow(unsigned exponent) const;

  bool operator==(const Polynomial& other) const;
  bool operator!=(const Polynomial& other) const { return !(*this == other); }

  /// Replaces each variable v by mapping.at(v). The mapping must cover every
  /// occurring variable and be injective on them.
  Polynomial rename(const std::map<int, int>& mapping) const;

  BigInt evaluate(const std::map<int, BigInt>& point) const;
  std::uint64_t evaluate_mod(const std::map<int, std::uint64_t>& point,
                             std::uint64_t prime) const;

  /// -1 for the zero polynomial.
  int total_degree() const;
  bool is_homogeneous(int degree) const;

  std::vector<int> variables() const;  // sorted, distinct

  /// Terms in graded-lex descending order.
  std::vector<std::pair<Monomial, BigInt>> sorted_terms() const;

  /// Canonical text form, graded-lex descending:
  /// "x0^3 - 3*x0*x1*x2 + x1^3 + x2^3". Zero prints as "0".
  std::string to_string() const;
  static Polynomial parse(const std::string& text);

 private:
  TermMap terms_;
};

}  // namespace gdet

#endif  // GDET_POLYNOMIAL_HPP
