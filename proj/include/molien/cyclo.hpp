#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_n).
//
// A Cyclotomic is stored in canonical form: the smallest conductor n with the
// value in Q(zeta_n), and rational coefficients on a fixed basis of
// Q(zeta_n) made of powers zeta_n^k.  The basis is the tensor product of
// per-prime bases: writing n = prod p^e and k_p for the CRT component of k
// (zeta_n^k = prod_p (zeta_n^{n/p^e})^{k_p}), the power zeta_n^k is a basis
// element iff for every p the top base-p digit of k_p is not excluded
// (digit 1 is excluded for p = 2, digit 0 for odd p).  Two equal field
// elements therefore have identical (conductor, terms).

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"

namespace molien {

using Integer = mpz_class;
using Rational = mpq_class;

class Cyclotomic {
 public:
  struct Term {
    std::uint32_t exponent;
    Rational coeff;

    friend bool operator==(const Term&, const Term&) = default;
  };

  Cyclotomic() = default;
  Cyclotomic(const Rational& value);  // NOLINT(google-explicit-constructor)
  Cyclotomic(const Integer& value);   // NOLINT(google-explicit-constructor)
  Cyclotomic(long value);             // NOLINT(google-explicit-constructor)

  /// zeta_n^k.
  static Cyclotomic root_of_unity(std::uint32_t n, std::uint64_t k = 1);

  /// sum of coeff * zeta_n^exponent over arbitrary exponents (reduced mod n).
  static Cyclotomic from_terms(std::uint32_t n,
                               const std::vector<std::pair<std::uint64_t, Rational>>& terms);

  std::uint32_t conductor() const noexcept { return conductor_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_rational() const noexcept { return conductor_ == 1; }

  /// The rational value, or nullopt when the value is irrational.
  std::optional<Rational> as_rational() const;
  /// As as_rational, but raises ErrorKind::NotRational.
  Rational rational_value() const;

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& rhs);
  Cyclotomic& operator-=(const Cyclotomic& rhs);
  Cyclotomic& operator*=(const Cyclotomic& rhs);

  friend Cyclotomic operator+(Cyclotomic lhs, const Cyclotomic& rhs) { return lhs += rhs; }
  friend Cyclotomic operator-(Cyclotomic lhs, const Cyclotomic& rhs) { return lhs -= rhs; }
  friend Cyclotomic operator*(Cyclotomic lhs, const Cyclotomic& rhs) { return lhs *= rhs; }

  friend bool operator==(const Cyclotomic&, const Cyclotomic&) = default;

  /// Complex conjugation, zeta_n -> zeta_n^{n-1}.
  Cyclotomic conjugate() const;
  /// The Galois automorphism zeta_n -> zeta_n^k; k must be coprime to n.
  Cyclotomic galois(std::int64_t k) const;

  /// Numerical value, for sanity checks only.
  std::complex<double> to_complex() const;

  std::size_t hash() const noexcept;

  std::string to_string() const;

 private:
  std::uint32_t conductor_ = 1;
  std::vector<Term> terms_;

  friend Cyclotomic canonicalize(std::uint32_t n, std::vector<Rational> dense);
};

/// Rewrite a dense coefficient vector (entry k multiplies zeta_n^k) into
/// canonical form.  Exposed for the accumulators in chartab and molien.
Cyclotomic canonicalize(std::uint32_t n, std::vector<Rational> dense);

/// Dense accumulator over a fixed Q(zeta_n): adds products without
/// canonicalising every intermediate value.
class DenseAccumulator {
 public:
  explicit DenseAccumulator(std::uint32_t n) : n_(n), dense_(n) {}

  std::uint32_t conductor() const noexcept { return n_; }
  /// Adds scale * a * b; the conductors of a and b must divide n.
  void add_product(const Cyclotomic& a, const Cyclotomic& b, const Rational& scale);
  void add(const Cyclotomic& a, const Rational& scale);
  Cyclotomic value() const { return canonicalize(n_, dense_); }

 private:
  std::uint32_t n_;
  std::vector<Rational> dense_;
};

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

// Serialization.  A rational is the array [numerator, denominator]; an
// irrational value is {"n": conductor, "coeffs": {"k": [num, den], ...}}.
// Integers too large for int64 are written as decimal strings.
nlohmann::json integer_to_json(const Integer& value);
Integer integer_from_json(const nlohmann::json& j);
nlohmann::json rational_to_json(const Rational& value);
Rational rational_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Cyclotomic& value);
Cyclotomic cyclotomic_from_json(const nlohmann::json& j);

}  // namespace molien

template <>
struct std::hash<molien::Cyclotomic> {
  std::size_t operator()(const molien::Cyclotomic& c) const noexcept { return c.hash(); }
};
