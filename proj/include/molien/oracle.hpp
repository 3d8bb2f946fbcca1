#pragma once

// Brute-force Molien series for small explicit matrix groups:
// enumerate the group, then average 1/det(I - tM) as truncated power series.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "molien/cyclo.hpp"

namespace molien {

class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n) {}
  static Matrix identity(std::size_t n);

  std::size_t dim() const noexcept { return n_; }
  Cyclotomic& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Cyclotomic& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  friend Matrix operator*(const Matrix& x, const Matrix& y);
  friend bool operator==(const Matrix&, const Matrix&) = default;

  std::size_t hash() const noexcept;

 private:
  std::size_t n_ = 0;
  std::vector<Cyclotomic> a_;  // row-major, entries canonical
};

struct MatrixGroupModel {
  std::string name;
  std::size_t dimension = 0;
  std::vector<Matrix> generators;
  Integer expected_order;
};

MatrixGroupModel ingest_model(std::string_view bytes);
MatrixGroupModel load_model_file(const std::string& path);
nlohmann::json to_json(const MatrixGroupModel& model);

/// Polynomial in t, coefficient i of t^i.
using Polynomial = std::vector<Cyclotomic>;

Cyclotomic determinant(const Matrix& m);
/// det(I - tM), a polynomial of degree at most dim.
Polynomial char_poly_reversed(const Matrix& m);
/// 1/p truncated after t^max_degree; p(0) must be 1.
Polynomial invert_series(const Polynomial& p, unsigned max_degree);

/// Breadth-first closure from the identity under right multiplication by
/// generators.  Throws CapExceeded once more than `cap` elements appear.
std::vector<Matrix> enumerate_group(const MatrixGroupModel& model, std::uint64_t cap);

/// (1/|G|) sum_g 1/det(I - tg), coefficients 0..max_degree.
std::vector<Integer> molien_by_determinants(const MatrixGroupModel& model, unsigned max_degree,
                                            unsigned threads = 1);

}  // namespace molien

template <>
struct std::hash<molien::Matrix> {
  std::size_t operator()(const molien::Matrix& m) const noexcept { return m.hash(); }
};
