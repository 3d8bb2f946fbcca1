#include "molien/oracle.hpp"

#include <cerrno>
#include <cstring>
#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "molien/error.hpp"
#include "parallel.hpp"

namespace molien {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Cyclotomic(1);
  return m;
}

Matrix operator*(const Matrix& x, const Matrix& y) {
  const std::size_t n = x.n_;
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Cyclotomic& a = x(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!y(k, j).is_zero()) out(i, j) += a * y(k, j);
    }
  return out;
}

std::size_t Matrix::hash() const noexcept {
  std::size_t h = n_;
  for (const Cyclotomic& v : a_) h = h * 1000003u ^ v.hash();
  return h;
}

namespace {

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  if (a.empty() || b.empty()) return {};
  Polynomial out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
  }
  return out;
}

void poly_add(Polynomial& acc, const Polynomial& p, bool negate) {
  if (acc.size() < p.size()) acc.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (negate) {
      acc[i] -= p[i];
    } else {
      acc[i] += p[i];
    }
  }
}

// Laplace expansion along the first row over a square matrix of polynomials.
Polynomial poly_det(const std::vector<std::vector<Polynomial>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return {Cyclotomic(1)};
  if (n == 1) return a[0][0];
  Polynomial det;
  for (std::size_t col = 0; col < n; ++col) {
    const Polynomial& entry = a[0][col];
    bool zero = true;
    for (const auto& c : entry) zero = zero && c.is_zero();
    if (zero) continue;
    std::vector<std::vector<Polynomial>> minor(n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (j != col) minor[i - 1].push_back(a[i][j]);
    poly_add(det, poly_mul(entry, poly_det(minor)), col % 2 == 1);
  }
  return det;
}

}  // namespace

Cyclotomic determinant(const Matrix& m) {
  std::vector<std::vector<Polynomial>> a(m.dim(), std::vector<Polynomial>(m.dim()));
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) a[i][j] = {m(i, j)};
  Polynomial d = poly_det(a);
  return d.empty() ? Cyclotomic() : d[0];
}

Polynomial char_poly_reversed(const Matrix& m) {
  const std::size_t n = m.dim();
  std::vector<std::vector<Polynomial>> a(n, std::vector<Polynomial>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = {Cyclotomic(i == j ? 1 : 0), -m(i, j)};
  Polynomial p = poly_det(a);
  p.resize(n + 1);
  return p;
}

Polynomial invert_series(const Polynomial& p, unsigned max_degree) {
  if (p.empty() || p[0] != Cyclotomic(1)) throw Error(ErrorKind::Usage, "series inversion needs constant term 1");
  Polynomial q(max_degree + 1);
  q[0] = Cyclotomic(1);
  for (unsigned d = 1; d <= max_degree; ++d) {
    Cyclotomic acc;
    for (std::size_t i = 1; i <= d && i < p.size(); ++i)
      if (!p[i].is_zero()) acc -= p[i] * q[d - i];
    q[d] = std::move(acc);
  }
  return q;
}

std::vector<Matrix> enumerate_group(const MatrixGroupModel& model, std::uint64_t cap) {
  const Matrix id = Matrix::identity(model.dimension);
  std::vector<Matrix> elements{id};
  std::unordered_set<Matrix> seen{id};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const Matrix& g : model.generators) {
      Matrix y = elements[head] * g;
      if (seen.insert(y).second) {
        elements.push_back(std::move(y));
        if (elements.size() > cap)
          throw Error(ErrorKind::CapExceeded, model.name + ": closure passed cap " + std::to_string(cap) +
                                                  " elements");
      }
    }
  }
  return elements;
}

std::vector<Integer> molien_by_determinants(const MatrixGroupModel& model, unsigned max_degree,
                                            unsigned threads) {
  if (max_degree < 1) throw Error(ErrorKind::Usage, "degree limit must be at least 1");
  if (!model.expected_order.fits_ulong_p()) throw Error(ErrorKind::Usage, model.name + ": expected order too large");
  const auto elements = enumerate_group(model, model.expected_order.get_ui());
  if (Integer(static_cast<unsigned long>(elements.size())) != model.expected_order)
    throw Error(ErrorKind::Validation, model.name + ": closure has " + std::to_string(elements.size()) +
                                           " elements, expected " + model.expected_order.get_str());

  std::vector<Polynomial> series(elements.size());
  parallel_for(elements.size(), threads, [&](std::size_t i) {
    series[i] = invert_series(char_poly_reversed(elements[i]), max_degree);
  });

  std::vector<Integer> out;
  for (unsigned d = 0; d <= max_degree; ++d) {
    Cyclotomic total;
    for (const Polynomial& s : series) total += s[d];
    auto r = total.as_rational();
    if (!r)
      throw Error(ErrorKind::NonIntegerCoefficient,
                  model.name + ": m_" + std::to_string(d) + " is irrational: " + total.to_string() + "/|G|");
    Rational m = *r / Rational(model.expected_order);
    if (m.get_den() != 1 || m < 0)
      throw Error(ErrorKind::NonIntegerCoefficient,
                  model.name + ": m_" + std::to_string(d) + " = " + m.get_str() + " is not a nonnegative integer");
    out.push_back(m.get_num());
  }
  return out;
}

MatrixGroupModel ingest_model(std::string_view bytes) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, "parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  MatrixGroupModel model;
  try {
    model.name = doc.at("name").get<std::string>();
    model.dimension = doc.at("dimension").get<std::size_t>();
    model.expected_order = integer_from_json(doc.at("expected_order"));
    const json& gens = doc.at("generators");
    if (!gens.is_array()) throw Error(ErrorKind::Parse, model.name + ": 'generators' must be an array");
    for (const json& g : gens) {
      if (!g.is_array() || g.size() != model.dimension)
        throw Error(ErrorKind::Validation, model.name + ": generator is not " + std::to_string(model.dimension) +
                                               "x" + std::to_string(model.dimension));
      Matrix m(model.dimension);
      for (std::size_t i = 0; i < model.dimension; ++i) {
        if (!g[i].is_array() || g[i].size() != model.dimension)
          throw Error(ErrorKind::Validation, model.name + ": generator row " + std::to_string(i) +
                                                 " has the wrong length");
        for (std::size_t j = 0; j < model.dimension; ++j) m(i, j) = cyclotomic_from_json(g[i][j]);
      }
      model.generators.push_back(std::move(m));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed model: ") + e.what());
  }
  if (model.dimension == 0) throw Error(ErrorKind::Validation, model.name + ": dimension must be positive");
  if (model.expected_order <= 0) throw Error(ErrorKind::Validation, model.name + ": expected order must be positive");
  for (std::size_t k = 0; k < model.generators.size(); ++k)
    if (determinant(model.generators[k]).is_zero())
      throw Error(ErrorKind::Validation, model.name + ": generator " + std::to_string(k) + " is singular");
  return model;
}

MatrixGroupModel load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path + ": " + std::strerror(errno));
  std::ostringstream buf;
  buf << in.rdbuf();
  return ingest_model(buf.str());
}

nlohmann::json to_json(const MatrixGroupModel& model) {
  nlohmann::json gens = nlohmann::json::array();
  for (const Matrix& g : model.generators) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < g.dim(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t j = 0; j < g.dim(); ++j) row.push_back(to_json(g(i, j)));
      rows.push_back(std::move(row));
    }
    gens.push_back(std::move(rows));
  }
  return {{"name", model.name},
          {"dimension", model.dimension},
          {"expected_order", integer_to_json(model.expected_order)},
          {"generators", std::move(gens)}};
}

}  // namespace molien
