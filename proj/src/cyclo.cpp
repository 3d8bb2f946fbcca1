#include "molien/cyclo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "molien/error.hpp"

namespace molien {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::Validation: return "validation-error";
    case ErrorKind::NotRational: return "not-rational";
    case ErrorKind::MissingPowerMap: return "missing-power-map";
    case ErrorKind::NonIntegerCoefficient: return "non-integer-coefficient";
    case ErrorKind::CapExceeded: return "cap-exceeded";
    case ErrorKind::ProfileTooShort: return "profile-too-short";
    case ErrorKind::MissingGroup: return "missing-group";
    case ErrorKind::UnknownGroup: return "unknown-group";
    case ErrorKind::MissingTable: return "missing-table";
    case ErrorKind::Usage: return "usage-error";
    case ErrorKind::Io: return "io-error";
  }
  return "error";
}

namespace {

struct PrimePower {
  std::uint32_t p;
  std::uint32_t e;
  std::uint32_t pe;
};

std::vector<PrimePower> factorize(std::uint32_t n) {
  std::vector<PrimePower> out;
  for (std::uint32_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    PrimePower pp{p, 0, 1};
    while (n % p == 0) {
      n /= p;
      ++pp.e;
      pp.pe *= p;
    }
    out.push_back(pp);
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t m) {
  if (m == 1) return 0;
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = m, new_r = a % m;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (t < 0) t += m;
  return static_cast<std::uint32_t>(t);
}

// Eliminates every exponent that is not in the canonical basis of Q(zeta_n).
void reduce_to_basis(std::uint32_t n, std::vector<Rational>& dense,
                     const std::vector<PrimePower>& factors) {
  for (const auto& pp : factors) {
    const std::uint32_t inv = mod_inverse((n / pp.pe) % pp.pe, pp.pe);
    const std::uint32_t step = n / pp.p;
    const std::uint32_t top = pp.pe / pp.p;
    const std::uint32_t excluded_digit = pp.p == 2 ? 1 : 0;
    for (std::uint32_t k = 0; k < n; ++k) {
      if (sgn(dense[k]) == 0) continue;
      const auto kp = static_cast<std::uint32_t>(std::uint64_t{k} * inv % pp.pe);
      if (kp / top != excluded_digit) continue;
      const Rational c = dense[k];
      dense[k] = 0;
      for (std::uint32_t b = 1; b < pp.p; ++b) {
        dense[(k + b * step) % n] -= c;
      }
    }
  }
}

// One conductor-descent step; returns false when no prime can be removed.
bool descend(std::uint32_t& n, std::vector<Rational>& dense,
             const std::vector<PrimePower>& factors) {
  for (const auto& pp : factors) {
    const std::uint32_t p = pp.p;
    const std::uint32_t m = n / p;
    bool ok = true;
    if (p == 2 && pp.e == 1) {
      ok = true;
    } else if (pp.e >= 2) {
      for (std::uint32_t k = 0; k < n && ok; ++k) {
        if (k % p != 0 && sgn(dense[k]) != 0) ok = false;
      }
    } else {
      for (std::uint32_t base = 0; base < n && ok; base += p) {
        const Rational& first = dense[(base + m) % n];
        for (std::uint32_t b = 2; b < p && ok; ++b) {
          if (dense[(base + b * m) % n] != first) ok = false;
        }
      }
    }
    if (!ok) continue;

    std::vector<Rational> next(m);
    if (p == 2 && pp.e == 1) {
      for (std::uint32_t k = 0; k < n; k += 2) next[k / 2] = dense[k];
    } else if (pp.e >= 2) {
      for (std::uint32_t k = 0; k < n; k += p) next[k / p] = dense[k];
    } else {
      for (std::uint32_t base = 0; base < n; base += p) {
        next[base / p] = -dense[(base + m) % n];
      }
    }
    n = m;
    dense = std::move(next);
    return true;
  }
  return false;
}

Cyclotomic make_rational(const Rational& value) { return Cyclotomic(value); }

}  // namespace

Cyclotomic canonicalize(std::uint32_t n, std::vector<Rational> dense) {
  if (n == 0) throw Error(ErrorKind::Validation, "cyclotomic conductor must be positive");
  reduce_to_basis(n, dense, factorize(n));
  while (n > 1 && descend(n, dense, factorize(n))) {
  }
  Cyclotomic out;
  out.conductor_ = n;
  for (std::uint32_t k = 0; k < n; ++k) {
    if (sgn(dense[k]) != 0) out.terms_.push_back({k, std::move(dense[k])});
  }
  if (out.terms_.empty()) out.conductor_ = 1;
  return out;
}

Cyclotomic::Cyclotomic(const Rational& value) {
  if (sgn(value) != 0) terms_.push_back({0, value});
}

Cyclotomic::Cyclotomic(const Integer& value) : Cyclotomic(Rational(value)) {}

Cyclotomic::Cyclotomic(long value) : Cyclotomic(Rational(value)) {}

Cyclotomic Cyclotomic::root_of_unity(std::uint32_t n, std::uint64_t k) {
  return from_terms(n, {{k, Rational(1)}});
}

Cyclotomic Cyclotomic::from_terms(
    std::uint32_t n, const std::vector<std::pair<std::uint64_t, Rational>>& terms) {
  if (n == 0) throw Error(ErrorKind::Validation, "cyclotomic conductor must be positive");
  std::vector<Rational> dense(n);
  for (const auto& [k, c] : terms) dense[k % n] += c;
  return canonicalize(n, std::move(dense));
}

std::optional<Rational> Cyclotomic::as_rational() const {
  if (!is_rational()) return std::nullopt;
  return terms_.empty() ? Rational(0) : terms_.front().coeff;
}

Rational Cyclotomic::rational_value() const {
  auto r = as_rational();
  if (!r) throw Error(ErrorKind::NotRational, "value " + to_string() + " is not rational");
  return *r;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& rhs) {
  if (rhs.is_zero()) return *this;
  if (is_zero()) return *this = rhs;
  if (is_rational() && rhs.is_rational()) {
    return *this = make_rational(terms_.front().coeff + rhs.terms_.front().coeff);
  }
  const auto n = static_cast<std::uint32_t>(lcm_u64(conductor_, rhs.conductor_));
  std::vector<Rational> dense(n);
  const std::uint32_t sa = n / conductor_, sb = n / rhs.conductor_;
  for (const auto& t : terms_) dense[t.exponent * sa] += t.coeff;
  for (const auto& t : rhs.terms_) dense[t.exponent * sb] += t.coeff;
  return *this = canonicalize(n, std::move(dense));
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& rhs) { return *this += -rhs; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& rhs) {
  if (is_zero() || rhs.is_zero()) return *this = Cyclotomic();
  if (rhs.is_rational()) {
    for (auto& t : terms_) t.coeff *= rhs.terms_.front().coeff;
    return *this;
  }
  if (is_rational()) {
    Rational scale = terms_.front().coeff;
    *this = rhs;
    for (auto& t : terms_) t.coeff *= scale;
    return *this;
  }
  const auto n = static_cast<std::uint32_t>(lcm_u64(conductor_, rhs.conductor_));
  std::vector<Rational> dense(n);
  const std::uint32_t sa = n / conductor_, sb = n / rhs.conductor_;
  for (const auto& a : terms_) {
    for (const auto& b : rhs.terms_) {
      dense[(std::uint64_t{a.exponent} * sa + std::uint64_t{b.exponent} * sb) % n] += a.coeff * b.coeff;
    }
  }
  return *this = canonicalize(n, std::move(dense));
}

Cyclotomic Cyclotomic::conjugate() const { return galois(-1); }

Cyclotomic Cyclotomic::galois(std::int64_t k) const {
  if (is_rational()) return *this;
  const std::int64_t n = conductor_;
  std::int64_t kk = ((k % n) + n) % n;
  if (std::gcd(kk, n) != 1) {
    throw Error(ErrorKind::Validation, "galois exponent must be coprime to the conductor");
  }
  std::vector<Rational> dense(conductor_);
  for (const auto& t : terms_) dense[static_cast<std::uint64_t>(t.exponent) * kk % n] += t.coeff;
  return canonicalize(conductor_, std::move(dense));
}

std::complex<double> Cyclotomic::to_complex() const {
  std::complex<double> sum = 0;
  for (const auto& t : terms_) {
    const double angle = 2.0 * std::numbers::pi * t.exponent / conductor_;
    sum += t.coeff.get_d() * std::polar(1.0, angle);
  }
  return sum;
}

std::size_t Cyclotomic::hash() const noexcept {
  std::size_t h = conductor_;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (const auto& t : terms_) {
    mix(t.exponent);
    mix(mpz_get_ui(t.coeff.get_num_mpz_t()));
    mix(static_cast<std::size_t>(sgn(t.coeff) + 1));
    mix(mpz_get_ui(t.coeff.get_den_mpz_t()));
  }
  return h;
}

std::string Cyclotomic::to_string() const {
  if (is_zero()) return "0";
  if (is_rational()) return terms_.front().coeff.get_str();
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << (sgn(t.coeff) < 0 ? " - " : " + ");
    else if (sgn(t.coeff) < 0) os << "-";
    first = false;
    Rational mag = abs(t.coeff);
    if (mag != 1) os << mag.get_str() << "*";
    os << "E(" << conductor_ << ")";
    if (t.exponent != 1) os << "^" << t.exponent;
  }
  return os.str();
}

void DenseAccumulator::add_product(const Cyclotomic& a, const Cyclotomic& b,
                                   const Rational& scale) {
  if (a.is_zero() || b.is_zero()) return;
  const std::uint32_t sa = n_ / a.conductor(), sb = n_ / b.conductor();
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      dense_[(std::uint64_t{ta.exponent} * sa + std::uint64_t{tb.exponent} * sb) % n_] += scale * ta.coeff * tb.coeff;
    }
  }
}

void DenseAccumulator::add(const Cyclotomic& a, const Rational& scale) {
  const std::uint32_t sa = n_ / a.conductor();
  for (const auto& t : a.terms()) dense_[t.exponent * sa] += scale * t.coeff;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

nlohmann::json integer_to_json(const Integer& value) {
  if (value.fits_slong_p()) return static_cast<std::int64_t>(value.get_si());
  return value.get_str();
}

Integer integer_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start || !std::all_of(s.begin() + static_cast<long>(start), s.end(),
                                          [](char c) { return c >= '0' && c <= '9'; })) {
      throw Error(ErrorKind::Parse, "expected a decimal integer, got \"" + s + "\"");
    }
    return Integer(s);
  }
  throw Error(ErrorKind::Parse, "expected an integer, got " + j.dump());
}

nlohmann::json rational_to_json(const Rational& value) {
  return nlohmann::json::array({integer_to_json(value.get_num()), integer_to_json(value.get_den())});
}

Rational rational_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw Error(ErrorKind::Parse, "expected [numerator, denominator], got " + j.dump());
  }
  Integer num = integer_from_json(j[0]);
  Integer den = integer_from_json(j[1]);
  if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in " + j.dump());
  Rational r(num, den);
  r.canonicalize();
  return r;
}

nlohmann::json to_json(const Cyclotomic& value) {
  if (value.is_rational()) return rational_to_json(value.rational_value());
  nlohmann::json coeffs = nlohmann::json::object();
  for (const auto& t : value.terms()) coeffs[std::to_string(t.exponent)] = rational_to_json(t.coeff);
  return {{"n", value.conductor()}, {"coeffs", std::move(coeffs)}};
}

Cyclotomic cyclotomic_from_json(const nlohmann::json& j) {
  if (j.is_array()) return Cyclotomic(rational_from_json(j));
  if (j.is_number_integer()) return Cyclotomic(integer_from_json(j));
  if (!j.is_object() || !j.contains("n") || !j.contains("coeffs") || !j["coeffs"].is_object()) {
    throw Error(ErrorKind::Parse, "malformed cyclotomic " + j.dump());
  }
  const Integer n = integer_from_json(j["n"]);
  if (n < 1 || !n.fits_uint_p()) throw Error(ErrorKind::Parse, "bad conductor in " + j.dump());
  std::vector<std::pair<std::uint64_t, Rational>> terms;
  for (const auto& [key, c] : j["coeffs"].items()) {
    std::uint64_t k = 0;
    try {
      std::size_t used = 0;
      k = std::stoull(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "bad exponent \"" + key + "\" in " + j.dump());
    }
    terms.emplace_back(k, rational_from_json(c));
  }
  return Cyclotomic::from_terms(static_cast<std::uint32_t>(n.get_ui()), terms);
}

}  // namespace molien
