#include "molien/molien.hpp"

#include <thread>

#include "molien/error.hpp"
#include "parallel.hpp"

namespace molien {

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::vector<ClassFunction> symmetric_power_values(const CharacterTable& table, const ClassFunction& chi,
                                                  unsigned max_degree, unsigned threads) {
  if (max_degree < 1) throw Error(ErrorKind::Usage, "degree limit must be at least 1");
  const std::size_t nc = table.num_classes();
  if (chi.size() != nc) throw Error(ErrorKind::Usage, "class function length does not match the table");
  std::vector<ClassFunction> rows(max_degree + 1, ClassFunction(nc));

  parallel_for(nc, threads, [&](std::size_t c) {
    std::vector<Cyclotomic> psi(max_degree + 1);
    for (unsigned k = 1; k <= max_degree; ++k) psi[k] = chi[power_class(table, c, k)];
    std::vector<Cyclotomic> s(max_degree + 1);
    s[0] = Cyclotomic(1);
    for (unsigned d = 1; d <= max_degree; ++d) {
      Cyclotomic acc;
      for (unsigned k = 1; k <= d; ++k) acc += psi[k] * s[d - k];
      acc *= Cyclotomic(Rational(1, d));
      s[d] = std::move(acc);
    }
    for (unsigned d = 0; d <= max_degree; ++d) rows[d][c] = std::move(s[d]);
  });
  return rows;
}

std::vector<ClassFunction> symmetric_power_values(const CharacterTable& table, std::size_t char_index,
                                                  unsigned max_degree, unsigned threads) {
  return symmetric_power_values(table, table.character(char_index).values, max_degree, threads);
}

ClassFunction dual_character(const CharacterTable& table, std::size_t char_index) {
  ClassFunction out;
  for (const Cyclotomic& v : table.character(char_index).values) out.push_back(v.conjugate());
  return out;
}

std::vector<Integer> invariant_dimensions(const CharacterTable& table, const ClassFunction& chi,
                                          unsigned max_degree, unsigned threads) {
  const auto rows = symmetric_power_values(table, chi, max_degree, threads);
  std::vector<Integer> out;
  out.reserve(rows.size());
  for (std::size_t d = 0; d < rows.size(); ++d) {
    // fixed class order, independent of how the columns were scheduled
    Cyclotomic total;
    for (std::size_t c = 0; c < rows[d].size(); ++c)
      total += Cyclotomic(Rational(table.classes()[c].size)) * rows[d][c];
    auto r = total.as_rational();
    if (!r)
      throw Error(ErrorKind::NonIntegerCoefficient, table.group_name() + ": m_" + std::to_string(d) +
                                                        " is irrational: " + total.to_string() + "/|G|");
    Rational m = *r / Rational(table.order());
    if (m.get_den() != 1 || m < 0)
      throw Error(ErrorKind::NonIntegerCoefficient,
                  table.group_name() + ": m_" + std::to_string(d) + " = " + m.get_str() +
                      " is not a nonnegative integer");
    out.push_back(m.get_num());
  }
  return out;
}

MolienProfile molien_coefficients(const CharacterTable& table, std::size_t char_index, unsigned max_degree,
                                  unsigned threads) {
  MolienProfile p;
  p.table_name = table.group_name();
  p.char_index = char_index;
  p.char_degree = table.character(char_index).degree;
  p.max_degree = max_degree;
  p.coefficients = invariant_dimensions(table, dual_character(table, char_index), max_degree, threads);
  return p;
}

std::string render_series(const std::vector<Integer>& coefficients) {
  std::string out;
  for (std::size_t d = 0; d < coefficients.size(); ++d) {
    const Integer& m = coefficients[d];
    if (m == 0 && d != 0) continue;
    if (!out.empty()) out += " + ";
    if (d == 0) {
      out += m.get_str();
      continue;
    }
    if (m != 1) out += m.get_str();
    out += "t";
    if (d > 1) out += "^" + std::to_string(d);
  }
  out += " + O(t^" + std::to_string(coefficients.size()) + ")";
  return out;
}

std::string render_plain(const MolienProfile& profile) {
  std::string out = profile.table_name + ":";
  for (std::size_t d = 0; d < profile.coefficients.size(); ++d)
    out += (d ? ", " : " ") + profile.coefficients[d].get_str();
  return out;
}

nlohmann::json to_json(const MolienProfile& profile) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const Integer& m : profile.coefficients) coeffs.push_back(integer_to_json(m));
  return {{"table_name", profile.table_name},
          {"char_index", profile.char_index},
          {"char_degree", integer_to_json(profile.char_degree)},
          {"max_degree", profile.max_degree},
          {"coefficients", coeffs}};
}

MolienProfile profile_from_json(const nlohmann::json& j) {
  try {
    MolienProfile p;
    p.table_name = j.at("table_name").get<std::string>();
    p.char_index = j.at("char_index").get<std::size_t>();
    p.char_degree = integer_from_json(j.at("char_degree"));
    p.max_degree = j.at("max_degree").get<unsigned>();
    for (const auto& m : j.at("coefficients")) p.coefficients.push_back(integer_from_json(m));
    if (p.coefficients.size() != p.max_degree + 1)
      throw Error(ErrorKind::Parse, "profile has " + std::to_string(p.coefficients.size()) +
                                        " coefficients for max_degree " + std::to_string(p.max_degree));
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed profile: ") + e.what());
  }
}

ParsedSeries parse_series(const std::string& text) {
  std::string s;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text.compare(i, 5, "\\left") == 0) {
      i += 4;
    } else if (text.compare(i, 6, "\\right") == 0) {
      i += 5;
    } else if (text[i] != ' ' && text[i] != '{' && text[i] != '}' && text[i] != '$') {
      s += text[i];
    }
  }
  auto bad = [&](const std::string& why) { return Error(ErrorKind::Parse, "series '" + text + "': " + why); };
  auto digits = [](const std::string& t) {
    return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
  };

  ParsedSeries out;
  std::vector<std::pair<unsigned, Integer>> terms;
  bool have_tail = false;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t end = s.find('+', pos);
    if (end == std::string::npos) end = s.size();
    const std::string term = s.substr(pos, end - pos);
    pos = end + 1;
    if (term.empty()) throw bad("empty term");
    if (have_tail) throw bad("terms after the O() tail");
    if (term.rfind("O(t", 0) == 0) {
      if (term.back() != ')') throw bad("unterminated tail " + term);
      std::string e = term.substr(3, term.size() - 4);
      if (e.empty()) e = "^1";
      if (e[0] != '^' || !digits(e.substr(1))) throw bad("bad tail " + term);
      out.order = static_cast<unsigned>(std::stoul(e.substr(1)));
      have_tail = true;
      continue;
    }
    const std::size_t t = term.find('t');
    const std::string coeff = term.substr(0, t);
    if (t == std::string::npos) {
      if (!digits(coeff)) throw bad("bad term " + term);
      terms.emplace_back(0, Integer(coeff));
      continue;
    }
    if (!coeff.empty() && !digits(coeff)) throw bad("bad coefficient in " + term);
    unsigned exp = 1;
    const std::string rest = term.substr(t + 1);
    if (!rest.empty()) {
      if (rest[0] != '^' || !digits(rest.substr(1))) throw bad("bad exponent in " + term);
      exp = static_cast<unsigned>(std::stoul(rest.substr(1)));
    }
    terms.emplace_back(exp, coeff.empty() ? Integer(1) : Integer(coeff));
  }
  if (!have_tail) throw bad("missing O() tail");
  out.coefficients.assign(out.order, Integer(0));
  unsigned last = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& [e, c] = terms[i];
    if (i > 0 && e <= last) throw bad("exponents must increase");
    if (e >= out.order) throw bad("term t^" + std::to_string(e) + " beyond the tail");
    out.coefficients[e] = c;
    last = e;
  }
  return out;
}

}  // namespace molien
