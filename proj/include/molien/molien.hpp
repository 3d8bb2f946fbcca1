#pragma once

// Molien coefficients m_d = dim Sym^d(V^*)^G from a character table, via the
// symmetric-power recurrence
//   chi_{S^d}(g) = (1/d) sum_{k=1..d} chi(g^k) chi_{S^{d-k}}(g).

#include <cstdint>
#include <string>
#include <vector>

#include "molien/chartab.hpp"

namespace molien {

inline constexpr unsigned kDefaultMaxDegree = 20;

struct MolienProfile {
  std::string table_name;
  std::size_t char_index = 0;
  Integer char_degree;
  unsigned max_degree = 0;
  std::vector<Integer> coefficients;  // m_0 .. m_D
};

/// Rows d = 0..D, one column per class: the character of Sym^d V.
std::vector<ClassFunction> symmetric_power_values(const CharacterTable& table, std::size_t char_index,
                                                  unsigned max_degree, unsigned threads = 1);

/// Same recurrence for an arbitrary class function (a character of V).
std::vector<ClassFunction> symmetric_power_values(const CharacterTable& table, const ClassFunction& chi,
                                                  unsigned max_degree, unsigned threads = 1);

ClassFunction dual_character(const CharacterTable& table, std::size_t char_index);

/// <Sym^d(chi), 1> for d = 0..D; each must be a nonnegative integer.
std::vector<Integer> invariant_dimensions(const CharacterTable& table, const ClassFunction& chi,
                                          unsigned max_degree, unsigned threads = 1);

/// m_d for the representation with character table.character(char_index),
/// computed on its dual.  threads = 0 means one per hardware thread.
MolienProfile molien_coefficients(const CharacterTable& table, std::size_t char_index,
                                  unsigned max_degree = kDefaultMaxDegree, unsigned threads = 0);

// Rendering.  render_series follows the layout of the published expansions:
// zero terms dropped, coefficient 1 printed as a bare monomial, constant
// term always present, closed by the O(t^{D+1}) tail.
std::string render_series(const std::vector<Integer>& coefficients);
std::string render_plain(const MolienProfile& profile);
nlohmann::json to_json(const MolienProfile& profile);
MolienProfile profile_from_json(const nlohmann::json& j);

struct ParsedSeries {
  std::vector<Integer> coefficients;  // 0 .. order-1
  unsigned order = 0;                 // the n of O(t^n)
};

/// Parses "1 + t^2 + 3t^5 + O(t^7)"; TeX braces and \left( \right) are accepted.
ParsedSeries parse_series(const std::string& text);

unsigned resolve_threads(unsigned requested);

}  // namespace molien
