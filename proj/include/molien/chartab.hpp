#pragma once

// Character tables of finite groups (and of Schur covers a.G) as exported
// from the standard character table library, plus the few operations the
// Molien recurrence needs: power maps on classes and inner products.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "molien/cyclo.hpp"

namespace molien {

struct ConjugacyClass {
  std::string name;
  Integer size;
  std::uint32_t element_order = 1;
  std::map<std::uint32_t, std::size_t> power_maps;  // prime -> class index
};

struct Character {
  std::string name;
  std::vector<Cyclotomic> values;
  Integer degree;
};

struct CoverInfo {
  std::string base;
  std::uint32_t multiplier = 1;
};

using ClassFunction = std::vector<Cyclotomic>;

class CharacterTable {
 public:
  // Validates every table invariant and throws Error(Validation) naming
  // the first violation.
  CharacterTable(std::string group_name, Integer order, std::vector<ConjugacyClass> classes,
                 std::vector<Character> characters, std::optional<CoverInfo> cover_of = {});

  const std::string& group_name() const noexcept { return group_name_; }
  const Integer& order() const noexcept { return order_; }
  const std::vector<ConjugacyClass>& classes() const noexcept { return classes_; }
  const std::vector<Character>& characters() const noexcept { return characters_; }
  const std::optional<CoverInfo>& cover_of() const noexcept { return cover_of_; }

  std::size_t num_classes() const noexcept { return classes_.size(); }
  const Character& character(std::size_t index) const;

  /// Lowest-index character of the given degree (ATLAS order), if any.
  std::optional<std::size_t> first_character_of_degree(const Integer& degree) const;

 private:
  std::string group_name_;
  Integer order_;
  std::vector<ConjugacyClass> classes_;
  std::vector<Character> characters_;
  std::optional<CoverInfo> cover_of_;
};

CharacterTable ingest_table(std::string_view bytes);
CharacterTable load_table_file(const std::string& path);

nlohmann::json to_json(const CharacterTable& table);
std::string serialize(const CharacterTable& table);

/// Class of g^k for g in class_index.
std::size_t power_class(const CharacterTable& table, std::size_t class_index, std::uint64_t k);

/// chi(g^k) for g in class_index.
const Cyclotomic& char_value_at_power(const CharacterTable& table, std::size_t char_index,
                                      std::size_t class_index, std::uint64_t k);

/// (1/|G|) sum over classes of |class| f(c) conj(g(c)).
Rational inner_product(const CharacterTable& table, const ClassFunction& f, const ClassFunction& g);

std::vector<std::uint32_t> prime_divisors(std::uint64_t n);
std::vector<std::uint32_t> primes_below(std::uint32_t n);

}  // namespace molien
