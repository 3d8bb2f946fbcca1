#include "molien/chartab.hpp"

#include <cerrno>
#include <cstring>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "molien/error.hpp"

namespace molien {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::Validation, what); }

std::string class_label(const std::vector<ConjugacyClass>& classes, std::size_t i) {
  return classes[i].name + " (index " + std::to_string(i) + ")";
}

// Integer value of a cyclotomic if it is a rational integer, else nullptr.
const Integer* integral_part(const Cyclotomic& v) {
  if (v.conductor() != 1 || v.terms().empty()) return nullptr;
  const Rational& q = v.terms().front().coeff;
  return q.get_den() == 1 ? &q.get_num() : nullptr;
}

// Sum over classes of size * f(c) * g(c), g already conjugated.
class ClassSum {
 public:
  void add(const Integer& size, const Cyclotomic& f, const Cyclotomic& g) {
    if (f.is_zero() || g.is_zero()) return;
    const Integer* fi = integral_part(f);
    const Integer* gi = integral_part(g);
    if (fi && gi) {
      tmp_ = *fi * *gi;
      whole_ += tmp_ * size;
      return;
    }
    if (f.is_rational() && g.is_rational()) {
      frac_ += f.terms().front().coeff * g.terms().front().coeff * size;
      return;
    }
    const std::uint32_t n = static_cast<std::uint32_t>(lcm_u64(f.conductor(), g.conductor()));
    auto it = dense_.find(n);
    if (it == dense_.end()) it = dense_.emplace(n, DenseAccumulator(n)).first;
    it->second.add_product(f, g, Rational(size));
  }

  Cyclotomic value() const {
    Cyclotomic total(frac_ + Rational(whole_));
    for (const auto& [n, acc] : dense_) total += acc.value();
    return total;
  }

 private:
  Integer whole_ = 0;
  Integer tmp_;
  Rational frac_ = 0;
  std::map<std::uint32_t, DenseAccumulator> dense_;
};

}  // namespace

std::vector<std::uint32_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(static_cast<std::uint32_t>(p));
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(static_cast<std::uint32_t>(n));
  return out;
}

std::vector<std::uint32_t> primes_below(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = 2; p < n; ++p) {
    bool prime = true;
    for (std::uint32_t q : out) {
      if (q * q > p) break;
      if (p % q == 0) {
        prime = false;
        break;
      }
    }
    if (prime) out.push_back(p);
  }
  return out;
}

CharacterTable::CharacterTable(std::string group_name, Integer order,
                               std::vector<ConjugacyClass> classes,
                               std::vector<Character> characters,
                               std::optional<CoverInfo> cover_of)
    : group_name_(std::move(group_name)),
      order_(std::move(order)),
      classes_(std::move(classes)),
      characters_(std::move(characters)),
      cover_of_(std::move(cover_of)) {
  if (order_ <= 0) fail("group order must be positive");
  if (classes_.empty()) fail("table has no classes");
  if (classes_[0].size != 1 || classes_[0].element_order != 1)
    fail("class 0 must be the identity (size 1, element order 1), got " + classes_[0].name);

  Integer total = 0;
  std::set<std::uint32_t> exponent_primes;
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    const ConjugacyClass& c = classes_[i];
    if (c.size <= 0) fail("class " + class_label(classes_, i) + ": size must be positive");
    if (c.element_order == 0) fail("class " + class_label(classes_, i) + ": element order must be positive");
    if (i > 0 && c.element_order == 1) fail("class " + class_label(classes_, i) + ": only class 0 may have order 1");
    if (order_ % c.size != 0)
      fail("class " + class_label(classes_, i) + ": size " + c.size.get_str() +
           " does not divide group order " + order_.get_str());
    total += c.size;
    for (std::uint32_t p : prime_divisors(c.element_order)) exponent_primes.insert(p);
  }
  if (total != order_) fail("class sizes sum " + total.get_str() + " ≠ " + order_.get_str());

  for (std::size_t i = 0; i < classes_.size(); ++i) {
    const ConjugacyClass& c = classes_[i];
    std::set<std::uint32_t> needed = exponent_primes;
    for (std::uint32_t p : primes_below(c.element_order)) needed.insert(p);
    for (std::uint32_t p : needed) {
      if (!c.power_maps.count(p))
        fail("missing power map: prime " + std::to_string(p) + " at class " + class_label(classes_, i));
    }
    for (const auto& [p, target] : c.power_maps) {
      if (target >= classes_.size())
        fail("power map " + std::to_string(p) + " of class " + class_label(classes_, i) +
             " points outside the table");
      const std::uint32_t want = c.element_order / std::gcd(c.element_order, p);
      if (classes_[target].element_order != want)
        fail("power map " + std::to_string(p) + " of class " + class_label(classes_, i) + " lands in " +
             classes_[target].name + " of order " + std::to_string(classes_[target].element_order) +
             ", expected order " + std::to_string(want));
    }
  }

  for (std::size_t j = 0; j < characters_.size(); ++j) {
    Character& chi = characters_[j];
    if (chi.values.size() != classes_.size())
      fail("character " + chi.name + " has " + std::to_string(chi.values.size()) + " values, expected " +
           std::to_string(classes_.size()));
    const Integer* deg = integral_part(chi.values[0]);
    if (!deg || *deg <= 0)
      fail("character " + chi.name + ": value at the identity must be a positive integer, got " +
           chi.values[0].to_string());
    chi.degree = *deg;
  }

  // Row orthogonality, all pairs.
  std::vector<ClassFunction> duals(characters_.size());
  for (std::size_t j = 0; j < characters_.size(); ++j) {
    duals[j].reserve(classes_.size());
    for (const Cyclotomic& v : characters_[j].values) duals[j].push_back(v.conjugate());
  }
  for (std::size_t i = 0; i < characters_.size(); ++i) {
    for (std::size_t j = i; j < characters_.size(); ++j) {
      ClassSum sum;
      for (std::size_t c = 0; c < classes_.size(); ++c)
        sum.add(classes_[c].size, characters_[i].values[c], duals[j][c]);
      const Cyclotomic s = sum.value();
      const Integer want = i == j ? order_ : Integer(0);
      auto r = s.as_rational();
      if (!r || *r != Rational(want)) {
        const std::string got = r ? Rational(*r / Rational(order_)).get_str() : s.to_string() + "/|G|";
        fail("orthogonality failure at pair (" + std::to_string(i) + "," + std::to_string(j) + "): <" +
             characters_[i].name + "," + characters_[j].name + "> = " + got + ", expected " +
             (i == j ? "1" : "0"));
      }
    }
  }

  if (cover_of_ && cover_of_->multiplier == 0) fail("cover multiplier must be positive");
}

const Character& CharacterTable::character(std::size_t index) const {
  if (index >= characters_.size())
    throw Error(ErrorKind::Usage, "character index " + std::to_string(index) + " out of range for " + group_name_);
  return characters_[index];
}

std::optional<std::size_t> CharacterTable::first_character_of_degree(const Integer& degree) const {
  for (std::size_t j = 0; j < characters_.size(); ++j)
    if (characters_[j].degree == degree) return j;
  return std::nullopt;
}

std::size_t power_class(const CharacterTable& table, std::size_t class_index, std::uint64_t k) {
  const auto& classes = table.classes();
  if (class_index >= classes.size())
    throw Error(ErrorKind::Usage, "class index " + std::to_string(class_index) + " out of range");
  std::size_t c = class_index;
  for (;;) {
    k %= classes[c].element_order;
    if (k == 0) return 0;
    if (k == 1) return c;
    std::uint32_t p = 2;
    while (k % p != 0) ++p;
    auto it = classes[c].power_maps.find(p);
    if (it == classes[c].power_maps.end())
      throw Error(ErrorKind::MissingPowerMap,
                  "no " + std::to_string(p) + "-power map stored for class " + classes[c].name);
    c = it->second;
    k /= p;
  }
}

const Cyclotomic& char_value_at_power(const CharacterTable& table, std::size_t char_index,
                                      std::size_t class_index, std::uint64_t k) {
  return table.character(char_index).values[power_class(table, class_index, k)];
}

Rational inner_product(const CharacterTable& table, const ClassFunction& f, const ClassFunction& g) {
  if (f.size() != table.num_classes() || g.size() != table.num_classes())
    throw Error(ErrorKind::Usage, "class function length does not match the number of classes");
  ClassSum sum;
  for (std::size_t c = 0; c < f.size(); ++c) sum.add(table.classes()[c].size, f[c], g[c].conjugate());
  const Cyclotomic s = sum.value();
  auto r = s.as_rational();
  if (!r) throw Error(ErrorKind::NotRational, "inner product does not reduce to a rational: " + s.to_string());
  return *r / Rational(table.order());
}

// Ingestion

namespace {

using nlohmann::json;

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw Error(ErrorKind::Parse, where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw Error(ErrorKind::Parse, where + ": missing field '" + key + "'");
  return *it;
}

std::string string_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_string()) throw Error(ErrorKind::Parse, where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

std::uint32_t small_uint(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0 || v.get<std::int64_t>() > 0xffffffffLL)
    throw Error(ErrorKind::Parse, where + ": expected a nonnegative integer");
  return static_cast<std::uint32_t>(v.get<std::int64_t>());
}

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

CharacterTable from_json(const json& doc) {
  const std::string group = string_field(doc, "group", "table");
  Integer order = integer_from_json(field(doc, "order", group));

  std::optional<CoverInfo> cover;
  if (doc.contains("cover_of") && !doc["cover_of"].is_null()) {
    const json& cj = doc["cover_of"];
    cover = CoverInfo{string_field(cj, "base", group + " cover_of"),
                      small_uint(field(cj, "multiplier", group + " cover_of"), group + " cover_of.multiplier")};
  }

  const json& cls = field(doc, "classes", group);
  if (!cls.is_array()) throw Error(ErrorKind::Parse, group + ": 'classes' must be an array");
  std::vector<ConjugacyClass> classes;
  classes.reserve(cls.size());
  for (std::size_t i = 0; i < cls.size(); ++i) {
    const std::string where = group + " class " + std::to_string(i);
    ConjugacyClass c;
    c.name = string_field(cls[i], "name", where);
    c.size = integer_from_json(field(cls[i], "size", where));
    c.element_order = small_uint(field(cls[i], "order", where), where + " order");
    if (cls[i].contains("powermaps")) {
      const json& pm = cls[i]["powermaps"];
      if (!pm.is_object()) throw Error(ErrorKind::Parse, where + ": 'powermaps' must be an object");
      for (const auto& [key, target] : pm.items()) {
        std::uint32_t p = 0;
        try {
          std::size_t used = 0;
          const unsigned long v = std::stoul(key, &used);
          if (used != key.size()) throw std::invalid_argument(key);
          p = static_cast<std::uint32_t>(v);
        } catch (const std::exception&) {
          throw Error(ErrorKind::Parse, where + ": power map key '" + key + "' is not a number");
        }
        if (!is_prime(p)) throw Error(ErrorKind::Parse, where + ": power map key " + key + " is not prime");
        c.power_maps[p] = small_uint(target, where + " powermap " + key);
      }
    }
    classes.push_back(std::move(c));
  }

  const json& chs = field(doc, "characters", group);
  if (!chs.is_array()) throw Error(ErrorKind::Parse, group + ": 'characters' must be an array");
  std::vector<Character> characters;
  characters.reserve(chs.size());
  for (std::size_t j = 0; j < chs.size(); ++j) {
    const std::string where = group + " character " + std::to_string(j);
    Character chi;
    chi.name = chs[j].contains("name") ? string_field(chs[j], "name", where) : "X." + std::to_string(j + 1);
    const json& vals = field(chs[j], "values", where);
    if (!vals.is_array()) throw Error(ErrorKind::Parse, where + ": 'values' must be an array");
    chi.values.reserve(vals.size());
    for (const json& v : vals) chi.values.push_back(cyclotomic_from_json(v));
    characters.push_back(std::move(chi));
  }
  return CharacterTable(group, std::move(order), std::move(classes), std::move(characters), std::move(cover));
}

}  // namespace

CharacterTable ingest_table(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, "parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  try {
    return from_json(doc);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed table: ") + e.what());
  }
}

CharacterTable load_table_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path + ": " + std::strerror(errno));
  std::ostringstream buf;
  buf << in.rdbuf();
  return ingest_table(buf.str());
}

nlohmann::json to_json(const CharacterTable& table) {
  json doc;
  doc["group"] = table.group_name();
  doc["order"] = table.order().get_str();
  if (table.cover_of()) doc["cover_of"] = {{"base", table.cover_of()->base}, {"multiplier", table.cover_of()->multiplier}};
  json cls = json::array();
  for (const ConjugacyClass& c : table.classes()) {
    json pm = json::object();
    for (const auto& [p, t] : c.power_maps) pm[std::to_string(p)] = t;
    cls.push_back({{"name", c.name}, {"size", c.size.get_str()}, {"order", c.element_order}, {"powermaps", pm}});
  }
  doc["classes"] = std::move(cls);
  json chs = json::array();
  for (const Character& chi : table.characters()) {
    json vals = json::array();
    for (const Cyclotomic& v : chi.values) vals.push_back(to_json(v));
    chs.push_back({{"name", chi.name}, {"values", std::move(vals)}});
  }
  doc["characters"] = std::move(chs);
  return doc;
}

std::string serialize(const CharacterTable& table) { return to_json(table).dump(); }

}  // namespace molien
