#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>

#include "molien/error.hpp"
#include "molien/molien.hpp"

using namespace molien;

namespace {

std::string table_path(const std::string& name) { return std::string(MOLIEN_TEST_DATA_DIR) + "/tables/" + name + ".json"; }

const CharacterTable& cached(const std::string& name) {
  static std::map<std::string, CharacterTable> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, load_table_file(table_path(name))).first;
  return it->second;
}

std::vector<std::string> shipped_tables() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(std::string(MOLIEN_TEST_DATA_DIR) + "/tables"))
    if (e.path().extension() == ".json") out.push_back(e.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

std::vector<Integer> ints(std::initializer_list<long> v) {
  std::vector<Integer> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

std::vector<Integer> series(const std::string& text) { return parse_series(text).coefficients; }

CharacterTable trivial_group() {
  ConjugacyClass e{"1a", 1, 1, {}};
  return CharacterTable("1", 1, {e}, {Character{"X.1", {Cyclotomic(1)}, 1}});
}

}  // namespace

TEST_CASE("symmetric powers: first row, identity column, sign of C2") {
  const CharacterTable& m11 = cached("M11");
  const auto rows = symmetric_power_values(m11, 1, 12);
  REQUIRE(rows.size() == 13);
  for (const Cyclotomic& v : rows[0]) CHECK(v == Cyclotomic(1));
  CHECK(rows[1] == m11.character(1).values);
  for (unsigned d = 0; d <= 12; ++d) CHECK(rows[d][0] == Cyclotomic(binomial(10 + d - 1, d)));

  const CharacterTable& c2 = cached("C2");
  const auto sign = symmetric_power_values(c2, 1, 4);
  CHECK(sign[2] == ClassFunction{Cyclotomic(1), Cyclotomic(1)});
  CHECK(sign[3] == ClassFunction{Cyclotomic(1), Cyclotomic(-1)});
}

TEST_CASE("identity column on every selected character") {
  for (const std::string& name : {"2.J2", "12.M22", "3.ON", "M"}) {
    CAPTURE(name);
    const CharacterTable& t = cached(name);
    const std::size_t idx = t.characters().size() > 1 ? 1 : 0;
    const auto rows = symmetric_power_values(t, idx, 10);
    const unsigned long deg = t.character(idx).degree.get_ui();
    for (unsigned d = 0; d <= 10; ++d) CHECK(rows[d][0] == Cyclotomic(binomial(deg + d - 1, d)));
  }
}

TEST_CASE("trivial group gives binomial coefficients") {
  const CharacterTable t = trivial_group();
  for (long n : {1, 2, 5, 9}) {
    const auto m = invariant_dimensions(t, {Cyclotomic(n)}, 15);
    for (unsigned d = 0; d <= 15; ++d) CHECK(m[d] == binomial(n + d - 1, d));
  }
}

TEST_CASE("published rows") {
  const MolienProfile m11 = molien_coefficients(cached("M11"), 1, 13);
  CHECK(m11.coefficients == ints({1, 0, 1, 1, 2, 3, 5, 6, 11, 16, 26, 38, 61, 91}));
  CHECK(m11.char_degree == 10);
  CHECK(m11.table_name == "M11");

  const MolienProfile m12 = molien_coefficients(cached("M12"), 1, 14);
  CHECK(m12.coefficients ==
        series("1 + t^2 + t^3 + 2t^4 + 2t^5 + 5t^6 + 4t^7 + 9t^8 + 10t^9 + 17t^10 + 20t^11 + 36t^12 + 39t^13 + 67t^14 + O(t^15)"));

  const CharacterTable& m22 = cached("12.M22");
  const MolienProfile pm22 = molien_coefficients(m22, *m22.first_character_of_degree(10), 19);
  CHECK(pm22.coefficients == series("1 + t^4 + t^6 + 2t^8 + 3t^10 + 6t^12 + 9t^14 + 15t^16 + 26t^18 + O(t^20)"));

  const MolienProfile hs = molien_coefficients(cached("HS"), 1, 14);
  CHECK(hs.coefficients ==
        series("1 + t^2 + 2t^4 + t^5 + 5t^6 + 3t^7 + 12t^8 + 9t^9 + 29t^10 + 28t^11 + 77t^12 + 87t^13 + 220t^14 + O(t^15)"));

  const MolienProfile mcl = molien_coefficients(cached("McL"), 1, 15);
  CHECK(mcl.coefficients == series("1 + t^2 + t^4 + t^5 + 2t^6 + 3t^7 + 5t^8 + 6t^9 + 10t^10 + 14t^11 + 21t^12 + "
                                   "29t^13 + 48t^14 + 70t^15 + O(t^16)"));

  // 6-dimensional representation of the double cover of J2
  const CharacterTable& j2 = cached("2.J2");
  const MolienProfile pj2 = molien_coefficients(j2, *j2.first_character_of_degree(6), 39);
  CHECK(pj2.coefficients ==
        series("1 + t^12 + t^20 + 2t^24 + t^28 + 2t^30 + 3t^32 + t^34 + 4t^36 + 2t^38 + O(t^40)"));

  // 18-dimensional representation of the triple cover of J3
  const CharacterTable& j3 = cached("3.J3");
  const MolienProfile pj3 = molien_coefficients(j3, *j3.first_character_of_degree(18), 15);
  CHECK(pj3.coefficients == series("1 + t^6 + t^9 + 10t^12 + 26t^15 + O(t^16)"));
}

TEST_CASE("m_0 = 1, m_1 = 0 and duality indifference on every shipped character") {
  for (const std::string& name : shipped_tables()) {
    CAPTURE(name);
    const CharacterTable& t = cached(name);
    const unsigned D = t.num_classes() > 100 ? 4 : 6;
    for (std::size_t j = 0; j < t.characters().size(); ++j) {
      CAPTURE(j);
      const MolienProfile p = molien_coefficients(t, j, D, 1);
      CHECK(p.coefficients[0] == 1);
      CHECK(p.coefficients[1] == (j == 0 ? 1 : 0));
      const auto direct = invariant_dimensions(t, t.character(j).values, D, 1);
      CHECK(direct == p.coefficients);
    }
  }
}

TEST_CASE("dual character") {
  const CharacterTable& m11 = cached("M11");
  // M11 X.2 is rational, hence self-dual
  CHECK(dual_character(m11, 1) == m11.character(1).values);
  CHECK(dual_character(m11, 0) == m11.character(0).values);
  const CharacterTable& a5 = cached("2.A5");
  for (std::size_t j = 0; j < a5.characters().size(); ++j) {
    ClassFunction twice;
    for (const Cyclotomic& v : dual_character(a5, j)) twice.push_back(v.conjugate());
    CHECK(twice == a5.character(j).values);
  }
  // a character with nonreal values is not self-dual
  const CharacterTable& j3 = cached("3.J3");
  const std::size_t idx = *j3.first_character_of_degree(18);
  CHECK(dual_character(j3, idx) != j3.character(idx).values);
}

TEST_CASE("central character kills degrees on every cover table") {
  for (const std::string& name : {"2.A5", "2.J2", "12.M22", "3.J3", "6.Suz", "2.Ru", "3.ON", "2.Co1", "3.F3+"}) {
    CAPTURE(name);
    const CharacterTable& t = cached(name);
    REQUIRE(t.cover_of().has_value());
    for (std::size_t j = 0; j < t.characters().size(); j += std::max<std::size_t>(1, t.characters().size() / 12)) {
      const Integer& deg = t.character(j).degree;
      // order of the subgroup of central roots of unity chi(z)/chi(1)
      unsigned r = 1;
      for (std::size_t c = 0; c < t.num_classes(); ++c) {
        if (t.classes()[c].size != 1) continue;
        const Cyclotomic w = t.character(j).values[c] * Cyclotomic(Rational(1, 1) / Rational(deg));
        unsigned k = 1;
        Cyclotomic pw = w;
        while (pw != Cyclotomic(1)) {
          pw *= w;
          ++k;
        }
        r = std::lcm(r, k);
      }
      const unsigned D = t.num_classes() > 100 ? 8 : 12;
      const auto p = molien_coefficients(t, j, D, 1);
      for (unsigned d = 0; d <= D; ++d)
        if (d % r != 0) CHECK(p.coefficients[d] == 0);
    }
  }
  // the headline cases: 2.A5 vanishes in odd degrees, 3.J3 off multiples of 3
  const auto a5 = molien_coefficients(cached("2.A5"), 5, 30, 1);
  for (unsigned d = 1; d <= 30; d += 2) CHECK(a5.coefficients[d] == 0);
  const CharacterTable& j3 = cached("3.J3");
  const auto pj3 = molien_coefficients(j3, *j3.first_character_of_degree(18), 20, 1);
  for (unsigned d = 0; d <= 20; ++d)
    if (d % 3 != 0) CHECK(pj3.coefficients[d] == 0);
}

TEST_CASE("output does not depend on the thread count") {
  for (const std::string& name : {"12.M22", "6.Suz", "M"}) {
    CAPTURE(name);
    const CharacterTable& t = cached(name);
    const std::size_t idx = name == "M" ? 1 : *t.first_character_of_degree(name == "6.Suz" ? 12 : 10);
    const MolienProfile one = molien_coefficients(t, idx, 16, 1);
    const auto rows1 = symmetric_power_values(t, idx, 8, 1);
    for (unsigned threads : {2u, 3u, 8u}) {
      const MolienProfile many = molien_coefficients(t, idx, 16, threads);
      CHECK(many.coefficients == one.coefficients);
      CHECK(render_plain(many) == render_plain(one));
      CHECK(symmetric_power_values(t, idx, 8, threads) == rows1);
    }
  }
}

TEST_CASE("non-character input is caught") {
  const CharacterTable& c2 = cached("C2");
  // (1, 0) is not a character: <Sym^1, 1> = 1/2
  try {
    invariant_dimensions(c2, {Cyclotomic(1), Cyclotomic(0)}, 3);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonIntegerCoefficient);
  }
  CHECK_THROWS_AS(molien_coefficients(c2, 1, 0), Error);
}

TEST_CASE("rendering") {
  CHECK(render_series(ints({1, 0, 1, 1, 2, 3, 5, 6, 11, 16, 26, 38, 61, 91})) ==
        "1 + t^2 + t^3 + 2t^4 + 3t^5 + 5t^6 + 6t^7 + 11t^8 + 16t^9 + 26t^10 + 38t^11 + 61t^12 + 91t^13 + O(t^14)");
  CHECK(render_series(ints({1, 2, 0})) == "1 + 2t + O(t^3)");
  CHECK(render_series(ints({0, 1})) == "0 + t + O(t^2)");
  MolienProfile p{"M11", 1, 10, 3, ints({1, 0, 1, 1})};
  CHECK(render_plain(p) == "M11: 1, 0, 1, 1");
  const MolienProfile back = profile_from_json(to_json(p));
  CHECK(back.coefficients == p.coefficients);
  CHECK(back.table_name == "M11");
  CHECK(back.char_degree == 10);
}

TEST_CASE("series parser") {
  const ParsedSeries s = parse_series(R"(1 + t^{2} + 2t^{4} + O\left( t^{6} \right))");
  CHECK(s.order == 6);
  CHECK(s.coefficients == ints({1, 0, 1, 0, 2, 0}));
  const ParsedSeries big = parse_series("1 + 230067642077481t^15 + O(t^16)");
  CHECK(big.coefficients[15] == Integer("230067642077481"));
  CHECK_THROWS_AS(parse_series("1 + t^2"), Error);
  CHECK_THROWS_AS(parse_series("1 + + t^2 + O(t^3)"), Error);
  CHECK_THROWS_AS(parse_series("1 + t^4 + t^2 + O(t^5)"), Error);
  CHECK_THROWS_AS(parse_series("1 + t^5 + O(t^5)"), Error);
  for (const auto& row : {ints({1, 0, 0, 4}), ints({1, 0, 1, 1, 2, 3})})
    CHECK(parse_series(render_series(row)).coefficients == row);
}
