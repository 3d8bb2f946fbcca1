#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "molien/error.hpp"
#include "molien/rdplan.hpp"

using namespace molien;

namespace {

std::string data(const std::string& rel) { return std::string(MOLIEN_TEST_DATA_DIR) + "/" + rel; }

const GroupMetadata& meta() {
  static const GroupMetadata m = load_metadata_file(data("sporadic.json"));
  return m;
}

std::map<std::string, BoundReport> all_reports() {
  std::map<std::string, BoundReport> out;
  for (const DegreePlan& p : meta().plans) out.emplace(p.group, compute_bound(p));
  return out;
}

std::string raw_metadata() {
  std::ifstream in(data("sporadic.json"));
  std::stringstream b;
  b << in.rdbuf();
  return b.str();
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Usage;
}

std::vector<Integer> ints(std::initializer_list<long> v) {
  std::vector<Integer> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("bounds for all 26 groups") {
  const std::map<std::string, std::int64_t> expected = {
      {"J2", 5},    {"M11", 6},   {"M22", 8},   {"M12", 7},    {"Suz", 10},   {"J3", 16},   {"M23", 17},
      {"HS", 18},   {"McL", 19},  {"M24", 18},  {"Co3", 20},   {"Co2", 20},   {"Co1", 21},  {"Ru", 26},
      {"He", 48},   {"J1", 51},   {"Fi22", 74}, {"HN", 129},   {"Th", 244},   {"ON", 338},  {"Fi23", 776},
      {"Fi24'", 779}, {"J4", 1328}, {"Ly", 2475}, {"B", 4365}, {"M", 196874}};
  REQUIRE(meta().plans.size() == 26);
  for (const DegreePlan& p : meta().plans) {
    CAPTURE(p.group);
    const BoundReport r = compute_bound(p);
    CHECK(r.dim_x == expected.at(p.group));
    CHECK(r.dim_x == p.expected_dim_x);
    CHECK(r.rd_bound == r.dim_x);
  }
  CHECK(compute_bound(meta().plan("J2")).bezout_degree == 1);
  CHECK(compute_bound(meta().plan("M11")).bezout_degree == 24);
  CHECK(compute_bound(meta().plan("M11")).z_degree == 4);
  CHECK(compute_bound(meta().plan("M")).bezout_degree == Integer(2 * 3 * 4 * 5 * 6 * 6 * 6 * 7));
  CHECK(kind_of([] { meta().plan("Pariah"); }) == ErrorKind::UnknownGroup);
}

TEST_CASE("irreducibility degree test") {
  const auto fi23 = check_irreducibility_degree(meta().plan("Fi23"));
  CHECK(fi23.applicable);
  CHECK(fi23.product == 600);
  CHECK(fi23.perm_dim == 31671);
  CHECK(fi23.ok);
  const auto he = check_irreducibility_degree(meta().plan("He"));
  CHECK(he.product == 12);
  CHECK(he.ok);
  const auto b = check_irreducibility_degree(meta().plan("B"));
  CHECK(b.product == 3072);
  CHECK(b.perm_dim == Integer("13571955000"));
  CHECK(b.ok);
  for (const char* g : {"M11", "M12", "M23", "M24"}) {
    CAPTURE(g);
    CHECK_FALSE(check_irreducibility_degree(meta().plan(g)).applicable);
    CHECK(irreducibility_exempt(g));
  }
  for (const DegreePlan& p : meta().plans)
    if (!irreducibility_exempt(p.group)) CHECK(check_irreducibility_degree(p).ok);

  // equality is not enough
  DegreePlan edge = meta().plan("He");
  edge.perm_dim = 12;
  CHECK_FALSE(check_irreducibility_degree(edge).ok);
}

TEST_CASE("monomial counts") {
  CHECK(monomial_count({2, 6}, 6) == 2);
  CHECK(monomial_count({2, 3, 4, 5, 6, 6, 6, 7}, 6) == 6);
  CHECK(monomial_count({}, 0) == 1);
  CHECK(monomial_count({}, 3) == 0);
  CHECK(monomial_count({1}, 9) == 1);
  CHECK(monomial_count({1, 1}, 4) == 5);
}

TEST_CASE("feasibility ledger") {
  // Co3 at degree 6 needs two invariants
  const auto co3 = check_plan_feasibility({2, 6}, ints({1, 0, 1, 0, 1, 0, 2, 0}));
  CHECK(co3.ok);
  REQUIRE(co3.ledger.size() == 2);
  CHECK(co3.ledger[1].degree == 6);
  CHECK(co3.ledger[1].required == 2);
  CHECK(co3.ledger[1].available == 2);
  CHECK(co3.ledger[1].ok);

  // a plan {2, 4} against m_2 = m_4 = 1 needs two quartics but finds one
  const auto bad = check_plan_feasibility({2, 4}, ints({1, 0, 1, 0, 1}));
  CHECK_FALSE(bad.ok);
  CHECK(bad.ledger[0].ok);
  CHECK_FALSE(bad.ledger[1].ok);
  CHECK(bad.ledger[1].required == 2);

  CHECK(kind_of([] { check_plan_feasibility({2, 6}, ints({1, 0, 1, 0, 1, 0})); }) == ErrorKind::ProfileTooShort);
  CHECK(check_plan_feasibility({}, ints({1})).ok);
  CHECK(check_plan_feasibility({}, ints({1})).ledger.empty());
  CHECK(kFeasibleLabel == "feasible (necessary condition)");
}

TEST_CASE("published rows parse and errata apply") {
  const DegreePlan& m11 = meta().plan("M11");
  REQUIRE(m11.published.has_value());
  CHECK(m11.published->coefficients() == ints({1, 0, 1, 1, 2, 3, 5, 6, 11, 16, 26, 38, 61, 91}));
  const DegreePlan& ly = meta().plan("Ly");
  REQUIRE(ly.published.has_value());
  REQUIRE(ly.published->errata.size() == 1);
  CHECK(ly.published->coefficients()[7] == 2104);
  // an erratum whose printed value does not match the row is refused
  PublishedRow row = *ly.published;
  row.errata[0].printed = 5;
  CHECK_THROWS_AS(row.coefficients(), Error);
  for (const DegreePlan& p : meta().plans) CHECK(p.published.has_value());
}

TEST_CASE("alternative plans are flagged") {
  int alts = 0;
  for (const DegreePlan& p : meta().plans)
    if (p.alt_plan) {
      ++alts;
      CHECK(p.alt_plan->unproven);
    }
  CHECK(alts == 5);
  CHECK(meta().plan("M22").alt_plan->z_degrees == std::vector<unsigned>{6});
}

TEST_CASE("subquotient monotonicity") {
  const auto reports = all_reports();
  CHECK(check_monotonicity(meta().subquotients, reports).empty());
  CHECK(meta().subquotients.relation("Co1", "Suz") == Relation::Subquotient);
  CHECK(meta().subquotients.relation("M12", "M11") == Relation::Subquotient);
  CHECK(meta().subquotients.relation("J1", "M11") == Relation::NotSubquotient);
  CHECK(meta().subquotients.relation("M11", "M11") == Relation::Equal);
  CHECK(meta().subquotients.relation("M11", "M12") == Relation::Undefined);
  CHECK(reports.at("Suz").dim_x < reports.at("Co1").dim_x);

  auto bumped = reports;
  bumped.at("M11").dim_x = 100;
  const auto v = check_monotonicity(meta().subquotients, bumped);
  bool found = false;
  for (const Violation& x : v)
    if (x.group == "M24" && x.sub == "M11") {
      found = true;
      CHECK(x.dim_group == 18);
      CHECK(x.dim_sub == 100);
    }
  CHECK(found);

  auto missing = reports;
  missing.erase("Co1");
  CHECK(kind_of([&] { check_monotonicity(meta().subquotients, missing); }) == ErrorKind::MissingGroup);
}

TEST_CASE("dimension chain") {
  const auto reports = all_reports();
  CHECK(check_dimension_chain(meta().dimension_chain, reports).empty());
  CHECK(reports.at("M24").dim_x == reports.at("HS").dim_x);
  CHECK(reports.at("Co3").dim_x == reports.at("Co2").dim_x);
  // stable sort, so ties keep the order they are listed in
  std::vector<std::string> order;
  std::istringstream names(meta().dimension_chain);
  for (std::string tok; names >> tok;)
    if (reports.count(tok)) order.push_back(tok);
  const std::string derived = derive_dimension_chain(order, reports);
  CHECK(derived.find("M24 = HS") != std::string::npos);
  CHECK(derived.find("Co3 = Co2") != std::string::npos);
  CHECK(check_dimension_chain(derived, reports).empty());

  // a wrong relation in the chain is reported
  std::string broken = meta().dimension_chain;
  broken.replace(broken.find("M24 = HS"), 8, "M24 < HS");
  const auto problems = check_dimension_chain(broken, reports);
  REQUIRE(problems.size() == 1);
  CHECK(problems[0].find("M24 < HS") != std::string::npos);
  CHECK_FALSE(check_dimension_chain("J2 < M11", reports).empty());
}

TEST_CASE("comparison tables") {
  const auto f5 = comparison_table(meta().plans, 5);
  const auto f6 = comparison_table(meta().plans, 6);
  CHECK(f5.size() + f6.size() == 26);
  for (const auto& r : f5) CHECK(r.ok);
  for (const auto& r : f6) CHECK(r.ok);
  auto row = [](const std::vector<ComparisonRow>& rows, const std::string& g) {
    for (const auto& r : rows)
      if (r.group == g) return r;
    FAIL("row missing");
    return ComparisonRow{};
  };
  const auto m = row(f5, "M");
  CHECK(m.linear_dim == 196883);
  CHECK(m.projective_dim == 196882);
  CHECK(m.dim_x == 196874);
  const auto fi24 = row(f6, "Fi24'");
  CHECK(fi24.linear_dim == 8671);
  CHECK(fi24.projective_dim == 782);
  CHECK(fi24.dim_x == 779);
  CHECK(fi24.cover == "3.Fi24'");
  const auto j2 = row(f6, "J2");
  CHECK(j2.linear_dim == 14);
  CHECK(j2.projective_dim == 5);
  CHECK(j2.dim_x == 5);
  const auto suz = row(f6, "Suz");
  CHECK(suz.linear_dim == 143);
  CHECK(suz.dim_x == 10);
  CHECK(suz.cover == "6.Suz");

  const std::string text = render_comparison(f6, 6);
  CHECK(text.find("3.Fi24'") != std::string::npos);
  CHECK(text.find("a.G") != std::string::npos);
}

TEST_CASE("figure 2 and the subquotient grid render") {
  const std::string fig2 = render_figure2(meta().plans);
  CHECK(fig2.find("N/A") != std::string::npos);  // J2 has no plan degrees
  CHECK(fig2.find("97239461142009186000") != std::string::npos);
  CHECK(fig2.find("2, 3, 4, 5, 6, 6, 6, 7") != std::string::npos);
  const std::string grid = render_subquotients(meta().subquotients);
  CHECK(grid.find('+') != std::string::npos);
  CHECK(grid.find('-') != std::string::npos);
}

TEST_CASE("metadata validation") {
  const nlohmann::json doc = nlohmann::json::parse(raw_metadata());
  CHECK_NOTHROW(parse_metadata(doc.dump()));

  auto mutated = [&](const std::function<void(nlohmann::json&)>& f) {
    nlohmann::json d = doc;
    f(d);
    return d.dump();
  };
  // more invariants than the ambient dimension allows
  CHECK(kind_of([&] { parse_metadata(mutated([](auto& d) { d["groups"][1]["ambient_dim"] = 2; })); }) ==
        ErrorKind::Validation);
  CHECK(kind_of([&] { parse_metadata(mutated([](auto& d) { d["groups"][1]["comparison_figure"] = 7; })); }) ==
        ErrorKind::Validation);
  CHECK(kind_of([&] { parse_metadata(mutated([](auto& d) { d["groups"][0].erase("cover"); })); }) ==
        ErrorKind::Validation);
  CHECK(kind_of([&] { parse_metadata(mutated([](auto& d) { d["groups"][2]["group"] = "M11"; })); }) ==
        ErrorKind::Validation);
  CHECK(kind_of([&] { parse_metadata("{\"groups\": ["); }) == ErrorKind::Parse);
  CHECK(kind_of([] { load_metadata_file("/nonexistent/sporadic.json"); }) == ErrorKind::Io);
}

TEST_CASE("bound report json") {
  BoundReport r = compute_bound(meta().plan("M"));
  r.irreducibility_ok = true;
  const auto j = to_json(r);
  CHECK(j["dim_x"] == 196874);
  CHECK(j["irreducibility_ok"] == true);
  CHECK(j["feasibility_ok"].is_null());
  BoundReport m11 = compute_bound(meta().plan("M11"));
  CHECK(to_json(m11)["irreducibility_ok"] == "not applicable");
}
