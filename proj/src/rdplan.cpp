#include "molien/rdplan.hpp"

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "molien/error.hpp"

namespace molien {

std::vector<Integer> PublishedRow::coefficients() const {
  ParsedSeries s = parse_series(terms + " + O(t^" + std::to_string(order) + ")");
  for (const Erratum& e : errata) {
    if (e.degree >= s.coefficients.size() || s.coefficients[e.degree] != e.printed)
      throw Error(ErrorKind::Validation, "erratum at degree " + std::to_string(e.degree) +
                                             " does not match the printed row " + terms);
    s.coefficients[e.degree] = e.corrected;
  }
  return s.coefficients;
}

std::vector<unsigned> DegreePlan::degrees() const {
  std::vector<unsigned> all = y_degrees;
  all.insert(all.end(), z_degrees.begin(), z_degrees.end());
  std::sort(all.begin(), all.end());
  return all;
}

SubquotientTable::SubquotientTable(std::vector<std::string> groups,
                                   std::map<std::string, std::vector<std::string>> subs,
                                   std::map<std::string, std::vector<std::string>> non_subs)
    : groups_(std::move(groups)) {
  std::set<std::string> earlier;
  for (const std::string& g : groups_) {
    if (earlier.count(g)) throw Error(ErrorKind::Validation, "subquotient table lists " + g + " twice");
    cells_[{g, g}] = Relation::Equal;
    std::set<std::string> row;
    auto fill = [&](const std::vector<std::string>& names, Relation r) {
      for (const std::string& s : names) {
        if (!earlier.count(s))
          throw Error(ErrorKind::Validation, "subquotient row " + g + " names " + s +
                                                 ", which is not an earlier (smaller) group");
        if (!row.insert(s).second)
          throw Error(ErrorKind::Validation, "subquotient row " + g + " names " + s + " twice");
        cells_[{g, s}] = r;
      }
    };
    fill(subs[g], Relation::Subquotient);
    fill(non_subs[g], Relation::NotSubquotient);
    earlier.insert(g);
  }
}

Relation SubquotientTable::relation(const std::string& group, const std::string& sub) const {
  auto it = cells_.find({group, sub});
  return it == cells_.end() ? Relation::Undefined : it->second;
}

const DegreePlan& GroupMetadata::plan(const std::string& group) const {
  for (const DegreePlan& p : plans)
    if (p.group == group) return p;
  throw Error(ErrorKind::UnknownGroup, "unknown group " + group);
}

namespace {

using nlohmann::json;

std::vector<unsigned> degree_list(const json& j, const std::string& where) {
  std::vector<unsigned> out;
  for (const json& d : j) {
    const auto v = d.get<std::int64_t>();
    if (v < 1) throw Error(ErrorKind::Validation, where + ": invariant degrees must be positive");
    out.push_back(static_cast<unsigned>(v));
  }
  return out;
}

DegreePlan plan_from_json(const json& j) {
  DegreePlan p;
  p.group = j.at("group").get<std::string>();
  p.table_ref = j.at("table_ref").get<std::string>();
  p.char_degree = integer_from_json(j.at("char_degree"));
  p.ambient_dim = j.at("ambient_dim").get<std::int64_t>();
  p.y_degrees = degree_list(j.at("y_degrees"), p.group);
  p.z_degrees = degree_list(j.at("z_degrees"), p.group);
  p.perm_dim = integer_from_json(j.at("perm_dim"));
  p.expected_dim_x = j.at("expected_dim_x").get<std::int64_t>();
  p.linear_dim = j.at("linear_dim").get<std::int64_t>();
  p.comparison_figure = j.at("comparison_figure").get<int>();
  if (j.contains("cover")) p.cover = j["cover"].get<std::string>();
  if (j.contains("published_series")) {
    const json& a = j["published_series"];
    PublishedRow row;
    row.terms = a.at("terms").get<std::string>();
    row.order = a.at("order").get<unsigned>();
    if (a.contains("errata"))
      for (const json& e : a["errata"])
        row.errata.push_back(
            {e.at("degree").get<unsigned>(), integer_from_json(e.at("printed")), integer_from_json(e.at("corrected"))});
    p.published = std::move(row);
  }
  if (j.contains("alt_plan")) {
    const json& a = j["alt_plan"];
    p.alt_plan = AltPlan{degree_list(a.at("y_degrees"), p.group), degree_list(a.at("z_degrees"), p.group),
                         a.value("unproven", true)};
  }
  p.note = j.value("note", "");

  const auto count = static_cast<std::int64_t>(p.y_degrees.size() + p.z_degrees.size());
  if (p.ambient_dim < count)
    throw Error(ErrorKind::Validation, p.group + ": ambient dimension " + std::to_string(p.ambient_dim) +
                                           " is smaller than the number of invariants " + std::to_string(count));
  if (p.char_degree <= 0) throw Error(ErrorKind::Validation, p.group + ": char_degree must be positive");
  if (p.perm_dim <= 0) throw Error(ErrorKind::Validation, p.group + ": perm_dim must be positive");
  if (p.comparison_figure != 5 && p.comparison_figure != 6)
    throw Error(ErrorKind::Validation, p.group + ": comparison_figure must be 5 or 6");
  if (p.comparison_figure == 6 && !p.cover)
    throw Error(ErrorKind::Validation, p.group + ": figure 6 rows need a cover name");
  return p;
}

}  // namespace

GroupMetadata parse_metadata(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, "parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  GroupMetadata meta;
  try {
    std::set<std::string> names;
    for (const json& g : doc.at("groups")) {
      meta.plans.push_back(plan_from_json(g));
      if (!names.insert(meta.plans.back().group).second)
        throw Error(ErrorKind::Validation, "group " + meta.plans.back().group + " listed twice");
    }
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::string>> subs, non_subs;
    for (const json& row : doc.at("subquotients")) {
      const auto g = row.at("group").get<std::string>();
      if (!names.count(g)) throw Error(ErrorKind::MissingGroup, "subquotient row for unknown group " + g);
      order.push_back(g);
      subs[g] = row.at("subquotients").get<std::vector<std::string>>();
      non_subs[g] = row.at("non_subquotients").get<std::vector<std::string>>();
    }
    meta.subquotients = SubquotientTable(std::move(order), std::move(subs), std::move(non_subs));
    meta.dimension_chain = doc.value("dimension_chain", "");
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed metadata: ") + e.what());
  }
  return meta;
}

GroupMetadata load_metadata_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path + ": " + std::strerror(errno));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_metadata(buf.str());
}

BoundReport compute_bound(const DegreePlan& plan) {
  BoundReport r;
  r.group = plan.group;
  r.dim_x = plan.ambient_dim - static_cast<std::int64_t>(plan.y_degrees.size() + plan.z_degrees.size());
  r.bezout_degree = 1;
  for (unsigned d : plan.degrees()) r.bezout_degree *= d;
  r.z_degree = 1;
  for (unsigned d : plan.z_degrees) r.z_degree *= d;
  r.rd_bound = r.dim_x;
  return r;
}

bool irreducibility_exempt(const std::string& group) {
  return group == "M11" || group == "M12" || group == "M23" || group == "M24";
}

IrreducibilityCheck check_irreducibility_degree(const DegreePlan& plan) {
  IrreducibilityCheck c;
  c.product = compute_bound(plan).bezout_degree;
  c.perm_dim = plan.perm_dim;
  c.applicable = !irreducibility_exempt(plan.group);
  c.ok = c.product < c.perm_dim;
  return c;
}

Integer monomial_count(const std::vector<unsigned>& plan_degrees, unsigned d) {
  std::vector<Integer> ways(d + 1, Integer(0));
  ways[0] = 1;
  for (unsigned e : plan_degrees) {
    if (e > d) continue;
    for (unsigned k = e; k <= d; ++k) ways[k] += ways[k - e];
  }
  return ways[d];
}

FeasibilityResult check_plan_feasibility(const std::vector<unsigned>& plan_degrees,
                                         const std::vector<Integer>& coefficients) {
  std::vector<unsigned> distinct = plan_degrees;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (!distinct.empty() && distinct.back() >= coefficients.size())
    throw Error(ErrorKind::ProfileTooShort, "plan needs m_" + std::to_string(distinct.back()) +
                                                " but the profile stops at m_" +
                                                std::to_string(coefficients.size() - 1));
  FeasibilityResult out;
  out.ok = true;
  for (unsigned d : distinct) {
    LedgerEntry e{d, monomial_count(plan_degrees, d), coefficients[d], false};
    e.ok = e.required <= e.available;
    out.ok = out.ok && e.ok;
    out.ledger.push_back(std::move(e));
  }
  return out;
}

FeasibilityResult check_plan_feasibility(const DegreePlan& plan, const MolienProfile& profile) {
  return check_plan_feasibility(plan.degrees(), profile.coefficients);
}

std::vector<Violation> check_monotonicity(const SubquotientTable& table,
                                          const std::map<std::string, BoundReport>& reports) {
  for (const std::string& g : table.groups())
    if (!reports.count(g)) throw Error(ErrorKind::MissingGroup, "no bound report for " + g);
  std::vector<Violation> out;
  for (const std::string& g : table.groups())
    for (const std::string& s : table.groups())
      if (table.relation(g, s) == Relation::Subquotient) {
        const auto dg = reports.at(g).dim_x;
        const auto ds = reports.at(s).dim_x;
        if (ds > dg) out.push_back({g, s, dg, ds});
      }
  return out;
}

std::vector<std::string> check_dimension_chain(const std::string& chain,
                                               const std::map<std::string, BoundReport>& reports) {
  std::istringstream in(chain);
  std::vector<std::string> names, ops;
  std::string tok;
  while (in >> tok) ((names.size() == ops.size()) ? names : ops).push_back(tok);
  std::vector<std::string> problems;
  if (names.size() != ops.size() + 1) problems.push_back("chain does not alternate groups and relations");
  std::set<std::string> listed;
  for (const std::string& n : names) {
    if (!reports.count(n)) problems.push_back("chain names unknown group " + n);
    if (!listed.insert(n).second) problems.push_back("chain lists " + n + " twice");
  }
  for (const auto& [g, r] : reports)
    if (!listed.count(g)) problems.push_back("chain omits " + g);
  if (!problems.empty()) return problems;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto a = reports.at(names[i]).dim_x;
    const auto b = reports.at(names[i + 1]).dim_x;
    bool ok = false;
    if (ops[i] == "<") {
      ok = a < b;
    } else if (ops[i] == "<=") {
      ok = a <= b;
    } else if (ops[i] == "=") {
      ok = a == b;
    } else {
      problems.push_back("unknown relation '" + ops[i] + "'");
      continue;
    }
    if (!ok)
      problems.push_back(names[i] + " " + ops[i] + " " + names[i + 1] + " fails: computed " + std::to_string(a) +
                         " and " + std::to_string(b));
  }
  return problems;
}

std::string derive_dimension_chain(const std::vector<std::string>& order,
                                   const std::map<std::string, BoundReport>& reports) {
  std::vector<std::string> sorted = order;
  std::stable_sort(sorted.begin(), sorted.end(), [&](const std::string& a, const std::string& b) {
    return reports.at(a).dim_x < reports.at(b).dim_x;
  });
  std::string out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0) out += reports.at(sorted[i - 1]).dim_x == reports.at(sorted[i]).dim_x ? " = " : " < ";
    out += sorted[i];
  }
  return out;
}

std::vector<ComparisonRow> comparison_table(const std::vector<DegreePlan>& plans, int figure) {
  std::vector<ComparisonRow> rows;
  for (const DegreePlan& p : plans) {
    if (p.comparison_figure != figure) continue;
    ComparisonRow r{p.group, p.linear_dim, p.ambient_dim, compute_bound(p).dim_x, p.cover, false};
    r.ok = r.projective_dim < r.linear_dim &&
           (figure == 5 ? r.dim_x < r.projective_dim : r.dim_x <= r.projective_dim);
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace {

std::string join_degrees(const std::vector<unsigned>& degrees) {
  if (degrees.empty()) return "N/A";
  std::string out;
  for (std::size_t i = 0; i < degrees.size(); ++i) out += (i ? ", " : "") + std::to_string(degrees[i]);
  return out;
}

std::string render_rows(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], r[i].size());
    }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

}  // namespace

std::string render_figure2(const std::vector<DegreePlan>& plans) {
  std::vector<std::vector<std::string>> rows{{"group", "dim P(V)", "degrees", "dim Perm"}};
  for (const DegreePlan& p : plans)
    rows.push_back({p.group, std::to_string(p.ambient_dim), join_degrees(p.degrees()), p.perm_dim.get_str()});
  return render_rows(rows);
}

std::string render_comparison(const std::vector<ComparisonRow>& rows, int figure) {
  std::vector<std::vector<std::string>> out{{"group", "dim W", "dim P(V)", "dim X"}};
  if (figure == 6) out[0].push_back("a.G");
  for (const ComparisonRow& r : rows) {
    out.push_back({r.group, std::to_string(r.linear_dim), std::to_string(r.projective_dim), std::to_string(r.dim_x)});
    if (figure == 6) out.back().push_back(r.cover.value_or("-"));
  }
  return render_rows(out);
}

std::string render_subquotients(const SubquotientTable& table) {
  // '=' diagonal, '+' subquotient, '-' not a subquotient, blank above
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> head{""};
  for (const std::string& s : table.groups()) head.push_back(s);
  rows.push_back(head);
  for (const std::string& g : table.groups()) {
    std::vector<std::string> row{g};
    for (const std::string& s : table.groups()) {
      switch (table.relation(g, s)) {
        case Relation::Equal: row.push_back("="); break;
        case Relation::Subquotient: row.push_back("+"); break;
        case Relation::NotSubquotient: row.push_back("-"); break;
        case Relation::Undefined: row.push_back(""); break;
      }
    }
    rows.push_back(std::move(row));
  }
  std::string out = render_rows(rows);
  // trailing blanks from the empty upper triangle
  std::string trimmed;
  std::istringstream in(out);
  for (std::string line; std::getline(in, line);) {
    line.erase(line.find_last_not_of(' ') + 1);
    trimmed += line + "\n";
  }
  return trimmed;
}

nlohmann::json to_json(const BoundReport& r) {
  json j{{"group", r.group},
         {"dim_x", r.dim_x},
         {"bezout_degree", integer_to_json(r.bezout_degree)},
         {"z_degree", integer_to_json(r.z_degree)},
         {"rd_bound", r.rd_bound}};
  j["irreducibility_ok"] = r.irreducibility_ok ? json(*r.irreducibility_ok) : json("not applicable");
  j["feasibility_ok"] = r.feasibility_ok ? json(*r.feasibility_ok) : json(nullptr);
  return j;
}

}  // namespace molien
