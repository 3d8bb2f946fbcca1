#include "molien/cli.hpp"

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "molien/error.hpp"

#ifndef MOLIEN_DEFAULT_DATA_DIR
#define MOLIEN_DEFAULT_DATA_DIR "data"
#endif

namespace molien {

using nlohmann::json;

std::string default_data_dir() { return MOLIEN_DEFAULT_DATA_DIR; }

std::string Manifest::path(const std::string& relative) const {
  if (!relative.empty() && relative[0] == '/') return relative;
  return root + "/" + relative;
}

CharacterTable Manifest::load_table(const std::string& name) const {
  auto it = tables.find(name);
  if (it == tables.end()) throw Error(ErrorKind::MissingTable, "table " + name + " is not shipped in " + root);
  return load_table_file(path(it->second));
}

GroupMetadata Manifest::load_metadata() const { return load_metadata_file(path(metadata)); }

Manifest load_manifest(const std::string& data_dir) {
  const std::string file = data_dir + "/manifest.json";
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + file + ": " + std::strerror(errno));
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, file + ": parse error at byte " + std::to_string(e.byte));
  }
  Manifest m;
  m.root = data_dir;
  try {
    m.metadata = doc.at("metadata").get<std::string>();
    for (const auto& [name, path] : doc.at("tables").items()) m.tables[name] = path.get<std::string>();
    if (doc.contains("models"))
      for (const json& e : doc["models"])
        m.models.push_back({e.at("name").get<std::string>(), e.at("file").get<std::string>(),
                            e.at("table").get<std::string>(), e.at("character").get<std::size_t>()});
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, file + ": " + e.what());
  }
  return m;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path + ": " + std::strerror(errno));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::size_t select_character(const CharacterTable& table, const DegreePlan& plan) {
  auto idx = table.first_character_of_degree(plan.char_degree);
  if (!idx)
    throw Error(ErrorKind::Validation,
                table.group_name() + " has no character of degree " + plan.char_degree.get_str());
  return *idx;
}

std::string list_coefficients(const std::vector<Integer>& c) {
  std::string out;
  for (std::size_t d = 0; d < c.size(); ++d) out += (d ? ", " : "") + c[d].get_str();
  return out;
}

}  // namespace

CommandResult cmd_ingest(const RunConfig& config, const std::vector<std::string>& files) {
  CommandResult r;
  json reports = json::array();
  std::string text;
  for (const std::string& f : files) {
    try {
      const CharacterTable t = ingest_table(read_file(f));
      const std::string line = t.group_name() + ": OK (" + std::to_string(t.num_classes()) + " classes, " +
                               std::to_string(t.characters().size()) + " characters)";
      text += line + "\n";
      reports.push_back({{"file", f}, {"group", t.group_name()}, {"ok", true},
                         {"classes", t.num_classes()}, {"characters", t.characters().size()}});
    } catch (const Error& e) {
      text += f + ": FAIL " + std::string(to_string(e.kind())) + ": " + e.what() + "\n";
      reports.push_back({{"file", f}, {"ok", false}, {"error", to_string(e.kind())}, {"message", e.what()}});
      r.status = std::max(r.status, e.kind() == ErrorKind::Io ? 2 : 1);
    }
  }
  r.output = config.format == OutputFormat::Obj ? dump(reports) : text;
  return r;
}

CommandResult cmd_molien(const RunConfig& config, const std::string& group) {
  const Manifest m = load_manifest(config.data_dir);
  const GroupMetadata meta = m.load_metadata();
  const DegreePlan& plan = meta.plan(group);
  const CharacterTable table = m.load_table(plan.table_ref);
  const std::size_t idx = select_character(table, plan);
  const MolienProfile p = molien_coefficients(table, idx, config.degree_limit, config.threads);
  CommandResult r;
  if (config.format == OutputFormat::Obj) {
    json j = to_json(p);
    j["group"] = group;
    j["series"] = render_series(p.coefficients);
    r.output = dump(j);
  } else {
    r.output = group + ": " + render_series(p.coefficients) + "\n" + group + " (" + table.group_name() + " " +
               table.character(idx).name + "): " + list_coefficients(p.coefficients) + "\n";
  }
  return r;
}

CommandResult cmd_oracle(const RunConfig& config, const std::string& model_name) {
  const Manifest m = load_manifest(config.data_dir);
  const ModelEntry* entry = nullptr;
  for (const ModelEntry& e : m.models)
    if (e.name == model_name) entry = &e;
  if (!entry) throw Error(ErrorKind::UnknownGroup, "unknown model " + model_name);
  const MatrixGroupModel model = load_model_file(m.path(entry->file));
  const auto det = molien_by_determinants(model, config.degree_limit, config.threads);
  const CharacterTable table = m.load_table(entry->table);
  const MolienProfile p = molien_coefficients(table, entry->character, config.degree_limit, config.threads);
  CommandResult r;
  r.status = det == p.coefficients ? 0 : 1;
  if (config.format == OutputFormat::Obj) {
    json a = json::array(), b = json::array();
    for (const Integer& v : det) a.push_back(integer_to_json(v));
    for (const Integer& v : p.coefficients) b.push_back(integer_to_json(v));
    r.output = dump({{"model", model.name}, {"order", integer_to_json(model.expected_order)},
                     {"determinant_average", a}, {"recurrence", b}, {"agree", r.status == 0}});
  } else {
    r.output = model.name + ": " + model.expected_order.get_str() + " elements enumerated\n" +
               "  determinant average: " + render_series(det) + "\n" + "  recurrence (" + table.group_name() + " " +
               table.character(entry->character).name + "): " + render_series(p.coefficients) + "\n" +
               model.name + ": " + (r.status == 0 ? "agree" : "DISAGREE") + " for d <= " +
               std::to_string(config.degree_limit) + "\n";
  }
  return r;
}

CommandResult cmd_bounds(const RunConfig& config, const std::optional<std::string>& group) {
  const Manifest m = load_manifest(config.data_dir);
  const GroupMetadata meta = m.load_metadata();
  std::vector<const DegreePlan*> plans;
  if (group) {
    plans.push_back(&meta.plan(*group));
  } else {
    for (const DegreePlan& p : meta.plans) plans.push_back(&p);
  }
  CommandResult r;
  json arr = json::array();
  for (const DegreePlan* p : plans) {
    BoundReport b = compute_bound(*p);
    const IrreducibilityCheck irr = check_irreducibility_degree(*p);
    if (irr.applicable) b.irreducibility_ok = irr.ok;
    if (irr.applicable && !irr.ok) r.status = 1;
    if (b.rd_bound != p->expected_dim_x) r.status = 1;
    json j = to_json(b);
    j["perm_dim"] = integer_to_json(p->perm_dim);
    j["expected_dim_x"] = p->expected_dim_x;
    arr.push_back(j);
    std::string line = p->group + ": RD <= " + std::to_string(b.rd_bound) + " (dim X = " +
                       std::to_string(p->ambient_dim) + " - " + std::to_string(p->degrees().size()) +
                       "), Bezout degree " + b.bezout_degree.get_str() + ", deg Z " + b.z_degree.get_str() +
                       " (d_G not evaluated), irreducibility ";
    if (!irr.applicable) {
      line += "not applicable";
    } else {
      line += irr.product.get_str() + (irr.ok ? " < " : " >= ") + irr.perm_dim.get_str() + (irr.ok ? " ok" : " FAILS");
    }
    if (b.rd_bound != p->expected_dim_x) line += ", expected bound " + std::to_string(p->expected_dim_x) + " DIFFERS";
    r.output += line + "\n";
  }
  if (config.format == OutputFormat::Obj) r.output = dump(arr);
  return r;
}

// verify

namespace {

struct Check {
  std::string status;  // PASS FAIL SKIPPED
  std::string name;
  std::string detail;
};

class Report {
 public:
  void pass(std::string name, std::string detail) { add("PASS", std::move(name), std::move(detail)); }
  void fail(std::string name, std::string detail) { add("FAIL", std::move(name), std::move(detail)); }
  void skip(std::string name, std::string detail) { add("SKIPPED", std::move(name), std::move(detail)); }
  void add(std::string status, std::string name, std::string detail) {
    checks_.push_back({std::move(status), std::move(name), std::move(detail)});
  }

  std::size_t count(const std::string& status) const {
    std::size_t n = 0;
    for (const Check& c : checks_) n += c.status == status;
    return n;
  }

  std::string text() const {
    std::string out;
    for (const Check& c : checks_) out += c.status + " " + c.name + ": " + c.detail + "\n";
    out += "verify: " + std::to_string(count("PASS")) + " passed, " + std::to_string(count("FAIL")) + " failed, " +
           std::to_string(count("SKIPPED")) + " skipped\n";
    return out;
  }

  json to_json() const {
    json arr = json::array();
    for (const Check& c : checks_) arr.push_back({{"status", c.status}, {"check", c.name}, {"detail", c.detail}});
    return {{"checks", arr}, {"passed", count("PASS")}, {"failed", count("FAIL")}, {"skipped", count("SKIPPED")}};
  }

 private:
  std::vector<Check> checks_;
};

std::string error_text(const Error& e) { return std::string(to_string(e.kind())) + ": " + e.what(); }

}  // namespace

CommandResult cmd_verify(const RunConfig& config) {
  const Manifest m = load_manifest(config.data_dir);
  const GroupMetadata meta = m.load_metadata();
  Report rep;

  // 1. table validation
  std::map<std::string, CharacterTable> tables;
  for (const auto& [name, file] : m.tables) {
    try {
      CharacterTable t = m.load_table(name);
      rep.pass("table " + name, std::to_string(t.num_classes()) + " classes, " +
                                    std::to_string(t.characters().size()) + " characters, order " +
                                    t.order().get_str());
      tables.emplace(name, std::move(t));
    } catch (const Error& e) {
      rep.fail("table " + name, error_text(e));
    }
  }

  // 2. oracle against recurrence
  for (const ModelEntry& e : m.models) {
    const std::string name = "oracle " + e.name;
    try {
      if (!tables.count(e.table)) {
        rep.fail(name, "table " + e.table + " unavailable");
        continue;
      }
      const MatrixGroupModel model = load_model_file(m.path(e.file));
      const auto det = molien_by_determinants(model, config.degree_limit, config.threads);
      const auto rec = molien_coefficients(tables.at(e.table), e.character, config.degree_limit, config.threads);
      std::size_t d = 0;
      while (d < det.size() && det[d] == rec.coefficients[d]) ++d;
      if (d == det.size()) {
        rep.pass(name, "determinant average = recurrence for d <= " + std::to_string(config.degree_limit) +
                           " (both computed, " + model.expected_order.get_str() + " elements)");
      } else {
        rep.fail(name, "m_" + std::to_string(d) + " determinant average " + det[d].get_str() + ", recurrence " +
                           rec.coefficients[d].get_str());
      }
    } catch (const Error& err) {
      rep.fail(name, error_text(err));
    }
  }

  // 3. published expansions, and the profiles reused by the feasibility ledgers
  std::map<std::string, MolienProfile> profiles;
  for (const DegreePlan& p : meta.plans) {
    const std::string name = "series " + p.group;
    if (!m.has_table(p.table_ref)) {
      rep.skip(name, "table " + p.table_ref + " not shipped (bounds only)");
      continue;
    }
    if (!tables.count(p.table_ref)) {
      rep.fail(name, "table " + p.table_ref + " failed validation");
      continue;
    }
    try {
      const CharacterTable& t = tables.at(p.table_ref);
      unsigned D = config.degree_limit;
      if (p.published) D = std::max(D, p.published->order - 1);
      const auto degrees = p.degrees();
      if (!degrees.empty()) D = std::max(D, degrees.back());
      MolienProfile prof = molien_coefficients(t, select_character(t, p), D, config.threads);
      profiles.emplace(p.group, prof);
      if (!p.published) {
        rep.skip(name, "no published expansion");
        continue;
      }
      const auto printed = p.published->coefficients();
      std::size_t d = 0;
      while (d < printed.size() && printed[d] == prof.coefficients[d]) ++d;
      if (d < printed.size()) {
        rep.fail(name, "m_" + std::to_string(d) + " computed " + prof.coefficients[d].get_str() + ", printed " +
                           printed[d].get_str());
        continue;
      }
      std::string detail = "m_0..m_" + std::to_string(printed.size() - 1) + " agree with the published row (" + t.group_name() +
                           " " + t.character(prof.char_index).name + ")";
      for (const Erratum& e : p.published->errata)
        detail += "; erratum m_" + std::to_string(e.degree) + ": printed " + e.printed.get_str() +
                  ", computed " + prof.coefficients[e.degree].get_str();
      rep.pass(name, detail);
    } catch (const Error& e) {
      rep.fail(name, error_text(e));
    }
  }

  // 4. bounds
  std::map<std::string, BoundReport> reports;
  for (const DegreePlan& p : meta.plans) {
    BoundReport b = compute_bound(p);
    if (b.rd_bound == p.expected_dim_x) {
      rep.pass("bound " + p.group, "computed " + std::to_string(b.rd_bound) + ", expected " +
                                       std::to_string(p.expected_dim_x));
    } else {
      rep.fail("bound mismatch " + p.group, "computed " + std::to_string(b.rd_bound) + ", expected " +
                                                std::to_string(p.expected_dim_x));
    }
    reports.emplace(p.group, std::move(b));
  }

  // 5. irreducibility by degree
  for (const DegreePlan& p : meta.plans) {
    const IrreducibilityCheck c = check_irreducibility_degree(p);
    const std::string witness = "Bezout degree " + c.product.get_str() + ", perm dim " + c.perm_dim.get_str();
    if (!c.applicable) {
      rep.skip("irreducibility " + p.group, "not applicable (Mathieu exception); " + witness);
      continue;
    }
    reports[p.group].irreducibility_ok = c.ok;
    if (c.ok) {
      rep.pass("irreducibility " + p.group, c.product.get_str() + " < " + c.perm_dim.get_str());
    } else {
      rep.fail("irreducibility " + p.group, c.product.get_str() + " >= " + c.perm_dim.get_str());
    }
  }

  // 6. feasibility ledgers
  for (const DegreePlan& p : meta.plans) {
    const std::string name = "feasibility " + p.group;
    auto it = profiles.find(p.group);
    if (it == profiles.end()) {
      rep.skip(name, "no computed profile");
      continue;
    }
    try {
      const FeasibilityResult f = check_plan_feasibility(p, it->second);
      reports[p.group].feasibility_ok = f.ok;
      std::vector<Integer> printed;
      if (p.published) printed = p.published->coefficients();
      bool printed_ok = true;
      std::string ledger;
      for (const LedgerEntry& e : f.ledger) {
        if (!ledger.empty()) ledger += "; ";
        ledger += "d=" + std::to_string(e.degree) + " N=" + e.required.get_str() + " m=" + e.available.get_str();
        if (e.degree < printed.size()) {
          ledger += " (printed " + printed[e.degree].get_str() + ")";
          printed_ok = printed_ok && printed[e.degree] == e.available;
        }
      }
      if (f.ledger.empty()) ledger = "empty plan";
      if (f.ok && printed_ok) {
        rep.pass(name, std::string(kFeasibleLabel) + ": " + ledger);
      } else {
        rep.fail(name, (f.ok ? "consulted m_d differs from the printed row: " : "infeasible: ") + ledger);
      }
    } catch (const Error& e) {
      rep.fail(name, error_text(e));
    }
  }

  // 7. monotonicity and the dimension chain
  try {
    const auto violations = check_monotonicity(meta.subquotients, reports);
    std::size_t pairs = 0;
    for (const auto& g : meta.subquotients.groups())
      for (const auto& s : meta.subquotients.groups())
        pairs += meta.subquotients.relation(g, s) == Relation::Subquotient;
    if (violations.empty()) {
      rep.pass("monotonicity", "0 violations over " + std::to_string(pairs) + " subquotient pairs");
    } else {
      const Violation& v = violations.front();
      rep.fail("monotonicity", std::to_string(violations.size()) + " violations, first " + v.sub + " in " + v.group +
                                   ": dim X_" + v.sub + " = " + std::to_string(v.dim_sub) + " > dim X_" + v.group +
                                   " = " + std::to_string(v.dim_group));
    }
  } catch (const Error& e) {
    rep.fail("monotonicity", error_text(e));
  }
  if (meta.dimension_chain.empty()) {
    rep.skip("dimension chain", "no chain in metadata");
  } else {
    const auto problems = check_dimension_chain(meta.dimension_chain, reports);
    if (problems.empty()) {
      std::vector<std::string> order;
      for (const DegreePlan& p : meta.plans) order.push_back(p.group);
      rep.pass("dimension chain", "stored chain holds; computed " + derive_dimension_chain(order, reports));
    } else {
      rep.fail("dimension chain", problems.front());
    }
  }

  // 8. comparison tables
  for (int fig : {5, 6}) {
    for (const ComparisonRow& row : comparison_table(meta.plans, fig)) {
      const DegreePlan& p = meta.plan(row.group);
      std::string detail = "W " + std::to_string(row.linear_dim) + ", P " + std::to_string(row.projective_dim) +
                           ", X computed " + std::to_string(row.dim_x) + " (expected " +
                           std::to_string(p.expected_dim_x) + ")";
      if (row.cover) detail += ", cover " + *row.cover;
      const bool ok = row.ok && row.dim_x == p.expected_dim_x;
      if (ok) {
        rep.pass("figure" + std::to_string(fig) + " " + row.group, detail);
      } else {
        rep.fail("figure" + std::to_string(fig) + " " + row.group, detail + (row.ok ? "" : "; dimension order broken"));
      }
    }
  }

  CommandResult r;
  r.status = rep.count("FAIL") == 0 ? 0 : 1;
  r.output = config.format == OutputFormat::Obj ? dump(rep.to_json()) : rep.text();
  return r;
}

CommandResult cmd_tables(const RunConfig& config, const std::string& which) {
  const Manifest m = load_manifest(config.data_dir);
  const GroupMetadata meta = m.load_metadata();
  CommandResult r;
  const bool obj = config.format == OutputFormat::Obj;
  if (which == "figure2") {
    if (obj) {
      json arr = json::array();
      for (const DegreePlan& p : meta.plans)
        arr.push_back({{"group", p.group}, {"ambient_dim", p.ambient_dim}, {"degrees", p.degrees()},
                       {"perm_dim", integer_to_json(p.perm_dim)}});
      r.output = dump(arr);
    } else {
      r.output = render_figure2(meta.plans);
    }
  } else if (which == "figure5" || which == "figure6") {
    const int fig = which == "figure5" ? 5 : 6;
    const auto rows = comparison_table(meta.plans, fig);
    for (const ComparisonRow& row : rows)
      if (!row.ok) r.status = 1;
    if (obj) {
      json arr = json::array();
      for (const ComparisonRow& row : rows) {
        json j{{"group", row.group}, {"linear_dim", row.linear_dim}, {"projective_dim", row.projective_dim},
               {"dim_x", row.dim_x}, {"ok", row.ok}};
        if (row.cover) j["cover"] = *row.cover;
        arr.push_back(j);
      }
      r.output = dump(arr);
    } else {
      r.output = render_comparison(rows, fig);
    }
  } else if (which == "subquotient") {
    if (obj) {
      json arr = json::array();
      for (const std::string& g : meta.subquotients.groups()) {
        json subs = json::array(), non = json::array();
        for (const std::string& s : meta.subquotients.groups()) {
          const Relation rel = meta.subquotients.relation(g, s);
          if (rel == Relation::Subquotient) subs.push_back(s);
          if (rel == Relation::NotSubquotient) non.push_back(s);
        }
        arr.push_back({{"group", g}, {"subquotients", subs}, {"non_subquotients", non}});
      }
      r.output = dump(arr);
    } else {
      r.output = render_subquotients(meta.subquotients);
    }
  } else {
    throw Error(ErrorKind::Usage, "unknown table '" + which + "' (figure2, figure5, figure6, subquotient)");
  }
  return r;
}

int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Molien series and resolvent degree bounds for the sporadic groups", "molien"};
  app.require_subcommand(1);
  RunConfig config;
  config.data_dir = default_data_dir();
  std::string format = "text";
  std::string out_path;
  app.add_option("--data-dir", config.data_dir, "directory holding manifest.json")->envname("MOLIEN_DATA_DIR");
  app.add_option("--degree", config.degree_limit, "largest degree d to compute (default 20)");
  app.add_option("--format", format, "text or obj")->check(CLI::IsMember({"text", "obj"}));
  app.add_option("--out", out_path, "write the result to this file");
  app.add_option("--threads", config.threads, "worker threads, 0 = one per core");

  std::vector<std::string> files, positional;
  std::string group, model, which;
  auto* ingest = app.add_subcommand("ingest", "validate character table files");
  ingest->add_option("files", files)->required();
  auto* mol = app.add_subcommand("molien", "Molien coefficients for a sporadic group");
  mol->add_option("group", group)->required();
  auto* orc = app.add_subcommand("oracle", "determinant-average cross-check on a matrix model");
  orc->add_option("model", model)->required();
  auto* bnd = app.add_subcommand("bounds", "dimension bounds from the degree plans");
  bnd->add_option("group", group);
  auto* ver = app.add_subcommand("verify", "run every check and report");
  auto* tab = app.add_subcommand("tables", "print figure2, figure5, figure6 or subquotient");
  tab->add_option("which", which)->required();
  for (auto* sub : {ingest, mol, orc, bnd, ver, tab}) sub->fallthrough();

  std::vector<const char*> raw;
  for (const std::string& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "molien: " << e.what() << "\n";
    return 2;
  }
  if (config.degree_limit < 1) {
    err << "molien: --degree must be at least 1\n";
    return 2;
  }
  config.format = format == "obj" ? OutputFormat::Obj : OutputFormat::Text;
  if (!out_path.empty()) config.output_path = out_path;

  CommandResult result;
  try {
    if (*ingest) {
      config.command = "ingest";
      result = cmd_ingest(config, files);
    } else {
      std::ifstream probe(config.data_dir + "/manifest.json");
      if (!probe) {
        err << "molien: no manifest.json in data directory " << config.data_dir << "\n";
        return 2;
      }
      if (*mol) {
        result = cmd_molien(config, group);
      } else if (*orc) {
        result = cmd_oracle(config, model);
      } else if (*bnd) {
        result = cmd_bounds(config, group.empty() ? std::nullopt : std::optional<std::string>(group));
      } else if (*ver) {
        result = cmd_verify(config);
      } else {
        result = cmd_tables(config, which);
      }
    }
  } catch (const Error& e) {
    err << "molien: " << to_string(e.kind()) << ": " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::NonIntegerCoefficient:
      case ErrorKind::CapExceeded:
      case ErrorKind::ProfileTooShort:
        return 1;
      default:
        return 2;
    }
  }

  if (config.output_path) {
    std::ofstream f(*config.output_path, std::ios::binary);
    if (!f) {
      err << "molien: cannot write " << *config.output_path << ": " << std::strerror(errno) << "\n";
      return 2;
    }
    f << result.output;
  } else {
    out << result.output;
  }
  return result.status;
}

}  // namespace molien
