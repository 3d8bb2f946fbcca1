#pragma once

// Degree plans X_G = Z_G ∩ Y_G for the sporadic groups and the arithmetic
// built on them: dimension bounds, the Bezout-degree irreducibility test,
// Molien feasibility ledgers, subquotient monotonicity and the summary tables.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "molien/molien.hpp"

namespace molien {

struct Erratum {
  unsigned degree = 0;
  Integer printed;
  Integer corrected;
};

struct PublishedRow {
  std::string terms;  // as printed, without the O() tail
  unsigned order = 0;
  std::vector<Erratum> errata;

  /// Printed coefficients m_0 .. m_{order-1}, errata applied.
  std::vector<Integer> coefficients() const;
};

struct AltPlan {
  std::vector<unsigned> y_degrees;
  std::vector<unsigned> z_degrees;
  bool unproven = true;
};

struct DegreePlan {
  std::string group;
  std::string table_ref;
  Integer char_degree;  // selector: lowest-index character of this degree
  std::int64_t ambient_dim = 0;
  std::vector<unsigned> y_degrees;
  std::vector<unsigned> z_degrees;
  Integer perm_dim;
  std::int64_t expected_dim_x = 0;
  std::int64_t linear_dim = 0;
  int comparison_figure = 5;
  std::optional<std::string> cover;
  std::optional<PublishedRow> published;
  std::optional<AltPlan> alt_plan;
  std::string note;

  /// y and z degrees together, ascending.
  std::vector<unsigned> degrees() const;
};

enum class Relation { Equal, Subquotient, NotSubquotient, Undefined };

class SubquotientTable {
 public:
  SubquotientTable() = default;
  SubquotientTable(std::vector<std::string> groups, std::map<std::string, std::vector<std::string>> subs,
                   std::map<std::string, std::vector<std::string>> non_subs);

  const std::vector<std::string>& groups() const noexcept { return groups_; }
  Relation relation(const std::string& group, const std::string& sub) const;

 private:
  std::vector<std::string> groups_;
  std::map<std::pair<std::string, std::string>, Relation> cells_;
};

struct GroupMetadata {
  std::vector<DegreePlan> plans;  // in file order
  SubquotientTable subquotients;
  std::string dimension_chain;

  const DegreePlan& plan(const std::string& group) const;
};

GroupMetadata parse_metadata(std::string_view bytes);
GroupMetadata load_metadata_file(const std::string& path);

struct BoundReport {
  std::string group;
  std::int64_t dim_x = 0;
  Integer bezout_degree;
  Integer z_degree;  // deg Z_G, kept as the unevaluated d_G annotation
  std::optional<bool> irreducibility_ok;  // nullopt for the Mathieu exceptions
  std::optional<bool> feasibility_ok;     // nullopt until a profile is checked
  std::int64_t rd_bound = 0;
};

BoundReport compute_bound(const DegreePlan& plan);

struct IrreducibilityCheck {
  bool applicable = true;
  bool ok = false;
  Integer product;
  Integer perm_dim;
};

bool irreducibility_exempt(const std::string& group);
IrreducibilityCheck check_irreducibility_degree(const DegreePlan& plan);

struct LedgerEntry {
  unsigned degree = 0;
  Integer required;   // N_d
  Integer available;  // m_d
  bool ok = false;
};

struct FeasibilityResult {
  bool ok = false;
  std::vector<LedgerEntry> ledger;
};

inline constexpr std::string_view kFeasibleLabel = "feasible (necessary condition)";

/// Coefficient of t^d in prod over plan degrees e <= d of 1/(1 - t^e).
Integer monomial_count(const std::vector<unsigned>& plan_degrees, unsigned d);
FeasibilityResult check_plan_feasibility(const std::vector<unsigned>& plan_degrees,
                                         const std::vector<Integer>& coefficients);
FeasibilityResult check_plan_feasibility(const DegreePlan& plan, const MolienProfile& profile);

struct Violation {
  std::string group;
  std::string sub;
  std::int64_t dim_group = 0;
  std::int64_t dim_sub = 0;
};

std::vector<Violation> check_monotonicity(const SubquotientTable& table,
                                          const std::map<std::string, BoundReport>& reports);

/// Problems found when checking a chain such as "J2 < M11 <= M12 < ..."
/// against computed dimensions; empty when the chain is reproduced.
std::vector<std::string> check_dimension_chain(const std::string& chain,
                                               const std::map<std::string, BoundReport>& reports);
/// The chain obtained by sorting reports by dim_x ("<" or "=" between neighbours).
std::string derive_dimension_chain(const std::vector<std::string>& order,
                                   const std::map<std::string, BoundReport>& reports);

struct ComparisonRow {
  std::string group;
  std::int64_t linear_dim = 0;
  std::int64_t projective_dim = 0;
  std::int64_t dim_x = 0;
  std::optional<std::string> cover;
  bool ok = false;  // X < P < W (figure 5) or X <= P < W (figure 6)
};

std::vector<ComparisonRow> comparison_table(const std::vector<DegreePlan>& plans, int figure);

std::string render_figure2(const std::vector<DegreePlan>& plans);
std::string render_comparison(const std::vector<ComparisonRow>& rows, int figure);
std::string render_subquotients(const SubquotientTable& table);
nlohmann::json to_json(const BoundReport& report);

}  // namespace molien
