#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace gammalab {

// Table-based finite commutative ternary Gamma-semiring candidate: a
// carrier {0..n-1}, a distinguished zero, an addition table and one
// ternary table per gamma. Purely structural; axiom satisfaction is
// checked, never assumed.
struct FiniteTgs {
  int n = 0;
  int zero = 0;
  std::vector<int> add;                    // n*n, row-major
  std::vector<std::vector<int>> ternary;   // per gamma, n^3 row-major

  int gamma_count() const { return static_cast<int>(ternary.size()); }
  int add_at(int a, int b) const { return add[a * n + b]; }
  int& add_at(int a, int b) { return add[a * n + b]; }
  int tern_at(int g, int a, int b, int c) const {
    return ternary[g][(a * n + b) * n + c];
  }
  int& tern_at(int g, int a, int b, int c) { return ternary[g][(a * n + b) * n + c]; }

  // Closure and shape checks; throws ConfigError.
  void validate() const;
};

// A witness is the argument tuple that falsifies a law; its layout is
// documented per check below.
using WitnessList = std::vector<std::vector<int>>;

struct CheckResult {
  bool holds = true;
  WitnessList witnesses;
};

// Witnesses: commutative {a,b}; associative {a,b,c}; identity {a}.
struct MonoidReport {
  CheckResult commutative;
  CheckResult associative;
  CheckResult identity;
};

MonoidReport check_additive_monoid(const FiniteTgs& s);

// {a+b,c,d} = {a,c,d} + {b,c,d} and the analogous laws in the other two
// variables. Witness: {gamma, variable_index, a, b, c, d}.
CheckResult check_distributivity(const FiniteTgs& s);

// {0,a,b} = {a,0,b} = {a,b,0} = 0. Witness: the offending triple
// {gamma, x, y, z}.
CheckResult check_zero_absorption(const FiniteTgs& s);

// Symmetric in all three arguments. Witness: {gamma, a,b,c, pa,pb,pc}.
CheckResult check_ternary_commutativity(const FiniteTgs& s);

// {a,a,a} = a. Witness: {gamma, a}.
CheckResult check_ternary_idempotence(const FiniteTgs& s);

// {a,a,b} = a in every argument order. Witness: {gamma, x, y, z}.
CheckResult check_majority(const FiniteTgs& s);

struct AxiomProfile {
  bool add_commutative = false;
  bool add_associative = false;
  bool zero_identity = false;
  bool distributive = false;
  bool zero_absorbing = false;
  bool ternary_symmetric = false;
  bool idempotent = false;
  bool majority = false;
};

AxiomProfile axiom_profile(const FiniteTgs& s);

// Boolean type = symmetric + idempotent + majority (the majority-gate
// cluster); everything else is Other.
enum class StructureType { Boolean, Other };

StructureType classify_type(const AxiomProfile& p);
std::string structure_type_name(StructureType t);

// Carrier {0,1}^2 encoded as indices 0..3 (index = 2*hi_bit + lo_bit),
// zero = 00, addition = bitwise join, one gamma with componentwise Boolean
// majority.
FiniteTgs canonical_boolean_4();

// All symmetric ternary operations on {0..n-1} satisfying idempotence and
// the majority axiom. Entries on multisets with a repeated element are
// forced; only the C(n,3) distinct-element multisets are free, so the
// result has n^C(n,3) tables, emitted in lexicographic table order.
std::vector<std::vector<int>> enumerate_majority_ternary(int n);

// Zero-preserving carrier permutation transporting the addition table and
// every ternary table. Returns the witness permutation when one exists.
std::optional<std::vector<int>> isomorphic(const FiniteTgs& s1, const FiniteTgs& s2);

struct CandidateDetail {
  int index = 0;
  bool distributive = false;
  bool zero_absorbing = false;
  std::size_t associativity_violations = 0;  // element-level, over n^5 quintuples
};

struct FilterSummary {
  std::string name;
  std::size_t survivors = 0;
  std::size_t iso_classes = 0;
  bool canonical_present = false;
  std::vector<std::vector<int>> representatives;  // least member of each class
};

// Desk-scale verification of the small-order uniqueness claim: every
// majority candidate at n = 4 is paired with the canonical join addition,
// flagged per axiom, and partitioned into isomorphism classes under each
// filter combination.
struct UniquenessReport {
  int n = 4;
  std::size_t candidate_count = 0;
  std::vector<CandidateDetail> candidates;
  std::vector<FilterSummary> filters;
};

UniquenessReport uniqueness_report();

nlohmann::json structure_to_json(const FiniteTgs& s);
FiniteTgs structure_from_json(const nlohmann::json& j);
void save_structure(const FiniteTgs& s, const std::filesystem::path& path);
FiniteTgs load_structure(const std::filesystem::path& path);

nlohmann::json axiom_profile_to_json(const AxiomProfile& p);
nlohmann::json uniqueness_report_to_json(const UniquenessReport& r);

}  // namespace gammalab
