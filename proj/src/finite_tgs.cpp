#include "gammalab/finite_tgs.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "gammalab/errors.hpp"

namespace gammalab {

void FiniteTgs::validate() const {
  if (n < 1) throw ConfigError("structure: carrier must be non-empty");
  if (zero < 0 || zero >= n) throw ConfigError("structure: zero out of range");
  if (static_cast<int>(add.size()) != n * n)
    throw ConfigError("structure: addition table has wrong size");
  if (ternary.empty()) throw ConfigError("structure: at least one gamma required");
  for (int v : add)
    if (v < 0 || v >= n) throw ConfigError("structure: addition table not closed");
  for (const auto& t : ternary) {
    if (static_cast<int>(t.size()) != n * n * n)
      throw ConfigError("structure: ternary table has wrong size");
    for (int v : t)
      if (v < 0 || v >= n) throw ConfigError("structure: ternary table not closed");
  }
}

MonoidReport check_additive_monoid(const FiniteTgs& s) {
  MonoidReport r;
  for (int a = 0; a < s.n; ++a)
    for (int b = 0; b < s.n; ++b)
      if (s.add_at(a, b) != s.add_at(b, a)) {
        r.commutative.holds = false;
        r.commutative.witnesses.push_back({a, b});
      }
  for (int a = 0; a < s.n; ++a)
    for (int b = 0; b < s.n; ++b)
      for (int c = 0; c < s.n; ++c)
        if (s.add_at(s.add_at(a, b), c) != s.add_at(a, s.add_at(b, c))) {
          r.associative.holds = false;
          r.associative.witnesses.push_back({a, b, c});
        }
  for (int a = 0; a < s.n; ++a)
    if (s.add_at(s.zero, a) != a || s.add_at(a, s.zero) != a) {
      r.identity.holds = false;
      r.identity.witnesses.push_back({a});
    }
  return r;
}

CheckResult check_distributivity(const FiniteTgs& s) {
  CheckResult r;
  for (int g = 0; g < s.gamma_count(); ++g)
    for (int a = 0; a < s.n; ++a)
      for (int b = 0; b < s.n; ++b)
        for (int c = 0; c < s.n; ++c)
          for (int d = 0; d < s.n; ++d) {
            const int ab = s.add_at(a, b);
            if (s.tern_at(g, ab, c, d) !=
                s.add_at(s.tern_at(g, a, c, d), s.tern_at(g, b, c, d))) {
              r.holds = false;
              r.witnesses.push_back({g, 0, a, b, c, d});
            }
            if (s.tern_at(g, c, ab, d) !=
                s.add_at(s.tern_at(g, c, a, d), s.tern_at(g, c, b, d))) {
              r.holds = false;
              r.witnesses.push_back({g, 1, a, b, c, d});
            }
            if (s.tern_at(g, c, d, ab) !=
                s.add_at(s.tern_at(g, c, d, a), s.tern_at(g, c, d, b))) {
              r.holds = false;
              r.witnesses.push_back({g, 2, a, b, c, d});
            }
          }
  return r;
}

CheckResult check_zero_absorption(const FiniteTgs& s) {
  CheckResult r;
  const int z = s.zero;
  const auto probe = [&](int g, int x, int y, int w) {
    if (s.tern_at(g, x, y, w) != z) {
      r.holds = false;
      r.witnesses.push_back({g, x, y, w});
    }
  };
  for (int g = 0; g < s.gamma_count(); ++g)
    for (int a = 0; a < s.n; ++a)
      for (int b = 0; b < s.n; ++b) {
        probe(g, z, a, b);
        probe(g, a, z, b);
        probe(g, a, b, z);
      }
  return r;
}

CheckResult check_ternary_commutativity(const FiniteTgs& s) {
  CheckResult r;
  for (int g = 0; g < s.gamma_count(); ++g)
    for (int a = 0; a < s.n; ++a)
      for (int b = 0; b < s.n; ++b)
        for (int c = 0; c < s.n; ++c) {
          const int v = s.tern_at(g, a, b, c);
          const int perms[5][3] = {
              {a, c, b}, {b, a, c}, {b, c, a}, {c, a, b}, {c, b, a}};
          for (const auto& p : perms)
            if (s.tern_at(g, p[0], p[1], p[2]) != v) {
              r.holds = false;
              r.witnesses.push_back({g, a, b, c, p[0], p[1], p[2]});
            }
        }
  return r;
}

CheckResult check_ternary_idempotence(const FiniteTgs& s) {
  CheckResult r;
  for (int g = 0; g < s.gamma_count(); ++g)
    for (int a = 0; a < s.n; ++a)
      if (s.tern_at(g, a, a, a) != a) {
        r.holds = false;
        r.witnesses.push_back({g, a});
      }
  return r;
}

CheckResult check_majority(const FiniteTgs& s) {
  CheckResult r;
  const auto probe = [&](int g, int x, int y, int w, int want) {
    if (s.tern_at(g, x, y, w) != want) {
      r.holds = false;
      r.witnesses.push_back({g, x, y, w});
    }
  };
  for (int g = 0; g < s.gamma_count(); ++g)
    for (int a = 0; a < s.n; ++a)
      for (int b = 0; b < s.n; ++b) {
        probe(g, a, a, b, a);
        probe(g, a, b, a, a);
        probe(g, b, a, a, a);
      }
  return r;
}

AxiomProfile axiom_profile(const FiniteTgs& s) {
  const MonoidReport m = check_additive_monoid(s);
  AxiomProfile p;
  p.add_commutative = m.commutative.holds;
  p.add_associative = m.associative.holds;
  p.zero_identity = m.identity.holds;
  p.distributive = check_distributivity(s).holds;
  p.zero_absorbing = check_zero_absorption(s).holds;
  p.ternary_symmetric = check_ternary_commutativity(s).holds;
  p.idempotent = check_ternary_idempotence(s).holds;
  p.majority = check_majority(s).holds;
  return p;
}

StructureType classify_type(const AxiomProfile& p) {
  return (p.idempotent && p.majority && p.ternary_symmetric) ? StructureType::Boolean
                                                             : StructureType::Other;
}

std::string structure_type_name(StructureType t) {
  return t == StructureType::Boolean ? "boolean" : "other";
}

FiniteTgs canonical_boolean_4() {
  FiniteTgs s;
  s.n = 4;
  s.zero = 0;
  s.add.resize(16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) s.add_at(a, b) = a | b;
  s.ternary.assign(1, std::vector<int>(64));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        s.tern_at(0, a, b, c) = (a & b) | (a & c) | (b & c);
  return s;
}

std::vector<std::vector<int>> enumerate_majority_ternary(int n) {
  if (n < 1 || n > 4)
    throw ConfigError("enumerate_majority_ternary: carrier size must be in 1..4");

  std::vector<std::array<int, 3>> free_multisets;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) free_multisets.push_back({i, j, k});

  const auto build = [&](const std::vector<int>& assign) {
    std::vector<int> table(n * n * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          int s[3] = {a, b, c};
          std::sort(std::begin(s), std::end(s));
          int value;
          if (s[0] == s[1] || s[1] == s[2]) {
            value = s[1];  // the repeated element wins
          } else {
            const std::array<int, 3> key = {s[0], s[1], s[2]};
            const auto it =
                std::find(free_multisets.begin(), free_multisets.end(), key);
            value = assign[static_cast<std::size_t>(it - free_multisets.begin())];
          }
          table[(a * n + b) * n + c] = value;
        }
    return table;
  };

  std::vector<std::vector<int>> result;
  std::vector<int> assign(free_multisets.size(), 0);
  while (true) {
    result.push_back(build(assign));
    // odometer with the last multiset fastest; free_multisets are in
    // ascending order of their first table position, so the output is
    // lexicographic in the full table
    int pos = static_cast<int>(assign.size()) - 1;
    while (pos >= 0 && assign[pos] == n - 1) assign[pos--] = 0;
    if (pos < 0) break;
    ++assign[pos];
  }
  return result;
}

std::optional<std::vector<int>> isomorphic(const FiniteTgs& s1, const FiniteTgs& s2) {
  if (s1.n != s2.n || s1.gamma_count() != s2.gamma_count())
    throw UsageError("isomorphic: carrier sizes and gamma counts must match");
  if (s1.n > 6) throw UsageError("isomorphic: exhaustive search limited to n <= 6");

  std::vector<int> perm(s1.n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (perm[s1.zero] != s2.zero) continue;  // isomorphisms fix the zero
    bool ok = true;
    for (int a = 0; a < s1.n && ok; ++a)
      for (int b = 0; b < s1.n && ok; ++b)
        if (perm[s1.add_at(a, b)] != s2.add_at(perm[a], perm[b])) ok = false;
    for (int g = 0; g < s1.gamma_count() && ok; ++g)
      for (int a = 0; a < s1.n && ok; ++a)
        for (int b = 0; b < s1.n && ok; ++b)
          for (int c = 0; c < s1.n && ok; ++c)
            if (perm[s1.tern_at(g, a, b, c)] !=
                s2.tern_at(g, perm[a], perm[b], perm[c]))
              ok = false;
    if (ok) return perm;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

namespace {

FiniteTgs with_join_addition(const std::vector<int>& ternary_table) {
  FiniteTgs s = canonical_boolean_4();
  s.ternary[0] = ternary_table;
  return s;
}

std::size_t element_associativity_violations(const FiniteTgs& s) {
  std::size_t count = 0;
  for (int g = 0; g < s.gamma_count(); ++g)
    for (int a = 0; a < s.n; ++a)
      for (int b = 0; b < s.n; ++b)
        for (int c = 0; c < s.n; ++c)
          for (int d = 0; d < s.n; ++d)
            for (int e = 0; e < s.n; ++e)
              if (s.tern_at(g, s.tern_at(g, a, b, c), d, e) !=
                  s.tern_at(g, a, s.tern_at(g, b, c, d), e))
                ++count;
  return count;
}

FilterSummary partition_into_classes(const std::string& name,
                                     const std::vector<std::vector<int>>& survivors,
                                     const std::vector<int>& canonical_table) {
  FilterSummary summary;
  summary.name = name;
  summary.survivors = survivors.size();
  // survivors arrive in lexicographic order, so each class representative
  // is its least member
  std::vector<FiniteTgs> reps;
  for (const auto& table : survivors) {
    const FiniteTgs candidate = with_join_addition(table);
    bool placed = false;
    for (const FiniteTgs& rep : reps)
      if (isomorphic(rep, candidate)) {
        placed = true;
        break;
      }
    if (!placed) {
      reps.push_back(candidate);
      summary.representatives.push_back(table);
    }
  }
  summary.iso_classes = reps.size();
  const FiniteTgs canonical = with_join_addition(canonical_table);
  for (const FiniteTgs& rep : reps)
    if (isomorphic(rep, canonical)) {
      summary.canonical_present = true;
      break;
    }
  return summary;
}

}  // namespace

UniquenessReport uniqueness_report() {
  UniquenessReport report;
  report.n = 4;
  const std::vector<std::vector<int>> candidates = enumerate_majority_ternary(4);
  report.candidate_count = candidates.size();

  const std::vector<int> canonical_table = canonical_boolean_4().ternary[0];

  std::vector<std::vector<int>> distributive, absorbing, both;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const FiniteTgs s = with_join_addition(candidates[i]);
    CandidateDetail detail;
    detail.index = static_cast<int>(i);
    detail.distributive = check_distributivity(s).holds;
    detail.zero_absorbing = check_zero_absorption(s).holds;
    detail.associativity_violations = element_associativity_violations(s);
    report.candidates.push_back(detail);
    if (detail.distributive) distributive.push_back(candidates[i]);
    if (detail.zero_absorbing) absorbing.push_back(candidates[i]);
    if (detail.distributive && detail.zero_absorbing) both.push_back(candidates[i]);
  }

  report.filters.push_back(partition_into_classes("symmetric+idempotent+majority",
                                                  candidates, canonical_table));
  report.filters.push_back(partition_into_classes(
      "symmetric+idempotent+majority+distributive", distributive, canonical_table));
  report.filters.push_back(partition_into_classes(
      "symmetric+idempotent+majority+zero_absorbing", absorbing, canonical_table));
  report.filters.push_back(partition_into_classes(
      "symmetric+idempotent+majority+distributive+zero_absorbing", both,
      canonical_table));
  return report;
}

nlohmann::json structure_to_json(const FiniteTgs& s) {
  return {{"schema_version", 1},
          {"kind", "finite_tgs"},
          {"n", s.n},
          {"zero", s.zero},
          {"gamma_count", s.gamma_count()},
          {"add", s.add},
          {"ternary", s.ternary}};
}

FiniteTgs structure_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema_version").get<int>() != 1)
      throw ParseError("unsupported structure schema_version");
    if (j.at("kind").get<std::string>() != "finite_tgs")
      throw ParseError("document is not a finite_tgs structure");
    FiniteTgs s;
    s.n = j.at("n").get<int>();
    s.zero = j.at("zero").get<int>();
    s.add = j.at("add").get<std::vector<int>>();
    s.ternary = j.at("ternary").get<std::vector<std::vector<int>>>();
    if (j.at("gamma_count").get<int>() != s.gamma_count())
      throw ParseError("gamma_count does not match ternary table count");
    s.validate();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed structure document: ") + e.what());
  } catch (const ConfigError& e) {
    throw ParseError(std::string("invalid structure: ") + e.what());
  }
}

void save_structure(const FiniteTgs& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << structure_to_json(s).dump(2) << "\n";
  if (!out) throw IoError("write failed: " + path.string());
}

FiniteTgs load_structure(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in " + path.string() + ": " + e.what());
  }
  return structure_from_json(j);
}

nlohmann::json axiom_profile_to_json(const AxiomProfile& p) {
  return {{"add_commutative", p.add_commutative},
          {"add_associative", p.add_associative},
          {"zero_identity", p.zero_identity},
          {"distributive", p.distributive},
          {"zero_absorbing", p.zero_absorbing},
          {"ternary_symmetric", p.ternary_symmetric},
          {"idempotent", p.idempotent},
          {"majority", p.majority}};
}

nlohmann::json uniqueness_report_to_json(const UniquenessReport& r) {
  nlohmann::json candidates = nlohmann::json::array();
  for (const CandidateDetail& d : r.candidates)
    candidates.push_back({{"index", d.index},
                          {"distributive", d.distributive},
                          {"zero_absorbing", d.zero_absorbing},
                          {"associativity_violations", d.associativity_violations}});
  nlohmann::json filters = nlohmann::json::array();
  for (const FilterSummary& f : r.filters)
    filters.push_back({{"name", f.name},
                       {"survivors", f.survivors},
                       {"iso_classes", f.iso_classes},
                       {"canonical_present", f.canonical_present},
                       {"representatives", f.representatives}});
  return {{"schema_version", 1},
          {"n", r.n},
          {"candidate_count", r.candidate_count},
          {"candidates", candidates},
          {"filters", filters}};
}

}  // namespace gammalab
