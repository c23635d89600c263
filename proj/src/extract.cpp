#include "gammalab/extract.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gammalab/errors.hpp"

namespace gammalab {

namespace {

constexpr double kCenterSeparationFloor = 1e-6;
constexpr double kTieTolerance = 1e-9;
constexpr std::size_t kMaxJsonWitnesses = 10;

int class_of(int element) { return full_domain()[element].class_label; }

// Representatives of a class in id order: class 0 -> {0,1}, class 1 -> {2,3}.
std::array<int, 2> representatives(int class_bit) {
  return class_bit == 0 ? std::array<int, 2>{0, 1} : std::array<int, 2>{2, 3};
}

int majority_bit(int a, int b, int c) { return (a + b + c) >= 2 ? 1 : 0; }

void require_element(int x, const char* who) {
  if (x < 0 || x > 3) throw UsageError(std::string(who) + ": element id out of range");
}

std::string triple_str(int a, int b, int c) {
  return "(" + std::string(full_domain()[a].display_name) + ", " +
         full_domain()[b].display_name + ", " + full_domain()[c].display_name + ")";
}

}  // namespace

std::array<Vec, 4> encode_domain(const Network& encoder) {
  std::array<Vec, 4> f;
  for (const DomainElement& e : full_domain())
    f[e.id] = forward(encoder, input_vector(e)).output;
  return f;
}

ClassCenters class_centers(const std::array<Vec, 4>& features) {
  ClassCenters c{vec_mean(features[0], features[1]), vec_mean(features[2], features[3])};
  if (distance(c.center_a, c.center_b) < kCenterSeparationFloor)
    throw ExtractionError("class centers coincide; encoder features are degenerate");
  return c;
}

ClassCenters class_centers(const Network& encoder) {
  return class_centers(encode_domain(encoder));
}

int phi_vectors(const ClassCenters& centers, const Vec& fa, const Vec& fb,
                const Vec& fc) {
  const Vec m = vec_mean3(fa, fb, fc);
  const double da = distance(m, centers.center_a);
  const double db = distance(m, centers.center_b);
  if (std::abs(da - db) <= kTieTolerance)
    throw AmbiguityError("phi: mean feature is equidistant from both class centers");
  return da < db ? 0 : 1;
}

int phi(const std::array<Vec, 4>& features, const ClassCenters& centers,
        int a, int b, int c) {
  require_element(a, "phi");
  require_element(b, "phi");
  require_element(c, "phi");
  try {
    return phi_vectors(centers, features[a], features[b], features[c]);
  } catch (const AmbiguityError&) {
    throw AmbiguityError("phi: tie at triple " + triple_str(a, b, c));
  }
}

std::size_t TruthTable::index(int a, int b, int c) {
  require_element(a, "TruthTable");
  require_element(b, "TruthTable");
  require_element(c, "TruthTable");
  return static_cast<std::size_t>((a * 4 + b) * 4 + c);
}

void TruthTable::set(int a, int b, int c, int value) {
  if (value != 0 && value != 1) throw UsageError("TruthTable: class must be 0 or 1");
  bits_[index(a, b, c)] = static_cast<std::uint8_t>(value);
}

TruthTable truth_table(const std::array<Vec, 4>& features, const ClassCenters& centers) {
  TruthTable t;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) t.set(a, b, c, phi(features, centers, a, b, c));
  return t;
}

TruthTable truth_table(const Network& encoder) {
  const std::array<Vec, 4> f = encode_domain(encoder);
  return truth_table(f, class_centers(f));
}

PatternSummary pattern_summary(const TruthTable& table) {
  PatternSummary summary{};
  for (int p = 0; p < 8; ++p) {
    PatternRow& row = summary[p];
    row.pattern = {(p >> 2) & 1, (p >> 1) & 1, p & 1};
    row.majority = majority_bit(row.pattern[0], row.pattern[1], row.pattern[2]);
  }
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        const int p = class_of(a) * 4 + class_of(b) * 2 + class_of(c);
        if (table.at(a, b, c) == 0)
          ++summary[p].count_class0;
        else
          ++summary[p].count_class1;
      }
  return summary;
}

SymmetryReport check_symmetry(const TruthTable& table) {
  SymmetryReport report;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        const int value = table.at(a, b, c);
        const std::array<std::array<int, 3>, 6> perms = {{{a, b, c},
                                                          {a, c, b},
                                                          {b, a, c},
                                                          {b, c, a},
                                                          {c, a, b},
                                                          {c, b, a}}};
        for (const auto& p : perms) {
          ++report.checked;
          const int pv = table.at(p[0], p[1], p[2]);
          if (pv != value) {
            report.holds = false;
            report.violations.push_back({{a, b, c}, p, value, pv});
          }
        }
      }
  return report;
}

IdempotenceReport check_idempotence(const TruthTable& table) {
  IdempotenceReport report;
  for (int x = 0; x < 4; ++x) {
    ++report.checked;
    const int got = table.at(x, x, x);
    if (got != class_of(x)) {
      report.holds = false;
      report.violations.push_back({x, class_of(x), got});
    }
  }
  return report;
}

MajorityReport check_majority_axiom(const TruthTable& table) {
  MajorityReport report;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const std::array<std::array<int, 3>, 3> orders = {
          {{a, a, b}, {a, b, a}, {b, a, a}}};
      for (const auto& t : orders) {
        ++report.checked;
        const int got = table.at(t[0], t[1], t[2]);
        if (got != class_of(a)) {
          report.holds = false;
          report.violations.push_back({t, class_of(a), got});
        }
      }
    }
  return report;
}

namespace {

struct NestedOutcome {
  bool consistent;  // same class for every representative
  int value;        // the common class when consistent, else first seen
};

NestedOutcome nested_class(const TruthTable& table, int inner_class,
                           int other1, int other2, bool inner_first) {
  NestedOutcome out{true, -1};
  for (int r : representatives(inner_class)) {
    const int v = inner_first ? table.at(r, other1, other2)
                              : table.at(other1, r, other2);
    if (out.value == -1)
      out.value = v;
    else if (v != out.value)
      out.consistent = false;
  }
  return out;
}

ClassAssociativityReport associativity_impl(const TruthTable& table,
                                            const std::array<Vec, 4>* features,
                                            const ClassCenters* centers) {
  ClassAssociativityReport report;
  report.center_checked = features != nullptr;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d)
          for (int e = 0; e < 4; ++e) {
            ++report.quintuples_checked;
            const int left_inner = table.at(a, b, c);
            const int right_inner = table.at(b, c, d);
            // left nesting: phi(r, d, e); right nesting: phi(a, r', e)
            const NestedOutcome left = nested_class(table, left_inner, d, e, true);
            const NestedOutcome right = nested_class(table, right_inner, a, e, false);

            bool rep_ok = left.consistent && right.consistent;
            if (!left.consistent)
              report.representative_witnesses.push_back({{a, b, c, d, e}, true});
            if (!right.consistent)
              report.representative_witnesses.push_back({{a, b, c, d, e}, false});

            if (features != nullptr) {
              const int lc = phi_vectors(
                  *centers, left_inner == 0 ? centers->center_a : centers->center_b,
                  (*features)[d], (*features)[e]);
              const int rc = phi_vectors(
                  *centers, (*features)[a],
                  right_inner == 0 ? centers->center_a : centers->center_b,
                  (*features)[e]);
              if (lc != left.value || rc != right.value) {
                ++report.center_mismatches;
                rep_ok = false;
              }
            }
            if (!rep_ok) {
              report.representative_independent = false;
              ++report.representative_violations;
            }

            // The associativity verdict quantifies over element
            // representatives only, so both overloads count identically.
            if (!left.consistent || !right.consistent ||
                left.value != right.value) {
              ++report.associativity_violations;
              report.witnesses.push_back({{a, b, c, d, e},
                                          left.consistent ? left.value : -1,
                                          right.consistent ? right.value : -1});
            }
          }
  return report;
}

}  // namespace

ClassAssociativityReport check_class_associativity(const TruthTable& table) {
  return associativity_impl(table, nullptr, nullptr);
}

ClassAssociativityReport check_class_associativity(const TruthTable& table,
                                                   const std::array<Vec, 4>& features,
                                                   const ClassCenters& centers) {
  return associativity_impl(table, &features, &centers);
}

void export_table(const TruthTable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "a,b,c,phi_class\n";
  const auto& domain = full_domain();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        out << domain[a].display_name << ',' << domain[b].display_name << ','
            << domain[c].display_name << ',' << table.at(a, b, c) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

TruthTable import_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "a,b,c,phi_class")
    throw ParseError("truth table CSV: bad header in " + path.string());

  TruthTable table;
  std::array<bool, 64> seen{};
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string na, nb, nc, nv;
    if (!std::getline(ss, na, ',') || !std::getline(ss, nb, ',') ||
        !std::getline(ss, nc, ',') || !std::getline(ss, nv))
      throw ParseError("truth table CSV: malformed row: " + line);
    const int a = element_by_name(na).id;
    const int b = element_by_name(nb).id;
    const int c = element_by_name(nc).id;
    if (nv != "0" && nv != "1")
      throw ParseError("truth table CSV: class must be 0 or 1, got: " + nv);
    const std::size_t idx = TruthTable::index(a, b, c);
    if (seen[idx]) throw ParseError("truth table CSV: duplicate triple: " + line);
    seen[idx] = true;
    table.set(a, b, c, nv == "1" ? 1 : 0);
    ++rows;
  }
  if (rows != 64)
    throw ParseError("truth table CSV: expected 64 rows, got " + std::to_string(rows));
  return table;
}

bool table_is_class_consistent(const TruthTable& table) {
  std::array<int, 8> value{};
  value.fill(-1);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        const int p = class_of(a) * 4 + class_of(b) * 2 + class_of(c);
        const int v = table.at(a, b, c);
        if (value[p] == -1)
          value[p] = v;
        else if (value[p] != v)
          return false;
      }
  return true;
}

std::array<int, 8> class_quotient(const TruthTable& table) {
  if (!table_is_class_consistent(table))
    throw ExtractionError("truth table is not class-consistent; no quotient exists");
  std::array<int, 8> q{};
  const auto rep = [](int bit) { return bit == 0 ? 0 : 2; };
  for (int p = 0; p < 8; ++p)
    q[p] = table.at(rep((p >> 2) & 1), rep((p >> 1) & 1), rep(p & 1));
  return q;
}

nlohmann::json pattern_summary_to_json(const PatternSummary& summary) {
  nlohmann::json rows = nlohmann::json::array();
  for (const PatternRow& row : summary)
    rows.push_back({{"pattern", row.pattern},
                    {"count_class0", row.count_class0},
                    {"count_class1", row.count_class1},
                    {"majority", row.majority}});
  return {{"schema_version", 1}, {"rows", rows}};
}

nlohmann::json property_report_to_json(const SymmetryReport& sym,
                                       const IdempotenceReport& idem,
                                       const MajorityReport& maj,
                                       const ClassAssociativityReport& assoc) {
  const auto truncated = [](std::size_t total) { return total > kMaxJsonWitnesses; };

  nlohmann::json sym_viol = nlohmann::json::array();
  for (std::size_t i = 0; i < std::min(sym.violations.size(), kMaxJsonWitnesses); ++i)
    sym_viol.push_back({{"triple", sym.violations[i].triple},
                        {"permuted", sym.violations[i].permuted},
                        {"value", sym.violations[i].value},
                        {"permuted_value", sym.violations[i].permuted_value}});
  nlohmann::json idem_viol = nlohmann::json::array();
  for (const auto& v : idem.violations)
    idem_viol.push_back(
        {{"element", v.element}, {"expected", v.expected_class}, {"got", v.got}});
  nlohmann::json maj_viol = nlohmann::json::array();
  for (std::size_t i = 0; i < std::min(maj.violations.size(), kMaxJsonWitnesses); ++i)
    maj_viol.push_back({{"triple", maj.violations[i].triple},
                        {"expected", maj.violations[i].expected_class},
                        {"got", maj.violations[i].got}});
  nlohmann::json assoc_wit = nlohmann::json::array();
  for (std::size_t i = 0; i < std::min(assoc.witnesses.size(), kMaxJsonWitnesses); ++i)
    assoc_wit.push_back({{"quintuple", assoc.witnesses[i].quintuple},
                         {"left_class", assoc.witnesses[i].left_class},
                         {"right_class", assoc.witnesses[i].right_class}});

  return {{"schema_version", 1},
          {"symmetry",
           {{"holds", sym.holds},
            {"checked", sym.checked},
            {"violations", sym_viol},
            {"violations_total", sym.violations.size()},
            {"violations_truncated", truncated(sym.violations.size())}}},
          {"idempotence",
           {{"holds", idem.holds}, {"checked", idem.checked}, {"violations", idem_viol}}},
          {"majority",
           {{"holds", maj.holds},
            {"checked", maj.checked},
            {"violations", maj_viol},
            {"violations_total", maj.violations.size()},
            {"violations_truncated", truncated(maj.violations.size())}}},
          {"representative_independence",
           {{"holds", assoc.representative_independent},
            {"violations", assoc.representative_violations},
            {"center_checked", assoc.center_checked},
            {"center_mismatches", assoc.center_mismatches}}},
          {"associativity_checked", assoc.quintuples_checked},
          {"associativity_violations", assoc.associativity_violations},
          {"associativity_witnesses", assoc_wit},
          {"associativity_witnesses_truncated", truncated(assoc.witnesses.size())}};
}

}  // namespace gammalab
