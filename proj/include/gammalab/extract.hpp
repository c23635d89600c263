#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "gammalab/nn.hpp"
#include "gammalab/task.hpp"

#include "json.hpp"

namespace gammalab {

// Per-class feature centers. center_a is the mean of the e0/e1 features,
// center_b of e2/e3, using the ground-truth labels (not classifier
// predictions).
struct ClassCenters {
  Vec center_a;
  Vec center_b;
};

std::array<Vec, 4> encode_domain(const Network& encoder);

// Throws ExtractionError when the centers are closer than 1e-6; a
// degenerate encoder would corrupt everything downstream.
ClassCenters class_centers(const std::array<Vec, 4>& features);
ClassCenters class_centers(const Network& encoder);

// The induced ternary operation: the class whose center is closest to the
// mean of the three input features. An exact tie (within 1e-9) raises
// AmbiguityError instead of silently picking a side.
int phi(const std::array<Vec, 4>& features, const ClassCenters& centers,
        int a, int b, int c);

// Same rule applied to three raw feature vectors; used for the
// center-representative variant of the associativity check.
int phi_vectors(const ClassCenters& centers, const Vec& fa, const Vec& fb,
                const Vec& fc);

// Total map from ordered element triples to output classes; 64 entries.
class TruthTable {
 public:
  int at(int a, int b, int c) const { return bits_[index(a, b, c)]; }
  void set(int a, int b, int c, int value);

  bool operator==(const TruthTable& other) const { return bits_ == other.bits_; }

  static std::size_t index(int a, int b, int c);

 private:
  std::array<std::uint8_t, 64> bits_{};
};

TruthTable truth_table(const std::array<Vec, 4>& features, const ClassCenters& centers);
TruthTable truth_table(const Network& encoder);

// The 64 triples aggregated by the class pattern (C(a), C(b), C(c)). Each
// pattern covers 2^3 = 8 triples; the majority column depends only on the
// pattern.
struct PatternRow {
  std::array<int, 3> pattern;
  int count_class0 = 0;
  int count_class1 = 0;
  int majority = 0;
};
using PatternSummary = std::array<PatternRow, 8>;

PatternSummary pattern_summary(const TruthTable& table);

struct SymmetryViolation {
  std::array<int, 3> triple;
  std::array<int, 3> permuted;
  int value;
  int permuted_value;
};

struct SymmetryReport {
  bool holds = true;
  std::size_t checked = 0;  // 64 triples x 6 permutations = 384
  std::vector<SymmetryViolation> violations;
};

SymmetryReport check_symmetry(const TruthTable& table);

struct IdempotenceViolation {
  int element;
  int expected_class;
  int got;
};

struct IdempotenceReport {
  bool holds = true;
  std::size_t checked = 0;  // 4
  std::vector<IdempotenceViolation> violations;
};

IdempotenceReport check_idempotence(const TruthTable& table);

struct MajorityViolation {
  std::array<int, 3> triple;
  int expected_class;
  int got;
};

struct MajorityReport {
  bool holds = true;
  std::size_t checked = 0;  // 3 positions x 16 (a,b) pairs = 48
  std::vector<MajorityViolation> violations;
};

// Every triple with a repeated element must return the repeated element's
// class.
MajorityReport check_majority_axiom(const TruthTable& table);

struct AssociativityWitness {
  std::array<int, 5> quintuple;
  int left_class;   // class of phi(phi(a,b,c),d,e); -1 if representative-dependent
  int right_class;  // class of phi(a,phi(b,c,d),e); -1 if representative-dependent
};

struct RepresentativeWitness {
  std::array<int, 5> quintuple;
  bool left_side;  // which nesting disagreed across representatives
};

// For all 4^5 quintuples: the inner result phi(a,b,c) is a class; every
// element of that class is substituted as the nested argument, and the two
// nestings phi(phi(a,b,c),d,e) vs phi(a,phi(b,c,d),e) are compared at the
// class level. A quintuple counts as associative only when every
// representative pair agrees.
struct ClassAssociativityReport {
  std::size_t quintuples_checked = 0;  // 1024
  bool representative_independent = true;
  std::size_t representative_violations = 0;
  std::vector<RepresentativeWitness> representative_witnesses;
  std::size_t associativity_violations = 0;
  std::vector<AssociativityWitness> witnesses;
  // Set by the encoder-aware overload, which additionally substitutes the
  // class center itself as the nested argument.
  bool center_checked = false;
  std::size_t center_mismatches = 0;
};

ClassAssociativityReport check_class_associativity(const TruthTable& table);
ClassAssociativityReport check_class_associativity(const TruthTable& table,
                                                   const std::array<Vec, 4>& features,
                                                   const ClassCenters& centers);

// CSV with header a,b,c,phi_class and 64 data rows in lexicographic id
// order; elements appear under their display names.
void export_table(const TruthTable& table, const std::filesystem::path& path);
TruthTable import_table(const std::filesystem::path& path);

// True when the table value depends only on the class pattern of the
// triple.
bool table_is_class_consistent(const TruthTable& table);

// The induced operation on classes; 8 entries indexed (Ca*4 + Cb*2 + Cc).
// Throws ExtractionError if the table is not class-consistent.
std::array<int, 8> class_quotient(const TruthTable& table);

nlohmann::json pattern_summary_to_json(const PatternSummary& summary);
nlohmann::json property_report_to_json(const SymmetryReport& sym,
                                       const IdempotenceReport& idem,
                                       const MajorityReport& maj,
                                       const ClassAssociativityReport& assoc);

}  // namespace gammalab
