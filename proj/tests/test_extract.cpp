#include "gammalab/extract.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "gammalab/errors.hpp"
#include "gammalab/rng.hpp"
#include "gammalab/train.hpp"

#include "doctest.h"

using namespace gammalab;

namespace {

int class_of(int x) { return full_domain()[x].class_label; }

int majority_bit(int a, int b, int c) { return (a + b + c) >= 2 ? 1 : 0; }

// Expected table under the majority-of-classes rule; independent of the
// geometric extraction path.
TruthTable majority_oracle_table() {
  TruthTable t;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        t.set(a, b, c, majority_bit(class_of(a), class_of(b), class_of(c)));
  return t;
}

Vec feat(std::initializer_list<double> head) {
  Vec f(8, 0.0);
  std::size_t i = 0;
  for (double v : head) f[i++] = v;
  return f;
}

// Two point-clusters: exact centers, zero diameter.
std::array<Vec, 4> ideal_features() {
  return {feat({1.0}), feat({1.0}), feat({-1.0}), feat({-1.0})};
}

Vec random_direction(SplitMix64& rng, std::size_t dim) {
  Vec u(dim);
  double n = 0.0;
  do {
    for (double& v : u) v = rng.next_uniform(-1.0, 1.0);
    n = norm(u);
  } while (n < 1e-3);
  for (double& v : u) v /= n;
  return u;
}

// Synthetic features whose intra-cluster diameter is below one third of
// the inter-center distance; each 2-point cluster is symmetric about its
// center, so the computed centers land exactly on the nominal ones.
std::array<Vec, 4> clustered_features(SplitMix64& rng) {
  const std::size_t dim = 8;
  const double separation = rng.next_uniform(0.5, 4.0);
  Vec center_a(dim), axis = random_direction(rng, dim);
  for (double& v : center_a) v = rng.next_uniform(-2.0, 2.0);
  Vec center_b(dim);
  for (std::size_t k = 0; k < dim; ++k) center_b[k] = center_a[k] + separation * axis[k];

  const auto spread = [&](const Vec& center) {
    const double radius = rng.next_uniform(0.0, separation * 0.16);
    const Vec dir = random_direction(rng, dim);
    Vec hi(dim), lo(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      hi[k] = center[k] + radius * dir[k];
      lo[k] = center[k] - radius * dir[k];
    }
    return std::pair{hi, lo};
  };
  const auto [f0, f1] = spread(center_a);
  const auto [f2, f3] = spread(center_b);
  return {f0, f1, f2, f3};
}

TruthTable trained_table() {
  TrainConfig cfg;
  static const TruthTable table = truth_table(train_logic(cfg).encoder);
  return table;
}

}  // namespace

TEST_SUITE("extract") {

TEST_CASE("class centers of ideal clusters") {
  const auto f = ideal_features();
  const ClassCenters c = class_centers(f);
  CHECK(c.center_a == feat({1.0}));
  CHECK(c.center_b == feat({-1.0}));
}

TEST_CASE("coincident centers are refused") {
  const std::array<Vec, 4> f = {feat({1.0}), feat({-1.0}), feat({0.5}), feat({-0.5})};
  CHECK_THROWS_AS(class_centers(f), ExtractionError);
}

TEST_CASE("zero encoder is degenerate") {
  Network net;
  DenseLayer layer;
  layer.activation = Activation::Identity;
  layer.weights = Matrix(8, 2);
  layer.biases.assign(8, 0.0);
  net.layers.push_back(layer);
  CHECK_THROWS_AS(class_centers(net), ExtractionError);
}

TEST_CASE("trained centers separate by at least 0.9 margin") {
  TrainConfig cfg;
  const TrainResult r = train_logic(cfg);
  const ClassCenters c = class_centers(r.encoder);
  CHECK(distance(c.center_a, c.center_b) >= 0.9 * cfg.margin);
}

TEST_CASE("phi on ideal clusters follows the majority rule") {
  const auto f = ideal_features();
  const ClassCenters c = class_centers(f);
  CHECK(phi(f, c, 0, 0, 0) == 0);
  CHECK(phi(f, c, 0, 1, 2) == 0);  // pattern (0,0,1) -> class 0
  CHECK(phi(f, c, 2, 0, 3) == 1);  // pattern (1,0,1) -> class 1
}

TEST_CASE("phi raises on an exact tie") {
  // centers (1,0,..) and (-1,0,..); the triple (e1,e1,e1) has mean 0,
  // equidistant from both
  const std::array<Vec, 4> f = {feat({2.0}), feat({0.0}), feat({-1.0}), feat({-1.0})};
  const ClassCenters c = class_centers(f);
  CHECK_THROWS_AS(phi(f, c, 1, 1, 1), AmbiguityError);
  CHECK_THROWS_AS(truth_table(f, c), AmbiguityError);
}

TEST_CASE("trained truth table equals majority-of-classes exactly") {
  CHECK(trained_table() == majority_oracle_table());
}

TEST_CASE("trained table has 32 entries of each class") {
  const TruthTable t = trained_table();
  int zeros = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        if (t.at(a, b, c) == 0) ++zeros;
  CHECK(zeros == 32);
}

TEST_CASE("any small-diameter two-cluster feature set induces the majority table") {
  SplitMix64 rng(4242);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = clustered_features(rng);
    const ClassCenters c = class_centers(f);
    CHECK(truth_table(f, c) == majority_oracle_table());
  }
}

TEST_CASE("pattern summary of the majority table matches the expected counts") {
  const PatternSummary s = pattern_summary(majority_oracle_table());
  for (const PatternRow& row : s) {
    CHECK(row.count_class0 + row.count_class1 == 8);
    const int maj = majority_bit(row.pattern[0], row.pattern[1], row.pattern[2]);
    CHECK(row.majority == maj);
    CHECK(row.count_class0 == (maj == 0 ? 8 : 0));
    CHECK(row.count_class1 == (maj == 1 ? 8 : 0));
  }
  // spot-check the two spec'd rows
  CHECK(s[1].pattern == std::array<int, 3>{0, 0, 1});
  CHECK(s[1].count_class0 == 8);
  CHECK(s[3].pattern == std::array<int, 3>{0, 1, 1});
  CHECK(s[3].count_class1 == 8);
}

TEST_CASE("pattern summary counts always sum to 8, majority column is table-free") {
  SplitMix64 rng(31337);
  for (int trial = 0; trial < 50; ++trial) {
    TruthTable t;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c) t.set(a, b, c, rng.next_below(2));
    const PatternSummary s = pattern_summary(t);
    for (int p = 0; p < 8; ++p) {
      CHECK(s[p].count_class0 + s[p].count_class1 == 8);
      CHECK(s[p].majority ==
            majority_bit(s[p].pattern[0], s[p].pattern[1], s[p].pattern[2]));
    }
  }
}

TEST_CASE("symmetry holds on the majority table and on constant tables") {
  CHECK(check_symmetry(majority_oracle_table()).holds);
  TruthTable constant;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) constant.set(a, b, c, 1);
  CHECK(check_symmetry(constant).holds);
  CHECK(check_symmetry(majority_oracle_table()).checked == 384);
}

TEST_CASE("a flipped entry is caught by symmetry with a concrete witness") {
  TruthTable t = majority_oracle_table();
  t.set(0, 1, 2, 1 - t.at(0, 1, 2));
  const SymmetryReport r = check_symmetry(t);
  CHECK(!r.holds);
  REQUIRE(!r.violations.empty());
  const bool mentioned = std::any_of(
      r.violations.begin(), r.violations.end(), [](const SymmetryViolation& v) {
        return v.triple == std::array<int, 3>{0, 1, 2} ||
               v.permuted == std::array<int, 3>{0, 1, 2};
      });
  CHECK(mentioned);
}

TEST_CASE("idempotence holds on the majority table, fails on constant-0") {
  const IdempotenceReport good = check_idempotence(majority_oracle_table());
  CHECK(good.holds);
  CHECK(good.checked == 4);
  TruthTable zeros;
  const IdempotenceReport bad = check_idempotence(zeros);
  CHECK(!bad.holds);
  REQUIRE(bad.violations.size() == 2);  // e2 and e3 are class B
  CHECK(bad.violations[0].element == 2);
  CHECK(bad.violations[1].element == 3);
}

TEST_CASE("majority axiom holds on the majority table") {
  const MajorityReport r = check_majority_axiom(majority_oracle_table());
  CHECK(r.holds);
  CHECK(r.checked == 48);
}

TEST_CASE("a repeated-element violation is reported") {
  TruthTable t = majority_oracle_table();
  t.set(0, 0, 2, 1);  // phi(e0,e0,e2) must be class(e0) = 0
  const MajorityReport r = check_majority_axiom(t);
  CHECK(!r.holds);
  REQUIRE(!r.violations.empty());
  const bool found = std::any_of(
      r.violations.begin(), r.violations.end(), [](const MajorityViolation& v) {
        return v.triple == std::array<int, 3>{0, 0, 2} && v.expected_class == 0;
      });
  CHECK(found);
}

TEST_CASE("class-level associativity violations match the boolean oracle count") {
  // independent oracle: count over {0,1}^5, lifted by 32 element
  // quintuples per class quintuple
  std::size_t bool_violations = 0;
  for (int mask = 0; mask < 32; ++mask) {
    const int x1 = (mask >> 4) & 1, x2 = (mask >> 3) & 1, x3 = (mask >> 2) & 1,
              x4 = (mask >> 1) & 1, x5 = mask & 1;
    const int left = majority_bit(majority_bit(x1, x2, x3), x4, x5);
    const int right = majority_bit(x1, majority_bit(x2, x3, x4), x5);
    if (left != right) ++bool_violations;
  }
  REQUIRE(bool_violations == 4);

  const ClassAssociativityReport r = check_class_associativity(majority_oracle_table());
  CHECK(r.quintuples_checked == 1024);
  CHECK(r.representative_independent);
  CHECK(r.representative_violations == 0);
  CHECK(r.associativity_violations == bool_violations * 32);
  CHECK(r.associativity_violations == 128);
}

TEST_CASE("the documented witness quintuple violates associativity") {
  // classes (1,0,0,0,1): left nesting gives 0, right nesting gives 1
  const ClassAssociativityReport r = check_class_associativity(majority_oracle_table());
  const bool found = std::any_of(
      r.witnesses.begin(), r.witnesses.end(), [](const AssociativityWitness& w) {
        return w.quintuple == std::array<int, 5>{2, 0, 0, 0, 2} && w.left_class == 0 &&
               w.right_class == 1;
      });
  CHECK(found);
  // all-A quintuples never violate
  const bool all_a = std::any_of(
      r.witnesses.begin(), r.witnesses.end(), [](const AssociativityWitness& w) {
        return w.quintuple == std::array<int, 5>{0, 0, 0, 0, 0};
      });
  CHECK(!all_a);
}

TEST_CASE("encoder-aware associativity check agrees and covers the centers") {
  TrainConfig cfg;
  const TrainResult tr = train_logic(cfg);
  const auto features = encode_domain(tr.encoder);
  const ClassCenters centers = class_centers(features);
  const TruthTable table = truth_table(features, centers);
  const ClassAssociativityReport r =
      check_class_associativity(table, features, centers);
  CHECK(r.center_checked);
  CHECK(r.center_mismatches == 0);
  CHECK(r.representative_independent);
  CHECK(r.associativity_violations == 128);
}

TEST_CASE("CSV export/import round-trips and is deterministic") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "gammalab-extract-test";
  fs::create_directories(dir);
  const fs::path file = dir / "table.csv";

  const TruthTable t = majority_oracle_table();
  export_table(t, file);

  std::ifstream in(file);
  std::string line;
  std::size_t lines = 0;
  std::string first_data;
  while (std::getline(in, line)) {
    if (lines == 1) first_data = line;
    ++lines;
  }
  CHECK(lines == 65);  // header + 64 rows
  CHECK(first_data == "red square,red square,red square,0");

  const TruthTable back = import_table(file);
  CHECK(back == t);
  fs::remove_all(dir);
}

TEST_CASE("random tables survive the CSV round-trip") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "gammalab-extract-rt";
  fs::create_directories(dir);
  SplitMix64 rng(808);
  for (int trial = 0; trial < 20; ++trial) {
    TruthTable t;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c) t.set(a, b, c, rng.next_below(2));
    const fs::path file = dir / "t.csv";
    export_table(t, file);
    CHECK(import_table(file) == t);
  }
  fs::remove_all(dir);
}

TEST_CASE("import rejects malformed tables") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "gammalab-extract-bad";
  fs::create_directories(dir);
  const fs::path file = dir / "bad.csv";

  SUBCASE("bad header") {
    std::ofstream(file) << "x,y,z,v\n";
    CHECK_THROWS_AS(import_table(file), ParseError);
  }
  SUBCASE("missing rows") {
    std::ofstream(file) << "a,b,c,phi_class\nred square,red square,red square,0\n";
    CHECK_THROWS_AS(import_table(file), ParseError);
  }
  SUBCASE("unknown element") {
    std::ofstream out(file);
    out << "a,b,c,phi_class\n";
    for (int i = 0; i < 64; ++i) out << "green blob,red square,red square,0\n";
    out.close();
    CHECK_THROWS_AS(import_table(file), ParseError);
  }
  fs::remove_all(dir);
}

TEST_CASE("class quotient of the majority table is boolean majority") {
  const TruthTable t = majority_oracle_table();
  REQUIRE(table_is_class_consistent(t));
  const std::array<int, 8> q = class_quotient(t);
  for (int p = 0; p < 8; ++p)
    CHECK(q[p] == majority_bit((p >> 2) & 1, (p >> 1) & 1, p & 1));

  TruthTable inconsistent = t;
  inconsistent.set(0, 1, 2, 1);  // same pattern as (1,0,2) but different value
  CHECK(!table_is_class_consistent(inconsistent));
  CHECK_THROWS_AS(class_quotient(inconsistent), ExtractionError);
}

}  // TEST_SUITE
