#include "gammalab/report.hpp"

#include <chrono>
#include <fstream>
#include <optional>

#include "gammalab/errors.hpp"
#include "gammalab/extract.hpp"
#include "gammalab/finite_tgs.hpp"

namespace gammalab {

namespace {

std::string iso_utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

nlohmann::json config_json(const TrainConfig& cfg) {
  return {{"seed", cfg.seed},
          {"epochs", cfg.epochs},
          {"margin", cfg.margin},
          {"learning_rate", cfg.learning_rate},
          {"prototype_threshold", cfg.threshold()}};
}

nlohmann::json features_json(const std::array<Vec, 4>& features) {
  nlohmann::json out = nlohmann::json::object();
  for (const DomainElement& e : full_domain()) out[e.display_name] = features[e.id];
  return out;
}

nlohmann::json distances_json(const DistanceMatrix& d) {
  nlohmann::json order = nlohmann::json::array();
  for (const DomainElement& e : full_domain()) order.push_back(e.display_name);
  nlohmann::json matrix = nlohmann::json::array();
  for (const auto& row : d) matrix.push_back(row);
  return {{"order", order}, {"matrix", matrix}};
}

// True when the class-level shadow of the table is exactly the unique
// symmetric/idempotent/majority operation on two elements.
bool quotient_is_boolean_majority(const TruthTable& table) {
  if (!table_is_class_consistent(table)) return false;
  const std::array<int, 8> q = class_quotient(table);
  const std::vector<int> expected = enumerate_majority_ternary(2).front();
  for (int p = 0; p < 8; ++p)
    if (q[p] != expected[p]) return false;
  return true;
}

void require_key(const nlohmann::json& j, const char* key) {
  if (!j.contains(key))
    throw ParseError(std::string("report: missing section: ") + key);
}

}  // namespace

nlohmann::json build_run_report(const TrainConfig& cfg, const ReportOptions& opts,
                                const Network& encoder, double final_logic_loss) {
  cfg.validate();
  nlohmann::json report;
  report["schema_version"] = 1;
  const std::string started = opts.with_timestamps ? iso_utc_now() : "";
  report["config"] = config_json(cfg);
  report["final_logic_loss"] = final_logic_loss;

  const Split sp = split();

  std::optional<BaselineResult> baseline;
  if (opts.include_baseline) {
    baseline = train_baseline(cfg);
    const Predictor predict = [&](const DomainElement& e) {
      return baseline_predict(baseline->classifier, e);
    };
    report["table1_baseline"] = {{"train_accuracy", evaluate(predict, sp.train)},
                                 {"test_accuracy", evaluate(predict, sp.test)},
                                 {"final_loss", baseline->final_loss}};
  } else {
    report["table1_baseline"] = {{"skipped", true}};
  }

  const std::array<Vec, 4> features = encode_domain(encoder);
  report["table2_features"] = features_json(features);
  report["table3_distances"] = distances_json(distance_matrix(encoder));

  PrototypeClassifier clf = build_prototype(encoder, cfg.threshold());
  nlohmann::json table4 = nlohmann::json::array();
  for (const DomainElement& e : sp.test) {
    const Vec f = forward(clf.encoder, input_vector(e)).output;
    table4.push_back({{"element", e.display_name},
                      {"distance_to_prototype", distance(f, clf.prototype_a)},
                      {"prediction", class_name(classify(clf, e))},
                      {"ground_truth", class_name(e.class_label)}});
  }
  report["table4_classification"] = table4;

  const ClassCenters centers = class_centers(features);
  const TruthTable table = truth_table(features, centers);
  report["table5_pattern_summary"] = pattern_summary_to_json(pattern_summary(table));

  const Network head = fit_linear_head(encoder, cfg);
  nlohmann::json table6;
  table6["random_guessing"] = 0.5;
  if (baseline) {
    table6["standard_network"] = evaluate(
        [&](const DomainElement& e) { return baseline_predict(baseline->classifier, e); },
        sp.test);
  } else {
    table6["standard_network"] = nullptr;
  }
  table6["logic_encoder_linear_head"] = evaluate(
      [&](const DomainElement& e) { return head_predict(encoder, head, e); }, sp.test);
  table6["logic_encoder_prototype"] =
      evaluate([&](const DomainElement& e) { return classify(clf, e); }, sp.test);
  report["table6_comparison"] = table6;

  report["property_report"] = property_report_to_json(
      check_symmetry(table), check_idempotence(table), check_majority_axiom(table),
      check_class_associativity(table, features, centers));

  const FiniteTgs canonical = canonical_boolean_4();
  const AxiomProfile profile = axiom_profile(canonical);
  report["axiom_profile"] = {
      {"structure", "canonical boolean square (n=4, join addition, majority)"},
      {"profile", axiom_profile_to_json(profile)},
      {"type", structure_type_name(classify_type(profile))},
      {"learned_quotient_is_boolean_majority", quotient_is_boolean_majority(table)}};

  if (opts.with_timestamps)
    report["timestamps"] = {{"started", started}, {"finished", iso_utc_now()}};
  else
    report["timestamps"] = nullptr;

  validate_report(report);
  return report;
}

nlohmann::json build_run_report(const TrainConfig& cfg, const ReportOptions& opts) {
  const TrainResult trained = train_logic(cfg);
  return build_run_report(cfg, opts, trained.encoder, trained.final_loss);
}

void validate_report(const nlohmann::json& report) {
  for (const char* key :
       {"schema_version", "config", "final_logic_loss", "table1_baseline",
        "table2_features", "table3_distances", "table4_classification",
        "table5_pattern_summary", "table6_comparison", "property_report",
        "axiom_profile", "timestamps"})
    require_key(report, key);

  if (report["schema_version"].get<int>() != 1)
    throw ParseError("report: unsupported schema_version");
  for (const char* key : {"seed", "epochs", "margin", "learning_rate",
                          "prototype_threshold"})
    require_key(report["config"], key);

  const auto& t1 = report["table1_baseline"];
  if (!t1.contains("skipped") &&
      !(t1.contains("train_accuracy") && t1.contains("test_accuracy")))
    throw ParseError("report: table1_baseline must hold accuracies or be skipped");

  if (report["table2_features"].size() != 4)
    throw ParseError("report: table2_features must list all four elements");
  for (const DomainElement& e : full_domain()) {
    require_key(report["table2_features"], e.display_name);
    if (report["table2_features"][e.display_name].size() != 8)
      throw ParseError("report: features must be 8-dimensional");
  }

  const auto& t3 = report["table3_distances"];
  require_key(t3, "order");
  require_key(t3, "matrix");
  if (t3["matrix"].size() != 4)
    throw ParseError("report: distance matrix must be 4x4");
  for (const auto& row : t3["matrix"])
    if (row.size() != 4) throw ParseError("report: distance matrix must be 4x4");

  if (!report["table4_classification"].is_array() ||
      report["table4_classification"].size() != 2)
    throw ParseError("report: table4_classification must list both test elements");

  require_key(report["table5_pattern_summary"], "rows");
  if (report["table5_pattern_summary"]["rows"].size() != 8)
    throw ParseError("report: pattern summary must have 8 rows");

  for (const char* key : {"random_guessing", "standard_network",
                          "logic_encoder_linear_head", "logic_encoder_prototype"})
    require_key(report["table6_comparison"], key);

  for (const char* key : {"symmetry", "idempotence", "majority",
                          "representative_independence", "associativity_violations"})
    require_key(report["property_report"], key);

  for (const char* key : {"structure", "profile", "type"})
    require_key(report["axiom_profile"], key);

  if (!report["timestamps"].is_null() && !report["timestamps"].is_object())
    throw ParseError("report: timestamps must be null or an object");
}

void write_json(const nlohmann::json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failed: " + path.string());
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in " + path.string() + ": " + e.what());
  }
  return j;
}

}  // namespace gammalab
