// gammalab: trains the two-attribute XOR task with a margin-based logic
// loss, extracts the induced ternary majority operation from the learned
// feature space, and verifies its algebraic properties against explicit
// finite-structure tables.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "gammalab/errors.hpp"
#include "gammalab/extract.hpp"
#include "gammalab/finite_tgs.hpp"
#include "gammalab/nn.hpp"
#include "gammalab/report.hpp"
#include "gammalab/task.hpp"
#include "gammalab/train.hpp"

#include "CLI11.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Default output directory: $GAMMALAB_OUT_DIR if set, else the cwd.
fs::path out_dir() {
  if (const char* env = std::getenv("GAMMALAB_OUT_DIR")) return fs::path(env);
  return fs::current_path();
}

fs::path resolve(const std::string& given, const char* fallback) {
  return given.empty() ? out_dir() / fallback : fs::path(given);
}

struct CommonFlags {
  std::uint64_t seed = 0;
  int epochs = 1000;
  double margin = 2.0;
  double learning_rate = 1e-2;
  double threshold = 0.0;  // 0 -> margin/2

  gammalab::TrainConfig to_config() const {
    gammalab::TrainConfig cfg;
    cfg.seed = seed;
    cfg.epochs = epochs;
    cfg.margin = margin;
    cfg.learning_rate = learning_rate;
    cfg.prototype_threshold = threshold;
    return cfg;
  }
};

void add_train_flags(CLI::App* cmd, CommonFlags& f, bool with_margin) {
  cmd->add_option("--seed", f.seed, "Seed for all randomness (SplitMix64 stream)")
      ->capture_default_str();
  cmd->add_option("--epochs", f.epochs, "Training epochs")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--lr", f.learning_rate, "Learning rate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  if (with_margin) {
    cmd->add_option("--margin", f.margin, "Separation margin of the logic loss")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--threshold", f.threshold,
                    "Prototype decision threshold (default margin/2)")
        ->check(CLI::PositiveNumber);
  }
}

int run_train(const CommonFlags& flags, const std::string& out,
              const std::string& report_path, bool timestamps) {
  const gammalab::TrainConfig cfg = flags.to_config();
  const gammalab::TrainResult trained = gammalab::train_logic(cfg);
  const fs::path encoder_file = resolve(out, "encoder.json");
  gammalab::save_network(trained.encoder, encoder_file);

  gammalab::ReportOptions opts;
  opts.include_baseline = false;
  opts.with_timestamps = timestamps;
  const json report =
      gammalab::build_run_report(cfg, opts, trained.encoder, trained.final_loss);
  const fs::path report_file = resolve(report_path, "train_report.json");
  gammalab::write_json(report, report_file);

  std::cout << "final logic loss: " << trained.final_loss << "\n"
            << "prototype test accuracy: "
            << report["table6_comparison"]["logic_encoder_prototype"].get<double>()
            << "\n"
            << "encoder: " << encoder_file.string() << "\n"
            << "report: " << report_file.string() << "\n";
  return 0;
}

int run_baseline(const CommonFlags& flags, const std::string& report_path) {
  const gammalab::TrainConfig cfg = flags.to_config();
  const gammalab::BaselineResult result = gammalab::train_baseline(cfg);
  const gammalab::Split sp = gammalab::split();
  const gammalab::Predictor predict = [&](const gammalab::DomainElement& e) {
    return gammalab::baseline_predict(result.classifier, e);
  };
  const double train_acc = gammalab::evaluate(predict, sp.train);
  const double test_acc = gammalab::evaluate(predict, sp.test);

  const json report = {{"schema_version", 1},
                       {"config",
                        {{"seed", cfg.seed},
                         {"epochs", cfg.epochs},
                         {"learning_rate", cfg.learning_rate}}},
                       {"table1_baseline",
                        {{"train_accuracy", train_acc},
                         {"test_accuracy", test_acc},
                         {"final_loss", result.final_loss}}}};
  const fs::path report_file = resolve(report_path, "baseline_report.json");
  gammalab::write_json(report, report_file);

  std::cout << "baseline train accuracy: " << train_acc << "\n"
            << "baseline test accuracy: " << test_acc << "\n"
            << "report: " << report_file.string() << "\n";
  return 0;
}

int run_extract(const std::string& encoder_path, const std::string& csv_out,
                const std::string& json_out) {
  const gammalab::Network encoder = gammalab::load_network(encoder_path);
  const gammalab::TruthTable table = gammalab::truth_table(encoder);

  const fs::path csv_file = resolve(csv_out, "truth_table.csv");
  gammalab::export_table(table, csv_file);
  const fs::path json_file = resolve(json_out, "pattern_summary.json");
  gammalab::write_json(gammalab::pattern_summary_to_json(gammalab::pattern_summary(table)),
                       json_file);

  std::cout << "truth table: " << csv_file.string() << "\n"
            << "pattern summary: " << json_file.string() << "\n";
  return 0;
}

int run_verify(const std::string& encoder_path, const std::string& table_path,
               const std::string& json_out) {
  if (encoder_path.empty() == table_path.empty())
    throw gammalab::UsageError("verify: pass exactly one of --encoder or --table");

  gammalab::TruthTable table;
  gammalab::ClassAssociativityReport assoc;
  if (!encoder_path.empty()) {
    const gammalab::Network encoder = gammalab::load_network(encoder_path);
    const auto features = gammalab::encode_domain(encoder);
    const auto centers = gammalab::class_centers(features);
    table = gammalab::truth_table(features, centers);
    assoc = gammalab::check_class_associativity(table, features, centers);
  } else {
    table = gammalab::import_table(table_path);
    assoc = gammalab::check_class_associativity(table);
  }

  const auto sym = gammalab::check_symmetry(table);
  const auto idem = gammalab::check_idempotence(table);
  const auto maj = gammalab::check_majority_axiom(table);

  const json report = gammalab::property_report_to_json(sym, idem, maj, assoc);
  const fs::path json_file = resolve(json_out, "property_report.json");
  gammalab::write_json(report, json_file);

  const auto verdict = [](bool ok) { return ok ? "holds" : "VIOLATED"; };
  std::cout << "symmetry: " << verdict(sym.holds) << " (" << sym.checked << " checks)\n"
            << "idempotence: " << verdict(idem.holds) << " (" << idem.checked
            << " checks)\n"
            << "majority axiom: " << verdict(maj.holds) << " (" << maj.checked
            << " checks)\n"
            << "representative independence: "
            << verdict(assoc.representative_independent) << "\n"
            << "class-level associativity violations: "
            << assoc.associativity_violations << " of " << assoc.quintuples_checked
            << " (informational)\n"
            << "report: " << json_file.string() << "\n";
  if (!(sym.holds && idem.holds && maj.holds)) {
    if (!sym.violations.empty()) {
      const auto& v = sym.violations.front();
      std::cout << "first symmetry witness: (" << v.triple[0] << "," << v.triple[1]
                << "," << v.triple[2] << ") vs (" << v.permuted[0] << ","
                << v.permuted[1] << "," << v.permuted[2] << ")\n";
    }
    return 1;
  }
  return 0;
}

int run_tgs_check(const std::string& structure_path, const std::string& json_out) {
  const gammalab::FiniteTgs s = gammalab::load_structure(structure_path);
  const gammalab::AxiomProfile profile = gammalab::axiom_profile(s);
  const json out = {{"schema_version", 1},
                    {"n", s.n},
                    {"gamma_count", s.gamma_count()},
                    {"profile", gammalab::axiom_profile_to_json(profile)},
                    {"type",
                     gammalab::structure_type_name(gammalab::classify_type(profile))}};
  if (!json_out.empty()) gammalab::write_json(out, json_out);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_tgs_enumerate(int n, const std::string& json_out) {
  const auto tables = gammalab::enumerate_majority_ternary(n);
  std::cout << "candidates for n=" << n << ": " << tables.size() << "\n";
  if (!json_out.empty()) {
    gammalab::write_json(
        json{{"schema_version", 1}, {"n", n}, {"count", tables.size()}, {"tables", tables}},
        json_out);
    std::cout << "written: " << json_out << "\n";
  }
  return 0;
}

int run_tgs_uniqueness(const std::string& json_out) {
  const gammalab::UniquenessReport report = gammalab::uniqueness_report();
  const fs::path json_file = resolve(json_out, "uniqueness_report.json");
  gammalab::write_json(gammalab::uniqueness_report_to_json(report), json_file);
  for (const auto& f : report.filters)
    std::cout << f.name << ": " << f.survivors << " survivors, " << f.iso_classes
              << " isomorphism classes, canonical "
              << (f.canonical_present ? "present" : "absent") << "\n";
  std::cout << "report: " << json_file.string() << "\n";
  return 0;
}

int run_tgs_canonical(const std::string& json_out) {
  const fs::path json_file = resolve(json_out, "canonical_boolean_4.json");
  gammalab::save_structure(gammalab::canonical_boolean_4(), json_file);
  std::cout << "written: " << json_file.string() << "\n";
  return 0;
}

int run_report(const CommonFlags& flags, bool skip_baseline, bool timestamps,
               const std::string& out) {
  const gammalab::TrainConfig cfg = flags.to_config();
  gammalab::ReportOptions opts;
  opts.include_baseline = !skip_baseline;
  opts.with_timestamps = timestamps;
  const json report = gammalab::build_run_report(cfg, opts);
  const fs::path report_file = resolve(out, "run_report.json");
  gammalab::write_json(report, report_file);

  std::cout << "prototype test accuracy: "
            << report["table6_comparison"]["logic_encoder_prototype"].get<double>()
            << "\n";
  if (!skip_baseline)
    std::cout << "baseline test accuracy: "
              << report["table1_baseline"]["test_accuracy"].get<double>() << "\n";
  std::cout << "report: " << report_file.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Logic-constrained XOR experiment with ternary majority-structure "
      "extraction and finite-algebra verification"};
  app.require_subcommand(1);

  CommonFlags train_flags;
  std::string train_out, train_report;
  bool train_timestamps = false;
  CLI::App* train = app.add_subcommand(
      "train", "Two-stage training: logic loss, then prototype classifier");
  add_train_flags(train, train_flags, true);
  train->add_option("--out", train_out, "Encoder JSON path (default encoder.json)");
  train->add_option("--report", train_report,
                    "Report JSON path (default train_report.json)");
  train->add_flag("--timestamps", train_timestamps,
                  "Include wall-clock timestamps (breaks byte-identical re-runs)");

  CommonFlags baseline_flags;
  std::string baseline_report;
  CLI::App* baseline =
      app.add_subcommand("baseline", "Supervised baseline trained on class A only");
  add_train_flags(baseline, baseline_flags, false);
  baseline->add_option("--report", baseline_report,
                       "Report JSON path (default baseline_report.json)");

  std::string extract_encoder, extract_csv, extract_json;
  CLI::App* extract =
      app.add_subcommand("extract", "Enumerate the 64-entry induced truth table");
  extract->add_option("--encoder", extract_encoder, "Trained encoder JSON")->required();
  extract->add_option("--csv", extract_csv, "Truth table CSV path");
  extract->add_option("--json", extract_json, "Pattern summary JSON path");

  std::string verify_encoder, verify_table, verify_json;
  CLI::App* verify = app.add_subcommand(
      "verify", "Check symmetry, idempotence, majority and associativity");
  verify->add_option("--encoder", verify_encoder, "Trained encoder JSON");
  verify->add_option("--table", verify_table, "Truth table CSV to verify instead");
  verify->add_option("--json", verify_json, "Property report JSON path");

  CLI::App* tgs = app.add_subcommand("tgs", "Finite ternary-structure tools");
  tgs->require_subcommand(1);

  std::string check_structure, check_json;
  CLI::App* tgs_check = tgs->add_subcommand("check", "Axiom profile of a structure");
  tgs_check->add_option("structure", check_structure, "Structure JSON file")->required();
  tgs_check->add_option("--json", check_json, "Also write the profile JSON here");

  int enum_n = 4;
  std::string enum_json;
  CLI::App* tgs_enum = tgs->add_subcommand(
      "enumerate", "All symmetric idempotent majority ternary tables");
  tgs_enum->add_option("--n", enum_n, "Carrier size")
      ->check(CLI::Range(1, 4))
      ->capture_default_str();
  tgs_enum->add_option("--out", enum_json, "Write tables JSON here");

  std::string uniq_json;
  CLI::App* tgs_uniq = tgs->add_subcommand(
      "uniqueness", "Isomorphism-class census of the n=4 majority candidates");
  tgs_uniq->add_option("--out", uniq_json, "Report JSON path");

  std::string canonical_json;
  CLI::App* tgs_canonical = tgs->add_subcommand(
      "canonical", "Emit the canonical boolean-square structure JSON");
  tgs_canonical->add_option("--out", canonical_json, "Structure JSON path");

  CommonFlags report_flags;
  bool skip_baseline = false, report_timestamps = false;
  std::string report_out;
  CLI::App* report =
      app.add_subcommand("report", "End-to-end run report covering all tables");
  add_train_flags(report, report_flags, true);
  report->add_flag("--skip-baseline", skip_baseline, "Skip the supervised baseline");
  report->add_flag("--timestamps", report_timestamps,
                   "Include wall-clock timestamps (breaks byte-identical re-runs)");
  report->add_option("--out", report_out, "Report JSON path (default run_report.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage errors are exit code 2
  }

  try {
    if (*train) return run_train(train_flags, train_out, train_report, train_timestamps);
    if (*baseline) return run_baseline(baseline_flags, baseline_report);
    if (*extract) return run_extract(extract_encoder, extract_csv, extract_json);
    if (*verify) return run_verify(verify_encoder, verify_table, verify_json);
    if (*tgs_check) return run_tgs_check(check_structure, check_json);
    if (*tgs_enum) return run_tgs_enumerate(enum_n, enum_json);
    if (*tgs_uniq) return run_tgs_uniqueness(uniq_json);
    if (*tgs_canonical) return run_tgs_canonical(canonical_json);
    if (*report)
      return run_report(report_flags, skip_baseline, report_timestamps, report_out);
    throw gammalab::UsageError("no subcommand selected");
  } catch (const gammalab::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const gammalab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
