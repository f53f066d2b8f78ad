#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pncalc/model.hpp"

namespace {

/// Strict unsigned parse of the PNCALC_SEED environment variable.
std::uint64_t parse_seed_env(const char* text) {
  std::string s(text);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw pncalc::InvariantError(
        "PNCALC_SEED must be an unsigned integer, got '" + s + "'");
  return value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pncalc: exact verification of Poisson-Nijenhuis data on "
               "charts, Lie algebras, polynomial groups and groupoids"};
  app.set_version_flag("--version", std::string(pncalc::kVersion));
  app.require_subcommand(1);

  auto* check = app.add_subcommand(
      "check", "verify a model file and report per-check verdicts");
  std::string model_path;
  std::string report_path;
  std::string format = "text";
  std::optional<std::uint64_t> seed_flag;
  std::optional<int> samples_flag;
  bool skip_oracle = false;
  check->add_option("--model", model_path, "model JSON file")->required();
  check->add_option("--report", report_path,
                    "write the canonical JSON report to this file");
  check->add_option("--format", format, "stdout format (default text)")
      ->check(CLI::IsMember({"json", "text"}));
  check->add_option("--seed", seed_flag,
                    "sampling seed (overrides the model file and PNCALC_SEED)");
  check->add_option("--oracle-samples", samples_flag,
                    "sample count for the oracle cross-checks");
  check->add_flag("--skip-oracle", skip_oracle,
                  "symbolic verdicts only, no numeric cross-checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints help/version or the usage error
    return code == 0 ? 0 : 2;
  }

  try {
    pncalc::ModelFile model = pncalc::load_model(model_path);
    pncalc::SamplePlan plan;
    model.plan.apply(plan);
    if (const char* env = std::getenv("PNCALC_SEED"))
      plan.seed = parse_seed_env(env);
    if (seed_flag) plan.seed = *seed_flag;
    if (samples_flag) plan.count = *samples_flag;
    plan.validate();

    pncalc::Report report = pncalc::run_checks(model, plan, !skip_oracle);
    if (!report_path.empty()) pncalc::save_report(report, report_path);
    std::cout << pncalc::emit_report(report, format == "json"
                                                 ? pncalc::ReportFormat::Json
                                                 : pncalc::ReportFormat::Text);
    return report.overall() ? 0 : 1;
  } catch (const pncalc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
