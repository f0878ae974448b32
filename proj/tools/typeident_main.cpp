// typeident: identifiability analysis for latent-type models of aggregate
// choice. Subcommands: analyze, recover, montecarlo, fixtures.
//
// Exit codes: 0 verdict produced, 2 validation/malformed input,
// 3 enumeration cap exceeded, 4 shares inconsistent with the model.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "typeident/config.hpp"
#include "typeident/errors.hpp"
#include "typeident/report.hpp"

namespace fs = std::filesystem;
using namespace typeident;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitCap = 3;
constexpr int kExitInconsistent = 4;

void emit(const ReportBundle& bundle, const std::string& format) {
  if (format == "json") {
    std::cout << bundle.json.dump(2) << "\n";
  } else {
    std::cout << bundle.text;
  }
}

ModelFile load_validated(const std::string& path) {
  ModelFile mf = load_model_file(path);
  const ValidationReport report = validate_model_file(mf);
  if (!report.ok()) {
    std::string what = "invalid model '" + path + "':";
    for (const auto& v : report.violations) what += "\n  - " + v;
    throw ValidationError(what);
  }
  return mf;
}

std::string display_name(const std::string& path) {
  return fs::path(path).filename().string();
}

int run_analyze(const std::string& path, const ReportOptions& opts, const std::string& format) {
  const ModelFile mf = load_validated(path);
  emit(analyze_report(mf, display_name(path), opts), format);
  return kExitOk;
}

int run_recover(const std::string& path, const std::string& shares_path,
                const ReportOptions& opts, const std::string& format) {
  const ModelFile mf = load_validated(path);
  const ObservedShares shares = load_shares_file(shares_path);
  const ValidationReport report = validate(shares);
  if (!report.ok()) {
    std::string what = "invalid shares '" + shares_path + "':";
    for (const auto& v : report.violations) what += "\n  - " + v;
    throw ValidationError(what);
  }
  emit(recover_report(mf, shares, display_name(path), opts), format);
  return kExitOk;
}

int run_montecarlo(const std::string& path, int samples, std::uint64_t seed,
                   const ReportOptions& opts, const std::string& format) {
  const ModelFile mf = load_validated(path);
  emit(montecarlo_report(mf, samples, seed, display_name(path), opts), format);
  return kExitOk;
}

std::vector<fs::path> fixture_files(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

int run_fixtures_list(const std::string& dir) {
  for (const auto& path : fixture_files(dir)) {
    std::cout << path.filename().string() << "\n";
  }
  return kExitOk;
}

// Regenerates the golden JSON reports; guarded behind --bless so committed
// goldens cannot change by accident.
int run_fixtures_bless(const std::string& dir) {
  const fs::path golden_dir = fs::path(dir) / "golden";
  fs::create_directories(golden_dir);
  for (const auto& path : fixture_files(dir)) {
    const ModelFile mf = load_validated(path.string());
    ReportOptions opts;
    const ReportBundle bundle = analyze_report(mf, path.filename().string(), opts);
    std::ofstream out(golden_dir / path.filename());
    out << bundle.json.dump(2) << "\n";
    std::cout << "blessed " << (golden_dir / path.filename()).string() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"identifiability analysis for latent-type aggregate choice models"};
  app.require_subcommand(1);

  std::string path, format = "text", shares_path, fixtures_dir = "fixtures";
  ReportOptions opts;
  int samples = 1000;
  std::uint64_t seed = config::kDefaultSeed;
  bool bless = false;

  auto* analyze = app.add_subcommand("analyze", "classify identifiability of a model file");
  analyze->add_option("path", path, "model JSON file")->required();
  analyze->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));
  bool only_global = false, only_generic = false, all_sections = false;
  analyze->add_flag("--global", only_global, "only the global-identifiability analyses");
  analyze->add_flag("--generic", only_generic, "only the generic-identifiability analyses");
  analyze->add_flag("--all", all_sections, "all analyses (default)");
  analyze->add_flag("--verbose", opts.verbose, "list every qualifying row subset");
  analyze->add_flag("--timing", opts.timing, "include timing in the report");
  analyze->add_option("--seed", opts.seed, "seed for sampled subroutines");

  auto* recover = app.add_subcommand("recover", "solve p = M*pi for the type distribution");
  recover->add_option("path", path, "model JSON file with values or weights")->required();
  recover->add_option("--shares", shares_path, "observed shares JSON file")->required();
  recover->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

  auto* montecarlo = app.add_subcommand("montecarlo", "sampled full-rank fraction of a model");
  montecarlo->add_option("path", path, "model JSON file")->required();
  montecarlo->add_option("--samples", samples, "number of samples")->check(CLI::PositiveNumber);
  montecarlo->add_option("--seed", seed, "RNG seed");
  montecarlo->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

  auto* fixtures = app.add_subcommand("fixtures", "list or regenerate the shipped fixtures");
  fixtures->add_subcommand("list", "list fixture files");
  fixtures->add_option("--dir", fixtures_dir, "fixtures directory");
  fixtures->add_flag("--bless", bless, "regenerate the golden reports");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) {
      if (only_global && !only_generic) opts.sections = "global";
      if (only_generic && !only_global) opts.sections = "generic";
      if (all_sections) opts.sections = "all";
      return run_analyze(path, opts, format);
    }
    if (recover->parsed()) return run_recover(path, shares_path, opts, format);
    if (montecarlo->parsed()) return run_montecarlo(path, samples, seed, opts, format);
    if (fixtures->parsed()) {
      if (bless) return run_fixtures_bless(fixtures_dir);
      return run_fixtures_list(fixtures_dir);
    }
  } catch (const CapExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const InconsistentDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInconsistent;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
