#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "typeident/model_io.hpp"
#include "typeident/verdict.hpp"

namespace typeident {

struct ReportOptions {
  bool verbose = false;
  bool timing = false;
  // "generic", "global", or "all": which type-state analyses to run.
  std::string sections = "all";
  std::uint64_t seed = 42;
};

// JSON is the canonical machine-readable form; text carries the same
// verdicts for humans.
struct ReportBundle {
  nlohmann::ordered_json json;
  std::string text;
};

ReportBundle analyze_report(const ModelFile& mf, const std::string& display_name,
                            const ReportOptions& opts);

ReportBundle recover_report(const ModelFile& mf, const ObservedShares& shares,
                            const std::string& display_name, const ReportOptions& opts);

ReportBundle montecarlo_report(const ModelFile& mf, int samples, std::uint64_t seed,
                               const std::string& display_name, const ReportOptions& opts);

}  // namespace typeident
