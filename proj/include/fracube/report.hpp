#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "fracube/bounds.hpp"
#include "fracube/gd.hpp"
#include "fracube/structure.hpp"

namespace fracube {

inline constexpr const char* kReportSchema = "fracube-report/1";

struct GdRequest {
  MWGraph graph;
  /// Verification is run when `node` and `cell` are both set.
  std::optional<std::string> node;
  std::optional<Digit> cell;
  int levels = 3;
};

struct AnalysisReport {
  DigitSet input;
  BoundsReport bounds;
  std::optional<PrescreenReport> prescreen;
  std::optional<GdDimension> gd;
  std::optional<GDVerification> verification;
  std::optional<std::string> node;
  std::optional<Digit> cell;
  int k_max = 0;
  std::optional<double> elapsed_ms;
};

/// Full analysis pipeline behind `fracube analyze`.
AnalysisReport analyze(const DigitSet& d, int k_max, const std::optional<GdRequest>& gd = std::nullopt,
                       const MemoryBudget& budget = MemoryBudget::from_env());

/// `fracube-report/1` JSON; `timings` controls the "timings" member.
nlohmann::json to_json(const AnalysisReport& report, bool timings);

std::string human_summary(const AnalysisReport& report);

nlohmann::json to_json(const TrivialPointVerdict& verdict);
nlohmann::json to_json(const GdDimension& gd);
nlohmann::json to_json(const GDVerification& v);

/// "p" or "p/q".
std::string to_string(const Rational& r);

}  // namespace fracube
