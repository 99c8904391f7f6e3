#include "fracube/report.hpp"

#include <chrono>
#include <iomanip>
#include <sstream>

namespace fracube {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

AnalysisReport analyze(const DigitSet& d, int k_max, const std::optional<GdRequest>& gd, const MemoryBudget& budget) {
  const auto start = std::chrono::steady_clock::now();
  std::optional<GdDimension> gd_dim;
  std::optional<GDVerification> verification;
  if (gd) {
    gd_dim = gd_dimension(gd->graph);
    if (gd->node && gd->cell)
      verification = verify_decomposition(d, gd->graph, *gd->node, *gd->cell, gd->levels, budget);
  }
  auto bounds = bounds_report(d, k_max, gd_dim ? std::optional<double>(gd_dim->value) : std::nullopt, budget);

  std::optional<PrescreenReport> prescreen;
  if (d.dim() == 2 || std::holds_alternative<HasTrivialPoint>(bounds.verdict))
    prescreen = tH_prescreen(d, bounds.verdict);

  AnalysisReport out{d, std::move(bounds), prescreen, gd_dim, std::move(verification), std::nullopt, std::nullopt,
                     k_max, std::nullopt};
  if (gd) {
    out.node = gd->node;
    out.cell = gd->cell;
  }
  out.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

nlohmann::json to_json(const TrivialPointVerdict& verdict) {
  using nlohmann::json;
  json j = {{"kind", verdict_name(verdict)}};
  if (const auto* h = std::get_if<HasTrivialPoint>(&verdict)) {
    j["level"] = h->level;
    j["island_id"] = h->island_id;
  } else if (const auto* c = std::get_if<NoTrivialPoint>(&verdict)) {
    j["certificate"] = c->certificate;
  } else if (const auto* u = std::get_if<Unknown>(&verdict)) {
    j["k_max"] = u->k_max;
  }
  return j;
}

nlohmann::json to_json(const GdDimension& gd) {
  return {{"dimension", gd.value},
          {"interval", {gd.interval.lo, gd.interval.hi}},
          {"rho", {gd.rho.lo, gd.rho.hi}}};
}

nlohmann::json to_json(const GDVerification& v) {
  using nlohmann::json;
  json levels = json::array();
  for (const auto& l : v.levels) {
    json entry = {{"level", l.level},
                  {"equal", l.equal},
                  {"component_cells", l.component_cells},
                  {"path_cells", l.path_cells},
                  {"first_mismatch", nullptr},
                  {"mismatch_side", nullptr}};
    if (l.first_mismatch) {
      entry["first_mismatch"] = *l.first_mismatch;
      entry["mismatch_side"] = l.mismatch_in_component ? "component" : "paths";
    }
    levels.push_back(std::move(entry));
  }
  return {{"levels", levels}, {"all_equal", v.all_equal()}};
}

nlohmann::json to_json(const AnalysisReport& r, bool timings) {
  using nlohmann::json;
  const auto& b = r.bounds;

  json steps = json::array();
  for (const auto& s : b.reduction.steps) {
    json normal = json::array();
    for (const auto& a : s.normal) normal.push_back(to_string(a));
    steps.push_back({{"normal", normal}, {"offset", to_string(s.offset)}, {"dropped_axis", s.dropped_axis}});
  }
  const int rank = b.reduction.singleton ? 0 : b.reduction.reduced.dim();

  json levels = json::array();
  for (const auto& l : b.levels)
    levels.push_back({{"level", l.level},
                      {"occupied", l.occupied},
                      {"components", l.component_count},
                      {"islands", l.island_ids.size()},
                      {"island_cells", l.island_cells}});

  json candidates = json::array();
  for (const auto& [k, v] : b.ic_upper.candidates) candidates.push_back({{"level", k}, {"value", v}});

  json first_island = nullptr;
  if (const auto* h = std::get_if<HasTrivialPoint>(&b.verdict)) first_island = h->level;

  json j = {
      {"schema", kReportSchema},
      {"input", {{"n", r.input.base()}, {"d", r.input.dim()}, {"N", r.input.size()}, {"digits", r.input.digits()}}},
      {"reduction",
       {{"steps", steps},
        {"rank", rank},
        {"reduced_dim", b.reduction.reduced.dim()},
        {"reduced_digits", b.reduction.reduced.digits()},
        {"singleton", b.reduction.singleton}}},
      {"dim_H", {{"value", b.dim_H.value}, {"N", b.dim_H.count}, {"n", b.dim_H.base}}},
      {"k_max", r.k_max},
      {"levels", levels},
      {"verdict", to_json(b.verdict)},
      {"first_island_level", first_island},
      {"ic_upper",
       {{"value", b.ic_upper.value},
        {"level", b.ic_upper.level ? json(*b.ic_upper.level) : json(nullptr)},
        {"removed_cells", b.ic_upper.removed_cells},
        {"candidates", candidates}}},
      {"ic_exact", b.ic_exact ? json(*b.ic_exact) : json(nullptr)},
      {"tH_upper", b.tH_upper},
      {"strict_drop", b.strict_drop},
      {"prescreen", nullptr},
      {"gd", nullptr},
  };
  if (r.prescreen) {
    j["prescreen"] = {{"outcome", to_string(r.prescreen->outcome)},
                      {"form", r.prescreen->form ? json(to_string(*r.prescreen->form)) : json(nullptr)},
                      {"reason", r.prescreen->reason}};
  }
  if (r.gd) {
    json gd = to_json(*r.gd);
    gd["verification"] = nullptr;
    if (r.verification) {
      gd["verification"] = to_json(*r.verification);
      gd["verification"]["node"] = *r.node;
      gd["verification"]["cell"] = *r.cell;
    }
    j["gd"] = std::move(gd);
  }
  if (timings && r.elapsed_ms) j["timings"] = {{"total_ms", *r.elapsed_ms}};
  return j;
}

std::string human_summary(const AnalysisReport& r) {
  const auto& b = r.bounds;
  std::ostringstream out;
  out << std::setprecision(10);
  out << "fractal cube n=" << r.input.base() << " d=" << r.input.dim() << " N=" << r.input.size() << "\n";
  if (!b.reduction.steps.empty())
    out << "affine reduction: " << b.reduction.steps.size() << " step(s) to d=" << b.reduction.reduced.dim()
        << (b.reduction.singleton ? " (single point)" : "") << "\n";
  out << "dim_H        = log " << b.dim_H.count << " / log " << b.dim_H.base << " = " << b.dim_H.value << "\n";
  for (const auto& l : b.levels)
    out << "level " << l.level << ": " << l.component_count << " component(s), " << l.island_ids.size()
        << " island(s)\n";

  out << "verdict      = " << verdict_name(b.verdict);
  if (const auto* h = std::get_if<HasTrivialPoint>(&b.verdict)) out << " (first island at level " << h->level << ")";
  if (const auto* c = std::get_if<NoTrivialPoint>(&b.verdict)) out << " (" << c->certificate << ")";
  if (const auto* u = std::get_if<Unknown>(&b.verdict)) out << " (no island up to level " << u->k_max << ")";
  out << "\n";

  out << "I_c upper    = " << b.ic_upper.value;
  if (b.ic_upper.level)
    out << " (level " << *b.ic_upper.level << ", " << b.ic_upper.removed_cells << " island cells removed)";
  out << "\n";
  if (b.ic_exact) out << "I_c exact    = " << *b.ic_exact << "\n";
  out << "dim_tH upper = " << b.tH_upper << "\n";
  out << "strict drop  = " << (b.strict_drop ? "yes" : "no") << "\n";
  if (r.prescreen) {
    out << "dim_tH = dim_H screen: " << to_string(r.prescreen->outcome);
    if (r.prescreen->form) out << " (" << to_string(*r.prescreen->form) << ")";
    out << "\n";
  }
  if (r.gd) {
    out << "graph-directed dimension = " << r.gd->value << " in [" << r.gd->interval.lo << ", " << r.gd->interval.hi
        << "]\n";
  }
  if (r.verification) {
    for (const auto& l : r.verification->levels)
      out << "verify level " << l.level << ": " << (l.equal ? "equal" : "MISMATCH") << " (" << l.component_cells
          << " component cells, " << l.path_cells << " path cells)\n";
  }
  return out.str();
}

}  // namespace fracube
