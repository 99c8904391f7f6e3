#include "fracube/survey.hpp"

#include <exception>
#include <istream>
#include <limits>
#include <ostream>
#include <set>

#include <omp.h>

#include "fracube/error.hpp"
#include "fracube/report.hpp"
#include "fracube/structure.hpp"

namespace fracube {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(r);
}

nlohmann::json survey_record(const DigitSet& d, const BoundsReport& b, bool representative, int class_size) {
  using nlohmann::json;
  json first_island = nullptr;
  if (const auto* h = std::get_if<HasTrivialPoint>(&b.verdict)) first_island = h->level;
  json prescreen = nullptr;
  if (d.dim() == 2 || std::holds_alternative<HasTrivialPoint>(b.verdict)) {
    const auto p = tH_prescreen(d, b.verdict);
    prescreen = {{"outcome", to_string(p.outcome)}, {"form", p.form ? json(to_string(*p.form)) : json(nullptr)}};
  }
  return {{"key", serialize(d)},
          {"n", d.base()},
          {"d", d.dim()},
          {"N", d.size()},
          {"digits", d.digits()},
          {"rank", b.reduction.singleton ? 0 : b.reduction.reduced.dim()},
          {"dim_H", b.dim_H.value},
          {"verdict", to_json(b.verdict)},
          {"first_island_level", first_island},
          {"ic_upper", b.ic_upper.value},
          {"tH_upper", b.tH_upper},
          {"strict_drop", b.strict_drop},
          {"prescreen", prescreen},
          {"representative", representative},
          {"class_size", class_size}};
}

namespace {

// Next k-combination of {0..n-1} in lexicographic order; false after the last.
bool next_combination(std::vector<std::uint64_t>& c, std::uint64_t n) {
  const auto k = c.size();
  std::size_t i = k;
  while (i > 0 && c[i - 1] == n - k + i - 1) --i;
  if (i == 0) return false;
  ++c[i - 1];
  for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

}  // namespace

SurveySummary run_survey(const SurveyOptions& options, std::ostream& out, const std::set<std::string>& skip,
                         const MemoryBudget& budget) {
  const auto [side, cell_total] = grid_extent(options.base, options.dim, 1);
  if (options.cells < 1 || static_cast<std::uint64_t>(options.cells) > cell_total)
    throw DomainError("--cells must be between 1 and n^d = " + std::to_string(cell_total));
  SurveySummary summary;
  summary.candidates = binomial(cell_total, static_cast<std::uint64_t>(options.cells));
  if (summary.candidates > options.cap)
    throw CapExceeded("survey would enumerate " + std::to_string(summary.candidates) + " digit sets, cap is " +
                      std::to_string(options.cap));
  const bool symmetric = options.mod_symmetry && options.dim == 2;

  // Level-1 cells in lexicographic order of their coordinate vectors.
  std::vector<Digit> cells(cell_total, Digit(options.dim));
  for (std::uint64_t i = 0; i < cell_total; ++i) {
    auto rest = i;
    for (int a = options.dim - 1; a >= 0; --a) {
      cells[i][a] = static_cast<int>(rest % side);
      rest /= side;
    }
  }

  std::vector<std::uint64_t> combo(options.cells);
  for (int i = 0; i < options.cells; ++i) combo[i] = static_cast<std::uint64_t>(i);
  bool more = true;
  constexpr std::size_t kBatch = 256;
  const int jobs = options.jobs > 0 ? options.jobs : omp_get_max_threads();

  while (more) {
    struct Item {
      DigitSet set;
      bool representative;
      int class_size;
    };
    std::vector<Item> batch;
    while (more && batch.size() < kBatch) {
      std::vector<Digit> digits;
      for (auto c : combo) digits.push_back(cells[c]);
      auto d = DigitSet::make(options.base, options.dim, std::move(digits));
      more = next_combination(combo, cell_total);

      bool representative = true;
      int class_size = 1;
      if (options.dim == 2) {
        auto images = dihedral_images(d);
        std::set<std::vector<Digit>> distinct;
        for (const auto& img : images) distinct.insert(img.digits());
        class_size = static_cast<int>(distinct.size());
        representative = d.digits() == *distinct.begin();
      }
      if (symmetric && !representative) continue;
      if (skip.contains(serialize(d))) {
        ++summary.skipped;
        continue;
      }
      batch.push_back({std::move(d), representative, class_size});
    }

    std::vector<std::string> lines(batch.size());
    std::vector<std::string> verdicts(batch.size());
    std::exception_ptr failure;
    std::size_t failed_at = batch.size();
    const auto count = static_cast<std::int64_t>(batch.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
    for (std::int64_t i = 0; i < count; ++i) {
      try {
        const auto& item = batch[i];
        const auto report = bounds_report(item.set, options.k_max, std::nullopt, budget);
        lines[i] = survey_record(item.set, report, item.representative, item.class_size).dump();
        verdicts[i] = verdict_name(report.verdict);
      } catch (...) {
#pragma omp critical(fracube_survey_failure)
        if (static_cast<std::size_t>(i) < failed_at) {
          failed_at = static_cast<std::size_t>(i);
          failure = std::current_exception();
        }
      }
    }

    // Records before the first failure are still written, in order.
    for (std::size_t i = 0; i < failed_at; ++i) {
      out << lines[i] << '\n';
      ++summary.emitted;
      ++summary.by_verdict[verdicts[i]];
    }
    out.flush();
    if (failure) std::rethrow_exception(failure);
  }
  return summary;
}

std::set<std::string> read_survey_keys(std::istream& in) {
  std::set<std::string> keys;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("key")) continue;
    keys.insert(j["key"].get<std::string>());
  }
  return keys;
}

nlohmann::json to_json(const SurveySummary& s) {
  return {{"candidates", s.candidates}, {"emitted", s.emitted}, {"skipped", s.skipped}, {"by_verdict", s.by_verdict}};
}

}  // namespace fracube
