#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "fracube/bounds.hpp"

namespace fracube {

struct SurveyOptions {
  int base = 2;
  int dim = 2;
  int cells = 1;
  int k_max = 4;
  /// Emit one representative per dihedral class (d = 2 only).
  bool mod_symmetry = false;
  std::uint64_t cap = 10'000'000;  // candidate sets before symmetry reduction
  int jobs = 0;                    // 0: OpenMP default
};

/// The enumeration would exceed SurveyOptions::cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SurveySummary {
  std::uint64_t candidates = 0;  // binomial(n^d, cells)
  std::uint64_t emitted = 0;
  std::uint64_t skipped = 0;     // already present (resume)
  std::map<std::string, std::uint64_t> by_verdict;
};

/// binomial(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// One JSONL record: the report subset plus the dihedral class flags.
nlohmann::json survey_record(const DigitSet& d, const BoundsReport& bounds, bool representative,
                             int class_size);

/// Enumerates all digit sets of the given shape in lexicographic order of
/// their canonical digit lists, analyzes them on a worker pool, and writes
/// records to `out` in that order. Keys in `skip` (canonical serializations)
/// are not re-analyzed.
SurveySummary run_survey(const SurveyOptions& options, std::ostream& out, const std::set<std::string>& skip = {},
                         const MemoryBudget& budget = MemoryBudget::from_env());

/// The "key" fields of an existing JSONL stream; a truncated last line is ignored.
std::set<std::string> read_survey_keys(std::istream& in);

nlohmann::json to_json(const SurveySummary& s);

}  // namespace fracube
