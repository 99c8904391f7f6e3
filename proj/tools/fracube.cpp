// fracube: trivial points, connectedness-index bounds, and graph-directed
// dimensions of fractal cubes.
//
// Exit codes: 0 success, 1 usage or domain error, 2 parse error, 3 memory
// budget exceeded, 4 survey cap exceeded, 5 graph-directed verification
// mismatch.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "fracube/error.hpp"
#include "fracube/report.hpp"
#include "fracube/survey.hpp"

namespace {

using namespace fracube;

constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;
constexpr int kExitCap = 4;
constexpr int kExitMismatch = 5;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

DigitSet load_digitset(const std::string& path) {
  try {
    return parse_digitset(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

MWGraph load_graph(const std::string& path) {
  try {
    return parse_graph_json(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Digit parse_cell(const std::string& text) {
  Digit cell;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      cell.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw DomainError("--cell expects comma-separated integers, got '" + text + "'");
    }
  }
  return cell;
}

Slice parse_slice(const std::string& text) {
  Slice slice;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto eq = part.find('=');
    try {
      if (eq == std::string::npos) throw std::invalid_argument(part);
      slice[std::stoi(part.substr(0, eq))] = std::stoull(part.substr(eq + 1));
    } catch (const std::exception&) {
      throw DomainError("--slice expects axis=value pairs, got '" + text + "'");
    }
  }
  return slice;
}

MemoryBudget budget_from(std::uint64_t max_bytes) {
  auto budget = MemoryBudget::from_env();
  if (max_bytes > 0) budget.max_bytes = max_bytes;
  return budget;
}

void print_verification_mismatches(const GDVerification& v) {
  for (const auto& l : v.levels) {
    if (l.equal) continue;
    std::cerr << "level " << l.level << ": component has " << l.component_cells << " cells, paths reach "
              << l.path_cells << "; first differing cell (";
    for (std::size_t i = 0; i < l.first_mismatch->size(); ++i) std::cerr << (i ? "," : "") << (*l.first_mismatch)[i];
    std::cerr << ") is only in the " << (l.mismatch_in_component ? "component" : "path cells") << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractal cube analysis: trivial points, connectedness index bounds, graph-directed dimensions"};
  app.require_subcommand(1);
  std::uint64_t max_bytes = 0;
  app.add_option("--max-bytes", max_bytes, "Memory budget in bytes (overrides FRACUBE_MAX_BYTES)");

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "Trivial-point verdict and dimension bounds for a digit set");
  std::string analyze_path;
  int analyze_kmax = 0;
  bool analyze_json = false;
  bool no_timings = false;
  std::string analyze_graph, analyze_node, analyze_cell;
  int analyze_levels = 3;
  analyze_cmd->add_option("path", analyze_path, "Digit-set file")->required();
  analyze_cmd->add_option("--kmax", analyze_kmax, "Deepest approximation level to search (default 6 for d<=2, 3 for d=3)");
  analyze_cmd->add_flag("--json", analyze_json, "Emit the fracube-report/1 JSON report");
  analyze_cmd->add_flag("--no-timings", no_timings, "Omit timings from the JSON report");
  auto* gd_opt = analyze_cmd->add_option("--gd", analyze_graph, "Graph-directed decomposition (JSON) giving the exact I_c");
  analyze_cmd->add_option("--node", analyze_node, "Graph node to verify against a grid component")->needs(gd_opt);
  analyze_cmd->add_option("--cell", analyze_cell, "Seed digit, e.g. 0,0")->needs(gd_opt);
  analyze_cmd->add_option("--levels", analyze_levels, "Levels to verify");

  // render
  auto* render_cmd = app.add_subcommand("render", "Write the k-th approximation as a plain PBM");
  std::string render_path, render_out, render_slice;
  int render_level = 1;
  render_cmd->add_option("path", render_path, "Digit-set file")->required();
  render_cmd->add_option("-k,--level", render_level, "Approximation level")->required();
  render_cmd->add_option("-o,--out", render_out, "Output file (default: standard output)");
  render_cmd->add_option("--slice", render_slice, "Fixed coordinates for d>2, e.g. 2=0");

  // survey
  auto* survey_cmd = app.add_subcommand("survey", "Analyze every digit set of a given size");
  SurveyOptions survey;
  std::string survey_out;
  bool survey_resume = false;
  survey_cmd->add_option("--n", survey.base, "Base")->required();
  survey_cmd->add_option("--d", survey.dim, "Dimension")->required();
  survey_cmd->add_option("--cells", survey.cells, "Number of digits")->required();
  survey_cmd->add_option("--kmax", survey.k_max, "Deepest approximation level (default 4)");
  survey_cmd->add_flag("--mod-symmetry", survey.mod_symmetry, "One representative per dihedral class (d=2)");
  survey_cmd->add_option("--out", survey_out, "JSONL output file (default: standard output)");
  survey_cmd->add_flag("--resume", survey_resume, "Skip digit sets already present in --out");
  survey_cmd->add_option("--jobs", survey.jobs, "Worker threads (default: available parallelism)");
  survey_cmd->add_option("--cap", survey.cap, "Maximum candidate sets before symmetry reduction");

  // gd
  auto* gd_cmd = app.add_subcommand("gd", "Graph-directed dimension and decomposition check");
  std::string gd_graph, gd_verify, gd_node, gd_cell;
  int gd_levels = 3;
  bool gd_json = false;
  gd_cmd->add_option("--graph", gd_graph, "Graph JSON file")->required();
  auto* verify_opt = gd_cmd->add_option("--verify", gd_verify, "Digit-set file to verify the decomposition against");
  gd_cmd->add_option("--node", gd_node, "Node whose path cells should equal a grid component")->needs(verify_opt);
  gd_cmd->add_option("--cell", gd_cell, "Seed digit, e.g. 0,0")->needs(verify_opt);
  gd_cmd->add_option("--levels", gd_levels, "Levels to verify");
  gd_cmd->add_flag("--json", gd_json, "Emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const auto budget = budget_from(max_bytes);

    if (*analyze_cmd) {
      const auto d = load_digitset(analyze_path);
      const int k_max = analyze_kmax > 0 ? analyze_kmax : default_kmax(d.dim());
      std::optional<GdRequest> gd;
      if (!analyze_graph.empty()) {
        gd = GdRequest{load_graph(analyze_graph), std::nullopt, std::nullopt, analyze_levels};
        if (!analyze_node.empty() || !analyze_cell.empty()) {
          if (analyze_node.empty() || analyze_cell.empty()) throw DomainError("--node and --cell go together");
          gd->node = analyze_node;
          gd->cell = parse_cell(analyze_cell);
        }
      }
      const auto report = analyze(d, k_max, gd, budget);
      if (analyze_json)
        std::cout << to_json(report, !no_timings).dump(2) << "\n";
      else
        std::cout << human_summary(report);
      return 0;
    }

    if (*render_cmd) {
      const auto d = load_digitset(render_path);
      const auto grid = build_grid(d, render_level, budget);
      const auto pbm = render_pbm(grid, render_slice.empty() ? Slice{} : parse_slice(render_slice));
      if (render_out.empty()) {
        std::cout << pbm;
      } else {
        std::ofstream out(render_out, std::ios::binary);
        if (!(out << pbm)) throw IoError("cannot write '" + render_out + "'");
      }
      return 0;
    }

    if (*survey_cmd) {
      std::set<std::string> skip;
      std::ofstream file;
      if (!survey_out.empty()) {
        if (survey_resume && std::filesystem::exists(survey_out)) {
          // Drop a partially written last record before appending.
          auto text = read_file(survey_out);
          auto keep = text.rfind('\n');
          keep = keep == std::string::npos ? 0 : keep + 1;
          if (keep != text.size()) std::filesystem::resize_file(survey_out, keep);
          std::istringstream in(text.substr(0, keep));
          skip = read_survey_keys(in);
          file.open(survey_out, std::ios::binary | std::ios::app);
        } else {
          file.open(survey_out, std::ios::binary | std::ios::trunc);
        }
        if (!file) throw IoError("cannot write '" + survey_out + "'");
      }
      std::ostream& out = survey_out.empty() ? std::cout : file;
      const auto summary = run_survey(survey, out, skip, budget);
      (survey_out.empty() ? std::cerr : std::cout) << to_json(summary).dump() << "\n";
      return 0;
    }

    if (*gd_cmd) {
      const auto graph = load_graph(gd_graph);
      const auto dim = gd_dimension(graph);
      std::optional<GDVerification> verification;
      if (!gd_verify.empty()) {
        if (gd_node.empty() || gd_cell.empty()) throw DomainError("--verify needs --node and --cell");
        const auto d = load_digitset(gd_verify);
        verification = verify_decomposition(d, graph, gd_node, parse_cell(gd_cell), gd_levels, budget);
      }
      if (gd_json) {
        nlohmann::json j = to_json(dim);
        j["base"] = graph.base();
        j["count_matrix"] = graph.count_matrix();
        j["verification"] = verification ? to_json(*verification) : nlohmann::json(nullptr);
        std::cout << j.dump(2) << "\n";
      } else {
        std::printf("count matrix:");
        for (const auto& row : graph.count_matrix()) {
          std::printf(" [");
          for (std::size_t i = 0; i < row.size(); ++i) std::printf(i ? " %lld" : "%lld", static_cast<long long>(row[i]));
          std::printf("]");
        }
        std::printf("\nspectral radius in [%.15g, %.15g]\n", dim.rho.lo, dim.rho.hi);
        std::printf("dimension = %.15g in [%.15g, %.15g]\n", dim.value, dim.interval.lo, dim.interval.hi);
        if (verification)
          for (const auto& l : verification->levels)
            std::printf("level %d: %s (%llu component cells, %llu path cells)\n", l.level,
                        l.equal ? "equal" : "MISMATCH", static_cast<unsigned long long>(l.component_cells),
                        static_cast<unsigned long long>(l.path_cells));
      }
      if (verification && !verification->all_equal()) {
        print_verification_mismatches(*verification);
        return kExitMismatch;
      }
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const BudgetError& e) {
    std::cerr << "memory budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const CapExceeded& e) {
    std::cerr << "survey cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
