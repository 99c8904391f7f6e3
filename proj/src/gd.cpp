#include "fracube/gd.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>

#include "json.hpp"

#include "fracube/error.hpp"
#include "fracube/topology.hpp"

namespace fracube {

MWGraph MWGraph::make(int base, int dim, std::vector<std::string> nodes, std::vector<MWEdge> edges) {
  if (base < 2) throw DomainError("graph base must be at least 2");
  if (dim < 1) throw DomainError("graph dimension must be at least 1");
  if (nodes.empty()) throw DomainError("graph has no nodes");
  std::set<std::string> names(nodes.begin(), nodes.end());
  if (names.size() != nodes.size()) throw DomainError("duplicate node name");
  std::set<MWEdge> seen;
  for (const auto& e : edges) {
    if (e.from >= nodes.size() || e.to >= nodes.size()) throw DomainError("edge endpoint out of range");
    if (static_cast<int>(e.digit.size()) != dim) throw DomainError("edge digit has the wrong dimension");
    for (int c : e.digit)
      if (c < 0 || c >= base)
        throw DomainError("edge digit coordinate " + std::to_string(c) + " outside {0.." + std::to_string(base - 1) + "}");
    if (!seen.insert(e).second)
      throw DomainError("duplicate edge " + nodes[e.from] + " -> " + nodes[e.to]);
  }
  return MWGraph(base, dim, std::move(nodes), std::move(edges));
}

std::size_t MWGraph::node_index(std::string_view name) const {
  auto it = std::find(nodes_.begin(), nodes_.end(), name);
  if (it == nodes_.end()) throw DomainError("unknown node '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - nodes_.begin());
}

CountMatrix MWGraph::count_matrix() const {
  CountMatrix a(nodes_.size(), std::vector<std::int64_t>(nodes_.size(), 0));
  for (const auto& e : edges_) ++a[e.from][e.to];
  return a;
}

MWGraph parse_graph_json(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("graph JSON: ") + e.what());
  }
  auto reject_unknown = [](const json& obj, std::initializer_list<const char*> allowed, const char* where) {
    if (!obj.is_object()) throw ParseError(std::string("graph JSON: ") + where + " must be an object");
    for (const auto& [key, value] : obj.items()) {
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; }))
        throw ParseError(std::string("graph JSON: unknown field '") + key + "' in " + where);
    }
    for (const char* k : allowed)
      if (!obj.contains(k)) throw ParseError(std::string("graph JSON: missing field '") + k + "' in " + where);
  };

  try {
    reject_unknown(doc, {"base", "dim", "nodes", "edges"}, "graph");
    const int base = doc.at("base").get<int>();
    const int dim = doc.at("dim").get<int>();
    auto nodes = doc.at("nodes").get<std::vector<std::string>>();
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < nodes.size(); ++i) index.emplace(nodes[i], i);

    std::vector<MWEdge> edges;
    if (!doc.at("edges").is_array()) throw ParseError("graph JSON: edges must be an array");
    for (const auto& e : doc.at("edges")) {
      reject_unknown(e, {"from", "to", "digit"}, "edge");
      const auto from = e.at("from").get<std::string>();
      const auto to = e.at("to").get<std::string>();
      if (!index.contains(from)) throw ParseError("graph JSON: unknown node '" + from + "'");
      if (!index.contains(to)) throw ParseError("graph JSON: unknown node '" + to + "'");
      edges.push_back({index.at(from), index.at(to), e.at("digit").get<Digit>()});
    }
    return MWGraph::make(base, dim, std::move(nodes), std::move(edges));
  } catch (const json::exception& e) {
    throw ParseError(std::string("graph JSON: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("graph JSON: ") + e.what());
  }
}

namespace {

// Tarjan's algorithm on the support graph of `a`.
std::vector<std::vector<std::size_t>> strongly_connected_components(const CountMatrix& a) {
  const std::size_t n = a.size();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;
  int counter = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w = 0; w < n; ++w) {
      if (a[v][w] == 0) continue;
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> component;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        component.push_back(w);
      } while (w != v);
      std::sort(component.begin(), component.end());
      out.push_back(std::move(component));
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);
  return out;
}

// Collatz-Wielandt enclosure for an irreducible block with at least two nodes.
Interval irreducible_radius(const std::vector<std::vector<double>>& b) {
  const std::size_t s = b.size();
  std::vector<double> x(s, 1.0), y(s);
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  constexpr int kMaxIterations = 1'000'000;
  for (int it = 0; it < kMaxIterations; ++it) {
    double step_lo = std::numeric_limits<double>::infinity();
    double step_hi = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < s; ++j) acc += b[i][j] * x[j];
      y[i] = acc;
      const double ratio = acc / x[i];
      step_lo = std::min(step_lo, ratio);
      step_hi = std::max(step_hi, ratio);
    }
    lo = std::max(lo, step_lo);
    hi = std::min(hi, step_hi);
    if (hi - lo < 1e-12 * hi) break;
    // Iterate with B + I, which is primitive, so periodic blocks converge too.
    double scale = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
      y[i] += x[i];
      scale = std::max(scale, y[i]);
    }
    for (std::size_t i = 0; i < s; ++i) x[i] = y[i] / scale;
  }

  // Each ratio is a nonnegative dot product of length s followed by one
  // division: relative error at most gamma_{s+1} (Higham, Thm 3.1).
  constexpr double u = std::numeric_limits<double>::epsilon() / 2;
  const double k = static_cast<double>(s + 2);
  const double gamma = k * u / (1 - k * u);
  return {std::nextafter(lo * (1 - gamma), 0.0),
          std::nextafter(hi * (1 + gamma), std::numeric_limits<double>::infinity())};
}

}  // namespace

Interval spectral_radius(const CountMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) throw DomainError("matrix is empty");
  bool zero = true;
  for (const auto& row : a) {
    if (row.size() != n) throw DomainError("matrix is not square");
    for (auto v : row) {
      if (v < 0) throw DomainError("matrix has a negative entry");
      if (v >= (std::int64_t{1} << 53)) throw DomainError("matrix entry too large for exact conversion");
      zero = zero && v == 0;
    }
  }
  if (zero) return {0.0, 0.0};

  Interval best{0.0, 0.0};
  for (const auto& component : strongly_connected_components(a)) {
    Interval r;
    if (component.size() == 1) {
      const auto v = static_cast<double>(a[component[0]][component[0]]);
      r = {v, v};
    } else {
      std::vector<std::vector<double>> b(component.size(), std::vector<double>(component.size()));
      for (std::size_t i = 0; i < component.size(); ++i)
        for (std::size_t j = 0; j < component.size(); ++j)
          b[i][j] = static_cast<double>(a[component[i]][component[j]]);
      r = irreducible_radius(b);
    }
    best.lo = std::max(best.lo, r.lo);
    best.hi = std::max(best.hi, r.hi);
  }
  return best;
}

GdDimension gd_dimension(const CountMatrix& a, int base) {
  if (base < 2) throw DomainError("base must be at least 2");
  const auto rho = spectral_radius(a);
  if (rho.hi == 0.0) throw DomainError("graph has no cycle; the attractor is empty");
  const double log_n = std::log(static_cast<double>(base));
  const double inf = std::numeric_limits<double>::infinity();
  const double value = std::log((rho.lo + rho.hi) / 2) / log_n;
  Interval interval{std::nextafter(std::nextafter(std::log(rho.lo) / log_n, -inf), -inf),
                    std::nextafter(std::nextafter(std::log(rho.hi) / log_n, inf), inf)};
  if (rho.lo == rho.hi) interval = {value, value};
  return {value, interval, rho};
}

GdDimension gd_dimension(const MWGraph& g) { return gd_dimension(g.count_matrix(), g.base()); }

std::vector<std::uint64_t> path_cells(const MWGraph& g, std::string_view start, int level,
                                      const MemoryBudget& budget) {
  if (level < 1) throw DomainError("path level must be positive");
  const auto origin = g.node_index(start);
  const int dim = g.dim();
  const auto n = static_cast<std::uint64_t>(g.base());
  grid_extent(g.base(), dim, level);  // overflow check

  std::vector<std::vector<const MWEdge*>> out_edges(g.nodes().size());
  for (const auto& e : g.edges()) out_edges[e.from].push_back(&e);
  std::size_t max_out = 1;
  for (const auto& list : out_edges) max_out = std::max(max_out, list.size());

  // States are (node, cell) with the cell as a linear index on the current grid.
  std::vector<std::pair<std::size_t, std::uint64_t>> states{{origin, 0}};
  std::uint64_t side = 1;
  std::vector<std::uint64_t> x(dim);
  for (int l = 1; l <= level; ++l) {
    budget.require(states.size() * max_out * sizeof(states[0]), "path cells at level " + std::to_string(l));
    const auto next_side = side * n;
    std::vector<std::pair<std::size_t, std::uint64_t>> next;
    next.reserve(states.size() * max_out);
    for (const auto& [node, cell] : states) {
      auto rest = cell;
      for (int a = 0; a < dim; ++a) {
        x[a] = rest % side;
        rest /= side;
      }
      for (const auto* e : out_edges[node]) {
        std::uint64_t index = 0;
        for (int a = dim - 1; a >= 0; --a)
          index = index * next_side + (n * x[a] + static_cast<std::uint64_t>(e->digit[a]));
        next.emplace_back(e->to, index);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    states = std::move(next);
    side = next_side;
  }

  std::vector<std::uint64_t> cells;
  cells.reserve(states.size());
  for (const auto& s : states) cells.push_back(s.second);
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

std::uint64_t path_count(const MWGraph& g, std::string_view start, int level) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> ways(g.nodes().size(), 0);
  ways[g.node_index(start)] = 1;
  for (int l = 0; l < level; ++l) {
    std::vector<std::uint64_t> next(ways.size(), 0);
    for (const auto& e : g.edges()) {
      const auto add = ways[e.from];
      next[e.to] = next[e.to] > kMax - add ? kMax : next[e.to] + add;
    }
    ways = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto w : ways) total = total > kMax - w ? kMax : total + w;
  return total;
}

bool GDVerification::all_equal() const {
  return std::all_of(levels.begin(), levels.end(), [](const LevelVerification& l) { return l.equal; });
}

GDVerification verify_decomposition(const DigitSet& d, const MWGraph& g, std::string_view node, const Digit& cell,
                                    int levels, const MemoryBudget& budget) {
  if (levels < 1) throw DomainError("verification needs at least one level");
  if (g.base() != d.base() || g.dim() != d.dim())
    throw DomainError("graph base/dimension do not match the digit set");
  for (const auto& e : g.edges())
    if (!d.contains(e.digit)) throw DomainError("graph edge uses a digit that is not in D");
  g.node_index(node);
  if (static_cast<int>(cell.size()) != d.dim()) throw DomainError("seed cell has the wrong dimension");
  if (!d.contains(cell)) throw DomainError("seed cell is not a digit, so it is unoccupied at every level");

  GDVerification out;
  for (int l = 1; l <= levels; ++l) {
    const auto grid = build_grid(d, l, budget);
    const auto labeling = label_components(grid, budget);
    // Repeating digit c in every position: c (n^l - 1) / (n - 1).
    const auto [side, cells] = grid_extent(d.base(), d.dim(), l);
    std::vector<std::uint64_t> seed(d.dim());
    for (int a = 0; a < d.dim(); ++a) seed[a] = static_cast<std::uint64_t>(cell[a]) * ((side - 1) / (d.base() - 1));
    const auto component = component_of_cell(labeling, seed);
    const auto paths = path_cells(g, node, l, budget);

    LevelVerification v{l, component.cells == paths, component.cells.size(), paths.size(), std::nullopt, false};
    if (!v.equal) {
      std::vector<std::uint64_t> diff;
      std::set_symmetric_difference(component.cells.begin(), component.cells.end(), paths.begin(), paths.end(),
                                    std::back_inserter(diff));
      v.first_mismatch = grid.coords_of(diff.front());
      v.mismatch_in_component = std::binary_search(component.cells.begin(), component.cells.end(), diff.front());
    }
    out.levels.push_back(std::move(v));
  }
  return out;
}

}  // namespace fracube
