#include "fracube/topology.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "fracube/affine.hpp"
#include "fracube/error.hpp"
#include "fracube/kernels.hpp"

namespace fracube {

ComponentLabeling label_components(const CellGrid& grid, const MemoryBudget& budget) {
  budget.require(CellGrid::bitmap_bytes(grid.cell_count()) + kernels::labeling_bytes(grid),
                 "labeling a level-" + std::to_string(grid.level()) + " grid");
  auto labels = kernels::label_parallel(grid);

  ComponentLabeling out;
  out.grid = &grid;
  out.component_count = labels.component_count;
  out.label = std::move(labels.label);

  const int dim = grid.dim();
  const auto m = grid.side();
  out.components.resize(out.component_count);
  for (std::uint32_t id = 0; id < out.component_count; ++id) {
    auto& c = out.components[id];
    c.id = id;
    c.box_min.assign(dim, m);
    c.box_max.assign(dim, 0);
    c.touches_low.assign(dim, false);
    c.touches_high.assign(dim, false);
  }

  std::uint64_t rank = 0;
  for (std::size_t w = 0; w < grid.words().size(); ++w) {
    for (auto bits = grid.words()[w]; bits != 0; bits &= bits - 1) {
      auto rest = w * 64 + static_cast<std::uint64_t>(std::countr_zero(bits));
      auto& c = out.components[out.label[rank++]];
      ++c.cell_count;
      for (int a = 0; a < dim; ++a) {
        const auto x = rest % m;
        rest /= m;
        c.box_min[a] = std::min(c.box_min[a], x);
        c.box_max[a] = std::max(c.box_max[a], x);
      }
    }
  }
  for (auto& c : out.components) {
    bool touches = false;
    for (int a = 0; a < dim; ++a) {
      c.touches_low[a] = c.box_min[a] == 0;
      c.touches_high[a] = c.box_max[a] == m - 1;
      touches = touches || c.touches_low[a] || c.touches_high[a];
    }
    c.is_island = !touches;
  }
  return out;
}

std::vector<ComponentInfo> find_islands(const ComponentLabeling& labeling) {
  std::vector<ComponentInfo> out;
  for (const auto& c : labeling.components)
    if (c.is_island) out.push_back(c);
  return out;
}

CellComponent component_of_cell(const ComponentLabeling& labeling, std::span<const std::uint64_t> cell) {
  const auto& grid = *labeling.grid;
  const auto index = grid.index_of(cell);
  if (!grid.test(index)) throw DomainError("cell is not occupied");

  const auto ranks = kernels::word_ranks(grid);
  const auto below = grid.words()[index >> 6] & ((std::uint64_t{1} << (index & 63)) - 1);
  const auto id = labeling.label[ranks[index >> 6] + static_cast<std::uint64_t>(std::popcount(below))];

  CellComponent out{labeling.components[id], {}};
  out.cells.reserve(out.info.cell_count);
  std::uint64_t rank = 0;
  for (std::size_t w = 0; w < grid.words().size(); ++w)
    for (auto bits = grid.words()[w]; bits != 0; bits &= bits - 1, ++rank)
      if (labeling.label[rank] == id) out.cells.push_back(w * 64 + static_cast<std::uint64_t>(std::countr_zero(bits)));
  return out;
}

LevelScan scan_level(const DigitSet& d, int k, const MemoryBudget& budget) {
  try {
    const auto grid = build_grid(d, k, budget);
    const auto labeling = label_components(grid, budget);
    LevelScan out;
    out.level = k;
    out.occupied = grid.occupied_count();
    out.component_count = labeling.component_count;
    for (const auto& c : labeling.components) {
      if (!c.is_island) continue;
      out.island_ids.push_back(c.id);
      out.island_cells += c.cell_count;
    }
    return out;
  } catch (const BudgetError& e) {
    throw BudgetError("at level " + std::to_string(k) + ": " + e.detail(), e.required(), e.allowed());
  }
}

std::optional<int> first_island_level(const DigitSet& d, int k_max, const MemoryBudget& budget) {
  if (k_max < 1) throw DomainError("k_max must be at least 1");
  for (int k = 1; k <= k_max; ++k)
    if (!scan_level(d, k, budget).island_ids.empty()) return k;
  return std::nullopt;
}

namespace {

int ternary_code(const std::vector<int>& v) {
  int code = 0;
  for (auto it = v.rbegin(); it != v.rend(); ++it) code = code * 3 + (*it + 1);
  return code;
}

// Offsets w in {-1,0,1}^d from which the offset graph has an infinite path,
// i.e. E intersects E + w. Indexed by ternary code.
std::vector<bool> intersecting_offsets(const DigitSet& d) {
  const int dim = d.dim();
  int nodes = 1;
  for (int a = 0; a < dim; ++a) nodes *= 3;

  std::vector<std::vector<int>> deltas;
  for (const auto& a : d.digits())
    for (const auto& b : d.digits()) {
      std::vector<int> diff(dim);
      for (int i = 0; i < dim; ++i) diff[i] = b[i] - a[i];
      deltas.push_back(std::move(diff));
    }
  std::sort(deltas.begin(), deltas.end());
  deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());

  std::vector<std::vector<int>> succ(nodes), pred(nodes);
  std::vector<int> w(dim);
  for (int code = 0; code < nodes; ++code) {
    for (int i = 0, c = code; i < dim; ++i, c /= 3) w[i] = c % 3 - 1;
    for (const auto& delta : deltas) {
      std::vector<int> next(dim);
      bool inside = true;
      for (int i = 0; i < dim && inside; ++i) {
        next[i] = d.base() * w[i] + delta[i];
        inside = next[i] >= -1 && next[i] <= 1;
      }
      if (!inside) continue;
      const int to = ternary_code(next);
      succ[code].push_back(to);
      pred[to].push_back(code);
    }
  }

  // Peel nodes without surviving successors; the rest lie on or reach cycles.
  std::vector<int> out_degree(nodes);
  std::vector<bool> alive(nodes, true);
  std::vector<int> queue;
  for (int v = 0; v < nodes; ++v) {
    out_degree[v] = static_cast<int>(succ[v].size());
    if (out_degree[v] == 0) queue.push_back(v);
  }
  while (!queue.empty()) {
    const int v = queue.back();
    queue.pop_back();
    alive[v] = false;
    for (int p : pred[v])
      if (--out_degree[p] == 0) queue.push_back(p);
  }
  return alive;
}

}  // namespace

bool piece_intersects(const DigitSet& d, const std::vector<int>& v) {
  if (static_cast<int>(v.size()) != d.dim()) throw DomainError("offset has the wrong dimension");
  if (std::any_of(v.begin(), v.end(), [](int c) { return c < -1 || c > 1; }))
    throw DomainError("offset must lie in {-1,0,1}^d");
  return intersecting_offsets(d)[ternary_code(v)];
}

bool hata_connected(const DigitSet& d) {
  const auto alive = intersecting_offsets(d);
  const auto count = d.size();
  std::vector<std::size_t> parent(count);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t groups = count;
  std::vector<int> v(d.dim());
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j) {
      bool near = true;
      for (int a = 0; a < d.dim() && near; ++a) {
        v[a] = d[j][a] - d[i][a];
        near = v[a] >= -1 && v[a] <= 1;
      }
      if (!near || !alive[ternary_code(v)]) continue;
      auto ri = find(i), rj = find(j);
      if (ri != rj) {
        parent[ri] = rj;
        --groups;
      }
    }
  return groups == 1;
}

std::string verdict_name(const TrivialPointVerdict& v) {
  struct {
    std::string operator()(const HasTrivialPoint&) const { return "HasTrivialPoint"; }
    std::string operator()(const NoTrivialPoint&) const { return "NoTrivialPoint"; }
    std::string operator()(const Singleton&) const { return "Singleton"; }
    std::string operator()(const Unknown&) const { return "Unknown"; }
  } name;
  return std::visit(name, v);
}

TrivialPointVerdict trivial_point_status(const DigitSet& d, int k_max, const MemoryBudget& budget) {
  if (k_max < 1) throw DomainError("k_max must be at least 1");
  const auto reduction = reduce_full_rank(d);
  if (reduction.singleton) return Singleton{};
  for (int k = 1; k <= k_max; ++k) {
    auto scan = scan_level(reduction.reduced, k, budget);
    if (!scan.island_ids.empty()) return HasTrivialPoint{k, scan.island_ids.front()};
  }
  if (d.size() >= 2 && hata_connected(reduction.reduced)) return NoTrivialPoint{"hata-connected"};
  return Unknown{k_max};
}

int default_kmax(int dim) {
  if (dim <= 2) return 6;
  if (dim == 3) return 3;
  return 2;
}

}  // namespace fracube
