// Serial reference vs OpenMP kernels on one large approximation.
//
//   bench_kernels [n] [k] [digits] [seed]
//
// Defaults: a random 14-digit set at n = 5, k = 6 (15625^2 cells).

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <numeric>
#include <random>

#include <omp.h>

#include "fracube/cell_grid.hpp"
#include "fracube/kernels.hpp"

using namespace fracube;

template <typename F>
double time_ms(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 5;
  const int k = argc > 2 ? std::atoi(argv[2]) : 6;
  const int count = argc > 3 ? std::atoi(argv[3]) : 14;
  const unsigned seed = argc > 4 ? static_cast<unsigned>(std::atoi(argv[4])) : 1u;

  std::vector<int> cells(n * n);
  std::iota(cells.begin(), cells.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(cells.begin(), cells.end(), rng);
  std::vector<Digit> digits;
  for (int i = 0; i < count; ++i) digits.push_back({cells[i] % n, cells[i] / n});
  const auto d = DigitSet::make(n, 2, digits);

  std::cout << "n=" << n << " k=" << k << " N=" << count << " threads=" << omp_get_max_threads() << "\n";

  std::vector<std::uint64_t> serial_words, parallel_words;
  const double build_serial = time_ms([&] { serial_words = kernels::build_occupancy_serial(d, k); });
  const double build_parallel = time_ms([&] { parallel_words = kernels::build_occupancy_parallel(d, k); });
  std::cout << "build   serial " << build_serial << " ms, parallel " << build_parallel << " ms, "
            << (serial_words == parallel_words ? "identical" : "DIFFERENT") << "\n";

  const CellGrid grid(n, 2, k, std::move(parallel_words));
  kernels::Labels serial_labels, parallel_labels;
  const double label_serial = time_ms([&] { serial_labels = kernels::label_serial(grid); });
  const double label_parallel = time_ms([&] { parallel_labels = kernels::label_parallel(grid); });
  std::cout << "label   serial " << label_serial << " ms, parallel " << label_parallel << " ms, "
            << serial_labels.component_count << " components, "
            << (serial_labels.label == parallel_labels.label ? "identical" : "DIFFERENT") << "\n";
  return 0;
}
