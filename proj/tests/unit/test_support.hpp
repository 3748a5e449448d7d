#pragma once

// Hand-rolled generators for the property tests: a fixed-seed engine and
// random patterns / weight vectors / rates.

#include <cstdint>
#include <random>
#include <vector>

#include "carpetdim/carpet_model.hpp"
#include "carpetdim/weight_vector.hpp"

namespace testgen {

inline std::mt19937_64& engine() {
  static std::mt19937_64 eng(20240917);
  return eng;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine()); }

inline int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine()); }

/// Weights k_i / sum k with integer k_i in [lo, 9]; lo = 0 allows zeros.
inline carpetdim::WeightVector weights(int size, int lo = 1) {
  std::vector<std::int64_t> counts;
  std::int64_t total = 0;
  do {
    counts.clear();
    total = 0;
    for (int i = 0; i < size; ++i) {
      counts.push_back(integer(lo, 9));
      total += counts.back();
    }
  } while (total == 0);
  return carpetdim::WeightVector::from_counts(counts);
}

/// Random pattern in base b with at least two rows and two columns, so it is
/// neither a line nor a single cell.
inline carpetdim::DigitPattern pattern(int base) {
  while (true) {
    std::vector<carpetdim::Cell> cells;
    for (int x = 0; x < base; ++x) {
      for (int y = 0; y < base; ++y) {
        if (integer(0, 1) == 1) cells.push_back({x, y});
      }
    }
    if (cells.size() < 2) continue;
    carpetdim::DigitPattern p(base, cells);
    if (!p.is_horizontal_line() && !p.is_vertical_line()) return p;
  }
}

}  // namespace testgen
