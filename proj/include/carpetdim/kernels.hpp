#pragma once

// Data-parallel inner loops. Every kernel has a serial reference path and an
// OpenMP path; both produce bit-identical results because per-element work
// is independent and reductions use a fixed-shape pairwise tree.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace carpetdim {

enum class Execution { Serial, Parallel };

namespace kernels {

/// Cascade summation; the split points depend only on v.size().
double pairwise_sum(std::span<const double> v);

struct GridArgmax {
  std::size_t index = 0;
  double value = 0.0;
};

/// Evaluates f at every grid point and returns the first maximiser (ties go
/// to the smaller index). NaN values are ignored.
template <class F>
GridArgmax grid_argmax(std::span<const double> xs, F&& f, Execution exec) {
  std::vector<double> values(xs.size());
  const auto n = static_cast<std::ptrdiff_t>(xs.size());
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]);
  }
  GridArgmax best{0, values.empty() ? 0.0 : values[0]};
  bool seen = false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != values[i]) continue;
    if (!seen || values[i] > best.value) {
      best = {i, values[i]};
      seen = true;
    }
  }
  return best;
}

/// Flattened per-sample data for rectangle contents of sampled points. For
/// sample i the rectangle is the b-adic I_m x I_{m+L}; only the y-digit rows
/// after position m matter (the x prefix is inside the carpet by sampling).
struct ContentBatch {
  std::vector<std::uint32_t> m;           // x-generation per sample
  std::vector<std::size_t> offset;        // rows[offset[i], offset[i+1]) is the suffix
  std::vector<std::uint8_t> rows;         // suffix row digits
  std::vector<double> log_weight;         // log_b p_row, indexed by row digit
  double s0 = 0.0;
  double ln_b = 0.0;

  std::size_t size() const noexcept { return m.size(); }
};

/// out[i] = content of sample i at exponent s, linear scale:
///   b^{-m s} * min_{0<=k<=L} b^{-k(s-s0)} prod_{j<k} p_{row_j}.
void batch_contents(const ContentBatch& batch, double s, std::span<double> out, Execution exec);

/// Pairwise sum over each [offsets[k], offsets[k+1]) range of values.
std::vector<double> block_sums(std::span<const double> values, std::span<const std::size_t> offsets,
                               Execution exec);

}  // namespace kernels
}  // namespace carpetdim
