#include "carpetdim/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace carpetdim::kernels {

namespace {

constexpr std::size_t kLeaf = 32;

double sample_log_content(const ContentBatch& batch, std::size_t i, double s) {
  const double step = batch.s0 - s;
  double acc = 0.0;
  double best = 0.0;  // k = 0 term
  for (std::size_t j = batch.offset[i]; j < batch.offset[i + 1]; ++j) {
    acc += step + batch.log_weight[batch.rows[j]];
    best = std::min(best, acc);
  }
  return (-static_cast<double>(batch.m[i]) * s + best) * batch.ln_b;
}

}  // namespace

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= kLeaf) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

void batch_contents(const ContentBatch& batch, double s, std::span<double> out, Execution exec) {
  const auto n = static_cast<std::ptrdiff_t>(batch.size());
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(i)] = std::exp(sample_log_content(batch, static_cast<std::size_t>(i), s));
    }
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(i)] = std::exp(sample_log_content(batch, static_cast<std::size_t>(i), s));
    }
  }
}

std::vector<double> block_sums(std::span<const double> values, std::span<const std::size_t> offsets,
                               Execution exec) {
  const std::size_t blocks = offsets.empty() ? 0 : offsets.size() - 1;
  std::vector<double> sums(blocks, 0.0);
  const auto nb = static_cast<std::ptrdiff_t>(blocks);
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t k = 0; k < nb; ++k) {
      const auto u = static_cast<std::size_t>(k);
      sums[u] = pairwise_sum(values.subspan(offsets[u], offsets[u + 1] - offsets[u]));
    }
  } else {
    for (std::size_t k = 0; k < blocks; ++k) {
      sums[k] = pairwise_sum(values.subspan(offsets[k], offsets[k + 1] - offsets[k]));
    }
  }
  return sums;
}

}  // namespace carpetdim::kernels
