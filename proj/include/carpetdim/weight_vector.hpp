#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace carpetdim {

/// Probability vector over b symbols. Zero entries are kept so that index i
/// always refers to digit i; the positive entries form the support.
class WeightVector {
 public:
  static constexpr double kSumTolerance = 1e-12;

  /// Throws Error(InvalidWeights) on negative/non-finite entries, an empty
  /// support, or a sum farther than kSumTolerance from 1.
  explicit WeightVector(std::vector<double> weights);

  /// Exact construction from integer counts; w_i = counts_i / sum(counts).
  static WeightVector from_counts(std::span<const std::int64_t> counts);

  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> values() const noexcept { return weights_; }
  std::span<const std::size_t> support() const noexcept { return support_; }

  double max_weight() const noexcept { return max_; }
  double min_positive_weight() const noexcept { return min_positive_; }

  /// Number of support entries equal (bitwise) to the largest / smallest weight.
  std::size_t max_multiplicity() const noexcept;
  std::size_t min_multiplicity() const noexcept;

 private:
  std::vector<double> weights_;
  std::vector<std::size_t> support_;
  double max_ = 0.0;
  double min_positive_ = 0.0;
};

}  // namespace carpetdim
