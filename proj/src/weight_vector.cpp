#include "carpetdim/weight_vector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "carpetdim/error.hpp"

namespace carpetdim {

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) {
    throw Error(ErrorCode::InvalidWeights, "weight vector is empty", "weights");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const double w = weights_[i];
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorCode::InvalidWeights,
                  "weight " + std::to_string(i) + " is negative or not finite", "weights");
    }
    sum += w;
    if (w > 0.0) support_.push_back(i);
  }
  if (support_.empty()) {
    throw Error(ErrorCode::InvalidWeights, "weight vector has empty support", "weights");
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw Error(ErrorCode::InvalidWeights, "weights do not sum to 1", "weights");
  }
  max_ = *std::max_element(weights_.begin(), weights_.end());
  min_positive_ = max_;
  for (auto i : support_) min_positive_ = std::min(min_positive_, weights_[i]);
}

WeightVector WeightVector::from_counts(std::span<const std::int64_t> counts) {
  const std::int64_t total = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
  if (total <= 0) {
    throw Error(ErrorCode::InvalidWeights, "counts sum to zero", "weights");
  }
  std::vector<double> w(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 0) throw Error(ErrorCode::InvalidWeights, "negative count", "weights");
    w[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  }
  return WeightVector(std::move(w));
}

std::size_t WeightVector::max_multiplicity() const noexcept {
  return static_cast<std::size_t>(std::count(weights_.begin(), weights_.end(), max_));
}

std::size_t WeightVector::min_multiplicity() const noexcept {
  return static_cast<std::size_t>(std::count(weights_.begin(), weights_.end(), min_positive_));
}

}  // namespace carpetdim
