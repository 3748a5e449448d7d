#pragma once

// Multifractal formalism for a one-dimensional self-similar measure with b
// maps of ratio 1/b and weights (p_0, ..., p_{b-1}). The number of symbols
// b is the length of the weight vector. Zero weights are excluded from every
// sum; the spectrum lives on [alpha_min, alpha_max] computed from the
// positive weights only.

#include <cstddef>
#include <span>
#include <vector>

#include "carpetdim/weight_vector.hpp"

namespace carpetdim {

inline constexpr double kDefaultQMax = 40.0;
inline constexpr double kAlphaTolerance = 1e-9;

struct KappaTheta {
  double kappa = 0.0;
  double theta = 0.0;
};

struct SpectrumPoint {
  double q = 0.0;
  double T = 0.0;
  double kappa = 0.0;
  double theta = 0.0;
};

/// T(q) = -log_b sum_{i in support} p_i^q.
double lq_exponent(const WeightVector& w, double q);

/// Gibbs reweighting p_{i,q} = p_i^q / sum_j p_j^q, computed in log space.
WeightVector tilted_weights(const WeightVector& w, double q);

/// kappa_q = -sum p_{i,q} log_b p_i,  theta_q = -sum p_{i,q} log_b p_{i,q}.
KappaTheta kappa_theta(const WeightVector& w, double q);

/// D(alpha), the multifractal spectrum. Throws AlphaOutOfRange outside
/// [alpha_min - 1e-9, alpha_max + 1e-9].
double spectrum_at_alpha(const WeightVector& w, double alpha);

/// Natural log of the number of generation-n b-adic intervals I with
/// b^{-n(alpha+eps)} <= mu(I) <= b^{-n(alpha-eps)}. Exact enumeration of
/// digit-type compositions; -infinity when no interval qualifies.
double packing_count(const WeightVector& w, int n, double alpha, double eps);

/// Legendre curve q -> (T, kappa, theta) together with spectrum queries.
/// Immutable after construction.
class SpectrumCurve {
 public:
  explicit SpectrumCurve(WeightVector w);
  SpectrumCurve(WeightVector w, std::vector<double> qgrid);

  /// 81 points, step 1, on [-40, 40].
  static std::vector<double> default_qgrid(double qmax = kDefaultQMax, std::size_t count = 81);

  const WeightVector& weights() const noexcept { return weights_; }
  std::span<const SpectrumPoint> points() const noexcept { return points_; }

  double base_log() const noexcept { return ln_b_; }
  double alpha_min() const noexcept { return alpha_min_; }
  double alpha_max() const noexcept { return alpha_max_; }

  /// Support is a single atom: the measure is a Dirac mass.
  bool is_dirac() const noexcept { return ln_p_.size() == 1; }
  /// Spectrum reduces to one point (all positive weights equal).
  bool is_single_point() const noexcept;

  double T(double q) const;
  KappaTheta at(double q) const;
  /// Solves kappa_q = alpha (kappa is non-increasing in q). Returns +-inf at
  /// the spectrum endpoints and 0 on a single-point spectrum.
  double q_at_alpha(double alpha) const;
  /// D(alpha) = inf_q (q alpha - T(q)); endpoints return log_b of the
  /// multiplicity of the extremal weight.
  double D(double alpha) const;

  /// Entropy dimension kappa_1 = theta_1 = dim of the measure.
  double dimension() const { return at(1.0).kappa; }

 private:
  double log_partition(double q) const;

  WeightVector weights_;
  std::vector<double> ln_p_;  // log of support weights
  double ln_b_ = 0.0;
  double alpha_min_ = 0.0;
  double alpha_max_ = 0.0;
  double d_at_min_ = 0.0;
  double d_at_max_ = 0.0;
  std::vector<SpectrumPoint> points_;
};

}  // namespace carpetdim
