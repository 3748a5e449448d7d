#include "carpetdim/multifractal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "carpetdim/error.hpp"

namespace carpetdim {

namespace {

constexpr double kQCap = 1e6;
constexpr int kMaxBisection = 300;
constexpr double kMaxCompositions = 5e7;

double log_sum_exp_scaled(std::span<const double> ln_p, double q) {
  double top = -std::numeric_limits<double>::infinity();
  for (double lp : ln_p) top = std::max(top, q * lp);
  double acc = 0.0;
  for (double lp : ln_p) acc += std::exp(q * lp - top);
  return top + std::log(acc);
}

std::vector<double> support_logs(const WeightVector& w) {
  std::vector<double> out;
  out.reserve(w.support().size());
  for (auto i : w.support()) out.push_back(std::log(w[i]));
  return out;
}

}  // namespace

double lq_exponent(const WeightVector& w, double q) {
  const auto ln_p = support_logs(w);
  return -log_sum_exp_scaled(ln_p, q) / std::log(static_cast<double>(w.size()));
}

WeightVector tilted_weights(const WeightVector& w, double q) {
  const auto ln_p = support_logs(w);
  const double z = log_sum_exp_scaled(ln_p, q);
  std::vector<double> out(w.size(), 0.0);
  double sum = 0.0;
  for (std::size_t k = 0; k < ln_p.size(); ++k) {
    out[w.support()[k]] = std::exp(q * ln_p[k] - z);
    sum += out[w.support()[k]];
  }
  // absorb rounding so the sum invariant holds well inside 1e-12
  for (auto& x : out) x /= sum;
  return WeightVector(std::move(out));
}

KappaTheta kappa_theta(const WeightVector& w, double q) { return SpectrumCurve(w, {}).at(q); }

double spectrum_at_alpha(const WeightVector& w, double alpha) { return SpectrumCurve(w, {}).D(alpha); }

double packing_count(const WeightVector& w, int n, double alpha, double eps) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "packing_count needs n >= 1", "n");
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "packing_count needs eps > 0", "eps");

  // Symbols sharing a weight are interchangeable: enumerate compositions over
  // distinct weight values and weight each by multiplicity^k.
  std::map<double, int> classes;
  for (auto i : w.support()) ++classes[w[i]];
  std::vector<double> ln_p;
  std::vector<double> ln_mult;
  for (const auto& [p, m] : classes) {
    ln_p.push_back(std::log(p));
    ln_mult.push_back(std::log(static_cast<double>(m)));
  }
  const std::size_t J = ln_p.size();

  double compositions = 1.0;
  for (std::size_t j = 1; j < J; ++j) compositions *= static_cast<double>(n + j) / static_cast<double>(j);
  if (compositions > kMaxCompositions) {
    throw Error(ErrorCode::BudgetExceeded, "too many digit-type compositions", "n");
  }

  const double ln_b = std::log(static_cast<double>(w.size()));
  const double lo = alpha - eps;
  const double hi = alpha + eps;
  const double slack = 1e-12 * std::max(1.0, std::abs(alpha) + eps);
  const double lg_n = std::lgamma(n + 1.0);

  std::vector<int> k(J, 0);
  std::vector<double> terms;

  auto visit = [&] {
    double exponent = 0.0;
    double log_term = lg_n;
    for (std::size_t j = 0; j < J; ++j) {
      exponent -= k[j] * ln_p[j];
      log_term += k[j] * ln_mult[j] - std::lgamma(k[j] + 1.0);
    }
    exponent /= n * ln_b;
    if (exponent >= lo - slack && exponent <= hi + slack) terms.push_back(log_term);
  };

  auto enumerate = [&](auto&& self, std::size_t j, int remaining) -> void {
    if (j + 1 == J) {
      k[j] = remaining;
      visit();
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      k[j] = c;
      self(self, j + 1, remaining - c);
    }
  };
  enumerate(enumerate, 0, n);

  if (terms.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(terms.begin(), terms.end());
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - top);
  return top + std::log(acc);
}

SpectrumCurve::SpectrumCurve(WeightVector w) : SpectrumCurve(std::move(w), default_qgrid()) {}

SpectrumCurve::SpectrumCurve(WeightVector w, std::vector<double> qgrid)
    : weights_(std::move(w)), ln_p_(support_logs(weights_)) {
  ln_b_ = std::log(static_cast<double>(weights_.size()));
  alpha_min_ = -std::log(weights_.max_weight()) / ln_b_;
  alpha_max_ = -std::log(weights_.min_positive_weight()) / ln_b_;
  d_at_min_ = std::log(static_cast<double>(weights_.max_multiplicity())) / ln_b_;
  d_at_max_ = std::log(static_cast<double>(weights_.min_multiplicity())) / ln_b_;
  if (is_single_point()) {
    alpha_max_ = alpha_min_;
    d_at_min_ = d_at_max_ = std::log(static_cast<double>(ln_p_.size())) / ln_b_;
  }
  std::sort(qgrid.begin(), qgrid.end());
  points_.reserve(qgrid.size());
  for (double q : qgrid) {
    const auto kt = at(q);
    points_.push_back({q, T(q), kt.kappa, kt.theta});
  }
}

std::vector<double> SpectrumCurve::default_qgrid(double qmax, std::size_t count) {
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = 0.0;
    return grid;
  }
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = -qmax + 2.0 * qmax * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return grid;
}

bool SpectrumCurve::is_single_point() const noexcept {
  return weights_.max_weight() == weights_.min_positive_weight();
}

double SpectrumCurve::log_partition(double q) const { return log_sum_exp_scaled(ln_p_, q); }

double SpectrumCurve::T(double q) const { return -log_partition(q) / ln_b_; }

KappaTheta SpectrumCurve::at(double q) const {
  const double z = log_partition(q);
  double kappa = 0.0;
  double theta = 0.0;
  for (double lp : ln_p_) {
    const double log_pq = q * lp - z;
    const double pq = std::exp(log_pq);
    kappa -= pq * lp;
    theta -= pq * log_pq;
  }
  return {kappa / ln_b_, theta / ln_b_};
}

double SpectrumCurve::q_at_alpha(double alpha) const {
  if (is_single_point()) return 0.0;
  if (alpha <= alpha_min_) return std::numeric_limits<double>::infinity();
  if (alpha >= alpha_max_) return -std::numeric_limits<double>::infinity();

  double lo = -1.0;
  double hi = 1.0;
  while (at(lo).kappa < alpha) {
    if (lo < -kQCap) return -std::numeric_limits<double>::infinity();
    lo *= 2.0;
  }
  while (at(hi).kappa > alpha) {
    if (hi > kQCap) return std::numeric_limits<double>::infinity();
    hi *= 2.0;
  }
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < kMaxBisection; ++it) {
    mid = 0.5 * (lo + hi);
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mid))) break;
    if (at(mid).kappa > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

double SpectrumCurve::D(double alpha) const {
  if (is_dirac()) {
    if (std::abs(alpha) > kAlphaTolerance && std::abs(alpha - alpha_min_) > kAlphaTolerance) {
      throw Error(ErrorCode::AlphaOutOfRange, "alpha outside the spectrum of a Dirac mass", "alpha");
    }
    return 0.0;
  }
  if (!(alpha >= alpha_min_ - kAlphaTolerance && alpha <= alpha_max_ + kAlphaTolerance)) {
    throw Error(ErrorCode::AlphaOutOfRange, "alpha outside [alpha_min, alpha_max]", "alpha");
  }
  if (is_single_point()) return d_at_min_;
  if (alpha <= alpha_min_) return d_at_min_;
  if (alpha >= alpha_max_) return d_at_max_;
  const double q = q_at_alpha(alpha);
  if (std::isinf(q)) return q > 0 ? d_at_min_ : d_at_max_;
  // Legendre form is stationary at the root: error is second order in q.
  return q * alpha - T(q);
}

}  // namespace carpetdim
