#include "carpetdim/dim_formulas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "carpetdim/error.hpp"

namespace carpetdim {

namespace {

constexpr double kRateSlack = 1e-12;
constexpr double kQCap = 1e6;
constexpr double kGoldenTolerance = 1e-10;

void check_cover_rates(double s0, const Rates& r) {
  if (!std::isfinite(r.tau1) || !std::isfinite(r.tau2) || r.tau1 <= 0.0) {
    throw Error(ErrorCode::RatesOutOfRange, "rates must be finite and positive", "tau1");
  }
  if (r.tau1 > r.tau2 * (1.0 + kRateSlack)) {
    throw Error(ErrorCode::RatesOutOfRange, "tau1 must not exceed tau2", "tau2");
  }
  if (!(s0 > 0.0) || r.tau1 * s0 < 1.0 - kRateSlack) {
    throw Error(ErrorCode::RatesOutOfRange, "tau1 must be at least 1/s0", "tau1");
  }
}

void check_tree_rates(const Rates& r) {
  if (!std::isfinite(r.tau1) || !std::isfinite(r.tau2) || r.tau1 < 1.0 - kRateSlack ||
      r.tau1 > r.tau2 * (1.0 + kRateSlack)) {
    throw Error(ErrorCode::RatesOutOfRange, "rates must satisfy 1 <= tau1 <= tau2", "tau1");
  }
}

double log_b(double x, int base) { return std::log(x) / std::log(static_cast<double>(base)); }

double frequency_exponent(int base, std::span<const std::int64_t> counts, const WeightVector& freq,
                          const char* field) {
  if (freq.size() != counts.size()) {
    throw Error(ErrorCode::InvalidWeights, "frequency vector length must equal the base", field);
  }
  const WeightVector projected = WeightVector::from_counts(counts);
  double alpha = 0.0;
  for (auto i : freq.support()) {
    if (counts[i] == 0) {
      throw Error(ErrorCode::UnsupportedRow, "frequency charges digit " + std::to_string(i) + " absent from the pattern",
                  field);
    }
    alpha -= freq[i] * log_b(projected[i], base);
  }
  return alpha;
}

}  // namespace

std::string_view to_string(CoverCase c) {
  switch (c) {
    case CoverCase::EqualRates: return "equal-rates";
    case CoverCase::HorizontalLine: return "horizontal-line";
    case CoverCase::VerticalLine: return "vertical-line";
    case CoverCase::UniformFibers: return "uniform-fibers";
    case CoverCase::Case1: return "case1";
    case CoverCase::Case2: return "case2";
    case CoverCase::Case3: return "case3";
  }
  return "unknown";
}

CarpetProjection::CarpetProjection(const DigitPattern& pattern)
    : pattern_(pattern), s0_(similarity_dimension(pattern)), spectrum_(row_weights(pattern), {}) {}

double CarpetProjection::kappa(double q) const { return spectrum_.at(q).kappa; }

double v_tau(const CarpetProjection& proj, const Rates& rates, double alpha) {
  const double tau = rates.tau();
  if (!(tau >= 1.0 - kRateSlack)) throw Error(ErrorCode::RatesOutOfRange, "v_tau needs tau >= 1", "tau2");
  return proj.s0() + (tau - 2.0) * alpha - (tau - 1.0) * proj.D(alpha);
}

double v_tau(const DigitPattern& pattern, const Rates& rates, double alpha) {
  return v_tau(CarpetProjection(pattern), rates, alpha);
}

std::optional<double> beta_solution(const CarpetProjection& proj, const Rates& rates) {
  const double tau = rates.tau();
  if (std::abs(tau - 1.0) <= kRateSlack) {
    throw Error(ErrorCode::TauDegenerate, "beta is undefined when tau1 == tau2", "tau2");
  }
  if (tau < 1.0) throw Error(ErrorCode::RatesOutOfRange, "beta needs tau2 > tau1", "tau2");
  const SpectrumCurve& sp = proj.spectrum();
  if (sp.is_single_point() || sp.is_dirac()) {
    throw Error(ErrorCode::DegenerateSpectrum, "projected spectrum is a single point", "pattern");
  }

  const double target = 1.0 / rates.tau1;
  const double s0 = proj.s0();
  // Along the branch alpha = kappa_q, q >= q*, v_tau(kappa_q) increases with q.
  auto branch = [&](double q) {
    const auto kt = sp.at(q);
    return s0 + (tau - 2.0) * kt.kappa - (tau - 1.0) * kt.theta;
  };
  const double q_star = (tau - 2.0) / (tau - 1.0);
  const double v_low = branch(q_star);
  const double v_high = s0 + (tau - 2.0) * sp.alpha_min() - (tau - 1.0) * sp.D(sp.alpha_min());
  const double slack = 1e-12;
  if (target < v_low - slack || target > v_high + slack) return std::nullopt;
  if (target <= v_low) return sp.at(q_star).kappa;

  double lo = q_star;
  double hi = std::max(q_star + 1.0, 1.0);
  while (branch(hi) < target) {
    if (hi > kQCap) return sp.alpha_min();
    lo = hi;
    hi *= 2.0;
  }
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 300; ++it) {
    mid = 0.5 * (lo + hi);
    const double f = branch(mid);
    if (std::abs(f - target) <= 1e-14) break;
    if (f < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mid))) break;
  }
  return sp.at(mid).kappa;
}

std::optional<double> beta_solution(const DigitPattern& pattern, const Rates& rates) {
  return beta_solution(CarpetProjection(pattern), rates);
}

double s_alpha(const CarpetProjection& proj, const Rates& rates, double alpha) {
  const double d = proj.D(alpha);
  const double gap = rates.tau2 - rates.tau1;
  const double first = (1.0 - gap * (alpha - d)) / rates.tau1;
  const double second = (1.0 + gap * (proj.s0() - 2.0 * alpha + d)) / rates.tau2;
  return std::min(first, second);
}

double s_alpha(const DigitPattern& pattern, const Rates& rates, double alpha) {
  return s_alpha(CarpetProjection(pattern), rates, alpha);
}

CoverDimension random_cover_dimension(const DigitPattern& pattern, const Rates& rates) {
  const CarpetProjection proj(pattern);
  const double s0 = proj.s0();
  check_cover_rates(s0, rates);

  const auto kt2 = proj.spectrum().at(2.0);
  CoverDimension out;
  out.s0 = s0;
  out.kappa1 = proj.kappa(1.0);
  out.kappa2 = kt2.kappa;

  const double inv = 1.0 / rates.tau1;
  if (rates.tau1 == rates.tau2) {
    out.dimension = inv;
    out.cover_case = CoverCase::EqualRates;
    return out;
  }
  if (pattern.is_horizontal_line()) {
    out.dimension = inv;
    out.cover_case = CoverCase::HorizontalLine;
    return out;
  }
  if (pattern.is_vertical_line()) {
    out.dimension = 1.0 / rates.tau2;
    out.cover_case = CoverCase::VerticalLine;
    return out;
  }
  if (proj.spectrum().is_single_point()) {
    const double d = out.kappa1;
    out.dimension = std::min(inv, (1.0 + (rates.tau2 - rates.tau1) * (s0 - d)) / rates.tau2);
    out.cover_case = CoverCase::UniformFibers;
    return out;
  }

  const double tau = rates.tau();
  const double lower = s0 - out.kappa1;  // = v_tau(kappa_1) since D(kappa_1) = kappa_1
  const double upper = s0 + (tau - 2.0) * kt2.kappa - (tau - 1.0) * kt2.theta;
  if (inv <= lower + kCaseTolerance) {
    out.dimension = inv;
    out.cover_case = CoverCase::Case1;
  } else if (inv >= upper - kCaseTolerance) {
    out.dimension = (1.0 + (rates.tau2 - rates.tau1) * (s0 - 2.0 * kt2.kappa + kt2.theta)) / rates.tau2;
    out.cover_case = CoverCase::Case3;
  } else {
    const auto beta = beta_solution(proj, rates);
    if (!beta) throw std::logic_error("beta missing strictly inside the middle case");
    out.beta = beta;
    out.dimension = inv - (tau - 1.0) * (*beta - proj.D(*beta));
    out.cover_case = CoverCase::Case2;
  }
  return out;
}

double random_cover_dimension_sup(const DigitPattern& pattern, const Rates& rates, std::size_t gridsize,
                                  Execution exec) {
  if (gridsize < 2) throw Error(ErrorCode::InvalidArgument, "gridsize must be at least 2", "gridsize");
  const CarpetProjection proj(pattern);
  check_cover_rates(proj.s0(), rates);
  const SpectrumCurve& sp = proj.spectrum();
  auto s_of = [&](double a) { return s_alpha(proj, rates, a); };

  if (sp.is_dirac()) return s_of(0.0);
  if (sp.is_single_point()) return s_of(sp.alpha_min());

  const double lo = sp.alpha_min();
  const double hi = sp.alpha_max();
  std::vector<double> grid(gridsize);
  for (std::size_t i = 0; i < gridsize; ++i) {
    grid[i] = i + 1 == gridsize ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(gridsize - 1);
  }
  const auto best = kernels::grid_argmax(grid, s_of, exec);

  // s_alpha is concave (min of two concave maps), so the max lies within one
  // grid step of the best grid point.
  double a = grid[best.index == 0 ? 0 : best.index - 1];
  double b = grid[std::min(best.index + 1, gridsize - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = s_of(c);
  double fd = s_of(d);
  while (b - a > kGoldenTolerance) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = s_of(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = s_of(d);
    }
  }
  return std::max({best.value, fc, fd, s_of(0.5 * (a + b))});
}

double alpha_of_row_frequencies(const DigitPattern& pattern, const WeightVector& freq) {
  return frequency_exponent(pattern.base(), pattern.row_counts(), freq, "freq");
}

double alpha_of_column_frequencies(const DigitPattern& pattern, const WeightVector& freq) {
  return frequency_exponent(pattern.base(), pattern.column_counts(), freq, "freq");
}

double shrinking_target_dimension(double dim_mu, double s0, double alpha_nu, const Rates& rates) {
  check_tree_rates(rates);
  if (!(dim_mu >= -kRateSlack && dim_mu <= s0 + kRateSlack)) {
    throw Error(ErrorCode::InvalidArgument, "dim_mu must lie in [0, s0]", "dim_mu");
  }
  return std::min(dim_mu / rates.tau1, (dim_mu + (rates.tau2 - rates.tau1) * (s0 - alpha_nu)) / rates.tau2);
}

GeneralRateDimension general_rate_dimension(const RateSequences& seqs, double s0, double alpha_nu, double beta_nu,
                                            bool swap_partition) {
  if (seqs.a.size() != seqs.c.size()) {
    throw Error(ErrorCode::InvalidArgument, "rate sequences differ in length", "rates");
  }
  if (seqs.horizon() == 0) throw Error(ErrorCode::EmptyHorizon, "rate sequences are empty", "rates");

  constexpr double kNone = -std::numeric_limits<double>::infinity();
  GeneralRateDimension out{kNone, kNone, kNone, 0};
  std::size_t arg1 = 0;
  std::size_t arg2 = 0;
  for (std::size_t i = 0; i < seqs.horizon(); ++i) {
    const double a = seqs.a[i];
    const double c = seqs.c[i];
    if (!(a >= 1.0 - kRateSlack) || !(c >= 1.0 - kRateSlack)) {
      throw Error(ErrorCode::InvalidArgument, "rate exponents must be >= 1 (row " + std::to_string(i + 1) + ")",
                  "rates");
    }
    const bool first_set = swap_partition ? (a >= c) : (a <= c);
    if (first_set) {
      const double g = std::min(s0 / a, (s0 + (c - a) * (s0 - alpha_nu)) / c);
      if (g > out.g1) {
        out.g1 = g;
        arg1 = i + 1;
      }
    } else {
      const double g = std::min(s0 / c, (s0 + (a - c) * (s0 - beta_nu)) / a);
      if (g > out.g2) {
        out.g2 = g;
        arg2 = i + 1;
      }
    }
  }
  if (out.g1 >= out.g2) {
    out.dimension = out.g1;
    out.argmax_n = arg1;
  } else {
    out.dimension = out.g2;
    out.argmax_n = arg2;
  }
  return out;
}

WeightVector row_marginal(const DigitPattern& pattern, const WeightVector& p) {
  if (p.size() != pattern.size()) {
    throw Error(ErrorCode::WeightOffPattern, "weight vector length must equal the number of cells", "p");
  }
  std::vector<double> rows(static_cast<std::size_t>(pattern.base()), 0.0);
  const auto cells = pattern.cells();
  for (std::size_t k = 0; k < cells.size(); ++k) rows[static_cast<std::size_t>(cells[k].y)] += p[k];
  return WeightVector(std::move(rows));
}

double digit_frequency_dimension(const DigitPattern& pattern, const WeightVector& p, const Rates& rates,
                                 double alpha_nu) {
  if (p.size() != pattern.size()) {
    throw Error(ErrorCode::WeightOffPattern, "weight vector length must equal the number of cells", "p");
  }
  double dim_mu = 0.0;
  for (auto k : p.support()) dim_mu -= p[k] * log_b(p[k], pattern.base());
  return shrinking_target_dimension(dim_mu, similarity_dimension(pattern), alpha_nu, rates);
}

}  // namespace carpetdim
