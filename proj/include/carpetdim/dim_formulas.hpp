#pragma once

// Closed-form Hausdorff dimensions for rectangle limsup sets on missing-digit
// carpets: random covering, shrinking targets, general rate functions and
// digit-frequency constrained approximation.

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "carpetdim/carpet_model.hpp"
#include "carpetdim/kernels.hpp"
#include "carpetdim/multifractal.hpp"
#include "carpetdim/weight_vector.hpp"

namespace carpetdim {

inline constexpr double kCaseTolerance = 1e-9;
inline constexpr std::size_t kDefaultSupGrid = 4097;

/// Approximation rates: rectangles of side r^tau1 along x and r^tau2 along y.
struct Rates {
  double tau1 = 1.0;
  double tau2 = 1.0;
  double tau() const noexcept { return tau2 / tau1; }
};

enum class CoverCase { EqualRates, HorizontalLine, VerticalLine, UniformFibers, Case1, Case2, Case3 };

std::string_view to_string(CoverCase c);

/// Projection data shared by the random-covering formulas: s0 and the
/// spectrum of the projection of the uniform measure onto the y-axis.
class CarpetProjection {
 public:
  explicit CarpetProjection(const DigitPattern& pattern);

  const DigitPattern& pattern() const noexcept { return pattern_; }
  double s0() const noexcept { return s0_; }
  const SpectrumCurve& spectrum() const noexcept { return spectrum_; }
  /// D of the projected measure; Dirac convention D(0) = 0.
  double D(double alpha) const { return spectrum_.D(alpha); }
  double kappa(double q) const;
  /// dim of the projected measure (kappa_1); 0 for a Dirac mass.
  double projected_dimension() const { return kappa(1.0); }

 private:
  DigitPattern pattern_;
  double s0_;
  SpectrumCurve spectrum_;
};

/// v_tau(alpha) = s0 + (tau - 2) alpha - (tau - 1) D(alpha).
double v_tau(const DigitPattern& pattern, const Rates& rates, double alpha);
double v_tau(const CarpetProjection& proj, const Rates& rates, double alpha);

/// Root of v_tau(alpha) = 1/tau1 on the non-increasing branch
/// alpha <= kappa_{(tau-2)/(tau-1)}; nullopt when 1/tau1 is outside the
/// branch's range. Throws TauDegenerate when tau == 1 and
/// DegenerateSpectrum when the projected spectrum is a single point.
std::optional<double> beta_solution(const DigitPattern& pattern, const Rates& rates);
std::optional<double> beta_solution(const CarpetProjection& proj, const Rates& rates);

/// s_alpha = min{(1 - (tau2-tau1)(alpha - D)) / tau1, (1 + (tau2-tau1)(s0 - 2 alpha + D)) / tau2}.
double s_alpha(const DigitPattern& pattern, const Rates& rates, double alpha);
double s_alpha(const CarpetProjection& proj, const Rates& rates, double alpha);

struct CoverDimension {
  double dimension = 0.0;
  CoverCase cover_case = CoverCase::Case1;
  std::optional<double> beta;
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double s0 = 0.0;
};

/// Three-case closed form for the random (or orbit) covering by rectangles.
/// Requires 1/s0 <= tau1 <= tau2 (RatesOutOfRange otherwise).
CoverDimension random_cover_dimension(const DigitPattern& pattern, const Rates& rates);

/// max of s_alpha over the projected spectrum: uniform grid followed by a
/// golden-section refinement (s_alpha is concave in alpha). Independent of
/// the case analysis in random_cover_dimension.
double random_cover_dimension_sup(const DigitPattern& pattern, const Rates& rates,
                                  std::size_t gridsize = kDefaultSupGrid,
                                  Execution exec = Execution::Parallel);

/// alpha_nu = -sum_i freq_i log_b p_i for a row-frequency vector freq.
/// Throws UnsupportedRow if freq charges a row absent from the pattern.
double alpha_of_row_frequencies(const DigitPattern& pattern, const WeightVector& freq);
/// Column analogue (beta_nu), using the x-axis projection.
double alpha_of_column_frequencies(const DigitPattern& pattern, const WeightVector& freq);

/// min{dim_mu / tau1, (dim_mu + (tau2 - tau1)(s0 - alpha_nu)) / tau2}, 1 <= tau1 <= tau2.
double shrinking_target_dimension(double dim_mu, double s0, double alpha_nu, const Rates& rates);

/// a_n = log psi(n) / (-n log b), c_n = log theta(n) / (-n log b), n = 1..N.
struct RateSequences {
  std::vector<double> a;
  std::vector<double> c;
  std::size_t horizon() const noexcept { return a.size(); }
};

struct GeneralRateDimension {
  double dimension = 0.0;
  /// -infinity when the corresponding index set is empty.
  double g1 = 0.0;
  double g2 = 0.0;
  /// 1-based index attaining the overall max.
  std::size_t argmax_n = 0;
};

/// Finite-horizon evaluation of max{g1, g2}: the limsup over each index set
/// is replaced by the max over n <= horizon. n belongs to the first set when
/// a_n <= c_n (psi(n) >= theta(n)); swap_partition inverts that test.
GeneralRateDimension general_rate_dimension(const RateSequences& seqs, double s0, double alpha_nu, double beta_nu,
                                            bool swap_partition = false);

/// Entropy dimension -sum p_k log_b p_k of the self-similar measure with
/// weights p over the pattern's cells (ordered as pattern.cells()), fed into
/// shrinking_target_dimension. Throws WeightOffPattern on a size mismatch.
double digit_frequency_dimension(const DigitPattern& pattern, const WeightVector& p, const Rates& rates,
                                 double alpha_nu);

/// Row marginal of a weight vector over cells: sums p over each row.
WeightVector row_marginal(const DigitPattern& pattern, const WeightVector& p);

}  // namespace carpetdim
