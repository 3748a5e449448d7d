#pragma once

// Monte Carlo counterpart of the random covering theorem: samples centres
// (i.i.d. from the uniform measure on the carpet, or along a x b orbit),
// evaluates the content of each shrinking rectangle and locates the critical
// exponent where the content series switches from divergence to convergence.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "carpetdim/carpet_model.hpp"
#include "carpetdim/content.hpp"
#include "carpetdim/dim_formulas.hpp"
#include "carpetdim/kernels.hpp"

namespace carpetdim {

enum class SampleMode { Iid, Orbit };

class SampleSource {
 public:
  static SampleSource iid(std::uint64_t seed);
  /// Orbit of a base point drawn from the uniform measure on the carpet.
  static SampleSource orbit(std::uint64_t seed);
  /// Orbit of a user-supplied base point (finite cell stream).
  static SampleSource orbit_from_cells(std::vector<Cell> cells);

  SampleMode mode() const noexcept { return mode_; }
  std::uint64_t seed() const noexcept { return seed_; }

  /// Index into pattern.cells() of digit position i (0-based) of sample n.
  /// IID: stream n; orbit: position n + i of the base point.
  std::size_t cell_index(const DigitPattern& pattern, std::uint64_t n, std::size_t i) const;

 private:
  SampleSource(SampleMode mode, std::uint64_t seed) : mode_(mode), seed_(seed) {}

  SampleMode mode_;
  std::uint64_t seed_;
  std::shared_ptr<const std::vector<Cell>> user_cells_;
};

/// x- and y-digit strings of length depth for sample n.
std::pair<DigitSequence, DigitSequence> sample_point(const DigitPattern& pattern, const SampleSource& source,
                                                     std::uint64_t n, std::size_t depth);

struct RectangleGeometry {
  std::size_t x_generation = 0;  // m = ceil(tau1 log_b n)
  std::size_t y_generation = 0;  // floor(m tau)
};

RectangleGeometry rectangle_geometry(int base, const Rates& rates, std::uint64_t n);

/// Content of the b-adic rectangle I_m x I_{floor(m tau)} containing sample n.
double rectangle_content_at(const DigitPattern& pattern, double s, const Rates& rates, const SampleSource& source,
                            std::uint64_t n);

/// Dyadic block sums of the content series at one exponent s.
struct BlockSums {
  double s = 0.0;
  std::vector<int> k;               // block index: n in [2^k, 2^{k+1})
  std::vector<double> log2_sum;     // log2 of the block sum
  double slope = 0.0;               // least-squares slope over the fitted blocks
};

struct EstimatorOptions {
  std::size_t burn_in_blocks = 4;
  std::size_t fit_blocks = 8;
  double tolerance = 1e-6;
  int max_iterations = 60;
  Execution exec = Execution::Parallel;
};

struct CriticalExponent {
  double s_star = 0.0;
  /// Block sums at every exponent evaluated (bracket ends first).
  std::vector<BlockSums> trace;
};

/// Precomputed samples n = 2..N-1; evaluates the block-sum slope at any s.
class ContentSeries {
 public:
  ContentSeries(const DigitPattern& pattern, const Rates& rates, const SampleSource& source, std::uint64_t N,
                EstimatorOptions options = {});

  BlockSums at(double s) const;
  std::size_t fitted_blocks() const noexcept { return fit_end_ - fit_begin_; }

 private:
  kernels::ContentBatch batch_;
  std::vector<std::size_t> block_offsets_;
  std::vector<int> block_k_;
  std::size_t fit_begin_ = 0;
  std::size_t fit_end_ = 0;
  EstimatorOptions options_;
};

/// Bisects on s for a zero block-sum slope. Requires N >= 2^10 and
/// 0 < lo < hi <= s0; throws BracketNotStraddling when the slope has the same
/// sign at both ends.
CriticalExponent estimate_critical_exponent(const DigitPattern& pattern, const Rates& rates,
                                            const SampleSource& source, std::uint64_t N,
                                            std::pair<double, double> s_bracket, EstimatorOptions options = {});

}  // namespace carpetdim
