#include "carpetdim/simulator.hpp"

#include <cmath>
#include <limits>

#include "carpetdim/error.hpp"
#include "carpetdim/rng.hpp"

namespace carpetdim {

namespace {

constexpr std::uint64_t kMinSamples = 1024;

double fit_slope(std::span<const int> ks, std::span<const double> ys) {
  const auto n = static_cast<double>(ks.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    mx += ks[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    sxy += (ks[i] - mx) * (ys[i] - my);
    sxx += (ks[i] - mx) * (ks[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace

SampleSource SampleSource::iid(std::uint64_t seed) { return SampleSource(SampleMode::Iid, seed); }

SampleSource SampleSource::orbit(std::uint64_t seed) { return SampleSource(SampleMode::Orbit, seed); }

SampleSource SampleSource::orbit_from_cells(std::vector<Cell> cells) {
  SampleSource src(SampleMode::Orbit, 0);
  src.user_cells_ = std::make_shared<const std::vector<Cell>>(std::move(cells));
  return src;
}

std::size_t SampleSource::cell_index(const DigitPattern& pattern, std::uint64_t n, std::size_t i) const {
  const auto cells = static_cast<std::uint32_t>(pattern.size());
  if (mode_ == SampleMode::Iid) {
    return rng::bounded(rng::stream_word(seed_, n, i), cells);
  }
  const std::uint64_t pos = n + i;
  if (user_cells_) {
    if (pos >= user_cells_->size()) {
      throw Error(ErrorCode::InvalidArgument, "user orbit stream is too short", "orbit");
    }
    const auto& c = (*user_cells_)[pos];
    const int idx = pattern.index_of(c.x, c.y);
    if (idx < 0) throw Error(ErrorCode::InvalidArgument, "user orbit leaves the carpet", "orbit");
    return static_cast<std::size_t>(idx);
  }
  return rng::bounded(rng::stream_word(seed_, 0, pos), cells);
}

std::pair<DigitSequence, DigitSequence> sample_point(const DigitPattern& pattern, const SampleSource& source,
                                                     std::uint64_t n, std::size_t depth) {
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "depth must be at least 1", "depth");
  std::vector<int> xs(depth);
  std::vector<int> ys(depth);
  const auto cells = pattern.cells();
  for (std::size_t i = 0; i < depth; ++i) {
    const auto& c = cells[source.cell_index(pattern, n, i)];
    xs[i] = c.x;
    ys[i] = c.y;
  }
  return {DigitSequence{pattern.base(), std::move(xs)}, DigitSequence{pattern.base(), std::move(ys)}};
}

RectangleGeometry rectangle_geometry(int base, const Rates& rates, std::uint64_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "sample index must be at least 2", "n");
  const double logn = std::log(static_cast<double>(n)) / std::log(static_cast<double>(base));
  const auto m = static_cast<std::size_t>(std::max(1.0, std::ceil(rates.tau1 * logn - 1e-9)));
  const auto y = static_cast<std::size_t>(std::floor(static_cast<double>(m) * rates.tau() + 1e-9));
  return {m, std::max(m, y)};
}

double rectangle_content_at(const DigitPattern& pattern, double s, const Rates& rates, const SampleSource& source,
                            std::uint64_t n) {
  const auto geo = rectangle_geometry(pattern.base(), rates, n);
  const auto depth = static_cast<std::size_t>(std::ceil(rates.tau() * static_cast<double>(geo.x_generation))) + 1;
  auto [xs, ys] = sample_point(pattern, source, n, std::max(depth, geo.y_generation));
  xs.digits.resize(geo.x_generation);
  ys.digits.resize(geo.y_generation);
  return rectangle_content(pattern, s, xs, ys).value();
}

ContentSeries::ContentSeries(const DigitPattern& pattern, const Rates& rates, const SampleSource& source,
                             std::uint64_t N, EstimatorOptions options)
    : options_(options) {
  if (N < kMinSamples) throw Error(ErrorCode::InvalidArgument, "N must be at least 2^10", "N");
  if (pattern.base() > 256) throw Error(ErrorCode::InvalidArgument, "sampler supports bases up to 256", "pattern");
  if (!(rates.tau1 > 0.0) || rates.tau2 < rates.tau1) {
    throw Error(ErrorCode::RatesOutOfRange, "rates must satisfy 0 < tau1 <= tau2", "tau1");
  }

  // complete dyadic blocks k = 1..K-1, block k = [2^k, 2^{k+1})
  int top = 1;
  while ((std::uint64_t{1} << (top + 1)) <= N) ++top;
  const std::uint64_t n_end = std::uint64_t{1} << top;
  const std::size_t count = static_cast<std::size_t>(n_end - 2);

  batch_.s0 = similarity_dimension(pattern);
  batch_.ln_b = std::log(static_cast<double>(pattern.base()));
  const auto rows = row_weights(pattern);
  batch_.log_weight.assign(static_cast<std::size_t>(pattern.base()), 0.0);
  for (auto r : rows.support()) batch_.log_weight[r] = std::log(rows[r]) / batch_.ln_b;

  batch_.m.resize(count);
  batch_.offset.resize(count + 1);
  batch_.offset[0] = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const auto geo = rectangle_geometry(pattern.base(), rates, i + 2);
    batch_.m[i] = static_cast<std::uint32_t>(geo.x_generation);
    batch_.offset[i + 1] = batch_.offset[i] + (geo.y_generation - geo.x_generation);
  }
  batch_.rows.resize(batch_.offset[count]);
  const auto cells = pattern.cells();
  const auto total = static_cast<std::ptrdiff_t>(count);
  auto fill = [&](std::ptrdiff_t i) {
    const auto u = static_cast<std::size_t>(i);
    const std::size_t m = batch_.m[u];
    for (std::size_t j = batch_.offset[u]; j < batch_.offset[u + 1]; ++j) {
      const auto pos = m + (j - batch_.offset[u]);
      batch_.rows[j] = static_cast<std::uint8_t>(cells[source.cell_index(pattern, u + 2, pos)].y);
    }
  };
  if (options_.exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < total; ++i) fill(i);
  } else {
    for (std::ptrdiff_t i = 0; i < total; ++i) fill(i);
  }

  for (int k = 1; k < top; ++k) {
    block_k_.push_back(k);
    block_offsets_.push_back((std::uint64_t{1} << k) - 2);
  }
  block_offsets_.push_back(count);

  const std::size_t blocks = block_k_.size();
  if (blocks <= options_.burn_in_blocks + 1) {
    throw Error(ErrorCode::InvalidArgument, "not enough dyadic blocks after burn-in", "N");
  }
  fit_end_ = blocks;
  fit_begin_ = std::max(options_.burn_in_blocks, blocks - std::min(options_.fit_blocks, blocks));
}

BlockSums ContentSeries::at(double s) const {
  std::vector<double> contents(batch_.size());
  kernels::batch_contents(batch_, s, contents, options_.exec);
  const auto sums = kernels::block_sums(contents, block_offsets_, options_.exec);
  BlockSums out;
  out.s = s;
  out.k = block_k_;
  out.log2_sum.resize(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) out.log2_sum[i] = std::log2(sums[i]);
  out.slope = fit_slope(std::span<const int>(out.k).subspan(fit_begin_, fit_end_ - fit_begin_),
                        std::span<const double>(out.log2_sum).subspan(fit_begin_, fit_end_ - fit_begin_));
  return out;
}

CriticalExponent estimate_critical_exponent(const DigitPattern& pattern, const Rates& rates,
                                            const SampleSource& source, std::uint64_t N,
                                            std::pair<double, double> s_bracket, EstimatorOptions options) {
  auto [lo, hi] = s_bracket;
  const double s0 = similarity_dimension(pattern);
  if (!(lo > 0.0) || !(lo < hi) || hi > s0 + 1e-12) {
    throw Error(ErrorCode::SOutOfRange, "bracket must satisfy 0 < lo < hi <= s0", "s_bracket");
  }
  const ContentSeries series(pattern, rates, source, N, options);

  CriticalExponent out;
  auto lo_sums = series.at(lo);
  auto hi_sums = series.at(hi);
  const bool straddles = lo_sums.slope > 0.0 && hi_sums.slope < 0.0;
  out.trace.push_back(std::move(lo_sums));
  out.trace.push_back(std::move(hi_sums));
  if (!straddles) {
    throw Error(ErrorCode::BracketNotStraddling, "block-sum slope has the same sign at both bracket ends",
                "s_bracket");
  }
  for (int it = 0; it < options.max_iterations && hi - lo > options.tolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    auto sums = series.at(mid);
    if (sums.slope > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    out.trace.push_back(std::move(sums));
  }
  out.s_star = 0.5 * (lo + hi);
  return out;
}

}  // namespace carpetdim
