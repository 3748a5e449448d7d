#pragma once

// Hausdorff content of stripes and b-adic rectangles intersected with the
// carpet, in the gauge restricted to b-adic covers (the content of the whole
// carpet is 1 for s <= s0). Values are computed in log space.

#include <cstddef>
#include <string_view>
#include <vector>

#include "carpetdim/carpet_model.hpp"
#include "carpetdim/dim_formulas.hpp"

namespace carpetdim {

/// Finite base-b digit string coding one coordinate.
struct DigitSequence {
  int base = 2;
  std::vector<int> digits;

  DigitSequence() = default;
  /// Throws InvalidArgument if a digit is outside 0..base-1.
  DigitSequence(int base, std::vector<int> digits);
  /// Parses "0121"; each character is one digit (0-9, then a-z for bases > 10).
  static DigitSequence parse(int base, std::string_view text);

  std::size_t size() const noexcept { return digits.size(); }
  std::string to_string() const;
};

struct ContentValue {
  double log_value = 0.0;  // natural log
  std::size_t argmin_k = 0;
  double value() const;
};

/// min_{0<=k<=n} b^{-k(s-s0)} prod_{i<=k} p_{y_i}. Throws SOutOfRange unless
/// 0 < s <= s0 and RowNotInCarpet when a digit names an empty row.
ContentValue stripe_content(const DigitPattern& pattern, double s, const DigitSequence& ydigits);

/// Content of I_n(x) x I_m(y), m >= n: b^{-ns} times the stripe content of
/// the y-digits n+1..m. Zero (log -inf) when a prefix cell (x_i, y_i) is not
/// in the pattern. Throws LengthMismatch when m < n.
ContentValue rectangle_content(const DigitPattern& pattern, double s, const DigitSequence& xdigits,
                               const DigitSequence& ydigits);

/// max{s tau1, s tau2 - (tau2 - tau1)(s0 - alpha_nu)}: the almost-sure
/// exponent (in r) of the content of rectangles r^tau1 x r^tau2.
double typical_content_exponent(const DigitPattern& pattern, double s, const Rates& rates, double alpha_nu);

/// I_{|x|}(x) x I_{|y|}(y); an empty x-sequence gives the full-width stripe.
struct BadicRegion {
  DigitSequence x;
  DigitSequence y;
  std::size_t generation() const noexcept { return std::max(x.size(), y.size()); }
};

enum class OracleMode {
  /// One state per generation: every cube of generation g meeting the
  /// region sees the same rescaled region.
  Memoized,
  /// Walks every pattern cube meeting the region, no symmetry assumed.
  Enumerate,
};

inline constexpr std::size_t kDefaultNodeBudget = 20'000'000;

/// Exact minimum of sum |D|^s over covers of region ∩ K by b-adic cubes of
/// generation <= max_gen (|D| = b^{-gen}). Throws BudgetExceeded when the
/// enumeration would visit more than node_budget cubes, InvalidArgument when
/// max_gen is below the region generation.
ContentValue exact_content_oracle(const DigitPattern& pattern, double s, const BadicRegion& region,
                                  std::size_t max_gen, OracleMode mode = OracleMode::Memoized,
                                  std::size_t node_budget = kDefaultNodeBudget);

}  // namespace carpetdim
