#include "carpetdim/content.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "carpetdim/error.hpp"

namespace carpetdim {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_s(double s, double s0) {
  if (!(s > 0.0) || s > s0 + 1e-12) {
    throw Error(ErrorCode::SOutOfRange, "s must satisfy 0 < s <= s0", "s");
  }
}

void check_base(const DigitPattern& pattern, const DigitSequence& seq, const char* field) {
  if (seq.base != pattern.base()) {
    throw Error(ErrorCode::InvalidArgument, "digit sequence base differs from the pattern base", field);
  }
}

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// Stripe formula on digits[from, to).
ContentValue stripe_formula(const DigitPattern& pattern, double s, const std::vector<int>& digits, std::size_t from,
                            std::size_t to) {
  const double ln_b = std::log(static_cast<double>(pattern.base()));
  const double s0 = similarity_dimension(pattern);
  const auto rows = pattern.row_counts();
  const double total = static_cast<double>(pattern.size());
  ContentValue best{0.0, 0};
  double acc = 0.0;
  for (std::size_t i = from; i < to; ++i) {
    const auto count = rows[static_cast<std::size_t>(digits[i])];
    if (count == 0) {
      throw Error(ErrorCode::RowNotInCarpet, "row " + std::to_string(digits[i]) + " holds no cells", "ydigits");
    }
    acc += -(s - s0) * ln_b + std::log(static_cast<double>(count) / total);
    if (acc < best.log_value) best = {acc, i - from + 1};
  }
  return best;
}

// Digit-prefix test: does the generation-g cube with integer coordinate
// `coord` meet the b-adic interval coded by `digits`?
class PrefixTest {
 public:
  PrefixTest(int base, const std::vector<int>& digits) : base_(base), len_(digits.size()) {
    value_ = 0;
    for (int d : digits) value_ = value_ * static_cast<unsigned long long>(base) + static_cast<unsigned long long>(d);
  }

  bool meets(std::size_t g, unsigned long long coord) const {
    if (g >= len_) return shift(coord, g - len_) == value_;
    return shift(value_, len_ - g) == coord;
  }

 private:
  unsigned long long shift(unsigned long long v, std::size_t k) const {
    for (std::size_t i = 0; i < k; ++i) v /= static_cast<unsigned long long>(base_);
    return v;
  }
  int base_;
  std::size_t len_;
  unsigned long long value_;
};

struct Enumerator {
  const DigitPattern& pattern;
  double s_ln_b;
  std::size_t max_gen;
  PrefixTest xs;
  PrefixTest ys;
  std::size_t budget;
  std::size_t visited = 0;

  // log cost of covering (cube ∩ region ∩ K); -inf when empty.
  double cost(std::size_t g, unsigned long long cx, unsigned long long cy) {
    if (++visited > budget) throw Error(ErrorCode::BudgetExceeded, "oracle node budget exhausted", "max_gen");
    const double own = -static_cast<double>(g) * s_ln_b;
    if (g == max_gen) return own;
    double children = kNegInf;
    const auto b = static_cast<unsigned long long>(pattern.base());
    for (const auto& cell : pattern.cells()) {
      const auto nx = cx * b + static_cast<unsigned long long>(cell.x);
      const auto ny = cy * b + static_cast<unsigned long long>(cell.y);
      if (!xs.meets(g + 1, nx) || !ys.meets(g + 1, ny)) continue;
      children = log_add(children, cost(g + 1, nx, ny));
    }
    if (children == kNegInf) return kNegInf;
    return std::min(own, children);
  }
};

}  // namespace

DigitSequence::DigitSequence(int b, std::vector<int> d) : base(b), digits(std::move(d)) {
  for (int x : digits) {
    if (x < 0 || x >= base) throw Error(ErrorCode::InvalidArgument, "digit out of range for base", "digits");
  }
}

DigitSequence DigitSequence::parse(int base, std::string_view text) {
  std::vector<int> digits;
  digits.reserve(text.size());
  for (char ch : text) {
    int v = -1;
    if (ch >= '0' && ch <= '9') v = ch - '0';
    else if (ch >= 'a' && ch <= 'z') v = 10 + (ch - 'a');
    else if (ch >= 'A' && ch <= 'Z') v = 10 + (ch - 'A');
    if (v < 0 || v >= base) {
      throw Error(ErrorCode::InvalidArgument, std::string("invalid digit '") + ch + "' for base " + std::to_string(base),
                  "digits");
    }
    digits.push_back(v);
  }
  return DigitSequence(base, std::move(digits));
}

std::string DigitSequence::to_string() const {
  std::string out;
  for (int d : digits) out.push_back(d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + d - 10));
  return out;
}

double ContentValue::value() const { return std::exp(log_value); }

ContentValue stripe_content(const DigitPattern& pattern, double s, const DigitSequence& ydigits) {
  check_s(s, similarity_dimension(pattern));
  check_base(pattern, ydigits, "ydigits");
  return stripe_formula(pattern, s, ydigits.digits, 0, ydigits.size());
}

ContentValue rectangle_content(const DigitPattern& pattern, double s, const DigitSequence& xdigits,
                               const DigitSequence& ydigits) {
  check_s(s, similarity_dimension(pattern));
  check_base(pattern, xdigits, "xdigits");
  check_base(pattern, ydigits, "ydigits");
  if (ydigits.size() < xdigits.size()) {
    throw Error(ErrorCode::LengthMismatch, "y-digit string shorter than x-digit string", "ydigits");
  }
  const std::size_t n = xdigits.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!pattern.contains(xdigits.digits[i], ydigits.digits[i])) return {kNegInf, 0};
  }
  const double ln_b = std::log(static_cast<double>(pattern.base()));
  auto tail = stripe_formula(pattern, s, ydigits.digits, n, ydigits.size());
  tail.log_value -= static_cast<double>(n) * s * ln_b;
  return tail;
}

double typical_content_exponent(const DigitPattern& pattern, double s, const Rates& rates, double alpha_nu) {
  const double s0 = similarity_dimension(pattern);
  if (!(s >= 0.0) || s > s0 + 1e-12) throw Error(ErrorCode::SOutOfRange, "s must satisfy 0 <= s <= s0", "s");
  return std::max(s * rates.tau1, s * rates.tau2 - (rates.tau2 - rates.tau1) * (s0 - alpha_nu));
}

ContentValue exact_content_oracle(const DigitPattern& pattern, double s, const BadicRegion& region,
                                  std::size_t max_gen, OracleMode mode, std::size_t node_budget) {
  check_s(s, similarity_dimension(pattern));
  if (!region.x.digits.empty()) check_base(pattern, region.x, "xdigits");
  if (!region.y.digits.empty()) check_base(pattern, region.y, "ydigits");
  if (max_gen < region.generation()) {
    throw Error(ErrorCode::InvalidArgument, "max_gen is below the region generation", "max_gen");
  }
  const int b = pattern.base();
  const double ln_b = std::log(static_cast<double>(b));
  const double s_ln_b = s * ln_b;

  if (mode == OracleMode::Memoized) {
    // cost[g] = min(b^{-g s}, count(g+1) * cost[g+1]), count = children meeting the region.
    double next = -static_cast<double>(max_gen) * s_ln_b;
    for (std::size_t g = max_gen; g-- > 0;) {
      std::int64_t count = 0;
      for (const auto& cell : pattern.cells()) {
        const bool x_ok = g >= region.x.size() || cell.x == region.x.digits[g];
        const bool y_ok = g >= region.y.size() || cell.y == region.y.digits[g];
        if (x_ok && y_ok) ++count;
      }
      if (count == 0 || next == kNegInf) {
        next = kNegInf;
        continue;
      }
      const double own = -static_cast<double>(g) * s_ln_b;
      next = std::min(own, std::log(static_cast<double>(count)) + next);
    }
    return {next, 0};
  }

  // b^max_gen must fit the integer cube coordinates.
  const double bits = static_cast<double>(max_gen) * std::log2(static_cast<double>(b));
  if (bits > 62.0) throw Error(ErrorCode::BudgetExceeded, "max_gen too deep for enumeration", "max_gen");
  Enumerator walk{pattern, s_ln_b, max_gen, PrefixTest(b, region.x.digits), PrefixTest(b, region.y.digits),
                  node_budget};
  return {walk.cost(0, 0, 0), 0};
}

}  // namespace carpetdim
