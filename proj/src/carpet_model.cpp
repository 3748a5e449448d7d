#include "carpetdim/carpet_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "carpetdim/error.hpp"

namespace carpetdim {

namespace {

std::size_t count_nonzero(std::span<const std::int64_t> counts) {
  return static_cast<std::size_t>(
      std::count_if(counts.begin(), counts.end(), [](std::int64_t c) { return c > 0; }));
}

}  // namespace

DigitPattern::DigitPattern(int base, std::vector<Cell> cells) : base_(base), cells_(std::move(cells)) {
  if (base_ < 2) {
    throw Error(ErrorCode::BaseTooSmall, "base must be at least 2", "base");
  }
  if (cells_.empty()) {
    throw Error(ErrorCode::EmptyPattern, "pattern has no cells", "cells");
  }
  for (const auto& c : cells_) {
    if (c.x < 0 || c.y < 0 || c.x >= base_ || c.y >= base_) {
      throw Error(ErrorCode::OutOfRangeCell,
                  "cell (" + std::to_string(c.x) + "," + std::to_string(c.y) +
                      ") outside 0.." + std::to_string(base_ - 1),
                  "cells");
    }
  }
  std::sort(cells_.begin(), cells_.end());
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());

  row_counts_.assign(static_cast<std::size_t>(base_), 0);
  column_counts_.assign(static_cast<std::size_t>(base_), 0);
  for (const auto& c : cells_) {
    ++row_counts_[static_cast<std::size_t>(c.y)];
    ++column_counts_[static_cast<std::size_t>(c.x)];
  }
}

DigitPattern DigitPattern::full(int base) {
  std::vector<Cell> cells;
  for (int x = 0; x < base; ++x)
    for (int y = 0; y < base; ++y) cells.push_back({x, y});
  return DigitPattern(base, std::move(cells));
}

bool DigitPattern::contains(int x, int y) const noexcept { return index_of(x, y) >= 0; }

int DigitPattern::index_of(int x, int y) const noexcept {
  const Cell key{x, y};
  auto it = std::lower_bound(cells_.begin(), cells_.end(), key);
  if (it == cells_.end() || *it != key) return -1;
  return static_cast<int>(it - cells_.begin());
}

bool DigitPattern::is_horizontal_line() const noexcept { return count_nonzero(row_counts_) == 1; }

bool DigitPattern::is_vertical_line() const noexcept { return count_nonzero(column_counts_) == 1; }

Degeneracy DigitPattern::degeneracy() const noexcept {
  if (is_horizontal_line()) return Degeneracy::HorizontalLine;
  if (is_vertical_line()) return Degeneracy::VerticalLine;
  return Degeneracy::None;
}

std::string DigitPattern::canonical() const {
  std::ostringstream os;
  os << "{\"base\":" << base_ << ",\"cells\":[";
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (i) os << ',';
    os << '[' << cells_[i].x << ',' << cells_[i].y << ']';
  }
  os << "]}";
  return os.str();
}

double similarity_dimension(const DigitPattern& pattern) {
  const auto b = static_cast<std::size_t>(pattern.base());
  if (pattern.size() == b * b) return 2.0;
  if (pattern.size() == 1) return 0.0;
  return std::log(static_cast<double>(pattern.size())) / std::log(static_cast<double>(pattern.base()));
}

WeightVector row_weights(const DigitPattern& pattern) {
  return WeightVector::from_counts(pattern.row_counts());
}

WeightVector column_weights(const DigitPattern& pattern) {
  return WeightVector::from_counts(pattern.column_counts());
}

bool is_uniform_fibers(const DigitPattern& pattern) {
  const auto rows = pattern.row_counts();
  return std::all_of(rows.begin(), rows.end(), [&](std::int64_t c) { return c == rows[0] && c > 0; });
}

}  // namespace carpetdim
