#pragma once

// Base-b missing-digit carpets: the pattern of kept cells and the basic
// quantities derived from it.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "carpetdim/weight_vector.hpp"

namespace carpetdim {

/// Cell (x, y) of the b x b subdivision: x is the column digit (first
/// coordinate), y the row digit (second coordinate).
struct Cell {
  int x = 0;
  int y = 0;
  auto operator<=>(const Cell&) const = default;
};

enum class Degeneracy { None, HorizontalLine, VerticalLine };

class DigitPattern {
 public:
  /// Validates and deduplicates. Throws Error with BaseTooSmall,
  /// EmptyPattern or OutOfRangeCell.
  DigitPattern(int base, std::vector<Cell> cells);

  /// Full b x b square.
  static DigitPattern full(int base);

  int base() const noexcept { return base_; }
  /// Cells sorted lexicographically by (x, y).
  std::span<const Cell> cells() const noexcept { return cells_; }
  std::size_t size() const noexcept { return cells_.size(); }

  bool contains(int x, int y) const noexcept;
  /// Position of (x, y) in cells(), or -1.
  int index_of(int x, int y) const noexcept;

  /// counts[i] = number of cells in row i (cells with y == i); length b.
  std::span<const std::int64_t> row_counts() const noexcept { return row_counts_; }
  std::span<const std::int64_t> column_counts() const noexcept { return column_counts_; }

  /// Exactly one row index occurs.
  bool is_horizontal_line() const noexcept;
  /// Exactly one column index occurs.
  bool is_vertical_line() const noexcept;
  /// HorizontalLine wins when the pattern is a single cell.
  Degeneracy degeneracy() const noexcept;

  /// {"base":b,"cells":[[x,y],...]} with cells in lexicographic order.
  std::string canonical() const;

  bool operator==(const DigitPattern&) const = default;

 private:
  int base_;
  std::vector<Cell> cells_;
  std::vector<std::int64_t> row_counts_;
  std::vector<std::int64_t> column_counts_;
};

/// s0 = log |A| / log b, the similarity dimension of the attractor.
double similarity_dimension(const DigitPattern& pattern);

/// Weights of the projection onto the y-axis: w_i = (#cells in row i) / |A|.
WeightVector row_weights(const DigitPattern& pattern);
/// Weights of the projection onto the x-axis.
WeightVector column_weights(const DigitPattern& pattern);

/// True iff every row holds the same (nonzero) number of cells.
bool is_uniform_fibers(const DigitPattern& pattern);

}  // namespace carpetdim
