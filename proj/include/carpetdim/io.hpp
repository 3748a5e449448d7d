#pragma once

// File formats: pattern JSON {"base": b, "cells": [[i, j], ...]} and the
// rates CSV (columns n, a_n, c_n) read by general-rate-dim.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "carpetdim/carpet_model.hpp"
#include "carpetdim/dim_formulas.hpp"

namespace carpetdim::io {

/// Throws ConfigInvalid on malformed JSON or missing keys; pattern errors
/// (BaseTooSmall, OutOfRangeCell, ...) propagate unchanged.
DigitPattern parse_pattern(std::string_view json_text);
DigitPattern load_pattern(const std::filesystem::path& path);

/// Header row optional; rows must be numbered 1, 2, ... in order.
RateSequences parse_rates_csv(std::string_view csv_text);
RateSequences load_rates_csv(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

/// 64-bit FNV-1a, printed as 16 hex digits.
std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t v);

}  // namespace carpetdim::io
