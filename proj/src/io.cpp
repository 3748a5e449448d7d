#include "carpetdim/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "carpetdim/error.hpp"

namespace carpetdim::io {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  const std::string tmp(s);
  char* end = nullptr;
  out = std::strtod(tmp.c_str(), &end);
  return !tmp.empty() && end == tmp.c_str() + tmp.size();
}

}  // namespace

DigitPattern parse_pattern(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("pattern is not valid JSON: ") + e.what(), "pattern");
  }
  if (!j.is_object() || !j.contains("base") || !j.contains("cells")) {
    throw Error(ErrorCode::ConfigInvalid, "pattern needs keys \"base\" and \"cells\"", "pattern");
  }
  if (!j["base"].is_number_integer() || !j["cells"].is_array()) {
    throw Error(ErrorCode::ConfigInvalid, "\"base\" must be an integer and \"cells\" an array", "pattern");
  }
  std::vector<Cell> cells;
  for (const auto& c : j["cells"]) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() || !c[1].is_number_integer()) {
      throw Error(ErrorCode::ConfigInvalid, "each cell must be a pair of integers", "pattern");
    }
    cells.push_back({c[0].get<int>(), c[1].get<int>()});
  }
  return DigitPattern(j["base"].get<int>(), std::move(cells));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ConfigInvalid, "cannot open " + path.string(), "path");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DigitPattern load_pattern(const std::filesystem::path& path) { return parse_pattern(read_file(path)); }

RateSequences parse_rates_csv(std::string_view csv_text) {
  RateSequences seqs;
  std::size_t line_no = 0;
  for (auto line : split(csv_text, '\n')) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 3) {
      throw Error(ErrorCode::ConfigInvalid, "rates line " + std::to_string(line_no) + " needs 3 columns", "rates");
    }
    double n = 0.0;
    double a = 0.0;
    double c = 0.0;
    if (!parse_double(trim(fields[0]), n)) {
      if (seqs.horizon() == 0 && line_no == 1) continue;  // header
      throw Error(ErrorCode::ConfigInvalid, "bad index on rates line " + std::to_string(line_no), "rates");
    }
    if (!parse_double(trim(fields[1]), a) || !parse_double(trim(fields[2]), c)) {
      throw Error(ErrorCode::ConfigInvalid, "bad value on rates line " + std::to_string(line_no), "rates");
    }
    if (n != static_cast<double>(seqs.horizon() + 1)) {
      throw Error(ErrorCode::ConfigInvalid, "rates rows must be numbered 1, 2, ... in order", "rates");
    }
    seqs.a.push_back(a);
    seqs.c.push_back(c);
  }
  return seqs;
}

RateSequences load_rates_csv(const std::filesystem::path& path) { return parse_rates_csv(read_file(path)); }

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace carpetdim::io
