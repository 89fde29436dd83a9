#include "qatunnel/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>

namespace qatunnel::csv {

std::string format(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), result.ptr);
}

std::string format(long long value) {
  std::array<char, 32> buf{};
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), result.ptr);
}

void write_metadata(std::ostream& os, const Metadata& meta) {
  os << '#';
  bool first = true;
  for (const auto& [key, value] : meta) {
    os << (first ? " " : ", ") << key << '=' << value;
    first = false;
  }
  os << '\n';
}

void write_header(std::ostream& os, std::initializer_list<std::string_view> columns) {
  bool first = true;
  for (auto column : columns) {
    if (!first) os << ',';
    os << column;
    first = false;
  }
  os << '\n';
}

void write_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << cells[i];
  }
  os << '\n';
}

}  // namespace qatunnel::csv
