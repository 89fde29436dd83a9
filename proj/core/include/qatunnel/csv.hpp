#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qatunnel::csv {

/// Shortest decimal form that round-trips to the same double. Output is
/// locale-independent and identical across runs, which keeps CSV files
/// byte-comparable.
std::string format(double value);
std::string format(long long value);
inline std::string format(int value) { return format(static_cast<long long>(value)); }
inline std::string format(unsigned long long value) { return std::to_string(value); }
inline std::string format(unsigned long value) { return std::to_string(value); }
inline std::string format(std::string_view value) { return std::string(value); }
inline std::string format(const char* value) { return std::string(value); }
inline std::string format(const std::string& value) { return value; }

/// Ordered `key=value` metadata emitted as a single `# ` comment line.
using Metadata = std::vector<std::pair<std::string, std::string>>;

void write_metadata(std::ostream& os, const Metadata& meta);
void write_header(std::ostream& os, std::initializer_list<std::string_view> columns);
void write_row(std::ostream& os, const std::vector<std::string>& cells);

template <typename... Cells>
void row(std::ostream& os, const Cells&... cells) {
  write_row(os, std::vector<std::string>{format(cells)...});
}

}  // namespace qatunnel::csv
