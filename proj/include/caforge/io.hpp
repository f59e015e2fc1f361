#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "caforge/core.hpp"

namespace caforge {

/// Text form of an array: a header line "CA N k t v", then N lines of k
/// space-separated decimal symbols, then optional lines starting with '#'.
struct ArrayFile {
  Array array;
  unsigned t = 2;
  unsigned v = 2;
  std::vector<std::string> comments;  // without the leading '#'

  friend bool operator==(const ArrayFile&, const ArrayFile&) = default;
};

void write_array_file(std::ostream& out, const ArrayFile& file);

/// Throws InvalidArgument on a malformed header, a row of the wrong length,
/// a symbol outside [0, v), or anything but comments after the last row.
ArrayFile read_array_file(std::istream& in);

ArrayFile load_array_file(const std::string& path);
void save_array_file(const std::string& path, const ArrayFile& file);

}  // namespace caforge
