#include "caforge/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

namespace caforge {

namespace {

[[noreturn]] void bad(std::size_t line, const std::string& what) {
  throw InvalidArgument("array file line " + std::to_string(line) + ": " + what);
}

// Splits on single spaces; any other layout is rejected.
std::vector<std::uint64_t> numbers(std::string_view s, std::size_t line) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t end = std::min(s.find(' ', pos), s.size());
    const std::string_view tok = s.substr(pos, end - pos);
    std::uint64_t x = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) bad(line, "bad number '" + std::string(tok) + "'");
    out.push_back(x);
    pos = end + 1;
  }
  return out;
}

}  // namespace

void write_array_file(std::ostream& out, const ArrayFile& file) {
  const Array& a = file.array;
  out << "CA " << a.rows() << ' ' << a.cols() << ' ' << file.t << ' ' << file.v << '\n';
  std::string buf;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    buf.clear();
    const auto row = a.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) buf.push_back(' ');
      buf += std::to_string(row[c]);
    }
    buf.push_back('\n');
    out << buf;
  }
  for (const auto& c : file.comments) out << '#' << c << '\n';
}

ArrayFile read_array_file(std::istream& in) {
  std::string raw;
  std::size_t line = 1;
  if (!std::getline(in, raw)) bad(line, "missing header");
  if (!raw.starts_with("CA ")) bad(line, "header must start with 'CA '");
  const auto head = numbers(std::string_view(raw).substr(3), line);
  if (head.size() != 4) bad(line, "header must be 'CA N k t v'");
  const std::uint64_t n = head[0];
  if (head[1] > 0xFFFFFFFFull || head[2] > 0xFFFFFFFFull || head[3] > 0xFFFFFFFFull) bad(line, "header value too large");
  Parameters p{static_cast<unsigned>(head[2]), static_cast<unsigned>(head[1]), static_cast<unsigned>(head[3])};
  try {
    p.validate();
  } catch (const InvalidArgument& e) {
    bad(line, e.what());
  }

  ArrayFile file;
  file.t = p.t;
  file.v = p.v;
  file.array = Array(0, p.k);
  std::vector<Symbol> row(p.k);
  for (std::uint64_t r = 0; r < n; ++r) {
    ++line;
    if (!std::getline(in, raw)) bad(line, "expected " + std::to_string(n) + " rows, found " + std::to_string(r));
    const auto vals = numbers(raw, line);
    if (vals.size() != p.k) bad(line, "row has " + std::to_string(vals.size()) + " symbols, expected " + std::to_string(p.k));
    for (std::size_t c = 0; c < p.k; ++c) {
      if (vals[c] >= p.v) bad(line, "symbol " + std::to_string(vals[c]) + " outside [0," + std::to_string(p.v) + ")");
      row[c] = static_cast<Symbol>(vals[c]);
    }
    file.array.append_row(row);
  }
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.starts_with('#')) bad(line, "only comment lines may follow the rows");
    file.comments.push_back(raw.substr(1));
  }
  return file;
}

ArrayFile load_array_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  return read_array_file(in);
}

void save_array_file(const std::string& path, const ArrayFile& file) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  write_array_file(out, file);
  out.flush();
  if (!out) throw InvalidArgument("write failed for " + path);
}

}  // namespace caforge
