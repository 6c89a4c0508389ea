#include "jagged/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "jagged/error.hpp"

namespace jagged {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

CooMatrix read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) {
    throw ParseError(line_no, "empty file, expected %%MatrixMarket banner");
  }

  std::istringstream banner(line);
  std::string tag, object, layout, field, symmetry, extra;
  banner >> tag >> object >> layout >> field >> symmetry;
  if (lower(tag) != "%%matrixmarket" || symmetry.empty() || (banner >> extra)) {
    throw ParseError(line_no, "malformed header, expected '%%MatrixMarket "
                              "matrix coordinate <field> <symmetry>'");
  }
  object = lower(object);
  layout = lower(layout);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix") {
    throw ParseError(line_no, "unsupported object '" + object + "'");
  }
  if (layout != "coordinate") {
    throw ParseError(line_no, "only coordinate layout is supported, got '" +
                                  layout + "'");
  }
  if (field == "pattern") {
    throw ParseError(line_no,
                     "pattern matrices carry no values and are not supported");
  }
  if (field != "real" && field != "integer" && field != "double") {
    throw ParseError(line_no, "unsupported field '" + field + "'");
  }
  const bool symmetric = symmetry == "symmetric";
  if (!symmetric && symmetry != "general") {
    throw ParseError(line_no, "unsupported symmetry '" + symmetry + "'");
  }

  // skip comments, read the size line
  for (;;) {
    if (!std::getline(in, line)) {
      throw ParseError(line_no + 1, "missing size line");
    }
    ++line_no;
    if (!line.empty() && line[0] == '%') continue;
    if (blank(line)) continue;
    break;
  }
  std::istringstream size_line(line);
  long long rows = -1, cols = -1, count = -1;
  size_line >> rows >> cols >> count;
  if (size_line.fail() || rows < 0 || cols < 0 || count < 0 ||
      (size_line >> extra)) {
    throw ParseError(line_no, "malformed size line, expected 'rows cols entries'");
  }

  CooMatrix m{static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), {}};
  m.entries.reserve(static_cast<std::size_t>(count) * (symmetric ? 2 : 1));

  long long seen = 0;
  while (seen < count) {
    if (!std::getline(in, line)) {
      throw ParseError(line_no + 1, "expected " + std::to_string(count) +
                                        " entries, found " + std::to_string(seen));
    }
    ++line_no;
    if (blank(line) || line[0] == '%') continue;
    std::istringstream entry(line);
    long long r = 0, c = 0;
    double v = 0.0;
    entry >> r >> c >> v;
    if (entry.fail() || (entry >> extra)) {
      throw ParseError(line_no, "malformed entry, expected 'row col value'");
    }
    if (r < 1 || c < 1 || r > rows || c > cols) {
      throw ParseError(line_no, "index (" + std::to_string(r) + ", " +
                                    std::to_string(c) + ") out of bounds");
    }
    const auto i = static_cast<std::size_t>(r - 1);
    const auto j = static_cast<std::size_t>(c - 1);
    if (symmetric && j > i) {
      throw ParseError(line_no, "symmetric file has an entry above the diagonal");
    }
    m.entries.push_back({i, j, v});
    if (symmetric && i != j) m.entries.push_back({j, i, v});
    ++seen;
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!blank(line) && line[0] != '%') {
      throw ParseError(line_no, "more entries than declared in the size line");
    }
  }
  return m;
}

CooMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return read_matrix_market(in);
}

void write_matrix_market(const CsrMatrix& m, std::ostream& out) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.n_rows() << ' ' << m.n_cols() << ' ' << m.nnz() << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    auto cols = m.row_cols(i);
    auto vals = m.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      out << i + 1 << ' ' << cols[k] + 1 << ' ' << vals[k] << '\n';
    }
  }
}

void write_matrix_market(const CsrMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  write_matrix_market(m, out);
}

}  // namespace jagged
