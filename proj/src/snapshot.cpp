#include "jagged/snapshot.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>

#include "jagged/error.hpp"
#include "jagged/matrix_market.hpp"

namespace jagged {

namespace {

constexpr std::array<char, 4> kMagic{'J', 'G', 'D', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> buf;
  for (std::size_t b = 0; b < 8; ++b) {
    buf[b] = static_cast<char>((v >> (8 * b)) & 0xffu);
  }
  out.write(buf.data(), buf.size());
}

std::uint64_t get_u64(std::istream& in) {
  std::array<unsigned char, 8> buf;
  if (!in.read(reinterpret_cast<char*>(buf.data()), buf.size())) {
    throw Error("truncated JGD1 snapshot");
  }
  std::uint64_t v = 0;
  for (std::size_t b = 0; b < 8; ++b) v |= std::uint64_t{buf[b]} << (8 * b);
  return v;
}

}  // namespace

void write_snapshot(const CsrMatrix& m, std::ostream& out) {
  out.write(kMagic.data(), kMagic.size());
  put_u64(out, m.n_rows());
  put_u64(out, m.n_cols());
  put_u64(out, m.nnz());
  for (auto p : m.row_ptr()) put_u64(out, p);
  for (auto c : m.col_idx()) put_u64(out, c);
  for (auto v : m.values()) put_u64(out, std::bit_cast<std::uint64_t>(v));
  if (!out) throw Error("failed writing JGD1 snapshot");
}

void write_snapshot(const CsrMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  write_snapshot(m, out);
}

CsrMatrix read_snapshot(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw Error("not a JGD1 snapshot (bad magic)");
  }
  const auto n_rows = get_u64(in);
  const auto n_cols = get_u64(in);
  const auto nnz = get_u64(in);
  std::vector<std::size_t> row_ptr(n_rows + 1);
  for (auto& p : row_ptr) p = get_u64(in);
  std::vector<std::size_t> col_idx(nnz);
  for (auto& c : col_idx) c = get_u64(in);
  std::vector<double> values(nnz);
  for (auto& v : values) v = std::bit_cast<double>(get_u64(in));
  return CsrMatrix(n_rows, n_cols, std::move(row_ptr), std::move(col_idx),
                   std::move(values));
}

CsrMatrix read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return read_snapshot(in);
}

CsrMatrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  const bool is_snapshot = in.gcount() == 4 && magic == kMagic;
  in.clear();
  in.seekg(0);
  if (is_snapshot) return read_snapshot(in);
  return coo_to_csr(read_matrix_market(in));
}

}  // namespace jagged
