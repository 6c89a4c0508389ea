#include "jagged/footprint.hpp"

#include <sstream>

#include "json.hpp"

namespace jagged {

namespace {

double overhead(std::size_t stored, std::size_t nnz) {
  if (nnz == 0) return 0.0;
  return static_cast<double>(stored) / static_cast<double>(nnz) - 1.0;
}

double reduction(std::size_t stored, std::size_t ellpack_stored) {
  if (ellpack_stored == 0) return 0.0;
  return 1.0 - static_cast<double>(stored) / static_cast<double>(ellpack_stored);
}

FootprintReport base_report(std::string name, std::size_t stored,
                            std::size_t nnz, std::size_t ellpack_stored,
                            Precision p) {
  FootprintReport r;
  r.format = std::move(name);
  r.stored_entries = stored;
  r.bytes_values = stored * value_bytes(p);
  r.bytes_indices = stored * index_bytes;
  r.padding_overhead_fraction = overhead(stored, nnz);
  r.data_reduction_vs_ellpack = reduction(stored, ellpack_stored);
  return r;
}

}  // namespace

FootprintReport footprint(const CsrMatrix& m, Precision p,
                          std::size_t warp_size) {
  const auto ellpack = round_up(m.n_rows(), warp_size) * m.max_row_length();
  auto r = base_report("csr", m.nnz(), m.nnz(), ellpack, p);
  r.bytes_aux = (m.n_rows() + 1) * index_bytes;
  return r;
}

FootprintReport footprint(const EllpackMatrix& m, Precision p) {
  return base_report("ellpack", m.stored_entries(), m.nnz(), m.stored_entries(), p);
}

FootprintReport footprint(const EllpackRMatrix& m, Precision p) {
  auto r = base_report("ellpack-r", m.stored_entries(), m.nnz(),
                       m.stored_entries(), p);
  r.bytes_aux = m.rowmax().size() * index_bytes;
  return r;
}

FootprintReport footprint(const PjdsMatrix& m, Precision p) {
  auto r = base_report("pjds", m.stored_entries(), m.nnz(),
                       m.n_rows_padded() * m.width(), p);
  r.bytes_aux = (m.col_start().size() + m.rowmax().size()) * index_bytes;
  return r;
}

std::string to_key_value(const FootprintReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "format=" << r.format << '\n'
     << "stored_entries=" << r.stored_entries << '\n'
     << "bytes_values=" << r.bytes_values << '\n'
     << "bytes_indices=" << r.bytes_indices << '\n'
     << "bytes_aux=" << r.bytes_aux << '\n'
     << "padding_overhead_fraction=" << r.padding_overhead_fraction << '\n'
     << "data_reduction_vs_ellpack=" << r.data_reduction_vs_ellpack << '\n';
  return os.str();
}

std::string to_json(const FootprintReport& r) {
  nlohmann::json j{
      {"format", r.format},
      {"stored_entries", r.stored_entries},
      {"bytes_values", r.bytes_values},
      {"bytes_indices", r.bytes_indices},
      {"bytes_aux", r.bytes_aux},
      {"padding_overhead_fraction", r.padding_overhead_fraction},
      {"data_reduction_vs_ellpack", r.data_reduction_vs_ellpack},
  };
  return j.dump();
}

}  // namespace jagged
