#include "jagged/generate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <unordered_set>

#include "jagged/error.hpp"

namespace jagged {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using Rng = std::mt19937_64;

std::size_t draw(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

void check_length(std::size_t len, std::size_t n, const char* what) {
  if (len == 0) {
    throw InfeasibleSpecError(std::string(what) + ": row length must be >= 1");
  }
  if (len > n) {
    throw InfeasibleSpecError(std::string(what) + ": row length " +
                              std::to_string(len) + " exceeds n_cols " +
                              std::to_string(n));
  }
}

std::vector<std::size_t> row_lengths(const GeneratorSpec& spec, Rng& rng) {
  const std::size_t n = spec.n_rows;
  std::vector<std::size_t> len(n);
  std::visit(
      overloaded{
          [&](const shape::Constant& c) {
            check_length(c.length, n, "constant");
            std::fill(len.begin(), len.end(), c.length);
          },
          [&](const shape::Uniform& u) {
            check_length(u.lo, n, "uniform");
            check_length(u.hi, n, "uniform");
            if (u.lo > u.hi) throw InfeasibleSpecError("uniform: lo > hi");
            for (auto& l : len) l = draw(rng, u.lo, u.hi);
          },
          [&](const shape::Clustered& c) {
            check_length(c.peak_length, n, "clustered");
            check_length(c.tail_lo, n, "clustered");
            if (c.tail_lo > c.peak_length) {
              throw InfeasibleSpecError("clustered: tail_lo > peak_length");
            }
            if (!(c.peak_fraction >= 0.0 && c.peak_fraction <= 1.0)) {
              throw InfeasibleSpecError("clustered: peak_fraction outside [0, 1]");
            }
            const auto n_peak = std::min<std::size_t>(
                n, static_cast<std::size_t>(
                       std::ceil(c.peak_fraction * static_cast<double>(n))));
            for (std::size_t i = 0; i < n; ++i) {
              len[i] = i < n_peak ? c.peak_length
                                  : draw(rng, c.tail_lo, c.peak_length);
            }
            std::shuffle(len.begin(), len.end(), rng);
          },
          [&](const shape::Adversarial&) {
            std::fill(len.begin(), len.end(), 1);
            len[draw(rng, 0, n - 1)] = n;
          },
          [&](const shape::Banded&) {},
      },
      spec.distribution);
  return len;
}

// Floyd's algorithm: `count` distinct values from [0, n), returned sorted.
std::vector<std::size_t> sample_columns(Rng& rng, std::size_t n,
                                        std::size_t count) {
  std::vector<std::size_t> cols;
  cols.reserve(count);
  if (count == n) {
    for (std::size_t c = 0; c < n; ++c) cols.push_back(c);
    return cols;
  }
  std::unordered_set<std::size_t> chosen;
  chosen.reserve(count * 2);
  for (std::size_t j = n - count; j < n; ++j) {
    const auto t = draw(rng, 0, j);
    const auto pick = chosen.insert(t).second ? t : j;
    if (pick == j) chosen.insert(j);
    cols.push_back(pick);
  }
  std::sort(cols.begin(), cols.end());
  return cols;
}

CsrMatrix banded(const GeneratorSpec& spec, const shape::Banded& b, Rng& rng) {
  const auto n = static_cast<std::int64_t>(spec.n_rows);
  std::vector<std::int64_t> offsets = b.offsets;
  offsets.push_back(0);
  std::sort(offsets.begin(), offsets.end());
  offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());

  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::vector<std::size_t> row_ptr{0};
  std::vector<std::size_t> col_idx;
  std::vector<double> values;
  for (std::int64_t i = 0; i < n; ++i) {
    for (auto off : offsets) {
      const auto j = i + off;
      if (j < 0 || j >= n) continue;
      col_idx.push_back(static_cast<std::size_t>(j));
      values.push_back(value(rng));
    }
    row_ptr.push_back(col_idx.size());
  }
  return CsrMatrix(spec.n_rows, spec.n_rows, std::move(row_ptr),
                   std::move(col_idx), std::move(values));
}

}  // namespace

CsrMatrix generate(const GeneratorSpec& spec) {
  if (spec.n_rows == 0) throw InfeasibleSpecError("n_rows must be positive");
  Rng rng(spec.seed);
  if (const auto* b = std::get_if<shape::Banded>(&spec.distribution)) {
    return banded(spec, *b, rng);
  }

  const auto lengths = row_lengths(spec, rng);
  const std::size_t n = spec.n_rows;
  std::vector<std::size_t> row_ptr(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) row_ptr[i + 1] = row_ptr[i] + lengths[i];

  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::vector<std::size_t> col_idx;
  std::vector<double> values;
  col_idx.reserve(row_ptr[n]);
  values.reserve(row_ptr[n]);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto c : sample_columns(rng, n, lengths[i])) {
      col_idx.push_back(c);
      values.push_back(value(rng));
    }
  }
  return CsrMatrix(n, n, std::move(row_ptr), std::move(col_idx),
                   std::move(values));
}

RowDistribution parse_distribution(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.empty()) throw InfeasibleSpecError("empty distribution");

  auto number = [&](std::size_t k) -> std::size_t {
    std::size_t pos = 0;
    const auto v = std::stoull(parts.at(k), &pos);
    if (pos != parts[k].size()) throw std::invalid_argument(parts[k]);
    return v;
  };
  const auto& kind = parts[0];
  try {
    if (kind == "constant" && parts.size() == 2) {
      return shape::Constant{number(1)};
    }
    if (kind == "uniform" && parts.size() == 3) {
      return shape::Uniform{number(1), number(2)};
    }
    if (kind == "clustered" && parts.size() == 4) {
      return shape::Clustered{std::stod(parts[1]), number(2), number(3)};
    }
    if (kind == "adversarial" && parts.size() == 1) {
      return shape::Adversarial{};
    }
    if (kind == "banded" && parts.size() == 2) {
      shape::Banded b;
      std::stringstream offs(parts[1]);
      for (std::string o; std::getline(offs, o, ',');) {
        b.offsets.push_back(std::stoll(o));
      }
      return b;
    }
  } catch (const std::logic_error&) {
    // fall through to the generic error
  }
  throw InfeasibleSpecError("cannot parse distribution '" + text + "'");
}

std::string to_string(const RowDistribution& d) {
  return std::visit(
      overloaded{
          [](const shape::Constant& c) {
            return "constant:" + std::to_string(c.length);
          },
          [](const shape::Uniform& u) {
            return "uniform:" + std::to_string(u.lo) + ":" + std::to_string(u.hi);
          },
          [](const shape::Clustered& c) {
            std::ostringstream os;
            os << "clustered:" << c.peak_fraction << ':' << c.peak_length << ':'
               << c.tail_lo;
            return os.str();
          },
          [](const shape::Adversarial&) { return std::string("adversarial"); },
          [](const shape::Banded& b) {
            std::string s = "banded:";
            for (std::size_t k = 0; k < b.offsets.size(); ++k) {
              if (k) s += ',';
              s += std::to_string(b.offsets[k]);
            }
            return s;
          },
      },
      d);
}

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x5eedull);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = u(rng);
  return x;
}

}  // namespace jagged
