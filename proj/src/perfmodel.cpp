#include "jagged/perfmodel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "jagged/error.hpp"
#include "json.hpp"

namespace jagged::model {

namespace {

void check_ratio(double ratio) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw Error("bandwidth ratio must be positive and finite");
  }
}

void check_alpha(Alpha a) {
  if (a.kind == Alpha::Kind::fixed && !(a.value > 0.0 && a.value <= 1.0)) {
    throw Error("alpha must lie in (0, 1]");
  }
}

}  // namespace

void validate(const ModelParams& p) {
  if (!(p.b_gpu > 0.0) || !(p.b_pci > 0.0)) {
    throw Error("bandwidths must be positive");
  }
  if (!(p.n_nzr >= 1.0)) throw Error("n_nzr must be at least 1");
  if (!(p.n_rows >= 0.0)) throw Error("n_rows must be non-negative");
  if (!(p.pci_residency >= 0.0 && p.pci_residency <= 1.0)) {
    throw Error("pci_residency must lie in [0, 1]");
  }
  check_alpha(p.alpha);
}

double code_balance(const ModelParams& p) {
  validate(p);
  const double a = p.alpha.resolve(p.n_nzr);
  const double inv = 1.0 / p.n_nzr;
  if (p.precision == Precision::dp) {
    return 6.0 + 4.0 * a + 8.0 * inv + (p.split_kernel ? 8.0 * inv : 0.0);
  }
  return 4.0 + 2.0 * a + 4.0 * inv + (p.split_kernel ? 4.0 * inv : 0.0);
}

Times times(const ModelParams& p) {
  if (!(p.b_gpu > 0.0) || !(p.b_pci > 0.0)) {
    throw Error("bandwidths must be positive");
  }
  if (!(p.n_nzr >= 0.0)) throw Error("n_nzr must be non-negative");
  check_alpha(p.alpha);
  const double a = p.n_nzr > 0.0 ? p.alpha.resolve(p.n_nzr) : p.alpha.value;
  const double vec = p.split_kernel ? 4.0 : 2.0;
  Times t;
  if (p.precision == Precision::dp) {
    // per row: n_nzr (8 value + 4 index + 8a rhs) + 16 lhs
    t.t_mvm = 8.0 * p.n_rows / p.b_gpu * (p.n_nzr * (a + 1.5) + vec);
    t.t_pci = 16.0 * p.n_rows / p.b_pci * p.pci_residency;
  } else {
    // per row: n_nzr (4 value + 4 index + 4a rhs) + 8 lhs
    t.t_mvm = 4.0 * p.n_rows / p.b_gpu * (p.n_nzr * (a + 2.0) + vec);
    t.t_pci = 8.0 * p.n_rows / p.b_pci * p.pci_residency;
  }
  return t;
}

Threshold threshold_upper(double ratio, Alpha alpha) {
  check_ratio(ratio);
  check_alpha(alpha);
  Threshold t;
  if (ratio <= 1.0) {
    t.bounded = false;
    return t;
  }
  const double raw = alpha.kind == Alpha::Kind::reciprocal
                         ? (2.0 * (ratio - 1.0) - 1.0) / 1.5
                         : 2.0 * (ratio - 1.0) / (alpha.value + 1.5);
  t.exact = std::max(raw, 0.0);
  t.rounded = std::round(t.exact);
  return t;
}

Threshold threshold_lower(double ratio, Alpha alpha) {
  check_ratio(ratio);
  check_alpha(alpha);
  const double raw = alpha.kind == Alpha::Kind::reciprocal
                         ? (20.0 * ratio - 3.0) / 1.5
                         : (20.0 * ratio - 2.0) / (alpha.value + 1.5);
  Threshold t;
  t.exact = std::max(raw, 1.0);
  t.rounded = std::round(t.exact);
  return t;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::favorable: return "favorable";
    case Verdict::marginal: return "marginal";
    case Verdict::unfavorable: return "unfavorable";
  }
  return "marginal";
}

ModelReport report(const ModelParams& p) {
  validate(p);
  ModelReport r;
  r.n_nzr = p.n_nzr;
  r.alpha = p.alpha.resolve(p.n_nzr);
  r.balance = code_balance(p);
  const auto t = times(p);
  r.t_mvm = t.t_mvm;
  r.t_pci = t.t_pci;
  r.pci_penalty_fraction =
      t.t_mvm + t.t_pci > 0.0 ? t.t_pci / (t.t_mvm + t.t_pci) : 0.0;
  const double ratio = p.b_gpu / p.b_pci;
  r.n_nzr_upper_50pct = threshold_upper(ratio, p.alpha);
  r.n_nzr_lower_10pct = threshold_lower(ratio, p.alpha);
  r.predicted_flops = t.t_mvm > 0.0 ? 2.0 * p.n_rows * p.n_nzr / t.t_mvm : 0.0;
  if (p.n_nzr >= r.n_nzr_lower_10pct.exact) {
    r.verdict = Verdict::favorable;
  } else if (r.n_nzr_upper_50pct.bounded &&
             p.n_nzr <= r.n_nzr_upper_50pct.exact) {
    r.verdict = Verdict::unfavorable;
  } else {
    r.verdict = Verdict::marginal;
  }
  return r;
}

ModelReport report(const ModelParams& p, const RowLengthHistogram& summary) {
  ModelParams q = p;
  q.n_nzr = summary.mean_len;
  q.n_rows = static_cast<double>(summary.n_rows);
  return report(q);
}

std::string to_table(const ModelReport& r) {
  std::ostringstream os;
  auto row = [&](const char* name, auto value, const char* unit) {
    os << std::left << std::setw(22) << name << std::right << std::setw(16)
       << value << "  " << unit << '\n';
  };
  os << std::setprecision(6);
  row("n_nzr", r.n_nzr, "");
  row("alpha", r.alpha, "");
  row("balance", r.balance, "bytes/flop");
  row("t_mvm", r.t_mvm, "s");
  row("t_pci", r.t_pci, "s");
  row("pci_penalty_fraction", r.pci_penalty_fraction, "");
  row("predicted_flops", r.predicted_flops, "flop/s");
  row("n_nzr_upper_50pct", r.n_nzr_upper_50pct.exact,
      r.n_nzr_upper_50pct.bounded ? "" : "(no bound)");
  row("  rounded", r.n_nzr_upper_50pct.rounded, "");
  row("n_nzr_lower_10pct", r.n_nzr_lower_10pct.exact, "");
  row("  rounded", r.n_nzr_lower_10pct.rounded, "");
  row("verdict", to_string(r.verdict), "");
  return os.str();
}

namespace {

nlohmann::json threshold_json(const Threshold& t) {
  return {{"exact", t.exact}, {"rounded", t.rounded}, {"bounded", t.bounded}};
}

}  // namespace

std::string to_json(const ModelReport& r) {
  nlohmann::json j{
      {"n_nzr", r.n_nzr},
      {"alpha", r.alpha},
      {"balance", r.balance},
      {"t_mvm", r.t_mvm},
      {"t_pci", r.t_pci},
      {"pci_penalty_fraction", r.pci_penalty_fraction},
      {"n_nzr_upper_50pct", threshold_json(r.n_nzr_upper_50pct)},
      {"n_nzr_lower_10pct", threshold_json(r.n_nzr_lower_10pct)},
      {"predicted_flops", r.predicted_flops},
      {"verdict", std::string(to_string(r.verdict))},
  };
  return j.dump();
}

}  // namespace jagged::model
