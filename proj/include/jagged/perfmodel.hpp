#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "jagged/histogram.hpp"
#include "jagged/types.hpp"

namespace jagged::model {

/// RHS cache reuse. `fixed` uses the given value; `reciprocal` sets
/// alpha = 1 / n_nzr, the perfect-reuse case where every RHS element is
/// loaded exactly once.
struct Alpha {
  enum class Kind { fixed, reciprocal };
  Kind kind = Kind::fixed;
  double value = 1.0;

  static Alpha fixed(double a) { return {Kind::fixed, a}; }
  static Alpha reciprocal() { return {Kind::reciprocal, 0.0}; }

  double resolve(double n_nzr) const {
    return kind == Kind::reciprocal ? 1.0 / n_nzr : value;
  }
};

struct ModelParams {
  double b_gpu = 91e9;  // device memory bandwidth, bytes/s
  double b_pci = 6e9;   // host <-> device bandwidth, bytes/s
  Alpha alpha = Alpha::fixed(1.0);
  double n_nzr = 1.0;   // (average) non-zeros per row
  double n_rows = 0.0;
  Precision precision = Precision::dp;
  /// Local/nonlocal split kernel: the result vector is written twice.
  bool split_kernel = false;
  /// Fraction of the RHS/LHS transfers that actually cross the bus, in [0, 1].
  double pci_residency = 1.0;
};

/// Throws jagged::Error when a field is outside its domain.
void validate(const ModelParams& p);

/// Worst-case code balance in bytes/flop.
///   DP: 6 + 4a + 8/n_nzr     SP: 4 + 2a + 4/n_nzr
/// The split kernel adds one more result load+store per row:
/// 8/n_nzr (DP) or 4/n_nzr (SP). n_nzr may be +infinity.
double code_balance(const ModelParams& p);

struct Times {
  double t_mvm = 0.0;  // kernel time on the device, s
  double t_pci = 0.0;  // RHS down + LHS up over the bus, s
};

/// DP: t_mvm = 8N/B_gpu * (n_nzr (a + 3/2) + 2), t_pci = 16N/B_pci.
/// n_nzr = 0 is accepted here to expose the vector-only term.
Times times(const ModelParams& p);

/// A threshold on n_nzr. `rounded` is the nearest integer, the form in
/// which such bounds are usually quoted.
struct Threshold {
  double exact = 0.0;
  double rounded = 0.0;
  /// False when the bandwidth ratio leaves no n_nzr that meets the
  /// inequality (ratio <= 1 for the upper bound).
  bool bounded = true;
};

/// Largest n_nzr for which bus transfers take at least as long as the
/// kernel (more than 50% penalty):
///   fixed a:     n_nzr <= 2 (r - 1) / (a + 3/2)
///   reciprocal:  n_nzr <= (2 (r - 1) - 1) / (3/2)
/// Clamped at 0.
Threshold threshold_upper(double ratio, Alpha alpha);

/// Smallest n_nzr keeping the bus penalty below 10% (t_mvm >= 10 t_pci):
///   fixed a:     n_nzr >= (20 r - 2) / (a + 3/2)
///   reciprocal:  n_nzr >= (20 r - 3) / (3/2)
/// Clamped at 1.
Threshold threshold_lower(double ratio, Alpha alpha);

enum class Verdict { favorable, marginal, unfavorable };
std::string_view to_string(Verdict v);

struct ModelReport {
  double n_nzr = 0.0;
  double alpha = 0.0;
  double balance = 0.0;        // bytes/flop
  double t_mvm = 0.0;          // s
  double t_pci = 0.0;          // s
  double pci_penalty_fraction = 0.0;  // t_pci / (t_mvm + t_pci)
  Threshold n_nzr_upper_50pct;
  Threshold n_nzr_lower_10pct;
  double predicted_flops = 0.0;  // flop/s, 2 N n_nzr / t_mvm
  Verdict verdict = Verdict::marginal;
};

/// Evaluates the model for a matrix: n_nzr and n_rows come from the
/// histogram, everything else from `p`. The verdict is favorable above the
/// 10% bound, unfavorable at or below the 50% bound.
ModelReport report(const ModelParams& p, const RowLengthHistogram& summary);

/// Evaluates the model using p.n_nzr and p.n_rows as given.
ModelReport report(const ModelParams& p);

std::string to_table(const ModelReport& r);
std::string to_json(const ModelReport& r);

}  // namespace jagged::model
