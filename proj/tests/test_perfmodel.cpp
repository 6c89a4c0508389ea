#include <cmath>
#include <limits>

#include "doctest.h"
#include "json.hpp"
#include "jagged/error.hpp"
#include "jagged/histogram.hpp"
#include "jagged/perfmodel.hpp"

using namespace jagged;
using namespace jagged::model;

namespace {

ModelParams dp(double n_nzr, Alpha a = Alpha::fixed(1.0)) {
  ModelParams p;
  p.n_nzr = n_nzr;
  p.alpha = a;
  return p;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("code_balance") {
  TEST_CASE("DP limits and worked values") {
    CHECK(code_balance(dp(std::numeric_limits<double>::infinity())) == 10.0);
    CHECK(code_balance(dp(8.0)) == 11.0);
    CHECK(code_balance(dp(4.0, Alpha::reciprocal())) == 9.0);
    for (double n : {2.0, 5.0, 13.0, 100.0}) {
      CHECK(code_balance(dp(n, Alpha::reciprocal())) == doctest::Approx(6.0 + 12.0 / n));
    }
  }

  TEST_CASE("split kernel adds 8/N_nzr in DP, 4/N_nzr in SP") {
    for (double n : {1.0, 4.0, 8.0, 15.0, 144.0}) {
      auto p = dp(n);
      const double base = code_balance(p);
      p.split_kernel = true;
      CHECK(code_balance(p) - base == doctest::Approx(8.0 / n).epsilon(1e-14));
      p.precision = Precision::sp;
      const double sp_split = code_balance(p);
      p.split_kernel = false;
      CHECK(sp_split - code_balance(p) == doctest::Approx(4.0 / n).epsilon(1e-14));
    }
  }

  TEST_CASE("SP extrapolation") {
    auto p = dp(8.0, Alpha::fixed(0.5));
    p.precision = Precision::sp;
    CHECK(code_balance(p) == 4.0 + 2.0 * 0.5 + 4.0 / 8.0);
    for (double n : {1.0, 3.0, 50.0}) {
      for (double a : {0.1, 0.5, 1.0}) {
        auto s = dp(n, Alpha::fixed(a));
        const double d = code_balance(s);
        s.precision = Precision::sp;
        CHECK(code_balance(s) < d);
      }
    }
  }

  TEST_CASE("monotonic in N_nzr and alpha") {
    for (double a : {0.05, 0.3, 1.0}) {
      double last = std::numeric_limits<double>::infinity();
      for (double n = 1.0; n < 300.0; n *= 1.7) {
        const double b = code_balance(dp(n, Alpha::fixed(a)));
        CHECK(b < last);
        last = b;
      }
    }
    for (double n : {2.0, 20.0}) {
      double last = 0.0;
      for (double a = 0.05; a <= 1.0; a += 0.05) {
        const double b = code_balance(dp(n, Alpha::fixed(a)));
        CHECK(b > last);
        last = b;
      }
    }
  }
}

TEST_SUITE("times") {
  TEST_CASE("vector term only") {
    auto p = dp(0.0);
    p.n_rows = 1.0;
    CHECK(times(p).t_mvm == 16.0 / p.b_gpu);
  }

  TEST_CASE("N = 1e6, N_nzr = 100, alpha = 1 at 91 GB/s") {
    auto p = dp(100.0);
    p.n_rows = 1e6;
    const auto t = times(p);
    CHECK(t.t_mvm == doctest::Approx(8e6 / 91e9 * 252.0).epsilon(1e-14));
    CHECK(t.t_mvm == doctest::Approx(0.022153846153846).epsilon(1e-12));
    CHECK(t.t_pci == doctest::Approx(16e6 / 6e9).epsilon(1e-14));
  }

  TEST_CASE("halving B_pci doubles t_pci only") {
    auto p = dp(30.0);
    p.n_rows = 5e5;
    const auto a = times(p);
    p.b_pci /= 2.0;
    const auto b = times(p);
    CHECK(b.t_pci == 2.0 * a.t_pci);
    CHECK(b.t_mvm == a.t_mvm);
  }

  TEST_CASE("residency scales t_pci, SP halves vector bytes") {
    auto p = dp(30.0);
    p.n_rows = 1000.0;
    const auto full = times(p);
    p.pci_residency = 0.25;
    CHECK(times(p).t_pci == doctest::Approx(0.25 * full.t_pci));
    p.pci_residency = 1.0;
    p.precision = Precision::sp;
    CHECK(times(p).t_pci == doctest::Approx(0.5 * full.t_pci));
  }

  TEST_CASE("split kernel writes the result twice") {
    auto p = dp(10.0);
    p.n_rows = 1000.0;
    const auto a = times(p);
    p.split_kernel = true;
    CHECK(times(p).t_mvm - a.t_mvm == doctest::Approx(8.0 * 1000.0 * 2.0 / p.b_gpu));
  }
}

TEST_SUITE("thresholds") {
  TEST_CASE("upper bound worked values") {
    const auto r20 = threshold_upper(20.0, Alpha::reciprocal());
    CHECK(rel(r20.exact, (2.0 * 19.0 - 1.0) / 1.5) <= 1e-12);
    CHECK(r20.exact >= 23.0);
    CHECK(r20.exact <= 25.0);
    CHECK(std::abs(r20.rounded - 25.0) <= 1.0);
    CHECK(r20.bounded);

    const auto r10 = threshold_upper(10.0, Alpha::fixed(1.0));
    CHECK(rel(r10.exact, 7.2) <= 1e-12);
    CHECK(r10.rounded == 7.0);
  }

  TEST_CASE("lower bound worked values") {
    const auto r10 = threshold_lower(10.0, Alpha::fixed(1.0));
    CHECK(rel(r10.exact, 79.2) <= 1e-12);
    CHECK(r10.rounded == 79.0);
    CHECK(r10.exact >= 79.0);
    CHECK(r10.exact <= 80.0);

    const auto r20 = threshold_lower(20.0, Alpha::reciprocal());
    CHECK(rel(r20.exact, 397.0 / 1.5) <= 1e-12);
    CHECK(std::abs(r20.rounded - 266.0) <= 2.0);
  }

  TEST_CASE("no headroom and fast links") {
    CHECK(threshold_upper(1.0 + 1e-9, Alpha::fixed(1.0)).exact ==
          doctest::Approx(0.0).epsilon(1e-6));
    CHECK(threshold_upper(1.0 + 1e-9, Alpha::reciprocal()).exact == 0.0);
    CHECK_FALSE(threshold_upper(1.0, Alpha::fixed(1.0)).bounded);
    CHECK_FALSE(threshold_upper(0.5, Alpha::reciprocal()).bounded);
    CHECK(threshold_lower(0.1, Alpha::fixed(1.0)).exact == 1.0);
    CHECK(threshold_lower(0.1, Alpha::reciprocal()).exact == 1.0);
  }

  TEST_CASE("a matrix at the upper threshold balances kernel and transfer time") {
    for (double ratio : {2.0, 10.0, 20.0, 37.5}) {
      for (double a : {0.1, 0.5, 1.0}) {
        auto p = dp(threshold_upper(ratio, Alpha::fixed(a)).exact, Alpha::fixed(a));
        p.b_pci = p.b_gpu / ratio;
        p.n_rows = 1e6;
        const auto t = times(p);
        CHECK(rel(t.t_mvm, t.t_pci) <= 1e-12);
      }
    }
  }

  TEST_CASE("a matrix at the lower threshold has a 10% penalty") {
    for (double ratio : {2.0, 10.0, 20.0}) {
      auto p = dp(threshold_lower(ratio, Alpha::fixed(1.0)).exact);
      p.b_pci = p.b_gpu / ratio;
      p.n_rows = 1e5;
      const auto t = times(p);
      CHECK(rel(t.t_mvm, 10.0 * t.t_pci) <= 1e-12);
    }
  }
}

TEST_SUITE("report") {
  TEST_CASE("HMEp-like and sAMG-like matrices are unfavorable at ratio 20") {
    for (double n : {15.0, 7.0}) {
      auto p = dp(n, Alpha::reciprocal());
      p.b_pci = p.b_gpu / 20.0;
      p.n_rows = 1e6;
      CHECK(report(p).verdict == Verdict::unfavorable);
    }
  }

  TEST_CASE("DLR1-like matrix is favorable at ratio 10") {
    auto p = dp(144.0);
    p.b_pci = p.b_gpu / 10.0;
    p.n_rows = 1e6;
    CHECK(report(p).verdict == Verdict::favorable);
  }

  TEST_CASE("between the bounds is marginal") {
    auto p = dp(40.0);
    p.b_pci = p.b_gpu / 10.0;
    p.n_rows = 1e6;
    CHECK(report(p).verdict == Verdict::marginal);
  }

  TEST_CASE("histogram input uses the mean row length") {
    ModelParams p;
    const auto r = report(p, constant_histogram(1000, 7));
    CHECK(r.n_nzr == 7.0);
    CHECK(r.alpha == 1.0);
    CHECK(r.t_pci == doctest::Approx(16.0 * 1000.0 / p.b_pci));
  }

  TEST_CASE("derived fields") {
    auto p = dp(25.0, Alpha::fixed(0.4));
    p.n_rows = 3e5;
    const auto r = report(p);
    const auto t = times(p);
    CHECK(r.balance == code_balance(p));
    CHECK(r.t_mvm == t.t_mvm);
    CHECK(r.pci_penalty_fraction == doctest::Approx(t.t_pci / (t.t_mvm + t.t_pci)));
    CHECK(r.predicted_flops == doctest::Approx(2.0 * 3e5 * 25.0 / t.t_mvm));
  }

  TEST_CASE("predicted flops equal bandwidth over balance") {
    for (double n : {1.0, 3.0, 15.0, 144.0}) {
      for (double a : {0.05, 0.5, 1.0}) {
        auto p = dp(n, Alpha::fixed(a));
        p.n_rows = 1e6;
        const auto r = report(p);
        CHECK(rel(r.predicted_flops, p.b_gpu / r.balance) <= 1e-12);
      }
    }
  }

  TEST_CASE("validation") {
    CHECK_THROWS_AS(validate(dp(10.0, Alpha::fixed(0.0))), Error);
    CHECK_THROWS_AS(validate(dp(10.0, Alpha::fixed(1.5))), Error);
    auto p = dp(10.0);
    p.b_gpu = 0.0;
    CHECK_THROWS_AS(validate(p), Error);
    p = dp(10.0);
    p.pci_residency = 2.0;
    CHECK_THROWS_AS(validate(p), Error);
    CHECK_NOTHROW(validate(dp(10.0, Alpha::reciprocal())));
  }

  TEST_CASE("rendering") {
    auto p = dp(15.0, Alpha::reciprocal());
    p.b_pci = p.b_gpu / 20.0;
    p.n_rows = 1e6;
    const auto r = report(p);
    const auto j = nlohmann::json::parse(to_json(r));
    for (const char* key : {"balance", "t_mvm", "t_pci", "pci_penalty_fraction",
                            "n_nzr_upper_50pct", "n_nzr_lower_10pct", "predicted_flops",
                            "verdict"}) {
      CHECK(j.contains(key));
    }
    CHECK(j["verdict"] == "unfavorable");
    CHECK(j["balance"].get<double>() == r.balance);
    CHECK(j["n_nzr_upper_50pct"]["rounded"].get<double>() == 25.0);
    const auto table = to_table(r);
    CHECK(table.find("verdict") != std::string::npos);
    CHECK(table.find("unfavorable") != std::string::npos);
  }
}
