#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "jagged/checksum.hpp"
#include "jagged/cli.hpp"
#include "jagged/dist/partition.hpp"
#include "jagged/generate.hpp"
#include "jagged/matrix_market.hpp"
#include "jagged/snapshot.hpp"
#include "oracles.hpp"

using namespace jagged;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run jagged_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "jagged");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("jagged_cli_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << "0x" << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit 1") {
    CHECK(jagged_cli({}).code == 1);
    CHECK(jagged_cli({"frobnicate"}).code == 1);
    CHECK(jagged_cli({"histogram", "--bogus", "-g", "constant:2"}).code == 1);
    const auto both = jagged_cli({"histogram", "-i", "a.mtx", "-g", "constant:2"});
    CHECK(both.code == 1);
    CHECK(both.err.find("excludes") != std::string::npos);
    CHECK(jagged_cli({"histogram"}).code == 1);
    CHECK(jagged_cli({"model", "--alpha", "lots"}).code == 1);
    CHECK(jagged_cli({"dist-run", "-g", "constant:2", "--mode", "eager"}).code == 1);
  }

  TEST_CASE("data errors exit 2 with a one-line diagnostic") {
    const auto missing = jagged_cli({"histogram", "-i", temp_path("missing.mtx").string()});
    CHECK(missing.code == 2);
    CHECK(missing.err.find('\n') == missing.err.size() - 1);
    CHECK(jagged_cli({"footprint", "-g", "constant:9", "-n", "4"}).code == 2);
    const auto bad = temp_path("bad.mtx");
    std::ofstream(bad) << "%%MatrixMarket matrix coordinate pattern general\n1 1 1\n1 1\n";
    const auto r = jagged_cli({"histogram", "-i", bad.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("pattern") != std::string::npos);
    std::filesystem::remove(bad);
  }

  TEST_CASE("help exits 0") {
    const auto r = jagged_cli({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("dist-run") != std::string::npos);
  }

  TEST_CASE("generate and convert round trip") {
    const auto mtx = temp_path("gen.mtx");
    const auto jgd = temp_path("gen.jgd");
    CHECK(jagged_cli({"generate", "-g", "uniform:1:6", "-n", "50", "--seed", "3", "-o",
                      mtx.string()})
              .code == 0);
    const auto c = jagged_cli({"convert", "-i", mtx.string(), "-o", jgd.string(), "--json"});
    CHECK(c.code == 0);
    CHECK(json::parse(c.out)["nnz"] == read_snapshot(jgd).nnz());
    const auto expected = generate({50, shape::Uniform{1, 6}, 3});
    CHECK(read_snapshot(jgd) == expected);
    CHECK(load_matrix(mtx) == expected);
    // explicit format overrides the extension
    const auto odd = temp_path("gen.bin");
    CHECK(jagged_cli({"convert", "-i", jgd.string(), "-o", odd.string(), "-f", "mtx"}).code == 0);
    CHECK(slurp(odd).rfind("%%MatrixMarket", 0) == 0);
    CHECK(jagged_cli({"convert", "-i", jgd.string()}).code == 1);
    for (const auto& p : {mtx, jgd, odd}) std::filesystem::remove(p);
  }

  TEST_CASE("histogram table and json agree") {
    const std::vector<std::string> base{"histogram", "-g", "clustered:0.5:12:2", "-n", "300"};
    auto with_json = base;
    with_json.push_back("--json");
    const auto t = jagged_cli(base);
    const auto j = json::parse(jagged_cli(with_json).out);
    const auto h = generate({300, shape::Clustered{0.5, 12, 2}, 42});
    CHECK(j["nnz"] == h.nnz());
    std::size_t rows = 0;
    for (const auto& b : j["bins"]) {
      rows += b[1].get<std::size_t>();
      const auto line = std::to_string(b[0].get<std::size_t>()) + " " +
                        std::to_string(b[1].get<std::size_t>()) + "\n";
      CHECK(t.out.find(line) != std::string::npos);
    }
    CHECK(rows == 300);
  }

  TEST_CASE("footprint table lists every format") {
    const auto mtx = temp_path("fp.mtx");
    write_matrix_market(generate({1024, shape::Adversarial{}, 0}), mtx);
    const auto r = jagged_cli({"footprint", "--input", mtx.string(), "--block-rows", "32"});
    CHECK(r.code == 0);
    for (const char* f : {"csr", "ellpack ", "ellpack-r", "pjds"}) {
      CHECK(r.out.find(f) != std::string::npos);
    }
    CHECK(r.out.find("33760") != std::string::npos);
    CHECK(r.out.find("1048576") != std::string::npos);
    const auto j = json::parse(
        jagged_cli({"footprint", "-i", mtx.string(), "-b", "32", "--json"}).out);
    REQUIRE(j.size() == 4);
    CHECK(j[3]["format"] == "pjds");
    CHECK(j[3]["stored_entries"] == 33760);
    CHECK(j[3]["data_reduction_vs_ellpack"].get<double>() == 0.967803955078125);
    std::filesystem::remove(mtx);
  }

  TEST_CASE("spmv-check passes on generated matrices") {
    const auto r = jagged_cli({"spmv-check", "-g", "uniform:1:40", "-n", "700", "--chunks", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    const auto j = json::parse(
        jagged_cli({"spmv-check", "-g", "adversarial", "-n", "100", "-f", "pjds", "--json"}).out);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["pass"] == true);
    CHECK(j[0]["stats"]["useful_fma"] == 199);
  }

  TEST_CASE("model thresholds") {
    const auto r = jagged_cli({"model", "--ratio", "20", "--alpha", "reciprocal"});
    CHECK(r.code == 0);
    CHECK(r.out.find("(~25)") != std::string::npos);
    const auto j = json::parse(
        jagged_cli({"model", "--ratio", "10", "--alpha", "1", "--json"}).out);
    CHECK(j["n_nzr_upper_50pct"]["exact"].get<double>() == doctest::Approx(7.2));
    CHECK(j["n_nzr_lower_10pct"]["exact"].get<double>() == doctest::Approx(79.2));
    CHECK(jagged_cli({"model", "--ratio", "20", "--b-pci", "1e9"}).code == 1);
  }

  TEST_CASE("model report for a matrix or an n_nzr value") {
    const auto j = json::parse(jagged_cli({"model", "-g", "constant:15", "-n", "2000",
                                           "--ratio", "20", "--alpha", "reciprocal", "--json"})
                                   .out);
    CHECK(j["n_nzr"] == 15.0);
    CHECK(j["verdict"] == "unfavorable");
    const auto d = json::parse(
        jagged_cli({"model", "--nnzr", "144", "--ratio", "10", "--json"}).out);
    CHECK(d["verdict"] == "favorable");
    const auto s = json::parse(jagged_cli({"model", "--nnzr", "8", "--precision", "sp",
                                           "--split", "--alpha", "0.5", "--json"})
                                   .out);
    CHECK(s["balance"].get<double>() == doctest::Approx(4.0 + 1.0 + 0.5 + 0.5));
  }

  TEST_CASE("dist-run checksum matches the split-order oracle") {
    const auto r = jagged_cli({"dist-run", "-g", "uniform:1:30", "-n", "500", "--seed", "7",
                               "--ranks", "4", "--mode", "task", "--cost", "default"});
    CHECK(r.code == 0);
    const auto m = generate({500, shape::Uniform{1, 30}, 7});
    const auto x = random_vector(500, 7);
    const auto ranges = oracle::even_ranges(500, 4);
    const auto expected = checksum(oracle::split_order_spmv(m, ranges, x));
    CHECK(r.out.find("checksum=" + hex(expected)) != std::string::npos);
    CHECK(r.out.find("rank,lane,begin_s,end_s,label\n") != std::string::npos);
  }

  TEST_CASE("dist-run, all modes, json and files") {
    const auto csv = temp_path("t.csv");
    const auto trace = temp_path("t.json");
    const auto r = jagged_cli({"dist-run", "-g", "banded:-2,2", "-n", "400", "-r", "8",
                               "--json", "--timeline-csv", csv.string(), "--trace-json",
                               trace.string()});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["modes_identical"] == true);
    REQUIRE(j["results"].size() == 3);
    const auto sum = j["results"][0]["checksum"];
    for (const auto& res : j["results"]) {
      CHECK(res["checksum"] == sum);
      CHECK(res.contains("simulated_time"));
    }
    CHECK(slurp(csv).rfind("rank,lane,begin_s,end_s,label\n", 0) == 0);
    CHECK(json::parse(slurp(trace)).contains("traceEvents"));
    const auto none = json::parse(
        jagged_cli({"dist-run", "-g", "banded:-2,2", "-n", "400", "-r", "8", "--cost", "none",
                    "--json"})
            .out);
    CHECK_FALSE(none["results"][0].contains("simulated_time"));
    CHECK(none["results"][0]["checksum"] == sum);
    std::filesystem::remove(csv);
    std::filesystem::remove(trace);
  }

  TEST_CASE("--output writes the result to a file") {
    const auto out = temp_path("model.txt");
    const auto r = jagged_cli({"model", "--ratio", "10", "-o", out.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(slurp(out).find("n_nzr_upper_50pct") != std::string::npos);
    std::filesystem::remove(out);
  }

  TEST_CASE("deterministic output") {
    const std::vector<std::string> args{"dist-run", "-g", "clustered:0.3:20:1", "-n", "300",
                                        "-r", "3"};
    CHECK(jagged_cli(args).out == jagged_cli(args).out);
  }
}
