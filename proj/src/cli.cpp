#include "jagged/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "jagged/checksum.hpp"
#include "jagged/dist/cost_model.hpp"
#include "jagged/dist/runner.hpp"
#include "jagged/error.hpp"
#include "jagged/footprint.hpp"
#include "jagged/formats.hpp"
#include "jagged/generate.hpp"
#include "jagged/histogram.hpp"
#include "jagged/kernels.hpp"
#include "jagged/matrix_market.hpp"
#include "jagged/perfmodel.hpp"
#include "jagged/permutation.hpp"
#include "jagged/snapshot.hpp"

namespace jagged::cli {

namespace {

using nlohmann::json;

struct InputOptions {
  std::string input;
  std::string generate_spec;
  std::size_t rows = 1024;
  std::uint64_t seed = 42;
};

struct Common {
  InputOptions in;
  std::string output;
  bool json = false;
};

void add_input(CLI::App* cmd, InputOptions& in, bool required = true) {
  auto* file = cmd->add_option("--input,-i", in.input,
                               "Matrix Market (.mtx) or JGD1 snapshot file");
  auto* gen = cmd->add_option("--generate-spec,-g", in.generate_spec,
                              "synthetic matrix: constant:K | uniform:LO:HI | "
                              "clustered:FRAC:PEAK:TAIL_LO | adversarial | "
                              "banded:O1,O2,...");
  file->excludes(gen);
  gen->excludes(file);
  cmd->add_option("--rows,-n", in.rows, "rows of the generated matrix")
      ->capture_default_str();
  cmd->add_option("--seed", in.seed, "generator and RHS seed")
      ->capture_default_str();
  if (required) {
    cmd->callback([cmd, file, gen] {
      if (file->count() == 0 && gen->count() == 0) {
        throw CLI::RequiredError(cmd->get_name() +
                                 ": one of --input or --generate-spec");
      }
    });
  }
}

CsrMatrix load(const InputOptions& in) {
  if (!in.input.empty()) return load_matrix(in.input);
  return generate({in.rows, parse_distribution(in.generate_spec), in.seed});
}

double rel_error(std::span<const double> y, std::span<const double> ref) {
  double diff = 0.0;
  double norm = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    diff = std::max(diff, std::abs(y[i] - ref[i]));
    norm = std::max(norm, std::abs(ref[i]));
  }
  return norm == 0.0 ? diff : diff / norm;
}

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << "0x" << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

Precision parse_precision(const std::string& s) {
  return s == "sp" ? Precision::sp : Precision::dp;
}

json stats_json(const SpmvStats& s) {
  return {{"useful_fma", s.useful_fma},
          {"padded_fma", s.padded_fma},
          {"idle_lane_cycles", s.idle_lane_cycles},
          {"bytes_matrix", s.bytes_matrix},
          {"bytes_rhs_worst", s.bytes_rhs_worst},
          {"bytes_lhs", s.bytes_lhs}};
}

// ---------------------------------------------------------------------------

void cmd_generate(const Common& c, std::ostream& out) {
  const auto m = load(c.in);
  if (c.output.empty()) {
    write_matrix_market(m, out);
  } else if (std::filesystem::path(c.output).extension() == ".jgd") {
    write_snapshot(m, c.output);
  } else {
    write_matrix_market(m, c.output);
  }
}

void cmd_convert(const Common& c, const std::string& format, std::ostream& out) {
  const auto m = load(c.in);
  std::string fmt = format;
  if (fmt.empty()) {
    fmt = std::filesystem::path(c.output).extension() == ".jgd" ? "jgd" : "mtx";
  }
  if (fmt == "jgd") {
    write_snapshot(m, c.output);
  } else {
    write_matrix_market(m, c.output);
  }
  if (c.json) {
    out << json{{"output", c.output}, {"format", fmt}, {"n_rows", m.n_rows()},
                {"n_cols", m.n_cols()}, {"nnz", m.nnz()}}.dump()
        << '\n';
  } else {
    out << "wrote " << c.output << " (" << fmt << "): " << m.n_rows() << " x "
        << m.n_cols() << ", nnz " << m.nnz() << '\n';
  }
}

void cmd_histogram(const Common& c, std::ostream& out) {
  const auto h = histogram(load(c.in));
  if (c.json) {
    json bins = json::array();
    for (auto [len, count] : h.bins) bins.push_back({len, count});
    out << json{{"n_rows", h.n_rows}, {"nnz", h.nnz}, {"min_len", h.min_len},
                {"max_len", h.max_len}, {"mean_len", h.mean_len},
                {"bins", bins}}.dump()
        << '\n';
    return;
  }
  out << "# n_rows=" << h.n_rows << " nnz=" << h.nnz << " min_len=" << h.min_len
      << " max_len=" << h.max_len << " mean_len=" << h.mean_len << '\n';
  out << "# length count\n";
  for (auto [len, count] : h.bins) out << len << ' ' << count << '\n';
}

void cmd_footprint(const Common& c, std::size_t warp, const std::string& prec,
                   std::ostream& out) {
  const auto m = load(c.in);
  const auto p = parse_precision(prec);
  const std::vector<FootprintReport> reports{
      footprint(m, p, warp),
      footprint(build_ellpack(m, warp), p),
      footprint(build_ellpack_r(m, warp), p),
      footprint(build_pjds(m, warp), p),
  };
  if (c.json) {
    json list = json::array();
    for (const auto& r : reports) list.push_back(json::parse(to_json(r)));
    out << list.dump() << '\n';
    return;
  }
  out << std::left << std::setw(11) << "format" << std::right << std::setw(15)
      << "stored" << std::setw(15) << "bytes_values" << std::setw(15)
      << "bytes_indices" << std::setw(12) << "bytes_aux" << std::setw(12)
      << "overhead" << std::setw(12) << "reduction" << '\n';
  for (const auto& r : reports) {
    out << std::left << std::setw(11) << r.format << std::right << std::setw(15)
        << r.stored_entries << std::setw(15) << r.bytes_values << std::setw(15)
        << r.bytes_indices << std::setw(12) << r.bytes_aux << std::setw(12)
        << std::setprecision(6) << r.padding_overhead_fraction << std::setw(12)
        << r.data_reduction_vs_ellpack << '\n';
  }
}

int cmd_spmv_check(const Common& c, std::size_t warp, std::size_t chunks,
                   const std::string& format, std::ostream& out) {
  constexpr double tolerance = 1e-13;
  const auto m = load(c.in);
  const auto x = random_vector(m.n_cols(), c.in.seed);
  const auto ref = spmv_csr(m, x);

  struct Row {
    std::string name;
    double error;
    bool parallel_identical;
    std::optional<SpmvStats> stats;
  };
  std::vector<Row> rows;
  auto want = [&](const char* name) { return format == "all" || format == name; };

  if (want("csr")) {
    const auto par = spmv_parallel(m, x, chunks);
    rows.push_back({"csr", rel_error(ref, ref), par == ref, std::nullopt});
  }
  if (want("ellpack")) {
    const auto e = build_ellpack(m, warp);
    const auto r = spmv_ellpack(e, x);
    rows.push_back({"ellpack", rel_error(r.y, ref), spmv_parallel(e, x, chunks) == r.y,
                    r.stats});
  }
  if (want("ellpack-r")) {
    const auto e = build_ellpack_r(m, warp);
    const auto r = spmv_ellpack_r(e, x);
    rows.push_back({"ellpack-r", rel_error(r.y, ref),
                    spmv_parallel(e, x, chunks) == r.y, r.stats});
  }
  if (want("pjds")) {
    const auto p = build_pjds(m, warp);
    const auto r = spmv_pjds(p, x);
    const auto y = permute_vector(r.y, p.permutation(), PermuteDirection::inverse);
    rows.push_back({"pjds", rel_error(y, ref), spmv_parallel(p, x, chunks) == r.y,
                    r.stats});
  }
  if (rows.empty()) throw CLI::ValidationError("--format", "unknown format " + format);

  bool ok = true;
  json list = json::array();
  for (const auto& r : rows) {
    const bool pass = r.error <= tolerance && r.parallel_identical;
    ok = ok && pass;
    json j{{"format", r.name},
           {"max_rel_error", r.error},
           {"parallel_bitwise_identical", r.parallel_identical},
           {"pass", pass}};
    if (r.stats) j["stats"] = stats_json(*r.stats);
    list.push_back(j);
  }
  if (c.json) {
    out << list.dump() << '\n';
  } else {
    out << std::left << std::setw(11) << "format" << std::right << std::setw(14)
        << "rel_error" << std::setw(10) << "parallel" << std::setw(12)
        << "useful_fma" << std::setw(12) << "padded_fma" << std::setw(14)
        << "idle_lanes" << "  result\n";
    for (const auto& j : list) {
      out << std::left << std::setw(11) << j["format"].get<std::string>()
          << std::right << std::setw(14) << std::setprecision(3)
          << j["max_rel_error"].get<double>() << std::setw(10)
          << (j["parallel_bitwise_identical"].get<bool>() ? "same" : "DIFF");
      if (j.contains("stats")) {
        out << std::setw(12) << j["stats"]["useful_fma"].get<std::size_t>()
            << std::setw(12) << j["stats"]["padded_fma"].get<std::size_t>()
            << std::setw(14) << j["stats"]["idle_lane_cycles"].get<std::size_t>();
      } else {
        out << std::setw(12) << "-" << std::setw(12) << "-" << std::setw(14) << "-";
      }
      out << "  " << (j["pass"].get<bool>() ? "ok" : "FAIL") << '\n';
    }
  }
  return ok ? 0 : 2;
}

struct ModelOptions {
  double ratio = 0.0;
  double b_gpu = 91e9;
  double b_pci = 0.0;
  std::string alpha = "1";
  double n_nzr = 0.0;
  double n_rows = 1e6;
  std::string precision = "dp";
  bool split = false;
  double residency = 1.0;
};

model::Alpha parse_alpha(const std::string& s) {
  if (s == "reciprocal") return model::Alpha::reciprocal();
  std::size_t pos = 0;
  double a = 0.0;
  try {
    a = std::stod(s, &pos);
  } catch (const std::logic_error&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty()) {
    throw CLI::ValidationError("--alpha", "expected a number or 'reciprocal'");
  }
  return model::Alpha::fixed(a);
}

void cmd_model(const Common& c, const ModelOptions& o, std::ostream& out) {
  model::ModelParams p;
  p.alpha = parse_alpha(o.alpha);
  p.b_gpu = o.b_gpu;
  if (o.ratio > 0.0) {
    p.b_pci = o.b_gpu / o.ratio;
  } else if (o.b_pci > 0.0) {
    p.b_pci = o.b_pci;
  }
  p.precision = parse_precision(o.precision);
  p.split_kernel = o.split;
  p.pci_residency = o.residency;
  const double ratio = p.b_gpu / p.b_pci;

  const bool have_matrix = !c.in.input.empty() || !c.in.generate_spec.empty();
  if (!have_matrix && o.n_nzr <= 0.0) {
    const auto up = model::threshold_upper(ratio, p.alpha);
    const auto lo = model::threshold_lower(ratio, p.alpha);
    if (c.json) {
      out << json{{"ratio", ratio},
                  {"n_nzr_upper_50pct",
                   {{"exact", up.exact}, {"rounded", up.rounded}, {"bounded", up.bounded}}},
                  {"n_nzr_lower_10pct",
                   {{"exact", lo.exact}, {"rounded", lo.rounded}, {"bounded", lo.bounded}}}}
                 .dump()
          << '\n';
    } else {
      out << std::setprecision(6) << "ratio B_gpu/B_pci      " << ratio << '\n';
      out << "n_nzr_upper_50pct      " << up.exact << "  (~" << up.rounded << ")"
          << (up.bounded ? "" : "  no bound: bus faster than device") << '\n';
      out << "n_nzr_lower_10pct      " << lo.exact << "  (~" << lo.rounded << ")\n";
    }
    return;
  }

  model::ModelReport r;
  if (have_matrix) {
    r = model::report(p, histogram(load(c.in)));
  } else {
    p.n_nzr = o.n_nzr;
    p.n_rows = o.n_rows;
    r = model::report(p);
  }
  out << (c.json ? model::to_json(r) + "\n" : model::to_table(r));
}

struct DistOptions {
  int ranks = 4;
  std::string mode = "all";
  std::string cost = "default";
  std::string balance = "rows";
  std::string block_format = "ellpack-r";
  std::size_t warp = default_warp_size;
  std::string timeline_csv;
  std::string trace_json;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << text;
}

int cmd_dist_run(const Common& c, const DistOptions& o, std::ostream& out) {
  const auto m = load(c.in);
  const auto x = random_vector(m.n_cols(), c.in.seed);
  const auto balance = o.balance == "nnz" ? dist::Balance::nnz : dist::Balance::rows;
  const auto format =
      o.block_format == "pjds" ? dist::BlockFormat::pjds : dist::BlockFormat::ellpack_r;
  const dist::DistributedMatrix dm(m, o.ranks, balance, format, o.warp);

  std::vector<dist::Mode> modes;
  if (o.mode == "all") {
    modes = {dist::Mode::vector_plain, dist::Mode::vector_naive_overlap,
             dist::Mode::task_mode};
  } else {
    modes = {*dist::parse_mode(o.mode)};
  }

  const auto ref = spmv_csr(m, x);
  std::vector<dist::TimelineEvent> all_events;
  json results = json::array();
  std::optional<std::uint64_t> first_sum;
  bool identical = true;
  for (auto mode : modes) {
    auto r = dist::run_mode(mode, dm, x);
    const auto sum = checksum(r.y);
    if (!first_sum) first_sum = sum;
    identical = identical && sum == *first_sum;
    json j{{"mode", std::string(dist::to_string(mode))},
           {"checksum", hex(sum)},
           {"max_rel_error_vs_csr", rel_error(r.y, ref)}};
    if (o.cost != "none") {
      const auto sim = dist::simulate_cost(mode, dm, dist::CostParams{});
      j["simulated_time"] = sim.simulated_time;
      for (auto e : sim.timeline) {
        e.label = std::string(dist::to_string(mode)) + ": " + e.label;
        all_events.push_back(std::move(e));
      }
    }
    results.push_back(j);
  }

  if (!o.timeline_csv.empty()) write_file(o.timeline_csv, dist::to_csv(all_events));
  if (!o.trace_json.empty()) write_file(o.trace_json, dist::to_chrome_trace(all_events));

  if (c.json) {
    json doc{{"ranks", o.ranks},
             {"halo_volume", dm.schedule().total_volume()},
             {"modes_identical", identical},
             {"results", results}};
    if (o.cost != "none" && o.timeline_csv.empty()) {
      doc["timeline_csv"] = dist::to_csv(all_events);
    }
    out << doc.dump() << '\n';
  } else {
    out << "# ranks=" << o.ranks << " halo_volume=" << dm.schedule().total_volume()
        << " modes_identical=" << (identical ? "yes" : "no") << '\n';
    for (const auto& j : results) {
      out << "# " << std::left << std::setw(22) << j["mode"].get<std::string>()
          << " checksum=" << j["checksum"].get<std::string>() << " rel_err="
          << std::setprecision(3) << j["max_rel_error_vs_csr"].get<double>();
      if (j.contains("simulated_time")) {
        out << " simulated_time=" << std::setprecision(6)
            << j["simulated_time"].get<double>();
      }
      out << '\n';
    }
    if (o.cost != "none" && o.timeline_csv.empty()) out << dist::to_csv(all_events);
  }
  return identical ? 0 : 2;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse storage formats, spMVM kernels and performance models"};
  app.name("jagged");
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  Common c;
  auto common = [&](CLI::App* cmd, bool input_required = true) {
    add_input(cmd, c.in, input_required);
    cmd->add_option("--output,-o", c.output, "write results to this file");
    cmd->add_flag("--json", c.json, "structured output");
  };

  auto* generate_cmd = app.add_subcommand("generate", "write a synthetic matrix");
  common(generate_cmd);

  std::string convert_format;
  auto* convert = app.add_subcommand("convert", "convert between .mtx and .jgd");
  common(convert);
  convert->get_option("--output")->required();
  convert->add_option("--format,-f", convert_format, "output format")
      ->check(CLI::IsMember({"mtx", "jgd"}));

  auto* hist = app.add_subcommand("histogram", "row length histogram");
  common(hist);

  std::size_t warp = default_warp_size;
  std::string precision = "dp";
  auto* foot = app.add_subcommand("footprint", "storage footprint per format");
  common(foot);
  foot->add_option("--warp-size,--block-rows,-b", warp, "warp size / b_r")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  foot->add_option("--precision", precision)->check(CLI::IsMember({"sp", "dp"}));

  std::size_t chunks = 4;
  std::string check_format = "all";
  auto* check = app.add_subcommand("spmv-check", "verify every kernel against CSR");
  common(check);
  check->add_option("--warp-size,--block-rows,-b", warp, "warp size / b_r")
      ->check(CLI::PositiveNumber);
  check->add_option("--chunks", chunks, "parallel row chunks")
      ->check(CLI::PositiveNumber);
  check->add_option("--format,-f", check_format)
      ->check(CLI::IsMember({"all", "csr", "ellpack", "ellpack-r", "pjds"}));

  ModelOptions mo;
  auto* model_cmd = app.add_subcommand("model", "device/PCIe performance model");
  common(model_cmd, false);
  model_cmd->add_option("--ratio", mo.ratio, "B_gpu / B_pci")
      ->check(CLI::PositiveNumber);
  model_cmd->add_option("--b-gpu", mo.b_gpu, "device bandwidth, bytes/s")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  auto* bpci = model_cmd->add_option("--b-pci", mo.b_pci, "PCIe bandwidth, bytes/s")
                   ->check(CLI::PositiveNumber);
  bpci->excludes("--ratio");
  model_cmd->add_option("--alpha", mo.alpha, "RHS reuse in (0,1] or 'reciprocal'")
      ->capture_default_str();
  model_cmd->add_option("--nnzr", mo.n_nzr, "average non-zeros per row")
      ->check(CLI::PositiveNumber);
  model_cmd->add_option("--matrix-rows", mo.n_rows, "N when --nnzr is given");
  model_cmd->add_option("--precision", mo.precision)->check(CLI::IsMember({"sp", "dp"}));
  model_cmd->add_flag("--split", mo.split, "local/nonlocal split kernel");
  model_cmd->add_option("--pci-residency", mo.residency,
                        "fraction of vector traffic crossing the bus")
      ->check(CLI::Range(0.0, 1.0));

  DistOptions d;
  auto* dist_cmd = app.add_subcommand("dist-run", "distributed spMVM in all modes");
  common(dist_cmd);
  dist_cmd->add_option("--ranks,-r", d.ranks)->check(CLI::PositiveNumber);
  dist_cmd->add_option("--mode,-m", d.mode)
      ->check(CLI::IsMember({"all", "plain", "naive", "task"}));
  dist_cmd->add_option("--cost", d.cost, "cost model preset")
      ->check(CLI::IsMember({"default", "none"}));
  dist_cmd->add_option("--balance", d.balance)->check(CLI::IsMember({"rows", "nnz"}));
  dist_cmd->add_option("--block-format", d.block_format)
      ->check(CLI::IsMember({"ellpack-r", "pjds"}));
  dist_cmd->add_option("--warp-size,--block-rows,-b", d.warp)
      ->check(CLI::PositiveNumber);
  dist_cmd->add_option("--timeline-csv", d.timeline_csv, "write simulated timeline CSV");
  dist_cmd->add_option("--trace-json", d.trace_json, "write Chrome trace JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "jagged: " << e.what() << '\n';
    return 1;
  }

  std::ostringstream buffer;
  std::ofstream file;
  const bool to_file = !c.output.empty() && !convert->parsed() && !generate_cmd->parsed();
  std::ostream& sink = to_file ? static_cast<std::ostream&>(buffer) : out;

  int code = 0;
  try {
    if (generate_cmd->parsed()) {
      cmd_generate(c, out);
    } else if (convert->parsed()) {
      cmd_convert(c, convert_format, out);
    } else if (hist->parsed()) {
      cmd_histogram(c, sink);
    } else if (foot->parsed()) {
      cmd_footprint(c, warp, precision, sink);
    } else if (check->parsed()) {
      code = cmd_spmv_check(c, warp, chunks, check_format, sink);
    } else if (model_cmd->parsed()) {
      cmd_model(c, mo, sink);
    } else if (dist_cmd->parsed()) {
      code = cmd_dist_run(c, d, sink);
    }
    if (to_file) write_file(c.output, buffer.str());
  } catch (const CLI::ParseError& e) {
    err << "jagged: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "jagged: " << e.what() << '\n';
    return 2;
  }
  return code;
}

}  // namespace jagged::cli
