#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "caforge/bounds.hpp"
#include "caforge/coverage.hpp"
#include "caforge/io.hpp"
#include "caforge/pipeline.hpp"

namespace {

using namespace caforge;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kNotCovering = 1;
constexpr int kBadInput = 2;
constexpr int kConstructionFailed = 3;
constexpr int kVerificationFailed = 4;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_r_mult(const std::string& s) {
  if (s == "inf") return INFINITY;
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Usage("--r-mult must be a positive number or inf");
  }
  if (used != s.size() || !(x > 0) || std::isnan(x)) throw Usage("--r-mult must be a positive number or inf");
  return x;
}

std::string num(double x, int precision = 2) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << x;
  return os.str();
}

json report_json(const RunSpec& spec, const RunReport& r) {
  json j;
  j["schema"] = "ca-forge/1";
  j["t"] = spec.p.t;
  j["k"] = spec.p.k;
  j["v"] = spec.p.v;
  j["group"] = std::string(to_string(spec.group));
  j["stage1"] = std::string(to_string(spec.stage1));
  j["stage2"] = std::string(to_string(spec.stage2));
  j["r_mult"] = std::isinf(spec.r_mult) ? json("inf") : json(spec.r_mult);
  j["seed"] = spec.seed;
  j["n_stage1"] = r.n_stage1;
  j["uncovered_after_stage1"] = r.uncovered_after_stage1;
  j["rows_stage2"] = r.rows_stage2;
  j["N_final"] = r.N_final;
  j["bound_predicted"] = r.bound_predicted;
  j["retries"] = r.retries;
  j["resamples"] = r.resamples;
  j["wall_time"] = r.wall_time;
  j["verified"] = r.verified ? json(*r.verified) : json("skipped");
  if (spec.stage1 == Stage1Kind::mt) j["subset_size"] = r.subset_size;
  return j;
}

struct ConstructOpts {
  unsigned t = 0, k = 0, v = 0;
  std::string stage1 = "rand", stage2 = "naive", r_mult = "1", group = "trivial";
  std::uint64_t seed = 0;
  std::string out, report;
  bool verify = false;
  unsigned max_retries = 20;
  std::uint64_t iteration_cap = kDefaultIterationCap;
  double time_budget = 0;
};

int cmd_construct(const ConstructOpts& o) {
  RunSpec spec;
  try {
    spec.p = Parameters{o.t, o.k, o.v};
    spec.stage1 = parse_stage1(o.stage1);
    spec.stage2 = parse_stage2(o.stage2);
    spec.group = parse_group(o.group);
    spec.r_mult = parse_r_mult(o.r_mult);
    spec.seed = o.seed;
    spec.verify = o.verify;
    spec.max_retries = o.max_retries;
    spec.iteration_cap = o.iteration_cap;
    if (o.time_budget > 0) spec.time_budget = o.time_budget;
    spec.validate();
    (void)OrbitTable(spec.p, spec.group);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }

  RunResult result;
  try {
    result = run(spec);
  } catch (const VerificationFailed& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kVerificationFailed;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "construction failed: " << e.what() << '\n';
    return kConstructionFailed;
  }

  try {
    ArrayFile file{std::move(result.array), spec.p.t, spec.p.v, {}};
    if (o.out.empty()) write_array_file(std::cout, file);
    else save_array_file(o.out, file);
    if (!o.report.empty()) {
      std::ofstream rep(o.report);
      if (!rep) throw InvalidArgument("cannot write " + o.report);
      rep << report_json(spec, result.report).dump(2) << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
  std::cerr << "N=" << result.report.N_final << " (stage 1: " << result.report.n_stage1
            << " rows, uncovered " << result.report.uncovered_after_stage1 << ", stage 2: "
            << result.report.rows_stage2 << " rows; bound " << num(result.report.bound_predicted) << ")\n";
  return kOk;
}

int cmd_verify(const std::string& path, unsigned t, unsigned v) {
  ArrayFile file;
  Parameters p;
  try {
    file = load_array_file(path);
    if (v && v != file.v) throw InvalidArgument("--v " + std::to_string(v) + " differs from the header's " + std::to_string(file.v));
    p = Parameters{t ? t : file.t, static_cast<unsigned>(file.array.cols()), file.v};
    p.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
  if (auto miss = first_uncovered(file.array, p)) {
    std::cout << "not a covering array; uncovered: " << to_string(*miss) << '\n';
    return kNotCovering;
  }
  std::cout << "CA(" << file.array.rows() << ";" << p.t << "," << p.k << "," << p.v << ") verified\n";
  return kOk;
}

std::string opt(const std::optional<double>& x) { return x ? num(*x) : ""; }
std::string opt(const std::optional<std::uint64_t>& x) { return x ? std::to_string(*x) : ""; }

json bound_json(const BoundReport& b) {
  json j;
  j["t"] = b.params.t;
  j["k"] = b.params.k;
  j["v"] = b.params.v;
  j["slj"] = b.slj;
  j["discrete_slj"] = b.discrete_slj;
  j["two_stage"] = b.two_stage;
  j["gss"] = b.gss ? json(*b.gss) : json(nullptr);
  j["cyclic_two_stage"] = b.cyclic_two_stage;
  j["frobenius_two_stage"] = b.frobenius_two_stage ? json(*b.frobenius_two_stage) : json(nullptr);
  j["lll_two_stage"] = b.lll_two_stage ? json(*b.lll_two_stage) : json(nullptr);
  j["optimistic_coloring"] = b.optimistic_coloring;
  j["conservative_coloring"] = b.conservative_coloring;
  j["lll_first_stage_n"] = b.lll_first_stage_n ? json(*b.lll_first_stage_n) : json(nullptr);
  j["lll_first_stage_m"] = b.lll_first_stage_m ? json(*b.lll_first_stage_m) : json(nullptr);
  return j;
}

int cmd_bounds(unsigned t, unsigned k, unsigned v, unsigned k_max, const std::string& format) {
  if (format != "csv" && format != "json") {
    std::cerr << "error: --format must be csv or json\n";
    return kBadInput;
  }
  if (k_max == 0) k_max = k;
  std::vector<BoundReport> rows;
  try {
    if (k_max < k) throw InvalidArgument("--k-max must be at least --k");
    for (unsigned kk = k; kk <= k_max; ++kk) rows.push_back(bound_report(Parameters{t, kk, v}));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
  if (format == "json") {
    json arr = json::array();
    for (const auto& b : rows) arr.push_back(bound_json(b));
    std::cout << arr.dump(2) << '\n';
    return kOk;
  }
  std::cout << "t,k,v,slj,discrete_slj,two_stage,gss,cyclic_two_stage,frobenius_two_stage,lll_two_stage,"
               "optimistic_coloring,conservative_coloring,lll_first_stage_n,lll_first_stage_m\n";
  for (const auto& b : rows) {
    std::cout << b.params.t << ',' << b.params.k << ',' << b.params.v << ',' << num(b.slj) << ',' << b.discrete_slj
              << ',' << num(b.two_stage) << ',' << opt(b.gss) << ',' << num(b.cyclic_two_stage) << ','
              << opt(b.frobenius_two_stage) << ',' << opt(b.lll_two_stage) << ',' << num(b.optimistic_coloring) << ','
              << num(b.conservative_coloring) << ',' << opt(b.lll_first_stage_n) << ',' << opt(b.lll_first_stage_m)
              << '\n';
  }
  return kOk;
}

int cmd_benchmark(const std::string& grid_path, const std::string& out_path, bool timing) {
  std::vector<RunSpec> grid;
  try {
    std::ifstream in(grid_path);
    if (!in) throw InvalidArgument("cannot open " + grid_path);
    grid = parse_grid(in);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
  if (out_path.empty()) {
    benchmark(grid, std::cout, timing);
    return kOk;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << '\n';
    return kBadInput;
  }
  benchmark(grid, out, timing);
  return kOk;
}

// Series for plotting, by name.
std::optional<double> series(const BoundReport& b, const std::string& name) {
  if (name == "slj") return b.slj;
  if (name == "discrete_slj") return static_cast<double>(b.discrete_slj);
  if (name == "two_stage") return b.two_stage;
  if (name == "gss") return b.gss;
  if (name == "cyclic_two_stage") return b.cyclic_two_stage;
  if (name == "frobenius_two_stage") return b.frobenius_two_stage;
  if (name == "lll_two_stage") return b.lll_two_stage;
  if (name == "optimistic_coloring") return b.optimistic_coloring;
  if (name == "conservative_coloring") return b.conservative_coloring;
  throw Usage("unknown series '" + name + "'");
}

int cmd_plot_data(unsigned t, unsigned k, unsigned k_max, unsigned v, const std::vector<std::string>& names,
                  const std::string& baseline) {
  try {
    if (k_max == 0) k_max = k;
    if (k_max < k) throw InvalidArgument("--k-max must be at least --k");
    BoundReport probe;
    for (const auto& n : names) (void)series(probe, n);
    if (!baseline.empty()) (void)series(probe, baseline);
    std::vector<std::string> lines;
    for (unsigned kk = k; kk <= k_max; ++kk) {
      const BoundReport b = bound_report(Parameters{t, kk, v});
      const std::optional<double> base = baseline.empty() ? std::optional<double>(0.0) : series(b, baseline);
      std::string line = std::to_string(kk);
      for (const auto& n : names) {
        const auto x = series(b, n);
        line += ',';
        if (x && base) line += num(*x - *base);
      }
      lines.push_back(std::move(line));
    }
    std::cout << 'k';
    for (const auto& n : names) std::cout << ',' << n;
    std::cout << '\n';
    for (const auto& l : lines) std::cout << l << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-stage covering array construction and size bounds"};
  app.require_subcommand(1);
  int jobs = 0;
  app.add_option("--jobs", jobs, "worker threads for coverage scans")->check(CLI::PositiveNumber);

  ConstructOpts c;
  auto* construct = app.add_subcommand("construct", "build a covering array");
  construct->add_option("--t", c.t, "strength")->required();
  construct->add_option("--k", c.k, "factors")->required();
  construct->add_option("--v", c.v, "levels")->required();
  construct->add_option("--stage1", c.stage1, "rand | mt")->check(CLI::IsMember({"rand", "mt"}));
  construct->add_option("--stage2", c.stage2, "naive | greedy | col | den")
      ->check(CLI::IsMember({"naive", "greedy", "col", "den"}));
  construct->add_option("--r-mult", c.r_mult, "r as a multiple of rho, or inf");
  construct->add_option("--group", c.group, "trivial | cyclic | frobenius")
      ->check(CLI::IsMember({"trivial", "cyclic", "frobenius"}));
  construct->add_option("--seed", c.seed, "random seed");
  construct->add_option("--out", c.out, "array file (stdout if absent)");
  construct->add_flag("--verify", c.verify, "check every t-way interaction of the result");
  construct->add_option("--report", c.report, "JSON run report");
  construct->add_option("--max-retries", c.max_retries, "first-stage attempts")->check(CLI::PositiveNumber);
  construct->add_option("--iteration-cap", c.iteration_cap, "Moser-Tardos resample cap")->check(CLI::PositiveNumber);
  construct->add_option("--time-budget", c.time_budget, "seconds")->check(CLI::PositiveNumber);

  std::string in_path;
  unsigned vt = 0, vv = 0;
  auto* verify = app.add_subcommand("verify", "check an array file");
  verify->add_option("--in", in_path, "array file")->required();
  verify->add_option("--t", vt, "strength (header value if absent)");
  verify->add_option("--v", vv, "levels; must match the header");

  unsigned bt = 0, bk = 0, bv = 0, bk_max = 0;
  std::string format = "csv";
  auto* bounds = app.add_subcommand("bounds", "size bounds over a range of k");
  bounds->add_option("--t", bt, "strength")->required();
  bounds->add_option("--k", bk, "factors (first)")->required();
  bounds->add_option("--v", bv, "levels")->required();
  bounds->add_option("--k-max", bk_max, "factors (last)");
  bounds->add_option("--format", format, "csv | json");

  std::string grid_path, csv_path;
  bool no_timing = false;
  auto* bench = app.add_subcommand("benchmark", "run a grid of constructions");
  bench->add_option("--grid", grid_path, "grid file")->required();
  bench->add_option("--out", csv_path, "CSV output (stdout if absent)");
  bench->add_flag("--no-timing", no_timing, "write 0 in the seconds column");

  unsigned pt = 0, pk = 0, pv = 0, pk_max = 0;
  std::vector<std::string> names = {"slj", "discrete_slj", "two_stage"};
  std::string baseline;
  auto* plot = app.add_subcommand("plot-data", "bound series as CSV, optionally relative to a baseline");
  plot->add_option("--t", pt, "strength")->required();
  plot->add_option("--k", pk, "factors (first)")->required();
  plot->add_option("--k-max", pk_max, "factors (last)");
  plot->add_option("--v", pv, "levels")->required();
  plot->add_option("--series", names, "series names")->delimiter(',');
  plot->add_option("--baseline", baseline, "series subtracted from every column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }
  if (jobs > 0) omp_set_num_threads(jobs);

  try {
    if (*construct) return cmd_construct(c);
    if (*verify) return cmd_verify(in_path, vt, vv);
    if (*bounds) return cmd_bounds(bt, bk, bv, bk_max, format);
    if (*bench) return cmd_benchmark(grid_path, csv_path, !no_timing);
    if (*plot) return cmd_plot_data(pt, pk, pk_max, pv, names, baseline);
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kBadInput;
}
