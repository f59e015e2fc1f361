#include "caforge/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <boost/algorithm/string/trim.hpp>

#include "caforge/bounds.hpp"
#include "caforge/coverage.hpp"
#include "caforge/rng.hpp"
#include "caforge/stage2.hpp"

namespace caforge {

std::string_view to_string(Stage1Kind s) { return s == Stage1Kind::rand ? "rand" : "mt"; }

std::string_view to_string(Stage2Kind s) {
  switch (s) {
    case Stage2Kind::naive: return "naive";
    case Stage2Kind::greedy: return "greedy";
    case Stage2Kind::col: return "col";
    case Stage2Kind::den: return "den";
  }
  return "?";
}

Stage1Kind parse_stage1(std::string_view s) {
  if (s == "rand") return Stage1Kind::rand;
  if (s == "mt") return Stage1Kind::mt;
  throw InvalidArgument("unknown stage1 '" + std::string(s) + "'");
}

Stage2Kind parse_stage2(std::string_view s) {
  if (s == "naive") return Stage2Kind::naive;
  if (s == "greedy") return Stage2Kind::greedy;
  if (s == "col") return Stage2Kind::col;
  if (s == "den") return Stage2Kind::den;
  throw InvalidArgument("unknown stage2 '" + std::string(s) + "'");
}

void RunSpec::validate() const {
  p.validate();
  if (!(r_mult > 0)) throw InvalidArgument("r_mult must be positive");
  if (group == GroupKind::frobenius && !prime_power(p.v)) throw InvalidArgument("v must be a prime power");
  if (stage1 == Stage1Kind::mt && p.k < 2 * p.t)
    throw InvalidArgument("Moser-Tardos needs k >= 2t (" + p.str() + ")");
  if (time_budget && !(*time_budget > 0)) throw InvalidArgument("time budget must be positive");
}

namespace {

using Clock = std::chrono::steady_clock;

class Watch {
 public:
  explicit Watch(std::optional<double> budget) : budget_(budget) {}

  double seconds() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

  void check(std::string_view phase) const {
    if (budget_ && seconds() > *budget_)
      throw BudgetExceeded("time budget of " + std::to_string(*budget_) + " s exceeded after " + std::string(phase));
  }

 private:
  Clock::time_point start_ = Clock::now();
  std::optional<double> budget_;
};

Array second_stage(const RunSpec& spec, const OrbitTable& table, const std::vector<Interaction>& items) {
  switch (spec.stage2) {
    case Stage2Kind::naive: {
      Rng rng(spec.seed, Stream::naive_fill);
      return naive_cover(items, table, rng);
    }
    case Stage2Kind::greedy: {
      Rng rng(spec.seed, Stream::stage2_fill);
      return greedy_cover(items, table, rng);
    }
    case Stage2Kind::col: {
      Rng rng(spec.seed, Stream::stage2_fill);
      return color_cover(build_incompat_graph(items, table), table, rng).rows;
    }
    case Stage2Kind::den: {
      Rng rng(spec.seed, Stream::stage2_fill);
      return density_cover(items, table, rng).rows;
    }
  }
  return {};
}

}  // namespace

RunResult run(const RunSpec& spec) {
  spec.validate();
  const Watch watch(spec.time_budget);
  const Parameters& p = spec.p;
  const OrbitTable table(p, spec.group);
  const double order = static_cast<double>(table.group().order());
  const double constants = table.group().constant_rows();
  const double orbits = orbit_count(p, spec.group).full.convert_to<double>();
  const double l = orbit_log_base(p, spec.group);

  RunReport rep;
  Stage1Result first;
  if (spec.stage1 == Stage1Kind::rand) {
    const double r = spec.r_mult / l;
    const FirstStageN fs = first_stage_n(p, spec.group, r);
    rep.bound_predicted = order * (fs.exact + std::min(r, orbits)) + constants;
    // Rows per group copy that keep N_final within the ceiling of the bound.
    const double budget = std::floor((std::ceil(rep.bound_predicted) - constants) / order);
    std::uint64_t n = fs.n;
    double accept = r;
    if (budget >= 0) {
      n = std::min(n, static_cast<std::uint64_t>(budget));
      accept = std::min(accept, budget - static_cast<double>(n));
    }
    first = rand_first_stage(p, spec.group, Stage1Config{n, accept, spec.max_retries, spec.seed});
    rep.n_stage1 = n;
  } else {
    const LllFirstStage lll = lll_first_stage_n(p, spec.group);
    const TupleSubset subset = TupleSubset::first(table, lll.m);
    first = mt_first_stage(p, spec.group, subset, lll.n, spec.seed, spec.iteration_cap);
    const double per_set = static_cast<double>(table.representatives().size());
    const double sets = binomial(p.k, p.t).convert_to<double>();
    const double miss = std::exp(-l * static_cast<double>(lll.n));
    rep.bound_predicted = order * (static_cast<double>(lll.n) + sets * (per_set - lll.m) * miss) + constants;
    rep.n_stage1 = lll.n;
    rep.subset_size = lll.m;
  }
  rep.retries = first.attempts - 1;
  rep.resamples = first.resamples;
  rep.uncovered_after_stage1 = first.report.uncovered_count;
  watch.check("stage 1");

  const Array extra = second_stage(spec, table, first.report.uncovered);
  rep.rows_stage2 = extra.rows();
  watch.check("stage 2");

  Array base = std::move(first.array);
  base.append(extra);
  Array developed = table.group().develop(base);
  rep.N_final = developed.rows();

  if (spec.verify) {
    watch.check("development");
    if (auto miss = first_uncovered(developed, p))
      throw VerificationFailed("final array misses " + to_string(*miss));
    rep.verified = true;
  }
  rep.wall_time = watch.seconds();
  return RunResult{std::move(developed), rep};
}

namespace {

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const RetriesExhausted*>(&e)) return "retries_exhausted";
  if (dynamic_cast<const IterationCapExceeded*>(&e)) return "iteration_cap";
  if (dynamic_cast<const VerificationFailed*>(&e)) return "verification_failed";
  if (dynamic_cast<const GuaranteeViolated*>(&e)) return "guarantee_violated";
  if (dynamic_cast<const InconsistentClass*>(&e)) return "inconsistent_class";
  if (dynamic_cast<const BudgetExceeded*>(&e)) return "budget_exceeded";
  if (dynamic_cast<const InvalidArgument*>(&e)) return "invalid_argument";
  return "internal";
}

std::string fmt(double x, int precision) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(precision);
  os << x;
  return os.str();
}

std::string fmt_general(double x) {
  if (std::isinf(x)) return "inf";
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

void benchmark(const std::vector<RunSpec>& grid, std::ostream& out, bool timing) {
  if (grid.empty()) throw InvalidArgument("benchmark grid is empty");
  out << kCsvHeader << '\n';
  for (const RunSpec& spec : grid) {
    out << spec.p.t << ',' << spec.p.k << ',' << spec.p.v << ',' << to_string(spec.group) << ','
        << to_string(spec.stage1) << ',' << to_string(spec.stage2) << ',' << fmt_general(spec.r_mult) << ','
        << spec.seed << ',';
    try {
      const RunReport rep = run(spec).report;
      out << rep.n_stage1 << ',' << rep.uncovered_after_stage1 << ',' << rep.rows_stage2 << ',' << rep.N_final << ','
          << fmt(rep.bound_predicted, 2) << ',' << (rep.verified ? "true" : "skipped") << ','
          << (timing ? fmt(rep.wall_time, 3) : "0") << '\n';
    } catch (const std::exception& e) {
      out << ",,,,,error:" << error_kind(e) << ",0\n";
    }
  }
}

namespace {

enum class Key { t, k, v, group, stage1, stage2, r_mult, seed, verify, max_retries, iteration_cap, time_budget };

const std::vector<std::pair<std::string_view, Key>>& key_names() {
  static const std::vector<std::pair<std::string_view, Key>> names = {
      {"t", Key::t},
      {"k", Key::k},
      {"v", Key::v},
      {"group", Key::group},
      {"stage1", Key::stage1},
      {"stage2", Key::stage2},
      {"r_mult", Key::r_mult},
      {"seed", Key::seed},
      {"verify", Key::verify},
      {"max_retries", Key::max_retries},
      {"iteration_cap", Key::iteration_cap},
      {"time_budget", Key::time_budget},
  };
  return names;
}

[[noreturn]] void grid_error(std::size_t line, const std::string& what) {
  throw InvalidArgument("grid line " + std::to_string(line) + ": " + what);
}

std::uint64_t parse_u64(const std::string& s, std::size_t line) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) grid_error(line, "bad integer '" + s + "'");
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    grid_error(line, "integer out of range '" + s + "'");
  }
}

double parse_real(const std::string& s, std::size_t line) {
  if (s == "inf") return INFINITY;
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    grid_error(line, "bad number '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(x)) grid_error(line, "bad number '" + s + "'");
  return x;
}

bool is_integer_key(Key k) {
  return k == Key::t || k == Key::k || k == Key::v || k == Key::seed || k == Key::max_retries ||
         k == Key::iteration_cap;
}

std::vector<std::string> split_values(const std::string& value, Key key, std::size_t line) {
  std::vector<std::string> out;
  std::istringstream is(value);
  std::string item;
  while (std::getline(is, item, ',')) {
    boost::algorithm::trim(item);
    if (item.empty()) grid_error(line, "empty value");
    const auto dots = item.find("..");
    if (dots != std::string::npos && is_integer_key(key)) {
      const std::uint64_t lo = parse_u64(item.substr(0, dots), line);
      const std::uint64_t hi = parse_u64(item.substr(dots + 2), line);
      if (hi < lo) grid_error(line, "empty range '" + item + "'");
      if (hi - lo > 100000) grid_error(line, "range too long '" + item + "'");
      for (std::uint64_t x = lo; x <= hi; ++x) out.push_back(std::to_string(x));
    } else {
      out.push_back(item);
    }
  }
  if (out.empty()) grid_error(line, "empty value");
  return out;
}

unsigned narrow(std::uint64_t x, std::size_t line) {
  if (x > 0xFFFFFFFFull) grid_error(line, "value too large");
  return static_cast<unsigned>(x);
}

void assign(RunSpec& spec, Key key, const std::string& value, std::size_t line) {
  try {
    switch (key) {
      case Key::t: spec.p.t = narrow(parse_u64(value, line), line); break;
      case Key::k: spec.p.k = narrow(parse_u64(value, line), line); break;
      case Key::v: spec.p.v = narrow(parse_u64(value, line), line); break;
      case Key::group: spec.group = parse_group(value); break;
      case Key::stage1: spec.stage1 = parse_stage1(value); break;
      case Key::stage2: spec.stage2 = parse_stage2(value); break;
      case Key::r_mult: spec.r_mult = parse_real(value, line); break;
      case Key::seed: spec.seed = parse_u64(value, line); break;
      case Key::verify:
        if (value == "true") spec.verify = true;
        else if (value == "false") spec.verify = false;
        else grid_error(line, "verify must be true or false");
        break;
      case Key::max_retries: spec.max_retries = narrow(parse_u64(value, line), line); break;
      case Key::iteration_cap: spec.iteration_cap = parse_u64(value, line); break;
      case Key::time_budget: spec.time_budget = parse_real(value, line); break;
    }
  } catch (const InvalidArgument& e) {
    if (std::string_view(e.what()).starts_with("grid line")) throw;
    grid_error(line, e.what());
  }
}

struct Stanza {
  std::map<Key, std::pair<std::vector<std::string>, std::size_t>> values;  // values and source line
  std::size_t first_line = 0;
};

void expand(const Stanza& st, std::vector<RunSpec>& out) {
  for (Key required : {Key::t, Key::k, Key::v})
    if (!st.values.count(required)) grid_error(st.first_line, "stanza lacks t, k or v");
  std::vector<std::pair<Key, const std::pair<std::vector<std::string>, std::size_t>*>> axes;
  for (const auto& [key, entry] : st.values) axes.emplace_back(key, &entry);
  std::vector<std::size_t> idx(axes.size(), 0);
  for (;;) {
    RunSpec spec;
    for (std::size_t a = 0; a < axes.size(); ++a)
      assign(spec, axes[a].first, axes[a].second->first[idx[a]], axes[a].second->second);
    try {
      spec.validate();
    } catch (const InvalidArgument& e) {
      grid_error(st.first_line, e.what());
    }
    out.push_back(spec);
    std::size_t a = axes.size();
    while (a > 0) {
      --a;
      if (++idx[a] < axes[a].second->first.size()) break;
      idx[a] = 0;
      if (a == 0) return;
    }
    if (axes.empty()) return;
  }
}

}  // namespace

std::vector<RunSpec> parse_grid(std::istream& in) {
  std::vector<RunSpec> out;
  Stanza cur;
  std::string raw;
  std::size_t line = 0;
  auto flush = [&] {
    if (!cur.values.empty()) expand(cur, out);
    cur = Stanza{};
  };
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    boost::algorithm::trim(raw);
    if (raw.empty()) {
      flush();
      continue;
    }
    const auto eq = raw.find('=');
    if (eq == std::string::npos) grid_error(line, "expected key=value");
    std::string key = raw.substr(0, eq);
    std::string value = raw.substr(eq + 1);
    boost::algorithm::trim(key);
    boost::algorithm::trim(value);
    const auto& names = key_names();
    const auto it = std::find_if(names.begin(), names.end(), [&](const auto& kv) { return kv.first == key; });
    if (it == names.end()) grid_error(line, "unknown key '" + key + "'");
    if (cur.values.count(it->second)) grid_error(line, "duplicate key '" + key + "'");
    if (cur.values.empty()) cur.first_line = line;
    cur.values[it->second] = {split_values(value, it->second, line), line};
  }
  flush();
  if (out.empty()) throw InvalidArgument("grid has no runs");
  return out;
}

}  // namespace caforge
