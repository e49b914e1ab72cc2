#include "kstat/cli.hpp"

#include "kstat/errors.hpp"
#include "kstat/estimators.hpp"
#include "kstat/evaluate.hpp"
#include "kstat/moments.hpp"
#include "kstat/render.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace kstat::cli {
namespace {

class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr unsigned kGeneralBenchCap = 12;

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

unsigned parse_positive(std::string_view s, std::string_view what) {
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v == 0) {
    throw parse_error(std::string(what) + ": expected a positive integer, got \"" + std::string(s) + "\"");
  }
  return v;
}

// Estimator selection shared by gen and eval.
struct SpecFlags {
  CLI::Option* order_opt = nullptr;
  CLI::Option* orders_opt = nullptr;
  CLI::Option* multi_opt = nullptr;
  CLI::Option* vars_opt = nullptr;
  unsigned order = 0;
  std::string orders;
  std::string multi;
  unsigned vars = 1;
  bool fast = false;
  bool allow_large = false;
};

void add_spec_flags(CLI::App& cmd, SpecFlags& f) {
  f.order_opt = cmd.add_option("--order", f.order, "k-statistic of order i");
  f.orders_opt = cmd.add_option("--orders", f.orders, "polykay, comma-separated orders such as 2,2");
  f.multi_opt = cmd.add_option("--multi", f.multi, "multivariate factors such as \"[1,1];[1,0]\"");
  f.vars_opt = cmd.add_option("--vars", f.vars, "number of variables (checked against --multi)");
  cmd.add_flag("--fast", f.fast, "exponential-polynomial path (only with --order)");
  cmd.add_flag("--allow-large", f.allow_large, "lift the set-partition enumeration limit");
  f.order_opt->excludes(f.orders_opt)->excludes(f.multi_opt);
  f.orders_opt->excludes(f.multi_opt);
}

EstimatorSpec spec_from(const SpecFlags& f) {
  const int chosen = static_cast<int>(f.order_opt->count() > 0) + static_cast<int>(f.orders_opt->count() > 0) +
                     static_cast<int>(f.multi_opt->count() > 0);
  if (chosen != 1) throw usage_error("exactly one of --order, --orders or --multi is required");
  if (f.fast && f.order_opt->count() == 0) throw usage_error("--fast applies only to --order");
  const bool vars_given = f.vars_opt->count() > 0;
  if (vars_given && f.vars == 0) throw usage_error("--vars must be positive");

  if (f.order_opt->count() > 0) {
    if (f.order == 0) throw usage_error("--order must be positive");
    if (vars_given && f.vars != 1) throw usage_error("--order builds a univariate statistic; drop --vars or use --multi");
    return EstimatorSpec::univariate(f.order);
  }
  if (f.orders_opt->count() > 0) {
    if (vars_given && f.vars != 1) throw usage_error("--orders builds a univariate polykay; drop --vars or use --multi");
    std::vector<unsigned> orders;
    for (auto part : split(f.orders, ',')) orders.push_back(parse_positive(part, "--orders"));
    return EstimatorSpec::polykay(orders);
  }
  EstimatorSpec spec = EstimatorSpec::parse(f.multi);
  if (vars_given && spec.vars != f.vars) {
    throw usage_error("--multi vectors have " + std::to_string(spec.vars) + " components but --vars is " +
                      std::to_string(f.vars));
  }
  return spec;
}

PowerSumPoly build(const SpecFlags& f, const EstimatorSpec& spec) {
  if (f.fast) return k_statistic_fast(f.order);
  GenerationOptions options;
  options.limits.allow_large = f.allow_large;
  try {
    return generate(spec, options);
  } catch (const resource_error& e) {
    if (spec.vars == 1 && spec.factors.size() == 1) {
      throw resource_error(std::string(e.what()) + "; use --fast for univariate k-statistics");
    }
    throw resource_error(std::string(e.what()) + "; pass --allow-large to lift the limit");
  }
}

RenderFormat format_from(const std::string& name) {
  try {
    return parse_render_format(name);
  } catch (const kstat::invalid_argument& e) {
    throw usage_error(e.what());
  }
}

int cmd_gen(const SpecFlags& f, const std::string& format, bool common_denominator, std::ostream& out) {
  const RenderFormat fmt = format_from(format);
  const EstimatorSpec spec = spec_from(f);
  const PowerSumPoly p = build(f, spec);
  RenderOptions options;
  options.common_denominator = common_denominator;
  out << render(p, fmt, options) << '\n';
  return kSuccess;
}

Dataset as_float(const Dataset& d) {
  if (!d.exact()) return d;
  std::vector<std::vector<double>> rows;
  rows.reserve(d.n());
  for (const auto& row : d.exact_rows()) {
    auto& r = rows.emplace_back();
    for (const auto& q : row) r.push_back(q.get_d());
  }
  return Dataset(d.columns(), std::move(rows));
}

int cmd_eval(const SpecFlags& f, const std::string& data_path, bool use_float, std::ostream& out) {
  const EstimatorSpec spec = spec_from(f);
  Dataset data = load_csv_file(data_path);
  if (use_float) data = as_float(data);
  if (data.vars() != spec.vars) {
    throw usage_error("estimator needs " + std::to_string(spec.vars) + " column(s) but " + data_path + " has " +
                      std::to_string(data.vars()));
  }
  if (data.n() < spec.total_weight()) {
    throw domain_error("sample size n = " + std::to_string(data.n()) + " is smaller than the estimator order " +
                       std::to_string(spec.total_weight()));
  }
  const PowerSumPoly p = build(f, spec);
  out << format_value(evaluate_estimator(p, data)) << '\n';
  return kSuccess;
}

// All non-zero vectors with `vars` components and total degree <= max_degree,
// in graded order.
std::vector<ExponentVector> vectors_up_to(unsigned vars, unsigned max_degree) {
  std::vector<ExponentVector> out;
  ExponentVector v(vars, 0);
  auto fill = [&](auto&& self, unsigned pos, unsigned remaining) -> void {
    if (pos + 1 == vars) {
      v[pos] = remaining;
      out.push_back(v);
      return;
    }
    for (unsigned e = remaining + 1; e-- > 0;) {
      v[pos] = e;
      self(self, pos + 1, remaining - e);
    }
  };
  for (unsigned d = 1; d <= max_degree; ++d) fill(fill, 0, d);
  return out;
}

std::vector<EstimatorSpec> parse_multi_grid(std::string_view text) {
  std::vector<EstimatorSpec> out;
  for (auto item : split(text, '|')) {
    if (item.empty()) throw parse_error("--multi-grid: empty item");
    if (item.starts_with("all:")) {
      const auto fields = split(item.substr(4), ':');
      if (fields.size() != 2) throw parse_error("--multi-grid: expected all:VARS:MAX_DEGREE, got \"" + std::string(item) + "\"");
      const unsigned vars = parse_positive(fields[0], "--multi-grid vars");
      const unsigned degree = parse_positive(fields[1], "--multi-grid degree");
      for (auto& t : vectors_up_to(vars, degree)) out.push_back(EstimatorSpec::multivariate({std::move(t)}));
    } else {
      out.push_back(EstimatorSpec::parse(item));
    }
  }
  return out;
}

struct VerifyFlags {
  CLI::Option* max_order_opt = nullptr;
  CLI::Option* max_polykay_opt = nullptr;
  CLI::Option* grid_opt = nullptr;
  unsigned max_order = 0;
  unsigned max_polykay_weight = 0;
  std::string grid;
  std::string report = "text";
  bool allow_large = false;
  bool corrupt = false;
};

std::vector<EstimatorSpec> verify_grid(const VerifyFlags& f) {
  if (f.max_order_opt->count() == 0 && f.max_polykay_opt->count() == 0 && f.grid_opt->count() == 0) {
    throw usage_error("verify needs at least one of --max-order, --max-polykay-weight or --multi-grid");
  }
  std::vector<EstimatorSpec> grid;
  auto push = [&](EstimatorSpec s) {
    if (std::find(grid.begin(), grid.end(), s) == grid.end()) grid.push_back(std::move(s));
  };
  for (unsigned i = 1; i <= f.max_order; ++i) push(EstimatorSpec::univariate(i));
  for (unsigned w = 2; w <= f.max_polykay_weight; ++w) {
    for (const auto& lambda : integer_partitions(w)) {
      if (lambda.length() >= 2) push(EstimatorSpec::polykay(lambda.parts()));
    }
  }
  if (f.grid_opt->count() > 0) {
    for (auto& s : parse_multi_grid(f.grid)) push(std::move(s));
  }
  return grid;
}

// Negative control: adds s_{t_1+...+t_r}/n, which shifts the expectation by
// the joint moment of that index.
PowerSumPoly corrupted(const EstimatorSpec& spec, const GenerationOptions& options) {
  ExponentVector total(spec.vars, 0);
  for (const auto& t : spec.factors) total = add_vectors(total, t);
  return generate(spec, options) + PowerSumPoly::symbol(total, NRational(NPoly(Rational(1)), NPoly::n()));
}

int cmd_verify(const VerifyFlags& f, std::ostream& out, std::ostream& err) {
  if (f.report != "text" && f.report != "json") throw usage_error("--report must be text or json");
  const auto grid = verify_grid(f);
  GenerationOptions options;
  options.limits.allow_large = f.allow_large;
  EstimatorGenerator generator = [&](const EstimatorSpec& s) {
    return f.corrupt ? corrupted(s, options) : generate(s, options);
  };

  bool all_pass = true;
  std::size_t passed = 0;
  std::vector<nlohmann::json> report;
  for (const auto& spec : grid) {
    const UnbiasednessReport r = verify_unbiased(spec, generator, options);
    all_pass = all_pass && r.passed;
    passed += r.passed ? 1 : 0;
    if (f.report == "json") {
      report.push_back({{"spec", spec.to_string()},
                        {"verdict", r.passed ? "PASS" : "FAIL"},
                        {"difference", r.passed ? nlohmann::json(nullptr) : to_json(r.difference)}});
    } else if (r.passed) {
      out << "PASS  " << spec.to_string() << '\n';
    } else {
      out << "FAIL  " << spec.to_string() << "  difference: " << render(r.difference, RenderFormat::Human) << '\n';
    }
  }
  if (f.report == "json") {
    out << "[\n";
    for (std::size_t i = 0; i < report.size(); ++i) out << "  " << report[i].dump() << (i + 1 < report.size() ? ",\n" : "\n");
    out << "]\n";
  } else {
    out << passed << '/' << grid.size() << " PASS\n";
  }
  if (!all_pass) err << "verify: " << (grid.size() - passed) << " estimator(s) failed the unbiasedness check\n";
  return all_pass ? kSuccess : kFailure;
}

struct BenchFlags {
  unsigned max_order = 0;
  std::string path = "both";
  unsigned repeat = 3;
  std::string emit = "csv";
  bool allow_large = false;
};

// One sample: calls f until at least kMinSampleSeconds have elapsed and
// returns the mean time per call.
constexpr double kMinSampleSeconds = 0.02;

template <class F>
double time_once(F&& f, PowerSumPoly& result) {
  double total = 0;
  unsigned calls = 0;
  do {
    result = PowerSumPoly{};
    const auto t0 = std::chrono::steady_clock::now();
    result = f();
    const auto t1 = std::chrono::steady_clock::now();
    total += std::chrono::duration<double>(t1 - t0).count();
    ++calls;
  } while (total < kMinSampleSeconds);
  return total / calls;
}

double median(std::vector<double> times) {
  std::sort(times.begin(), times.end());
  const std::size_t mid = times.size() / 2;
  return times.size() % 2 == 1 ? times[mid] : (times[mid - 1] + times[mid]) / 2;
}

int cmd_bench(const BenchFlags& f, std::ostream& out, std::ostream& err) {
  if (f.path != "fast" && f.path != "general" && f.path != "both") throw usage_error("--path must be fast, general or both");
  if (f.emit != "csv" && f.emit != "text") throw usage_error("--emit must be csv or text");
  if (f.repeat == 0) throw usage_error("--repeat must be positive");
  if (f.max_order == 0) throw usage_error("--max-order must be positive");
  const bool run_fast = f.path != "general";
  const bool run_general = f.path != "fast";
  GenerationOptions options;
  options.limits.allow_large = f.allow_large;

  struct Job {
    Job(unsigned o, bool f) : order(o), fast(f) {}
    unsigned order;
    bool fast;
    std::vector<double> times;
    PowerSumPoly result;
  };
  std::vector<Job> jobs;
  bool skipped_general = false;
  for (unsigned i = 1; i <= f.max_order; ++i) {
    if (run_fast) jobs.emplace_back(i, true);
    if (run_general && (i <= kGeneralBenchCap || f.allow_large)) {
      jobs.emplace_back(i, false);
    } else if (run_general) {
      skipped_general = true;
    }
  }
  // Repeats run round-robin over all jobs so slow drift in machine load
  // affects every order alike.
  for (unsigned r = 0; r < f.repeat; ++r) {
    for (auto& job : jobs) {
      const unsigned i = job.order;
      job.times.push_back(job.fast ? time_once([&] { return k_statistic_fast(i); }, job.result)
                                   : time_once([&] { return k_statistic(i, options); }, job.result));
    }
  }

  if (f.emit == "csv") out << "order,path,seconds\n";
  unsigned checked = 0;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const Job& job = jobs[j];
    char buf[96];
    const char* path = job.fast ? "fast" : "general";
    if (f.emit == "csv") {
      std::snprintf(buf, sizeof buf, "%u,%s,%.9f\n", job.order, path, median(job.times));
    } else {
      std::snprintf(buf, sizeof buf, "%5u  %-7s  %12.6f s\n", job.order, path, median(job.times));
    }
    out << buf;
    if (!job.fast && j > 0 && jobs[j - 1].fast && jobs[j - 1].order == job.order) {
      if (!equals(jobs[j - 1].result, job.result)) {
        err << "bench: spot-check failed, fast and general k_" << job.order << " differ\n";
        return kFailure;
      }
      ++checked;
    }
  }
  if (skipped_general) {
    err << "bench: general path run for orders <= " << kGeneralBenchCap << " only (pass --allow-large to go further)\n";
  }
  if (checked > 0) err << "bench: spot-check passed, fast == general for " << checked << " order(s)\n";
  return kSuccess;
}

struct ConvertFlags {
  CLI::Option* c2m_opt = nullptr;
  CLI::Option* m2c_opt = nullptr;
  CLI::Option* newton_opt = nullptr;
  CLI::Option* degree_opt = nullptr;
  std::string c2m;
  std::string m2c;
  std::string newton;
  unsigned degree = 0;
  std::string format = "human";
  bool allow_large = false;
};

int cmd_convert(const ConvertFlags& f, std::ostream& out) {
  const RenderFormat fmt = format_from(f.format);
  const int chosen = static_cast<int>(f.c2m_opt->count() > 0) + static_cast<int>(f.m2c_opt->count() > 0) +
                     static_cast<int>(f.newton_opt->count() > 0);
  if (chosen != 1) throw usage_error("exactly one of --cumulant-to-moment, --moment-to-cumulant or --newton is required");
  if ((f.newton_opt->count() > 0) != (f.degree_opt->count() > 0)) throw usage_error("--degree goes together with --newton");
  EnumerationLimits limits;
  limits.allow_large = f.allow_large;

  if (f.c2m_opt->count() > 0) {
    const ExponentVector t = parse_exponent_vector(f.c2m);
    out << render(cumulant_in_moments(t, static_cast<unsigned>(t.size()), limits), fmt) << '\n';
    return kSuccess;
  }
  if (f.m2c_opt->count() > 0) {
    const ExponentVector t = parse_exponent_vector(f.m2c);
    out << render(moment_in_cumulants(t, static_cast<unsigned>(t.size()), limits), fmt) << '\n';
    return kSuccess;
  }
  if (f.degree == 0) throw usage_error("--degree must be positive");
  if (f.newton == "e") {
    out << render(elementary_from_powersums(f.degree), fmt) << '\n';
  } else if (f.newton == "h") {
    out << render(homogeneous_from_powersums(f.degree), fmt) << '\n';
  } else if (f.newton == "p") {
    out << render(powersums_from_elementary(f.degree), fmt) << '\n';
  } else {
    throw usage_error("--newton must be e, h or p");
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact k-statistics, polykays and multivariate polykays in power sums", "kstat"};
  app.require_subcommand(1);
  auto* gen = app.add_subcommand("gen", "print an estimator");
  auto* eval = app.add_subcommand("eval", "evaluate an estimator on a CSV sample");
  auto* verify = app.add_subcommand("verify", "check unbiasedness symbolically over a grid");
  auto* bench = app.add_subcommand("bench", "time the fast and general k-statistic paths");
  auto* convert = app.add_subcommand("convert", "moment, cumulant and symmetric-function conversions");

  SpecFlags gen_spec;
  std::string gen_format = "human";
  bool common_denominator = false;
  add_spec_flags(*gen, gen_spec);
  gen->add_option("--format", gen_format, "human, latex or json");
  gen->add_flag("--common-denominator", common_denominator, "render over (n)_W");

  SpecFlags eval_spec;
  std::string data_path;
  bool use_float = false;
  add_spec_flags(*eval, eval_spec);
  eval->add_option("--data", data_path, "CSV file with a header row")->required()->check(CLI::ExistingFile);
  eval->add_flag("--float", use_float, "evaluate in double precision");

  VerifyFlags vf;
  vf.max_order_opt = verify->add_option("--max-order", vf.max_order, "k-statistics of orders 1..I");
  vf.max_polykay_opt = verify->add_option("--max-polykay-weight", vf.max_polykay_weight,
                                          "polykays with at least two factors and total weight <= W");
  vf.grid_opt = verify->add_option("--multi-grid", vf.grid,
                                   "specs separated by '|', e.g. \"[1,1];[1,0]|all:2:5\"");
  verify->add_option("--report", vf.report, "text or json");
  verify->add_flag("--allow-large", vf.allow_large, "lift the set-partition enumeration limit");
  verify->add_flag("--corrupt-generator", vf.corrupt, "")->group("");

  BenchFlags bf;
  bench->add_option("--max-order", bf.max_order, "orders 1..I")->required();
  bench->add_option("--path", bf.path, "fast, general or both");
  bench->add_option("--repeat", bf.repeat, "repeats per order (median reported)");
  bench->add_option("--emit", bf.emit, "csv or text");
  bench->add_flag("--allow-large", bf.allow_large, "run the general path beyond order 12");

  ConvertFlags cf;
  cf.c2m_opt = convert->add_option("--cumulant-to-moment", cf.c2m, "cumulant index such as \"[3]\" or \"[2,1]\"");
  cf.m2c_opt = convert->add_option("--moment-to-cumulant", cf.m2c, "moment index such as \"[1]\"");
  cf.newton_opt = convert->add_option("--newton", cf.newton, "e, h (in power sums) or p (in elementary)");
  cf.degree_opt = convert->add_option("--degree", cf.degree, "degree for --newton");
  convert->add_option("--format", cf.format, "human, latex or json");
  convert->add_flag("--allow-large", cf.allow_large, "lift the set-partition enumeration limit");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_spec, gen_format, common_denominator, out);
    if (eval->parsed()) return cmd_eval(eval_spec, data_path, use_float, out);
    if (verify->parsed()) return cmd_verify(vf, out, err);
    if (bench->parsed()) return cmd_bench(bf, out, err);
    if (convert->parsed()) return cmd_convert(cf, out);
  } catch (const usage_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const kstat::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const resource_error& e) {
    err << "error: " << e.what() << '\n';
    return kResource;
  } catch (const domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const parse_error& e) {
    err << "error: " << e.what();
    if (e.row() > 0) err << " (row " << e.row() << (e.column() > 0 ? ", column " + std::to_string(e.column()) : "") << ')';
    err << '\n';
    return kParse;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace kstat::cli
