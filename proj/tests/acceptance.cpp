// Acceptance suite: one PASS/FAIL line per criterion; exit status is the
// number of failed criteria.

#include "kstat/cli.hpp"
#include "kstat/estimators.hpp"
#include "kstat/evaluate.hpp"
#include "kstat/moments.hpp"
#include "kstat/render.hpp"

#include "oracles.hpp"
#include "support.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace kstat;
using support::s;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Check {
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double elapsed = seconds_since(t0);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", elapsed);
  std::cout << (c.ok ? "PASS" : "FAIL") << "  " << id << ". " << title << "  (" << buf << ")\n";
  for (const auto& n : c.notes) std::cout << "        " << n << '\n';
  std::cout.flush();
  if (!c.ok) ++failures;
}

template <class F>
double timed(F&& f) {
  const auto t0 = Clock::now();
  f();
  return seconds_since(t0);
}

std::vector<EstimatorSpec> unbiasedness_grid() {
  std::vector<EstimatorSpec> grid;
  for (unsigned i = 1; i <= 8; ++i) grid.push_back(EstimatorSpec::univariate(i));
  for (unsigned w = 2; w <= 6; ++w) {
    for (const auto& lambda : integer_partitions(w)) {
      if (lambda.length() >= 2) grid.push_back(EstimatorSpec::polykay(lambda.parts()));
    }
  }
  for (unsigned d = 1; d <= 5; ++d) {
    for (unsigned a = d + 1; a-- > 0;) grid.push_back(EstimatorSpec::multivariate({{a, d - a}}));
  }
  grid.push_back(EstimatorSpec::parse("[1,1];[1,0]"));
  grid.push_back(EstimatorSpec::parse("[2,0];[0,1]"));
  grid.push_back(EstimatorSpec::parse("[1,1];[1,1]"));
  return grid;
}

void multisets(const std::vector<ExponentVector>& alphabet, unsigned size, std::size_t from,
               std::vector<ExponentVector>& current, std::vector<std::vector<ExponentVector>>& out) {
  if (current.size() == size) {
    out.push_back(current);
    return;
  }
  for (std::size_t i = from; i < alphabet.size(); ++i) {
    current.push_back(alphabet[i]);
    multisets(alphabet, size, i, current, out);
    current.pop_back();
  }
}

std::map<oracle::MomentMonomial, oracle::Q> at_n(const MomentPoly& p, long n0) {
  std::map<oracle::MomentMonomial, oracle::Q> out;
  for (const auto& [m, c] : p.terms()) {
    oracle::MomentMonomial key;
    for (const auto& w : m.expanded()) key.push_back(w);
    std::sort(key.begin(), key.end());
    const Rational v = c.evaluate(Rational(n0));
    if (v != 0) out[key] += v;
  }
  return out;
}

std::string run_binary(const std::string& args) {
  const std::string cmd = std::string(KSTAT_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return "<popen failed>";
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  pclose(pipe);
  return out;
}

}  // namespace

int main() {
  criterion(1, "golden formulas k3, k2,2, k21, k11,1 (each < 1 s)", [](Check& c) {
    struct Case {
      const char* name;
      std::function<PowerSumPoly()> make;
      PowerSumPoly want;
    };
    const unsigned o22[] = {2, 2};
    const ExponentVector f111[] = {{1, 1}, {1, 0}};
    const std::vector<Case> cases{
        {"k3", [] { return k_statistic(3); }, support::golden::k3()},
        {"k2,2", [&] { return polykay(o22); }, support::golden::k22()},
        {"k21", [] { return multivariate_k({2, 1}, 2); }, support::golden::k21_bivariate()},
        {"k11,1", [&] { return multivariate_polykay(f111, 2); }, support::golden::k11_1()},
    };
    for (const auto& cs : cases) {
      PowerSumPoly got;
      const double t = timed([&] { got = cs.make(); });
      c.expect(equals(got, cs.want), std::string(cs.name) + " differs: " + render(got, RenderFormat::Human));
      c.expect(t < 1.0, std::string(cs.name) + " took " + std::to_string(t) + " s");
    }
    c.expect(render(k_statistic(3), RenderFormat::Human) == "(n^2*s3 - 3*n*s1*s2 + 2*s1^3)/(n*(n-1)*(n-2))",
             "k3 human rendering");
  });

  criterion(2, "fast path equals general path for i <= 12 (< 120 s)", [](Check& c) {
    const double t = timed([&] {
      for (unsigned i = 1; i <= 12; ++i) {
        c.expect(equals(k_statistic_fast(i), k_statistic(i)), "mismatch at i = " + std::to_string(i));
      }
    });
    c.expect(t < 120.0, "took " + std::to_string(t) + " s");
  });

  criterion(3, "symbolic unbiasedness over the acceptance grid (< 600 s)", [](Check& c) {
    const auto grid = unbiasedness_grid();
    std::size_t passed = 0;
    const double t = timed([&] {
      for (const auto& spec : grid) {
        const auto r = verify_unbiased(spec);
        c.expect(r.passed && r.n_free && r.difference.is_zero(), "FAIL " + spec.to_string());
        passed += r.passed ? 1 : 0;
      }
    });
    c.expect(grid.size() == 8 + 23 + 20 + 3, "grid size " + std::to_string(grid.size()));
    c.expect(t < 600.0, "took " + std::to_string(t) + " s");
    std::cout << "        " << passed << "/" << grid.size() << " specs PASS\n";
  });

  criterion(4, "compound Poisson bridge for i <= 10", [](Check& c) {
    for (unsigned i = 1; i <= 10; ++i) {
      c.expect(equals(substitute_singleton_ratio(compound_poisson_moments(i)), cumulant_in_moments({i}, 1)),
               "mismatch at i = " + std::to_string(i));
    }
  });

  criterion(5, "expectation agrees with the i.i.d. expansion oracle (n0 in {2,3,4}, <= 4 slots)", [](Check& c) {
    const std::vector<std::vector<ExponentVector>> alphabets{
        {{1}, {2}, {3}, {4}},
        {{1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}},
    };
    std::size_t monomials = 0;
    for (const auto& alphabet : alphabets) {
      const auto vars = static_cast<unsigned>(alphabet.front().size());
      for (unsigned k = 1; k <= 4; ++k) {
        std::vector<std::vector<ExponentVector>> all;
        std::vector<ExponentVector> cur;
        multisets(alphabet, k, 0, cur, all);
        for (const auto& slots : all) {
          ++monomials;
          std::vector<Monomial::Factor> f;
          for (const auto& w : slots) f.emplace_back(w, 1u);
          const MomentPoly e = expectation(PowerSumPoly::term(vars, Monomial(f), NRational(1)));
          const std::vector<oracle::Vec> oslots(slots.begin(), slots.end());
          for (unsigned n0 : {2u, 3u, 4u}) {
            auto want = oracle::iid_expectation(oslots, n0);
            std::erase_if(want, [](const auto& kv) { return kv.second == 0; });
            c.expect(at_n(e, n0) == want, "mismatch at n0 = " + std::to_string(n0));
          }
        }
      }
    }
    std::cout << "        " << monomials << " monomials checked\n";
  });

  criterion(6, "numeric spot checks on {1,2,3} and 200 random exact datasets", [](Check& c) {
    const Dataset three = load_csv_text("x\n1\n2\n3\n");
    c.expect(format_value(evaluate_estimator(k_statistic(1), three)) == "2", "k1 != 2");
    c.expect(format_value(evaluate_estimator(k_statistic(2), three)) == "1", "k2 != 1");
    c.expect(format_value(evaluate_estimator(k_statistic(3), three)) == "0", "k3 != 0");
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> size(2, 12);
    std::uniform_int_distribution<int> value(-5, 5);
    const auto k2 = k_statistic(2);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = size(rng);
      std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(1));
      Rational mean = 0;
      for (auto& r : rows) {
        r[0] = value(rng);
        mean += r[0];
      }
      mean /= static_cast<long>(n);
      Rational ss = 0;
      for (const auto& r : rows) ss += (r[0] - mean) * (r[0] - mean);
      const Value got = evaluate_estimator(k2, Dataset({"x"}, rows));
      c.expect(std::get<Rational>(got) == ss / static_cast<long>(n - 1), "variance mismatch in trial " + std::to_string(trial));
    }
  });

  criterion(7, "symmetric-function identities", [](Check& c) {
    const NRational half(Rational(1, 2));
    c.expect(equals(elementary_from_powersums(2), (s({1}).pow(2) - s({2})) * half), "e2");
    c.expect(equals(homogeneous_from_powersums(2), (s({1}).pow(2) + s({2})) * half), "h2");
    c.expect(render(elementary_from_powersums(2), RenderFormat::Human) == "(s1^2 - s2)/2", "e2 human rendering");
    for (unsigned i = 1; i <= 10; ++i) {
      const PowerSumPoly back = powersums_from_elementary(i).substitute<SymbolKind::PowerSum>(
          1, [](const ExponentVector& w) { return elementary_from_powersums(w[0]); });
      c.expect(equals(back, s({i})), "e<->s round trip at i = " + std::to_string(i));
    }
    for (unsigned i = 1; i <= 8; ++i) {
      PowerSumPoly alt = homogeneous_from_powersums(i);
      for (unsigned j = 1; j <= i; ++j) {
        const PowerSumPoly term =
            j == i ? elementary_from_powersums(i) : elementary_from_powersums(j) * homogeneous_from_powersums(i - j);
        alt += (j % 2 == 0) ? term : -term;
      }
      c.expect(alt.is_zero(), "sum (-1)^j e_j h_{i-j} != 0 at i = " + std::to_string(i));
    }
  });

  criterion(8, "performance: k28 fast <= 60 s, bench timings weakly increasing over i = 8..28, general path i <= 12",
            [](Check& c) {
              PowerSumPoly k28;
              const double t28 = timed([&] { k28 = k_statistic_fast(28); });
              c.expect(t28 <= 60.0, "k28 took " + std::to_string(t28) + " s");
              c.expect(k28.size() == integer_partitions(28).size(), "k28 term count");
              std::cout << "        k28 fast path: " << t28 << " s, " << k28.size() << " terms\n";

              std::ostringstream out, err;
              const int code = cli::run({"bench", "--max-order", "28", "--path", "fast", "--repeat", "5"}, out, err);
              c.expect(code == 0, "bench exit code " + std::to_string(code));
              std::map<unsigned, double> fast;
              std::istringstream lines(out.str());
              std::string line;
              std::getline(lines, line);
              c.expect(line == "order,path,seconds", "bench header: " + line);
              while (std::getline(lines, line)) {
                unsigned order = 0;
                char path[16] = {};
                double secs = 0;
                if (std::sscanf(line.c_str(), "%u,%15[^,],%lf", &order, path, &secs) == 3 && std::string(path) == "fast") {
                  fast[order] = secs;
                }
              }
              c.expect(fast.size() == 28, "bench emitted " + std::to_string(fast.size()) + " fast rows");
              std::string series;
              for (unsigned i = 8; i <= 28; i += 2) {
                char buf[48];
                std::snprintf(buf, sizeof buf, " %u:%.4f", i, fast[i]);
                series += buf;
                if (i > 8) c.expect(fast[i] >= fast[i - 2], "not increasing between " + std::to_string(i - 2) + " and " + std::to_string(i));
              }
              std::cout << "        fast seconds" << series << '\n';

              const double t12 = timed([&] { c.expect(!k_statistic(12).is_zero(), "general k12 empty"); });
              std::cout << "        general path k12: " << t12 << " s\n";
            });

  criterion(9, "determinism of gen and JSON round trip", [](Check& c) {
    for (const char* args : {"gen --order 8", "gen --orders 2,2", "gen --multi [2,1] --vars 2",
                             "gen --multi \"[1,1];[1,0]\" --format json", "gen --order 20 --fast --format latex"}) {
      const std::string a = run_binary(args);
      const std::string b = run_binary(args);
      c.expect(!a.empty() && a == b, std::string("not byte-identical: ") + args);
    }
    const unsigned o[] = {3, 2, 1};
    const ExponentVector f[] = {{1, 1}, {1, 1}};
    for (const PowerSumPoly& p : {k_statistic(6), k_statistic_fast(15), polykay(o), multivariate_k({2, 2}, 2),
                                  multivariate_polykay(f, 2)}) {
      const std::string text = render(p, RenderFormat::Json);
      const PowerSumPoly q = parse_power_sum_json(text);
      c.expect(q == p, "JSON round trip changed the polynomial");
      c.expect(render(q, RenderFormat::Json) == text, "JSON re-render differs");
    }
  });

  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << '\n';
  return failures;
}
