// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "carpetdim/cli.hpp"
#include "carpetdim/content.hpp"
#include "carpetdim/dim_formulas.hpp"
#include "carpetdim/multifractal.hpp"

using namespace carpetdim;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::mt19937_64 rng(0x5eed2024);

double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

WeightVector random_weights(int size) {
  std::vector<std::int64_t> counts;
  for (int i = 0; i < size; ++i) counts.push_back(integer(1, 9));
  return WeightVector::from_counts(counts);
}

DigitPattern random_pattern(int base) {
  while (true) {
    std::vector<Cell> cells;
    for (int x = 0; x < base; ++x) {
      for (int y = 0; y < base; ++y) {
        if (integer(0, 1) == 1) cells.push_back({x, y});
      }
    }
    if (cells.size() >= 2) return DigitPattern(base, cells);
  }
}

const DigitPattern kL(2, {{0, 0}, {1, 0}, {0, 1}});

// 1 ------------------------------------------------------------------------
Outcome legendre_and_shape() {
  double legendre = 0.0;
  double above_diag = -INFINITY;
  double curvature = -INFINITY;
  for (int trial = 0; trial < 8; ++trial) {
    WeightVector w = random_weights(integer(2, 6));
    while (SpectrumCurve(w).is_single_point()) w = random_weights(integer(2, 6));
    const SpectrumCurve curve(w);
    for (const auto& p : curve.points()) legendre = std::max(legendre, std::abs(p.theta - (p.q * p.kappa - p.T)));
    std::vector<double> d(1000);
    for (std::size_t i = 0; i < d.size(); ++i) {
      const double a = curve.alpha_min() + (curve.alpha_max() - curve.alpha_min()) * static_cast<double>(i) / 999.0;
      d[i] = curve.D(a);
      above_diag = std::max(above_diag, d[i] - a);
    }
    for (std::size_t i = 1; i + 1 < d.size(); ++i) curvature = std::max(curvature, d[i - 1] - 2 * d[i] + d[i + 1]);
  }
  return {legendre <= 1e-10 && above_diag <= 0.0 && curvature <= 1e-8,
          "max|theta-(q kappa-T)|=" + sci(legendre) + " (tol 1e-10), max(D-alpha)=" + sci(above_diag) +
              ", max second difference=" + sci(curvature) + " (tol 1e-8)"};
}

// 2 ------------------------------------------------------------------------
Outcome large_deviations() {
  double worst = 0.0;
  for (const auto& w : {WeightVector({2.0 / 3.0, 1.0 / 3.0}), WeightVector({0.75, 0.25})}) {
    const SpectrumCurve curve(w);
    for (int i = 1; i <= 9; ++i) {
      const double a = curve.alpha_min() + (curve.alpha_max() - curve.alpha_min()) * i / 10.0;
      const double rate = packing_count(w, 60, a, 0.05) / (60.0 * std::log(2.0));
      worst = std::max(worst, std::abs(rate - curve.D(a)));
    }
  }
  return {worst <= 0.1, "max|(1/n)log2 count - D| = " + sci(worst) + " (tol 0.1)"};
}

// 3 ------------------------------------------------------------------------
Outcome closed_form_vs_sup() {
  double worst = 0.0;
  int cases[7] = {0, 0, 0, 0, 0, 0, 0};
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_pattern(integer(2, 4));
    const double s0 = similarity_dimension(p);
    const double t1 = uniform(1.0 / s0, 4.0);
    const Rates r{t1, uniform(t1, 4.0)};
    const auto closed = random_cover_dimension(p, r);
    ++cases[static_cast<int>(closed.cover_case)];
    worst = std::max(worst, std::abs(closed.dimension - random_cover_dimension_sup(p, r)));
  }
  std::string mix;
  for (int c = 0; c < 7; ++c) {
    if (cases[c]) mix += " " + std::string(to_string(static_cast<CoverCase>(c))) + ":" + std::to_string(cases[c]);
  }
  return {worst <= 1e-6, "max|closed - sup| = " + sci(worst) + " (tol 1e-6) over 200 trials;" + mix};
}

// 4 ------------------------------------------------------------------------
Outcome special_cases() {
  bool ok = true;
  double fiber_err = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_pattern(integer(2, 4));
    const double s0 = similarity_dimension(p);
    const double t1 = uniform(1.0 / s0, 4.0);
    ok = ok && random_cover_dimension(p, {t1, t1}).dimension == 1.0 / t1;
  }
  const DigitPattern fibers[] = {DigitPattern(3, {{0, 0}, {2, 0}, {1, 1}, {2, 1}}),
                                 DigitPattern(2, {{0, 0}, {1, 1}}),
                                 DigitPattern(4, {{0, 0}, {3, 0}, {1, 2}, {2, 2}, {0, 3}, {1, 3}})};
  for (const auto& p : fibers) {
    const double s0 = similarity_dimension(p);
    int rows = 0;
    for (auto c : p.row_counts()) rows += c > 0;
    const double d = std::log(static_cast<double>(rows)) / std::log(static_cast<double>(p.base()));
    for (int i = 0; i < 20; ++i) {
      const double t1 = uniform(1.0 / s0, 4.0);
      const Rates r{t1, uniform(t1, 4.0)};
      const double want = std::min(1.0 / r.tau1, (1.0 + (r.tau2 - r.tau1) * (s0 - d)) / r.tau2);
      fiber_err = std::max(fiber_err, std::abs(random_cover_dimension(p, r).dimension - want));
    }
  }
  const DigitPattern row(3, {{0, 1}, {1, 1}, {2, 1}});
  const DigitPattern column(3, {{2, 0}, {2, 1}, {2, 2}});
  bool lines = true;
  for (int i = 0; i < 20; ++i) {
    const double t1 = uniform(1.0, 4.0);
    const double t2 = uniform(t1, 4.0);
    lines = lines && random_cover_dimension(row, {t1, t2}).dimension == 1.0 / t1;
    lines = lines && random_cover_dimension(column, {t1, t2}).dimension == 1.0 / t2;
  }
  return {ok && lines && fiber_err <= 1e-12,
          std::string("equal rates exact: ") + (ok ? "yes" : "no") + ", uniform fibers max err " + sci(fiber_err) +
              " (tol 1e-12), single row/column exact: " + (lines ? "yes" : "no")};
}

// 5 ------------------------------------------------------------------------
Outcome content_sandwich() {
  const DigitPattern patterns[] = {kL, DigitPattern(3, {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {2, 2}}),
                                   DigitPattern(3, {{0, 0}, {1, 1}, {2, 1}, {0, 2}, {1, 2}, {2, 2}})};
  std::size_t checked = 0;
  std::size_t lower_fail = 0;
  std::size_t upper_fail = 0;
  double worst_upper = 0.0;
  for (const auto& p : patterns) {
    const double s0 = similarity_dimension(p);
    std::vector<int> rows;
    for (int y = 0; y < p.base(); ++y) {
      if (p.row_counts()[static_cast<std::size_t>(y)] > 0) rows.push_back(y);
    }
    for (int k = 1; k <= 20; ++k) {
      const double s = s0 * k / 20.0;
      for (std::size_t n = 1; n <= 8; ++n) {
        std::vector<std::size_t> idx(n, 0);
        while (true) {
          std::vector<int> ys(n);
          for (std::size_t i = 0; i < n; ++i) ys[i] = rows[idx[i]];
          const DigitSequence y(p.base(), ys);
          const double formula = stripe_content(p, s, y).log_value;
          const double exact = exact_content_oracle(p, s, {{}, y}, n).log_value;
          lower_fail += formula - std::log(static_cast<double>(n + 1)) > exact;
          worst_upper = std::max(worst_upper, exact - formula);
          upper_fail += exact > formula + 1e-12;
          ++checked;
          std::size_t i = 0;
          while (i < n && ++idx[i] == rows.size()) idx[i++] = 0;
          if (i == n) break;
        }
      }
    }
  }
  const double whole = exact_content_oracle(DigitPattern::full(2), 2.0, {}, 12).value();
  return {lower_fail == 0 && upper_fail == 0 && whole == 1.0,
          std::to_string(checked) + " stripes; lower-bound violations " + std::to_string(lower_fail) +
              ", upper-bound violations " + std::to_string(upper_fail) + " (max log excess " + sci(worst_upper) +
              ", rounding slack 1e-12); full-square content at s0 = " + sci(whole)};
}

// 6 ------------------------------------------------------------------------
Outcome typical_content() {
  const double s0 = similarity_dimension(kL);
  const Rates rates{1.0, 2.0};
  const std::size_t n = 400;
  const auto rows = row_weights(kL);
  double worst = 0.0;
  for (double q : {0.0, 1.0, 2.0}) {
    const auto tilt = tilted_weights(rows, q);
    const double kappa = kappa_theta(rows, q).kappa;
    std::discrete_distribution<int> pick_row(tilt.values().begin(), tilt.values().end());
    for (double s : {0.25, 1.2, 1.5}) {
      double sum = 0.0;
      for (int sample = 0; sample < 100; ++sample) {
        std::vector<int> xs(n);
        std::vector<int> ys(2 * n);
        for (std::size_t i = 0; i < 2 * n; ++i) {
          ys[i] = pick_row(rng);
          std::vector<int> columns;
          for (const auto& c : kL.cells()) {
            if (c.y == ys[i]) columns.push_back(c.x);
          }
          if (i < n) xs[i] = columns[static_cast<std::size_t>(integer(0, static_cast<int>(columns.size()) - 1))];
        }
        const auto c = rectangle_content(kL, s, DigitSequence(2, xs), DigitSequence(2, ys));
        sum += c.log_value / std::log(2.0) / -static_cast<double>(n);
      }
      const double want = typical_content_exponent(kL, s, rates, kappa);
      worst = std::max(worst, std::abs(sum / 100.0 - want));
    }
  }
  return {worst <= 0.05, "max|mean log_b content/(-n) - exponent| = " + sci(worst) + " (tol 0.05), n = 400"};
}

// 7 + 9 --------------------------------------------------------------------
struct McRun {
  std::string label;
  std::vector<std::string> args;
  json first;
  json second;
};

json run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  if (cli::run(args, out, err) != 0) throw std::runtime_error("cli failed: " + out.str());
  return json::parse(out.str());
}

std::vector<McRun> monte_carlo_runs() {
  const std::string full = R"({"base":2,"cells":[[0,0],[0,1],[1,0],[1,1]]})";
  const std::string l = kL.canonical();
  struct Config {
    std::string label;
    std::string pattern;
    std::string tau1;
    std::string tau2;
  };
  const Config configs[] = {{"full square (1,1)", full, "1", "1"},
                            {"full square (1,2)", full, "1", "2"},
                            {"L pattern (0.8,1.6)", l, "0.8", "1.6"}};
  std::vector<McRun> runs;
  for (const auto& c : configs) {
    for (const std::string mode : {"iid", "orbit"}) {
      McRun r;
      r.label = c.label + " " + mode;
      r.args = {"estimate", "--pattern", c.pattern, "--tau1", c.tau1, "--tau2", c.tau2,
                "--mode", mode, "--N", "1048576", "--seed", "7"};
      r.first = run_cli(r.args);
      runs.push_back(std::move(r));
    }
  }
  return runs;
}

Outcome monte_carlo(std::vector<McRun>& runs) {
  runs = monte_carlo_runs();
  double worst = 0.0;
  std::string detail;
  for (const auto& r : runs) {
    const double err = r.first["abs_error"].get<double>();
    worst = std::max(worst, err);
    detail += "; " + r.label + ": s*=" + sci(r.first["s_star"].get<double>()) + " vs " +
              sci(r.first["closed_form"].get<double>());
  }
  return {worst <= 0.1, "max|s* - closed form| = " + sci(worst) + " (tol 0.1), N = 2^20" + detail};
}

Outcome determinism(std::vector<McRun>& runs) {
  bool same = !runs.empty();
  for (auto& r : runs) {
    r.second = run_cli(r.args);
    auto a = r.first;
    auto b = r.second;
    a["manifest"].erase("timestamp");
    b["manifest"].erase("timestamp");
    same = same && a.dump() == b.dump();
  }
  return {same, std::to_string(runs.size()) + " estimate runs repeated; JSON identical apart from timestamp: " +
                    (same ? "yes" : "no")};
}

// 8 ------------------------------------------------------------------------
Outcome shrinking_targets() {
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_pattern(integer(2, 4));
    const double s0 = similarity_dimension(p);
    const double alpha = CarpetProjection(p).projected_dimension();
    const double t1 = uniform(1.0, 4.0);
    const double t2 = uniform(t1, 5.0);
    const RateSequences seqs{std::vector<double>(50, t1), std::vector<double>(50, t2)};
    const double general = general_rate_dimension(seqs, s0, alpha, 0.0).dimension;
    worst = std::max(worst, std::abs(general - shrinking_target_dimension(s0, s0, alpha, {t1, t2})));
  }
  double freq = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_pattern(integer(2, 4));
    const double s0 = similarity_dimension(p);
    const WeightVector uniform_p(std::vector<double>(p.size(), 1.0 / static_cast<double>(p.size())));
    const double tau = uniform(1.0, 4.0);
    const double alpha = alpha_of_row_frequencies(p, row_marginal(p, uniform_p));
    freq = std::max(freq, std::abs(digit_frequency_dimension(p, uniform_p, {tau, tau}, alpha) - s0 / tau));
  }
  return {worst <= 1e-12 && freq <= 1e-12, "constant-rate general vs shrinking target max err " + sci(worst) +
                                               ", uniform digit frequencies vs s0/tau max err " + sci(freq) +
                                               " (tol 1e-12)"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double time_limit;
    std::function<Outcome()> check;
  };
  std::vector<McRun> runs;
  const std::vector<Criterion> criteria = {
      {1, "Legendre identity, D <= alpha, concavity", 1.0, legendre_and_shape},
      {2, "large-deviation packing counts", 1.0, large_deviations},
      {3, "three-case closed form equals sup form", 10.0, closed_form_vs_sup},
      {4, "special cases", 1.0, special_cases},
      {5, "content sandwich for stripes", 30.0, content_sandwich},
      {6, "typical content exponent", 5.0, typical_content},
      {7, "Monte Carlo critical exponent", 300.0, [&] { return monte_carlo(runs); }},
      {8, "shrinking-target consistency", 1.0, shrinking_targets},
      {9, "determinism of estimate runs", 300.0, [&] { return determinism(runs); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.pass && secs <= c.time_limit;
    failures += !pass;
    std::printf("%s  criterion %d: %s | %s | %.2f s (limit %.0f s)\n", pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), o.detail.c_str(), secs, c.time_limit);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
