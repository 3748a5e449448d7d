#include "carpetdim/cli.hpp"

#include <omp.h>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "carpetdim/carpet_model.hpp"
#include "carpetdim/content.hpp"
#include "carpetdim/dim_formulas.hpp"
#include "carpetdim/error.hpp"
#include "carpetdim/io.hpp"
#include "carpetdim/multifractal.hpp"
#include "carpetdim/simulator.hpp"

namespace carpetdim::cli {

namespace {

using nlohmann::json;

constexpr const char* kVersion = CARPETDIM_VERSION;

struct HelpShown {
  std::string text;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  json config = json::object();
  std::uint64_t seed = 0;
  int threads = 0;
  std::string manifest_path;
};

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string utc_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// --- argument helpers ------------------------------------------------------

void add_common(CLI::App& app, Context& ctx) {
  app.add_option("--seed", ctx.seed, "RNG seed (recorded in every output)");
  app.add_option("--threads", ctx.threads, "OpenMP thread cap (default: CARPETDIM_THREADS or all cores)");
  app.add_option("--manifest", ctx.manifest_path, "also write the run manifest to this JSON file");
}

std::string field_from_message(const std::string& msg) {
  const auto pos = msg.find("--");
  if (pos == std::string::npos) return "";
  auto end = pos + 2;
  while (end < msg.size() && (std::isalnum(static_cast<unsigned char>(msg[end])) || msg[end] == '-')) ++end;
  auto name = msg.substr(pos + 2, end - pos - 2);
  for (auto& ch : name) {
    if (ch == '-') ch = '_';
  }
  return name;
}

void parse(CLI::App& app, std::span<const std::string> args) {
  std::vector<std::string> storage;
  storage.push_back("carpetdim " + app.get_name());
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    throw HelpShown{app.help()};
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorCode::ConfigInvalid, e.what(), field_from_message(e.what()));
  }
}

void require(const CLI::App& app, const std::string& flag) {
  if (app.count("--" + flag) == 0) {
    auto field = flag;
    for (auto& ch : field) {
      if (ch == '-') ch = '_';
    }
    throw Error(ErrorCode::ConfigInvalid, "missing required option --" + flag, field);
  }
}

DigitPattern pattern_arg(const std::string& value) {
  if (!value.empty() && value.front() == '{') return io::parse_pattern(value);
  return io::load_pattern(value);
}

json pattern_json(const DigitPattern& pattern) { return json::parse(pattern.canonical()); }

double parse_number(std::string_view text, std::string_view field) {
  const std::string s(text);
  const auto slash = s.find('/');
  char* end = nullptr;
  if (slash != std::string::npos) {
    const double num = std::strtod(s.substr(0, slash).c_str(), &end);
    const std::string den_text = s.substr(slash + 1);
    const double den = std::strtod(den_text.c_str(), &end);
    if (*end != '\0' || den == 0.0) {
      throw Error(ErrorCode::ConfigInvalid, "bad number '" + s + "'", std::string(field));
    }
    return num / den;
  }
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw Error(ErrorCode::ConfigInvalid, "bad number '" + s + "'", std::string(field));
  return v;
}

/// "0.6,0.4" or "2/3,1/3".
std::vector<double> number_list(const std::string& text, std::string_view field) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item, field));
  if (out.empty()) throw Error(ErrorCode::ConfigInvalid, "empty list", std::string(field));
  return out;
}

/// "a:b:n" -> n evenly spaced points from a to b inclusive.
std::vector<double> range_points(const std::string& text, std::string_view field) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw Error(ErrorCode::ConfigInvalid, "range must be a:b:n", std::string(field));
  const double a = parse_number(parts[0], field);
  const double b = parse_number(parts[1], field);
  const double n = parse_number(parts[2], field);
  if (!(n >= 1.0) || n != std::floor(n) || n > 1e7) {
    throw Error(ErrorCode::ConfigInvalid, "range count must be a positive integer", std::string(field));
  }
  const auto count = static_cast<std::size_t>(n);
  std::vector<double> pts(count);
  for (std::size_t i = 0; i < count; ++i) {
    pts[i] = count == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return pts;
}

void apply_threads(const Context& ctx) {
  int threads = ctx.threads;
  if (threads <= 0) {
    if (const char* env = std::getenv("CARPETDIM_THREADS")) threads = std::atoi(env);
  }
  if (threads > 0) omp_set_num_threads(threads);
}

// --- output ----------------------------------------------------------------

json envelope(const Context& ctx) {
  auto config = ctx.config;
  config["seed"] = ctx.seed;
  const auto hash = io::hex64(io::fnv1a(config.dump()));
  return json{{"seed", ctx.seed},
              {"version", kVersion},
              {"config_hash", hash},
              {"manifest", {{"config", config}, {"timestamp", utc_timestamp()}}}};
}

void write_manifest_file(const Context& ctx) {
  if (ctx.manifest_path.empty()) return;
  std::ofstream f(ctx.manifest_path);
  if (!f) throw Error(ErrorCode::ConfigInvalid, "cannot write " + ctx.manifest_path, "manifest");
  f << envelope(ctx).dump(2) << '\n';
}

int emit_json(Context& ctx, json result) {
  result.update(envelope(ctx));
  write_manifest_file(ctx);
  ctx.out << result.dump(2) << '\n';
  return kExitOk;
}

int emit_csv(Context& ctx, const std::string& csv) {
  write_manifest_file(ctx);
  ctx.out << csv;
  return kExitOk;
}

// --- subcommands -----------------------------------------------------------

int cmd_spectrum(Context& ctx, std::span<const std::string> args) {
  CLI::App app("Multifractal spectrum of a weight vector as CSV", "spectrum");
  std::string pattern_text;
  std::string weights_text;
  double qmax = kDefaultQMax;
  std::size_t qcount = 81;
  std::size_t alpha_points = 0;
  app.add_option("--pattern", pattern_text, "pattern JSON file or literal; uses its row weights");
  app.add_option("--weights", weights_text, "explicit weight vector, e.g. 2/3,1/3");
  app.add_option("--qmax", qmax, "q-grid spans [-qmax, qmax]");
  app.add_option("--qcount", qcount, "number of q-grid points");
  app.add_option("--alpha-points", alpha_points, "emit (alpha, D_alpha) rows on this many points instead");
  add_common(app, ctx);
  parse(app, args);
  if (pattern_text.empty() == weights_text.empty()) {
    throw Error(ErrorCode::ConfigInvalid, "give exactly one of --pattern or --weights", "pattern");
  }
  if (!(qmax > 0.0) || qcount < 2) throw Error(ErrorCode::ConfigInvalid, "need qmax > 0 and qcount >= 2", "qcount");

  std::optional<WeightVector> w;
  if (!pattern_text.empty()) {
    const auto pattern = pattern_arg(pattern_text);
    ctx.config["pattern"] = pattern_json(pattern);
    w = row_weights(pattern);
  } else {
    w = WeightVector(number_list(weights_text, "weights"));
    ctx.config["weights"] = std::vector<double>(w->values().begin(), w->values().end());
  }
  ctx.config.update({{"qmax", qmax}, {"qcount", qcount}, {"alpha_points", alpha_points}});
  apply_threads(ctx);

  const SpectrumCurve curve(*w, SpectrumCurve::default_qgrid(qmax, qcount));
  std::ostringstream csv;
  if (alpha_points == 0) {
    csv << "q,T,kappa,theta\n";
    for (const auto& p : curve.points()) {
      csv << fmt(p.q) << ',' << fmt(p.T) << ',' << fmt(p.kappa) << ',' << fmt(p.theta) << '\n';
    }
  } else {
    csv << "alpha,D_alpha\n";
    const double lo = curve.alpha_min();
    const double hi = curve.alpha_max();
    const std::size_t count = hi > lo ? alpha_points : 1;
    for (std::size_t i = 0; i < count; ++i) {
      const double a =
          count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
      csv << fmt(a) << ',' << fmt(curve.D(a)) << '\n';
    }
  }
  return emit_csv(ctx, csv.str());
}

json cover_json(const CoverDimension& d) {
  return json{{"dimension", d.dimension},
              {"case", std::string(to_string(d.cover_case))},
              {"beta", d.beta ? json(*d.beta) : json(nullptr)},
              {"kappa1", d.kappa1},
              {"kappa2", d.kappa2},
              {"s0", d.s0}};
}

std::string sweep_csv(const DigitPattern& pattern, const std::vector<double>& tau1s,
                      const std::function<double(double)>& tau2_of) {
  std::vector<CoverDimension> rows;
  rows.reserve(tau1s.size());
  for (double t1 : tau1s) rows.push_back(random_cover_dimension(pattern, {t1, tau2_of(t1)}));
  std::ostringstream csv;
  csv << "tau1,dim,case\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    csv << fmt(tau1s[i]) << ',' << fmt(rows[i].dimension) << ',' << to_string(rows[i].cover_case) << '\n';
  }
  return csv.str();
}

int cmd_random_cover(Context& ctx, std::span<const std::string> args) {
  CLI::App app("Dimension of the random rectangle covering set", "random-cover-dim");
  std::string pattern_text;
  double tau1 = 0.0;
  double tau2 = 0.0;
  bool oracle = false;
  std::size_t grid = kDefaultSupGrid;
  std::string sweep;
  app.add_option("--pattern", pattern_text, "pattern JSON file or literal");
  app.add_option("--tau1", tau1, "x-axis rate");
  app.add_option("--tau2", tau2, "y-axis rate");
  app.add_flag("--oracle", oracle, "also evaluate the sup-over-spectrum form");
  app.add_option("--grid", grid, "coarse grid size of the sup oracle");
  app.add_option("--sweep", sweep, "tau1 range a:b:n; emits CSV (tau1, dim, case) at fixed tau2");
  add_common(app, ctx);
  parse(app, args);
  require(app, "pattern");
  if (sweep.empty()) require(app, "tau1");
  require(app, "tau2");
  if (grid < 3) throw Error(ErrorCode::ConfigInvalid, "grid needs at least 3 points", "grid");

  const auto pattern = pattern_arg(pattern_text);
  ctx.config["pattern"] = pattern_json(pattern);
  ctx.config["tau2"] = tau2;
  apply_threads(ctx);
  if (!sweep.empty()) {
    const auto pts = range_points(sweep, "sweep");
    ctx.config["sweep"] = sweep;
    return emit_csv(ctx, sweep_csv(pattern, pts, [tau2](double) { return tau2; }));
  }
  ctx.config.update({{"tau1", tau1}, {"oracle", oracle}, {"grid", grid}});
  const Rates rates{tau1, tau2};
  auto result = cover_json(random_cover_dimension(pattern, rates));
  if (oracle) {
    const double sup = random_cover_dimension_sup(pattern, rates, grid);
    result["oracle"] = sup;
    result["oracle_abs_diff"] = std::abs(sup - result["dimension"].get<double>());
  }
  return emit_json(ctx, std::move(result));
}

double default_alpha(const DigitPattern& pattern) { return CarpetProjection(pattern).projected_dimension(); }

int cmd_target(Context& ctx, std::span<const std::string> args) {
  CLI::App app("Dimension of the rectangular shrinking-target set", "target-dim");
  std::string pattern_text;
  double tau1 = 0.0;
  double tau2 = 0.0;
  double dim_mu = 0.0;
  double alpha_nu = 0.0;
  std::string row_freq;
  app.add_option("--pattern", pattern_text, "pattern JSON file or literal");
  app.add_option("--tau1", tau1, "x-axis rate (>= 1)");
  app.add_option("--tau2", tau2, "y-axis rate (>= tau1)");
  app.add_option("--dim-mu", dim_mu, "dimension of the measure (default: s0)");
  app.add_option("--alpha-nu", alpha_nu, "alpha of the orbit measure (default: dim of the projected measure)");
  app.add_option("--row-freq", row_freq, "row-digit frequencies of the orbit point; sets alpha_nu");
  add_common(app, ctx);
  parse(app, args);
  require(app, "pattern");
  require(app, "tau1");
  require(app, "tau2");

  const auto pattern = pattern_arg(pattern_text);
  const double s0 = similarity_dimension(pattern);
  if (app.count("--dim-mu") == 0) dim_mu = s0;
  if (!row_freq.empty()) {
    alpha_nu = alpha_of_row_frequencies(pattern, WeightVector(number_list(row_freq, "row_freq")));
  } else if (app.count("--alpha-nu") == 0) {
    alpha_nu = default_alpha(pattern);
  }
  ctx.config.update({{"pattern", pattern_json(pattern)},
                     {"tau1", tau1},
                     {"tau2", tau2},
                     {"dim_mu", dim_mu},
                     {"alpha_nu", alpha_nu}});
  apply_threads(ctx);
  const double dim = shrinking_target_dimension(dim_mu, s0, alpha_nu, {tau1, tau2});
  return emit_json(ctx, json{{"dimension", dim}, {"dim_mu", dim_mu}, {"alpha_nu", alpha_nu}, {"s0", s0}});
}

int cmd_freq(Context& ctx, std::span<const std::string> args) {
  CLI::App app("Shrinking-target dimension for a self-similar measure with digit weights", "freq-dim");
  std::string pattern_text;
  std::string weights_text;
  double tau1 = 0.0;
  double tau2 = 0.0;
  double alpha_nu = 0.0;
  app.add_option("--pattern", pattern_text, "pattern JSON file or literal");
  app.add_option("--weights", weights_text, "cell weights in canonical cell order (default: uniform)");
  app.add_option("--tau1", tau1, "x-axis rate (>= 1)");
  app.add_option("--tau2", tau2, "y-axis rate (>= tau1)");
  app.add_option("--alpha-nu", alpha_nu, "alpha of the orbit measure (default: from the row marginal of the weights)");
  add_common(app, ctx);
  parse(app, args);
  require(app, "pattern");
  require(app, "tau1");
  require(app, "tau2");

  const auto pattern = pattern_arg(pattern_text);
  const auto p = weights_text.empty()
                     ? WeightVector(std::vector<double>(pattern.size(), 1.0 / static_cast<double>(pattern.size())))
                     : WeightVector(number_list(weights_text, "weights"));
  if (p.size() != pattern.size()) {
    throw Error(ErrorCode::WeightOffPattern, "need one weight per pattern cell", "weights");
  }
  if (app.count("--alpha-nu") == 0) alpha_nu = alpha_of_row_frequencies(pattern, row_marginal(pattern, p));
  ctx.config.update({{"pattern", pattern_json(pattern)},
                     {"weights", std::vector<double>(p.values().begin(), p.values().end())},
                     {"tau1", tau1},
                     {"tau2", tau2},
                     {"alpha_nu", alpha_nu}});
  apply_threads(ctx);
  const double dim = digit_frequency_dimension(pattern, p, {tau1, tau2}, alpha_nu);
  double entropy = 0.0;
  for (double v : p.values()) {
    if (v > 0.0) entropy -= v * std::log(v);
  }
  entropy /= std::log(static_cast<double>(pattern.base()));
  return emit_json(ctx, json{{"dimension", dim},
                             {"measure_dimension", entropy},
                             {"alpha_nu", alpha_nu},
                             {"s0", similarity_dimension(pattern)}});
}

int cmd_general_rate(Context& ctx, std::span<const std::string> args) {
  CLI::App app("Shrinking-target dimension for general rate sequences", "general-rate-dim");
  std::string pattern_text;
  std::string rates_path;
  double alpha_nu = 0.0;
  double beta_nu = 0.0;
  bool swap = false;
  app.add_option("--pattern", pattern_text, "pattern JSON file or literal");
  app.add_option("--rates", rates_path, "CSV with columns n, a_n, c_n");
  app.add_option("--alpha-nu", alpha_nu, "row alpha of the orbit measure (default: dim of the row projection)");
  app.add_option("--beta-nu", beta_nu, "column alpha of the orbit measure (default: dim of the column projection)");
  app.add_flag("--swap-partition", swap, "put n in the first index set when a_n >= c_n instead");
  add_common(app, ctx);
  parse(app, args);
  require(app, "pattern");
  require(app, "rates");

  const auto pattern = pattern_arg(pattern_text);
  const auto rates_text = io::read_file(rates_path);
  const auto seqs = io::parse_rates_csv(rates_text);
  if (app.count("--alpha-nu") == 0) alpha_nu = default_alpha(pattern);
  if (app.count("--beta-nu") == 0) beta_nu = SpectrumCurve(column_weights(pattern), {}).dimension();
  ctx.config.update({{"pattern", pattern_json(pattern)},
                     {"rates", rates_path},
                     {"rates_hash", io::hex64(io::fnv1a(rates_text))},
                     {"alpha_nu", alpha_nu},
                     {"beta_nu", beta_nu},
                     {"swap_partition", swap}});
  apply_threads(ctx);
  const double s0 = similarity_dimension(pattern);
  const auto r = general_rate_dimension(seqs, s0, alpha_nu, beta_nu, swap);
  return emit_json(ctx, json{{"dimension", r.dimension},
                             {"g1", finite_or_null(r.g1)},
                             {"g2", finite_or_null(r.g2)},
                             {"argmax_n", r.argmax_n},
                             {"horizon", seqs.horizon()},
                             {"alpha_nu", alpha_nu},
                             {"beta_nu", beta_nu},
                             {"s0", s0}});
}

int cmd_content(Context& ctx, std::span<const std::string> args) {
  CLI::App app("Hausdorff content of a stripe or b-adic rectangle", "content");
  std::string pattern_text;
  double s = 0.0;
  std::string ydigits;
  std::string xdigits;
  bool oracle = false;
  std::size_t max_gen = 8;
  std::string oracle_mode = "memoized";
  std::size_t node_budget = kDefaultNodeBudget;
  app.add_option("--pattern", pattern_text, "pattern JSON file or literal");
  app.add_option("--s", s, "exponent, 0 < s <= s0");
  app.add_option("--ydigits", ydigits, "y-digit string, e.g. 0121");
  app.add_option("--xdigits", xdigits, "x-digit string (rectangle instead of stripe)");
  app.add_flag("--oracle", oracle, "also run the exact cover oracle");
  app.add_option("--max-gen", max_gen, "deepest cube generation the oracle may use");
  app.add_option("--oracle-mode", oracle_mode, "memoized or enumerate")
      ->check(CLI::IsMember({"memoized", "enumerate"}));
  app.add_option("--node-budget", node_budget, "oracle enumeration budget");
  add_common(app, ctx);
  parse(app, args);
  require(app, "pattern");
  require(app, "s");
  require(app, "ydigits");

  const auto pattern = pattern_arg(pattern_text);
  const auto y = DigitSequence::parse(pattern.base(), ydigits);
  const auto x = DigitSequence::parse(pattern.base(), xdigits);
  const BadicRegion region{x, y};
  if (app.count("--max-gen") == 0) max_gen = std::max(max_gen, region.generation());
  ctx.config.update({{"pattern", pattern_json(pattern)},
                     {"s", s},
                     {"ydigits", y.to_string()},
                     {"xdigits", x.to_string()},
                     {"oracle", oracle}});
  if (oracle) ctx.config.update({{"max_gen", max_gen}, {"oracle_mode", oracle_mode}, {"node_budget", node_budget}});
  apply_threads(ctx);

  const auto formula = xdigits.empty() ? stripe_content(pattern, s, y) : rectangle_content(pattern, s, x, y);
  json result{{"formula", formula.value()},
              {"log_formula", finite_or_null(formula.log_value)},
              {"argmin_k", formula.argmin_k},
              {"oracle", nullptr},
              {"ratio", nullptr}};
  if (oracle) {
    const auto mode = oracle_mode == "enumerate" ? OracleMode::Enumerate : OracleMode::Memoized;
    const auto o = exact_content_oracle(pattern, s, region, max_gen, mode, node_budget);
    result["oracle"] = o.value();
    if (std::isfinite(formula.log_value)) result["ratio"] = std::exp(o.log_value - formula.log_value);
  }
  return emit_json(ctx, std::move(result));
}

int cmd_estimate(Context& ctx, std::span<const std::string> args) {
  CLI::App app("Monte Carlo estimate of the covering critical exponent", "estimate");
  std::string pattern_text;
  double tau1 = 0.0;
  double tau2 = 0.0;
  std::string mode = "iid";
  std::uint64_t N = 1u << 20;
  std::string blocks_path;
  double s_lo = 0.0;
  double s_hi = 0.0;
  EstimatorOptions opts;
  app.add_option("--pattern", pattern_text, "pattern JSON file or literal");
  app.add_option("--tau1", tau1, "x-axis rate");
  app.add_option("--tau2", tau2, "y-axis rate");
  app.add_option("--mode", mode, "iid or orbit")->check(CLI::IsMember({"iid", "orbit"}));
  app.add_option("--N", N, "number of samples (>= 1024)");
  app.add_option("--emit-blocks", blocks_path, "write the block sums of every bisection step to this CSV");
  app.add_option("--s-lo", s_lo, "lower bracket end (default 0.02 s0)");
  app.add_option("--s-hi", s_hi, "upper bracket end (default s0)");
  app.add_option("--tolerance", opts.tolerance, "bisection tolerance in s");
  app.add_option("--max-iterations", opts.max_iterations, "bisection iteration cap");
  app.add_option("--burn-in", opts.burn_in_blocks, "dyadic blocks discarded before fitting");
  app.add_option("--fit-blocks", opts.fit_blocks, "top dyadic blocks used in the slope fit");
  add_common(app, ctx);
  parse(app, args);
  require(app, "pattern");
  require(app, "tau1");
  require(app, "tau2");

  const auto pattern = pattern_arg(pattern_text);
  const double s0 = similarity_dimension(pattern);
  if (app.count("--s-lo") == 0) s_lo = 0.02 * s0;
  if (app.count("--s-hi") == 0) s_hi = s0;
  ctx.config.update({{"pattern", pattern_json(pattern)},
                     {"tau1", tau1},
                     {"tau2", tau2},
                     {"mode", mode},
                     {"N", N},
                     {"s_lo", s_lo},
                     {"s_hi", s_hi},
                     {"tolerance", opts.tolerance},
                     {"max_iterations", opts.max_iterations},
                     {"burn_in", opts.burn_in_blocks},
                     {"fit_blocks", opts.fit_blocks},
                     {"emit_blocks", blocks_path.empty() ? json(nullptr) : json(blocks_path)}});
  apply_threads(ctx);

  const Rates rates{tau1, tau2};
  const auto source = mode == "orbit" ? SampleSource::orbit(ctx.seed) : SampleSource::iid(ctx.seed);
  const auto est = estimate_critical_exponent(pattern, rates, source, N, {s_lo, s_hi}, opts);

  json closed = nullptr;
  json abs_error = nullptr;
  try {
    const double d = random_cover_dimension(pattern, rates).dimension;
    closed = d;
    abs_error = std::abs(est.s_star - d);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::RatesOutOfRange) throw;
  }

  if (!blocks_path.empty()) {
    std::ofstream f(blocks_path);
    if (!f) throw Error(ErrorCode::ConfigInvalid, "cannot write " + blocks_path, "emit_blocks");
    f << "s,k,log2_block_sum\n";
    for (const auto& b : est.trace) {
      for (std::size_t i = 0; i < b.k.size(); ++i) f << fmt(b.s) << ',' << b.k[i] << ',' << fmt(b.log2_sum[i]) << '\n';
    }
  }
  return emit_json(ctx, json{{"s_star", est.s_star},
                             {"closed_form", closed},
                             {"abs_error", abs_error},
                             {"blocks_csv_path", blocks_path.empty() ? json(nullptr) : json(blocks_path)},
                             {"evaluations", est.trace.size()}});
}

int cmd_sweep(Context& ctx, std::span<const std::string> args) {
  CLI::App app("CSV sweep of the covering dimension over tau1", "sweep");
  std::string pattern_text;
  std::string tau1_range;
  double tau2 = 0.0;
  double ratio = 1.0;
  app.add_option("--pattern", pattern_text, "pattern JSON file or literal (default: full base-2 square)");
  app.add_option("--tau1", tau1_range, "tau1 range a:b:n");
  auto* t2 = app.add_option("--tau2", tau2, "fixed y-axis rate");
  app.add_option("--tau-ratio", ratio, "tau2 = ratio * tau1 (default 1)")->excludes(t2);
  add_common(app, ctx);
  parse(app, args);
  require(app, "tau1");

  const auto pattern = pattern_text.empty() ? DigitPattern::full(2) : pattern_arg(pattern_text);
  const auto pts = range_points(tau1_range, "tau1");
  const bool fixed = app.count("--tau2") > 0;
  ctx.config["pattern"] = pattern_json(pattern);
  ctx.config["tau1"] = tau1_range;
  if (fixed) {
    ctx.config["tau2"] = tau2;
  } else {
    ctx.config["tau_ratio"] = ratio;
  }
  apply_threads(ctx);
  return emit_csv(ctx, sweep_csv(pattern, pts, [&](double t1) { return fixed ? tau2 : ratio * t1; }));
}

using Command = int (*)(Context&, std::span<const std::string>);

const std::map<std::string, Command, std::less<>>& commands() {
  static const std::map<std::string, Command, std::less<>> table{
      {"spectrum", cmd_spectrum},       {"random-cover-dim", cmd_random_cover},
      {"target-dim", cmd_target},       {"freq-dim", cmd_freq},
      {"general-rate-dim", cmd_general_rate}, {"content", cmd_content},
      {"estimate", cmd_estimate},       {"sweep", cmd_sweep},
  };
  return table;
}

std::string usage() {
  std::string s = "usage: carpetdim <subcommand> [options]\n       carpetdim --config run.json\nsubcommands:";
  for (const auto& [name, _] : commands()) s += " " + name;
  return s + "\n";
}

/// Turns a resolved config (or a full JSON output carrying a manifest) back
/// into an argument list.
std::vector<std::string> args_from_config(const json& doc) {
  const json& cfg = doc.contains("manifest") ? doc["manifest"]["config"] : doc;
  if (!cfg.is_object() || !cfg.contains("subcommand") || !cfg["subcommand"].is_string()) {
    throw Error(ErrorCode::ConfigInvalid, "config needs a \"subcommand\" string", "config");
  }
  std::vector<std::string> args{cfg["subcommand"].get<std::string>()};
  for (const auto& [key, value] : cfg.items()) {
    if (key == "subcommand" || key == "rates_hash") continue;
    std::string flag = "--" + key;
    for (auto& ch : flag) {
      if (ch == '_') ch = '-';
    }
    if (value.is_null()) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
      continue;
    }
    args.push_back(flag);
    if (value.is_string() && value.get<std::string>().empty()) {
      args.pop_back();
    } else if (value.is_string()) {
      args.push_back(value.get<std::string>());
    } else if (value.is_array() && key != "weights") {
      args.push_back(value.dump());
    } else if (value.is_array()) {
      std::string list;
      for (const auto& v : value) list += (list.empty() ? "" : ",") + fmt(v.get<double>());
      args.push_back(list);
    } else if (value.is_number_float()) {
      args.push_back(fmt(value.get<double>()));
    } else {
      args.push_back(value.dump());
    }
  }
  return args;
}

int report(std::ostream& out, std::ostream& err, std::string_view code, const std::string& message,
           const std::string& field, int exit_code) {
  json e{{"error", {{"code", code}, {"message", message}, {"field", field}}}};
  out << e.dump(2) << '\n';
  err << "carpetdim: " << message << '\n';
  return exit_code;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  if (args.empty() || args[0] == "--help" || args[0] == "-h") {
    (args.empty() ? err : out) << usage();
    return args.empty() ? kExitInvalid : kExitOk;
  }
  if (args[0] == "--version") {
    out << kVersion << '\n';
    return kExitOk;
  }
  try {
    if (args[0] == "--config") {
      if (args.size() != 2) throw Error(ErrorCode::ConfigInvalid, "--config takes exactly one file", "config");
      json doc;
      try {
        doc = json::parse(io::read_file(args[1]));
      } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ConfigInvalid, std::string("config is not valid JSON: ") + e.what(), "config");
      }
      const auto replay = args_from_config(doc);
      return run(replay, out, err);
    }
    const auto it = commands().find(args[0]);
    if (it == commands().end()) {
      return report(out, err, to_string(ErrorCode::UnknownSubcommand), "unknown subcommand '" + args[0] + "'",
                    "subcommand", kExitUnknownSubcommand);
    }
    Context ctx{out, err, json::object(), 0, 0, {}};
    ctx.config["subcommand"] = it->first;
    try {
      const int rc = it->second(ctx, args.subspan(1));
      return rc;
    } catch (const HelpShown& h) {
      out << h.text;
      return kExitOk;
    }
  } catch (const Error& e) {
    return report(out, err, to_string(e.code()), e.what(), e.field(), kExitInvalid);
  } catch (const std::exception& e) {
    return report(out, err, "Internal", e.what(), "", kExitInternal);
  }
}

}  // namespace carpetdim::cli
