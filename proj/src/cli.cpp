#include "interlace/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "interlace/discrepancy.hpp"
#include "interlace/ensemble_file.hpp"
#include "interlace/instance_gen.hpp"
#include "interlace/lyapunov.hpp"
#include "interlace/mixed_charpoly.hpp"
#include "interlace/verify.hpp"

namespace interlace {

namespace {

using nlohmann::json;

constexpr double kBoundSlack = 1e-7;

struct CommonOptions {
  std::string input;
  std::string json_path;
  double tol = kDefaultRootTol;
  std::uint64_t seed = 1;
  bool inject_violation = false;
};

struct Options {
  CommonOptions common;
  std::string signs;
  bool quadratic = false;
  bool no_reduce = false;
  std::size_t compare_random = 0;
  std::optional<double> t;
  std::optional<std::size_t> r;
  std::string suite = "all";
  std::size_t cases = 0;
  std::string kind = "psd-trace-capped";
  std::size_t d = 4;
  std::size_t m = 6;
  double epsilon = 0.25;
  std::size_t rank = 0;
  std::string output;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v + 0.0);
  return buf;
}

template <typename T>
std::string list(const std::vector<T>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ",";
    if constexpr (std::is_floating_point_v<T>) s += num(xs[i]);
    else s += std::to_string(xs[i]);
  }
  return s + "]";
}

struct Check {
  std::string name;
  double lhs;
  double rhs;
};

// Collected output of one command: table rows, JSON fields and asserted
// inequalities lhs <= rhs.
struct Run {
  std::string command;
  json report = json::object();
  std::vector<std::pair<std::string, std::string>> rows;
  std::vector<Check> checks;

  void row(const std::string& key, const std::string& value) { rows.emplace_back(key, value); }
  void field(const std::string& key, double v) {
    report[key] = v + 0.0;
    row(key, num(v));
  }
};

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(Errc::InvalidArgument, std::string("bad ") + what + " entry '" + item + "'");
    }
  }
  return out;
}

double effective_epsilon(const EnsembleFile& file, double actual) {
  if (!file.epsilon_override) return actual;
  if (*file.epsilon_override + 1e-12 < actual) {
    throw Error(Errc::ValidationError,
                std::string(errc_name(Errc::EpsilonOutOfRange)) + ": epsilon_override " +
                    num(*file.epsilon_override) + " is below the max trace " + num(actual));
  }
  return *file.epsilon_override;
}

void instance_fields(Run& run, const EnsembleFile& file) {
  run.report["d"] = file.dim;
  run.report["m"] = file.matrices.size();
  run.row("d", std::to_string(file.dim));
  run.row("m", std::to_string(file.matrices.size()));
}

const std::vector<FiniteDistribution>& require_dists(const EnsembleFile& file) {
  if (!file.distributions) {
    throw Error(Errc::ValidationError, "command needs a 'distributions' section");
  }
  return *file.distributions;
}

void certificate_fields(Run& run, const DescentCertificate& cert) {
  run.report["maxroots"] = cert.maxroots;
  run.report["residuals"] = cert.residuals;
  run.row("maxroots", list(cert.maxroots));
}

double elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------------------

void cmd_mcp_eval(const Options& o, Run& run) {
  const EnsembleFile file = parse_ensemble(o.common.input);
  instance_fields(run, file);
  const MatrixEnsemble e = file.ensemble();
  RealPolynomial p;
  if (o.quadratic) {
    if (!o.signs.empty()) throw Error(Errc::InvalidArgument, "--signs does not apply to --quadratic");
    p = quadratic_mixed_char_poly(e);
  } else {
    std::vector<double> s = o.signs.empty() ? std::vector<double>(e.size(), 1.0)
                                            : parse_list(o.signs, "--signs");
    if (s.size() != e.size()) {
      throw Error(Errc::DimensionMismatch, std::to_string(s.size()) + " signs for " +
                                               std::to_string(e.size()) + " matrices");
    }
    p = mixed_char_poly(e, s);
  }
  const auto rep = root_report(p, o.common.tol);
  run.report["coefficients"] = p.coeffs();
  run.report["real_rooted"] = rep.real_rooted;
  run.report["max_imag_residual"] = rep.max_imag_residual;
  run.row("coefficients", list(p.coeffs()));
  run.row("real_rooted", rep.real_rooted ? "true" : "false");
  run.row("max_imag_residual", num(rep.max_imag_residual));
  if (rep.real_rooted) {
    run.field("maxroot", rep.maxroot);
    run.field("minroot", rep.minroot);
  }
}

void cmd_discrepancy(const Options& o, Run& run) {
  const EnsembleFile file = parse_ensemble(o.common.input);
  instance_fields(run, file);
  const auto& dists = require_dists(file);
  const DiscrepancyInstance inst{file.ensemble(), dists};
  require_psd(inst.ensemble);
  const auto stats = ensemble_stats(inst.ensemble);

  const auto start = std::chrono::steady_clock::now();
  DescentOptions opts;
  const auto res = solve_kls(inst, !o.no_reduce, opts);
  const double wall = elapsed(start);

  std::vector<FiniteDistribution> work;
  for (const auto& d : dists) work.push_back(o.no_reduce ? d : two_point_reduction(d));
  const double sigma = sigma_bound({inst.ensemble, work});
  const double achieved = discrepancy_norm(inst.ensemble.matrices(), dists, res.outcome);

  run.field("epsilon", stats.epsilon);
  run.field("sigma", sigma);
  run.field("sigma_input", sigma_bound(inst));
  run.report["reduce"] = !o.no_reduce;
  run.report["outcome"] = res.outcome;
  run.row("outcome", list(res.outcome));
  run.field("achieved", achieved);
  run.field("bound", 4.0 * sigma);
  certificate_fields(run, res.certificate);
  run.report["wall_time"] = wall;
  run.checks.push_back({"achieved <= 4 sigma", achieved, 4.0 * sigma});

  if (o.compare_random > 0) {
    std::mt19937_64 rng(o.common.seed);
    std::vector<double> norms;
    for (std::size_t k = 0; k < o.compare_random; ++k) {
      std::vector<double> sample;
      for (const auto& d : dists) {
        std::discrete_distribution<std::size_t> pick(d.probs().begin(), d.probs().end());
        sample.push_back(d.values()[pick(rng)]);
      }
      norms.push_back(discrepancy_norm(inst.ensemble.matrices(), dists, sample));
    }
    double mean = 0.0;
    for (double v : norms) mean += v;
    mean /= static_cast<double>(norms.size());
    const auto [lo, hi] = std::minmax_element(norms.begin(), norms.end());
    run.report["random_outcomes"] = {{"samples", norms.size()}, {"min", *lo}, {"mean", mean}, {"max", *hi}};
    run.row("random outcomes (information only)",
            "n=" + std::to_string(norms.size()) + " min=" + num(*lo) + " mean=" + num(mean) +
                " max=" + num(*hi));
  }
}

void cmd_hermitian(const Options& o, Run& run) {
  const EnsembleFile file = parse_ensemble(o.common.input);
  instance_fields(run, file);
  const auto& dists = require_dists(file);
  const auto start = std::chrono::steady_clock::now();
  const auto res = solve_hermitian(file.matrices, dists, !o.no_reduce);
  const double wall = elapsed(start);

  std::vector<FiniteDistribution> work;
  for (const auto& d : dists) work.push_back(o.no_reduce ? d : two_point_reduction(d));
  const double sigma = hermitian_sigma(file.matrices, work);
  const double achieved = discrepancy_norm(file.matrices, dists, res.outcome);
  double eps = 0.0;
  for (const auto& b : file.matrices) eps = std::max(eps, absolute_value(b).trace());
  run.field("epsilon", eps);
  run.field("sigma", sigma);
  run.report["outcome"] = res.outcome;
  run.row("outcome", list(res.outcome));
  run.field("achieved", achieved);
  run.field("bound", 8.0 * sigma);
  certificate_fields(run, res.certificate);
  run.report["wall_time"] = wall;
  run.checks.push_back({"achieved <= 8 sigma", achieved, 8.0 * sigma});
}

void cmd_lyapunov(const Options& o, Run& run) {
  const EnsembleFile file = parse_ensemble(o.common.input);
  instance_fields(run, file);
  const MatrixEnsemble e = file.ensemble();
  std::vector<double> weights;
  if (o.t) {
    weights.assign(e.size(), *o.t);
    if (!(*o.t > 0.0 && *o.t < 1.0)) {
      throw Error(Errc::WeightOutOfRange, "--t must lie in (0, 1)");
    }
  } else if (file.weights) {
    weights = *file.weights;
  } else {
    throw Error(Errc::ValidationError, "command needs a 'weights' section or --t");
  }
  const auto start = std::chrono::steady_clock::now();
  const auto res = lyapunov_select(e, weights);
  const double wall = elapsed(start);

  const double eps = effective_epsilon(file, ensemble_stats(e).epsilon);
  HermitianMatrix diff = HermitianMatrix::zero(e.dim());
  for (std::size_t i = 0; i < e.size(); ++i) diff = diff - e[i].scaled(weights[i]);
  for (std::size_t i : res.subset) diff = diff + e[i];
  const double achieved = operator_norm(diff);
  run.field("epsilon", eps);
  run.field("sigma", res.sigma);
  run.report["outcome"] = res.subset;
  run.row("subset", list(res.subset));
  run.field("achieved", achieved);
  run.field("bound", 2.0 * std::sqrt(eps));
  if (o.t) run.field("bound_two_sided", 2.0 * std::sqrt(2.0 * eps) + 2.0 * eps);
  certificate_fields(run, res.certificate);
  run.report["wall_time"] = wall;
  run.checks.push_back({"achieved <= 2 sqrt(eps)", achieved, 2.0 * std::sqrt(eps)});
}

void cmd_partition(const Options& o, Run& run) {
  const EnsembleFile file = parse_ensemble(o.common.input);
  instance_fields(run, file);
  const MatrixEnsemble e = file.ensemble();
  std::vector<double> props;
  if (o.r) {
    if (*o.r == 0) throw Error(Errc::BadProportions, "--r must be positive");
    props.assign(*o.r, 1.0 / static_cast<double>(*o.r));
  } else if (file.proportions) {
    props = *file.proportions;
  } else {
    throw Error(Errc::ValidationError, "command needs a 'proportions' section or --r");
  }
  const auto start = std::chrono::steady_clock::now();
  const auto res = ks_r_partition(e, props);
  const double wall = elapsed(start);

  const double eps = effective_epsilon(file, ensemble_stats(e).epsilon);
  const double r = static_cast<double>(props.size());
  const double gap = 2.0 * std::sqrt(r * eps) + r * eps;
  const HermitianMatrix total = e.sum();
  const std::size_t d = e.dim();
  std::vector<double> norms, bounds, margins, deviations;
  for (std::size_t k = 0; k < props.size(); ++k) {
    HermitianMatrix part = HermitianMatrix::zero(d);
    for (std::size_t i : res.blocks[k]) part = part + e[i];
    norms.push_back(operator_norm(part));
    bounds.push_back(props[k] * std::pow(1.0 + std::sqrt(r * eps), 2));
    margins.push_back(
        min_eigenvalue((total + HermitianMatrix::identity(d).scaled(gap)).scaled(props[k]) - part));
    deviations.push_back(operator_norm(part - total.scaled(props[k])));
  }
  run.field("epsilon", eps);
  run.report["outcome"] = res.blocks;
  for (std::size_t k = 0; k < props.size(); ++k) run.row("block " + std::to_string(k), list(res.blocks[k]));
  run.report["block_norms"] = norms;
  run.report["upper_margins"] = margins;
  run.report["deviations"] = deviations;
  run.report["achieved"] = norms;
  run.report["bound"] = bounds;
  run.row("block_norms", list(norms));
  run.row("bounds", list(bounds));
  run.row("upper_margins", list(margins));
  run.row("deviations", list(deviations));
  run.field("deviation_bound", gap);
  certificate_fields(run, res.certificate);
  run.report["wall_time"] = wall;
  for (std::size_t k = 0; k < props.size(); ++k) {
    const std::string b = "block " + std::to_string(k);
    run.checks.push_back({b + " norm <= t_k (1 + sqrt(r eps))^2", norms[k], bounds[k]});
    run.checks.push_back({b + " upper certificate: -min eig <= 0", -margins[k], 0.0});
    run.checks.push_back({b + " deviation <= 2 sqrt(r eps) + r eps", deviations[k], gap});
  }
}

void cmd_verify(const Options& o, Run& run) {
  const auto start = std::chrono::steady_clock::now();
  const auto results = run_suites(o.suite, o.common.seed, o.cases);
  json suites = json::array();
  for (const auto& s : results) {
    suites.push_back({{"name", s.name},
                      {"passed", s.passed},
                      {"cases", s.cases},
                      {"checks", s.checks},
                      {"detail", s.detail},
                      {"seconds", s.seconds}});
    std::ostringstream line;
    line << (s.passed ? "PASS" : "FAIL") << "  cases=" << s.cases << "  " << std::fixed
         << std::setprecision(2) << s.seconds << "s  " << s.detail;
    run.row(s.name, line.str());
    run.checks.push_back({"suite " + s.name + " failures", s.passed ? 0.0 : 1.0, 0.0});
  }
  run.report["suites"] = suites;
  run.report["wall_time"] = elapsed(start);
}

void cmd_gen(const Options& o, Run& run, std::ostream& out) {
  GenOptions g;
  g.kind = parse_gen_kind(o.kind);
  g.d = o.d;
  g.m = o.m;
  g.epsilon = o.epsilon;
  g.seed = o.common.seed;
  g.r = o.r.value_or(2);
  g.rank = o.rank;
  const EnsembleFile file = gen_instance(g);
  if (o.output.empty()) {
    out << serialize_ensemble(file);
    return;
  }
  write_ensemble(file, o.output);
  const auto stats = ensemble_stats(file.ensemble());
  instance_fields(run, file);
  run.field("epsilon", stats.epsilon);
  run.field("sum_norm", stats.sum_norm);
  run.row("output", o.output);
}

void add_common(CLI::App* sub, CommonOptions& c, bool needs_input) {
  auto* in = sub->add_option("--input", c.input, "ensemble JSON file");
  if (needs_input) in->required();
  sub->add_option("--json", c.json_path, "write the JSON report here ('-' for stdout)");
  sub->add_option("--tol", c.tol, "real-rootedness tolerance for reported polynomials");
  sub->add_option("--seed", c.seed, "random seed");
  sub->add_flag("--inject-violation", c.inject_violation,
                "test hook: assert a bound one unit below the achieved value");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interlacing-family solvers for matrix discrepancy and partition problems",
               "interlace"};
  app.require_subcommand(1);
  Options o;

  auto* mcp = app.add_subcommand("mcp-eval", "mixed characteristic polynomial of the ensemble");
  add_common(mcp, o.common, true);
  mcp->add_option("--signs", o.signs, "comma-separated scalars, one per matrix (default all 1)");
  mcp->add_flag("--quadratic", o.quadratic, "quadratic mixed polynomial instead");

  auto* disc = app.add_subcommand("discrepancy", "outcome with discrepancy at most 4 sigma");
  add_common(disc, o.common, true);
  disc->add_flag("--no-reduce", o.no_reduce, "skip the two-point reduction");
  disc->add_option("--compare-random", o.compare_random, "also report N random outcomes");

  auto* herm = app.add_subcommand("hermitian", "hermitian inputs, bound 8 sigma");
  add_common(herm, o.common, true);
  herm->add_flag("--no-reduce", o.no_reduce, "skip the two-point reduction");

  auto* lyap = app.add_subcommand("lyapunov", "round weights to a subset, bound 2 sqrt(eps)");
  add_common(lyap, o.common, true);
  lyap->add_option("--t", o.t, "use the same weight t in (0, 1) for every matrix");

  auto* part = app.add_subcommand("partition", "split into r blocks");
  add_common(part, o.common, true);
  part->add_option("--r", o.r, "equal proportions 1/r instead of the file's proportions");

  auto* ver = app.add_subcommand("verify", "run invariant suites");
  add_common(ver, o.common, false);
  ver->add_option("--suite", o.suite, "'all' or comma-separated suite names");
  ver->add_option("--cases", o.cases, "instances per suite (0 = suite default)");

  auto* gen = app.add_subcommand("gen", "generate a random instance file");
  add_common(gen, o.common, false);
  gen->add_option("--kind", o.kind, "psd-trace-capped, rank-one, lyapunov or ksr");
  gen->add_option("--d", o.d, "dimension");
  gen->add_option("--m", o.m, "number of matrices");
  gen->add_option("--epsilon", o.epsilon, "trace cap");
  gen->add_option("--r", o.r, "blocks (ksr)");
  gen->add_option("--rank", o.rank, "rank cap per matrix, 0 for full rank");
  gen->add_option("--output", o.output, "output path (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  Run run;
  CLI::App* chosen = app.get_subcommands().front();
  run.command = chosen->get_name();
  const bool gen_to_stdout = chosen == gen && o.output.empty();
  try {
    if (chosen == mcp) cmd_mcp_eval(o, run);
    else if (chosen == disc) cmd_discrepancy(o, run);
    else if (chosen == herm) cmd_hermitian(o, run);
    else if (chosen == lyap) cmd_lyapunov(o, run);
    else if (chosen == part) cmd_partition(o, run);
    else if (chosen == ver) cmd_verify(o, run);
    else cmd_gen(o, run, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  if (gen_to_stdout) return kExitOk;

  if (o.common.inject_violation && !run.checks.empty()) {
    run.checks.front().rhs = run.checks.front().lhs - 1.0;
    run.report["bound_injected"] = run.checks.front().rhs;
  }
  std::vector<const Check*> violated;
  for (const auto& c : run.checks) {
    if (!(c.lhs <= c.rhs + kBoundSlack)) violated.push_back(&c);
  }

  run.report["command"] = run.command;
  run.report["seed"] = o.common.seed;
  run.report["bounds_hold"] = violated.empty();
  out << "command: " << run.command << "\n";
  out << "seed: " << o.common.seed << "\n";
  std::size_t width = 0;
  for (const auto& [k, v] : run.rows) width = std::max(width, k.size());
  for (const auto& [k, v] : run.rows) {
    out << std::left << std::setw(static_cast<int>(width)) << k << "  " << v << "\n";
  }
  for (const auto* c : violated) {
    err << "bound violated: " << c->name << ": " << num(c->lhs) << " > " << num(c->rhs) << "\n";
  }

  if (!o.common.json_path.empty()) {
    const std::string text = run.report.dump(2) + "\n";
    if (o.common.json_path == "-") {
      out << text;
    } else {
      std::ofstream f(o.common.json_path);
      if (!f) {
        err << "error: cannot write '" << o.common.json_path << "'\n";
        return kExitInputError;
      }
      f << text;
    }
  }
  return violated.empty() ? kExitOk : kExitBoundViolated;
}

}  // namespace interlace
