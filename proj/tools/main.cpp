// glassydicke command-line driver: exact small-N oracles, replica-symmetric
// solves, phase-diagram scans, parallel-tempering Monte Carlo and the
// acceptance suite, all behind one binary with deterministic seeding.
#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <map>
#include <iostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "glassydicke/io_util.hpp"
#include "glassydicke/model.hpp"
#include "glassydicke/monte_carlo.hpp"
#include "glassydicke/oracle.hpp"
#include "glassydicke/phase_scan.hpp"
#include "glassydicke/rng.hpp"
#include "glassydicke/rs_solver.hpp"
#include "glassydicke/validation.hpp"

namespace {

using glassydicke::fmt17;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitValidationFailed = 3;

using KV = std::vector<std::pair<std::string, std::string>>;

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << content;
}

// values must already be valid JSON fragments (all numeric here)
std::string kv_json(const KV& kv) {
  glassydicke::JsonWriter w;
  for (const auto& [k, v] : kv) w.put_raw(k, v);
  return w.str();
}

std::string ladder_csv(const std::vector<double>& ladder) {
  std::string out;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (i) out += ',';
    out += fmt17(ladder[i]);
  }
  return out;
}

// like kv_json but quotes values that are not plain JSON numbers
std::string kv_json_quoting(const KV& kv) {
  glassydicke::JsonWriter w;
  for (const auto& [k, v] : kv) {
    if (v.find_first_not_of("0123456789+-.eE") == std::string::npos)
      w.put_raw(k, v);
    else
      w.put(k, v);
  }
  return w.str();
}

std::string csv_header_echo(const KV& kv) {
  std::string out;
  for (const auto& [k, v] : kv) out += "# " + k + "=" + v + "\n";
  return out;
}

int default_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Flat key=value config files ('#' comments). CLI11's own config machinery
// does not process files attached to subcommands, so the file is applied by
// hand after parsing: every key must name an option of the subcommand, and
// values never override options already set on the command line or via the
// environment.
std::map<const CLI::App*, std::string> config_paths;

void configure_common(CLI::App* sub) {
  config_paths[sub] = "";
  sub->add_option("--config", config_paths[sub],
                  "key=value config file; flags and env override file values");
}

std::string trimmed(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

void apply_config_file(CLI::App* sub) {
  const std::string& path = config_paths[sub];
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config file '" + path + "' cannot be opened");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trimmed(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key=value, got '" + line + "'");
    const std::string key = trimmed(line.substr(0, eq));
    const std::string value = trimmed(line.substr(eq + 1));
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config")
      throw std::invalid_argument("config file '" + path + "': unknown key '" + key + "'");
    if (opt->count() > 0) continue;  // command line / environment wins
    opt->add_result(value);
    opt->run_callback();
  }
}

struct LadderArgs {
  double t_min = 1.0;
  double t_max = 1.0;
  int t_count = 1;
  std::vector<double> explicit_ladder;

  std::vector<double> build() const {
    if (!explicit_ladder.empty()) return explicit_ladder;
    return glassydicke::geometric_ladder(t_min, t_max, t_count);
  }
};

void add_ladder_options(CLI::App* sub, LadderArgs& l) {
  sub->add_option("--t-min", l.t_min, "lowest ladder temperature")
      ->envname("GLASSYDICKE_T_MIN");
  sub->add_option("--t-max", l.t_max, "highest ladder temperature")
      ->envname("GLASSYDICKE_T_MAX");
  sub->add_option("--t-count", l.t_count, "number of geometric ladder rungs")
      ->envname("GLASSYDICKE_T_COUNT");
  sub->add_option("--ladder", l.explicit_ladder,
                  "explicit comma-separated temperature ladder (overrides --t-*)")
      ->delimiter(',')
      ->envname("GLASSYDICKE_LADDER");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"disordered multi-qubit cavity suite: photon-eliminated effective model, "
               "replica-symmetric solver, phase scans, exact oracles and Monte Carlo"};
  app.require_subcommand(1);

  // ---- oracle ----------------------------------------------------------
  auto* oracle = app.add_subcommand(
      "oracle", "exact small-N reports (classical + quantum) and the mapping residual");
  configure_common(oracle);
  int o_n = 8;
  double o_lambda = 0.0, o_j0 = 0.0, o_j = 1.0, o_beta = 1.0;
  std::uint64_t o_seed = 1;
  int o_threads = default_threads();
  std::string o_out = "-";
  oracle->add_option("--n", o_n, "qubit count (<= 24)")->envname("GLASSYDICKE_N");
  oracle->add_option("--lambda", o_lambda, "qubit-cavity coupling")
      ->envname("GLASSYDICKE_LAMBDA");
  oracle->add_option("--j0", o_j0, "mean coupling scale J0")->envname("GLASSYDICKE_J0");
  oracle->add_option("--j", o_j, "coupling std-dev scale J")->envname("GLASSYDICKE_J");
  oracle->add_option("--beta", o_beta, "inverse temperature")->envname("GLASSYDICKE_BETA");
  oracle->add_option("--seed", o_seed, "disorder seed")->envname("GLASSYDICKE_SEED");
  oracle->add_option("--threads", o_threads, "worker cap")->envname("GLASSYDICKE_THREADS");
  oracle->add_option("--out", o_out, "output path ('-' for stdout)")
      ->envname("GLASSYDICKE_OUT");

  // ---- rs ---------------------------------------------------------------
  auto* rs = app.add_subcommand("rs", "single replica-symmetric solve");
  configure_common(rs);
  double r_t = 1.0, r_jt = 0.0, r_j = 0.0, r_lambda = 0.0;
  glassydicke::SolveOptions r_opts;
  std::string r_out = "-";
  rs->add_option("--t", r_t, "temperature")->envname("GLASSYDICKE_T");
  rs->add_option("--jtilde0", r_jt, "shifted mean coupling J0 + 2 lambda^2")
      ->envname("GLASSYDICKE_JTILDE0");
  rs->add_option("--j", r_j, "coupling std-dev scale J")->envname("GLASSYDICKE_J");
  rs->add_option("--lambda", r_lambda, "coupling for the photon order parameter")
      ->envname("GLASSYDICKE_LAMBDA");
  rs->add_option("--tol", r_opts.tol, "fixed-point update tolerance")
      ->envname("GLASSYDICKE_TOL");
  rs->add_option("--max-iter", r_opts.max_iter, "damped iteration budget")
      ->envname("GLASSYDICKE_MAX_ITER");
  rs->add_option("--damping", r_opts.damping, "damping eta")->envname("GLASSYDICKE_DAMPING");
  rs->add_option("--order", r_opts.quad_order, "quadrature order")
      ->envname("GLASSYDICKE_ORDER");
  rs->add_flag("--no-fallback", [&r_opts](std::int64_t) { r_opts.bisection_fallback = false; },
               "disable the bisection fallback (exposes raw non-convergence)");
  rs->add_option("--out", r_out, "output path")->envname("GLASSYDICKE_OUT");

  // ---- scan-matter ------------------------------------------------------
  auto* sm = app.add_subcommand("scan-matter",
                                "matter phase diagram over (jtilde0/J, T/J), CSV output");
  configure_common(sm);
  double sm_jt_min = 0.0, sm_jt_max = 2.0, sm_t_min = 0.05, sm_t_max = 2.0;
  int sm_jt_steps = 41, sm_t_steps = 40;
  double sm_j = 1.0, sm_lambda = 0.0, sm_class_tol = 1e-6;
  int sm_threads = default_threads();
  bool sm_no_warm = false;
  std::string sm_out = "-";
  sm->add_option("--jt-min", sm_jt_min, "min jtilde0/J")->envname("GLASSYDICKE_JT_MIN");
  sm->add_option("--jt-max", sm_jt_max, "max jtilde0/J")->envname("GLASSYDICKE_JT_MAX");
  sm->add_option("--jt-steps", sm_jt_steps, "grid count along jtilde0/J")
      ->envname("GLASSYDICKE_JT_STEPS");
  sm->add_option("--t-min", sm_t_min, "min T/J")->envname("GLASSYDICKE_T_MIN");
  sm->add_option("--t-max", sm_t_max, "max T/J")->envname("GLASSYDICKE_T_MAX");
  sm->add_option("--t-steps", sm_t_steps, "grid count along T/J")
      ->envname("GLASSYDICKE_T_STEPS");
  sm->add_option("--j", sm_j, "coupling scale J (> 0)")->envname("GLASSYDICKE_J");
  sm->add_option("--lambda", sm_lambda, "fixed lambda for theta reporting")
      ->envname("GLASSYDICKE_LAMBDA");
  sm->add_option("--class-tol", sm_class_tol, "classification tolerance")
      ->envname("GLASSYDICKE_CLASS_TOL");
  sm->add_option("--threads", sm_threads, "worker cap")->envname("GLASSYDICKE_THREADS");
  sm->add_flag("--no-warm-start", sm_no_warm, "solve every node from cold starts");
  sm->add_option("--out", sm_out, "output path")->envname("GLASSYDICKE_OUT");

  // ---- scan-optical -----------------------------------------------------
  auto* so = app.add_subcommand(
      "scan-optical", "optical phase diagram over (lambda, T) at fixed (J0, J), CSV output");
  configure_common(so);
  double so_l_min = 0.0, so_l_max = 2.0, so_t_min = 0.1, so_t_max = 2.0;
  int so_l_steps = 41, so_t_steps = 40;
  double so_j0 = 0.0, so_j = 1.0, so_class_tol = 1e-6;
  int so_threads = default_threads();
  bool so_no_warm = false;
  std::string so_out = "-";
  so->add_option("--lambda-min", so_l_min, "min lambda")->envname("GLASSYDICKE_LAMBDA_MIN");
  so->add_option("--lambda-max", so_l_max, "max lambda")->envname("GLASSYDICKE_LAMBDA_MAX");
  so->add_option("--lambda-steps", so_l_steps, "grid count along lambda")
      ->envname("GLASSYDICKE_LAMBDA_STEPS");
  so->add_option("--t-min", so_t_min, "min T")->envname("GLASSYDICKE_T_MIN");
  so->add_option("--t-max", so_t_max, "max T")->envname("GLASSYDICKE_T_MAX");
  so->add_option("--t-steps", so_t_steps, "grid count along T")
      ->envname("GLASSYDICKE_T_STEPS");
  so->add_option("--j0", so_j0, "bare mean coupling J0")->envname("GLASSYDICKE_J0");
  so->add_option("--j", so_j, "coupling std-dev scale J")->envname("GLASSYDICKE_J");
  so->add_option("--class-tol", so_class_tol, "classification tolerance")
      ->envname("GLASSYDICKE_CLASS_TOL");
  so->add_option("--threads", so_threads, "worker cap")->envname("GLASSYDICKE_THREADS");
  so->add_flag("--no-warm-start", so_no_warm, "solve every node from cold starts");
  so->add_option("--out", so_out, "output path")->envname("GLASSYDICKE_OUT");

  // ---- mc ----------------------------------------------------------------
  auto* mc = app.add_subcommand(
      "mc", "parallel-tempering Monte Carlo on one disorder realization, CSV output");
  configure_common(mc);
  int mc_n = 64;
  double mc_lambda = 0.0, mc_j0 = 0.0, mc_j = 1.0;
  std::uint64_t mc_seed = 1;
  glassydicke::MCConfig mc_cfg;
  LadderArgs mc_ladder;
  std::string mc_out = "-", mc_summary;
  mc->add_option("--n", mc_n, "qubit count")->envname("GLASSYDICKE_N");
  mc->add_option("--lambda", mc_lambda, "qubit-cavity coupling")
      ->envname("GLASSYDICKE_LAMBDA");
  mc->add_option("--j0", mc_j0, "mean coupling scale J0")->envname("GLASSYDICKE_J0");
  mc->add_option("--j", mc_j, "coupling std-dev scale J")->envname("GLASSYDICKE_J");
  mc->add_option("--seed", mc_seed, "master seed (disorder + trajectories)")
      ->envname("GLASSYDICKE_SEED");
  mc->add_option("--sweeps", mc_cfg.sweeps, "total sweeps")->envname("GLASSYDICKE_SWEEPS");
  mc->add_option("--burn-in", mc_cfg.burn_in, "discarded sweeps")
      ->envname("GLASSYDICKE_BURN_IN");
  mc->add_option("--exchange-interval", mc_cfg.exchange_interval,
                 "sweeps between swap attempts")
      ->envname("GLASSYDICKE_EXCHANGE_INTERVAL");
  mc->add_option("--blocks", mc_cfg.block_count, "blocking error-analysis blocks")
      ->envname("GLASSYDICKE_BLOCKS");
  add_ladder_options(mc, mc_ladder);
  mc->add_option("--out", mc_out, "CSV output path")->envname("GLASSYDICKE_OUT");
  mc->add_option("--summary", mc_summary, "JSON summary path (omitted if empty)")
      ->envname("GLASSYDICKE_SUMMARY");

  // ---- avg ---------------------------------------------------------------
  auto* avg = app.add_subcommand(
      "avg", "quenched disorder average of Monte Carlo estimates, CSV output");
  configure_common(avg);
  int a_n = 64, a_r = 8, a_threads = default_threads();
  double a_lambda = 0.0, a_j0 = 0.0, a_j = 1.0;
  std::uint64_t a_seed = 1;
  glassydicke::MCConfig a_cfg;
  LadderArgs a_ladder;
  std::string a_out = "-", a_summary;
  avg->add_option("--n", a_n, "qubit count")->envname("GLASSYDICKE_N");
  avg->add_option("--r", a_r, "number of disorder realizations")->envname("GLASSYDICKE_R");
  avg->add_option("--lambda", a_lambda, "qubit-cavity coupling")
      ->envname("GLASSYDICKE_LAMBDA");
  avg->add_option("--j0", a_j0, "mean coupling scale J0")->envname("GLASSYDICKE_J0");
  avg->add_option("--j", a_j, "coupling std-dev scale J")->envname("GLASSYDICKE_J");
  avg->add_option("--seed", a_seed, "master seed")->envname("GLASSYDICKE_SEED");
  avg->add_option("--sweeps", a_cfg.sweeps, "total sweeps per run")
      ->envname("GLASSYDICKE_SWEEPS");
  avg->add_option("--burn-in", a_cfg.burn_in, "discarded sweeps")
      ->envname("GLASSYDICKE_BURN_IN");
  avg->add_option("--exchange-interval", a_cfg.exchange_interval,
                  "sweeps between swap attempts")
      ->envname("GLASSYDICKE_EXCHANGE_INTERVAL");
  avg->add_option("--blocks", a_cfg.block_count, "blocking blocks per run")
      ->envname("GLASSYDICKE_BLOCKS");
  avg->add_option("--threads", a_threads, "worker cap over realizations")
      ->envname("GLASSYDICKE_THREADS");
  add_ladder_options(avg, a_ladder);
  avg->add_option("--out", a_out, "CSV output path")->envname("GLASSYDICKE_OUT");
  avg->add_option("--summary", a_summary, "JSON summary path")
      ->envname("GLASSYDICKE_SUMMARY");

  // ---- validate -----------------------------------------------------------
  auto* val = app.add_subcommand("validate", "run the acceptance suite");
  configure_common(val);
  bool v_quick = false;
  int v_threads = default_threads();
  val->add_flag("--quick", v_quick, "reduced suite (N <= 8, fewer seeds), < 60 s");
  val->add_option("--threads", v_threads, "worker cap")->envname("GLASSYDICKE_THREADS");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    for (CLI::App* sub : app.get_subcommands()) apply_config_file(sub);

    if (oracle->parsed()) {
      auto disorder = glassydicke::sample_disorder(o_n, o_j0, o_j, o_seed);
      auto model = glassydicke::build_effective(disorder, o_lambda);
      auto cl = glassydicke::enumerate_classical(model, o_beta, o_threads);
      auto qm = glassydicke::quantum_closed_form(disorder, o_lambda, o_beta, o_threads);
      double residual = glassydicke::verify_mapping(disorder, o_lambda, o_beta, o_threads);
      KV config{{"n", std::to_string(o_n)},  {"lambda", fmt17(o_lambda)},
                {"j0", fmt17(o_j0)},         {"j", fmt17(o_j)},
                {"beta", fmt17(o_beta)},     {"seed", std::to_string(o_seed)},
                {"threads", std::to_string(o_threads)}};
      glassydicke::JsonWriter w;
      w.put_raw("classical", to_json(cl));
      w.put_raw("quantum", to_json(qm));
      w.put("residual", residual);
      w.put_raw("config", kv_json(config));
      write_output(o_out, w.str() + "\n");
      return kExitOk;
    }

    if (rs->parsed()) {
      glassydicke::RSParams p{r_t, r_jt, r_j, r_lambda};
      auto sol = glassydicke::solve_rs(p, r_opts);
      KV config{{"t", fmt17(r_t)},
                {"jtilde0", fmt17(r_jt)},
                {"j", fmt17(r_j)},
                {"lambda", fmt17(r_lambda)},
                {"tol", fmt17(r_opts.tol)},
                {"max-iter", std::to_string(r_opts.max_iter)},
                {"damping", fmt17(r_opts.damping)},
                {"order", std::to_string(r_opts.quad_order)}};
      glassydicke::JsonWriter w;
      w.put("m", sol.m);
      w.put("q", sol.q);
      w.put("free_energy", sol.free_energy);
      w.put("theta", sol.theta);
      w.put("converged", sol.converged);
      w.put("iterations", sol.iterations);
      w.put("residual", sol.residual);
      w.put("branch", std::string(to_string(sol.branch)));
      w.put_raw("config", kv_json(config));
      write_output(r_out, w.str() + "\n");
      return sol.converged ? kExitOk : kExitNoConvergence;
    }

    if (sm->parsed() || so->parsed()) {
      glassydicke::GridSpec g;
      KV echo;
      std::vector<glassydicke::PhasePoint> pts;
      std::string out_path;
      if (sm->parsed()) {
        g.axis1_name = "jtilde0_over_j";
        g.axis2_name = "t_over_j";
        g.a1_min = sm_jt_min;
        g.a1_max = sm_jt_max;
        g.a1_count = sm_jt_steps;
        g.a2_min = sm_t_min;
        g.a2_max = sm_t_max;
        g.a2_count = sm_t_steps;
        g.j = sm_j;
        g.lambda = sm_lambda;
        g.classify_tol = sm_class_tol;
        echo = {{"jt-min", fmt17(sm_jt_min)},
                {"jt-max", fmt17(sm_jt_max)},
                {"jt-steps", std::to_string(sm_jt_steps)},
                {"t-min", fmt17(sm_t_min)},
                {"t-max", fmt17(sm_t_max)},
                {"t-steps", std::to_string(sm_t_steps)},
                {"j", fmt17(sm_j)},
                {"lambda", fmt17(sm_lambda)},
                {"class-tol", fmt17(sm_class_tol)}};
        pts = glassydicke::scan_matter(g, {}, sm_threads, !sm_no_warm);
        out_path = sm_out;
      } else {
        g.axis1_name = "lambda";
        g.axis2_name = "t";
        g.a1_min = so_l_min;
        g.a1_max = so_l_max;
        g.a1_count = so_l_steps;
        g.a2_min = so_t_min;
        g.a2_max = so_t_max;
        g.a2_count = so_t_steps;
        g.j = so_j;
        g.j0 = so_j0;
        g.classify_tol = so_class_tol;
        echo = {{"lambda-min", fmt17(so_l_min)},
                {"lambda-max", fmt17(so_l_max)},
                {"lambda-steps", std::to_string(so_l_steps)},
                {"t-min", fmt17(so_t_min)},
                {"t-max", fmt17(so_t_max)},
                {"t-steps", std::to_string(so_t_steps)},
                {"j0", fmt17(so_j0)},
                {"j", fmt17(so_j)},
                {"class-tol", fmt17(so_class_tol)}};
        pts = glassydicke::scan_optical(g, {}, so_threads, !so_no_warm);
        out_path = so_out;
      }
      write_output(out_path, glassydicke::phase_csv(pts, echo));
      for (const auto& p : pts)
        if (!p.converged) return kExitNoConvergence;
      return kExitOk;
    }

    if (mc->parsed()) {
      mc_cfg.ladder = mc_ladder.build();
      mc_cfg.seed = glassydicke::rng::derive(mc_seed, 0x6d63);
      const std::uint64_t disorder_seed = glassydicke::rng::derive(mc_seed, 0xd15c);
      auto disorder = glassydicke::sample_disorder(mc_n, mc_j0, mc_j, disorder_seed);
      auto model = glassydicke::build_effective(disorder, mc_lambda);
      auto est = glassydicke::run_parallel_tempering(model, mc_cfg);
      KV echo{{"n", std::to_string(mc_n)},
              {"lambda", fmt17(mc_lambda)},
              {"j0", fmt17(mc_j0)},
              {"j", fmt17(mc_j)},
              {"seed", std::to_string(mc_seed)},
              {"sweeps", std::to_string(mc_cfg.sweeps)},
              {"burn-in", std::to_string(mc_cfg.burn_in)},
              {"exchange-interval", std::to_string(mc_cfg.exchange_interval)},
              {"blocks", std::to_string(mc_cfg.block_count)},
              {"ladder", ladder_csv(mc_cfg.ladder)}};
      write_output(mc_out, csv_header_echo(echo) + glassydicke::mc_csv(est));
      if (!mc_summary.empty()) {
        glassydicke::JsonWriter w;
        w.put_raw("config", kv_json_quoting(echo));
        w.put("disorder_seed", disorder_seed);
        w.put("trajectory_seed", mc_cfg.seed);
        w.put_raw("ladder", glassydicke::json_array(mc_cfg.ladder));
        w.put("measured_sweeps", est.measured_sweeps);
        write_output(mc_summary, w.str() + "\n");
      }
      return kExitOk;
    }

    if (avg->parsed()) {
      a_cfg.ladder = a_ladder.build();
      a_cfg.seed = a_seed;
      glassydicke::ModelParams p;
      p.n = a_n;
      p.lambda = a_lambda;
      p.j0 = a_j0;
      p.j = a_j;
      p.t = a_cfg.ladder.front();
      auto res = glassydicke::disorder_average(p, a_r, a_cfg, a_threads);
      KV echo{{"n", std::to_string(a_n)},
              {"r", std::to_string(a_r)},
              {"lambda", fmt17(a_lambda)},
              {"j0", fmt17(a_j0)},
              {"j", fmt17(a_j)},
              {"seed", std::to_string(a_seed)},
              {"sweeps", std::to_string(a_cfg.sweeps)},
              {"burn-in", std::to_string(a_cfg.burn_in)},
              {"exchange-interval", std::to_string(a_cfg.exchange_interval)},
              {"blocks", std::to_string(a_cfg.block_count)},
              {"threads", std::to_string(a_threads)},
              {"ladder", ladder_csv(a_cfg.ladder)}};
      write_output(a_out, csv_header_echo(echo) + glassydicke::mc_csv(res));
      if (!a_summary.empty()) {
        glassydicke::JsonWriter w;
        w.put_raw("config", kv_json_quoting(echo));
        w.put_raw("realization_seeds", glassydicke::json_array(res.realization_seeds));
        w.put_raw("ladder", glassydicke::json_array(a_cfg.ladder));
        write_output(a_summary, w.str() + "\n");
      }
      return kExitOk;
    }

    if (val->parsed()) {
      glassydicke::ValidationOptions vo;
      vo.quick = v_quick;
      vo.threads = v_threads;
      auto results = glassydicke::run_acceptance(vo, std::cout);
      return glassydicke::all_passed(results) ? kExitOk : kExitValidationFailed;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
