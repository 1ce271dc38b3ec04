#include "spag/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "spag/algorithms.hpp"
#include "spag/cluster.hpp"
#include "spag/common.hpp"
#include "spag/concentration.hpp"
#include "spag/dataset.hpp"
#include "spag/rng.hpp"
#include "spag/tuning.hpp"

namespace spag {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

LossKind parse_kind(const std::string& s) {
  if (s == "logistic") return LossKind::logistic;
  if (s == "squared") return LossKind::squared;
  throw argument_error("unknown loss kind: " + s);
}

AlgorithmKind parse_algorithm(const std::string& s) {
  if (s == "spag") return AlgorithmKind::spag;
  if (s == "dane") return AlgorithmKind::dane;
  if (s == "hb-dane") return AlgorithmKind::hb_dane;
  if (s == "agd") return AlgorithmKind::agd;
  if (s == "pgd") return AlgorithmKind::pgd;
  throw argument_error("unknown algorithm: " + s);
}

// ------------------------------------------------------------ run config

struct RunFlags {
  std::string dataset;
  std::string loss = "logistic";
  std::string synth_kind;
  int synth_d = 50;
  long synth_examples = 10000;
  double synth_decay = 0.95;
  double normalize_r = 1.0;
  double feature_scale = 1.0;
  int m = 4;
  long n = 0;  // 0 -> N/10
  double lambda = 1e-5;
  std::string mu = "auto";
  std::string algorithm = "spag";
  double g_min = 1.0;
  int t0 = 50;
  double inner_tol = 1e-9;
  int max_passes = 5000;
  int max_iters = 100;
  double target_subopt = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t seed = 0;
  std::string init = "local";
  double l_rel = 0.0;  // 0 -> derived from (lambda, mu)
  double sigma_rel = 0.0;
  double beta_hb = std::numeric_limits<double>::quiet_NaN();
  double agd_step = std::numeric_limits<double>::quiet_NaN();
  double agd_momentum = std::numeric_limits<double>::quiet_NaN();
  double pgd_step = std::numeric_limits<double>::quiet_NaN();
  int threads = 0;
  std::string out = "run";
};

void add_dataset_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--dataset", f.dataset, "LibSVM file to load");
  cmd->add_option("--loss", f.loss, "logistic|squared (file datasets)");
  cmd->add_option("--synth-kind", f.synth_kind,
                  "generate data instead: logistic|squared");
  cmd->add_option("--synth-d", f.synth_d, "synthetic dimension");
  cmd->add_option("--synth-examples", f.synth_examples, "synthetic examples");
  cmd->add_option("--synth-decay", f.synth_decay,
                  "per-coordinate stddev decay in (0,1]");
  cmd->add_option("--normalize-r", f.normalize_r,
                  "cap row norms at R after loading (0 disables)");
  cmd->add_option("--feature-scale", f.feature_scale,
                  "uniform feature scaling applied last");
  cmd->add_option("--seed", f.seed, "master seed");
}

void add_problem_flags(CLI::App* cmd, RunFlags& f) {
  add_dataset_flags(cmd, f);
  cmd->add_option("--m", f.m, "worker count");
  cmd->add_option("--n", f.n, "preconditioning sample size (0 = N/10)");
  cmd->add_option("--lambda", f.lambda, "ridge weight");
  cmd->add_option("--mu", f.mu, "extra regularization, or 'auto'");
  cmd->add_option("--g-min", f.g_min, "lower clamp for trial gains");
  cmd->add_option("--t0", f.t0, "scalar-schedule warm start");
  cmd->add_option("--inner-tol", f.inner_tol, "inner gradient-norm tolerance");
  cmd->add_option("--max-passes", f.max_passes, "inner pass budget");
  cmd->add_option("--threads", f.threads, "worker threads (0 = auto)");
}

struct Problem {
  SparseDataset ds;
  RegularizedLoss loss;
  ShardAssignment shards;
  PrecondSample sample;
};

Problem build_problem(const RunFlags& f) {
  Problem p;
  const bool synthetic = !f.synth_kind.empty();
  if (synthetic == !f.dataset.empty())
    throw argument_error("give exactly one of --dataset or --synth-kind");
  if (synthetic) {
    p.loss.kind = parse_kind(f.synth_kind);
    p.ds = make_synthetic(f.synth_d, static_cast<int>(f.synth_examples),
                          p.loss.kind, f.synth_decay,
                          derive_seed(f.seed, 0));
  } else {
    p.loss.kind = parse_kind(f.loss);
    p.ds = parse_libsvm_file(f.dataset);
    if (f.normalize_r > 0.0) p.ds = normalize_rows(std::move(p.ds), f.normalize_r);
  }
  if (f.feature_scale != 1.0)
    p.ds = scale_features(std::move(p.ds), f.feature_scale);
  validate_labels(p.ds, p.loss.kind);
  if (!(f.lambda >= 0.0)) throw argument_error("lambda must be >= 0");
  p.loss.lambda = f.lambda;

  const int N = p.ds.n_examples();
  if (N == 0) throw argument_error("dataset is empty");
  p.shards = partition(p.ds, f.m, derive_seed(f.seed, 1));
  long n = f.n > 0 ? f.n : std::max<long>(1, N / 10);
  if (n > N) throw argument_error("n exceeds the dataset size");
  p.sample = subsample(p.ds, static_cast<int>(n), derive_seed(f.seed, 2));
  return p;
}

json echo_config(const RunFlags& f, double resolved_mu, long resolved_n,
                 const std::string& algorithm) {
  json c;
  c["dataset"] = f.dataset;
  c["loss"] = f.loss;
  c["synth-kind"] = f.synth_kind;
  c["synth-d"] = f.synth_d;
  c["synth-examples"] = f.synth_examples;
  c["synth-decay"] = f.synth_decay;
  c["normalize-r"] = f.normalize_r;
  c["feature-scale"] = f.feature_scale;
  c["m"] = f.m;
  c["n"] = resolved_n;
  c["lambda"] = f.lambda;
  c["mu"] = fmt(resolved_mu);
  c["algorithm"] = algorithm;
  c["g-min"] = f.g_min;
  c["t0"] = f.t0;
  c["inner-tol"] = f.inner_tol;
  c["max-passes"] = f.max_passes;
  c["max-iters"] = f.max_iters;
  if (std::isfinite(f.target_subopt)) c["target-subopt"] = f.target_subopt;
  c["seed"] = f.seed;
  c["init"] = f.init;
  if (f.l_rel > 0.0) {
    c["l-rel"] = f.l_rel;
    c["sigma-rel"] = f.sigma_rel;
  }
  if (std::isfinite(f.beta_hb)) c["beta-hb"] = f.beta_hb;
  if (std::isfinite(f.agd_step)) c["agd-step"] = f.agd_step;
  if (std::isfinite(f.agd_momentum)) c["agd-momentum"] = f.agd_momentum;
  if (std::isfinite(f.pgd_step)) c["pgd-step"] = f.pgd_step;
  c["threads"] = f.threads;
  c["out"] = f.out;
  return c;
}

void write_csv(const std::string& path,
               const std::vector<IterationRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw argument_error("cannot open output file: " + path);
  out << "iter,comm_rounds,gradient_evals,suboptimality,gain,gain_trials,"
         "inner_passes,wall_ms\n";
  for (const IterationRecord& r : records) {
    // wall_ms is pinned to 0 in the CSV so identical configs produce
    // identical bytes; measured time is reported in the JSON summary
    out << r.iter << ',' << r.comm_rounds << ',' << r.gradient_evals << ','
        << fmt(r.suboptimality) << ',' << fmt(r.gain) << ',' << r.gain_trials
        << ',' << r.inner_passes << ",0\n";
  }
}

int cmd_run(const RunFlags& f) {
  Problem p = build_problem(f);
  const AlgorithmKind kind = parse_algorithm(f.algorithm);

  double mu = 0.0;
  ReferenceSolution ref;
  bool have_ref = false;
  const bool tunes = f.mu == "auto" && (kind == AlgorithmKind::spag ||
                                        kind == AlgorithmKind::dane ||
                                        kind == AlgorithmKind::hb_dane);
  if (tunes) {
    TuneOptions topts;
    topts.kind = kind;
    topts.g_min = f.g_min;
    topts.t0 = f.t0;
    topts.inner_tol = f.inner_tol;
    topts.max_passes = f.max_passes;
    topts.n_threads = f.threads;
    TuneResult tuned = tune_mu(p.ds, p.loss, p.shards, p.sample, topts);
    mu = tuned.mu;
    ref = std::move(tuned.reference);
    have_ref = true;
  } else if (f.mu == "auto") {
    mu = 0.1 / static_cast<double>(p.sample.indices.size());
  } else {
    try {
      std::size_t used = 0;
      mu = std::stod(f.mu, &used);
      if (used != f.mu.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw argument_error("--mu expects a number or 'auto'");
    }
    if (mu < 0.0) throw argument_error("--mu must be >= 0");
  }

  Preconditioner phi(p.loss, &p.ds, p.sample.indices, mu);
  Cluster cluster(&p.ds, p.loss, p.shards, std::move(phi), f.threads);

  if (!have_ref) ref = reference_solution(cluster);
  Eigen::VectorXd x0;
  if (f.init == "local")
    x0 = local_init(cluster);
  else if (f.init == "zero")
    x0 = Eigen::VectorXd::Zero(p.ds.n_features);
  else
    throw argument_error("--init must be local or zero");

  AlgoConfig cfg;
  cfg.kind = kind;
  if (f.l_rel > 0.0) {
    if (!(f.sigma_rel > 0.0))
      throw argument_error("--l-rel needs --sigma-rel as well");
    cfg.constants = RelativeConstants{f.l_rel, f.sigma_rel,
                                      f.l_rel / f.sigma_rel};
  }
  cfg.g_min = f.g_min;
  cfg.t0 = f.t0;
  cfg.inner_tol = f.inner_tol;
  cfg.max_passes = f.max_passes;
  cfg.beta_hb = f.beta_hb;
  cfg.agd_step = f.agd_step;
  cfg.agd_momentum = f.agd_momentum;
  cfg.pgd_step = f.pgd_step;
  StopRule stop;
  stop.max_iters = f.max_iters;
  stop.target_subopt = f.target_subopt;

  const auto t_start = std::chrono::steady_clock::now();
  RunResult run = run_experiment(cluster, cfg, stop, &ref, x0);
  const double wall_ms =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - t_start)
          .count();

  const std::string csv_path = f.out + ".csv";
  const std::string json_path = f.out + ".json";
  write_csv(csv_path, run.records);

  json summary;
  summary["algorithm"] = f.algorithm;
  summary["config"] = echo_config(f, mu, p.sample.indices.size(), f.algorithm);
  summary["iterations"] = run.records.back().iter;
  summary["final_suboptimality"] = run.records.back().suboptimality;
  summary["total_comm_rounds"] = run.records.back().comm_rounds;
  summary["total_gradient_evals"] = run.records.back().gradient_evals;
  summary["reference_grad_norm"] = ref.grad_norm;
  summary["reference_note"] = ref.method_note;
  summary["diverged"] = run.diverged;
  if (!run.note.empty()) summary["note"] = run.note;
  summary["total_wall_ms"] = wall_ms;
  summary["csv"] = csv_path;
  std::ofstream js(json_path);
  if (!js) throw argument_error("cannot open output file: " + json_path);
  js << summary.dump(2) << '\n';

  std::cout << "wrote " << csv_path << " and " << json_path << '\n';
  return run.diverged ? 3 : 0;
}

// ------------------------------------------------------------ bounds

struct BoundsFlags {
  std::string regime = "hoeffding";
  BoundsInput in;
  std::string loss;
  std::string out;
};

json report_json(const BoundReport& rep) {
  json j;
  j["regime"] = rep.regime;
  j["mu"] = rep.mu;
  if (rep.has_constants) {
    j["l_rel"] = rep.constants.l_rel;
    j["sigma_rel"] = rep.constants.sigma_rel;
    j["kappa_rel"] = rep.constants.kappa_rel;
  }
  if (!rep.validity_note.empty()) j["validity_note"] = rep.validity_note;
  return j;
}

int cmd_bounds(const BoundsFlags& f) {
  BoundsInput in = f.in;
  if (f.loss == "logistic") {
    in.b_ell = 0.25;
    in.m_ell = 1.0;
  } else if (f.loss == "squared") {
    in.b_ell = 1.0;
    in.m_ell = 0.0;
  } else if (!f.loss.empty()) {
    throw argument_error("--loss must be logistic or squared");
  }

  auto eval = [&](const BoundsInput& bi) -> BoundReport {
    if (f.regime == "hoeffding") return mu_hoeffding(bi);
    if (f.regime == "quadratic") return mu_quadratic(bi);
    if (f.regime == "bounded") return mu_bounded(bi);
    if (f.regime == "subgaussian") return mu_subgaussian(bi);
    throw argument_error("unknown regime: " + f.regime);
  };

  json j = report_json(eval(in));
  json sweep = json::array();
  for (double factor : {1.0, 2.0, 4.0}) {
    BoundsInput bi = in;
    bi.n = in.n * factor;
    sweep.push_back({{"n", bi.n}, {"mu", eval(bi).mu}});
  }
  j["n_sweep"] = sweep;

  const std::string text = j.dump(2) + "\n";
  if (f.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(f.out);
    if (!os) throw argument_error("cannot open output file: " + f.out);
    os << text;
    std::cout << "wrote " << f.out << '\n';
  }
  return 0;
}

// ------------------------------------------------- verify-concentration

struct VerifyFlags {
  int d = 10;
  long n = 500;
  long full_examples = 100000;
  double delta = 0.1;
  double lambda = 1e-3;
  double decay = 0.95;
  int draws = 100;
  int gap_draws = 50;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_verify_concentration(const VerifyFlags& f) {
  if (f.d > 200) throw argument_error("sandwich mode needs d <= 200");
  RegularizedLoss loss{LossKind::squared, f.lambda};
  SparseDataset ds = make_synthetic(f.d, static_cast<int>(f.full_examples),
                                    LossKind::squared, f.decay,
                                    derive_seed(f.seed, 0));
  const double R =
      *std::max_element(ds.row_norms.begin(), ds.row_norms.end());

  BoundsInput in;
  in.R = R;
  in.n = static_cast<double>(f.n);
  in.big_n = static_cast<double>(f.full_examples);
  in.d = static_cast<double>(f.d);
  in.delta = f.delta;
  in.lambda = f.lambda;
  const BoundReport rep = mu_quadratic(in);

  int passes = 0;
  for (int k = 0; k < f.draws; ++k) {
    PrecondSample s =
        subsample(ds, static_cast<int>(f.n), derive_seed(f.seed, 100 + k));
    if (sandwich_check_quadratic(loss, ds, s.indices, rep.mu)) ++passes;
  }

  auto gap_median = [&](long n_size, std::uint64_t salt) {
    std::vector<double> gaps;
    std::vector<Eigen::VectorXd> probes{Eigen::VectorXd::Zero(f.d)};
    for (int k = 0; k < f.gap_draws; ++k) {
      PrecondSample s = subsample(ds, static_cast<int>(n_size),
                                  derive_seed(f.seed, salt + k));
      GapEstimate g = empirical_hessian_gap(loss, ds, s.indices, probes, 200,
                                            derive_seed(f.seed, 7));
      gaps.push_back(g.gap);
    }
    std::sort(gaps.begin(), gaps.end());
    const std::size_t mid = gaps.size() / 2;
    return gaps.size() % 2 == 1 ? gaps[mid]
                                : 0.5 * (gaps[mid - 1] + gaps[mid]);
  };
  const double med_n = gap_median(f.n, 1000);
  const double med_4n = gap_median(std::min<long>(4 * f.n, f.full_examples),
                                   5000);

  json j;
  j["params"] = {{"d", f.d},       {"n", f.n},
                 {"N", f.full_examples}, {"delta", f.delta},
                 {"lambda", f.lambda},   {"draws", f.draws},
                 {"gap_draws", f.gap_draws}, {"seed", f.seed},
                 {"R", R}};
  j["mu_quadratic"] = rep.mu;
  if (!rep.validity_note.empty()) j["validity_note"] = rep.validity_note;
  j["sandwich_pass_rate"] =
      static_cast<double>(passes) / static_cast<double>(f.draws);
  j["sandwich_passes"] = passes;
  j["gap_median_n"] = med_n;
  j["gap_median_4n"] = med_4n;
  j["gap_ratio"] = med_n > 0.0 ? med_4n / med_n : 0.0;

  const std::string text = j.dump(2) + "\n";
  if (f.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(f.out);
    if (!os) throw argument_error("cannot open output file: " + f.out);
    os << text;
    std::cout << "wrote " << f.out << '\n';
  }
  return 0;
}

// ------------------------------------------------------------ tune-mu

int cmd_tune_mu(const RunFlags& f, int probe_iters) {
  Problem p = build_problem(f);
  TuneOptions topts;
  topts.kind = parse_algorithm(f.algorithm);
  topts.g_min = f.g_min;
  topts.t0 = f.t0;
  topts.inner_tol = f.inner_tol;
  topts.max_passes = f.max_passes;
  topts.probe_iters = probe_iters;
  topts.n_threads = f.threads;
  if (f.mu != "auto") {
    std::size_t used = 0;
    topts.mu0 = std::stod(f.mu, &used);
  }
  TuneResult res = tune_mu(p.ds, p.loss, p.shards, p.sample, topts);

  json j;
  j["mu"] = res.mu;
  j["probe_iters"] = probe_iters;
  j["stability_rule"] =
      "unstable iff suboptimality rises by more than 5% between consecutive "
      "probe iterations (declared choice)";
  json trace = json::array();
  for (const TuneTrial& t : res.trace)
    trace.push_back({{"mu", t.mu},
                     {"stable", t.stable},
                     {"final_subopt", t.final_subopt}});
  j["trace"] = trace;
  j["reference_grad_norm"] = res.reference.grad_norm;

  const std::string text = j.dump(2) + "\n";
  if (f.out == "run" || f.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(f.out);
    if (!os) throw argument_error("cannot open output file: " + f.out);
    os << text;
    std::cout << "wrote " << f.out << '\n';
  }
  return 0;
}

// ------------------------------------------------------- make-synthetic

int cmd_make_synthetic(const RunFlags& f, const std::string& out_path) {
  if (f.synth_kind.empty())
    throw argument_error("make-synthetic needs --synth-kind");
  SparseDataset ds = make_synthetic(f.synth_d,
                                    static_cast<int>(f.synth_examples),
                                    parse_kind(f.synth_kind), f.synth_decay,
                                    derive_seed(f.seed, 0));
  if (f.feature_scale != 1.0)
    ds = scale_features(std::move(ds), f.feature_scale);
  write_libsvm_file(ds, out_path);
  std::cout << "wrote " << out_path << " (" << ds.n_examples() << " examples, "
            << ds.n_features << " features)\n";
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"statistically preconditioned distributed optimization"};
  app.require_subcommand(1);

  RunFlags rf;
  CLI::App* run = app.add_subcommand("run", "run one algorithm, emit CSV+JSON");
  run->set_config("--config");
  add_problem_flags(run, rf);
  run->add_option("--algorithm", rf.algorithm, "spag|dane|hb-dane|agd|pgd");
  run->add_option("--max-iters", rf.max_iters, "outer iteration budget");
  run->add_option("--target-subopt", rf.target_subopt,
                  "stop once suboptimality reaches this");
  run->add_option("--init", rf.init, "local|zero");
  run->add_option("--l-rel", rf.l_rel, "override relative smoothness");
  run->add_option("--sigma-rel", rf.sigma_rel,
                  "override relative strong convexity");
  run->add_option("--beta-hb", rf.beta_hb, "heavy-ball momentum override");
  run->add_option("--agd-step", rf.agd_step, "agd step override");
  run->add_option("--agd-momentum", rf.agd_momentum, "agd momentum override");
  run->add_option("--pgd-step", rf.pgd_step, "pgd step override");
  run->add_option("--out", rf.out, "output prefix");

  BoundsFlags bf;
  CLI::App* bounds = app.add_subcommand("bounds", "relative-condition bounds");
  bounds->set_config("--config");
  bounds->add_option("--regime", bf.regime,
                     "hoeffding|quadratic|bounded|subgaussian");
  bounds->add_option("--R", bf.in.R, "feature norm bound");
  bounds->add_option("--n", bf.in.n, "preconditioning sample size");
  bounds->add_option("--N", bf.in.big_n, "full dataset size");
  bounds->add_option("--d", bf.in.d, "dimension");
  bounds->add_option("--delta", bf.in.delta, "failure probability");
  bounds->add_option("--lambda", bf.in.lambda, "ridge weight");
  bounds->add_option("--b-ell", bf.in.b_ell, "bound on the scalar curvature");
  bounds->add_option("--m-ell", bf.in.m_ell, "curvature Lipschitz constant");
  bounds->add_option("--domain-radius", bf.in.domain_radius, "domain radius D");
  bounds->add_option("--rho", bf.in.rho, "sub-Gaussian parameter");
  bounds->add_option("--c-subg", bf.in.c_subg, "sub-Gaussian leading constant");
  bounds->add_option("--loss", bf.loss, "preset B_ell/M_ell for a loss kind");
  bounds->add_option("--out", bf.out, "output file (default stdout)");

  VerifyFlags vf;
  CLI::App* verify = app.add_subcommand(
      "verify-concentration", "Monte Carlo sandwich and gap-scaling study");
  verify->set_config("--config");
  verify->add_option("--d", vf.d, "dimension (<= 200)");
  verify->add_option("--n", vf.n, "preconditioning sample size");
  verify->add_option("--N", vf.full_examples, "full dataset size");
  verify->add_option("--delta", vf.delta, "failure probability");
  verify->add_option("--lambda", vf.lambda, "ridge weight");
  verify->add_option("--decay", vf.decay, "synthetic spectrum decay");
  verify->add_option("--draws", vf.draws, "sandwich draws");
  verify->add_option("--gap-draws", vf.gap_draws, "gap draws per size");
  verify->add_option("--seed", vf.seed, "seed");
  verify->add_option("--out", vf.out, "output file (default stdout)");

  RunFlags tf;
  int probe_iters = 20;
  CLI::App* tune = app.add_subcommand("tune-mu", "stability search for mu");
  tune->set_config("--config");
  add_problem_flags(tune, tf);
  tune->add_option("--algorithm", tf.algorithm, "probe algorithm");
  tune->add_option("--probe-iters", probe_iters, "iterations per probe");
  tune->add_option("--out", tf.out, "output file (default stdout)");

  RunFlags mf;
  std::string synth_out = "synthetic.libsvm";
  CLI::App* mk = app.add_subcommand("make-synthetic",
                                    "generate a LibSVM dataset");
  mk->set_config("--config");
  add_dataset_flags(mk, mf);
  mk->add_option("--out", synth_out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) return cmd_run(rf);
    if (bounds->parsed()) return cmd_bounds(bf);
    if (verify->parsed()) return cmd_verify_concentration(vf);
    if (tune->parsed()) return cmd_tune_mu(tf, probe_iters);
    if (mk->parsed()) return cmd_make_synthetic(mf, synth_out);
  } catch (const argument_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

int cli_main(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("spag");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace spag
