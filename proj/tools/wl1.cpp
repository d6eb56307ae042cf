// wl1: command-line front end for weighted l1 recovery, NSP certificates,
// measurement bounds and phase-transition experiments.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wl1/bounds.hpp"
#include "wl1/error.hpp"
#include "wl1/experiment.hpp"
#include "wl1/io.hpp"
#include "wl1/nsp.hpp"
#include "wl1/parallel.hpp"
#include "wl1/problem.hpp"
#include "wl1/random.hpp"
#include "wl1/recovery.hpp"

namespace {

using namespace wl1;

std::uint64_t env_seed(std::uint64_t fallback) {
  const char* text = std::getenv("WL1_SEED");
  if (text == nullptr || *text == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(text, &end, 0);
  if (*end != '\0') throw ArgumentError(std::string("WL1_SEED is not an integer: ") + text);
  return v;
}

IndexSet parse_index_list(const std::string& text) {
  std::vector<std::size_t> idx;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(item.c_str(), &end, 10);
    if (*end != '\0' || item[0] == '-') throw ArgumentError("bad index '" + item + "'");
    idx.push_back(static_cast<std::size_t>(v));
  }
  return IndexSet(std::move(idx));
}

template <typename T, typename Reader>
T load(const std::string& path, Reader reader) {
  std::ifstream in = open_input(path);
  try {
    return reader(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line());
  }
}

template <typename Writer>
void save(const std::string& path, Writer writer) {
  std::ofstream out = open_output(path);
  writer(out);
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  std::size_t m = 0, N = 0, k = 0;
  double alpha = 1.0, rho = 1.0;
  std::optional<double> w;
  std::optional<std::uint64_t> seed;
  std::string dir;
};

void run_gen(const GenArgs& g) {
  const std::uint64_t seed = g.seed ? *g.seed : env_seed(kDefaultBaseSeed);
  Rng rng(seed);
  const DenseMatrix a = gen_gaussian_matrix(g.m, g.N, rng);
  ProblemInstance inst = gen_sparse_signal(g.N, g.k, rng);
  inst.seed = seed;
  measure(a, inst);
  Rng est_rng = rng.child(1);
  const SupportEstimate est =
      gen_support_estimate(inst, g.alpha, g.rho, g.w.value_or(1.0 - g.alpha), est_rng);

  std::filesystem::path dir(g.dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + g.dir + "': " + ec.message());
  save((dir / "matrix.txt").string(), [&](std::ostream& o) { write_matrix(o, a); });
  save((dir / "signal.txt").string(), [&](std::ostream& o) { write_vector(o, inst.signal); });
  save((dir / "measurements.txt").string(),
       [&](std::ostream& o) { write_vector(o, inst.measurements); });
  save((dir / "estimate.txt").string(), [&](std::ostream& o) { write_estimate(o, est); });
  std::cout << "wrote " << g.m << "x" << g.N << " instance with k=" << g.k
            << " (seed " << seed << ") to " << g.dir << "\n";
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string matrix, measurements, estimate, truth, out;
  std::optional<double> w;
};

void run_solve(const SolveArgs& s) {
  const DenseMatrix a = load<DenseMatrix>(s.matrix, [](std::istream& i) { return read_matrix(i); });
  const auto y = load<std::vector<double>>(s.measurements,
                                           [](std::istream& i) { return read_vector(i); });
  WeightVector weights = WeightVector::uniform(a.cols());
  if (!s.estimate.empty()) {
    SupportEstimate est =
        load<SupportEstimate>(s.estimate, [](std::istream& i) { return read_estimate(i); });
    if (s.w) est.weight = *s.w;
    weights = WeightVector::from_estimate(a.cols(), est);
  } else if (s.w) {
    throw ArgumentError("--w requires --estimate");
  }
  std::optional<std::vector<double>> truth;
  if (!s.truth.empty()) {
    truth = load<std::vector<double>>(s.truth, [](std::istream& i) { return read_vector(i); });
  }
  std::optional<std::span<const double>> truth_view;
  if (truth) truth_view = std::span<const double>(*truth);
  const RecoveryResult r = solve_weighted_l1(a, y, weights, truth_view);

  std::cout << "weighted_norm " << format_double(r.weighted_norm) << "\n";
  std::cout << "lp_iterations " << r.lp_iterations << "\n";
  if (truth) {
    std::cout << "relative_error " << format_double(r.relative_error) << "\n";
    std::cout << "exact " << (r.exact ? "yes" : "no") << "\n";
  }
  if (!s.out.empty()) {
    save(s.out, [&](std::ostream& o) { write_vector(o, r.recovered); });
  } else {
    for (std::size_t i = 0; i < r.recovered.size(); ++i) {
      std::cout << (i ? " " : "") << format_double(r.recovered[i]);
    }
    std::cout << "\n";
  }
}

// ---------------------------------------------------------------- nsp

struct NspArgs {
  std::string matrix, mode = "uniform", T, Ttilde, out;
  std::size_t k = 1, s = 0;
  double w = 1.0;
  std::size_t orthant_cap = 18;
  unsigned threads = default_thread_count();
  bool no_prune = false;
};

void run_nsp(const NspArgs& n) {
  const DenseMatrix a = load<DenseMatrix>(n.matrix, [](std::istream& i) { return read_matrix(i); });
  NspOptions opts;
  opts.orthant_cap = n.orthant_cap;
  opts.threads = n.threads;
  opts.prune_uniform = !n.no_prune;
  NspCertificate cert;
  switch (parse_nsp_mode(n.mode)) {
    case NspMode::standard:
      cert = nsp_constant_standard(a, n.k, opts);
      break;
    case NspMode::nonuniform:
      if (n.T.empty()) throw ArgumentError("nonuniform mode needs --T");
      cert = nsp_constant_nonuniform(a, parse_index_list(n.T), parse_index_list(n.Ttilde), n.w,
                                     opts);
      break;
    case NspMode::uniform:
      cert = nsp_constant_uniform(a, n.k, n.s, n.w, opts);
      break;
    case NspMode::uniform_star:
      cert = nsp_constant_uniform_star(a, n.k, n.s, n.w, opts);
      break;
  }
  if (n.out.empty()) {
    write_certificate(std::cout, cert);
  } else {
    save(n.out, [&](std::ostream& o) { write_certificate(o, cert); });
    std::cout << "C " << format_double(cert.optimal_constant) << "\n";
  }
}

// ---------------------------------------------------------------- bound

struct BoundArgs {
  std::string bound = "all";
  BoundInputs in;
};

void run_bound(const BoundArgs& b) {
  std::vector<BoundKind> kinds;
  if (b.bound == "all") {
    kinds = {BoundKind::thm2, BoundKind::thm3, BoundKind::cor5, BoundKind::cor6};
  } else {
    kinds = {parse_bound_kind(b.bound)};
  }
  // Evaluate everything before printing so a domain error leaves no partial table.
  std::vector<std::pair<double, std::int64_t>> rows;
  for (BoundKind kind : kinds) {
    const double rhs = bound_rhs(kind, b.in);
    rows.emplace_back(rhs, min_measurements_for(rhs));
  }
  std::cout << "bound,N,k,s,alpha,rho,w,C,eps,rhs,min_m\n";
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    const auto& in = b.in;
    std::cout << to_string(kinds[i]) << ',' << format_double(in.N) << ',' << format_double(in.k)
              << ',' << format_double(in.s) << ',' << format_double(in.alpha) << ','
              << format_double(in.rho) << ',' << format_double(in.w) << ','
              << format_double(in.C) << ',' << format_double(in.epsilon) << ','
              << format_double(rows[i].first) << ',' << rows[i].second << '\n';
  }
}

// ---------------------------------------------------------------- phase / plot

struct PhaseArgs {
  std::string preset = "desk", config, out = "phase.csv", svg;
  unsigned threads = default_thread_count();
  bool quiet = false;
};

void print_curves(const std::vector<PhaseGrid>& grids, double threshold) {
  for (const auto& g : grids) {
    std::cout << (g.alpha ? "weighted alpha=" + format_double(*g.alpha) : std::string("l1"))
              << " k*:";
    for (const auto& p : threshold_curve(g, threshold)) std::cout << ' ' << p.m << ':' << p.k;
    std::cout << '\n';
  }
}

std::vector<std::vector<ThresholdPoint>> curves_for(const std::vector<PhaseGrid>& grids,
                                                     double threshold) {
  std::vector<std::vector<ThresholdPoint>> curves;
  for (const auto& g : grids) curves.push_back(threshold_curve(g, threshold));
  return curves;
}

void run_phase_cmd(const PhaseArgs& p) {
  ExperimentConfig cfg = ExperimentConfig::preset(p.preset);
  if (!p.config.empty()) {
    const auto entries =
        load<std::vector<ConfigEntry>>(p.config, [](std::istream& i) { return parse_config(i); });
    cfg = apply_config(cfg, entries);
  }
  cfg.base_seed = env_seed(cfg.base_seed);
  cfg.validate();
  ProgressCallback progress;
  int last = -1;
  if (!p.quiet) {
    progress = [&last](std::size_t done, std::size_t total) {
      const int pct = static_cast<int>(100 * done / total);
      if (pct != last) {
        last = pct;
        std::cerr << "\r" << pct << "% " << std::flush;
        if (done == total) std::cerr << "\n";
      }
    };
  }
  const auto grids = run_phase(cfg, p.threads, progress);
  emit_csv(grids, p.out);
  if (!p.svg.empty()) {
    SvgOptions svg;
    svg.N = static_cast<double>(cfg.N);
    svg.rho = cfg.rho;
    emit_svg(grids, curves_for(grids, cfg.threshold), p.svg, svg);
  }
  print_curves(grids, cfg.threshold);
}

struct PlotArgs {
  std::string csv, out = "phase.svg";
  double N = 0.0, rho = 1.0, threshold = 0.85;
};

void run_plot(const PlotArgs& p) {
  const auto grids = load_csv(p.csv);
  SvgOptions svg;
  svg.N = p.N;
  svg.rho = p.rho;
  emit_svg(grids, curves_for(grids, p.threshold), p.out, svg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted l1 recovery with support estimates"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Draw a Gaussian matrix, sparse signal and estimate");
  gen_cmd->add_option("--m", gen.m, "Rows")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--N", gen.N, "Columns")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--k", gen.k, "Sparsity")->required();
  gen_cmd->add_option("--alpha", gen.alpha, "Estimate accuracy")->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--rho", gen.rho, "Estimate size ratio")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--w", gen.w, "Weight on the estimate (default 1 - alpha)")
      ->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--seed", gen.seed, "Seed (default WL1_SEED or built-in)");
  gen_cmd->add_option("--dir", gen.dir, "Output directory")->required();

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Run (weighted) l1 minimization");
  solve_cmd->add_option("--matrix", solve.matrix, "Matrix file")->required();
  solve_cmd->add_option("--measurements", solve.measurements, "Measurement vector file")
      ->required();
  solve_cmd->add_option("--estimate", solve.estimate, "Support estimate file");
  solve_cmd->add_option("--w", solve.w, "Override the estimate weight")
      ->check(CLI::Range(0.0, 1.0));
  solve_cmd->add_option("--truth", solve.truth, "Ground-truth signal file");
  solve_cmd->add_option("--out", solve.out, "Write the recovered vector here");

  NspArgs nsp;
  auto* nsp_cmd = app.add_subcommand("nsp", "Compute an exact NSP constant and witness");
  nsp_cmd->add_option("--matrix", nsp.matrix, "Matrix file")->required();
  nsp_cmd->add_option("--mode", nsp.mode, "standard | nonuniform | uniform | uniform_star");
  nsp_cmd->add_option("--k", nsp.k, "Order k");
  nsp_cmd->add_option("--s", nsp.s, "Order s");
  nsp_cmd->add_option("--w", nsp.w, "Weight")->check(CLI::Range(0.0, 1.0));
  nsp_cmd->add_option("--T", nsp.T, "Support for nonuniform mode, e.g. 0,3");
  nsp_cmd->add_option("--Ttilde", nsp.Ttilde, "Estimate for nonuniform mode");
  nsp_cmd->add_option("--orthant-cap", nsp.orthant_cap, "Largest N to enumerate");
  nsp_cmd->add_option("--threads", nsp.threads, "Worker threads");
  nsp_cmd->add_flag("--no-prune", nsp.no_prune, "Full (T,S) enumeration in uniform mode");
  nsp_cmd->add_option("--out", nsp.out, "Write the certificate here");

  BoundArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "Evaluate Gaussian measurement bounds");
  bound_cmd->add_option("--bound", bound.bound, "thm2 | thm3 | cor5 | cor6 | all");
  bound_cmd->add_option("--N", bound.in.N, "Ambient dimension")->required();
  bound_cmd->add_option("--k", bound.in.k, "Sparsity")->required();
  bound_cmd->add_option("--s", bound.in.s, "Error size")->required();
  bound_cmd->add_option("--alpha", bound.in.alpha, "Estimate accuracy");
  bound_cmd->add_option("--rho", bound.in.rho, "Estimate size ratio");
  bound_cmd->add_option("--w", bound.in.w, "Weight");
  bound_cmd->add_option("--C", bound.in.C, "NSP constant");
  bound_cmd->add_option("--eps", bound.in.epsilon, "Failure probability");

  PhaseArgs phase;
  auto* phase_cmd = app.add_subcommand("phase", "Run a phase-transition experiment");
  phase_cmd->add_option("--preset", phase.preset, "desk | full");
  phase_cmd->add_option("--config", phase.config, "Config file (key = value)");
  phase_cmd->add_option("--out", phase.out, "CSV output path");
  phase_cmd->add_option("--svg", phase.svg, "Also render an SVG");
  phase_cmd->add_option("--threads", phase.threads, "Worker threads");
  phase_cmd->add_flag("--quiet", phase.quiet, "No progress output");

  PlotArgs plot;
  auto* plot_cmd = app.add_subcommand("plot", "Render a phase CSV as SVG");
  plot_cmd->add_option("--csv", plot.csv, "Input CSV")->required();
  plot_cmd->add_option("--out", plot.out, "SVG output path");
  plot_cmd->add_option("--N", plot.N, "Ambient dimension for the reference line");
  plot_cmd->add_option("--rho", plot.rho, "Estimate size ratio for the reference line");
  plot_cmd->add_option("--threshold", plot.threshold, "Threshold rate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*gen_cmd) run_gen(gen);
    if (*solve_cmd) run_solve(solve);
    if (*nsp_cmd) run_nsp(nsp);
    if (*bound_cmd) run_bound(bound);
    if (*phase_cmd) run_phase_cmd(phase);
    if (*plot_cmd) run_plot(plot);
  } catch (const IoError& e) {
    std::cerr << "wl1: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "wl1: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
