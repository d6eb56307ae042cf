#include "wl1/experiment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>

#include "wl1/error.hpp"
#include "wl1/io.hpp"
#include "wl1/parallel.hpp"
#include "wl1/problem.hpp"
#include "wl1/random.hpp"
#include "wl1/recovery.hpp"

namespace wl1 {

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& what) { throw ArgumentError("config: " + what); };
  if (N == 0) fail("N must be positive");
  if (m_values.empty()) fail("m_values must not be empty");
  for (std::size_t i = 0; i < m_values.size(); ++i) {
    if (m_values[i] == 0) fail("m values must be positive");
    if (i > 0 && m_values[i] <= m_values[i - 1]) fail("m_values must be strictly increasing");
  }
  if (!(k_lo >= 0.0 && k_lo <= k_hi)) fail("need 0 <= k_lo <= k_hi");
  for (double a : alphas) {
    if (!(a >= 0.0 && a <= 1.0)) fail("alphas must lie in [0,1]");
  }
  if (!(rho > 0.0)) fail("rho must be positive");
  if (weight_rule == WeightRule::fixed && !(fixed_weight >= 0.0 && fixed_weight <= 1.0)) {
    fail("weight must lie in [0,1]");
  }
  if (trials == 0) fail("trials must be at least 1");
  if (!(threshold > 0.0 && threshold < 1.0)) fail("threshold must lie in (0,1)");
  if (!(success_tol > 0.0)) fail("success_tol must be positive");
  for (std::size_t m : m_values) {
    const auto ks = k_values(m);
    if (!ks.empty() && ks.back() > N) fail("k exceeds N at m = " + std::to_string(m));
  }
}

double ExperimentConfig::weight_for(double alpha) const {
  return weight_rule == WeightRule::fixed ? fixed_weight : 1.0 - alpha;
}

std::size_t ExperimentConfig::step_for(std::size_t m) const {
  return k_step > 0 ? k_step : std::max<std::size_t>(1, (m + 49) / 50);
}

std::vector<std::size_t> ExperimentConfig::k_values(std::size_t m) const {
  const auto md = static_cast<double>(m);
  const auto lo = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(k_lo * md + 1e-9)));
  const auto hi = static_cast<std::size_t>(std::floor(k_hi * md + 1e-9));
  std::vector<std::size_t> out;
  for (std::size_t k = lo; k <= hi; k += step_for(m)) out.push_back(k);
  return out;
}

ExperimentConfig ExperimentConfig::desk() { return ExperimentConfig{}; }

ExperimentConfig ExperimentConfig::full() {
  ExperimentConfig c;
  c.N = 500;
  c.m_values = {50, 75, 100, 125, 150, 175, 200, 225, 250};
  c.trials = 50;
  return c;
}

ExperimentConfig ExperimentConfig::preset(const std::string& name) {
  if (name == "desk") return desk();
  if (name == "full") return full();
  throw ArgumentError("unknown preset '" + name + "'");
}

const PhaseCell* PhaseGrid::find(std::size_t m, std::size_t k) const {
  for (const auto& col : columns) {
    if (col.m != m) continue;
    for (const auto& cell : col.cells) {
      if (cell.k == k) return &cell;
    }
  }
  return nullptr;
}

namespace {

struct TrialTask {
  std::size_t column;
  std::size_t cell;
  std::size_t m;
  std::size_t k;
  std::size_t trial;
};

TrialOutcome attempt(const DenseMatrix& a, const ProblemInstance& inst,
                     const WeightVector& weights, const RecoveryOptions& opts) {
  try {
    const auto result = solve_weighted_l1(a, inst.measurements, weights,
                                          std::span<const double>(inst.signal), opts);
    return result.exact ? TrialOutcome::success : TrialOutcome::failure;
  } catch (const Error&) {
    return TrialOutcome::degenerate;
  }
}

}  // namespace

std::vector<PhaseGrid> run_phase(const ExperimentConfig& config, unsigned threads,
                                 const ProgressCallback& progress) {
  config.validate();
  const std::size_t methods = 1 + config.alphas.size();

  std::vector<PhaseGrid> grids(methods);
  grids[0].method = "l1";
  grids[0].weight = 1.0;
  for (std::size_t i = 0; i < config.alphas.size(); ++i) {
    grids[i + 1].method = "weighted";
    grids[i + 1].alpha = config.alphas[i];
    grids[i + 1].weight = config.weight_for(config.alphas[i]);
  }

  std::vector<TrialTask> tasks;
  for (std::size_t c = 0; c < config.m_values.size(); ++c) {
    const std::size_t m = config.m_values[c];
    const auto ks = config.k_values(m);
    for (auto& g : grids) {
      PhaseColumn col;
      col.m = m;
      for (std::size_t k : ks) {
        PhaseCell cell;
        cell.k = k;
        cell.trials = config.trials;
        cell.outcomes.assign(config.trials, TrialOutcome::failure);
        col.cells.push_back(std::move(cell));
      }
      g.columns.push_back(std::move(col));
    }
    for (std::size_t j = 0; j < ks.size(); ++j) {
      for (std::size_t t = 0; t < config.trials; ++t) tasks.push_back({c, j, m, ks[j], t});
    }
  }

  RecoveryOptions opts;
  opts.success_tol = config.success_tol;
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;

  parallel_for(tasks.size(), threads, [&](std::size_t i) {
    const TrialTask& task = tasks[i];
    Rng rng(hash_seed({config.base_seed, task.m, task.k, task.trial}));
    const DenseMatrix a = gen_gaussian_matrix(task.m, config.N, rng);
    ProblemInstance inst = gen_sparse_signal(config.N, task.k, rng);
    inst.seed = rng.seed();
    measure(a, inst);

    grids[0].columns[task.column].cells[task.cell].outcomes[task.trial] =
        attempt(a, inst, WeightVector::uniform(config.N), opts);
    for (std::size_t ai = 0; ai < config.alphas.size(); ++ai) {
      Rng est_rng(hash_seed({config.base_seed, task.m, task.k, task.trial, ai + 1}));
      const SupportEstimate est =
          gen_support_estimate(inst, config.alphas[ai], config.rho, grids[ai + 1].weight, est_rng);
      grids[ai + 1].columns[task.column].cells[task.cell].outcomes[task.trial] =
          attempt(a, inst, WeightVector::from_estimate(config.N, est), opts);
    }

    const std::size_t finished = done.fetch_add(1, std::memory_order_relaxed) + 1;
    if (progress) {
      std::lock_guard lock(progress_mutex);
      progress(finished, tasks.size());
    }
  });

  for (auto& g : grids) {
    for (auto& col : g.columns) {
      for (auto& cell : col.cells) {
        cell.successes = static_cast<std::size_t>(
            std::count(cell.outcomes.begin(), cell.outcomes.end(), TrialOutcome::success));
        cell.degenerate = static_cast<std::size_t>(
            std::count(cell.outcomes.begin(), cell.outcomes.end(), TrialOutcome::degenerate));
      }
    }
  }
  return grids;
}

std::vector<ThresholdPoint> threshold_curve(const PhaseGrid& grid, double threshold) {
  std::vector<ThresholdPoint> curve;
  for (const auto& col : grid.columns) {
    std::optional<std::size_t> best;
    for (const auto& cell : col.cells) {
      if (cell.rate() < threshold - 1e-12) break;
      best = cell.k;
    }
    if (best) curve.push_back({col.m, *best});
  }
  return curve;
}

std::size_t threshold_at(const std::vector<ThresholdPoint>& curve, std::size_t m) {
  for (const auto& p : curve) {
    if (p.m == m) return p.k;
  }
  return 0;
}

double reference_line(double N, double k, double alpha, double rho) {
  const double s = implied_error_size(k, alpha, rho);
  if (s < 1.0) return k + 1.0;
  return k + s * std::log(N / s);
}

// ---------------------------------------------------------------- CSV

namespace {

constexpr const char* kCsvHeader = "method,alpha,w,m,k,trials,successes,degenerate,rate";

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::size_t parse_count(const std::string& text, std::size_t line, const char* what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    if (text.empty() || text[0] == '-') throw std::invalid_argument("sign");
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    throw ParseError(std::string("bad ") + what + " '" + text + "'", line);
  }
  if (pos != text.size()) throw ParseError(std::string("bad ") + what + " '" + text + "'", line);
  return static_cast<std::size_t>(v);
}

double parse_real(const std::string& text, std::size_t line, const char* what) {
  try {
    return parse_double(text);
  } catch (const ParseError&) {
    throw ParseError(std::string("bad ") + what + " '" + text + "'", line);
  }
}

}  // namespace

void write_csv(const std::vector<PhaseGrid>& grids, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& g : grids) {
    const std::string alpha = g.alpha ? format_double(*g.alpha) : std::string();
    for (const auto& col : g.columns) {
      for (const auto& cell : col.cells) {
        out << g.method << ',' << alpha << ',' << format_double(g.weight) << ',' << col.m
            << ',' << cell.k << ',' << cell.trials << ',' << cell.successes << ','
            << cell.degenerate << ',' << format_double(cell.rate()) << '\n';
      }
    }
  }
}

void emit_csv(const std::vector<PhaseGrid>& grids, const std::string& path) {
  std::ofstream out = open_output(path);
  write_csv(grids, out);
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

std::vector<PhaseGrid> read_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError("missing CSV header", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw ParseError("unexpected CSV header", 1);

  std::vector<PhaseGrid> grids;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_commas(line);
    if (f.size() != 9) throw ParseError("expected 9 fields", line_no);
    if (f[0] != "l1" && f[0] != "weighted") throw ParseError("unknown method '" + f[0] + "'", line_no);
    std::optional<double> alpha;
    if (!f[1].empty()) alpha = parse_real(f[1], line_no, "alpha");
    const double w = parse_real(f[2], line_no, "w");
    const std::size_t m = parse_count(f[3], line_no, "m");
    PhaseCell cell;
    cell.k = parse_count(f[4], line_no, "k");
    cell.trials = parse_count(f[5], line_no, "trials");
    cell.successes = parse_count(f[6], line_no, "successes");
    cell.degenerate = parse_count(f[7], line_no, "degenerate");
    const double rate = parse_real(f[8], line_no, "rate");
    if (cell.successes + cell.degenerate > cell.trials) {
      throw ParseError("successes + degenerate exceed trials", line_no);
    }
    if (std::abs(rate - cell.rate()) > 1e-12) throw ParseError("rate disagrees with counts", line_no);

    auto g = std::find_if(grids.begin(), grids.end(), [&](const PhaseGrid& x) {
      return x.method == f[0] && x.alpha == alpha && x.weight == w;
    });
    if (g == grids.end()) {
      grids.push_back(PhaseGrid{f[0], alpha, w, {}});
      g = std::prev(grids.end());
    }
    auto col = std::find_if(g->columns.begin(), g->columns.end(),
                            [&](const PhaseColumn& c) { return c.m == m; });
    if (col == g->columns.end()) {
      g->columns.push_back(PhaseColumn{m, {}});
      col = std::prev(g->columns.end());
    }
    col->cells.push_back(std::move(cell));
  }
  return grids;
}

std::vector<PhaseGrid> load_csv(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_csv(in);
}

// ---------------------------------------------------------------- SVG

std::string gray_hex(double rate) {
  const double r = std::clamp(rate, 0.0, 1.0);
  const int v = static_cast<int>(std::lround(r * 255.0));
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02X%02X%02X", v, v, v);
  return buf;
}

namespace {

struct Axes {
  double m_min = 0, m_max = 0, dm = 1;
  double k_min = 0, k_max = 0;
};

Axes axes_for(const std::vector<PhaseGrid>& grids) {
  Axes ax;
  bool any = false;
  std::vector<double> ms;
  for (const auto& g : grids) {
    for (const auto& col : g.columns) {
      ms.push_back(static_cast<double>(col.m));
      for (const auto& cell : col.cells) {
        const auto k = static_cast<double>(cell.k);
        if (!any) {
          ax.k_min = ax.k_max = k;
          any = true;
        }
        ax.k_min = std::min(ax.k_min, k);
        ax.k_max = std::max(ax.k_max, k);
      }
    }
  }
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  if (!ms.empty()) {
    ax.m_min = ms.front();
    ax.m_max = ms.back();
  }
  ax.dm = ms.size() > 1 ? ms[1] - ms[0] : 1.0;
  for (std::size_t i = 2; i < ms.size(); ++i) ax.dm = std::min(ax.dm, ms[i] - ms[i - 1]);
  return ax;
}

std::size_t cell_step(const PhaseColumn& col, std::size_t j) {
  if (col.cells.size() < 2) return 1;
  return j + 1 < col.cells.size() ? col.cells[j + 1].k - col.cells[j].k
                                  : col.cells[j].k - col.cells[j - 1].k;
}

std::string panel_title(const PhaseGrid& g) {
  if (!g.alpha) return "l1";
  return "weighted l1, alpha=" + format_double(*g.alpha) + ", w=" + format_double(g.weight);
}

}  // namespace

void write_svg(const std::vector<PhaseGrid>& grids,
               const std::vector<std::vector<ThresholdPoint>>& curves,
               std::ostream& out, const SvgOptions& options) {
  const Axes ax = axes_for(grids);
  const double px = options.cell_px;
  const double ux = px / ax.dm;  // pixels per unit of m
  const double uy = px;          // pixels per unit of k
  const double left = 60, top = 30, gap = 60;
  const double panel_w = (ax.m_max - ax.m_min + ax.dm) * ux;
  const double panel_h = (ax.k_max - ax.k_min + 1.0) * uy;
  const double width = left + panel_w + 20;
  const double height = top + grids.size() * (panel_h + gap);

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << format_double(width) << "\" height=\"" << format_double(height) << "\">\n";

  for (std::size_t gi = 0; gi < grids.size(); ++gi) {
    const PhaseGrid& g = grids[gi];
    const double y0 = top + gi * (panel_h + gap);
    auto x_of = [&](double m) { return left + (m - ax.m_min + ax.dm / 2.0) * ux; };
    auto y_of = [&](double k) { return y0 + (ax.k_max + 0.5 - k) * uy; };

    out << "<g class=\"panel\">\n";
    out << "<text x=\"" << format_double(left) << "\" y=\"" << format_double(y0 - 8)
        << "\" font-size=\"12\">" << panel_title(g) << "</text>\n";
    for (const auto& col : g.columns) {
      for (std::size_t j = 0; j < col.cells.size(); ++j) {
        const auto& cell = col.cells[j];
        const auto step = static_cast<double>(cell_step(col, j));
        const double x = x_of(static_cast<double>(col.m)) - px / 2.0;
        const double y = y_of(static_cast<double>(cell.k) + step - 0.5);
        out << "<rect x=\"" << format_double(x) << "\" y=\"" << format_double(y)
            << "\" width=\"" << format_double(px) << "\" height=\""
            << format_double(step * uy) << "\" fill=\"" << gray_hex(cell.rate()) << "\"/>\n";
      }
    }

    if (gi < curves.size() && !curves[gi].empty()) {
      out << "<polyline fill=\"none\" stroke=\"#FF0000\" stroke-width=\"2\" "
             "stroke-dasharray=\"6,3\" points=\"";
      for (std::size_t i = 0; i < curves[gi].size(); ++i) {
        const auto& p = curves[gi][i];
        out << (i ? " " : "") << format_double(x_of(static_cast<double>(p.m))) << ','
            << format_double(y_of(static_cast<double>(p.k)));
      }
      out << "\"/>\n";
    }

    if (options.N > 0.0 && !g.columns.empty()) {
      const double alpha = g.alpha.value_or(0.5);
      const double rho = g.alpha ? options.rho : 1.0;
      std::ostringstream pts;
      bool first = true;
      for (double k = std::max(1.0, ax.k_min - 0.5); k <= ax.k_max + 0.5; k += 0.25) {
        const double m = reference_line(options.N, k, alpha, rho);
        if (m < ax.m_min - ax.dm / 2.0 || m > ax.m_max + ax.dm / 2.0) continue;
        pts << (first ? "" : " ") << format_double(x_of(m)) << ',' << format_double(y_of(k));
        first = false;
      }
      if (!first) {
        out << "<polyline fill=\"none\" stroke=\"#00A000\" stroke-width=\"2\" points=\""
            << pts.str() << "\"/>\n";
      }
    }

    const double base = y0 + panel_h;
    out << "<text x=\"" << format_double(left + panel_w / 2.0) << "\" y=\""
        << format_double(base + 30) << "\" font-size=\"12\">m</text>\n";
    out << "<text x=\"" << format_double(left - 40) << "\" y=\""
        << format_double(y0 + panel_h / 2.0) << "\" font-size=\"12\">k</text>\n";
    for (const auto& col : g.columns) {
      out << "<text x=\"" << format_double(x_of(static_cast<double>(col.m)) - 6) << "\" y=\""
          << format_double(base + 14) << "\" font-size=\"9\">" << col.m << "</text>\n";
    }
    for (double k : {ax.k_min, ax.k_max}) {
      out << "<text x=\"" << format_double(left - 22) << "\" y=\"" << format_double(y_of(k) + 3)
          << "\" font-size=\"9\">" << format_double(k) << "</text>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
}

void emit_svg(const std::vector<PhaseGrid>& grids,
              const std::vector<std::vector<ThresholdPoint>>& curves,
              const std::string& path, const SvgOptions& options) {
  std::ofstream out = open_output(path);
  write_svg(grids, curves, out, options);
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace wl1
