// Experiment runner: each subcommand reads a JSON config, runs one of
// the library's numerical experiments, and writes CSV/SVG artifacts.
// Exit codes: 0 success, 1 verification failure, 2 usage/config error.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hdl/decode.hpp"
#include "hdl/gradients.hpp"
#include "hdl/heatmap.hpp"
#include "hdl/io.hpp"
#include "hdl/losses.hpp"
#include "hdl/metrics.hpp"
#include "hdl/svg.hpp"
#include "hdl/theory.hpp"
#include "hdl/toy_sim.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace hdl;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int thread_budget() {
  const char* env = std::getenv("HDL_THREADS");
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (!env) return hw;
  const int n = std::atoi(env);
  if (n < 1) throw UsageError("HDL_THREADS must be a positive integer");
  return std::min(n, hw > n ? n : n);
}

/// Runs fn(k) for k in [0, n) across the thread budget.  Each index
/// writes only its own slot, so the result is order-independent.
void parallel_for(int n, const std::function<void(int)>& fn) {
  const int threads = std::min(thread_budget(), std::max(n, 1));
  if (threads <= 1) {
    for (int k = 0; k < n; ++k) fn(k);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int k = t; k < n; k += threads) fn(k);
    });
  for (auto& th : pool) th.join();
}

json load_config(const std::string& path, const std::set<std::string>& allowed) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file: " + path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw UsageError("config parse error in " + path + ": " + e.what());
  }
  if (!cfg.is_object()) throw UsageError("config root must be a JSON object: " + path);
  for (const auto& item : cfg.items())
    if (!allowed.count(item.key()))
      throw UsageError("unknown config key \"" + item.key() + "\" in " + path);
  return cfg;
}

template <typename T>
T get_or(const json& cfg, const std::string& key, T fallback) {
  if (!cfg.contains(key)) return fallback;
  try {
    return cfg.at(key).get<T>();
  } catch (const json::exception& e) {
    throw UsageError("config key \"" + key + "\": " + e.what());
  }
}

Joint2D get_joint(const json& cfg, const std::string& key, Joint2D fallback) {
  if (!cfg.contains(key)) return fallback;
  const auto& v = cfg.at(key);
  if (!v.is_array() || v.size() != 2)
    throw UsageError("config key \"" + key + "\" must be a [x, y] pair");
  return {v[0].get<double>(), v[1].get<double>()};
}

struct CommonOpts {
  std::string config;
  std::string out_dir;
  std::optional<uint64_t> seed;
  std::optional<double> beta;
};

fs::path out_path(const CommonOpts& opts, const json& cfg, const std::string& file) {
  const std::string dir =
      !opts.out_dir.empty() ? opts.out_dir : get_or<std::string>(cfg, "out", ".");
  fs::create_directories(dir);
  return fs::path(dir) / file;
}

const char* loss_name(LossKind k) {
  switch (k) {
    case LossKind::regression: return "regression";
    case LossKind::debiased_regression: return "debiased";
    case LossKind::detection: return "detection";
    case LossKind::bcir: return "bcir";
  }
  return "?";
}

const char* case_name(InitCase c) {
  switch (c) {
    case InitCase::case1_random: return "case1";
    case InitCase::case2_far_gaussian: return "case2";
    case InitCase::case3_corner_plane: return "case3";
    case InitCase::case4_near_gaussian: return "case4";
  }
  return "?";
}

// ---------------------------------------------------------------- toy-sim

int cmd_toy_sim(const CommonOpts& opts) {
  const json cfg = load_config(
      opts.config, {"out", "rows", "cols", "gamma", "beta", "iterations", "j_gt", "seed",
                    "gt_sigma", "t_o", "epoch_len", "snapshot_iters", "losses"});
  SimConfig base;
  base.rows = get_or(cfg, "rows", base.rows);
  base.cols = get_or(cfg, "cols", base.cols);
  base.gamma = get_or(cfg, "gamma", base.gamma);
  base.beta = opts.beta.value_or(get_or(cfg, "beta", base.beta));
  base.iterations = get_or(cfg, "iterations", base.iterations);
  base.j_gt = get_joint(cfg, "j_gt", base.j_gt);
  base.seed = opts.seed.value_or(get_or<uint64_t>(cfg, "seed", base.seed));
  base.gt_sigma = get_or(cfg, "gt_sigma", base.gt_sigma);
  base.schedule.t_o = get_or(cfg, "t_o", base.schedule.t_o);
  base.epoch_len = get_or(cfg, "epoch_len", base.epoch_len);
  base.snapshot_iters = get_or(cfg, "snapshot_iters", base.snapshot_iters);

  std::vector<LossKind> losses = {LossKind::regression, LossKind::detection};
  if (cfg.contains("losses")) {
    losses.clear();
    for (const auto& name : cfg.at("losses")) {
      const std::string s = name.get<std::string>();
      if (s == "regression") losses.push_back(LossKind::regression);
      else if (s == "debiased") losses.push_back(LossKind::debiased_regression);
      else if (s == "detection") losses.push_back(LossKind::detection);
      else if (s == "bcir") losses.push_back(LossKind::bcir);
      else throw UsageError("unknown loss \"" + s + "\" in config");
    }
  }
  const std::vector<InitCase> cases = {InitCase::case1_random, InitCase::case2_far_gaussian,
                                       InitCase::case3_corner_plane, InitCase::case4_near_gaussian};

  struct Job {
    SimConfig cfg;
    SimTrace trace;
  };
  std::vector<Job> jobs;
  for (InitCase ic : cases)
    for (LossKind lk : losses) {
      Job j;
      j.cfg = base;
      j.cfg.init_case = ic;
      j.cfg.loss_kind = lk;
      jobs.push_back(std::move(j));
    }
  parallel_for(static_cast<int>(jobs.size()), [&](int k) { jobs[k].trace = run(jobs[k].cfg); });

  for (const Job& j : jobs) {
    const std::string stem =
        std::string(case_name(j.cfg.init_case)) + "_" + loss_name(j.cfg.loss_kind);
    write_file_atomic(out_path(opts, cfg, stem + "_trace.csv"), trace_to_csv(j.trace));
    for (const auto& [iter, snap] : j.trace.snapshots)
      save_heatmap_csv(snap, out_path(opts, cfg, stem + "_snap" + std::to_string(iter) + ".csv"));
    std::vector<Joint2D> path;
    for (const SimStep& s : j.trace.steps) path.push_back(s.soft);
    const Heatmap& bg =
        j.trace.snapshots.empty() ? init_case(j.cfg) : j.trace.snapshots.begin()->second;
    write_file_atomic(out_path(opts, cfg, stem + "_path.svg"),
                      svg_heat_tiles(bg, path, stem + " prediction path"));
  }

  std::vector<SvgSeries> series;
  const std::vector<std::string> palette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                            "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22"};
  for (size_t k = 0; k < jobs.size(); ++k) {
    SvgSeries s;
    s.label = std::string(case_name(jobs[k].cfg.init_case)) + " " +
              loss_name(jobs[k].cfg.loss_kind);
    s.color = palette[k % palette.size()];
    for (const SimStep& st : jobs[k].trace.steps) {
      s.x.push_back(st.iter);
      s.y.push_back(l2_distance(st.soft, base.j_gt));
    }
    series.push_back(std::move(s));
  }
  write_file_atomic(out_path(opts, cfg, "toy_sim_epe.svg"),
                    svg_line_chart(series, "decode error vs iteration"));
  return 0;
}

// ------------------------------------------------------------- bias-sweep

int cmd_bias_sweep(const CommonOpts& opts) {
  const json cfg =
      load_config(opts.config, {"out", "rows", "cols", "sigmas", "betas", "grid_step"});
  const int rows = get_or(cfg, "rows", 64);
  const int cols = get_or(cfg, "cols", 48);
  const std::vector<double> sigmas = get_or<std::vector<double>>(cfg, "sigmas", {1.0, 2.0});
  std::vector<double> betas = get_or<std::vector<double>>(cfg, "betas", {1.0, 10.0, 20.0});
  if (opts.beta) betas = {*opts.beta};
  const int step = get_or(cfg, "grid_step", 8);
  if (step < 1) throw UsageError("grid_step must be >= 1");

  struct Cell {
    double x, y, sigma, beta, raw_err, comp_err;
  };
  std::vector<Joint2D> centers;
  for (int i = step; i < rows - step; i += step)
    for (int j = step; j < cols - step; j += step) centers.push_back({double(i), double(j)});

  std::vector<Cell> cells(centers.size() * sigmas.size() * betas.size());
  parallel_for(static_cast<int>(cells.size()), [&](int k) {
    const size_t ci = k / (sigmas.size() * betas.size());
    const size_t si = (k / betas.size()) % sigmas.size();
    const size_t bi = k % betas.size();
    const Joint2D mu = centers[ci];
    const Heatmap h = gaussian_heatmap(rows, cols, {mu, sigmas[si]});
    const auto [j_re, model] = soft_argmax_decode(h, betas[bi]);
    const Joint2D j_ro = compensate(j_re, model);
    cells[k] = {mu.x, mu.y, sigmas[si], betas[bi], l2_distance(j_re, mu), l2_distance(j_ro, mu)};
  });

  std::ostringstream csv;
  csv << "x,y,sigma,beta,raw_err,comp_err\n";
  int violations = 0;
  for (const Cell& c : cells) {
    csv << format_double(c.x) << ',' << format_double(c.y) << ',' << format_double(c.sigma) << ','
        << format_double(c.beta) << ',' << format_double(c.raw_err) << ','
        << format_double(c.comp_err) << '\n';
    if (c.comp_err > c.raw_err + 1e-12) ++violations;
  }
  write_file_atomic(out_path(opts, cfg, "bias_sweep.csv"), csv.str());

  std::vector<SvgSeries> series(2);
  series[0].label = "raw";
  series[0].color = "#d62728";
  series[1].label = "compensated";
  series[1].color = "#1f77b4";
  for (double b : betas) {
    double raw = 0.0, comp = 0.0;
    int n = 0;
    for (const Cell& c : cells)
      if (c.beta == b) {
        raw += c.raw_err;
        comp += c.comp_err;
        ++n;
      }
    series[0].x.push_back(b);
    series[0].y.push_back(raw / n);
    series[1].x.push_back(b);
    series[1].y.push_back(comp / n);
  }
  write_file_atomic(out_path(opts, cfg, "bias_sweep.svg"),
                    svg_line_chart(series, "mean decode error vs beta"));

  if (violations > 0)
    throw VerificationError("compensated error exceeded raw error in " +
                            std::to_string(violations) + " cells");
  return 0;
}

// ------------------------------------------------------------- epe-verify

int cmd_epe_verify(const CommonOpts& opts) {
  const json cfg = load_config(opts.config, {"out", "trials", "s_values", "seed"});
  const int trials = get_or(cfg, "trials", 10000);
  const std::vector<int> s_values = get_or<std::vector<int>>(cfg, "s_values", {1, 2, 3});
  const uint64_t seed = opts.seed.value_or(get_or<uint64_t>(cfg, "seed", 1));
  const EpeInequalityReport rep = verify_epe_inequality(trials, s_values, seed);
  std::ostringstream out;
  out << "trials,violations,min_slack\n"
      << rep.trials << ',' << rep.violations << ',' << format_double(rep.min_slack) << '\n';
  write_file_atomic(out_path(opts, cfg, "epe_verify.csv"), out.str());
  if (rep.violations > 0)
    throw VerificationError("expected-error inequality violated in " +
                            std::to_string(rep.violations) + " trials");
  return 0;
}

// -------------------------------------------------------------- sigma-lab

int cmd_sigma_lab(const CommonOpts& opts) {
  const json cfg =
      load_config(opts.config, {"out", "sigma_true", "delta_mu", "curve_sigma_max", "curve_points"});
  const std::vector<double> sigma_true =
      get_or<std::vector<double>>(cfg, "sigma_true", {1.0, 2.0, 4.0});
  const std::vector<double> delta_mu =
      get_or<std::vector<double>>(cfg, "delta_mu", {0.0, 0.5, 1.0, 2.0});
  const double curve_max = get_or(cfg, "curve_sigma_max", 8.0);
  const int curve_points = get_or(cfg, "curve_points", 100);

  std::ostringstream star;
  star << "sigma_true,delta_mu,sigma_star\n";
  for (double st : sigma_true)
    for (double dmu : delta_mu)
      star << format_double(st) << ',' << format_double(dmu) << ','
           << format_double(optimal_sigma(st, dmu)) << '\n';
  write_file_atomic(out_path(opts, cfg, "sigma_star.csv"), star.str());

  std::ostringstream curves;
  curves << "sigma_true,delta_mu,sigma_hat,distance\n";
  std::vector<SvgSeries> series;
  const std::vector<std::string> palette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  const double st0 = sigma_true[0];
  size_t color = 0;
  for (double dmu : delta_mu) {
    SvgSeries s;
    s.label = "dmu=" + format_double(dmu);
    s.color = palette[color++ % palette.size()];
    for (int k = 0; k < curve_points; ++k) {
      const double sh = st0 + (curve_max - st0) * k / (curve_points - 1);
      const double d = bhattacharyya(st0, sh, dmu);
      curves << format_double(st0) << ',' << format_double(dmu) << ',' << format_double(sh) << ','
             << format_double(d) << '\n';
      s.x.push_back(sh);
      s.y.push_back(d);
    }
    series.push_back(std::move(s));
  }
  write_file_atomic(out_path(opts, cfg, "db_curves.csv"), curves.str());
  write_file_atomic(out_path(opts, cfg, "db_curves.svg"),
                    svg_line_chart(series, "distribution distance vs predicted spread"));
  return 0;
}

// ------------------------------------------------------------------- chi2

int cmd_chi2(const CommonOpts& opts) {
  const json cfg =
      load_config(opts.config, {"out", "heatmap", "beta", "s", "sigma_grid", "center"});
  if (!cfg.contains("heatmap")) throw UsageError("chi2 config requires \"heatmap\"");
  const std::string path = cfg.at("heatmap").get<std::string>();
  if (!fs::exists(path)) throw UsageError("heatmap file not found: " + path);
  const Heatmap h =
      path.size() > 5 && path.substr(path.size() - 5) == ".hmap" ? load_heatmap_binary(path)
                                                                 : load_heatmap_csv(path);
  const double beta = opts.beta.value_or(get_or(cfg, "beta", 10.0));
  const int s = get_or(cfg, "s", 6);
  const std::vector<double> sigma_grid =
      get_or<std::vector<double>>(cfg, "sigma_grid", {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0});
  const NormalizedHeatmap nh = softmax_normalize(h, beta);
  const Joint2D center = get_joint(cfg, "center", argmax_decode(h));

  std::ostringstream out;
  out << "sigma,statistic\n";
  for (double sigma : sigma_grid)
    out << format_double(sigma) << ',' << format_double(chi_square_statistic(nh, center, s, sigma))
        << '\n';
  const ChiSquareResult best = chi_square_best_sigma(nh, center, s, sigma_grid);
  out << "best," << format_double(best.sigma) << '\n';
  write_file_atomic(out_path(opts, cfg, "chi2.csv"), out.str());
  return 0;
}

// ------------------------------------------------------------- grad-check

int cmd_grad_check(const CommonOpts& opts) {
  const json cfg = load_config(opts.config, {"out", "trials", "betas", "seed", "tolerance",
                                            "min_rows", "max_rows", "min_cols", "max_cols"});
  const int trials = get_or(cfg, "trials", 50);
  const std::vector<double> betas = get_or<std::vector<double>>(cfg, "betas", {1.0, 10.0, 20.0});
  const uint64_t seed = opts.seed.value_or(get_or<uint64_t>(cfg, "seed", 1));
  const double tol = get_or(cfg, "tolerance", 1e-5);
  const int min_rows = get_or(cfg, "min_rows", 8), max_rows = get_or(cfg, "max_rows", 64);
  const int min_cols = get_or(cfg, "min_cols", 6), max_cols = get_or(cfg, "max_cols", 48);

  struct Trial {
    Heatmap h{1, 1};
    double beta = 1.0;
    Joint2D j_gt;
  };
  // draw everything up front so the parallel section touches no RNG
  UniformSource rng(seed);
  std::vector<Trial> plan;
  for (int t = 0; t < trials; ++t) {
    Trial tr;
    const int rows = min_rows + static_cast<int>(rng.next() * (max_rows - min_rows + 1));
    const int cols = min_cols + static_cast<int>(rng.next() * (max_cols - min_cols + 1));
    tr.h = Heatmap(rows, cols);
    for (double& v : tr.h.values()) v = rng.next();
    tr.beta = betas[t % betas.size()];
    tr.j_gt = {rng.next() * (rows - 1), rng.next() * (cols - 1)};
    plan.push_back(std::move(tr));
  }

  struct Result {
    FiniteDifferenceReport raw, debiased;
  };
  std::vector<Result> results(plan.size());
  parallel_for(static_cast<int>(plan.size()), [&](int k) {
    const Trial& tr = plan[k];
    results[k].raw = finite_difference_check(
        [&](const Heatmap& h) { return regression_loss(soft_argmax_decode(h, tr.beta).first, tr.j_gt); },
        tr.h, regression_gradient(tr.h, tr.beta, tr.j_gt), 1e-6, tol);
    results[k].debiased = finite_difference_check(
        [&](const Heatmap& h) { return debiased_regression_loss(h, tr.beta, tr.j_gt); }, tr.h,
        debiased_regression_gradient(tr.h, tr.beta, tr.j_gt), 1e-6, tol);
  });

  std::ostringstream out;
  out << "trial,rows,cols,beta,raw_max_rel_err,raw_ok,debiased_max_rel_err,debiased_ok\n";
  int failures = 0;
  for (size_t k = 0; k < results.size(); ++k) {
    const Result& r = results[k];
    out << k << ',' << plan[k].h.rows() << ',' << plan[k].h.cols() << ','
        << format_double(plan[k].beta) << ',' << format_double(r.raw.max_rel_err) << ','
        << (r.raw.pass ? 1 : 0) << ',' << format_double(r.debiased.max_rel_err) << ','
        << (r.debiased.pass ? 1 : 0) << '\n';
    if (!r.raw.pass || !r.debiased.pass) ++failures;
  }
  write_file_atomic(out_path(opts, cfg, "grad_check.csv"), out.str());
  if (failures > 0)
    throw VerificationError("finite-difference check failed on " + std::to_string(failures) +
                            " of " + std::to_string(trials) + " trials");
  return 0;
}

// ------------------------------------------------------------------ split

int cmd_split(const CommonOpts& opts) {
  const json cfg = load_config(opts.config, {"out", "annotations", "predictions"});
  if (!cfg.contains("annotations")) throw UsageError("split config requires \"annotations\"");
  const std::string ann_path = cfg.at("annotations").get<std::string>();
  if (!fs::exists(ann_path)) throw UsageError("annotation file not found: " + ann_path);
  const std::vector<AnnotationRecord> records = load_annotations(ann_path);
  if (records.empty()) throw UsageError("annotation file has no records: " + ann_path);

  const std::vector<Difficulty> bins = {Difficulty::easy, Difficulty::medium, Difficulty::hard,
                                        Difficulty::unclassified};
  auto bin_index = [&](Difficulty d) {
    for (size_t k = 0; k < bins.size(); ++k)
      if (bins[k] == d) return k;
    return bins.size() - 1;
  };
  std::vector<std::vector<int>> joints_by_size(4, std::vector<int>(4, 0));
  std::vector<std::vector<int>> joints_by_occ(4, std::vector<int>(4, 0));
  for (const AnnotationRecord& r : records) {
    const DifficultyLabels d = difficulty(r);
    ++joints_by_size[bin_index(d.by_joints)][bin_index(d.by_size)];
    ++joints_by_occ[bin_index(d.by_joints)][bin_index(d.by_occlusion)];
  }
  auto matrix_csv = [&](const std::vector<std::vector<int>>& m, const char* col_factor) {
    std::ostringstream out;
    out << "joints_bin";
    for (Difficulty d : bins) out << ',' << col_factor << '_' << to_string(d);
    out << '\n';
    for (size_t i = 0; i < bins.size(); ++i) {
      out << to_string(bins[i]);
      for (size_t j = 0; j < bins.size(); ++j) out << ',' << m[i][j];
      out << '\n';
    }
    return out.str();
  };
  write_file_atomic(out_path(opts, cfg, "split_joints_by_size.csv"),
                    matrix_csv(joints_by_size, "size"));
  write_file_atomic(out_path(opts, cfg, "split_joints_by_occlusion.csv"),
                    matrix_csv(joints_by_occ, "occ"));

  if (cfg.contains("predictions")) {
    const std::string pred_path = cfg.at("predictions").get<std::string>();
    if (!fs::exists(pred_path)) throw UsageError("prediction file not found: " + pred_path);
    // one line per record: x y per annotated joint, in order
    std::ifstream in(pred_path);
    std::ostringstream out;
    out << "record,combined_bin,mean_epe\n";
    std::string line;
    size_t rec = 0;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      if (rec >= records.size()) throw UsageError("more prediction lines than records");
      std::istringstream ls(line);
      std::vector<Joint2D> preds, gts;
      for (const JointAnnotation& j : records[rec].joints) {
        Joint2D p;
        if (!(ls >> p.x >> p.y)) throw UsageError("truncated prediction line");
        if (j.present) {
          preds.push_back(p);
          gts.push_back(j.position);
        }
      }
      out << rec << ',' << to_string(difficulty(records[rec]).combined) << ','
          << format_double(mean_epe(preds, gts)) << '\n';
      ++rec;
    }
    if (rec != records.size()) throw UsageError("fewer prediction lines than records");
    write_file_atomic(out_path(opts, cfg, "split_epe.csv"), out.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heatmap decoding experiment runner"};
  app.require_subcommand(1);

  CommonOpts opts;
  struct Sub {
    const char* name;
    const char* desc;
    int (*fn)(const CommonOpts&);
  };
  const std::vector<Sub> subs = {
      {"toy-sim", "iterate heatmap updates under each loss and init case", cmd_toy_sim},
      {"bias-sweep", "tabulate raw vs compensated decode error over blobs", cmd_bias_sweep},
      {"epe-verify", "randomized check of the decoder expected-error inequality", cmd_epe_verify},
      {"sigma-lab", "optimal predicted spread and distance curves", cmd_sigma_lab},
      {"chi2", "Gaussian template match statistics for a heatmap file", cmd_chi2},
      {"grad-check", "finite-difference verification of analytic gradients", cmd_grad_check},
      {"split", "difficulty split tables from an annotation file", cmd_split},
  };
  std::vector<std::pair<CLI::App*, const Sub*>> wired;
  for (const Sub& s : subs) {
    CLI::App* sc = app.add_subcommand(s.name, s.desc);
    sc->add_option("--config", opts.config, "JSON config file")->required();
    sc->add_option("--out", opts.out_dir, "output directory (overrides config)");
    sc->add_option("--seed", opts.seed, "seed override");
    sc->add_option("--beta", opts.beta, "softmax sharpness override");
    wired.emplace_back(sc, &s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (const auto& [sc, s] : wired)
      if (sc->parsed()) return s->fn(opts);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const VerificationError& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
