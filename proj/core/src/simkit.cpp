#include "slpkit/simkit.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <thread>

#include "slpkit/configfile.hpp"
#include "slpkit/report.hpp"

namespace slp {

namespace {

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

// Runs fn(0..count-1) on a small worker pool. Tasks must be independent;
// callers store results by index and reduce in index order afterwards, so
// the aggregate does not depend on scheduling.
void parallel_for(long count, int workers, const std::function<void(long)>& fn) {
  const int nw = static_cast<int>(std::min<long>(resolve_workers(workers), count));
  if (nw <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (int w = 0; w < nw; ++w) {
    pool.emplace_back([&] {
      for (long i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

bool is_stochastic(RobustMethod m) {
  return m == RobustMethod::SafeApprox1 || m == RobustMethod::SafeApprox2 ||
         m == RobustMethod::SphereBounding;
}

struct GridPoint {
  RobustMethod method = RobustMethod::NonRobust;
  double gamma_db = kNaN;
  double epsilon = kNaN;
  double xi2 = kNaN;
  double upsilon = kNaN;
};

RobustParams params_for(const GridPoint& g) {
  RobustParams p;
  if (g.method == RobustMethod::WorstCase) p.epsilon = g.epsilon;
  if (is_stochastic(g.method)) {
    p.xi = std::sqrt(g.xi2);
    p.upsilon = g.upsilon;
  }
  return p;
}

void fill_axes(GridPointRecord& rec, const GridPoint& g) {
  rec.method = std::string(method_name(g.method));
  rec.gamma_db = g.gamma_db;
  rec.epsilon = g.epsilon;
  rec.xi2 = g.xi2;
  rec.upsilon = g.upsilon;
}

// Per-realization accumulator; reduced in realization order.
struct Accum {
  long optimal = 0;
  long infeasible = 0;
  long iterlimit = 0;
  long iters = 0;
  double power_sum = 0.0;
  double wall_sum = 0.0;
  long detections = 0;
  long symbol_errors = 0;
};

void count_status(Accum& a, const PrecoderOutput& out) {
  switch (out.status) {
    case SolveStatus::Optimal: ++a.optimal; break;
    case SolveStatus::PrimalInfeasible: ++a.infeasible; break;
    default: ++a.iterlimit; break;
  }
  a.iters += out.iterations;
}

MetricsReport new_report(const ScenarioConfig& cfg, std::vector<std::string> columns) {
  MetricsReport r;
  r.columns = std::move(columns);
  r.seed = cfg.seed;
  r.config_hash = cfg.config_hash;
  r.version = kVersion;
  return r;
}

double db_from_linear(double w) { return 10.0 * std::log10(w); }
double linear_from_db(double db) { return std::pow(10.0, db / 10.0); }

// q = A * T(e) * u via the complex product p = e . (uR + i uI).
Eigen::Vector2d region_error_term(const CirMatrix& cir, const Eigen::RowVectorXcd& e,
                                  const Eigen::VectorXd& u) {
  const Eigen::Index n = e.size();
  std::complex<double> p = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    p += e(i) * std::complex<double>(u(i), u(n + i));
  }
  return cir.a * Eigen::Vector2d(p.real(), p.imag());
}

}  // namespace

void ScenarioConfig::validate_common() const {
  if (antennas < 1) throw ConfigError("system.antennas", "must be a positive integer");
  if (users < 1) throw ConfigError("system.users", "must be a positive integer");
  if (users > antennas) {
    throw ConfigError("system.users", "the system model requires K <= N (users <= antennas)");
  }
  if (modulation < 3) throw ConfigError("system.modulation", "PSK order must be >= 3");
  if (!(noise_var > 0.0)) throw ConfigError("system.noise_var", "must be > 0");
  if (gamma_db.empty()) throw ConfigError("sweep.gamma_db", "at least one SINR target required");
  if (methods.empty()) throw ConfigError("sweep.methods", "at least one method required");
  for (double u : upsilon) {
    if (!(u > 0.0 && u <= 0.5)) {
      throw ConfigError("sweep.upsilon", "violation probability must lie in (0, 1/2]");
    }
  }
  for (double e : epsilon) {
    if (!(e > 0.0)) throw ConfigError("sweep.epsilon", "radius must be > 0");
  }
  for (double x : xi2) {
    if (!(x > 0.0)) throw ConfigError("sweep.xi2", "variance must be > 0");
  }
  const bool has_wc =
      std::find(methods.begin(), methods.end(), RobustMethod::WorstCase) != methods.end();
  const bool has_st = std::any_of(methods.begin(), methods.end(), is_stochastic);
  if (has_wc && epsilon.empty()) {
    throw ConfigError("sweep.epsilon", "required by method worst_case");
  }
  if (has_st && xi2.empty()) {
    throw ConfigError("sweep.xi2", "required by the stochastic methods");
  }
  if (has_st && upsilon.empty()) {
    throw ConfigError("sweep.upsilon", "required by the stochastic methods");
  }
  if (channels < 1) throw ConfigError("counts.channels", "must be >= 1");
  if (slots < 1) throw ConfigError("counts.slots", "must be >= 1");
  if (noise_draws < 1) throw ConfigError("counts.noise_draws", "must be >= 1");
  if (validation_draws < 1) throw ConfigError("counts.validation_draws", "must be >= 1");
  if (bench_solves < 30) throw ConfigError("benchmark.solves", "needs >= 30 solves per cell");
  for (int k : users_grid) {
    if (k < 1) throw ConfigError("benchmark.users_grid", "entries must be >= 1");
  }
  if (workers < 0) throw ConfigError("system.workers", "must be >= 0");
  if (!(solver.tolerance > 0.0)) throw ConfigError("solver.tolerance", "must be > 0");
  if (!(solver.infeas_tolerance > 0.0)) throw ConfigError("solver.infeas_tolerance", "must be > 0");
  if (solver.max_iterations < 1) throw ConfigError("solver.max_iterations", "must be >= 1");
  if (!(solver.relaxation > 0.0 && solver.relaxation < 2.0)) {
    throw ConfigError("solver.relaxation", "must lie in (0, 2)");
  }
  if (feasibility_axis != "upsilon" && feasibility_axis != "xi2") {
    throw ConfigError("sweep.feasibility_axis", "must be 'upsilon' or 'xi2'");
  }
}

SlpInstance make_instance(const ScenarioConfig& cfg, long realization, long slot, double gamma) {
  const Constellation c = psk_constellation(cfg.modulation);
  SlpInstance inst;
  inst.n_antennas = cfg.antennas;
  inst.users.reserve(cfg.users);
  for (long k = 0; k < cfg.users; ++k) {
    Rng ch(substream_seed(cfg.seed,
                          {stream_tag::kChannel, (std::uint64_t)realization, (std::uint64_t)k}));
    Rng sym(substream_seed(cfg.seed, {stream_tag::kSymbol, (std::uint64_t)realization,
                                      (std::uint64_t)slot, (std::uint64_t)k}));
    UserContext u;
    const int s = sym.uniform_int(cfg.modulation);
    u.cir = dpcir_matrix(c, s);
    u.symbol = c.points[s];
    u.h_hat = t_transform(sample_channel(ch, cfg.antennas));
    u.sigma = std::sqrt(cfg.noise_var);
    u.gamma = gamma;
    inst.users.push_back(std::move(u));
  }
  return inst;
}

MetricsReport run_power_sweep(const ScenarioConfig& cfg) {
  cfg.validate_common();

  std::vector<GridPoint> grid;
  for (RobustMethod m : cfg.methods) {
    for (double gdb : cfg.gamma_db) {
      if (m == RobustMethod::NonRobust) {
        grid.push_back({m, gdb, kNaN, kNaN, kNaN});
      } else if (m == RobustMethod::WorstCase) {
        for (double e : cfg.epsilon) grid.push_back({m, gdb, e, kNaN, kNaN});
      } else {
        for (double x : cfg.xi2)
          for (double u : cfg.upsilon) grid.push_back({m, gdb, kNaN, x, u});
      }
    }
  }

  MetricsReport report = new_report(
      cfg, {"method", "gamma_db", "epsilon", "xi2", "upsilon", "realizations", "slots", "solves",
            "optimal_count", "infeasible_count", "iterlimit_count", "feasibility_rate",
            "avg_power_w", "avg_power_dbw", "mean_solver_iterations"});

  for (const GridPoint& g : grid) {
    const double gamma = linear_from_db(g.gamma_db);
    const RobustParams params = params_for(g);
    std::vector<Accum> acc(cfg.channels);
    parallel_for(cfg.channels, cfg.workers, [&](long r) {
      Accum a;
      for (long t = 0; t < cfg.slots; ++t) {
        const SlpInstance inst = make_instance(cfg, r, t, gamma);
        const auto t0 = std::chrono::steady_clock::now();
        const PrecoderOutput out = solve_slp(inst, g.method, params, cfg.solver);
        a.wall_sum += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        count_status(a, out);
        if (out.status == SolveStatus::Optimal) a.power_sum += out.power;
      }
      acc[r] = a;
    });

    Accum total;
    for (const Accum& a : acc) {
      total.optimal += a.optimal;
      total.infeasible += a.infeasible;
      total.iterlimit += a.iterlimit;
      total.iters += a.iters;
      total.power_sum += a.power_sum;
      total.wall_sum += a.wall_sum;
    }
    GridPointRecord rec;
    fill_axes(rec, g);
    rec.realizations = cfg.channels;
    rec.slots = cfg.slots;
    rec.solves = static_cast<long>(cfg.channels) * cfg.slots;
    rec.optimal_count = total.optimal;
    rec.infeasible_count = total.infeasible;
    rec.iterlimit_count = total.iterlimit;
    rec.feasibility_rate = static_cast<double>(total.optimal) / static_cast<double>(rec.solves);
    if (total.optimal > 0) {
      rec.avg_power_w = total.power_sum / static_cast<double>(total.optimal);
      rec.avg_power_dbw = db_from_linear(rec.avg_power_w);
    }
    rec.mean_solver_iterations = static_cast<double>(total.iters) / static_cast<double>(rec.solves);
    rec.mean_wall_time_s = total.wall_sum / static_cast<double>(rec.solves);
    report.rows.push_back(std::move(rec));
  }
  return report;
}

MetricsReport run_ser(const ScenarioConfig& cfg) {
  cfg.validate_common();
  for (RobustMethod m : cfg.methods) {
    if (m == RobustMethod::WorstCase) {
      throw ConfigError("sweep.methods",
                        "ser runs use the Gaussian uncertainty model; worst_case is spherical");
    }
  }
  if (cfg.xi2.empty()) throw ConfigError("sweep.xi2", "required for ser runs");

  std::vector<GridPoint> grid;
  for (RobustMethod m : cfg.methods) {
    for (double gdb : cfg.gamma_db) {
      if (m == RobustMethod::NonRobust) {
        for (double x : cfg.xi2) grid.push_back({m, gdb, kNaN, x, kNaN});
      } else {
        for (double x : cfg.xi2)
          for (double u : cfg.upsilon) grid.push_back({m, gdb, kNaN, x, u});
      }
    }
  }

  MetricsReport report = new_report(
      cfg, {"method", "gamma_db", "xi2", "upsilon", "realizations", "slots", "noise_draws",
            "solves", "optimal_count", "infeasible_count", "iterlimit_count", "feasibility_rate",
            "detections", "symbol_errors", "ser", "mean_solver_iterations"});

  const Constellation constellation = psk_constellation(cfg.modulation);
  const double sigma = std::sqrt(cfg.noise_var);

  for (const GridPoint& g : grid) {
    const double gamma = linear_from_db(g.gamma_db);
    const RobustParams params = params_for(g);
    std::vector<Accum> acc(cfg.channels);
    parallel_for(cfg.channels, cfg.workers, [&](long r) {
      Accum a;
      for (long t = 0; t < cfg.slots; ++t) {
        const SlpInstance inst = make_instance(cfg, r, t, gamma);
        const PrecoderOutput out = solve_slp(inst, g.method, params, cfg.solver);
        count_status(a, out);
        if (out.status != SolveStatus::Optimal) continue;  // no transmission this slot
        for (long k = 0; k < cfg.users; ++k) {
          const UserContext& user = inst.users[k];
          Rng err(substream_seed(cfg.seed, {stream_tag::kCsiError, (std::uint64_t)r,
                                            (std::uint64_t)t, (std::uint64_t)k}));
          Rng noise(substream_seed(cfg.seed, {stream_tag::kNoise, (std::uint64_t)r,
                                              (std::uint64_t)t, (std::uint64_t)k}));
          const Eigen::RowVectorXcd e = sample_gaussian_error(err, cfg.antennas, g.xi2);
          const Eigen::Matrix2Xd h_true = user.h_hat + t_transform(e);
          const Eigen::Vector2d rx_clean = h_true * out.u;
          const double nscale = sigma * std::sqrt(0.5);
          for (long d = 0; d < cfg.noise_draws; ++d) {
            const Eigen::Vector2d rx =
                rx_clean + nscale * Eigen::Vector2d(noise.gaussian(), noise.gaussian());
            ++a.detections;
            if (ml_detect(constellation, rx) != user.cir.symbol_index) ++a.symbol_errors;
          }
        }
      }
      acc[r] = a;
    });

    Accum total;
    for (const Accum& a : acc) {
      total.optimal += a.optimal;
      total.infeasible += a.infeasible;
      total.iterlimit += a.iterlimit;
      total.iters += a.iters;
      total.detections += a.detections;
      total.symbol_errors += a.symbol_errors;
    }
    GridPointRecord rec;
    fill_axes(rec, g);
    rec.epsilon = kNaN;
    rec.realizations = cfg.channels;
    rec.slots = cfg.slots;
    rec.noise_draws = cfg.noise_draws;
    rec.solves = static_cast<long>(cfg.channels) * cfg.slots;
    rec.optimal_count = total.optimal;
    rec.infeasible_count = total.infeasible;
    rec.iterlimit_count = total.iterlimit;
    rec.feasibility_rate = static_cast<double>(total.optimal) / static_cast<double>(rec.solves);
    rec.detections = total.detections;
    rec.symbol_errors = total.symbol_errors;
    if (total.detections > 0) {
      rec.ser = static_cast<double>(total.symbol_errors) / static_cast<double>(total.detections);
    }
    rec.mean_solver_iterations = static_cast<double>(total.iters) / static_cast<double>(rec.solves);
    report.rows.push_back(std::move(rec));
  }
  return report;
}

MetricsReport run_feasibility(const ScenarioConfig& cfg, FeasibilityAxis axis) {
  cfg.validate_common();
  for (RobustMethod m : cfg.methods) {
    if (!is_stochastic(m)) {
      throw ConfigError("sweep.methods", "feasibility sweeps cover the stochastic methods only");
    }
  }
  const double gdb = cfg.gamma_db.front();

  std::vector<GridPoint> grid;
  if (axis == FeasibilityAxis::ViolationProb) {
    for (RobustMethod m : cfg.methods)
      for (double u : cfg.upsilon) grid.push_back({m, gdb, kNaN, cfg.xi2.front(), u});
  } else {
    for (RobustMethod m : cfg.methods)
      for (double x : cfg.xi2) grid.push_back({m, gdb, kNaN, x, cfg.upsilon.front()});
  }

  MetricsReport report = new_report(
      cfg, {"method", "gamma_db", "xi2", "upsilon", "realizations", "optimal_count",
            "infeasible_count", "iterlimit_count", "feasibility_rate", "mean_solver_iterations"});

  for (const GridPoint& g : grid) {
    const double gamma = linear_from_db(g.gamma_db);
    const RobustParams params = params_for(g);
    std::vector<Accum> acc(cfg.channels);
    parallel_for(cfg.channels, cfg.workers, [&](long r) {
      Accum a;
      const SlpInstance inst = make_instance(cfg, r, 0, gamma);
      count_status(a, solve_slp(inst, g.method, params, cfg.solver));
      acc[r] = a;
    });
    Accum total;
    for (const Accum& a : acc) {
      total.optimal += a.optimal;
      total.infeasible += a.infeasible;
      total.iterlimit += a.iterlimit;
      total.iters += a.iters;
    }
    GridPointRecord rec;
    fill_axes(rec, g);
    rec.realizations = cfg.channels;
    rec.solves = cfg.channels;
    rec.optimal_count = total.optimal;
    rec.infeasible_count = total.infeasible;
    rec.iterlimit_count = total.iterlimit;
    rec.feasibility_rate = static_cast<double>(total.optimal) / static_cast<double>(cfg.channels);
    rec.mean_solver_iterations =
        static_cast<double>(total.iters) / static_cast<double>(cfg.channels);
    report.rows.push_back(std::move(rec));
  }
  return report;
}

MetricsReport benchmark_runtime(const ScenarioConfig& cfg) {
  cfg.validate_common();
  std::vector<int> ks = cfg.users_grid;
  if (ks.empty()) ks.push_back(cfg.users);

  MetricsReport report = new_report(
      cfg, {"users", "antennas", "method", "solves", "mean_wall_time_s", "median_of_means_s",
            "mean_solver_iterations", "runtime_ratio", "complexity"});

  std::vector<RobustMethod> robust;
  for (RobustMethod m : cfg.methods) {
    if (m != RobustMethod::NonRobust) robust.push_back(m);
  }

  for (int k : ks) {
    ScenarioConfig cell = cfg;
    cell.antennas = k;  // runtime comparison runs fully loaded, N = K
    cell.users = k;

    auto time_method = [&](RobustMethod m) {
      const RobustParams params =
          params_for({m, cfg.gamma_db.front(), cfg.epsilon.empty() ? kNaN : cfg.epsilon.front(),
                      cfg.xi2.empty() ? kNaN : cfg.xi2.front(),
                      cfg.upsilon.empty() ? kNaN : cfg.upsilon.front()});
      std::vector<double> times(cfg.bench_solves);
      long iters = 0;
      for (int i = 0; i < cfg.bench_solves; ++i) {
        const SlpInstance inst = make_instance(cell, i, 0, linear_from_db(cfg.gamma_db.front()));
        const auto t0 = std::chrono::steady_clock::now();
        const PrecoderOutput out = solve_slp(inst, m, params, cfg.solver);
        times[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        iters += out.iterations;
      }
      // median of 5 group means to suppress timer noise
      constexpr int kGroups = 5;
      std::vector<double> means(kGroups, 0.0);
      std::vector<int> counts(kGroups, 0);
      for (int i = 0; i < cfg.bench_solves; ++i) {
        means[i % kGroups] += times[i];
        ++counts[i % kGroups];
      }
      for (int gi = 0; gi < kGroups; ++gi) means[gi] /= std::max(1, counts[gi]);
      std::sort(means.begin(), means.end());
      double total = 0.0;
      for (double t : times) total += t;
      GridPointRecord rec;
      rec.method = std::string(method_name(m));
      rec.users = k;
      rec.antennas = k;
      rec.solves = cfg.bench_solves;
      rec.mean_wall_time_s = total / cfg.bench_solves;
      rec.median_of_means_s = means[kGroups / 2];
      rec.mean_solver_iterations = static_cast<double>(iters) / cfg.bench_solves;
      rec.complexity =
          complexity_bound(k, k,
                           m == RobustMethod::NonRobust ? DesignProblem::NonRobust
                                                        : DesignProblem::Robust)
              .value;
      return rec;
    };

    GridPointRecord base = time_method(RobustMethod::NonRobust);
    report.rows.push_back(base);
    for (RobustMethod m : robust) {
      GridPointRecord rec = time_method(m);
      rec.runtime_ratio = rec.mean_wall_time_s / base.mean_wall_time_s;
      report.rows.push_back(std::move(rec));
    }
  }
  return report;
}

MetricsReport tightness_report(const std::vector<double>& upsilon_grid) {
  MetricsReport report;
  report.columns = {"upsilon", "rho", "psi", "alpha", "tightest_method"};
  report.version = kVersion;
  for (double u : upsilon_grid) {
    const TightnessReport t = compare_tightness(u);
    GridPointRecord rec;
    rec.upsilon = u;
    rec.rho = t.rho;
    rec.psi = t.psi;
    rec.alpha = t.alpha;
    rec.tightest = std::string(method_name(t.tightest));
    report.rows.push_back(std::move(rec));
  }
  return report;
}

ChanceValidation validate_chance(const Eigen::VectorXd& u, const SlpInstance& instance,
                                 double xi2, long draws, Rng& rng) {
  const int k_users = instance.n_users();
  std::vector<Eigen::Vector2d> certain(k_users);
  for (int k = 0; k < k_users; ++k) {
    const UserContext& user = instance.users[k];
    certain[k] = residual(user.cir, user.h_hat, user.symbol, user.sigma, user.gamma).eval(u);
  }
  std::vector<long> violations(k_users, 0);
  for (long d = 0; d < draws; ++d) {
    for (int k = 0; k < k_users; ++k) {
      const Eigen::RowVectorXcd e = sample_gaussian_error(rng, instance.n_antennas, xi2);
      const Eigen::Vector2d q = region_error_term(instance.users[k].cir, e, u);
      if (q(0) < certain[k](0) || q(1) < certain[k](1)) ++violations[k];
    }
  }
  ChanceValidation out;
  out.draws = draws;
  for (long v : violations) {
    out.violation = std::max(out.violation, static_cast<double>(v) / draws);
  }
  out.std_err = std::sqrt(out.violation * (1.0 - out.violation) / draws);
  return out;
}

WorstCaseValidation validate_worst_case(const Eigen::VectorXd& u, const SlpInstance& instance,
                                        double epsilon, long draws, Rng& rng) {
  const int k_users = instance.n_users();
  const double unorm = u.norm();
  std::vector<AffineResidual> res(k_users);
  for (int k = 0; k < k_users; ++k) {
    const UserContext& user = instance.users[k];
    res[k] = residual(user.cir, user.h_hat, user.symbol, user.sigma, user.gamma);
  }
  WorstCaseValidation out;
  out.draws = draws;
  out.min_margin = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd min_q =
      Eigen::MatrixXd::Constant(k_users, 2, std::numeric_limits<double>::infinity());
  for (long d = 0; d < draws; ++d) {
    for (int k = 0; k < k_users; ++k) {
      const Eigen::RowVectorXcd e =
          sample_spherical_error(rng, instance.n_antennas, epsilon, SphericalMode::Surface);
      const Eigen::Vector2d q = region_error_term(instance.users[k].cir, e, u);
      const Eigen::Vector2d w = res[k].eval(u);
      for (int j = 0; j < 2; ++j) {
        out.min_margin = std::min(out.min_margin, q(j) - w(j));
        min_q(k, j) = std::min(min_q(k, j), q(j));
      }
    }
  }
  out.infimum_gap = 0.0;
  for (int k = 0; k < k_users; ++k) {
    for (int j = 0; j < 2; ++j) {
      const double analytic = -epsilon * unorm * instance.users[k].cir.a.row(j).norm();
      out.infimum_gap = std::max(out.infimum_gap, min_q(k, j) - analytic);
    }
  }
  return out;
}

MetricsReport run_validate(const ScenarioConfig& cfg) {
  cfg.validate_common();
  for (RobustMethod m : cfg.methods) {
    if (m == RobustMethod::NonRobust) {
      throw ConfigError("sweep.methods", "validate covers the robust methods only");
    }
  }

  MetricsReport report = new_report(
      cfg, {"method", "realization", "gamma_db", "epsilon", "xi2", "upsilon", "status", "draws",
            "empirical_violation", "violation_std", "min_margin", "infimum_gap"});

  const double gdb = cfg.gamma_db.front();
  const double gamma = linear_from_db(gdb);
  for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
    const RobustMethod m = cfg.methods[mi];
    GridPoint g{m, gdb, cfg.epsilon.empty() ? kNaN : cfg.epsilon.front(),
                cfg.xi2.empty() ? kNaN : cfg.xi2.front(),
                cfg.upsilon.empty() ? kNaN : cfg.upsilon.front()};
    const RobustParams params = params_for(g);
    std::vector<GridPointRecord> rows(cfg.channels);
    parallel_for(cfg.channels, cfg.workers, [&](long r) {
      const SlpInstance inst = make_instance(cfg, r, 0, gamma);
      const PrecoderOutput out = solve_slp(inst, m, params, cfg.solver);
      GridPointRecord rec;
      fill_axes(rec, g);
      rec.realization = r;
      rec.status = std::string(status_name(out.status));
      if (out.status == SolveStatus::Optimal) {
        Rng vrng(substream_seed(cfg.seed, {stream_tag::kValidation, (std::uint64_t)r, mi}));
        rec.draws = cfg.validation_draws;
        if (m == RobustMethod::WorstCase) {
          const WorstCaseValidation wc =
              validate_worst_case(out.u, inst, g.epsilon, cfg.validation_draws, vrng);
          rec.min_margin = wc.min_margin;
          rec.infimum_gap = wc.infimum_gap;
        } else {
          const ChanceValidation ch =
              validate_chance(out.u, inst, g.xi2, cfg.validation_draws, vrng);
          rec.empirical_violation = ch.violation;
          rec.violation_std = ch.std_err;
        }
      }
      rows[r] = std::move(rec);
    });
    for (auto& rec : rows) report.rows.push_back(std::move(rec));
  }
  return report;
}

}  // namespace slp
