#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "slpkit/precoder.hpp"
#include "slpkit/uncertainty.hpp"

namespace slp {

/// Experiment grid and trial counts for the Monte Carlo engines. Axes with
/// several values are swept; single-valued axes pin that parameter.
struct ScenarioConfig {
  int antennas = 0;     // N
  int users = 0;        // K <= N
  int modulation = 8;   // M-PSK order
  double noise_var = 1.0;  // sigma^2, linear watts, common to all users

  std::vector<double> gamma_db;          // SINR targets in dB
  std::vector<RobustMethod> methods;
  std::vector<double> epsilon;           // spherical radii
  std::vector<double> xi2;               // Gaussian error variances
  std::vector<double> upsilon;           // violation probabilities

  int channels = 1;      // channel realizations
  int slots = 50;        // symbol slots per realization
  int noise_draws = 1;   // receiver noise draws per slot (SER runs)
  long validation_draws = 100000;

  std::vector<int> users_grid;  // K grid for runtime benchmarking (N = K)
  int bench_solves = 40;        // solves per benchmark cell (>= 30)

  std::uint64_t seed = 1;
  int workers = 0;  // worker threads; 0 = hardware concurrency

  std::string feasibility_axis = "upsilon";  // or "xi2"
  std::string config_hash;                   // stamped when loaded from a file

  SolverSettings solver;

  void validate_common() const;  // throws ConfigError on bad values
};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// One output row; which fields are meaningful depends on the engine that
/// produced it (the report's column list says which ones were populated).
struct GridPointRecord {
  std::string method;
  double gamma_db = kNaN;
  double epsilon = kNaN;
  double xi2 = kNaN;
  double upsilon = kNaN;

  long users = 0;
  long antennas = 0;
  long realizations = 0;
  long slots = 0;
  long noise_draws = 0;

  long solves = 0;
  long optimal_count = 0;
  long infeasible_count = 0;
  long iterlimit_count = 0;
  double feasibility_rate = kNaN;

  double avg_power_w = kNaN;
  double avg_power_dbw = kNaN;

  long detections = 0;
  long symbol_errors = 0;
  double ser = kNaN;

  double mean_solver_iterations = kNaN;
  double mean_wall_time_s = kNaN;       // non-deterministic; benchmark output only
  double median_of_means_s = kNaN;
  double runtime_ratio = kNaN;
  double complexity = kNaN;

  double rho = kNaN;
  double psi = kNaN;
  double alpha = kNaN;
  std::string tightest;

  long realization = 0;
  std::string status;
  long draws = 0;
  double empirical_violation = kNaN;
  double violation_std = kNaN;
  double min_margin = kNaN;
  double infimum_gap = kNaN;
};

struct MetricsReport {
  std::vector<std::string> columns;
  std::vector<GridPointRecord> rows;
  std::uint64_t seed = 0;
  std::string config_hash;  // hex, matches the run manifest
  std::string version;
};

/// Average transmit power over the experiment grid (dBW aggregation happens
/// once, over linear watts of the feasible slots).
MetricsReport run_power_sweep(const ScenarioConfig& cfg);

/// Uncoded symbol error rate under the Gaussian uncertainty model. Infeasible
/// slots skip transmission and are reported separately from the SER.
MetricsReport run_ser(const ScenarioConfig& cfg);

enum class FeasibilityAxis { ViolationProb, Variance };

/// Fraction of channel realizations for which the robust program is solvable.
MetricsReport run_feasibility(const ScenarioConfig& cfg, FeasibilityAxis axis);

/// Wall-clock comparison of non-robust vs robust solves over a K grid
/// (N = K); per-cell statistics use median-of-means over >= 30 solves.
MetricsReport benchmark_runtime(const ScenarioConfig& cfg);

/// Coefficient table over a violation-probability grid.
MetricsReport tightness_report(const std::vector<double>& upsilon_grid);

/// Per-solution empirical validation of solved instances (chance constraints
/// under the Gaussian model, sampled worst-case margins under the spherical
/// model), one row per (method, realization).
MetricsReport run_validate(const ScenarioConfig& cfg);

struct ChanceValidation {
  double violation = 0.0;     // worst per-user empirical violation probability
  double std_err = 0.0;       // binomial standard error at that estimate
  long draws = 0;
};

/// Monte Carlo estimate of P{any region row fails} under Gaussian CSI errors
/// at the given transmit vector.
ChanceValidation validate_chance(const Eigen::VectorXd& u, const SlpInstance& instance,
                                 double xi2, long draws, Rng& rng);

struct WorstCaseValidation {
  double min_margin = 0.0;   // smallest sampled region margin (>= 0 expected)
  double infimum_gap = 0.0;  // sampled min of a_j' T(e) u minus the analytic infimum
  long draws = 0;
};

/// Sampled worst-case check of a worst-case-robust solution over boundary
/// errors ||e|| = epsilon; also reports how closely the sampled uncertain
/// term approaches its analytic infimum -eps*||u||*||a_j||.
WorstCaseValidation validate_worst_case(const Eigen::VectorXd& u, const SlpInstance& instance,
                                        double epsilon, long draws, Rng& rng);

/// Deterministic instance construction shared by the engines: channels are
/// drawn per (seed, realization, user) and symbols per (seed, realization,
/// slot, user), so grids and different K at the same seed see paired draws.
SlpInstance make_instance(const ScenarioConfig& cfg, long realization, long slot, double gamma);

/// Substream tags (see substream_seed).
namespace stream_tag {
constexpr std::uint64_t kChannel = 0xC0;
constexpr std::uint64_t kSymbol = 0x51;
constexpr std::uint64_t kCsiError = 0xE0;
constexpr std::uint64_t kNoise = 0x40;
constexpr std::uint64_t kValidation = 0xFA;
}  // namespace stream_tag

}  // namespace slp
