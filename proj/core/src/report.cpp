#include "slpkit/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <variant>

#include <json.hpp>

namespace slp {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

using ColumnValue = std::variant<long, double, std::string>;

ColumnValue column_value(const GridPointRecord& r, const std::string& col) {
  if (col == "method") return r.method;
  if (col == "gamma_db") return r.gamma_db;
  if (col == "epsilon") return r.epsilon;
  if (col == "xi2") return r.xi2;
  if (col == "upsilon") return r.upsilon;
  if (col == "users") return r.users;
  if (col == "antennas") return r.antennas;
  if (col == "realizations") return r.realizations;
  if (col == "slots") return r.slots;
  if (col == "noise_draws") return r.noise_draws;
  if (col == "solves") return r.solves;
  if (col == "optimal_count") return r.optimal_count;
  if (col == "infeasible_count") return r.infeasible_count;
  if (col == "iterlimit_count") return r.iterlimit_count;
  if (col == "feasibility_rate") return r.feasibility_rate;
  if (col == "avg_power_w") return r.avg_power_w;
  if (col == "avg_power_dbw") return r.avg_power_dbw;
  if (col == "detections") return r.detections;
  if (col == "symbol_errors") return r.symbol_errors;
  if (col == "ser") return r.ser;
  if (col == "mean_solver_iterations") return r.mean_solver_iterations;
  if (col == "mean_wall_time_s") return r.mean_wall_time_s;
  if (col == "median_of_means_s") return r.median_of_means_s;
  if (col == "runtime_ratio") return r.runtime_ratio;
  if (col == "complexity") return r.complexity;
  if (col == "rho") return r.rho;
  if (col == "psi") return r.psi;
  if (col == "alpha") return r.alpha;
  if (col == "tightest_method") return r.tightest;
  if (col == "realization") return r.realization;
  if (col == "status") return r.status;
  if (col == "draws") return r.draws;
  if (col == "empirical_violation") return r.empirical_violation;
  if (col == "violation_std") return r.violation_std;
  if (col == "min_margin") return r.min_margin;
  if (col == "infimum_gap") return r.infimum_gap;
  throw std::invalid_argument("unknown report column: " + col);
}

}  // namespace

void write_csv(const MetricsReport& report, std::ostream& os) {
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    if (i) os << ',';
    os << csv_escape(report.columns[i]);
  }
  os << "\r\n";
  for (const GridPointRecord& row : report.rows) {
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
      if (i) os << ',';
      const ColumnValue v = column_value(row, report.columns[i]);
      if (std::holds_alternative<long>(v)) {
        os << std::get<long>(v);
      } else if (std::holds_alternative<double>(v)) {
        os << format_double(std::get<double>(v));
      } else {
        os << csv_escape(std::get<std::string>(v));
      }
    }
    os << "\r\n";
  }
}

void write_json(const MetricsReport& report, std::ostream& os) {
  nlohmann::ordered_json doc;
  doc["version"] = report.version;
  doc["seed"] = report.seed;
  doc["config_hash"] = report.config_hash;
  doc["columns"] = report.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const GridPointRecord& row : report.rows) {
    nlohmann::ordered_json obj;
    for (const std::string& col : report.columns) {
      const ColumnValue v = column_value(row, col);
      if (std::holds_alternative<long>(v)) {
        obj[col] = std::get<long>(v);
      } else if (std::holds_alternative<double>(v)) {
        const double d = std::get<double>(v);
        if (std::isnan(d)) {
          obj[col] = nullptr;
        } else {
          obj[col] = d;
        }
      } else {
        obj[col] = std::get<std::string>(v);
      }
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  os << doc.dump(2) << "\n";
}

}  // namespace slp
