#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sobolrank/matrix.hpp"
#include "sobolrank/model.hpp"
#include "sobolrank/theory.hpp"

namespace sobolrank {

enum class KRule { Fixed, CubeRoot };

/// Full description of one Monte Carlo experiment. Replications are seeded
/// individually from (base_seed, n, replication index), so reports are
/// bit-identical whatever the execution order or thread count.
struct StudyConfig {
  ModelSpec model;
  std::vector<std::size_t> sample_sizes = {100, 500, 1000, 2000};
  int max_lag = 50;
  std::vector<int> avg_ks = {5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
  int replications = 10000;
  std::uint64_t base_seed = 1;
  KRule k_rule = KRule::CubeRoot;
  int fixed_k = 1;  ///< used when k_rule == KRule::Fixed
};

/// Throws ConfigError when grids are empty, max_lag >= min(sample size),
/// avg_ks leave [1, max_lag], or replications < 2.
void validate(const StudyConfig& config);

/// Five-number summary plus mean, with type-7 interpolated quantiles.
struct BoxplotStats {
  double q05 = 0.0, q25 = 0.0, median = 0.0, q75 = 0.0, q95 = 0.0, mean = 0.0;
  std::size_t n_points = 0;
};

/// Distribution summary of one estimator cell against the theoretical eta.
/// variance uses divisor N so that mse = bias^2 + variance holds exactly.
struct CellStats {
  BoxplotStats box;
  double bias = 0.0;
  double variance = 0.0;
  double mse = 0.0;
};

struct StudyReport {
  std::vector<std::size_t> sample_sizes;
  int max_lag = 0;
  std::vector<int> avg_ks;
  std::vector<std::vector<CellStats>> lag_cells;  ///< [n index][lag - 1]
  std::vector<std::vector<CellStats>> avg_cells;  ///< [n index][k index]
  std::vector<Matrix> lag_cov;  ///< per n: n * cov of the lag estimates (divisor N-1)
  TheorySummary theory;
};

/// Runs the whole experiment. threads <= 0 picks a default from the
/// SOBOL_RANK_THREADS environment variable, falling back to the hardware
/// concurrency. Any replication failure aborts with the failing seed in the
/// error message.
StudyReport run_study(const StudyConfig& config, int threads = 0);

/// One row of the convergence table: n * MSE for a named estimator at one
/// sample size, next to the first-order reference sigma2_opt + E[v^2]/k.
struct MseCurveRow {
  std::size_t n = 0;
  std::string estimator;  ///< "lag1", "lagk" or "avg"
  double n_mse = 0.0;
  double reference = 0.0;
};

struct MseCurve {
  std::vector<MseCurveRow> rows;
  TheorySummary theory;  ///< carries the sigma2_rank / sigma2_opt levels
};

/// n * MSE of the lag-1, lag-k and averaged estimators with k = floor(n^(1/3))
/// per sample size. Requires k_rule == KRule::CubeRoot.
MseCurve mse_curve(const StudyConfig& config, int threads = 0);

/// Raw replication-by-lag estimates at one sample size: a replications x k
/// matrix with row r holding the lag estimates of replication r.
Matrix lag_replicates(const StudyConfig& config, std::size_t n, int k, int threads = 0);

/// n times the sample covariance (divisor N-1) of the k lag estimators
/// across replications.
Matrix empirical_lag_cov(const StudyConfig& config, std::size_t n, int k, int threads = 0);

/// Monte Carlo standard error of each entry of the scaled covariance
/// estimate, from the delta-method fourth-moment formula
/// var(cov_ab) ~ (E[(z_a - m_a)^2 (z_b - m_b)^2] - cov_ab^2) / N.
Matrix scaled_covariance_se(const Matrix& replicates, std::size_t n);

/// One bias-bound comparison: the empirical bias is widened down by 3 Monte
/// Carlo standard errors before being held against the theoretical bound.
struct BiasBoundRow {
  std::size_t n = 0;
  int lag = 0;
  double abs_bias = 0.0;
  double mc_se = 0.0;
  double bound = 0.0;
  bool satisfied = false;
};

/// Compares Monte Carlo bias against bias_bound for every (n, lag) cell of
/// the config. The constants' e_delta_n field is ignored; E[range] is
/// re-estimated per sample size. Diagnostic: rows report, never throw.
std::vector<BiasBoundRow> bias_bound_check(const StudyConfig& config,
                                           const BiasBoundSpec& constants, int threads = 0);

/// Thread budget: SOBOL_RANK_THREADS when set to a positive integer, else
/// the hardware concurrency, always at least 1.
int default_thread_count();

}  // namespace sobolrank
