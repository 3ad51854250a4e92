#include "sobolrank/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "sobolrank/errors.hpp"
#include "sobolrank/estimators.hpp"

namespace sobolrank {

void validate(const StudyConfig& config) {
  if (config.sample_sizes.empty()) {
    throw ConfigError("study: sample size grid is empty");
  }
  const std::size_t min_n = *std::min_element(config.sample_sizes.begin(),
                                              config.sample_sizes.end());
  if (min_n < 2) {
    throw ConfigError("study: sample sizes must be >= 2");
  }
  if (config.max_lag < 1 || static_cast<std::size_t>(config.max_lag) >= min_n) {
    throw ConfigError("study: max_lag must satisfy 1 <= max_lag < min(ns)");
  }
  for (int k : config.avg_ks) {
    if (k < 1 || k > config.max_lag) {
      throw ConfigError("study: avg_ks entries must lie in [1, max_lag]");
    }
  }
  if (config.replications < 2) {
    throw ConfigError("study: need at least 2 replications");
  }
  if (config.k_rule == KRule::Fixed && config.fixed_k < 1) {
    throw ConfigError("study: fixed k rule needs k >= 1");
  }
}

int default_thread_count() {
  if (const char* env = std::getenv("SOBOL_RANK_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024) {
      return static_cast<int>(v);
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

int resolve_threads(int threads) {
  return threads > 0 ? threads : default_thread_count();
}

// Neumaier-compensated accumulator; keeps the mse = bias^2 + variance
// identity tight over 1e5-replication sums.
class CompensatedSum {
public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Runs `replications` independent draws of the model at sample size n and
// stores the lag-1..lag-L estimates of replication r in row r. Work is
// split across threads; the output layout is index-deterministic.
Matrix replicate_lag_matrix(const ModelSpec& model, std::size_t n, int replications,
                            std::uint64_t base_seed, int max_lag, int threads) {
  Matrix out(static_cast<std::size_t>(replications), static_cast<std::size_t>(max_lag));

  const int nthreads = std::clamp(threads, 1, replications);
  std::vector<std::thread> pool;
  std::mutex failure_mutex;
  std::exception_ptr failure;
  std::uint64_t failing_seed = 0;

  const auto worker = [&](int begin, int end) {
    try {
      for (int r = begin; r < end; ++r) {
        const std::uint64_t seed =
            replication_seed(base_seed, static_cast<std::uint64_t>(n),
                             static_cast<std::uint64_t>(r));
        try {
          const PairedSample sample = sample_model(model, n, seed);
          const OrderedSample ordered = order_by_input(sample);
          const LagEstimates lags = eta_lags(ordered, max_lag);
          for (int l = 0; l < max_lag; ++l) {
            out(static_cast<std::size_t>(r), static_cast<std::size_t>(l)) =
                lags.values[static_cast<std::size_t>(l)];
          }
        } catch (const Error&) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) {
            failure = std::current_exception();
            failing_seed = seed;
          }
          return;
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (nthreads == 1) {
    worker(0, replications);
  } else {
    const int chunk = (replications + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
      const int begin = t * chunk;
      const int end = std::min(replications, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  if (failure) {
    try {
      std::rethrow_exception(failure);
    } catch (const Error& e) {
      throw Error("study replication with seed " + std::to_string(failing_seed) +
                  " failed: " + e.what());
    }
  }
  return out;
}

BoxplotStats boxplot_stats(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  // type-7 quantile: linear interpolation between order statistics
  const auto quantile = [&values, n](double p) {
    const double h = p * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(lo);
    if (lo + 1 >= n) return values[n - 1];
    return values[lo] + frac * (values[lo + 1] - values[lo]);
  };

  CompensatedSum sum;
  for (double v : values) sum.add(v);

  BoxplotStats box;
  box.q05 = quantile(0.05);
  box.q25 = quantile(0.25);
  box.median = quantile(0.50);
  box.q75 = quantile(0.75);
  box.q95 = quantile(0.95);
  box.mean = sum.value() / static_cast<double>(n);
  box.n_points = n;
  return box;
}

CellStats cell_stats(const std::vector<double>& values, double eta_true) {
  CellStats cell;
  cell.box = boxplot_stats(values);
  const double n = static_cast<double>(values.size());

  CompensatedSum ss_mean, ss_eta;
  for (double v : values) {
    const double dm = v - cell.box.mean;
    const double de = v - eta_true;
    ss_mean.add(dm * dm);
    ss_eta.add(de * de);
  }
  cell.bias = cell.box.mean - eta_true;
  cell.variance = ss_mean.value() / n;  // divisor N: keeps mse = bias^2 + variance
  cell.mse = ss_eta.value() / n;
  return cell;
}

std::vector<double> column(const Matrix& m, std::size_t j) {
  std::vector<double> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = m(i, j);
  return out;
}

// n * sample covariance (divisor N-1) of the estimate columns.
Matrix scaled_covariance(const Matrix& reps, std::size_t n) {
  const std::size_t rows = reps.rows();
  const std::size_t k = reps.cols();

  std::vector<double> means(k);
  for (std::size_t j = 0; j < k; ++j) {
    CompensatedSum s;
    for (std::size_t i = 0; i < rows; ++i) s.add(reps(i, j));
    means[j] = s.value() / static_cast<double>(rows);
  }

  Matrix cov(k, k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      CompensatedSum s;
      for (std::size_t i = 0; i < rows; ++i) {
        s.add((reps(i, a) - means[a]) * (reps(i, b) - means[b]));
      }
      const double c =
          static_cast<double>(n) * s.value() / static_cast<double>(rows - 1);
      cov(a, b) = c;
      cov(b, a) = c;
    }
  }
  return cov;
}

}  // namespace

StudyReport run_study(const StudyConfig& config, int threads) {
  validate(config);
  const int nthreads = resolve_threads(threads);

  StudyReport report;
  report.sample_sizes = config.sample_sizes;
  report.max_lag = config.max_lag;
  report.avg_ks = config.avg_ks;
  report.theory = theory_summary(config.model);

  for (std::size_t n : config.sample_sizes) {
    const Matrix reps = replicate_lag_matrix(config.model, n, config.replications,
                                             config.base_seed, config.max_lag, nthreads);

    std::vector<CellStats> lag_cells;
    lag_cells.reserve(static_cast<std::size_t>(config.max_lag));
    for (int l = 0; l < config.max_lag; ++l) {
      lag_cells.push_back(cell_stats(column(reps, static_cast<std::size_t>(l)),
                                     report.theory.eta));
    }
    report.lag_cells.push_back(std::move(lag_cells));

    std::vector<CellStats> avg_cells;
    avg_cells.reserve(config.avg_ks.size());
    for (int k : config.avg_ks) {
      std::vector<double> averaged(reps.rows());
      for (std::size_t r = 0; r < reps.rows(); ++r) {
        double sum = 0.0;  // same left-to-right arithmetic as eta_avg
        for (int l = 0; l < k; ++l) sum += reps(r, static_cast<std::size_t>(l));
        averaged[r] = sum / static_cast<double>(k);
      }
      avg_cells.push_back(cell_stats(averaged, report.theory.eta));
    }
    report.avg_cells.push_back(std::move(avg_cells));

    report.lag_cov.push_back(scaled_covariance(reps, n));
  }
  return report;
}

MseCurve mse_curve(const StudyConfig& config, int threads) {
  validate(config);
  if (config.k_rule != KRule::CubeRoot) {
    throw ConfigError("mse_curve: requires k_rule = cube_root");
  }
  const int nthreads = resolve_threads(threads);

  MseCurve curve;
  curve.theory = theory_summary(config.model);

  for (std::size_t n : config.sample_sizes) {
    const int k = default_k(n);
    const Matrix reps = replicate_lag_matrix(config.model, n, config.replications,
                                             config.base_seed, k, nthreads);
    const double reference = curve.theory.sigma2_opt + curve.theory.e_v2 / k;

    const auto n_mse = [&](const std::vector<double>& values) {
      CompensatedSum ss;
      for (double v : values) {
        const double d = v - curve.theory.eta;
        ss.add(d * d);
      }
      return static_cast<double>(n) * ss.value() / static_cast<double>(values.size());
    };

    std::vector<double> avg(reps.rows());
    for (std::size_t r = 0; r < reps.rows(); ++r) {
      double sum = 0.0;
      for (int l = 0; l < k; ++l) sum += reps(r, static_cast<std::size_t>(l));
      avg[r] = sum / static_cast<double>(k);
    }

    curve.rows.push_back({n, "lag1", n_mse(column(reps, 0)), reference});
    curve.rows.push_back({n, "lagk", n_mse(column(reps, static_cast<std::size_t>(k - 1))),
                          reference});
    curve.rows.push_back({n, "avg", n_mse(avg), reference});
  }
  return curve;
}

Matrix lag_replicates(const StudyConfig& config, std::size_t n, int k, int threads) {
  validate(config);
  if (std::find(config.sample_sizes.begin(), config.sample_sizes.end(), n) ==
      config.sample_sizes.end()) {
    throw ConfigError("lag_replicates: n=" + std::to_string(n) +
                      " is not in the configured sample-size grid");
  }
  if (k < 1 || k > config.max_lag) {
    throw ConfigError("lag_replicates: k must lie in [1, max_lag]");
  }
  return replicate_lag_matrix(config.model, n, config.replications, config.base_seed, k,
                              resolve_threads(threads));
}

Matrix empirical_lag_cov(const StudyConfig& config, std::size_t n, int k, int threads) {
  return scaled_covariance(lag_replicates(config, n, k, threads), n);
}

Matrix scaled_covariance_se(const Matrix& reps, std::size_t n) {
  const std::size_t rows = reps.rows();
  const std::size_t k = reps.cols();
  if (rows < 2) {
    throw InvalidInputError("scaled_covariance_se: need at least 2 replications");
  }

  std::vector<double> means(k);
  for (std::size_t j = 0; j < k; ++j) {
    CompensatedSum s;
    for (std::size_t i = 0; i < rows; ++i) s.add(reps(i, j));
    means[j] = s.value() / static_cast<double>(rows);
  }

  Matrix se(k, k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      CompensatedSum s2, s22;
      for (std::size_t i = 0; i < rows; ++i) {
        const double da = reps(i, a) - means[a];
        const double db = reps(i, b) - means[b];
        s2.add(da * db);
        s22.add(da * da * db * db);
      }
      const double cov = s2.value() / static_cast<double>(rows);
      const double m22 = s22.value() / static_cast<double>(rows);
      const double v = std::max(0.0, m22 - cov * cov) / static_cast<double>(rows);
      const double scaled = static_cast<double>(n) * std::sqrt(v);
      se(a, b) = scaled;
      se(b, a) = scaled;
    }
  }
  return se;
}

std::vector<BiasBoundRow> bias_bound_check(const StudyConfig& config,
                                           const BiasBoundSpec& constants, int threads) {
  validate(config);
  const int nthreads = resolve_threads(threads);
  const TheorySummary theory = theory_summary(config.model);

  std::vector<BiasBoundRow> rows;
  for (std::size_t n : config.sample_sizes) {
    BiasBoundSpec with_range = constants;
    with_range.e_delta_n = expected_range(config.model.law, n);

    const Matrix reps = replicate_lag_matrix(config.model, n, config.replications,
                                             config.base_seed, config.max_lag, nthreads);
    const double nrep = static_cast<double>(reps.rows());
    for (int l = 1; l <= config.max_lag; ++l) {
      const std::vector<double> values = column(reps, static_cast<std::size_t>(l - 1));
      CompensatedSum sum;
      for (double v : values) sum.add(v);
      const double mean = sum.value() / nrep;
      CompensatedSum ss;
      for (double v : values) {
        const double d = v - mean;
        ss.add(d * d);
      }
      const double sd = std::sqrt(ss.value() / (nrep - 1.0));

      BiasBoundRow row;
      row.n = n;
      row.lag = l;
      row.abs_bias = std::abs(mean - theory.eta);
      row.mc_se = sd / std::sqrt(nrep);
      row.bound = bias_bound(with_range, n, l);
      row.satisfied = row.abs_bias - 3.0 * row.mc_se <= row.bound;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace sobolrank
