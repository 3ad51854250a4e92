#include <cmath>
#include <cstdlib>
#include <vector>

#include <doctest.h>

#include "oracle_values.hpp"
#include "sobolrank/errors.hpp"
#include "sobolrank/model.hpp"
#include "sobolrank/rng.hpp"
#include "sobolrank/study.hpp"

using namespace sobolrank;

namespace {

StudyConfig small_config() {
  StudyConfig config;
  config.model = make_model("sin5", InputLaw::uniform(0.0, 1.0));
  config.sample_sizes = {50, 80};
  config.max_lag = 10;
  config.avg_ks = {2, 5, 10};
  config.replications = 400;
  config.base_seed = 99;
  return config;
}

bool reports_equal(const StudyReport& a, const StudyReport& b) {
  if (a.sample_sizes != b.sample_sizes || a.max_lag != b.max_lag || a.avg_ks != b.avg_ks) {
    return false;
  }
  for (std::size_t ni = 0; ni < a.lag_cells.size(); ++ni) {
    for (std::size_t l = 0; l < a.lag_cells[ni].size(); ++l) {
      const CellStats& ca = a.lag_cells[ni][l];
      const CellStats& cb = b.lag_cells[ni][l];
      if (ca.box.mean != cb.box.mean || ca.bias != cb.bias || ca.variance != cb.variance ||
          ca.mse != cb.mse || ca.box.median != cb.box.median) {
        return false;
      }
    }
  }
  for (std::size_t ni = 0; ni < a.lag_cov.size(); ++ni) {
    if (a.lag_cov[ni].data() != b.lag_cov[ni].data()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("study config validation names the offence") {
  StudyConfig config = small_config();
  config.max_lag = 50;  // >= min(ns)
  CHECK_THROWS_AS(validate(config), ConfigError);

  config = small_config();
  config.avg_ks = {11};  // > max_lag
  CHECK_THROWS_AS(validate(config), ConfigError);

  config = small_config();
  config.replications = 1;
  CHECK_THROWS_AS(validate(config), ConfigError);

  config = small_config();
  config.sample_sizes.clear();
  CHECK_THROWS_AS(validate(config), ConfigError);
}

TEST_CASE("run_study is bit-identical across runs and thread counts") {
  const StudyConfig config = small_config();
  const StudyReport a = run_study(config, 1);
  const StudyReport b = run_study(config, 1);
  const StudyReport c = run_study(config, 4);
  const StudyReport d = run_study(config, 3);
  CHECK(reports_equal(a, b));
  CHECK(reports_equal(a, c));
  CHECK(reports_equal(a, d));
}

TEST_CASE("every study cell satisfies the mse decomposition identity") {
  const StudyReport report = run_study(small_config(), 2);
  for (const auto& cells : {report.lag_cells, report.avg_cells}) {
    for (const auto& per_n : cells) {
      for (const CellStats& cell : per_n) {
        const double recomposed = cell.bias * cell.bias + cell.variance;
        CHECK(std::abs(cell.mse - recomposed) <= 1e-10 * std::max(cell.mse, 1e-300));
      }
    }
  }
}

TEST_CASE("boxplot quantiles are ordered in every cell") {
  const StudyReport report = run_study(small_config(), 2);
  for (const auto& cells : {report.lag_cells, report.avg_cells}) {
    for (const auto& per_n : cells) {
      for (const CellStats& cell : per_n) {
        CHECK(cell.box.q05 <= cell.box.q25);
        CHECK(cell.box.q25 <= cell.box.median);
        CHECK(cell.box.median <= cell.box.q75);
        CHECK(cell.box.q75 <= cell.box.q95);
        CHECK(cell.box.n_points == 400);
      }
    }
  }
}

TEST_CASE("noiseless model: lag estimators converge as n grows") {
  StudyConfig config;
  ModelSpec spec;
  spec.phi = [](double x) { return x; };
  spec.v = [](double) { return 0.0; };
  spec.law = InputLaw::uniform(0.0, 1.0);
  config.model = spec;
  config.sample_sizes = {100, 400};
  config.max_lag = 5;
  config.avg_ks = {2, 5};
  config.replications = 500;
  config.base_seed = 7;

  const StudyReport report = run_study(config);
  for (int l = 0; l < config.max_lag; ++l) {
    const CellStats& coarse = report.lag_cells[0][static_cast<std::size_t>(l)];
    const CellStats& fine = report.lag_cells[1][static_cast<std::size_t>(l)];
    CHECK(fine.mse < coarse.mse);
    CHECK(std::abs(fine.bias) < 0.05);
  }
}

TEST_CASE("averaging tightens the estimator spread") {
  StudyConfig config = small_config();
  config.sample_sizes = {200};
  config.replications = 1000;
  const StudyReport report = run_study(config);
  const double var_lag1 = report.lag_cells[0][0].variance;
  const double var_avg5 = report.avg_cells[0][1].variance;  // k = 5
  CHECK(var_avg5 < var_lag1);
}

TEST_CASE("averaged variance is non-increasing in k within noise") {
  StudyConfig config = small_config();
  config.sample_sizes = {300};
  config.max_lag = 16;
  config.avg_ks = {2, 4, 8, 16};
  config.replications = 2000;
  const StudyReport report = run_study(config);
  for (std::size_t ki = 1; ki < config.avg_ks.size(); ++ki) {
    const double prev = report.avg_cells[0][ki - 1].variance;
    const double next = report.avg_cells[0][ki].variance;
    const double se = prev * std::sqrt(2.0 / (config.replications - 1.0));
    CHECK(next <= prev + 2.0 * se);
  }
}

TEST_CASE("lag covariance is symmetric and positive semidefinite") {
  StudyConfig config = small_config();
  config.replications = 300;
  const StudyReport report = run_study(config);
  Rng rng(5);
  for (const Matrix& cov : report.lag_cov) {
    double trace = 0.0;
    for (std::size_t i = 0; i < cov.rows(); ++i) {
      trace += cov(i, i);
      for (std::size_t j = 0; j < cov.cols(); ++j) {
        CHECK(cov(i, j) == cov(j, i));
      }
    }
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> w(cov.rows());
      for (double& v : w) v = rng.uniform(-1.0, 1.0);
      double form = 0.0;
      for (std::size_t i = 0; i < cov.rows(); ++i) {
        for (std::size_t j = 0; j < cov.cols(); ++j) form += w[i] * cov(i, j) * w[j];
      }
      CHECK(form >= -1e-10 * trace);
    }
  }
}

TEST_CASE("noise-free covariance collapses to the rank-one structure") {
  StudyConfig config;
  config.model = make_model("sin5:vzero", InputLaw::uniform(0.0, 1.0));
  config.sample_sizes = {500};
  config.max_lag = 4;
  config.avg_ks = {2};
  config.replications = 2000;
  config.base_seed = 21;
  const Matrix cov = empirical_lag_cov(config, 500, 4);
  for (std::size_t i = 0; i < cov.rows(); ++i) {
    for (std::size_t j = 0; j < cov.cols(); ++j) {
      CHECK(cov(i, j) == doctest::Approx(oracle::sin5_uniform::var_phi2).epsilon(0.25));
    }
  }
}

TEST_CASE("single-lag covariance recovers sigma2_rank") {
  StudyConfig config = small_config();
  config.sample_sizes = {500};
  config.max_lag = 1;
  config.avg_ks = {1};
  config.replications = 4000;
  const Matrix cov = empirical_lag_cov(config, 500, 1);
  CHECK(cov(0, 0) == doctest::Approx(oracle::sin5_uniform::sigma2_rank).epsilon(0.15));
}

TEST_CASE("empirical_lag_cov equals the covariance of lag_replicates") {
  StudyConfig config = small_config();
  config.replications = 200;
  const Matrix reps = lag_replicates(config, 50, 3);
  CHECK(reps.rows() == 200);
  CHECK(reps.cols() == 3);
  const Matrix se = scaled_covariance_se(reps, 50);
  CHECK(se.rows() == 3);
  CHECK(se(0, 0) > 0.0);
  CHECK(se(0, 1) == se(1, 0));

  CHECK_THROWS_AS(lag_replicates(config, 51, 3), ConfigError);   // n not in grid
  CHECK_THROWS_AS(lag_replicates(config, 50, 11), ConfigError);  // k > max_lag
}

TEST_CASE("mse_curve lines up with the cube-root rule") {
  StudyConfig config = small_config();
  config.sample_sizes = {125, 216};
  config.max_lag = 4;
  config.avg_ks = {2, 4};
  config.replications = 300;
  const MseCurve curve = mse_curve(config);
  REQUIRE(curve.rows.size() == 6);
  CHECK(curve.rows[0].estimator == "lag1");
  CHECK(curve.rows[1].estimator == "lagk");
  CHECK(curve.rows[2].estimator == "avg");
  CHECK(curve.rows[0].n == 125);
  // k = 5 at n = 125 and k = 6 at n = 216
  CHECK(curve.rows[0].reference ==
        doctest::Approx(curve.theory.sigma2_opt + curve.theory.e_v2 / 5.0));
  CHECK(curve.rows[3].reference ==
        doctest::Approx(curve.theory.sigma2_opt + curve.theory.e_v2 / 6.0));

  config.k_rule = KRule::Fixed;
  config.fixed_k = 3;
  CHECK_THROWS_AS(mse_curve(config), ConfigError);
}

TEST_CASE("mse_curve reference collapses to sigma2_opt for noise-free models") {
  StudyConfig config;
  config.model = make_model("sin5:vzero", InputLaw::uniform(0.0, 1.0));
  config.sample_sizes = {64, 125};
  config.max_lag = 4;
  config.avg_ks = {2};
  config.replications = 200;
  config.base_seed = 3;
  const MseCurve curve = mse_curve(config);
  for (const MseCurveRow& row : curve.rows) {
    CHECK(row.reference == curve.theory.sigma2_opt);
  }
}

TEST_CASE("replication failures surface the failing seed") {
  StudyConfig config = small_config();
  ModelSpec bad;
  bad.phi = [](double) { return 0.0; };
  bad.v = [](double x) { return 0.4 - x; };  // negative on part of the support
  bad.law = InputLaw::uniform(0.0, 1.0);
  config.model = bad;
  try {
    run_study(config, 2);
    FAIL("expected a failure");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("seed") != std::string::npos);
  }
}

TEST_CASE("bias_bound_check accepts the regular model and rejects none spuriously") {
  StudyConfig config;
  config.model = make_model("sin5", InputLaw::uniform(0.0, 1.0));
  config.sample_sizes = {100, 300};
  config.max_lag = 15;
  config.avg_ks = {5};
  config.replications = 1500;
  config.base_seed = 17;

  BiasBoundSpec constants;
  constants.m_phi = 1.0;
  constants.l_phi = 5.0;
  constants.m_v = 4.0;
  constants.l_v = 8.0;

  const auto rows = bias_bound_check(config, constants);
  REQUIRE(rows.size() == 2 * 15);
  for (const BiasBoundRow& row : rows) {
    CHECK(row.bound > 0.0);
    CHECK(row.mc_se > 0.0);
    CHECK(row.satisfied);
  }
}

TEST_CASE("default_thread_count honours the environment cap") {
  setenv("SOBOL_RANK_THREADS", "3", 1);
  CHECK(default_thread_count() == 3);
  setenv("SOBOL_RANK_THREADS", "junk", 1);
  CHECK(default_thread_count() >= 1);
  unsetenv("SOBOL_RANK_THREADS");
  CHECK(default_thread_count() >= 1);
}
