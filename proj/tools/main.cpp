// sobol-rank: first-order Sobol index estimation from lagged rank statistics,
// theoretical variance constants, and Monte Carlo study reproduction.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "sobolrank/config.hpp"
#include "sobolrank/csv.hpp"
#include "sobolrank/errors.hpp"
#include "sobolrank/estimators.hpp"
#include "sobolrank/model.hpp"
#include "sobolrank/report_io.hpp"
#include "sobolrank/study.hpp"
#include "sobolrank/theory.hpp"

namespace {

using namespace sobolrank;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

// writes to the path, or stdout for "-"
void with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  if (path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot open output file " + path);
  }
  fn(out);
}

int cmd_estimate(const std::string& input_csv, const std::string& k_text, bool all_lags,
                 const std::string& out_path) {
  const PairedSample sample = read_xy_csv_file(input_csv);

  int k = 0;
  if (k_text == "auto") {
    k = default_k(sample.size());
  } else if (k_text == "adaptive") {
    k = adaptive_k(order_by_input(sample));
  } else {
    try {
      std::size_t used = 0;
      k = std::stoi(k_text, &used);
      if (used != k_text.size()) throw std::invalid_argument(k_text);
    } catch (const std::exception&) {
      throw ConfigError("--k expects an integer or 'auto', got '" + k_text + "'");
    }
    if (k < 1 || static_cast<std::size_t>(k) >= sample.size()) {
      throw LagError("--k must satisfy 1 <= k <= n-1 (n = " + std::to_string(sample.size()) +
                     ")");
    }
  }

  const SobolEstimate est = sobol_from_sample(sample, k);
  std::cout << "n         " << est.n << '\n'
            << "k         " << est.k << '\n'
            << "eta_hat   " << format_number(est.eta_hat) << '\n'
            << "mean_hat  " << format_number(est.mean_hat) << '\n'
            << "var_hat   " << format_number(est.var_hat) << '\n'
            << "S_raw     " << format_number(est.s_raw) << '\n'
            << "S         " << format_number(est.s_clamped) << '\n';

  if (all_lags) {
    const LagEstimates lags = eta_lags(order_by_input(sample), k);
    with_output(out_path, [&lags](std::ostream& out) { write_lag_table_csv(lags, out); });
  }
  return kExitOk;
}

int cmd_theory(const std::string& model_name, const std::string& law_text, int points,
               const std::string& out_path) {
  const ModelSpec spec = make_model(model_name, parse_law(law_text));
  const TheorySummary theory = theory_summary(spec, points);
  print_theory_table(theory, model_name, law_text, std::cout);
  if (!out_path.empty()) {
    with_output(out_path, [&](std::ostream& out) {
      write_theory_csv(theory, model_name, law_text, out);
    });
  }
  return kExitOk;
}

int cmd_study(const std::string& config_path, const std::string& out_dir) {
  const StudyFileConfig file = load_study_config(config_path);
  const StudyReport report = run_study(file.config);
  write_study_outputs(report, file.model_name, file.law_text, out_dir);
  std::cout << "study written to " << out_dir << " (" << report.sample_sizes.size()
            << " sample sizes, " << report.max_lag << " lags, "
            << file.config.replications << " replications)\n";
  return kExitOk;
}

int cmd_mse_curve(const std::string& config_path, const std::string& out_path) {
  const StudyFileConfig file = load_study_config(config_path);
  const MseCurve curve = mse_curve(file.config);
  with_output(out_path, [&curve](std::ostream& out) { write_mse_curve_csv(curve, out); });
  if (out_path != "-") {
    std::cout << "mse curve written to " << out_path << " (sigma2_rank = "
              << format_number(curve.theory.sigma2_rank) << ", sigma2_opt = "
              << format_number(curve.theory.sigma2_opt) << ")\n";
  }
  return kExitOk;
}

int cmd_cov_check(const std::string& config_path, std::size_t n, int k,
                  const std::string& out_path) {
  const StudyFileConfig file = load_study_config(config_path);
  const Matrix reps = lag_replicates(file.config, n, k);
  const Matrix cov = empirical_lag_cov(file.config, n, k);
  const Matrix se = scaled_covariance_se(reps, n);
  const TheorySummary theory = theory_summary(file.config.model);

  double worst_diag = 0.0;
  double worst_off = 0.0;
  for (std::size_t a = 0; a < cov.rows(); ++a) {
    for (std::size_t b = 0; b < cov.cols(); ++b) {
      const double target = a == b ? theory.sigma2_rank : theory.sigma2_opt;
      const double dev = std::abs(cov(a, b) - target) / se(a, b);
      (a == b ? worst_diag : worst_off) = std::max(a == b ? worst_diag : worst_off, dev);
    }
  }

  std::cout << "n                 " << n << '\n'
            << "k                 " << k << '\n'
            << "replications      " << file.config.replications << '\n'
            << "sigma2_rank       " << format_number(theory.sigma2_rank) << '\n'
            << "sigma2_opt        " << format_number(theory.sigma2_opt) << '\n'
            << "max |diag dev|/SE " << format_number(worst_diag) << '\n'
            << "max |off dev|/SE  " << format_number(worst_off) << '\n';

  if (!out_path.empty()) {
    with_output(out_path, [&cov](std::ostream& out) { write_matrix_csv(cov, out); });
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"First-order Sobol index estimation from lagged rank statistics"};
  app.require_subcommand(1);

  // estimate
  auto* estimate = app.add_subcommand("estimate", "Estimate the Sobol index from an x,y CSV");
  std::string input_csv;
  std::string k_text = "auto";
  bool all_lags = false;
  std::string lag_out = "-";
  estimate->add_option("input", input_csv, "input CSV with an x,y header")->required();
  estimate->add_option("--k", k_text,
                       "lag budget: an integer, 'auto' for floor(n^(1/3)), or 'adaptive' "
                       "for floor(n^(1/3)/range)");
  estimate->add_flag("--all-lags", all_lags, "also emit the per-lag estimate table");
  estimate->add_option("--out", lag_out, "per-lag table destination ('-' for stdout)");

  // theory
  auto* theory = app.add_subcommand("theory", "Print the theoretical variance constants");
  std::string model_name;
  std::string law_text = "uniform:0,1";
  int points = 1024;
  std::string theory_out;
  theory->add_option("--model", model_name, "catalog model name")->required();
  theory->add_option("--law", law_text, "input law, uniform:a,b or exp:rate");
  theory->add_option("--points", points, "base quadrature node budget");
  theory->add_option("--out", theory_out, "also write the summary as CSV");

  // study
  auto* study = app.add_subcommand("study", "Run a Monte Carlo study from a config file");
  std::string config_path;
  std::string out_dir;
  study->add_option("--config", config_path, "study config file")->required();
  study->add_option("--out-dir", out_dir, "output directory")->required();

  // mse-curve
  auto* mse = app.add_subcommand("mse-curve", "n*MSE convergence table with k = floor(n^(1/3))");
  std::string mse_config;
  std::string mse_out;
  mse->add_option("--config", mse_config, "study config file")->required();
  mse->add_option("--out", mse_out, "output CSV ('-' for stdout)")->required();

  // cov-check
  auto* cov = app.add_subcommand("cov-check",
                                 "Empirical lag covariance against the asymptotic structure");
  std::string cov_config;
  std::size_t cov_n = 0;
  int cov_k = 0;
  std::string cov_out;
  cov->add_option("--config", cov_config, "study config file")->required();
  cov->add_option("--n", cov_n, "sample size (must be in the config grid)")->required();
  cov->add_option("--k", cov_k, "number of lags")->required();
  cov->add_option("--out", cov_out, "also write the empirical matrix as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (estimate->parsed()) return cmd_estimate(input_csv, k_text, all_lags, lag_out);
    if (theory->parsed()) return cmd_theory(model_name, law_text, points, theory_out);
    if (study->parsed()) return cmd_study(config_path, out_dir);
    if (mse->parsed()) return cmd_mse_curve(mse_config, mse_out);
    if (cov->parsed()) return cmd_cov_check(cov_config, cov_n, cov_k, cov_out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const LagError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}
