#pragma once

#include <cstddef>

#include "sobolrank/matrix.hpp"
#include "sobolrank/model.hpp"

namespace sobolrank {

/// Closed-form limit constants of the lag estimators for one model,
/// computed by deterministic quadrature against the input law.
///
/// The asymptotic variances are assembled as
///
///   sigma2_opt  = 4 E[phi^2 v] + var[phi^2]          (efficiency bound)
///   sigma2_rank = sigma2_opt + E[v^2]                (single-lag estimator)
///   sigma2_nn   = 5 E[phi^2 v] + 2 E[v^2] + 2 var[phi^2]
///   sigma2_ker  = 4 E[phi^2 v] + 4 var[phi^2]
///
/// so sigma2_opt <= sigma2_rank <= sigma2_nn always holds, with equality of
/// the first two exactly when v vanishes almost surely.
struct TheorySummary {
  double eta = 0.0;       ///< E[phi(X)^2], the estimation target
  double var_y = 0.0;     ///< var(phi(X)) + E[v(X)]
  double sobol = 0.0;     ///< (eta - E[phi]^2) / var_y
  double e_phi2_v = 0.0;  ///< E[phi^2(X) v(X)]
  double e_v2 = 0.0;      ///< E[v^2(X)]
  double var_phi2 = 0.0;  ///< var[phi^2(X)]
  double sigma2_opt = 0.0;
  double sigma2_rank = 0.0;
  double sigma2_nn = 0.0;
  double sigma2_ker = 0.0;
  double improvement = 0.0;  ///< (sigma2_rank - sigma2_opt) / sigma2_rank
};

/// Evaluates every TheorySummary field. `quadrature_points` is the base
/// node budget per integral; each integral is recomputed at twice the
/// resolution and an AccuracyError is thrown if the passes disagree beyond
/// 1e-8 relative.
TheorySummary theory_summary(const ModelSpec& spec, int quadrature_points = 1024);

/// Regularity constants of a model: bounds and Lipschitz constants of the
/// conditional mean and variance, plus the expected input range for one
/// sample size.
struct BiasBoundSpec {
  double m_phi = 0.0;      ///< sup |phi|
  double l_phi = 0.0;      ///< Lipschitz constant of phi
  double m_v = 0.0;        ///< sup |v|
  double l_v = 0.0;        ///< Lipschitz constant of v
  double e_delta_n = 0.0;  ///< E[max(X) - min(X)] at the sample size of interest
};

/// Finite-sample bias bound of the lag-l estimator:
///
///   (l / (n - l)) * (l_phi * m_phi + 2 * m_phi^2 * e_delta_n)
///
/// lag 0 returns 0 (the bound vanishes); lag >= n or negative throws.
double bias_bound(const BiasBoundSpec& spec, std::size_t n, int lag);

/// Result of scanning a model for the boundedness/Lipschitz constants.
struct RegularityScan {
  BiasBoundSpec constants;  ///< e_delta_n is left 0; it depends on n
  bool h_violated = false;  ///< constants kept growing as the scan window widened
  double growth = 0.0;      ///< largest relative constant growth between windows
};

/// Estimates sup|phi|, sup|v| and max slopes on a dense grid over the
/// central 1 - 1e-6 probability mass of the input law, then rescans on a
/// wider window (central 1 - 1e-8) and flags models whose constants grow,
/// the signature of an unbounded or non-Lipschitz model on unbounded
/// support. Diagnostic only, never throws on a flagged model.
RegularityScan estimate_regularity_constants(const ModelSpec& spec, int grid_points = 4096);

/// First-order k x k covariance limit of the lag estimators: every diagonal
/// entry is sigma2_opt + E[v^2] (= sigma2_rank) and every off-diagonal entry
/// sigma2_opt.
Matrix asymptotic_cov(const TheorySummary& summary, int k);

}  // namespace sobolrank
