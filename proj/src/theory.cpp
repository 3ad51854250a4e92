#include "sobolrank/theory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sobolrank/errors.hpp"
#include "sobolrank/quadrature.hpp"

namespace sobolrank {

TheorySummary theory_summary(const ModelSpec& spec, int quadrature_points) {
  if (quadrature_points < 16) {
    throw InvalidInputError("theory_summary: need at least 16 quadrature points");
  }
  const int panels = std::max(1, quadrature_points / 16);
  const auto expect = [&](const std::function<double(double)>& f) {
    return law_expectation_checked(spec.law, f, panels);
  };

  const auto& phi = spec.phi;
  const auto& v = spec.v;
  const double e_phi = expect(phi);
  const double e_phi2 = expect([&phi](double x) { const double p = phi(x); return p * p; });
  const double e_phi4 = expect([&phi](double x) { const double p = phi(x); return p * p * p * p; });
  const double e_v = expect(v);
  const double e_v2 = expect([&v](double x) { const double w = v(x); return w * w; });
  const double e_phi2v =
      expect([&phi, &v](double x) { const double p = phi(x); return p * p * v(x); });

  TheorySummary t;
  t.eta = e_phi2;
  t.var_y = (e_phi2 - e_phi * e_phi) + e_v;
  t.sobol = t.var_y > 0.0 ? (e_phi2 - e_phi * e_phi) / t.var_y : 0.0;
  t.e_phi2_v = e_phi2v;
  t.e_v2 = e_v2;
  t.var_phi2 = e_phi4 - e_phi2 * e_phi2;
  t.sigma2_opt = 4.0 * e_phi2v + t.var_phi2;
  t.sigma2_rank = t.sigma2_opt + e_v2;
  t.sigma2_nn = 5.0 * e_phi2v + 2.0 * e_v2 + 2.0 * t.var_phi2;
  t.sigma2_ker = 4.0 * e_phi2v + 4.0 * t.var_phi2;
  t.improvement = t.sigma2_rank > 0.0 ? e_v2 / t.sigma2_rank : 0.0;
  return t;
}

double bias_bound(const BiasBoundSpec& spec, std::size_t n, int lag) {
  if (lag == 0) return 0.0;
  if (lag < 0 || static_cast<std::size_t>(lag) >= n) {
    throw LagError("bias_bound: lag " + std::to_string(lag) + " out of range [0, " +
                   std::to_string(n == 0 ? 0 : n - 1) + "]");
  }
  const double ratio = static_cast<double>(lag) / static_cast<double>(n - static_cast<std::size_t>(lag));
  return ratio * (spec.l_phi * spec.m_phi + 2.0 * spec.m_phi * spec.m_phi * spec.e_delta_n);
}

namespace {

struct WindowConstants {
  double m_phi, l_phi, m_v, l_v;
};

WindowConstants scan_window(const ModelSpec& spec, double tail_mass, int grid_points) {
  const double lo = spec.law.quantile(tail_mass / 2.0);
  const double hi = spec.law.quantile(1.0 - tail_mass / 2.0);
  const double step = (hi - lo) / (grid_points - 1);

  WindowConstants c{0.0, 0.0, 0.0, 0.0};
  double prev_phi = 0.0;
  double prev_v = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double x = lo + i * step;
    const double p = spec.phi(x);
    const double w = spec.v(x);
    c.m_phi = std::max(c.m_phi, std::abs(p));
    c.m_v = std::max(c.m_v, std::abs(w));
    if (i > 0) {
      c.l_phi = std::max(c.l_phi, std::abs(p - prev_phi) / step);
      c.l_v = std::max(c.l_v, std::abs(w - prev_v) / step);
    }
    prev_phi = p;
    prev_v = w;
  }
  return c;
}

}  // namespace

RegularityScan estimate_regularity_constants(const ModelSpec& spec, int grid_points) {
  if (grid_points < 2) {
    throw InvalidInputError("estimate_regularity_constants: need at least 2 grid points");
  }
  const WindowConstants base = scan_window(spec, 1e-6, grid_points);
  const WindowConstants wide = scan_window(spec, 1e-8, grid_points);

  RegularityScan scan;
  scan.constants.m_phi = wide.m_phi;
  scan.constants.l_phi = wide.l_phi;
  scan.constants.m_v = wide.m_v;
  scan.constants.l_v = wide.l_v;
  scan.constants.e_delta_n = 0.0;

  double growth = 0.0;
  const auto rel_growth = [](double narrow, double broad) {
    return broad > narrow ? (broad - narrow) / std::max(narrow, 1e-12) : 0.0;
  };
  growth = std::max(growth, rel_growth(base.m_phi, wide.m_phi));
  growth = std::max(growth, rel_growth(base.l_phi, wide.l_phi));
  growth = std::max(growth, rel_growth(base.m_v, wide.m_v));
  growth = std::max(growth, rel_growth(base.l_v, wide.l_v));
  scan.growth = growth;
  scan.h_violated = growth > 0.01;
  return scan;
}

Matrix asymptotic_cov(const TheorySummary& summary, int k) {
  if (k < 1) {
    throw InvalidInputError("asymptotic_cov: need k >= 1");
  }
  const std::size_t dim = static_cast<std::size_t>(k);
  Matrix cov(dim, dim, summary.sigma2_opt);
  for (std::size_t i = 0; i < dim; ++i) {
    cov(i, i) = summary.sigma2_opt + summary.e_v2;
  }
  return cov;
}

}  // namespace sobolrank
