#include "sobolrank/quadrature.hpp"

#include <cmath>
#include <sstream>

#include "sobolrank/errors.hpp"

namespace sobolrank {

GaussLegendre::GaussLegendre(int npoints) {
  if (npoints < 1) {
    throw InvalidInputError("GaussLegendre: need at least 1 point");
  }
  const int n = npoints;
  nodes.resize(static_cast<std::size_t>(n));
  weights.resize(static_cast<std::size_t>(n));

  const int m = (n + 1) / 2;  // roots come in +/- pairs
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based first guess for the i-th root of P_n
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    double p1 = 1.0;
    double p2 = 0.0;
    for (int j = 0; j < n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
    }
    pp = n * (z * p1 - p2) / (z * z - 1.0);

    nodes[static_cast<std::size_t>(i)] = -z;
    nodes[static_cast<std::size_t>(n - 1 - i)] = z;
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
}

double GaussLegendre::integrate(const std::function<double(double)>& f, double lo,
                                double hi) const {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    sum += weights[i] * f(mid + half * nodes[i]);
  }
  return sum * half;
}

namespace {

constexpr int kPanelOrder = 16;
// exp(-kTailLog) is the survival mass kept outside the truncated domain
constexpr double kTailLog = 69.0775527898213705;  // -log(1e-30)

const GaussLegendre& panel_rule() {
  static const GaussLegendre rule(kPanelOrder);
  return rule;
}

double composite(const std::function<double(double)>& f, double lo, double hi, int panels) {
  const GaussLegendre& rule = panel_rule();
  const double width = (hi - lo) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    sum += rule.integrate(f, lo + p * width, lo + (p + 1) * width);
  }
  return sum;
}

}  // namespace

double law_expectation(const InputLaw& law, const std::function<double(double)>& f, int panels) {
  if (panels < 1) {
    throw InvalidInputError("law_expectation: need at least 1 panel");
  }
  if (law.kind == LawKind::Uniform) {
    const double width = law.b - law.a;
    return composite(f, law.a, law.b, panels) / width;
  }
  const double rate = law.rate;
  const auto weighted = [&f, rate](double x) { return f(x) * rate * std::exp(-rate * x); };
  return composite(weighted, 0.0, kTailLog / rate, panels);
}

double law_expectation_checked(const InputLaw& law, const std::function<double(double)>& f,
                               int panels, double rel_tol) {
  const double coarse = law_expectation(law, f, panels);
  const double fine = law_expectation(law, f, 2 * panels);
  const double scale = std::max({std::abs(coarse), std::abs(fine), 1e-12});
  if (std::abs(fine - coarse) > rel_tol * scale) {
    std::ostringstream os;
    os << "quadrature did not converge under " << law.describe() << ": " << panels
       << " panels gave " << coarse << ", " << 2 * panels << " panels gave " << fine
       << " (relative gap " << std::abs(fine - coarse) / scale << ", tolerance " << rel_tol
       << ")";
    throw AccuracyError(os.str());
  }
  return fine;
}

}  // namespace sobolrank
