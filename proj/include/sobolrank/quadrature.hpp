#pragma once

#include <functional>
#include <vector>

#include "sobolrank/model.hpp"

namespace sobolrank {

/// Nodes and weights of the npoints-point Gauss-Legendre rule on [-1, 1],
/// found by Newton iteration on the Legendre recurrence.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int npoints);

  double integrate(const std::function<double(double)>& f, double lo, double hi) const;
};

/// E[f(X)] under the law, by composite Gauss-Legendre with `panels` equal
/// panels of a fixed 16-point rule. The exponential law folds its density
/// into the integrand and truncates where the survival mass falls below
/// 1e-30 (the tail contributes nothing at double precision for
/// polynomially-growing integrands).
double law_expectation(const InputLaw& law, const std::function<double(double)>& f, int panels);

/// law_expectation with one refinement doubling: evaluates at `panels` and
/// 2*panels and throws AccuracyError when the two passes disagree by more
/// than rel_tol relative. Returns the refined value.
double law_expectation_checked(const InputLaw& law, const std::function<double(double)>& f,
                               int panels, double rel_tol = 1e-8);

}  // namespace sobolrank
