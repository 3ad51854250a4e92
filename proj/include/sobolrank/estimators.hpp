#pragma once

#include <cstddef>
#include <vector>

namespace sobolrank {

/// Raw estimation data: one (input, output) observation per index.
struct PairedSample {
  std::vector<double> xs;
  std::vector<double> ys;

  std::size_t size() const { return xs.size(); }
};

/// Sample reordered so the inputs are nondecreasing, with outputs carried
/// along. `range` is the input spread max(x) - min(x).
struct OrderedSample {
  std::vector<double> xs_sorted;
  std::vector<double> ys_sorted;
  double range = 0.0;

  std::size_t size() const { return xs_sorted.size(); }
};

/// Lagged cross-product estimates: values[l-1] holds the lag-l estimate,
/// for l = 1..k, computed on a sample of size n.
struct LagEstimates {
  std::vector<double> values;
  std::size_t n = 0;

  int k() const { return static_cast<int>(values.size()); }
};

/// Sobol index estimate assembled from a sample.
struct SobolEstimate {
  double eta_hat = 0.0;    ///< averaged lag estimate of E[E(Y|X)^2]
  double mean_hat = 0.0;   ///< sample mean of the outputs
  double var_hat = 0.0;    ///< sample variance of the outputs (divisor n-1)
  double s_raw = 0.0;      ///< (eta_hat - mean_hat^2) / var_hat; finite samples may leave [0,1]
  double s_clamped = 0.0;  ///< s_raw clipped to [0,1]
  std::size_t n = 0;
  int k = 0;
};

/// Throws InvalidInputError unless xs/ys have equal length n >= 2 and every
/// entry is finite.
void validate(const PairedSample& sample);

/// Reorders the pairs by nondecreasing input. Ties on equal inputs keep the
/// original order (stable), which makes every downstream estimate
/// deterministic on real data.
OrderedSample order_by_input(const PairedSample& sample);

/// Lag-l cross product of the ordered outputs:
///
///   (1 / (n-l)) * sum_{i=1}^{n-l} y_(i) * y_(i+l)
///
/// summed left to right. Requires 1 <= lag <= n-1, else LagError.
double eta_lag(const OrderedSample& ordered, int lag);

/// All lag estimates for l = 1..k. Each entry equals the corresponding
/// eta_lag call exactly. Requires 1 <= k <= n-1.
LagEstimates eta_lags(const OrderedSample& ordered, int k);

/// Equal-weight average of the first k lag estimates (weights 1/k).
/// Requires 1 <= k <= estimates.k(), else LagError.
double eta_avg(const LagEstimates& estimates, int k);

/// Equal-weight average of all lag estimates.
double eta_avg(const LagEstimates& estimates);

/// Rule-of-thumb lag budget: max(1, floor(n^(1/3))), computed in integer
/// arithmetic so cube boundaries land exactly. Always < n. Requires n >= 2.
int default_k(std::size_t n);

/// Data-driven lag budget floor(n^(1/3) / range), clamped to [1, n-1].
/// Scales the budget down when the inputs spread out, which keeps the
/// lag-window growth condition satisfied under any input law. A degenerate
/// range (all inputs equal) yields 1.
int adaptive_k(const OrderedSample& ordered);

/// Full pipeline: order the sample, average the first k lag estimates, and
/// normalize by the output moments into a Sobol index. Requires n >= 3 and a
/// non-constant output column (else DegenerateOutputError).
SobolEstimate sobol_from_sample(const PairedSample& sample, int k);

/// Same with k = default_k(n).
SobolEstimate sobol_from_sample(const PairedSample& sample);

}  // namespace sobolrank
