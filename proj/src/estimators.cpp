#include "sobolrank/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sobolrank/errors.hpp"

namespace sobolrank {

void validate(const PairedSample& sample) {
  if (sample.xs.size() != sample.ys.size()) {
    throw InvalidInputError("paired sample: xs has " + std::to_string(sample.xs.size()) +
                            " entries but ys has " + std::to_string(sample.ys.size()));
  }
  if (sample.size() < 2) {
    throw InvalidInputError("paired sample: need at least 2 observations, got " +
                            std::to_string(sample.size()));
  }
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (!std::isfinite(sample.xs[i]) || !std::isfinite(sample.ys[i])) {
      throw InvalidInputError("paired sample: non-finite entry at row " + std::to_string(i));
    }
  }
}

OrderedSample order_by_input(const PairedSample& sample) {
  validate(sample);
  const std::size_t n = sample.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // stable_sort keeps the original index order on tied inputs
  std::stable_sort(order.begin(), order.end(),
                   [&xs = sample.xs](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });

  OrderedSample out;
  out.xs_sorted.resize(n);
  out.ys_sorted.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.xs_sorted[i] = sample.xs[order[i]];
    out.ys_sorted[i] = sample.ys[order[i]];
  }
  out.range = out.xs_sorted[n - 1] - out.xs_sorted[0];
  return out;
}

double eta_lag(const OrderedSample& ordered, int lag) {
  const std::size_t n = ordered.size();
  if (lag < 1 || static_cast<std::size_t>(lag) >= n) {
    throw LagError("lag " + std::to_string(lag) + " out of range [1, " +
                   std::to_string(n == 0 ? 0 : n - 1) + "]");
  }
  const std::size_t l = static_cast<std::size_t>(lag);
  const double* y = ordered.ys_sorted.data();
  double sum = 0.0;  // fixed left-to-right order
  for (std::size_t i = 0; i + l < n; ++i) {
    sum += y[i] * y[i + l];
  }
  return sum / static_cast<double>(n - l);
}

LagEstimates eta_lags(const OrderedSample& ordered, int k) {
  const std::size_t n = ordered.size();
  if (k < 1 || static_cast<std::size_t>(k) >= n) {
    throw LagError("lag budget k=" + std::to_string(k) + " out of range [1, " +
                   std::to_string(n == 0 ? 0 : n - 1) + "]");
  }
  LagEstimates out;
  out.n = n;
  out.values.reserve(static_cast<std::size_t>(k));
  for (int l = 1; l <= k; ++l) {
    out.values.push_back(eta_lag(ordered, l));
  }
  return out;
}

double eta_avg(const LagEstimates& estimates, int k) {
  if (k < 1 || k > estimates.k()) {
    throw LagError("average over k=" + std::to_string(k) + " lags, but " +
                   std::to_string(estimates.k()) + " are available");
  }
  double sum = 0.0;
  for (int l = 0; l < k; ++l) {
    sum += estimates.values[static_cast<std::size_t>(l)];
  }
  return sum / static_cast<double>(k);
}

double eta_avg(const LagEstimates& estimates) {
  return eta_avg(estimates, estimates.k());
}

int default_k(std::size_t n) {
  if (n < 2) {
    throw InvalidInputError("default_k: need n >= 2, got " + std::to_string(n));
  }
  int k = static_cast<int>(std::cbrt(static_cast<double>(n)));
  // settle floating error on exact cubes
  while (static_cast<std::size_t>(k) * k * k > n) --k;
  while (static_cast<std::size_t>(k + 1) * (k + 1) * (k + 1) <= n) ++k;
  return std::max(1, k);
}

int adaptive_k(const OrderedSample& ordered) {
  const std::size_t n = ordered.size();
  if (n < 2) {
    throw InvalidInputError("adaptive_k: need n >= 2, got " + std::to_string(n));
  }
  if (!(ordered.range > 0.0)) return 1;
  const double raw = std::cbrt(static_cast<double>(n)) / ordered.range;
  const double capped = std::min(raw, static_cast<double>(n - 1));
  return std::max(1, static_cast<int>(capped));
}

SobolEstimate sobol_from_sample(const PairedSample& sample, int k) {
  validate(sample);
  const std::size_t n = sample.size();
  if (n < 3) {
    throw InvalidInputError("sobol_from_sample: need n >= 3, got " + std::to_string(n));
  }

  const OrderedSample ordered = order_by_input(sample);
  const double eta = eta_avg(eta_lags(ordered, k));

  double sum = 0.0;
  for (double y : sample.ys) sum += y;
  const double mean = sum / static_cast<double>(n);

  double ss = 0.0;
  for (double y : sample.ys) {
    const double d = y - mean;
    ss += d * d;
  }
  const double var = ss / static_cast<double>(n - 1);
  if (var <= 0.0) {
    throw DegenerateOutputError("sobol_from_sample: output sample has zero variance");
  }

  SobolEstimate est;
  est.eta_hat = eta;
  est.mean_hat = mean;
  est.var_hat = var;
  est.s_raw = (eta - mean * mean) / var;
  est.s_clamped = std::clamp(est.s_raw, 0.0, 1.0);
  est.n = n;
  est.k = k;
  return est;
}

SobolEstimate sobol_from_sample(const PairedSample& sample) {
  validate(sample);
  return sobol_from_sample(sample, default_k(sample.size()));
}

}  // namespace sobolrank
