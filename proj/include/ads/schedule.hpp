#pragma once

#include <vector>

#include "ads/types.hpp"

namespace ads {

enum class ScheduleKind { linear };

/// Discrete variance-preserving noise schedule. All coefficient arrays are
/// precomputed at construction; diffusion loops only index into them.
///
/// Indexing convention: step indices tau run 1..T. alpha_bar(0) == 1, so
/// lookups of tau-1 never need a special case and posterior_sigma(1) == 0.
struct NoiseSchedule {
  int T = 0;
  std::vector<double> betas;             // betas[tau-1], tau in [1, T]
  std::vector<double> alphas;            // 1 - beta
  std::vector<double> alpha_bars;        // alpha_bars[tau], tau in [0, T]
  std::vector<double> posterior_sigmas;  // posterior_sigmas[tau-1], tau in [1, T]

  double beta(int tau) const { return betas[check_step(tau) - 1]; }
  double alpha(int tau) const { return alphas[check_step(tau) - 1]; }
  double posterior_sigma(int tau) const { return posterior_sigmas[check_step(tau) - 1]; }
  double alpha_bar(int tau) const;  // tau in [0, T]

  int check_step(int tau) const;  // throws IndexError unless 1 <= tau <= T
};

NoiseSchedule build_linear_schedule(int T, double beta_min, double beta_max);

/// Sample from the forward marginal q(x_tau | x_0): sqrt(ab)*x0 + sqrt(1-ab)*noise.
Vec forward_noise(const Vec& x0, int tau, const NoiseSchedule& sched, const Vec& noise);

}  // namespace ads
