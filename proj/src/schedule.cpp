#include "ads/schedule.hpp"

#include <cmath>
#include <string>

namespace ads {

int NoiseSchedule::check_step(int tau) const {
  if (tau < 1 || tau > T) {
    throw IndexError("diffusion step " + std::to_string(tau) + " outside [1, " +
                     std::to_string(T) + "]");
  }
  return tau;
}

double NoiseSchedule::alpha_bar(int tau) const {
  if (tau < 0 || tau > T) {
    throw IndexError("alpha_bar index " + std::to_string(tau) + " outside [0, " +
                     std::to_string(T) + "]");
  }
  return alpha_bars[static_cast<std::size_t>(tau)];
}

NoiseSchedule build_linear_schedule(int T, double beta_min, double beta_max) {
  if (T < 1) throw ParameterError("schedule needs T >= 1");
  if (!(beta_min > 0.0) || !(beta_min <= beta_max) || !(beta_max < 1.0)) {
    throw ParameterError("schedule needs 0 < beta_min <= beta_max < 1");
  }

  NoiseSchedule s;
  s.T = T;
  s.betas.resize(T);
  s.alphas.resize(T);
  s.alpha_bars.resize(T + 1);
  s.posterior_sigmas.resize(T);

  for (int i = 0; i < T; ++i) {
    double frac = (T == 1) ? 0.0 : static_cast<double>(i) / (T - 1);
    s.betas[i] = beta_min + (beta_max - beta_min) * frac;
    s.alphas[i] = 1.0 - s.betas[i];
  }

  s.alpha_bars[0] = 1.0;
  for (int tau = 1; tau <= T; ++tau) {
    s.alpha_bars[tau] = s.alpha_bars[tau - 1] * s.alphas[tau - 1];
  }
  for (int tau = 1; tau <= T; ++tau) {
    double num = 1.0 - s.alpha_bars[tau - 1];
    double den = 1.0 - s.alpha_bars[tau];
    s.posterior_sigmas[tau - 1] = std::sqrt(s.betas[tau - 1] * num / den);
  }
  return s;
}

Vec forward_noise(const Vec& x0, int tau, const NoiseSchedule& sched, const Vec& noise) {
  sched.check_step(tau);
  if (noise.size() != x0.size()) throw ParameterError("noise/x0 size mismatch");
  double ab = sched.alpha_bar(tau);
  return std::sqrt(ab) * x0 + std::sqrt(1.0 - ab) * noise;
}

}  // namespace ads
