#pragma once

#include "ads/gmm.hpp"
#include "ads/measurement.hpp"
#include "ads/schedule.hpp"
#include "ads/types.hpp"

namespace ads {

enum class JacobianMode {
  exact,              // propagate through the analytic denoiser Jacobian
  identity_approx,    // d(x0_hat)/d(x_tau) ~ I/sqrt(ab), the cheap ablation
  finite_difference,  // test oracle, central differences on the loss
};

struct GuidanceConfig {
  double zeta = 1.0;
  JacobianMode mode = JacobianMode::exact;

  void validate() const;
};

/// Ancestral reverse step:
///   x'_{tau-1} = c1 * x_tau + c2 * x0_hat + sigma~_tau * z
/// with c1 = sqrt(alpha)*(1-ab_{tau-1})/(1-ab_tau) and
///      c2 = sqrt(ab_{tau-1})*beta/(1-ab_tau).
/// At tau == 1 this returns x0_hat exactly, for any z.
Vec reverse_step(const Vec& x_tau, const Vec& x0_hat, int tau, const NoiseSchedule& sched,
                 const Vec& z);

/// Gradient of || y - U(A) f(x0_hat(x_tau)) ||^2 with respect to x_tau,
/// restricted to acquired coordinates. Empty action sets yield a zero vector.
Vec guided_gradient(const IsotropicGmm& prior, const MeasurementModel& model,
                    const ActionSet& actions, const SparseMeasurement& y, const Vec& x_tau,
                    int tau, const NoiseSchedule& sched, const GuidanceConfig& cfg);

/// Same gradient but fed from quantities the diffusion loop already has:
/// the mixture evaluation at x_tau and the simulated full measurement
/// y_hat_full = f(x0_hat). Supports exact and identity Jacobian modes.
Vec guided_gradient_from_eval(const NoisedGmmView& view, const MixtureEval& eval,
                              const Vec& x_tau, const Vec& y_hat_full,
                              const MeasurementModel& model, const ActionSet& actions,
                              const SparseMeasurement& y, const GuidanceConfig& cfg);

inline Vec data_fidelity_step(const Vec& x_prime, const Vec& grad, const GuidanceConfig& cfg) {
  return x_prime - cfg.zeta * grad;
}

}  // namespace ads
