#include "ads/guidance.hpp"

#include <cmath>

namespace ads {

void GuidanceConfig::validate() const {
  if (!(zeta >= 0.0) || !std::isfinite(zeta)) {
    throw ParameterError("guidance weight must be finite and non-negative");
  }
}

Vec reverse_step(const Vec& x_tau, const Vec& x0_hat, int tau, const NoiseSchedule& sched,
                 const Vec& z) {
  sched.check_step(tau);
  double ab = sched.alpha_bar(tau);
  double ab_prev = sched.alpha_bar(tau - 1);
  double beta = sched.beta(tau);
  double denom = 1.0 - ab;

  double c1 = std::sqrt(sched.alpha(tau)) * (1.0 - ab_prev) / denom;
  double c2 = std::sqrt(ab_prev) * beta / denom;
  return c1 * x_tau + c2 * x0_hat + sched.posterior_sigma(tau) * z;
}

namespace {

// residual on acquired coordinates, zero elsewhere
Vec zero_filled_residual(const Vec& y_hat_full, const SparseMeasurement& y, int m_dim) {
  Vec r = Vec::Zero(m_dim);
  for (int i = 0; i < y.size(); ++i) {
    int idx = y.indices[static_cast<std::size_t>(i)];
    r[idx] = y_hat_full[idx] - y.values[static_cast<std::size_t>(i)];
  }
  return r;
}

double residual_loss(const Vec& y_hat_full, const SparseMeasurement& y) {
  double loss = 0.0;
  for (int i = 0; i < y.size(); ++i) {
    double r = y_hat_full[y.indices[static_cast<std::size_t>(i)]] -
               y.values[static_cast<std::size_t>(i)];
    loss += r * r;
  }
  return loss;
}

}  // namespace

Vec guided_gradient_from_eval(const NoisedGmmView& view, const MixtureEval& eval,
                              const Vec& x_tau, const Vec& y_hat_full,
                              const MeasurementModel& model, const ActionSet& actions,
                              const SparseMeasurement& y, const GuidanceConfig& cfg) {
  if (actions.empty()) return Vec::Zero(x_tau.size());

  Vec r = zero_filled_residual(y_hat_full, y, model.measurement_dim());
  Vec grad_x0 = 2.0 * model.apply_adjoint(r);

  switch (cfg.mode) {
    case JacobianMode::exact:
      return jacobian_apply_from_eval(view, x_tau, eval, grad_x0);
    case JacobianMode::identity_approx:
      return grad_x0 / std::sqrt(view.alpha_bar);
    case JacobianMode::finite_difference:
      throw ParameterError("finite-difference gradients need the full prior; use guided_gradient");
  }
  return grad_x0;
}

Vec guided_gradient(const IsotropicGmm& prior, const MeasurementModel& model,
                    const ActionSet& actions, const SparseMeasurement& y, const Vec& x_tau,
                    int tau, const NoiseSchedule& sched, const GuidanceConfig& cfg) {
  if (actions.empty()) return Vec::Zero(x_tau.size());

  if (cfg.mode == JacobianMode::finite_difference) {
    const double h = 1e-5;
    Vec grad(x_tau.size());
    Vec probe = x_tau;
    for (int i = 0; i < x_tau.size(); ++i) {
      probe[i] = x_tau[i] + h;
      double up = residual_loss(model.apply_forward(tweedie_denoise(prior, probe, tau, sched)), y);
      probe[i] = x_tau[i] - h;
      double dn = residual_loss(model.apply_forward(tweedie_denoise(prior, probe, tau, sched)), y);
      probe[i] = x_tau[i];
      grad[i] = (up - dn) / (2.0 * h);
    }
    return grad;
  }

  NoisedGmmView view = noised_view(prior, tau, sched);
  MixtureEval eval = evaluate_mixture(view, x_tau);
  Vec y_hat_full = model.apply_forward(tweedie_from_eval(view, x_tau, eval));
  return guided_gradient_from_eval(view, eval, x_tau, y_hat_full, model, actions, y, cfg);
}

}  // namespace ads
