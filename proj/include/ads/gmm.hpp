#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ads/schedule.hpp"
#include "ads/types.hpp"

namespace ads {

/// Mixture of K isotropic Gaussians in data space. Weights live on the
/// simplex; every component variance is a single positive scalar, which keeps
/// the noised score and its Jacobian closed-form.
struct IsotropicGmm {
  Vec weights;    // K
  Mat means;      // K x d
  Vec variances;  // K, per-component s_k^2

  int k() const { return static_cast<int>(weights.size()); }
  int dim() const { return static_cast<int>(means.cols()); }
  void validate() const;  // throws ParameterError on a broken invariant

  void save_json(const std::string& path) const;
  static IsotropicGmm load_json(const std::string& path);
};

/// The mixture after tau forward noising steps: means scaled by sqrt(ab),
/// variances mapped to ab*s^2 + (1-ab). Cheap, immutable snapshot built once
/// per diffusion step and shared by all particles.
struct NoisedGmmView {
  int tau = 0;
  double alpha_bar = 1.0;
  Vec weights;
  Mat means_tau;      // K x d
  Vec variances_tau;  // K
};

NoisedGmmView noised_view(const IsotropicGmm& prior, int tau, const NoiseSchedule& sched);

/// Responsibilities, score and log-density of the noised mixture at one point.
struct MixtureEval {
  Vec gamma;   // K posterior component responsibilities at x
  Vec score;   // gradient of log p_tau at x
  double log_density = 0.0;
};

MixtureEval evaluate_mixture(const NoisedGmmView& view, const Vec& x);

Vec score(const NoisedGmmView& view, const Vec& x);
double log_density(const NoisedGmmView& view, const Vec& x);

/// One-step denoiser: E[x_0 | x_tau] = (x_tau + (1-ab) * score) / sqrt(ab).
Vec tweedie_denoise(const IsotropicGmm& prior, const Vec& x_tau, int tau,
                    const NoiseSchedule& sched);
Vec tweedie_from_eval(const NoisedGmmView& view, const Vec& x_tau, const MixtureEval& eval);

/// v' = J v with J = d(E[x_0|x_tau])/d(x_tau), computed from the analytic
/// Hessian of the noised log-density. J is symmetric, so this doubles as
/// the transpose product needed by guidance.
Vec tweedie_jacobian_apply(const IsotropicGmm& prior, const Vec& x_tau, int tau,
                           const NoiseSchedule& sched, const Vec& v);
Vec jacobian_apply_from_eval(const NoisedGmmView& view, const Vec& x_tau,
                             const MixtureEval& eval, const Vec& v);

struct EmOptions {
  int max_iters = 200;
  double tol = 1e-8;             // stop when avg log-likelihood gain drops below
  double variance_floor = 1e-6;  // collapse guard
};

struct EmResult {
  IsotropicGmm model;
  std::vector<double> log_likelihoods;  // average per-sample, one entry per iteration
  std::vector<std::string> warnings;
};

/// EM with the exact isotropic M-step. Initial means are k-means++ style
/// seeded draws from the data; the average log-likelihood is non-decreasing
/// across iterations.
EmResult fit_gmm_em(const Mat& data, int K, const EmOptions& opts, std::uint64_t seed);

}  // namespace ads
