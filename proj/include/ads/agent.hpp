#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ads/gmm.hpp"
#include "ads/guidance.hpp"
#include "ads/measurement.hpp"
#include "ads/policy.hpp"
#include "ads/schedule.hpp"
#include "ads/types.hpp"

namespace ads {

enum class PolicyKind { max_entropy, random, data_variance };

struct AgentConfig {
  int T = 1000;
  double beta_min = 1e-4;
  double beta_max = 0.02;
  int n_particles = 16;
  std::vector<int> schedule;  // post-update diffusion times in [0, T) at which to acquire
  double zeta = 1.0;
  double sigma_y = 1.0;
  ExponentSign exponent_sign = ExponentSign::paper_positive;
  std::vector<int> a_init;
  PolicyKind policy = PolicyKind::max_entropy;
  JacobianMode guidance_mode = JacobianMode::exact;
  std::uint64_t seed = 0;
  int finite_check_every = 50;
  Vec data_variance_weights;  // per-action mass, only for PolicyKind::data_variance

  void validate(const ActionSpace& space) const;
};

/// Evenly spaced acquisition times covering [lo, hi], hi down to lo, matching
/// how the experiments partition a window of the reverse process.
std::vector<int> even_schedule(int lo, int hi, int count);

struct AcquisitionRecord {
  int step = 0;    // diffusion time (post-update) at which the action fired
  int action = 0;
  std::vector<int> scored_actions;  // remaining ids at decision time
  Vec scores;                       // aligned with scored_actions; empty for baselines
  std::vector<double> values;       // measurement values just acquired
};

struct PhaseTimings {
  double diffusion_s = 0.0;
  double policy_s = 0.0;
  double acquire_s = 0.0;
};

struct AcquisitionTrace {
  std::vector<AcquisitionRecord> records;
  Mat posterior_samples;  // final particle states, one row per particle
  Mat x0_hats;            // one-step denoised estimates from the last step
  std::vector<int> final_actions;
  std::vector<std::uint8_t> final_mask;
  SparseMeasurement measurements;
  PhaseTimings timings;
  std::vector<std::string> warnings;

  Vec posterior_mean() const { return posterior_samples.colwise().mean(); }
};

/// The full active loop: particles from N(0, I), reverse diffusion with
/// data-fidelity guidance, and a scheduled acquisition after the particle
/// update whenever the post-update time lies in cfg.schedule.
AcquisitionTrace run_ads(const AgentConfig& cfg, const IsotropicGmm& prior,
                         const MeasurementModel& model, const Vec& x_true);

/// Same guided chain with the whole mask acquired up front and no policy
/// calls; the baseline protocol where every diffusion step is guided.
AcquisitionTrace run_fixed_mask(const AgentConfig& cfg, const IsotropicGmm& prior,
                                const MeasurementModel& model, const Vec& x_true,
                                const std::vector<int>& mask_actions);

}  // namespace ads
