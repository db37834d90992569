#pragma once

#include <string>
#include <vector>

#include "ads/measurement.hpp"
#include "ads/rng.hpp"
#include "ads/types.hpp"

namespace ads {

enum class ExponentSign {
  paper_positive,    // exp(+d^2 / 2 sigma_y^2) inside the log
  hershey_negative,  // exp(-d^2 / 2 sigma_y^2) inside, whole sum negated
};

struct PolicyConfig {
  double sigma_y = 1.0;
  ExponentSign exponent_sign = ExponentSign::paper_positive;

  void validate() const;
};

/// Simulated full measurements of every particle, one row per particle. For
/// complex measurement domains the columns count real components, so real and
/// imaginary parts contribute separately to squared distances.
struct MeasurementParticles {
  Mat y_hat;  // N_p x M

  int count() const { return static_cast<int>(y_hat.rows()); }
  int dim() const { return static_cast<int>(y_hat.cols()); }
};

/// Pairwise-exponential entropy estimate of the particle mixture, equal
/// weights 1/N_p, additive constant dropped. When restrict_coords is given
/// only those measurement coordinates enter the pairwise distances.
double entropy_estimate(const MeasurementParticles& p, const std::vector<int>* restrict_coords,
                        const PolicyConfig& cfg);

/// One score per remaining action, from squared particle differences
/// accumulated over each action's coordinate group. The argmax over these
/// scores equals the argmax of entropy_estimate restricted to each action's
/// coordinates; computing them this way costs a single O(N_p^2 M) pass.
Vec action_scores(const MeasurementParticles& p, const ActionSpace& space,
                  const std::vector<int>& remaining, const PolicyConfig& cfg);

/// Remaining action with maximal score; ties break to the lowest action id.
int select_max_entropy(const Vec& scores, const std::vector<int>& remaining);

enum class BaselineKind { random, data_variance };

/// Draw the next action for a baseline policy. data_variance needs a
/// per-action weight vector (variance mass over the whole space); an all-zero
/// restriction falls back to uniform and records a warning.
int baseline_next_action(BaselineKind kind, const std::vector<int>& remaining,
                         const Vec* action_weights, rng::Stream& stream,
                         std::vector<std::string>* warnings = nullptr);

/// Per-action variance mass: per-coordinate sample variance of the rows,
/// summed over each action group. Rows must already live in the measurement
/// domain of the space.
Vec per_action_variance(const Mat& measurement_rows, const ActionSpace& space);

/// The budget highest-variance actions, descending weight, ties to lower id.
std::vector<int> top_variance_actions(const Vec& action_weights, int budget);

}  // namespace ads
