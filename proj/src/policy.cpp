#include "ads/policy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ads {

void PolicyConfig::validate() const {
  if (!(sigma_y > 0.0)) throw ParameterError("sigma_y must be positive");
}

namespace {

// log sum_j exp(sign * d2[j] / (2 sigma^2)), max-subtracted
double stable_inner_sum(const Vec& d2_row, double inv_two_sigma2, double sign) {
  double m = sign > 0 ? d2_row.maxCoeff() * inv_two_sigma2 : -d2_row.minCoeff() * inv_two_sigma2;
  double acc = 0.0;
  for (int j = 0; j < d2_row.size(); ++j) {
    acc += std::exp(sign * d2_row[j] * inv_two_sigma2 - m);
  }
  return m + std::log(acc);
}

double mixture_sum(const Mat& d2, const PolicyConfig& cfg, bool with_weights) {
  const int n = static_cast<int>(d2.rows());
  const double inv_two_sigma2 = 0.5 / (cfg.sigma_y * cfg.sigma_y);
  const double sign = cfg.exponent_sign == ExponentSign::paper_positive ? 1.0 : -1.0;
  const double log_w = with_weights ? -std::log(static_cast<double>(n)) : 0.0;

  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    total += log_w + stable_inner_sum(d2.row(i), inv_two_sigma2, sign);
  }
  if (with_weights) total /= n;
  return sign > 0 ? total : -total;
}

Mat pairwise_d2(const MeasurementParticles& p, const std::vector<int>* restrict_coords) {
  const int n = p.count();
  Mat d2 = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double acc = 0.0;
      if (restrict_coords) {
        for (int l : *restrict_coords) {
          double diff = p.y_hat(i, l) - p.y_hat(j, l);
          acc += diff * diff;
        }
      } else {
        acc = (p.y_hat.row(i) - p.y_hat.row(j)).squaredNorm();
      }
      d2(i, j) = d2(j, i) = acc;
    }
  }
  return d2;
}

}  // namespace

double entropy_estimate(const MeasurementParticles& p, const std::vector<int>* restrict_coords,
                        const PolicyConfig& cfg) {
  cfg.validate();
  if (p.count() < 2) throw ParameterError("entropy estimate needs at least two particles");
  return mixture_sum(pairwise_d2(p, restrict_coords), cfg, /*with_weights=*/true);
}

Vec action_scores(const MeasurementParticles& p, const ActionSpace& space,
                  const std::vector<int>& remaining, const PolicyConfig& cfg) {
  cfg.validate();
  if (remaining.empty()) throw ParameterError("no remaining actions to score");
  if (p.count() < 2) throw ParameterError("action scores need at least two particles");
  if (p.dim() != space.measurement_dim) {
    throw ParameterError("particle measurement dim disagrees with action space");
  }

  const int n = p.count();
  const int n_remaining = static_cast<int>(remaining.size());

  // one pass over particle pairs; per-action partial sums of squared diffs
  std::vector<Mat> d2(static_cast<std::size_t>(n_remaining), Mat::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int r = 0; r < n_remaining; ++r) {
        double acc = 0.0;
        for (int l : space.group(remaining[static_cast<std::size_t>(r)])) {
          double diff = p.y_hat(i, l) - p.y_hat(j, l);
          acc += diff * diff;
        }
        d2[static_cast<std::size_t>(r)](i, j) = d2[static_cast<std::size_t>(r)](j, i) = acc;
      }
    }
  }

  Vec scores(n_remaining);
  for (int r = 0; r < n_remaining; ++r) {
    scores[r] = mixture_sum(d2[static_cast<std::size_t>(r)], cfg, /*with_weights=*/false);
  }
  return scores;
}

int select_max_entropy(const Vec& scores, const std::vector<int>& remaining) {
  if (scores.size() == 0 || static_cast<std::size_t>(scores.size()) != remaining.size()) {
    throw ParameterError("scores and remaining actions must align");
  }
  int best_action = remaining[0];
  double best_score = scores[0];
  for (int r = 1; r < scores.size(); ++r) {
    int action = remaining[static_cast<std::size_t>(r)];
    if (scores[r] > best_score || (scores[r] == best_score && action < best_action)) {
      best_score = scores[r];
      best_action = action;
    }
  }
  return best_action;
}

int baseline_next_action(BaselineKind kind, const std::vector<int>& remaining,
                         const Vec* action_weights, rng::Stream& stream,
                         std::vector<std::string>* warnings) {
  if (remaining.empty()) throw ParameterError("no remaining actions");
  if (kind == BaselineKind::random) {
    return remaining[static_cast<std::size_t>(stream.next_below(remaining.size()))];
  }

  if (!action_weights) throw ParameterError("data-variance sampling needs action weights");
  double total = 0.0;
  for (int a : remaining) total += (*action_weights)[a];
  if (!(total > 0.0)) {
    if (warnings) warnings->push_back("all remaining variance weights are zero; uniform fallback");
    return remaining[static_cast<std::size_t>(stream.next_below(remaining.size()))];
  }

  double u = stream.next_unit() * total;
  double acc = 0.0;
  for (int a : remaining) {
    acc += (*action_weights)[a];
    if (acc >= u) return a;
  }
  return remaining.back();
}

Vec per_action_variance(const Mat& measurement_rows, const ActionSpace& space) {
  const int n = static_cast<int>(measurement_rows.rows());
  if (n < 1) throw ParameterError("variance weights need at least one row");
  if (measurement_rows.cols() != space.measurement_dim) {
    throw ParameterError("rows do not live in the space's measurement domain");
  }

  Vec mean = measurement_rows.colwise().mean();
  Vec var = (measurement_rows.rowwise() - mean.transpose()).array().square().colwise().mean();

  Vec weights(space.num_actions());
  for (int a = 0; a < space.num_actions(); ++a) {
    double acc = 0.0;
    for (int l : space.group(a)) acc += var[l];
    weights[a] = acc;
  }
  return weights;
}

std::vector<int> top_variance_actions(const Vec& action_weights, int budget) {
  std::vector<int> ids(static_cast<std::size_t>(action_weights.size()));
  std::iota(ids.begin(), ids.end(), 0);
  std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
    return action_weights[a] > action_weights[b];
  });
  if (budget < 0 || budget > static_cast<int>(ids.size())) {
    throw ParameterError("budget outside the action space");
  }
  ids.resize(static_cast<std::size_t>(budget));
  return ids;
}

}  // namespace ads
