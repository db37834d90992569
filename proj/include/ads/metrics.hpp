#pragma once

#include <cstdint>
#include <vector>

#include "ads/types.hpp"

namespace ads {

double mae(const Vec& a, const Vec& b);

/// 10*log10(peak^2 / MSE); identical inputs report +infinity.
double psnr(const Vec& a, const Vec& b, double peak);

/// Mean local SSIM over all unit-stride windows, uniform window weights.
double ssim(const Vec& a, const Vec& b, DataShape shape, int window = 4, double k1 = 0.01,
            double k2 = 0.03, double dynamic_range = 1.0);

struct MaskEntropyReport {
  Vec inclusion_probability;  // per action
  double mean_bits = 0.0;     // mean Bernoulli entropy across actions
};

MaskEntropyReport mask_distribution_entropy(const std::vector<std::vector<std::uint8_t>>& masks);

struct SummaryStat {
  double mean = 0.0;
  double std_error = 0.0;  // sample std / sqrt(N)
};

SummaryStat summarize(const std::vector<double>& values);

}  // namespace ads
