#include "ads/metrics.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace ads {

double mae(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw ParameterError("mae: shape mismatch");
  if (a.size() == 0) throw ParameterError("mae: empty input");
  return (a - b).cwiseAbs().mean();
}

double psnr(const Vec& a, const Vec& b, double peak) {
  if (a.size() != b.size()) throw ParameterError("psnr: shape mismatch");
  if (!(peak > 0.0)) throw ParameterError("psnr: peak must be positive");
  double mse = (a - b).squaredNorm() / a.size();
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

double ssim(const Vec& a, const Vec& b, DataShape shape, int window, double k1, double k2,
            double dynamic_range) {
  if (a.size() != b.size() || a.size() != shape.size()) throw ParameterError("ssim: shape mismatch");
  if (shape.h < window || shape.w < window) throw ParameterError("ssim: image smaller than window");

  const double c1 = (k1 * dynamic_range) * (k1 * dynamic_range);
  const double c2 = (k2 * dynamic_range) * (k2 * dynamic_range);
  const double n = static_cast<double>(window) * window;

  double total = 0.0;
  int count = 0;
  for (int r = 0; r + window <= shape.h; ++r) {
    for (int c = 0; c + window <= shape.w; ++c) {
      double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
      for (int i = 0; i < window; ++i) {
        for (int j = 0; j < window; ++j) {
          double va = a[(r + i) * shape.w + (c + j)];
          double vb = b[(r + i) * shape.w + (c + j)];
          sa += va;
          sb += vb;
          saa += va * va;
          sbb += vb * vb;
          sab += va * vb;
        }
      }
      double mu_a = sa / n, mu_b = sb / n;
      double var_a = saa / n - mu_a * mu_a;
      double var_b = sbb / n - mu_b * mu_b;
      double cov = sab / n - mu_a * mu_b;
      total += ((2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)) /
               ((mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2));
      ++count;
    }
  }
  return total / count;
}

MaskEntropyReport mask_distribution_entropy(const std::vector<std::vector<std::uint8_t>>& masks) {
  if (masks.empty()) throw ParameterError("mask entropy needs at least one mask");
  const std::size_t len = masks.front().size();
  for (const auto& m : masks) {
    if (m.size() != len) throw ParameterError("mask lengths disagree");
  }

  MaskEntropyReport report;
  report.inclusion_probability = Vec::Zero(static_cast<int>(len));
  for (const auto& m : masks) {
    for (std::size_t i = 0; i < len; ++i) {
      if (m[i]) report.inclusion_probability[static_cast<int>(i)] += 1.0;
    }
  }
  report.inclusion_probability /= static_cast<double>(masks.size());

  auto h_bits = [](double p) {
    double acc = 0.0;
    if (p > 0.0) acc -= p * std::log2(p);
    if (p < 1.0) acc -= (1.0 - p) * std::log2(1.0 - p);
    return acc;
  };
  double total = 0.0;
  for (int i = 0; i < report.inclusion_probability.size(); ++i) {
    total += h_bits(report.inclusion_probability[i]);
  }
  report.mean_bits = total / static_cast<double>(len);
  return report;
}

SummaryStat summarize(const std::vector<double>& values) {
  if (values.empty()) throw ParameterError("summary of empty sample");
  SummaryStat s;
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  if (values.size() > 1) {
    double acc = 0.0;
    for (double v : values) acc += (v - s.mean) * (v - s.mean);
    double sd = std::sqrt(acc / (static_cast<double>(values.size()) - 1.0));
    s.std_error = sd / std::sqrt(static_cast<double>(values.size()));
  }
  return s;
}

}  // namespace ads
