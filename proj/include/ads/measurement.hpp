#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ads/rng.hpp"
#include "ads/types.hpp"

namespace ads {

enum class ActionKind { pixel, row_line, column_line, box, fourier_line };
enum class ForwardKind { identity, unitary_dft2 };

/// Enumerable measurement actions. Each group is an ordered list of
/// measurement-domain coordinate indices; groups are disjoint and together
/// cover every measurable coordinate.
///
/// For fourier_line the measurement domain is complex and coordinates index
/// interleaved (re, im) pairs, so measurement_dim == 2*h*w.
struct ActionSpace {
  ActionKind kind = ActionKind::pixel;
  DataShape shape;
  int measurement_dim = 0;
  std::vector<std::vector<int>> groups;

  int num_actions() const { return static_cast<int>(groups.size()); }
  const std::vector<int>& group(int action) const;
};

ActionSpace build_action_space(ActionKind kind, DataShape shape, int box_w = 0, int box_h = 0);

/// The ordered set of actions acquired so far. Acquisition is strictly
/// without replacement.
struct ActionSet {
  const ActionSpace* space = nullptr;
  std::vector<int> actions;

  explicit ActionSet(const ActionSpace& s) : space(&s) {}
  void add(int action);  // throws ParameterError on duplicates or bad ids
  bool contains(int action) const;
  bool empty() const { return actions.empty(); }
  int size() const { return static_cast<int>(actions.size()); }
  std::vector<int> coords() const;  // union of groups, acquisition order
};

struct SparseMeasurement {
  std::vector<int> indices;  // measurement-domain coordinates
  std::vector<double> values;

  void append(const SparseMeasurement& more);
  int size() const { return static_cast<int>(indices.size()); }
};

struct MaskedMeasurement {
  std::vector<std::uint8_t> mask;  // one per measurement coordinate
  Vec y_zero_filled;
};

struct MeasurementModel {
  ForwardKind forward = ForwardKind::identity;
  double noise_std = 0.0;
  ActionSpace space;

  int measurement_dim() const;
  void validate() const;

  /// Data tensor to full measurement tensor. Identity copies; the unitary 2-D
  /// DFT returns the orthonormal transform as interleaved (re, im) pairs.
  Vec apply_forward(const Vec& x) const;

  /// Adjoint of the forward map back into data space (real part for the DFT).
  Vec apply_adjoint(const Vec& m) const;
};

/// f(x_true) restricted to the union of the acquired action groups, plus
/// fresh noise of std noise_std per coordinate (std/sqrt(2) per component in
/// the complex DFT domain).
SparseMeasurement acquire(const MeasurementModel& model, const Vec& x_true,
                          const ActionSet& actions, rng::Stream& stream);

MaskedMeasurement mask_and_zero_fill(const ActionSet& actions, const SparseMeasurement& y);

namespace detail {
// Orthonormal 2-D DFT used by the unitary forward model; exposed for tests.
std::vector<std::complex<double>> dft2(const std::vector<std::complex<double>>& grid,
                                       DataShape shape, bool inverse);
}  // namespace detail

}  // namespace ads
