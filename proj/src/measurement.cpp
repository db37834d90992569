#include "ads/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ads {

const std::vector<int>& ActionSpace::group(int action) const {
  if (action < 0 || action >= num_actions()) {
    throw IndexError("action id " + std::to_string(action) + " outside space");
  }
  return groups[static_cast<std::size_t>(action)];
}

ActionSpace build_action_space(ActionKind kind, DataShape shape, int box_w, int box_h) {
  if (shape.h < 1 || shape.w < 1) throw ParameterError("action space needs a positive shape");

  ActionSpace s;
  s.kind = kind;
  s.shape = shape;
  s.measurement_dim = kind == ActionKind::fourier_line ? 2 * shape.size() : shape.size();

  switch (kind) {
    case ActionKind::pixel:
      for (int i = 0; i < shape.size(); ++i) s.groups.push_back({i});
      break;
    case ActionKind::row_line:
      for (int r = 0; r < shape.h; ++r) {
        std::vector<int> g(shape.w);
        for (int c = 0; c < shape.w; ++c) g[c] = r * shape.w + c;
        s.groups.push_back(std::move(g));
      }
      break;
    case ActionKind::column_line:
      for (int c = 0; c < shape.w; ++c) {
        std::vector<int> g(shape.h);
        for (int r = 0; r < shape.h; ++r) g[r] = r * shape.w + c;
        s.groups.push_back(std::move(g));
      }
      break;
    case ActionKind::box: {
      if (box_w < 1 || box_h < 1 || shape.w % box_w != 0 || shape.h % box_h != 0) {
        throw ParameterError("box size must divide the image dimensions");
      }
      for (int br = 0; br < shape.h / box_h; ++br) {
        for (int bc = 0; bc < shape.w / box_w; ++bc) {
          std::vector<int> g;
          g.reserve(static_cast<std::size_t>(box_w) * box_h);
          for (int r = 0; r < box_h; ++r) {
            for (int c = 0; c < box_w; ++c) {
              g.push_back((br * box_h + r) * shape.w + (bc * box_w + c));
            }
          }
          s.groups.push_back(std::move(g));
        }
      }
      break;
    }
    case ActionKind::fourier_line:
      // one action per column of the 2-D DFT grid, both components of each bin
      for (int c = 0; c < shape.w; ++c) {
        std::vector<int> g;
        g.reserve(2 * static_cast<std::size_t>(shape.h));
        for (int r = 0; r < shape.h; ++r) {
          int bin = r * shape.w + c;
          g.push_back(2 * bin);
          g.push_back(2 * bin + 1);
        }
        s.groups.push_back(std::move(g));
      }
      break;
  }
  return s;
}

void ActionSet::add(int action) {
  space->group(action);  // validates the id
  if (contains(action)) {
    throw ParameterError("action " + std::to_string(action) + " acquired twice");
  }
  actions.push_back(action);
}

bool ActionSet::contains(int action) const {
  return std::find(actions.begin(), actions.end(), action) != actions.end();
}

std::vector<int> ActionSet::coords() const {
  std::vector<int> out;
  for (int a : actions) {
    const auto& g = space->group(a);
    out.insert(out.end(), g.begin(), g.end());
  }
  return out;
}

void SparseMeasurement::append(const SparseMeasurement& more) {
  indices.insert(indices.end(), more.indices.begin(), more.indices.end());
  values.insert(values.end(), more.values.begin(), more.values.end());
}

int MeasurementModel::measurement_dim() const {
  return forward == ForwardKind::unitary_dft2 ? 2 * space.shape.size() : space.shape.size();
}

void MeasurementModel::validate() const {
  if (noise_std < 0.0) throw ParameterError("noise_std must be >= 0");
  if (space.measurement_dim != measurement_dim()) {
    throw ParameterError("action space indexes a different measurement domain than the forward model");
  }
}

namespace detail {

std::vector<std::complex<double>> dft2(const std::vector<std::complex<double>>& grid,
                                       DataShape shape, bool inverse) {
  const int h = shape.h, w = shape.w;
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<std::complex<double>> tmp(grid.size()), out(grid.size());

  // rows
  std::vector<std::complex<double>> tw_w(static_cast<std::size_t>(w) * w);
  for (int k = 0; k < w; ++k) {
    for (int n = 0; n < w; ++n) {
      double ang = sign * 2.0 * std::numbers::pi * k * n / w;
      tw_w[static_cast<std::size_t>(k) * w + n] = {std::cos(ang), std::sin(ang)};
    }
  }
  for (int r = 0; r < h; ++r) {
    for (int k = 0; k < w; ++k) {
      std::complex<double> acc = 0.0;
      for (int n = 0; n < w; ++n) {
        acc += grid[static_cast<std::size_t>(r) * w + n] * tw_w[static_cast<std::size_t>(k) * w + n];
      }
      tmp[static_cast<std::size_t>(r) * w + k] = acc;
    }
  }

  // columns
  std::vector<std::complex<double>> tw_h(static_cast<std::size_t>(h) * h);
  for (int k = 0; k < h; ++k) {
    for (int n = 0; n < h; ++n) {
      double ang = sign * 2.0 * std::numbers::pi * k * n / h;
      tw_h[static_cast<std::size_t>(k) * h + n] = {std::cos(ang), std::sin(ang)};
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(h) * w);
  for (int c = 0; c < w; ++c) {
    for (int k = 0; k < h; ++k) {
      std::complex<double> acc = 0.0;
      for (int n = 0; n < h; ++n) {
        acc += tmp[static_cast<std::size_t>(n) * w + c] * tw_h[static_cast<std::size_t>(k) * h + n];
      }
      out[static_cast<std::size_t>(k) * w + c] = acc * scale;
    }
  }
  return out;
}

}  // namespace detail

Vec MeasurementModel::apply_forward(const Vec& x) const {
  if (x.size() != space.shape.size()) throw ParameterError("forward: shape mismatch");
  if (forward == ForwardKind::identity) return x;

  std::vector<std::complex<double>> grid(x.size());
  for (int i = 0; i < x.size(); ++i) grid[static_cast<std::size_t>(i)] = x[i];
  auto spec = detail::dft2(grid, space.shape, false);

  Vec out(2 * x.size());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    out[static_cast<int>(2 * i)] = spec[i].real();
    out[static_cast<int>(2 * i) + 1] = spec[i].imag();
  }
  return out;
}

Vec MeasurementModel::apply_adjoint(const Vec& m) const {
  if (m.size() != measurement_dim()) throw ParameterError("adjoint: shape mismatch");
  if (forward == ForwardKind::identity) return m;

  std::vector<std::complex<double>> spec(static_cast<std::size_t>(m.size() / 2));
  for (std::size_t i = 0; i < spec.size(); ++i) {
    spec[i] = {m[static_cast<int>(2 * i)], m[static_cast<int>(2 * i) + 1]};
  }
  auto grid = detail::dft2(spec, space.shape, true);

  Vec out(space.shape.size());
  for (int i = 0; i < out.size(); ++i) out[i] = grid[static_cast<std::size_t>(i)].real();
  return out;
}

SparseMeasurement acquire(const MeasurementModel& model, const Vec& x_true,
                          const ActionSet& actions, rng::Stream& stream) {
  if (actions.empty()) throw ParameterError("acquire: no actions selected");
  Vec y_full = model.apply_forward(x_true);

  // circular complex noise in the DFT domain: std/sqrt(2) per component
  double comp_std = model.forward == ForwardKind::unitary_dft2
                        ? model.noise_std / std::sqrt(2.0)
                        : model.noise_std;

  SparseMeasurement y;
  for (int idx : actions.coords()) {
    double noise = comp_std > 0.0 ? comp_std * stream.next_normal() : 0.0;
    y.indices.push_back(idx);
    y.values.push_back(y_full[idx] + noise);
  }
  return y;
}

MaskedMeasurement mask_and_zero_fill(const ActionSet& actions, const SparseMeasurement& y) {
  const int m_dim = actions.space->measurement_dim;
  MaskedMeasurement out;
  out.mask.assign(static_cast<std::size_t>(m_dim), 0);
  out.y_zero_filled = Vec::Zero(m_dim);

  for (int idx : actions.coords()) out.mask[static_cast<std::size_t>(idx)] = 1;
  for (int i = 0; i < y.size(); ++i) {
    int idx = y.indices[static_cast<std::size_t>(i)];
    if (idx < 0 || idx >= m_dim) throw IndexError("measurement index outside domain");
    out.y_zero_filled[idx] = y.values[static_cast<std::size_t>(i)];
  }
  return out;
}

}  // namespace ads
