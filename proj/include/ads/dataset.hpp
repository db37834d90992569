#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ads/gmm.hpp"
#include "ads/types.hpp"

namespace ads {

struct Dataset {
  Mat tensors;  // N x d
  DataShape shape;
  int channels = 1;
  std::string provenance;
  std::vector<int> labels;  // generating component per row when known, else empty

  int count() const { return static_cast<int>(tensors.rows()); }
  int dim() const { return static_cast<int>(tensors.cols()); }
  void validate() const;
};

/// IDX container (big-endian). Image tensors (magic 0x00000803) are scaled
/// to [0, 1]; label files (magic 0x00000801) load via load_idx_labels.
Dataset load_idx(const std::string& path);
std::vector<int> load_idx_labels(const std::string& path);

/// Mean-pool by an integer factor, zero-padding the bottom/right edges up to
/// the next multiple first.
Dataset downsample(const Dataset& ds, int factor);

/// I.i.d. draws from the mixture; labels record component assignments.
Dataset synth_gmm_dataset(const IsotropicGmm& gmm, int n, std::uint64_t seed, DataShape shape);

/// Mixture whose modes hide a mode-specific key block in an otherwise flat
/// image: the informative coordinates depend on the component, so good masks
/// must adapt per sample.
struct PlantedParams {
  DataShape shape{16, 16};
  int n_modes = 8;
  int key_size = 8;            // coordinates per mode key
  double key_amplitude = 0.35; // key pattern is +/- this around the background
  double background = 0.5;
  double within_std = 0.01;
  std::uint64_t seed = 7;
};

IsotropicGmm make_planted_gmm(const PlantedParams& params);

// row-major CSV with an H,W,C header; doubles printed with 17 significant
// digits so reloads are bit-exact
void save_dataset_csv(const Dataset& ds, const std::string& path);
Dataset load_dataset_csv(const std::string& path);

// little-endian f64 tensor container
void save_tensor(const Mat& m, const std::string& path);
Mat load_tensor(const std::string& path);

}  // namespace ads
