#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nmr/dictionary.hpp"
#include "nmr/image_io.hpp"
#include "nmr/matrix.hpp"
#include "nmr/occlusion.hpp"

namespace nmr {

// Synthetic low-rank recovery instance: a labeled dictionary of near-low-rank
// class images, a ground-truth coefficient vector supported on one class, and
// the clean/corrupted observation pair.
//
// Images are generated at `gray_scale` (255 matches the PGM pixel convention;
// 1.0 gives unit-range images suited to the solver's default λ = μ = 1).
// `perturbation` is the RMS of the per-sample dense perturbation as a
// fraction of gray_scale; 0 makes every class image exactly rank `rank`.
struct SynthSpec {
  std::size_t rows = 32;
  std::size_t cols = 32;
  std::size_t samples = 50;  // total dictionary images, assigned round-robin to classes
  std::size_t classes = 5;
  std::size_t rank = 3;       // shared factors per class; each clean image has rank <= rank
  double perturbation = 0.06;  // fraction of gray_scale (RMS)
  double gray_scale = 255.0;
};

struct SyntheticProblem {
  Dictionary dict;
  std::vector<double> true_x;  // supported on the samples of true_label's class
  Matrix b_clean;              // apply_operator(dict, true_x), exactly
  Matrix b_corrupted;          // occlude(b_clean, ...).image
  Matrix occlusion_mask;       // 1 inside the occluded block, 0 elsewhere (empty if untouched)
  std::uint64_t seed = 0;
  std::string true_label;
};

// Builds one fully seeded instance. The occlusion spec is applied to b_clean
// verbatim (its own seed field controls block placement and fill).
SyntheticProblem synth_lowrank_problem(const SynthSpec& spec, const OcclusionSpec& occlusion,
                                       std::uint64_t seed);

// Classification family: a pooled labeled training dictionary plus held-out
// test images drawn from the same class models (fresh mixing weights and
// perturbations, not linear combinations of the training images).
struct FamilySpec {
  std::size_t rows = 32;
  std::size_t cols = 32;
  std::size_t classes = 5;
  std::size_t rank = 3;
  std::size_t train_per_class = 10;
  std::size_t test_per_class = 10;
  double perturbation = 0.06;  // fraction of gray_scale (RMS), as in SynthSpec
  double gray_scale = 255.0;
};

struct SyntheticFamily {
  Dictionary dict;
  std::vector<LabeledImage> tests;  // class-major order, labels match the dictionary's
};

SyntheticFamily synth_classification_family(const FamilySpec& spec, std::uint64_t seed);

// Label assigned to class index k, "c0", "c1", ...
std::string class_label(std::size_t k);

}  // namespace nmr
