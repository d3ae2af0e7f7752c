#pragma once

#include <cstdint>
#include <string>

#include "nmr/matrix.hpp"

namespace nmr {

enum class OcclusionKind { Black, RandomNoise, Texture };
enum class Placement { UniformRandom };

// A randomly placed square block covering `level` of the image area: side
// s = round(√(level·p·q)), clamped to fit. Black zeroes the covered pixels,
// RandomNoise draws them uniformly from [0,255], Texture copies a block from
// the image at texture_path (sampled at a random source location).
struct OcclusionSpec {
  double level = 0.0;  // fraction of image area in [0,1]
  OcclusionKind kind = OcclusionKind::Black;
  std::string texture_path;  // only read when kind == Texture
  std::uint64_t seed = 0;
  Placement placement = Placement::UniformRandom;
};

struct OcclusionResult {
  Matrix image;
  Matrix mask;  // 1.0 on covered pixels, 0.0 elsewhere
};

OcclusionResult occlude(const Matrix& m, const OcclusionSpec& spec);
// Same, with a preloaded texture (ignored unless kind == Texture).
OcclusionResult occlude(const Matrix& m, const OcclusionSpec& spec, const Matrix* texture);

// "black", "random", "texture" — and the inverse, for CLI/CSV use.
const char* kind_name(OcclusionKind kind);
OcclusionKind parse_kind(const std::string& name);

// Localization score: Jaccard overlap between the k largest-|residual| pixels
// and the nonzero pixels of the mask. Ties in |residual| break toward lower
// column-major index so the score is deterministic.
double jaccard_top_k(const Matrix& residual, const Matrix& mask, std::size_t k);

}  // namespace nmr
