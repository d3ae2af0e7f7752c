#include "nmr/occlusion.hpp"

#include <algorithm>
#include <cmath>

#include "nmr/errors.hpp"
#include "nmr/image_io.hpp"
#include "nmr/rng.hpp"

namespace nmr {

OcclusionResult occlude(const Matrix& m, const OcclusionSpec& spec) {
  Matrix texture;
  if (spec.kind == OcclusionKind::Texture) {
    if (spec.texture_path.empty())
      fail(ErrorCode::InvalidArgument, "occlude: texture kind needs a texture path");
    texture = load_image(spec.texture_path);
    return occlude(m, spec, &texture);
  }
  return occlude(m, spec, nullptr);
}

OcclusionResult occlude(const Matrix& m, const OcclusionSpec& spec, const Matrix* texture) {
  if (!(spec.level >= 0.0 && spec.level <= 1.0))
    fail(ErrorCode::InvalidArgument,
         "occlude: level must be in [0,1], got " + std::to_string(spec.level));
  const std::size_t p = m.rows();
  const std::size_t q = m.cols();

  OcclusionResult out;
  out.image = m;
  out.mask = Matrix(p, q);

  std::size_t side = static_cast<std::size_t>(
      std::llround(std::sqrt(spec.level * static_cast<double>(p) * static_cast<double>(q))));
  side = std::min({side, p, q});
  if (side == 0) return out;

  CounterRng rng(spec.seed);
  const std::size_t row0 = rng.next_below(p - side + 1);
  const std::size_t col0 = rng.next_below(q - side + 1);

  std::size_t trow0 = 0, tcol0 = 0;
  if (spec.kind == OcclusionKind::Texture) {
    if (texture == nullptr)
      fail(ErrorCode::InvalidArgument, "occlude: texture kind needs a texture image");
    if (texture->rows() < side || texture->cols() < side)
      fail(ErrorCode::InvalidArgument,
           "occlude: texture " + std::to_string(texture->rows()) + "x" +
               std::to_string(texture->cols()) + " is smaller than the " + std::to_string(side) +
               "x" + std::to_string(side) + " block");
    trow0 = rng.next_below(texture->rows() - side + 1);
    tcol0 = rng.next_below(texture->cols() - side + 1);
  }

  for (std::size_t r = 0; r < side; ++r) {
    for (std::size_t c = 0; c < side; ++c) {
      double value = 0.0;
      switch (spec.kind) {
        case OcclusionKind::Black: value = 0.0; break;
        case OcclusionKind::RandomNoise: value = rng.next_range(0.0, 255.0); break;
        case OcclusionKind::Texture: value = (*texture)(trow0 + r, tcol0 + c); break;
      }
      out.image(row0 + r, col0 + c) = value;
      out.mask(row0 + r, col0 + c) = 1.0;
    }
  }
  return out;
}

const char* kind_name(OcclusionKind kind) {
  switch (kind) {
    case OcclusionKind::Black: return "black";
    case OcclusionKind::RandomNoise: return "random";
    case OcclusionKind::Texture: return "texture";
  }
  return "unknown";
}

OcclusionKind parse_kind(const std::string& name) {
  if (name == "black") return OcclusionKind::Black;
  if (name == "random") return OcclusionKind::RandomNoise;
  if (name == "texture") return OcclusionKind::Texture;
  fail(ErrorCode::InvalidArgument, "unknown occlusion kind '" + name + "' (black|random|texture)");
}

double jaccard_top_k(const Matrix& residual, const Matrix& mask, std::size_t k) {
  require_same_shape(residual, mask, "jaccard_top_k");
  const std::size_t total = residual.size();
  if (k > total) fail(ErrorCode::InvalidArgument, "jaccard_top_k: k exceeds pixel count");

  std::vector<std::size_t> order(total);
  for (std::size_t i = 0; i < total; ++i) order[i] = i;
  const double* r = residual.data();
  std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                   [r](std::size_t a, std::size_t b) {
                     const double fa = std::fabs(r[a]), fb = std::fabs(r[b]);
                     return fa > fb || (fa == fb && a < b);
                   });

  std::vector<char> top(total, 0);
  for (std::size_t i = 0; i < k; ++i) top[order[i]] = 1;

  const double* m = mask.data();
  std::size_t inter = 0, uni = 0;
  for (std::size_t i = 0; i < total; ++i) {
    const bool in_top = top[i] != 0;
    const bool in_mask = m[i] != 0.0;
    if (in_top && in_mask) ++inter;
    if (in_top || in_mask) ++uni;
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace nmr
