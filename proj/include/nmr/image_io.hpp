#pragma once

#include <string>
#include <vector>

#include "nmr/dictionary.hpp"
#include "nmr/matrix.hpp"

namespace nmr {

// Formats are picked by extension: .pgm is binary 8-bit P5 (maxval must be
// 255; pixels map to reals 0..255), .csv is comma-separated decimal rows.
// CSV round-trips exactly; PGM round-trips after clamping to [0,255] and
// rounding to integers.
Matrix load_image(const std::string& path);
void save_image(const Matrix& m, const std::string& path);

struct ManifestEntry {
  std::string path;  // relative to the manifest's directory
  std::string label;
};

struct Manifest {
  std::string root;
  std::vector<ManifestEntry> entries;
};

// Manifest CSV: one `path,label` per line, `#` starts a comment line.
Manifest load_manifest(const std::string& path);

// Loads every entry and enforces that all images share one shape.
std::vector<LabeledImage> load_manifest_images(const Manifest& manifest);

// M / ‖M‖_F, the opt-in preprocessing for datasets with wild intensity
// ranges; rejects an all-zero image.
Matrix normalize_unit_frobenius(const Matrix& m);

}  // namespace nmr
