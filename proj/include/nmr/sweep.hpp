#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nmr/dictionary.hpp"
#include "nmr/image_io.hpp"
#include "nmr/occlusion.hpp"
#include "nmr/solver.hpp"
#include "nmr/synthetic.hpp"

namespace nmr {

// One (level, kind, seed, method) cell of an occlusion sweep.
struct SweepRow {
  double level = 0.0;
  std::string kind;    // kind_name() of the occlusion
  std::uint64_t seed = 0;
  std::string method;  // "nmr" or "ridge"
  double recognition_rate = 0.0;
};

struct SweepOptions {
  std::vector<double> levels;
  std::vector<OcclusionKind> kinds;
  std::vector<std::uint64_t> seeds;
  SolverConfig config;       // config.lambda doubles as the ridge baseline's λ
  std::string texture_path;  // required iff kinds includes Texture
  std::string dump_dir;      // when nonempty, dump each cell's first occluded image + residual
};

// Cells run in deterministic order: level → kind → seed, one "nmr" row then
// one "ridge" row per cell. Occlusion placement for test i depends only on
// (seed, i), so cells with the same seed see matched block positions.

// Synthetic variant: the family is regenerated from `seed` for every cell, so
// all cells sharing a seed classify the same images.
std::vector<SweepRow> run_occlusion_sweep(const FamilySpec& family, const SweepOptions& opt);

// Fixed-data variant (e.g. a dataset loaded from manifests).
std::vector<SweepRow> run_occlusion_sweep(const Dictionary& dict,
                                          const std::vector<LabeledImage>& tests,
                                          const SweepOptions& opt);

// Row per cell/method: level,kind,seed,method,recognition_rate
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

}  // namespace nmr
