#include "nmr/sweep.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>

#include "nmr/baseline.hpp"
#include "nmr/classifier.hpp"
#include "nmr/errors.hpp"
#include "nmr/rng.hpp"
#include "nmr/text.hpp"

namespace nmr {
namespace {

void check_options(const SweepOptions& opt) {
  if (opt.levels.empty() || opt.kinds.empty() || opt.seeds.empty())
    fail(ErrorCode::InvalidArgument, "sweep: levels, kinds and seeds must all be nonempty");
  for (double level : opt.levels) {
    if (!(level >= 0.0 && level <= 1.0))
      fail(ErrorCode::InvalidArgument, "sweep: occlusion level " + format_double(level) +
                                           " outside [0, 1]");
  }
}

std::optional<Matrix> maybe_texture(const SweepOptions& opt) {
  for (OcclusionKind kind : opt.kinds) {
    if (kind == OcclusionKind::Texture) {
      if (opt.texture_path.empty())
        fail(ErrorCode::InvalidArgument, "sweep: texture kind needs a texture image path");
      return load_image(opt.texture_path);
    }
  }
  return std::nullopt;
}

std::vector<LabeledImage> occlude_tests(const std::vector<LabeledImage>& tests, double level,
                                        OcclusionKind kind, std::uint64_t seed,
                                        const Matrix* texture) {
  const CounterRng cell(seed);
  std::vector<LabeledImage> out;
  out.reserve(tests.size());
  for (std::size_t i = 0; i < tests.size(); ++i) {
    OcclusionSpec spec;
    spec.level = level;
    spec.kind = kind;
    spec.seed = cell.derive_seed(i);
    out.push_back(LabeledImage{occlude(tests[i].image, spec, texture).image, tests[i].label});
  }
  return out;
}

void dump_cell(const std::string& dir, double level, OcclusionKind kind, std::uint64_t seed,
               const Matrix& occluded, const Matrix& residual) {
  std::filesystem::create_directories(dir);
  const std::string stem = std::string(kind_name(kind)) + "_L" + format_double(level) + "_s" +
                           std::to_string(seed);
  save_image(occluded, dir + "/" + stem + "_occluded.csv");
  save_image(residual, dir + "/" + stem + "_residual.csv");
}

void run_cell(const Dictionary& dict, const std::vector<LabeledImage>& tests,
              const RidgeMap& nmr_map, const RidgeMap& ridge_map, double level, OcclusionKind kind,
              std::uint64_t seed, const Matrix* texture, const SweepOptions& opt,
              std::vector<SweepRow>& rows) {
  const auto occluded = occlude_tests(tests, level, kind, seed, texture);
  const BatchResult nmr = batch_classify(dict, nmr_map, occluded, opt.config);
  const BatchResult ridge = ridge_baseline_batch(dict, ridge_map, occluded, opt.config.lambda);
  if (!opt.dump_dir.empty())
    dump_cell(opt.dump_dir, level, kind, seed, occluded.front().image,
              nmr.reports.front().solver.residual_image);
  rows.push_back(SweepRow{level, kind_name(kind), seed, "nmr", nmr.recognition_rate});
  rows.push_back(SweepRow{level, kind_name(kind), seed, "ridge", ridge.recognition_rate});
}

}  // namespace

std::vector<SweepRow> run_occlusion_sweep(const FamilySpec& family, const SweepOptions& opt) {
  check_options(opt);
  const auto texture = maybe_texture(opt);
  std::vector<SweepRow> rows;
  rows.reserve(opt.levels.size() * opt.kinds.size() * opt.seeds.size() * 2);
  for (double level : opt.levels) {
    for (OcclusionKind kind : opt.kinds) {
      for (std::uint64_t seed : opt.seeds) {
        const SyntheticFamily data = synth_classification_family(family, seed);
        const RidgeMap nmr_map =
            precompute_ridge_map(data.dict, opt.config.lambda, opt.config.mu);
        const RidgeMap ridge_map = opt.config.mu == 1.0
                                       ? nmr_map
                                       : precompute_ridge_map(data.dict, opt.config.lambda, 1.0);
        run_cell(data.dict, data.tests, nmr_map, ridge_map, level, kind, seed,
                 texture ? &*texture : nullptr, opt, rows);
      }
    }
  }
  return rows;
}

std::vector<SweepRow> run_occlusion_sweep(const Dictionary& dict,
                                          const std::vector<LabeledImage>& tests,
                                          const SweepOptions& opt) {
  check_options(opt);
  if (tests.empty()) fail(ErrorCode::InvalidArgument, "sweep: empty test set");
  const auto texture = maybe_texture(opt);
  const RidgeMap nmr_map = precompute_ridge_map(dict, opt.config.lambda, opt.config.mu);
  const RidgeMap ridge_map =
      opt.config.mu == 1.0 ? nmr_map : precompute_ridge_map(dict, opt.config.lambda, 1.0);
  std::vector<SweepRow> rows;
  rows.reserve(opt.levels.size() * opt.kinds.size() * opt.seeds.size() * 2);
  for (double level : opt.levels) {
    for (OcclusionKind kind : opt.kinds) {
      for (std::uint64_t seed : opt.seeds) {
        run_cell(dict, tests, nmr_map, ridge_map, level, kind, seed,
                 texture ? &*texture : nullptr, opt, rows);
      }
    }
  }
  return rows;
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::Io, "cannot open for writing: " + path);
  out << "level,kind,seed,method,recognition_rate\n";
  for (const auto& row : rows) {
    out << format_double(row.level) << ',' << row.kind << ',' << row.seed << ',' << row.method
        << ',' << format_double(row.recognition_rate) << '\n';
  }
  if (!out.flush()) fail(ErrorCode::Io, "write failed: " + path);
}

}  // namespace nmr
