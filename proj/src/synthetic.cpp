#include "nmr/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "nmr/errors.hpp"
#include "nmr/kernels.hpp"
#include "nmr/rng.hpp"

namespace nmr {
namespace {

// Geometry of the generated images, as fractions of gray_scale. Factor 0
// carries the ambient brightness (products land around 0.3..0.75 of the
// scale); higher factors are signed patterns about a quarter of the scale
// deep that distinguish the classes. The pattern depth is what makes the
// classes robustly separable under partial occlusion.
constexpr double kAmbientRowLo = 0.8, kAmbientRowHi = 1.2;
constexpr double kAmbientColLo = 0.40, kAmbientColHi = 0.61;
constexpr double kPatternRowLo = -1.0, kPatternRowHi = 1.0;
constexpr double kPatternColLo = -0.25, kPatternColHi = 0.25;
constexpr double kAmbientWeightLo = 0.8, kAmbientWeightHi = 1.2;
constexpr double kPatternWeightLo = 0.5, kPatternWeightHi = 1.5;

// Smooth pseudo-random profile: a random walk flattened by two moving-average
// passes, then mapped affinely onto [lo, hi]. Uses only +,-,*,/ so the values
// are bit-reproducible everywhere.
std::vector<double> smooth_factor(CounterRng& rng, std::size_t len, double lo, double hi) {
  std::vector<double> v(len);
  double walk = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    walk += rng.next_range(-1.0, 1.0);
    v[i] = walk;
  }
  std::vector<double> s(len);
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t i = 0; i < len; ++i) {
      const std::size_t a = i >= 2 ? i - 2 : 0;
      const std::size_t b = std::min(len - 1, i + 2);
      double acc = 0.0;
      for (std::size_t j = a; j <= b; ++j) acc += v[j];
      s[i] = acc / static_cast<double>(b - a + 1);
    }
    v.swap(s);
  }
  const auto [mn_it, mx_it] = std::minmax_element(v.begin(), v.end());
  const double mn = *mn_it, span = *mx_it - *mn_it;
  if (span < 1e-12) {
    std::fill(v.begin(), v.end(), 0.5 * (lo + hi));
  } else {
    for (double& x : v) x = lo + (hi - lo) * (x - mn) / span;
  }
  return v;
}

struct ClassModel {
  std::vector<std::vector<double>> u;  // rank row profiles, length rows
  std::vector<std::vector<double>> v;  // rank column profiles, length cols
};

ClassModel make_class_model(const CounterRng& master, std::size_t k, std::size_t rows,
                            std::size_t cols, std::size_t rank, double gray_scale) {
  CounterRng rng = master.fork(10'000 + k);
  ClassModel m;
  m.u.reserve(rank);
  m.v.reserve(rank);
  for (std::size_t t = 0; t < rank; ++t) {
    const bool ambient = (t == 0);
    m.u.push_back(smooth_factor(rng, rows, ambient ? kAmbientRowLo : kPatternRowLo,
                                ambient ? kAmbientRowHi : kPatternRowHi));
    m.v.push_back(smooth_factor(rng, cols, gray_scale * (ambient ? kAmbientColLo : kPatternColLo),
                                gray_scale * (ambient ? kAmbientColHi : kPatternColHi)));
  }
  return m;
}

Matrix class_sample(const ClassModel& model, CounterRng& rng, std::size_t rows, std::size_t cols,
                    double perturbation, double gray_scale) {
  const auto& kern = kernels::active();
  Matrix img(rows, cols);
  for (std::size_t t = 0; t < model.u.size(); ++t) {
    const bool ambient = (t == 0);
    const double w = ambient ? rng.next_range(kAmbientWeightLo, kAmbientWeightHi)
                             : rng.next_range(kPatternWeightLo, kPatternWeightHi);
    for (std::size_t c = 0; c < cols; ++c) {
      kern.axpy(w * model.v[t][c], model.u[t].data(), img.col(c), rows);
    }
  }
  if (perturbation > 0.0) {
    // uniform(-amp, amp) has RMS = perturbation*gray_scale
    const double amp = perturbation * gray_scale * std::sqrt(3.0);
    for (std::size_t c = 0; c < cols; ++c) {
      double* col = img.col(c);
      for (std::size_t r = 0; r < rows; ++r) col[r] += rng.next_range(-amp, amp);
    }
  }
  return img;
}

void check_geometry(std::size_t rows, std::size_t cols, std::size_t rank, double perturbation,
                    double gray_scale) {
  if (rows < 8 || cols < 8) {
    fail(ErrorCode::InvalidArgument, "synthetic images must be at least 8x8");
  }
  if (rank < 1 || rank > std::min(rows, cols)) {
    fail(ErrorCode::InvalidArgument, "synthetic rank must be in [1, min(rows, cols)]");
  }
  if (!(perturbation >= 0.0) || !std::isfinite(perturbation)) {
    fail(ErrorCode::InvalidArgument, "synthetic perturbation must be finite and >= 0");
  }
  if (!(gray_scale > 0.0) || !std::isfinite(gray_scale)) {
    fail(ErrorCode::InvalidArgument, "synthetic gray_scale must be finite and positive");
  }
}

}  // namespace

std::string class_label(std::size_t k) { return "c" + std::to_string(k); }

SyntheticProblem synth_lowrank_problem(const SynthSpec& spec, const OcclusionSpec& occlusion,
                                       std::uint64_t seed) {
  check_geometry(spec.rows, spec.cols, spec.rank, spec.perturbation, spec.gray_scale);
  if (spec.classes < 1 || spec.samples < spec.classes) {
    fail(ErrorCode::InvalidArgument, "synthetic spec needs samples >= classes >= 1");
  }

  const CounterRng master(seed);
  std::vector<ClassModel> models;
  models.reserve(spec.classes);
  for (std::size_t k = 0; k < spec.classes; ++k) {
    models.push_back(make_class_model(master, k, spec.rows, spec.cols, spec.rank, spec.gray_scale));
  }

  std::vector<Matrix> images;
  std::vector<std::string> labels;
  images.reserve(spec.samples);
  labels.reserve(spec.samples);
  for (std::size_t j = 0; j < spec.samples; ++j) {
    const std::size_t k = j % spec.classes;
    CounterRng rng = master.fork(100'000 + j);
    images.push_back(class_sample(models[k], rng, spec.rows, spec.cols, spec.perturbation, spec.gray_scale));
    labels.push_back(class_label(k));
  }
  Dictionary dict(std::move(images), std::move(labels));

  const std::size_t target = CounterRng(master.derive_seed(4)).next_below(spec.classes);
  CounterRng xr = master.fork(5);
  std::vector<double> x(spec.samples, 0.0);
  double total = 0.0;
  for (std::size_t j = 0; j < spec.samples; ++j) {
    if (j % spec.classes == target) {
      x[j] = xr.next_range(0.2, 1.0);
      total += x[j];
    }
  }
  for (double& xi : x) xi /= total;

  Matrix b_clean = apply_operator(dict, x);
  OcclusionResult occ = occlude(b_clean, occlusion);

  return SyntheticProblem{std::move(dict), std::move(x),         std::move(b_clean),
                          std::move(occ.image), std::move(occ.mask), seed,
                          class_label(target)};
}

SyntheticFamily synth_classification_family(const FamilySpec& spec, std::uint64_t seed) {
  check_geometry(spec.rows, spec.cols, spec.rank, spec.perturbation, spec.gray_scale);
  if (spec.classes < 2) {
    fail(ErrorCode::InvalidArgument, "classification family needs at least 2 classes");
  }
  if (spec.train_per_class < 1 || spec.test_per_class < 1) {
    fail(ErrorCode::InvalidArgument, "classification family needs at least one train and one test image per class");
  }

  const CounterRng master(seed);
  std::vector<ClassModel> models;
  models.reserve(spec.classes);
  for (std::size_t k = 0; k < spec.classes; ++k) {
    models.push_back(make_class_model(master, k, spec.rows, spec.cols, spec.rank, spec.gray_scale));
  }

  std::vector<Matrix> images;
  std::vector<std::string> labels;
  images.reserve(spec.classes * spec.train_per_class);
  labels.reserve(spec.classes * spec.train_per_class);
  std::size_t train_index = 0;
  for (std::size_t k = 0; k < spec.classes; ++k) {
    for (std::size_t i = 0; i < spec.train_per_class; ++i, ++train_index) {
      CounterRng rng = master.fork(100'000 + train_index);
      images.push_back(class_sample(models[k], rng, spec.rows, spec.cols, spec.perturbation, spec.gray_scale));
      labels.push_back(class_label(k));
    }
  }

  SyntheticFamily family{Dictionary(std::move(images), std::move(labels)), {}};
  family.tests.reserve(spec.classes * spec.test_per_class);
  std::size_t test_index = 0;
  for (std::size_t k = 0; k < spec.classes; ++k) {
    for (std::size_t i = 0; i < spec.test_per_class; ++i, ++test_index) {
      CounterRng rng = master.fork(200'000 + test_index);
      family.tests.push_back(LabeledImage{
          class_sample(models[k], rng, spec.rows, spec.cols, spec.perturbation, spec.gray_scale),
          class_label(k)});
    }
  }
  return family;
}

}  // namespace nmr
