#include "nmr/cli.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "nmr/baseline.hpp"
#include "nmr/classifier.hpp"
#include "nmr/dictionary.hpp"
#include "nmr/errors.hpp"
#include "nmr/image_io.hpp"
#include "nmr/occlusion.hpp"
#include "nmr/solver.hpp"
#include "nmr/svd.hpp"
#include "nmr/sweep.hpp"
#include "nmr/synthetic.hpp"
#include "nmr/text.hpp"

namespace nmr {
namespace {

// ---- flag-value parsers -----------------------------------------------

// Levels come either as a comma list ("0,0.3,0.5") or an inclusive
// start:step:end range ("0.1:0.1:0.6").
std::vector<double> parse_levels(const std::string& text) {
  std::vector<double> levels;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) {
      fail(ErrorCode::InvalidArgument, "level range must be start:step:end, got '" + text + "'");
    }
    const double start = parse_double(parts[0], "level range start");
    const double step = parse_double(parts[1], "level range step");
    const double end = parse_double(parts[2], "level range end");
    if (!(step > 0.0)) {
      fail(ErrorCode::InvalidArgument, "level range step must be positive");
    }
    // A half-step of slack keeps the endpoint inclusive under rounding.
    for (double v = start; v <= end + 0.5 * step; v += step) {
      levels.push_back(v);
    }
  } else {
    for (const auto& tok : split(text, ',')) {
      levels.push_back(parse_double(tok, "occlusion level"));
    }
  }
  if (levels.empty()) {
    fail(ErrorCode::InvalidArgument, "no occlusion levels given");
  }
  return levels;
}

std::vector<OcclusionKind> parse_kinds(const std::string& text) {
  std::vector<OcclusionKind> kinds;
  for (const auto& tok : split(text, ',')) {
    kinds.push_back(parse_kind(trim(tok)));
  }
  return kinds;
}

// "p=20,q=20,n=10,classes=5,rank=3" plus optional tests=, pert=, scale=.
// n is the total training count and must split evenly across the classes.
FamilySpec parse_synthetic(const std::string& text) {
  FamilySpec spec;
  std::size_t n_total = spec.classes * spec.train_per_class;
  bool tests_given = false;
  std::size_t tests = 0;
  for (const auto& item : split(text, ',')) {
    const auto kv = split(item, '=');
    if (kv.size() != 2) {
      fail(ErrorCode::InvalidArgument, "synthetic spec items must be key=value, got '" + item + "'");
    }
    const std::string key = trim(kv[0]);
    const double value = parse_double(kv[1], "synthetic spec value for " + key);
    const auto as_count = [&](const char* what) {
      if (!(value >= 1.0) || value != std::floor(value)) {
        fail(ErrorCode::InvalidArgument,
             std::string("synthetic ") + what + " must be a positive integer");
      }
      return static_cast<std::size_t>(value);
    };
    if (key == "p") {
      spec.rows = as_count("p");
    } else if (key == "q") {
      spec.cols = as_count("q");
    } else if (key == "n") {
      n_total = as_count("n");
    } else if (key == "classes") {
      spec.classes = as_count("classes");
    } else if (key == "rank") {
      spec.rank = as_count("rank");
    } else if (key == "tests") {
      tests = as_count("tests");
      tests_given = true;
    } else if (key == "pert") {
      spec.perturbation = value;
    } else if (key == "scale") {
      spec.gray_scale = value;
    } else {
      fail(ErrorCode::InvalidArgument, "unknown synthetic spec key '" + key + "'");
    }
  }
  if (spec.classes < 1 || n_total % spec.classes != 0) {
    fail(ErrorCode::InvalidArgument, "synthetic n must be divisible by classes");
  }
  spec.train_per_class = n_total / spec.classes;
  spec.test_per_class = tests_given ? tests : spec.train_per_class;
  return spec;
}

// ---- shared loading helpers ---------------------------------------------

Matrix load_maybe_normalized(const std::string& path, bool normalize) {
  Matrix m = load_image(path);
  return normalize ? normalize_unit_frobenius(m) : m;
}

std::vector<LabeledImage> load_set(const std::string& manifest_path, bool normalize) {
  auto items = load_manifest_images(load_manifest(manifest_path));
  if (normalize) {
    for (auto& item : items) {
      item.image = normalize_unit_frobenius(item.image);
    }
  }
  return items;
}

struct SolverFlags {
  SolverConfig config;

  void attach(CLI::App* cmd) {
    cmd->add_option("--lambda", config.lambda, "ridge weight on the coefficients");
    cmd->add_option("--mu", config.mu, "ADMM penalty parameter");
    cmd->add_option("--eps-abs", config.eps_abs, "absolute termination tolerance");
    cmd->add_option("--eps-rel", config.eps_rel, "relative termination tolerance");
    cmd->add_option("--max-iters", config.max_iters, "iteration cap");
  }
};

void write_solve_outputs(const SolverResult& result, const std::string& out_path,
                         const std::string& residual_path, const std::string& trace_path) {
  write_coefficients_csv(out_path, result.x);
  if (!residual_path.empty()) {
    save_image(result.residual_image, residual_path);
  }
  if (!trace_path.empty()) {
    write_trace_csv(trace_path, result.trace);
  }
}

void report_solve(std::ostream& out, const SolverResult& result) {
  out << "converged=" << (result.converged ? "true" : "false")
      << " iterations=" << result.iterations
      << " objective=" << format_double(result.objective) << "\n";
}

// ---- subcommand bodies ----------------------------------------------------

int cmd_solve(std::ostream& out, const std::string& dict_path, const std::string& test_path,
              const SolverConfig& config, bool normalize, const std::string& out_path,
              const std::string& residual_path, const std::string& trace_path) {
  const Dictionary dict = make_dictionary(load_set(dict_path, normalize));
  const Matrix b = load_maybe_normalized(test_path, normalize);
  const SolverResult result = solve_nmr(dict, b, config);
  write_solve_outputs(result, out_path, residual_path, trace_path);
  report_solve(out, result);
  return 0;
}

int cmd_classify(std::ostream& out, const std::string& train_path, const std::string& test_path,
                 const SolverConfig& config, bool normalize, const std::string& method,
                 const std::string& out_path, const std::string& errors_path) {
  const Dictionary dict = make_dictionary(load_set(train_path, normalize));
  const auto tests = load_set(test_path, normalize);
  BatchResult batch;
  if (method == "nmr") {
    batch = batch_classify(dict, tests, config);
  } else if (method == "ridge") {
    batch = ridge_baseline_batch(dict, tests, config.lambda);
  } else {
    fail(ErrorCode::InvalidArgument, "method must be nmr or ridge, got '" + method + "'");
  }
  if (!out_path.empty()) {
    write_report_csv(out_path, batch);
  }
  if (!errors_path.empty()) {
    write_class_errors_csv(errors_path, batch);
  }
  std::size_t converged = 0;
  for (const auto& report : batch.reports) {
    converged += report.solver.converged ? 1 : 0;
  }
  out << "tests=" << batch.reports.size() << " recognition_rate="
      << format_double(batch.recognition_rate) << " converged=" << converged << "/"
      << batch.reports.size() << "\n";
  return 0;
}

int cmd_occlude(std::ostream& out, const std::string& in_path, const std::string& out_path,
                const std::string& mask_path, double level, const std::string& kind_text,
                std::uint64_t seed, const std::string& texture_path) {
  const Matrix image = load_image(in_path);
  OcclusionSpec spec;
  spec.level = level;
  spec.kind = parse_kind(kind_text);
  spec.seed = seed;
  spec.texture_path = texture_path;
  const OcclusionResult result = occlude(image, spec);
  save_image(result.image, out_path);
  if (!mask_path.empty()) {
    save_image(result.mask, mask_path);
  }
  out << "occluded " << image.rows() << "x" << image.cols() << " level="
      << format_double(level) << " kind=" << kind_name(spec.kind) << "\n";
  return 0;
}

int cmd_bench(std::ostream& out, const std::string& synthetic_text, const std::string& train_path,
              const std::string& test_path, const std::string& levels_text,
              const std::string& kinds_text, std::uint64_t seed_count, const SolverConfig& config,
              bool normalize, const std::string& out_path, const std::string& dump_dir,
              const std::string& texture_path) {
  SweepOptions opt;
  opt.levels = parse_levels(levels_text);
  opt.kinds = parse_kinds(kinds_text);
  if (seed_count < 1) {
    fail(ErrorCode::InvalidArgument, "--seeds must be at least 1");
  }
  opt.seeds.resize(seed_count);
  std::iota(opt.seeds.begin(), opt.seeds.end(), std::uint64_t{1});
  opt.config = config;
  opt.texture_path = texture_path;
  opt.dump_dir = dump_dir;

  std::vector<SweepRow> rows;
  if (!synthetic_text.empty()) {
    rows = run_occlusion_sweep(parse_synthetic(synthetic_text), opt);
  } else if (!train_path.empty() && !test_path.empty()) {
    const Dictionary dict = make_dictionary(load_set(train_path, normalize));
    rows = run_occlusion_sweep(dict, load_set(test_path, normalize), opt);
  } else {
    fail(ErrorCode::InvalidArgument, "bench needs --synthetic or both --train and --test");
  }
  write_sweep_csv(out_path, rows);
  out << "wrote " << rows.size() << " rows to " << out_path << "\n";
  return 0;
}

// Side-by-side residual demo: one occluded test image, solved by both the
// nuclear-norm model and the ridge baseline; writes the reconstruction and
// absolute-residual images and prints both error norms for each method.
int cmd_demo(std::ostream& out, const std::string& synthetic_text, const std::string& train_path,
             const std::string& test_image_path, double level, const std::string& kind_text,
             std::uint64_t seed, const SolverConfig& config, bool normalize,
             const std::string& outdir, const std::string& texture_path) {
  std::optional<Dictionary> dict_storage;
  Matrix test;
  if (!synthetic_text.empty()) {
    SyntheticFamily family = synth_classification_family(parse_synthetic(synthetic_text), seed);
    test = family.tests.front().image;
    dict_storage.emplace(std::move(family.dict));
  } else if (!train_path.empty() && !test_image_path.empty()) {
    dict_storage.emplace(make_dictionary(load_set(train_path, normalize)));
    test = load_maybe_normalized(test_image_path, normalize);
  } else {
    fail(ErrorCode::InvalidArgument,
         "demo-residuals needs --synthetic or both --train and --test-image");
  }
  const Dictionary& dict = *dict_storage;

  OcclusionSpec occ;
  occ.level = level;
  occ.kind = parse_kind(kind_text);
  occ.seed = seed;
  occ.texture_path = texture_path;
  const Matrix corrupted = occlude(test, occ).image;

  std::filesystem::create_directories(outdir);
  const auto path = [&](const char* name) {
    return (std::filesystem::path(outdir) / name).string();
  };
  save_image(test, path("clean.pgm"));
  save_image(corrupted, path("occluded.pgm"));

  const auto abs_image = [](const Matrix& m) {
    Matrix a(m.rows(), m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) {
      for (std::size_t r = 0; r < m.rows(); ++r) {
        a(r, c) = std::fabs(m(r, c));
      }
    }
    return a;
  };
  const auto report = [&](const char* name, const std::vector<double>& x) {
    const Matrix recon = apply_operator(dict, x);
    Matrix residual(corrupted.rows(), corrupted.cols());
    for (std::size_t c = 0; c < residual.cols(); ++c) {
      for (std::size_t r = 0; r < residual.rows(); ++r) {
        residual(r, c) = corrupted(r, c) - recon(r, c);
      }
    }
    save_image(recon, path((std::string(name) + "_reconstruction.pgm").c_str()));
    save_image(abs_image(residual), path((std::string(name) + "_residual.pgm").c_str()));
    out << name << ": nuclear_error=" << format_double(nuclear_norm(residual))
        << " euclidean_error=" << format_double(frobenius_norm(residual)) << "\n";
  };

  const SolverResult nmr_result = solve_nmr(dict, corrupted, config);
  report("nmr", nmr_result.x);
  out << "nmr solve: converged=" << (nmr_result.converged ? "true" : "false")
      << " iterations=" << nmr_result.iterations << "\n";

  const RidgeMap ridge_map = precompute_ridge_map(dict, config.lambda, 1.0);
  report("ridge", ridge_map.apply(vectorize(corrupted)));
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"nuclear-norm matrix regression toolkit"};
  app.require_subcommand(1);

  // solve ------------------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "fit one test image against a dictionary");
  std::string solve_dict, solve_test, solve_out, solve_residual, solve_trace;
  SolverFlags solve_flags;
  bool solve_normalize = false;
  solve->add_option("--dict", solve_dict, "training manifest CSV (path,label)")->required();
  solve->add_option("--test", solve_test, "test image (.pgm or .csv)")->required();
  solve->add_option("--out", solve_out, "coefficient CSV to write")->required();
  solve->add_option("--residual", solve_residual, "residual image to write");
  solve->add_option("--trace", solve_trace, "per-iteration trace CSV to write");
  solve_flags.attach(solve);
  solve->add_flag("--normalize", solve_normalize, "divide every image by its Frobenius norm");

  // classify ---------------------------------------------------------------
  auto* classify_cmd = app.add_subcommand("classify", "classify a manifest of test images");
  std::string cls_train, cls_test, cls_out, cls_errors, cls_method = "nmr";
  SolverFlags cls_flags;
  bool cls_normalize = false;
  classify_cmd->add_option("--train", cls_train, "training manifest CSV")->required();
  classify_cmd->add_option("--test", cls_test, "test manifest CSV")->required();
  classify_cmd->add_option("--out", cls_out, "per-item report CSV to write");
  classify_cmd->add_option("--errors", cls_errors, "per-class error CSV to write");
  classify_cmd->add_option("--method", cls_method, "nmr (default) or ridge");
  cls_flags.attach(classify_cmd);
  classify_cmd->add_flag("--normalize", cls_normalize, "divide every image by its Frobenius norm");

  // occlude ------------------------------------------------------------------
  auto* occlude_cmd = app.add_subcommand("occlude", "stamp a square occlusion onto an image");
  std::string occ_in, occ_out, occ_mask, occ_kind = "black", occ_texture;
  double occ_level = 0.0;
  std::uint64_t occ_seed = 1;
  occlude_cmd->add_option("--in", occ_in, "input image")->required();
  occlude_cmd->add_option("--out", occ_out, "occluded image to write")->required();
  occlude_cmd->add_option("--mask", occ_mask, "0/1 mask image to write");
  occlude_cmd->add_option("--level", occ_level, "fraction of area to cover")->required();
  occlude_cmd->add_option("--kind", occ_kind, "black, random, or texture");
  occlude_cmd->add_option("--seed", occ_seed, "placement seed");
  occlude_cmd->add_option("--texture", occ_texture, "texture image for kind=texture");

  // bench --------------------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "occlusion sweep over levels, kinds, and seeds");
  std::string bench_synth, bench_train, bench_test, bench_levels, bench_kinds = "black";
  std::string bench_out, bench_dump, bench_texture;
  std::uint64_t bench_seeds = 1;
  SolverFlags bench_flags;
  bool bench_normalize = false;
  bench->add_option("--synthetic", bench_synth,
                    "family spec p=,q=,n=,classes=,rank= (optional tests=,pert=,scale=)");
  bench->add_option("--train", bench_train, "training manifest CSV (dataset mode)");
  bench->add_option("--test", bench_test, "test manifest CSV (dataset mode)");
  bench->add_option("--levels", bench_levels, "comma list or start:step:end range")->required();
  bench->add_option("--kinds", bench_kinds, "comma list of black,random,texture");
  bench->add_option("--seeds", bench_seeds, "number of seeds (runs 1..N)");
  bench->add_option("--out", bench_out, "sweep CSV to write")->required();
  bench->add_option("--dump", bench_dump, "directory for per-cell sample images");
  bench->add_option("--texture", bench_texture, "texture image for kind=texture");
  bench_flags.attach(bench);
  bench->add_flag("--normalize", bench_normalize, "divide every image by its Frobenius norm");

  // demo-residuals -------------------------------------------------------------
  auto* demo = app.add_subcommand(
      "demo-residuals", "side-by-side nuclear vs ridge residuals on one occluded image");
  std::string demo_synth, demo_train, demo_test_image, demo_kind = "black", demo_outdir, demo_texture;
  double demo_level = 0.4;
  std::uint64_t demo_seed = 1;
  SolverFlags demo_flags;
  bool demo_normalize = false;
  demo->add_option("--synthetic", demo_synth, "family spec (as in bench)");
  demo->add_option("--train", demo_train, "training manifest CSV");
  demo->add_option("--test-image", demo_test_image, "clean test image to corrupt");
  demo->add_option("--level", demo_level, "occlusion fraction");
  demo->add_option("--kind", demo_kind, "black, random, or texture");
  demo->add_option("--seed", demo_seed, "synthetic/occlusion seed");
  demo->add_option("--outdir", demo_outdir, "directory for the demo images")->required();
  demo->add_option("--texture", demo_texture, "texture image for kind=texture");
  demo_flags.attach(demo);
  demo->add_flag("--normalize", demo_normalize, "divide every image by its Frobenius norm");

  try {
    // CLI11's vector parse consumes arguments from the back.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (solve->parsed()) {
      return cmd_solve(out, solve_dict, solve_test, solve_flags.config, solve_normalize, solve_out,
                       solve_residual, solve_trace);
    }
    if (classify_cmd->parsed()) {
      return cmd_classify(out, cls_train, cls_test, cls_flags.config, cls_normalize, cls_method,
                          cls_out, cls_errors);
    }
    if (occlude_cmd->parsed()) {
      return cmd_occlude(out, occ_in, occ_out, occ_mask, occ_level, occ_kind, occ_seed,
                         occ_texture);
    }
    if (bench->parsed()) {
      return cmd_bench(out, bench_synth, bench_train, bench_test, bench_levels, bench_kinds,
                       bench_seeds, bench_flags.config, bench_normalize, bench_out, bench_dump,
                       bench_texture);
    }
    if (demo->parsed()) {
      return cmd_demo(out, demo_synth, demo_train, demo_test_image, demo_level, demo_kind,
                      demo_seed, demo_flags.config, demo_normalize, demo_outdir, demo_texture);
    }
  } catch (const Error& e) {
    err << "error[" << e.code_name() << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error[internal]: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace nmr
