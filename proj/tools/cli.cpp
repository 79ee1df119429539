// Copyright 2026 The Shadowcarve Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include "shadowcarve/bench.hpp"
#include "shadowcarve/carve.hpp"
#include "shadowcarve/io.hpp"
#include "shadowcarve/lp.hpp"
#include "shadowcarve/mesh.hpp"

namespace shadowcarve::cli {

namespace {

namespace fs = std::filesystem;

/// Invalid combination of flags detected after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string p_path;
  std::string q_path;
  std::string r_path;
  std::size_t n = 32;
  std::size_t supersample = 8;
  double lambda = 0.5;
  double epsilon = 1e-6;
  std::string solver = "carve";
  std::string down_axis = "K";
  std::string out_dir = "out";
  bool full_matrix = false;
  std::size_t lp_cap = kDefaultLpSizeCap;
  std::string lp_dump;
};

struct ProjectConfig {
  std::string grid_path;
  std::string axis = "I";
  std::string out_path;
  std::string format;
};

struct BenchConfig {
  std::string solver = "carve";
  std::vector<std::size_t> sizes;
  std::size_t repetitions = 3;
  std::uint64_t seed = 1;
  double density = 0.0;
  std::size_t lp_cap = kDefaultLpSizeCap;
  std::string csv_path;
};

Bitmap load_bitmap(const std::string& path) {
  const std::string data = read_file(path);
  try {
    return read_bitmap(data, detect_bitmap_format(data));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.offset());
  }
}

std::string fixed(double value, int digits = 6) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  return buffer;
}

void append_similarities(std::ostringstream& report, const std::string& prefix,
                         const std::map<Axis, double>& values) {
  static constexpr const char* kPlaneName[] = {"P", "Q", "R"};
  for (const auto& [axis, value] : values) {
    report << prefix << kPlaneName[static_cast<int>(axis)] << ": "
           << fixed(value) << "\n";
  }
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.r_path.empty() && cfg.q_path.empty()) {
    throw UsageError("--r requires --q");
  }
  if (cfg.n == 0) throw UsageError("--n must be at least 1");
  if (cfg.supersample == 0) throw UsageError("--supersample must be at least 1");
  const SolverKind solver = parse_solver(cfg.solver);
  const Axis down = parse_axis(cfg.down_axis);
  ThresholdConfig threshold{cfg.lambda, cfg.epsilon};
  threshold.validate();
  if (solver == SolverKind::Lp && cfg.n > cfg.lp_cap) {
    throw LpSizeCapError("LP solver refuses n = " + std::to_string(cfg.n) +
                         " (cap " + std::to_string(cfg.lp_cap) +
                         "); use --solver carve or raise --lp-cap");
  }

  TargetSet inputs;
  inputs.p = load_bitmap(cfg.p_path);
  if (!cfg.q_path.empty()) inputs.q = load_bitmap(cfg.q_path);
  if (!cfg.r_path.empty()) inputs.r = load_bitmap(cfg.r_path);

  // Each input is resampled on its own, so inputs may differ in size.
  TargetSet targets;
  targets.p = resample_nearest(inputs.p, cfg.n);
  if (inputs.q) targets.q = resample_nearest(*inputs.q, cfg.n);
  if (inputs.r) targets.r = resample_nearest(*inputs.r, cfg.n);

  const fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());

  using Clock = std::chrono::steady_clock;
  std::ostringstream report;
  report << "solver: " << to_string(solver) << "\n";
  report << "n: " << cfg.n << "\n";
  report << "supersample: " << cfg.supersample << "\n";
  if (solver == SolverKind::Lp) {
    report << "lambda: " << fixed(cfg.lambda) << "\n";
    report << "epsilon: " << cfg.epsilon << "\n";
  }

  PipelineOptions pipeline;
  pipeline.size_cap = cfg.lp_cap;
  pipeline.build.full_matrix = cfg.full_matrix;
  if (solver == SolverKind::Lp && !cfg.lp_dump.empty()) {
    write_file(cfg.lp_dump, write_lp_text(build_lp(targets, pipeline.build)));
  }

  const auto solve_start = Clock::now();
  CarveReport coarse;
  try {
    coarse = solver == SolverKind::Carve
                 ? carve3(targets)
                 : solve_pipeline(targets, threshold, pipeline);
  } catch (const InfeasibleError&) {
    report << "status: infeasible\n";
    report << "consistent: false\n";
    write_file(dir / "report.txt", report.str());
    out << report.str();
    return kInconsistent;
  }
  const double solve_seconds =
      std::chrono::duration<double>(Clock::now() - solve_start).count();

  report << "status: solved\n";
  report << "consistent: " << (coarse.consistent ? "true" : "false") << "\n";
  append_similarities(report, "similarity_", coarse.per_plane_similarity);
  report << "voxels: " << coarse.grid.count() << "\n";
  write_file(dir / "coarse.vgrid", write_vgrid(coarse.grid));

  VoxelGrid final_grid = coarse.grid;
  double antialias_seconds = 0.0;
  if (cfg.supersample > 1) {
    const std::size_t hi = cfg.n * cfg.supersample;
    TargetSet targets_hi;
    targets_hi.p = resample_nearest(inputs.p, hi);
    if (inputs.q) targets_hi.q = resample_nearest(*inputs.q, hi);
    if (inputs.r) targets_hi.r = resample_nearest(*inputs.r, hi);
    const auto aa_start = Clock::now();
    final_grid = antialias_carve(coarse.grid, targets_hi, cfg.supersample);
    antialias_seconds =
        std::chrono::duration<double>(Clock::now() - aa_start).count();
    CarveReport fine = make_report(final_grid, targets_hi);
    append_similarities(report, "antialiased_similarity_",
                        fine.per_plane_similarity);
    report << "antialiased_voxels: " << final_grid.count() << "\n";
    write_file(dir / "antialiased.vgrid", write_vgrid(final_grid));
  }

  const Mesh mesh = extract_surface(final_grid);
  write_file(dir / "model.obj", write_obj(mesh));
  report << "mesh_vertices: " << mesh.vertices.size() << "\n";
  report << "mesh_faces: " << mesh.faces.size() << "\n";

  const ComponentReport parts =
      connected_components(orient_down(final_grid, down));
  report << "down_axis: " << to_string(down) << "\n";
  report << "components: " << parts.component_count << "\n";
  report << "floating_components: " << parts.floating_count << "\n";
  report << "printable: " << (parts.floating_count == 0 ? "true" : "false")
         << "\n";
  report << "solve_seconds: " << fixed(solve_seconds) << "\n";
  report << "antialias_seconds: " << fixed(antialias_seconds) << "\n";

  write_file(dir / "report.txt", report.str());
  out << report.str();
  return coarse.consistent ? kConsistent : kInconsistent;
}

int cmd_project(const ProjectConfig& cfg, std::ostream& out) {
  const Axis axis = parse_axis(cfg.axis);
  BitmapFormat format = BitmapFormat::PlainPbm;
  if (!cfg.format.empty()) {
    format = parse_bitmap_format(cfg.format);
  } else if (fs::path(cfg.out_path).extension() == ".txt") {
    format = BitmapFormat::TextGrid;
  }
  const HyperGrid loaded = read_vgrid(read_file(cfg.grid_path));
  if (loaded.dim() != 3) {
    throw ParseError(cfg.grid_path + ": expected a three-dimensional grid", 6);
  }
  const Bitmap shadow = project(loaded.to_voxels(), axis);
  write_file(cfg.out_path, write_bitmap(shadow, format));
  out << "wrote " << cfg.out_path << " (" << shadow.size() << "x"
      << shadow.size() << ", " << shadow.count() << " lit)\n";
  return kConsistent;
}

int cmd_bench(const BenchConfig& cfg, std::ostream& out) {
  const SolverKind solver = parse_solver(cfg.solver);
  std::vector<std::size_t> sizes = cfg.sizes;
  if (sizes.empty()) {
    sizes = solver == SolverKind::Carve
                ? std::vector<std::size_t>{64, 128, 256, 512}
                : std::vector<std::size_t>{4, 6, 8, 10, 12};
  }
  BenchOptions options;
  options.repetitions = cfg.repetitions;
  options.lp_size_cap = cfg.lp_cap;
  const auto samples = time_solver(
      solver, sizes, random_consistent_targets(cfg.seed, cfg.density), options);

  std::optional<ExponentFit> fit;
  if (samples.size() >= 3) fit = fit_exponent(samples);
  out << summarize(samples, fit ? &*fit : nullptr);
  if (!cfg.csv_path.empty()) write_file(cfg.csv_path, samples_to_csv(samples));
  return kConsistent;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Reconstruct voxel sculptures whose shadows match target images"};
  app.require_subcommand(1);

  RunConfig solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve targets into voxels, anti-alias and mesh");
  solve_cmd->add_option("--p", solve.p_path, "Target shadow orthogonal to I (mandatory)")->required();
  solve_cmd->add_option("--q", solve.q_path, "Target shadow orthogonal to J");
  solve_cmd->add_option("--r", solve.r_path, "Target shadow orthogonal to K (needs --q)");
  solve_cmd->add_option("--n", solve.n, "Working resolution")->capture_default_str();
  solve_cmd->add_option("--supersample", solve.supersample, "Anti-alias supersample factor N")->capture_default_str();
  solve_cmd->add_option("--lambda", solve.lambda, "LP binarization threshold")->capture_default_str();
  solve_cmd->add_option("--epsilon", solve.epsilon, "LP feasibility tolerance")->capture_default_str();
  solve_cmd->add_option("--solver", solve.solver, "carve or lp")->capture_default_str();
  solve_cmd->add_option("--down-axis", solve.down_axis, "Axis pointing to the build plate (I, J or K)")->capture_default_str();
  solve_cmd->add_option("--out", solve.out_dir, "Output directory")->capture_default_str();
  solve_cmd->add_flag("--full-matrix", solve.full_matrix, "Keep never-binding LP rows");
  solve_cmd->add_option("--lp-cap", solve.lp_cap, "Largest n accepted by the LP solver")->capture_default_str();
  solve_cmd->add_option("--lp-dump", solve.lp_dump, "Write the LP in CPLEX LP text format");

  ProjectConfig project_cfg;
  CLI::App* project_cmd = app.add_subcommand("project", "Recompute a shadow from a saved grid");
  project_cmd->add_option("--grid", project_cfg.grid_path, "Input .vgrid file")->required();
  project_cmd->add_option("--axis", project_cfg.axis, "Light direction (I, J or K)")->capture_default_str();
  project_cmd->add_option("--out", project_cfg.out_path, "Output bitmap")->required();
  project_cmd->add_option("--format", project_cfg.format, "p1, p4 or textgrid (default from extension)");

  BenchConfig bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Time a solver across sizes and fit the runtime exponent");
  bench_cmd->add_option("--solver", bench.solver, "carve or lp")->capture_default_str();
  bench_cmd->add_option("--sizes", bench.sizes, "Ascending sizes")->delimiter(',');
  bench_cmd->add_option("--reps", bench.repetitions, "Repetitions per size (>= 3)")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Random seed")->capture_default_str();
  bench_cmd->add_option("--density", bench.density, "Voxel density (0 = half-coverage default)")->capture_default_str();
  bench_cmd->add_option("--lp-cap", bench.lp_cap, "Largest n accepted by the LP solver")->capture_default_str();
  bench_cmd->add_option("--csv", bench.csv_path, "Write samples as CSV");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kConsistent;
    }
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(solve, out);
    if (project_cmd->parsed()) return cmd_project(project_cfg, out);
    return cmd_bench(bench, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const LpSizeCapError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ContractError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const ParseError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace shadowcarve::cli
