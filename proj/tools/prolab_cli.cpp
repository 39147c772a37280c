#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "json_io.hpp"
#include "prolab/data.hpp"
#include "prolab/difference.hpp"
#include "prolab/gamut.hpp"
#include "prolab/noise.hpp"
#include "prolab/optimizer.hpp"
#include "prolab/parallel.hpp"
#include "prolab/plotdata.hpp"
#include "prolab/table1.hpp"

using namespace prolab;
using io::json;

namespace {

constexpr int kExitPrecondition = 2;
constexpr int kExitNumerical = 3;

ColorSpaceId space_arg(const std::string& s) {
  const auto id = parse_space(s);
  if (!id) throw Error(ErrorCode::InvalidArgument, "unknown colour space '" + s + "'");
  return *id;
}

Vec3d triple_arg(const std::vector<double>& v, const char* what) {
  if (v.size() != 3) throw Error(ErrorCode::InvalidArgument, std::string(what) + " needs 3 values");
  return {v[0], v[1], v[2]};
}

/// Output stream: the file named by `path`, or stdout when empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    }
  }
  std::ostream& get() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<std::vector<double>> read_rows(const std::string& path, std::size_t width) {
  auto rows = read_numeric_csv(path);
  for (const auto& r : rows) {
    if (r.size() < width) {
      throw Error(ErrorCode::InvalidArgument,
                  path + ": expected " + std::to_string(width) + " columns per row");
    }
  }
  return rows;
}

struct Common {
  std::vector<double> white;
  std::string config;
  unsigned threads = 0;

  io::ModelConfig model() const {
    io::ModelConfig c;
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + config);
      json j;
      try {
        in >> j;
      } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("malformed config: ") + e.what());
      }
      c = io::config_from_json(j);
    }
    if (!white.empty()) c.white = WhitePoint(triple_arg(white, "--white"));
    return c;
  }

  ColorSpaces spaces() const {
    const io::ModelConfig c = model();
    ColorSpaces::Options o;
    o.white = c.white;
    if (c.has_mu) o.prolab = build_p(c.mu, c.white);
    return ColorSpaces(o);
  }
};

void print_triple(std::ostream& out, const Vec3d& v) {
  out << std::setprecision(17) << v(0) << ',' << v(1) << ',' << v(2) << '\n';
}

json constants_json() {
  const ReferenceMatrices ref = reference_matrices();
  const MetricParams mu = MetricParams::published();
  const WhitePoint d65 = WhitePoint::d65();
  const Cam16ViewingConditions vc;
  const NoiseModel nm;
  json key = json::array();
  for (const auto& k : default_key_points()) key.push_back(io::vector_to_json(k));
  return {
      {"mu", io::vector_to_json(mu.mu)},
      {"white_d65", io::vector_to_json(d65.xyz())},
      {"M", io::homography_to_json(ref.m)},
      {"Q_printed", io::homography_to_json(ref.q)},
      {"P_printed", io::homography_to_json(ref.p)},
      {"Q_built", io::homography_to_json(build_q(mu, d65))},
      {"P_built", io::homography_to_json(build_p(mu, d65))},
      {"constraints", io::vector_to_json(constraint_values(mu))},
      {"key_points", key},
      {"D2_linrgb_to_xyz", io::matrix_to_json(linrgb_to_xyz_matrix())},
      {"D1_devicergb_to_linrgb", io::matrix_to_json(devicergb_to_linrgb_matrix())},
      {"Dinv_devicergb_to_xyz", io::matrix_to_json(devicergb_to_xyz_matrix())},
      {"lms_hpe", io::matrix_to_json(hpe_lms_matrix())},
      {"noise", {{"g", nm.g}, {"var_eps", nm.var_eps}}},
      {"cam16",
       {{"white", io::vector_to_json(vc.white)},
        {"adapting_luminance", vc.adapting_luminance},
        {"background_luminance", vc.background_luminance},
        {"F", vc.f},
        {"c", vc.c},
        {"Nc", vc.nc},
        {"D", vc.degree_of_adaptation}}},
  };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proLab colour coordinate toolkit"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--white", common.white, "XYZ white point overriding D65")->delimiter(',');
  app.add_option("--config", common.config, "JSON config {\"white\": [..], \"mu\": [..]}");
  app.add_option("--threads", common.threads, "worker threads (0 = all cores)");

  // convert
  auto* convert = app.add_subcommand("convert", "convert colours between spaces");
  std::string from, to, in_csv, out_path;
  std::vector<double> color;
  convert->add_option("--from", from, "source space")->required();
  convert->add_option("--to", to, "target space")->required();
  auto* color_opt = convert->add_option("--color", color, "x,y,z")->delimiter(',');
  auto* in_opt = convert->add_option("--in", in_csv, "CSV with one colour per row");
  color_opt->excludes(in_opt);
  convert->add_option("--out", out_path, "output CSV (batch mode)");

  // table1
  auto* table1 = app.add_subcommand("table1", "evaluate U, H and collineation for every space");
  std::size_t n = 100000;
  std::uint64_t seed = 1;
  int resolution = 128;
  std::string manifest_path;
  table1->add_option("--n", n, "sample size");
  table1->add_option("--seed", seed, "RNG seed");
  table1->add_option("--resolution", resolution, "gamut hull resolution");
  table1->add_option("--out", out_path, "CSV output");
  table1->add_option("--manifest", manifest_path, "run manifest JSON (default: <out>.manifest.json)");

  // fit
  auto* fit = app.add_subcommand("fit", "fit metric parameters");
  FitConfig fit_cfg;
  fit->add_option("--pairs", fit_cfg.n_pairs, "training pairs");
  fit->add_option("--seed", fit_cfg.seed, "RNG seed");
  fit->add_option("--starts", fit_cfg.n_starts, "multistart count");
  fit->add_option("--max-iters", fit_cfg.max_iters, "iterations per local search");
  fit->add_option("--penalty", fit_cfg.penalty_weight, "penalty weight");
  fit->add_option("--resolution", fit_cfg.hull_resolution, "gamut hull resolution");
  fit->add_option("--out", out_path, "FitResult JSON");

  // noise
  auto* noise = app.add_subcommand("noise", "sensor noise model");
  noise->require_subcommand(1);
  auto* noise_fit = noise->add_subcommand("fit", "fit g and var_eps from patch statistics");
  std::string stats_path, space_name = "proLab", grid_path;
  noise_fit->add_option("--stats", stats_path, "CSV: channel,mean,variance")->required();
  auto* noise_h = noise->add_subcommand("H", "heteroscedasticity criterion");
  noise_h->add_option("--space", space_name, "target space")->required();
  noise_h->add_option("--n", n, "sample size");
  noise_h->add_option("--sample", n, "sample size (alias of --n)");
  noise_h->add_option("--seed", seed, "RNG seed");
  noise_h->add_option("--resolution", resolution, "gamut hull resolution");
  auto* noise_ell = noise->add_subcommand("ellipsoids", "noise ellipsoid frames");
  noise_ell->add_option("--space", space_name, "target space")->required();
  noise_ell->add_option("--grid", grid_path, "CSV of CIELAB colours")->required();
  noise_ell->add_option("--out", out_path, "CSV output");
  double g = 3.38, var_eps = 744.0;
  for (auto* sub : {noise_h, noise_ell}) {
    sub->add_option("--g", g, "sensor gain");
    sub->add_option("--var-eps", var_eps, "additive variance");
  }

  // uniformity
  auto* unif = app.add_subcommand("uniformity", "non-uniformity criterion U");
  std::string pairs_path, scatter_path;
  unif->add_option("--space", space_name, "target space")->required();
  unif->add_option("--pairs", pairs_path, "CSV of CIELAB pairs L1,a1,b1,L2,a2,b2");
  unif->add_option("--n", n, "pairs to sample");
  unif->add_option("--sample", n, "pairs to sample (alias of --n)");
  unif->add_option("--seed", seed, "RNG seed");
  unif->add_option("--resolution", resolution, "gamut hull resolution");
  unif->add_option("--scatter", scatter_path, "write (de_space, de00) CSV");

  // gamut
  auto* gamut = app.add_subcommand("gamut", "build, export and sample the D65 gamut");
  std::string off_path;
  std::size_t sample_n = 0;
  gamut->add_option("--resolution", resolution, "hull resolution");
  gamut->add_option("--off", off_path, "OFF export");
  gamut->add_option("--sample", sample_n, "colours to sample");
  gamut->add_option("--seed", seed, "RNG seed");
  gamut->add_option("--out", out_path, "sample CSV");

  // plotdata
  auto* plot = app.add_subcommand("plotdata", "figure data as CSV");
  std::string figure;
  plot->add_option("--figure", figure, "gamut-3d | srgb-cube | macadam | scatter | noise-clouds")
      ->required()
      ->check(CLI::IsMember({"gamut-3d", "srgb-cube", "macadam", "scatter", "noise-clouds"}));
  plot->add_option("--space", space_name, "target space");
  plot->add_option("--n", n, "sample size (scatter, noise-clouds)");
  plot->add_option("--seed", seed, "RNG seed");
  plot->add_option("--resolution", resolution, "gamut hull resolution");
  plot->add_option("--out", out_path, "CSV output");

  auto* dump = app.add_subcommand("dump-constants", "print reference constants as JSON");
  dump->add_option("--out", out_path, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitPrecondition;
  }

  try {
    set_default_threads(common.threads);
    if (convert->parsed()) {
      const ColorSpaces spaces = common.spaces();
      const ColorSpaceId s = space_arg(from), t = space_arg(to);
      if (!in_csv.empty()) {
        Output out(out_path);
        out.get() << "c0,c1,c2\n";
        for (const auto& r : read_rows(in_csv, 3)) {
          print_triple(out.get(), spaces.convert({s, Vec3d(r[0], r[1], r[2])}, t).v);
        }
      } else {
        if (color.empty()) throw Error(ErrorCode::InvalidArgument, "need --color or --in");
        print_triple(std::cout, spaces.convert({s, triple_arg(color, "--color")}, t).v);
      }
    } else if (table1->parsed()) {
      const ColorSpaces spaces = common.spaces();
      Table1Config cfg;
      cfg.n = n;
      cfg.seed = seed;
      cfg.hull_resolution = resolution;
      const Table1 t = compute_table1(cfg, NoiseModel{}, spaces);
      std::printf("%-10s %-15s %9s %9s\n", "Space", "Collineation", "U_T", "H_T");
      for (const auto& r : t.rows) {
        std::printf("%-10s %-15s %9.6g %9.6g\n", std::string(name(r.space)).c_str(),
                    name(r.collineation), r.u, r.h);
      }
      const json manifest = io::manifest_to_json(t.manifest);
      if (!out_path.empty()) {
        Output out(out_path);
        out.get() << "space,collineation,U_T,H_T\n" << std::setprecision(17);
        for (const auto& r : t.rows) {
          out.get() << name(r.space) << ',' << name(r.collineation) << ',' << r.u << ',' << r.h
                    << '\n';
        }
        if (manifest_path.empty()) manifest_path = out_path + ".manifest.json";
      }
      if (!manifest_path.empty()) {
        Output m(manifest_path);
        m.get() << manifest.dump(2) << '\n';
      } else {
        std::cout << "# manifest " << manifest.dump() << '\n';
      }
    } else if (fit->parsed()) {
      const FitResult r = fit_metric_params(fit_cfg);
      const json j = io::fit_result_to_json(r, fit_cfg);
      std::printf("U_train %.6g  objective %.6g  constraint_min %.3g  start %d\n", r.u_train,
                  r.objective, r.constraint_min, r.start_index);
      Output out(out_path);
      out.get() << j.dump(2) << '\n';
    } else if (noise->parsed()) {
      NoiseModel nm;
      nm.g = g;
      nm.var_eps = var_eps;
      if (noise_fit->parsed()) {
        const PatchStats stats = read_patch_stats(stats_path);
        const JahneFit f = fit_jahne(stats);
        std::cout << std::setprecision(17) << "g=" << f.g << " var_eps=" << f.var_eps << '\n';
      } else if (noise_h->parsed()) {
        const ColorSpaces spaces = common.spaces();
        const GamutHull hull = build_gamut(load_d65_observer(), resolution, spaces.white());
        const ColorSample sample = sample_colors(
            hull, n, h_sample_seed(seed), reproducible_subgamut_filter(hull, nm.cal, spaces));
        std::cout << std::setprecision(17)
                  << heteroscedasticity(space_arg(space_name), sample.colors, nm, spaces) << '\n';
      } else if (noise_ell->parsed()) {
        const ColorSpaces spaces = common.spaces();
        std::vector<Vec3d> lab;
        for (const auto& r : read_rows(grid_path, 3)) lab.emplace_back(r[0], r[1], r[2]);
        Output out(out_path);
        noise_frames(space_arg(space_name), lab, nm, spaces).write(out.get());
      }
    } else if (unif->parsed()) {
      const ColorSpaces spaces = common.spaces();
      std::vector<LabPair> pairs;
      if (!pairs_path.empty()) {
        for (const auto& r : read_rows(pairs_path, 6)) {
          pairs.push_back({Vec3d(r[0], r[1], r[2]), Vec3d(r[3], r[4], r[5])});
        }
      } else {
        const GamutHull hull = build_gamut(load_d65_observer(), resolution, spaces.white());
        pairs = sample_pairs(hull, n, seed).pairs;
      }
      const PairCache cache = make_pair_cache(pairs, spaces);
      const ColorSpaceId s = space_arg(space_name);
      std::cout << std::setprecision(17) << uniformity(s, cache, spaces) << '\n';
      if (!scatter_path.empty()) {
        Output out(scatter_path);
        difference_scatter_table(s, cache, spaces).write(out.get());
      }
    } else if (gamut->parsed()) {
      const GamutHull hull = build_d65_gamut(resolution);
      std::printf("vertices %zu faces %zu volume %.6g checksum 0x%016llx\n",
                  hull.vertices().size(), hull.faces().size(), hull.volume(),
                  static_cast<unsigned long long>(hull.checksum()));
      if (!off_path.empty()) {
        Output off(off_path);
        write_off(off.get(), hull);
      }
      if (sample_n > 0) {
        Output out(out_path);
        write_sample_csv(out.get(), sample_colors(hull, sample_n, seed), hull);
      }
    } else if (plot->parsed()) {
      const ColorSpaces spaces = common.spaces();
      const ColorSpaceId s = space_arg(space_name);
      Output out(out_path);
      if (figure == "srgb-cube") {
        srgb_cube(s, 16, spaces).write(out.get());
      } else if (figure == "gamut-3d") {
        const GamutHull hull = build_gamut(load_d65_observer(), resolution, spaces.white());
        gamut_vertices(hull, s, spaces).write(out.get());
        out.get() << "# faces\n";
        gamut_triangles(hull).write(out.get());
      } else if (figure == "macadam") {
        macadam_ellipses(s, 10.0, 64, spaces).write(out.get());
      } else if (figure == "scatter") {
        const GamutHull hull = build_gamut(load_d65_observer(), resolution, spaces.white());
        const PairCache cache = make_pair_cache(sample_pairs(hull, n, seed).pairs, spaces);
        std::cerr << "U " << std::setprecision(17) << uniformity(s, cache, spaces) << '\n';
        difference_scatter_table(s, cache, spaces).write(out.get());
      } else {
        const NoiseModel nm;
        const GamutHull hull = build_gamut(load_d65_observer(), resolution, spaces.white());
        const ColorSample sample =
            sample_colors(hull, n, seed, reproducible_subgamut_filter(hull, nm.cal, spaces));
        noise_frames(s, sample.colors, nm, spaces).write(out.get());
      }
    } else if (dump->parsed()) {
      Output out(out_path);
      out.get() << std::setprecision(17) << constants_json().dump(2) << '\n';
    }
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return is_precondition(e.code()) ? kExitPrecondition : kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
