// hsbmo: Poisson extensions for elliptic systems in the half-space and the
// BMO/VMO/Carleson functional toolbox around them.
//
// Subcommands:
//   kernel  — build the Poisson propagator, dump the kernel and its property report
//   extend  — extend boundary data into the half-space, dump field + manifest
//   norms   — boundary and Carleson functionals of a dataset
//   approx  — VMO approximation pipelines (vertical, mollifier, translation)
//   verify  — acceptance suite against the committed calibration
//
// Exit codes: 0 success, 1 criterion failure, 2 configuration error,
// 3 numerical fault.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "hsbmo/approx.hpp"
#include "hsbmo/generators.hpp"
#include "hsbmo/io.hpp"
#include "hsbmo/verify.hpp"

using nlohmann::json;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  hsbmo::BoundaryGrid grid;
  hsbmo::SystemSpec system;
  std::vector<hsbmo::cplx> tensor;  // explicit coefficient tensor (optional)
  int tensor_M = 0;
  hsbmo::TLadder ladder;
  double kappa = 1.0;
  std::string data_name = "log_abs";
  hsbmo::GeneratorParams data_params;
  std::vector<double> etas = {0.3, 0.5, 0.7};
  std::string calibration;
  std::uint64_t seed = 20240817ULL;
  std::string config_hash;
};

json load_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config " + path);
  json j;
  try {
    is >> j;
  } catch (const std::exception& ex) {
    throw ConfigError("config parse failure in " + path + ": " + ex.what());
  }
  return j;
}

RunConfig parse_config(const std::string& path) {
  const json j = load_json(path);
  RunConfig cfg;
  try {
    const auto& g = j.at("grid");
    cfg.grid = hsbmo::make_grid(g.at("d").get<int>(), g.at("N").get<int>(),
                                g.at("h").get<double>());
    if (j.contains("system")) {
      const auto& s = j["system"];
      cfg.system.name = s.value("name", "laplacian");
      cfg.system.lame.mu = s.value("mu", 1.0);
      cfg.system.lame.lambda = s.value("lambda", 1.0);
      if (s.contains("A")) {
        for (const auto& entry : s["A"])
          cfg.system.A.push_back(
              hsbmo::cplx(entry.at(0).get<double>(), entry.at(1).get<double>()));
      }
      // Explicit coefficient tensor a(alpha,beta,r,s), flattened row-major,
      // entries as [re, im] pairs; requires "M".
      if (s.contains("tensor")) {
        cfg.tensor_M = s.at("M").get<int>();
        for (const auto& entry : s["tensor"])
          cfg.tensor.push_back(
              hsbmo::cplx(entry.at(0).get<double>(), entry.at(1).get<double>()));
      }
    }
    if (j.contains("ladder")) {
      const auto& l = j["ladder"];
      cfg.ladder.t_min = l.value("t_min", cfg.grid.h / 2.0);
      cfg.ladder.rho = l.value("rho", std::pow(2.0, 0.25));
      cfg.ladder.t_max = l.value("t_max", cfg.grid.half_extent());
    } else {
      cfg.ladder = {cfg.grid.h / 2.0, std::pow(2.0, 0.25), cfg.grid.half_extent()};
    }
    cfg.kappa = j.value("kappa", 1.0);
    if (j.contains("data")) {
      const auto& d = j["data"];
      cfg.data_name = d.value("name", "log_abs");
      cfg.data_params.eta = d.value("eta", 0.5);
      cfg.data_params.cutoff = d.value("cutoff", 0.0);
      cfg.data_params.radius = d.value("radius", 0.0);
      if (d.contains("constant"))
        cfg.data_params.constant =
            hsbmo::cplx(d["constant"].at(0).get<double>(), d["constant"].at(1).get<double>());
    }
    if (j.contains("etas")) cfg.etas = j["etas"].get<std::vector<double>>();
    cfg.calibration = j.value("calibration", "");
    cfg.seed = j.value("seed", cfg.seed);
  } catch (const json::exception& ex) {
    throw ConfigError("config field error in " + path + ": " + ex.what());
  }
  cfg.config_hash = hsbmo::hex64(hsbmo::fnv1a64_file(path));
  return cfg;
}

void write_json(const std::string& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw hsbmo::IoError("cannot open " + path + " for writing");
  os << j.dump(2) << '\n';
}

hsbmo::EllipticSystem make_system(const RunConfig& cfg) {
  if (!cfg.tensor.empty())
    return hsbmo::make_system_from_tensor(cfg.grid.d + 1, cfg.tensor_M, cfg.tensor);
  return hsbmo::named_system(cfg.system, cfg.grid.d + 1);
}

hsbmo::SampledField make_data(const RunConfig& cfg, int M) {
  hsbmo::GeneratorParams p = cfg.data_params;
  p.components = M;
  return hsbmo::generate(cfg.data_name, p, cfg.grid, cfg.seed);
}

int cmd_kernel(const RunConfig& cfg, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  hsbmo::EllipticSystem sys = make_system(cfg);
  hsbmo::PoissonPropagator prop(sys, cfg.grid);
  const double S = cfg.grid.half_extent();
  const double t = S / 8.0;
  hsbmo::SampledField K = hsbmo::kernel_field(prop, t);
  hsbmo::write_field(out_dir + "/kernel.hsb", K);

  json rep;
  rep["system"] = sys.id;
  rep["kappa_o"] = sys.kappa_o;
  rep["config_hash"] = cfg.config_hash;
  rep["t"] = t;
  rep["solvent_residual_max"] = prop.residual_max();
  rep["solvent_residual_normalized_max"] = prop.residual_norm_max();
  rep["decay_margin"] = prop.decay_margin();
  rep["schur_fallbacks"] = prop.schur_count();

  // Normalization: grid integral against the identity.
  {
    const int M = sys.M;
    double worst = 0.0;
    const double meas = std::pow(cfg.grid.h, cfg.grid.d);
    for (int a = 0; a < M; ++a)
      for (int b = 0; b < M; ++b) {
        hsbmo::cplx s(0, 0);
        for (std::size_t k = 0; k < cfg.grid.node_count(); ++k)
          s += K.values[k * M * M + a * M + b];
        s *= meas;
        if (a == b) s -= 1.0;
        worst = std::max(worst, std::abs(s));
      }
    rep["normalization_error"] = worst;
  }

  // Semigroup at a fixed pair.
  {
    const int M = sys.M;
    const int MM = M * M;
    hsbmo::MatExpWork w;
    std::vector<hsbmo::cplx> E1(MM), E2(MM), E12(MM), P(MM);
    double worst = 0.0;
    for (std::size_t j = 0; j < cfg.grid.node_count(); ++j) {
      prop.propagator_at(j, t, E1.data(), w);
      prop.propagator_at(j, t / 2, E2.data(), w);
      prop.propagator_at(j, t + t / 2, E12.data(), w);
      hsbmo::smat::mul(M, E1.data(), E2.data(), P.data());
      for (int q = 0; q < MM; ++q) P[q] -= E12[q];
      worst = std::max(worst, hsbmo::smat::frob(M, P.data()) /
                                  std::max(hsbmo::smat::frob(M, E12.data()), 1e-30));
    }
    rep["semigroup_error"] = worst;
  }

  // Kernel decay fit: C = max |K| (t+|x|)^n / t over |x| <= S/2.
  {
    const int n = cfg.grid.d + 1;
    const int MM = sys.M * sys.M;
    double c_fit = 0.0;
    for (std::size_t k = 0; k < cfg.grid.node_count(); ++k) {
      const double r = std::sqrt(cfg.grid.node_abs2(k));
      if (r > S / 2.0) continue;
      double a2 = 0.0;
      for (int q = 0; q < MM; ++q) a2 += std::norm(K.values[k * MM + q]);
      c_fit = std::max(c_fit, std::sqrt(a2) * std::pow(t + r, n) / t);
    }
    rep["decay_constant"] = c_fit;
  }

  rep["molecule"] = json::object();
  {
    hsbmo::MoleculeReport m = hsbmo::molecule_check(prop, S / 32.0);
    rep["molecule"]["fitted_slope"] = m.fitted_slope;
    rep["molecule"]["expected_slope"] = m.expected_slope;
    rep["molecule"]["mean_abs_max"] = m.mean_abs_max;
    rep["molecule"]["annulus_l2"] = m.annulus_l2;
  }

  rep["calderon"] = json::object();
  {
    hsbmo::CalderonReport c64 = hsbmo::calderon_identity_check(prop, S / 32.0, S / 8.0, 64);
    hsbmo::CalderonReport c128 = hsbmo::calderon_identity_check(prop, S / 32.0, S / 8.0, 128);
    rep["calderon"]["max_rel_discrepancy_64"] = c64.max_rel_discrepancy;
    rep["calderon"]["max_rel_discrepancy_128"] = c128.max_rel_discrepancy;
    rep["calderon"]["worst_frequency_index"] = c64.worst_frequency;
    rep["calderon"]["worst_frequency_abs"] = c64.worst_xi_abs;
  }

  write_json(out_dir + "/kernel_report.json", rep);
  std::cout << "kernel report written to " << out_dir << std::endl;
  return 0;
}

int cmd_extend(const RunConfig& cfg, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  hsbmo::EllipticSystem sys = make_system(cfg);
  hsbmo::PoissonPropagator prop(sys, cfg.grid);
  hsbmo::SampledField f = make_data(cfg, sys.M);
  hsbmo::ExtensionRequest req;
  req.f = &f;
  req.prop = &prop;
  req.t_levels = cfg.ladder.levels();
  req.with_gradient = true;
  req.kappa = cfg.kappa;
  hsbmo::HalfSpaceField u = hsbmo::extend(req);

  const std::string field_path = out_dir + "/extension.hsb";
  hsbmo::write_halfspace(field_path, u);
  hsbmo::write_field(out_dir + "/boundary.hsb", f);

  json manifest;
  manifest["system"] = sys.id;
  manifest["grid"] = {{"d", cfg.grid.d}, {"N", cfg.grid.N}, {"h", cfg.grid.h}};
  manifest["levels"] = u.t_levels;
  manifest["kappa"] = cfg.kappa;
  manifest["seed"] = cfg.seed;
  manifest["config_hash"] = cfg.config_hash;
  manifest["checksums"] = {{"extension.hsb", hsbmo::hex64(hsbmo::fnv1a64_file(field_path))},
                           {"boundary.hsb",
                            hsbmo::hex64(hsbmo::fnv1a64_file(out_dir + "/boundary.hsb"))}};
  write_json(out_dir + "/manifest.json", manifest);
  std::cout << "extension written to " << out_dir << std::endl;
  return 0;
}

int cmd_norms(const RunConfig& cfg, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  hsbmo::EllipticSystem sys = make_system(cfg);
  hsbmo::PoissonPropagator prop(sys, cfg.grid);
  hsbmo::SampledField f = make_data(cfg, sys.M);

  hsbmo::ExtensionRequest req;
  req.f = &f;
  req.prop = &prop;
  req.t_levels = cfg.ladder.levels();
  req.with_gradient = true;
  req.kappa = cfg.kappa;
  hsbmo::HalfSpaceField u = hsbmo::extend(req);

  hsbmo::OscillationCurve osc = hsbmo::osc_curve(f, 1.0);
  hsbmo::CarlesonProfile prof = hsbmo::carleson_profile(u);
  hsbmo::VanishingReport van = hsbmo::vanishing_carleson_test(u);

  hsbmo::write_curve_csv(out_dir + "/osc_curve.csv", "radius,osc1", osc.radii, osc.values);
  hsbmo::write_curve_csv(out_dir + "/carleson_profile.csv", "radius,value", prof.radii,
                         prof.values);

  // Tent-space operators of F = t d_t u: area function and Carleson operator.
  {
    const std::size_t NN = cfg.grid.node_count();
    hsbmo::HalfSpaceField F;
    F.grid = cfg.grid;
    F.M = sys.M;
    F.t_levels = u.t_levels;
    F.values.assign(u.t_levels.size(), std::vector<hsbmo::cplx>(NN * sys.M));
    for (std::size_t lev = 0; lev < u.t_levels.size(); ++lev)
      for (std::size_t k = 0; k < NN; ++k)
        for (int comp = 0; comp < sys.M; ++comp)
          F.values[lev][k * sys.M + comp] =
              u.t_levels[lev] *
              u.grad[lev][(static_cast<std::size_t>(cfg.grid.d) * NN + k) * sys.M + comp];
    hsbmo::ConeStencil stencil = hsbmo::build_cone_stencil(cfg.grid, cfg.kappa, u.t_levels);
    hsbmo::write_field_csv(out_dir + "/area_function.csv", hsbmo::area_function(F, stencil));
    hsbmo::write_field_csv(out_dir + "/carleson_operator.csv", hsbmo::carleson_operator(F));
  }

  json rep;
  rep["config_hash"] = cfg.config_hash;
  rep["seed"] = cfg.seed;
  rep["system"] = sys.id;
  rep["data"] = cfg.data_name;
  rep["bmo_norm"] = hsbmo::bmo_norm(f, 1.0);
  rep["carleson_norm"] = hsbmo::carleson_norm(u);
  for (double eta : cfg.etas) {
    json block;
    block["morrey_campanato"] = hsbmo::morrey_campanato(f, eta, 1.0);
    block["holder"] = hsbmo::holder_seminorm(f, eta, cfg.seed);
    block["fractional_carleson_q2"] = hsbmo::fractional_carleson(u, eta, 2.0);
    rep["eta"][hsbmo::format_double(eta)] = block;
  }
  rep["vanishing_verdict"] = hsbmo::verdict_name(van.verdict);
  rep["vanishing_ratio"] = van.ratio;
  rep["thresholds"] = {{"vanishing", van.threshold_vanishing},
                       {"not_vanishing", van.threshold_not}};
  {
    hsbmo::TailReport tail = hsbmo::oscillation_tail(f, 8.0 * cfg.grid.h, 1.0);
    rep["oscillation_tail_r8h"] = tail.value;
    rep["oscillation_tail_lambda_max"] = tail.lambda_max;
  }
  if (!cfg.calibration.empty()) {
    hsbmo::Calibration cal = hsbmo::load_calibration(cfg.calibration);
    rep["calibration_hash"] = cal.self_hash;
  }
  write_json(out_dir + "/norms.json", rep);
  std::cout << "norms report written to " << out_dir << std::endl;
  return 0;
}

int cmd_approx(const RunConfig& cfg, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  hsbmo::EllipticSystem sys = make_system(cfg);
  hsbmo::PoissonPropagator prop(sys, cfg.grid);
  hsbmo::SampledField f = make_data(cfg, sys.M);

  std::vector<double> eps;
  std::vector<int> zsteps;
  const int top = std::min(128, cfg.grid.N / 4);
  for (int m = top; m >= 1; m /= 2) {
    eps.push_back(m * cfg.grid.h);
    zsteps.push_back(m);
  }
  hsbmo::DecayTable vert = hsbmo::vmo_approximation_run(f, prop, eps, cfg.etas);
  hsbmo::DecayTable moll = hsbmo::mollifier_convergence(f, "gaussian", eps);
  hsbmo::DecayTable trans = hsbmo::translation_test(f, zsteps);

  auto dump_table = [&](const hsbmo::DecayTable& t, const std::string& name) {
    std::ofstream os(out_dir + "/" + name + ".csv");
    os << "scale";
    for (const auto& c : t.columns) os << ',' << c;
    os << '\n';
    for (std::size_t i = 0; i < t.scale.size(); ++i) {
      os << hsbmo::format_double(t.scale[i]);
      for (double v : t.rows[i]) os << ',' << hsbmo::format_double(v);
      os << '\n';
    }
  };
  dump_table(vert, "vertical_decay");
  dump_table(moll, "mollifier_decay");
  dump_table(trans, "translation_decay");

  json rep;
  rep["config_hash"] = cfg.config_hash;
  rep["seed"] = cfg.seed;
  rep["data"] = cfg.data_name;
  rep["vertical"] = {{"verdict", hsbmo::verdict_name(vert.verdict)}, {"ratio", vert.ratio}};
  rep["mollifier"] = {{"verdict", hsbmo::verdict_name(moll.verdict)}, {"ratio", moll.ratio}};
  rep["translation"] = {{"verdict", hsbmo::verdict_name(trans.verdict)}, {"ratio", trans.ratio}};
  write_json(out_dir + "/approx.json", rep);
  std::cout << "approx report written to " << out_dir << std::endl;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisson extensions for elliptic systems and BMO/VMO/Carleson functionals"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string config_path, out_dir = "out", filter;
  std::uint64_t seed = 0;
  bool have_seed = false, calibrate = false;
  int verify_d = 1;
  std::string calib_path;

  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_dir, "output directory");
  auto* seed_opt = app.add_option("--seed", seed, "seed override (U64)");
  app.add_option("--filter", filter, "criterion name filter (verify)");
  app.add_flag("--calibrate", calibrate, "regenerate the calibration file (verify)");

  auto* c_kernel = app.add_subcommand("kernel", "kernel build + property report");
  auto* c_extend = app.add_subcommand("extend", "extend boundary data");
  auto* c_norms = app.add_subcommand("norms", "boundary/half-space functionals");
  auto* c_approx = app.add_subcommand("approx", "VMO approximation pipelines");
  auto* c_verify = app.add_subcommand("verify", "acceptance suite");
  c_verify->add_option("--d", verify_d, "boundary dimension (1 or 2)");
  c_verify->add_option("--calibration", calib_path, "calibration file path");

  CLI11_PARSE(app, argc, argv);
  have_seed = seed_opt->count() > 0;

  try {
    if (c_verify->parsed()) {
      hsbmo::VerifyOptions opt;
      opt.d = verify_d;
      opt.filter = filter;
      opt.calibrate = calibrate;
      opt.calibration_path = calib_path;
      opt.out_dir = out_dir;
      if (have_seed) opt.seed = seed;
      if (!config_path.empty()) {
        const json j = load_json(config_path);
        opt.d = j.value("d", opt.d);
        if (j.contains("calibration") && opt.calibration_path.empty())
          opt.calibration_path = j["calibration"].get<std::string>();
        if (!have_seed) opt.seed = j.value("seed", opt.seed);
      }
      if (opt.calibration_path.empty())
        opt.calibration_path = "calibration/d" + std::to_string(opt.d) + ".json";
      hsbmo::VerifyReport rep = hsbmo::run_acceptance(opt);
      return rep.all_pass ? 0 : 1;
    }

    if (config_path.empty()) throw ConfigError("--config is required");
    RunConfig cfg = parse_config(config_path);
    if (have_seed) cfg.seed = seed;

    if (c_kernel->parsed()) return cmd_kernel(cfg, out_dir);
    if (c_extend->parsed()) return cmd_extend(cfg, out_dir);
    if (c_norms->parsed()) return cmd_norms(cfg, out_dir);
    if (c_approx->parsed()) return cmd_approx(cfg, out_dir);
  } catch (const ConfigError& ex) {
    std::cerr << "config error: " << ex.what() << std::endl;
    return 2;
  } catch (const hsbmo::IoError& ex) {
    std::cerr << "io error: " << ex.what() << std::endl;
    return 2;
  } catch (const hsbmo::EllipticityError& ex) {
    std::cerr << "config error: " << ex.what() << std::endl;
    return 2;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "config error: " << ex.what() << std::endl;
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "numerical fault: " << ex.what() << std::endl;
    return 3;
  }
  return 0;
}
