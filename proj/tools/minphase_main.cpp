// minphase: design and analysis of minimum-phase equiripple FIR filters by
// time-domain factorization of a lifted linear-phase prototype.
//
// Subcommands:
//   design     lift/scale/factor/refine a linear-phase prototype
//   transform  arbitrary-phase FIR -> minimum phase (optional MMSE baseline)
//   sweep      residual norm vs lift offset (waterfall curve)
//   analyze    eigenvalue sweeps, zero locations, amplitude response

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "minphase/gramian.hpp"
#include "minphase/kernels.hpp"
#include "minphase/lifting.hpp"
#include "minphase/orchard_wilson.hpp"
#include "minphase/tap_io.hpp"
#include "minphase/transform.hpp"
#include "minphase/zeros.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

int grid_from_env() {
  if (const char* env = std::getenv("MINPHASE_GRID")) {
    const int n = std::atoi(env);
    if (n >= 2) return n;
  }
  return minphase::kDefaultGridCount;
}

json residual_json(const minphase::ResidualReport& rep) {
  return {{"E_L2", rep.e_l2},
          {"iterations", rep.iterations},
          {"converged", rep.converged},
          {"residual", rep.residual}};
}

json trace_json(const minphase::ResidualReport& rep) {
  json arr = json::array();
  for (const auto& t : rep.trace)
    arr.push_back({{"iteration", t.iteration},
                   {"lambda", t.damping},
                   {"E_L2", t.e_l2},
                   {"step", t.step},
                   {"accepted", t.accepted}});
  return arr;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

struct CommonOpts {
  std::string out_dir = ".";
  int grid = grid_from_env();
};

json manifest_base(const std::string& command, const json& inputs,
                   const json& config, const json& outputs) {
  return {{"command", command},
          {"inputs", inputs},
          {"config", config},
          {"version", kVersion},
          {"outputs", outputs}};
}

void write_response_csv(const fs::path& path, const std::vector<double>& omega,
                        const std::vector<double>& c_mag,
                        const std::vector<double>& a_lifted) {
  std::ofstream out(path);
  out << "omega,c_magnitude,a_lifted\n";
  for (size_t i = 0; i < omega.size(); ++i)
    out << minphase::format_double(omega[i]) << ","
        << minphase::format_double(c_mag[i]) << ","
        << minphase::format_double(a_lifted[i]) << "\n";
}

int cmd_design(const std::string& proto_path, int q, const std::string& eps_arg,
               const CommonOpts& opts, const minphase::SolverConfig& solver) {
  const auto g = minphase::read_prototype(proto_path);
  const int padding = q > 0 ? q : minphase::default_padding(g.length());

  std::optional<double> eps;
  if (eps_arg != "auto") eps = std::stod(eps_arg);

  const auto result = minphase::design_minphase(g, padding, solver, eps);

  fs::create_directories(opts.out_dir);
  const fs::path dir(opts.out_dir);
  minphase::write_taps((dir / "c.txt").string(), result.filter.taps);

  minphase::FrequencyGrid grid(opts.grid);
  const auto mag = minphase::frequency_response_magnitude(result.filter, grid);
  auto a = minphase::amplitude_response(g, grid);
  for (double& v : a)
    v = result.lift.scale * (v + result.lift.gamma_final);
  write_response_csv(dir / "response.csv", grid.omega, mag, a);

  json curve = json::array();
  for (const auto& p : result.lift.curve)
    curve.push_back({{"gamma", p.gamma},
                     {"offset", p.offset},
                     {"E_L2", p.e_l2},
                     {"converged", p.converged}});
  json report = {
      {"manifest",
       manifest_base("design", {{"prototype", proto_path}},
                     {{"q", padding},
                      {"epsilon", eps ? json(*eps) : json("auto")},
                      {"grid", opts.grid},
                      {"max_iterations", solver.max_iterations}},
                     {"c.txt", "report.json", "response.csv"})},
      {"lift",
       {{"gamma_psd", result.lift.gamma_psd},
        {"gamma_final", result.lift.gamma_final},
        {"epsilon", result.lift.epsilon},
        {"scale", result.lift.scale},
        {"curve", curve}}},
      {"residual", residual_json(result.residual)},
      {"trace", trace_json(result.residual)}};
  write_json(dir / "report.json", report);

  std::cout << "c.txt written: " << result.filter.length()
            << " taps, E_L2 = " << result.residual.e_l2
            << ", gamma = " << result.lift.gamma_final << "\n";
  return 0;
}

int cmd_transform(const std::string& fir_path, int q, bool with_mmse,
                  double sigma2, int plen, const CommonOpts& opts,
                  const minphase::SolverConfig& solver) {
  (void)solver;
  const auto h = minphase::read_fir(fir_path);
  const int padding = q > 0 ? q : minphase::default_padding(h.length());

  const auto result = minphase::transform(h, padding);

  fs::create_directories(opts.out_dir);
  const fs::path dir(opts.out_dir);
  minphase::write_taps((dir / "c.txt").string(), result.minphase.taps);
  minphase::write_taps((dir / "f.txt").string(), result.prefilter);

  json zeros_json = json::array();
  if (result.minphase.length() >= 2) {
    for (const auto& z : minphase::zeros(result.minphase))
      zeros_json.push_back({{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}});
  }

  json report = {
      {"manifest",
       manifest_base("transform", {{"fir", fir_path}},
                     {{"q", padding},
                      {"mmse", with_mmse},
                      {"sigma2", sigma2},
                      {"plen", plen},
                      {"grid", opts.grid}},
                     {"c.txt", "f.txt", "report.json"})},
      {"residual", residual_json(result.residual)},
      {"spectral_error", result.spectral_error},
      {"zeros", zeros_json}};

  if (with_mmse) {
    minphase::MmseConfig mcfg;
    mcfg.noise_variance = sigma2;
    mcfg.feedforward_length = plen > 0 ? plen : minphase::default_padding(h.length());
    const auto mmse = minphase::mmse_transform(h, mcfg);
    minphase::write_taps((dir / "c_mmse.txt").string(), mmse.minphase.taps);
    report["mmse"] = {{"E_L2", mmse.residual.e_l2},
                      {"spectral_error", mmse.spectral_error},
                      {"ratio_vs_factorization",
                       mmse.residual.e_l2 / std::max(result.residual.e_l2, 1e-300)}};
  }
  write_json(dir / "report.json", report);

  std::cout << "transform: E_L2 = " << result.residual.e_l2
            << ", spectral_error = " << result.spectral_error << "\n";
  return 0;
}

std::vector<double> parse_offsets(const std::string& spec) {
  std::vector<double> offsets;
  if (spec.rfind("logrange", 0) == 0) {
    // logrange lo:hi:n -- log-spaced magnitudes from lo to hi; when the signs
    // differ the count is split across both sides of zero with a floor of
    // 1e-3 * min(|lo|, |hi|) next to zero.
    const std::string body = spec.substr(spec.find_first_not_of(" \t", 8));
    const size_t c1 = body.find(':');
    const size_t c2 = body.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw CLI::ValidationError("--offsets", "logrange needs lo:hi:n");
    const double lo = std::stod(body.substr(0, c1));
    const double hi = std::stod(body.substr(c1 + 1, c2 - c1 - 1));
    const int n = std::stoi(body.substr(c2 + 1));
    if (n < 1) return offsets;
    if (n == 1) {
      offsets.push_back(lo);
      return offsets;
    }
    auto geom = [](double a, double b, int count) {
      std::vector<double> v;
      if (count == 1) {
        v.push_back(a);
        return v;
      }
      const double la = std::log(std::abs(a)), lb = std::log(std::abs(b));
      const double sign = a < 0 ? -1.0 : 1.0;
      for (int i = 0; i < count; ++i)
        v.push_back(sign * std::exp(la + (lb - la) * i / (count - 1)));
      return v;
    };
    if (lo < 0 && hi > 0) {
      const double floor_mag = 1e-3 * std::min(std::abs(lo), std::abs(hi));
      const int n_neg = std::max(1, n / 3);
      const int n_pos = n - n_neg;
      for (double v : geom(lo, -floor_mag, n_neg)) offsets.push_back(v);
      for (double v : geom(floor_mag, hi, n_pos)) offsets.push_back(v);
    } else {
      for (double v : geom(lo, hi, n)) offsets.push_back(v);
    }
    return offsets;
  }
  // comma-separated explicit values; empty string means an empty sweep
  std::string token;
  std::istringstream in(spec);
  while (std::getline(in, token, ',')) {
    if (token.find_first_not_of(" \t") == std::string::npos) continue;
    offsets.push_back(std::stod(token));
  }
  return offsets;
}

int cmd_sweep(const std::string& proto_path, const std::string& offsets_arg,
              int q, int jobs, const CommonOpts& opts,
              const minphase::SolverConfig& solver) {
  const auto g = minphase::read_prototype(proto_path);
  const int padding = q > 0 ? q : minphase::default_padding(g.length());
  const auto offsets = parse_offsets(offsets_arg);

#ifdef _OPENMP
  if (jobs > 0) omp_set_num_threads(jobs);
#else
  (void)jobs;
#endif

  const auto curve = minphase::waterfall_sweep(g, offsets, padding, solver);

  fs::create_directories(opts.out_dir);
  std::ofstream out(fs::path(opts.out_dir) / "waterfall.csv");
  out << "gamma,offset,E_L2,converged\n";
  for (const auto& p : curve)
    out << minphase::format_double(p.gamma) << ","
        << minphase::format_double(p.offset) << ","
        << minphase::format_double(p.e_l2) << ","
        << (p.converged ? "true" : "false") << "\n";
  std::cout << "waterfall.csv: " << curve.size() << " points\n";
  return 0;
}

int cmd_analyze(const std::string& proto_path, const std::string& eig_sweep,
                bool want_zeros, bool want_response, const CommonOpts& opts) {
  const auto g = minphase::read_prototype(proto_path);
  fs::create_directories(opts.out_dir);
  const fs::path dir(opts.out_dir);

  if (!eig_sweep.empty()) {
    const size_t c1 = eig_sweep.find(':');
    const size_t c2 = eig_sweep.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw CLI::ValidationError("--eig-sweep", "expected Qlo:Qhi:n");
    const int qlo = std::stoi(eig_sweep.substr(0, c1));
    const int qhi = std::stoi(eig_sweep.substr(c1 + 1, c2 - c1 - 1));
    const int n = std::stoi(eig_sweep.substr(c2 + 1));
    std::ofstream out(dir / "eig_sweep.csv");
    out << "q,lambda_min\n";
    int last_q = -1;
    for (int i = 0; i < n; ++i) {
      int q = (n == 1) ? qlo
                       : qlo + static_cast<int>(std::llround(
                                   static_cast<double>(qhi - qlo) * i / (n - 1)));
      if (q == last_q) continue;
      last_q = q;
      const double lam = minphase::min_eigenvalue(minphase::build_gramian(g, q, 0.0));
      out << q << "," << minphase::format_double(lam) << "\n";
    }
    std::cout << "eig_sweep.csv written\n";
  }

  if (want_zeros) {
    json zj = json::array();
    if (g.length() >= 2) {
      minphase::FirFilter as_fir(g.taps);
      for (const auto& z : minphase::zeros(as_fir))
        zj.push_back({{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}});
    }
    write_json(dir / "zeros.json", {{"zeros", zj}});
    std::cout << "zeros.json written\n";
  }

  if (want_response) {
    minphase::FrequencyGrid grid(opts.grid);
    const auto a = minphase::amplitude_response(g, grid);
    std::ofstream out(dir / "response.csv");
    out << "omega,amplitude\n";
    for (size_t i = 0; i < grid.omega.size(); ++i)
      out << minphase::format_double(grid.omega[i]) << ","
          << minphase::format_double(a[i]) << "\n";
    const auto mn = minphase::minimum_amplitude(g, opts.grid);
    std::cout << "response.csv written; min amplitude = "
              << minphase::format_double(mn.value) << " at omega = " << mn.omega
              << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-phase FIR design by time-domain factorization"};
  app.set_config("--config", "minphase.cfg", "Read options from a config file");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonOpts opts;
  minphase::SolverConfig solver;

  std::string proto_path, fir_path, eps_arg = "auto", offsets_arg, eig_sweep;
  int q = 0, jobs = 0, plen = 0;
  double sigma2 = 1e-4;
  bool with_mmse = false, want_zeros = false, want_response = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--grid", opts.grid, "Frequency grid point count")
        ->capture_default_str();
    cmd->add_option("--max-iterations", solver.max_iterations,
                    "Refinement iteration cap")->capture_default_str();
  };

  auto* design = app.add_subcommand("design", "Design a minimum-phase filter");
  design->add_option("--prototype", proto_path, "Linear-phase prototype tap file")
      ->required();
  design->add_option("--q", q, "Padding Q (default 10x tap count)");
  design->add_option("--epsilon", eps_arg,
                     "Lift offset above gamma_psd, or 'auto'")
      ->capture_default_str();
  add_common(design);

  auto* transform = app.add_subcommand("transform", "Transform a FIR to minimum phase");
  transform->add_option("--fir", fir_path, "Input FIR tap file")->required();
  transform->add_option("--q", q, "Padding Q (default 10x tap count)");
  transform->add_flag("--mmse", with_mmse, "Also run the MMSE baseline");
  transform->add_option("--sigma2", sigma2, "MMSE noise variance")
      ->capture_default_str();
  transform->add_option("--plen", plen, "MMSE feedforward length P+1");
  add_common(transform);

  auto* sweep = app.add_subcommand("sweep", "Waterfall sweep of E_L2 vs lift offset");
  sweep->add_option("--prototype", proto_path, "Linear-phase prototype tap file")
      ->required();
  sweep->add_option("--offsets", offsets_arg,
                    "Comma-separated offsets or 'logrange lo:hi:n'")
      ->required();
  sweep->add_option("--q", q, "Padding Q (default 10x tap count)");
  sweep->add_option("--jobs", jobs, "Worker threads for sweep points");
  add_common(sweep);

  auto* analyze = app.add_subcommand("analyze", "Prototype diagnostics");
  analyze->add_option("--prototype", proto_path, "Linear-phase prototype tap file")
      ->required();
  analyze->add_option("--eig-sweep", eig_sweep, "Qlo:Qhi:n minimum-eigenvalue sweep");
  analyze->add_flag("--zeros", want_zeros, "Emit zero locations JSON");
  analyze->add_flag("--response", want_response, "Emit amplitude response CSV");
  add_common(analyze);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // usage error
  }

  try {
    if (design->parsed()) return cmd_design(proto_path, q, eps_arg, opts, solver);
    if (transform->parsed())
      return cmd_transform(fir_path, q, with_mmse, sigma2, plen, opts, solver);
    if (sweep->parsed())
      return cmd_sweep(proto_path, offsets_arg, q, jobs, opts, solver);
    if (analyze->parsed())
      return cmd_analyze(proto_path, eig_sweep, want_zeros, want_response, opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;  // numeric or domain failure
  }
  return 1;
}
