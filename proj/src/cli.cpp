#include "transpec/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "transpec/bifurcation.hpp"
#include "transpec/errors.hpp"
#include "transpec/report.hpp"
#include "transpec/spectrum_analytic.hpp"
#include "transpec/spectrum_numeric.hpp"
#include "transpec/stokes.hpp"

namespace transpec::cli {

namespace fs = std::filesystem;

namespace {

struct Common {
  std::string model = "rmkp";
  double gamma = 1.0;
  double beta = 1.0;
  double alpha = 1.5;
  double k = 1.0;
  double eps = 0.01;
  std::string config;
  CLI::Option* k_opt = nullptr;
};

double parse_number(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ValidationError("invalid number '" + s + "' in " + what);
  }
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos != s.size() || !std::isfinite(v)) {
    throw ValidationError("invalid number '" + s + "' in " + what);
  }
  return v;
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw ValidationError(std::string(name) + " must be finite");
}

// Opens a file for writing up front so an unwritable path fails before any
// computation.
std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ValidationError("cannot write to '" + path + "'");
  return f;
}

void write_or_fail(std::ofstream& f, const std::string& text, const std::string& path) {
  f << text;
  f.flush();
  if (!f) throw ValidationError("failed writing '" + path + "'");
}

std::string json_text(const json& j) { return j.dump() + "\n"; }

// Flat JSON config: keys are long option names. Values only fill options that
// were not given on the command line.
void apply_config(const std::string& path, CLI::App& app, CLI::App* sub) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config '" + path + "'");
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw ValidationError("config '" + path + "' is not valid JSON: " + e.what());
  }
  if (!cfg.is_object()) throw ValidationError("config '" + path + "' must be a JSON object");
  for (const auto& [key, value] : cfg.items()) {
    if (key == "config") continue;
    CLI::Option* opt = sub ? sub->get_option_no_throw("--" + key) : nullptr;
    if (!opt) opt = app.get_option_no_throw("--" + key);
    if (!opt) {
      bool known = false;
      for (const CLI::App* other : app.get_subcommands({})) {
        known = known || other->get_option_no_throw("--" + key) != nullptr;
      }
      if (!known) throw ValidationError("unknown config key '" + key + "'");
      continue;
    }
    if (opt->count() > 0) continue;
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_boolean()) {
      text = value.get<bool>() ? "true" : "false";
    } else if (value.is_number()) {
      text = value.dump();
    } else {
      throw ValidationError("config key '" + key + "' must be a string, number or boolean");
    }
    opt->add_result(text);
    try {
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw ValidationError("config key '" + key + "': " + e.what());
    }
  }
}

ModelSpec build_model(const Common& c) {
  require_finite(c.gamma, "gamma");
  require_finite(c.beta, "beta");
  require_finite(c.alpha, "alpha");
  return make_model(c.model, c.gamma, c.beta, c.alpha);
}

std::string pair_list(const std::vector<CollisionRecord>& recs) {
  if (recs.empty()) return "None";
  std::string s;
  for (const auto& r : recs) {
    if (!s.empty()) s += " ";
    s += "{" + std::to_string(r.n) + "," + std::to_string(r.m) + "}";
  }
  return s;
}

std::string collision_table(const ModelSpec& model, int theta_max) {
  const double mag = model.beta() == 0.0 ? 1.0 : std::abs(model.beta());
  const ModelSpec pos = model.with_beta(mag), neg = model.with_beta(-mag);
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-6s %-22s %-22s %-22s %-22s %-34s %-34s\n", "Theta",
                "LWTP per beta>0", "LWTP per beta<0", "FSWTP per beta>0", "FSWTP per beta<0",
                "non-per beta>0", "non-per beta<0");
  os << buf;
  for (int theta = 1; theta <= theta_max; ++theta) {
    std::vector<std::string> cells;
    auto split = [&](const ModelSpec& m, bool long_wave) {
      std::vector<CollisionRecord> keep;
      for (const auto& r : enumerate_potentially_unstable(m, theta, Perturbation::Periodic)) {
        if (r.long_wave == long_wave) keep.push_back(r);
      }
      return pair_list(keep);
    };
    cells.push_back(split(pos, true));
    cells.push_back(split(neg, true));
    cells.push_back(split(pos, false));
    cells.push_back(split(neg, false));
    cells.push_back(pair_list(enumerate_potentially_unstable(pos, theta, Perturbation::NonPeriodic)));
    cells.push_back(pair_list(enumerate_potentially_unstable(neg, theta, Perturbation::NonPeriodic)));
    std::snprintf(buf, sizeof buf, "%-6d %-22s %-22s %-22s %-22s %-34s %-34s\n", theta,
                  cells[0].c_str(), cells[1].c_str(), cells[2].c_str(), cells[3].c_str(),
                  cells[4].c_str(), cells[5].c_str());
    os << buf;
  }
  return os.str();
}

cplx parse_shift(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) return {parse_number(s, "--shift"), 0.0};
  return {parse_number(s.substr(0, comma), "--shift"), parse_number(s.substr(comma + 1), "--shift")};
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  if (text.empty()) throw ValidationError("empty grid");
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw ValidationError("grid '" + text + "' must look like a:b:n");
    const double a = parse_number(parts[0], "grid");
    const double b = parse_number(parts[1], "grid");
    const double nd = parse_number(parts[2], "grid");
    if (nd < 1 || nd != std::floor(nd) || nd > 1e6) {
      throw ValidationError("grid count in '" + text + "' must be a positive integer");
    }
    const int n = static_cast<int>(nd);
    for (int i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item, "grid"));
  if (out.empty()) throw ValidationError("empty grid");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transverse spectral stability of rotation-modified KP-type waves", "transpec"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_option("--model", c.model, "model id")->capture_default_str();
  app.add_option("--gamma", c.gamma, "rotation parameter gamma > 0")->capture_default_str();
  app.add_option("--beta", c.beta, "dispersion coefficient beta")->capture_default_str();
  app.add_option("--alpha", c.alpha, "fractional KdV exponent")->capture_default_str();
  c.k_opt = app.add_option("--k", c.k, "wavenumber")->capture_default_str();
  app.add_option("--eps", c.eps, "wave amplitude")->capture_default_str();
  app.add_option("--config", c.config, "flat JSON file of option values (flags override)");

  // wave
  std::string wave_csv, wave_out;
  int samples = 256;
  CLI::App* wave = app.add_subcommand("wave", "Stokes wave coefficients and residual");
  wave->add_option("--csv", wave_csv, "write z,eta samples");
  wave->add_option("--samples", samples, "profile samples")->capture_default_str();
  wave->add_option("--out", wave_out, "write JSON here instead of stdout");

  // collide
  int theta = 3, theta_max = 4, mode_n = 0;
  double xi = 0.0;
  std::string perturbation = "periodic", window;
  bool table = false;
  CLI::App* collide = app.add_subcommand("collide", "eigenvalue collisions of the flat state");
  collide->add_option("--theta", theta, "mode separation")->capture_default_str();
  collide->add_option("--perturbation", perturbation, "periodic or nonperiodic")
      ->capture_default_str();
  collide->add_option("--window", window, "print collision windows in 'k' or 'xi'");
  CLI::Option* n_opt = collide->add_option("--n", mode_n, "lower mode index for --window");
  collide->add_option("--xi", xi, "Floquet exponent for --window k")->capture_default_str();
  collide->add_flag("--table", table, "aligned table of potentially unstable pairs");
  collide->add_option("--theta-max", theta_max, "rows of --table")->capture_default_str();

  // classify
  CLI::App* classify_cmd = app.add_subcommand("classify", "stability verdict at one k");

  // spectrum
  double rho = 0.0, sxi = 0.0;
  int N = 64, count = 6;
  std::string shift, spec_csv, spec_json, spec_svg;
  CLI::App* spectrum = app.add_subcommand("spectrum", "numerical spectrum at one (rho, xi)");
  spectrum->add_option("--rho", rho, "transverse wavenumber")->capture_default_str();
  spectrum->add_option("--xi", sxi, "Floquet exponent in (-1/2, 1/2]")->capture_default_str();
  spectrum->add_option("--N", N, "Fourier truncation")->capture_default_str();
  spectrum->add_option("--shift", shift, "shift-invert target 're,im'");
  spectrum->add_option("--count", count, "eigenvalues for --shift")->capture_default_str();
  spectrum->add_option("--csv", spec_csv, "write re,im");
  spectrum->add_option("--json", spec_json, "write JSON here instead of stdout");
  spectrum->add_option("--svg", spec_svg, "scatter plot");

  // sweep
  std::string rho_grid, xi_grid, outdir, sweep_svg;
  int sweep_N = 64, threads = 0;
  BubbleOptions bopts;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "spectra over a (rho, xi) grid");
  sweep_cmd->add_option("--rho-grid", rho_grid, "a:b:n or comma list");
  sweep_cmd->add_option("--xi-grid", xi_grid, "a:b:n or comma list");
  sweep_cmd->add_option("--N", sweep_N, "Fourier truncation")->capture_default_str();
  sweep_cmd->add_option("--outdir", outdir, "directory for CSV files and manifest");
  sweep_cmd->add_option("--svg", sweep_svg, "xi vs max Re plot");
  sweep_cmd->add_option("--threads", threads, "worker threads (0: TRANSPEC_THREADS or default)");
  sweep_cmd->add_option("--threshold", bopts.threshold, "bubble threshold (0: automatic)");
  sweep_cmd->add_option("--gap", bopts.gap, "bubble clustering gap")->capture_default_str();

  // atlas
  std::string atlas_out;
  CLI::App* atlas_cmd = app.add_subcommand("atlas", "stability table for the named models");
  atlas_cmd->add_option("--json", atlas_out, "also write JSON here");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidationError;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (!c.config.empty()) apply_config(c.config, app, sub);
    const ModelSpec model = build_model(c);
    require_finite(c.k, "k");
    require_finite(c.eps, "eps");

    if (sub == wave) {
      std::optional<std::ofstream> csv, js;
      if (!wave_csv.empty()) csv = open_output(wave_csv);
      if (!wave_out.empty()) js = open_output(wave_out);
      const StokesWave w = make_wave(model, c.k, c.eps);
      if (amplitude_warning(w)) err << "warning: amplitude eps=" << c.eps << " may be too large\n";
      const std::string text = json_text(make_wave_record(w));
      if (js) {
        write_or_fail(*js, text, wave_out);
      } else {
        out << text;
      }
      if (csv) write_or_fail(*csv, profile_csv(w, samples), wave_csv);
    } else if (sub == collide) {
      if (theta < 1) throw ValidationError("--theta must be >= 1");
      if (table) {
        out << collision_table(model, theta_max);
      } else if (!window.empty()) {
        if (n_opt->count() == 0) throw ValidationError("--window needs --n");
        json j{{"n", mode_n}, {"m", mode_n + theta}, {"theta", theta}};
        if (window == "k") {
          j["xi"] = xi;
          j["k_windows"] = collision_wavenumber_window(model, mode_n, theta, xi);
        } else if (window == "xi") {
          j["k"] = c.k;
          j["xi_windows"] = collision_floquet_window(model, mode_n, theta, c.k);
        } else {
          throw ValidationError("--window must be 'k' or 'xi'");
        }
        out << json_text(j);
      } else {
        Perturbation p;
        if (perturbation == "periodic") {
          p = Perturbation::Periodic;
        } else if (perturbation == "nonperiodic") {
          p = Perturbation::NonPeriodic;
        } else {
          throw ValidationError("--perturbation must be periodic or nonperiodic");
        }
        EnumerateOptions eo;
        if (c.k_opt->count() > 0) eo.k = c.k;
        for (const auto& r : enumerate_potentially_unstable(model, theta, p, eo)) {
          json j = r;
          j["theta"] = theta;
          out << json_text(j);
        }
      }
    } else if (sub == classify_cmd) {
      if (c.k_opt->count() == 0) throw ValidationError("classify needs --k");
      json j = classify(model, c.k);
      j["model"] = model.id();
      j["k"] = c.k;
      out << json_text(j);
    } else if (sub == spectrum) {
      std::optional<std::ofstream> csv, js, svg;
      if (!spec_csv.empty()) csv = open_output(spec_csv);
      if (!spec_json.empty()) js = open_output(spec_json);
      if (!spec_svg.empty()) svg = open_output(spec_svg);
      require_finite(rho, "rho");
      const StokesWave w = make_wave(model, c.k, c.eps);
      const SpectrumResult r = shift.empty()
                                   ? eig_dense(assemble_operator(w, rho, sxi, N))
                                   : shift_invert_eigs(w, rho, sxi, N, parse_shift(shift), count);
      const std::string text = json_text(r);
      if (js) {
        write_or_fail(*js, text, spec_json);
      } else {
        out << text;
      }
      if (csv) write_or_fail(*csv, spectrum_csv(r), spec_csv);
      if (svg) write_or_fail(*svg, spectrum_svg(r), spec_svg);
    } else if (sub == sweep_cmd) {
      if (rho_grid.empty() || xi_grid.empty() || outdir.empty()) {
        throw ValidationError("sweep needs --rho-grid, --xi-grid and --outdir");
      }
      const auto rhos = parse_grid(rho_grid);
      const auto xis = parse_grid(xi_grid);
      for (double x : xis) {
        if (!(x > -0.5 && x <= 0.5)) throw ValidationError("xi grid values must lie in (-1/2, 1/2]");
      }
      std::error_code ec;
      fs::create_directories(outdir, ec);
      const std::string manifest_path = (fs::path(outdir) / "manifest.json").string();
      std::ofstream manifest = open_output(manifest_path);
      std::optional<std::ofstream> svg;
      if (!sweep_svg.empty()) svg = open_output(sweep_svg);
      const StokesWave w = make_wave(model, c.k, c.eps);
      const auto points = sweep(w, rhos, xis, sweep_N, threads);
      const auto bubbles = detect_bubbles(points, bopts);
      json pts = json::array();
      int failed = 0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        json entry{{"index", i}, {"rho", p.rho}, {"xi", p.xi}, {"ok", p.ok}};
        if (p.ok) {
          char name[32];
          std::snprintf(name, sizeof name, "point_%05zu.csv", i);
          const std::string path = (fs::path(outdir) / name).string();
          std::ofstream f = open_output(path);
          write_or_fail(f, spectrum_csv(p.result), path);
          entry["file"] = name;
          entry["max_real"] = p.result.max_real;
          entry["residual_estimate"] = p.result.residual_estimate;
        } else {
          ++failed;
          entry["error"] = p.error;
        }
        pts.push_back(entry);
      }
      json m{{"model", model.id()}, {"gamma", model.gamma()}, {"beta", model.beta()},
             {"k", c.k},            {"eps", c.eps},           {"N", sweep_N},
             {"rho_grid", rhos},    {"xi_grid", xis},         {"points", pts},
             {"bubbles", bubbles}};
      write_or_fail(manifest, m.dump(2) + "\n", manifest_path);
      if (svg) write_or_fail(*svg, growth_curve_svg(points), sweep_svg);
      out << json_text(json{{"manifest", manifest_path},
                            {"points", points.size()},
                            {"failed", failed},
                            {"bubbles", bubbles}});
      if (failed > 0 && static_cast<std::size_t>(failed) == points.size()) {
        err << "error: every sweep point failed\n";
        return kNumericalFailure;
      }
    } else if (sub == atlas_cmd) {
      std::optional<std::ofstream> js;
      if (!atlas_out.empty()) js = open_output(atlas_out);
      std::vector<ModelSpec> models;
      for (const ModelSpec& m : default_atlas_models()) {
        models.push_back(make_model(m.id(), c.gamma, std::abs(c.beta) > 0 ? std::abs(c.beta) : 1.0,
                                    c.alpha));
      }
      const auto rows = atlas(models);
      out << atlas_table(rows);
      if (js) write_or_fail(*js, atlas_json(rows).dump(2) + "\n", atlas_out);
    }
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalFailure;
  }
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace transpec::cli
