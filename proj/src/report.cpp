#include "transpec/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "transpec/errors.hpp"

namespace transpec {

namespace {

// JSON has no infinity; an unbounded window end is written as null.
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_or_inf(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

}  // namespace

WaveRecord make_wave_record(const StokesWave& w, int residual_modes) {
  return {w.model.id(), w.model.gamma(), w.model.beta(), w.k, w.eps, w.eta2, w.eta3, w.c0, w.c2,
          residual_norm(w, residual_modes)};
}

void to_json(json& j, const WaveRecord& r) {
  j = json{{"model", r.model}, {"gamma", r.gamma}, {"beta", r.beta}, {"k", r.k},
           {"eps", r.eps},     {"eta2", r.eta2},   {"eta3", r.eta3}, {"c0", r.c0},
           {"c2", r.c2},       {"residual", r.residual}};
}

void from_json(const json& j, WaveRecord& r) {
  j.at("model").get_to(r.model);
  j.at("gamma").get_to(r.gamma);
  j.at("beta").get_to(r.beta);
  j.at("k").get_to(r.k);
  j.at("eps").get_to(r.eps);
  j.at("eta2").get_to(r.eta2);
  j.at("eta3").get_to(r.eta3);
  j.at("c0").get_to(r.c0);
  j.at("c2").get_to(r.c2);
  j.at("residual").get_to(r.residual);
}

void to_json(json& j, const CollisionRecord& r) {
  j = json{{"n", r.n},
           {"m", r.m},
           {"xi", r.xi},
           {"k", r.k},
           {"rho_c", r.rho_c},
           {"omega_c", r.omega_c},
           {"krein_n", r.krein_n},
           {"krein_m", r.krein_m},
           {"opposite_krein", r.opposite_krein},
           {"at_origin", r.at_origin},
           {"long_wave", r.long_wave}};
}

void from_json(const json& j, CollisionRecord& r) {
  j.at("n").get_to(r.n);
  j.at("m").get_to(r.m);
  j.at("xi").get_to(r.xi);
  j.at("k").get_to(r.k);
  j.at("rho_c").get_to(r.rho_c);
  j.at("omega_c").get_to(r.omega_c);
  j.at("krein_n").get_to(r.krein_n);
  j.at("krein_m").get_to(r.krein_m);
  j.at("opposite_krein").get_to(r.opposite_krein);
  j.at("at_origin").get_to(r.at_origin);
  j.at("long_wave").get_to(r.long_wave);
}

void to_json(json& j, const Condition& c) {
  j = json{{"description", c.description}, {"satisfied", c.satisfied}};
}

void from_json(const json& j, Condition& c) {
  j.at("description").get_to(c.description);
  j.at("satisfied").get_to(c.satisfied);
}

Outcome outcome_from_string(const std::string& s) {
  if (s == "Unstable") return Outcome::Unstable;
  if (s == "Stable") return Outcome::Stable;
  if (s == "Inconclusive") return Outcome::Inconclusive;
  throw ValidationError("unknown outcome '" + s + "'");
}

void to_json(json& j, const Verdict& v) {
  j = json{{"outcome", to_string(v.outcome)},
           {"criterion", v.criterion},
           {"thresholds", v.thresholds},
           {"conditions", v.conditions}};
}

void from_json(const json& j, Verdict& v) {
  v.outcome = outcome_from_string(j.at("outcome").get<std::string>());
  j.at("criterion").get_to(v.criterion);
  j.at("thresholds").get_to(v.thresholds);
  j.at("conditions").get_to(v.conditions);
}

void to_json(json& j, const Interval& w) { j = json::array({w.lo, finite_or_null(w.hi)}); }

void from_json(const json& j, Interval& w) {
  w.lo = j.at(0).get<double>();
  w.hi = number_or_inf(j.at(1));
}

void to_json(json& j, const SpectrumResult& r) {
  json eigs = json::array();
  for (const cplx& z : r.eigenvalues) eigs.push_back(json::array({z.real(), z.imag()}));
  j = json{{"rho", r.rho},
           {"xi", r.xi},
           {"eps", r.eps},
           {"k", r.k},
           {"N", r.N},
           {"max_real", r.max_real},
           {"residual_estimate", r.residual_estimate},
           {"scale", r.scale},
           {"eigenvalues", eigs}};
}

void from_json(const json& j, SpectrumResult& r) {
  j.at("rho").get_to(r.rho);
  j.at("xi").get_to(r.xi);
  j.at("eps").get_to(r.eps);
  j.at("k").get_to(r.k);
  j.at("N").get_to(r.N);
  j.at("max_real").get_to(r.max_real);
  j.at("residual_estimate").get_to(r.residual_estimate);
  j.at("scale").get_to(r.scale);
  r.eigenvalues.clear();
  for (const auto& e : j.at("eigenvalues")) {
    r.eigenvalues.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  }
}

void to_json(json& j, const Bubble& b) {
  j = json{{"center_im", b.center.imag()},
           {"max_growth", b.max_growth},
           {"xi_range", json::array({b.xi_lo, b.xi_hi})},
           {"rho", b.rho}};
}

void from_json(const json& j, Bubble& b) {
  b.center = cplx(0.0, j.at("center_im").get<double>());
  j.at("max_growth").get_to(b.max_growth);
  b.xi_lo = j.at("xi_range").at(0).get<double>();
  b.xi_hi = j.at("xi_range").at(1).get<double>();
  j.at("rho").get_to(b.rho);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string spectrum_csv(const SpectrumResult& r) {
  std::string out = "re,im\n";
  for (const cplx& z : r.eigenvalues) {
    out += format_double(z.real());
    out += ',';
    out += format_double(z.imag());
    out += '\n';
  }
  return out;
}

std::string profile_csv(const StokesWave& wave, int samples) {
  if (samples < 2) throw ValidationError("profile needs at least 2 samples");
  std::string out = "z,eta\n";
  for (int i = 0; i < samples; ++i) {
    const double z = 2.0 * M_PI * i / samples;
    out += format_double(z);
    out += ',';
    out += format_double(wave_profile(wave, z));
    out += '\n';
  }
  return out;
}

std::string atlas_table(const std::vector<AtlasRow>& rows) {
  static const char* heads[kAtlasColumns] = {"LWTP per b>0", "LWTP per b<=0", "LWTP non-per",
                                             "FSWTP per",    "FSWTP np b>0",  "FSWTP np b<=0"};
  std::ostringstream os;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-15s", "Model");
  os << buf;
  for (const char* h : heads) {
    std::snprintf(buf, sizeof buf, " %-14s", h);
    os << buf;
  }
  os << '\n';
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%-15s", row.label.c_str());
    os << buf;
    for (const auto& cell : row.cells) {
      std::snprintf(buf, sizeof buf, " %-14s", to_string(cell.outcome));
      os << buf;
    }
    os << '\n';
  }
  return os.str();
}

json atlas_json(const std::vector<AtlasRow>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    json cells = json::object();
    for (std::size_t c = 0; c < kAtlasColumns; ++c) {
      cells[column_label(static_cast<AtlasColumn>(c))] = row.cells[c];
    }
    out.push_back(json{{"model", row.model_id}, {"label", row.label}, {"verdicts", cells}});
  }
  return out;
}

namespace {

struct Frame {
  double x0, x1, y0, y1;
  static constexpr double W = 640, H = 480, M = 60;
  double sx(double x) const { return M + (x - x0) / (x1 - x0) * (W - 2 * M); }
  double sy(double y) const { return H - M - (y - y0) / (y1 - y0) * (H - 2 * M); }
};

void pad(double& lo, double& hi) {
  if (!(hi > lo)) {
    const double d = std::max(1e-12, std::abs(lo) * 0.1);
    lo -= d;
    hi += d;
  }
  const double m = 0.05 * (hi - lo);
  lo -= m;
  hi += m;
}

std::string svg_open(const Frame& f, const std::string& xlabel, const std::string& ylabel) {
  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Frame::W << "\" height=\""
     << Frame::H << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << Frame::W << "\" height=\"" << Frame::H
     << "\" fill=\"white\"/>\n";
  os << "<rect x=\"" << Frame::M << "\" y=\"" << Frame::M << "\" width=\""
     << Frame::W - 2 * Frame::M << "\" height=\"" << Frame::H - 2 * Frame::M
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << Frame::W / 2 << "\" y=\"" << Frame::H - 15
     << "\" text-anchor=\"middle\" font-size=\"14\">" << xlabel << "</text>\n";
  os << "<text x=\"15\" y=\"" << Frame::H / 2 << "\" font-size=\"14\" transform=\"rotate(-90 15 "
     << Frame::H / 2 << ")\" text-anchor=\"middle\">" << ylabel << "</text>\n";
  os << "<text x=\"" << Frame::M << "\" y=\"" << Frame::H - Frame::M + 15
     << "\" font-size=\"10\">" << f.x0 << "</text>\n";
  os << "<text x=\"" << Frame::W - Frame::M << "\" y=\"" << Frame::H - Frame::M + 15
     << "\" font-size=\"10\" text-anchor=\"end\">" << f.x1 << "</text>\n";
  os << "<text x=\"" << Frame::M - 5 << "\" y=\"" << Frame::H - Frame::M
     << "\" font-size=\"10\" text-anchor=\"end\">" << f.y0 << "</text>\n";
  os << "<text x=\"" << Frame::M - 5 << "\" y=\"" << Frame::M + 10
     << "\" font-size=\"10\" text-anchor=\"end\">" << f.y1 << "</text>\n";
  return os.str();
}

}  // namespace

std::string spectrum_svg(const SpectrumResult& r) {
  Frame f{INFINITY, -INFINITY, INFINITY, -INFINITY};
  for (const cplx& z : r.eigenvalues) {
    f.x0 = std::min(f.x0, z.real());
    f.x1 = std::max(f.x1, z.real());
    f.y0 = std::min(f.y0, z.imag());
    f.y1 = std::max(f.y1, z.imag());
  }
  if (r.eigenvalues.empty()) f = {-1, 1, -1, 1};
  pad(f.x0, f.x1);
  pad(f.y0, f.y1);
  std::ostringstream os;
  os.precision(6);
  os << svg_open(f, "Re lambda", "Im lambda");
  for (const cplx& z : r.eigenvalues) {
    os << "<circle cx=\"" << f.sx(z.real()) << "\" cy=\"" << f.sy(z.imag())
       << "\" r=\"2.5\" fill=\"steelblue\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string growth_curve_svg(const std::vector<SweepPoint>& points) {
  std::map<double, std::vector<std::pair<double, double>>> curves;
  Frame f{INFINITY, -INFINITY, INFINITY, -INFINITY};
  for (const auto& p : points) {
    if (!p.ok) continue;
    curves[p.rho].push_back({p.xi, p.result.max_real});
    f.x0 = std::min(f.x0, p.xi);
    f.x1 = std::max(f.x1, p.xi);
    f.y0 = std::min(f.y0, p.result.max_real);
    f.y1 = std::max(f.y1, p.result.max_real);
  }
  if (curves.empty()) f = {-1, 1, -1, 1};
  pad(f.x0, f.x1);
  pad(f.y0, f.y1);
  std::ostringstream os;
  os.precision(6);
  os << svg_open(f, "xi", "max Re lambda");
  for (auto& [rho, pts] : curves) {
    std::sort(pts.begin(), pts.end());
    os << "<polyline fill=\"none\" stroke=\"firebrick\" points=\"";
    for (const auto& [x, y] : pts) os << f.sx(x) << ',' << f.sy(y) << ' ';
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace transpec
