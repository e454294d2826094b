#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "transpec/bifurcation.hpp"
#include "transpec/spectrum_analytic.hpp"
#include "transpec/spectrum_numeric.hpp"
#include "transpec/stokes.hpp"

namespace transpec {

using nlohmann::json;

// Wave coefficients as emitted by the `wave` subcommand (the model is
// referenced by id and parameters).
struct WaveRecord {
  std::string model;
  double gamma;
  double beta;
  double k;
  double eps;
  double eta2;
  double eta3;
  double c0;
  double c2;
  double residual;
};

WaveRecord make_wave_record(const StokesWave& wave, int residual_modes = 32);

void to_json(json& j, const WaveRecord& r);
void from_json(const json& j, WaveRecord& r);
void to_json(json& j, const CollisionRecord& r);
void from_json(const json& j, CollisionRecord& r);
void to_json(json& j, const Condition& c);
void from_json(const json& j, Condition& c);
void to_json(json& j, const Verdict& v);
void from_json(const json& j, Verdict& v);
void to_json(json& j, const Interval& w);
void from_json(const json& j, Interval& w);
void to_json(json& j, const SpectrumResult& r);
void from_json(const json& j, SpectrumResult& r);
void to_json(json& j, const Bubble& b);
void from_json(const json& j, Bubble& b);

Outcome outcome_from_string(const std::string& s);

// Shortest text that reads back to the same double (at most 17 digits).
std::string format_double(double v);
// "re,im" lines with a header, 17 significant digits.
std::string spectrum_csv(const SpectrumResult& r);
std::string profile_csv(const StokesWave& wave, int samples);

// Human-readable tables.
std::string atlas_table(const std::vector<AtlasRow>& rows);
json atlas_json(const std::vector<AtlasRow>& rows);

// Minimal SVG plots.
std::string spectrum_svg(const SpectrumResult& r);
std::string growth_curve_svg(const std::vector<SweepPoint>& points);

}  // namespace transpec
