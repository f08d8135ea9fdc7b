#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nls/geometric_optics.hpp"
#include "nls/trajectory.hpp"

namespace nls {

// 17 significant digits, '.' decimal point: round-trips every double.
std::string format_double(double v);

// Header row matches the DiagnosticsRow field order.
extern const char* const kDiagnosticsHeader;

void write_diagnostics_csv(const Trajectory& traj, std::ostream& os);
void write_diagnostics_csv(const Trajectory& traj, const std::string& path);

// Ray fan, one row per (recorded time, ray): t,y,x,xi,J,phi.
void write_ray_csv(const RayBundle& b, std::ostream& os);
void write_ray_csv(const RayBundle& b, const std::string& path);

// Two-column plot data, space separated.
void write_xy_dat(std::span<const double> x, std::span<const double> y,
                  std::ostream& os);
void write_xy_dat(std::span<const double> x, std::span<const double> y,
                  const std::string& path);

// Structured experiment outcome; serialized as a small JSON object.
struct ExperimentReport {
  std::string name;
  bool pass = false;
  std::string note;  // one-line diagnosis when it matters
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::pair<std::string, double>> measured;
  std::vector<std::string> artifacts;  // paths of files the experiment wrote
};

void write_report_json(const ExperimentReport& rep, std::ostream& os);
void write_report_json(const ExperimentReport& rep, const std::string& path);

// mkdir -p equivalent; throws std::runtime_error on failure.
void ensure_directory(const std::string& path);

}  // namespace nls
