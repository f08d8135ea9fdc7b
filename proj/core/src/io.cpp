#include "nls/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace nls {

namespace {

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  return os;
}

// Minimal JSON string escaping; report content is plain ASCII in practice.
std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string json_number(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  return format_double(v);
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* const kDiagnosticsHeader =
    "t,mass,kinetic,potential_energy,nonlinear_energy,total_E,"
    "modified_E_lambda,sigma_norm,sigma_tilde_norm,b1_norm,sup_norm";

void write_diagnostics_csv(const Trajectory& traj, std::ostream& os) {
  os << kDiagnosticsHeader << '\n';
  for (const DiagnosticsRow& r : traj.diagnostics) {
    os << format_double(r.t) << ',' << format_double(r.mass) << ','
       << format_double(r.kinetic) << ',' << format_double(r.potential_energy)
       << ',' << format_double(r.nonlinear_energy) << ','
       << format_double(r.total_E) << ',' << format_double(r.modified_E_lambda)
       << ',' << format_double(r.sigma_norm) << ','
       << format_double(r.sigma_tilde_norm) << ',' << format_double(r.b1_norm)
       << ',' << format_double(r.sup_norm) << '\n';
  }
}

void write_diagnostics_csv(const Trajectory& traj, const std::string& path) {
  auto os = open_or_throw(path);
  write_diagnostics_csv(traj, os);
}

void write_ray_csv(const RayBundle& b, std::ostream& os) {
  os << "t,y,x,xi,J,phi\n";
  for (std::size_t ti = 0; ti < b.n_times(); ++ti)
    for (std::size_t ri = 0; ri < b.n_rays(); ++ri)
      os << format_double(b.times[ti]) << ',' << format_double(b.y[ri]) << ','
         << format_double(b.at(b.x, ti, ri)) << ','
         << format_double(b.at(b.xi, ti, ri)) << ','
         << format_double(b.at(b.dxdy, ti, ri)) << ','
         << format_double(b.at(b.phi, ti, ri)) << '\n';
}

void write_ray_csv(const RayBundle& b, const std::string& path) {
  auto os = open_or_throw(path);
  write_ray_csv(b, os);
}

void write_xy_dat(std::span<const double> x, std::span<const double> y,
                  std::ostream& os) {
  if (x.size() != y.size())
    throw std::invalid_argument("write_xy_dat: length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i)
    os << format_double(x[i]) << ' ' << format_double(y[i]) << '\n';
}

void write_xy_dat(std::span<const double> x, std::span<const double> y,
                  const std::string& path) {
  auto os = open_or_throw(path);
  write_xy_dat(x, y, os);
}

void write_report_json(const ExperimentReport& rep, std::ostream& os) {
  os << "{\n";
  os << "  \"name\": \"" << json_escape(rep.name) << "\",\n";
  os << "  \"pass\": " << (rep.pass ? "true" : "false") << ",\n";
  if (!rep.note.empty())
    os << "  \"note\": \"" << json_escape(rep.note) << "\",\n";
  os << "  \"parameters\": {";
  for (std::size_t i = 0; i < rep.parameters.size(); ++i) {
    if (i) os << ",";
    os << "\n    \"" << json_escape(rep.parameters[i].first) << "\": \""
       << json_escape(rep.parameters[i].second) << "\"";
  }
  os << (rep.parameters.empty() ? "},\n" : "\n  },\n");
  os << "  \"measured\": {";
  for (std::size_t i = 0; i < rep.measured.size(); ++i) {
    if (i) os << ",";
    os << "\n    \"" << json_escape(rep.measured[i].first)
       << "\": " << json_number(rep.measured[i].second);
  }
  os << (rep.measured.empty() ? "},\n" : "\n  },\n");
  os << "  \"artifacts\": [";
  for (std::size_t i = 0; i < rep.artifacts.size(); ++i) {
    if (i) os << ",";
    os << "\n    \"" << json_escape(rep.artifacts[i]) << "\"";
  }
  os << (rep.artifacts.empty() ? "]\n" : "\n  ]\n");
  os << "}\n";
}

void write_report_json(const ExperimentReport& rep, const std::string& path) {
  auto os = open_or_throw(path);
  write_report_json(rep, os);
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec)
    throw std::runtime_error("cannot create directory " + path + ": " +
                             ec.message());
}

}  // namespace nls
