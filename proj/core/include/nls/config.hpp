#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nls/potential.hpp"
#include "nls/trajectory.hpp"
#include "nls/wavefield.hpp"

namespace nls {

struct GridSpec {
  int dim = 1;
  double half_width = 16;
  int points = 1024;
};

// Initial data catalog. Unless amplitude is given, a gaussian is normalized
// to unit L2 mass analytically; the other profiles default to amplitude 1.
struct IcSpec {
  enum class Kind { Gaussian, SoftDecay, Truncated };
  Kind kind = Kind::Gaussian;
  std::optional<double> amplitude;
  // gaussian: A exp(-|x-center|^2/(2 width^2)) exp(i momentum.x)
  double width = 1;
  std::array<double, 2> center{};
  std::array<double, 2> momentum{};
  // soft_decay: A <x>^{-p}
  double p = 1;
  // truncated: inner profile times a smooth cutoff chi(|x|/radius),
  // chi = 1 on |s| <= 1 and 0 on |s| >= 2
  Kind inner = Kind::SoftDecay;
  double radius = 8;
};

struct ExperimentSpec {
  std::string name;
  std::vector<double> radii;  // sharp-weight truncation radii
  std::optional<double> tau;  // sharp-weight observation time
  std::vector<double> times;  // wkb sample times
};

struct RunConfig {
  GridSpec grid;
  Potential potential = Potential::zero();
  SimulationParams params;
  IcSpec ic;
  std::string output_dir = "out";
  std::optional<ExperimentSpec> experiment;
};

// Flat sectioned key=value text: sections [grid], [potential], [params],
// [ic], [output], [experiment]; '#' starts a comment. Unknown sections or
// keys, malformed values, and invalid combinations raise ConfigError
// anchored to file:line.
RunConfig load_config(const std::string& path);
RunConfig parse_config(std::istream& in, const std::string& name);

GridPtr make_grid(const GridSpec& spec);

// Smooth bump: 1 on |s| <= 1, 0 on |s| >= 2, exp(-1/t) glue between.
double smooth_cutoff(double s);

WaveField build_initial_condition(const GridPtr& g, const IcSpec& ic);

}  // namespace nls
