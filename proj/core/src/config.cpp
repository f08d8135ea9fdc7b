#include "nls/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "nls/errors.hpp"

namespace nls {

namespace {

struct Entry {
  std::string value;
  int line = 0;
  mutable bool used = false;
};

using Section = std::map<std::string, Entry>;

struct RawConfig {
  std::string name;
  std::map<std::string, Section> sections;
  std::map<std::string, int> section_lines;

  const Section* find(const std::string& s) const {
    auto it = sections.find(s);
    return it == sections.end() ? nullptr : &it->second;
  }
};

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

RawConfig read_raw(std::istream& in, const std::string& name) {
  RawConfig raw;
  raw.name = name;
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ConfigError(name, lineno, "malformed section header");
      section = trim(t.substr(1, t.size() - 2));
      if (section.empty())
        throw ConfigError(name, lineno, "empty section name");
      raw.section_lines.emplace(section, lineno);
      raw.sections[section];
      continue;
    }
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(name, lineno, "expected key = value");
    if (section.empty())
      throw ConfigError(name, lineno, "key outside any section");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw ConfigError(name, lineno, "empty key");
    if (value.empty()) throw ConfigError(name, lineno, "empty value");
    auto [it, fresh] = raw.sections[section].emplace(key, Entry{value, lineno});
    if (!fresh)
      throw ConfigError(name, lineno, "duplicate key '" + key + "'");
  }
  return raw;
}

class SectionReader {
 public:
  SectionReader(const RawConfig& raw, const std::string& section)
      : raw_(raw), name_(section), sec_(raw.find(section)) {}

  bool present() const { return sec_ != nullptr; }

  const Entry* get(const std::string& key) const {
    if (!sec_) return nullptr;
    auto it = sec_->find(key);
    if (it == sec_->end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  std::string require_string(const std::string& key) const {
    const Entry* e = get(key);
    if (!e) throw ConfigError(raw_.name, section_line(), "[" + name_ + "] missing key '" + key + "'");
    return e->value;
  }

  double parse_double(const std::string& key, const Entry& e) const {
    try {
      std::size_t pos = 0;
      double v = std::stod(e.value, &pos);
      if (pos != e.value.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      throw ConfigError(raw_.name, e.line, "key '" + key + "': expected a number, got '" + e.value + "'");
    }
  }

  double require_double(const std::string& key) const {
    const Entry* e = get(key);
    if (!e) throw ConfigError(raw_.name, section_line(), "[" + name_ + "] missing key '" + key + "'");
    return parse_double(key, *e);
  }

  double get_double(const std::string& key, double fallback) const {
    const Entry* e = get(key);
    return e ? parse_double(key, *e) : fallback;
  }

  int require_int(const std::string& key) const {
    double v = require_double(key);
    if (v != std::floor(v))
      throw ConfigError(raw_.name, get(key)->line, "key '" + key + "': expected an integer");
    return static_cast<int>(v);
  }

  int get_int(const std::string& key, int fallback) const {
    const Entry* e = get(key);
    if (!e) return fallback;
    double v = parse_double(key, *e);
    if (v != std::floor(v))
      throw ConfigError(raw_.name, e->line, "key '" + key + "': expected an integer");
    return static_cast<int>(v);
  }

  std::vector<double> get_list(const std::string& key) const {
    const Entry* e = get(key);
    if (!e) return {};
    std::vector<double> out;
    std::stringstream ss(e->value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      try {
        std::size_t pos = 0;
        out.push_back(std::stod(item, &pos));
        if (pos != item.size()) throw std::invalid_argument("");
      } catch (...) {
        throw ConfigError(raw_.name, e->line, "key '" + key + "': expected comma-separated numbers");
      }
    }
    if (out.empty())
      throw ConfigError(raw_.name, e->line, "key '" + key + "': empty list");
    return out;
  }

  int section_line() const {
    auto it = raw_.section_lines.find(name_);
    return it == raw_.section_lines.end() ? 0 : it->second;
  }

  void reject_unused() const {
    if (!sec_) return;
    for (const auto& [key, entry] : *sec_)
      if (!entry.used)
        throw ConfigError(raw_.name, entry.line, "[" + name_ + "] unknown key '" + key + "'");
  }

 private:
  const RawConfig& raw_;
  std::string name_;
  const Section* sec_;
};

Potential parse_potential(const RawConfig& raw, const SectionReader& sec,
                          int dim) {
  std::string family = sec.present() ? sec.require_string("family") : "zero";
  int famline = sec.present() && sec.get("family") ? sec.get("family")->line
                                                   : sec.section_line();
  if (family == "zero") return Potential::zero();
  if (family == "harmonic") {
    std::vector<double> omega = sec.get_list("omega");
    if (omega.empty()) return Potential::harmonic(1.0);
    if (omega.size() == 1) return Potential::harmonic(omega[0]);
    return Potential::harmonic({omega.data(), omega.size()});
  }
  if (family == "inverted_harmonic")
    return Potential::inverted_harmonic(sec.get_double("omega", 1.0));
  if (family == "stark") {
    std::vector<double> field = sec.get_list("field");
    if (field.empty()) field = {1.0};
    return Potential::stark({field.data(), field.size()});
  }
  if (family == "soft_linear") return Potential::soft_linear();
  if (family == "soft_power")
    return Potential::soft_power(sec.get_double("m", 3.0));
  if (family == "negated_soft_power")
    return Potential::negated_soft_power(sec.get_double("m", 3.0));
  if (family == "anisotropic_quadratic") {
    std::vector<double> a = sec.get_list("A");
    std::vector<double> b = sec.get_list("b");
    double c = sec.get_double("c", 0.0);
    std::array<double, 4> A{};
    std::array<double, 2> B{};
    if (dim == 1) {
      if (a.size() != 1)
        throw ConfigError(raw.name, famline, "1D anisotropic_quadratic needs A = a11");
      A[0] = a[0];
      if (b.size() > 1)
        throw ConfigError(raw.name, famline, "1D anisotropic_quadratic needs b = b1");
      if (!b.empty()) B[0] = b[0];
    } else {
      if (a.size() != 4)
        throw ConfigError(raw.name, famline, "2D anisotropic_quadratic needs A = a11,a12,a21,a22");
      std::copy(a.begin(), a.end(), A.begin());
      if (!b.empty() && b.size() != 2)
        throw ConfigError(raw.name, famline, "2D anisotropic_quadratic needs b = b1,b2");
      if (!b.empty()) std::copy(b.begin(), b.end(), B.begin());
    }
    return Potential::anisotropic_quadratic(dim, A, B, c);
  }
  throw ConfigError(raw.name, famline, "unknown potential family '" + family + "'");
}

IcSpec::Kind parse_ic_kind(const RawConfig& raw, const Entry& e) {
  if (e.value == "gaussian") return IcSpec::Kind::Gaussian;
  if (e.value == "soft_decay") return IcSpec::Kind::SoftDecay;
  if (e.value == "truncated") return IcSpec::Kind::Truncated;
  throw ConfigError(raw.name, e.line, "unknown ic kind '" + e.value + "'");
}

}  // namespace

RunConfig parse_config(std::istream& in, const std::string& name) {
  RawConfig raw = read_raw(in, name);
  for (const auto& [sname, _] : raw.sections)
    if (sname != "grid" && sname != "potential" && sname != "params" &&
        sname != "ic" && sname != "output" && sname != "experiment")
      throw ConfigError(name, raw.section_lines.at(sname), "unknown section [" + sname + "]");

  RunConfig cfg;

  SectionReader grid(raw, "grid");
  cfg.grid.dim = grid.get_int("dim", 1);
  cfg.grid.half_width = grid.get_double("half_width", 16.0);
  cfg.grid.points = grid.get_int("points", 1024);
  if (cfg.grid.dim != 1 && cfg.grid.dim != 2)
    throw ConfigError(name, grid.section_line(), "[grid] dim must be 1 or 2");

  SectionReader pot(raw, "potential");
  cfg.potential = parse_potential(raw, pot, cfg.grid.dim);

  SectionReader par(raw, "params");
  cfg.params.lambda = par.get_double("lambda", 0.0);
  cfg.params.sigma = par.get_double("sigma", 1.0);
  cfg.params.dt = par.get_double("dt", 1e-3);
  cfg.params.T = par.get_double("T", 1.0);
  cfg.params.record_every = par.get_int("record_every", 10);
  cfg.params.blowup_factor = par.get_double("blowup_factor", 1e6);

  SectionReader ic(raw, "ic");
  if (const Entry* e = ic.get("kind")) cfg.ic.kind = parse_ic_kind(raw, *e);
  if (const Entry* e = ic.get("amplitude"))
    cfg.ic.amplitude = ic.parse_double("amplitude", *e);
  cfg.ic.width = ic.get_double("width", 1.0);
  std::vector<double> center = ic.get_list("center");
  std::vector<double> momentum = ic.get_list("momentum");
  for (std::size_t i = 0; i < center.size() && i < 2; ++i)
    cfg.ic.center[i] = center[i];
  for (std::size_t i = 0; i < momentum.size() && i < 2; ++i)
    cfg.ic.momentum[i] = momentum[i];
  cfg.ic.p = ic.get_double("p", 1.0);
  if (const Entry* e = ic.get("inner")) {
    cfg.ic.inner = parse_ic_kind(raw, *e);
    if (cfg.ic.inner == IcSpec::Kind::Truncated)
      throw ConfigError(name, e->line, "truncated ic cannot nest another truncation");
  }
  cfg.ic.radius = ic.get_double("radius", 8.0);

  SectionReader out(raw, "output");
  if (out.present()) cfg.output_dir = out.require_string("dir");

  SectionReader exp(raw, "experiment");
  if (exp.present()) {
    ExperimentSpec spec;
    spec.name = exp.require_string("name");
    spec.radii = exp.get_list("radii");
    if (const Entry* e = exp.get("tau"))
      spec.tau = exp.parse_double("tau", *e);
    spec.times = exp.get_list("times");
    cfg.experiment = std::move(spec);
  }

  grid.reject_unused();
  pot.reject_unused();
  par.reject_unused();
  ic.reject_unused();
  out.reject_unused();
  exp.reject_unused();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "cannot open file");
  return parse_config(in, path);
}

GridPtr make_grid(const GridSpec& spec) {
  return make_grid(spec.dim, spec.half_width, spec.points);
}

double smooth_cutoff(double s) {
  s = std::abs(s);
  if (s <= 1) return 1;
  if (s >= 2) return 0;
  double rise = std::exp(-1.0 / (2.0 - s));
  double fall = std::exp(-1.0 / (s - 1.0));
  return rise / (rise + fall);
}

WaveField build_initial_condition(const GridPtr& g, const IcSpec& ic) {
  const int d = g->dim();
  auto gaussian = [&](const double* x) -> cdouble {
    double q = 0, px = 0;
    for (int a = 0; a < d; ++a) {
      double r = x[a] - ic.center[a];
      q += r * r;
      px += ic.momentum[a] * x[a];
    }
    double amp = ic.amplitude
                     ? *ic.amplitude
                     : std::pow(M_PI * ic.width * ic.width, -0.25 * d);
    return amp * std::exp(-q / (2 * ic.width * ic.width)) *
           std::polar(1.0, px);
  };
  auto soft_decay = [&](const double* x) -> cdouble {
    double r2 = 0;
    for (int a = 0; a < d; ++a) r2 += x[a] * x[a];
    double amp = ic.amplitude ? *ic.amplitude : 1.0;
    return amp * std::pow(1.0 + r2, -0.5 * ic.p);
  };
  switch (ic.kind) {
    case IcSpec::Kind::Gaussian:
      return sample_field(g, [&](const double* x) { return gaussian(x); });
    case IcSpec::Kind::SoftDecay:
      return sample_field(g, [&](const double* x) { return soft_decay(x); });
    case IcSpec::Kind::Truncated: {
      if (!(ic.radius > 0))
        throw std::invalid_argument("truncated ic: radius must be > 0");
      if (ic.inner == IcSpec::Kind::Truncated)
        throw std::invalid_argument(
            "truncated ic: inner profile cannot be another truncation");
      auto inner = [&](const double* x) {
        return ic.inner == IcSpec::Kind::Gaussian ? gaussian(x)
                                                  : soft_decay(x);
      };
      return sample_field(g, [&](const double* x) {
        double r2 = 0;
        for (int a = 0; a < d; ++a) r2 += x[a] * x[a];
        return inner(x) * smooth_cutoff(std::sqrt(r2) / ic.radius);
      });
    }
  }
  throw std::invalid_argument("unknown ic kind");
}

}  // namespace nls
