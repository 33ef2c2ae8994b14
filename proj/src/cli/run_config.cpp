#include "dkg/cli/run_config.hpp"

#include <cmath>
#include <iostream>
#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "dkg/anharmonic_qes.hpp"
#include "dkg/errors.hpp"

namespace dkg::cli {

namespace {

template <class E, std::size_t N>
E enum_from_string(const std::string& s, const std::array<E, N>& all, const char* what) {
  for (E e : all) {
    if (to_string(e) == s) return e;
  }
  std::ostringstream msg;
  msg << "unknown " << what << " '" << s << "' (expected";
  for (std::size_t i = 0; i < N; ++i) msg << (i ? ", " : " ") << to_string(all[i]);
  msg << ")";
  throw DomainError(msg.str());
}

constexpr std::array kModes{Mode::params, Mode::azimuthal, Mode::harmonic, Mode::anharmonic, Mode::verify, Mode::sweep};
constexpr std::array kFormats{Format::csv, Format::json};
constexpr std::array kTargets{Target::harmonic, Target::anharmonic};
constexpr std::array kSectorSets{SectorSet::single, SectorSet::uniform, SectorSet::all};

double* field(RunConfig& c, const std::string& name) {
  if (name == "a") return &c.a;
  if (name == "mass") return &c.mass;
  if (name == "omega") return &c.omega;
  if (name == "Omega") return &c.Omega;
  if (name == "Lambda") return &c.Lambda;
  if (name == "Gamma") return &c.Gamma;
  if (name == "alpha1") return &c.wigner.alpha1;
  if (name == "beta1") return &c.wigner.beta1;
  if (name == "gamma1") return &c.wigner.gamma1;
  if (name == "alpha2") return &c.wigner.alpha2;
  if (name == "beta2") return &c.wigner.beta2;
  if (name == "gamma2") return &c.wigner.gamma2;
  return nullptr;
}

} // namespace

std::string to_string(Mode m) {
  switch (m) {
  case Mode::params: return "params";
  case Mode::azimuthal: return "azimuthal";
  case Mode::harmonic: return "harmonic";
  case Mode::anharmonic: return "anharmonic";
  case Mode::verify: return "verify";
  case Mode::sweep: return "sweep";
  }
  return "?";
}

std::string to_string(Format f) { return f == Format::csv ? "csv" : "json"; }
std::string to_string(Target t) { return t == Target::harmonic ? "harmonic" : "anharmonic"; }

std::string to_string(SectorSet s) {
  switch (s) {
  case SectorSet::single: return "single";
  case SectorSet::uniform: return "uniform";
  case SectorSet::all: return "all";
  }
  return "?";
}

Mode mode_from_string(const std::string& s) { return enum_from_string(s, kModes, "mode"); }
Format format_from_string(const std::string& s) { return enum_from_string(s, kFormats, "format"); }
Target target_from_string(const std::string& s) { return enum_from_string(s, kTargets, "target"); }
SectorSet sector_set_from_string(const std::string& s) { return enum_from_string(s, kSectorSets, "sector set"); }

std::vector<double> SweepSpec::points() const {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(i + 1 == count ? hi : lo + (hi - lo) * i / (count - 1));
  return out;
}

std::vector<ParitySector> RunConfig::sector_list() const {
  switch (sectors) {
  case SectorSet::single: return {ParitySector::make(r1, r2)};
  case SectorSet::uniform: return {ParitySector::make(1, 1), ParitySector::make(-1, -1)};
  case SectorSet::all: {
    const auto all = ParitySector::all();
    return {all.begin(), all.end()};
  }
  }
  return {};
}

void RunConfig::validate() const {
  auto fail = [](const std::string& what) { throw DomainError(what); };
  auto gamma_ok = [](double g) { return std::abs(g) < 1.0 - kGammaMargin; };
  std::ostringstream msg;
  msg.precision(17);
  if (!gamma_ok(wigner.gamma1)) msg << "gamma1 = " << wigner.gamma1 << " violates |gamma1| < 1";
  else if (!gamma_ok(wigner.gamma2)) msg << "gamma2 = " << wigner.gamma2 << " violates |gamma2| < 1";
  else if (r1 != 1 && r1 != -1) msg << "r1 must be +1 or -1 (got " << r1 << ")";
  else if (r2 != 1 && r2 != -1) msg << "r2 must be +1 or -1 (got " << r2 << ")";
  else if (n.empty()) msg << "n must list at least one radial quantum number";
  else if (n_phi < 0) msg << "n_phi must be nonnegative (got " << n_phi << ")";
  else if (!(mass > 0.0)) msg << "mass must be positive (got " << mass << ")";
  else if (!(omega > 0.0)) msg << "omega must be positive (got " << omega << ")";
  else if (!(std::abs(a) < 1.0)) msg << "a = " << a << " violates |a| < 1";
  else if (angular_points < 64) msg << "angular_points must be at least 64";
  else if (radial_points < 64) msg << "radial_points must be at least 64";
  else if (profile_points < 2) msg << "profile_points must be at least 2";
  else if (!(rho_max > 0.0)) msg << "rho_max must be positive";
  if (!msg.str().empty()) fail(msg.str());
  for (int k : n) {
    if (k < 0) fail("n must be nonnegative (got " + std::to_string(k) + ")");
  }
  if (mode == Mode::anharmonic || (mode == Mode::sweep && target == Target::anharmonic)) {
    if (!(Gamma > 0.0)) fail("Gamma must be positive for the sextic model");
  }
  if (!calibrate.empty()) free_parameter_from_string(calibrate);
  if (mode == Mode::sweep && !sweep) fail("sweep mode needs --sweep var:lo:hi:count");
  if (sweep) {
    if (!field(const_cast<RunConfig&>(*this), sweep->variable)) {
      std::string names;
      for (const auto& v : sweep_variables()) names += (names.empty() ? "" : ", ") + v;
      fail("sweep variable '" + sweep->variable + "' is not a config field (expected one of " + names + ")");
    }
    if (sweep->count < 2) fail("sweep count must be at least 2");
    if (!(std::isfinite(sweep->lo) && std::isfinite(sweep->hi))) fail("sweep range must be finite");
  }
}

const std::vector<std::string>& sweep_variables() {
  static const std::vector<std::string> names{"a",      "mass",  "omega",  "Omega",  "Lambda", "Gamma",
                                              "alpha1", "beta1", "gamma1", "alpha2", "beta2",  "gamma2"};
  return names;
}

RunConfig with_variable(const RunConfig& cfg, const std::string& name, double value) {
  RunConfig out = cfg;
  double* f = field(out, name);
  if (!f) throw DomainError("unknown config field '" + name + "'");
  *f = value;
  return out;
}

double variable_value(const RunConfig& cfg, const std::string& name) {
  double* f = field(const_cast<RunConfig&>(cfg), name);
  if (!f) throw DomainError("unknown config field '" + name + "'");
  return *f;
}

SweepSpec parse_sweep(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 4) throw DomainError("sweep must look like var:lo:hi:count (got '" + text + "')");
  SweepSpec s;
  s.variable = parts[0];
  try {
    std::size_t used = 0;
    s.lo = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("lo");
    s.hi = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("hi");
    s.count = std::stoi(parts[3], &used);
    if (used != parts[3].size()) throw std::invalid_argument("count");
  } catch (const std::logic_error&) {
    throw DomainError("sweep must look like var:lo:hi:count (got '" + text + "')");
  }
  return s;
}

std::string format_sweep(const SweepSpec& s) {
  std::ostringstream os;
  os.precision(17);
  os << s.variable << ':' << s.lo << ':' << s.hi << ':' << s.count;
  return os.str();
}

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["mode"] = to_string(c.mode);
  j["alpha1"] = c.wigner.alpha1;
  j["beta1"] = c.wigner.beta1;
  j["gamma1"] = c.wigner.gamma1;
  j["alpha2"] = c.wigner.alpha2;
  j["beta2"] = c.wigner.beta2;
  j["gamma2"] = c.wigner.gamma2;
  j["r1"] = c.r1;
  j["r2"] = c.r2;
  j["sectors"] = to_string(c.sectors);
  j["n"] = c.n;
  j["n_phi"] = c.n_phi;
  j["mass"] = c.mass;
  j["omega"] = c.omega;
  j["Omega"] = c.Omega;
  j["Lambda"] = c.Lambda;
  j["Gamma"] = c.Gamma;
  j["a"] = c.a;
  j["target"] = to_string(c.target);
  if (c.sweep) {
    j["sweep"] = {{"variable", c.sweep->variable}, {"lo", c.sweep->lo}, {"hi", c.sweep->hi}, {"count", c.sweep->count}};
  }
  j["calibrate"] = c.calibrate;
  j["oracle"] = c.oracle;
  j["angular_points"] = c.angular_points;
  j["radial_points"] = c.radial_points;
  j["profile"] = c.profile;
  j["rho_max"] = c.rho_max;
  j["profile_points"] = c.profile_points;
  j["format"] = to_string(c.format);
  return j;
}

RunConfig from_json(const nlohmann::json& in, RunConfig c) {
  const nlohmann::json& j = (in.is_object() && in.contains("config") && in.contains("records")) ? in.at("config") : in;
  if (!j.is_object()) throw DomainError("config must be a JSON object");
  static const std::vector<std::string> known{
      "mode",  "alpha1", "beta1",  "gamma1", "alpha2",    "beta2",  "gamma2",         "r1",     "r2",
      "sectors", "n",    "n_phi",  "mass",   "omega",     "Omega",  "Lambda",         "Gamma",  "a",
      "target", "sweep", "calibrate", "oracle", "angular_points", "radial_points", "profile", "rho_max",
      "profile_points", "format", "out"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) throw DomainError("unknown config key '" + key + "'");
  }
  try {
    auto get = [&j](const char* key, auto& dst) {
      if (j.contains(key)) j.at(key).get_to(dst);
    };
    if (j.contains("mode")) c.mode = mode_from_string(j.at("mode").get<std::string>());
    get("alpha1", c.wigner.alpha1);
    get("beta1", c.wigner.beta1);
    get("gamma1", c.wigner.gamma1);
    get("alpha2", c.wigner.alpha2);
    get("beta2", c.wigner.beta2);
    get("gamma2", c.wigner.gamma2);
    get("r1", c.r1);
    get("r2", c.r2);
    if (j.contains("sectors")) c.sectors = sector_set_from_string(j.at("sectors").get<std::string>());
    if (j.contains("n")) {
      const auto& v = j.at("n");
      c.n = v.is_array() ? v.get<std::vector<int>>() : std::vector<int>{v.get<int>()};
    }
    get("n_phi", c.n_phi);
    get("mass", c.mass);
    get("omega", c.omega);
    get("Omega", c.Omega);
    get("Lambda", c.Lambda);
    get("Gamma", c.Gamma);
    get("a", c.a);
    if (j.contains("target")) c.target = target_from_string(j.at("target").get<std::string>());
    if (j.contains("sweep")) {
      const auto& s = j.at("sweep");
      if (s.is_null()) {
        c.sweep.reset();
      } else if (s.is_string()) {
        c.sweep = parse_sweep(s.get<std::string>());
      } else {
        SweepSpec sw;
        sw.variable = s.at("variable").get<std::string>();
        sw.lo = s.at("lo").get<double>();
        sw.hi = s.at("hi").get<double>();
        sw.count = s.at("count").get<int>();
        c.sweep = sw;
      }
    }
    get("calibrate", c.calibrate);
    get("oracle", c.oracle);
    get("angular_points", c.angular_points);
    get("radial_points", c.radial_points);
    get("profile", c.profile);
    get("rho_max", c.rho_max);
    get("profile_points", c.profile_points);
    if (j.contains("format")) c.format = format_from_string(j.at("format").get<std::string>());
    get("out", c.out);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("config: ") + e.what());
  }
  return c;
}

std::optional<RunConfig> parse_command_line(int argc, char** argv) {
  CLI::App app{"Klein-Gordon oscillator with generalized Dunkl derivatives"};
  app.set_version_flag("--version", "dkg 1.0");

  std::string config_path, mode, sectors, target, format, sweep;
  std::vector<int> n;
  RunConfig c;

  app.add_option("--config", config_path, "JSON config file (flags override its values)");
  app.add_option("--mode", mode, "params | azimuthal | harmonic | anharmonic | verify | sweep");
  app.add_option("--alpha1", c.wigner.alpha1);
  app.add_option("--beta1", c.wigner.beta1);
  app.add_option("--gamma1", c.wigner.gamma1);
  app.add_option("--alpha2", c.wigner.alpha2);
  app.add_option("--beta2", c.wigner.beta2);
  app.add_option("--gamma2", c.wigner.gamma2);
  app.add_option("--r1", c.r1, "reflection eigenvalue of the x-reflection (+1 or -1)");
  app.add_option("--r2", c.r2, "reflection eigenvalue of the y-reflection (+1 or -1)");
  app.add_option("--sectors", sectors, "single (r1, r2) | uniform (++ and --) | all");
  app.add_option("--n", n, "radial quantum number(s), comma separated")->delimiter(',');
  app.add_option("--n-phi", c.n_phi, "azimuthal quantum number");
  app.add_option("--mass", c.mass);
  app.add_option("--omega", c.omega, "harmonic frequency");
  app.add_option("--Omega", c.Omega, "quadratic coupling of the sextic potential");
  app.add_option("--Lambda", c.Lambda, "quartic coupling");
  app.add_option("--Gamma", c.Gamma, "sextic coupling");
  app.add_option("--a", c.a, "common deformation gamma1 = gamma2 = a of the radial problem");
  app.add_option("--target", target, "model evaluated by a sweep: harmonic | anharmonic");
  app.add_option("--sweep", sweep, "var:lo:hi:count");
  app.add_option("--calibrate", c.calibrate, "free parameter for QES truncation: Omega | Lambda | alpha2 | m_prime_sq");
  app.add_flag("--oracle", c.oracle, "also run the grid eigensolvers");
  app.add_option("--angular-points", c.angular_points);
  app.add_option("--radial-points", c.radial_points);
  app.add_flag("--profile", c.profile, "emit wavefunction profiles instead of energies");
  app.add_option("--rho-max", c.rho_max);
  app.add_option("--profile-points", c.profile_points);
  app.add_option("--out", c.out, "output path (default: standard output)");
  app.add_option("--format", format, "csv | json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return std::nullopt;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e);
    return std::nullopt;
  }

  // Defaults < config file < flags.
  RunConfig merged;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw DomainError("cannot read config file '" + config_path + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw DomainError("config file '" + config_path + "': " + e.what());
    }
    merged = from_json(j);
  }
  auto given = [&app](const char* flag) { return app.count(flag) > 0; };
  if (given("--mode")) merged.mode = mode_from_string(mode);
  if (given("--alpha1")) merged.wigner.alpha1 = c.wigner.alpha1;
  if (given("--beta1")) merged.wigner.beta1 = c.wigner.beta1;
  if (given("--gamma1")) merged.wigner.gamma1 = c.wigner.gamma1;
  if (given("--alpha2")) merged.wigner.alpha2 = c.wigner.alpha2;
  if (given("--beta2")) merged.wigner.beta2 = c.wigner.beta2;
  if (given("--gamma2")) merged.wigner.gamma2 = c.wigner.gamma2;
  if (given("--r1")) merged.r1 = c.r1;
  if (given("--r2")) merged.r2 = c.r2;
  if (given("--sectors")) merged.sectors = sector_set_from_string(sectors);
  if (given("--n")) merged.n = n;
  if (given("--n-phi")) merged.n_phi = c.n_phi;
  if (given("--mass")) merged.mass = c.mass;
  if (given("--omega")) merged.omega = c.omega;
  if (given("--Omega")) merged.Omega = c.Omega;
  if (given("--Lambda")) merged.Lambda = c.Lambda;
  if (given("--Gamma")) merged.Gamma = c.Gamma;
  if (given("--a")) merged.a = c.a;
  if (given("--target")) merged.target = target_from_string(target);
  if (given("--sweep")) merged.sweep = parse_sweep(sweep);
  if (given("--calibrate")) merged.calibrate = c.calibrate;
  if (given("--oracle")) merged.oracle = c.oracle;
  if (given("--angular-points")) merged.angular_points = c.angular_points;
  if (given("--radial-points")) merged.radial_points = c.radial_points;
  if (given("--profile")) merged.profile = c.profile;
  if (given("--rho-max")) merged.rho_max = c.rho_max;
  if (given("--profile-points")) merged.profile_points = c.profile_points;
  if (given("--out")) merged.out = c.out;
  if (given("--format")) merged.format = format_from_string(format);
  return merged;
}

} // namespace dkg::cli
