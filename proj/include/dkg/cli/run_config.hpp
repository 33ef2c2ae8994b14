#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dkg/operator_params.hpp"

namespace dkg::cli {

enum class Mode { params, azimuthal, harmonic, anharmonic, verify, sweep };
enum class Format { csv, json };
/// Which model a sweep evaluates.
enum class Target { harmonic, anharmonic };
/// `single` uses (r1, r2); `uniform` the (+1,+1) and (-1,-1) pair; `all` the four sectors.
enum class SectorSet { single, uniform, all };

std::string to_string(Mode m);
std::string to_string(Format f);
std::string to_string(Target t);
std::string to_string(SectorSet s);
Mode mode_from_string(const std::string& s);
Format format_from_string(const std::string& s);
Target target_from_string(const std::string& s);
SectorSet sector_set_from_string(const std::string& s);

struct SweepSpec {
  std::string variable = "a";
  double lo = 0.0;
  double hi = 0.0;
  int count = 2;

  std::vector<double> points() const;
};

struct RunConfig {
  Mode mode = Mode::params;
  WignerParams wigner;
  int r1 = 1;
  int r2 = 1;
  SectorSet sectors = SectorSet::single;
  std::vector<int> n = {0};
  int n_phi = 0;
  double mass = 1.0;
  double omega = 1.0;
  double Omega = 0.0;
  double Lambda = 0.0;
  double Gamma = 1.0;
  double a = 0.0;
  Target target = Target::harmonic;
  std::optional<SweepSpec> sweep;
  /// Free parameter name for QES truncation; empty disables calibration.
  std::string calibrate;

  bool oracle = false;
  int angular_points = 2048;
  int radial_points = 4096;

  /// Emit wavefunction profiles (rho, psi_n) instead of energies.
  bool profile = false;
  double rho_max = 4.0;
  int profile_points = 201;

  std::string out;
  Format format = Format::csv;

  std::vector<ParitySector> sector_list() const;
  /// Throws DomainError naming the offending field.
  void validate() const;
};

/// Names accepted by --sweep.
const std::vector<std::string>& sweep_variables();
/// Copy of cfg with the named sweep variable set to value.
RunConfig with_variable(const RunConfig& cfg, const std::string& name, double value);
double variable_value(const RunConfig& cfg, const std::string& name);

/// "var:lo:hi:count".
SweepSpec parse_sweep(const std::string& text);
std::string format_sweep(const SweepSpec& s);

nlohmann::json to_json(const RunConfig& cfg);
/// Accepts a config object or a previous JSON output ({"config": ..., "records": ...}).
/// Absent keys keep the values already in `base`.
RunConfig from_json(const nlohmann::json& j, RunConfig base = {});

/// Parses argv (CLI11). Throws CLI::ParseError subclasses for bad flags and
/// DomainError for bad values. Returns nullopt when help was printed.
std::optional<RunConfig> parse_command_line(int argc, char** argv);

} // namespace dkg::cli
