#include "dkg/operator_params.hpp"

#include <cmath>
#include <sstream>

#include "dkg/azimuthal.hpp"
#include "dkg/errors.hpp"

namespace dkg {

namespace {

struct AxisParams {
  double xi;
  double mu;
  double nu;
};

AxisParams reduce_axis(double alpha, double beta, double gamma, double margin, const char* name) {
  if (!(std::abs(gamma) < 1.0 - margin)) {
    std::ostringstream msg;
    msg << name << " = " << gamma << " violates |gamma| < 1";
    throw DomainError(msg.str());
  }
  const double denom = 1.0 - gamma * gamma;
  return {(alpha - beta * gamma) / denom,
          (alpha * alpha - beta * beta - alpha + beta * gamma) / denom,
          -(beta - alpha * gamma) / denom};
}

} // namespace

WignerParams WignerParams::with_common_gamma(double a) const {
  WignerParams out = *this;
  out.gamma1 = a;
  out.gamma2 = a;
  return out;
}

std::array<ParitySector, 4> ParitySector::all() {
  return {ParitySector{+1, +1}, ParitySector{+1, -1}, ParitySector{-1, +1}, ParitySector{-1, -1}};
}

ParitySector ParitySector::make(int r1, int r2) {
  auto ok = [](int r) { return r == 1 || r == -1; };
  if (!ok(r1) || !ok(r2)) {
    std::ostringstream msg;
    msg << "reflection eigenvalues must be +1 or -1, got (" << r1 << ", " << r2 << ")";
    throw DomainError(msg.str());
  }
  return {r1, r2};
}

std::string ParitySector::label() const {
  std::string out;
  out += (r1 > 0 ? '+' : '-');
  out += (r2 > 0 ? '+' : '-');
  return out;
}

DerivedParams derive_params(const WignerParams& w, double margin) {
  const auto x = reduce_axis(w.alpha1, w.beta1, w.gamma1, margin, "gamma1");
  const auto y = reduce_axis(w.alpha2, w.beta2, w.gamma2, margin, "gamma2");
  return {x.xi, y.xi, x.mu, y.mu, x.nu, y.nu};
}

bool ValidationReport::ok() const {
  for (const auto& c : checks) {
    if (!c.ok) return false;
  }
  return true;
}

const ValidationCheck* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

ValidationReport validate(const WignerParams& w, const ParitySector& s, int n_phi) {
  ValidationReport report;
  auto gamma_check = [&](const char* name, double g) {
    const bool ok = std::abs(g) < 1.0 - kGammaMargin;
    std::ostringstream detail;
    detail << name << " = " << g;
    if (!ok) detail << " violates |gamma| < 1";
    report.checks.push_back({std::string(name) + " constraint", ok, detail.str()});
    return ok;
  };
  const bool g1 = gamma_check("gamma1", w.gamma1);
  const bool g2 = gamma_check("gamma2", w.gamma2);
  if (!(g1 && g2)) {
    report.checks.push_back({"k1 real", false, "not evaluated: gamma constraint violated"});
    report.checks.push_back({"k2 real", false, "not evaluated: gamma constraint violated"});
    report.checks.push_back({"m_prime_sq >= 0", false, "not evaluated: gamma constraint violated"});
    return report;
  }

  const DerivedParams d = derive_params(w);
  const auto radicands = k_radicands(d, s);
  bool k_ok = true;
  for (int i = 0; i < 2; ++i) {
    const bool ok = radicands[i] >= 0.0;
    k_ok = k_ok && ok;
    std::ostringstream detail;
    detail << "radicand = " << radicands[i];
    if (!ok) detail << " (k" << (i + 1) << " complex)";
    report.checks.push_back({i == 0 ? "k1 real" : "k2 real", ok, detail.str()});
  }
  if (!k_ok) {
    report.checks.push_back({"m_prime_sq >= 0", false, "not evaluated: k complex"});
    return report;
  }
  const double mp2 = m_prime_squared(d, s, n_phi);
  std::ostringstream detail;
  detail << "m'^2 = " << mp2 << " at n_phi = " << n_phi;
  report.checks.push_back({"m_prime_sq >= 0", mp2 >= 0.0, detail.str()});
  return report;
}

} // namespace dkg
