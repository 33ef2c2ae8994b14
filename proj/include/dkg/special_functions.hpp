#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace dkg {

/// Generalized Laguerre polynomial L_n^r. Evaluation is allowed for any real
/// order r; orthogonality needs r > -1.
struct LaguerreSpec {
  int degree = 0;
  double order = 0.0;
};

/// L_n^r(x) by the three-term recurrence
///   k L_k = (2k - 1 + r - x) L_{k-1} - (k - 1 + r) L_{k-2}.
/// Negative degrees evaluate to 0, which makes the derivative identity
/// d/dx L_n^r = -L_{n-1}^{r+1} hold for n = 0 as well.
double laguerre_eval(const LaguerreSpec& spec, double x);

struct RootBracket {
  double lo = 0.0;
  double hi = 0.0;
  double f_lo = 0.0;
  double f_hi = 0.0;
};

inline constexpr double kDefaultRootTol = 1e-10;
inline constexpr int kDefaultPanels = 400;

/// Bisects a sign-change bracket until hi - lo <= tol or the interval can no
/// longer be split in floating point.
double bisect(const std::function<double(double)>& f, RootBracket bracket, double tol = kDefaultRootTol);

/// Scans [lo, hi] in n_subdiv equal panels and bisects every sign change.
/// Panels where f is not finite at either end are skipped, so f may return
/// NaN outside its domain. Roots are returned in ascending order.
std::vector<double> find_roots(const std::function<double(double)>& f, double lo, double hi,
                               int n_subdiv = kDefaultPanels, double tol = kDefaultRootTol);

/// Sign-change brackets found by the same scan as find_roots.
std::vector<RootBracket> scan_brackets(const std::function<double(double)>& f, double lo, double hi,
                                       int n_subdiv);

/// Composite trapezoid rule of f on [a, b] with n_points samples.
double trapezoid(const std::function<double(double)>& f, double a, double b, int n_points);

/// Composite trapezoid rule over tabulated samples with uniform spacing h.
double trapezoid(std::span<const double> samples, double h);

} // namespace dkg

namespace dkg {

struct BracketedSolve {
  double root = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Safeguarded secant (Illinois false position) on a sign-change bracket;
/// falls back to a bisection step whenever the bracket fails to halve over
/// two consecutive iterations. Converges when the bracket width drops below
/// tol * max(1, |root|).
BracketedSolve secant_in_bracket(const std::function<double(double)>& f, RootBracket bracket, double tol,
                                 int max_iterations);

} // namespace dkg
