#include "dkg/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dkg {

double laguerre_eval(const LaguerreSpec& spec, double x) {
  const int n = spec.degree;
  const double r = spec.order;
  if (n < 0) return 0.0;
  if (n == 0) return 1.0;
  double prev = 1.0;
  double curr = 1.0 + r - x;
  for (int k = 2; k <= n; ++k) {
    const double next = ((2.0 * k - 1.0 + r - x) * curr - (k - 1.0 + r) * prev) / k;
    prev = curr;
    curr = next;
  }
  return curr;
}

double bisect(const std::function<double(double)>& f, RootBracket b, double tol) {
  if (b.f_lo == 0.0) return b.lo;
  if (b.f_hi == 0.0) return b.hi;
  if (b.f_lo * b.f_hi > 0.0) throw std::invalid_argument("bisect: bracket does not enclose a sign change");
  while (b.hi - b.lo > tol) {
    const double mid = 0.5 * (b.lo + b.hi);
    if (mid <= b.lo || mid >= b.hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (!std::isfinite(fm)) break;
    if ((fm < 0.0) == (b.f_lo < 0.0)) {
      b.lo = mid;
      b.f_lo = fm;
    } else {
      b.hi = mid;
      b.f_hi = fm;
    }
  }
  return 0.5 * (b.lo + b.hi);
}

std::vector<RootBracket> scan_brackets(const std::function<double(double)>& f, double lo, double hi,
                                       int n_subdiv) {
  if (!(lo < hi)) throw std::invalid_argument("scan_brackets: need lo < hi");
  if (n_subdiv < 1) throw std::invalid_argument("scan_brackets: need n_subdiv >= 1");
  std::vector<RootBracket> out;
  const double width = (hi - lo) / n_subdiv;
  double x0 = lo;
  double f0 = f(x0);
  for (int i = 1; i <= n_subdiv; ++i) {
    const double x1 = (i == n_subdiv) ? hi : lo + i * width;
    const double f1 = f(x1);
    if (std::isfinite(f0) && std::isfinite(f1)) {
      // A zero that lands on a panel edge belongs to the panel on its right,
      // except at the final edge.
      const bool change = (f0 < 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 < 0.0) || f0 == 0.0 ||
                          (f1 == 0.0 && i == n_subdiv);
      if (change) out.push_back({x0, x1, f0, f1});
    }
    x0 = x1;
    f0 = f1;
  }
  return out;
}

std::vector<double> find_roots(const std::function<double(double)>& f, double lo, double hi, int n_subdiv,
                               double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("find_roots: need tol > 0");
  std::vector<double> roots;
  for (const auto& b : scan_brackets(f, lo, hi, n_subdiv)) roots.push_back(bisect(f, b, tol));
  return roots;
}

double trapezoid(const std::function<double(double)>& f, double a, double b, int n_points) {
  if (n_points < 2) throw std::invalid_argument("trapezoid: need at least two points");
  const double h = (b - a) / (n_points - 1);
  double sum = 0.5 * (f(a) + f(b));
  for (int i = 1; i < n_points - 1; ++i) sum += f(a + i * h);
  return sum * h;
}

double trapezoid(std::span<const double> samples, double h) {
  if (samples.size() < 2) return 0.0;
  double sum = 0.5 * (samples.front() + samples.back());
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) sum += samples[i];
  return sum * h;
}

} // namespace dkg

namespace dkg {

BracketedSolve secant_in_bracket(const std::function<double(double)>& f, RootBracket b, double tol,
                                 int max_iterations) {
  BracketedSolve out;
  if (b.f_lo == 0.0) return {b.lo, 0, true};
  if (b.f_hi == 0.0) return {b.hi, 0, true};
  if (b.f_lo * b.f_hi > 0.0) throw std::invalid_argument("secant_in_bracket: no sign change");

  int side = 0; // +1 when lo was retained last step, -1 for hi
  double last_width = b.hi - b.lo;
  int slow_steps = 0;
  for (int it = 1; it <= max_iterations; ++it) {
    out.iterations = it;
    double x = (b.lo * b.f_hi - b.hi * b.f_lo) / (b.f_hi - b.f_lo);
    if (slow_steps >= 2 || !(x > b.lo && x < b.hi)) {
      x = 0.5 * (b.lo + b.hi);
      slow_steps = 0;
    }
    const double fx = f(x);
    if (fx == 0.0) return {x, it, true};
    if ((fx < 0.0) == (b.f_lo < 0.0)) {
      b.lo = x;
      b.f_lo = fx;
      if (side == -1) b.f_hi *= 0.5;
      side = -1;
    } else {
      b.hi = x;
      b.f_hi = fx;
      if (side == +1) b.f_lo *= 0.5;
      side = +1;
    }
    const double width = b.hi - b.lo;
    slow_steps = (width > 0.5 * last_width) ? slow_steps + 1 : 0;
    last_width = width;
    const double root = (std::abs(b.f_lo) < std::abs(b.f_hi)) ? b.lo : b.hi;
    if (width <= tol * std::max(1.0, std::abs(root))) return {root, it, true};
  }
  out.root = (std::abs(b.f_lo) < std::abs(b.f_hi)) ? b.lo : b.hi;
  return out;
}

} // namespace dkg
