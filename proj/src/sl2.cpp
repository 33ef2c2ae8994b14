#include "dkg/sl2.hpp"

#include <algorithm>
#include <stdexcept>

namespace dkg {

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
  Polynomial out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  if (a.empty() || b.empty()) return {};
  Polynomial out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Polynomial poly_scale(const Polynomial& a, double s) {
  Polynomial out = a;
  for (double& c : out) c *= s;
  return out;
}

Polynomial poly_derivative(const Polynomial& a) {
  if (a.size() <= 1) return {};
  Polynomial out(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) out[i - 1] = static_cast<double>(i) * a[i];
  return out;
}

Polynomial poly_trim(Polynomial a) {
  while (!a.empty() && a.back() == 0.0) a.pop_back();
  return a;
}

double poly_eval(const Polynomial& a, double z) {
  double acc = 0.0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * z + *it;
  return acc;
}

DiffOp::DiffOp(std::vector<Polynomial> coeffs) : coeffs_(std::move(coeffs)) {}

DiffOp DiffOp::multiply_by(const Polynomial& p) { return DiffOp({p}); }

DiffOp DiffOp::derivative() { return DiffOp({{}, {1.0}}); }

DiffOp DiffOp::operator*(const DiffOp& rhs) const {
  // a_i d^i (b_j d^j) = sum_l binom(i, l) a_i b_j^{(l)} d^{i - l + j}
  std::vector<Polynomial> out(coeffs_.size() + rhs.coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
      Polynomial deriv = rhs.coeffs_[j];
      double binom = 1.0;
      for (std::size_t l = 0; l <= i; ++l) {
        const std::size_t order = i - l + j;
        out[order] = poly_add(out[order], poly_scale(poly_mul(coeffs_[i], deriv), binom));
        binom = binom * static_cast<double>(i - l) / static_cast<double>(l + 1);
        deriv = poly_derivative(deriv);
      }
    }
  }
  while (!out.empty() && poly_trim(out.back()).empty()) out.pop_back();
  return DiffOp(std::move(out));
}

DiffOp DiffOp::operator+(const DiffOp& rhs) const {
  std::vector<Polynomial> out(std::max(coeffs_.size(), rhs.coeffs_.size()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = poly_add(out[i], coeffs_[i]);
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) out[i] = poly_add(out[i], rhs.coeffs_[i]);
  return DiffOp(std::move(out));
}

DiffOp DiffOp::operator-(const DiffOp& rhs) const { return *this + rhs.scaled(-1.0); }

DiffOp DiffOp::scaled(double s) const {
  std::vector<Polynomial> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(poly_scale(c, s));
  return DiffOp(std::move(out));
}

Polynomial DiffOp::apply(const Polynomial& f) const {
  Polynomial out;
  Polynomial deriv = f;
  for (const auto& c : coeffs_) {
    out = poly_add(out, poly_mul(c, deriv));
    deriv = poly_derivative(deriv);
  }
  return out;
}

Polynomial DiffOp::coefficient(int j) const {
  if (j < 0 || j >= static_cast<int>(coeffs_.size())) return {};
  return coeffs_[static_cast<std::size_t>(j)];
}

DiffOp j_plus(int n) { return DiffOp({{0.0, -static_cast<double>(n)}, {0.0, 0.0, 1.0}}); }

DiffOp j_zero(int n) { return DiffOp({{-0.5 * n}, {0.0, 1.0}}); }

DiffOp j_minus() { return DiffOp::derivative(); }

DiffOp commutator(const DiffOp& a, const DiffOp& b) { return a * b - b * a; }

DiffOp sl2_operator(const Sl2Coefficients& k, int n) {
  const DiffOp jp = j_plus(n);
  const DiffOp j0 = j_zero(n);
  const DiffOp jm = j_minus();
  return (jp * jp).scaled(k.c_pp) + (jp * j0).scaled(k.c_p0) + (jp * jm).scaled(k.c_pm) +
         (j0 * jm).scaled(k.c_0m) + (jm * jm).scaled(k.c_mm) + jp.scaled(k.c_p) + j0.scaled(k.c_0) +
         jm.scaled(k.c_m) + DiffOp::multiply_by({k.c});
}

PPolynomials sl2_p_polynomials(const Sl2Coefficients& k, int n) {
  const double nn = n;
  PPolynomials out;
  out.p4 = {k.c_mm, k.c_0m, k.c_pm, k.c_p0, k.c_pp};
  out.p3 = {k.c_m - 0.5 * nn * k.c_0m, k.c_0 - nn * k.c_pm, k.c_p + k.c_p0 * (1.0 - 1.5 * nn),
            k.c_pp * (2.0 - 2.0 * nn)};
  out.p2 = {k.c - 0.5 * nn * k.c_0, 0.5 * nn * nn * k.c_p0 - nn * k.c_p, k.c_pp * nn * (nn - 1.0)};
  return out;
}

PPolynomials p_polynomials_of(const DiffOp& op) {
  if (op.order() > 2) throw std::invalid_argument("p_polynomials_of: operator order exceeds 2");
  return {op.coefficient(2), op.coefficient(1), op.coefficient(0)};
}

} // namespace dkg
