#pragma once

#include <vector>

namespace dkg {

/// Coefficients c_0 + c_1 Z + c_2 Z^2 + ...
using Polynomial = std::vector<double>;

Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Polynomial poly_scale(const Polynomial& a, double s);
Polynomial poly_derivative(const Polynomial& a);
/// Drops trailing zero coefficients.
Polynomial poly_trim(Polynomial a);
double poly_eval(const Polynomial& a, double z);

/// Differential operator sum_j coeffs[j](Z) d^j/dZ^j with polynomial
/// coefficients.
class DiffOp {
public:
  DiffOp() = default;
  explicit DiffOp(std::vector<Polynomial> coeffs);

  static DiffOp multiply_by(const Polynomial& p);
  static DiffOp derivative();
  static DiffOp identity() { return multiply_by({1.0}); }

  /// Composition (*this) o rhs, expanded with the Leibniz rule.
  DiffOp operator*(const DiffOp& rhs) const;
  DiffOp operator+(const DiffOp& rhs) const;
  DiffOp operator-(const DiffOp& rhs) const;
  DiffOp scaled(double s) const;

  Polynomial apply(const Polynomial& f) const;
  /// Coefficient of d^j (empty polynomial when absent).
  Polynomial coefficient(int j) const;
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }

private:
  std::vector<Polynomial> coeffs_;
};

/// J+ = Z^2 d - n Z,  J0 = Z d - n/2,  J- = d. They preserve polynomials of
/// degree <= n.
DiffOp j_plus(int n);
DiffOp j_zero(int n);
DiffOp j_minus();

DiffOp commutator(const DiffOp& a, const DiffOp& b);

/// Coefficients of the general quadratic element of the enveloping algebra.
struct Sl2Coefficients {
  double c_pp = 0.0;
  double c_p0 = 0.0;
  double c_pm = 0.0;
  double c_0m = 0.0;
  double c_mm = 0.0;
  double c_p = 0.0;
  double c_0 = 0.0;
  double c_m = 0.0;
  double c = 0.0;
};

/// C++ J+J+ + C+0 J+J0 + C+- J+J- + C0- J0J- + C-- J-J- + C+ J+ + C0 J0 + C- J- + C.
DiffOp sl2_operator(const Sl2Coefficients& k, int n);

/// Coefficients of the resulting operator p4 d^2 + p3 d + p2.
struct PPolynomials {
  Polynomial p4;
  Polynomial p3;
  Polynomial p2;
};

/// Closed-form p4, p3, p2 in terms of the C's (degrees 4, 3, 2).
PPolynomials sl2_p_polynomials(const Sl2Coefficients& k, int n);

/// p4, p3, p2 read off a composed operator.
PPolynomials p_polynomials_of(const DiffOp& op);

} // namespace dkg
