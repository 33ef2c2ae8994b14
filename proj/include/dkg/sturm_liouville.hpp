#pragma once

#include <functional>
#include <vector>

namespace dkg {

enum class Boundary { dirichlet, neumann };

/// Uniform cell-centered grid: n_points cells of width h on [x_min, x_max],
/// unknowns at the cell centers. Boundary conditions act on the end faces,
/// so singular coefficients are never sampled at the endpoints.
struct GridSpec {
  double x_min = 0.0;
  double x_max = 1.0;
  int n_points = 64;
  Boundary left = Boundary::dirichlet;
  Boundary right = Boundary::dirichlet;

  double h() const { return (x_max - x_min) / n_points; }
  double node(int i) const { return x_min + (i + 0.5) * h(); }
  std::vector<double> nodes() const;

  /// Same domain and boundaries with n_points scaled by factor.
  GridSpec refined(int factor = 2) const;

  /// Throws std::invalid_argument unless x_min < x_max and n_points >= 64.
  void check() const;
};

/// Symmetric tridiagonal matrix; sub and super are stored separately so
/// the symmetry of an assembled operator can be checked.
struct SymmetricTridiagonal {
  std::vector<double> diag;
  std::vector<double> super;
  std::vector<double> sub;

  /// max_i |super_i - sub_i| relative to the largest off-diagonal entry.
  double asymmetry() const;
};

/// Discretizes L phi = -(1/W) (W phi')' + U phi on the grid with flux-form
/// finite volumes, then applies the similarity transform W^{1/2} to obtain
/// a symmetric matrix whose eigenvectors are chi = W^{1/2} phi.
/// A Neumann end means zero flux W phi' through that face.
SymmetricTridiagonal assemble_sturm_liouville(const GridSpec& grid, const std::function<double(double)>& weight,
                                              const std::function<double(double)>& potential);

struct Eigenpairs {
  std::vector<double> values;
  /// One unit-2-norm vector per value, in the symmetrized (chi) variables.
  std::vector<std::vector<double>> vectors;
};

/// Eigenpairs with zero-based indices first..last (ascending).
Eigenpairs tridiagonal_eigenpairs(const SymmetricTridiagonal& m, int first, int last, bool want_vectors);

} // namespace dkg
