#include "dkg/sturm_liouville.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dkg {

std::vector<double> GridSpec::nodes() const {
  std::vector<double> out(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) out[static_cast<std::size_t>(i)] = node(i);
  return out;
}

GridSpec GridSpec::refined(int factor) const {
  GridSpec out = *this;
  out.n_points = n_points * factor;
  return out;
}

void GridSpec::check() const {
  if (!(x_min < x_max)) throw std::invalid_argument("GridSpec: need x_min < x_max");
  if (n_points < 64) throw std::invalid_argument("GridSpec: need n_points >= 64");
}

double SymmetricTridiagonal::asymmetry() const {
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < super.size(); ++i) {
    worst = std::max(worst, std::abs(super[i] - sub[i]));
    scale = std::max({scale, std::abs(super[i]), std::abs(sub[i])});
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

SymmetricTridiagonal assemble_sturm_liouville(const GridSpec& grid, const std::function<double(double)>& weight,
                                              const std::function<double(double)>& potential) {
  grid.check();
  const int n = grid.n_points;
  const double h = grid.h();
  const double h2 = h * h;

  std::vector<double> w_center(static_cast<std::size_t>(n));
  std::vector<double> w_face(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < n; ++i) w_center[i] = weight(grid.node(i));
  for (int i = 0; i <= n; ++i) w_face[i] = weight(grid.x_min + i * h);

  for (int i = 0; i < n; ++i) {
    if (!(w_center[i] > 0.0) || !std::isfinite(w_center[i])) {
      std::ostringstream msg;
      msg << "assemble_sturm_liouville: weight must be positive and finite at interior node x = " << grid.node(i);
      throw std::domain_error(msg.str());
    }
  }

  // Dirichlet ghost value phi_{-1} = -phi_0 doubles the face coupling. A
  // face weight that is infinite (singular endpoint) falls back to the
  // adjacent center value.
  auto dirichlet_face = [&](double face, double center) { return std::isfinite(face) ? face : center; };

  SymmetricTridiagonal m;
  m.diag.resize(static_cast<std::size_t>(n));
  m.super.resize(static_cast<std::size_t>(n) - 1);
  m.sub.resize(static_cast<std::size_t>(n) - 1);

  for (int i = 0; i < n; ++i) {
    double flux = 0.0;
    if (i > 0) {
      flux += w_face[i];
    } else if (grid.left == Boundary::dirichlet) {
      flux += 2.0 * dirichlet_face(w_face[0], w_center[0]);
    }
    if (i < n - 1) {
      flux += w_face[i + 1];
    } else if (grid.right == Boundary::dirichlet) {
      flux += 2.0 * dirichlet_face(w_face[n], w_center[n - 1]);
    }
    m.diag[i] = flux / (h2 * w_center[i]) + potential(grid.node(i));
  }

  // Row i of the unsymmetrized operator A has A(i,i+1) = -w_{i+1/2} / (h^2 w_i)
  // and row i+1 has A(i+1,i) = -w_{i+1/2} / (h^2 w_{i+1}); conjugating by
  // W^{1/2} scales them by sqrt(w_i / w_{i+1}) and its inverse.
  for (int i = 0; i + 1 < n; ++i) {
    const double a_up = -w_face[i + 1] / (h2 * w_center[i]);
    const double a_down = -w_face[i + 1] / (h2 * w_center[i + 1]);
    m.super[i] = a_up * std::sqrt(w_center[i] / w_center[i + 1]);
    m.sub[i] = a_down * std::sqrt(w_center[i + 1] / w_center[i]);
  }
  return m;
}

Eigenpairs tridiagonal_eigenpairs(const SymmetricTridiagonal& m, int first, int last, bool want_vectors) {
  const lapack_int n = static_cast<lapack_int>(m.diag.size());
  if (first < 0 || last < first || last >= n) throw std::invalid_argument("tridiagonal_eigenpairs: bad index range");

  std::vector<double> d = m.diag;
  std::vector<double> e(static_cast<std::size_t>(n));
  for (lapack_int i = 0; i + 1 < n; ++i) e[i] = 0.5 * (m.super[i] + m.sub[i]);

  const lapack_int count = last - first + 1;
  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<double> z(want_vectors ? static_cast<std::size_t>(n) * count : 1);
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(count));
  lapack_int found = 0;
  const lapack_int info =
      LAPACKE_dstevr(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'I', n, d.data(), e.data(), 0.0, 0.0, first + 1,
                     last + 1, 0.0, &found, w.data(), z.data(), want_vectors ? n : 1, isuppz.data());
  if (info != 0 || found != count) {
    std::ostringstream msg;
    msg << "LAPACKE_dstevr failed (info = " << info << ", found " << found << " of " << count << ")";
    throw std::runtime_error(msg.str());
  }

  Eigenpairs out;
  out.values.assign(w.begin(), w.begin() + count);
  if (want_vectors) {
    for (lapack_int j = 0; j < count; ++j) {
      std::vector<double> v(z.begin() + j * n, z.begin() + (j + 1) * n);
      // Fix the sign so the largest-magnitude component is positive.
      const auto it = std::max_element(v.begin(), v.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
      if (*it < 0.0) {
        for (double& x : v) x = -x;
      }
      out.vectors.push_back(std::move(v));
    }
  }
  return out;
}

} // namespace dkg
