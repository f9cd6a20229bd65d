#include "kmt/simplex.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace kmt {

namespace {

constexpr double kEps = 1e-9;

// Tableau simplex over basis `basis`, Bland's rule. Only the first
// `active` columns may enter.
bool run_simplex(std::vector<std::vector<double>>& T, std::vector<int>& basis,
                 std::size_t rows, std::size_t cols, std::size_t active) {
  for (;;) {
    // entering column: first with negative reduced cost
    std::size_t enter = active;
    for (std::size_t j = 0; j < active; ++j)
      if (T[rows][j] < -kEps) {
        enter = j;
        break;
      }
    if (enter == active) return true;  // optimal

    // leaving row: min ratio, ties to smallest basis index
    std::size_t leave = rows;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows; ++i) {
      if (T[i][enter] <= kEps) continue;
      const double ratio = T[i][cols] / T[i][enter];
      if (ratio < best - kEps ||
          (ratio < best + kEps &&
           (leave == rows || basis[i] < basis[leave]))) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == rows) return false;  // unbounded

    const double piv = T[leave][enter];
    for (std::size_t j = 0; j <= cols; ++j) T[leave][j] /= piv;
    for (std::size_t i = 0; i <= rows; ++i) {
      if (i == leave) continue;
      const double m = T[i][enter];
      if (m == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) T[i][j] -= m * T[leave][j];
    }
    basis[leave] = static_cast<int>(enter);
  }
}

}  // namespace

LpResult solve_lp_standard(const std::vector<std::vector<double>>& A,
                           const std::vector<double>& b,
                           const std::vector<double>& c) {
  const std::size_t m = A.size();
  const std::size_t n = c.size();
  const std::size_t cols = n + m;  // artificials appended

  std::vector<std::vector<double>> T(m + 1, std::vector<double>(cols + 1, 0.0));
  std::vector<int> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = b[i] < 0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) T[i][j] = sign * A[i][j];
    T[i][n + i] = 1.0;
    T[i][cols] = sign * b[i];
    basis[i] = static_cast<int>(n + i);
  }
  // Phase 1: minimize the artificial sum.
  for (std::size_t j = 0; j < cols; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      if (basis[i] >= static_cast<int>(n)) s += T[i][j];
    T[m][j] = (j >= n ? 1.0 : 0.0) - s;
  }
  {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += T[i][cols];
    T[m][cols] = -s;
  }
  if (!run_simplex(T, basis, m, cols, cols)) return {};
  if (T[m][cols] < -1e-7) return {};  // infeasible

  // Drive any artificial still in the basis out (degenerate rows).
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < static_cast<int>(n)) continue;
    std::size_t enter = n;
    for (std::size_t j = 0; j < n; ++j)
      if (std::fabs(T[i][j]) > kEps) {
        enter = j;
        break;
      }
    if (enter == n) continue;  // zero row
    const double piv = T[i][enter];
    for (std::size_t j = 0; j <= cols; ++j) T[i][j] /= piv;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == i) continue;
      const double mult = T[r][enter];
      if (mult == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) T[r][j] -= mult * T[i][j];
    }
    basis[i] = static_cast<int>(enter);
  }

  // Phase 2 objective; artificial columns can no longer enter. A leftover
  // artificial basic at level zero (redundant row) contributes no cost.
  for (std::size_t j = 0; j <= cols; ++j) T[m][j] = j < n ? c[j] : 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double cb = basis[i] < static_cast<int>(n) ? c[basis[i]] : 0.0;
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j <= cols; ++j) T[m][j] -= cb * T[i][j];
  }
  if (!run_simplex(T, basis, m, cols, n))
    throw std::runtime_error("simplex: unbounded objective");

  LpResult out;
  out.feasible = true;
  out.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < static_cast<int>(n)) out.x[basis[i]] = T[i][cols];
  out.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) out.objective += c[j] * out.x[j];
  return out;
}

std::vector<double> l1_regression(const std::vector<std::vector<double>>& F,
                                  const std::vector<double>& y,
                                  const std::vector<double>& w) {
  const std::size_t rows = F.size();
  const std::size_t nf = F.empty() ? 0 : F[0].size();
  // Variables: coef+ (nf), coef- (nf), then (u_i, v_i) per kept row with
  // residual r_i = u_i - v_i and cost w_i (u_i + v_i).
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < rows; ++i)
    if (w[i] > 0.0) kept.push_back(i);

  const std::size_t n = 2 * nf + 2 * kept.size();
  std::vector<std::vector<double>> A(kept.size(), std::vector<double>(n, 0.0));
  std::vector<double> b(kept.size());
  std::vector<double> c(n, 0.0);
  for (std::size_t r = 0; r < kept.size(); ++r) {
    const std::size_t i = kept[r];
    for (std::size_t j = 0; j < nf; ++j) {
      A[r][j] = F[i][j];
      A[r][nf + j] = -F[i][j];
    }
    A[r][2 * nf + 2 * r] = 1.0;       // u_i
    A[r][2 * nf + 2 * r + 1] = -1.0;  // v_i
    b[r] = y[i];
    c[2 * nf + 2 * r] = w[i];
    c[2 * nf + 2 * r + 1] = w[i];
  }
  const LpResult res = solve_lp_standard(A, b, c);
  if (!res.feasible) throw std::runtime_error("l1_regression: LP infeasible");
  std::vector<double> coef(nf);
  for (std::size_t j = 0; j < nf; ++j) coef[j] = res.x[j] - res.x[nf + j];
  return coef;
}

std::vector<double> least_squares(const std::vector<std::vector<double>>& F,
                                  const std::vector<double>& y,
                                  const std::vector<double>& w) {
  const std::size_t rows = F.size();
  const std::size_t nf = F.empty() ? 0 : F[0].size();
  std::vector<std::vector<double>> G(nf, std::vector<double>(nf + 1, 0.0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t a = 0; a < nf; ++a) {
      for (std::size_t bcol = 0; bcol < nf; ++bcol)
        G[a][bcol] += w[i] * F[i][a] * F[i][bcol];
      G[a][nf] += w[i] * F[i][a] * y[i];
    }
  // Gaussian elimination with partial pivoting; singular directions get 0.
  std::vector<double> x(nf, 0.0);
  std::vector<std::size_t> order;
  for (std::size_t col = 0; col < nf; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col; r < nf; ++r)
      if (std::fabs(G[r][col]) > std::fabs(G[piv][col])) piv = r;
    if (std::fabs(G[piv][col]) < 1e-12) continue;
    std::swap(G[piv], G[col]);
    for (std::size_t r = 0; r < nf; ++r) {
      if (r == col) continue;
      const double m = G[r][col] / G[col][col];
      for (std::size_t j = col; j <= nf; ++j) G[r][j] -= m * G[col][j];
    }
    order.push_back(col);
  }
  for (std::size_t col : order) x[col] = G[col][nf] / G[col][col];
  return x;
}

}  // namespace kmt
