// SPDX-License-Identifier: Apache-2.0

#include "yeefem/cfl.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "yeefem/errors.hpp"

namespace yeefem
{

namespace
{

double dot(std::span<const double> a, std::span<const double> b)
{
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); i++)
  {
    s += a[i] * b[i];
  }
  return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y)
{
  for (std::size_t i = 0; i < x.size(); i++)
  {
    y[i] += alpha * x[i];
  }
}

}  // namespace

EigenEstimate largest_pencil_eigenvalue(const LinearOperator &a, const BlockDiagMatrix &m,
                                        const BlockDiagMatrix &minv, const CflOptions &opt,
                                        const std::vector<double> *start)
{
  const std::size_t n = m.dim();
  if (n == 0 || minv.dim() != m.dim())
  {
    throw ContractError("eigenvalue estimate needs a nonempty square pencil");
  }
  std::vector<double> x(n);
  if (start && start->size() == n && dot(*start, *start) > 0.0)
  {
    x = *start;
  }
  else
  {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (auto &v : x)
    {
      v = dist(rng);
    }
  }

  const int mdim = std::max(2, std::min<int>(opt.krylov_dim, static_cast<int>(n)));
  // Ritz vectors carried over a thick restart.
  const int keep = std::max(1, std::min(mdim / 4, 10));
  std::vector<double> u(n), w(n), mw(n);
  EigenEstimate est;
  double residual = std::numeric_limits<double>::infinity();

  m.multiply(x, mw);
  const double xnorm = std::sqrt(dot(x, mw));
  if (!(xnorm > 0.0))
  {
    throw EstimationError("start vector has zero norm", 0.0);
  }
  std::vector<std::vector<double>> basis(1, x);
  for (auto &v : basis[0])
  {
    v /= xnorm;
  }
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(mdim, mdim);

  while (est.iterations < opt.max_iterations)
  {
    const int j = static_cast<int>(basis.size()) - 1;
    a(basis[j], u);
    minv.multiply(u, w);
    est.iterations++;
    // <q_i, M^{-1} A q_j>_M = q_i^T A q_j fills column j of the projected matrix.
    for (int i = 0; i <= j; i++)
    {
      const double h = dot(basis[i], u);
      t(i, j) = t(j, i) = h;
      axpy(-h, basis[i], w);
    }
    m.multiply(w, mw);
    for (int i = 0; i <= j; i++)
    {
      axpy(-dot(basis[i], mw), basis[i], w);
    }
    m.multiply(w, mw);
    const double b = std::sqrt(std::max(0.0, dot(w, mw)));

    const int k = j + 1;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t.topLeftCorner(k, k));
    const Eigen::VectorXd &theta = eig.eigenvalues();
    const double top = theta(k - 1);
    const Eigen::VectorXd y = eig.eigenvectors().col(k - 1);
    residual = b * std::abs(y(k - 1));
    const double scale = std::max(std::abs(theta(0)), std::abs(top));
    const double err = residual;
    const bool exhausted = b <= 1e-14 * std::max(scale, 1e-300);
    if (err <= opt.eig_tol * scale || exhausted)
    {
      std::fill(x.begin(), x.end(), 0.0);
      for (int i = 0; i < k; i++)
      {
        axpy(y(i), basis[i], x);
      }
      est.value = top;
      est.residual = residual;
      est.vector = std::move(x);
      return est;
    }
    if (k < mdim)
    {
      basis.emplace_back(w);
      for (auto &v : basis.back())
      {
        v /= b;
      }
      continue;
    }
    // Thick restart: the top Ritz vectors and the next Lanczos vector.
    const int r = std::min(keep, k - 1);
    std::vector<std::vector<double>> next(r + 1, std::vector<double>(n, 0.0));
    t.setZero();
    for (int c = 0; c < r; c++)
    {
      const Eigen::VectorXd yc = eig.eigenvectors().col(k - 1 - c);
      for (int i = 0; i < k; i++)
      {
        axpy(yc(i), basis[i], next[c]);
      }
      t(c, c) = theta(k - 1 - c);
    }
    for (std::size_t i = 0; i < n; i++)
    {
      next[r][i] = w[i] / b;
    }
    basis = std::move(next);
  }
  throw EstimationError("Lanczos iteration did not converge", residual);
}

double cfl_bracket(const Mesh &m, const MaterialField &mat)
{
  const double eps_max = *std::max_element(mat.eps.begin(), mat.eps.end());
  const double nu_min = *std::min_element(mat.nu.begin(), mat.nu.end());
  return 2.0 * m.max_edge_length() * std::sqrt(eps_max / nu_min);
}

CflEstimate estimate_tau_max(const BlockDiagMatrix &meps, const SparseMatrix &msigma,
                             const SparseMatrix &mhat_sigma, const SparseMatrix &k, int gamma,
                             double upper, const CflOptions &opt)
{
  if (gamma != 0 && gamma != 1)
  {
    throw ParameterError("gamma must be 0 or 1");
  }
  if (!(upper > 0.0))
  {
    throw ParameterError("bisection bracket must be positive");
  }
  const int n = meps.dim();
  if (k.rows() != n || msigma.rows() != n || mhat_sigma.rows() != n)
  {
    throw ContractError("CFL operators differ in dimension");
  }
  const BlockDiagMatrix minv = invert_block_mass(meps);
  const SparseMatrix d = add(mhat_sigma, msigma, -1.0);
  const bool d_zero = gamma == 0 || std::all_of(d.values().begin(), d.values().end(),
                                                [](double v) { return v == 0.0; });
  CflEstimate out;

  std::function<bool(double)> feasible;
  double mu_k = 0.0;
  std::vector<double> start[2];
  if (d_zero)
  {
    const auto e = largest_pencil_eigenvalue(
        [&](std::span<const double> x, std::span<double> y) { k.multiply(x, y); }, meps, minv,
        opt);
    out.operator_applications += e.iterations;
    mu_k = e.value;
    feasible = [&](double tau) { return 0.25 * tau * tau * mu_k <= 0.5; };
  }
  else
  {
    feasible = [&](double tau) {
      for (int s = 0; s < 2; s++)
      {
        const double sd = (s == 0 ? 0.5 : -0.5) * tau;
        const double sk = 0.25 * tau * tau;
        const auto e = largest_pencil_eigenvalue(
            [&](std::span<const double> x, std::span<double> y) {
              k.multiply(x, y);
              for (int i = 0; i < n; i++)
              {
                y[i] *= sk;
              }
              d.multiply_add(sd, x, y);
            },
            meps, minv, opt, start[s].empty() ? nullptr : &start[s]);
        out.operator_applications += e.iterations;
        start[s] = e.vector;
        if (e.value > 0.5)
        {
          return false;
        }
      }
      return true;
    };
  }

  double lo = 0.0, hi = upper;
  for (int grow = 0; feasible(hi); grow++)
  {
    if (grow == 20)
    {
      throw EstimationError("no infeasible time step found above the bracket", hi);
    }
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > opt.bisection_rtol * hi && out.bisections < opt.max_bisections)
  {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
    out.bisections++;
  }
  out.tau_max = lo;
  return out;
}

}  // namespace yeefem
