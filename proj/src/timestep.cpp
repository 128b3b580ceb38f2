// SPDX-License-Identifier: Apache-2.0

#include "yeefem/timestep.hpp"

#include <cmath>

#include "yeefem/errors.hpp"

namespace yeefem
{

namespace
{

void check_sizes(const TimeStepState &s, int n_op, std::size_t n_load)
{
  s.check();
  if (static_cast<int>(s.curr.size()) != n_op || n_load != s.curr.size())
  {
    throw ContractError("time step operators do not match the state dimension");
  }
}

void finish(TimeStepState &s, std::vector<double> &next)
{
  for (double v : next)
  {
    if (!std::isfinite(v))
    {
      throw DivergenceError(s.n + 1, "non-finite coefficient in the new iterate");
    }
  }
  std::swap(s.prev, s.curr);
  std::swap(s.curr, next);
  s.n++;
}

}  // namespace

void TimeStepState::check() const
{
  if (!(tau > 0.0))
  {
    throw ContractError("time step must be positive");
  }
  if (prev.size() != curr.size())
  {
    throw ContractError("state iterates differ in size");
  }
}

TimeStepState zero_state(Space space, int size, double tau)
{
  TimeStepState s;
  s.space = space;
  s.prev.assign(size, 0.0);
  s.curr.assign(size, 0.0);
  s.tau = tau;
  s.n = 1;
  s.check();
  return s;
}

void StepWorkspace::resize(std::size_t n)
{
  a.resize(n);
  b.resize(n);
  c.resize(n);
}

void step_full(TimeStepState &s, const BlockDiagMatrix &minv, const SparseMatrix &mhat_sigma,
               const SparseMatrix &k, std::span<const double> load, StepWorkspace &ws)
{
  check_sizes(s, minv.dim(), load.size());
  const std::size_t n = s.curr.size();
  ws.resize(n);
  auto &r = ws.a;
  auto &d = ws.b;
  auto &next = ws.c;
  for (std::size_t i = 0; i < n; i++)
  {
    d[i] = s.curr[i] - s.prev[i];
    r[i] = load[i];
  }
  mhat_sigma.multiply_add(-1.0 / s.tau, d, r);
  k.multiply_add(-1.0, s.curr, r);
  for (std::size_t i = 0; i < n; i++)
  {
    next[i] = s.curr[i] + d[i];
  }
  minv.multiply_add(s.tau * s.tau, r, next);
  finish(s, next);
}

void step_reduced(TimeStepState &s, const SparseMatrix &mtilde_inv, const SparseMatrix &msigma,
                  const SparseMatrix &k, std::span<const double> rhs, StepWorkspace &ws)
{
  check_sizes(s, mtilde_inv.rows(), rhs.size());
  const std::size_t n = s.curr.size();
  ws.resize(n);
  auto &r = ws.a;
  auto &d = ws.b;
  auto &next = ws.c;
  for (std::size_t i = 0; i < n; i++)
  {
    d[i] = s.curr[i] - s.prev[i];
    r[i] = 0.0;
  }
  msigma.multiply_add(-1.0 / s.tau, d, r);
  k.multiply_add(-1.0, s.curr, r);
  const double tau2 = s.tau * s.tau;
  for (std::size_t i = 0; i < n; i++)
  {
    next[i] = s.curr[i] + d[i] + tau2 * rhs[i];
  }
  mtilde_inv.multiply_add(tau2, r, next);
  finish(s, next);
}

void step_full_backward(TimeStepState &s, const BlockDiagMatrix &minv, const SparseMatrix &k,
                        std::span<const double> load, StepWorkspace &ws)
{
  check_sizes(s, minv.dim(), load.size());
  const std::size_t n = s.curr.size();
  ws.resize(n);
  auto &r = ws.a;
  for (std::size_t i = 0; i < n; i++)
  {
    r[i] = load[i];
  }
  k.multiply_add(-1.0, s.prev, r);
  // E^{n-2} = 2E^{n-1} - E^n + tau^2 Minv (load - K E^{n-1})
  auto &older = ws.c;
  for (std::size_t i = 0; i < n; i++)
  {
    older[i] = 2.0 * s.prev[i] - s.curr[i];
  }
  minv.multiply_add(s.tau * s.tau, r, older);
  for (double v : older)
  {
    if (!std::isfinite(v))
    {
      throw DivergenceError(s.n - 2, "non-finite coefficient in the backward iterate");
    }
  }
  // (prev, curr) <- (older, prev)
  std::swap(s.curr, s.prev);
  std::swap(s.prev, older);
  s.n--;
}

}  // namespace yeefem
