from __future__ import annotations

from dataclasses import dataclass

import mpmath

from errors import ContractError, DegenerateNodeError, IllConditionedError

@dataclass(frozen=True)
class VandermondeSolution:
  nodes: tuple
  coefficients: tuple
  # For every merged node, the indices of the input nodes it stands for.
  members: tuple[tuple[int, ...], ...]
  merge_tol: object
  residual: object

  def evaluate(self, n: int):
    return sum(c * node**n for c, node in zip(self.coefficients, self.nodes))

def default_merge_tol(ctx: mpmath.MPContext, nodes):
  largest = max((ctx.fabs(x) for x in nodes), default=ctx.mpf(0))
  return ctx.mpf(2) ** (-(ctx.prec // 2)) * (1 + largest)

def merge_nodes(ctx: mpmath.MPContext, nodes, merge_tol) -> tuple[list, list[list[int]]]:
  """Groups nodes that lie within merge_tol of a group's first node.

  Coincident nodes stand for the same Vandermonde column, so their unknowns are summed."""
  merged = []
  members = []
  for index in sorted(range(len(nodes)), key=lambda k: nodes[k]):
    node = nodes[index]
    if merged and ctx.fabs(node - merged[-1]) <= merge_tol:
      members[-1].append(index)
      continue
    merged.append(node)
    members.append([index])
  return merged, members

def _dual_vandermonde(ctx: mpmath.MPContext, nodes, rhs) -> list:
  """Solves sum_i z_i * nodes[i]^k = rhs[k] for k < len(nodes) with the Bjorck-Pereyra recurrences.

  Nodes must be distinct. Ascending order keeps the rounding error smallest."""
  x = list(nodes)
  b = [ctx.mpf(v) for v in rhs]
  n = len(x) - 1
  for k in range(n):
    for i in range(n, k, -1):
      b[i] -= x[k]*b[i-1]
  for k in range(n-1, -1, -1):
    for i in range(k+1, n+1):
      b[i] /= x[i] - x[i-k-1]
    for i in range(k, n):
      b[i] -= b[i+1]
  return b

def solve_vandermonde(ctx: mpmath.MPContext, nodes, samples, merge_tol=None, first_index: int = 1, extrapolate_below: bool = False) -> VandermondeSolution:
  """Solves samples[k] = sum_i c_i * node_i^(first_index + k) for the coefficients c_i.

  Only as many samples as there are merged nodes enter the solve; any further samples are used
  to check the residual."""
  nodes = [ctx.mpf(x) for x in nodes]
  samples = [ctx.mpf(x) for x in samples]
  if merge_tol is None:
    merge_tol = default_merge_tol(ctx, nodes)
  merged, members = merge_nodes(ctx, nodes, merge_tol)

  if extrapolate_below and any(ctx.fabs(x) <= merge_tol for x in merged):
    raise DegenerateNodeError("A zero node cannot be extrapolated below the sample range")
  if len(samples) < len(merged):
    raise ContractError("Need at least %d samples for %d distinct nodes, got %d" % (len(merged), len(merged), len(samples)))
  if not merged:
    return VandermondeSolution((), (), (), merge_tol, ctx.mpf(0))

  # u_i = c_i * node_i^first_index
  try:
    scaled = _dual_vandermonde(ctx, merged, samples[:len(merged)])
  except ZeroDivisionError as e:
    raise IllConditionedError("Vandermonde nodes are not distinct at this precision: %s" % e)

  size = len(merged)
  coefficients = []
  for col in range(size):
    if first_index == 0:
      coefficients.append(scaled[col])
    elif merged[col] == 0:
      if first_index > 0:
        coefficients.append(ctx.mpf(0))
      else:
        raise DegenerateNodeError("A zero node cannot carry a negative exponent")
    else:
      coefficients.append(scaled[col] / merged[col]**first_index)

  residual = ctx.mpf(0)
  for k, sample in enumerate(samples):
    n = first_index + k
    value = ctx.fsum(c * node**n for c, node in zip(coefficients, merged))
    residual = max(residual, ctx.fabs(value - sample))
  scale = max(1, max(ctx.fabs(x) for x in samples))
  if residual > merge_tol*scale:
    raise IllConditionedError(
      "Vandermonde residual %s exceeds the tolerance %s; retry at a higher precision" % (
        ctx.nstr(residual, 5), ctx.nstr(merge_tol*scale, 5),
      )
    )
  return VandermondeSolution(
    tuple(merged), tuple(coefficients),
    tuple(tuple(group) for group in members),
    merge_tol, residual,
  )
