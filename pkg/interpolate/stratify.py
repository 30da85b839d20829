from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, prod
from typing import Iterator

from errors import BudgetExceededError
from graphs.constructions import build_Gprime, is_selected, parallel_and_loop_selection, selected_edge_count
from graphs.multigraph import Multigraph
from numeric.matrix import RationalMatrix, as_weight_vector
from numeric.rational import format_rational
from partition.evaluate import DEFAULT_BUDGET

def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
  """All tuples of `parts` nonnegative integers summing to `total`, in lexicographic order."""
  if parts == 0:
    if total == 0:
      yield ()
    return
  if parts == 1:
    yield (total,)
    return
  for first in range(total + 1):
    for rest in compositions(total - first, parts - 1):
      yield (first,) + rest

def composition_count(total: int, parts: int) -> int:
  if parts == 0:
    return 1 if total == 0 else 0
  return comb(total + parts - 1, parts - 1)

@dataclass(frozen=True)
class Stratification:
  """Coefficients c_kappa such that the partition function equals
  sum over kappa of c_kappa * prod_(i<=j) L_ij^(k_ij) for the transfer matrix L.

  pairs lists the (i, j), i <= j, that kappa counts; kappa_index lists every kappa with entries summing
  to t, and coefficients is aligned with it."""
  pairs: tuple[tuple[int, int], ...]
  kappa_index: tuple[tuple[int, ...], ...]
  coefficients: tuple[Fraction, ...]

  @property
  def t(self) -> int:
    return sum(self.kappa_index[0]) if self.kappa_index else 0

  def evaluate(self, transfer: RationalMatrix) -> Fraction:
    total = Fraction(0)
    for kappa, c in zip(self.kappa_index, self.coefficients):
      if c == 0:
        continue
      total += c * prod((transfer[i, j]**k for (i, j), k in zip(self.pairs, kappa)), start=Fraction(1))
    return total

  def to_json(self) -> dict:
    return {
      "pairs": [list(pair) for pair in self.pairs],
      "terms": [
        {"kappa": list(kappa), "c": format_rational(c)}
        for kappa, c in zip(self.kappa_index, self.coefficients)
        if c != 0
      ],
    }

def _upper_pairs(size: int) -> tuple[tuple[int, int], ...]:
  return tuple((i, j) for i in range(size) for j in range(i, size))

def _stratify(size: int, vertex_count: int, t: int, weight_of, counted_pairs_of, budget: int) -> Stratification:
  if size ** vertex_count > budget:
    raise BudgetExceededError(size ** vertex_count, budget)
  pairs = _upper_pairs(size)
  position = {pair: k for k, pair in enumerate(pairs)}
  kappa_index = tuple(compositions(t, len(pairs)))
  totals: dict[tuple[int, ...], Fraction] = {}
  for zeta in product(range(size), repeat=vertex_count):
    weight = weight_of(zeta)
    if weight == 0:
      continue
    kappa = [0]*len(pairs)
    for (i, j), k in counted_pairs_of(zeta):
      kappa[position[(min(i, j), max(i, j))]] += k
    kappa = tuple(kappa)
    totals[kappa] = totals.get(kappa, Fraction(0)) + weight
  return Stratification(pairs, kappa_index, tuple(totals.get(kappa, Fraction(0)) for kappa in kappa_index))

def compute_stratification(g: Multigraph, cond, p: int, budget: int = DEFAULT_BUDGET) -> Stratification:
  """Stratifies assignments of G' by how its cycle edges are coloured. A 1-cycle is a loop and can
  only be counted as (i, i)."""
  structure = build_Gprime(g)
  a_prime = cond.a_prime
  vertex_weights = cond.family.diagonal(2*p + 1)

  def weight_of(zeta):
    weight = prod((vertex_weights[i] for i in zeta), start=Fraction(1))
    for u, v in structure.merged_edges:
      if weight == 0:
        break
      weight *= a_prime[zeta[u], zeta[v]]
    return weight

  def counted_pairs_of(zeta):
    return [((zeta[u], zeta[v]), 1) for u, v in structure.cycle_edges]

  return _stratify(cond.s, structure.graph.vertex_count, len(structure.cycle_edges), weight_of, counted_pairs_of, budget)

def compute_simple_stratification(g: Multigraph, a: RationalMatrix, d: RationalMatrix, budget: int = DEFAULT_BUDGET) -> Stratification:
  """Stratifies assignments of g by how its parallel edges and loops are coloured; the remaining
  edges and the vertex weights go into the coefficients."""
  selection = parallel_and_loop_selection(g)
  weights = as_weight_vector(d)
  plain_edges = [(u, v, k) for (u, v), k in g.edges.items() if not is_selected(selection, (u, v))]
  counted_edges = [(u, v, k) for (u, v), k in g.edges.items() if is_selected(selection, (u, v))]
  counted_edges.extend((v, v, count) for v, count in g.loops.items())

  def weight_of(xi):
    weight = prod((weights[i] for i in xi), start=Fraction(1))
    for u, v, k in plain_edges:
      if weight == 0:
        break
      weight *= a[xi[u], xi[v]]**k
    return weight

  def counted_pairs_of(xi):
    return [((xi[u], xi[v]), k) for u, v, k in counted_edges]

  t = selected_edge_count(g, selection)
  return _stratify(a.rows, g.vertex_count, t, weight_of, counted_pairs_of, budget)
