from fractions import Fraction
import random

import pytest

from condense.condensation import condense
from errors import BudgetExceededError, ContractError, ShapeError
from graphs.constructions import build_Gnp, build_P, make_selection, stretch, thicken
from graphs.ghgrid import GHGrid
from graphs.multigraph import Multigraph
from numeric.matrix import RationalMatrix, hadamard_pow
from partition.collapsed import (
  thickened_transfer, transfer_L, transfer_M, z_collapsed_bounded, z_collapsed_stretch,
)
from partition.evaluate import edge_signature, run_plan, make_plan, z_degree_weighted, z_ghgrid, z_plain, z_vertex_weighted
from partition.families import CondensedFamily, ConstantFamily, ExplicitFamily, PowerFamily
from tests.helpers import brute_degree_z, brute_z, random_multigraph, random_symmetric, random_weights

HARDCORE = RationalMatrix([[1, 1], [1, 0]])
K3 = RationalMatrix([[0, 1, 1], [1, 0, 1], [1, 1, 0]])

def test_z_plain_small_values():
  assert z_plain(HARDCORE, Multigraph.single_edge()).value == 3
  assert z_plain(HARDCORE, Multigraph.complete(3)).value == 4
  assert z_plain(HARDCORE, Multigraph.path(2)).value == 5
  assert z_plain(K3, Multigraph.complete(3)).value == 6
  assert z_plain(K3, Multigraph.cycle(4)).value == 18

def test_z_plain_empty_and_edgeless_graphs():
  assert z_plain(K3, Multigraph(0)).value == 1
  assert z_plain(K3, Multigraph(2)).value == 9

def test_z_plain_loops_and_parallel_edges():
  a = RationalMatrix([[1, 2], [2, 3]])
  assert z_plain(a, Multigraph(1, loops=[(0, 2)])).value == 1 + 9
  assert z_plain(a, Multigraph(2, [(0, 1, 2)])).value == 1 + 4 + 4 + 9

def test_z_vertex_weighted():
  a = RationalMatrix([[1, 2], [2, 4]])
  d = RationalMatrix.diag([1, Fraction(1, 2)])
  assert z_vertex_weighted(a, d, Multigraph.single_edge()).value == 4

def test_evaluators_match_brute_force():
  rng = random.Random(7)
  for _ in range(25):
    m = rng.randint(1, 3)
    a = random_symmetric(rng, m, low=-1, high=3, zero_chance=0.2)
    weights = random_weights(rng, m)
    g = random_multigraph(rng, rng.randint(1, 4), rng.randint(0, 5))
    d = RationalMatrix.diag(weights)
    assert z_vertex_weighted(a, d, g).value == brute_z(a, weights, g)
    assert z_plain(a, g).value == brute_z(a, None, g)

def test_degree_weighted_matches_brute_force():
  rng = random.Random(8)
  for _ in range(15):
    m = rng.randint(1, 3)
    a = random_symmetric(rng, m, high=2)
    family = PowerFamily(random_weights(rng, m))
    g = random_multigraph(rng, rng.randint(1, 4), rng.randint(0, 5))
    assert z_degree_weighted(a, family, g).value == brute_degree_z(a, family, g)

def test_constant_family_is_plain_vertex_weights():
  rng = random.Random(9)
  a = random_symmetric(rng, 3, high=2)
  weights = random_weights(rng, 3)
  g = Multigraph.complete(3)
  assert z_degree_weighted(a, ConstantFamily(weights), g).value == z_vertex_weighted(a, RationalMatrix.diag(weights), g).value

def test_families():
  family = CondensedFamily([[1, 2], [3]], [[1, Fraction(1, 2)], [2]])
  assert family.diagonal(0) == (3, 3)
  assert family.diagonal(2) == (1 + Fraction(2, 4), 12)
  assert family.matrix(1) == RationalMatrix.diag([2, 6])
  assert PowerFamily([2, 3]).diagonal(0) == (1, 1)
  assert PowerFamily([2, 3]).diagonal(3) == (8, 27)
  explicit = ExplicitFamily([[1, 1], [2, 5]])
  assert explicit.diagonal(1) == (2, 5)
  with pytest.raises(ContractError):
    explicit.diagonal(2)
  with pytest.raises(ContractError):
    CondensedFamily([[1]], [[0]])

def test_budget_is_enforced():
  with pytest.raises(BudgetExceededError) as info:
    z_plain(K3, Multigraph.path(5), budget=100)
  assert info.value.requested == 3**6
  assert info.value.allowed == 100

def test_shape_errors():
  with pytest.raises(ShapeError):
    z_vertex_weighted(K3, RationalMatrix.diag([1, 1]), Multigraph.single_edge())
  with pytest.raises(ContractError):
    z_plain(RationalMatrix([[1, 2], [3, 4]]), Multigraph.single_edge())

def test_parallel_enumeration_agrees():
  g = Multigraph.cycle(10)
  serial = z_plain(K3, g, threads=1)
  parallel = z_plain(K3, g, threads=2)
  assert serial == parallel
  # Proper 3-colourings of C_10: 2^10 + 2
  assert serial.value == 2**10 + 2

def test_run_plan_counts_terms():
  plan = make_plan(2, 3, [(0, 1, HARDCORE, 1, False)], [])
  result = run_plan(plan)
  assert result.term_count == 8
  assert result.value == 6

def test_z_ghgrid_with_mixed_matrices():
  grid = GHGrid(3)
  grid.matrix_pool = {
    "A": RationalMatrix([[1, 2], [2, 0]]),
    "B": RationalMatrix([[3, 1], [1, 1]]),
    "W": RationalMatrix.diag([1, Fraction(1, 2)]),
  }
  grid.add_edge(0, 1, "A")
  grid.add_edge(1, 2, "B", 2)
  grid.add_edge(2, 2, "A")
  grid.vertex_weights = {1: "W"}
  total = Fraction(0)
  a, b, w = grid.matrix_pool["A"], grid.matrix_pool["B"], (1, Fraction(1, 2))
  for x in range(2):
    for y in range(2):
      for z in range(2):
        total += a[x, y] * b[y, z]**2 * a[z, z] * w[y]
  assert z_ghgrid(grid).value == total

def test_edge_signature_of_path_is_transfer_M():
  a = RationalMatrix([[1, 2], [2, 1]])
  d = RationalMatrix.diag([1, 3])
  gadget = build_P(1, 1)
  assert edge_signature(gadget, a, d) == transfer_M(a, d, 2)

def test_transfer_M():
  a = RationalMatrix([[0, 1], [1, 1]])
  d = RationalMatrix.diag([2, 1])
  assert transfer_M(a, d, 1) == a
  assert transfer_M(a, d, 2) == a @ d @ a
  with pytest.raises(ContractError):
    transfer_M(a, d, 0)

def test_transfer_L_is_the_P_signature():
  cond = condense(HARDCORE, RationalMatrix.identity(2))
  d2 = cond.family.matrix(2)
  assert thickened_transfer(cond, 2) == hadamard_pow(HARDCORE @ d2 @ HARDCORE, 2)
  for n in (1, 2):
    for p in (1, 2):
      gadget = build_P(n, p)
      signature = edge_signature(gadget, cond.a_prime, cond.family.matrix(2*p))
      # Internal junctions have degree 2p and midpoints degree 2, and both carry weight 1 here.
      assert signature == transfer_L(cond, p, n)
  assert transfer_L(cond, 1, 0) == RationalMatrix.identity(2)

def test_collapsed_bounded_matches_physical_graph():
  for a in (HARDCORE, RationalMatrix([[2, 1], [1, 1]])):
    cond = condense(a, RationalMatrix.identity(2))
    for g in (Multigraph.single_edge(), Multigraph(2, [(0, 1, 2)])):
      for n, p in ((1, 1), (2, 1), (1, 2)):
        physical = build_Gnp(g, n, p)
        collapsed = z_collapsed_bounded(g, cond, p, n).value
        assert collapsed == z_degree_weighted(cond.a_prime, cond.family, physical).value
        assert collapsed == z_plain(a, physical).value

def test_collapsed_stretch_matches_physical_graph():
  rng = random.Random(12)
  for _ in range(10):
    m = rng.randint(1, 3)
    a = random_symmetric(rng, m, low=-1, high=2)
    weights = random_weights(rng, m)
    d = RationalMatrix.diag(weights)
    g = random_multigraph(rng, rng.randint(1, 3), rng.randint(1, 3))
    selection = make_selection(list(g.edges) + [(v, v) for v in g.loops])
    for n in (1, 2, 3):
      physical = stretch(g, selection, n)
      assert z_collapsed_stretch(g, a, d, selection, n).value == brute_z(a, weights, physical)

def test_thickening_identity():
  rng = random.Random(81)
  for _ in range(40):
    m = rng.randint(1, 3)
    a = random_symmetric(rng, m, low=-1, high=2)
    g = random_multigraph(rng, rng.randint(1, 5), rng.randint(0, 4))
    p = rng.randint(1, 3)
    assert z_plain(a, thicken(g, None, p)).value == z_plain(hadamard_pow(a, p), g).value

def test_stretching_identity():
  rng = random.Random(82)
  for _ in range(40):
    m = rng.randint(1, 3)
    a = random_symmetric(rng, m, low=-1, high=2)
    d = RationalMatrix.diag(random_weights(rng, m))
    g = random_multigraph(rng, rng.randint(1, 3), rng.randint(0, 3))
    r = rng.randint(1, 3)
    path_matrix = a
    for _ in range(r - 1):
      path_matrix = path_matrix @ d @ a
    assert z_vertex_weighted(a, d, stretch(g, None, r)).value == z_vertex_weighted(path_matrix, d, g).value

def _disjoint_union(g1: Multigraph, g2: Multigraph) -> Multigraph:
  shift = g1.vertex_count
  edges = [(u, v, k) for (u, v), k in g1.edges.items()]
  edges += [(u + shift, v + shift, k) for (u, v), k in g2.edges.items()]
  loops = list(g1.loops.items()) + [(v + shift, k) for v, k in g2.loops.items()]
  return Multigraph(g1.vertex_count + g2.vertex_count, edges, loops)

def test_components_multiply():
  rng = random.Random(83)
  for _ in range(20):
    m = rng.randint(1, 3)
    a = random_symmetric(rng, m, low=-1, high=2)
    d = RationalMatrix.diag(random_weights(rng, m))
    g1 = random_multigraph(rng, rng.randint(1, 3), rng.randint(0, 3))
    g2 = random_multigraph(rng, rng.randint(1, 3), rng.randint(0, 3))
    union = _disjoint_union(g1, g2)
    assert z_vertex_weighted(a, d, union).value == z_vertex_weighted(a, d, g1).value * z_vertex_weighted(a, d, g2).value

def test_isolated_vertices_contribute_domain_size():
  rng = random.Random(84)
  for _ in range(20):
    m = rng.randint(1, 3)
    a = random_symmetric(rng, m, high=2)
    family = PowerFamily(random_weights(rng, m))
    g = _disjoint_union(random_multigraph(rng, rng.randint(1, 3), rng.randint(1, 3)), Multigraph(rng.randint(0, 2)))
    g_star, h = g.without_isolated_vertices()
    assert z_degree_weighted(a, family, g).value == m**h * z_degree_weighted(a, family, g_star).value
