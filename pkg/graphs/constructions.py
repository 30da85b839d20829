from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from errors import ContractError
from graphs.multigraph import Multigraph, Pair, normalize_pair

# An edge selection is a set of unordered pairs; (v, v) selects the loops at v.
# None selects every edge and loop.
EdgeSelection = frozenset

def make_selection(pairs: Iterable[tuple[int, int]]) -> frozenset[Pair]:
  return frozenset(normalize_pair(u, v) for u, v in pairs)

class GraphBuilder:
  """Mutable accumulator used while constructing a Multigraph."""

  def __init__(self, vertex_count: int = 0):
    self.vertex_count = vertex_count
    self.edges: list[tuple[int, int, int]] = []

  def add_vertex(self) -> int:
    self.vertex_count += 1
    return self.vertex_count - 1

  def add_edge(self, u: int, v: int, multiplicity: int = 1):
    self.edges.append((u, v, multiplicity))

  def add_path(self, u: int, v: int, length: int):
    """Adds a path of the given length from u to v through fresh vertices. u == v gives a closed path."""
    previous = u
    for _ in range(length - 1):
      current = self.add_vertex()
      self.add_edge(previous, current)
      previous = current
    self.add_edge(previous, v)

  def attach(self, gadget: EdgeGadget, u: int, v: int):
    """Copies the gadget in with its endpoints identified with u and v."""
    mapping = {}
    gu, gv = gadget.endpoints
    mapping[gu] = u
    mapping[gv] = v
    for x in range(gadget.graph.vertex_count):
      if x not in mapping:
        mapping[x] = self.add_vertex()
    for (a, b), k in gadget.graph.edges.items():
      self.add_edge(mapping[a], mapping[b], k)
    for a, count in gadget.graph.loops.items():
      self.add_edge(mapping[a], mapping[a], count)

  def build(self) -> Multigraph:
    return Multigraph(self.vertex_count, self.edges)

@dataclass(frozen=True)
class EdgeGadget:
  graph: Multigraph
  endpoints: tuple[int, int]

  def __post_init__(self):
    u, v = self.endpoints
    if u == v:
      raise ContractError("Edge gadget endpoints must be distinct")
    for x in (u, v):
      if not (0 <= x < self.graph.vertex_count):
        raise ContractError("Edge gadget endpoint %d out of range" % x)

  @classmethod
  def from_graph_edge(cls, graph: Multigraph) -> EdgeGadget:
    return cls(graph, (0, 1))

def is_selected(selection, pair: Pair) -> bool:
  return selection is None or pair in selection

def thicken(g: Multigraph, subset: frozenset | None, p: int) -> Multigraph:
  if p < 1:
    raise ContractError("Thickening power must be at least 1, got %d" % p)
  edges = [
    (u, v, k*p if is_selected(subset, (u, v)) else k)
    for (u, v), k in g.edges.items()
  ]
  loops = [
    (v, count*p if is_selected(subset, (v, v)) else count)
    for v, count in g.loops.items()
  ]
  return Multigraph(g.vertex_count, edges, loops)

def stretch(g: Multigraph, subset: frozenset | None, r: int) -> Multigraph:
  """Replaces each selected edge copy by a path of length r and each selected loop by a closed path of length r.

  Fresh vertices are numbered after the existing ones, in sorted edge order and then loop order."""
  if r < 1:
    raise ContractError("Stretch length must be at least 1, got %d" % r)
  builder = GraphBuilder(g.vertex_count)
  for (u, v), k in g.edges.items():
    if is_selected(subset, (u, v)):
      for _ in range(k):
        builder.add_path(u, v, r)
    else:
      builder.add_edge(u, v, k)
  for v, count in g.loops.items():
    if is_selected(subset, (v, v)):
      for _ in range(count):
        builder.add_path(v, v, r)
    else:
      builder.add_edge(v, v, count)
  return builder.build()

def build_P(n: int, p: int) -> EdgeGadget:
  """S_2 T_p S_n applied to a single edge: n(p+1)+1 vertices, internal degrees at most 2p."""
  if n < 1 or p < 1:
    raise ContractError("P gadget needs n, p >= 1, got n=%d p=%d" % (n, p))
  graph = stretch(thicken(stretch(Multigraph.single_edge(), None, n), None, p), None, 2)
  return EdgeGadget(graph, (0, 1))

@dataclass(frozen=True)
class DanglingGadget:
  """A graph together with the vertices that carry one dangling half-edge each."""
  graph: Multigraph
  stubs: tuple[int, ...]

  @property
  def edge_count(self) -> int:
    """Edge count including the dangling edges."""
    return self.graph.edge_count + len(self.stubs)

  def degree(self, v: int) -> int:
    return self.graph.degree(v) + self.stubs.count(v)

  @property
  def max_degree(self) -> int:
    return max((self.degree(v) for v in range(self.graph.vertex_count)), default=0)

def _cycle_edges(vertices: list[int]) -> list[tuple[int, int]]:
  d = len(vertices)
  if d == 1:
    return [(vertices[0], vertices[0])]
  if d == 2:
    return [(vertices[0], vertices[1]), (vertices[0], vertices[1])]
  return [(vertices[i], vertices[(i+1) % d]) for i in range(d)]

def build_R(d: int, n: int, p: int) -> DanglingGadget:
  if d < 1:
    raise ContractError("R gadget needs d >= 1, got %d" % d)
  gadget = build_P(n, p)
  builder = GraphBuilder(d)
  junctions = list(range(d))
  for u, v in _cycle_edges(junctions):
    builder.attach(gadget, u, v)
  return DanglingGadget(builder.build(), tuple(junctions))

@dataclass(frozen=True)
class CycleStructure:
  """G' for a source graph G: every vertex u of G becomes a deg(u)-cycle F_1..F_deg(u), and the
  edges of G become merged edges between cycles.

  cycle_edges are listed per cycle edge occurrence (a 2-cycle contributes its pair twice,
  a 1-cycle contributes a loop (a, a))."""
  parent: Multigraph
  graph: Multigraph
  cycles: tuple[tuple[int, ...], ...]
  cycle_edges: tuple[tuple[int, int], ...]
  merged_edges: tuple[tuple[int, int], ...]

def _check_pipeline_input(g: Multigraph):
  if g.has_loops:
    raise ContractError("Cycle replacement needs a loopless graph")
  if g.isolated_vertices():
    raise ContractError("Cycle replacement needs a graph without isolated vertices; strip them first")

def build_Gprime(g: Multigraph) -> CycleStructure:
  _check_pipeline_input(g)
  degrees = g.degrees()
  cycles = []
  next_vertex = 0
  for u in range(g.vertex_count):
    cycles.append(tuple(range(next_vertex, next_vertex + degrees[u])))
    next_vertex += degrees[u]

  cycle_edges = []
  for cycle in cycles:
    cycle_edges.extend(_cycle_edges(list(cycle)))

  # Dangling edges are paired with incident edges in sorted edge order.
  next_slot = [0]*g.vertex_count
  merged_edges = []
  for (u, v), k in g.edges.items():
    for _ in range(k):
      a = cycles[u][next_slot[u]]
      b = cycles[v][next_slot[v]]
      next_slot[u] += 1
      next_slot[v] += 1
      merged_edges.append((a, b))

  graph = Multigraph(next_vertex, cycle_edges + merged_edges)
  return CycleStructure(g, graph, tuple(cycles), tuple(cycle_edges), tuple(merged_edges))

def build_Gnp(g: Multigraph, n: int, p: int) -> Multigraph:
  structure = build_Gprime(g)
  gadget = build_P(n, p)
  builder = GraphBuilder(structure.graph.vertex_count)
  for a, b in structure.cycle_edges:
    builder.attach(gadget, a, b)
  for a, b in structure.merged_edges:
    builder.add_edge(a, b)
  return builder.build()

def parallel_and_loop_selection(g: Multigraph) -> frozenset[Pair]:
  """Pairs carrying parallel edges plus the (v, v) pair of every vertex with a loop."""
  pairs = [pair for pair, k in g.edges.items() if k > 1]
  pairs.extend((v, v) for v in g.loops)
  return make_selection(pairs)

def selected_edge_count(g: Multigraph, subset: frozenset | None) -> int:
  total = sum(k for pair, k in g.edges.items() if is_selected(subset, pair))
  total += sum(count for v, count in g.loops.items() if is_selected(subset, (v, v)))
  return total

def build_Gn_simple(g: Multigraph, n: int) -> tuple[Multigraph, frozenset[Pair]]:
  """Stretches every parallel edge and loop of g into a path of length n. The result is simple for
  n >= 2, or n >= 3 when g has a loop."""
  if n < 2:
    raise ContractError("Simple stretch graphs need n >= 2, got %d" % n)
  if n < 3 and g.has_loops:
    # A loop stretched to length 2 is a double edge.
    raise ContractError("Simple stretch graphs of a graph with loops need n >= 3, got %d" % n)
  selection = parallel_and_loop_selection(g)
  return stretch(g, selection, n), selection
