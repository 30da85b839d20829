from __future__ import annotations

from typing import Iterable

import networkx as nx

from errors import ContractError, ParseError

Pair = tuple[int, int]

def normalize_pair(u: int, v: int) -> Pair:
  return (u, v) if u <= v else (v, u)

class Multigraph:
  """Undirected multigraph on vertices 0..vertex_count-1.

  Parallel edges are stored as a multiplicity per unordered pair, loops as a count per vertex.
  A loop adds 2 to the degree of its vertex."""

  def __init__(self, vertex_count: int, edges: Iterable = (), loops: Iterable = ()):
    if vertex_count < 0:
      raise ContractError("Negative vertex count %d" % vertex_count)
    self.vertex_count = vertex_count
    self.edges: dict[Pair, int] = {}
    self.loops: dict[int, int] = {}

    for edge in edges:
      if len(edge) == 2:
        u, v = edge
        multiplicity = 1
      else:
        u, v, multiplicity = edge
      self._check_vertex(u)
      self._check_vertex(v)
      if multiplicity < 1:
        raise ContractError("Edge (%d, %d) has multiplicity %d" % (u, v, multiplicity))
      if u == v:
        self.loops[u] = self.loops.get(u, 0) + multiplicity
        continue
      pair = normalize_pair(u, v)
      self.edges[pair] = self.edges.get(pair, 0) + multiplicity

    if isinstance(loops, dict):
      loops = loops.items()
    for v, count in loops:
      self._check_vertex(v)
      if count < 1:
        raise ContractError("Vertex %d has loop count %d" % (v, count))
      self.loops[v] = self.loops.get(v, 0) + count

    self.edges = dict(sorted(self.edges.items()))
    self.loops = dict(sorted(self.loops.items()))

  def _check_vertex(self, v: int):
    if not (0 <= v < self.vertex_count):
      raise ContractError("Vertex %d out of range for %d vertices" % (v, self.vertex_count))

  @classmethod
  def single_edge(cls) -> Multigraph:
    return cls(2, [(0, 1)])

  @classmethod
  def path(cls, length: int) -> Multigraph:
    return cls(length + 1, [(i, i+1) for i in range(length)])

  @classmethod
  def cycle(cls, length: int) -> Multigraph:
    if length == 1:
      return cls(1, loops=[(0, 1)])
    if length == 2:
      return cls(2, [(0, 1, 2)])
    return cls(length, [(i, (i+1) % length) for i in range(length)])

  @classmethod
  def complete(cls, n: int) -> Multigraph:
    return cls(n, [(i, j) for i in range(n) for j in range(i+1, n)])

  def edge_items(self) -> list[tuple[int, int, int]]:
    return [(u, v, k) for (u, v), k in self.edges.items()]

  @property
  def edge_count(self) -> int:
    """Edges counted with multiplicity, each loop counting once."""
    return sum(self.edges.values()) + sum(self.loops.values())

  @property
  def loop_count(self) -> int:
    return sum(self.loops.values())

  @property
  def has_loops(self) -> bool:
    return bool(self.loops)

  def degree(self, v: int) -> int:
    total = 2*self.loops.get(v, 0)
    for (a, b), k in self.edges.items():
      if a == v or b == v:
        total += k
    return total

  def degrees(self) -> list[int]:
    degrees = [0]*self.vertex_count
    for (u, v), k in self.edges.items():
      degrees[u] += k
      degrees[v] += k
    for v, count in self.loops.items():
      degrees[v] += 2*count
    return degrees

  @property
  def max_degree(self) -> int:
    return max(self.degrees(), default=0)

  def is_simple(self) -> bool:
    """Simple means loopless with no parallel edges."""
    return not self.loops and all(k == 1 for k in self.edges.values())

  def isolated_vertices(self) -> list[int]:
    return [v for v, d in enumerate(self.degrees()) if d == 0]

  def without_isolated_vertices(self) -> tuple[Multigraph, int]:
    """Returns the graph with isolated vertices removed (renumbered in order) and how many were removed."""
    degrees = self.degrees()
    kept = [v for v in range(self.vertex_count) if degrees[v] > 0]
    index = {v: i for i, v in enumerate(kept)}
    stripped = Multigraph(
      len(kept),
      [(index[u], index[v], k) for (u, v), k in self.edges.items()],
      [(index[v], count) for v, count in self.loops.items()],
    )
    return stripped, self.vertex_count - len(kept)

  def incident_edges(self, v: int) -> list[tuple[int, int, int]]:
    return [(a, b, k) for (a, b), k in self.edges.items() if a == v or b == v]

  def to_networkx(self) -> nx.MultiGraph:
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(self.vertex_count))
    for (u, v), k in self.edges.items():
      for _ in range(k):
        graph.add_edge(u, v)
    for v, count in self.loops.items():
      for _ in range(count):
        graph.add_edge(v, v)
    return graph

  def components(self) -> list[list[int]]:
    graph = nx.Graph()
    graph.add_nodes_from(range(self.vertex_count))
    graph.add_edges_from(self.edges.keys())
    return sorted(sorted(component) for component in nx.connected_components(graph))

  def induced(self, vertices: list[int]) -> Multigraph:
    """Subgraph on the given vertices, renumbered in the given order."""
    index = {v: i for i, v in enumerate(vertices)}
    return Multigraph(
      len(vertices),
      [(index[u], index[v], k) for (u, v), k in self.edges.items() if u in index and v in index],
      [(index[v], count) for v, count in self.loops.items() if v in index],
    )

  def __eq__(self, other):
    if not isinstance(other, Multigraph):
      return NotImplemented
    return (self.vertex_count, self.edges, self.loops) == (other.vertex_count, other.edges, other.loops)

  def __repr__(self):
    return "Multigraph(%d, edges=%r, loops=%r)" % (self.vertex_count, self.edge_items(), list(self.loops.items()))

  def to_json(self) -> dict:
    data = {
      "vertices": self.vertex_count,
      "edges": [[u, v, k] for (u, v), k in self.edges.items()],
    }
    if self.loops:
      data["loops"] = [[v, count] for v, count in self.loops.items()]
    return data

  @classmethod
  def from_json(cls, data) -> Multigraph:
    if not isinstance(data, dict) or "vertices" not in data:
      raise ParseError("Graph JSON must be an object with a \"vertices\" count")
    try:
      vertex_count = int(data["vertices"])
      edges = []
      for entry in data.get("edges", []):
        if len(entry) == 2:
          edges.append((int(entry[0]), int(entry[1]), 1))
        elif len(entry) == 3:
          edges.append((int(entry[0]), int(entry[1]), int(entry[2])))
        else:
          raise ParseError("Edge entries are [u, v] or [u, v, multiplicity], got %r" % (entry,))
      loops = [(int(v), int(count)) for v, count in data.get("loops", [])]
    except (TypeError, ValueError) as e:
      raise ParseError("Malformed graph JSON: %s" % e)
    try:
      return cls(vertex_count, edges, loops)
    except ContractError as e:
      raise ParseError(str(e))
