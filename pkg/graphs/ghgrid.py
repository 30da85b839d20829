from __future__ import annotations

from dataclasses import dataclass, field

from errors import ContractError
from numeric.matrix import RationalMatrix

@dataclass(frozen=True)
class GridEdge:
  u: int
  v: int
  matrix_id: str
  multiplicity: int = 1
  # Stored for completeness; no construction here produces a directed edge.
  directed: bool = False

  @property
  def is_loop(self) -> bool:
    return self.u == self.v

@dataclass
class GHGrid:
  """A graph whose edges and vertices each name their own weight matrix from a shared pool.

  Vertices without an entry in vertex_weights carry weight 1 for every domain value."""
  vertex_count: int
  edges: list[GridEdge] = field(default_factory=list)
  vertex_weights: dict[int, str] = field(default_factory=dict)
  matrix_pool: dict[str, RationalMatrix] = field(default_factory=dict)

  def add_edge(self, u: int, v: int, matrix_id: str, multiplicity: int = 1):
    self.edges.append(GridEdge(u, v, matrix_id, multiplicity))

  @property
  def domain_size(self) -> int:
    sizes = {m.rows for m in self.matrix_pool.values()}
    if len(sizes) > 1:
      raise ContractError("GH-grid matrices disagree on the domain size: %s" % sorted(sizes))
    if not sizes:
      return 1
    return sizes.pop()

  def validate(self):
    for edge in self.edges:
      if edge.matrix_id not in self.matrix_pool:
        raise ContractError("Edge (%d, %d) names missing matrix %r" % (edge.u, edge.v, edge.matrix_id))
      for v in (edge.u, edge.v):
        if not (0 <= v < self.vertex_count):
          raise ContractError("GH-grid edge endpoint %d out of range" % v)
      matrix = self.matrix_pool[edge.matrix_id]
      if not matrix.is_square:
        raise ContractError("Edge matrix %r is not square" % edge.matrix_id)
      if not edge.directed and not matrix.symmetric:
        raise ContractError("Undirected edge carries non-symmetric matrix %r" % edge.matrix_id)
    for v, matrix_id in self.vertex_weights.items():
      if matrix_id not in self.matrix_pool:
        raise ContractError("Vertex %d names missing matrix %r" % (v, matrix_id))
      if not self.matrix_pool[matrix_id].diagonal:
        raise ContractError("Vertex weight matrix %r is not diagonal" % matrix_id)
    self.domain_size
