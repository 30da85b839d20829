from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import networkx as nx

from errors import ContractError, ShapeError
from numeric.matrix import RationalMatrix, as_weight_vector

class BlockKind(Enum):
  LOOP = "loop"
  BIPARTITE = "bipartite"

@dataclass(frozen=True)
class LoopBlock:
  """A support component with full T x T support."""
  T: tuple[int, ...]

  kind = BlockKind.LOOP

  def indices(self) -> tuple[int, ...]:
    return self.T

  def to_json(self) -> dict:
    return {"kind": self.kind.value, "T": list(self.T)}

@dataclass(frozen=True)
class BipartiteBlock:
  """A support component with support (P x Q) u (Q x P). P holds the component's smallest index."""
  P: tuple[int, ...]
  Q: tuple[int, ...]

  kind = BlockKind.BIPARTITE

  def indices(self) -> tuple[int, ...]:
    return tuple(sorted(self.P + self.Q))

  def to_json(self) -> dict:
    return {"kind": self.kind.value, "P": list(self.P), "Q": list(self.Q)}

@dataclass(frozen=True)
class BlockStructure:
  blocks: tuple
  residual: tuple[int, ...]
  # A zero entry (i, j) inside a block that needs full support, or None when rectangular.
  witness: tuple[int, int] | None = None

  @property
  def rectangular(self) -> bool:
    return self.witness is None

  def remapped(self, index_map) -> BlockStructure:
    def relabel(indices):
      return tuple(index_map[i] for i in indices)
    blocks = []
    for block in self.blocks:
      if block.kind == BlockKind.LOOP:
        blocks.append(LoopBlock(relabel(block.T)))
      else:
        blocks.append(BipartiteBlock(relabel(block.P), relabel(block.Q)))
    witness = relabel(self.witness) if self.witness is not None else None
    return BlockStructure(tuple(blocks), relabel(self.residual), witness)

  def to_json(self) -> dict:
    return {
      "blocks": [block.to_json() for block in self.blocks],
      "residual": list(self.residual),
      "witness": list(self.witness) if self.witness is not None else None,
    }

def require_nonnegative_symmetric(a: RationalMatrix):
  if not a.is_square:
    raise ShapeError("Expected a square matrix, got %dx%d" % (a.rows, a.cols))
  if not a.symmetric:
    raise ContractError("Expected a symmetric matrix")
  if not a.nonnegative:
    raise ContractError("Expected a nonnegative matrix")

def support_graph(a: RationalMatrix) -> nx.Graph:
  """Graph on the indices with an edge i-j (i != j) whenever A_ij > 0. Diagonal entries are not edges."""
  graph = nx.Graph()
  graph.add_nodes_from(range(a.rows))
  graph.add_edges_from(
    (i, j) for i in range(a.rows) for j in range(i+1, a.cols) if a[i, j] > 0
  )
  return graph

def _first_zero(a: RationalMatrix, rows, cols):
  for i in rows:
    for j in cols:
      if a[i, j] == 0:
        return (min(i, j), max(i, j))
  return None

def support_blocks(a: RationalMatrix) -> BlockStructure:
  require_nonnegative_symmetric(a)
  graph = support_graph(a)
  blocks = []
  residual = []
  witness = None
  for component in sorted(sorted(c) for c in nx.connected_components(graph)):
    if len(component) == 1 and a[component[0], component[0]] == 0:
      residual.append(component[0])
      continue
    subgraph = graph.subgraph(component)
    has_diagonal = any(a[i, i] > 0 for i in component)
    if has_diagonal or not nx.is_bipartite(subgraph):
      blocks.append(LoopBlock(tuple(component)))
      zero = _first_zero(a, component, component)
    else:
      coloring = nx.bipartite.color(subgraph)
      side = coloring[component[0]]
      P = tuple(i for i in component if coloring[i] == side)
      Q = tuple(i for i in component if coloring[i] != side)
      blocks.append(BipartiteBlock(P, Q))
      zero = _first_zero(a, P, Q)
    if witness is None and zero is not None:
      witness = zero
  return BlockStructure(tuple(blocks), tuple(residual), witness)

def strike_zero_weights(a: RationalMatrix, d: RationalMatrix) -> tuple[RationalMatrix, RationalMatrix, tuple[int, ...]]:
  """Removes the domain elements whose vertex weight is zero; they contribute nothing to any graph
  with a vertex."""
  weights = as_weight_vector(d)
  if len(weights) != a.rows or not a.is_square:
    raise ShapeError("Vertex weights of size %d for a %dx%d edge matrix" % (len(weights), a.rows, a.cols))
  if any(w < 0 for w in weights):
    raise ContractError("Vertex weights must be nonnegative")
  kept = [i for i, w in enumerate(weights) if w != 0]
  struck = tuple(i for i, w in enumerate(weights) if w == 0)
  if not struck:
    return a, RationalMatrix.diag(weights), ()
  return a.submatrix(kept), RationalMatrix.diag([weights[i] for i in kept]), struck
