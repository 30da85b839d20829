from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
import logging

import networkx as nx

from dichotomy.blocks import (
  BlockKind, BlockStructure, require_nonnegative_symmetric, strike_zero_weights, support_blocks, support_graph,
)
from errors import ContractError
from numeric.linalg import nonzero_minor
from numeric.matrix import RationalMatrix

logger = logging.getLogger(__name__)

class Reason(Enum):
  NOT_RECTANGULAR = "not_rectangular"
  RANK_TWO_BLOCK = "rank_two_block"
  BLOCK_RANK_ONE = "block_rank_one"
  ZERO_ONE_COMPONENTS = "zero_one_components"

class ComponentKind(Enum):
  ISOLATED = "isolated"
  REFLEXIVE_COMPLETE = "reflexive_complete"
  COMPLETE_BIPARTITE = "complete_bipartite"
  OTHER = "other"

@dataclass(frozen=True)
class Verdict:
  """Outcome of a tractability test.

  For NOT_RECTANGULAR the witness is a pair (i, j) inside one block with A_ij = 0. For RANK_TWO_BLOCK
  it is (i, i', j, j') with A_ij A_i'j' - A_ij' A_i'j != 0 inside one block. Indices always refer to
  the matrix the caller passed in, before any striking."""
  tractable: bool
  reason: Reason
  witness: tuple[int, ...] | None = None
  struck: tuple[int, ...] = ()
  blocks: BlockStructure | None = None
  components: tuple = field(default_factory=tuple)

  def describe(self) -> str:
    if self.reason == Reason.ZERO_ONE_COMPONENTS:
      side = "tractable" if self.tractable else "#P-hard side"
      kinds = ", ".join("%s %s" % (kind.value, list(indices)) for kind, indices in self.components)
      return "%s, components: %s" % (side, kinds)
    if self.tractable:
      text = "tractable, block-rank-1"
      if self.struck:
        text += " after striking %s" % list(self.struck)
      return text
    if self.reason == Reason.NOT_RECTANGULAR:
      return "#P-hard side, witness %s rectangularity" % (self.witness,)
    return "#P-hard side, witness %s rank-two block" % (self.witness,)

  def to_json(self) -> dict:
    return {
      "tractable": self.tractable,
      "reason": self.reason.value,
      "witness": list(self.witness) if self.witness is not None else None,
      "struck": list(self.struck),
      "blocks": self.blocks.to_json() if self.blocks is not None else None,
      "components": [{"kind": kind.value, "indices": list(indices)} for kind, indices in self.components],
    }

def is_block_rank1(a: RationalMatrix) -> Verdict:
  structure = support_blocks(a)
  if not structure.rectangular:
    return Verdict(False, Reason.NOT_RECTANGULAR, structure.witness, blocks=structure)
  for block in structure.blocks:
    if block.kind == BlockKind.LOOP:
      minor = nonzero_minor(a, list(block.T), list(block.T))
    else:
      minor = nonzero_minor(a, list(block.P), list(block.Q))
    if minor is not None:
      return Verdict(False, Reason.RANK_TWO_BLOCK, minor, blocks=structure)
  return Verdict(True, Reason.BLOCK_RANK_ONE, blocks=structure)

def classify_pair(a: RationalMatrix, d: RationalMatrix) -> Verdict:
  require_nonnegative_symmetric(a)
  a_struck, _, struck = strike_zero_weights(a, d)
  verdict = is_block_rank1(a_struck)
  if not struck:
    return verdict
  logger.debug("Struck zero-weight indices %s before classifying", list(struck))
  kept = [i for i in range(a.rows) if i not in struck]
  return replace(
    verdict,
    witness=tuple(kept[i] for i in verdict.witness) if verdict.witness is not None else None,
    struck=struck,
    blocks=verdict.blocks.remapped(kept),
  )

def _component_kind(a: RationalMatrix, graph: nx.Graph, component: list[int]) -> ComponentKind:
  if len(component) == 1:
    i = component[0]
    return ComponentKind.ISOLATED if a[i, i] == 0 else ComponentKind.REFLEXIVE_COMPLETE
  if all(a[i, j] == 1 for i in component for j in component):
    return ComponentKind.REFLEXIVE_COMPLETE
  subgraph = graph.subgraph(component)
  if any(a[i, i] != 0 for i in component) or not nx.is_bipartite(subgraph):
    return ComponentKind.OTHER
  coloring = nx.bipartite.color(subgraph)
  if all(a[i, j] == 1 for i in component for j in component if coloring[i] != coloring[j]):
    return ComponentKind.COMPLETE_BIPARTITE
  return ComponentKind.OTHER

def classify_dg(a: RationalMatrix) -> Verdict:
  """0-1 criterion: every component is an isolated vertex, a complete graph with all loops, or a
  complete bipartite graph with no loops."""
  require_nonnegative_symmetric(a)
  if not a.is_zero_one:
    raise ContractError("Expected a 0-1 matrix")
  graph = support_graph(a)
  components = []
  for component in sorted(sorted(c) for c in nx.connected_components(graph)):
    components.append((_component_kind(a, graph, component), tuple(component)))
  tractable = all(kind != ComponentKind.OTHER for kind, _ in components)
  return Verdict(tractable, Reason.ZERO_ONE_COMPONENTS, components=tuple(components))
