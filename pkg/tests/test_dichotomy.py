from fractions import Fraction
from itertools import product
import random

import pytest

from condense.condensation import condense
from dichotomy.blocks import BipartiteBlock, BlockKind, LoopBlock, strike_zero_weights, support_blocks
from dichotomy.classify import ComponentKind, Reason, classify_dg, classify_pair, is_block_rank1
from errors import ContractError
from numeric.matrix import RationalMatrix, scale_symmetric
from tests.helpers import random_block_rank1, random_symmetric, random_weights

def test_support_blocks():
  structure = support_blocks(RationalMatrix([[1, 1], [1, 0]]))
  assert not structure.rectangular
  assert structure.witness == (1, 1)

  structure = support_blocks(RationalMatrix([[0, 1], [1, 0]]))
  assert structure.blocks == (BipartiteBlock((0,), (1,)),)

  structure = support_blocks(RationalMatrix.identity(2))
  assert structure.blocks == (LoopBlock((0,)), LoopBlock((1,)))
  assert structure.residual == ()

def test_support_blocks_residual_indices():
  structure = support_blocks(RationalMatrix([[0, 0, 0], [0, 2, 0], [0, 0, 0]]))
  assert structure.blocks == (LoopBlock((1,)),)
  assert structure.residual == (0, 2)

def test_support_blocks_rejects_negative_entries():
  with pytest.raises(ContractError):
    support_blocks(RationalMatrix([[1, -1], [-1, 1]]))
  with pytest.raises(ContractError):
    support_blocks(RationalMatrix([[1, 2], [1, 1]]))

def test_is_block_rank1():
  verdict = is_block_rank1(RationalMatrix([[1, 2], [2, 4]]))
  assert verdict.tractable
  assert verdict.reason == Reason.BLOCK_RANK_ONE

  verdict = is_block_rank1(RationalMatrix([[0, 1, 1], [1, 0, 1], [1, 1, 0]]))
  assert not verdict.tractable
  assert verdict.reason == Reason.NOT_RECTANGULAR
  assert verdict.witness == (0, 0)

  a = RationalMatrix([[0, 0, 1, 1], [0, 0, 1, 2], [1, 1, 0, 0], [1, 2, 0, 0]])
  verdict = is_block_rank1(a)
  assert verdict.reason == Reason.RANK_TWO_BLOCK
  i, i2, j, j2 = verdict.witness
  assert a[i, j]*a[i2, j2] - a[i, j2]*a[i2, j] != 0

def test_rank_two_witness_inside_loop_block():
  a = RationalMatrix([[1, 1], [1, 2]])
  verdict = is_block_rank1(a)
  assert verdict.reason == Reason.RANK_TWO_BLOCK
  assert verdict.witness == (0, 1, 0, 1)

def test_classify_pair_strikes_zero_weights():
  verdict = classify_pair(RationalMatrix([[1, 1], [1, 0]]), RationalMatrix.diag([1, 0]))
  assert verdict.tractable
  assert verdict.struck == (1,)

  k3 = RationalMatrix([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
  verdict = classify_pair(k3, RationalMatrix.diag([1, 1, 0]))
  assert verdict.tractable
  assert verdict.blocks.blocks == (BipartiteBlock((0,), (1,)),)

def test_classify_pair_witness_uses_original_indices():
  a = RationalMatrix([[5, 0, 0], [0, 1, 1], [0, 1, 0]])
  verdict = classify_pair(a, RationalMatrix.diag([0, 1, 1]))
  assert not verdict.tractable
  assert verdict.witness == (2, 2)
  assert verdict.struck == (0,)

def test_classify_pair_positive_weights_match_block_rank1():
  a = RationalMatrix([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
  assert classify_pair(a, RationalMatrix.identity(3)) == is_block_rank1(a)

def test_strike_zero_weights():
  a = RationalMatrix([[1, 2, 3], [2, 4, 5], [3, 5, 6]])
  struck_a, struck_d, struck = strike_zero_weights(a, RationalMatrix([[1, 0, 2]]))
  assert struck == (1,)
  assert struck_a == RationalMatrix([[1, 3], [3, 6]])
  assert struck_d == RationalMatrix.diag([1, 2])
  with pytest.raises(ContractError):
    strike_zero_weights(a, RationalMatrix.diag([1, -1, 1]))

def test_classify_dg():
  verdict = classify_dg(RationalMatrix([[1, 1, 1], [1, 1, 1], [1, 1, 1]]))
  assert verdict.tractable
  assert verdict.components == ((ComponentKind.REFLEXIVE_COMPLETE, (0, 1, 2)),)

  verdict = classify_dg(RationalMatrix([[0, 1, 1], [1, 0, 1], [1, 1, 0]]))
  assert not verdict.tractable

  verdict = classify_dg(RationalMatrix([[0]]))
  assert verdict.tractable
  assert verdict.components == ((ComponentKind.ISOLATED, (0,)),)

  verdict = classify_dg(RationalMatrix([[0, 1, 0], [1, 0, 1], [0, 1, 0]]))
  assert verdict.components == ((ComponentKind.COMPLETE_BIPARTITE, (0, 1, 2)),)

  with pytest.raises(ContractError):
    classify_dg(RationalMatrix([[2]]))

def test_zero_one_criteria_agree():
  for m in range(1, 5):
    positions = [(i, j) for i in range(m) for j in range(i, m)]
    for bits in product((0, 1), repeat=len(positions)):
      rows = [[0]*m for _ in range(m)]
      for (i, j), bit in zip(positions, bits):
        rows[i][j] = rows[j][i] = bit
      a = RationalMatrix(rows)
      assert classify_dg(a).tractable == is_block_rank1(a).tractable, rows

def _blow_up(rng: random.Random, base: RationalMatrix) -> RationalMatrix:
  """Copies of random columns of base, scaled by positive factors, so the result has dependent columns."""
  origin = list(range(base.rows)) + [rng.randrange(base.rows) for _ in range(rng.randint(0, 2))]
  mu = [Fraction(1)]*base.rows + [Fraction(rng.randint(1, 3), rng.randint(1, 2)) for _ in range(len(origin) - base.rows)]
  order = list(range(len(origin)))
  rng.shuffle(order)
  origin = [origin[k] for k in order]
  mu = [mu[k] for k in order]
  size = len(origin)
  return RationalMatrix(
    [[mu[x]*mu[y]*base[origin[x], origin[y]] for y in range(size)] for x in range(size)],
    cols=size,
  )

def test_verdict_survives_condensation_and_scaling():
  rng = random.Random(31)
  checked = 0
  while checked < 150:
    if rng.random() < 0.5:
      base = random_block_rank1(rng)
    else:
      base = random_symmetric(rng, rng.randint(1, 3), 0, 2, zero_chance=0.4)
    a = _blow_up(rng, base)
    if all(x == 0 for row in a.entries for x in row):
      continue
    m = a.rows
    d = RationalMatrix.diag(random_weights(rng, m))
    tractable = classify_pair(a, d).tractable
    assert tractable == is_block_rank1(base).tractable
    assert is_block_rank1(condense(a, d).a_prime).tractable == tractable
    assert is_block_rank1(scale_symmetric(a, random_weights(rng, m))).tractable == tractable
    checked += 1

def test_verdict_json():
  verdict = is_block_rank1(RationalMatrix([[1, 1], [1, 0]]))
  data = verdict.to_json()
  assert data["tractable"] is False
  assert data["reason"] == "not_rectangular"
  assert data["witness"] == [1, 1]
  assert data["blocks"]["blocks"][0]["kind"] == BlockKind.LOOP.value
  assert "#P-hard" in verdict.describe()
