from dataclasses import replace
from fractions import Fraction
import json
import random

import pytest

from condense.condensation import condense
from condense.lemmas import build_weights
from dichotomy.classify import classify_pair
from errors import ContractError, ParseError, TractableInputError
from graphs.constructions import parallel_and_loop_selection
from graphs.multigraph import Multigraph
from interpolate.bounded import run_bounded_reduction
from interpolate.simple import run_simple_reduction
from interpolate.stratify import (
  composition_count, compositions, compute_simple_stratification, compute_stratification,
)
from interpolate.transcript import (
  ReductionMode, ReductionTranscript, ReductionVariant, SpotCheck, TranscriptVerdict, digest_inputs, read_transcript,
)
from numeric.linalg import rank
from numeric.matrix import RationalMatrix
from partition.collapsed import transfer_L, transfer_M, z_collapsed_bounded, z_collapsed_stretch
from partition.evaluate import z_plain
from tests.helpers import brute_z, hard_instances, random_multigraph, random_symmetric, random_weights

HARDCORE = RationalMatrix([[1, 1], [1, 0]])
K3 = RationalMatrix([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
IDENTITY2 = RationalMatrix.identity(2)

def test_compositions():
  assert list(compositions(2, 2)) == [(0, 2), (1, 1), (2, 0)]
  assert list(compositions(0, 3)) == [(0, 0, 0)]
  assert list(compositions(1, 0)) == []
  assert composition_count(2, 2) == 3
  assert composition_count(0, 0) == 1
  assert composition_count(6, 3) == len(list(compositions(6, 3)))

def test_bounded_stratification_reproduces_oracle_values():
  for a, weights in hard_instances():
    d = RationalMatrix.diag(weights)
    cond = condense(a, d)
    for g in (Multigraph.single_edge(), Multigraph.path(2)):
      stratification = compute_stratification(g, cond, 1)
      assert stratification.t == 2*g.edge_count
      for n in range(4):
        assert stratification.evaluate(transfer_L(cond, 1, n)) == z_collapsed_bounded(g, cond, 1, n).value

def test_simple_stratification_reproduces_oracle_values():
  a = RationalMatrix([[1, -1, 0], [-1, 2, 1], [0, 1, 1]])
  d = RationalMatrix.diag([1, 2, Fraction(1, 2)])
  g = Multigraph(3, [(0, 1, 2), (1, 2)], loops=[(2, 1)])
  selection = parallel_and_loop_selection(g)
  stratification = compute_simple_stratification(g, a, d)
  assert stratification.t == 3
  for n in range(1, 5):
    assert stratification.evaluate(transfer_M(a, d, n)) == z_collapsed_stretch(g, a, d, selection, n).value

def test_bounded_exact_hardcore_single_edge():
  transcript = run_bounded_reduction(HARDCORE, IDENTITY2, Multigraph.single_edge(), spot_check_budget=2**12)
  assert transcript.variant == ReductionVariant.BOUNDED
  assert transcript.recovered == 3
  assert transcript.verdict == TranscriptVerdict.EQUAL
  assert transcript.parameters["p"] == 1
  assert transcript.parameters["n_start"] == 2
  assert transcript.parameters["order_bound"] == 3
  assert [n for n, _ in transcript.oracle_values] == list(range(2, 10))
  assert all(stats.simple and stats.max_degree <= 3 for stats in transcript.oracle_graphs)
  assert len(transcript.spot_checks) == 2
  assert transcript.check_failures() == []

def test_bounded_exact_triangle_starts_at_one():
  transcript = run_bounded_reduction(HARDCORE, IDENTITY2, Multigraph.complete(3), spot_check_budget=0)
  assert transcript.parameters["n_start"] == 1
  assert transcript.recovered == 4
  assert transcript.verdict == TranscriptVerdict.EQUAL

def test_bounded_exact_k3_recovers_colourings():
  transcript = run_bounded_reduction(K3, RationalMatrix.identity(3), Multigraph.single_edge(), spot_check_budget=0)
  assert transcript.recovered == 6
  assert transcript.verdict == TranscriptVerdict.EQUAL

def test_bounded_exact_condensed_matrix():
  a = RationalMatrix([[1, 2, 1], [2, 4, 2], [1, 2, 0]])
  d = RationalMatrix.identity(3)
  g = Multigraph.path(2)
  transcript = run_bounded_reduction(a, d, g, spot_check_budget=2**10)
  cond = condense(a, d)
  _, _, c = build_weights(cond, transcript.parameters["p"])
  assert transcript.parameters["s"] == 2
  assert transcript.recovered == z_plain(c, g).value
  assert transcript.verdict == TranscriptVerdict.EQUAL

def test_bounded_exact_with_isolated_vertex():
  g = Multigraph(3, [(0, 1)])
  transcript = run_bounded_reduction(HARDCORE, IDENTITY2, g, spot_check_budget=0)
  assert transcript.parameters["h"] == 1
  assert transcript.recovered == 3
  assert transcript.verdict == TranscriptVerdict.EQUAL
  assert {check.name: check.value for check in transcript.direct_checks}["plain_C"] == 6

def test_bounded_with_p_override():
  transcript = run_bounded_reduction(HARDCORE, IDENTITY2, Multigraph.single_edge(), p=2, spot_check_budget=0)
  assert transcript.parameters["p"] == 2
  assert transcript.recovered == 3
  assert transcript.verdict == TranscriptVerdict.EQUAL

  singular = RationalMatrix([[1, 1, 2], [1, 2, 3], [2, 3, 5]])
  with pytest.raises(ContractError):
    run_bounded_reduction(singular, RationalMatrix.identity(3), Multigraph.single_edge(), p=1)

def test_bounded_rejects_tractable_and_looped_inputs():
  with pytest.raises(TractableInputError) as info:
    run_bounded_reduction(RationalMatrix([[1, 2], [2, 4]]), IDENTITY2, Multigraph.single_edge())
  assert info.value.verdict.tractable
  with pytest.raises(ContractError):
    run_bounded_reduction(HARDCORE, IDENTITY2, Multigraph(1, loops=[(0, 1)]))

def test_bounded_eigen_mode():
  transcript = run_bounded_reduction(
    HARDCORE, IDENTITY2, Multigraph.single_edge(), mode=ReductionMode.EIGEN, precision=128, spot_check_budget=0,
  )
  assert transcript.verdict == TranscriptVerdict.WITHIN_TOLERANCE
  assert abs(float(transcript.recovered) - 3) < 1e-20
  assert transcript.system["node_count"] == 3
  assert float(transcript.system["tensor_symmetry_residual"]) < 1e-20

def test_simple_exact_double_edge():
  transcript = run_simple_reduction(K3, RationalMatrix.identity(3), Multigraph(2, [(0, 1, 2)]), spot_check_budget=2**10)
  assert transcript.variant == ReductionVariant.SIMPLE
  assert transcript.parameters["n_start"] == 2
  assert transcript.parameters["target_index"] == 1
  assert transcript.parameters["r"] == 3
  assert transcript.recovered == 6
  assert transcript.verdict == TranscriptVerdict.EQUAL
  assert all(stats.simple for stats in transcript.oracle_graphs)

def test_simple_exact_loop_with_negative_entries():
  a = RationalMatrix([[1, -1], [-1, 2]])
  transcript = run_simple_reduction(a, IDENTITY2, Multigraph(1, loops=[(0, 1)]))
  assert transcript.recovered == 3
  assert transcript.verdict == TranscriptVerdict.EQUAL
  assert transcript.parameters["n_start"] == 3
  assert [n for n, _ in transcript.oracle_values] == list(range(3, 9))
  assert all(stats.simple for stats in transcript.oracle_graphs)

def test_simple_loop_on_hardcore():
  transcript = run_simple_reduction(HARDCORE, IDENTITY2, Multigraph(1, loops=[(0, 1)]))
  assert transcript.parameters["n_start"] == 3
  assert transcript.recovered == 1
  assert transcript.verdict == TranscriptVerdict.EQUAL

def test_simple_loop_and_parallel_edge():
  a = RationalMatrix([[1, -1], [-1, 2]])
  g = Multigraph(2, [(0, 1, 2)], loops=[(1, 1)])
  transcript = run_simple_reduction(a, RationalMatrix.diag([1, 2]), g, spot_check_budget=2**10)
  assert transcript.parameters["n_start"] == 3
  assert transcript.parameters["t"] == 3
  assert all(stats.simple for stats in transcript.oracle_graphs)
  assert len(transcript.spot_checks) == 1
  assert transcript.recovered == brute_z(a, [1, 2], g)
  assert transcript.verdict == TranscriptVerdict.EQUAL

def test_simple_eigen_mode_with_loop():
  transcript = run_simple_reduction(
    HARDCORE, IDENTITY2, Multigraph(1, loops=[(0, 1)]), mode=ReductionMode.EIGEN, precision=128, spot_check_budget=0,
  )
  assert transcript.parameters["n_start"] == 3
  assert transcript.verdict == TranscriptVerdict.WITHIN_TOLERANCE
  assert abs(float(transcript.recovered) - 1) < 1e-20

def test_transcript_digests_the_weights_as_given():
  d = RationalMatrix([[1, 2]])
  g = Multigraph(2, [(0, 1, 2)])
  transcript = run_simple_reduction(HARDCORE, d, g, spot_check_budget=0)
  assert transcript.recovered == 5
  assert transcript.input_digests == digest_inputs(HARDCORE, d, g)
  assert transcript.input_digests != digest_inputs(HARDCORE, RationalMatrix.diag([1, 2]), g)

def test_bounded_eigen_mode_with_widely_spread_nodes():
  a = RationalMatrix([[1, 1, 2], [1, 1, 1], [2, 1, 1]])
  d = RationalMatrix.diag([1, 3, Fraction(1, 2)])
  g = Multigraph(3, [(0, 2), (2, 1)])
  exact = run_bounded_reduction(a, d, g, spot_check_budget=0)
  assert exact.verdict == TranscriptVerdict.EQUAL
  assert exact.parameters["s"] == 3

  eigen = run_bounded_reduction(a, d, g, mode=ReductionMode.EIGEN, precision=256, spot_check_budget=0)
  assert eigen.verdict == TranscriptVerdict.WITHIN_TOLERANCE
  assert eigen.system["node_count"] == 15
  assert eigen.system["working_precision"] >= 256
  assert abs(float(eigen.recovered) - float(exact.recovered)) < 1e-12*max(1, abs(float(exact.recovered)))

def _agree(eigen: ReductionTranscript, exact: ReductionTranscript) -> bool:
  expected = float(exact.recovered)
  return abs(float(eigen.recovered) - expected) < 1e-9*max(1, abs(expected))

def test_bounded_reduction_on_random_hard_pairs():
  rng = random.Random(71)
  runs = 0
  while runs < 12:
    m = rng.randint(2, 3)
    a = random_symmetric(rng, m, 0, 2, zero_chance=0.3)
    d = RationalMatrix.diag(random_weights(rng, m))
    if classify_pair(a, d).tractable:
      continue
    g = random_multigraph(rng, rng.randint(2, 3), rng.randint(1, 2), allow_loops=False)
    exact = run_bounded_reduction(a, d, g, spot_check_budget=2**8)
    assert exact.verdict == TranscriptVerdict.EQUAL
    assert all(stats.simple for stats in exact.oracle_graphs)
    if runs % 3 == 0:
      eigen = run_bounded_reduction(a, d, g, mode=ReductionMode.EIGEN, precision=128, spot_check_budget=0)
      assert eigen.verdict == TranscriptVerdict.WITHIN_TOLERANCE
      assert _agree(eigen, exact)
    runs += 1

def test_simple_reduction_on_random_multigraphs():
  rng = random.Random(73)
  runs = 0
  while runs < 15:
    m = rng.randint(1, 3)
    a = random_symmetric(rng, m, -2, 2)
    if rank(a) == 0:
      continue
    weights = random_weights(rng, m)
    g = random_multigraph(rng, rng.randint(1, 3), rng.randint(1, 3))
    exact = run_simple_reduction(a, RationalMatrix.diag(weights), g, spot_check_budget=2**8)
    assert exact.parameters["n_start"] == (3 if g.has_loops else 2)
    assert exact.recovered == brute_z(a, weights, g)
    assert exact.verdict == TranscriptVerdict.EQUAL
    assert all(stats.simple for stats in exact.oracle_graphs)
    if runs % 3 == 0:
      eigen = run_simple_reduction(
        a, RationalMatrix.diag(weights), g, mode=ReductionMode.EIGEN, precision=128, spot_check_budget=0,
      )
      assert eigen.verdict == TranscriptVerdict.WITHIN_TOLERANCE
      assert _agree(eigen, exact)
    runs += 1

def test_simple_exact_rank_one():
  transcript = run_simple_reduction(RationalMatrix([[1, 2], [2, 4]]), IDENTITY2, Multigraph(2, [(0, 1, 2)]))
  assert transcript.parameters["order_bound"] == 1
  assert transcript.recovered == 25

def test_simple_eigen_merges_repeated_eigenvalues():
  transcript = run_simple_reduction(
    K3, RationalMatrix.identity(3), Multigraph(2, [(0, 1, 2)]), mode=ReductionMode.EIGEN, precision=128, spot_check_budget=0,
  )
  assert transcript.verdict == TranscriptVerdict.WITHIN_TOLERANCE
  assert len(transcript.system["nodes"]) == 3
  assert abs(float(transcript.recovered) - 6) < 1e-20

def test_simple_rejects_bad_inputs():
  with pytest.raises(ContractError):
    run_simple_reduction(RationalMatrix([[1, 2], [0, 1]]), IDENTITY2, Multigraph.single_edge())
  with pytest.raises(ContractError):
    run_simple_reduction(K3, RationalMatrix.diag([1, 0, 1]), Multigraph.single_edge())

def test_transcript_round_trip_and_tampering():
  transcript = run_bounded_reduction(HARDCORE, IDENTITY2, Multigraph.single_edge(), spot_check_budget=2**8)
  data = transcript.to_json()
  assert data["recovered"] == "3/1"
  assert data["verdict"] == "equal"

  reloaded = read_transcript(json.dumps(data))
  assert reloaded.verdict == TranscriptVerdict.EQUAL
  assert reloaded.recovered == 3

  data["recovered"] = "4/1"
  assert ReductionTranscript.from_json(data).verdict == TranscriptVerdict.MISMATCH

def test_spot_check_failure_is_a_mismatch():
  transcript = run_bounded_reduction(HARDCORE, IDENTITY2, Multigraph.single_edge(), spot_check_budget=2**8)
  check = transcript.spot_checks[0]
  tampered = replace(transcript, spot_checks=[SpotCheck(check.n, check.collapsed, check.raw + 1)])
  assert tampered.verdict == TranscriptVerdict.MISMATCH
  assert tampered.check_failures()[0].startswith("spot check")

def test_eigen_transcript_round_trip():
  transcript = run_simple_reduction(
    K3, RationalMatrix.identity(3), Multigraph(2, [(0, 1, 2)]), mode=ReductionMode.EIGEN, precision=128, spot_check_budget=0,
  )
  reloaded = read_transcript(json.dumps(transcript.to_json()))
  assert reloaded.mode == ReductionMode.EIGEN
  assert reloaded.verdict == TranscriptVerdict.WITHIN_TOLERANCE

def test_read_transcript_errors():
  with pytest.raises(ParseError):
    read_transcript("not json")
  with pytest.raises(ParseError):
    read_transcript(json.dumps({"mode": "exact"}))
  with pytest.raises(ParseError):
    read_transcript(json.dumps([1, 2]))
