from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
import hashlib
import json

from errors import ParseError
from graphs.multigraph import Multigraph
from numeric.eigen import DEFAULT_PRECISION, make_context, to_mpf
from numeric.matrix import RationalMatrix
from numeric.rational import format_rational, parse_rational

class ReductionVariant(Enum):
  BOUNDED = "bounded"
  SIMPLE = "simple"

class ReductionMode(Enum):
  EXACT = "exact"
  EIGEN = "eigen"

class TranscriptVerdict(Enum):
  EQUAL = "equal"
  WITHIN_TOLERANCE = "within_tolerance"
  MISMATCH = "MISMATCH"

def eigen_tolerance(ctx, precision: int):
  return ctx.mpf(2) ** (-(precision // 4))

def decimal_digits(precision: int) -> int:
  # Binary precision expressed in decimal digits.
  return max(15, int(precision * 0.30103))

def digest_text(text: str) -> str:
  return hashlib.sha256(text.encode("utf-8")).hexdigest()

def digest_inputs(a: RationalMatrix, d: RationalMatrix, g: Multigraph) -> dict[str, str]:
  return {
    "matrix": digest_text(a.to_text()),
    "vertex_weights": digest_text(d.to_text()),
    "graph": digest_text(json.dumps(g.to_json(), sort_keys=True)),
  }

@dataclass(frozen=True)
class DirectCheck:
  """An independently computed value that must equal recovered * factor."""
  name: str
  value: Fraction
  factor: int = 1

@dataclass(frozen=True)
class SpotCheck:
  """The collapsed oracle value against raw enumeration on the physical oracle graph."""
  n: int
  collapsed: Fraction
  raw: Fraction

@dataclass(frozen=True)
class OracleGraphStats:
  n: int
  vertices: int
  edges: int
  max_degree: int
  simple: bool

@dataclass
class ReductionTranscript:
  """Everything a reduction run did, sufficient to recheck its outcome.

  The verdict is never stored as a source of truth: it is recomputed from recovered, the direct
  checks and the spot checks every time it is read."""
  variant: ReductionVariant
  mode: ReductionMode
  input_digests: dict[str, str]
  parameters: dict
  oracle_values: list[tuple[int, Fraction]] = field(default_factory=list)
  system: dict = field(default_factory=dict)
  # A Fraction in exact mode, an mpmath real in eigen mode.
  recovered: object = None
  direct_checks: list[DirectCheck] = field(default_factory=list)
  spot_checks: list[SpotCheck] = field(default_factory=list)
  oracle_graphs: list[OracleGraphStats] = field(default_factory=list)

  @property
  def precision(self) -> int:
    return self.parameters.get("precision", DEFAULT_PRECISION)

  def check_failures(self) -> list[str]:
    failures = [
      "spot check n=%d: collapsed %s, raw %s" % (check.n, check.collapsed, check.raw)
      for check in self.spot_checks
      if check.collapsed != check.raw
    ]
    if self.mode == ReductionMode.EXACT:
      for check in self.direct_checks:
        if check.value != self.recovered*check.factor:
          failures.append("%s: direct %s, recovered %s x %d" % (check.name, check.value, self.recovered, check.factor))
      return failures

    ctx = make_context(self.precision)
    tolerance = eigen_tolerance(ctx, self.precision)
    recovered = to_mpf(ctx, self.recovered)
    for check in self.direct_checks:
      direct = to_mpf(ctx, check.value)
      error = ctx.fabs(direct - recovered*check.factor)
      if error > tolerance*max(1, ctx.fabs(direct)):
        failures.append("%s: direct %s, recovered %s x %d" % (
          check.name, check.value, ctx.nstr(recovered, 20), check.factor,
        ))
    return failures

  @property
  def verdict(self) -> TranscriptVerdict:
    if self.check_failures():
      return TranscriptVerdict.MISMATCH
    if self.mode == ReductionMode.EXACT:
      return TranscriptVerdict.EQUAL
    return TranscriptVerdict.WITHIN_TOLERANCE

  def format_recovered(self) -> str:
    if self.mode == ReductionMode.EXACT:
      return format_rational(self.recovered)
    ctx = make_context(self.precision)
    return ctx.nstr(to_mpf(ctx, self.recovered), decimal_digits(self.precision))

  def to_json(self) -> dict:
    return {
      "variant": self.variant.value,
      "mode": self.mode.value,
      "input_digests": self.input_digests,
      "parameters": self.parameters,
      "oracle_values": [[n, format_rational(value)] for n, value in self.oracle_values],
      "system": self.system,
      "recovered": self.format_recovered(),
      "direct_checks": [
        {"name": check.name, "value": format_rational(check.value), "factor": check.factor}
        for check in self.direct_checks
      ],
      "spot_checks": [
        {"n": check.n, "collapsed": format_rational(check.collapsed), "raw": format_rational(check.raw)}
        for check in self.spot_checks
      ],
      "oracle_graphs": [
        {"n": s.n, "vertices": s.vertices, "edges": s.edges, "max_degree": s.max_degree, "simple": s.simple}
        for s in self.oracle_graphs
      ],
      "verdict": self.verdict.value,
    }

  @classmethod
  def from_json(cls, data) -> ReductionTranscript:
    if not isinstance(data, dict):
      raise ParseError("Transcript JSON must be an object")
    try:
      mode = ReductionMode(data["mode"])
      parameters = dict(data.get("parameters", {}))
      if mode == ReductionMode.EXACT:
        recovered = parse_rational(data["recovered"])
      else:
        ctx = make_context(parameters.get("precision", DEFAULT_PRECISION))
        recovered = ctx.mpf(data["recovered"])
      return cls(
        variant=ReductionVariant(data["variant"]),
        mode=mode,
        input_digests=dict(data.get("input_digests", {})),
        parameters=parameters,
        oracle_values=[(int(n), parse_rational(value)) for n, value in data.get("oracle_values", [])],
        system=dict(data.get("system", {})),
        recovered=recovered,
        direct_checks=[
          DirectCheck(entry["name"], parse_rational(entry["value"]), int(entry.get("factor", 1)))
          for entry in data.get("direct_checks", [])
        ],
        spot_checks=[
          SpotCheck(int(entry["n"]), parse_rational(entry["collapsed"]), parse_rational(entry["raw"]))
          for entry in data.get("spot_checks", [])
        ],
        oracle_graphs=[
          OracleGraphStats(int(e["n"]), int(e["vertices"]), int(e["edges"]), int(e["max_degree"]), bool(e["simple"]))
          for e in data.get("oracle_graphs", [])
        ],
      )
    except (KeyError, TypeError, ValueError) as e:
      raise ParseError("Malformed transcript: %s" % e)

def read_transcript(text: str) -> ReductionTranscript:
  try:
    data = json.loads(text)
  except json.JSONDecodeError as e:
    raise ParseError("Transcript is not valid JSON: %s" % e)
  return ReductionTranscript.from_json(data)
