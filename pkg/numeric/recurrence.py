from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from errors import ContractError, OrderBoundError, ZeroConstantTermError

@dataclass(frozen=True)
class LinearRecurrence:
  """z_{n+c} = sum_{j<c} coefficients[j] * z_{n+j}, with c = order."""
  coefficients: tuple[Fraction, ...]

  @property
  def order(self) -> int:
    return len(self.coefficients)

  def next_term(self, window: Sequence[Fraction]) -> Fraction:
    """Given z_n..z_{n+c-1}, returns z_{n+c}."""
    return sum((a*z for a, z in zip(self.coefficients, window)), Fraction(0))

  def annihilates(self, samples: Sequence[Fraction]) -> bool:
    c = self.order
    return all(
      self.next_term(samples[n:n+c]) == samples[n+c]
      for n in range(len(samples) - c)
    )

class BerlekampMassey:
  """Incremental Berlekamp-Massey over the rationals.

  Feed terms with add(); result() gives the shortest recurrence generating everything fed so far."""

  def __init__(self):
    self.reset()

  def reset(self):
    # Connection polynomial C(x) = 1 + c_1 x + ... + c_L x^L, stored lowest degree first.
    self.C = [Fraction(1)]
    self.B = [Fraction(1)]
    self.L = 0
    self.shift = 1
    self.last_discrepancy = Fraction(1)
    self.seq: list[Fraction] = []

  def add(self, term) -> bool:
    """Returns True when the current recurrence already predicted the new term."""
    term = Fraction(term)
    n = len(self.seq)
    self.seq.append(term)

    discrepancy = term + sum(
      (self.C[i]*self.seq[n-i] for i in range(1, min(self.L, len(self.C)-1) + 1)),
      Fraction(0),
    )
    if discrepancy == 0:
      self.shift += 1
      return True

    factor = discrepancy / self.last_discrepancy
    updated = self.C + [Fraction(0)]*max(0, len(self.B) + self.shift - len(self.C))
    for i, b in enumerate(self.B):
      updated[i + self.shift] -= factor*b

    if 2*self.L <= n:
      self.B = self.C
      self.L = n + 1 - self.L
      self.last_discrepancy = discrepancy
      self.shift = 1
    else:
      self.shift += 1
    self.C = updated
    return False

  def result(self) -> LinearRecurrence:
    c = self.C + [Fraction(0)]*max(0, self.L + 1 - len(self.C))
    # s_{n+L} = -sum_{i=1}^{L} c_i s_{n+L-i}, so a_j = -c_{L-j}.
    return LinearRecurrence(tuple(-c[self.L - j] for j in range(self.L)))

  @staticmethod
  def for_sequence(seq) -> LinearRecurrence:
    bm = BerlekampMassey()
    for term in seq:
      bm.add(term)
    return bm.result()

def min_recurrence(samples: Sequence, order_bound: int) -> LinearRecurrence:
  if order_bound < 0:
    raise ContractError("Order bound must be nonnegative")
  if len(samples) < 2*order_bound:
    raise ContractError("Need at least %d samples for order bound %d, got %d" % (2*order_bound, order_bound, len(samples)))
  samples = [Fraction(x) for x in samples]
  rec = BerlekampMassey.for_sequence(samples)
  if rec.order > order_bound:
    raise OrderBoundError("Shortest recurrence has order %d, above the bound %d" % (rec.order, order_bound))
  if not rec.annihilates(samples):
    raise OrderBoundError("No recurrence of order at most %d fits the samples" % order_bound)
  return rec

def extrapolate_back(rec: LinearRecurrence, samples: Sequence, steps: int) -> Fraction:
  """Runs the recurrence backwards `steps` times from samples, which start at some index n0."""
  if steps < 0:
    raise ContractError("Cannot extrapolate a negative number of steps")
  samples = [Fraction(x) for x in samples]
  if steps == 0:
    return samples[0]
  c = rec.order
  if c == 0:
    return Fraction(0)
  if rec.coefficients[0] == 0:
    raise ZeroConstantTermError("Recurrence has a zero constant term, so it cannot run backwards")
  if len(samples) < c:
    raise ContractError("Need %d consecutive samples to run an order %d recurrence backwards" % (c, c))
  a = rec.coefficients
  window = samples[:c]
  for _ in range(steps):
    previous = (window[c-1] - sum((a[j]*window[j-1] for j in range(1, c)), Fraction(0))) / a[0]
    window = [previous] + window[:-1]
  return window[0]
