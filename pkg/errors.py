class GHInterpError(Exception):
  """Base class for every failure the library reports on purpose.

  Each subclass carries the exit code the command line front end uses for it."""

  exit_code = 1

class ParseError(GHInterpError):
  exit_code = 2

class ContractError(GHInterpError):
  exit_code = 3

class ShapeError(ContractError):
  pass

class EmptyDomainError(ContractError):
  pass

class TractableInputError(ContractError):
  def __init__(self, message, verdict):
    super().__init__(message)
    self.verdict = verdict

class NotTractableError(ContractError):
  def __init__(self, message, verdict):
    super().__init__(message)
    self.verdict = verdict

class NumericalError(GHInterpError):
  exit_code = 3

class PrecisionError(NumericalError):
  pass

class IllConditionedError(NumericalError):
  pass

class DegenerateNodeError(NumericalError):
  pass

class OrderBoundError(NumericalError):
  pass

class ZeroConstantTermError(NumericalError):
  pass

class InternalError(NumericalError):
  pass

class BudgetExceededError(GHInterpError):
  exit_code = 4

  def __init__(self, requested: int, allowed: int):
    super().__init__("Enumeration needs %d terms but the budget allows %d" % (requested, allowed))
    self.requested = requested
    self.allowed = allowed
