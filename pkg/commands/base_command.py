from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time

from commands.report import RunReport
from errors import ParseError
from graphs.multigraph import Multigraph
from interpolate.transcript import digest_text
from numeric.matrix import RationalMatrix
from version import VERSION

logger = logging.getLogger(__name__)

class BaseCommand:
  """Base class for command line subcommands.

  A command reads its input files through the read_* helpers, which record a digest of every file
  for the run report, does its work in _run and returns a JSON-ready payload. The exit code and the
  one-line human summary are derived from that payload.

  Subclasses should implement add_arguments, _run and summary.
  They can also optionally implement exit_code_for.
  """

  name: str = None
  help: str = None

  def __init__(self, args: argparse.Namespace, settings: dict):
    self.args = args
    self.settings = settings
    self.input_digests: dict[str, str] = {}

  @classmethod
  def add_arguments(cls, parser: argparse.ArgumentParser):
    raise NotImplementedError()

  def run(self) -> RunReport:
    start = time.perf_counter()
    payload = self._run()
    wall_time = time.perf_counter() - start
    report = RunReport(
      command=self.name,
      arguments={k: v for k, v in vars(self.args).items() if k != "command_class"},
      input_digests=self.input_digests,
      payload=payload,
      wall_time=wall_time,
      version=VERSION,
      settings=dict(self.settings),
      exit_code=self.exit_code_for(payload),
    )
    logger.debug("%s finished in %.3f s", self.name, wall_time)
    return report

  def _run(self) -> dict:
    """Do the command's work and return the report payload. Should not print anything."""
    raise NotImplementedError()

  def summary(self, payload: dict) -> str:
    """Return the line printed on stdout for a successful run."""
    raise NotImplementedError()

  def exit_code_for(self, payload: dict) -> int:
    return 0

  def _read_text(self, label: str, path: str) -> str:
    try:
      with open(path, "r") as f:
        text = f.read()
    except OSError as e:
      raise ParseError("Could not read %s file %s: %s" % (label, path, e.strerror))
    self.input_digests[label] = digest_text(text)
    return text

  def read_matrix(self, path: str, label: str = "matrix") -> RationalMatrix:
    return RationalMatrix.from_text(self._read_text(label, path))

  def read_vertex_weights(self, path: str | None, size: int) -> RationalMatrix:
    """Weights as a diagonal matrix. No file means the identity."""
    if path is None:
      return RationalMatrix.identity(size)
    weights = self.read_matrix(path, "vertex_weights")
    if weights.rows == 1:
      return RationalMatrix.diag(weights.row(0))
    return weights

  def read_graph(self, path: str, label: str = "graph") -> Multigraph:
    text = self._read_text(label, path)
    try:
      data = json.loads(text)
    except json.JSONDecodeError as e:
      raise ParseError("Graph file %s is not valid JSON: %s" % (path, e))
    return Multigraph.from_json(data)

def get_log_header(settings: dict, argv: list[str] = None) -> str:
  if argv is None:
    argv = sys.argv
  header = ""
  header += "ghinterp Version %s\n" % VERSION
  header += "Command line: %s\n" % " ".join(argv)
  header += "Settings:\n"
  for name, value in settings.items():
    header += "  %s: %s\n" % (name, value)
  header += "\n"
  return header

def write_error_log(settings: dict, error_message: str) -> str | None:
  """Writes the header and error message to a timestamped log in the logs folder. Returns the path."""
  error_log_str = ""
  try:
    error_log_str += get_log_header(settings)
  except Exception as e:
    logger.warning("Error getting log header for error log: %s", e)
  error_log_str += error_message

  logs_folder = settings.get("logs_folder")
  if not logs_folder:
    return None
  try:
    os.makedirs(logs_folder, exist_ok=True)
    path = os.path.join(logs_folder, "ghinterp %s - Error Log.txt" % time.strftime("%Y-%m-%d %H-%M-%S"))
    with open(path, "w") as f:
      f.write(error_log_str)
  except OSError as e:
    logger.warning("Could not write error log: %s", e)
    return None
  return path
