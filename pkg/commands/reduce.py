from commands.base_command import BaseCommand
from interpolate.bounded import run_bounded_reduction
from interpolate.simple import run_simple_reduction
from interpolate.transcript import ReductionMode, TranscriptVerdict

class ReduceCommand(BaseCommand):
  name = "reduce"
  help = "Run an interpolation reduction end to end and check what it recovers."

  @classmethod
  def add_arguments(cls, parser):
    parser.add_argument("--variant", required=True, choices=["bounded", "simple"])
    parser.add_argument("--matrix", required=True, help="Symmetric matrix file.")
    parser.add_argument("--graph", required=True, help="Graph JSON file.")
    parser.add_argument("--vertex-weights", help="Diagonal matrix or single row of vertex weights.")
    parser.add_argument("--mode", choices=[mode.value for mode in ReductionMode], default=ReductionMode.EXACT.value)
    parser.add_argument("--precision", type=int, help="Working precision in bits for eigen mode.")
    parser.add_argument("--p", type=int, help="Thickening power to use instead of the smallest valid one (bounded only).")

  def _run(self) -> dict:
    a = self.read_matrix(self.args.matrix)
    g = self.read_graph(self.args.graph)
    d = self.read_vertex_weights(self.args.vertex_weights, a.rows)
    precision = self.args.precision or self.settings["precision"]
    common = dict(
      mode=ReductionMode(self.args.mode),
      precision=precision,
      budget=self.settings["budget"],
      spot_check_budget=self.settings["spot_check_budget"],
      threads=self.settings["threads"],
    )
    if self.args.variant == "bounded":
      transcript = run_bounded_reduction(a, d, g, p=self.args.p, **common)
    else:
      transcript = run_simple_reduction(a, d, g, **common)
    return {"transcript": transcript.to_json(), "failures": transcript.check_failures()}

  def exit_code_for(self, payload: dict) -> int:
    return 5 if payload["transcript"]["verdict"] == TranscriptVerdict.MISMATCH.value else 0

  def summary(self, payload: dict) -> str:
    transcript = payload["transcript"]
    return "%s reduction recovered %s (%s, %d oracle queries)" % (
      transcript["variant"], transcript["recovered"], transcript["verdict"], len(transcript["oracle_values"]),
    )
