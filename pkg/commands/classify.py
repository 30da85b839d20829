from commands.base_command import BaseCommand
from condense.lemmas import degree_bound
from dichotomy.classify import classify_dg, classify_pair, is_block_rank1

class ClassifyCommand(BaseCommand):
  name = "classify"
  help = "Decide which side of the dichotomy a matrix (and optional vertex weights) falls on."

  @classmethod
  def add_arguments(cls, parser):
    parser.add_argument("--matrix", required=True, help="Symmetric nonnegative matrix file.")
    parser.add_argument("--vertex-weights", help="Diagonal matrix or single row of vertex weights.")

  def _run(self) -> dict:
    a = self.read_matrix(self.args.matrix)
    d = self.read_vertex_weights(self.args.vertex_weights, a.rows)
    payload = {}
    if self.args.vertex_weights is None:
      verdict = is_block_rank1(a)
      # 0-1 matrices are reported under both criteria.
      if a.is_zero_one:
        payload["zero_one_components"] = classify_dg(a).to_json()
    else:
      verdict = classify_pair(a, d)
    payload["verdict"] = verdict.to_json()
    payload["description"] = verdict.describe()
    if not verdict.tractable:
      payload["degree_bound"] = degree_bound(a, d)
    return payload

  def summary(self, payload: dict) -> str:
    text = payload["description"]
    if "degree_bound" in payload:
      text += "; hard on graphs of degree at most %d" % payload["degree_bound"]
    return text
