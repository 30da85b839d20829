import logging

from commands.base_command import BaseCommand
from dichotomy.classify import classify_pair
from errors import ContractError
from numeric.rational import format_rational, parse_rational
from partition.evaluate import z_vertex_weighted
from tractable.evaluate import eval_tractable

logger = logging.getLogger(__name__)

class EvalCommand(BaseCommand):
  name = "eval"
  help = "Evaluate Z_{A,D}(G) exactly by enumeration or by the block-rank-1 formula."

  @classmethod
  def add_arguments(cls, parser):
    parser.add_argument("--matrix", required=True, help="Symmetric matrix file.")
    parser.add_argument("--graph", required=True, help="Graph JSON file.")
    parser.add_argument("--vertex-weights", help="Diagonal matrix or single row of vertex weights.")
    parser.add_argument("--method", choices=["brute", "tractable", "auto"], default="auto")

  def _run(self) -> dict:
    a = self.read_matrix(self.args.matrix)
    g = self.read_graph(self.args.graph)
    d = self.read_vertex_weights(self.args.vertex_weights, a.rows)
    budget = self.settings["budget"]
    threads = self.settings["threads"]
    method = self.args.method

    if method == "brute":
      result = z_vertex_weighted(a, d, g, budget, threads)
      return {"method": "brute", "value": format_rational(result.value), "term_count": result.term_count}

    if method == "tractable":
      result = eval_tractable(a, d, g)
      return {"method": "tractable", "value": format_rational(result.value)}

    payload = {"method": "auto"}
    tractable_value = None
    try:
      verdict = classify_pair(a, d)
    except ContractError as e:
      # Negative entries have no block-rank-1 classification; enumeration still applies.
      logger.debug("Skipping classification: %s", e)
      verdict = None
    if verdict is not None:
      payload["verdict"] = verdict.describe()
      if verdict.tractable:
        tractable_value = eval_tractable(a, d, g).value
        payload["tractable_value"] = format_rational(tractable_value)

    brute_value = None
    term_count = a.rows ** g.vertex_count
    if tractable_value is None or term_count <= budget:
      result = z_vertex_weighted(a, d, g, budget, threads)
      brute_value = result.value
      payload["brute_value"] = format_rational(brute_value)
      payload["term_count"] = result.term_count

    if tractable_value is not None and brute_value is not None:
      payload["agreement"] = tractable_value == brute_value
      if not payload["agreement"]:
        logger.error("Tractable value %s disagrees with enumeration %s", tractable_value, brute_value)
    payload["value"] = format_rational(brute_value if brute_value is not None else tractable_value)
    return payload

  def exit_code_for(self, payload: dict) -> int:
    return 5 if payload.get("agreement") is False else 0

  def summary(self, payload: dict) -> str:
    return str(parse_rational(payload["value"]))
