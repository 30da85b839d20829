from commands.base_command import BaseCommand
from errors import ContractError, InternalError, ParseError
from graphs.constructions import (
  build_Gn_simple, build_Gnp, build_P, build_R, make_selection, selected_edge_count, stretch, thicken,
)

# Operation name -> (parameter names, needs an input graph)
OPERATIONS = {
  "thicken": (("p",), True),
  "stretch": (("r",), True),
  "P": (("n", "p"), False),
  "R": (("d", "n", "p"), False),
  "Gnp": (("n", "p"), True),
  "Gn": (("n",), True),
}

def parse_selection(entries):
  if not entries:
    return None
  pairs = []
  for entry in entries:
    try:
      u, v = entry.split("-")
      pairs.append((int(u), int(v)))
    except ValueError:
      raise ParseError("Edge selections look like 0-1, got %r" % entry)
  return make_selection(pairs)

class TransformCommand(BaseCommand):
  name = "transform"
  help = "Build thickenings, stretchings and the gadget graphs used by the reductions."

  @classmethod
  def add_arguments(cls, parser):
    parser.add_argument("--op", required=True, choices=list(OPERATIONS))
    parser.add_argument("--params", nargs="*", type=int, default=[], help="Integer parameters of the operation.")
    parser.add_argument("--graph", help="Graph JSON file, for operations that transform a graph.")
    parser.add_argument("--select", action="append", metavar="U-V",
      help="Restrict thicken/stretch to these vertex pairs (V-V selects loops). Repeatable.")

  def _run(self) -> dict:
    op = self.args.op
    names, needs_graph = OPERATIONS[op]
    if len(self.args.params) != len(names):
      raise ParseError("--op %s takes parameters %s" % (op, " ".join(names)))
    params = dict(zip(names, self.args.params))
    g = None
    if needs_graph:
      if self.args.graph is None:
        raise ParseError("--op %s needs --graph" % op)
      g = self.read_graph(self.args.graph)
    selection = parse_selection(self.args.select)

    try:
      graph, stubs, expected = self._build(op, params, g, selection)
    except ContractError as e:
      raise ParseError("Bad parameters for %s: %s" % (op, e))

    stats = {
      "vertices": graph.vertex_count,
      "edges": graph.edge_count + len(stubs),
      "max_degree": max((graph.degree(v) + stubs.count(v) for v in range(graph.vertex_count)), default=0),
      "simple": graph.is_simple(),
    }
    for key, value in expected.items():
      if stats[key] != value:
        raise InternalError("%s produced %d %s, the closed form gives %d" % (op, stats[key], key, value))
    payload = {"op": op, "params": params, "graph": graph.to_json(), "stats": stats, "expected": expected}
    if stubs:
      payload["stubs"] = list(stubs)
    return payload

  def _build(self, op, params, g, selection):
    if op == "thicken":
      count = selected_edge_count(g, selection)
      graph = thicken(g, selection, params["p"])
      return graph, (), {"vertices": g.vertex_count, "edges": g.edge_count + (params["p"] - 1)*count}
    if op == "stretch":
      count = selected_edge_count(g, selection)
      r = params["r"]
      graph = stretch(g, selection, r)
      return graph, (), {"vertices": g.vertex_count + (r - 1)*count, "edges": g.edge_count + (r - 1)*count}
    if op == "P":
      n, p = params["n"], params["p"]
      return build_P(n, p).graph, (), {"vertices": n*(p + 1) + 1, "edges": 2*n*p}
    if op == "R":
      d, n, p = params["d"], params["n"], params["p"]
      gadget = build_R(d, n, p)
      return gadget.graph, gadget.stubs, {"vertices": d*n*(p + 1), "edges": (2*n*p + 1)*d}
    if op == "Gnp":
      n, p = params["n"], params["p"]
      edges = g.edge_count
      return build_Gnp(g, n, p), (), {"vertices": 2*n*(p + 1)*edges, "edges": (4*n*p + 1)*edges}
    n = params["n"]
    graph, selection = build_Gn_simple(g, n)
    count = selected_edge_count(g, selection)
    return graph, (), {"vertices": g.vertex_count + (n - 1)*count, "edges": g.edge_count + (n - 1)*count}

  def summary(self, payload: dict) -> str:
    stats = payload["stats"]
    return "%s: %d vertices, %d edges, max degree %d%s" % (
      payload["op"], stats["vertices"], stats["edges"], stats["max_degree"],
      ", simple" if stats["simple"] else "",
    )
