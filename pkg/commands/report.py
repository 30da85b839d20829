from __future__ import annotations

from dataclasses import dataclass, field
import json

SCHEMA_VERSION = 1

@dataclass
class RunReport:
  command: str
  arguments: dict
  input_digests: dict[str, str]
  payload: dict
  wall_time: float
  version: str
  settings: dict = field(default_factory=dict)
  exit_code: int = 0

  def to_json(self) -> dict:
    return {
      "schema_version": SCHEMA_VERSION,
      "command": self.command,
      "arguments": self.arguments,
      "input_digests": self.input_digests,
      "payload": self.payload,
      "wall_time": round(self.wall_time, 6),
      "version": self.version,
      "settings": self.settings,
      "exit_code": self.exit_code,
    }

  def dumps(self) -> str:
    return json.dumps(self.to_json(), indent=2, sort_keys=False)

  def write(self, path: str):
    with open(path, "w") as f:
      f.write(self.dumps())
      f.write("\n")
