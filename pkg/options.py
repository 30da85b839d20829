from collections import OrderedDict
import os

import yaml

from errors import ParseError
from ghinterp_paths import LOGS_PATH, SETTINGS_PATH

OPTIONS = OrderedDict([
  (
    "precision",
    (256, "Working precision in bits for eigen mode reductions."),
  ),
  (
    "budget",
    (2*10**8, "Largest number of assignments a raw enumeration may visit before giving up."),
  ),
  (
    "threads",
    (None, "Worker processes for raw enumeration. Empty means one per available CPU."),
  ),
  (
    "spot_check_budget",
    (2**16, "Oracle graphs with at most this many assignments are also enumerated raw during reductions."),
  ),
  (
    "logs_folder",
    (LOGS_PATH, "Folder that error logs are written to."),
  ),
])

def default_settings() -> OrderedDict:
  return OrderedDict((name, default) for name, (default, _) in OPTIONS.items())

def load_settings(path: str = SETTINGS_PATH) -> OrderedDict:
  """Settings from the YAML file at path merged over the defaults. A missing file gives the defaults."""
  settings = default_settings()
  if not os.path.isfile(path):
    return settings
  try:
    with open(path, "r") as f:
      loaded = yaml.safe_load(f)
  except yaml.YAMLError as e:
    raise ParseError("Settings file %s is not valid YAML: %s" % (path, e))
  if loaded is None:
    return settings
  if not isinstance(loaded, dict):
    raise ParseError("Settings file %s must contain a mapping" % path)
  for name, value in loaded.items():
    if name not in OPTIONS:
      raise ParseError("Unknown setting %r in %s" % (name, path))
    settings[name] = value
  return settings

def save_settings(settings: OrderedDict, path: str = SETTINGS_PATH):
  os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
  with open(path, "w") as f:
    yaml.dump(settings, f, default_flow_style=False, Dumper=yaml.Dumper)

def resolved_threads(settings) -> int:
  threads = settings["threads"]
  if threads is None:
    return os.cpu_count() or 1
  return int(threads)

# Allow yaml to load and dump OrderedDicts.
yaml.SafeLoader.add_constructor(
  yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG,
  lambda loader, node: OrderedDict(loader.construct_pairs(node))
)
yaml.Dumper.add_representer(
  OrderedDict,
  lambda dumper, data: dumper.represent_dict(data.items())
)
