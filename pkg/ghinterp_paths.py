import os

import appdirs

GHINTERP_ROOT_PATH = os.path.dirname(os.path.realpath(__file__))

DATA_PATH = os.path.join(GHINTERP_ROOT_PATH, "data")

# GHINTERP_SETTINGS points at a settings file outside the user config directory.
if "GHINTERP_SETTINGS" in os.environ:
  SETTINGS_PATH = os.environ["GHINTERP_SETTINGS"]
else:
  SETTINGS_PATH = os.path.join(appdirs.user_config_dir("ghinterp", "ghinterp"), "settings.yaml")

LOGS_PATH = appdirs.user_log_dir("ghinterp", "ghinterp")
