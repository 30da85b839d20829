#!/usr/bin/python3.11

import argparse
import logging
import signal
import sys
import traceback

from commands.base_command import write_error_log
from commands.classify import ClassifyCommand
from commands.evaluate import EvalCommand
from commands.lemmas import LemmasCommand
from commands.reduce import ReduceCommand
from commands.transform import TransformCommand
from commands.verify import VerifyCommand
from errors import GHInterpError
from ghinterp_paths import SETTINGS_PATH
from options import load_settings, resolved_threads
from version import VERSION

COMMANDS = [ClassifyCommand, EvalCommand, TransformCommand, ReduceCommand, LemmasCommand, VerifyCommand]

logger = logging.getLogger("ghinterp")

def signal_handler(sig, frame):
  print("Interrupt", file=sys.stderr)
  sys.exit(130)

# Allow keyboard interrupts to close the program without a traceback.
signal.signal(signal.SIGINT, signal_handler)

def add_run_options(parser: argparse.ArgumentParser, default):
  parser.add_argument("--threads", type=int, default=default, help="Worker processes for raw enumeration.")
  parser.add_argument("--budget", type=int, default=default, help="Largest number of assignments a raw enumeration may visit.")
  parser.add_argument("--out", default=default, help="Write the JSON run report to this file.")

def build_parser() -> argparse.ArgumentParser:
  parser = argparse.ArgumentParser(
    prog="ghinterp",
    description="Exact graph homomorphism partition functions, dichotomy classification and interpolation reductions.",
  )
  parser.add_argument("--version", action="version", version="ghinterp %s" % VERSION)
  verbosity = parser.add_mutually_exclusive_group()
  verbosity.add_argument("-v", "--verbose", action="store_true", help="Log debug output.")
  verbosity.add_argument("-q", "--quiet", action="store_true", help="Only log warnings and errors.")
  verbosity.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
  parser.add_argument("--settings", default=SETTINGS_PATH, help="YAML settings file (default: %(default)s).")
  add_run_options(parser, default=None)

  # The same flags are accepted after the subcommand. SUPPRESS keeps an absent flag from
  # overwriting one given before the subcommand.
  run_options = argparse.ArgumentParser(add_help=False)
  add_run_options(run_options, default=argparse.SUPPRESS)

  subparsers = parser.add_subparsers(dest="command", required=True)
  for command_class in COMMANDS:
    subparser = subparsers.add_parser(
      command_class.name, help=command_class.help, description=command_class.help, parents=[run_options],
    )
    command_class.add_arguments(subparser)
    subparser.set_defaults(command_class=command_class)
  return parser

def configure_logging(args):
  if args.log_level:
    level = getattr(logging, args.log_level)
  elif args.verbose:
    level = logging.DEBUG
  elif args.quiet:
    level = logging.WARNING
  else:
    level = logging.INFO
  logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)

def main(argv=None) -> int:
  args = build_parser().parse_args(argv)
  configure_logging(args)

  settings = {}
  try:
    settings = load_settings(args.settings)
    # Command line flags take precedence over the settings file.
    if args.budget is not None:
      settings["budget"] = args.budget
    if args.threads is not None:
      settings["threads"] = args.threads
    settings["threads"] = resolved_threads(settings)

    command = args.command_class(args, settings)
    report = command.run()
    if args.out:
      report.write(args.out)
    print(command.summary(report.payload))
    return report.exit_code
  except GHInterpError as e:
    print("ghinterp: %s: %s" % (type(e).__name__, e), file=sys.stderr)
    verdict = getattr(e, "verdict", None)
    if verdict is not None:
      print("verdict: %s" % verdict.describe(), file=sys.stderr)
    return e.exit_code
  except Exception as e:
    stack_trace = traceback.format_exc()
    error_message = "ghinterp failed with an unexpected error:\n" + str(e) + "\n\n" + stack_trace
    log_path = write_error_log(settings, error_message)
    print(error_message, file=sys.stderr)
    if log_path:
      print("Error log written to %s" % log_path, file=sys.stderr)
    return 1

if __name__ == "__main__":
  sys.exit(main())
