import json

from commands.base_command import BaseCommand
from errors import ParseError
from interpolate.transcript import ReductionTranscript, TranscriptVerdict

class VerifyCommand(BaseCommand):
  name = "verify"
  help = "Reload a reduction transcript and recompute its verdict."

  @classmethod
  def add_arguments(cls, parser):
    parser.add_argument("--transcript", required=True, help="Transcript JSON, or a reduce report containing one.")

  def _run(self) -> dict:
    text = self._read_text("transcript", self.args.transcript)
    try:
      data = json.loads(text)
    except json.JSONDecodeError as e:
      raise ParseError("Transcript is not valid JSON: %s" % e)
    # Accept a whole reduce report as well as a bare transcript.
    if isinstance(data, dict) and isinstance(data.get("payload"), dict) and "transcript" in data["payload"]:
      data = data["payload"]["transcript"]
    transcript = ReductionTranscript.from_json(data)
    return {
      "verdict": transcript.verdict.value,
      "stored_verdict": data.get("verdict"),
      "failures": transcript.check_failures(),
    }

  def exit_code_for(self, payload: dict) -> int:
    return 5 if payload["verdict"] == TranscriptVerdict.MISMATCH.value else 0

  def summary(self, payload: dict) -> str:
    return "verdict %s" % payload["verdict"]
