import os
import re

from ghinterp_paths import GHINTERP_ROOT_PATH

with open(os.path.join(GHINTERP_ROOT_PATH, "version.txt"), "r") as f:
  VERSION = f.read().strip()

VERSION_WITHOUT_COMMIT = VERSION

def _git_suffix() -> str:
  git_dir = os.path.join(GHINTERP_ROOT_PATH, ".git")
  head_path = os.path.join(git_dir, "HEAD")
  if not os.path.isfile(head_path):
    return "_NOGIT"
  with open(head_path, "r") as f:
    head = f.read().strip()
  if head.startswith("ref: "):
    ref = head[len("ref: "):]
    ref_path = os.path.join(git_dir, ref)
    if os.path.isfile(ref_path):
      with open(ref_path, "r") as f:
        return "_" + f.read()[:7]
    packed_refs = os.path.join(git_dir, "packed-refs")
    if os.path.isfile(packed_refs):
      with open(packed_refs, "r") as f:
        for line in f:
          parts = line.strip().split(" ", 1)
          if len(parts) == 2 and parts[1] == ref:
            return "_" + parts[0][:7]
  elif re.search(r"^[0-9a-f]{40}$", head):
    # Detached head
    return "_" + head[:7]
  return "_NOGIT"

VERSION += _git_suffix()
