"""
Driving the command line from Python
====================================

The same entry point as the `qhsuper` console script; reports are JSON.
"""
import json
import tempfile
from pathlib import Path

from qhsuper.cli import main

out = Path(tempfile.mkdtemp()) / "report.json"
code = main(["verify", "sl2", "--preset", "A2", "--L", "1,1", "--height", "2", "--output", str(out)])
report = json.loads(out.read_text())
print("exit code", code, "checks", report["summary"])

# a TOML config with custom Q-parameters
cfg = Path(out.parent) / "run.toml"
cfg.write_text("""
[datum]
preset = "A2"

[[qparams]]
i = 1
j = 2
r = 1
s = 0
t = "3"

[[qparams]]
i = 1
j = 2
r = 0
s = 1
t = "-1/2"

[run]
command = "cyclo"
lambda = [1, 1]
beta = [1, 1]
""")
code = main(["cyclo", "--config", str(cfg), "--output", str(out)])
print("exit code", code, "dims", json.loads(out.read_text())["results"][0]["dims"])
