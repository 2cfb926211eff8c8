"""
Regenerating the figure data
============================

Writes one CSV and one JSON sidecar per figure into ./figure_data.  No plots
are drawn; any plotting tool can read the CSVs.
"""
import sys

from agencygame.cli import PRESETS, main

out = sys.argv[1] if len(sys.argv) > 1 else "figure_data"
for name in sorted(PRESETS):
    code = main(["figure", name, "--out", out])
    print(name, "ok" if code == 0 else f"exit {code}")

# A custom sweep: certification verdicts along lambda for the figure 4 setup
main(["sweep", "--set", "E=0.85", "--set", "pi=0.7", "--set", "rho=0.85",
      "--set", "beta=0.9", "--dim", "lambda=0.05:0.95:19", "--outputs", "certificates",
      "--out", out])
print("sweep written to", out)
