"""Run every config in a directory through the CLI and summarize the verdicts.

    python3 scripts/run_experiments.py [--configs configs] [--out results] [--parallel K]
"""

import argparse
import json
import sys
from pathlib import Path

from hardy_lab.cli import main as cli_main


def main():
    root = Path(__file__).resolve().parent.parent
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--configs", default=str(root / "configs"))
    ap.add_argument("--out", default=str(root / "results"))
    ap.add_argument("--parallel", type=int, default=1)
    args = ap.parse_args()

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    worst = 0
    for cfg in sorted(Path(args.configs).glob("*.cfg")):
        target = out_dir / f"{cfg.stem}.json"
        code = cli_main(["run", "--config", str(cfg), "--out", str(target),
                         "--parallel", str(args.parallel)])
        worst = max(worst, code)
        if code == 1:
            print(f"{cfg.stem:<24} CONFIG ERROR")
            continue
        record = json.loads(target.read_text())
        failed = [a["metric"] for a in record["assertions"] if not a["passed"]]
        verdict = "PASS" if not failed else "FAIL " + ", ".join(sorted(set(failed)))
        print(f"{cfg.stem:<24} {record['wall_time_ms'] / 1000:7.2f}s  {verdict}")
    return worst


if __name__ == "__main__":
    sys.exit(main())
