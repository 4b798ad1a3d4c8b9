"""Re-record the golden CLI outputs: ``python3 tests/golden/record.py``.

Review the diff before committing; the golden test compares bytes.
"""
import io
import json
import os
import sys

from mnconvex.cli import run

HERE = os.path.dirname(os.path.abspath(__file__))


def main():
    os.chdir(HERE)
    with open("cases.json", encoding="utf-8") as fh:
        cases = json.load(fh)
    for case in cases:
        out, err = io.StringIO(), io.StringIO()
        code = run(case["argv"], out, err)
        with open(case["name"] + ".out", "w", encoding="utf-8", newline="") as fh:
            fh.write(out.getvalue())
        flag = "" if code == case["exit"] else f"  (expected {case['exit']})"
        print(f"{case['name']}: exit {code}{flag}")


if __name__ == "__main__":
    sys.exit(main())
