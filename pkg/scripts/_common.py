import argparse
import csv
import sys
from pathlib import Path


def parser(description: str, trials: int = 1000) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(description=description)
    p.add_argument("--trials", type=int, default=trials)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, help="CSV path (default: stdout)")
    return p


def write_rows(rows: list[dict], out: Path | None) -> None:
    fh = out.open("w", newline="") if out else sys.stdout
    w = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    if out:
        fh.close()
