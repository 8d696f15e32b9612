"""Circle to five-pointed star under metric2 and metric4 (N=100, T=20).

Writes figures/circle_to_star_<metric>.{svg,json,csv}. The SVGs are committed;
tests/test_acceptance.py regenerates them and compares bytes.
"""
import sys
from pathlib import Path

from geoshape.cli import main

ROOT = Path(__file__).resolve().parents[1]
FROM = "circle:r=1,N=100"
TO = "star:k=5,r_in=0.5,r_out=1,N=100"


def argv(metric: str, out_dir: Path, T: int = 20) -> list[str]:
    stem = out_dir / f"circle_to_star_{metric}"
    return ["solve", "--gen-from", FROM, "--gen-to", TO, "--metric", metric, "-T", str(T),
            "--out", f"{stem}.json", "--svg", f"{stem}.svg", "--csv", f"{stem}.csv"]


if __name__ == "__main__":
    out = ROOT / "figures"
    out.mkdir(exist_ok=True)
    codes = [main(argv(m, out)) for m in ("metric2", "metric4")]
    # exit 2 (iteration budget spent) is expected for metric4; see README
    sys.exit(1 if 1 in codes else 0)
