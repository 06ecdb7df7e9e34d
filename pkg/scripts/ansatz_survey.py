"""Tabulate RE solution families for every ansatz and rank up to three."""

import argparse
import time
from dataclasses import dataclass, field

from qre import gl_R
from qre.ansatz import ANSATZES, ansatz_families, solve_ansatz


@dataclass
class SurveyConfig:
    ranks: list = field(default_factory=lambda: [2, 3])
    ansatzes: list = field(default_factory=lambda: list(ANSATZES))


def run(cfg: SurveyConfig):
    for n in cfg.ranks:
        for a in cfg.ansatzes:
            t = time.perf_counter()
            fams = ansatz_families(gl_R(n), a)
            reps = solve_ansatz(gl_R(n), a)
            print(f"gl{n} {a}: {len(fams)} families, {len(reps)} verified representatives ({time.perf_counter() - t:.2f}s)")
            for f in fams:
                print(f"    {f.normalized().tolist()}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ranks", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--ansatzes", nargs="+", choices=ANSATZES, default=list(ANSATZES))
    run(SurveyConfig(**vars(ap.parse_args())))
