"""Check the cylinder braid relations for a few K-matrices over a range of strand counts."""

import argparse
from dataclasses import dataclass

from qre import Mat, REMatrix, braid_residuals, build_cylinder_rep, gl_family, q_solution


@dataclass
class BraidConfig:
    max_strands: int = 4


def corpus():
    fam = gl_family(2)
    return {
        "identity": REMatrix.scalar("f", Mat.identity([2])),
        "diag(0,1)": REMatrix.scalar("f", Mat.diag([0, 1])),
        "swap": REMatrix.scalar("f", Mat([[0, 1], [1, 0]])),
        "Q-solution": q_solution(fam, "f"),
        "[[1,1],[0,1]]": REMatrix.scalar("f", Mat([[1, 1], [0, 1]])),
    }


def run(cfg: BraidConfig):
    R = gl_family(2).R("f", "f")
    for name, K in corpus().items():
        for n in range(2, cfg.max_strands + 1):
            res = braid_residuals(build_cylinder_rep(R, K, n))
            failed = [r.name for r in res if not r.ok]
            print(f"{name:14s} n={n}: {len(res) - len(failed)}/{len(res)} relations hold"
                  + (f"; failing: {', '.join(failed)}" if failed else ""))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-strands", type=int, default=4)
    run(BraidConfig(**vars(ap.parse_args())))
