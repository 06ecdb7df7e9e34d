"""Fuse an RE matrix with itself repeatedly and report verdicts and sector sizes.

    python3 scripts/fusion_tower.py --rank 2 --K diag --depth 3
"""

import argparse
import time
from dataclasses import dataclass

from qre import (
    Mat, REMatrix, check_re_data, fuse, gl_family, gl_R, hecke_projectors, q_solution,
    restrict, s_hat, uniform_data, verify_re,
)
from qre.rekit import fused_label


@dataclass
class TowerConfig:
    rank: int = 2
    K: str = "diag"  # identity | diag | q
    depth: int = 3


def base_K(cfg, fam):
    if cfg.K == "q":
        return q_solution(fam, "f")
    if cfg.K == "identity":
        return REMatrix.scalar("f", Mat.identity([cfg.rank]))
    return REMatrix.scalar("f", Mat.diag([0] * (cfg.rank - 1) + [1]))


def run(cfg: TowerConfig):
    fam = gl_family(cfg.rank)
    data = uniform_data(fam, base_K(cfg, fam))
    label = "f"
    for level in range(2, cfg.depth + 1):
        t = time.perf_counter()
        data = fuse(data, label, "f")
        label = fused_label(label, "f")
        K = data.K(label)
        ok = verify_re(data.family, K).ok and check_re_data(data).ok
        print(f"level {level}: {label} dim {K.dim}  RE data {'ok' if ok else 'FAIL'}  {time.perf_counter() - t:.2f}s")
    two = fuse(uniform_data(fam, base_K(cfg, fam)), "f", "f")
    for name, p in zip(("symmetric", "antisymmetric"), hecke_projectors(s_hat(gl_R(cfg.rank)))):
        fam0, K0 = restrict(two.family, two.K("f*f"), p)
        print(f"{name}: dim {K0.dim}  RE {'ok' if verify_re(fam0, K0).ok else 'FAIL'}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rank", type=int, default=2)
    ap.add_argument("--K", choices=["identity", "diag", "q"], default="diag")
    ap.add_argument("--depth", type=int, default=3)
    run(TowerConfig(**vars(ap.parse_args())))
