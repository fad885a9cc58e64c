#!/usr/bin/env python3
"""Writes configs/embeddings/{real,noise_*}.csv for configs/ranking.json."""

import argparse
import pathlib

import numpy as np


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "configs" / "embeddings"))
    ap.add_argument("--rows", type=int, default=5000)
    ap.add_argument("--dim", type=int, default=20)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    real = rng.standard_normal((args.rows, args.dim))
    np.savetxt(out / "real.csv", real, delimiter=",", fmt="%.17g")
    for s in (0.25, 0.5, 1.0):
        noisy = real + s * rng.standard_normal(real.shape)
        np.savetxt(out / f"noise_{s}.csv", noisy, delimiter=",", fmt="%.17g")


if __name__ == "__main__":
    main()
