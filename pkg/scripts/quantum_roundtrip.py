"""Encode, corrupt, extract syndromes and recover on a small qudit code."""

import argparse

import numpy as np

from constaq.field import build_field
from constaq.qsim import QuantumCodeConfig, QuditState, roundtrip, single_site_errors
from constaq.transform import make_plan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--k", type=int, default=1, help="field GF(p^k)")
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--b1", type=int, default=1)
    ap.add_argument("--b2", type=int, default=0)
    ap.add_argument("--delta", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    F = build_field(args.p, args.k)
    cfg = QuantumCodeConfig(make_plan(F, args.n), args.b1, args.b2, args.delta)
    lay = cfg.layout
    rng = np.random.default_rng(args.seed)
    phi = QuditState.random(F, lay.n_m, rng) if lay.n_m else QuditState.basis(F, [])
    print(f"layout {lay.to_json()}  t={cfg.t}")
    tally = {}
    for err in single_site_errors(F, args.n):
        rt = roundtrip(cfg, phi, err)
        tally[rt.status] = tally.get(rt.status, 0) + 1
        fid = "-" if rt.fidelity is None else f"{rt.fidelity:.6f}"
        print(f"{err.to_json()}  oracle={'match' if rt.syndrome_matches else 'MISMATCH'}  {rt.status}  {fid}")
    print(tally)


if __name__ == "__main__":
    main()
