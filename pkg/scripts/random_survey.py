#!/usr/bin/env python3
"""Survey invariant reports over random presentations and tally the outcomes.

Draws random twisted presentations with monomial-fraction coefficients,
runs the full report on each, checks the level inequalities on fully exact
reports, and prints a distribution of certificates and outcomes.
"""

import argparse
import random
from collections import Counter
from dataclasses import dataclass

from unipic import (
    FieldDesc,
    SkewPoly,
    equation_holds,
    invariant_report,
    make_form,
    make_torsor,
)


@dataclass
class SurveyConfig:
    count: int = 100
    seed: int = 0
    primes: tuple[int, ...] = (2, 3)
    max_level: int = 3
    torsor_rate: float = 0.5


def random_target(rng: random.Random, cfg: SurveyConfig):
    p = rng.choice(cfg.primes)
    field = FieldDesc(p, ("t",))
    t = field.var("t")

    def monomial_fraction():
        c = field.const(rng.randint(1, p - 1))
        e = rng.randint(-2, 2)
        return c * t ** e if e >= 0 else c / t ** (-e)

    n = rng.randint(1, cfg.max_level)
    m = rng.randint(1, cfg.max_level)
    coeffs = [field.zero()] * (m + 1)
    coeffs[0] = field.one()
    coeffs[m] = monomial_fraction()
    for i in range(1, m):
        if rng.random() < 0.5:
            coeffs[i] = monomial_fraction()
    X = make_form(n, SkewPoly(field, coeffs))
    if rng.random() < cfg.torsor_rate:
        X = make_torsor(X, monomial_fraction())
    return X


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--max-level", type=int, default=3)
    ap.add_argument("--torsor-rate", type=float, default=0.5)
    args = ap.parse_args()

    cfg = SurveyConfig(args.count, args.seed, tuple(args.primes),
                       args.max_level, args.torsor_rate)
    rng = random.Random(cfg.seed)
    certificates = Counter()
    outcomes = Counter()
    violations = 0
    for _ in range(cfg.count):
        X = random_target(rng, cfg)
        rep = invariant_report(X)
        certificates[rep.n_prime.certificate or "bound"] += 1
        certificates[rep.r.certificate or "bound"] += 1
        outcomes["torsor" if rep.is_torsor else "form"] += 1
        outcomes["point" if rep.point is not None else "no-point"] += 1
        outcomes[f"pic={rep.pic_group}" if rep.pic_group else "pic=?"] += 1
        if rep.n.kind == rep.n_prime.kind == rep.r.kind == "exact":
            outcomes["fully-exact"] += 1
            if rep.n.value < max(rep.n_prime.value, rep.r.value):
                violations += 1
        if rep.point is not None and not equation_holds(X, *rep.point):
            violations += 1

    print(f"surveyed {cfg.count} presentations (seed {cfg.seed})")
    print("certificates:")
    for name, k in certificates.most_common():
        print(f"  {name}: {k}")
    print("outcomes:")
    for name, k in outcomes.most_common():
        print(f"  {name}: {k}")
    print(f"violations: {violations}")
    return 1 if violations else 0


if __name__ == "__main__":
    raise SystemExit(main())
