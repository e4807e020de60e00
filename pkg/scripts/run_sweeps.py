"""Run the verification sweeps and print a one-line summary for each.

    python scripts/run_sweeps.py                 # every sweep
    python scripts/run_sweeps.py exchange gamma  # a selection
    python scripts/run_sweeps.py --grid 3x4 exchange
"""
import argparse
import sys
import time

from qminor.experiments import (Tally, catalog_instances, check_catalog, classifier_sweep,
                                exchange_sweep, gamma_sweep, lindstrom_check, lindstrom_corpus,
                                manin_check, perturbed_families, quasicommutation_13_24,
                                refutation_check, refuted_transform_check, transform_check)
from qminor.se_graph import grid


def over_corpus(check, seed):
    t = Tally()
    for g in lindstrom_corpus(seed=seed):
        t.merge(check(g))
    return {"all minors": t}


def refuted_families(seed):
    return [quasicommutation_13_24(c) for c in range(-3, 4)] + perturbed_families(10, seed=seed)


def sweeps(args):
    g = grid(args.m, args.n)
    return {
        "lindstrom": lambda: over_corpus(lindstrom_check, args.seed),
        "manin": lambda: over_corpus(manin_check, args.seed),
        "exchange": lambda: dict(zip(("single couples", "couple sets"), exchange_sweep(g))),
        "gamma": lambda: {"applicable paths": gamma_sweep(g)[0]},
        "catalog": lambda: {"builders": check_catalog(catalog_instances())},
        "refutation": lambda: {"families": refutation_check(refuted_families(args.seed))},
        "classifier": lambda: {"corteges": classifier_sweep(N=args.N)},
        "transforms": lambda: {"catalog": transform_check(catalog_instances()),
                               "refuted": refuted_transform_check(refuted_families(args.seed))},
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("names", nargs="*", help="sweeps to run (default: all)")
    parser.add_argument("--grid", default="3x3", help="grid for the exchange and gamma sweeps")
    parser.add_argument("--N", type=int, default=4, help="index range for the classifier sweep")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    args.m, args.n = map(int, args.grid.split("x"))
    table = sweeps(args)
    unknown = [n for n in args.names if n not in table]
    if unknown:
        parser.error(f"unknown sweep {unknown[0]!r}; choose from {', '.join(table)}")
    failed = False
    for name in args.names or table:
        start = time.perf_counter()
        parts = table[name]()
        elapsed = time.perf_counter() - start
        for label, t in parts.items():
            status = "ok" if t.ok else "FAILED"
            print(f"{name:<11} {label:<17} {t.checked:>6} checked  {status:<6} {elapsed:6.2f}s")
            for f in t.failures:
                print(f"    {f}")
            failed |= not t.ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
