"""List the catalog identities with their combinatorial and symbolic verdicts.

    python scripts/catalog_report.py           # the representative instances
    python scripts/catalog_report.py --all     # every small instance
"""
import argparse
from collections import Counter

from qminor.experiments import catalog_instances, identity_grid, representative_catalog
from qminor.identities import verify_on_graph, verify_universal


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--all", action="store_true", help="check every instance, print counts per builder")
    args = parser.parse_args()
    if args.all:
        counts = Counter()
        for idt in catalog_instances():
            good = verify_universal(idt).ok and verify_on_graph(identity_grid(idt), idt)
            counts[idt.name.split()[0], good] += 1
        for (name, good), k in sorted(counts.items()):
            print(f"{name:<20} {'valid' if good else 'INVALID':<8} {k:>4}")
        return
    for idt in representative_catalog():
        report = verify_universal(idt)
        vanishes = verify_on_graph(identity_grid(idt), idt)
        print(f"{idt.name}\n    {idt.render()}\n    verdict: {report.verdict}; "
              f"vanishes on grid({idt.m},{idt.n}): {vanishes}")


if __name__ == "__main__":
    main()
