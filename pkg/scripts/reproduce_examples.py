"""Recompute every catalogued example and compare it with the published values."""

import argparse
import json

from constaq.cli import load_golden, repro_results


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--budget", type=int, default=10**7)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    computed = repro_results(args.budget)
    golden = load_golden(None)
    if args.json:
        print(json.dumps(computed, indent=2))
        return
    notes = golden.get("published_differences", {})
    for key, value in computed.items():
        mark = "ok" if golden["computed"].get(key) == value else "DRIFT"
        print(f"{key:16s} {mark:5s} {json.dumps(value)}")
        if key in notes:
            print(f"{'':16s} note  {notes[key]}")


if __name__ == "__main__":
    main()
