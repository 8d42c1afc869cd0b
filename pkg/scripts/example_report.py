"""Print the full report for the built-in fixtures (or one of them)."""

import argparse

from qozeta.cli import InputDocument, compute_report, example_branch, render
from qozeta.motivic import COMPAT_PRINTED


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("names", nargs="*", default=["paper-example", "cusp", "smooth"])
    parser.add_argument("--format", choices=("text", "json", "latex"), default="text")
    parser.add_argument("--compat-printed-csigma", action="store_true")
    args = parser.parse_args()
    compat = COMPAT_PRINTED if args.compat_printed_csigma else None
    for name in args.names:
        doc = InputDocument(example_branch(name, []), compat)
        print(f"== {name}")
        print(render(compute_report(doc), args.format))


if __name__ == "__main__":
    main()
