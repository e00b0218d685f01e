#!/usr/bin/env python3
"""Replay every reference scenario and print the results table.

Equivalent to `dpnull reproduce all`; kept as a script so the whole
reproduction run is one file away from a fresh checkout.
"""
import sys

from dpnull.cli import run

if __name__ == "__main__":
    sys.exit(run(["reproduce", "all"] + sys.argv[1:]))
