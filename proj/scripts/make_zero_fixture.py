#!/usr/bin/env python3
"""Regenerate the zeta-zero fixture: first N ordinates, one per line, 12 decimals.

Uses mpmath.zetazero, so the fixture is produced independently of the C++ code.
An existing partial file is resumed rather than rewritten.
Usage: make_zero_fixture.py [N] [output]
"""
import os
import sys
from decimal import Decimal

from mpmath import mp, zetazero

mp.dps = 25
count = int(sys.argv[1]) if len(sys.argv) > 1 else 4600
out = sys.argv[2] if len(sys.argv) > 2 else "tests/data/zeta_zeros_4600.txt"
done = 0
if os.path.exists(out):
    with open(out) as fh:
        done = sum(1 for line in fh if line.strip())
with open(out, "a") as fh:
    for n in range(done + 1, count + 1):
        gamma = Decimal(mp.nstr(zetazero(n).imag, 22))
        fh.write(f"{gamma.quantize(Decimal('1e-12'))}\n")
        fh.flush()
