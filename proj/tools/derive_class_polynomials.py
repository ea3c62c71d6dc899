#!/usr/bin/env python3
"""Recompute the Hilbert class polynomials shipped in data/modcurvedb.json.

For each discriminant D the reduced primitive forms (a, b, c) with
b^2 - 4ac = D give the conjugates j((-b + sqrt(D)) / 2a).  Their product is
expanded in high precision and rounded to integers; the result is then
checked against the dataset (or printed with --emit).

Usage: derive_class_polynomials.py [--emit] [--dataset PATH]
"""
import argparse
import json
import math
import pathlib
import sys

import mpmath

DISCRIMINANTS = [-3, -4, -7, -8, -11, -12, -15, -16, -27, -28, -35, -60]


def reduced_forms(D):
    forms = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, abs(b)), c) != 1:
                continue
            forms.append((a, b, c))
        a += 1
    return forms


def j_invariant(tau):
    q = mpmath.exp(2j * mpmath.pi * tau)
    # j = E4^3 / Delta with E4 = 1 + 240 sum sigma_3(n) q^n
    term_sum = mpmath.mpc(0)
    for n in range(1, 400):
        term_sum += n ** 3 * q ** n / (1 - q ** n)
    e4 = 1 + 240 * term_sum
    prod = mpmath.mpc(1)
    for n in range(1, 400):
        prod *= (1 - q ** n)
    delta = q * prod ** 24
    return e4 ** 3 / delta


def class_polynomial(D):
    mpmath.mp.dps = 80
    roots = [j_invariant((-b + mpmath.sqrt(D)) / (2 * a)) for a, b, _ in reduced_forms(D)]
    coeffs = [mpmath.mpc(1)]
    for r in roots:
        nxt = [mpmath.mpc(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] -= r * c
        coeffs = nxt
    out = []
    for c in coeffs:
        re = int(mpmath.nint(c.real))
        if abs(c.real - re) > 1e-20 or abs(c.imag) > 1e-20:
            raise ValueError(f"D={D}: coefficient {c} is not close to an integer")
        out.append(re)
    return out  # low degree first


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--emit", action="store_true", help="print JSON instead of checking")
    ap.add_argument("--dataset", default=str(pathlib.Path(__file__).resolve().parent.parent / "data" / "modcurvedb.json"))
    args = ap.parse_args()
    table = {str(D): [str(c) for c in class_polynomial(D)] for D in DISCRIMINANTS}
    if args.emit:
        json.dump(table, sys.stdout, indent=1)
        print()
        return 0
    stored = json.loads(pathlib.Path(args.dataset).read_text())["special"]["class_polynomials"]
    bad = [D for D in table if stored.get(D) != table[D]]
    for D in bad:
        print(f"mismatch D={D}: stored {stored.get(D)} computed {table[D]}")
    print("ok" if not bad else "MISMATCH")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
