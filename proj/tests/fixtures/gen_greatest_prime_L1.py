#!/usr/bin/env python3
"""Regenerate greatest_prime_L1.csv: U_n = 4^n + 2^n over 3 <= n <= 40, factored with sympy."""
import sys

import mpmath
from sympy import factorint

mpmath.mp.dps = 60


def g12(x):
    s = mpmath.nstr(x, 12, min_fixed=-4, max_fixed=12)
    return s[:-2] if s.endswith(".0") else s


def main(out):
    out.write("#v1 n,absN,P,radicalN,c1,c2\n")
    for n in range(3, 41):
        u = 4**n + 2**n
        primes = factorint(u)
        largest = max(primes)
        radical = 1
        for p in primes:
            radical *= p
        scale = mpmath.log(n) / n
        c1 = mpmath.log(largest) * scale
        c2 = mpmath.log(radical) * scale
        out.write(f"{n},{u},{largest},{radical},{g12(c1)},{g12(c2)}\n")


if __name__ == "__main__":
    main(sys.stdout)
