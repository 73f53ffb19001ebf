#!/usr/bin/env python3
"""Derives the curve profile files under profiles/.

Both profiles are twisted Edwards curves  a*x^2 + y^2 = 1 + d*x^2*y^2  over a
prime field F_q, with a prime-order subgroup of order r and a small cofactor.
The addition law used by the library is the complete affine formula, which
requires a to be a square and d a non-square mod q; this script enforces that.

* production: the widely deployed curve over the 254-bit prime
  21888242871839275222246405745257275088548364400416034343698204186575808495617
  with a = 168700, d = 168696, cofactor 8 and a ~2^251 prime subgroup.
  Every claimed parameter is re-verified here (primality, Hasse interval,
  subgroup order on sampled points) before the file is written.
* toy: found by exhaustive point counting over a 24-bit field, so that the
  subgroup order stays below 2^20 and discrete logs are brute-forceable in
  tests. The search is deterministic; re-running the script reproduces the
  same file.

The generator of each profile is derived, not copied: take the smallest y
that yields a curve point, clear the cofactor, and check the order is exactly
r. Output integers are decimal strings.
"""

import json
import math
import os
import sys

import numpy as np
from sympy import isprime


def legendre(n, p):
    n %= p
    if n == 0:
        return 0
    return 1 if pow(n, (p - 1) // 2, p) == 1 else -1


def inv(x, p):
    return pow(x, p - 2, p)


def sqrt_mod(n, p):
    """Tonelli-Shanks; assumes n is a QR mod p."""
    n %= p
    if n == 0:
        return 0
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    s, e = p - 1, 0
    while s % 2 == 0:
        s //= 2
        e += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = e, pow(z, s, p), pow(n, s, p), pow(n, (s + 1) // 2, p)
    while t != 1:
        tt, i = t, 0
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


class Edwards:
    def __init__(self, q, a, d):
        self.q, self.a, self.d = q, a, d

    O = (0, 1)

    def on_curve(self, P):
        x, y = P
        q = self.q
        return (self.a * x * x + y * y) % q == (1 + self.d * x * x * y * y) % q

    def add(self, P, Q):
        q, a, d = self.q, self.a, self.d
        x1, y1 = P
        x2, y2 = Q
        t = d * x1 * x2 * y1 * y2 % q
        x3 = (x1 * y2 + y1 * x2) * inv((1 + t) % q, q) % q
        y3 = (y1 * y2 - a * x1 * x2) * inv((1 - t) % q, q) % q
        return (x3, y3)

    def mul(self, k, P):
        R = self.O
        while k > 0:
            if k & 1:
                R = self.add(R, P)
            P = self.add(P, P)
            k >>= 1
        return R

    def point_from_y(self, y):
        """Smaller-root point with this y, or None."""
        q = self.q
        den = (self.a - self.d * y * y) % q
        if den == 0:
            return None
        x2 = (1 - y * y) * inv(den, q) % q
        if x2 == 0:
            return (0, y)
        if legendre(x2, q) != 1:
            return None
        x = sqrt_mod(x2, q)
        x = min(x, q - x)
        return (x, y)

    def derive_generator(self, h, r):
        """Smallest-y curve point whose cofactor-cleared image has order r."""
        y = 2
        while True:
            P = self.point_from_y(y)
            if P is not None:
                G = self.mul(h, P)
                if G != self.O and self.mul(r, G) == self.O:
                    return G
            y += 1


def check_common(cu, q, a, d, r, h, G):
    assert isprime(q), "q not prime"
    assert isprime(r), "r not prime"
    assert legendre(a, q) == 1, "a must be a square (complete addition)"
    assert legendre(d, q) == -1, "d must be a non-square (complete addition)"
    n = h * r
    assert abs(n - (q + 1)) <= 2 * math.isqrt(q) + 1, "order outside Hasse interval"
    assert cu.on_curve(G) and G != cu.O
    assert cu.mul(r, G) == cu.O, "generator order does not divide r"
    # group order spot check: random-ish points all killed by h*r
    y, hits = 2, 0
    while hits < 8:
        P = cu.point_from_y(y)
        if P is not None:
            assert cu.mul(n, P) == cu.O, "sampled point not killed by h*r"
            hits += 1
        y += 1


def production_profile():
    q = 21888242871839275222246405745257275088548364400416034343698204186575808495617
    a, d = 168700, 168696
    r = 2736030358979909402780800718157159386076813972158567259200215660948447373041
    h = 8
    assert r > 2**250
    cu = Edwards(q, a, d)
    G = cu.derive_generator(h, r)
    check_common(cu, q, a, d, r, h, G)
    return {
        "name": "production",
        "q": str(q),
        "a": str(a),
        "d": str(d),
        "r": str(r),
        "cofactor": str(h),
        "gx": str(G[0]),
        "gy": str(G[1]),
    }


def count_points(q, a, d):
    """#E(F_q) for a*x^2+y^2 = 1+d*x^2*y^2, by scanning y.

    x^2 = (1-y^2)/(a-d*y^2); the number of x solutions depends only on the
    quadratic character of (1-y^2)*(a-d*y^2), which avoids per-y inversions.
    """
    squares = np.zeros(q, dtype=bool)
    step = 1 << 20
    for lo in range(0, q, step):
        z = np.arange(lo, min(lo + step, q), dtype=np.int64)
        squares[(z * z) % q] = True
    total = 0
    for lo in range(0, q, step):
        y = np.arange(lo, min(lo + step, q), dtype=np.int64)
        y2 = (y * y) % q
        den = (a - d * y2) % q
        num = (1 - y2) % q
        u = (num * den) % q
        usable = den != 0
        total += int(np.count_nonzero(usable & (u == 0)))          # x = 0
        total += 2 * int(np.count_nonzero(usable & (u != 0) & squares[u]))
    return total


def toy_profile():
    # 24-bit field: leaves 7+ bits of counter headroom above b=6..7 values,
    # and keeps the subgroup below 2^20 at cofactor 16.
    q = 1 << 23
    while True:
        q += 1
        while not isprime(q):
            q += 1
        assert q < 1 << 24
        for a in range(2, 40):
            if legendre(a, q) != 1:
                continue
            for d in range(2, 40):
                if d == a or legendre(d, q) != -1:
                    continue
                n = count_points(q, a, d)
                for h in (16, 32):
                    r = n // h
                    if n % h == 0 and r < 1 << 20 and r > 1 << 17 and isprime(r):
                        cu = Edwards(q, a, d)
                        G = cu.derive_generator(h, r)
                        check_common(cu, q, a, d, r, h, G)
                        return {
                            "name": "toy",
                            "q": str(q),
                            "a": str(a),
                            "d": str(d),
                            "r": str(r),
                            "cofactor": str(h),
                            "gx": str(G[0]),
                            "gy": str(G[1]),
                        }


def main():
    out_dir = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "profiles")
    os.makedirs(out_dir, exist_ok=True)
    for prof in (production_profile(), toy_profile()):
        path = os.path.join(out_dir, prof["name"] + ".json")
        with open(path, "w") as f:
            json.dump(prof, f, indent=2)
            f.write("\n")
        print(f"wrote {path}")
        print(json.dumps(prof, indent=2))


if __name__ == "__main__":
    main()
