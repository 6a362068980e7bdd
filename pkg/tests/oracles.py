"""Independent reference computations used only by the tests.

Nothing here calls the Freudenthal, Adams or leading-term code paths of the
package: root systems are enumerated from scratch, characters are checked
against the Weyl character formula, symmetric powers are built from explicit
multisets, and critical weights come from solving the shift law directly.
"""
from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction


def enumerate_positive_roots(series: str, r: int) -> list:
    """Brute-force positive roots: short integer vectors of the right norm, first nonzero entry positive."""
    if series == "A":
        dim = r + 1
        cands = [v for v in itertools.product((-1, 0, 1), repeat=dim) if sum(v) == 0 and sum(map(abs, v)) == 2]
    else:
        dim = r
        rng = (-2, -1, 0, 1, 2) if series == "C" else (-1, 0, 1)
        cands = []
        for v in itertools.product(rng, repeat=dim):
            norm = sum(c * c for c in v)
            nz = sum(1 for c in v if c)
            if nz == 2 and norm == 2:
                cands.append(v)
            elif nz == 1 and series == "B" and norm == 1:
                cands.append(v)
            elif nz == 1 and series == "C" and norm == 4:
                cands.append(v)
    pos = []
    for v in cands:
        first = next(c for c in v if c)
        if first > 0:
            pos.append(tuple(v))
    return pos


def half_sum(vectors) -> tuple:
    dim = len(vectors[0])
    return tuple(Fraction(sum(v[i] for v in vectors), 2) for i in range(dim))


def _dot(x, y):
    return sum(a * b for a, b in zip(x, y))


def _norm(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def _reflect(x, a):
    c = _norm(Fraction(2 * _dot(x, a), _dot(a, a)))
    return tuple(xi - c * ai for xi, ai in zip(x, a))


def weyl_group_images(simple, rho, lam_rho):
    """Pairs (sign(w), w(lam+rho)) over the Weyl group, enumerated via the free orbit of rho."""
    start = tuple(_norm(c) for c in rho)
    seen = {start: (1, tuple(_norm(c) for c in lam_rho))}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            sgn, y = seen[x]
            for a in simple:
                x2 = _reflect(x, a)
                if x2 not in seen:
                    seen[x2] = (-sgn, _reflect(y, a))
                    nxt.append(x2)
        frontier = nxt
    return [(sgn, x, y) for x, (sgn, y) in seen.items()]


def weyl_character_value(simple, rho, lam, point, t):
    """Weyl character formula evaluated at exp(<., point>) with base t, exactly."""
    lam_rho = tuple(Fraction(a) + b for a, b in zip(lam, rho))
    num, den = [], []
    for sgn, wrho, wlr in weyl_group_images(simple, rho, lam_rho):
        num.append((sgn, int(_dot(wlr, point))))
        den.append((sgn, int(_dot(wrho, point))))
    # clear denominators with one common power of t so the sums stay integral
    t = Fraction(t)
    lo = min(e for _, e in num + den)
    hi = max(e for _, e in num + den)
    a, b = t.numerator, t.denominator

    def total(terms):
        return sum(sgn * a ** (e - lo) * b ** (hi - e) for sgn, e in terms)

    return Fraction(total(num), total(den))


def character_value(terms, point, t):
    return sum(m * Fraction(t) ** int(_dot(w, point)) for w, m in terms.items())


def brute_symmetric_power(terms, k) -> dict:
    """Character of S^k from explicit multisets of basis vectors."""
    basis = [w for w, m in terms.items() for _ in range(m)]
    out = Counter()
    for combo in itertools.combinations_with_replacement(range(len(basis)), k):
        out[tuple(sum(basis[i][j] for i in combo) for j in range(len(basis[0])))] += 1
    return dict(out)


def brute_exterior_power(terms, k) -> dict:
    basis = [w for w, m in terms.items() for _ in range(m)]
    out = Counter()
    for combo in itertools.combinations(range(len(basis)), k):
        out[tuple(sum(basis[i][j] for i in combo) for j in range(len(basis[0])))] += 1
    return dict(out)


def casimir(lam, rho, scale=1):
    return scale * sum(Fraction(a) * (Fraction(a) + 2 * Fraction(b)) for a, b in zip(lam, rho))


def shift_law_root(lam, lam2, mu, rho, scale=1):
    """Solve c(lam2 + w mu) = c(lam + w mu) for w; the difference is affine in w."""
    def f(w):
        return casimir([a + w * m for a, m in zip(lam2, mu)], rho, scale) - casimir(
            [a + w * m for a, m in zip(lam, mu)], rho, scale
        )

    f0, f1 = f(0), f(1)
    slope = f1 - f0
    assert f(2) - f1 == slope, "difference is not affine"
    return -f0 / slope
