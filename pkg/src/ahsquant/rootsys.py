"""Root systems of the classical series in the standard epsilon realization.

Weights are plain tuples whose entries are ``int`` or ``Fraction``.  Integral
entries are always stored as ``int`` (``Fraction(3) == 3`` and both hash the
same, so mixed tuples are safe as dictionary keys), which keeps the hot loops
of the character code on machine integers.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence

from .errors import ConfigurationError, DomainError

Weight = tuple  # tuple of int | Fraction

SERIES = ("A", "B", "C", "D")


def q(x) -> int | Fraction:
    """Normalize a rational: integers come back as ``int``."""
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        x = Fraction(x)
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; use Fraction or str")
    if not isinstance(x, Rational):
        raise TypeError(f"not a rational: {x!r}")
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def weight(coords: Iterable) -> Weight:
    return tuple(q(c) for c in coords)


def ratio(num, den) -> int | Fraction:
    if isinstance(num, int) and isinstance(den, int) and num % den == 0:
        return num // den
    return q(Fraction(num) / den)


def dot(x: Sequence, y: Sequence):
    return sum(a * b for a, b in zip(x, y))


def add(x: Weight, y: Weight) -> Weight:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Weight, y: Weight) -> Weight:
    return tuple(a - b for a, b in zip(x, y))


def smul(c, x: Weight) -> Weight:
    return tuple(q(c * a) for a in x)


def neg(x: Weight) -> Weight:
    return tuple(-a for a in x)


@dataclass(frozen=True)
class RootSystem:
    series: str
    rank: int
    scale: int | Fraction = 1
    ambient_dim: int = field(default=0, compare=False)
    simple_roots: tuple = field(default=(), compare=False, repr=False)
    positive_roots: tuple = field(default=(), compare=False, repr=False)
    rho: Weight = field(default=(), compare=False, repr=False)

    @property
    def name(self) -> str:
        return f"{self.series}{self.rank}"

    @property
    def all_nodes(self) -> frozenset:
        return frozenset(range(self.rank))

    def zero(self) -> Weight:
        return (0,) * self.ambient_dim


def _unit(dim: int, i: int, c: int = 1) -> list:
    v = [0] * dim
    v[i] = c
    return v


def _classical_roots(series: str, r: int) -> tuple[list, list, int]:
    if series == "A":
        dim = r + 1
        simple = [tuple(_unit(dim, i)[k] - _unit(dim, i + 1)[k] for k in range(dim)) for i in range(r)]
        positive = []
        for i in range(dim):
            for j in range(i + 1, dim):
                v = [0] * dim
                v[i], v[j] = 1, -1
                positive.append(tuple(v))
        return simple, positive, dim

    dim = r
    positive = []
    for i in range(r):
        for j in range(i + 1, r):
            for s in (-1, 1):
                v = [0] * dim
                v[i], v[j] = 1, s
                positive.append(tuple(v))
    simple = []
    for i in range(r - 1):
        v = [0] * dim
        v[i], v[i + 1] = 1, -1
        simple.append(tuple(v))
    if series == "B":
        positive += [tuple(_unit(dim, i)) for i in range(r)]
        simple.append(tuple(_unit(dim, r - 1)))
    elif series == "C":
        positive += [tuple(_unit(dim, i, 2)) for i in range(r)]
        simple.append(tuple(_unit(dim, r - 1, 2)))
    else:
        v = [0] * dim
        v[r - 2], v[r - 1] = 1, 1
        simple.append(tuple(v))
    return simple, positive, dim


@lru_cache(maxsize=None)
def build_root_system(series: str, rank: int, scale=1) -> RootSystem:
    """Build the classical root system ``series``/``rank``.

    ``scale`` multiplies the standard inner product; it never changes roots
    or weights, only the values of :func:`inner_product`.
    """
    series = str(series).upper()
    if series not in SERIES:
        raise ConfigurationError(f"unsupported series {series!r}; expected one of {SERIES}")
    if not isinstance(rank, int) or rank < 1:
        raise ConfigurationError(f"rank must be a positive integer, got {rank!r}")
    if series == "D" and rank < 3:
        raise ConfigurationError("series D needs rank >= 3")
    if series in "BC" and rank < 2:
        raise ConfigurationError(f"series {series} needs rank >= 2")
    scale = q(scale)
    if scale <= 0:
        raise ConfigurationError("inner product scale must be positive")

    simple, positive, dim = _classical_roots(series, rank)
    twice_rho = [sum(a[i] for a in positive) for i in range(dim)]
    rho = tuple(ratio(c, 2) for c in twice_rho)
    return RootSystem(
        series=series,
        rank=rank,
        scale=scale,
        ambient_dim=dim,
        simple_roots=tuple(simple),
        positive_roots=tuple(positive),
        rho=rho,
    )


def with_scale(rs: RootSystem, scale) -> RootSystem:
    return build_root_system(rs.series, rs.rank, scale)


def inner_product(rs: RootSystem, x: Weight, y: Weight):
    if len(x) != rs.ambient_dim or len(y) != rs.ambient_dim:
        raise DomainError(
            f"weight length mismatch: {len(x)}, {len(y)} vs ambient dimension {rs.ambient_dim}"
        )
    return q(rs.scale * dot(x, y))


def _nodes(rs: RootSystem, nodes) -> frozenset:
    return rs.all_nodes if nodes is None else frozenset(nodes)


def is_dominant(rs: RootSystem, lam: Weight, nodes=None) -> bool:
    """True iff ``lam`` pairs non-negatively with every simple root in ``nodes``."""
    return all(dot(lam, rs.simple_roots[i]) >= 0 for i in _nodes(rs, nodes))


def cartan_matrix(rs: RootSystem) -> list[list[int]]:
    s = rs.simple_roots
    return [[ratio(2 * dot(a, b), dot(b, b)) for b in s] for a in s]


def reflect(x: Weight, alpha: Weight) -> Weight:
    c = ratio(2 * dot(x, alpha), dot(alpha, alpha))
    if c == 0:
        return x
    return tuple(a - c * b for a, b in zip(x, alpha))


@lru_cache(maxsize=None)
def simple_coefficients(rs: RootSystem, root: Weight) -> tuple:
    """Expansion of a positive root in simple roots."""
    coeffs = [0] * rs.rank
    rest = root
    while any(rest):
        for i, a in enumerate(rs.simple_roots):
            if rest == a:
                coeffs[i] += 1
                rest = rs.zero()
                break
            if dot(rest, a) > 0:
                cand = sub(rest, a)
                if cand in _root_set(rs):
                    coeffs[i] += 1
                    rest = cand
                    break
        else:
            raise DomainError(f"{root} is not a positive root of {rs.name}")
    return tuple(coeffs)


@lru_cache(maxsize=None)
def _root_set(rs: RootSystem) -> frozenset:
    return frozenset(rs.positive_roots)


@lru_cache(maxsize=None)
def subsystem_positive_roots(rs: RootSystem, nodes: frozenset) -> tuple:
    """Positive roots spanned by the simple roots indexed by ``nodes``."""
    if nodes == rs.all_nodes:
        return rs.positive_roots
    out = []
    for a in rs.positive_roots:
        c = simple_coefficients(rs, a)
        if all(c[i] == 0 for i in range(rs.rank) if i not in nodes):
            out.append(a)
    return tuple(out)


@lru_cache(maxsize=None)
def subsystem_rho(rs: RootSystem, nodes: frozenset) -> Weight:
    pos = subsystem_positive_roots(rs, nodes)
    return tuple(ratio(sum(a[i] for a in pos), 2) for i in range(rs.ambient_dim))


def _tail_start(rs: RootSystem, nodes: frozenset) -> int | None:
    # node sets {0..r-1} and {1..r-1} act on a coordinate tail of the same series
    if nodes == rs.all_nodes:
        return 0
    if nodes == frozenset(range(1, rs.rank)):
        if rs.series == "D" and rs.rank < 4:
            return None
        if rs.series in "BC" and rs.rank < 3:
            return None
        return 1
    return None


def _sorted_dominant(series: str, x: tuple) -> tuple:
    if series == "A":
        return tuple(sorted(x, reverse=True))
    absx = sorted((abs(c) for c in x), reverse=True)
    if series == "D" and absx[-1] != 0:
        if sum(1 for c in x if c < 0) % 2:
            absx[-1] = -absx[-1]
    return tuple(absx)


def make_dominant(rs: RootSystem, lam: Weight, nodes=None) -> Weight:
    """Dominant representative of the Weyl orbit of ``lam`` for ``nodes``."""
    nodes = _nodes(rs, nodes)
    start = _tail_start(rs, nodes)
    if start is not None:
        return lam[:start] + _sorted_dominant(rs.series, lam[start:])
    simple = [rs.simple_roots[i] for i in sorted(nodes)]
    x = lam
    moved = True
    while moved:
        moved = False
        for a in simple:
            if dot(x, a) < 0:
                x = reflect(x, a)
                moved = True
    return x


def weyl_orbit(rs: RootSystem, lam: Weight, nodes=None) -> list:
    nodes = _nodes(rs, nodes)
    simple = [rs.simple_roots[i] for i in sorted(nodes)]
    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for x in frontier:
            for a in simple:
                y = reflect(x, a)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return list(seen)


def weyl_dimension(rs: RootSystem, lam: Weight, nodes=None) -> int:
    """Weyl dimension formula for the irreducible module of highest weight ``lam``."""
    nodes = _nodes(rs, nodes)
    if not is_dominant(rs, lam, nodes):
        raise DomainError(f"weight {lam} is not dominant")
    rho = subsystem_rho(rs, nodes)
    shifted = add(lam, rho)
    num, den = 1, 1
    for a in subsystem_positive_roots(rs, nodes):
        num *= dot(shifted, a)
        den *= dot(rho, a)
    d = Fraction(num) / den
    if d.denominator != 1:
        raise DomainError(f"non-integral dimension {d} for {lam}")
    return int(d)


def dual_involution(rs: RootSystem, lam: Weight, nodes=None) -> Weight:
    """Highest weight of the dual module, i.e. ``-w0(lam)``."""
    if not is_dominant(rs, lam, nodes):
        raise DomainError(f"weight {lam} is not dominant")
    return make_dominant(rs, neg(lam), nodes)
