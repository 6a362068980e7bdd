"""Formal characters: Freudenthal multiplicities, tensor and symmetric powers,
and decomposition into irreducibles.

Every function accepts an optional ``nodes`` argument selecting the simple
roots of a Levi subalgebra.  Characters of such a reductive algebra live in
the ambient coordinates of the full root system; the central directions are
unconstrained.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Iterator, Mapping

from .errors import DomainError, NotACharacterError
from .rootsys import (
    RootSystem,
    Weight,
    add,
    dot,
    is_dominant,
    make_dominant,
    q,
    subsystem_positive_roots,
    subsystem_rho,
    weyl_orbit,
)


def _nodes(rs, nodes):
    return rs.all_nodes if nodes is None else frozenset(nodes)


class FormalCharacter:
    """A finite map weight -> positive multiplicity."""

    __slots__ = ("rs", "terms")

    def __init__(self, rs: RootSystem, terms: Mapping[Weight, int] | None = None):
        self.rs = rs
        clean = {}
        for w, m in (terms or {}).items():
            if m < 0:
                raise NotACharacterError(f"negative multiplicity {m} at weight {w}", w)
            if m:
                if len(w) != rs.ambient_dim:
                    raise DomainError(f"weight {w} has wrong length for {rs.name}")
                clean[w] = m
        self.terms = clean

    def __eq__(self, other):
        return isinstance(other, FormalCharacter) and self.rs == other.rs and self.terms == other.terms

    def __repr__(self):
        return f"FormalCharacter({self.rs.name}, {len(self.terms)} weights, dim={self.dim})"

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __getitem__(self, w):
        return self.terms.get(w, 0)

    def __add__(self, other: FormalCharacter) -> FormalCharacter:
        _check_same(self, other)
        out = dict(self.terms)
        for w, m in other.terms.items():
            out[w] = out.get(w, 0) + m
        return FormalCharacter(self.rs, out)

    def __mul__(self, other: FormalCharacter) -> FormalCharacter:
        return tensor_character(self, other)

    @property
    def dim(self) -> int:
        return sum(self.terms.values())

    def negated(self) -> FormalCharacter:
        """Character of the dual module."""
        return FormalCharacter(self.rs, {tuple(-c for c in w): m for w, m in self.terms.items()})

    def shifted(self, by: Weight) -> FormalCharacter:
        return FormalCharacter(self.rs, {add(w, by): m for w, m in self.terms.items()})

    def scaled(self, k: int, mult: int = 1) -> FormalCharacter:
        return FormalCharacter(self.rs, {tuple(k * c for c in w): mult * m for w, m in self.terms.items()})

    def restrict(self, predicate) -> FormalCharacter:
        return FormalCharacter(self.rs, {w: m for w, m in self.terms.items() if predicate(w)})

    def is_weyl_invariant(self, nodes=None) -> bool:
        from .rootsys import reflect

        for i in _nodes(self.rs, nodes):
            a = self.rs.simple_roots[i]
            for w, m in self.terms.items():
                if self.terms.get(reflect(w, a), 0) != m:
                    return False
        return True


def _check_same(a: FormalCharacter, b: FormalCharacter):
    if a.rs != b.rs:
        raise DomainError(f"root system mismatch: {a.rs.name} vs {b.rs.name}")


def trivial_character(rs: RootSystem) -> FormalCharacter:
    return FormalCharacter(rs, {rs.zero(): 1})


@dataclass(frozen=True)
class IrrepDecomposition:
    """Multiset of irreducible labels, sorted for deterministic output."""

    items: tuple = ()

    @classmethod
    def from_dict(cls, d: Mapping[Weight, int]) -> IrrepDecomposition:
        return cls(tuple(sorted(((w, m) for w, m in d.items() if m), reverse=True)))

    def as_dict(self) -> dict:
        return dict(self.items)

    @property
    def labels(self) -> list:
        return [w for w, _ in self.items]

    def __iter__(self) -> Iterator:
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    def __contains__(self, label):
        return any(w == label for w, _ in self.items)

    def multiplicity(self, label) -> int:
        return self.as_dict().get(label, 0)


# -- Freudenthal -------------------------------------------------------------


@lru_cache(maxsize=None)
def _dominant_multiplicities(rs: RootSystem, lam: Weight, nodes: frozenset) -> Mapping:
    pos = subsystem_positive_roots(rs, nodes)
    rho = subsystem_rho(rs, nodes)

    # dominant weights below lam are connected by positive-root steps
    dominant = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for a in pos:
                nu = tuple(x - y for x, y in zip(mu, a))
                if nu not in dominant and is_dominant(rs, nu, nodes):
                    dominant.add(nu)
                    nxt.append(nu)
        frontier = nxt

    order = sorted(dominant, key=lambda mu: (-dot(mu, rho), tuple(-c for c in mu)))
    lam_rho = add(lam, rho)
    top = dot(lam_rho, lam_rho)
    mult = {lam: 1}
    for mu in order[1:]:
        total = 0
        for a in pos:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, a))
                m = mult.get(make_dominant(rs, nu, nodes))
                if not m:
                    break
                total += dot(nu, a) * m
                k += 1
        mu_rho = add(mu, rho)
        denom = top - dot(mu_rho, mu_rho)
        value = Fraction(2 * total) / denom
        if value.denominator != 1:
            raise NotACharacterError(f"Freudenthal produced non-integral multiplicity {value} at {mu}", mu)
        if value:
            mult[mu] = value.numerator
    return MappingProxyType(mult)


def dominant_character(rs: RootSystem, lam: Weight, nodes=None) -> Mapping:
    """Multiplicities of the dominant weights of the irreducible module ``lam``."""
    nodes = _nodes(rs, nodes)
    lam = tuple(q(c) for c in lam)
    if not is_dominant(rs, lam, nodes):
        raise DomainError(f"highest weight {lam} is not dominant")
    return _dominant_multiplicities(rs, lam, nodes)


@lru_cache(maxsize=256)
def _full_character(rs: RootSystem, lam: Weight, nodes: frozenset) -> Mapping:
    out = {}
    for mu, m in _dominant_multiplicities(rs, lam, nodes).items():
        for nu in weyl_orbit(rs, mu, nodes):
            out[nu] = m
    return MappingProxyType(out)


def irreducible_character(rs: RootSystem, lam: Weight, nodes=None) -> FormalCharacter:
    """Full character of the irreducible module of highest weight ``lam``."""
    nodes = _nodes(rs, nodes)
    lam = tuple(q(c) for c in lam)
    if not is_dominant(rs, lam, nodes):
        raise DomainError(f"highest weight {lam} is not dominant")
    return FormalCharacter(rs, _full_character(rs, lam, nodes))


def adjoint_character(rs: RootSystem) -> FormalCharacter:
    terms = {rs.zero(): rs.rank}
    for a in rs.positive_roots:
        terms[a] = 1
        terms[tuple(-c for c in a)] = 1
    return FormalCharacter(rs, terms)


# -- products and powers -----------------------------------------------------


def _convolve(a: Mapping, b: Mapping) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out = defaultdict(int)
    for w2, m2 in b.items():
        for w1, m1 in a.items():
            out[tuple(x + y for x, y in zip(w1, w2))] += m1 * m2
    return out


def tensor_character(chi1: FormalCharacter, chi2: FormalCharacter) -> FormalCharacter:
    _check_same(chi1, chi2)
    return FormalCharacter(chi1.rs, _convolve(chi1.terms, chi2.terms))


def _power_sums(chi: FormalCharacter, k: int, sign: int) -> dict:
    # Newton: k h_k = sum_i p_i h_{k-i};  k e_k = sum_i (-1)^(i-1) p_i e_{k-i}
    powers = [{chi.rs.zero(): 1}]
    for j in range(1, k + 1):
        acc = defaultdict(int)
        for i in range(1, j + 1):
            coeff = 1 if sign > 0 or i % 2 == 1 else -1
            adams = {tuple(i * c for c in w): m for w, m in chi.terms.items()}
            for w, m in _convolve(adams, powers[j - i]).items():
                acc[w] += coeff * m
        nxt = {}
        for w, m in acc.items():
            if m % j:
                raise NotACharacterError(f"inexact division by {j} in power recursion at {w}", w)
            if m:
                nxt[w] = m // j
        powers.append(nxt)
    return powers[k]


def symmetric_power_character(chi: FormalCharacter, k: int) -> FormalCharacter:
    if k < 0:
        raise DomainError("k must be non-negative")
    return FormalCharacter(chi.rs, _power_sums(chi, k, +1))


def exterior_power_character(chi: FormalCharacter, k: int) -> FormalCharacter:
    if k < 0:
        raise DomainError("k must be non-negative")
    return FormalCharacter(chi.rs, _power_sums(chi, k, -1))


# -- decomposition -----------------------------------------------------------


def decompose(rs: RootSystem, nodes, chi: FormalCharacter) -> IrrepDecomposition:
    """Split ``chi`` into irreducibles of the (Levi) subalgebra given by ``nodes``.

    Repeatedly takes the dominant support weight maximal against rho (ties
    broken lexicographically), which is necessarily a highest weight, and
    subtracts the corresponding irreducible character.
    """
    nodes = _nodes(rs, nodes)
    if chi.rs != rs:
        raise DomainError(f"root system mismatch: {chi.rs.name} vs {rs.name}")
    rest = {w: m for w, m in chi.terms.items() if is_dominant(rs, w, nodes)}
    rho = rs.rho
    out = {}
    while rest:
        top = max(rest, key=lambda w: (dot(w, rho), w))
        m = rest[top]
        if m < 0:
            raise NotACharacterError(f"negative multiplicity {m} at {top}: not a representation character", top)
        out[top] = m
        for mu, k in _dominant_multiplicities(rs, top, nodes).items():
            left = rest.get(mu, 0) - m * k
            if left < 0:
                raise NotACharacterError(
                    f"negative multiplicity {left} at {mu} while removing {top}: not a representation character", mu
                )
            if left:
                rest[mu] = left
            else:
                rest.pop(mu, None)
    return IrrepDecomposition.from_dict(out)


def character_of(rs: RootSystem, decomposition, nodes=None) -> FormalCharacter:
    """Inverse of :func:`decompose`: the sum of the listed irreducible characters."""
    out = defaultdict(int)
    for lam, m in decomposition:
        for w, k in irreducible_character(rs, lam, nodes).terms.items():
            out[w] += m * k
    return FormalCharacter(rs, out)
