"""|1|-graded setups for conformal and projective geometry.

Labels of G0-modules are "negative lowest weights", i.e. highest weights of
the dual module.  For conformal structures a label is displayed as
``(w|a1,...,am)`` which is literally its epsilon-coordinate vector
``(w, a1, ..., am)`` of so(n+2); the first slot is the conformal weight and
the density R[w] has label ``(w|0,...,0)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .charalg import (
    FormalCharacter,
    IrrepDecomposition,
    decompose,
    irreducible_character,
)
from .errors import ConfigurationError, DisplayParseError
from .rootsys import RootSystem, Weight, add, build_root_system, dot, q, smul

GEOMETRIES = ("conformal", "projective")


@dataclass(frozen=True)
class GradedSetup:
    geometry: str
    n: int
    g: RootSystem
    crossed_node: int
    mu: Weight
    g0_nodes: frozenset
    extrapolated: bool = False

    def h0(self, nu: Weight):
        """Value of a weight on the grading element."""
        # alpha_0 = e1 - e2 and all other simple roots have no e1 component
        # (projective weights are stored with coordinate sum zero)
        return nu[0]

    @property
    def dim(self) -> int:
        return self.g.ambient_dim

    @property
    def mu_pairing(self):
        """Constant ``a`` with <mu, nu> = a * nu(H0) for every weight nu."""
        return q(Fraction(dot(self.mu, self.mu)) * self.g.scale / self.h0(self.mu))

    def describe(self) -> str:
        tag = " (odd n: unchecked extrapolation)" if self.extrapolated else ""
        return f"{self.geometry}(n={self.n}) g={self.g.name}{tag}"


@lru_cache(maxsize=None)
def build_graded_setup(geometry: str, n: int, allow_odd: bool = False, scale=1) -> GradedSetup:
    """Graded data of conformal (so(n+2)) or projective (sl(n+1)) geometry in dimension n."""
    geometry = str(geometry).lower()
    if geometry not in GEOMETRIES:
        raise ConfigurationError(f"geometry must be one of {GEOMETRIES}, got {geometry!r}")
    if not isinstance(n, int):
        raise ConfigurationError(f"n must be an integer, got {n!r}")
    if geometry == "conformal":
        if n < 5:
            raise ConfigurationError(f"conformal geometry needs n >= 5, got {n}")
        if n % 2 and not allow_odd:
            raise ConfigurationError(f"odd n={n} (type B) requires allow_odd (CLI: --allow-odd)")
        g = build_root_system("D", n // 2 + 1, scale) if n % 2 == 0 else build_root_system("B", (n + 1) // 2, scale)
        mu = (1,) + (0,) * (g.ambient_dim - 1)
    else:
        if n < 2:
            raise ConfigurationError(f"projective geometry needs n >= 2, got {n}")
        g = build_root_system("A", n, scale)
        mu = (1,) + (Fraction(-1, n),) * n
        mu = tuple(q(c) for c in mu)
    return GradedSetup(
        geometry=geometry,
        n=n,
        g=g,
        crossed_node=0,
        mu=mu,
        g0_nodes=frozenset(range(1, g.rank)),
        extrapolated=(geometry == "conformal" and n % 2 == 1),
    )


def level_of_label(setup: GradedSetup, lam: Weight):
    """Level of a G0-irreducible from its label (minus its value on H0)."""
    return -setup.h0(lam)


def density_shift(setup: GradedSetup, lam: Weight, w) -> Weight:
    """Label of ``V[w]`` given the label of ``V``."""
    return add(lam, smul(w, setup.mu))


def density_label(setup: GradedSetup, w) -> Weight:
    return smul(w, setup.mu)


# -- characters of the graded pieces ----------------------------------------


def label_character(setup: GradedSetup, label: Weight) -> FormalCharacter:
    """Character of the G0-irreducible with the given label, in label space.

    Label space is the dual picture: the returned character is that of the
    dual module, whose highest weight is the label.
    """
    return irreducible_character(setup.g, label, setup.g0_nodes)


def graded_piece_character(setup: GradedSetup, level: int) -> FormalCharacter:
    """Character (actual weights) of g_{level} for level in {-1, 0, 1}."""
    g = setup.g
    terms = {}
    for a in g.positive_roots:
        for r in (a, tuple(-c for c in a)):
            if setup.h0(r) == level:
                terms[r] = 1
    if level == 0:
        terms[g.zero()] = g.rank
    return FormalCharacter(g, terms)


def decompose_g0(setup: GradedSetup, chi: FormalCharacter) -> IrrepDecomposition:
    return decompose(setup.g, setup.g0_nodes, chi)


def slice_by_level(setup: GradedSetup, chi: FormalCharacter) -> dict:
    out: dict = {}
    for w, m in chi.terms.items():
        out.setdefault(setup.h0(w), {})[w] = m
    return {lvl: FormalCharacter(setup.g, terms) for lvl, terms in out.items()}


@lru_cache(maxsize=None)
def level_label_characters(setup: GradedSetup, top: Weight) -> dict:
    """Level slices of the g-irreducible ``top`` as label-space G0-characters.

    Keys are actual H0-eigenvalues; each value is the negated slice, whose
    G0-decomposition lists the labels of the composition factors.
    """
    chi = irreducible_character(setup.g, top)
    return {lvl: piece.negated() for lvl, piece in slice_by_level(setup, chi).items()}


def branch_to_levels(setup: GradedSetup, top: Weight) -> dict:
    """Branch the g-irreducible ``top`` to G0, level by level.

    Returns ``{level: IrrepDecomposition of labels}``, sorted by level.
    """
    slices = level_label_characters(setup, tuple(q(c) for c in top))
    return {lvl: decompose_g0(setup, slices[lvl]) for lvl in sorted(slices)}


# -- display notation --------------------------------------------------------


def format_rational(x) -> str:
    return str(Fraction(x))


def format_display(setup: GradedSetup, lam: Weight) -> str:
    head, *rest = lam
    return f"({format_rational(head)}|{','.join(format_rational(c) for c in rest)})"


_RATIONAL = re.compile(r"[+-]?\d+(?:/\d+)?")


def parse_display(setup: GradedSetup | None, text: str, pad: bool = False) -> Weight:
    """Parse ``(w|a1,...,am)`` into a weight.

    With ``pad`` the list may be shorter than the ambient dimension and is
    filled with zeros, mirroring the trailing "0,..." of the notation.
    """
    s = text
    pos = 0

    def skip_ws():
        nonlocal pos
        while pos < len(s) and s[pos] == " ":
            pos += 1

    def expect(ch):
        nonlocal pos
        skip_ws()
        if pos >= len(s) or s[pos] != ch:
            raise DisplayParseError(f"expected {ch!r}", text, pos)
        pos += 1

    def rational():
        nonlocal pos
        skip_ws()
        m = _RATIONAL.match(s, pos)
        if not m:
            raise DisplayParseError("expected a rational number", text, pos)
        start, pos = pos, m.end()
        try:
            return q(Fraction(m.group()))
        except ZeroDivisionError:
            raise DisplayParseError("zero denominator", text, start) from None

    expect("(")
    coords = [rational()]
    expect("|")
    coords.append(rational())
    while True:
        skip_ws()
        if pos < len(s) and s[pos] == ",":
            pos += 1
            coords.append(rational())
            continue
        break
    expect(")")
    skip_ws()
    if pos != len(s):
        raise DisplayParseError("trailing characters", text, pos)

    if setup is not None:
        dim = setup.dim
        if len(coords) > dim:
            raise DisplayParseError(f"too many entries ({len(coords)} > {dim})", text, 0)
        if len(coords) < dim:
            if not pad:
                raise DisplayParseError(f"too few entries ({len(coords)} < {dim})", text, len(s) - 1)
            coords += [0] * (dim - len(coords))
        if setup.geometry == "projective":
            total = sum(coords)
            if total:
                raise DisplayParseError("projective weights must have coordinate sum zero", text, 0)
    return tuple(coords)
