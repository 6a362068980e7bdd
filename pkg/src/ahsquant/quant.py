"""Critical weights of the Casimir-based quantization scheme.

Pipeline for symbols of type ``U`` and order ``k``:

1. split ``S^k g_{-1} (x) U`` into G0-irreducibles ``R_i``;
2. collect candidate composition factors of the P-module generated by each
   ``R_i`` (coarse: all of ``S^l g_1 (x) R_i``; refined: only those also
   occurring in the matching g-component of ``S^k g`` tensored with ``U``);
3. each candidate at filtration offset ``l`` resonates with ``R_i`` at
   exactly one density weight.

All labels are negative lowest weights.  Internally everything is computed
at weight zero; ``base_delta`` only changes how labels and Casimir values
are reported.  Critical weights are always absolute.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .charalg import (
    FormalCharacter,
    IrrepDecomposition,
    adjoint_character,
    decompose,
    symmetric_power_character,
    tensor_character,
)
from .errors import DomainError, NoUniqueCriticalWeight
from .grading import (
    GradedSetup,
    decompose_g0,
    density_shift,
    format_display,
    graded_piece_character,
    label_character,
    level_label_characters,
    level_of_label,
)
from .rootsys import Weight, add, inner_product, is_dominant, q, ratio, sub


# -- Casimir arithmetic -----------------------------------------------------


def casimir_eigenvalue(setup: GradedSetup, lam: Weight):
    """Eigenvalue <lam, lam + 2 rho> of the curved Casimir on the bundle labelled ``lam``."""
    g = setup.g
    return inner_product(g, lam, add(lam, add(g.rho, g.rho)))


def casimir_difference(setup: GradedSetup, lam: Weight, lam2: Weight):
    """c(lam2) - c(lam), computed as 2<lam2-lam, lam+rho> + |lam2-lam|^2."""
    g = setup.g
    d = sub(lam2, lam)
    return q(2 * inner_product(g, d, add(lam, g.rho)) + inner_product(g, d, d))


def critical_delta(setup: GradedSetup, lam: Weight, lam2: Weight):
    """The unique shift w with c(lam2 + w mu) = c(lam + w mu)."""
    g = setup.g
    pairing = inner_product(g, sub(lam2, lam), setup.mu)
    if pairing == 0:
        raise NoUniqueCriticalWeight(f"labels {lam} and {lam2} pair to zero with the density weight")
    c_diff = casimir_eigenvalue(setup, lam) - casimir_eigenvalue(setup, lam2)
    return ratio(c_diff, 2 * pairing)


# -- report data -------------------------------------------------------------


@dataclass(frozen=True)
class SymbolComponent:
    label: Weight
    multiplicity: int
    level: int
    matched: tuple = ()


@dataclass(frozen=True)
class CandidateFactor:
    label: Weight
    ell: int
    source: str
    beta: Fraction | int
    delta_critical: Fraction | int
    multiplicity: int = 1


@dataclass(frozen=True)
class ComponentReport:
    component: SymbolComponent
    candidates: tuple
    beta0: Fraction | int
    n_i: int
    gamma_zero_deltas: tuple
    violations: tuple = ()


@dataclass(frozen=True)
class QuantReport:
    setup: GradedSetup
    U: Weight
    order: int
    base_delta: Fraction | int
    refined: bool
    components: tuple
    critical_set: tuple
    dominance_threshold: Fraction | int
    violations: tuple = field(default=())

    @property
    def bound(self) -> int:
        return sum(c.n_i for c in self.components)

    def component(self, label) -> ComponentReport:
        """First component whose (reported) label equals ``label``."""
        for c in self.components:
            if c.component.label == label:
                return c
        raise KeyError(label)

    def components_with_label(self, label) -> list:
        return [c for c in self.components if c.component.label == label]


# -- pipeline pieces ---------------------------------------------------------


def _g1_label_character(setup: GradedSetup) -> FormalCharacter:
    # dual of g_1 is g_{-1}
    return graded_piece_character(setup, -1)


def _gm1_label_character(setup: GradedSetup) -> FormalCharacter:
    return graded_piece_character(setup, 1)


@lru_cache(maxsize=None)
def _symbol_decomposition(setup: GradedSetup, U: Weight, k: int) -> IrrepDecomposition:
    chi = symmetric_power_character(_gm1_label_character(setup), k)
    return decompose_g0(setup, tensor_character(chi, label_character(setup, U)))


def _check_label(setup: GradedSetup, lam: Weight, what: str):
    if len(lam) != setup.dim:
        raise DomainError(f"{what} label {lam} must have {setup.dim} coordinates")
    if not is_dominant(setup.g, lam, setup.g0_nodes):
        raise DomainError(f"{what} label {lam} is not dominant for g0")


def symbol_components(setup: GradedSetup, U: Weight, k: int, base_delta=0) -> list:
    """Irreducible components of ``S^k g_{-1} (x) U[base_delta]``."""
    if k < 1:
        raise DomainError("order k must be >= 1")
    U = tuple(q(c) for c in U)
    _check_label(setup, U, "U")
    base_delta = q(base_delta)
    out = []
    for lam, m in _symbol_decomposition(setup, U, k):
        out.append(SymbolComponent(density_shift(setup, lam, base_delta), m, -k))
    return out


@lru_cache(maxsize=None)
def _coarse(setup: GradedSetup, R: Weight, k: int) -> dict:
    g1 = _g1_label_character(setup)
    chi_R = label_character(setup, R)
    out = {}
    for ell in range(1, k + 1):
        out[ell] = decompose_g0(setup, tensor_character(symmetric_power_character(g1, ell), chi_R))
    return out


def coarse_candidates(setup: GradedSetup, R: Weight, k: int) -> dict:
    """All G0-components of ``S^l g_1 (x) R`` for ``1 <= l <= k``."""
    R = tuple(q(c) for c in R)
    _check_label(setup, R, "component")
    return dict(_coarse(setup, R, k))


@lru_cache(maxsize=None)
def symmetric_power_components(setup: GradedSetup, k: int) -> IrrepDecomposition:
    """g-irreducible components of ``S^k g``."""
    return decompose(setup.g, None, symmetric_power_character(adjoint_character(setup.g), k))


@lru_cache(maxsize=None)
def _bottom_times_U(setup: GradedSetup, top: Weight, k: int, U: Weight) -> IrrepDecomposition:
    slices = level_label_characters(setup, top)
    if -k not in slices:
        return IrrepDecomposition()
    return decompose_g0(setup, tensor_character(slices[-k], label_character(setup, U)))


def _matches(setup: GradedSetup, R: Weight, k: int, U: Weight) -> dict:
    """g-components T of S^k g with the multiplicity of R in bottom(T) (x) U."""
    out = {}
    for top, mult_T in symmetric_power_components(setup, k):
        c = _bottom_times_U(setup, top, k, U).multiplicity(R)
        if c:
            out[top] = mult_T * c
    return out


def match_g_components(setup: GradedSetup, R: Weight, k: int, U: Weight) -> list:
    """g-components of ``S^k g`` whose bottom level, tensored with ``U``, contains ``R``.

    ``R`` is the label at weight zero.
    """
    R = tuple(q(c) for c in R)
    U = tuple(q(c) for c in U)
    return sorted(_matches(setup, R, k, U), reverse=True)


@lru_cache(maxsize=None)
def _slice_times_U(setup: GradedSetup, top: Weight, level: int, U: Weight) -> IrrepDecomposition:
    slices = level_label_characters(setup, top)
    if level not in slices:
        return IrrepDecomposition()
    return decompose_g0(setup, tensor_character(slices[level], label_character(setup, U)))


def refine_candidates(setup: GradedSetup, R: Weight, coarse: dict, matched, U: Weight, k: int | None = None) -> dict:
    """Keep the coarse candidates that occur in a matched g-component's slice (x) U."""
    if not matched:
        raise DomainError(f"no g-component of the symmetric power matches {R}")
    U = tuple(q(c) for c in U)
    if k is None:
        k = max(coarse)
    out = {}
    for ell, dec in coarse.items():
        allowed = set()
        for top in matched:
            allowed.update(_slice_times_U(setup, tuple(top), -k + ell, U).labels)
        out[ell] = IrrepDecomposition(tuple((w, m) for w, m in dec if w in allowed))
    return out


def _distinct_eigenvalue_candidates(setup: GradedSetup, R: Weight, candidates: dict) -> list:
    """One representative label per distinct Casimir eigenvalue function of delta."""
    seen = {}
    for ell in sorted(candidates):
        for lam, _ in candidates[ell]:
            key = (level_of_label(setup, lam), casimir_eigenvalue(setup, lam))
            seen.setdefault(key, lam)
    return list(seen.values())


def gamma_zero_deltas(setup: GradedSetup, R: Weight, candidates: dict) -> list:
    """Shifts of R (relative to the weight R is given at) where gamma_i vanishes."""
    return sorted({critical_delta(setup, R, lam) for lam in _distinct_eigenvalue_candidates(setup, R, candidates)})


def gamma_value(setup: GradedSetup, R: Weight, candidates: dict, delta):
    """prod_j (beta0 - beta_j) after shifting every label by ``delta``."""
    delta = q(delta)
    b0 = casimir_eigenvalue(setup, density_shift(setup, R, delta))
    out = 1
    for lam in _distinct_eigenvalue_candidates(setup, R, candidates):
        out *= b0 - casimir_eigenvalue(setup, density_shift(setup, lam, delta))
    return q(out)


def dominance_threshold(setup: GradedSetup, U: Weight):
    """Least delta0 with U[delta] g-dominant for every delta >= delta0."""
    g = setup.g
    a0 = g.simple_roots[setup.crossed_node]
    return ratio(-inner_product(g, U, a0), inner_product(g, setup.mu, a0))


def prop35_set(n: int, w, k: int) -> list:
    """Closed-form superset of critical weights caused by a component R[w] (conformal)."""
    w = q(w)
    out = {q(-w - 1)}
    for ell in range(1, k + 1):
        for m in range(0, ell // 2 + 1):
            out.add(q(-w - 1 + ell - 2 * m + Fraction(m * (2 + 2 * m - n), ell)))
    return sorted(out)


# -- full report -------------------------------------------------------------


def _component_entries(setup: GradedSetup, U: Weight, k: int, refine: bool) -> list:
    entries = []
    for lam, m in _symbol_decomposition(setup, U, k):
        if not refine:
            entries.append(SymbolComponent(lam, m, -k))
            continue
        matches = _matches(setup, lam, k, U)
        if sum(matches.values()) != m:
            raise DomainError(f"matched multiplicities {matches} do not account for {m} copies of {lam}")
        for top, c in sorted(matches.items(), reverse=True):
            entries.append(SymbolComponent(lam, c, -k, (top,)))
    return entries


def _analyse(setup: GradedSetup, comp: SymbolComponent, U: Weight, k: int, refine: bool, base_delta) -> ComponentReport:
    R = comp.label
    cands = _coarse(setup, R, k)
    source = "coarse"
    if refine:
        cands = refine_candidates(setup, R, cands, comp.matched, U, k)
        source = "refined"

    beta_shift = lambda lam: casimir_eigenvalue(setup, density_shift(setup, lam, base_delta))
    factors = []
    for ell in sorted(cands):
        for lam, m in cands[ell]:
            pairing = inner_product(setup.g, sub(lam, R), setup.mu)
            if pairing != -ell * setup.mu_pairing:
                raise NoUniqueCriticalWeight(f"candidate {lam} of {R} has pairing {pairing}, expected level offset {ell}")
            factors.append(
                CandidateFactor(
                    label=density_shift(setup, lam, base_delta),
                    ell=ell,
                    source=source,
                    beta=beta_shift(lam),
                    delta_critical=critical_delta(setup, R, lam),
                    multiplicity=m,
                )
            )
    factors.sort(key=lambda f: (f.ell, tuple(-c for c in f.label)))
    zeros = tuple(gamma_zero_deltas(setup, R, cands))
    n_i = len(_distinct_eigenvalue_candidates(setup, R, cands))
    shown = SymbolComponent(density_shift(setup, R, base_delta), comp.multiplicity, comp.level, comp.matched)
    return ComponentReport(shown, tuple(factors), beta_shift(R), n_i, zeros)


def critical_report(setup: GradedSetup, U: Weight, k: int, base_delta=0, refine: bool = True, jobs: int = 1) -> QuantReport:
    """Critical weights for symbols of type ``U`` and order ``k``."""
    if k < 1:
        raise DomainError("order k must be >= 1")
    U = tuple(q(c) for c in U)
    _check_label(setup, U, "U")
    base_delta = q(base_delta)
    entries = _component_entries(setup, U, k, refine)

    work = lambda comp: _analyse(setup, comp, U, k, refine, base_delta)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            comps = list(pool.map(work, entries))
    else:
        comps = [work(c) for c in entries]
    comps.sort(key=lambda c: (tuple(-x for x in c.component.label), tuple(tuple(-x for x in t) for t in c.component.matched)))

    threshold = dominance_threshold(setup, U)
    violations = []
    final = []
    for c in comps:
        bad = tuple(d for d in c.gamma_zero_deltas if d >= threshold)
        if bad:
            violations.append(f"{format_display(setup, c.component.label)}: critical weights {list(bad)} >= threshold {threshold}")
        final.append(ComponentReport(c.component, c.candidates, c.beta0, c.n_i, c.gamma_zero_deltas, bad))

    critical = sorted({d for c in final for d in c.gamma_zero_deltas})
    return QuantReport(
        setup=setup,
        U=U,
        order=k,
        base_delta=base_delta,
        refined=refine,
        components=tuple(final),
        critical_set=tuple(critical),
        dominance_threshold=threshold,
        violations=tuple(violations),
    )
