"""Witt-algebra and so(1,2) arithmetic, plus a bounded subalgebra-closure search.

The Witt modes ``L_j`` obey ``[L_j, L_k] = (k - j) L_{j+k}``.  The real
vector fields on the circle sit inside the complexification as

    T   = i L_0,   S_l = (L_l - L_{-l}) / 2,   C_l = i (L_l + L_{-l}) / 2,

and for every l the span of T/l, S_l/l, C_l/l is an so(1,2) copy.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import QC, QC_I, coerce, is_exact, scalar_is_zero

__all__ = [
    "WittElement", "L", "witt_T", "witt_S", "witt_C",
    "witt_bracket", "witt_closure", "ClosureResult",
    "So12Element", "so12_bracket", "algebra_isomorphism", "killing_form",
    "vector_field_to_so12",
    "DEFAULT_MODE_BOUND", "DEFAULT_DIM_BOUND", "FLOAT_RANK_THRESHOLD",
]

DEFAULT_MODE_BOUND = 64
DEFAULT_DIM_BOUND = 12
# Relative singular-value cutoff for rank decisions when float coefficients
# force the closure search off the exact path.
FLOAT_RANK_THRESHOLD = 1e-10


class WittElement:
    """Finite complex combination of Witt modes, exact when possible.

    Coefficients given as ints or Fractions are stored exactly; a float or
    complex coefficient anywhere demotes the element to complex floats.
    Zero coefficients are dropped on construction.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        for j, c in (coeffs or {}).items():
            c = coerce(c)
            if not scalar_is_zero(c):
                clean[int(j)] = c
        if any(not is_exact(c) for c in clean.values()):
            clean = {j: complex(c) for j, c in clean.items() if complex(c) != 0}
        self.coeffs = clean

    # -- queries --------------------------------------------------------
    @property
    def support(self):
        return tuple(sorted(self.coeffs))

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def is_exact(self):
        return all(is_exact(c) for c in self.coeffs.values())

    def get(self, j):
        return self.coeffs.get(j, QC(0) if self.is_exact else 0j)

    # -- linear structure -------------------------------------------------
    def __add__(self, other):
        out = dict(self.coeffs)
        for j, c in other.coeffs.items():
            out[j] = out[j] + c if j in out else c
        return WittElement(out)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __rmul__(self, scalar):
        scalar = coerce(scalar)
        return WittElement({j: scalar * c for j, c in self.coeffs.items()})

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, WittElement):
            return NotImplemented
        if self.support != other.support:
            return False
        return all(complex(self.coeffs[j]) == complex(other.coeffs[j])
                   for j in self.coeffs)

    def __hash__(self):
        return hash(tuple((j, complex(c)) for j, c in sorted(self.coeffs.items())))

    def __repr__(self):
        if self.is_zero:
            return "WittElement(0)"
        terms = " + ".join(f"({c!r})*L({j})" for j, c in sorted(self.coeffs.items()))
        return f"WittElement[{terms}]"

    def _sort_key(self):
        return (self.support,
                tuple((complex(c).real, complex(c).imag)
                      for _, c in sorted(self.coeffs.items())))


def L(j: int) -> WittElement:
    """The single Witt mode L_j."""
    return WittElement({j: 1})


def witt_T() -> WittElement:
    """Rotation field d/dphi as a Witt element (= i L_0)."""
    return WittElement({0: QC_I})


def witt_S(l: int) -> WittElement:
    """sin(l phi) d/dphi as a Witt element."""
    h = Fraction(1, 2)
    return WittElement({l: QC(h), -l: QC(-h)})


def witt_C(l: int) -> WittElement:
    """cos(l phi) d/dphi as a Witt element."""
    h = QC(0, Fraction(1, 2))
    return WittElement({l: h, -l: h})


def witt_bracket(a: WittElement, b: WittElement) -> WittElement:
    """[a, b] with [L_j, L_k] = (k - j) L_{j+k}; bilinear and antisymmetric."""
    out = {}
    for j, aj in a.coeffs.items():
        for k, bk in b.coeffs.items():
            if j == k:
                continue
            term = (k - j) * (aj * bk)
            m = j + k
            out[m] = out[m] + term if m in out else term
    return WittElement(out)


# ---------------------------------------------------------------------------
# closure search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClosureResult:
    """Outcome of the bounded bracket-closure search.

    ``closed`` with a basis means every pairwise bracket of basis elements
    lies in the span (exact linear solve when all inputs are rational).
    Otherwise ``witness_mode`` names a mode index produced by bracketing
    that escaped the running span before the search bounds were hit.
    """

    closed: bool
    basis: tuple | None = None
    witness_mode: int | None = None

    @property
    def dimension(self):
        return len(self.basis) if self.basis is not None else None


def _top_mode(elem: WittElement) -> int:
    """Mode of largest |index| (ties resolved positive)."""
    return max(elem.support, key=lambda j: (abs(j), j))


class _ExactSpan:
    """Row-echelon span over exact complex rationals, keyed by pivot mode."""

    def __init__(self):
        self.rows = {}  # pivot mode -> monic WittElement

    def reduce(self, elem):
        for pivot in sorted(self.rows, key=lambda j: (abs(j), j), reverse=True):
            c = elem.coeffs.get(pivot)
            if c is not None and not scalar_is_zero(c):
                elem = elem - c * self.rows[pivot]
        return elem

    def insert(self, elem):
        """Reduce elem; if independent, add it and return True."""
        r = self.reduce(elem)
        if r.is_zero:
            return False
        pivot = _top_mode(r)
        self.rows[pivot] = (QC(1) / r.coeffs[pivot]) * r
        return True


class _FloatSpan:
    """Span with rank decisions by singular values (relative threshold)."""

    def __init__(self):
        self.vectors = []

    def _matrix(self, extra=None):
        elems = self.vectors + ([extra] if extra is not None else [])
        modes = sorted({j for e in elems for j in e.support})
        mat = np.zeros((len(elems), max(len(modes), 1)), dtype=complex)
        for i, e in enumerate(elems):
            for j, c in e.coeffs.items():
                mat[i, modes.index(j)] = complex(c)
        return mat

    def _rank(self, mat):
        if mat.size == 0:
            return 0
        sv = np.linalg.svd(mat, compute_uv=False)
        if sv.size == 0 or sv[0] == 0:
            return 0
        return int(np.sum(sv > FLOAT_RANK_THRESHOLD * sv[0]))

    def insert(self, elem):
        if self._rank(self._matrix(extra=elem)) > self._rank(self._matrix()):
            self.vectors.append(elem)
            return True
        return False


def witt_closure(generators, mode_bound=DEFAULT_MODE_BOUND,
                 dim_bound=DEFAULT_DIM_BOUND) -> ClosureResult:
    """Close the span of ``generators`` under the Witt bracket, within bounds.

    Parameters
    ----------
    generators : iterable of WittElement
        Nonempty; the search is independent of their ordering.
    mode_bound : int
        A bracket producing a mode of larger |index| ends the search with a
        not-closed verdict (never an exception).
    dim_bound : int
        Same for the running span dimension.

    Returns
    -------
    ClosureResult
        Closed basis if the span stabilized, else a witness mode.
    """
    gens = sorted((g for g in generators if not g.is_zero),
                  key=WittElement._sort_key)
    if not gens:
        raise ValueError("generators must contain a nonzero element")
    top = max(max(abs(j) for j in g.support) for g in gens)
    if mode_bound < top:
        raise ValueError(f"mode_bound {mode_bound} below generator mode {top}")
    if dim_bound < len(gens):
        raise ValueError(f"dim_bound {dim_bound} below generator count {len(gens)}")

    exact = all(g.is_exact for g in gens)
    span = _ExactSpan() if exact else _FloatSpan()
    basis = []
    for g in gens:
        if span.insert(g):
            basis.append(g)

    witness = None
    frontier = list(itertools.combinations(range(len(basis)), 2))
    while frontier:
        i, j = frontier.pop(0)
        c = witt_bracket(basis[i], basis[j])
        if c.is_zero:
            continue
        if max(abs(m) for m in c.support) > mode_bound:
            return ClosureResult(False, None, witness if witness is not None
                                 else _top_mode(c))
        if span.insert(c):
            if witness is None:
                witness = _top_mode(c)
            basis.append(c)
            n = len(basis) - 1
            if n + 1 > dim_bound:
                return ClosureResult(False, None, witness)
            frontier.extend((m, n) for m in range(n))
    return ClosureResult(True, tuple(basis), None)


# ---------------------------------------------------------------------------
# so(1,2)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class So12Element:
    """Real combination t0*T0 + t1*T1 + t2*T2 of the so(1,2) basis."""

    t0: float
    t1: float
    t2: float

    def __add__(self, other):
        return So12Element(self.t0 + other.t0, self.t1 + other.t1, self.t2 + other.t2)

    def __sub__(self, other):
        return So12Element(self.t0 - other.t0, self.t1 - other.t1, self.t2 - other.t2)

    def __rmul__(self, s):
        return So12Element(s * self.t0, s * self.t1, s * self.t2)

    __mul__ = __rmul__

    def as_array(self):
        return np.array([self.t0, self.t1, self.t2], dtype=float)


def so12_bracket(a: So12Element, b: So12Element) -> So12Element:
    """Bracket with [T0,T1] = T2, [T0,T2] = -T1, [T1,T2] = -T0."""
    return So12Element(
        -(a.t1 * b.t2 - a.t2 * b.t1),
        a.t2 * b.t0 - a.t0 * b.t2,
        a.t0 * b.t1 - a.t1 * b.t0,
    )


_SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
_SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)
_SIGMA_P = (_SIGMA1 + 1j * _SIGMA2) / 2
_SIGMA_M = (_SIGMA1 - 1j * _SIGMA2) / 2

_BASIS_IMAGES = {
    # T0, T1, T2 as 2x2 matrices in each target algebra.
    "sl2r": ((_SIGMA_P - _SIGMA_M) / 2, (_SIGMA_P + _SIGMA_M) / 2, _SIGMA3 / 2),
    "su11": (-0.5j * _SIGMA3, _SIGMA1 / 2, _SIGMA2 / 2),
}


def algebra_isomorphism(target: str, a: So12Element) -> np.ndarray:
    """2x2 matrix image of ``a`` under the so(1,2) -> sl(2,R)/su(1,1) dictionary.

    Linear, and a bracket homomorphism: the image of so12_bracket(a, b)
    is the matrix commutator of the images.
    """
    try:
        m0, m1, m2 = _BASIS_IMAGES[target]
    except KeyError:
        raise ValueError(f"unknown target algebra {target!r}; use 'sl2r' or 'su11'")
    return a.t0 * m0 + a.t1 * m1 + a.t2 * m2


def _ad_matrix(a: So12Element) -> np.ndarray:
    cols = []
    for e in (So12Element(1, 0, 0), So12Element(0, 1, 0), So12Element(0, 0, 1)):
        cols.append(so12_bracket(a, e).as_array())
    return np.column_stack(cols)


def killing_form(a: So12Element, b: So12Element) -> float:
    """tr(ad_a ad_b); on the T basis this is 2*diag(-1, 1, 1)."""
    return float(np.trace(_ad_matrix(a) @ _ad_matrix(b)).real)


def vector_field_to_so12(l: int, v: WittElement) -> So12Element:
    """Map a real field in span{T, S_l, C_l} to so(1,2) via T/l -> T0 etc.

    Rejects elements outside the admissible span with a diagnostic naming
    the offending mode, and non-real combinations.
    """
    if l < 1:
        raise ValueError("l must be a positive integer")
    allowed = {-l, 0, l}
    for j in sorted(v.support, key=lambda m: (abs(m), -m)):
        if j not in allowed:
            raise ValueError(f"mode {j} not in l={l} span")
    a0, ap, am = v.get(0), v.get(l), v.get(-l)
    b0 = complex(-1j * complex(a0))
    b1 = complex(ap) - complex(am)
    b2 = complex(-1j * (complex(ap) + complex(am)))
    for name, b in (("T", b0), ("S", b1), ("C", b2)):
        if abs(b.imag) > 1e-12:
            raise ValueError(f"coefficient of {name}_{l} is not real: {b}")
    return So12Element(l * b0.real, l * b1.real, l * b2.real)
