"""Covering-group actions on the half-cylinder and their audits.

The phase space is S^1 x R+ with form dphi ^ dp.  The l-fold covering of
SO^(1,2) acts through the unit-disc Moebius map applied to exp(i l phi),

    exp(il phi) -> exp(2i omega) (gamma + exp(il phi)) / (conj(gamma) exp(il phi) + 1),

with the continuous l-th root fixed by phi -> phi + 2 omega / l at gamma = 0,
and the lifted momentum p -> p |alpha exp(il phi) + beta|^2.  Everything here
is closed-form; finite differences only audit, never integrate.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import numpy as np

from .exact import QC, QC_I, coerce, conj_scalar, is_exact, scalar_is_zero

__all__ = [
    "PhasePoint", "CoveringElement", "TrigPoly", "MomentumFunction",
    "AdmissibilityReport",
    "act_lifted", "compose", "inverse", "rotation_element", "boost_element",
    "lift_hamiltonian", "poisson_bracket", "hamiltonian_vector_field",
    "check_symplectic", "admissibility_audit", "transport",
    "lightcone_map", "lightcone_inverse", "lightcone_equivariance_residual",
    "act_auxiliary", "compose_auxiliary", "auxiliary_symplectic_residual",
    "poisson_bracket_poly",
    "MOMENTUM_MAP_SIGN", "TWO_PI",
]

TWO_PI = 2.0 * math.pi

# Global sign relating {F_v, F_w} to F_[v,w] for the lifted fields, measured
# once from {p, p sin phi} = -p cos phi and asserted stable by the suite.
MOMENTUM_MAP_SIGN = -1


# ---------------------------------------------------------------------------
# points and group elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PhasePoint:
    """Point (phi, p) on the half-cylinder; p > 0, phi reduced mod 2 pi."""

    phi: float
    p: float

    def __post_init__(self):
        if not self.p > 0:
            raise ValueError(f"p must be positive, got {self.p}")
        object.__setattr__(self, "phi", float(self.phi) % TWO_PI)
        object.__setattr__(self, "p", float(self.p))


@dataclass(frozen=True)
class CoveringElement:
    """Element (gamma, omega, l) of the l-fold covering of SO^(1,2).

    |gamma| < 1 and omega is reduced mod l*pi; the underlying SU(1,1)
    matrix has alpha = exp(i omega) / sqrt(1 - |gamma|^2), beta = alpha*gamma.
    """

    gamma: complex
    omega: float
    l: int = 1

    def __post_init__(self):
        if self.l < 1:
            raise ValueError("covering index l must be a positive integer")
        g = complex(self.gamma)
        if not abs(g) < 1:
            raise ValueError(f"|gamma| must be < 1, got {abs(g)}")
        object.__setattr__(self, "gamma", g)
        object.__setattr__(self, "omega", float(self.omega) % (self.l * math.pi))

    @property
    def is_identity(self):
        return self.gamma == 0 and self.omega == 0.0

    def su11_matrix(self) -> np.ndarray:
        """Projected SU(1,1) matrix [[alpha, beta], [conj beta, conj alpha]]."""
        aa = cmath.exp(1j * self.omega) / math.sqrt(1.0 - abs(self.gamma) ** 2)
        bb = aa * self.gamma
        return np.array([[aa, bb], [bb.conjugate(), aa.conjugate()]])


def rotation_element(l: int, dphi: float) -> CoveringElement:
    """Pure rotation moving every base angle by dphi."""
    return CoveringElement(0.0, 0.5 * l * dphi, l)


def boost_element(l: int, s: float) -> CoveringElement:
    """Boost fixing the fiber phi = 0, scaling its momentum by exp(2s)."""
    return CoveringElement(math.tanh(s), 0.0, l)


def compose(g1: CoveringElement, g2: CoveringElement) -> CoveringElement:
    """Group product; act_lifted(g1 * g2, x) = act_lifted(g1, act_lifted(g2, x)).

    The angle parameter composes through the standard disc cocycle
    omega3 = omega1 + omega2 + arg(1 + gamma1 conj(gamma2) e^{-2i omega2}),
    whose argument has positive real part, so the principal branch is smooth.
    """
    if g1.l != g2.l:
        raise ValueError("cannot compose elements of different coverings")
    w2 = cmath.exp(-2j * g2.omega)
    z = 1.0 + g1.gamma * g2.gamma.conjugate() * w2
    gamma3 = (g2.gamma + g1.gamma * w2) / z
    omega3 = g1.omega + g2.omega + cmath.phase(z)
    return CoveringElement(gamma3, omega3, g1.l)


def inverse(g: CoveringElement) -> CoveringElement:
    return CoveringElement(-g.gamma * cmath.exp(2j * g.omega), -g.omega, g.l)


def _angle_displacement(g: CoveringElement, phi: float) -> float:
    """phi' - phi, continuous in phi (the Moebius part stays below pi/l)."""
    u = 1.0 + g.gamma.conjugate() * cmath.exp(1j * g.l * phi)
    return (2.0 * g.omega - 2.0 * math.atan2(u.imag, u.real)) / g.l


def _momentum_factor(g: CoveringElement, phi: float) -> float:
    """p'/p = |alpha e^{il phi} + beta|^2, always positive."""
    u = 1.0 + g.gamma.conjugate() * cmath.exp(1j * g.l * phi)
    return (u.real * u.real + u.imag * u.imag) / (1.0 - abs(g.gamma) ** 2)


def act_lifted(g: CoveringElement, x: PhasePoint) -> PhasePoint:
    """Lifted covering-group action on the half-cylinder."""
    return PhasePoint(x.phi + _angle_displacement(g, x.phi),
                      x.p * _momentum_factor(g, x.phi))


def check_symplectic(g: CoveringElement, x: PhasePoint, h: float = 1e-5) -> float:
    """Finite-difference audit of form invariance: || J^T Omega J - Omega ||.

    The Jacobian is assembled from central differences of the angle
    displacement and momentum multiplier (the p-dependence of the map is
    linear by construction, which the audit uses as the exact p-column).
    The displacement is globally smooth, so no branch seam is ever near.
    """
    if not h > 0:
        raise ValueError("step h must be positive")
    phi, p = x.phi, x.p
    dphi = (x.phi + h) - (x.phi - h)
    d_disp = (_angle_displacement(g, phi + h) - _angle_displacement(g, phi - h)) / dphi
    d_mult = (_momentum_factor(g, phi + h) - _momentum_factor(g, phi - h)) / dphi
    m = _momentum_factor(g, phi)
    jac = np.array([[1.0 + d_disp, 0.0],
                    [p * d_mult, m]])
    omega = np.array([[0.0, 1.0], [-1.0, 0.0]])
    return float(np.abs(jac.T @ omega @ jac - omega).max())


def transport(a: PhasePoint, b: PhasePoint, l: int = 1) -> CoveringElement:
    """Covering element mapping a to b: rotation aligning the angles, then a
    boost along the fiber (base flow tan(l phi/2) -> e^t tan(l phi/2))."""
    rot_in = rotation_element(l, -a.phi)
    boost = boost_element(l, 0.5 * math.log(b.p / a.p))
    rot_out = rotation_element(l, b.phi)
    return compose(rot_out, compose(boost, rot_in))


# ---------------------------------------------------------------------------
# trigonometric polynomials and momentum functions
# ---------------------------------------------------------------------------

class TrigPoly:
    """Real trigonometric polynomial sum_j c_j e^{ij phi}, c_{-j} = conj(c_j).

    Coefficients stay exact (complex rationals) when the inputs are; the
    bracket engine below then runs with no floating error at all.
    """

    __slots__ = ("modes",)

    def __init__(self, modes=None, _checked=False):
        clean = {}
        for j, c in (modes or {}).items():
            c = coerce(c)
            if not scalar_is_zero(c):
                clean[int(j)] = c
        if any(not is_exact(c) for c in clean.values()):
            clean = {j: complex(c) for j, c in clean.items() if complex(c) != 0}
        if not _checked:
            for j, c in clean.items():
                d = clean.get(-j)
                mismatch = (d is None) or not _scalar_close(conj_scalar(c), d)
                if mismatch:
                    raise ValueError(f"not a real polynomial: modes {j}/{-j}")
        self.modes = clean

    # constructors ------------------------------------------------------
    @staticmethod
    def const(c=1):
        return TrigPoly({0: c})

    @staticmethod
    def sin(l: int):
        h = Fraction(1, 2)
        return TrigPoly({l: QC(0, -h), -l: QC(0, h)})

    @staticmethod
    def cos(l: int):
        h = QC(Fraction(1, 2))
        return TrigPoly({l: h, -l: h})

    # algebra -------------------------------------------------------------
    @property
    def support(self):
        return tuple(sorted(self.modes))

    @property
    def is_zero(self):
        return not self.modes

    @property
    def is_exact(self):
        return all(is_exact(c) for c in self.modes.values())

    def __add__(self, other):
        out = dict(self.modes)
        for j, c in other.modes.items():
            out[j] = out[j] + c if j in out else c
        return TrigPoly(out, _checked=True)

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, s):
        # real scalars only, to preserve reality
        return TrigPoly({j: s * c for j, c in self.modes.items()}, _checked=True)

    __mul__ = __rmul__

    def derivative(self):
        return TrigPoly({j: QC_I * j * c if is_exact(c) else 1j * j * c
                         for j, c in self.modes.items()}, _checked=True)

    def product(self, other):
        out = {}
        for j, cj in self.modes.items():
            for k, dk in other.modes.items():
                m = j + k
                term = cj * dk
                out[m] = out[m] + term if m in out else term
        return TrigPoly(out, _checked=True)

    def __call__(self, phi: float) -> float:
        val = sum(complex(c) * cmath.exp(1j * j * phi)
                  for j, c in self.modes.items())
        return val.real if self.modes else 0.0

    def __eq__(self, other):
        if not isinstance(other, TrigPoly):
            return NotImplemented
        if self.support != other.support:
            return False
        return all(complex(self.modes[j]) == complex(other.modes[j])
                   for j in self.modes)

    def __repr__(self):
        return f"TrigPoly({ {j: repr(c) for j, c in sorted(self.modes.items())} })"


def _scalar_close(a, b):
    if is_exact(a) and is_exact(b):
        return a == b
    return abs(complex(a) - complex(b)) <= 1e-12


@dataclass(frozen=True)
class MomentumFunction:
    """Phase-space function p * f(phi) with f a real trig polynomial."""

    base: TrigPoly

    @property
    def is_zero(self):
        return self.base.is_zero

    def __add__(self, other):
        return MomentumFunction(self.base + other.base)

    def __sub__(self, other):
        return MomentumFunction(self.base - other.base)

    def __rmul__(self, s):
        return MomentumFunction(s * self.base)

    __mul__ = __rmul__

    def __call__(self, x: PhasePoint) -> float:
        return x.p * self.base(x.phi)

    def __eq__(self, other):
        if not isinstance(other, MomentumFunction):
            return NotImplemented
        return self.base == other.base


def lift_hamiltonian(v: TrigPoly) -> MomentumFunction:
    """Momentum-map Hamiltonian p * f(phi) of the base field f(phi) d/dphi."""
    return MomentumFunction(v)


def poisson_bracket(F: MomentumFunction, G: MomentumFunction) -> MomentumFunction:
    """{p f, p g} = p (f' g - f g'), exact on mode coefficients."""
    f, g = F.base, G.base
    return MomentumFunction(f.derivative().product(g) - f.product(g.derivative()))


def hamiltonian_vector_field(F: MomentumFunction, x: PhasePoint):
    """(dphi/dt, dp/dt) = (f(phi), -p f'(phi)) of the flow generated by F."""
    return (F.base(x.phi), -x.p * F.base.derivative()(x.phi))


# ---------------------------------------------------------------------------
# admissibility
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AdmissibilityReport:
    """Outcome of the generating-set audit.

    sgp_pass iff the gcd of occurring nonzero modes is 1 (a coarser set can
    only generate 2 pi / divisor - periodic functions); a common zero of the
    base fields is a fiber fixed by the whole set, killing transitivity.
    """

    period_divisor: int
    fixed_fiber: float | None
    transitive: bool
    sgp_pass: bool


_ROOT_RESIDUAL_TOL = 1e-10


def _circle_roots(f: TrigPoly):
    """Zeros of f on [0, 2 pi), via companion-matrix roots of the Laurent
    polynomial plus Newton polish where the root is simple."""
    if f.is_zero or f.support == (0,):
        return []
    m = max(abs(j) for j in f.support)
    coeffs = np.zeros(2 * m + 1, dtype=complex)
    for j, c in f.modes.items():
        coeffs[j + m] = complex(c)
    poly = coeffs[::-1]  # np.roots wants the highest degree first
    poly = np.trim_zeros(poly, "f")
    if poly.size < 2:
        return []
    roots = np.roots(poly)
    fp = f.derivative()
    scale = max(abs(complex(c)) for c in f.modes.values())
    out = []
    for w in roots:
        if abs(abs(w) - 1.0) > 1e-6:
            continue
        phi = math.atan2(w.imag, w.real) % TWO_PI
        for _ in range(50):  # Newton, safeguarded against flat derivatives
            d = fp(phi)
            if abs(d) < 1e-8 * scale:
                break
            step = f(phi) / d
            if abs(step) > 0.5:
                break
            phi -= step
            if abs(step) < 1e-15:
                break
        phi %= TWO_PI
        if abs(f(phi)) <= _ROOT_RESIDUAL_TOL * max(1.0, scale):
            out.append(phi)
    out.sort()
    deduped = []
    for phi in out:
        if not deduped or min(abs(phi - q) for q in deduped) > 1e-6:
            deduped.append(phi)
    return deduped


def admissibility_audit(generators) -> AdmissibilityReport:
    """Audit a generating set of momentum functions p * f_i(phi).

    period_divisor is the gcd of all nonzero mode indices (0-modes ignored);
    the fixed fiber, if any, is a common zero of the base fields found by
    root isolation; transitivity additionally needs a rotation part (some
    generator with a nonzero 0-mode).
    """
    gens = list(generators)
    if not gens:
        raise ValueError("generators must be nonempty")
    modes = sorted({abs(j) for F in gens for j in F.base.support if j != 0})
    divisor = reduce(math.gcd, modes, 0)

    fixed = None
    bases = [F.base for F in gens if not F.base.is_zero]
    if not bases:
        fixed = 0.0  # every generator vanishes: all fibers are fixed
    else:
        candidates = []
        for f in bases:
            candidates.extend(_circle_roots(f))
        for phi in sorted(candidates):
            scales = [max(abs(complex(c)) for c in f.modes.values()) for f in bases]
            if all(abs(f(phi)) <= _ROOT_RESIDUAL_TOL * max(1.0, s)
                   for f, s in zip(bases, scales)):
                fixed = phi
                break

    has_rotation = any(0 in F.base.support for F in gens)
    transitive = fixed is None and has_rotation
    return AdmissibilityReport(period_divisor=divisor, fixed_fiber=fixed,
                               transitive=transitive, sgp_pass=(divisor == 1))


# ---------------------------------------------------------------------------
# light-cone identification
# ---------------------------------------------------------------------------

def lightcone_map(x: PhasePoint, l: int = 1):
    """(x0, x1, x2) = (p, Re p e^{-il phi}, Im p e^{-il phi}); null with x0 > 0."""
    w = x.p * cmath.exp(-1j * l * x.phi)
    return np.array([x.p, w.real, w.imag])


def lightcone_inverse(v, l: int = 1) -> PhasePoint:
    """Preimage with phi in [0, 2 pi / l); rejects non-null or x0 <= 0 input."""
    x0, x1, x2 = (float(c) for c in v)
    if not x0 > 0:
        raise ValueError("light-cone point must have x0 > 0")
    if abs(x0 * x0 - x1 * x1 - x2 * x2) > 1e-9 * x0 * x0:
        raise ValueError("input is not on the light cone")
    phi = (-math.atan2(x2, x1) / l) % (TWO_PI / l)
    return PhasePoint(phi, x0)


def lightcone_equivariance_residual(g: CoveringElement, x: PhasePoint) -> float:
    """Compare the lifted action with X -> A X A^dagger on the cone."""
    x0, x1, x2 = lightcone_map(x, g.l)
    X = np.array([[x0, x1 - 1j * x2], [x1 + 1j * x2, x0]])
    A = g.su11_matrix()
    Y = A @ X @ A.conj().T
    y = lightcone_map(act_lifted(g, x), g.l)
    target = np.array([Y[0, 0].real, Y[1, 0].real, Y[1, 0].imag])
    return float(np.abs(y - target).max())


# ---------------------------------------------------------------------------
# auxiliary classical models
# ---------------------------------------------------------------------------

def act_auxiliary(model: str, g, x):
    """Auxiliary group actions.

    affine_halfline : g = (a, lam), lam > 0, acting on (q, p), q > 0, by
                      (q, p) -> (lam q, p / lam + a).
    plane_punctured : g = (alpha, beta), beta != 0 complex, acting on (z, p),
                      z != 0, by (z, p) -> (beta z, p / beta + alpha); the
                      complex momentum is p = p_x - i p_y so the map is
                      symplectic on (x, y, p_x, p_y).
    """
    if model == "affine_halfline":
        a, lam = g
        q, p = x
        if not lam > 0:
            raise ValueError("affine dilation factor must be positive")
        if not q > 0:
            raise ValueError("affine_halfline needs q > 0")
        return (lam * q, p / lam + a)
    if model == "plane_punctured":
        alpha, beta = complex(g[0]), complex(g[1])
        z, p = complex(x[0]), complex(x[1])
        if beta == 0:
            raise ValueError("beta must be nonzero")
        if z == 0:
            raise ValueError("plane_punctured needs z != 0")
        return (beta * z, p / beta + alpha)
    raise ValueError(f"unknown auxiliary model {model!r}")


def compose_auxiliary(model: str, g1, g2):
    """Product compatible with act_auxiliary as a left action."""
    if model == "affine_halfline":
        (a1, l1), (a2, l2) = g1, g2
        return (a1 + a2 / l1, l1 * l2)
    if model == "plane_punctured":
        (a1, b1), (a2, b2) = g1, g2
        return (a1 + a2 / b1, b1 * b2)
    raise ValueError(f"unknown auxiliary model {model!r}")


def auxiliary_symplectic_residual(model: str, g, x, h: float = 1e-5) -> float:
    """Central-difference || J^T Omega J - Omega || for an auxiliary action."""
    if model == "affine_halfline":
        def flat(v):
            return np.array(act_auxiliary(model, g, (v[0], v[1])))
        x0 = np.array(x, dtype=float)
        n = 2
    elif model == "plane_punctured":
        def flat(v):
            z, p = act_auxiliary(model, g, (v[0] + 1j * v[1], v[2] - 1j * v[3]))
            return np.array([z.real, z.imag, p.real, -p.imag])
        z, p = complex(x[0]), complex(x[1])
        x0 = np.array([z.real, z.imag, p.real, -p.imag])
        n = 4
    else:
        raise ValueError(f"unknown auxiliary model {model!r}")
    jac = np.zeros((n, n))
    for i in range(n):
        e = np.zeros(n)
        e[i] = h
        jac[:, i] = (flat(x0 + e) - flat(x0 - e)) / (2 * h)
    half = n // 2
    omega = np.block([[np.zeros((half, half)), np.eye(half)],
                      [-np.eye(half), np.zeros((half, half))]])
    return float(np.abs(jac.T @ omega @ jac - omega).max())


def poisson_bracket_poly(F: dict, G: dict) -> dict:
    """Exact bracket of polynomials in one (q, p) pair.

    Polynomials are {(i, j): coeff} for q^i p^j; the bracket is
    {q^a p^b, q^c p^d} = (a d - b c) q^{a+c-1} p^{b+d-1}.
    Used for the auxiliary models, e.g. {q, q p} = q.
    """
    out = {}
    for (a, b), cf in F.items():
        for (c, d), cg in G.items():
            w = (a * d - b * c)
            if w == 0:
                continue
            key = (a + c - 1, b + d - 1)
            term = w * cf * cg
            out[key] = out.get(key, 0) + term
    return {k: v for k, v in out.items() if v != 0}
