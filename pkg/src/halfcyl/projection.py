"""Projection quantization of the cylinder and a half-line desk demo.

The theta-family quantization of T*S^1 lives on the quasi-periodic modes
f_{theta,m} = exp(i (m + theta) phi), m in Z, on which the momentum is
diagonal with eigenvalues hbar (m + theta).  Restricting to the maximal
subspace with positive momentum (m >= 0 for theta in (0,1]) is implemented
by a pair of partial isometries pi and iota; operators are transported as
pi o O o iota.  A projected unitary is only isometric: the shift acquires
a rank-one defect on the lowest state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .report import CheckReport, check, metric
from .rep import TruncatedOperator, interior_residual

__all__ = [
    "ThetaSpace", "ProjectedSpace",
    "build_theta_quantization", "project_positive", "isometry_report",
    "halfline_demo", "halfline_commutator_residual",
]


@dataclass(frozen=True)
class ThetaSpace:
    """Finite window m = -M..M of the theta-quantized cylinder."""

    theta: float
    M: int
    hbar: float = 1.0

    def __post_init__(self):
        if not 0 < self.theta <= 1:
            raise ValueError(f"theta must lie in (0, 1], got {self.theta}")
        if self.M < 8:
            raise ValueError(f"window half-width M must be >= 8, got {self.M}")
        if not self.hbar > 0:
            raise ValueError("hbar must be positive")

    @property
    def dim(self):
        return 2 * self.M + 1

    @property
    def modes(self):
        return np.arange(-self.M, self.M + 1)

    # -- operators on the window ---------------------------------------
    def momentum(self) -> TruncatedOperator:
        """p f_{theta,m} = hbar (m + theta) f_{theta,m}."""
        return TruncatedOperator(np.diag(self.hbar * (self.modes + self.theta)), 0)

    def shift(self) -> TruncatedOperator:
        """U f_{theta,m} = f_{theta,m+1} (multiplication by exp(i phi))."""
        mat = np.zeros((self.dim, self.dim))
        idx = np.arange(self.dim - 1)
        mat[idx + 1, idx] = 1.0
        return TruncatedOperator(mat, 1)

    def sin_op(self) -> TruncatedOperator:
        u = self.shift()
        return -0.5j * (u - u.adjoint())

    def cos_op(self) -> TruncatedOperator:
        u = self.shift()
        return 0.5 * (u + u.adjoint())


def build_theta_quantization(theta: float, M: int, hbar: float = 1.0) -> ThetaSpace:
    """Window of the theta-quantization; see ThetaSpace for the operators."""
    return ThetaSpace(theta=theta, M=M, hbar=hbar)


@dataclass(frozen=True)
class ProjectedSpace:
    """Positive-momentum subspace spanned by f_{theta,m}, m >= m_min.

    ``iota`` includes the subspace into the window, ``pi`` projects back;
    pi o iota is the identity on the subspace and iota o pi the spectral
    projector on the parent, both exactly (integer index maps).
    """

    parent: ThetaSpace
    m_min: int

    def __post_init__(self):
        if not 0 <= self.m_min <= self.parent.M // 2:
            raise ValueError(
                f"m_min must lie in [0, M/2] = [0, {self.parent.M // 2}],"
                f" got {self.m_min}")

    @property
    def dim(self):
        return self.parent.M - self.m_min + 1

    @property
    def parent_indices(self):
        """Parent window index of each projected basis vector."""
        return np.arange(self.m_min + self.parent.M, 2 * self.parent.M + 1)

    def iota(self) -> np.ndarray:
        mat = np.zeros((self.parent.dim, self.dim))
        mat[self.parent_indices, np.arange(self.dim)] = 1.0
        return mat

    def pi(self) -> np.ndarray:
        return self.iota().T

    def projector(self) -> np.ndarray:
        """P = iota o pi on the parent window (Theta(p) for m_min = 0)."""
        return self.iota() @ self.pi()

    def project(self, op: TruncatedOperator) -> TruncatedOperator:
        """Transported operator pi o O o iota."""
        return TruncatedOperator(self.pi() @ op.matrix @ self.iota(), op.reach)

    # -- the transported elementary operators ---------------------------
    def momentum(self) -> TruncatedOperator:
        return self.project(self.parent.momentum())

    def shift(self) -> TruncatedOperator:
        return self.project(self.parent.shift())

    def lowest_projector(self) -> np.ndarray:
        mat = np.zeros((self.dim, self.dim))
        mat[0, 0] = 1.0
        return mat


def project_positive(space: ThetaSpace, m_min: int = 0) -> ProjectedSpace:
    """Restrict to m >= m_min; m_min = 0 is the maximal positive subspace.

    For theta in (0, 1] the set {m : hbar (m + theta) > 0} is exactly
    {m >= 0}, so m_min = 0 reproduces the spectral projector of the
    positive-momentum inequality.
    """
    return ProjectedSpace(parent=space, m_min=m_min)


def isometry_report(ps: ProjectedSpace) -> CheckReport:
    """Check the partial-isometry identities of the projected shift."""
    rep = CheckReport(meta={"theta": ps.parent.theta, "m_min": ps.m_min})
    u = ps.shift()
    eye = np.eye(ps.dim)
    p0 = ps.lowest_projector()

    uu = u.adjoint() @ u
    rep.add(check("projected_shift_isometry", "U*U = 1",
                  interior_residual(uu, eye), 1e-12))
    rep.add(check("projected_shift_defect", "UU* = 1 - P_min",
                  float(np.abs((u @ u.adjoint()).matrix - (eye - p0)).max()),
                  1e-12))
    defect = eye - (u @ u.adjoint()).matrix
    rank = int(np.linalg.matrix_rank(defect, tol=1e-9))
    rep.add(check("defect_rank_one", "rank(1 - UU*) = 1",
                  abs(rank - 1), 0))
    rep.add(check("defect_on_lowest", "(1 - UU*) e_0 = e_0",
                  float(np.abs(defect[:, 0] - p0[:, 0]).max()), 1e-12))

    # hermiticity survives the projection for the sin/cos multiplications
    for name, op in (("sin", ps.parent.sin_op()), ("cos", ps.parent.cos_op())):
        m = ps.project(op).matrix
        rep.add(check(f"projected_{name}_hermitean", f"{name} = {name}*",
                      float(np.abs(m - m.conj().T).max()), 1e-12))

    # before projection the shift is unitary on the window interior
    pu = ps.parent.shift()
    rep.add(check("parent_shift_unitary", "UU* = 1 (parent interior)",
                  interior_residual(pu @ pu.adjoint(), np.eye(ps.parent.dim),
                                    trim_bottom=2), 1e-12))
    return rep


# ---------------------------------------------------------------------------
# half-line demo on a periodic log grid
# ---------------------------------------------------------------------------

def _log_grid_operators(n_points: int, box_width: float, hbar: float):
    """Grid in x = ln q (measure dq/q = counting), q = e^x positive.

    The dilation by one grid step is the exact cyclic shift; the scaling
    generator is the central-difference -i hbar d/dx, hermitean including
    the wrap.  The wrap-around contaminates exactly the two seam rows of
    the commutator with q, which interior assertions exclude.
    """
    h = box_width / n_points
    x = -0.5 * box_width + h * np.arange(n_points)
    q = np.diag(np.exp(x))
    fwd = np.roll(np.eye(n_points), 1, axis=0)   # psi(x) -> psi(x - h) rows
    dil = fwd                                    # permutation: exactly unitary
    diff = (fwd - fwd.T) / (2 * h)
    qp = -1j * hbar * (fwd.T - fwd) / (2 * h)    # -i hbar d/dx, central
    mom = np.diag(np.exp(-x)) @ qp               # -i hbar d/dq, the symptom
    return x, h, q, dil, qp, mom


def halfline_commutator_residual(n_points: int, box_width: float,
                                 hbar: float = 1.0) -> float:
    """Interior residual of [q, qp] - i hbar q on a smooth test function."""
    x, h, q, dil, qp, _ = _log_grid_operators(n_points, box_width, hbar)
    psi = np.exp(np.cos(2 * np.pi * x / box_width))
    resid = (q @ qp - qp @ q) @ psi - 1j * hbar * (q @ psi)
    inner = slice(1, n_points - 1)  # drop the two seam rows
    return float(np.abs(resid[inner]).max() / np.abs(psi).max())


def halfline_demo(n_points: int = 128, box_width: float = 4.0,
                  hbar: float = 1.0) -> CheckReport:
    """Positive-operator restriction of the line, on a periodic log grid.

    Exhibits: a positive-definite position operator, dilations as exact
    unitaries (their flow respects the half-line, unlike translations),
    a hermitean scaling generator, the canonical commutator at measured
    second order, and the hermiticity defect of the plain momentum as a
    reported symptom.
    """
    if n_points < 64:
        raise ValueError(f"n_points must be >= 64, got {n_points}")
    x, h, q, dil, qp, mom = _log_grid_operators(n_points, box_width, hbar)
    rep = CheckReport(meta={"n_points": n_points, "box_width": box_width,
                            "hbar": hbar})

    rep.add(check("position_positive", "spec(q) = e^x > 0",
                  float(max(0.0, -np.diag(q).real.min())), 0.0,
                  note=f"min eigenvalue {np.diag(q).real.min():.3e}"))
    rep.add(check("dilation_unitary", "U*U = 1 exactly",
                  float(np.abs(dil.T @ dil - np.eye(n_points)).max()), 0.0))
    rep.add(check("scaling_hermitean", "(qp)* = qp exactly",
                  float(np.abs(qp - qp.conj().T).max()), 0.0))

    r1 = halfline_commutator_residual(n_points, box_width, hbar)
    r2 = halfline_commutator_residual(2 * n_points, box_width, hbar)
    order = math.log2(r1 / r2)
    rep.add(check("commutator_order", "[q, qp] = i hbar q at order 2",
                  abs(order - 2.0), 0.2,
                  note=f"residuals {r1:.3e} -> {r2:.3e}, order {order:.3f}"))
    rep.add(metric("commutator_residual", "[q, qp] - i hbar q", r1))
    rep.add(metric("momentum_hermiticity_defect", "p* - p on the half-line",
                   float(np.abs(mom - mom.conj().T).max()),
                   note="boundary symptom: reported, never asserted"))
    return rep
