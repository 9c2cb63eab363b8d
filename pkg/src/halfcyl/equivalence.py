"""Bridge between the projected cylinder picture and the lowest-weight series.

The identification is k = theta + m_min with basis map
f_{theta, n + m_min} <-> e_n: the projected momentum becomes hbar H, the
projected shift becomes the phase operator U = T+ (T- T+)^{-1/2}, and
T+ is recovered from (p, U) as -(1/hbar) sqrt((p + (k-1) hbar)(p - k hbar)) U.
The identification is asserted in the creation_plus gauge, where U is the
plain nonnegative shift; the (-1)^n similarity carries everything to the
disc_minus gauge.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .projection import build_theta_quantization, project_positive
from .report import CheckReport, check
from .rep import (GeneratorSet, RepConfig, TruncatedOperator, build_generators,
                  gram_weights, interior_residual, tol)

__all__ = [
    "Identification", "identify", "identification_report",
    "phase_operator", "tplus_from_phase", "sincos_operators",
    "conjugate_realizations", "normalization_diagonal",
]


@dataclass(frozen=True)
class Identification:
    """Parameters (theta, m_min) matched to the weight k = theta + m_min."""

    theta: float
    m_min: int
    k: float

    def theta_mode(self, n: int) -> int:
        """Cylinder mode index paired with the weight-basis index n."""
        return n + self.m_min

    def basis_map(self, count: int) -> np.ndarray:
        return np.arange(self.m_min, self.m_min + count)


def identify(theta: float, m_min: int) -> Identification:
    """The Hilbert-space identification theta + m_min = k."""
    if not 0 < theta <= 1:
        raise ValueError(f"theta must lie in (0, 1], got {theta}")
    if m_min < 0:
        raise ValueError(f"m_min must be nonnegative, got {m_min}")
    return Identification(theta=theta, m_min=int(m_min), k=theta + m_min)


def phase_operator(gs: GeneratorSet) -> TruncatedOperator:
    """U = T+ (T- T+)^{-1/2}, with the entrywise root of the diagonal.

    T- T+ is diagonal with entries (2k + n)(n + 1), bounded below by 2k > 0
    on the interior, so the inverse root is well defined; the zero diagonal
    entry produced by the cutoff at n = N is nulled rather than inverted.
    In the creation_plus gauge U is the unit shift e_n -> e_{n+1}; in either
    gauge U*U = 1 and UU* = 1 - P_0 hold on the interior.
    """
    prod = (gs.Tminus @ gs.Tplus).matrix
    d = np.diag(prod).real.copy()
    off = np.abs(prod - np.diag(np.diag(prod))).max()
    if off > tol(gs.config.N):
        raise ValueError(f"T- T+ is not diagonal (off-diagonal {off:.2e})")
    if d[:-1].min() <= 0:
        raise ValueError("T- T+ must be positive on the interior (needs k > 0)")
    inv_root = np.where(d > 0, 1.0 / np.sqrt(np.where(d > 0, d, 1.0)), 0.0)
    return TruncatedOperator(gs.Tplus.matrix @ np.diag(inv_root), 1)


def tplus_from_phase(gs: GeneratorSet, uhat: TruncatedOperator) -> TruncatedOperator:
    """Reconstruct T+ = -(1/hbar) sqrt((p + (k-1) hbar)(p - k hbar)) U.

    ``uhat`` is the nonnegative unit shift (the projected cylinder shift or
    the creation_plus phase operator).  The written minus sign reproduces
    the disc_minus T+; for a creation_plus generator set the sign is
    absorbed into the gauge.
    """
    cfg = gs.config
    p = cfg.hbar * (cfg.k + np.arange(cfg.N + 1, dtype=float))
    fac = (p + (cfg.k - 1.0) * cfg.hbar) * (p - cfg.k * cfg.hbar)
    root = np.sqrt(np.maximum(fac, 0.0))
    sign = -1.0 if cfg.phase_convention == "disc_minus" else 1.0
    mat = sign / cfg.hbar * (np.diag(root) @ uhat.matrix)
    return TruncatedOperator(mat, uhat.reach)


def sincos_operators(gs: GeneratorSet):
    """Hermitean sin/cos built from the phase operator, with their anomalies.

    Returns (sin, cos, report).  The checked identities: both operators are
    hermitean tridiagonals; sin^2 + cos^2 = 1 - P_0/2 and
    [sin, cos] = (i/2) P_0 (anomalies confined to the ground state); the
    commutators [H, sin] = -i cos and [H, cos] = i sin hold identically.
    """
    cfg = gs.config
    u = phase_operator(gs)
    s = -0.5j * (u - u.adjoint())
    c = 0.5 * (u + u.adjoint())
    eye = np.eye(cfg.N + 1)
    p0 = np.zeros_like(eye)
    p0[0, 0] = 1.0

    rep = CheckReport(meta={"k": cfg.k, "N": cfg.N,
                            "phase_convention": cfg.phase_convention})
    rep.add(check("sin_hermitean", "s = s*",
                  float(np.abs(s.matrix - s.matrix.conj().T).max()), 1e-14))
    rep.add(check("cos_hermitean", "c = c*",
                  float(np.abs(c.matrix - c.matrix.conj().T).max()), 1e-14))
    rep.add(check("sincos_square_anomaly", "s^2 + c^2 = 1 - P_0/2",
                  interior_residual(s @ s + c @ c, eye - 0.5 * p0), 1e-10))
    rep.add(check("sincos_commutator_anomaly", "[s, c] = (i/2) P_0",
                  interior_residual(s @ c - c @ s, 0.5j * p0), 1e-10))
    rep.add(check("rotation_flow_sin", "[H, s] = -i c",
                  interior_residual((gs.H @ s - s @ gs.H) + 1j * c), 1e-10))
    rep.add(check("rotation_flow_cos", "[H, c] = i s",
                  interior_residual((gs.H @ c - c @ gs.H) - 1j * s), 1e-10))
    return s, c, rep


def normalization_diagonal(config: RepConfig) -> np.ndarray:
    """c_n = sqrt(Gamma(2k+n) / (Gamma(2k) Gamma(n+1))) = 1/sqrt(w_n)."""
    return 1.0 / np.sqrt(gram_weights(config))


def conjugate_realizations(config: RepConfig) -> CheckReport:
    """Diagonal similarity between the boundary and Hardy realizations.

    With D = diag(c_n) the orthonormal-basis (Hardy) matrices are
    D^{-1} (boundary) D: passing from the unnormalized Fourier basis to the
    normalized one rescales column n by c_n and row m by 1/c_m.  T0 is
    diagonal and hence identical in both realizations; at k = 1/2 all the
    weights are 1 and the realizations coincide outright.
    """
    boundary = build_generators("boundary", config)
    hardy = build_generators("hardy", config)
    c = normalization_diagonal(config)
    d_inv_md = lambda m: (m.T / c).T * c  # D^{-1} M D without forming D

    rep = CheckReport(meta={"k": config.k, "N": config.N})
    budget = tol(config.N)
    for name, b_op, h_op in (("H", boundary.H, hardy.H),
                             ("T+", boundary.Tplus, hardy.Tplus),
                             ("T-", boundary.Tminus, hardy.Tminus)):
        conj = TruncatedOperator(d_inv_md(np.asarray(b_op.matrix)), b_op.reach)
        rep.add(check(f"conjugation_{name}", f"D^-1 {name}_boundary D = {name}_hardy",
                      interior_residual(conj - h_op), budget))
    rep.add(check("T0_invariant", "T0 identical in both realizations",
                  float(np.abs(boundary.T0.matrix - hardy.T0.matrix).max()), 0.0))
    if config.k == 0.5:
        rep.add(check("identity_similarity_at_half", "D = 1 at k = 1/2",
                      float(np.abs(c - 1.0).max()), 0.0))
    return rep


def identification_report(ident: Identification, M: int = 48, N: int = 32,
                          hbar: float = 1.0) -> CheckReport:
    """Full-diagram commutativity under the k = theta + m_min identification.

    Checks that the projected momentum matches hbar H entrywise, and that
    the projected shift matches the phase operator entrywise, over the
    common index window (both in the creation_plus gauge).
    """
    space = build_theta_quantization(ident.theta, M, hbar)
    ps = project_positive(space, ident.m_min)
    cfg = RepConfig(k=ident.k, N=N, hbar=hbar, phase_convention="creation_plus")
    gs = build_generators("fock", cfg)

    # stay at least 4 indices clear of the window's truncation edge
    n = max(min(ps.dim - 4, cfg.N + 1), 1)
    p_proj = ps.momentum().matrix[:n, :n]
    p_rep = (hbar * gs.H.matrix)[:n, :n]
    u_proj = ps.shift().matrix[:n, :n]
    u_rep = phase_operator(gs).matrix[:n, :n]

    rep = CheckReport(meta={"theta": ident.theta, "m_min": ident.m_min,
                            "k": ident.k, "M": M, "N": N})
    rep.add(check("spectra_match", "projected p = hbar H entrywise",
                  float(np.abs(p_proj - p_rep).max()), 1e-12))
    rep.add(check("diagram_commutes", "projected U = T+ (T- T+)^{-1/2}",
                  float(np.abs(u_proj[:n - 1, :n - 1] - u_rep[:n - 1, :n - 1]).max()),
                  1e-12))
    return rep
