"""Batch verification: run every module's check suite over a config grid.

Each grid cell (one k or one theta) is a pure function of the config and
the seed, so cells are independent and could run in parallel; the report
assembly is a single sequential reduction.  Identical config and seed give
a byte-identical JSON report up to the timestamp header.
"""

from __future__ import annotations

import cmath
import datetime
import math
from dataclasses import dataclass, field, asdict

import numpy as np

from . import classical as cl
from . import lie
from .equivalence import (conjugate_realizations, identification_report, identify,
                          phase_operator, sincos_operators, tplus_from_phase)
from .projection import halfline_demo, isometry_report, build_theta_quantization, project_positive
from .report import CheckReport, check, metric
from .rep import (RepConfig, build_generators, casimir, commutator,
                  exp_generator, gram_weights, interior_residual,
                  rotation_rep, spectrum_p, toeplitz_measure_test, tol)

__all__ = ["SuiteConfig", "ConfigError", "run_suite", "emit_spectrum",
           "DEFAULT_TOLERANCES", "PROFILES"]

PROFILES = ("physical", "full")

DEFAULT_TOLERANCES = {
    "ladder": 1e-7,
    "casimir": 1e-9,
    "phase": 1e-12,
    "tplus": 1e-8,
    "sincos": 1e-10,
    "conjugation": 1e-7,
    "group_law": 1e-9,
    "symplectic": 1e-6,
    "transport": 1e-9,
    "lightcone": 1e-9,
    "identification": 1e-12,
    "derivative": 1e-8,
}


class ConfigError(ValueError):
    """Raised for schema violations in a suite config (CLI exit code 2)."""


@dataclass(frozen=True)
class SuiteConfig:
    """Grid and tolerances of one verification run.

    The ``physical`` profile keeps only weights k in (0, 1] and projects
    with m_min = 0 (the maximal positive subspace); ``full`` runs every
    configured weight and also exercises m_min > 0 identifications.
    """

    k_values: tuple = (0.25, 0.5, 1.0, 1.5, 3.0)
    theta_values: tuple = (0.25, 0.5, 1.0)
    N: int = 64
    M: int = 48
    hbar: float = 1.0
    tolerances: dict = field(default_factory=dict)
    seed: int = 0
    profile: str = "physical"

    def __post_init__(self):
        if self.profile not in PROFILES:
            raise ConfigError(f"profile must be one of {PROFILES}, got {self.profile!r}")
        for k in self.k_values:
            if not k > 0:
                raise ConfigError("k must be positive")
        for t in self.theta_values:
            if not 0 < t <= 1:
                raise ConfigError(f"theta must lie in (0, 1], got {t}")
        if self.N < 4:
            raise ConfigError(f"N must be >= 4, got {self.N}")
        if self.M < 8:
            raise ConfigError(f"M must be >= 8, got {self.M}")
        if not self.hbar > 0:
            raise ConfigError("hbar must be positive")
        if not isinstance(self.seed, int):
            raise ConfigError("seed must be an integer")
        unknown = set(self.tolerances) - set(DEFAULT_TOLERANCES)
        if unknown:
            raise ConfigError(f"unknown tolerance names: {sorted(unknown)}")
        merged = dict(DEFAULT_TOLERANCES)
        merged.update({k: float(v) for k, v in self.tolerances.items()})
        object.__setattr__(self, "tolerances", merged)
        object.__setattr__(self, "k_values", tuple(float(k) for k in self.k_values))
        object.__setattr__(self, "theta_values", tuple(float(t) for t in self.theta_values))

    @property
    def active_k_values(self):
        if self.profile == "physical":
            return tuple(k for k in self.k_values if k <= 1.0)
        return self.k_values

    @staticmethod
    def from_dict(raw: dict) -> "SuiteConfig":
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
        known = {"k_values", "theta_values", "N", "M", "hbar", "tolerances",
                 "seed", "profile"}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        kwargs = dict(raw)
        for key in ("k_values", "theta_values"):
            if key in kwargs:
                kwargs[key] = tuple(kwargs[key])
        try:
            return SuiteConfig(**kwargs)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    def echo(self) -> dict:
        d = asdict(self)
        d["k_values"] = list(self.k_values)
        d["theta_values"] = list(self.theta_values)
        return d


# ---------------------------------------------------------------------------
# grid cells
# ---------------------------------------------------------------------------

def _lie_cell(rng) -> list:
    out = []
    worst_dim = 0
    for l in range(1, 9):
        res = lie.witt_closure([lie.L(-l), lie.L(0), lie.L(l)])
        if not (res.closed and res.dimension == 3):
            worst_dim = -1
            break
        worst_dim = max(worst_dim, res.dimension)
    out.append(check("witt_sl2_towers", "<L_-l, L_0, L_l> closed, dim 3, l <= 8",
                     0.0 if worst_dim == 3 else 1.0, 0.0))
    two = lie.witt_closure([lie.L(0), lie.L(2)])
    out.append(check("witt_two_dim", "{L_0, L_2} closed, dim 2",
                     0.0 if (two.closed and two.dimension == 2) else 1.0, 0.0))
    bad = lie.witt_closure([lie.L(1), lie.L(2)])
    out.append(check("witt_divergent", "{L_1, L_2} escapes at mode 3",
                     0.0 if (not bad.closed and bad.witness_mode == 3) else 1.0, 0.0))

    worst = 0.0
    for _ in range(200):
        elems = []
        for _ in range(3):
            modes = rng.integers(-5, 6, size=2)
            coeffs = rng.integers(-4, 5, size=2)
            elems.append(lie.WittElement({int(m): int(c) for m, c in zip(modes, coeffs)}))
        a, b, c = elems
        jac = (lie.witt_bracket(a, lie.witt_bracket(b, c))
               + lie.witt_bracket(b, lie.witt_bracket(c, a))
               + lie.witt_bracket(c, lie.witt_bracket(a, b)))
        anti = lie.witt_bracket(a, b) + lie.witt_bracket(b, a)
        if not (jac.is_zero and anti.is_zero):
            worst = 1.0
    out.append(check("witt_jacobi_exact", "Jacobi and antisymmetry, 200 triples",
                     worst, 0.0))

    basis = (lie.So12Element(1, 0, 0), lie.So12Element(0, 1, 0), lie.So12Element(0, 0, 1))
    kform = np.array([[lie.killing_form(a, b) for b in basis] for a in basis])
    out.append(check("killing_signature", "tr(ad ad) = 2 diag(-1, 1, 1)",
                     float(np.abs(kform - 2 * np.diag([-1.0, 1, 1])).max()), 1e-12))
    worst = 0.0
    for target in ("sl2r", "su11"):
        for _ in range(50):
            a = lie.So12Element(*rng.normal(size=3))
            b = lie.So12Element(*rng.normal(size=3))
            lhs = lie.algebra_isomorphism(target, lie.so12_bracket(a, b))
            ma, mb = (lie.algebra_isomorphism(target, x) for x in (a, b))
            worst = max(worst, float(np.abs(lhs - (ma @ mb - mb @ ma)).max()))
    out.append(check("isomorphism_homomorphism", "2x2 images respect brackets",
                     worst, 1e-12))
    dict_res = 0.0
    for l in (1, 2, 3):
        maps = [lie.vector_field_to_so12(l, v)
                for v in ((1 / l) * lie.witt_T(), (1 / l) * lie.witt_S(l),
                          (1 / l) * lie.witt_C(l))]
        want = np.eye(3)
        got = np.array([m.as_array() for m in maps])
        dict_res = max(dict_res, float(np.abs(got - want).max()))
    out.append(check("so12_dictionary", "T/l, S_l/l, C_l/l -> T0, T1, T2",
                     dict_res, 1e-15))
    return out


def _classical_cell(cfg: SuiteConfig, rng) -> list:
    t = cfg.tolerances
    out = []

    def rand_element(l):
        r = 0.7 * math.sqrt(rng.uniform())
        th = rng.uniform(0, 2 * math.pi)
        return cl.CoveringElement(r * cmath.exp(1j * th),
                                  rng.uniform(0, l * math.pi), l)

    def rand_point():
        return cl.PhasePoint(rng.uniform(0, 2 * math.pi),
                             math.exp(rng.uniform(-2, 2)))

    worst_law = worst_symp = worst_trans = worst_cone = worst_null = 0.0
    for _ in range(100):
        l = int(rng.integers(1, 4))
        g1, g2, x = rand_element(l), rand_element(l), rand_point()
        a = cl.act_lifted(g1, cl.act_lifted(g2, x))
        b = cl.act_lifted(cl.compose(g1, g2), x)
        dphi = abs((a.phi - b.phi + math.pi) % (2 * math.pi) - math.pi)
        worst_law = max(worst_law, dphi, abs(a.p - b.p) / max(1.0, b.p))
        worst_symp = max(worst_symp, cl.check_symplectic(g1, x))
        y = rand_point()
        g = cl.transport(x, y, l)
        z = cl.act_lifted(g, x)
        dphi = abs((z.phi - y.phi + math.pi) % (2 * math.pi) - math.pi)
        worst_trans = max(worst_trans, dphi, abs(z.p - y.p) / y.p)
        worst_cone = max(worst_cone, cl.lightcone_equivariance_residual(g1, x))
        v = cl.lightcone_map(x, l)
        worst_null = max(worst_null, abs(v[0] ** 2 - v[1] ** 2 - v[2] ** 2))
    out.append(check("group_law", "act(g1 g2) = act(g1) act(g2), 100 draws",
                     worst_law, t["group_law"]))
    out.append(check("symplectic_random", "finite-difference J^T Omega J = Omega",
                     worst_symp, t["symplectic"]))
    rot_res = max(cl.check_symplectic(cl.rotation_element(l, 1.234 + l), rand_point())
                  for l in (1, 2, 3))
    out.append(check("symplectic_rotation", "rigid shifts audit to < 1e-10",
                     rot_res, 1e-10))
    out.append(check("transport_roundtrip", "transport(a, b) maps a to b",
                     worst_trans, t["transport"]))
    out.append(check("lightcone_equivariance", "cone map intertwines A X A^dag",
                     worst_cone, t["lightcone"]))
    out.append(check("lightcone_null", "x0^2 - x1^2 - x2^2 = 0",
                     worst_null, 1e-12))

    eff = 0.0
    for l in (2, 3):
        for j in range(1, l):
            g = cl.rotation_element(l, 2 * math.pi * j / l)
            moved = abs((cl.act_lifted(g, cl.PhasePoint(0.3, 1.0)).phi - 0.3
                         + math.pi) % (2 * math.pi) - math.pi)
            if moved < 1e-6:
                eff = 1.0
        g = cl.rotation_element(l, 2 * math.pi)
        moved = abs((cl.act_lifted(g, cl.PhasePoint(0.3, 1.0)).phi - 0.3
                     + math.pi) % (2 * math.pi) - math.pi)
        eff = max(eff, moved)
    out.append(check("covering_effectiveness", "2 pi j moves points, 2 pi l does not",
                     eff, 1e-9))

    stab = cl.lift_hamiltonian(cl.TrigPoly.cos(2) - cl.TrigPoly.const(1))
    worst = max(max(abs(v) for v in cl.hamiltonian_vector_field(stab, cl.PhasePoint(0.0, p)))
                for p in (0.5, 1.0, 7.25))
    out.append(check("stabilizer_fixes_fiber", "p(cos 2 phi - 1) flow vanishes at phi = 0",
                     worst, 0.0))

    sign_stable = 0.0
    fields = [cl.TrigPoly.const(1), cl.TrigPoly.sin(1), cl.TrigPoly.cos(1)]
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            f, g = fields[i], fields[j]
            vf = f.product(g.derivative()) - g.product(f.derivative())
            got = cl.poisson_bracket(cl.lift_hamiltonian(f), cl.lift_hamiltonian(g))
            want = cl.MOMENTUM_MAP_SIGN * cl.lift_hamiltonian(vf)
            if got != want:
                sign_stable = 1.0
    out.append(check("momentum_map_sign", "{F_v, F_w} = sigma F_[v,w], sigma = -1",
                     sign_stable, 0.0))

    sgp = 0.0
    for l in (1, 2, 3, 4):
        gens = [cl.lift_hamiltonian(f) for f in
                (cl.TrigPoly.const(1), cl.TrigPoly.sin(l), cl.TrigPoly.cos(l))]
        rep = cl.admissibility_audit(gens)
        if rep.sgp_pass != (l == 1) or not rep.transitive or rep.fixed_fiber is not None:
            sgp = 1.0
    out.append(check("sgp_audit", "SGP passes iff the mode gcd is 1",
                     sgp, 0.0))
    fiber = cl.admissibility_audit([
        cl.lift_hamiltonian(cl.TrigPoly.cos(1)),
        cl.lift_hamiltonian(cl.TrigPoly.const(1) + cl.TrigPoly.sin(1))])
    fiber_err = (abs(fiber.fixed_fiber - 1.5 * math.pi)
                 if fiber.fixed_fiber is not None else math.inf)
    out.append(check("fixed_fiber_detection", "cos phi, 1 + sin phi fix phi = 3 pi/2",
                     fiber_err, 1e-10))

    aux = 0.0
    for _ in range(25):
        g1 = (rng.normal(), math.exp(rng.normal()))
        g2 = (rng.normal(), math.exp(rng.normal()))
        x = (math.exp(rng.normal()), rng.normal())
        lhs = cl.act_auxiliary("affine_halfline", g1,
                               cl.act_auxiliary("affine_halfline", g2, x))
        rhs = cl.act_auxiliary("affine_halfline",
                               cl.compose_auxiliary("affine_halfline", g1, g2), x)
        aux = max(aux, abs(lhs[0] - rhs[0]), abs(lhs[1] - rhs[1]))
        c1 = (rng.normal() + 1j * rng.normal(), cmath.exp(rng.normal() + 1j * rng.normal()))
        c2 = (rng.normal() + 1j * rng.normal(), cmath.exp(rng.normal() + 1j * rng.normal()))
        z = (rng.normal() + 1j * rng.normal() + 2.0, rng.normal() + 1j * rng.normal())
        lhs = cl.act_auxiliary("plane_punctured", c1,
                               cl.act_auxiliary("plane_punctured", c2, z))
        rhs = cl.act_auxiliary("plane_punctured",
                               cl.compose_auxiliary("plane_punctured", c1, c2), z)
        aux = max(aux, abs(lhs[0] - rhs[0]), abs(lhs[1] - rhs[1]))
    out.append(check("auxiliary_group_law", "affine and punctured-plane actions compose",
                     aux, 1e-9))
    symp = max(cl.auxiliary_symplectic_residual("affine_halfline", (0.4, 2.5), (1.7, -0.3)),
               cl.auxiliary_symplectic_residual("plane_punctured",
                                                (0.2 - 0.1j, 1.5 + 0.5j), (1 + 1j, 0.3 - 0.2j)))
    out.append(check("auxiliary_symplectic", "auxiliary actions preserve the form",
                     symp, t["symplectic"]))
    br = cl.poisson_bracket_poly({(1, 0): 1}, {(1, 1): 1})
    out.append(check("affine_bracket", "{q, qp} = q exactly",
                     0.0 if br == {(1, 0): 1} else 1.0, 0.0))
    return out


def _rep_cell(k: float, cfg: SuiteConfig) -> list:
    t = cfg.tolerances
    N = cfg.N
    out = []
    rc = RepConfig(k=k, N=N, hbar=cfg.hbar)
    gs = build_generators("fock", rc)
    lab = f"k={k:g}"

    ladder = max(
        interior_residual(commutator(gs.H, gs.Tplus) - gs.Tplus),
        interior_residual(commutator(gs.H, gs.Tminus) + gs.Tminus),
        interior_residual(commutator(gs.Tplus, gs.Tminus) + 2 * gs.H))
    out.append(check(f"ladder_algebra[{lab}]", "[H,T+]=T+, [H,T-]=-T-, [T+,T-]=-2H",
                     ladder, t["ladder"]))
    so12 = max(
        interior_residual(commutator(gs.T0, gs.T1) - gs.T2),
        interior_residual(commutator(gs.T0, gs.T2) + gs.T1),
        interior_residual(commutator(gs.T1, gs.T2) + gs.T0))
    out.append(check(f"so12_relations[{lab}]", "[T0,T1]=T2, [T0,T2]=-T1, [T1,T2]=-T0",
                     so12, tol(N)))
    out.append(check(f"adjointness[{lab}]", "T- = T+ adjoint (orthonormal basis)",
                     float(np.abs(gs.Tminus.matrix - gs.Tplus.matrix.conj().T).max()),
                     0.0))
    coh = max(
        float(np.abs(build_generators("disc", rc).Tplus.matrix - gs.Tplus.matrix).max()),
        float(np.abs(build_generators("hardy", rc).Tplus.matrix - gs.Tplus.matrix).max()))
    out.append(check(f"realization_coherence[{lab}]", "fock = disc = hardy entrywise",
                     coh, 1e-12))
    cas = casimir(gs)
    diag = np.diag(cas.matrix)[:cas.interior].real
    out.append(check(f"casimir_value[{lab}]", "C = k(1-k) on the interior",
                     float(np.abs(diag - k * (1 - k)).max()), t["casimir"]))
    out.append(check(f"casimir_flat[{lab}]", "interior Casimir diagonal is constant",
                     float(diag.std()), 1e-10))
    spec = spectrum_p(rc)
    spec_bad = 0.0 if (spec.min() > 0 and np.abs(np.diff(spec) - cfg.hbar).max() < 1e-12) else 1.0
    out.append(check(f"spectrum_positive[{lab}]", "spec p = hbar(k + n), spacing hbar",
                     spec_bad, 0.0))
    u_rot = rotation_rep(0.777, rc)
    out.append(check(f"rotation_unitary[{lab}]", "rotation representative unitary",
                     float(np.abs(u_rot.matrix.conj().T @ u_rot.matrix - np.eye(N + 1)).max()),
                     1e-12))
    gexp = exp_generator("T0", -1.554, rc)
    out.append(check(f"rotation_exponential[{lab}]", "exp(-2 omega T0) = rotation matrix",
                     float(np.abs(gexp.matrix - u_rot.matrix).max()), 1e-12))
    nrm = float(np.linalg.norm(gs.T1.matrix, 2))
    h = 1e-3 / max(1.0, nrm)
    fd = (-exp_generator("T1", 2 * h, rc).matrix + 8 * exp_generator("T1", h, rc).matrix
          - 8 * exp_generator("T1", -h, rc).matrix + exp_generator("T1", -2 * h, rc).matrix) / (12 * h)
    out.append(check(f"boost_derivative[{lab}]", "d/dt exp(t T1) at 0 = T1",
                     float(np.abs(fd - gs.T1.matrix).max()), t["derivative"]))
    e1 = exp_generator("T1", 0.1, rc).matrix
    half = N // 2 + 1
    leak = float(np.abs((e1.conj().T @ e1 - np.eye(N + 1))[:half, :half]).max())
    out.append(metric(f"boost_truncation_leakage[{lab}]",
                      "interior unitarity defect of exp(0.1 T1)", leak,
                      note="truncation leakage: reported, never asserted"))
    w = gram_weights(rc)
    ratios = w[1:] / w[:-1]
    if k < 0.5:
        mono_ok = bool(np.all(ratios > 1))
    elif k == 0.5:
        mono_ok = bool(np.all(ratios == 1))
    else:
        mono_ok = bool(np.all(ratios < 1))
    out.append(check(f"gram_monotonicity[{lab}]", "weights order by k vs 1/2",
                     0.0 if (mono_ok and w[0] == 1.0) else 1.0, 0.0))
    out.append(check(f"toeplitz_measure[{lab}]", "density exists iff k = 1/2",
                     0.0 if toeplitz_measure_test(rc) == (k == 0.5) else 1.0, 0.0))

    u = phase_operator(gs)
    eye = np.eye(N + 1)
    p0 = np.zeros_like(eye)
    p0[0, 0] = 1.0
    out.append(check(f"phase_isometry[{lab}]", "U*U = 1",
                     interior_residual(u.adjoint() @ u, eye), t["phase"]))
    out.append(check(f"phase_defect[{lab}]", "UU* = 1 - P_0",
                     float(np.abs((u @ u.adjoint()).matrix - (eye - p0)).max()),
                     t["phase"]))
    gm = build_generators("fock", RepConfig(k=k, N=N, hbar=cfg.hbar,
                                            phase_convention="disc_minus"))
    rec = tplus_from_phase(gm, u)
    out.append(check(f"ladder_from_phase[{lab}]",
                     "T+ = -(1/hbar) sqrt((p+(k-1)hbar)(p-k hbar)) U",
                     interior_residual(rec - gm.Tplus), t["tplus"]))
    _, _, screp = sincos_operators(gs)
    worst = max(r.residual for r in screp.checks)
    out.append(check(f"sincos_anomalies[{lab}]",
                     "s^2+c^2 = 1 - P_0/2, [s,c] = i P_0/2, [H,s] = -ic",
                     worst, t["sincos"]))
    conj = conjugate_realizations(rc)
    worst = max(r.residual for r in conj.checks)
    out.append(check(f"realization_conjugation[{lab}]",
                     "normalization diagonal maps boundary to Hardy",
                     worst, t["conjugation"]))
    return out


def _theta_cell(theta: float, cfg: SuiteConfig) -> list:
    t = cfg.tolerances
    out = []
    lab = f"theta={theta:g}"
    space = build_theta_quantization(theta, cfg.M, cfg.hbar)
    u, p = space.shift(), space.momentum()
    out.append(check(f"cylinder_commutator[{lab}]", "[U, p] = -hbar U",
                     interior_residual((u @ p - p @ u) + cfg.hbar * u, trim_bottom=1),
                     1e-12))
    ps = project_positive(space, 0)
    iso = isometry_report(ps)
    worst = max(r.residual for r in iso.checks if not r.reported_only)
    out.append(check(f"projected_isometries[{lab}]",
                     "U*U = 1, UU* = 1 - P_min after projection",
                     worst, t["phase"]))
    m_mins = (0,) if cfg.profile == "physical" else (0, 1, 3)
    worst = 0.0
    for m_min in m_mins:
        ident = identify(theta, m_min)
        rep = identification_report(ident, M=cfg.M, N=min(cfg.N, cfg.M - m_min - 2),
                                    hbar=cfg.hbar)
        worst = max(worst, max(r.residual for r in rep.checks))
    out.append(check(f"identification[{lab}]",
                     "projected (p, U) = (hbar H, phase operator) at k = theta + m_min",
                     worst, t["identification"]))
    return out


def run_suite(config: SuiteConfig) -> CheckReport:
    """Execute every check suite over the configuration grid.

    Deterministic for a given seed; the verdict is the conjunction of all
    asserted checks (reported-only metrics never count).
    """
    rng = np.random.default_rng(config.seed)
    report = CheckReport(meta={
        "profile": config.profile,
        "seed": config.seed,
        "momentum_map_sign": cl.MOMENTUM_MAP_SIGN,
        "svd_rank_threshold": lie.FLOAT_RANK_THRESHOLD,
        "tolerances": dict(config.tolerances),
    })
    report.extend(_lie_cell(rng))
    report.extend(_classical_cell(config, rng))
    for k in config.active_k_values:
        report.extend(_rep_cell(k, config))
    for theta in config.theta_values:
        report.extend(_theta_cell(theta, config))
    report.extend(halfline_demo(64, 4.0, config.hbar).checks)
    return report


def emit_spectrum(k: float, N: int, hbar: float = 1.0, fmt: str = "table"):
    """Render the momentum spectrum hbar (k + n), n = 0..N."""
    if not k > 0:
        raise ConfigError("k must be positive")
    if N < 0:
        raise ConfigError("N must be nonnegative")
    values = [hbar * (k + n) for n in range(N + 1)]
    if fmt == "table":
        return "\n".join(f"{n:4d}  {v:.12g}" for n, v in enumerate(values))
    if fmt == "json":
        import json
        return json.dumps({"k": k, "N": N, "hbar": hbar, "spectrum": values})
    raise ConfigError(f"unknown format {fmt!r}")


def report_header() -> dict:
    return {"generated_at": datetime.datetime.now(datetime.timezone.utc)
            .isoformat(timespec="seconds")}
