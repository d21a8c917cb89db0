"""Self-contained verification suite.

Each check is registered with a name and a suite tag; ``run_suite`` executes
a selection and returns one result per check.  The acceptance checks pin
their tolerances explicitly; ``LORENTZ3_TOL`` (or the --tol flag) only
rescales the generic closed-form-vs-oracle comparisons, never the pinned
acceptance tolerances.

The same registry backs both the ``verify`` CLI command and the acceptance
test module, so there is exactly one source of truth for every criterion.
"""

from __future__ import annotations

import itertools
import math
import os
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from . import geodesics as geo
from .classifier import (
    CW_ELLIPTIC,
    CW_HYPERBOLIC,
    HALF_MINKOWSKI_FLAT,
    MINKOWSKI_FLAT,
    SpaceClass,
    class_from_b,
    classify,
    groups_isomorphic,
    invariant_b,
    report_from_class,
    space_report,
)
from .geometry import (
    Constant,
    PowerLaw,
    RosenChart,
    boost_field,
    christoffels,
    commutator_values,
    coordinate_field,
    heis_killing_fields,
    is_flat,
    killing_residual,
    metric_at,
    nabla_riemann,
    pullback_residual,
    riemann_symmetry_residual,
    riemann_tensor,
    rosen_to_brinkmann,
    roundtrip_residual,
    sectional_curvature,
)
from .geometry.curvature import default_grid, max_abs_riemann
from .geometry.findiff import (
    christoffels_fd,
    nabla_riemann_fd,
    riemann_fd,
)
from .lie_core import (
    Derivation,
    IsotropyChoice,
    compose_automorphisms,
    conjugate_derivation,
    diagonal_automorphism,
    extend_algebra,
    inner_automorphism,
    jacobi_residual,
    normalize_to_canonical,
    rotation_scale_automorphism,
    shear_automorphism,
    spectrum_on_quotient,
)
from .metric_builder import (
    ad_w_matrix_on_m,
    admits_metric,
    build_invariant_metric,
    skew_residual,
    twist_coefficient,
)

DEFAULT_ORACLE_TOL = 1e-6


def oracle_tolerance(override: Optional[float] = None) -> float:
    if override is not None:
        return float(override)
    env = os.environ.get("LORENTZ3_TOL")
    return float(env) if env else DEFAULT_ORACLE_TOL


@dataclass(frozen=True)
class CheckResult:
    name: str
    suite: str
    passed: bool
    detail: str
    elapsed: float


_REGISTRY: list[tuple[str, str, Callable]] = []


def check(name: str, suite: str):
    def wrap(fn):
        _REGISTRY.append((name, suite, fn))
        return fn

    return wrap


def run_suite(suite: str = "all", tol: Optional[float] = None) -> list[CheckResult]:
    results = []
    for name, tag, fn in _REGISTRY:
        if suite not in ("all", tag):
            continue
        start = time.perf_counter()
        try:
            passed, detail = fn(tol)
        except Exception as exc:  # a crashed check is a failed check
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(
            CheckResult(
                name=name,
                suite=tag,
                passed=bool(passed),
                detail=detail,
                elapsed=time.perf_counter() - start,
            )
        )
    return results


def suite_names() -> list[str]:
    return sorted({tag for _, tag, _ in _REGISTRY} | {"all"})


# ---------------------------------------------------------------------------
# Acceptance criteria
# ---------------------------------------------------------------------------


@check("acceptance-01-flatness-dichotomy", "geometry")
def _flatness_dichotomy(tol):
    start = time.perf_counter()
    grid = default_grid()
    problems = []
    for chart in (PowerLaw(0.0), Constant(0.0)):
        worst = max_abs_riemann(chart, grid)
        if not (is_flat(chart, grid) and worst < 1e-10):
            problems.append(f"{chart} expected flat, max|R|={worst:.2e}")
    near = [(u, 0.0, 0.0) for u in (0.9, 1.0, 1.1)]
    for b in (2.0, 1.0, -0.25, -0.5):
        chart = PowerLaw(b)
        worst = max_abs_riemann(chart, near)
        if is_flat(chart, grid) or worst <= 0.1:
            problems.append(f"{chart} expected curved, max|R|={worst:.2e}")
    elapsed = time.perf_counter() - start
    if elapsed >= 1.0:
        problems.append(f"runtime {elapsed:.2f}s exceeds 1s budget")
    if problems:
        return False, "; ".join(problems)
    return True, f"flat cases < 1e-10, curved cases > 0.1 near (1,0,0); {elapsed:.2f}s"


@check("acceptance-02-symmetry-dichotomy", "geometry")
def _symmetry_dichotomy(tol):
    pts = [(0.7, -0.3, 0.4), (1.0, 0.0, 0.0), (1.5, 0.8, -0.9)]
    problems = []
    for h in (1.0, -1.0):
        chart = Constant(h)
        for p in pts:
            for direction in range(3):
                fd = nabla_riemann_fd(
                    lambda q: riemann_tensor(chart, q),
                    lambda q: christoffels(chart, q),
                    p,
                    direction,
                )
                if np.max(np.abs(fd)) > 1e-5:
                    problems.append(f"Constant({h}) nabla_{direction}R = {np.max(np.abs(fd)):.2e}")
    for b in (2.0, -0.5):
        chart = PowerLaw(b)
        p = (1.0, 0.0, 0.0)
        closed = float(np.max(np.abs(nabla_riemann(chart, p, "u"))))
        fd = nabla_riemann_fd(
            lambda q: riemann_tensor(chart, q), lambda q: christoffels(chart, q), p, 0
        )
        if closed <= 1e-3:
            problems.append(f"PowerLaw({b}) |nabla_u R| = {closed:.2e} not > 1e-3")
        if abs(float(np.max(np.abs(fd))) - closed) > 1e-5:
            problems.append(f"PowerLaw({b}) oracle mismatch on nabla_u R")
        for p2 in pts:
            for name, axis in (("x", 2), ("v", 1)):
                closed2 = float(np.max(np.abs(nabla_riemann(chart, p2, name))))
                fd2 = nabla_riemann_fd(
                    lambda q: riemann_tensor(chart, q),
                    lambda q: christoffels(chart, q),
                    p2,
                    axis,
                )
                if closed2 > 1e-5 or np.max(np.abs(fd2)) > 1e-5:
                    problems.append(f"PowerLaw({b}) nabla_{name}R nonzero")
    if problems:
        return False, "; ".join(problems)
    return True, "del R = 0 on Constant(+-1); del_u R > 1e-3 and del_x R = del_v R = 0 on PowerLaw"


_ALPHAS_20 = [
    Fraction(-3),
    Fraction(-2),
    Fraction(-3, 2),
    Fraction(-1),
    Fraction(-3, 4),
    Fraction(-1, 2),
    Fraction(-1, 3),
    Fraction(-1, 4),
    Fraction(0),
    Fraction(1, 5),
    Fraction(1, 4),
    Fraction(1, 3),
    Fraction(1, 2),
    Fraction(3, 5),
    Fraction(2, 3),
    Fraction(3, 4),
    Fraction(1),
    Fraction(5, 4),
    Fraction(3, 2),
    Fraction(2),
]


@check("acceptance-03-b-invariant-correspondence", "classifier")
def _b_invariant_correspondence(tol):
    problems = []
    for alpha in _ALPHAS_20:
        a = Derivation.rosen_exponent(alpha)
        expected = alpha * alpha - alpha
        if alpha in (0, 1):
            if expected != 0:
                problems.append(f"alpha={alpha}: expected 0")
        got = invariant_b(a)
        if got != expected:
            problems.append(f"alpha={alpha}: b={got} != {expected}")
    spot = {Fraction(-1): Fraction(2), Fraction(1, 2): Fraction(-1, 4), Fraction(0): Fraction(0), Fraction(1): Fraction(0)}
    for alpha, want in spot.items():
        if invariant_b(Derivation.rosen_exponent(alpha)) != want:
            problems.append(f"spot alpha={alpha} != {want}")
    grid = default_grid(shape=(5, 5, 5))
    for alpha in (-1.0, -0.5, 0.5, 2.0):
        tr = rosen_to_brinkmann(alpha)
        resid = pullback_residual(tr.point_map, tr.rosen_chart, tr.brinkmann_chart, grid)
        rt = roundtrip_residual(tr.point_map, tr.inverse_map, grid)
        if resid > 1e-9:
            problems.append(f"alpha={alpha}: pullback residual {resid:.2e} > 1e-9")
        if rt > 1e-12:
            problems.append(f"alpha={alpha}: roundtrip {rt:.2e} > 1e-12")
    if problems:
        return False, "; ".join(problems)
    return True, "b(diag(1,1-a,a)) = a^2 - a exactly for 20 rationals; pullback residual <= 1e-9 on 5^3 grid"


@check("acceptance-04-metric-construction", "metric")
def _metric_construction(tol):
    cases = [
        ("hyperbolic b=2", Derivation.hyperbolic_diag(2), IsotropyChoice.of(0, 1, 1), Fraction(1, 1)),
        ("parabolic", Derivation.parabolic(), IsotropyChoice.of(0, 0, 1), Fraction(-1)),
        ("elliptic c=1", Derivation.elliptic(1), IsotropyChoice.of(0, 1, 0), Fraction(1)),
        ("nilpotent", Derivation.nilpotent(), IsotropyChoice.of(0, 0, 1), Fraction(-1)),
        ("unimodular hyperbolic", Derivation.cw_hyperbolic(), IsotropyChoice.of(0, 1, 1), Fraction(-1, 2)),
        ("unimodular elliptic", Derivation.cw_elliptic(), IsotropyChoice.of(0, 1, 0), Fraction(1)),
    ]
    problems = []
    for label, a, w, g_tz in cases:
        m = build_invariant_metric(a, w)
        if m.gram[0][2] != g_tz:
            problems.append(f"{label}: g(T,Z) = {m.gram[0][2]} != {g_tz}")
        if m.gram[1][1] != 1:
            problems.append(f"{label}: g(Y',Y') != 1")
        if not m.is_lorentz:
            problems.append(f"{label}: signature {m.signature()} not Lorentz")
        resid = skew_residual(m, ad_w_matrix_on_m(a, w))
        if resid != 0:
            problems.append(f"{label}: skew residual {resid} != 0")
    if problems:
        return False, "; ".join(problems)
    return True, "all four one-parameter cases and both symmetric cases reproduce the tabulated Gram values exactly"


@check("acceptance-05-killing-suite", "geometry")
def _killing_suite(tol):
    problems = []
    grid = default_grid(shape=(4, 3, 4))
    for b in (2.0, -0.5):
        chart = PowerLaw(b)
        for f in (coordinate_field("v"), boost_field()):
            r = killing_residual(chart, f, grid)
            if r > 1e-9:
                problems.append(f"PowerLaw({b}) {f.name}: residual {r:.2e}")
    for alpha in (-1.0, 0.0, 2.0):
        chart = RosenChart.power_law(alpha)
        fields = heis_killing_fields(chart)
        for f in fields:
            r = killing_residual(chart, f, grid)
            if r > 1e-9:
                problems.append(f"Rosen alpha={alpha} {f.name}: residual {r:.2e}")
        zf, xf, yf = fields
        for p in grid[:: max(1, len(grid) // 8)]:
            c_xy = commutator_values(xf, yf, p)  # expect d_v
            c_zy = commutator_values(zf, yf, p)  # expect 0
            c_zx = commutator_values(zf, xf, p)  # expect 0
            if np.max(np.abs(c_xy - np.array([0.0, 1.0, 0.0]))) > 1e-8:
                problems.append(f"alpha={alpha}: [d_x, shear] != d_v at {p}")
            if np.max(np.abs(c_zy)) > 1e-8 or np.max(np.abs(c_zx)) > 1e-8:
                problems.append(f"alpha={alpha}: center not central at {p}")
    if problems:
        return False, "; ".join(problems)
    return True, "d_v/boost residuals <= 1e-9; three Rosen fields Killing with exact Heisenberg brackets"


@check("acceptance-06-incompleteness", "geodesic")
def _incompleteness(tol):
    start = time.perf_counter()
    problems = []
    chart = PowerLaw(2.0)
    res = geo.integrate_geodesic(chart, geo.GeodesicState.of(1, 0, 0, -1, 0, 0), (0.0, 5.0))
    if res.terminated != "hit_domain_boundary":
        problems.append(f"vertical null geodesic: {res.terminated}")
    elif abs(res.boundary_time - 1.0) > 1e-6:
        problems.append(f"vertical null boundary at {res.boundary_time}, not 1.0 +- 1e-6")
    rep = geo.completeness_report(chart, families=("timelike",), count=20, seed=20260810)
    fam = rep.verdicts["timelike"]
    if fam.verdict != "incomplete":
        problems.append(f"timelike family verdict {fam.verdict}")
    for rec in fam.details:
        if "boundary_affine_time" not in rec:
            problems.append(f"timelike sample did not terminate: {rec['initial']}")
        elif rec["affine_prediction_gap"] is None or rec["affine_prediction_gap"] > 1e-5:
            problems.append(f"affine prediction gap {rec['affine_prediction_gap']}")
    rep2 = geo.completeness_report(chart, families=("dv_orbit",), count=5, seed=3)
    if rep2.verdicts["dv_orbit"].verdict != "complete":
        problems.append("d_v orbits not complete")
    elapsed = time.perf_counter() - start
    if elapsed >= 10.0:
        problems.append(f"runtime {elapsed:.1f}s exceeds 10s budget")
    if problems:
        return False, "; ".join(problems)
    return True, f"boundary hit at t = 1 +- 1e-6; 20/20 timelike geodesics incomplete; d_v orbits complete; {elapsed:.1f}s"


@check("acceptance-07-closed-form-geodesics", "geodesic")
def _closed_form_vs_numeric(tol):
    problems = []
    for b in (2.0, -0.25, -0.5):
        chart = PowerLaw(b)
        st = geo.GeodesicState.of(1.0, 0.0, 0.3, 1.0, -0.1, 0.2)
        res = geo.integrate_geodesic(chart, st, (0.0, 9.0), rtol=1e-12, atol=1e-14)
        if res.terminated != "completed_span":
            problems.append(f"b={b}: integration ended early ({res.terminated})")
            continue
        x_of_u = geo.transverse_profile_in_u(chart, st)
        gap = max(abs(row[2] - x_of_u(row[0])) for row in res.states)
        if gap > 1e-8:
            problems.append(f"b={b}: sup gap {gap:.2e} > 1e-8")
    # the oscillatory basis member solves the equation directly
    b = -0.5
    w = math.sqrt(-(1.0 + 4.0 * b)) / 2.0
    for t in np.linspace(0.1, 10.0, 25):
        f = geo.closed_form_x(b, t, 0)
        h = 1e-5 * max(1.0, t)
        d2 = (geo.closed_form_x(b, t + h, 0) - 2 * f + geo.closed_form_x(b, t - h, 0)) / h**2
        if abs(d2 - b * f / (t * t)) > 1e-4:
            problems.append(f"oscillatory branch residual at t={t:.2f}")
            break
    if problems:
        return False, "; ".join(problems)
    return True, f"numeric vs closed form <= 1e-8 on u in [1,10] for b in {{2, -1/4, -1/2}}; oscillatory branch w={w}"


@check("acceptance-08-compact-model-verdicts", "classifier")
def _compact_models(tol):
    reports = {
        "MinkowskiFlat": space_report(Derivation.nilpotent()),
        "HalfMinkowskiFlat": space_report(Derivation.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 0]])),
        "CW-hyperbolic": space_report(Derivation.cw_hyperbolic()),
        "CW-elliptic": space_report(Derivation.cw_elliptic()),
        "b=2": space_report(Derivation.rosen_exponent(-1)),
        "b=1": report_from_class(class_from_b(1)),
        "b=-1/4": report_from_class(class_from_b(Fraction(-1, 4))),
        "b=-1/2": space_report(Derivation.elliptic(1)),
    }
    expected_true = {"MinkowskiFlat", "b=2"}
    problems = []
    for label, rep in reports.items():
        want = label in expected_true
        if rep.compact_model != want:
            problems.append(f"{label}: compact_model={rep.compact_model}, expected {want}")
    if reports["b=2"].isometry_group_note.find("SOL") < 0:
        problems.append("b=2 note does not mention SOL")
    if problems:
        return False, "; ".join(problems)
    return True, "compact_model true exactly for the flat Minkowski model and b = 2 (SOL)"


def _random_automorphism(rng) -> tuple:
    kind = rng.integers(0, 4)
    num = int(rng.integers(-5, 6)) or 1
    den = int(rng.integers(1, 5))
    q = Fraction(num, den)
    if kind == 0:
        num2 = int(rng.integers(-5, 6)) or 2
        return diagonal_automorphism(q, Fraction(num2, den))
    if kind == 1:
        return shear_automorphism(q)
    if kind == 2:
        return rotation_scale_automorphism(q, Fraction(int(rng.integers(-3, 4)), 2))
    return inner_automorphism(q, Fraction(int(rng.integers(-3, 4)), 3))


@check("acceptance-09-classification-invariance", "classifier")
def _classification_invariance(tol):
    rng = np.random.default_rng(20260810)
    bases = [
        Derivation.hyperbolic_diag(2),
        Derivation.parabolic(),
        Derivation.elliptic(1),
        Derivation.nilpotent(),
        Derivation.cw_hyperbolic(),
        Derivation.canonical(Fraction(7, 3)),
        Derivation.rosen_exponent(-1),
    ]
    problems = []
    for a in bases:
        cls = classify(a)
        for lam in (Fraction(-3), Fraction(1, 2), Fraction(7)):
            if classify(a.scaled(lam)) != cls:
                problems.append(f"{cls}: classify changed under scaling by {lam}")
    count = 0
    while count < 50:
        a = bases[count % len(bases)]
        cls = classify(a)
        phi = compose_automorphisms(_random_automorphism(rng), _random_automorphism(rng))
        conj = conjugate_derivation(a, phi)
        if classify(conj) != cls:
            problems.append(f"{cls}: classify changed under conjugation {count}")
        if cls.b is not None and invariant_b(conj) != cls.b:
            problems.append(f"{cls}: b changed under conjugation {count}")
        count += 1
    if problems:
        return False, "; ".join(problems[:5])
    return True, "classify and b exactly invariant under scalings {-3, 1/2, 7} and 50 random automorphism conjugations"


@check("acceptance-10-sectional-blowup", "geometry")
def _sectional_blowup(tol):
    chart = PowerLaw(2.0)
    plane = [(1.0, 1.0, 0.0), (0.0, 0.0, 1.0)]
    ks = [abs(sectional_curvature(chart, (u, 0.0, 0.0), plane)) for u in (1.0, 0.1, 0.01)]
    r1 = ks[1] / ks[0]
    r2 = ks[2] / ks[1]
    ok = abs(r1 - 100.0) <= 5.0 and abs(r2 - 100.0) <= 5.0
    detail = f"|K| = {ks[0]:.3g}, {ks[1]:.3g}, {ks[2]:.3g}; decade ratios {r1:.1f}, {r2:.1f}"
    return ok, detail


# ---------------------------------------------------------------------------
# Module invariants beyond the acceptance list
# ---------------------------------------------------------------------------


@check("lie-jacobi-zero-on-families", "lie")
def _jacobi_families(tol):
    families = [
        Derivation.hyperbolic_diag(Fraction(5, 3)),
        Derivation.parabolic(),
        Derivation.elliptic(Fraction(-2, 7)),
        Derivation.nilpotent(),
        Derivation.canonical(Fraction(-9, 4)),
        Derivation.inner(Fraction(1, 2), -3),
    ]
    for a in families:
        if jacobi_residual(extend_algebra(a)) != 0:
            return False, f"nonzero Jacobi residual for {a.matrix}"
    return True, "every constructed extension satisfies Jacobi exactly"


@check("lie-normalize-idempotent", "lie")
def _normalize_idempotent(tol):
    for b in (Fraction(2), Fraction(-1, 4), Fraction(7, 5), Fraction(-3)):
        first = normalize_to_canonical(Derivation.canonical(b))
        if first.b != b or first.derivation != Derivation.canonical(b):
            return False, f"canonical form moved for b={b}"
        again = normalize_to_canonical(first.derivation)
        if again.derivation != first.derivation:
            return False, f"not idempotent for b={b}"
        scaled = normalize_to_canonical(Derivation.canonical(b).scaled(Fraction(-7, 2)))
        if scaled.b != b:
            return False, f"b changed under scaling for b={b}"
    return True, "canonical form is a fixed point and scale-invariant"


@check("metric-criteria-agree", "metric")
def _metric_criteria_agree(tol):
    rng = np.random.default_rng(7)
    trials = 0
    for _ in range(200):
        entries = [Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 3))) for _ in range(6)]
        p, q, r, s, zx, zy = entries
        a = Derivation.from_rows([[p + s, zx, zy], [0, p, q], [0, r, s]])
        gamma = Fraction(int(rng.integers(-2, 3)))
        alpha = Fraction(int(rng.integers(-2, 3)))
        beta = Fraction(int(rng.integers(-2, 3)), 2)
        if alpha == 0 and beta == 0:
            continue
        trials += 1
        admits_metric(a, IsotropyChoice.of(gamma, alpha, beta))  # raises on disagreement
    return True, f"eigenvector and nilpotency-order criteria agree on {trials} random rational cases"


@check("metric-uniqueness-scaling", "metric")
def _metric_scaling(tol):
    a = Derivation.hyperbolic_diag(3)
    w = IsotropyChoice.of(0, 1, 1)
    base = build_invariant_metric(a, w)
    lam = Fraction(5, 2)
    scaled = build_invariant_metric(a, w, scale_alpha=lam)
    for i in range(3):
        for j in range(3):
            if scaled.gram[i][j] != lam * base.gram[i][j]:
                return False, f"entry ({i},{j}) does not scale by alpha"
    return True, "Gram at alpha = 5/2 is entrywise 5/2 times the alpha = 1 table"


@check("geometry-oracle-agreement", "geometry")
def _oracle_agreement(tol):
    limit = oracle_tolerance(tol)
    grid = default_grid(shape=(5, 5, 5))
    charts = [PowerLaw(2.0), PowerLaw(-0.5), Constant(1.0), RosenChart.power_law(-1.0)]
    worst_gamma = 0.0
    worst_r = 0.0
    for chart in charts:
        for p in grid[:: max(1, len(grid) // 25)]:
            metric_fn = lambda q, _c=chart: metric_at(_c, q)
            gfd = christoffels_fd(metric_fn, p)
            worst_gamma = max(worst_gamma, float(np.max(np.abs(christoffels(chart, p) - gfd))))
            rfd = riemann_fd(metric_fn, p)
            worst_r = max(worst_r, float(np.max(np.abs(riemann_tensor(chart, p) - rfd))))
    ok = worst_gamma <= limit and worst_r <= limit
    return ok, f"max gap vs nested finite differences: Gamma {worst_gamma:.2e}, R {worst_r:.2e} (tol {limit:g})"


@check("geometry-riemann-symmetries", "geometry")
def _riemann_symmetries(tol):
    worst = 0.0
    for chart in (PowerLaw(2.0), PowerLaw(-0.25), Constant(-1.0), RosenChart.power_law(0.5)):
        for p in default_grid(shape=(3, 2, 3)):
            worst = max(worst, riemann_symmetry_residual(riemann_tensor(chart, p)))
    return worst <= 1e-9, f"worst symmetry/Bianchi residual {worst:.2e}"


@check("geometry-parallel-null-field", "geometry")
def _parallel_dv(tol):
    worst = 0.0
    for chart in (PowerLaw(2.0), Constant(1.0), RosenChart.power_law(2.0)):
        for p in default_grid(shape=(3, 2, 3)):
            gamma = christoffels(chart, p)
            worst = max(worst, float(np.max(np.abs(gamma[:, :, 1]))))
    return worst == 0.0, f"max |Gamma^k_(i,v)| = {worst:.1e}: d_v is parallel"


@check("geometry-scalar-flat", "geometry")
def _scalar_flat(tol):
    from .geometry import scalar_curvature

    worst = 0.0
    for chart in (PowerLaw(2.0), PowerLaw(-0.5), Constant(1.0), RosenChart.power_law(-1.0)):
        for p in default_grid(shape=(3, 2, 3)):
            worst = max(worst, abs(scalar_curvature(chart, p)))
    return worst <= 1e-12, f"max |scalar curvature| = {worst:.2e}"


@check("geodesic-conservation-and-affine-u", "geodesic")
def _conservation(tol):
    chart = PowerLaw(-0.5)
    problems = []
    for st in geo.sample_initial_conditions(chart, "timelike", 6, np.random.default_rng(5)):
        res = geo.integrate_geodesic(chart, st, (0.0, 3.0))
        if res.conservation_drift > 1e-8:
            problems.append(f"drift {res.conservation_drift:.2e}")
        for t, row in zip(res.times, res.states):
            expect_u = st.position[0] + st.velocity[0] * t
            if abs(row[0] - expect_u) > 1e-10 * max(1.0, abs(expect_u)):
                problems.append("u not affine in t")
                break
    if problems:
        return False, "; ".join(problems)
    return True, "g(gamma', gamma') drift <= 1e-8 and u exactly affine along all samples"


@check("geodesic-boost-equivariance", "geodesic")
def _boost_equivariance(tol):
    # the boost is an affine-parameter-preserving isometry, so integrating a
    # boosted initial state must equal boosting the integrated trajectory
    chart = PowerLaw(2.0)
    st = geo.GeodesicState.of(1.0, 0.2, 0.4, 1.0, -0.3, 0.5)
    s = 0.7
    grid = np.linspace(0.0, 2.0, 41)
    direct = geo.integrate_geodesic(
        chart, geo.boost_state(s, st), (0.0, 2.0), rtol=1e-12, atol=1e-14, t_eval=grid
    )
    base = geo.integrate_geodesic(chart, st, (0.0, 2.0), rtol=1e-12, atol=1e-14, t_eval=grid)
    eu = math.exp(s)
    gap = float(
        max(
            np.max(np.abs(direct.states[:, 0] - eu * base.states[:, 0])),
            np.max(np.abs(direct.states[:, 1] - base.states[:, 1] / eu)),
            np.max(np.abs(direct.states[:, 2] - base.states[:, 2])),
        )
    )
    return gap <= 1e-8, f"boost-translated trajectory matches translated integration to {gap:.2e}"


@check("classifier-isomorphism-equivalence", "classifier")
def _isomorphism_equivalence(tol):
    pool = [
        Derivation.canonical(2),
        Derivation.rosen_exponent(-1),
        Derivation.hyperbolic_diag(Fraction(-1, 2)),
        Derivation.elliptic(1),
        Derivation.cw_hyperbolic(),
        Derivation.cw_elliptic(),
        Derivation.nilpotent(),
        Derivation.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 0]]),
    ]
    for a in pool:
        if not groups_isomorphic(a, a):
            return False, "not reflexive"
    for a, b in itertools.combinations(pool, 2):
        if groups_isomorphic(a, b) != groups_isomorphic(b, a):
            return False, "not symmetric"
    for a, b, c in itertools.permutations(pool, 3):
        if groups_isomorphic(a, b) and groups_isomorphic(b, c):
            if not groups_isomorphic(a, c):
                return False, "not transitive"
    iso_pairs = [(x, y) for x, y in itertools.combinations(pool, 2) if groups_isomorphic(x, y)]
    return True, f"equivalence relation on 8 representatives; isomorphic pairs: {len(iso_pairs)} (b=2 canonical vs diag)"


@check("classifier-flags-consistent-with-geometry", "classifier")
def _flags_vs_geometry(tol):
    problems = []
    for a in (
        Derivation.nilpotent(),
        Derivation.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 0]]),
        Derivation.cw_hyperbolic(),
        Derivation.cw_elliptic(),
        Derivation.canonical(2),
        Derivation.elliptic(1),
    ):
        rep = space_report(a)
        chart = rep.brinkmann_chart
        if rep.flat != is_flat(chart):
            problems.append(f"{rep.space_class}: flat flag vs chart curvature")
        nr = max(
            float(np.max(np.abs(nabla_riemann(chart, p, d))))
            for p in default_grid(shape=(3, 2, 3))
            for d in ("u", "v", "x")
        )
        if rep.locally_symmetric != (nr <= 1e-5):
            problems.append(f"{rep.space_class}: locally_symmetric flag vs del R = {nr:.2e}")
    if problems:
        return False, "; ".join(problems)
    return True, "flat and locally_symmetric flags match chart curvature and del R on every class"
