"""Named regression and property checks behind the `verify` CLI command.

Each check rebuilds its data from scratch at the requested quadrature
tolerance and reports a pass/fail verdict with its worst observed error.
The published reference values and the closed-form families used as oracles
live here, next to the checks that consume them.
"""

import math
import time
from dataclasses import dataclass

import numpy as np

from .api import solve
from .equilibrium import contour_mass, exponents
from .errors import WalshMapError
from .green import _green_integral, green_data
from .intervals import parse_domain
from .lemniscatic import centers_general, centers_three
from .lemniscatic import green as green_level
from .mapping import branch_offset
from .quadrature import QuadConfig

__all__ = ["CheckResult", "CHECK_NAMES", "run_checks"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


# --- reference sets ----------------------------------------------------------

TWO_INTERVAL_SET = [[-1.0, -0.3], [0.1, 1.0]]
THREE_INTERVAL_SET = [[-2.0, -0.9], [-0.7, 0.2], [0.5, 2.2]]
TOUCHING_SET = [[-1.0, 1.0], [1.2, 1.4]]

# published values for the two-interval set, truncated to five decimals
TWO_INTERVAL_PUBLISHED = {
    "z1": -0.10209, "m1": 0.46710, "m2": 0.53289, "alpha": 0.00209,
    "green_at_z1": 0.20383, "capacity": 0.48978, "beta": 1.19846,
    "a1": -0.63655, "a2": 0.56190,
}

# published values for the three-interval set, rounded to four decimals
THREE_INTERVAL_PUBLISHED = {
    "m": (0.3601, 0.1772, 0.4627), "capacity": 1.0458,
    "a": (-1.4101, -0.1950, 1.3896),
}

CANTOR_CAPACITY = {2: 0.228430704425168, 3: 0.224752818755217}
CANTOR_MAX_STEPS = {2: 2, 3: 3}

# the published centers for the touching-interval set are truncated to four
# decimals; the full-precision values below were computed independently at
# 50-digit precision and are checked much tighter than the print could be
TOUCHING_SET_CENTERS_PRINTED = (-0.0677, 1.0862)
TOUCHING_SET_CENTERS_REF = (-0.0677126190642331757, 1.08627474389197604)


def cantor_pairs(k: int) -> list[list[float]]:
    iv = [(0.0, 1.0)]
    for _ in range(k):
        iv = [t for (lo, hi) in iv
              for t in ((lo, lo + (hi - lo) / 3), (hi - (hi - lo) / 3, hi))]
    return [list(p) for p in iv]


# closed-form families: both are polynomial pre-images of an interval, so the
# masses are rational and the centers follow from the explicit two/three
# component formulas evaluated on closed-form ingredients.

def symmetric_pair_exact(b3: float, b4: float):
    """E = [-b4,-b3] u [b3,b4]: masses 1/2, centers +-(b3+b4)/2."""
    a2 = 0.5 * (b3 + b4)
    cap = 0.5 * math.sqrt(b4 ** 2 - b3 ** 2)
    return (0.5, 0.5), (-a2, a2), cap


def cubic_pair_exact(t: float):
    """E = [-1, s-t] u [s+t, 1] with s = (1-t^2)/2: a cubic pre-image.

    The left interval carries two of the three branches, so the masses are
    (2/3, 1/3); capacity, the critical point and the Green's value there all
    come out in elementary closed form, and the centers follow from the
    explicit two-component formulas.
    """
    m1, m2 = 2.0 / 3.0, 1.0 / 3.0
    cap = ((1.0 - t ** 2) ** 2 / 8.0) ** (1.0 / 3.0)
    alpha = -t ** 2 / 3.0
    dip = -1.0 - 2.0 * t ** 2 * (9.0 - t ** 2) ** 2 / (27.0 * (1.0 - t ** 2) ** 2)
    green_at_crit = math.log(-dip + math.sqrt(dip ** 2 - 1.0)) / 3.0
    beta = cap / (m1 ** m1 * m2 ** m2) * math.exp(green_at_crit)
    return (m1, m2), (alpha - m2 * beta, alpha + m1 * beta), cap


def symmetric_triple_exact(t: float):
    """E = [-1, t-1] u [-t, t] u [1-t, 1]: a cubic pre-image with masses 1/3.

    The rightmost center solves the critical-point value equation with the
    cubic's local extremum in closed form.
    """
    m = (1.0 / 3.0,) * 3
    cap = (t * (1.0 - t) / 2.0) ** (1.0 / 3.0)
    sigma = math.sqrt((1.0 - t * (1.0 - t)) / 3.0)
    dip = (sigma + 1.0 - t) * (sigma + t) * (sigma - 1.0) / (t * (1.0 - t)) + 1.0
    a3 = cap * (1.5 * math.sqrt(3.0) * (abs(dip) + math.sqrt(dip ** 2 - 1.0))) ** (1.0 / 3.0)
    return m, (-a3, 0.0, a3), cap


# --- checks ------------------------------------------------------------------

def _check_ex44(cfg, abstol, reltol, seed):
    t0 = time.perf_counter()
    wm = solve(TWO_INTERVAL_SET, cfg, abstol, reltol)
    elapsed = time.perf_counter() - t0
    m1, m2 = wm.exponents.m
    g1 = wm.green.green_at_roots[0]
    beta = wm.green.capacity / (m1 ** m1 * m2 ** m2) * math.exp(g1)
    got = {
        "z1": wm.green.roots[0], "m1": m1, "m2": m2, "alpha": wm.green.alpha,
        "green_at_z1": g1, "capacity": wm.green.capacity, "beta": beta,
        "a1": wm.lemniscatic.centers[0], "a2": wm.lemniscatic.centers[1],
    }
    worst = max(abs(got[k] - v) for k, v in TWO_INTERVAL_PUBLISHED.items())
    ok = worst <= 5e-5 and elapsed < 1.0
    return ok, f"max |value - published| = {worst:.2e}, runtime {elapsed:.3f}s"


def _check_ex55(cfg, abstol, reltol, seed):
    wm = solve(THREE_INTERVAL_SET, cfg, abstol, reltol)
    ref = THREE_INTERVAL_PUBLISHED
    worst = max(
        max(abs(a - b) for a, b in zip(wm.exponents.m, ref["m"])),
        abs(wm.green.capacity - ref["capacity"]),
        max(abs(a - b) for a, b in zip(wm.lemniscatic.centers, ref["a"])),
    )
    a_sys = centers_three(wm.domain, wm.exponents.m, wm.green.capacity, wm.green)
    route_gap = float(np.max(np.abs(a_sys - np.array(wm.lemniscatic.centers))))
    iters = wm.lemniscatic.outer_iterations
    ok = worst <= 5e-5 and route_gap <= 1e-7 and iters <= 4
    return ok, (f"max |value - published| = {worst:.2e}, solver-route gap "
                f"{route_gap:.2e}, {iters} outer steps")


def _check_cantor(cfg, abstol, reltol, seed):
    details = []
    ok = True
    for k in (2, 3):
        t0 = time.perf_counter()
        wm = solve(cantor_pairs(k), cfg, abstol, reltol)
        elapsed = time.perf_counter() - t0
        err = abs(wm.green.capacity - CANTOR_CAPACITY[k])
        iters = wm.lemniscatic.outer_iterations
        ok &= err <= 5e-12 and iters <= CANTOR_MAX_STEPS[k] and elapsed < 5.0
        details.append(f"level {k}: cap err {err:.2e}, {iters} steps, {elapsed:.2f}s")
    return ok, "; ".join(details)


def _check_table1(cfg, abstol, reltol, seed):
    cases = [
        ("pair b3=1 b4=2", parse_domain([[-2, -1], [1, 2]]),
         symmetric_pair_exact(1.0, 2.0), (0, 2)),
        ("cubic pair t=0.05", parse_domain(
            [[-1, (1 - 0.05 ** 2) / 2 - 0.05], [(1 - 0.05 ** 2) / 2 + 0.05, 1]]),
         cubic_pair_exact(0.05), (3, 5)),
        ("triple t=0.4", parse_domain([[-1, -0.6], [-0.4, 0.4], [0.6, 1]]),
         symmetric_triple_exact(0.4), (3, 5)),
    ]
    ok = True
    details = []
    for name, E, (m_exact, a_exact, _cap), iter_range in cases:
        data = green_data(E, cfg)
        m = exponents(E, data, cfg)
        a, w, iters, resid = centers_general(E, m.m, data.capacity, data,
                                             abstol, reltol)
        a_err = float(np.max(np.abs(np.array(a) - np.array(a_exact))))
        m_err = float(np.max(np.abs(np.array(m.m) - np.array(m_exact))))
        ok &= a_err < 1e-10 and m_err < 1e-10
        ok &= iter_range[0] <= iters <= iter_range[1]
        details.append(f"{name}: a err {a_err:.1e}, m err {m_err:.1e}, {iters} steps")
    return ok, "; ".join(details)


def random_interval_set(rng, ell: int, min_length: float = 1e-2):
    """Sorted 2*ell uniform draws on [-1, 1]; redraw while any component or
    gap is shorter than min_length.

    The floor keeps the mass ratios in the regime where the centers iteration
    shows its reported few-step behavior; sets with separations down to 1e-3
    still converge but can take a few steps more (covered by a robustness
    test rather than this battery).
    """
    while True:
        b = np.sort(rng.uniform(-1.0, 1.0, size=2 * ell))
        if np.min(np.diff(b)) >= min_length:
            return [[b[2 * j], b[2 * j + 1]] for j in range(ell)]


def _stress(cfg, abstol, reltol, seed, ell, count):
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    worst_iter = 0
    worst_inv = 0.0
    for _ in range(count):
        wm = solve(random_interval_set(rng, ell), cfg, abstol, reltol)
        dom, data = wm.lemniscatic, wm.green
        worst_iter = max(worst_iter, dom.outer_iterations)
        a = np.array(dom.centers)
        invariants = [
            abs(math.fsum(wm.exponents.m) - 1.0),
            abs(float(np.array(wm.exponents.m) @ a) - data.alpha),
            max(abs(green_level(c, dom)) for c in dom.boundary_c),
            max(abs(green_level(w, dom) - g)
                for w, g in zip(dom.crit_w, data.green_at_roots)),
        ]
        worst_inv = max(worst_inv, max(invariants))
    elapsed = time.perf_counter() - t0
    ok = worst_iter <= 7 and worst_inv < 1e-10
    return ok, (f"{count} sets of {ell} intervals: max {worst_iter} steps, "
                f"worst invariant {worst_inv:.2e}, {elapsed:.1f}s")


def _check_stress5(cfg, abstol, reltol, seed):
    return _stress(cfg, abstol, reltol, seed, 5, 100)


def _check_stress10(cfg, abstol, reltol, seed):
    return _stress(cfg, abstol, reltol, seed, 10, 100)


def _green_indep(wm, z):
    """Green's function via the integral based at the leftmost endpoint (an
    independent path; the base change only shifts the imaginary part)."""
    return _green_integral(wm.domain, wm.green.roots, wm.domain.endpoints[0],
                           z, wm.config).real


def _check_map_suite(cfg, abstol, reltol, seed):
    details = []
    ok = True

    # (a) single interval against the explicit half Joukowsky inverse
    wm = solve([[-1.0, 1.0]], cfg, abstol, reltol)
    rng = np.random.default_rng(seed)
    pts = []
    pts += list(1.0 + 10.0 ** rng.uniform(-2, 1, 40))        # right gap
    pts += list(-1.0 - 10.0 ** rng.uniform(-2, 1, 20))       # left gap
    re = rng.uniform(-3, 3, 40)
    im = np.where(rng.uniform(size=40) < 0.5, -1, 1) * 10.0 ** rng.uniform(-2, 1, 40)
    pts += list(re + 1j * im)
    worst = 0.0
    for z in pts:
        w = wm.map_point(complex(z)).w
        oracle = 0.5 * (z + np.sqrt(complex(z) - 1) * np.sqrt(complex(z) + 1))
        worst = max(worst, abs(w - oracle))
    ok &= worst <= 1e-10
    details.append(f"single-interval oracle err {worst:.1e} over {len(pts)} pts")

    # (b) Green identity on 40x40 off-axis grids, independent Green evaluation
    for pairs, xr in ((TWO_INTERVAL_SET, (-2, 2)), (THREE_INTERVAL_SET, (-3, 3))):
        wm = solve(pairs, cfg, abstol, reltol)
        xs = np.linspace(*xr, 40)
        ys = np.linspace(-2, 2, 40)
        worst = 0.0
        for x in xs:
            for y in ys:
                z = complex(x, y)
                res = wm.map_point(z)
                worst = max(worst, abs(_green_indep(wm, z)
                                       - green_level(res.w, wm.lemniscatic)))
        ok &= worst <= 1e-9
        details.append(f"Green identity {worst:.1e} on 40x40 grid")

    # (c) endpoints map to the boundary abscissae
    worst = 0.0
    for pairs in (TWO_INTERVAL_SET, THREE_INTERVAL_SET):
        wm = solve(pairs, cfg, abstol, reltol)
        for j, bj in enumerate(wm.domain.endpoints):
            res = wm.map_point(bj)
            worst = max(worst, abs(res.w - wm.lemniscatic.boundary_c[j]),
                        res.residual)
    ok &= worst <= 1e-9
    details.append(f"endpoint images err {worst:.1e}")

    # (d) strict monotonicity on every gap
    mono_ok = True
    for pairs in (TWO_INTERVAL_SET, THREE_INTERVAL_SET):
        wm = solve(pairs, cfg, abstol, reltol)
        b = wm.domain.endpoints
        gaps = [(b[0] - 3.0, b[0] - 1e-6)]
        gaps += [(b[2 * k - 1] + 1e-6 * (b[2 * k] - b[2 * k - 1]),
                  b[2 * k] - 1e-6 * (b[2 * k] - b[2 * k - 1]))
                 for k in range(1, wm.domain.ell)]
        gaps += [(b[-1] + 1e-6, b[-1] + 3.0)]
        for lo, hi in gaps:
            ws = [wm.map_point(complex(x)).w.real for x in np.linspace(lo, hi, 100)]
            mono_ok &= bool(np.all(np.diff(ws) > 0))
    ok &= mono_ok
    details.append(f"monotone on all gaps: {mono_ok}")

    # (e) branch offsets against the mass partial sums
    worst = 0.0
    for pairs in (TWO_INTERVAL_SET, THREE_INTERVAL_SET):
        wm = solve(pairs, cfg, abstol, reltol)
        msum = np.cumsum(wm.exponents.m[::-1])[::-1]  # m_k + ... + m_ell
        for k in range(1, wm.domain.ell):
            for edge in ("left", "right"):
                for z in (1j, -1j, -0.4 + 0.9j):
                    got = branch_offset(wm.domain, wm.green, k, z, edge, cfg)
                    want = -1j * math.pi * msum[k] * (1 if z.imag > 0 else -1)
                    worst = max(worst, abs(got - want))
        worst = max(worst, abs(branch_offset(wm.domain, wm.green,
                                             wm.domain.ell, 1j, "left", cfg)))
    ok &= worst <= 1e-9
    details.append(f"branch offsets err {worst:.1e}")
    return ok, "; ".join(details)


def _check_exponents_double(cfg, abstol, reltol, seed):
    sets = [TWO_INTERVAL_SET, THREE_INTERVAL_SET, TOUCHING_SET,
            [[-2, -1], [1, 2]], cantor_pairs(2),
            [[-1, -0.6], [-0.4, 0.4], [0.6, 1]]]
    worst = 0.0
    for pairs in sets:
        E = parse_domain(pairs)
        data = green_data(E, cfg)
        m = exponents(E, data, cfg)
        b = E.endpoints
        for j in range(1, E.ell + 1):
            margins = []
            if j > 1:
                margins.append(b[2 * j - 2] - b[2 * j - 3])
            if j < E.ell:
                margins.append(b[2 * j] - b[2 * j - 1])
            pad = 0.45 * min(margins)
            worst = max(worst, abs(contour_mass(E, data, j, pad, cfg) - m.m[j - 1]))
    ok = worst <= 1e-8
    return ok, f"max |contour - density integral| = {worst:.2e}"


def _check_final_remark(cfg, abstol, reltol, seed):
    wm = solve(TOUCHING_SET, cfg, abstol, reltol)
    a = wm.lemniscatic.centers
    # printed values are truncations: require digit-for-digit consistency
    digits_ok = all(math.floor(abs(aj) * 1e4) / 1e4 == abs(p)
                    for aj, p in zip(a, TOUCHING_SET_CENTERS_PRINTED))
    err = max(abs(aj - r) for aj, r in zip(a, TOUCHING_SET_CENTERS_REF))
    inside = [lo <= aj <= hi for aj, (lo, hi) in zip(a, wm.domain.components)]
    ok = digits_ok and err <= 1e-10 and inside == [True, False]
    return ok, (f"printed-digit match: {digits_ok}, err vs reference {err:.2e}; "
                f"centers inside their components: {inside} (second must be outside)")


_CHECKS = {
    "ex44": _check_ex44,
    "ex55": _check_ex55,
    "cantor": _check_cantor,
    "table1": _check_table1,
    "stress5": _check_stress5,
    "stress10": _check_stress10,
    "map_suite": _check_map_suite,
    "exponents_double": _check_exponents_double,
    "final_remark": _check_final_remark,
}

CHECK_NAMES = tuple(_CHECKS)


def run_checks(names=None, quad_tol: float = 1e-12, abstol: float = 1e-13,
               reltol: float = 1e-13, seed: int = 2025) -> list[CheckResult]:
    """Run the named checks (all by default) and collect their verdicts."""
    names = list(names) if names else list(CHECK_NAMES)
    unknown = [n for n in names if n not in _CHECKS]
    if unknown:
        raise ValueError(f"unknown check name(s): {', '.join(unknown)}; "
                         f"known: {', '.join(CHECK_NAMES)}")
    cfg = QuadConfig(abs_tol=quad_tol, rel_tol=quad_tol)
    out = []
    for name in names:
        t0 = time.perf_counter()
        try:
            passed, detail = _CHECKS[name](cfg, abstol, reltol, seed)
        except WalshMapError as exc:
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, passed, detail, time.perf_counter() - t0))
    return out
