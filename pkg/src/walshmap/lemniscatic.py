"""Centers, exponents and geometry of the lemniscatic set L.

L = {w : prod |w - a_j|^(m_j) <= capacity} has the same capacity, Green's
function values and critical-point structure as E; the centers a_j are
recovered from that correspondence.  Three solver paths exist: explicit
formulas for two components, the nonlinear critical-point system for three,
and the general fixed-point iteration (centers step + critical-point step)
for any count.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (BracketFailure, MaxIterExceeded, NoConvergence,
                     OrderViolation, PoleAtCenter)
from .equilibrium import ExponentVector
from .green import GreenData
from .intervals import IntervalUnion

__all__ = [
    "LemniscaticDomain",
    "green",
    "green_deriv",
    "crit_points",
    "boundary_abscissae",
    "centers_two",
    "centers_three",
    "centers_general",
    "solve_domain",
]


@dataclass(frozen=True)
class LemniscaticDomain:
    """Converged lemniscatic data: centers, masses, capacity, critical points
    w_1..w_{ell-1} and the real zeros c_1..c_{2l} of the Green's function.

    outer_iterations counts the centers-iteration steps that exceeded the
    stopping tolerance (the final sub-tolerance step is not counted, matching
    how iteration counts are usually reported for this scheme).
    """

    centers: tuple[float, ...]
    exponents: ExponentVector
    capacity: float
    crit_w: tuple[float, ...]
    boundary_c: tuple[float, ...]
    outer_iterations: int
    inner_residual: float

    @property
    def ell(self) -> int:
        return len(self.centers)


def _green_scalar(w, a, m, cap) -> float:
    total = -math.log(cap)
    for aj, mj in zip(a, m):
        d = abs(w - aj)
        if d == 0.0:
            raise PoleAtCenter(f"Green's function evaluated at center {aj}")
        total += mj * math.log(d)
    return total


def green(w, dom: LemniscaticDomain):
    """g(w) = sum m_j log|w - a_j| - log(capacity); harmonic off the centers."""
    arr = np.asarray(w, dtype=complex)
    if arr.ndim == 0:
        return _green_scalar(complex(w), dom.centers, dom.exponents.m, dom.capacity)
    d = np.abs(arr[..., None] - np.asarray(dom.centers))
    if np.any(d == 0.0):
        raise PoleAtCenter("Green's function evaluated at a center")
    return np.log(d) @ np.asarray(dom.exponents.m) - math.log(dom.capacity)


def green_deriv(w, dom: LemniscaticDomain):
    """Twice the Wirtinger derivative: sum m_j / (w - a_j)."""
    arr = np.asarray(w, dtype=complex)
    d = arr[..., None] - np.asarray(dom.centers)
    if np.any(d == 0.0):
        raise PoleAtCenter("derivative evaluated at a center")
    out = (1.0 / d) @ np.asarray(dom.exponents.m)
    return complex(out) if out.ndim == 0 else out


def _deriv_raw(w, a, m):
    return math.fsum(mj / (w - aj) for aj, mj in zip(a, m))


def crit_points(a, m) -> np.ndarray:
    """Critical points of the Green's function of the lemniscatic domain, one
    per interval (a_k, a_{k+1}): zeros of sum m_j prod_{i != j} (w - a_i).

    Bisection on the derivative sign change followed by Newton polish on the
    polynomial form (which has no poles at the centers).
    """
    a = [float(v) for v in a]
    m = [float(v) for v in m]
    ell = len(a)

    def poly(w):
        return math.fsum(
            m[j] * math.prod(w - a[i] for i in range(ell) if i != j)
            for j in range(ell))

    def dpoly(w):
        total = 0.0
        for j in range(ell):
            for skip in range(ell):
                if skip == j:
                    continue
                total += m[j] * math.prod(
                    w - a[i] for i in range(ell) if i != j and i != skip)
        return total

    out = []
    for k in range(ell - 1):
        width = a[k + 1] - a[k]
        lo = max(a[k] + 1e-14 * width, float(np.nextafter(a[k], a[k + 1])))
        hi = min(a[k + 1] - 1e-14 * width, float(np.nextafter(a[k + 1], a[k])))
        flo = _deriv_raw(lo, a, m)  # +inf side: positive
        fhi = _deriv_raw(hi, a, m)
        if not (flo > 0 > fhi):
            raise BracketFailure(f"derivative does not change sign in ({a[k]}, {a[k + 1]})")
        for _ in range(90):
            mid = 0.5 * (lo + hi)
            if _deriv_raw(mid, a, m) > 0:
                lo = mid
            else:
                hi = mid
        w = 0.5 * (lo + hi)
        for _ in range(3):
            d = dpoly(w)
            if d == 0.0:
                break
            step = poly(w) / d
            if abs(step) > width:
                break
            w -= step
        out.append(min(max(w, a[k]), a[k + 1]))
    return np.array(out)


def _bisect_green_zero(a, m, cap, lo, hi, f_lo_positive):
    """Zero of the Green's function on (lo, hi) given the sign at lo."""
    def g(w):
        return _green_scalar(w, a, m, cap)

    if (g(lo) > 0) != f_lo_positive:
        raise BracketFailure(f"no bracket for a boundary zero on ({lo}, {hi})")
    x0, x1 = lo, hi
    for _ in range(90):
        mid = 0.5 * (x0 + x1)
        if (g(mid) > 0) == f_lo_positive:
            x0 = mid
        else:
            x1 = mid
    w = 0.5 * (x0 + x1)
    for _ in range(2):
        d = _deriv_raw(w, a, m)
        if d != 0.0 and np.isfinite(d):
            w -= g(w) / d
    return w


def boundary_abscissae(a, m, cap, crit=None) -> np.ndarray:
    """Real zeros c_1 < ... < c_{2l} of the Green's function of C \\ L.

    The outermost zeros are bracketed by doubling an outward step until the
    Green's function turns positive; interior pairs are bracketed against the
    critical points, where the Green's function must be positive.
    """
    a = [float(v) for v in a]
    m = [float(v) for v in m]
    ell = len(a)
    if crit is None:
        crit = crit_points(a, m)

    def g(w):
        return _green_scalar(w, a, m, cap)

    def inward_negative(center, toward):
        # point between center and `toward` where g < 0 (exists: g -> -inf)
        x = toward
        for _ in range(1100):
            x = center + 0.5 * (x - center)
            if x == center:
                raise BracketFailure("bracket collapsed onto a center")
            if g(x) < 0:
                return x
        raise BracketFailure(f"no negative value of g found near center {center}")

    out = []
    # leftmost zero
    r = max(cap, 1e-12)
    for _ in range(200):
        if g(a[0] - r) > 0:
            break
        r *= 2.0
    else:
        raise BracketFailure("g stayed nonpositive arbitrarily far left")
    neg = inward_negative(a[0], a[0] - r)
    out.append(_bisect_green_zero(a, m, cap, a[0] - r, neg, True))
    # interior pairs around each critical point
    for k in range(ell - 1):
        if g(crit[k]) <= 0:
            raise BracketFailure(
                f"Green's function nonpositive at critical point {crit[k]}")
        neg = inward_negative(a[k], crit[k])
        out.append(_bisect_green_zero(a, m, cap, neg, crit[k], False))
        neg = inward_negative(a[k + 1], crit[k])
        out.append(_bisect_green_zero(a, m, cap, crit[k], neg, True))
    # rightmost zero
    r = max(cap, 1e-12)
    for _ in range(200):
        if g(a[-1] + r) > 0:
            break
        r *= 2.0
    else:
        raise BracketFailure("g stayed nonpositive arbitrarily far right")
    neg = inward_negative(a[-1], a[-1] + r)
    out.append(_bisect_green_zero(a, m, cap, neg, a[-1] + r, False))
    return np.array(out)


def centers_two(E: IntervalUnion, m, cap: float, data: GreenData):
    """Explicit two-component centers.

    The center gap is beta = cap / (m_1^m_1 m_2^m_2) * exp(g(z_1)); combined
    with the mass-weighted center sum this pins both centers.
    """
    m1, m2 = float(m[0]), float(m[1])
    beta = cap / (m1 ** m1 * m2 ** m2) * math.exp(data.green_at_roots[0])
    return data.alpha - m2 * beta, data.alpha + m1 * beta


def _center_system(w, m, g_targets, alpha, cap, a0):
    """Newton (analytic Jacobian, residual-halving) for the center equations
    at fixed critical points w.  Returns (a, final residual norm)."""
    m = np.asarray(m, dtype=float)
    w = np.asarray(w, dtype=float)
    targets = np.append(np.asarray(g_targets, dtype=float) + math.log(cap), alpha)
    a = np.array(a0, dtype=float)
    ell = a.size

    def residual(avec):
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = np.log(np.abs(w[:, None] - avec[None, :])) @ m
        return np.append(vals, m @ avec) - targets

    F = residual(a)
    nf = float(np.max(np.abs(F)))
    for _ in range(80):
        if nf < 1e-14:
            break
        J = np.empty((ell, ell))
        J[:-1, :] = -m[None, :] / (w[:, None] - a[None, :])
        J[-1, :] = m
        try:
            step = np.linalg.solve(J, -F)
        except np.linalg.LinAlgError:
            break
        if not np.all(np.isfinite(step)):
            break
        accepted = False
        d = 1.0
        for _ in range(20):
            trial = a + d * step
            Ft = residual(trial)
            nft = float(np.max(np.abs(Ft)))
            # a disordering trial counts as a failed step: the fixed-w system
            # can have spurious stationary points outside the ordered cone
            if np.isfinite(nft) and nft < nf and np.all(np.diff(trial) > 0):
                accepted = True
                break
            d *= 0.5
        if not accepted:
            break
        a, F, nf = trial, Ft, nft
        if d * float(np.max(np.abs(step))) < 1e-15 * max(1.0, float(np.max(np.abs(a)))):
            break
    return a, nf


def centers_three(E: IntervalUnion, m, cap: float, data: GreenData,
                  max_iter: int = 100):
    """Three-component centers from the critical-point system.

    The two critical points are the explicit quadratic roots, so the three
    unknown centers satisfy two Green's-value equations plus the weighted
    center sum, solved by Newton with the analytic Jacobian (the critical
    points are stationary, so their sensitivity drops out).
    """
    m = np.asarray(m, dtype=float)
    g1, g2 = data.green_at_roots
    alpha = data.alpha
    b = E.endpoints
    a = np.array([(b[0] + b[1]) / 2, (b[2] + b[3]) / 2, (b[4] + b[5]) / 2])

    def crit_quadratic(avec):
        S = avec.sum()
        B = float(m @ (S - avec))
        C = float(m[0] * avec[1] * avec[2] + m[1] * avec[0] * avec[2]
                  + m[2] * avec[0] * avec[1])
        disc = math.sqrt(max(B * B - 4.0 * C, 0.0))
        return np.array([(B - disc) / 2.0, (B + disc) / 2.0])

    def residual(avec):
        w = crit_quadratic(avec)
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = np.log(np.abs(w[:, None] - avec[None, :])) @ m
        return np.append(vals - math.log(cap) - np.array([g1, g2]),
                         m @ avec - alpha), w

    F, w = residual(a)
    nf = float(np.max(np.abs(F)))
    for _ in range(max_iter):
        if nf < 1e-14:
            return a
        J = np.empty((3, 3))
        J[:2, :] = -m[None, :] / (w[:, None] - a[None, :])
        J[2, :] = m
        step = np.linalg.solve(J, -F)
        accepted = False
        d = 1.0
        for _ in range(20):
            trial = a + d * step
            Ft, wt = residual(trial)
            nft = float(np.max(np.abs(Ft)))
            if np.isfinite(nft) and nft < nf:
                accepted = True
                break
            d *= 0.5
        if not accepted:
            break
        a, F, w, nf = trial, Ft, wt, nft
    if nf < 1e-10:
        return a
    raise NoConvergence(f"three-center system stalled at residual {nf:.3e}")


def centers_general(E: IntervalUnion, m, cap: float, data: GreenData,
                    abstol: float = 1e-13, reltol: float = 1e-13):
    """General centers iteration: alternate the fixed-critical-point center
    solve with a critical-point update, from component/gap midpoints.

    Returns (centers, crit_w, outer_iterations, inner_residual);
    outer_iterations counts steps that exceeded the stopping tolerance.
    """
    if E.ell < 2:
        raise ValueError("need at least two components")
    b = E.endpoints
    ell = E.ell
    a = np.array([(b[2 * j] + b[2 * j + 1]) / 2 for j in range(ell)])
    w = np.array([(b[2 * j + 1] + b[2 * j + 2]) / 2 for j in range(ell - 1)])
    g_targets = data.green_at_roots
    productive = 0
    for _ in range(50):
        a_new, resid = _center_system(w, m, g_targets, data.alpha, cap, a)
        if np.any(np.diff(a_new) <= 0):
            raise OrderViolation(f"center iterate out of order: {a_new}")
        w = crit_points(a_new, m)
        converged = bool(np.all(np.abs(a_new - a) < abstol + reltol * np.abs(a)))
        a = a_new
        if converged:
            return a, w, productive, resid
        productive += 1
    raise MaxIterExceeded("center iteration did not converge in 50 outer steps")


def solve_domain(E: IntervalUnion, data: GreenData, m: ExponentVector,
                 abstol: float = 1e-13, reltol: float = 1e-13) -> LemniscaticDomain:
    """Dispatch to the right centers path and assemble the full domain.

    One component forces a_1 = alpha (disk); two components are explicit;
    three or more run the general iteration (the three-center system solver
    stays available as a cross-check path).
    """
    cap = data.capacity
    ell = E.ell
    if ell == 1:
        a = np.array([data.alpha])
        w = np.array([])
        iterations, resid = 0, 0.0
    elif ell == 2:
        a = np.array(centers_two(E, m.m, cap, data))
        w = np.array([m[1] * a[0] + m[0] * a[1]])
        resid = abs(_green_scalar(float(w[0]), a, m.m, cap) - data.green_at_roots[0])
        iterations = 0
    else:
        a, w, iterations, resid = centers_general(E, m.m, cap, data,
                                                  abstol=abstol, reltol=reltol)
    if np.any(np.diff(a) <= 0):
        raise OrderViolation(f"centers out of order: {a}")
    interlaced = np.empty(2 * ell - 1)
    interlaced[0::2] = a
    if ell > 1:
        interlaced[1::2] = w
    if np.any(np.diff(interlaced) <= 0):
        raise OrderViolation("critical points do not interlace the centers")
    c = boundary_abscissae(a, m.m, cap, crit=w)
    # required ordering: c_1 < a_1 < c_2 < c_3 < a_2 < ... < a_ell < c_2l
    seq = [c[0], a[0]]
    for j in range(1, ell):
        seq += [c[2 * j - 1], c[2 * j], a[j]]
    seq.append(c[-1])
    if np.any(np.diff(np.array(seq)) <= 0):
        raise OrderViolation("boundary abscissae out of order")
    return LemniscaticDomain(
        centers=tuple(float(v) for v in a),
        exponents=m,
        capacity=cap,
        crit_w=tuple(float(v) for v in w),
        boundary_c=tuple(float(v) for v in c),
        outer_iterations=iterations,
        inner_residual=float(resid),
    )
