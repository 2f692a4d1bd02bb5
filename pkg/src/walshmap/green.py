"""Green's function of the complement of an interval union.

Everything on the E side: the analytic square-root branch of the endpoint
polynomial, the monic numerator polynomial of the Green's derivative, its
roots (the critical points), the real and complex Green's function, the
logarithmic capacity, and the 1/z^2 Laurent coefficient alpha.

Twice the Wirtinger derivative of the Green's function is N(z)/S(z), where
S = sqrt_branch is the square root of prod(z - b_j) that behaves like z^ell
at infinity and N is the monic degree ell-1 polynomial whose integral over
every bounded gap of E vanishes.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (CapacityMismatch, NoConvergence, NotOnCut, OnCutError,
                     PathOnCut, RootNotBracketed, SingularSystem)
from .intervals import IntervalUnion, locate
from .quadrature import (DEFAULT_CONFIG, QuadConfig, integrate_chebyshev,
                         integrate_segment_complex, integrate_tail)

__all__ = [
    "GreenData",
    "sqrt_branch",
    "sqrt_branch_rim",
    "green_poly",
    "critical_points",
    "green_real",
    "green_complex",
    "capacity",
    "alpha_coefficient",
    "rational_mass_fit",
    "green_data",
]


@dataclass(frozen=True)
class GreenData:
    """Computed Green's-function data for one interval union.

    coeffs holds the full ascending coefficients of the monic numerator
    polynomial (last entry 1.0); roots are its zeros, one per bounded gap,
    which are exactly the critical points of the Green's function.
    Immutable; all evaluation helpers are pure.
    """

    domain: IntervalUnion
    coeffs: tuple[float, ...]
    roots: tuple[float, ...]
    green_at_roots: tuple[float, ...]
    capacity: float
    capacity_mismatch: float
    alpha: float


def sqrt_branch(E: IntervalUnion, z) -> complex:
    """Branch of sqrt(prod(z - b_j)) that behaves like z^ell at infinity.

    Computed as the product of principal square roots sqrt(z - b_j), which is
    analytic exactly off E; on the bounded gaps it is real with sign
    (-1)^(ell - k).  Raises OnCutError on E itself (use sqrt_branch_rim).
    """
    z = np.asarray(z, dtype=complex)
    b = E.endpoints
    on_axis = z.imag == 0.0
    if np.any(on_axis):
        x = z.real
        for j in range(E.ell):
            if np.any(on_axis & (b[2 * j] <= x) & (x <= b[2 * j + 1])):
                raise OnCutError("sqrt_branch evaluated on E; use sqrt_branch_rim")
    for bj in b:
        d = z - bj
        # values this close to an endpoint are indistinguishable from the cut
        if np.any(np.abs(d) < 1e-300):
            raise OnCutError(f"evaluation point within 1e-300 of endpoint {bj}")
    out = np.ones_like(z)
    for bj in b:
        out = out * np.sqrt(z - bj)
    return out if out.ndim else complex(out)


def sqrt_branch_rim(E: IntervalUnion, x, side: int) -> complex:
    """One-sided limit of sqrt_branch on the cut, from above (+1) or below (-1).

    For x on component j the limit is  side * i * (-1)^(ell - j) * sqrt|H(x)|
    with the positive real root.
    """
    if side not in (1, -1):
        raise ValueError("side must be +1 or -1")
    x = float(x)
    loc = locate(E, x)
    if not loc.inside:
        raise NotOnCut(f"x = {x} is not on E")
    b = E.endpoints
    absH = math.prod(abs(x - bj) for bj in b)
    return side * 1j * (-1) ** (E.ell - loc.index) * math.sqrt(absH)


def _gap_weight_fd(E: IntervalUnion, k: int):
    """Integrand builder for the bounded gap I_k: 1/sqrt|H| with exact endpoint
    distances; multiply the returned weight by any polynomial factor."""
    b = E.endpoints
    lo, hi = b[2 * k - 1], b[2 * k]
    others = [bj for bj in b if bj != lo and bj != hi]
    lo_off = [lo - bj for bj in others]

    def weight(x, d_lo, d_hi):
        absH = d_lo * d_hi
        for off in lo_off:
            absH = absH * np.abs(off + d_lo)
        return 1.0 / np.sqrt(absH)

    return lo, hi, weight


def _component_weight_fd(E: IntervalUnion, j: int):
    """Same as _gap_weight_fd for the j-th component (1-based)."""
    b = E.endpoints
    lo, hi = b[2 * j - 2], b[2 * j - 1]
    others = [bj for bj in b if bj != lo and bj != hi]
    lo_off = [lo - bj for bj in others]

    def weight(x, d_lo, d_hi):
        absH = d_lo * d_hi
        for off in lo_off:
            absH = absH * np.abs(off + d_lo)
        return 1.0 / np.sqrt(absH)

    return lo, hi, weight


def _seed_coeffs(E: IntervalUnion, cfg: QuadConfig) -> np.ndarray:
    """First pass at the numerator polynomial from the moment system.

    Assembled in a Chebyshev basis on the rescaled hull with equilibrated
    rows.  For clustered sets the system's conditioning caps the coefficient
    accuracy near cond * eps, so the result only seeds the root refinement.
    """
    ell = E.ell
    b = E.endpoints
    center = 0.5 * (b[0] + b[-1])
    scale = 0.5 * (b[-1] - b[0])
    tight = QuadConfig(abs_tol=max(cfg.abs_tol / 100.0, 1e-14),
                       rel_tol=max(cfg.rel_tol / 100.0, 1e-14),
                       max_level=cfg.max_level)

    def moment(lo, hi, fd):
        try:
            return integrate_chebyshev(None, lo, hi, tight, fd=fd)
        except NoConvergence as exc:
            if exc.estimate is not None and exc.estimate <= cfg.tolerance(exc.best):
                return exc.best
            raise

    n = ell - 1
    moments = np.empty((n, ell))
    for k in range(1, ell):
        lo, hi, weight = _gap_weight_fd(E, k)
        for p in range(ell):
            def fd(x, d_lo, d_hi, p=p, weight=weight):
                y = np.clip((x - center) / scale, -1.0, 1.0)
                return np.cos(p * np.arccos(y)) * weight(x, d_lo, d_hi)
            moments[k - 1, p] = moment(lo, hi, fd)

    # monic leading monomial fixes the top Chebyshev coefficient; narrow gaps
    # carry huge 1/sqrt|H| weight, so equilibrate the rows before elimination
    lead = 1.0 if ell == 2 else 2.0 ** (2 - ell)
    row_scale = moments[:, 0].copy()
    M = moments[:, :n] / row_scale[:, None]
    rhs = -lead * moments[:, n] / row_scale
    cheb_low = _solve_partial_pivot(M, rhs)
    cheb_low += _solve_partial_pivot(M, rhs - M @ cheb_low)
    coeffs_y = np.polynomial.chebyshev.cheb2poly(np.append(cheb_low, lead))

    poly_y = np.polynomial.Polynomial(coeffs_y)
    affine = np.polynomial.Polynomial([-center / scale, 1.0 / scale])
    poly_x = scale ** (ell - 1) * poly_y(affine)
    return poly_x.coef / poly_x.coef[-1]  # enforce exact monicity


def _root_products(x, roots, skip=None):
    out = np.ones_like(x)
    for j, zj in enumerate(roots):
        if j != skip:
            out = out * (x - zj)
    return out


def _gap_system(E: IntervalUnion, roots, cfg: QuadConfig, want_jacobian=True):
    """Residuals F_i = integral over gap i of prod(x - z_k)/sqrt|H| and the
    Jacobian dF_i/dz_j = -integral of the product with factor j removed."""
    ell = E.ell
    n = ell - 1
    F = np.empty(n)
    J = np.empty((n, n)) if want_jacobian else None
    for i in range(1, ell):
        lo, hi, weight = _gap_weight_fd(E, i)

        def fd(x, d_lo, d_hi, skip=None):
            return _root_products(x, roots, skip) * weight(x, d_lo, d_hi)

        F[i - 1] = integrate_chebyshev(None, lo, hi, cfg, fd=fd)
        if want_jacobian:
            for j in range(n):
                J[i - 1, j] = -integrate_chebyshev(
                    None, lo, hi, cfg,
                    fd=lambda x, d_lo, d_hi, j=j: fd(x, d_lo, d_hi, skip=j))
    return F, J


def _solve_numerator(E: IntervalUnion, cfg: QuadConfig):
    """Numerator roots and coefficients to quadrature accuracy.

    The moment-system seed is polished by Newton on the gap conditions in
    root space, which is well conditioned (one root per gap, diagonally
    dominant Jacobian) even when the coefficient problem is not.
    """
    ell = E.ell
    if ell == 1:
        return np.array([1.0]), np.array([])
    seed = _seed_coeffs(E, cfg)
    roots = critical_points(E, seed)
    b = E.endpoints
    scale = None
    for _ in range(4):
        F, J = _gap_system(E, roots, cfg)
        scale = np.abs(J) @ np.maximum(np.abs(roots), 1.0)
        if np.all(np.abs(F) <= cfg.tolerance(1.0) * scale):
            break
        try:
            delta = np.linalg.solve(J, -F)
        except np.linalg.LinAlgError as exc:
            raise SingularSystem(f"gap-condition Jacobian singular: {exc}")
        roots = roots + delta
        for k in range(1, ell):  # refinement must stay inside the gaps
            if not b[2 * k - 1] < roots[k - 1] < b[2 * k]:
                raise RootNotBracketed(
                    f"refined root left gap {k}: {roots[k - 1]}")
    # final verification of every gap condition at the refined roots; the
    # scale is the roundoff amplification |J| |z| eps of representing them
    F, _ = _gap_system(E, roots, cfg, want_jacobian=False)
    bad = np.abs(F) > 10.0 * cfg.tolerance(1.0) * scale
    if np.any(bad):
        k = int(np.argmax(np.abs(F) / scale)) + 1
        raise SingularSystem(
            f"gap condition violated on gap {k}: residual {F[k - 1]:.3e}")
    return np.polynomial.polynomial.polyfromroots(roots), roots


def green_poly(E: IntervalUnion, cfg: QuadConfig | None = None) -> np.ndarray:
    """Monic numerator polynomial of the Green's derivative (ascending coeffs).

    A moment-system solve (Chebyshev basis on the rescaled hull, equilibrated
    rows, one refinement pass) seeds Newton on the gap conditions in root
    space; every gap condition is re-verified at the result.
    """
    coeffs, _ = _solve_numerator(E, cfg or DEFAULT_CONFIG)
    return coeffs


def _solve_partial_pivot(M: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Dense LU with partial pivoting; raises SingularSystem on pivot collapse."""
    n = M.shape[0]
    A = np.hstack([M.astype(float), rhs.reshape(-1, 1).astype(float)])
    pivots = []
    for col in range(n):
        piv = col + int(np.argmax(np.abs(A[col:, col])))
        if A[piv, col] == 0.0:
            raise SingularSystem("moment matrix is exactly singular")
        if piv != col:
            A[[col, piv]] = A[[piv, col]]
        pivots.append(abs(A[col, col]))
        A[col + 1:, col:] -= np.outer(A[col + 1:, col] / A[col, col], A[col, col:])
    if min(pivots) / max(pivots) < 1e-13:
        raise SingularSystem(
            f"moment matrix numerically singular (pivot ratio "
            f"{min(pivots) / max(pivots):.2e})")
    x = np.empty(n)
    for row in range(n - 1, -1, -1):
        x[row] = (A[row, n] - A[row, row + 1:n] @ x[row + 1:]) / A[row, row]
    return x


def critical_points(E: IntervalUnion, coeffs) -> np.ndarray:
    """Roots of the numerator polynomial, one per bounded gap.

    Bisection bracketed on each gap down to width 1e-10, then three Newton
    polish steps with the analytic derivative.
    """
    coeffs = np.asarray(coeffs, dtype=float)
    dcoeffs = np.polynomial.polynomial.polyder(coeffs)
    b = E.endpoints
    roots = []
    for k in range(1, E.ell):
        lo, hi = b[2 * k - 1], b[2 * k]
        flo = np.polynomial.polynomial.polyval(lo, coeffs)
        fhi = np.polynomial.polynomial.polyval(hi, coeffs)
        if flo == 0.0 or fhi == 0.0 or (flo > 0) == (fhi > 0):
            raise RootNotBracketed(
                f"no sign change of the numerator polynomial on gap {k}")
        while hi - lo > 1e-10:
            mid = 0.5 * (lo + hi)
            fm = np.polynomial.polynomial.polyval(mid, coeffs)
            if fm == 0.0:
                lo = hi = mid
                break
            if (fm > 0) == (flo > 0):
                lo, flo = mid, fm
            else:
                hi = mid
        z = 0.5 * (lo + hi)
        for _ in range(3):
            fz = np.polynomial.polynomial.polyval(z, coeffs)
            dz = np.polynomial.polynomial.polyval(z, dcoeffs)
            if dz == 0.0:
                break
            step = fz / dz
            if abs(step) > 2.0 * max(hi - lo, 1e-10):
                break  # polishing must stay inside the bisection bracket
            z -= step
        roots.append(z)
    return np.array(roots)


def _deriv_integrand(E: IntervalUnion, roots, base: float):
    """fd(offset) evaluating N(base+offset)/S(base+offset) from exact offsets.

    `base` must be an endpoint of E so that the local 1/sqrt factor is
    represented by the offset alone.
    """
    b = E.endpoints
    b_off = [base - bj for bj in b]
    r_off = [base - zk for zk in roots]

    def fd(offset):
        num = np.ones_like(offset)
        for off in r_off:
            num = num * (off + offset)
        den = np.ones_like(offset)
        for off in b_off:
            den = den * np.sqrt(off + offset)
        return num / den

    return fd


def _green_real(E: IntervalUnion, roots, x: float, cfg: QuadConfig) -> float:
    if E.contains(x):
        return 0.0
    loc = locate(E, complex(x))
    k = loc.index
    b = E.endpoints
    if k == 0:
        base = b[0]
    elif k == E.ell:
        base = b[-1]
    else:
        lo, hi = b[2 * k - 1], b[2 * k]
        base = lo if x - lo <= hi - x else hi
    val = _green_integral(E, roots, base, complex(x), cfg).real
    if val < 0.0:
        val = max(val, 0.0) if val > -100.0 * cfg.abs_tol else val
    return val


def green_real(z: float, E: IntervalUnion, data: GreenData,
               cfg: QuadConfig | None = None) -> float:
    """Green's function at real z, integrated from the nearest endpoint of the
    surrounding gap.  Zero on E itself."""
    return _green_real(E, data.roots, float(z), cfg or DEFAULT_CONFIG)


def _plain_deriv(E: IntervalUnion, roots):
    """Vectorized N/S for points comfortably away from every endpoint."""
    ends = np.asarray(E.endpoints, dtype=complex)
    roots = np.asarray(roots, dtype=complex)

    def f(z):
        num = np.ones_like(z)
        for zk in roots:
            num = num * (z - zk)
        den = np.ones_like(z)
        for bj in ends:
            den = den * np.sqrt(z - bj)
        return num / den

    return f


def _green_integral(E: IntervalUnion, roots, base: float, z: complex,
                    cfg: QuadConfig) -> complex:
    """Integral of N/S along the straight segment from the endpoint `base`
    to z.

    The segment is subdivided at its closest-approach points to any other
    endpoint that comes within a tenth of the path length: a branch point
    near the middle of a Gauss panel stalls the rule, while one just beyond
    a panel end is harmless.
    """
    z = complex(z)
    span = z - base
    length = abs(span)
    length2 = length * length
    splits = []
    for bj in E.endpoints:
        if bj == base:
            continue
        s = ((bj - base) * span.conjugate()).real / length2
        if not 1e-9 < s < 1.0 - 1e-9:
            continue
        if abs(base + span * s - bj) < 0.1 * length:
            splits.append(s)
    # far targets: the integrand decays like 1/zeta over many decades, which a
    # single Gauss panel cannot resolve; subdivide geometrically beyond the set
    hull = E.endpoints[-1] - E.endpoints[0]
    d = 4.0 * hull
    while d < 0.5 * length:
        splits.append(d / length)
        d *= 8.0
    splits.sort()
    knots = []
    for s in splits:
        if not knots or s > knots[-1] * (1.0 + 1e-6):
            knots.append(s)

    fd = _deriv_integrand(E, roots, base)
    if not knots:
        return integrate_segment_complex(None, base, z, singular_at_start=True,
                                         cfg=cfg, fd=fd)
    points = [base + span * s for s in knots] + [z]
    total = integrate_segment_complex(None, base, points[0],
                                      singular_at_start=True, cfg=cfg, fd=fd)
    f = _plain_deriv(E, roots)
    for z0, z1 in zip(points[:-1], points[1:]):
        total += integrate_segment_complex(f, z0, z1, cfg=cfg)
    return total


def green_complex(z: complex, E: IntervalUnion, data: GreenData,
                  cfg: QuadConfig | None = None) -> complex:
    """Complex Green's integral from the rightmost endpoint along the straight
    segment to z; its real part is the Green's function.

    Defined on the complement of (-inf, b_{2l}]; raises PathOnCut on that
    half-line (use green_real / rim conventions there).
    """
    cfg = cfg or DEFAULT_CONFIG
    z = complex(z)
    base = E.endpoints[-1]
    if z.imag == 0.0 and z.real <= base:
        raise PathOnCut(f"z = {z} lies on the excluded half-line")
    return _green_integral(E, data.roots, base, z, cfg)


def _tail_ratio_fd(E: IntervalUnion, roots, side: int):
    """Magnitude of N/S on an unbounded gap as a function of the distance to
    the outermost endpoint; the factors are paired root-against-component so
    no partial product can overflow however far out the tail rule samples."""
    b = E.endpoints
    ell = E.ell
    if side > 0:
        base = b[-1]
        r_off = [base - zk for zk in roots]
        comp_off = [(base - b[2 * i], base - b[2 * i + 1]) for i in range(ell - 1)]
        solo = base - b[-2]
    else:
        base = b[0]
        r_off = [zk - base for zk in roots]
        comp_off = [(b[2 * i] - base, b[2 * i + 1] - base) for i in range(1, ell)]
        solo = b[1] - base

    def fd(delta):
        val = 1.0 / (np.sqrt(delta) * np.sqrt(delta + solo))
        for off, (c1, c2) in zip(r_off, comp_off):
            val = val * ((delta + off) / np.sqrt((delta + c1) * (delta + c2)))
        return val

    return base, fd


def _capacity_one(E: IntervalUnion, roots, side: int, beta: float,
                  cfg: QuadConfig) -> float:
    base, ratio = _tail_ratio_fd(E, roots, side)
    shift = side * (base - beta)  # > 0 on either legal side
    if shift <= 0:
        raise ValueError("beta must lie strictly on the far side of the endpoint")

    def fd(delta):
        # on both tails the signed integrand reduces to 1/|x-beta| - |N/S|
        return 1.0 / (delta + shift) - ratio(delta)

    integral = integrate_tail(None, base, side, cfg, fd=fd)
    return shift * math.exp(integral)


def capacity(E: IntervalUnion, data_or_roots, cfg: QuadConfig | None = None,
             beta_right: float | None = None,
             beta_left: float | None = None) -> float:
    """Logarithmic capacity as the mean of the two tail formulas.

    Evaluates the right-tail formula with beta_right (default b_{2l} - 1) and
    the left-tail formula with beta_left (default b_1 + 1); their discrepancy
    is a built-in consistency diagnostic.
    """
    cfg = cfg or DEFAULT_CONFIG
    roots = data_or_roots.roots if isinstance(data_or_roots, GreenData) else data_or_roots
    cap1, cap2 = _capacity_both(E, roots, cfg, beta_right, beta_left)
    cap = 0.5 * (cap1 + cap2)
    if abs(cap1 - cap2) > 100.0 * cfg.tolerance(cap):
        raise CapacityMismatch(
            f"capacity formulas disagree: {cap1!r} vs {cap2!r}")
    return cap


def _capacity_both(E, roots, cfg, beta_right=None, beta_left=None):
    b = E.endpoints
    beta_right = b[-1] - 1.0 if beta_right is None else beta_right
    beta_left = b[0] + 1.0 if beta_left is None else beta_left
    cap1 = _capacity_one(E, roots, +1, beta_right, cfg)
    cap2 = _capacity_one(E, roots, -1, beta_left, cfg)
    return cap1, cap2


def alpha_coefficient(E: IntervalUnion, roots) -> float:
    """Coefficient of 1/z^2 in the expansion of twice the Green's derivative:
    half the endpoint sum minus the critical-point sum.  Equals the
    mass-weighted sum of the lemniscatic centers."""
    return 0.5 * math.fsum(E.endpoints) - math.fsum(float(r) for r in roots)


def rational_mass_fit(m, tol: float = 1e-6, max_denominator: int = 64):
    """Search a common denominator n <= max_denominator with m_j ~ n_j/n.

    Returns (n, (n_1, ..., n_ell)) for the smallest fitting n, or None.  A fit
    signals (numerically, within tol) that E may be a polynomial pre-image;
    no claim is made beyond the tolerance.
    """
    m = [float(v) for v in m]
    for n in range(1, max_denominator + 1):
        counts = [round(v * n) for v in m]
        if any(c < 1 for c in counts) or sum(counts) != n:
            continue
        if all(abs(v - c / n) <= tol for v, c in zip(m, counts)):
            return n, tuple(counts)
    return None


def green_data(E: IntervalUnion, cfg: QuadConfig | None = None) -> GreenData:
    """Compute the full Green's-function data set for E."""
    cfg = cfg or DEFAULT_CONFIG
    coeffs, roots = _solve_numerator(E, cfg)
    green_at_roots = tuple(_green_real(E, roots, float(z), cfg) for z in roots)
    cap1, cap2 = _capacity_both(E, roots, cfg)
    cap = 0.5 * (cap1 + cap2)
    if abs(cap1 - cap2) > 100.0 * cfg.tolerance(cap):
        raise CapacityMismatch(f"capacity formulas disagree: {cap1!r} vs {cap2!r}")
    return GreenData(
        domain=E,
        coeffs=tuple(float(c) for c in coeffs),
        roots=tuple(float(z) for z in roots),
        green_at_roots=green_at_roots,
        capacity=cap,
        capacity_mismatch=abs(cap1 - cap2),
        alpha=alpha_coefficient(E, roots),
    )
