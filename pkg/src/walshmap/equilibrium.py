"""Equilibrium-measure density and the component masses m_1..m_ell.

The masses double as the exponents of the lemniscatic set: the mass the
equilibrium measure puts on component j equals the exponent attached to the
center a_j.  They are computed from the density N/(pi sqrt|H|) integrated
over each component, and cross-checkable by a contour integral of the Green's
derivative around the component.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import NormalizationDefect, OutsideSupport, PadTooLarge
from .green import GreenData, _component_weight_fd
from .intervals import IntervalUnion, locate
from .quadrature import (DEFAULT_CONFIG, QuadConfig, integrate_chebyshev,
                         integrate_segment_complex)

__all__ = ["ExponentVector", "density", "exponents", "contour_mass"]


@dataclass(frozen=True)
class ExponentVector:
    """Masses m_1..m_ell, renormalized to sum exactly to 1.

    `defect` records |sum - 1| before renormalization (a quadrature
    diagnostic; downstream identities assume the exact sum).
    """

    m: tuple[float, ...]
    defect: float

    def __post_init__(self):
        if any(v <= 0 for v in self.m):
            raise ValueError("masses must be positive")

    def __len__(self):
        return len(self.m)

    def __getitem__(self, j):
        return self.m[j]


def density(x: float, data: GreenData) -> float:
    """Equilibrium density |N(x)| / (pi sqrt|H(x)|) at x strictly inside E.

    Diverges at the endpoints; evaluation there (or off E) raises
    OutsideSupport.
    """
    E = data.domain
    x = float(x)
    loc = locate(E, complex(x))
    if not loc.inside or x in E.endpoints:
        raise OutsideSupport(f"x = {x} is not strictly inside a component")
    absH = math.prod(abs(x - bj) for bj in E.endpoints)
    num = abs(math.prod(x - zk for zk in data.roots))
    return num / (math.pi * math.sqrt(absH))


def exponents(E: IntervalUnion, data: GreenData,
              cfg: QuadConfig | None = None) -> ExponentVector:
    """Component masses by integrating the density over each component.

    On component j the numerator polynomial has constant sign (-1)^(ell-j),
    which is used instead of abs() to keep the integrand smooth for the
    Chebyshev rule.  The result is renormalized to sum exactly to 1.
    """
    cfg = cfg or DEFAULT_CONFIG
    ell = E.ell
    if ell == 1:
        return ExponentVector((1.0,), 0.0)
    roots = np.asarray(data.roots)
    raw = []
    for j in range(1, ell + 1):
        lo, hi, weight = _component_weight_fd(E, j)
        sign = (-1.0) ** (ell - j)

        def fd(x, d_lo, d_hi, sign=sign, weight=weight):
            num = np.ones_like(x)
            for zk in roots:
                num = num * (x - zk)
            return sign / math.pi * num * weight(x, d_lo, d_hi)

        raw.append(integrate_chebyshev(None, lo, hi, cfg, fd=fd))
    total = math.fsum(raw)
    defect = abs(total - 1.0)
    if defect > 1e-8:
        raise NormalizationDefect(
            f"component masses sum to {total!r} before renormalization")
    return ExponentVector(tuple(v / total for v in raw), defect)


def contour_mass(E: IntervalUnion, data: GreenData, j: int, pad: float,
                 cfg: QuadConfig | None = None) -> float:
    """Mass of component j by a contour integral of the Green's derivative.

    Integrates N/S counterclockwise over the rectangle with horizontal pad
    and half-height `pad` around component j (1-based).  Test oracle, not a
    production path; raises PadTooLarge if the rectangle would reach another
    component.
    """
    cfg = cfg or DEFAULT_CONFIG
    if not 1 <= j <= E.ell:
        raise ValueError(f"component index {j} out of range")
    if pad <= 0:
        raise ValueError("pad must be positive")
    b = E.endpoints
    lo, hi = b[2 * j - 2] - pad, b[2 * j - 1] + pad
    for i in range(E.ell):
        if i != j - 1 and not (b[2 * i] > hi or b[2 * i + 1] < lo):
            raise PadTooLarge(
                f"pad {pad} reaches component {i + 1}; shrink the rectangle")

    roots = np.asarray(data.roots, dtype=complex)
    ends = np.asarray(b, dtype=complex)

    def f(z):
        num = np.ones_like(z)
        for zk in roots:
            num = num * (z - zk)
        den = np.ones_like(z)
        for bj in ends:
            den = den * np.sqrt(z - bj)
        return num / den

    corners = [complex(lo, -pad), complex(hi, -pad), complex(hi, pad),
               complex(lo, pad), complex(lo, -pad)]
    total = 0j
    for z0, z1 in zip(corners[:-1], corners[1:]):
        total += integrate_segment_complex(f, z0, z1, cfg=cfg)
    return (total / (2j * math.pi)).real
