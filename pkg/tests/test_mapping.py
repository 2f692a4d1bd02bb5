import cmath
import math

import numpy as np
import pytest

from walshmap.errors import InsideE
from walshmap.green import green_complex
from walshmap.lemniscatic import green as green_level
from walshmap.mapping import branch_offset, map_grid, map_point, trace_boundary

import reference_values as ref


def joukowski_half(z):
    z = complex(z)
    return 0.5 * (z + cmath.sqrt(z - 1.0) * cmath.sqrt(z + 1.0))


def test_single_interval_against_closed_form(single_interval):
    wm = single_interval
    for z in (2.0, 1.0001, -3.7, 0.5 + 0.5j, -1.2 - 2.0j, 4.0 + 0.1j):
        res = wm.map_point(z)
        assert abs(res.w - joukowski_half(z)) < 1e-10
        assert res.residual < 1e-12


def test_critical_point_maps_to_critical_point(two_interval):
    wm = two_interval
    z1 = wm.green.roots[0]
    res = wm.map_point(z1)
    assert res.w == wm.lemniscatic.crit_w[0]
    assert res.iterations == 0
    assert res.branch == "real_gap" and res.index == 1


def test_endpoints_map_to_boundary_abscissae(three_interval):
    wm = three_interval
    for j, b in enumerate(wm.domain.endpoints):
        res = wm.map_point(b)
        assert res.branch == "boundary" and res.index == j + 1
        assert res.w == wm.lemniscatic.boundary_c[j]
        assert res.residual < 1e-10


def test_interior_point_rejected(two_interval):
    with pytest.raises(InsideE):
        map_point(0.5, two_interval.domain, two_interval.lemniscatic,
                  two_interval.green)


def test_conjugation_symmetry(two_interval):
    wm = two_interval
    for z in (0.3 + 0.8j, -1.5 + 0.4j, 2.0 + 1.0j):
        up = wm.map_point(z).w
        dn = wm.map_point(z.conjugate()).w
        assert abs(up - dn.conjugate()) < 1e-12


def test_real_gap_results_stay_in_uniqueness_brackets(three_interval):
    wm = three_interval
    b = wm.domain.endpoints
    dom = wm.lemniscatic
    for k in range(1, wm.domain.ell):
        zk = wm.green.roots[k - 1]
        wk = dom.crit_w[k - 1]
        c_lo, c_hi = dom.boundary_c[2 * k - 1], dom.boundary_c[2 * k]
        for frac in (0.15, 0.5, 0.85):
            z = b[2 * k - 1] + frac * (zk - b[2 * k - 1])
            res = wm.map_point(z)
            assert res.branch == "real_gap" and res.index == k
            assert c_lo < res.w.real < wk
            z = zk + frac * (b[2 * k] - zk)
            res = wm.map_point(z)
            assert wk < res.w.real < c_hi


def test_monotone_on_gaps(two_interval):
    wm = two_interval
    b = wm.domain.endpoints
    for lo, hi in [(b[0] - 2.0, b[0] - 1e-6),
                   (b[1] + 1e-7, b[2] - 1e-7),
                   (b[3] + 1e-6, b[3] + 2.0)]:
        ws = [wm.map_point(float(x)).w.real for x in np.linspace(lo, hi, 25)]
        assert all(x < y for x, y in zip(ws, ws[1:]))


def test_far_field_normalization(two_interval):
    wm = two_interval
    deviations = []
    for radius in (1e2, 1e3, 1e4):
        z = radius * cmath.exp(0.9j)
        res = wm.map_point(z)
        deviations.append(abs(res.w - z))
        assert deviations[-1] < 10.0 / radius
    assert deviations[0] > deviations[1] > deviations[2]


def test_near_boundary_flag(two_interval):
    res = two_interval.map_point(0.5 + 5e-10j)
    assert res.near_boundary
    assert res.residual < 1e-12
    far = two_interval.map_point(0.5 + 0.5j)
    assert not far.near_boundary


def test_grid_statuses_and_green_identity(two_interval):
    wm = two_interval
    zs = [complex(x, y) for y in (-0.6, 0.0, 0.6) for x in (-0.65, 0.0, 0.65)]
    points = wm.map_grid(zs)
    assert [p.z for p in points] == zs
    status = {(p.z.real, p.z.imag): p.status for p in points}
    assert status[(-0.65, 0.0)] == "skipped"  # inside the left component
    assert status[(0.65, 0.0)] == "skipped"
    assert status[(0.0, 0.0)] == "converged"  # the gap point
    for p in points:
        if p.status != "converged" or p.z.imag == 0.0:
            continue
        g_e = green_complex(p.z, wm.domain, wm.green).real
        assert abs(g_e - green_level(p.result.w, wm.lemniscatic)) < 1e-9


def test_grid_empty():
    from walshmap.api import solve
    wm = solve([[-1, 1]])
    assert wm.map_grid([]) == []


def test_injectivity_sample(two_interval):
    wm = two_interval
    xs = np.linspace(-2.0, 2.0, 50)
    ys = np.linspace(-2.0, 2.0, 50)
    ws = np.array([wm.map_point(complex(x, y)).w for y in ys for x in xs])
    for i in range(len(ws) - 1):
        assert np.min(np.abs(ws[i + 1:] - ws[i])) > 1e-8


def test_branch_offsets_two_interval(two_interval):
    wm = two_interval
    m2 = wm.exponents.m[1]
    got = branch_offset(wm.domain, wm.green, 1, 1j, "left")
    assert abs(got - (-1j * math.pi * m2)) < 1e-9
    got = branch_offset(wm.domain, wm.green, 1, -1j, "left")
    assert abs(got - (1j * math.pi * m2)) < 1e-9
    got = branch_offset(wm.domain, wm.green, 1, 0.2 + 1.4j, "right")
    assert abs(got - (-1j * math.pi * m2)) < 1e-9
    # basing at the rightmost endpoint reproduces the reference integral
    assert abs(branch_offset(wm.domain, wm.green, 2, 1j, "left")) < 1e-9
    with pytest.raises(ValueError):
        branch_offset(wm.domain, wm.green, 2, 1j, "right")
    with pytest.raises(ValueError):
        branch_offset(wm.domain, wm.green, 7, 1j)


def test_trace_boundary_disk(single_interval):
    traces = trace_boundary(single_interval.lemniscatic, 32)
    assert len(traces) == 1 and traces[0].sampled
    pts = traces[0].points
    assert pts[0] == pts[-1]  # closed polyline
    radii = np.abs(pts - single_interval.lemniscatic.centers[0])
    assert np.max(np.abs(radii - single_interval.green.capacity)) < 1e-10


def test_trace_boundary_two_interval(two_interval):
    dom = two_interval.lemniscatic
    traces = trace_boundary(dom, 64)
    assert [t.sampled for t in traces] == [True, True]
    for j, tr in enumerate(traces):
        vals = np.abs(green_level(tr.points, dom))
        assert np.max(vals) < 1e-10
        # rays at angles 0 and pi hit the boundary abscissae
        right = tr.points[0]
        left = tr.points[32]
        assert abs(right - dom.boundary_c[2 * j + 1]) < 1e-9
        assert abs(left - dom.boundary_c[2 * j]) < 1e-9


def test_concurrent_map_matches_sequential(two_interval):
    # immutable inputs and pure evaluation: threads must agree with the
    # sequential answers bit for bit
    from concurrent.futures import ThreadPoolExecutor
    wm = two_interval
    zs = [complex(x, y) for x in np.linspace(-1.8, 1.8, 8)
          for y in (-0.7, 0.4, 1.3)]
    sequential = [wm.map_point(z).w for z in zs]
    with ThreadPoolExecutor(max_workers=8) as pool:
        threaded = list(pool.map(lambda z: wm.map_point(z).w, zs))
    assert threaded == sequential
