"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (run with `pytest -v -s tests/test_acceptance.py`).

Tolerances are pinned here and nowhere else.  The visibility oracle is the
brute-force point-in-union-of-earlier-patch-quads test; it shares no code
with the horizon band.
"""

import time

import numpy as np
import pytest

from conftest import gauss, ripple, saddle
from horizonplot import (
    DevicePoint,
    DomainRect,
    RenderConfig,
    Viewpoint,
    cantor_order,
    fit_transform,
    project_points,
    render,
    render_pieces,
    render_shared_band,
    row_major_order,
    sample_function,
    split_sphere,
    visible,
)
from horizonplot.grid import ROTATION_FOR_CORNER, classify_viewpoint, rotate_grid_quarter_turns
from horizonplot.ordering import patch_order
from oracles import band_distance, dominance_violation_count, points_in_union, segment_lengths

DEVICE = RenderConfig(kx=1024, ky=768)


def report(name: str, ok: bool, detail: str = "") -> None:
    tag = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"[{tag}] {name}{suffix}")
    assert ok, f"{name}{suffix}"


def test_projection_reconstruction():
    # 1000 random pairs with d1 > 0.1 and r in (0, 10): the returned (u, v)
    # must reproduce B = V + r(A - V) through the image basis, and B must
    # lie on the image plane.
    from horizonplot import basis_from_viewpoint, project_point

    rng = np.random.default_rng(11)
    t0 = time.perf_counter()
    worst_residual = 0.0
    worst_plane = 0.0
    checked = 0
    while checked < 1000:
        v = Viewpoint(*rng.uniform(-10, 10, size=3))
        if v.d1 <= 0.1:
            continue
        a = rng.uniform(-5, 5, size=3)
        varr = v.as_array()
        denom = v.d**2 - float(a @ varr)
        if abs(denom) < 1e-12 * v.d**2:
            continue
        r = v.d**2 / denom
        if not (0.0 < r < 10.0):
            continue
        b = varr + r * (a - varr)
        basis = basis_from_viewpoint(v)
        p = project_point(a, v)
        residual = np.linalg.norm(p.u * basis.x_axis + p.v * basis.y_axis - b)
        worst_residual = max(worst_residual, residual / max(1.0, np.linalg.norm(b)))
        worst_plane = max(worst_plane, abs(b @ varr))
        checked += 1
    elapsed = time.perf_counter() - t0
    report(
        "projection reconstruction",
        worst_residual <= 1e-9 and worst_plane <= 1e-9 and elapsed < 1.0,
        f"max residual {worst_residual:.2e}, max plane offset {worst_plane:.2e}, {elapsed:.2f}s",
    )


def test_rotation_reduction():
    # 100 random corner viewpoints: projecting rotated data from the rotated
    # viewpoint moves no sample image by more than 1e-9, and the rendered
    # SegmentLists are bitwise identical whether the pipeline rotates or the
    # caller pre-rotates.
    rng = np.random.default_rng(23)
    grid = sample_function(ripple, DomainRect(-1, 1, -1, 1), 10, 9)
    pts = grid.sample_points()
    quarter_cw = np.array([[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    worst_uv = 0.0
    bitwise_ok = True
    done = 0
    while done < 100:
        x = float(rng.uniform(1.1, 8.0)) * (1 if rng.random() < 0.5 else -1)
        y = float(rng.uniform(1.1, 8.0)) * (1 if rng.random() < 0.5 else -1)
        if x < 0 and y < 0:
            continue  # already southwest, nothing to reduce
        view = Viewpoint(x, y, float(rng.uniform(1.5, 7.0)))
        region = classify_viewpoint(view.footprint, grid.domain)
        k = ROTATION_FOR_CORNER[region]

        rot = np.linalg.matrix_power(quarter_cw, k)
        u0, v0, _ = project_points(pts, view)
        u1, v1, _ = project_points(pts @ rot.T, Viewpoint(*(rot @ view.as_array())))
        worst_uv = max(worst_uv, float(np.abs(u0 - u1).max()), float(np.abs(v0 - v1).max()))

        direct, _ = render(grid, view, DEVICE)
        pre_grid, pre_view = rotate_grid_quarter_turns(grid, view, k)
        prerotated, _ = render(pre_grid, pre_view, DEVICE)
        bitwise_ok = bitwise_ok and (direct == prerotated)
        done += 1
    report(
        "rotation reduction",
        worst_uv <= 1e-9 and bitwise_ok,
        f"max uv drift {worst_uv:.2e}, bitwise equal: {bitwise_ok}",
    )


def test_ordering_dominance_exhaustive():
    violations = 0
    for m in range(2, 21):
        for n in range(2, 21):
            violations += dominance_violation_count(row_major_order(m, n), m, n)
            violations += dominance_violation_count(cantor_order(m, n), m, n)
    report("ordering dominance (exhaustive 2..20)", violations == 0,
           f"{violations} violations")


class OracleSweep:
    """Shared instrumented sweep backing the oracle, leading-edge, and
    monotonicity criteria: grids {4,6,8}^2 x 20 SW viewpoints x 3 surfaces."""

    SAMPLES_PER_EDGE = 10

    def __init__(self):
        self.agree = 0
        self.total = 0
        self.bad_disagreements = 0
        self.worst_band_distance = 0.0
        self.monotonicity_violations = 0
        self.leading_ratios = []
        self.elapsed = 0.0
        self._run()

    def _run(self):
        rng = np.random.default_rng(31)
        t0 = time.perf_counter()
        for f in (ripple, saddle, gauss):
            for size in (4, 6, 8):
                for _ in range(20):
                    view = Viewpoint(float(rng.uniform(-6.0, -1.2)),
                                     float(rng.uniform(-6.0, -1.2)),
                                     float(rng.uniform(1.5, 6.0)))
                    self._run_one(f, size, view)
        self.elapsed = time.perf_counter() - t0

    def _run_one(self, f, size, view):
        grid = sample_function(f, DomainRect(-1, 1, -1, 1), size, size)
        u, v, _ = project_points(grid.sample_points(), view)
        xf = fit_transform(np.column_stack([u, v]), DEVICE)
        du, dv = xf.apply(u, v)
        dx = du.reshape(size, size)
        dy = dv.reshape(size, size)

        order = patch_order(DEVICE.ordering, size, size)
        quads = np.empty((len(order), 4, 2))
        for p, (i_, j_) in enumerate(order):
            i, j = i_ - 1, j_ - 1
            corners = [(i, j), (i - 1, j), (i - 1, j - 1), (i, j - 1)]
            quads[p] = [(dx[a, b], dy[a, b]) for a, b in corners]

        state = {"patch_edges": 0, "prev": None}
        ts = (np.arange(self.SAMPLES_PER_EDGE) + 0.5) / self.SAMPLES_PER_EDGE

        def observer(a, b, buf, is_leading):
            # Per sampled point, the horizon's verdict is the band test at
            # decision time; the oracle is membership in the union of the
            # quads drawn before this edge's patch.
            samples = np.column_stack([a.x + (b.x - a.x) * ts, a.y + (b.y - a.y) * ts])
            if is_leading:
                earlier = quads[:0]
            else:
                pos = state["patch_edges"] // 2
                state["patch_edges"] += 1
                earlier = quads[:pos]
                self._check_monotonicity(buf, state)
            band_visible = np.array(
                [visible(DevicePoint(px, py), buf) for px, py in samples]
            )
            oracle_visible = ~points_in_union(samples, earlier)
            matches = band_visible == oracle_visible
            self.agree += int(matches.sum())
            self.total += len(ts)
            for idx in np.nonzero(~matches)[0]:
                d = band_distance(samples[idx, 0], samples[idx, 1], buf.max_y, buf.min_y)
                self.worst_band_distance = max(self.worst_band_distance, d)
                if d > 1.5:
                    self.bad_disagreements += 1

        segs, _ = render(grid, view, DEVICE, edge_observer=observer)

        lead_pts = np.array([[dx[0, j], dy[0, j]] for j in range(size - 1, -1, -1)]
                            + [[dx[i, 0], dy[i, 0]] for i in range(1, size)])
        polyline = float(np.sqrt(((lead_pts[1:] - lead_pts[:-1]) ** 2).sum(axis=1)).sum())
        emitted = float(segment_lengths(segs.as_array()[: 2 * size - 2]).sum())
        self.leading_ratios.append(emitted / polyline if polyline else 1.0)

    def _check_monotonicity(self, buf, state):
        prev = state["prev"]
        if prev is not None:
            was = prev[0] != -1.0
            if np.any(buf.max_y[was] < prev[0][was]) or np.any(buf.min_y[was] > prev[1][was]):
                self.monotonicity_violations += 1
        state["prev"] = (buf.max_y.copy(), buf.min_y.copy())


@pytest.fixture(scope="module")
def sweep():
    return OracleSweep()


def test_oracle_equivalence(sweep):
    rate = sweep.agree / sweep.total
    report(
        "visibility matches union-of-quads oracle",
        rate >= 0.98 and sweep.bad_disagreements == 0 and sweep.elapsed < 30.0,
        f"agreement {100 * rate:.2f}% over {sweep.total} samples, "
        f"{sweep.bad_disagreements} disagreements beyond 1.5 device units "
        f"(worst {sweep.worst_band_distance:.2f}), {sweep.elapsed:.1f}s",
    )


def test_leading_edge_completeness(sweep):
    worst = min(sweep.leading_ratios)
    report("leading-edge completeness", worst >= 0.999,
           f"worst emitted/polyline ratio {worst:.6f}")


def test_band_monotonicity(sweep):
    report("band monotonicity after leading phase",
           sweep.monotonicity_violations == 0,
           f"{sweep.monotonicity_violations} violations")


def test_linear_time_scaling():
    # Fixed viewpoint and device; repeated timings per size, best-of-three.
    view = Viewpoint(8.0, -8.0, 6.0)
    domain = DomainRect(-1, 1, -1, 1)
    warm = sample_function(ripple, domain, 16, 16)
    render(warm, view, DEVICE)  # compile & cache the kernel

    sizes = (64, 128, 256, 512)
    times = []
    for s in sizes:
        grid = sample_function(ripple, domain, s, s)
        best = min(render(grid, view, DEVICE)[1].elapsed for _ in range(3))
        times.append(best)
    slope = float(np.polyfit(np.log([s * s for s in sizes]), np.log(times), 1)[0])

    grid150 = sample_function(ripple, domain, 150, 150)
    best150 = min(render(grid150, view, DEVICE)[1].elapsed for _ in range(5))

    report(
        "linear-time scaling",
        slope <= 1.2 and best150 < 0.050,
        f"log-log slope {slope:.3f}; 150x150 in {1000 * best150:.1f} ms "
        + ", ".join(f"{s}^2 {1000 * t:.1f}ms" for s, t in zip(sizes, times)),
    )


def test_sphere_shared_band():
    upper, lower, upper_first = split_sphere((0.0, 0.0, 0.0), 1.0, 21, 21, view_height=2.0)
    view = Viewpoint(3.0, -3.0, 2.0)
    seam = upper.mask & (upper.z == 0.0)
    seam_equal = bool(upper_first) and np.array_equal(upper.z[seam], lower.z[seam]) and seam.any()

    shared, s_shared = render_shared_band([upper, lower], view, DEVICE)
    control, s_control = render_pieces([upper, lower], view, DEVICE, share_band=False)
    lower_shared = s_shared.segments_per_piece[1]
    lower_control = s_control.segments_per_piece[1]
    report(
        "sphere shared-band occlusion",
        seam_equal and lower_shared < lower_control,
        f"lower hemisphere {lower_shared} segments shared vs {lower_control} independent; "
        f"seam samples equal: {seam_equal}",
    )
