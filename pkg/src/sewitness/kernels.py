"""Hot numeric kernels.

Every kernel here is written as explicit loops and compiled with numba when
available.  The two grid scans also have a vectorised numpy twin, because
running their loops as plain Python would be far too slow; the dispatchers
``grid_min`` and ``robust_grid`` pick the implementation according to
:data:`sewitness._accel.NUMBA_ENABLED`.
"""
import math

import numpy as np

from ._accel import NUMBA_ENABLED, njit

BALL_SLACK = 1e-12


# ---------------------------------------------------------------------------
# Hermitian eigensolver (cyclic complex Jacobi)
# ---------------------------------------------------------------------------

@njit
def jacobi_eigh(a, tol=1e-14, max_sweeps=60):
    """Eigen-decomposition of a small complex Hermitian matrix.

    Each rotation first removes the phase of the pivot ``a[p, q]`` with a
    diagonal unitary, then applies an ordinary real Jacobi rotation.
    Returns ``(w, v)`` with ``w`` ascending and ``a = v @ diag(w) @ v^H``.
    """
    n = a.shape[0]
    h = np.empty((n, n), dtype=np.complex128)
    v = np.zeros((n, n), dtype=np.complex128)
    scale = 0.0
    for i in range(n):
        v[i, i] = 1.0
        for j in range(n):
            # symmetrise so tiny input asymmetry cannot stall the sweeps
            h[i, j] = 0.5 * (a[i, j] + np.conj(a[j, i]))
            scale += abs(h[i, j]) ** 2
    scale = math.sqrt(scale)
    thresh = tol * max(scale, 1.0)

    for _ in range(max_sweeps):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += abs(h[p, q]) ** 2
        if math.sqrt(off) <= thresh:
            break
        for p in range(n):
            for q in range(p + 1, n):
                r = abs(h[p, q])
                if r <= 1e-300:
                    continue
                ph = h[p, q] / r
                cph = np.conj(ph)
                for k in range(n):
                    h[k, q] *= cph
                    v[k, q] *= cph
                for k in range(n):
                    h[q, k] *= ph
                app = h[p, p].real
                aqq = h[q, q].real
                theta = (aqq - app) / (2.0 * r)
                sgn = 1.0 if theta >= 0.0 else -1.0
                t = sgn / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    hkp = h[k, p]
                    hkq = h[k, q]
                    h[k, p] = c * hkp - s * hkq
                    h[k, q] = s * hkp + c * hkq
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
                for k in range(n):
                    hpk = h[p, k]
                    hqk = h[q, k]
                    h[p, k] = c * hpk - s * hqk
                    h[q, k] = s * hpk + c * hqk
                h[p, q] = 0.0
                h[q, p] = 0.0

    w = np.empty(n)
    for i in range(n):
        w[i] = h[i, i].real
    order = np.argsort(w)
    w_sorted = np.empty(n)
    v_sorted = np.empty((n, n), dtype=np.complex128)
    for j in range(n):
        w_sorted[j] = w[order[j]]
        for i in range(n):
            v_sorted[i, j] = v[i, order[j]]
    return w_sorted, v_sorted


# ---------------------------------------------------------------------------
# Exhaustive Bloch-ball grid search for min ||b0 + A v||
# ---------------------------------------------------------------------------

def _grid_axis(spacing):
    steps = int(round(2.0 / spacing))
    if steps < 1 or abs(steps * spacing - 2.0) > 1e-9:
        raise ValueError(f"spacing {spacing} does not divide [-1, 1] evenly")
    return -1.0 + 2.0 * np.arange(steps + 1) / steps


@njit
def _grid_min_loops(amat, b0, axis):
    m = amat.shape[0]
    npts = axis.shape[0]
    best = np.inf
    bx = 0.0
    by = 0.0
    bz = 0.0
    for i in range(npts):
        x = axis[i]
        for j in range(npts):
            y = axis[j]
            rxy = x * x + y * y
            if rxy > 1.0 + BALL_SLACK:
                continue
            for k in range(npts):
                z = axis[k]
                if rxy + z * z > 1.0 + BALL_SLACK:
                    continue
                acc = 0.0
                for r in range(m):
                    e = b0[r] + amat[r, 0] * x + amat[r, 1] * y + amat[r, 2] * z
                    acc += e * e
                if acc < best:
                    best = acc
                    bx = x
                    by = y
                    bz = z
    return math.sqrt(best), np.array([bx, by, bz])


def _grid_min_numpy(amat, b0, axis):
    yy, zz = np.meshgrid(axis, axis, indexing="ij")
    yy = yy.ravel()
    zz = zz.ravel()
    ryz = yy * yy + zz * zz
    best = np.inf
    best_v = np.zeros(3)
    for x in axis:
        mask = ryz + x * x <= 1.0 + BALL_SLACK
        if not mask.any():
            continue
        y = yy[mask]
        z = zz[mask]
        acc = np.zeros(y.shape)
        for r in range(amat.shape[0]):
            e = b0[r] + amat[r, 0] * x + amat[r, 1] * y + amat[r, 2] * z
            acc += e * e
        k = int(np.argmin(acc))
        if acc[k] < best:
            best = float(acc[k])
            best_v = np.array([x, y[k], z[k]])
    return math.sqrt(best), best_v


def grid_min(amat, b0, spacing, use_numba=None):
    """Brute-force minimum of ``||b0 + amat @ v||`` over Bloch-ball grid points.

    ``amat`` is (m, 3) real, ``b0`` is (m,) real.  Ties go to the first
    point in lexicographic (x, y, z) order.  Returns ``(distance, v)``.
    """
    amat = np.ascontiguousarray(amat, dtype=np.float64)
    b0 = np.ascontiguousarray(b0, dtype=np.float64)
    axis = _grid_axis(spacing)
    if use_numba is None:
        use_numba = NUMBA_ENABLED
    if use_numba and NUMBA_ENABLED:
        return _grid_min_loops(amat, b0, axis)
    return _grid_min_numpy(amat, b0, axis)


# ---------------------------------------------------------------------------
# Robustness objective: F(n, m) = |rho_S - tau_S(n)|^2 + |rho'_S - tau'_S(n, m)|^2
# ---------------------------------------------------------------------------
# target layout (length 16, real):
#   [Re rs00, Im rs00, Re rs01, Im rs01, Re rs10, Im rs10, Re rs11, Im rs11,
#    same for rho'_S]

@njit
def tau_prime_parts(n1, n2, n3, m1, m2, m3, c4, s4):
    """Return (br, P, Q) with tau'_00 = (2 + br)/4, tau'_10 = (P + iQ)/4."""
    br = m3 + n3 + (n3 - m3) * c4 + (m1 * n2 - m2 * n1) * s4
    pp = m1 + n1 + (n1 - m1) * c4 + (m2 * n3 - m3 * n2) * s4
    qq = m2 + n2 + (n2 - m2) * c4 + (m3 * n1 - m1 * n3) * s4
    return br, pp, qq


@njit
def robust_objective(w, target, c4, s4):
    n1, n2, n3, m1, m2, m3 = w[0], w[1], w[2], w[3], w[4], w[5]
    # initial state
    f00 = target[0] - 0.5 * (1.0 + n3)
    f11 = target[6] - 0.5 * (1.0 - n3)
    acc = f00 * f00 + f11 * f11 + target[1] ** 2 + target[7] ** 2
    e = target[2] - 0.5 * n1
    acc += e * e
    e = target[3] + 0.5 * n2
    acc += e * e
    e = target[4] - 0.5 * n1
    acc += e * e
    e = target[5] - 0.5 * n2
    acc += e * e
    # final state
    br, pp, qq = tau_prime_parts(n1, n2, n3, m1, m2, m3, c4, s4)
    e = target[8] - 0.25 * (2.0 + br)
    acc += e * e + target[9] ** 2
    e = target[14] - 0.25 * (2.0 - br)
    acc += e * e + target[15] ** 2
    e = target[10] - 0.25 * pp
    acc += e * e
    e = target[11] + 0.25 * qq
    acc += e * e
    e = target[12] - 0.25 * pp
    acc += e * e
    e = target[13] - 0.25 * qq
    acc += e * e
    return acc


@njit
def robust_gradient(w, target, c4, s4):
    n1, n2, n3, m1, m2, m3 = w[0], w[1], w[2], w[3], w[4], w[5]
    g = np.zeros(6)

    d_diag = (target[0] - 0.5 * (1.0 + n3)) - (target[6] - 0.5 * (1.0 - n3))
    d_re = (target[2] - 0.5 * n1) + (target[4] - 0.5 * n1)
    d_im = (target[5] - 0.5 * n2) - (target[3] + 0.5 * n2)
    g[0] -= d_re
    g[1] -= d_im
    g[2] -= d_diag

    br, pp, qq = tau_prime_parts(n1, n2, n3, m1, m2, m3, c4, s4)
    e_diag = (target[8] - 0.25 * (2.0 + br)) - (target[14] - 0.25 * (2.0 - br))
    e_re = (target[10] - 0.25 * pp) + (target[12] - 0.25 * pp)
    e_im = (target[13] - 0.25 * qq) - (target[11] + 0.25 * qq)

    # partial derivatives of (br, P, Q) w.r.t. (n1, n2, n3, m1, m2, m3)
    dbr = (-m2 * s4, m1 * s4, 1.0 + c4, n2 * s4, -n1 * s4, 1.0 - c4)
    dpp = (1.0 + c4, -m3 * s4, m2 * s4, 1.0 - c4, n3 * s4, -n2 * s4)
    dqq = (m3 * s4, 1.0 + c4, -m1 * s4, -n3 * s4, 1.0 - c4, n1 * s4)
    for k in range(6):
        g[k] -= 0.5 * (e_diag * dbr[k] + e_re * dpp[k] + e_im * dqq[k])
    return g


@njit
def _project_pair(w):
    out = w.copy()
    for lo in (0, 3):
        r = math.sqrt(out[lo] ** 2 + out[lo + 1] ** 2 + out[lo + 2] ** 2)
        if r > 1.0:
            for k in range(lo, lo + 3):
                out[k] /= r
    return out


@njit
def pgd_refine(w0, target, c4, s4, max_iter=500, step_tol=1e-12):
    """Projected gradient descent on the two-ball product.

    Backtracking halves the step until a sufficient decrease holds; an
    accepted step is doubled for the next iteration.  Stops when the step
    length or the accepted displacement drops below ``step_tol``.
    """
    x = _project_pair(w0)
    f = robust_objective(x, target, c4, s4)
    y = x.copy()
    fy = f
    moved = 0.0
    step = 1.0
    for _ in range(max_iter):
        g = robust_gradient(x, target, c4, s4)
        accepted = False
        while step >= step_tol:
            y = _project_pair(x - step * g)
            fy = robust_objective(y, target, c4, s4)
            moved = 0.0
            for k in range(6):
                moved += (y[k] - x[k]) ** 2
            if fy <= f - 1e-4 / step * moved:
                accepted = True
                break
            step *= 0.5
        if not accepted:
            break
        x = y
        f = fy
        if math.sqrt(moved) < step_tol:
            break
        step = min(step * 2.0, 16.0)
    return x, f


@njit
def _robust_grid_loops(pts, target, c4, s4):
    npts = pts.shape[0]
    out = np.empty(npts * npts)
    w = np.empty(6)
    for i in range(npts):
        for j in range(npts):
            for k in range(3):
                w[k] = pts[i, k]
                w[3 + k] = pts[j, k]
            out[i * npts + j] = robust_objective(w, target, c4, s4)
    return out


def _robust_grid_numpy(pts, target, c4, s4):
    npts = len(pts)
    n = np.repeat(pts, npts, axis=0)
    m = np.tile(pts, (npts, 1))
    n1, n2, n3 = n.T
    m1, m2, m3 = m.T
    t = target
    acc = (t[0] - 0.5 * (1 + n3)) ** 2 + (t[6] - 0.5 * (1 - n3)) ** 2 + t[1] ** 2 + t[7] ** 2
    acc += (t[2] - 0.5 * n1) ** 2 + (t[3] + 0.5 * n2) ** 2
    acc += (t[4] - 0.5 * n1) ** 2 + (t[5] - 0.5 * n2) ** 2
    br = m3 + n3 + (n3 - m3) * c4 + (m1 * n2 - m2 * n1) * s4
    pp = m1 + n1 + (n1 - m1) * c4 + (m2 * n3 - m3 * n2) * s4
    qq = m2 + n2 + (n2 - m2) * c4 + (m3 * n1 - m1 * n3) * s4
    acc += (t[8] - 0.25 * (2 + br)) ** 2 + t[9] ** 2
    acc += (t[14] - 0.25 * (2 - br)) ** 2 + t[15] ** 2
    acc += (t[10] - 0.25 * pp) ** 2 + (t[11] + 0.25 * qq) ** 2
    acc += (t[12] - 0.25 * pp) ** 2 + (t[13] - 0.25 * qq) ** 2
    return acc


def robust_grid(pts, target, c4, s4, use_numba=None):
    """Objective on every (n, m) pair of grid points, row-major in (n, m)."""
    pts = np.ascontiguousarray(pts, dtype=np.float64)
    target = np.ascontiguousarray(target, dtype=np.float64)
    if use_numba is None:
        use_numba = NUMBA_ENABLED
    if use_numba and NUMBA_ENABLED:
        return _robust_grid_loops(pts, target, float(c4), float(s4))
    return _robust_grid_numpy(pts, target, float(c4), float(s4))
