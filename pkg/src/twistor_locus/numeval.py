"""Fast float evaluation of exact polynomials, plus small numeric helpers.

Exact MultiPolys are compiled once into exponent/coefficient arrays.
Point evaluation shares a per-variable power table across a system of
polynomials (values and gradients together), and grid evaluation uses
recursive Horner contraction along axes, so full seed grids cost
milliseconds rather than seconds.

Residual scales: every evaluator can also return sum_k |c_k| |x^a_k|,
the natural conditioning scale of the evaluation.  Correctors treat
tolerances relative to max(1, scale), since an absolute residual below
the float64 rounding floor of a large-magnitude polynomial is not
attainable at box-edge coordinates.
"""

from __future__ import annotations

import numpy as np


class CompiledPoly:
    """Float evaluator for one exact polynomial."""

    __slots__ = ("exps", "coeffs", "abs_coeffs", "nvars")

    def __init__(self, poly=None, exps=None, coeffs=None):
        if poly is not None:
            items = poly.sorted_terms()
            self.nvars = len(poly.vars)
            self.exps = np.array([e for e, _ in items], dtype=np.int64).reshape(
                len(items), self.nvars)
            vals = [poly.ring.to_complex(c) for _, c in items]
            arr = np.array(vals, dtype=complex)
            if np.all(arr.imag == 0):
                arr = arr.real
            self.coeffs = arr
        else:
            self.exps = exps
            self.coeffs = coeffs
            self.nvars = exps.shape[1] if len(exps) else 0
        self.abs_coeffs = np.abs(self.coeffs)

    def is_zero(self):
        return len(self.coeffs) == 0

    def bind_last(self, value):
        """Substitute a float for the last variable; returns a smaller evaluator."""
        if self.is_zero():
            return CompiledPoly(exps=np.zeros((0, max(self.nvars - 1, 0)), dtype=np.int64),
                                coeffs=self.coeffs[:0])
        scale = np.power(float(value), self.exps[:, -1].astype(float))
        coeffs = self.coeffs * scale
        exps = self.exps[:, :-1]
        order = np.lexsort(exps.T[::-1])
        exps = exps[order]
        coeffs = coeffs[order]
        # merge duplicate exponent rows
        if len(exps):
            keep = np.ones(len(exps), dtype=bool)
            out_e, out_c = [], []
            i = 0
            while i < len(exps):
                j = i + 1
                acc = coeffs[i]
                while j < len(exps) and np.array_equal(exps[j], exps[i]):
                    acc = acc + coeffs[j]
                    j += 1
                out_e.append(exps[i])
                out_c.append(acc)
                i = j
            exps = np.array(out_e, dtype=np.int64)
            coeffs = np.array(out_c)
        return CompiledPoly(exps=exps, coeffs=coeffs)

    # -- point evaluation -------------------------------------------------

    def _power_table(self, pts):
        pows = []
        for v in range(self.nvars):
            maxe = int(self.exps[:, v].max()) if len(self.exps) else 0
            tab = np.empty((maxe + 1,) + pts.shape[:-1], dtype=pts.dtype)
            tab[0] = 1.0
            for e in range(1, maxe + 1):
                tab[e] = tab[e - 1] * pts[..., v]
            pows.append(tab)
        return pows

    def monomials(self, pts):
        """Monomial values, shape (n_terms,) + pts.shape[:-1]."""
        if self.is_zero():
            return np.zeros((0,) + pts.shape[:-1])
        pows = self._power_table(pts)
        mono = pows[0][self.exps[:, 0]]
        for v in range(1, self.nvars):
            mono = mono * pows[v][self.exps[:, v]]
        return mono

    def eval(self, pts):
        pts = np.asarray(pts, dtype=float)
        single = pts.ndim == 1
        if single:
            pts = pts[None, :]
        mono = self.monomials(pts)
        out = np.tensordot(self.coeffs, mono, axes=(0, 0)) if len(self.coeffs) \
            else np.zeros(pts.shape[:-1])
        return out[0] if single else out

    def scale(self, pts):
        """sum |c_k| |x^a_k|, the evaluation conditioning scale."""
        pts = np.asarray(pts, dtype=float)
        single = pts.ndim == 1
        if single:
            pts = pts[None, :]
        mono = np.abs(self.monomials(pts))
        out = np.tensordot(self.abs_coeffs, mono, axes=(0, 0)) if len(self.coeffs) \
            else np.zeros(pts.shape[:-1])
        return out[0] if single else out

    # -- grid evaluation ----------------------------------------------------

    def eval_grid(self, axes):
        """Evaluate on the product grid of 1-D axes via per-axis Horner."""
        axes = [np.asarray(a, dtype=float) for a in axes]
        if len(axes) != self.nvars:
            raise ValueError("axis count mismatch")
        if self.is_zero():
            return np.zeros(tuple(len(a) for a in axes))
        return _grid_rec(self.exps, self.coeffs, axes, 0)


def _grid_rec(exps, coeffs, axes, depth):
    ndim = len(axes)
    x = axes[depth]
    if depth == ndim - 1:
        maxe = int(exps[:, depth].max()) if len(exps) else 0
        cs = np.zeros(maxe + 1)
        for e, c in zip(exps[:, depth], coeffs):
            cs[int(e)] += float(np.real(c))
        acc = np.full(len(x), cs[maxe])
        for e in range(maxe - 1, -1, -1):
            acc = acc * x + cs[e]
        return acc
    rest_shape = tuple(len(a) for a in axes[depth + 1:])
    maxe = int(exps[:, depth].max()) if len(exps) else 0
    groups = {}
    for i, e in enumerate(exps[:, depth]):
        groups.setdefault(int(e), []).append(i)
    grids = {e: _grid_rec(exps[np.array(idx)], coeffs[np.array(idx)], axes, depth + 1)
             for e, idx in groups.items()}
    xb = x.reshape((len(x),) + (1,) * len(rest_shape))
    res = np.zeros((len(x),) + rest_shape)
    for e in range(maxe, -1, -1):
        if e != maxe:
            res = res * xb
        if e in grids:
            res = res + grids[e]
    return res


class PolySystem:
    """Several polynomials over one variable list, sharing a monomial basis."""

    def __init__(self, polys):
        self.compiled = [CompiledPoly(p) if not isinstance(p, CompiledPoly) else p
                         for p in polys]
        self.nvars = self.compiled[0].nvars
        # union basis
        key_to_idx = {}
        rows = []
        for cp in self.compiled:
            for e in map(tuple, cp.exps):
                if e not in key_to_idx:
                    key_to_idx[e] = len(rows)
                    rows.append(e)
        self.exps = np.array(rows, dtype=np.int64).reshape(len(rows), self.nvars)
        self.matrix = np.zeros((len(rows), len(self.compiled)))
        for j, cp in enumerate(self.compiled):
            if np.iscomplexobj(cp.coeffs) and np.abs(cp.coeffs.imag).max(initial=0) > 0:
                raise TypeError("PolySystem expects real-coefficient polynomials")
            for e, c in zip(map(tuple, cp.exps), cp.coeffs):
                self.matrix[key_to_idx[e], j] = float(np.real(c))
        self.abs_matrix = np.abs(self.matrix)
        self._basis = CompiledPoly(exps=self.exps,
                                   coeffs=np.ones(len(rows)))

    def eval(self, pts):
        """(N, nvars) -> (N, npolys); single point -> (npolys,)."""
        pts = np.asarray(pts, dtype=float)
        single = pts.ndim == 1
        if single:
            pts = pts[None, :]
        mono = self._basis.monomials(pts)  # (m, N)
        vals = mono.T @ self.matrix
        return vals[0] if single else vals

    def eval_with_scale(self, pts):
        pts = np.asarray(pts, dtype=float)
        single = pts.ndim == 1
        if single:
            pts = pts[None, :]
        mono = self._basis.monomials(pts)
        vals = mono.T @ self.matrix
        scales = np.abs(mono).T @ self.abs_matrix
        if single:
            return vals[0], scales[0]
        return vals, scales


class NewtonSystem:
    """Residual system with gradients for Gauss-Newton correction.

    `value_polys` are the m residual polynomials in k variables (floats
    compiled from exact data); gradients are compiled alongside.  All
    residuals are scale-normalized: r_i(x) / max(1, scale_i(x)).
    """

    def __init__(self, polys):
        self.m = len(polys)
        self.k = len(polys[0].vars)
        grads = []
        for p in polys:
            grads.extend(p.derivative(v) for v in p.vars)
        self.system = PolySystem(list(polys) + grads)

    def residual_jacobian(self, pts):
        """Normalized residuals (N, m) and Jacobians (N, m, k)."""
        pts = np.asarray(pts, dtype=float)
        single = pts.ndim == 1
        if single:
            pts = pts[None, :]
        vals, scales = self.system.eval_with_scale(pts)
        m, k = self.m, self.k
        r = vals[:, :m]
        s = np.maximum(scales[:, :m], 1.0)
        J = vals[:, m:].reshape(len(pts), m, k)
        rn = r / s
        Jn = J / s[:, :, None]
        if single:
            return rn[0], Jn[0]
        return rn, Jn

    def residual_norm(self, pts):
        r, _ = self.residual_jacobian(pts)
        if np.asarray(pts).ndim > 1:
            return np.linalg.norm(r, axis=-1)
        return float(np.linalg.norm(r))


def gauss_newton(system: NewtonSystem, x0, tol=1e-12, max_iter=50):
    """Minimum-norm Gauss-Newton on an underdetermined/overdetermined system.

    Returns (x, normalized_residual_norm, converged).
    """
    x = np.asarray(x0, dtype=float).copy()
    best = None
    for _ in range(max_iter):
        r, J = system.residual_jacobian(x)
        rn = float(np.linalg.norm(r))
        if best is None or rn < best[1]:
            best = (x.copy(), rn)
        if rn < tol:
            return x, rn, True
        step, *_ = np.linalg.lstsq(J, r, rcond=None)
        if not np.all(np.isfinite(step)):
            break
        x = x - step
        if float(np.linalg.norm(step)) < 1e-16 * max(1.0, float(np.linalg.norm(x))):
            r2, _ = system.residual_jacobian(x)
            rn2 = float(np.linalg.norm(r2))
            if rn2 < best[1]:
                best = (x.copy(), rn2)
            break
    x, rn = best
    return x, rn, rn < tol


def second_singular_value(J):
    s = np.linalg.svd(J, compute_uv=False)
    return float(s[-1]) if len(s) >= 2 else 0.0


# -- polyline geometry ----------------------------------------------------------

def point_segment_distances(pts, seg_a, seg_b):
    """Min distance from each point to the segment set. pts (N,d), segs (M,d)."""
    pts = np.asarray(pts, dtype=float)
    d = seg_b - seg_a  # (M, dim)
    dd = (d * d).sum(axis=1)
    dd = np.where(dd == 0, 1.0, dd)
    out = np.empty(len(pts))
    chunk = max(1, int(2e6 / max(len(seg_a), 1)))
    for s in range(0, len(pts), chunk):
        block = pts[s:s + chunk]
        ap = block[:, None, :] - seg_a[None, :, :]
        t = np.clip((ap * d[None, :, :]).sum(axis=2) / dd[None, :], 0.0, 1.0)
        proj = seg_a[None, :, :] + t[:, :, None] * d[None, :, :]
        dist = np.linalg.norm(block[:, None, :] - proj, axis=2)
        out[s:s + chunk] = dist.min(axis=1)
    return out


def polyline_segments(points, closed):
    pts = np.asarray(points, dtype=float)
    if len(pts) < 2:
        return pts, pts
    a, b = pts[:-1], pts[1:]
    if closed:
        a = np.vstack([a, pts[-1]])
        b = np.vstack([b, pts[0]])
    return a, b


def curve_hausdorff(points_a, closed_a, points_b, closed_b):
    """Symmetric polyline Hausdorff distance (point-to-segment based)."""
    a1, b1 = polyline_segments(points_b, closed_b)
    d_ab = point_segment_distances(np.asarray(points_a, float), a1, b1).max()
    a2, b2 = polyline_segments(points_a, closed_a)
    d_ba = point_segment_distances(np.asarray(points_b, float), a2, b2).max()
    return max(float(d_ab), float(d_ba))


def one_sided_curve_distance(points_a, points_b, closed_b):
    a1, b1 = polyline_segments(points_b, closed_b)
    return float(point_segment_distances(np.asarray(points_a, float), a1, b1).max())
