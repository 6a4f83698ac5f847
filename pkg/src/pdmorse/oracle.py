"""Independent numerical ground truth for the closed-form machinery.

Everything here deliberately avoids the analytic bound-state formulas:
eigenvalues come from second-order central differences with Dirichlet walls
(tridiagonal bisection in 1D, Kronecker-sum assembly or shift-invert Lanczos
in 2D), the potential minimum from a scan plus alternating golden-section
refinement, and the self-consistent 2D energies from outer bisection on the
finite-difference level sums.
"""

import heapq
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from .effective import epsilon_of, gammas_at
from .errors import EvaluationOverflow, GridTooSmall, NoBracket, NotConverged, Unbounded
from .model import Model, potential_at
from .morse1d import MorseChannel, energy_1d, m_max


@dataclass(frozen=True)
class Grid1D:
    """Uniform node set on [x0, x1], endpoints included."""

    x0: float
    x1: float
    n: int

    def __post_init__(self):
        if not self.x0 < self.x1:
            raise ValueError(f"need x0 < x1, got [{self.x0!r}, {self.x1!r}]")
        if self.n < 16:
            raise ValueError(f"need at least 16 nodes, got {self.n}")

    @property
    def h(self) -> float:
        return (self.x1 - self.x0) / (self.n - 1)

    def nodes(self) -> np.ndarray:
        return np.linspace(self.x0, self.x1, self.n)

    def interior(self) -> np.ndarray:
        return self.nodes()[1:-1]


@dataclass(frozen=True)
class Grid2D:
    x: Grid1D
    y: Grid1D


@dataclass
class EigenResult:
    """Ascending eigenvalues (and optional node-value eigenvectors)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None
    grid: Grid1D | Grid2D
    h: tuple[float, ...]
    endpoint_below_level: bool = False


def fd_eigen_1d(potential, grid: Grid1D, k: int, vectors: bool = False) -> EigenResult:
    """Lowest k Dirichlet eigenvalues of -d2/dx2 + U(x) on the grid.

    Three-point Laplacian on the interior nodes; the symmetric tridiagonal
    eigenproblem is solved by LAPACK's Sturm-sequence bisection, which is
    deterministic and returns exactly the requested index range.
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    n_int = grid.n - 2
    if k > n_int:
        raise GridTooSmall(f"requested {k} levels but grid has {n_int} interior nodes")
    x = grid.interior()
    u = np.asarray(potential(x), dtype=float)
    if not np.all(np.isfinite(u)):
        bad = int(np.argmax(~np.isfinite(u)))
        raise EvaluationOverflow("grid potential", float(x[bad]))
    h2 = grid.h * grid.h
    diag = 2.0 / h2 + u
    off = np.full(n_int - 1, -1.0 / h2)
    try:
        if vectors:
            vals, vecs = scipy.linalg.eigh_tridiagonal(diag, off, select="i", select_range=(0, k - 1))
        else:
            vals = scipy.linalg.eigh_tridiagonal(
                diag, off, select="i", select_range=(0, k - 1), eigvals_only=True
            )
            vecs = None
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NotConverged(f"tridiagonal eigensolve failed: {exc}") from exc
    ends = np.atleast_1d(np.asarray(potential(np.array([grid.x0, grid.x1])), dtype=float))
    edge = float(np.min(ends))
    return EigenResult(
        eigenvalues=np.asarray(vals, dtype=float),
        eigenvectors=None if vecs is None else vecs.T,
        grid=grid,
        h=(grid.h,),
        endpoint_below_level=edge < float(vals[-1]),
    )


def _lowest_sums(a: np.ndarray, b: np.ndarray, k: int) -> np.ndarray:
    """k smallest pairwise sums of two ascending arrays (heap frontier walk)."""
    out = []
    seen = {(0, 0)}
    heap = [(float(a[0] + b[0]), 0, 0)]
    while heap and len(out) < k:
        s, i, j = heapq.heappop(heap)
        out.append(s)
        for i2, j2 in ((i + 1, j), (i, j + 1)):
            if i2 < len(a) and j2 < len(b) and (i2, j2) not in seen:
                seen.add((i2, j2))
                heapq.heappush(heap, (float(a[i2] + b[j2]), i2, j2))
    return np.asarray(out)


def _is_separable(potential, grid: Grid2D, rtol: float = 1e-10) -> bool:
    """Probe f(x,y) - f(x,y0) - f(x0,y) + f(x0,y0) on a coarse sub-mesh."""
    xs = np.linspace(grid.x.x0, grid.x.x1, 5)
    ys = np.linspace(grid.y.x0, grid.y.x1, 5)
    X, Y = np.meshgrid(xs, ys)
    f = np.asarray(potential(X, Y), dtype=float)
    fx = np.asarray(potential(xs, np.full_like(xs, ys[0])), dtype=float)
    fy = np.asarray(potential(np.full_like(ys, xs[0]), ys), dtype=float)
    mixed = f - fx[None, :] - fy[:, None] + f[0, 0]
    scale = max(float(np.max(np.abs(f))), 1.0)
    return bool(np.max(np.abs(mixed)) <= rtol * scale)


def fd_eigen_2d(potential, grid: Grid2D, k: int, method: str = "auto") -> EigenResult:
    """Lowest k Dirichlet eigenvalues of -lap + U(x, y) on the grid.

    ``method='separable'`` forms 2D eigenvalues as sums of the two 1D spectra
    (exact for the 5-point Laplacian when U is additively separable);
    ``method='lanczos'`` assembles the sparse operator and runs shift-invert
    ARPACK with a fixed start vector.  ``'auto'`` probes separability and
    picks the cheap path when it applies.
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    nx_int, ny_int = grid.x.n - 2, grid.y.n - 2
    if k > nx_int * ny_int:
        raise GridTooSmall(f"requested {k} levels but grid has {nx_int * ny_int} interior nodes")

    if method not in ("auto", "separable", "lanczos"):
        raise ValueError(f"unknown method {method!r}")
    if method in ("auto", "separable"):
        separable = _is_separable(potential, grid)
        if method == "separable" and not separable:
            raise ValueError("potential failed the separability probe")
        if separable:
            y0 = grid.y.x0
            x0 = grid.x.x0
            c = float(np.atleast_1d(potential(np.array([x0]), np.array([y0])))[0])
            ux = lambda xs: np.asarray(potential(xs, np.full_like(xs, y0)), dtype=float) - c
            uy = lambda ys: np.asarray(potential(np.full_like(ys, x0), ys), dtype=float)
            kx = min(k, nx_int)
            ky = min(k, ny_int)
            ex = fd_eigen_1d(ux, grid.x, kx).eigenvalues
            ey = fd_eigen_1d(uy, grid.y, ky).eigenvalues
            vals = _lowest_sums(ex, ey, k)
            return EigenResult(vals, None, grid, (grid.x.h, grid.y.h))

    x = grid.x.interior()
    y = grid.y.interior()
    X, Y = np.meshgrid(x, y)
    u = np.asarray(potential(X, Y), dtype=float)
    if not np.all(np.isfinite(u)):
        raise EvaluationOverflow("grid potential", float(grid.x.x0), float(grid.y.x0))
    hx2, hy2 = grid.x.h ** 2, grid.y.h ** 2
    tx = scipy.sparse.diags(
        [np.full(nx_int - 1, -1.0 / hx2), np.full(nx_int, 2.0 / hx2), np.full(nx_int - 1, -1.0 / hx2)],
        offsets=(-1, 0, 1),
    )
    ty = scipy.sparse.diags(
        [np.full(ny_int - 1, -1.0 / hy2), np.full(ny_int, 2.0 / hy2), np.full(ny_int - 1, -1.0 / hy2)],
        offsets=(-1, 0, 1),
    )
    a = (
        scipy.sparse.kron(scipy.sparse.identity(ny_int), tx)
        + scipy.sparse.kron(ty, scipy.sparse.identity(nx_int))
        + scipy.sparse.diags(u.ravel())
    ).tocsc()
    sigma = float(u.min()) - 1.0
    v0 = np.ones(a.shape[0]) / math.sqrt(a.shape[0])
    try:
        vals = scipy.sparse.linalg.eigsh(
            a, k=k, sigma=sigma, which="LM", v0=v0, tol=0, return_eigenvectors=False
        )
    except scipy.sparse.linalg.ArpackNoConvergence as exc:
        raise NotConverged(f"shift-invert Lanczos did not converge: {exc}") from exc
    return EigenResult(np.sort(np.asarray(vals, dtype=float)), None, grid, (grid.x.h, grid.y.h))


def _channel_potentials(model: Model, e: float):
    """Per-axis reduced 1D potentials (2/hbar^2) (gamma e^{-ax} + gamma' e^{-2ax})."""
    g = gammas_at(model, e)
    h2 = model.hbar * model.hbar
    a1, a2 = model.mass.a1, model.mass.a2
    ux = lambda xs: (2.0 / h2) * (g.gamma1 * np.exp(-a1 * xs) + g.gamma2 * np.exp(-2.0 * a1 * xs))
    uy = lambda ys: (2.0 / h2) * (g.gamma3 * np.exp(-a2 * ys) + g.gamma4 * np.exp(-2.0 * a2 * ys))
    return ux, uy


def oracle_energy_2d(model: Model, m: int, n: int, window, grid: Grid2D, tol: float = 1e-8,
                     scan_points: int = 64) -> float:
    """Self-consistent level (m, n) from finite differences alone.

    Solves G(E) = lam_m(E) + lam_n(E) - 2 xi(E)/hbar^2 = 0 where lam are the
    m-th and n-th Dirichlet eigenvalues of the per-axis reduced operators at
    trial energy E.  G is strictly decreasing for this family (the potential
    deepens with E while the right side grows), so a sign change brackets the
    unique root; without one the routine refuses to guess.
    """

    def g_of(e: float) -> float:
        ux, uy = _channel_potentials(model, e)
        lam_m = float(fd_eigen_1d(ux, grid.x, m + 1).eigenvalues[m])
        lam_n = float(fd_eigen_1d(uy, grid.y, n + 1).eigenvalues[n])
        return lam_m + lam_n - epsilon_of(model, e)

    es = np.linspace(window.lo, window.hi, scan_points)
    vals = [g_of(float(e)) for e in es]
    bracket = None
    for i in range(scan_points - 1):
        if vals[i] == 0.0:
            return float(es[i])
        if vals[i] * vals[i + 1] < 0.0:
            bracket = (float(es[i]), float(es[i + 1]), vals[i])
            break
    if bracket is None:
        raise NoBracket(f"G(E) has no sign change on [{window.lo}, {window.hi}] for (m,n)=({m},{n})")
    lo, hi, flo = bracket
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = g_of(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def auto_grid_1d(ch: MorseChannel, n: int = 4000) -> Grid1D:
    """Domain sized so Dirichlet truncation sits far below discretization error.

    Left wall where the repulsive core reaches ~100x the well depth (plus one
    decay length), right wall 7.5 tail e-foldings past the shallowest level's
    outer turning point: the squared amplitude there is ~e^-15, well below the
    h^2 discretization error this resolution can reach.
    """
    depth = ch.eta * ch.eta / (4.0 * ch.nu)
    x_left = -math.log(100.0 * depth / ch.nu) / (2.0 * ch.alpha) - 1.0 / ch.alpha
    top = m_max(ch)
    if top is None:
        raise NoBracket("auto-sizing needs a channel with bound states")
    state = energy_1d(ch, top)
    mu_min = max(state.mu, 0.05)
    # Outer turning point of the top level: |eta| e^{-ax} = |eps_top|.
    x_turn = math.log(-ch.eta / -state.epsilon) / ch.alpha if -state.epsilon < -ch.eta else 0.0
    x_right = x_turn + 7.5 / (mu_min * ch.alpha) + 2.0 / ch.alpha
    return Grid1D(x_left, x_right, n)


def minimize_potential(model: Model, scan_span: float = 12.0, scan_nodes: int = 161) -> tuple[float, float, float]:
    """Global minimum of the potential surface: (x*, y*, value).

    Coarse rectangular scan (each axis ranged by its own decay length)
    followed by alternating per-axis golden-section refinement.  A minimum
    pinned to the scan boundary with the potential still falling outward is
    reported as Unbounded rather than returned as a fake minimizer.
    """
    lx = scan_span / model.mass.a1
    ly = scan_span / model.mass.a2
    xs = np.linspace(-0.75 * lx, 3.0 * lx, scan_nodes)
    ys = np.linspace(-0.75 * ly, 3.0 * ly, scan_nodes)
    X, Y = np.meshgrid(xs, ys)
    v = potential_at(model, X, Y)
    j, i = np.unravel_index(int(np.argmin(v)), v.shape)
    x0, y0 = float(xs[i]), float(ys[j])
    vmin = float(v[j, i])

    on_edge = i in (0, scan_nodes - 1) or j in (0, scan_nodes - 1)
    if on_edge:
        dx = xs[1] - xs[0]
        step_x = -dx if i == 0 else (dx if i == scan_nodes - 1 else 0.0)
        dy = ys[1] - ys[0]
        step_y = -dy if j == 0 else (dy if j == scan_nodes - 1 else 0.0)
        outward = potential_at(model, x0 + step_x, y0 + step_y)
        if outward < vmin - 1e-15 * max(1.0, abs(vmin)):
            raise Unbounded(x0, y0, vmin)

    gold = (math.sqrt(5.0) - 1.0) / 2.0

    def golden(f, a: float, b: float) -> float:
        c = b - gold * (b - a)
        d = a + gold * (b - a)
        fc, fd = f(c), f(d)
        while b - a > 1e-13 * max(1.0, abs(a) + abs(b)):
            if fc < fd:
                b, d, fd = d, c, fc
                c = b - gold * (b - a)
                fc = f(c)
            else:
                a, c, fc = c, d, fd
                d = a + gold * (b - a)
                fd = f(d)
        return 0.5 * (a + b)

    wx = 2.0 * (xs[1] - xs[0])
    wy = 2.0 * (ys[1] - ys[0])
    xc, yc = x0, y0
    for _ in range(80):
        x_new = golden(lambda t: potential_at(model, t, yc), xc - wx, xc + wx)
        y_new = golden(lambda t: potential_at(model, x_new, t), yc - wy, yc + wy)
        moved = max(abs(x_new - xc), abs(y_new - yc))
        xc, yc = x_new, y_new
        wx = max(4.0 * moved, 1e-9)
        wy = wx
        if moved < 1e-11:
            break
    return xc, yc, float(potential_at(model, xc, yc))
