"""Particle relaxation on a periodic cell and cluster statistics.

Plain float numerics (numpy): the rigorous side of the project lives in
the interval modules, this one reproduces the clustered ground states
experimentally and cross-checks them against the certified lattice sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Configuration",
    "ClusterReport",
    "default_image_cutoff",
    "periodic_energy",
    "periodic_gradient",
    "relax",
    "detect_clusters",
    "theorem_configuration",
    "export",
]


@dataclass(frozen=True)
class Configuration:
    """A finite multiset of particle positions on the periodic cell [0, L)."""

    positions: np.ndarray
    L: float
    alpha: int
    rho: float
    seed: int | None
    energy_per_particle: float
    converged: bool
    grad_norm: float

    def __post_init__(self):
        p = np.asarray(self.positions, dtype=float)
        if p.ndim != 1 or not np.all(np.diff(p) >= 0.0):
            raise ValueError("positions must be a sorted 1-D array")
        if len(p) and (p[0] < 0.0 or p[-1] >= self.L):
            raise ValueError("positions must lie in [0, L)")

    @property
    def count(self) -> int:
        return len(self.positions)


@dataclass(frozen=True)
class ClusterReport:
    clusters: list
    mean_spacing: float | None
    spacing_cv: float | None
    count_histogram: dict


def default_image_cutoff(L: float) -> int:
    """ceil(12/L) + 2 periodic images; the pair tail beyond is negligible."""
    return math.ceil(12.0 / L) + 2


def _pair_terms(x: np.ndarray, L: float, alpha: int, K: int, want_grad: bool):
    n = len(x)
    d = x[:, None] - x[None, :]
    half = (alpha - 2) // 2
    energy = 0.0
    grad = np.zeros(n) if want_grad else None
    for k in range(-K, K + 1):
        a = d + k * L
        r2 = a * a
        ra = r2 ** (alpha // 2)
        denom = 1.0 + ra
        f = 1.0 / denom
        if k == 0:
            np.fill_diagonal(f, 0.0)
        energy += float(f.sum())
        if want_grad:
            w = (-alpha) * a * r2 ** half / (denom * denom)
            grad += w.sum(axis=1)
    if want_grad:
        grad *= 2.0 / n
    return energy / n, grad


def periodic_energy(cfg: Configuration, image_cutoff: int | None = None) -> float:
    """Ordered-pair energy per particle over the cell, self-images included.

    (1/count) sum over i, j, |k| <= K with (i, k) != (j, 0) of
    f_alpha(|x_i - x_j + k L|); includes each particle's interaction with
    its own periodic images so that the clustered lattice reproduces the
    infinite-line per-particle energy exactly as the cutoff grows.
    """
    if image_cutoff is None:
        image_cutoff = default_image_cutoff(cfg.L)
    if image_cutoff < 1:
        raise ValueError("image_cutoff must be >= 1")
    e, _ = _pair_terms(cfg.positions, cfg.L, cfg.alpha, image_cutoff, False)
    return e


def periodic_gradient(cfg: Configuration, image_cutoff: int | None = None) -> np.ndarray:
    if image_cutoff is None:
        image_cutoff = default_image_cutoff(cfg.L)
    _, g = _pair_terms(cfg.positions, cfg.L, cfg.alpha, image_cutoff, True)
    return g


def _as_configuration(x, L, alpha, seed, K, converged, grad_norm) -> Configuration:
    order = np.argsort(x, kind="stable")
    xs = np.mod(x[order], L)
    xs.sort(kind="stable")
    e, _ = _pair_terms(xs, L, alpha, K, False)
    return Configuration(
        positions=xs,
        L=float(L),
        alpha=alpha,
        rho=len(xs) / L,
        seed=seed,
        energy_per_particle=e,
        converged=converged,
        grad_norm=grad_norm,
    )


def relax(alpha: int, rho: float, L: float, seed: int = 0, iters: int = 20000,
          gtol: float = 1e-8, image_cutoff: int | None = None) -> Configuration:
    """Gradient descent with Barzilai-Borwein steps and Armijo backtracking.

    Starts from seed-determined uniform random positions; accepted steps
    never increase the energy; sets `converged = False` when the gradient
    max-norm still exceeds gtol after `iters` accepted steps.
    """
    if alpha % 2 or alpha < 4:
        raise ValueError("alpha must be an even integer >= 4")
    if iters < 1:
        raise ValueError("iters must be >= 1")
    count = int(round(rho * L))
    if count < 1:
        raise ValueError("density and cell length give no particles")
    K = image_cutoff if image_cutoff is not None else default_image_cutoff(L)
    rng = np.random.default_rng(seed)
    x = rng.uniform(0.0, L, count)
    E, g = _pair_terms(x, L, alpha, K, True)
    step = 0.05 * L / count
    gnorm = float(np.max(np.abs(g))) if count > 1 else 0.0
    converged = gnorm <= gtol
    for _ in range(iters):
        if converged or count == 1:
            converged = True
            break
        gg = float(g @ g)
        t = step
        accepted = False
        for _ in range(60):
            xn = np.mod(x - t * g, L)
            En, _ = _pair_terms(xn, L, alpha, K, False)
            if En <= E - 1e-4 * t * gg:
                accepted = True
                break
            t *= 0.5
        if not accepted:
            break  # at the resolution floor; energy can no longer decrease
        _, gn = _pair_terms(xn, L, alpha, K, True)
        s = -t * g
        y = gn - g
        sy = float(s @ y)
        step = float(s @ s) / sy if sy > 1e-300 else t * 2.0
        x, E, g = xn, En, gn
        gnorm = float(np.max(np.abs(g)))
        # cap the next trial so no particle moves more than a quarter cell
        if gnorm > 0.0:
            step = min(max(step, 1e-14), 0.25 * L / gnorm)
        if gnorm <= gtol:
            converged = True
            break
    return _as_configuration(x, L, alpha, seed, K, converged, gnorm)


def detect_clusters(cfg: Configuration, gap_threshold: float) -> ClusterReport:
    """Single-linkage split at circular gaps exceeding the threshold."""
    if gap_threshold <= 0.0:
        raise ValueError("gap_threshold must be positive")
    x = cfg.positions
    n = len(x)
    L = cfg.L
    if n == 0:
        return ClusterReport([], None, None, {})
    gaps = np.empty(n)
    gaps[:-1] = np.diff(x)
    gaps[-1] = x[0] + L - x[-1]
    breaks = np.nonzero(gaps > gap_threshold)[0]
    if len(breaks) == 0:
        center = _circular_mean(x, L)
        return ClusterReport([(center, n)], None, None, {n: 1})
    start = (breaks[0] + 1) % n
    y = np.concatenate([x[start:], x[:start] + L])  # ascending, break-first
    ygaps = np.diff(y)
    cuts = np.nonzero(ygaps > gap_threshold)[0]
    bounds = [0, *(cuts + 1), n]
    clusters = []
    for a, b in zip(bounds[:-1], bounds[1:]):
        pts = y[a:b]
        clusters.append((float(np.mean(pts)) % L, int(b - a)))
    clusters.sort()
    k = len(clusters)
    centers = np.array([c for c, _ in clusters])
    cgaps = np.empty(k)
    if k > 1:
        cgaps[:-1] = np.diff(centers)
        cgaps[-1] = centers[0] + L - centers[-1]
        mean_spacing = float(np.mean(cgaps))
        cv = float(np.std(cgaps) / mean_spacing) if mean_spacing > 0 else None
    else:
        mean_spacing = None
        cv = None
    hist: dict = {}
    for _, c in clusters:
        hist[c] = hist.get(c, 0) + 1
    return ClusterReport(clusters, mean_spacing, cv, hist)


def _circular_mean(x: np.ndarray, L: float) -> float:
    ang = x * (2.0 * np.pi / L)
    m = math.atan2(float(np.mean(np.sin(ang))), float(np.mean(np.cos(ang))))
    return (m * L / (2.0 * np.pi)) % L


def theorem_configuration(alpha: int, n_per_cluster: int, m_clusters: int,
                          s_alpha: float | None = None,
                          image_cutoff: int | None = None) -> Configuration:
    """n particles at each point of the optimal-spacing lattice, m sites."""
    if n_per_cluster < 1 or m_clusters < 2:
        raise ValueError("need n_per_cluster >= 1 and m_clusters >= 2")
    if s_alpha is None:
        from .potential import solve_s_alpha

        s_alpha = solve_s_alpha(alpha).s_alpha.mid
    L = m_clusters * s_alpha
    pos = np.repeat(np.arange(m_clusters) * s_alpha, n_per_cluster)
    K = image_cutoff if image_cutoff is not None else default_image_cutoff(L)
    e, _ = _pair_terms(pos, L, alpha, K, False)
    return Configuration(
        positions=pos,
        L=L,
        alpha=alpha,
        rho=n_per_cluster / s_alpha,
        seed=None,
        energy_per_particle=e,
        converged=True,
        grad_norm=0.0,
    )


# ---------------------------------------------------------------------------
# Figure-style output.
# ---------------------------------------------------------------------------

def export(cfg: Configuration, report: ClusterReport, path_csv, path_svg) -> None:
    """CSV of raw positions plus an SVG in the dot-per-cluster style."""
    with open(path_csv, "w") as fh:
        fh.write("position\n")
        for p in cfg.positions:
            fh.write("%.17g\n" % p)
    with open(path_svg, "w") as fh:
        fh.write(_render_svg(cfg, report))


def _render_svg(cfg: Configuration, report: ClusterReport) -> str:
    L = cfg.L if cfg.L > 0 else 1.0
    half = L / 2.0
    height = L / 7.5  # keeps the 900 x 120 frame isotropic
    tick = height / 16.0
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="900" height="120" '
        f'viewBox="{-half:.6g} {-height / 2.0:.6g} {L:.6g} {height:.6g}">',
        f'<line x1="{-half:.6g}" y1="0" x2="{half:.6g}" y2="0" '
        f'stroke="black" stroke-width="{tick / 4.0:.6g}"/>',
    ]
    t = 5 * math.ceil(-half / 5.0)
    while t <= half:
        parts.append(
            f'<line x1="{t:.6g}" y1="{-tick:.6g}" x2="{t:.6g}" y2="{tick:.6g}" '
            f'stroke="black" stroke-width="{tick / 4.0:.6g}"/>'
        )
        parts.append(
            f'<text x="{t:.6g}" y="{3.2 * tick:.6g}" font-size="{2.2 * tick:.6g}" '
            f'text-anchor="middle">{t}</text>'
        )
        t += 5
    for center, cnt in report.clusters:
        cx = (center + half) % L - half
        r = 0.1 * math.sqrt(cnt)
        parts.append(f'<circle cx="{cx:.6g}" cy="0" r="{r:.6g}" fill="black"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
