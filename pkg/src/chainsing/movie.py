"""Root-trajectory movies of the fiberwise critical curve.

Tracks the d labeled roots of

    F_eps(z) = z^d - c (eps z - 1)^mu,        0 < mu < d,  c > 0,

as eps travels along a path from 0 toward the positive-real parameter alpha
where the polynomial acquires a double root.  At eps = 0 the roots satisfy
z^d = (-1)^mu c exactly and sit equidistributed on the circle of radius
c^(1/d); labels are their counter-clockwise angular order, label 0 at the
smallest nonnegative argument.

Root movements can be ultra-sensitive to coefficient changes, so nothing here
trusts a single solve: every accepted step re-solves the polynomial from
scratch (companion-matrix eigenvalues plus Newton polish), verifies the
residual of every labeled root, and matches new roots to old by a globally
optimal assignment.  A step is rejected and halved whenever the maximum root
movement is large enough relative to the current root separation that the
matching could be ambiguous; ambiguity at the minimum step size is a hard
tracking failure, never a silent relabel.

The path stops short of alpha (default margin 1e-6 relative), where the two
colliding roots are still well separated compared to double-root rounding
noise; the collision parameter is recovered by extrapolating the squared
distance of the nearest pair, which vanishes linearly in (alpha - eps).
"""

from __future__ import annotations

import cmath
import csv
import math
import os
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment


class TrackingError(RuntimeError):
    """Continuation could not proceed unambiguously."""


class ClassificationError(ValueError):
    """Root grouping by modulus is ambiguous at the requested tolerance."""


DEFAULT_ALPHA_MARGIN = 1e-6


def movie_coeffs(d: int, mu: int, c: float, eps: complex) -> np.ndarray:
    """Ascending coefficients of z^d - c (eps z - 1)^mu."""
    coeffs = np.zeros(d + 1, dtype=complex)
    coeffs[d] = 1.0
    for k in range(mu + 1):
        coeffs[k] -= c * math.comb(mu, k) * (eps**k) * ((-1.0) ** (mu - k))
    return coeffs


def _poly_eval(coeffs: Sequence[complex], z: complex) -> complex:
    acc = 0j
    for a in reversed(coeffs):
        acc = acc * z + a
    return acc


def _poly_scale(coeffs: Sequence[complex], z: complex) -> float:
    m = max(1.0, abs(z))
    acc = 0.0
    for a in reversed(coeffs):
        acc = acc * m + abs(a)
    return acc


def _newton_polish(coeffs: np.ndarray, z: complex, iterations: int = 3) -> complex:
    deriv = np.arange(1, len(coeffs)) * coeffs[1:]
    best = z
    best_res = abs(_poly_eval(coeffs, z))
    for _ in range(iterations):
        dv = _poly_eval(deriv, z)
        if dv == 0:
            break
        z = z - _poly_eval(coeffs, z) / dv
        res = abs(_poly_eval(coeffs, z))
        if res < best_res:
            best, best_res = z, res
    return best


def poly_roots(coeffs: Sequence[complex], tolerance: float = 1e-9) -> list[complex]:
    """All roots, residual-verified: |p(z)| <= tolerance * sum |c_i| max(1,|z|)^i."""
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs[-1] == 0:
        raise ValueError("leading coefficient must be nonzero")
    if len(coeffs) == 1:
        return []
    raw = np.roots(coeffs[::-1])
    out = []
    for z in raw:
        z = _newton_polish(coeffs, complex(z))
        if abs(_poly_eval(coeffs, z)) > tolerance * _poly_scale(coeffs, z):
            raise TrackingError(f"root residual above tolerance at z={z}")
        out.append(z)
    out.sort(key=lambda w: (cmath.phase(w) % (2 * math.pi), abs(w)))
    return out


def find_alpha(d: int, mu: int, c: float) -> tuple[float, float]:
    """The positive-real double-root parameter: eps z = d/(d-mu), z = (c (mu/(d-mu))^mu)^(1/d)."""
    if not 0 < mu < d:
        raise ValueError("need 0 < mu < d")
    if c <= 0:
        raise ValueError("need c > 0")
    z = (c * (mu / (d - mu)) ** mu) ** (1.0 / d)
    eps = d / ((d - mu) * z)
    coeffs = movie_coeffs(d, mu, c, eps)
    deriv = np.arange(1, len(coeffs)) * coeffs[1:]
    scale = _poly_scale(coeffs, z)
    if abs(_poly_eval(coeffs, z)) > 1e-9 * scale or abs(_poly_eval(deriv, z)) > 1e-9 * scale:
        raise TrackingError("double-root residual check failed")
    return eps, z


@dataclass(frozen=True)
class MovieConfig:
    """Parameters of one tracked movie.

    The path is eps(T) = T * path_end unless path_fn overrides it; the default
    endpoint is (1 - alpha_margin) * alpha rotated by `rotation` radians.
    """

    d: int
    mu: int
    c: float
    path_end: complex | None = None
    path_fn: Callable[[float], complex] | None = None
    rotation: float = 0.0
    alpha_margin: float = DEFAULT_ALPHA_MARGIN
    max_step: float = 1.0 / 500.0
    min_step: float = 1e-12
    min_separation: float | None = None  # collision threshold; default 0.02 * c^(1/d)
    tolerance: float = 1e-9
    samples_out: int = 120

    def __post_init__(self) -> None:
        if not 0 < self.mu < self.d:
            raise ValueError("need 0 < mu < d")
        if self.c <= 0:
            raise ValueError("need c > 0")

    def eps_at(self, t: float) -> complex:
        if self.path_fn is not None:
            return self.path_fn(t)
        return t * self.resolved_end()

    def resolved_end(self) -> complex:
        if self.path_end is not None:
            end = self.path_end
        else:
            alpha, _ = find_alpha(self.d, self.mu, self.c)
            end = alpha * (1.0 - self.alpha_margin)
        return end * cmath.exp(1j * self.rotation)

    def start_radius(self) -> float:
        return self.c ** (1.0 / self.d)

    def collision_threshold(self) -> float:
        if self.min_separation is not None:
            return self.min_separation
        return 0.02 * self.start_radius()

    def rotated(self, angle: float) -> MovieConfig:
        return replace(self, rotation=self.rotation + angle)


@dataclass(frozen=True)
class Trajectory:
    label: int
    samples: tuple[tuple[float, complex], ...]


@dataclass(frozen=True)
class PetalReport:
    colliding_pair: tuple[int, int]
    arc_separation: int
    direction: str  # 'ccw' or 'cw'
    collision_T: float
    collision_eps: complex


@dataclass(frozen=True)
class TrackResult:
    config: MovieConfig
    trajectories: tuple[Trajectory, ...]
    eps_samples: tuple[complex, ...]
    report: PetalReport | None
    steps_taken: int

    def roots_at(self, index: int) -> list[complex]:
        return [t.samples[index][1] for t in self.trajectories]

    @property
    def t_samples(self) -> tuple[float, ...]:
        return tuple(t for t, _ in self.trajectories[0].samples)


def _start_roots(config: MovieConfig) -> list[complex]:
    """Exact equidistributed start: z^d = (-1)^mu c."""
    r = config.start_radius()
    offset = math.pi if config.mu % 2 else 0.0
    return [
        r * cmath.exp(1j * ((offset + 2 * math.pi * k) / config.d))
        for k in range(config.d)
    ]


def _min_pairwise(roots: Sequence[complex]) -> float:
    return min(
        abs(a - b) for i, a in enumerate(roots) for b in roots[i + 1 :]
    )


def _match(old: Sequence[complex], new: Sequence[complex]) -> tuple[list[int], float]:
    """Globally optimal label assignment; returns permutation and max movement."""
    dist = np.array([[abs(o - n) for n in new] for o in old])
    rows, cols = linear_sum_assignment(dist)
    perm = [0] * len(old)
    moved = 0.0
    for r, c in zip(rows, cols):
        perm[r] = c
        moved = max(moved, dist[r, c])
    return perm, moved


def track(config: MovieConfig) -> TrackResult:
    """Track all d roots along the path and report the terminal collision."""
    eps0 = config.eps_at(0.0)
    if abs(eps0) == 0.0:
        roots = _start_roots(config)
    else:
        roots = poly_roots(movie_coeffs(config.d, config.mu, config.c, eps0), config.tolerance)
    history: list[tuple[float, complex, tuple[complex, ...]]] = [
        (0.0, eps0, tuple(roots))
    ]
    t = 0.0
    h = config.max_step
    steps = 0
    accept_streak = 0
    while t < 1.0:
        t2 = min(1.0, t + h)
        eps = config.eps_at(t2)
        if eps == history[-1][1]:
            history.append((t2, eps, tuple(roots)))
            t = t2
            steps += 1
            continue
        coeffs = movie_coeffs(config.d, config.mu, config.c, eps)
        new = poly_roots(coeffs, config.tolerance)
        perm, moved = _match(roots, new)
        sep = _min_pairwise(roots)
        if moved > 0.35 * sep:
            if t2 - t <= config.min_step:
                if moved > 0.5 * sep:
                    raise TrackingError(
                        f"ambiguous matching at minimum step (T={t2}, moved={moved}, sep={sep})"
                    )
            else:
                h = (t2 - t) / 2.0
                accept_streak = 0
                continue
        roots = [new[perm[i]] for i in range(config.d)]
        history.append((t2, eps, tuple(roots)))
        t = t2
        steps += 1
        accept_streak += 1
        if accept_streak >= 3:
            h = min(h * 1.4, config.max_step)
            accept_streak = 0
    report = _collision_report(config, history)
    trajectories = tuple(
        Trajectory(label, tuple((t, zs[label]) for t, _, zs in history))
        for label in range(config.d)
    )
    return TrackResult(
        config=config,
        trajectories=trajectories,
        eps_samples=tuple(e for _, e, _ in history),
        report=report,
        steps_taken=steps,
    )


def _pair_distance(zs: Sequence[complex], i: int, j: int) -> float:
    return abs(zs[i] - zs[j])


def _collision_report(
    config: MovieConfig,
    history: list[tuple[float, complex, tuple[complex, ...]]],
) -> PetalReport | None:
    d = config.d
    _, eps_end, final = history[-1]
    pairs = [(i, j) for i in range(d) for j in range(i + 1, d)]
    i, j = min(pairs, key=lambda p: _pair_distance(final, *p))
    s_end = _pair_distance(final, i, j)
    if s_end > config.collision_threshold():
        return None
    # extrapolate the collision parameter: squared pair distance is linear in eps
    t_end = history[-1][0]
    anchor = None
    for t, eps, zs in reversed(history[:-1]):
        s = _pair_distance(zs, i, j)
        if s >= 2.0 * s_end:
            anchor = (t, eps, s)
            break
    if anchor is None:
        anchor = (history[0][0], history[0][1], _pair_distance(history[0][2], i, j))
    t1, eps1, s1 = anchor
    denom = s1 * s1 - s_end * s_end
    if denom == 0:
        collision_eps = complex(eps_end)
        collision_t = float(t_end)
    else:
        collision_eps = complex((s1 * s1 * eps_end - s_end * s_end * eps1) / denom)
        collision_t = float((s1 * s1 * t_end - s_end * s_end * t1) / denom)
    sep_ccw = (j - i) % d
    if sep_ccw <= d - sep_ccw:
        pair, arc = (i, j), sep_ccw
    else:
        pair, arc = (j, i), d - sep_ccw
    return PetalReport(
        colliding_pair=pair,
        arc_separation=arc,
        direction="ccw",
        collision_T=collision_t,
        collision_eps=collision_eps,
    )


@dataclass(frozen=True)
class RootGrouping:
    """Label partition by modulus: sizes (mu-1, 2, d-mu-1)."""

    small: tuple[int, ...]
    medium: tuple[int, ...]
    large: tuple[int, ...]


def classify_roots(
    roots: Sequence[complex], mu: int, t: float, ambiguity_tol: float = 1e-12
) -> RootGrouping:
    """Partition labels into small/medium/large moduli groups at time t > 0."""
    if t <= 0:
        raise ClassificationError("grouping is undefined at T = 0 (all moduli equal)")
    d = len(roots)
    order = sorted(range(d), key=lambda k: abs(roots[k]))
    moduli = [abs(roots[k]) for k in order]
    scale = max(moduli)
    for boundary in (mu - 1, mu + 1):
        if 0 < boundary < d:
            if moduli[boundary] - moduli[boundary - 1] < ambiguity_tol * scale:
                raise ClassificationError(
                    f"modulus tie at group boundary {boundary} (T={t})"
                )
    return RootGrouping(
        small=tuple(sorted(order[: mu - 1])),
        medium=tuple(sorted(order[mu - 1 : mu + 1])),
        large=tuple(sorted(order[mu + 1 :])),
    )


@dataclass(frozen=True)
class EgervaryReport:
    ok: bool
    grouping: RootGrouping | None
    violations: tuple[tuple[float, str], ...]


def verify_egervary_ordering(result: TrackResult, rel_tol: float = 1e-9) -> EgervaryReport:
    """small <= medium <= large moduli, by label, at every sample with T > 0.

    The grouping is fixed at the final sample (where the three annuli are
    cleanly separated) and then required to hold backwards along the whole
    path; group membership never changes while no collision happens.  A path
    that never leaves the equidistributed start has no grouping and the
    ordering holds vacuously.
    """
    mu = result.config.mu
    n_samples = len(result.trajectories[0].samples)
    final = result.roots_at(n_samples - 1)
    try:
        grouping = classify_roots(final, mu, t=1.0)
    except ClassificationError:
        if result.report is None:
            return EgervaryReport(ok=True, grouping=None, violations=())
        raise
    tol = rel_tol * result.config.start_radius()
    violations: list[tuple[float, str]] = []
    for idx in range(1, n_samples):
        t = result.trajectories[0].samples[idx][0]
        if t <= 0:
            continue
        zs = result.roots_at(idx)
        small_max = max((abs(zs[k]) for k in grouping.small), default=float("-inf"))
        med = [abs(zs[k]) for k in grouping.medium]
        large_min = min((abs(zs[k]) for k in grouping.large), default=float("inf"))
        if small_max > min(med) + tol:
            violations.append((t, "small exceeds medium"))
        if max(med) > large_min + tol:
            violations.append((t, "medium exceeds large"))
    return EgervaryReport(ok=not violations, grouping=grouping, violations=tuple(violations))


@dataclass(frozen=True)
class RotationReport:
    ok: bool
    k: int
    base_pair: tuple[int, int]
    rotated_pair: tuple[int, int]
    expected_pair: tuple[int, int]
    arc_separation_matches: bool


def rotation_equivariance(
    config: MovieConfig, k: int, a0: int = 1, base: TrackResult | None = None
) -> RotationReport:
    """Rotating the radial path by 2 pi k / (a0 d) shifts the colliding labels by -k.

    In the curve parameter the a0-fold cover turns that rotation into
    2 pi k / d, which is what the tracked polynomial sees.
    """
    if a0 < 1:
        raise ValueError("a0 must be positive")
    d = config.d
    base_result = base if base is not None else track(config)
    rotated_result = track(config.rotated(2 * math.pi * k / d))
    if base_result.report is None or rotated_result.report is None:
        raise TrackingError("rotation equivariance needs collisions on both paths")
    bi, bj = base_result.report.colliding_pair
    expected = ((bi - k) % d, (bj - k) % d)
    got = rotated_result.report.colliding_pair
    ok_sets = set(got) == set(expected)
    ok_arc = (
        rotated_result.report.arc_separation == base_result.report.arc_separation
    )
    return RotationReport(
        ok=ok_sets and ok_arc,
        k=k,
        base_pair=(bi, bj),
        rotated_pair=got,
        expected_pair=expected,
        arc_separation_matches=ok_arc,
    )


def _float_digits() -> int:
    return int(os.environ.get("CHAINSING_DIGITS", "17"))


def _frame_indices(n_samples: int, frames: int) -> list[int]:
    if frames <= 1:
        return [n_samples - 1]
    return [round(i * (n_samples - 1) / (frames - 1)) for i in range(frames)]


def emit_csv(result: TrackResult, path: str) -> str:
    """One row per (label, sample) on the samples_out grid: label,T,re,im."""
    digits = _float_digits()
    idxs = _frame_indices(len(result.trajectories[0].samples), result.config.samples_out)
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["label", "T", "re", "im"])
        for traj in result.trajectories:
            for idx in idxs:
                t, z = traj.samples[idx]
                writer.writerow(
                    [
                        traj.label,
                        format(t, f".{digits}g"),
                        format(z.real, f".{digits}g"),
                        format(z.imag, f".{digits}g"),
                    ]
                )
    return path


def emit_svg_frames(result: TrackResult, out_dir: str) -> list[str]:
    """One SVG per retained frame: roots, the starting circle, collision mark."""
    os.makedirs(out_dir, exist_ok=True)
    r0 = result.config.start_radius()
    half = 1.5 * r0
    idxs = _frame_indices(len(result.trajectories[0].samples), result.config.samples_out)
    collision_z = None
    if result.report is not None:
        i, j = result.report.colliding_pair
        final = result.roots_at(len(result.trajectories[0].samples) - 1)
        collision_z = (final[i] + final[j]) / 2
    paths = []
    dot = r0 / 60.0
    for frame_no, idx in enumerate(idxs):
        zs = result.roots_at(idx)
        lines = [
            f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{-half:.6g} {-half:.6g} {2 * half:.6g} {2 * half:.6g}">',
            f'<circle cx="0" cy="0" r="{r0:.6g}" fill="none" stroke="#bbbbbb" stroke-width="{dot / 2:.6g}"/>',
        ]
        for label, z in enumerate(zs):
            # SVG y axis points down; plot the conjugate so angles read ccw
            lines.append(
                f'<circle cx="{z.real:.6g}" cy="{-z.imag:.6g}" r="{dot:.6g}" fill="#1f4e9c"><title>{label}</title></circle>'
            )
        if collision_z is not None:
            x, y = collision_z.real, -collision_z.imag
            arm = 2 * dot
            lines.append(
                f'<path d="M {x - arm:.6g} {y - arm:.6g} L {x + arm:.6g} {y + arm:.6g} '
                f'M {x - arm:.6g} {y + arm:.6g} L {x + arm:.6g} {y - arm:.6g}" '
                f'stroke="#c0392b" stroke-width="{dot / 2:.6g}"/>'
            )
        lines.append("</svg>")
        path = os.path.join(out_dir, f"frame_{frame_no:04d}.svg")
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        paths.append(path)
    return paths
