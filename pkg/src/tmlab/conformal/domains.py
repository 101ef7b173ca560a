"""Planar domains: the unit disc, a half-plane, a strip and polygons."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np
from scipy.optimize import linprog, minimize

from ..errors import ConfigError, DegenerateInput, OutsideDomain


def _segment_distance(z: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Distances from points ``z`` (shape ``(m,)``) to segments ``[a, b]`` (shape ``(n,)``)."""
    z = z[:, None]
    ab = b - a
    t = np.clip(((z - a) * np.conj(ab)).real / np.abs(ab) ** 2, 0.0, 1.0)
    return np.abs(z - (a + t * ab))


class Domain:
    """Interface shared by all domains."""

    name = "domain"
    convex = True

    def contains(self, z) -> np.ndarray:
        raise NotImplementedError

    def _distance(self, z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def boundary_distance(self, z):
        """Euclidean distance to the boundary; raises ``OutsideDomain`` off the domain."""
        arr = np.atleast_1d(np.asarray(z, dtype=complex))
        inside = self.contains(arr)
        if not np.all(inside):
            bad = arr[~inside][0]
            raise OutsideDomain(f"{bad!r} is not inside the {self.name}")
        d = self._distance(arr)
        return d.reshape(np.shape(z)) if np.ndim(z) else float(d[0])


@dataclass(frozen=True)
class UnitDisc(Domain):
    name = "disc"

    def contains(self, z) -> np.ndarray:
        return np.abs(np.asarray(z, dtype=complex)) < 1.0

    def _distance(self, z):
        return 1.0 - np.abs(z)


@dataclass(frozen=True)
class HalfPlane(Domain):
    """The upper half-plane ``Im z > 0``."""

    name = "half-plane"

    def contains(self, z) -> np.ndarray:
        return np.asarray(z, dtype=complex).imag > 0.0

    def _distance(self, z):
        return z.imag


@dataclass(frozen=True)
class Strip(Domain):
    """The strip ``0 < Im z < pi``."""

    name = "strip"

    def contains(self, z) -> np.ndarray:
        y = np.asarray(z, dtype=complex).imag
        return (y > 0.0) & (y < math.pi)

    def _distance(self, z):
        return np.minimum(z.imag, math.pi - z.imag)


@dataclass(frozen=True)
class Polygon(Domain):
    """A simple polygon with counterclockwise vertices."""

    vertices: np.ndarray
    name: str = "polygon"

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=complex).ravel()
        if v.size < 3:
            raise DegenerateInput("a polygon needs at least 3 vertices")
        if np.min(np.abs(np.roll(v, -1) - v)) == 0.0:
            raise DegenerateInput("repeated consecutive vertices")
        object.__setattr__(self, "vertices", v)
        if self.signed_area <= 0:
            raise DegenerateInput("vertices must be in counterclockwise order")

    convex = False

    @property
    def n(self) -> int:
        return self.vertices.size

    @property
    def edges(self) -> tuple[np.ndarray, np.ndarray]:
        return self.vertices, np.roll(self.vertices, -1)

    @property
    def signed_area(self) -> float:
        a, b = self.vertices, np.roll(self.vertices, -1)
        return 0.5 * float(np.sum((np.conj(a) * b).imag))

    @property
    def diameter(self) -> float:
        v = self.vertices
        return float(np.max(np.abs(v[:, None] - v[None, :])))

    @property
    def side_lengths(self) -> np.ndarray:
        a, b = self.edges
        return np.abs(b - a)

    @property
    def interior_angles(self) -> np.ndarray:
        """Interior angles divided by ``pi``."""
        v = self.vertices
        incoming = v - np.roll(v, 1)
        outgoing = np.roll(v, -1) - v
        turn = np.angle(outgoing / incoming)
        return 1.0 - turn / math.pi

    def contains(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        flat = z.ravel()
        a, b = self.edges
        x, y = flat.real[:, None], flat.imag[:, None]
        ay, by = a.imag[None, :], b.imag[None, :]
        ax, bx = a.real[None, :], b.real[None, :]
        crosses = (ay > y) != (by > y)
        with np.errstate(divide="ignore", invalid="ignore"):
            xint = ax + (y - ay) * (bx - ax) / (by - ay)
        odd = np.sum(crosses & (x < xint), axis=1) % 2 == 1
        on_edge = np.min(_segment_distance(flat, a, b), axis=1) == 0.0
        return (odd & ~on_edge).reshape(z.shape)

    def _distance(self, z):
        a, b = self.edges
        return np.min(_segment_distance(z, a, b), axis=1)

    def boundary_points(self, per_edge: int) -> np.ndarray:
        a, b = self.edges
        t = np.arange(per_edge) / per_edge
        return (a[:, None] + t[None, :] * (b - a)[:, None]).ravel()

    def center(self) -> tuple[complex, float]:
        """An interior point of maximal boundary distance and that distance."""
        v = self.vertices
        lo, hi = v.real.min(), v.real.max()
        blo, bhi = v.imag.min(), v.imag.max()
        gx, gy = np.meshgrid(np.linspace(lo, hi, 121), np.linspace(blo, bhi, 121))
        g = (gx + 1j * gy).ravel()
        g = g[self.contains(g)]
        d = self._distance(g)
        z0 = g[int(np.argmax(d))]

        def neg(p):
            z = np.array([p[0] + 1j * p[1]])
            return -float(self._distance(z)[0]) if self.contains(z)[0] else 1.0

        res = minimize(neg, [z0.real, z0.imag], method="Nelder-Mead",
                       options={"xatol": 1e-13, "fatol": 1e-15})
        zc = complex(res.x[0], res.x[1])
        return zc, float(self._distance(np.array([zc]))[0])

    def sample_interior(self, count: int, margin: float, seed: int = 0) -> np.ndarray:
        """Seeded uniform points with boundary distance at least ``margin``."""
        rng = np.random.default_rng(seed)
        v = self.vertices
        out: list[np.ndarray] = []
        have = 0
        while have < count:
            z = (rng.uniform(v.real.min(), v.real.max(), 4 * count) +
                 1j * rng.uniform(v.imag.min(), v.imag.max(), 4 * count))
            z = z[self.contains(z)]
            z = z[self._distance(z) >= margin]
            out.append(z)
            have += z.size
        return np.concatenate(out)[:count]


@dataclass(frozen=True)
class ConvexPolygon(Polygon):
    """A strictly convex polygon with counterclockwise vertices."""

    name: str = "convex polygon"
    center_point: complex = field(default=0j, init=False)
    max_boundary_distance: float = field(default=0.0, init=False)

    convex = True

    def __post_init__(self):
        super().__post_init__()
        v = self.vertices
        e = np.roll(v, -1) - v
        cross = (np.conj(e) * np.roll(e, -1)).imag
        scale = np.abs(e) * np.abs(np.roll(e, -1))
        if np.any(cross <= 1e-12 * scale):
            raise DegenerateInput("vertex chain is not strictly convex")
        zc, r = self._chebyshev_center()
        object.__setattr__(self, "center_point", zc)
        object.__setattr__(self, "max_boundary_distance", r)

    def _chebyshev_center(self) -> tuple[complex, float]:
        a, b = self.edges
        e = b - a
        # outward normal of a counterclockwise edge is -i e / |e|
        nrm = -1j * e / np.abs(e)
        A = np.column_stack([nrm.real, nrm.imag, np.ones(self.n)])
        rhs = (np.conj(nrm) * a).real
        res = linprog(c=[0.0, 0.0, -1.0], A_ub=A, b_ub=rhs,
                      bounds=[(None, None), (None, None), (0, None)], method="highs")
        if not res.success:
            raise DegenerateInput(f"Chebyshev center LP failed: {res.message}")
        return complex(res.x[0], res.x[1]), float(res.x[2])

    def center(self) -> tuple[complex, float]:
        return self.center_point, self.max_boundary_distance

    def contains(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        a, b = self.edges
        e = b - a
        side = (np.conj(e) * (z[..., None] - a)).imag
        return np.all(side > 0.0, axis=-1)


AnyDomain = Union[UnitDisc, HalfPlane, Strip, Polygon]


def regular_polygon(n: int, radius: float = 1.0, rotation: float = 0.0) -> ConvexPolygon:
    k = np.arange(n)
    return ConvexPolygon(radius * np.exp(1j * (rotation + 2 * np.pi * k / n)), name=f"regular {n}-gon")


def unit_square() -> ConvexPolygon:
    return ConvexPolygon(np.array([0, 1, 1 + 1j, 1j]), name="square")


def l_shape() -> Polygon:
    return Polygon(np.array([0, 2, 2 + 1j, 1 + 1j, 1 + 2j, 2j]), name="L-shape")


def random_convex_polygon(seed: int, n_min: int = 6, n_max: int = 12,
                          min_gap: float = 0.2) -> ConvexPolygon:
    """Seeded convex polygon: points on a circle, then a random affine stretch."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(n_min, n_max + 1))
    while True:
        theta = np.sort(rng.uniform(0.0, 2.0 * np.pi, n))
        gaps = np.diff(np.concatenate([theta, [theta[0] + 2 * np.pi]]))
        if gaps.min() >= min_gap * 2 * np.pi / n:
            break
    z = np.exp(1j * theta)
    stretch = rng.uniform(1.0, 2.0)
    angle = rng.uniform(0.0, np.pi)
    rot = np.exp(1j * angle)
    w = z * np.conj(rot)
    w = stretch * w.real + 1j * w.imag
    return ConvexPolygon(w * rot + complex(rng.normal(), rng.normal()), name=f"random polygon {seed}")


def load_polygon(path: Union[str, Path]) -> Polygon:
    """Read vertices from a text file with one ``x y`` pair per line.

    Blank lines and ``#`` comments are ignored; commas may separate the
    coordinates.  The result is a :class:`ConvexPolygon` when the chain is
    strictly convex and a plain :class:`Polygon` otherwise.
    """
    pts = []
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read polygon file {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].replace(",", " ").strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ConfigError(f"{path}:{lineno}: expected two coordinates, got {line!r}")
        try:
            pts.append(complex(float(parts[0]), float(parts[1])))
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: {exc}") from exc
    try:
        try:
            return ConvexPolygon(np.array(pts), name=Path(path).stem)
        except DegenerateInput as exc:
            if "counterclockwise" in str(exc) or "at least" in str(exc):
                raise
            return Polygon(np.array(pts), name=Path(path).stem)
    except DegenerateInput as exc:
        raise ConfigError(f"{path}: {exc}") from exc
