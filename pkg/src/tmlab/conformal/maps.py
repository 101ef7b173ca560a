"""Conformal maps onto the unit disc with derivative and inverse."""

from __future__ import annotations

import numpy as np

from ..hyperbolic import cayley, cayley_inverse, psi
from .domains import Domain, HalfPlane, Strip, UnitDisc


def _out(x):
    x = np.asarray(x)
    return x if x.ndim else complex(x)


class ConformalMap:
    """A Riemann map ``F: domain -> disc``.

    Subclasses provide ``forward``, ``derivative`` and ``inverse``;
    ``density`` is the hyperbolic density ``|F'| / (1 - |F|^2)`` of the
    domain, overridden where a closed form avoids cancellation.
    """

    domain: Domain
    accuracy: float = 1e-14

    def forward(self, z):
        raise NotImplementedError

    def derivative(self, z):
        raise NotImplementedError

    def inverse(self, w):
        raise NotImplementedError

    def __call__(self, z):
        return self.forward(z)

    def density(self, z):
        z = np.asarray(z, dtype=complex)
        w = np.asarray(self.forward(z))
        return np.abs(np.asarray(self.derivative(z))) / (1.0 - np.abs(w) ** 2)


class IdentityMap(ConformalMap):
    """The disc onto itself."""

    def __init__(self):
        self.domain = UnitDisc()

    def forward(self, z):
        return _out(np.asarray(z, dtype=complex))

    def derivative(self, z):
        return _out(np.ones_like(np.asarray(z, dtype=complex)))

    def inverse(self, w):
        return _out(np.asarray(w, dtype=complex))

    def density(self, z):
        r2 = np.abs(np.asarray(z, dtype=complex)) ** 2
        return 1.0 / ((1.0 - np.sqrt(r2)) * (1.0 + np.sqrt(r2)))


class HalfPlaneMap(ConformalMap):
    """``z -> (z - i)/(z + i)`` on ``Im z > 0``."""

    def __init__(self):
        self.domain = HalfPlane()

    def forward(self, z):
        return cayley(z)

    def derivative(self, z):
        z = np.asarray(z, dtype=complex)
        return _out(2j / (z + 1j) ** 2)

    def inverse(self, w):
        return cayley_inverse(w)

    def density(self, z):
        # 1 - |F|^2 = 4 y / |z + i|^2 and |F'| = 2 / |z + i|^2
        return 0.5 / np.asarray(z, dtype=complex).imag


class StripMap(ConformalMap):
    """``z -> cayley(exp z)`` on ``0 < Im z < pi``."""

    def __init__(self):
        self.domain = Strip()

    def forward(self, z):
        z = np.asarray(z, dtype=complex)
        return cayley(np.exp(z))

    def derivative(self, z):
        z = np.asarray(z, dtype=complex)
        u = np.exp(z)
        return _out(2j * u / (u + 1j) ** 2)

    def inverse(self, w):
        return _out(np.log(np.asarray(cayley_inverse(w))))

    def density(self, z):
        return 0.5 / np.sin(np.asarray(z, dtype=complex).imag)


CATALOG = {"disc": IdentityMap, "half-plane-to-disc": HalfPlaneMap, "strip-to-disc": StripMap}


def catalog_map(tag: str) -> ConformalMap:
    """Closed-form map for ``disc``, ``half-plane-to-disc`` or ``strip-to-disc``."""
    try:
        return CATALOG[tag]()
    except KeyError:
        raise ValueError(f"unknown catalog map {tag!r}; choose from {sorted(CATALOG)}") from None


class NormalizedMap:
    """``G = -(|F'(z0)|/F'(z0)) psi_{F(z0)} o F`` with ``G(z0) = 0`` and ``G'(z0) > 0``."""

    def __init__(self, F: ConformalMap, z0: complex):
        self.F = F
        self.z0 = complex(z0)
        self.a = complex(F.forward(self.z0))
        d = complex(F.derivative(self.z0))
        self.unit = -abs(d) / d

    def __call__(self, z):
        return _out(self.unit * np.asarray(psi(self.a, self.F.forward(z))))

    def derivative(self, z):
        w = np.asarray(self.F.forward(z), dtype=complex)
        dpsi = (abs(self.a) ** 2 - 1.0) / (1.0 - np.conj(self.a) * w) ** 2
        return _out(self.unit * dpsi * np.asarray(self.F.derivative(z)))


def normalized_map(F: ConformalMap, z0: complex) -> NormalizedMap:
    return NormalizedMap(F, z0)


class SupportingHalfPlaneMap:
    """``f(z) = ((z - z0)/(z + z0 - 2 z1)) (z0 - z1)/|z0 - z1|``.

    It sends the half-plane ``Re((z - z1)/(z0 - z1)) > 0`` into the disc with
    ``f(z0) = 0`` and ``f'(z0) = 1/(2 |z0 - z1|)``.
    """

    def __init__(self, z0: complex, z1: complex):
        from ..errors import DegenerateInput

        self.z0, self.z1 = complex(z0), complex(z1)
        if self.z0 == self.z1:
            raise DegenerateInput("z0 and z1 coincide")
        self.unit = (self.z0 - self.z1) / abs(self.z0 - self.z1)

    def in_halfplane(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        return ((z - self.z1) / (self.z0 - self.z1)).real > 0

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return _out((z - self.z0) / (z + self.z0 - 2 * self.z1) * self.unit)

    def derivative(self, z):
        z = np.asarray(z, dtype=complex)
        return _out(2 * (self.z0 - self.z1) / (z + self.z0 - 2 * self.z1) ** 2 * self.unit)


def supporting_halfplane_map(z0: complex, z1: complex) -> SupportingHalfPlaneMap:
    return SupportingHalfPlaneMap(z0, z1)


def cauchy_riemann_residual(fun, z, h: float) -> np.ndarray:
    """``|f_y - i f_x| / |f_x|`` by central differences of step ``h``."""
    z = np.asarray(z, dtype=complex)
    fx = (np.asarray(fun(z + h)) - np.asarray(fun(z - h))) / (2 * h)
    fy = (np.asarray(fun(z + 1j * h)) - np.asarray(fun(z - 1j * h))) / (2 * h)
    return np.abs(fy - 1j * fx) / np.abs(fx)


def derivative_fd_error(F: ConformalMap, z, h: float) -> np.ndarray:
    """Relative error of ``F.derivative`` against a central difference."""
    z = np.asarray(z, dtype=complex)
    fd = (np.asarray(F.forward(z + h)) - np.asarray(F.forward(z - h))) / (2 * h)
    d = np.asarray(F.derivative(z))
    return np.abs(fd - d) / np.abs(d)

