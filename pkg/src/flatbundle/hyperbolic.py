"""Hyperbolic-plane helpers for the fuchsian representation constructor.

Geometry is set up in the disk model (regular polygons are easiest there)
and converted through the Cayley transform to upper half-plane coordinates,
where isometries are ``SL(2, R)`` matrices acting as Moebius maps.  The
half-plane boundary parametrization matches ``lifts.boundary_action``: the
circle point ``x`` in turns is the boundary point ``tan(pi (x - 1/2))``.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import InvalidGenusError, VerificationError

Matrix = tuple[tuple[float, float], tuple[float, float]]


def rotation_about_center(turns: float) -> Matrix:
    """``SL(2, R)`` element rotating the disk about its center by ``turns``
    of a full turn; its boundary action is the rigid rotation by ``turns``."""
    phi = -math.pi * turns
    c, s = math.cos(phi), math.sin(phi)
    return ((c, -s), (s, c))


def disk_to_halfplane(w: complex) -> complex:
    """Inverse Cayley transform: unit disk to upper half-plane."""
    return 1j * (1 + w) / (1 - w)


def interior_angle(n: int, rho: float) -> float:
    """Interior angle of the regular hyperbolic ``n``-gon with circumradius
    ``rho``, from the right-triangle relation cot(pi/n) cot(angle/2) = cosh(rho)."""
    return 2.0 * math.atan(1.0 / (math.cosh(rho) * math.tan(math.pi / n)))


def circumradius(n: int, angle: float) -> float:
    """Circumradius of the regular hyperbolic ``n``-gon with the given
    interior angle, found by bisection (the angle decreases in the radius)."""
    if not 0 < angle < math.pi * (n - 2) / n:
        raise InvalidGenusError(f"no hyperbolic regular {n}-gon with angle {angle!r}")
    lo, hi = 1e-9, 1.0
    while interior_angle(n, hi) > angle:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if interior_angle(n, mid) > angle:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def polygon_vertices(g: int) -> list[complex]:
    """Vertices (half-plane coordinates) of the regular hyperbolic 4g-gon
    with interior angle 2 pi / 4g, centered at the disk origin."""
    if g < 2:
        raise InvalidGenusError(f"hyperbolic 4g-gon needs genus >= 2, got {g}")
    n = 4 * g
    rho = circumradius(n, 2.0 * math.pi / n)
    r = math.tanh(rho / 2.0)
    return [
        disk_to_halfplane(r * cmath.exp(2j * math.pi * (k + 0.5) / n))
        for k in range(n)
    ]


def sl2_from_segment(z1: complex, z2: complex, w1: complex, w2: complex) -> Matrix:
    """The unique orientation-preserving isometry of the half-plane with
    ``z1 -> w1`` and ``z2 -> w2`` (the segments must have equal length).

    Solves the homogeneous linear system ``a z + b - c w z - d w = 0`` for
    the two point pairs; the kernel of the 4x4 real system is spanned by the
    isometry's matrix, recovered via SVD and normalized to determinant 1.
    """
    rows = []
    for z, w in ((z1, w1), (z2, w2)):
        wz = w * z
        rows.append([z.real, 1.0, -wz.real, -w.real])
        rows.append([z.imag, 0.0, -wz.imag, -w.imag])
    _, s, vh = np.linalg.svd(np.array(rows))
    a, b, c, d = vh[-1]
    det = a * d - b * c
    if det <= 1e-12:
        raise VerificationError(f"segment isometry is degenerate (det {det!r})")
    scale = math.sqrt(det)
    a, b, c, d = a / scale, b / scale, c / scale, d / scale
    for z, w in ((z1, w1), (z2, w2)):
        img = (a * z + b) / (c * z + d)
        if abs(img - w) > 1e-8 * (1 + abs(w)):
            raise VerificationError(f"segment isometry misses target: {img} vs {w}")
    return ((a, b), (c, d))


def side_pairing_matrices(g: int) -> list[Matrix]:
    """Side pairings of the regular 4g-gon for the identification pattern
    a1 b1 a1' b1' a2 ... read counterclockwise along the boundary.

    Edge ``E_k`` joins vertices ``V_k -> V_{k+1}``.  The generator paired
    with edges ``(E_p, E_q)`` (``q = p + 2``) maps ``V_{q+1} -> V_p`` and
    ``V_q -> V_{p+1}``, throwing the polygon across ``E_p``.  Returns the
    2g matrices ordered ``A_1, B_1, ..., A_g, B_g``.
    """
    v = polygon_vertices(g)
    n = len(v)
    out = []
    for j in range(g):
        for p in (4 * j, 4 * j + 1):
            q = p + 2
            out.append(
                sl2_from_segment(v[(q + 1) % n], v[q % n], v[p], v[(p + 1) % n])
            )
    return out


def fuchsian_generator_matrices(g: int) -> list[Matrix]:
    """Matrices of the standard generators of the genus-``g`` surface group
    uniformizing the regular 4g-gon.

    The vertex cycle of the raw side pairings ``P_j`` (a-edges) and ``Q_j``
    (b-edges) closes up as ``prod_j P_j Q_j^-1 P_j^-1 Q_j = I``, so the tuple
    ``(P_1, Q_1^-1, ..., P_g, Q_g^-1)`` satisfies the surface relator
    ``prod_j [A_j, B_j] = I`` exactly.
    """
    raw = side_pairing_matrices(g)
    out = []
    for j in range(g):
        out.append(raw[2 * j])
        out.append(mat_inv(raw[2 * j + 1]))
    return out


def mat_mul(m1: Matrix, m2: Matrix) -> Matrix:
    (a, b), (c, d) = m1
    (e, f), (g_, h) = m2
    return ((a * e + b * g_, a * f + b * h), (c * e + d * g_, c * f + d * h))


def mat_inv(m: Matrix) -> Matrix:
    (a, b), (c, d) = m
    return ((d, -b), (-c, a))
