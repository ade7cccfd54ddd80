"""Smoothed shear-gap triangle for Mindlin plates.

Each node carries five unknowns ``(u, v, w, tx, ty)``: membrane
displacements, deflection, and the two section rotations (``tx`` pairs with
the x direction, so the transverse shear strains are ``w,x + tx`` and
``w,y + ty``).  Element vectors and matrices use node-major ordering, dof
``5 * node + component``.

The base triangle uses linear shape functions with the discrete shear gap
substitution for the transverse shear field, which removes the worst of the
thin-plate locking but leaves a mild anchor-node bias.  The smoothed variant
splits the triangle at its centroid into three subtriangles, evaluates the
shear-gap operators on each (anchored at the centroid), condenses the
centroid unknowns as the nodal average, and area-averages the three
operators.  The result is symmetric in the nodes and markedly softer in the
thin limit while keeping the same 15 unknowns.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MeshError
from .materials import SectionStiffness

__all__ = [
    "DOF_PER_NODE",
    "ElementOperators",
    "triangle_operators",
    "stiffness_matrix",
    "mass_matrix",
    "geometric_matrix",
    "thermal_load",
    "pressure_load",
]

DOF_PER_NODE = 5

# Relative area below which a triangle counts as degenerate.
_DEGENERATE = 1e-12


def _raw_operators(coords):
    """Strain operators of one triangle, anchored at its first node.

    Returns ``(membrane, bending, shear, area)`` where the operators have 15
    columns in node-major dof order and rows (xx, yy, xy) respectively
    (xz, yz).  The membrane and bending rows are the constant-strain
    gradients; the shear rows are the discrete shear-gap field averaged over
    the element, which reproduces zero transverse shear for any bending mode
    whose deflection is compatible with the rotations.
    """
    (x1, y1), (x2, y2), (x3, y3) = coords
    a = x2 - x1
    b = y2 - y1
    d = x3 - x1
    c = y3 - y1
    two_a = a * c - b * d
    scale = max(a * a + b * b, c * c + d * d, (a - d) ** 2 + (b - c) ** 2)
    if two_a <= _DEGENERATE * scale:
        raise MeshError(f"degenerate or clockwise triangle (doubled area {two_a:g})")

    gx = np.array([b - c, c, -b]) / two_a     # shape-function x gradients
    gy = np.array([d - a, -d, a]) / two_a     # shape-function y gradients

    membrane = np.zeros((3, 15))
    bending = np.zeros((3, 15))
    for k in range(3):
        u, v = 5 * k, 5 * k + 1
        tx, ty = 5 * k + 3, 5 * k + 4
        membrane[0, u] = gx[k]
        membrane[1, v] = gy[k]
        membrane[2, u] = gy[k]
        membrane[2, v] = gx[k]
        bending[0, tx] = gx[k]
        bending[1, ty] = gy[k]
        bending[2, tx] = gy[k]
        bending[2, ty] = gx[k]

    area = 0.5 * two_a
    shear = np.zeros((2, 15))
    for k, (sw_x, sw_y, stx_x, stx_y, sty_x, sty_y) in enumerate([
            (b - c, d - a, area, 0.0, 0.0, area),
            (c, -d, a * c / 2, -a * d / 2, b * c / 2, -b * d / 2),
            (-b, a, -b * d / 2, a * d / 2, -b * c / 2, a * c / 2)]):
        w, tx, ty = 5 * k + 2, 5 * k + 3, 5 * k + 4
        shear[0, w] = sw_x / two_a
        shear[1, w] = sw_y / two_a
        shear[0, tx] = stx_x / two_a
        shear[1, tx] = stx_y / two_a
        shear[0, ty] = sty_x / two_a
        shear[1, ty] = sty_y / two_a
    return membrane, bending, shear, area


@dataclass(frozen=True)
class ElementOperators:
    """Geometry-dependent pieces of one triangle, ready for materialization."""

    membrane: np.ndarray      # (3, 15) strain rows xx, yy, xy
    bending: np.ndarray       # (3, 15) curvature rows
    shear: np.ndarray         # (2, 15) transverse shear rows xz, yz
    gradient: np.ndarray      # (2, 3) whole-triangle shape gradients
    area: float
    longest_edge: float


def triangle_operators(coords, smoothed: bool = True) -> ElementOperators:
    """Build the strain operators for one triangle.

    ``coords`` is (3, 2), counterclockwise.  ``smoothed=False`` gives the
    plain anchor-biased shear-gap triangle (useful as a locking baseline);
    the default applies the centroid subdivision and area averaging.
    """
    coords = np.asarray(coords, dtype=float)
    edges = coords[[1, 2, 0]] - coords
    longest = float(np.sqrt((edges ** 2).sum(axis=1).max()))

    if not smoothed:
        membrane, bending, shear, area = _raw_operators(coords)
    else:
        center = coords.mean(axis=0)
        membrane = np.zeros((3, 15))
        bending = np.zeros((3, 15))
        shear = np.zeros((2, 15))
        area = 0.0
        for p, q in ((0, 1), (1, 2), (2, 0)):
            sub = np.array([center, coords[p], coords[q]])
            m_s, b_s, s_s, a_s = _raw_operators(sub)
            r = 3 - p - q
            for full, part in ((membrane, m_s), (bending, b_s), (shear, s_s)):
                anchor = part[:, 0:5]
                block = np.zeros_like(full)
                block[:, 5 * p:5 * p + 5] = part[:, 5:10] + anchor / 3.0
                block[:, 5 * q:5 * q + 5] = part[:, 10:15] + anchor / 3.0
                block[:, 5 * r:5 * r + 5] = anchor / 3.0
                full += a_s * block
            area += a_s
        membrane /= area
        bending /= area
        shear /= area

    (x1, y1), (x2, y2), (x3, y3) = coords
    two_a = 2.0 * area
    gx = np.array([y2 - y3, y3 - y1, y1 - y2]) / two_a
    gy = np.array([x3 - x2, x1 - x3, x2 - x1]) / two_a
    gradient = np.vstack([gx, gy])
    return ElementOperators(membrane, bending, shear, gradient,
                            float(area), longest)


def stiffness_matrix(ops: ElementOperators, section: SectionStiffness,
                     shear_stabilized: bool = False) -> np.ndarray:
    """15x15 element stiffness.

    With ``shear_stabilized`` the transverse shear block is scaled by
    ``h^2 / (h^2 + 0.1 l^2)`` (``l`` the longest edge), a standard damping of
    residual locking for very thin plates; off by default because the
    benchmark thicknesses do not need it.
    """
    bp, bb, bs = ops.membrane, ops.bending, ops.shear
    shear_block = section.shear
    if shear_stabilized:
        h2 = section.thickness ** 2
        shear_block = shear_block * (h2 / (h2 + 0.1 * ops.longest_edge ** 2))
    k = (bp.T @ section.extension @ bp
         + bp.T @ section.coupling @ bb
         + bb.T @ section.coupling @ bp
         + bb.T @ section.bending @ bb
         + bs.T @ shear_block @ bs)
    return ops.area * k


_CONSISTENT = np.array([[2.0, 1.0, 1.0], [1.0, 2.0, 1.0], [1.0, 1.0, 2.0]]) / 12.0


def mass_matrix(ops: ElementOperators, section: SectionStiffness) -> np.ndarray:
    """15x15 consistent mass: translational inertia on u, v, w and rotary
    inertia on the two rotations."""
    m = np.zeros((15, 15))
    block = ops.area * _CONSISTENT
    for comp, coeff in ((0, section.mass), (1, section.mass), (2, section.mass),
                        (3, section.rotary_inertia), (4, section.rotary_inertia)):
        idx = np.arange(3) * 5 + comp
        m[np.ix_(idx, idx)] = coeff * block
    return m


def geometric_matrix(ops: ElementOperators, resultants,
                     thickness: float) -> np.ndarray:
    """15x15 initial-stress (geometric) stiffness for membrane state
    ``resultants = (Nxx, Nyy, Nxy)``.

    The deflection gradient carries the full membrane work; the rotation
    gradients carry the section-averaged second-order contribution with the
    ``h^2 / 24`` weight of the average-rotation measure.
    """
    nxx, nyy, nxy = resultants
    nhat = np.array([[nxx, nxy], [nxy, nyy]])
    core = ops.area * (ops.gradient.T @ nhat @ ops.gradient)
    kg = np.zeros((15, 15))
    w_idx = np.arange(3) * 5 + 2
    kg[np.ix_(w_idx, w_idx)] = core
    rot = (thickness ** 2 / 24.0) * core
    for comp in (3, 4):
        idx = np.arange(3) * 5 + comp
        kg[np.ix_(idx, idx)] = rot
    return kg


def thermal_load(ops: ElementOperators, section: SectionStiffness) -> np.ndarray:
    """Equivalent nodal forces of the section's thermal resultants."""
    return ops.area * (ops.membrane.T @ section.thermal_force
                       + ops.bending.T @ section.thermal_moment)


def pressure_load(ops: ElementOperators, pressure: float) -> np.ndarray:
    """Equivalent nodal forces of a uniform transverse pressure."""
    f = np.zeros(15)
    f[np.arange(3) * 5 + 2] = pressure * ops.area / 3.0
    return f
