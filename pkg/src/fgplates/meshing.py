"""Triangle meshes for rectangular, skewed and perforated plates.

Meshes live in physical coordinates.  A skewed plate is generated on the
parametric rectangle ``[0, a] x [0, b]`` and mapped by the shear

    x' = x + y sin(psi),   y' = y cos(psi),

which keeps the parametric coordinates recoverable exactly, so boundary
classification never depends on floating-point edge tests.  Node sets label
the four plate edges (``x0``, ``xa`` at parametric x = 0, a; ``y0``, ``yb``
at parametric y = 0, b) and, for perforated plates, the hole rim (``hole``).

The text format read and written here is line oriented:

    plmesh 1
    geometry <a> <b> <psi_deg> <hole_r>
    nodes <N>
    <x> <y>            (N lines)
    triangles <M>
    <i> <j> <k>        (M lines, zero-based, counterclockwise)
    set <name> <K>
    <index>            (K lines, ascending)

The ``geometry`` line and any number of ``set`` blocks are optional.
Coordinates round-trip bit exactly (shortest repr).
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import MeshError, ParseError

__all__ = [
    "PlateGeometry",
    "Mesh",
    "rectangle_mesh",
    "perforated_mesh",
    "validate_mesh",
    "write_mesh",
    "read_mesh",
    "mesh_to_text",
    "mesh_from_text",
]


@dataclass(frozen=True)
class PlateGeometry:
    """Plan-form description: side lengths, skew angle, optional hole."""

    length: float               # a, parametric x span
    width: float                # b, parametric y span
    skew_deg: float = 0.0       # psi, degrees; positive shears +x with y
    hole_radius: float = 0.0    # central circular cutout radius (0 = solid)

    def __post_init__(self):
        if self.length <= 0.0 or self.width <= 0.0:
            raise MeshError("plate side lengths must be positive")
        if not -90.0 < self.skew_deg < 90.0:
            raise MeshError("skew angle must lie strictly inside (-90, 90) degrees")
        if self.hole_radius < 0.0:
            raise MeshError("hole radius must be non-negative")
        if self.hole_radius > 0.0:
            if abs(self.length - self.width) > 1e-12 * self.length:
                raise MeshError("perforated plates must be square")
            if self.hole_radius >= 0.5 * self.length:
                raise MeshError("hole radius must be smaller than half the side")
            if self.skew_deg != 0.0:
                raise MeshError("skew and cutout cannot be combined")

    @property
    def skew_rad(self) -> float:
        return float(np.radians(self.skew_deg))

    def to_physical(self, xy: np.ndarray) -> np.ndarray:
        """Map parametric (x, y) pairs to physical coordinates."""
        psi = self.skew_rad
        xy = np.asarray(xy, dtype=float)
        out = np.empty_like(xy)
        out[..., 0] = xy[..., 0] + xy[..., 1] * np.sin(psi)
        out[..., 1] = xy[..., 1] * np.cos(psi)
        return out

    def to_parametric(self, xy: np.ndarray) -> np.ndarray:
        """Exact inverse of :meth:`to_physical`."""
        psi = self.skew_rad
        xy = np.asarray(xy, dtype=float)
        out = np.empty_like(xy)
        out[..., 1] = xy[..., 1] / np.cos(psi)
        out[..., 0] = xy[..., 0] - out[..., 1] * np.sin(psi)
        return out


@dataclass
class Mesh:
    """Triangulated plate: physical node coordinates plus labeled node sets."""

    nodes: np.ndarray                       # (N, 2) float
    triangles: np.ndarray                   # (M, 3) int, counterclockwise
    node_sets: dict = field(default_factory=dict)
    geometry: PlateGeometry | None = None

    @property
    def node_count(self) -> int:
        return self.nodes.shape[0]

    @property
    def triangle_count(self) -> int:
        return self.triangles.shape[0]

    def areas(self) -> np.ndarray:
        """Signed triangle areas (positive when counterclockwise)."""
        p = self.nodes[self.triangles]
        u = p[:, 1] - p[:, 0]
        v = p[:, 2] - p[:, 0]
        return 0.5 * (u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0])


def _diagonal_flags(nx: int, ny: int, diagonal: str) -> np.ndarray:
    """Per-cell flag: True = split along the 00-11 diagonal."""
    i, j = np.meshgrid(np.arange(nx), np.arange(ny), indexing="ij")
    if diagonal == "alternating":
        return (i + j) % 2 == 0
    if diagonal == "right":
        return np.ones((nx, ny), dtype=bool)
    if diagonal == "left":
        return np.zeros((nx, ny), dtype=bool)
    raise MeshError(f"unknown diagonal pattern {diagonal!r}")


def rectangle_mesh(geometry: PlateGeometry, nx: int, ny: int,
                   diagonal: str = "alternating") -> Mesh:
    """Structured nx-by-ny grid of quads, each split into two triangles.

    The default alternating split flips the diagonal checkerboard fashion,
    which keeps the mesh free of a preferred direction.
    """
    if geometry.hole_radius > 0.0:
        raise MeshError("use perforated_mesh for plates with a cutout")
    if nx < 1 or ny < 1:
        raise MeshError("need at least one cell in each direction")
    xs = np.linspace(0.0, geometry.length, nx + 1)
    ys = np.linspace(0.0, geometry.width, ny + 1)
    px, py = np.meshgrid(xs, ys, indexing="xy")
    param = np.column_stack([px.ravel(), py.ravel()])   # id = j*(nx+1) + i
    nodes = geometry.to_physical(param)

    def nid(i, j):
        return j * (nx + 1) + i

    flags = _diagonal_flags(nx, ny, diagonal)
    tris = np.empty((2 * nx * ny, 3), dtype=np.int64)
    t = 0
    for j in range(ny):
        for i in range(nx):
            n00, n10 = nid(i, j), nid(i + 1, j)
            n01, n11 = nid(i, j + 1), nid(i + 1, j + 1)
            if flags[i, j]:
                tris[t] = (n00, n10, n11)
                tris[t + 1] = (n00, n11, n01)
            else:
                tris[t] = (n00, n10, n01)
                tris[t + 1] = (n10, n11, n01)
            t += 2

    ii = np.arange(nx + 1)
    jj = np.arange(ny + 1)
    sets = {
        "x0": np.array([nid(0, j) for j in jj]),
        "xa": np.array([nid(nx, j) for j in jj]),
        "y0": np.array([nid(i, 0) for i in ii]),
        "yb": np.array([nid(i, ny) for i in ii]),
    }
    sets = {k: np.unique(v) for k, v in sets.items()}
    mesh = Mesh(nodes, tris, sets, geometry)
    validate_mesh(mesh)
    return mesh


def perforated_mesh(geometry: PlateGeometry, circumferential: int,
                    radial: int) -> Mesh:
    """Ring mesh between a central circular hole and the square outline.

    Nodes sit on ``circumferential`` rays (circumferential must be a multiple
    of 8 so that rays hit the four corners and the four edge midpoints
    exactly) with ``radial + 1`` stations per ray, linearly spaced from the
    circle to the ray's exit point on the square.  Quads are split with an
    alternating diagonal.  Node count is ``circumferential * (radial + 1)``.
    """
    if geometry.hole_radius <= 0.0:
        raise MeshError("perforated_mesh needs a positive hole radius")
    if circumferential < 8 or circumferential % 8 != 0:
        raise MeshError("circumferential division must be a positive multiple of 8")
    if radial < 1:
        raise MeshError("need at least one radial layer")
    a = geometry.length
    r = geometry.hole_radius
    half = 0.5 * a
    nc, nr = circumferential, radial

    theta = 2.0 * np.pi * np.arange(nc) / nc
    ct, st = np.cos(theta), np.sin(theta)
    # Distance from the center to the square boundary along each ray.
    t_exit = half / np.maximum(np.abs(ct), np.abs(st))
    inner = np.column_stack([r * ct, r * st])
    outer = np.column_stack([t_exit * ct, t_exit * st])
    frac = np.arange(nr + 1) / nr
    # Node id = ray * (nr + 1) + station; station 0 on the hole rim.
    nodes = (inner[:, None, :] * (1.0 - frac)[None, :, None]
             + outer[:, None, :] * frac[None, :, None]).reshape(-1, 2)
    nodes += np.array([half, half])   # square occupies [0, a] x [0, a]

    def nid(ray, station):
        return (ray % nc) * (nr + 1) + station

    tris = np.empty((2 * nc * nr, 3), dtype=np.int64)
    t = 0
    for ray in range(nc):
        for s in range(nr):
            # Counterclockwise quad: out along this ray, across to the next
            # ray (counterclockwise in theta), back inward.
            n00, n10 = nid(ray, s), nid(ray, s + 1)
            n11, n01 = nid(ray + 1, s + 1), nid(ray + 1, s)
            if (ray + s) % 2 == 0:
                tris[t] = (n00, n10, n11)
                tris[t + 1] = (n00, n11, n01)
            else:
                tris[t] = (n00, n10, n01)
                tris[t + 1] = (n10, n11, n01)
            t += 2

    rays = np.arange(nc)
    rim = np.array([nid(k, 0) for k in rays])
    # Outer stations land exactly on one square edge; classify by the ray
    # angle so corner rays (odd multiples of 45 degrees) join both sets.
    def on_edge(cond):
        return np.unique(np.array([nid(k, nr) for k in rays[cond]]))
    eighth = nc // 8
    k = rays
    xa = (k <= eighth) | (k >= 7 * eighth)             # |theta| <= 45 deg
    yb = (eighth <= k) & (k <= 3 * eighth)             # around +y
    x0 = (3 * eighth <= k) & (k <= 5 * eighth)         # around -x
    y0 = (5 * eighth <= k) & (k <= 7 * eighth)         # around -y
    sets = {
        "hole": np.unique(rim),
        "x0": on_edge(x0),
        "xa": on_edge(xa),
        "y0": on_edge(y0),
        "yb": on_edge(yb),
    }
    mesh = Mesh(nodes, tris, sets, geometry)
    validate_mesh(mesh)
    return mesh


def validate_mesh(mesh: Mesh) -> None:
    """Raise :class:`MeshError` on malformed connectivity or node sets."""
    nodes, tris = mesh.nodes, mesh.triangles
    if nodes.ndim != 2 or nodes.shape[1] != 2:
        raise MeshError("nodes must be an (N, 2) array")
    if tris.ndim != 2 or tris.shape[1] != 3:
        raise MeshError("triangles must be an (M, 3) array")
    if not np.issubdtype(tris.dtype, np.integer):
        raise MeshError("triangle connectivity must be integer")
    if tris.size and (tris.min() < 0 or tris.max() >= len(nodes)):
        raise MeshError("triangle connectivity references a missing node")
    if np.any(np.ptp(np.sort(tris, axis=1), axis=1) == 0) or np.any(
            np.diff(np.sort(tris, axis=1), axis=1) == 0):
        raise MeshError("triangle repeats a node")
    areas = mesh.areas()
    if np.any(areas <= 0.0):
        bad = int(np.argmin(areas))
        raise MeshError(f"triangle {bad} is degenerate or clockwise (area {areas[bad]:g})")
    if len(nodes) > 1:
        span = float(np.ptp(nodes, axis=0).max())
        order = np.lexsort(nodes.T)
        gaps = np.abs(np.diff(nodes[order], axis=0)).max(axis=1)
        if np.any(gaps <= 1e-12 * max(span, 1.0)):
            pair = int(np.argmin(gaps))
            raise MeshError(f"duplicate nodes {order[pair]} and {order[pair + 1]}")
    for name, idx in mesh.node_sets.items():
        idx = np.asarray(idx)
        if idx.size and (idx.min() < 0 or idx.max() >= len(nodes)):
            raise MeshError(f"node set {name!r} references a missing node")
        if np.any(np.diff(idx) <= 0):
            raise MeshError(f"node set {name!r} must be strictly ascending")


def mesh_to_text(mesh: Mesh) -> str:
    """Serialize to the plmesh text format."""
    out = io.StringIO()
    out.write("plmesh 1\n")
    if mesh.geometry is not None:
        g = mesh.geometry
        out.write(f"geometry {g.length!r} {g.width!r} {g.skew_deg!r} {g.hole_radius!r}\n")
    out.write(f"nodes {mesh.node_count}\n")
    for x, y in mesh.nodes:
        out.write(f"{float(x)!r} {float(y)!r}\n")
    out.write(f"triangles {mesh.triangle_count}\n")
    for i, j, k in mesh.triangles:
        out.write(f"{i} {j} {k}\n")
    for name in sorted(mesh.node_sets):
        idx = mesh.node_sets[name]
        out.write(f"set {name} {len(idx)}\n")
        for i in idx:
            out.write(f"{i}\n")
    return out.getvalue()


def write_mesh(mesh: Mesh, path) -> None:
    Path(path).write_text(mesh_to_text(mesh))


class _Scanner:
    """Sequential reader over non-blank lines, reporting 1-based numbers."""

    def __init__(self, text: str):
        self.lines = [(no, ln.strip()) for no, ln in enumerate(text.splitlines(), 1)
                      if ln.strip() and not ln.strip().startswith("#")]
        self.pos = 0

    def done(self) -> bool:
        return self.pos >= len(self.lines)

    def peek(self):
        return None if self.done() else self.lines[self.pos]

    def next(self, what: str):
        if self.done():
            raise ParseError(f"unexpected end of file, expected {what}")
        item = self.lines[self.pos]
        self.pos += 1
        return item

    def block(self, count: int, what: str, convert):
        out = []
        for _ in range(count):
            no, ln = self.next(f"a {what} line")
            try:
                out.append(convert(ln))
            except ValueError as err:
                raise ParseError(f"line {no}: bad {what} entry ({err})") from None
        return out


def mesh_from_text(text: str) -> Mesh:
    """Parse the plmesh text format (see module docstring)."""
    scan = _Scanner(text)
    no, header = scan.next("'plmesh 1'")
    if header.split() != ["plmesh", "1"]:
        raise ParseError(f"line {no}: not a plmesh file (expected 'plmesh 1')")
    geometry = None
    nxt = scan.peek()
    if nxt is not None and nxt[1].startswith("geometry"):
        no, ln = scan.next("geometry")
        parts = ln.split()
        try:
            if len(parts) != 5:
                raise ValueError("needs 4 numbers")
            a, b, psi, hole = (float(p) for p in parts[1:])
            geometry = PlateGeometry(a, b, psi, hole)
        except (ValueError, MeshError) as err:
            raise ParseError(f"line {no}: bad geometry line ({err})") from None
    no, ln = scan.next("'nodes <N>'")
    parts = ln.split()
    if len(parts) != 2 or parts[0] != "nodes":
        raise ParseError(f"line {no}: expected 'nodes <N>'")
    try:
        n_nodes = int(parts[1])
    except ValueError:
        raise ParseError(f"line {no}: bad node count {parts[1]!r}") from None

    def node_line(ln):
        x, y = ln.split()
        return (float(x), float(y))

    coords = scan.block(n_nodes, "node", node_line)
    no, ln = scan.next("'triangles <M>'")
    parts = ln.split()
    if len(parts) != 2 or parts[0] != "triangles":
        raise ParseError(f"line {no}: expected 'triangles <M>'")
    try:
        n_tris = int(parts[1])
    except ValueError:
        raise ParseError(f"line {no}: bad triangle count {parts[1]!r}") from None

    def tri_line(ln):
        i, j, k = ln.split()
        return (int(i), int(j), int(k))

    conn = scan.block(n_tris, "triangle", tri_line)
    sets = {}
    while not scan.done():
        no, ln = scan.next("'set <name> <K>'")
        head = ln.split()
        if len(head) != 3 or head[0] != "set":
            raise ParseError(f"line {no}: unexpected line {ln!r}")
        try:
            count = int(head[2])
        except ValueError:
            raise ParseError(f"line {no}: bad set size {head[2]!r}") from None
        sets[head[1]] = np.asarray(scan.block(count, f"set {head[1]}", int),
                                   dtype=np.int64)
    mesh = Mesh(np.asarray(coords, dtype=float).reshape(-1, 2),
                np.asarray(conn, dtype=np.int64).reshape(-1, 3), sets, geometry)
    try:
        validate_mesh(mesh)
    except MeshError as err:
        raise ParseError(str(err)) from None
    return mesh


def read_mesh(path) -> Mesh:
    return mesh_from_text(Path(path).read_text())
