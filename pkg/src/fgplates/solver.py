"""Global assembly, boundary conditions, and the plate analyses.

Static bending, free vibration (optionally in a membrane-prestressed thermal
state), and linearized buckling under mechanical or thermal in-plane loads.
Systems are assembled sparse over ``5 * node_count`` unknowns; constraints
are eliminated by row/column deletion so every reduced pencil stays symmetric
and definite.  Skewed plates rotate the in-plane displacement and rotation
pairs of nodes on the oblique edges into edge-aligned axes before
constraining, as a congruence transform of the assembled system.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import ConfigError, DomainError, NumericError
from .materials import (FgmSection, SectionStiffness, ThermalState,
                        material_from_dict, section_stiffness)
from .meshing import Mesh, PlateGeometry, perforated_mesh, read_mesh, rectangle_mesh
from . import element as el

__all__ = [
    "DOF",
    "build_operators",
    "assemble_matrix",
    "assemble_stiffness",
    "assemble_mass",
    "assemble_geometric",
    "assemble_pressure",
    "assemble_thermal_load",
    "skew_transform",
    "constrained_dofs",
    "reduce_matrix",
    "expand_vector",
    "static_solve",
    "modal_solve",
    "buckling_solve",
    "uniform_prestress",
    "traction_resultants",
    "thermal_membrane_resultants",
    "element_resultants",
    "kirchhoff_center_deflection",
    "reference_phase",
    "normalize_deflection",
    "normalize_frequency",
    "frequency_fourth_root",
    "normalize_buckling",
    "AnalysisResult",
    "run_case",
]

DOF = el.DOF_PER_NODE

# Reduced systems at or below this size use a direct dense eigensolve; above
# it, shift-invert Lanczos iteration.  Correctness is pinned by tests that
# compare the two paths at 1e-8 relative.
DENSE_LIMIT = 2000


# -- assembly -----------------------------------------------------------------

def build_operators(mesh: Mesh, smoothed: bool = True):
    """Per-element strain operators, computed once and shared by assemblers."""
    return [el.triangle_operators(mesh.nodes[tri], smoothed=smoothed)
            for tri in mesh.triangles]


def _element_dofs(tri):
    return (np.asarray(tri)[:, None] * DOF + np.arange(DOF)[None, :]).ravel()


def assemble_matrix(mesh: Mesh, builder, operators=None,
                    smoothed: bool = True) -> sp.csr_matrix:
    """Scatter-add ``builder(ops, index) -> 15x15`` over all elements."""
    if operators is None:
        operators = build_operators(mesh, smoothed)
    n = mesh.node_count * DOF
    m = len(operators)
    rows = np.empty(m * 225, dtype=np.int64)
    cols = np.empty(m * 225, dtype=np.int64)
    vals = np.empty(m * 225)
    for e, (tri, ops) in enumerate(zip(mesh.triangles, operators)):
        ke = builder(ops, e)
        dofs = _element_dofs(tri)
        rows[e * 225:(e + 1) * 225] = np.repeat(dofs, 15)
        cols[e * 225:(e + 1) * 225] = np.tile(dofs, 15)
        vals[e * 225:(e + 1) * 225] = ke.ravel()
    mat = sp.coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()
    return mat


def assemble_stiffness(mesh: Mesh, section: SectionStiffness, operators=None,
                       smoothed: bool = True,
                       stabilized: bool = False) -> sp.csr_matrix:
    return assemble_matrix(
        mesh, lambda ops, e: el.stiffness_matrix(ops, section, stabilized),
        operators, smoothed)


def assemble_mass(mesh: Mesh, section: SectionStiffness, operators=None,
                  smoothed: bool = True) -> sp.csr_matrix:
    return assemble_matrix(
        mesh, lambda ops, e: el.mass_matrix(ops, section), operators, smoothed)


def assemble_geometric(mesh: Mesh, resultants, thickness: float,
                       operators=None, smoothed: bool = True) -> sp.csr_matrix:
    """Geometric stiffness for a membrane state.

    ``resultants`` is either one ``(Nxx, Nyy, Nxy)`` triple applied uniformly
    or an ``(n_elements, 3)`` array of per-element values.
    """
    res = np.asarray(resultants, dtype=float)
    if res.ndim == 1:
        res = np.broadcast_to(res, (mesh.triangle_count, 3))
    if res.shape != (mesh.triangle_count, 3):
        raise DomainError("resultants must be (3,) or (n_elements, 3)")
    return assemble_matrix(
        mesh, lambda ops, e: el.geometric_matrix(ops, res[e], thickness),
        operators, smoothed)


def assemble_pressure(mesh: Mesh, pressure: float, operators=None) -> np.ndarray:
    if operators is None:
        operators = build_operators(mesh)
    f = np.zeros(mesh.node_count * DOF)
    for tri, ops in zip(mesh.triangles, operators):
        f[_element_dofs(tri)] += el.pressure_load(ops, pressure)
    return f


def assemble_thermal_load(mesh: Mesh, section: SectionStiffness,
                          operators=None) -> np.ndarray:
    if operators is None:
        operators = build_operators(mesh)
    f = np.zeros(mesh.node_count * DOF)
    for tri, ops in zip(mesh.triangles, operators):
        f[_element_dofs(tri)] += el.thermal_load(ops, section)
    return f


# -- skew transformation and boundary conditions ------------------------------

def skew_transform(mesh: Mesh) -> sp.csr_matrix | None:
    """Congruence transform aligning oblique-edge nodes with their edge.

    Returns T with ``delta_global = T @ delta_primed``, or None when the
    plate is not skewed.  Only nodes on the two oblique edges (parametric
    x = 0 and x = a) get the in-plane rotation blocks; w stays untouched.
    """
    geom = mesh.geometry
    if geom is None or geom.skew_deg == 0.0:
        return None
    psi = geom.skew_rad
    cs, sn = np.cos(psi), np.sin(psi)
    # Columns of the node block are the primed axes expressed globally:
    # x' = (cos, -sin), y' = (sin, cos) so that y' runs along the edge.
    block = np.array([[cs, sn], [-sn, cs]])
    n = mesh.node_count * DOF
    t = sp.lil_matrix((n, n))
    t.setdiag(1.0)
    oblique = np.union1d(mesh.node_sets.get("x0", []), mesh.node_sets.get("xa", []))
    for node in oblique:
        base = node * DOF
        for off in (0, 3):      # the (u, v) pair and the (tx, ty) pair
            i = base + off
            t[i:i + 2, i:i + 2] = block
    return t.tocsr()


# Simple support pins the in-plane normal, the deflection, and the rotation
# about the edge normal; its "movable" variant frees the in-plane normal and
# pins the tangential displacement instead, which keeps incremental membrane
# motion compatible with double-sine buckling and vibration modes.
_X_EDGE = {"simple": (0, 2, 4), "simple-movable": (1, 2, 4),
           "clamped": (0, 1, 2, 3, 4), "free": ()}
_Y_EDGE = {"simple": (1, 2, 3), "simple-movable": (0, 2, 3),
           "clamped": (0, 1, 2, 3, 4), "free": ()}
_SOFT = {"simple": (2,), "simple-movable": (2,),
         "clamped": (0, 1, 2, 3, 4), "free": ()}

_EDGE_KIND = {"x0": "x", "xa": "x", "y0": "y", "yb": "y", "hole": "soft"}

_BC_ALIASES = {
    "SSSS": {"x0": "simple", "xa": "simple", "y0": "simple", "yb": "simple"},
    "SSSS-movable": {"x0": "simple-movable", "xa": "simple-movable",
                     "y0": "simple-movable", "yb": "simple-movable"},
    "CCCC": {"x0": "clamped", "xa": "clamped", "y0": "clamped", "yb": "clamped"},
    "SSSS-soft": None,     # handled specially: w only on all edges
    "free": {},
}


def constrained_dofs(mesh: Mesh, bc) -> np.ndarray:
    """Fixed dof indices (edge-aligned basis on skew edges) for a BC name.

    Simple support takes the plate-standard sets: on the x = const edges the
    normal displacement, deflection and tangential rotation ``(u, w, ty)``;
    on the y = const edges ``(v, w, tx)``.  Clamps fix all five.  A dict maps
    edge-set names to "simple" / "clamped" / "free" per edge; unnamed sets
    (the hole rim) default to free.
    """
    if isinstance(bc, str):
        if bc not in _BC_ALIASES:
            raise ConfigError(f"unknown boundary condition {bc!r}")
        if bc == "SSSS-soft":
            spec = {name: "soft-simple" for name in ("x0", "xa", "y0", "yb")}
        else:
            spec = _BC_ALIASES[bc]
    elif isinstance(bc, dict):
        spec = bc
    else:
        raise ConfigError("boundary condition must be a name or an edge dict")
    fixed = set()
    for name, condition in spec.items():
        if name not in mesh.node_sets:
            raise ConfigError(f"boundary condition names unknown edge set {name!r}")
        if condition == "soft-simple":
            comps = (2,)
        else:
            kind = _EDGE_KIND.get(name, "soft")
            table = {"x": _X_EDGE, "y": _Y_EDGE, "soft": _SOFT}[kind]
            if condition not in table:
                raise ConfigError(f"unknown edge condition {condition!r}")
            comps = table[condition]
        for node in mesh.node_sets[name]:
            for comp in comps:
                fixed.add(node * DOF + comp)
    return np.array(sorted(fixed), dtype=np.int64)


def free_dofs(mesh: Mesh, fixed: np.ndarray) -> np.ndarray:
    mask = np.ones(mesh.node_count * DOF, dtype=bool)
    mask[fixed] = False
    return np.flatnonzero(mask)


def reduce_matrix(mat: sp.spmatrix, free: np.ndarray) -> sp.csr_matrix:
    return mat.tocsr()[free][:, free]


def expand_vector(values: np.ndarray, free: np.ndarray, size: int) -> np.ndarray:
    full = np.zeros(size)
    full[free] = values
    return full


def _symmetrize(mat: sp.csr_matrix) -> sp.csr_matrix:
    return (mat + mat.T) * 0.5


# -- eigen machinery ----------------------------------------------------------

def _start_vector(n: int) -> np.ndarray:
    return np.full(n, 1.0 / np.sqrt(n))


def smallest_eigenpairs(k_mat: sp.csr_matrix, m_mat: sp.csr_matrix, count: int,
                        dense_limit: int = DENSE_LIMIT):
    """k smallest eigenpairs of ``K x = lam M x`` with M positive definite.

    Dense solve below the size limit, else shift-invert Lanczos around zero.
    Eigenvectors come back M-orthonormal, eigenvalues ascending.
    """
    n = k_mat.shape[0]
    count = min(count, n)
    if n <= dense_limit:
        vals, vecs = scipy.linalg.eigh(k_mat.toarray(), m_mat.toarray())
        return vals[:count], vecs[:, :count]
    try:
        vals, vecs = spla.eigsh(k_mat.tocsc(), k=count, M=m_mat.tocsc(),
                                sigma=0.0, which="LM", v0=_start_vector(n))
    except Exception as err:
        raise NumericError(f"eigen iteration failed: {err}") from None
    order = np.argsort(vals)
    return vals[order], vecs[:, order]


def largest_generalized(a_mat: sp.csr_matrix, b_mat: sp.csr_matrix, count: int,
                        dense_limit: int = DENSE_LIMIT):
    """Largest eigenvalues of ``A x = mu B x`` with B positive definite."""
    n = a_mat.shape[0]
    count = min(count, n - 1 if n > dense_limit else n)
    if n <= dense_limit:
        vals, vecs = scipy.linalg.eigh(a_mat.toarray(), b_mat.toarray())
        return vals[::-1][:count], vecs[:, ::-1][:, :count]
    try:
        vals, vecs = spla.eigsh(a_mat.tocsc(), k=count, M=b_mat.tocsc(),
                                which="LA", v0=_start_vector(n))
    except Exception as err:
        raise NumericError(f"eigen iteration failed: {err}") from None
    order = np.argsort(vals)[::-1]
    return vals[order], vecs[:, order]


# -- solution fields and scalar extraction ------------------------------------

def _center_node(mesh: Mesh) -> int:
    geom = mesh.geometry
    if geom is None:
        target = mesh.nodes.mean(axis=0)
        d = np.linalg.norm(mesh.nodes - target, axis=1)
        return int(np.argmin(d))
    param = geom.to_parametric(mesh.nodes)
    target = np.array([0.5 * geom.length, 0.5 * geom.width])
    return int(np.argmin(np.linalg.norm(param - target, axis=1)))


def element_resultants(mesh: Mesh, section: SectionStiffness,
                       displacement: np.ndarray, operators=None,
                       subtract_thermal: bool = False) -> np.ndarray:
    """Per-element membrane force resultants of a displacement field."""
    if operators is None:
        operators = build_operators(mesh)
    out = np.empty((mesh.triangle_count, 3))
    for e, (tri, ops) in enumerate(zip(mesh.triangles, operators)):
        d = displacement[_element_dofs(tri)]
        strain = ops.membrane @ d
        curvature = ops.bending @ d
        out[e] = section.extension @ strain + section.coupling @ curvature
        if subtract_thermal:
            out[e] -= section.thermal_force
    return out


# -- prestress fields ---------------------------------------------------------

def uniform_prestress(pattern: str, magnitude: float = 1.0) -> np.ndarray:
    """Uniform compressive membrane state for the classic buckling cases."""
    if pattern == "uniaxial":
        return np.array([-magnitude, 0.0, 0.0])
    if pattern == "biaxial":
        return np.array([-magnitude, -magnitude, 0.0])
    raise ConfigError(f"unknown load pattern {pattern!r}")


def _boundary_segments(mesh: Mesh, node_set: np.ndarray):
    """Mesh boundary edges with both endpoints in the given node set."""
    count = {}
    for tri in mesh.triangles:
        for i in range(3):
            pair = (min(tri[i], tri[(i + 1) % 3]), max(tri[i], tri[(i + 1) % 3]))
            count[pair] = count.get(pair, 0) + 1
    members = set(int(i) for i in node_set)
    return [pair for pair, c in count.items()
            if c == 1 and pair[0] in members and pair[1] in members]


def traction_resultants(mesh: Mesh, section: SectionStiffness,
                        pattern: str = "uniaxial", magnitude: float = 1.0,
                        operators=None) -> np.ndarray:
    """Membrane state from compressive edge tractions, by an in-plane solve.

    The plate is loaded with inward tractions of the given magnitude per unit
    length on the x = a edge (and the y = b edge for the biaxial pattern),
    with the opposite edges held in their normal direction.  All deflection
    and rotation unknowns are fixed, which reduces the system to the membrane
    problem; the result is the per-element resultant field, roughly a uniform
    uniaxial compression for a solid plate but concentrated around a cutout.
    """
    if operators is None:
        operators = build_operators(mesh)
    k = assemble_stiffness(mesh, section, operators)
    n = mesh.node_count * DOF
    fixed = set()
    for node in range(mesh.node_count):
        for comp in (2, 3, 4):
            fixed.add(node * DOF + comp)
    for node in mesh.node_sets["x0"]:
        fixed.add(node * DOF + 0)
    f = np.zeros(n)
    biaxial = pattern == "biaxial"
    if pattern not in ("uniaxial", "biaxial"):
        raise ConfigError(f"unknown load pattern {pattern!r}")

    def spread(edge_set, comp, direction):
        for i, j in _boundary_segments(mesh, mesh.node_sets[edge_set]):
            length = np.linalg.norm(mesh.nodes[j] - mesh.nodes[i])
            f[i * DOF + comp] += 0.5 * direction * magnitude * length
            f[j * DOF + comp] += 0.5 * direction * magnitude * length

    spread("xa", 0, -1.0)
    if biaxial:
        for node in mesh.node_sets["y0"]:
            fixed.add(node * DOF + 1)
        spread("yb", 1, -1.0)
    else:
        # Pin one corner against rigid translation in y.
        anchor = int(mesh.node_sets["x0"][0])
        fixed.add(anchor * DOF + 1)
    fixed = np.array(sorted(fixed), dtype=np.int64)
    free = free_dofs(mesh, fixed)
    solution = spla.spsolve(reduce_matrix(k, free).tocsc(), f[free])
    disp = expand_vector(solution, free, n)
    return element_resultants(mesh, section, disp, operators)


def thermal_membrane_resultants(mesh: Mesh, section: SectionStiffness, bc,
                                operators=None) -> np.ndarray:
    """Membrane state of a heated plate, by an in-plane solve.

    The in-plane constraints of the case's boundary condition are kept, all
    out-of-plane unknowns are fixed, the thermal expansion loads are applied,
    and element resultants (relative to the stress-free state) are returned.
    For a solid plate whose edges are all held in their normal direction this
    reproduces the uniform state ``-N_thermal`` exactly; with a cutout the
    field relaxes around the rim.
    """
    if operators is None:
        operators = build_operators(mesh)
    k = assemble_stiffness(mesh, section, operators)
    n = mesh.node_count * DOF
    case_fixed = set(int(i) for i in constrained_dofs(mesh, bc))
    fixed = set()
    for node in range(mesh.node_count):
        for comp in (2, 3, 4):
            fixed.add(node * DOF + comp)
        for comp in (0, 1):
            if node * DOF + comp in case_fixed:
                fixed.add(node * DOF + comp)
    fixed = np.array(sorted(fixed), dtype=np.int64)
    free = free_dofs(mesh, fixed)
    f = assemble_thermal_load(mesh, section, operators)
    solution = spla.spsolve(reduce_matrix(k, free).tocsc(), f[free])
    disp = expand_vector(solution, free, n)
    return element_resultants(mesh, section, disp, operators,
                              subtract_thermal=True)


# -- analyses -----------------------------------------------------------------

@dataclass
class AnalysisResult:
    """Raw outputs of one analysis plus bookkeeping for reports."""

    kind: str
    displacement: np.ndarray | None = None
    center_deflection: float | None = None
    eigenvalues: np.ndarray | None = None     # omega^2 or load multipliers
    frequencies: np.ndarray | None = None     # rad/s, ascending
    modes: np.ndarray | None = None           # columns, full-size global basis
    critical: float | None = None
    free_count: int = 0
    flags: list = field(default_factory=list)
    scalars: dict = field(default_factory=dict)


def _reduced_system(mesh, matrices, bc):
    """Transform (skew), constrain, and reduce a list of sparse matrices."""
    t = skew_transform(mesh)
    if t is not None:
        matrices = [_symmetrize(t.T @ m @ t) for m in matrices]
    fixed = constrained_dofs(mesh, bc)
    free = free_dofs(mesh, fixed)
    reduced = [reduce_matrix(m, free) for m in matrices]
    return reduced, free, t


def _expand_mode(vec, free, size, t):
    full = expand_vector(vec, free, size)
    return t @ full if t is not None else full


def static_solve(mesh: Mesh, section: SectionStiffness, pressure: float, bc,
                 operators=None, smoothed: bool = True,
                 stabilized: bool = False,
                 include_thermal: bool = False) -> AnalysisResult:
    """Linear static bending under uniform transverse pressure."""
    if operators is None:
        operators = build_operators(mesh, smoothed)
    k = assemble_stiffness(mesh, section, operators, smoothed, stabilized)
    f = assemble_pressure(mesh, pressure, operators)
    if include_thermal:
        f = f + assemble_thermal_load(mesh, section, operators)
    (k_red,), free, t = _reduced_system(mesh, [k], bc)
    if t is not None:
        f = t.T @ f
    if k_red.shape[0] == 0:
        raise ConfigError("boundary conditions leave no unknowns")
    try:
        solution = spla.spsolve(k_red.tocsc(), f[free])
    except RuntimeError as err:
        raise NumericError(f"static factorization failed: {err}") from None
    if not np.all(np.isfinite(solution)):
        raise NumericError("static solve produced non-finite values "
                           "(insufficiently supported plate?)")
    disp = _expand_mode(solution, free, mesh.node_count * DOF, t)
    w_c = float(disp[_center_node(mesh) * DOF + 2])
    return AnalysisResult(kind="static", displacement=disp,
                          center_deflection=w_c, free_count=len(free))


def modal_solve(mesh: Mesh, section: SectionStiffness, count: int, bc,
                prestress=None, operators=None, smoothed: bool = True,
                stabilized: bool = False,
                dense_limit: int = DENSE_LIMIT) -> AnalysisResult:
    """Smallest natural frequencies, optionally with membrane prestress.

    ``prestress`` is a resultant field as accepted by assemble_geometric
    (the actual signed membrane state, compression negative).  Negative
    squared frequencies (plate heated beyond its buckling point) are kept
    and flagged rather than raised.
    """
    if count < 1:
        raise ConfigError("need at least one mode")
    if operators is None:
        operators = build_operators(mesh, smoothed)
    k = assemble_stiffness(mesh, section, operators, smoothed, stabilized)
    if prestress is not None:
        k = k + assemble_geometric(mesh, prestress, section.thickness, operators)
        k = _symmetrize(k.tocsr())
    m = assemble_mass(mesh, section, operators)
    (k_red, m_red), free, t = _reduced_system(mesh, [k, m], bc)
    vals, vecs = smallest_eigenpairs(k_red, m_red, count, dense_limit)
    flags = []
    if np.any(vals < -1e-8 * max(abs(vals).max(), 1.0)):
        flags.append("negative-squared-frequency")
    freqs = np.sqrt(np.clip(vals, 0.0, None))
    size = mesh.node_count * DOF
    modes = np.column_stack([_expand_mode(vecs[:, i], free, size, t)
                             for i in range(vecs.shape[1])])
    return AnalysisResult(kind="modal", eigenvalues=vals, frequencies=freqs,
                          modes=modes, free_count=len(free), flags=flags)


def buckling_solve(mesh: Mesh, section: SectionStiffness, unit_resultants,
                   bc, count: int = 4, base_resultants=None, operators=None,
                   smoothed: bool = True, stabilized: bool = False,
                   dense_limit: int = DENSE_LIMIT) -> AnalysisResult:
    """Smallest positive multiplier of a compressive membrane pattern.

    Solves ``K phi = lam (-Kg_unit) phi`` where ``Kg_unit`` is the geometric
    stiffness of the unit load pattern (compression carried with negative
    resultants).  ``base_resultants`` adds a fixed prestress to the stiffness
    side first, for cases whose load splits into a constant part plus a
    scaled pattern.
    """
    if operators is None:
        operators = build_operators(mesh, smoothed)
    k = assemble_stiffness(mesh, section, operators, smoothed, stabilized)
    if base_resultants is not None:
        k = _symmetrize((k + assemble_geometric(
            mesh, base_resultants, section.thickness, operators)).tocsr())
    kg = assemble_geometric(mesh, unit_resultants, section.thickness, operators)
    (k_red, kg_red), free, t = _reduced_system(mesh, [k, kg], bc)
    mus, vecs = largest_generalized(-kg_red, k_red, count, dense_limit)
    # Strictly-positive test with a floor set by the matrix magnitudes: the
    # mu spectrum scales like |Kg|/|K|, while the exact-zero directions of a
    # tension (non-buckling) pattern come back as bare roundoff.
    tiny = np.finfo(float).tiny
    mu_scale = np.abs(kg_red.data).sum() / max(np.abs(k_red.data).sum(), tiny)
    positive = mus > 1e-9 * max(mu_scale, tiny)
    if not np.any(positive):
        raise NumericError("no buckling under this load pattern "
                           "(no positive eigenvalue)")
    lams = 1.0 / mus[positive]
    order = np.argsort(lams)
    lams = lams[order]
    vecs = vecs[:, positive][:, order]
    size = mesh.node_count * DOF
    modes = np.column_stack([_expand_mode(vecs[:, i], free, size, t)
                             for i in range(vecs.shape[1])])
    return AnalysisResult(kind="buckling", eigenvalues=lams,
                          critical=float(lams[0]), modes=modes,
                          free_count=len(free))


# -- references and normalization ---------------------------------------------

def kirchhoff_center_deflection(a: float, b: float, terms: int = 100) -> float:
    """Thin-plate double-sine series for the center deflection of a simply
    supported rectangle under unit pressure and unit bending stiffness.

    Returns ``w_c * D / (p a^4)``; multiply by ``p a^4 / D`` for a real
    plate.  The classic square-plate value is 0.00406235.
    """
    m = np.arange(1, 2 * terms, 2, dtype=float)
    sm = np.sin(m * np.pi / 2)
    coef = 0.0
    for mi, smi in zip(m, sm):
        n = m
        denom = mi * n * ((mi / a) ** 2 + (n / b) ** 2) ** 2
        coef += np.sum(smi * sm / denom)
    return 16.0 / np.pi ** 6 * coef / a ** 4


def reference_phase(fgm: FgmSection, reference: str = "ceramic"):
    if reference == "ceramic":
        return fgm.ceramic
    if reference == "metal":
        return fgm.metal
    raise ConfigError(f"unknown normalization reference {reference!r}")


def _reference_bending(fgm: FgmSection, reference: str) -> float:
    phase = reference_phase(fgm, reference)
    e0 = phase.nominal_youngs_modulus
    return e0 * fgm.thickness ** 3 / (12.0 * (1.0 - phase.poisson ** 2))


def normalize_deflection(w_c: float, fgm: FgmSection, a: float,
                         pressure: float, reference: str = "ceramic") -> float:
    """100 w D_ref / (p a^4) with the nominal reference-phase stiffness."""
    if pressure == 0.0 or a == 0.0:
        raise ConfigError("deflection normalization needs nonzero load and span")
    return 100.0 * w_c * _reference_bending(fgm, reference) / (pressure * a ** 4)


def normalize_frequency(omega, fgm: FgmSection, a: float,
                        reference: str = "ceramic"):
    """omega a^2 sqrt(rho_ref h / D_ref), vectorized over omega."""
    phase = reference_phase(fgm, reference)
    d_ref = _reference_bending(fgm, reference)
    return np.asarray(omega) * a ** 2 * np.sqrt(
        phase.density * fgm.thickness / d_ref)


def frequency_fourth_root(omega_bar, fgm: FgmSection,
                          reference: str = "ceramic"):
    """Fourth-root frequency scale (drops the Poisson factor of D_ref)."""
    nu = reference_phase(fgm, reference).poisson
    return (np.asarray(omega_bar) ** 2 / (1.0 - nu ** 2)) ** 0.25


def normalize_buckling(multiplier: float, magnitude: float, fgm: FgmSection,
                       b: float, reference: str = "ceramic") -> float:
    """N_cr b^2 / (pi^2 D_ref) for an edge load of the given magnitude."""
    n_cr = multiplier * magnitude
    return n_cr * b ** 2 / (np.pi ** 2 * _reference_bending(fgm, reference))


# -- case orchestration -------------------------------------------------------

def _geometry_from_config(cfg: dict) -> PlateGeometry:
    g = cfg.get("geometry", {})
    return PlateGeometry(float(g.get("a", 1.0)), float(g.get("b", g.get("a", 1.0))),
                         float(g.get("skew_deg", 0.0)), float(g.get("hole_r", 0.0)))


def _mesh_from_config(cfg: dict, geometry: PlateGeometry) -> Mesh:
    m = cfg.get("mesh", {})
    if "file" in m:
        return read_mesh(m["file"])
    if geometry.hole_radius > 0.0:
        return perforated_mesh(geometry, int(m.get("circumferential", 32)),
                               int(m.get("radial", 4)))
    return rectangle_mesh(geometry, int(m.get("nx", 8)), int(m.get("ny", 8)),
                          m.get("diagonal", "alternating"))


def _thermal_from_config(cfg: dict) -> ThermalState:
    t = cfg.get("thermal", {})
    mode = t.get("mode", "uniform")
    ref = float(t.get("T_ref", 300.0))
    if mode == "uniform":
        return ThermalState.uniform(float(t.get("T", ref)), ref)
    if mode == "gradient":
        return ThermalState.gradient(float(t["T_c"]), float(t["T_m"]), ref,
                                     t.get("profile", "series"))
    raise ConfigError(f"unknown thermal mode {mode!r}")


def run_case(cfg: dict) -> dict:
    """Execute one analysis case described by a plain configuration dict.

    Returns a flat dict of raw and normalized scalars; see the README for
    the configuration schema and the emitted keys.
    """
    t0 = time.perf_counter()
    analysis = cfg.get("analysis")
    if analysis not in ("static", "modal", "buckling", "thermal-buckling"):
        raise ConfigError(f"unknown analysis kind {analysis!r}")
    geometry = _geometry_from_config(cfg)
    mesh = _mesh_from_config(cfg, geometry)
    if "material" not in cfg:
        raise ConfigError("configuration needs a material section")
    fgm = material_from_dict(cfg["material"])
    thermal = _thermal_from_config(cfg)
    bc = cfg.get("bc", "SSSS")
    if isinstance(bc, dict):
        bc = dict(bc)
    element_cfg = cfg.get("element", {})
    smoothed = bool(element_cfg.get("smoothed", True))
    stabilized = bool(element_cfg.get("stabilized", False))
    norm_cfg = cfg.get("normalize", {})
    reference = norm_cfg.get("reference", "ceramic")
    out = {"analysis": analysis, "a": geometry.length, "b": geometry.width,
           "h": fgm.thickness, "skew_deg": geometry.skew_deg,
           "n_index": fgm.gradient_index, "nodes": mesh.node_count}

    operators = build_operators(mesh, smoothed)
    if analysis == "static":
        section = section_stiffness(fgm, thermal)
        pressure = float(cfg.get("load", {}).get("pressure", 1.0))
        result = static_solve(mesh, section, pressure, bc, operators,
                              smoothed, stabilized)
        out["w_center"] = result.center_deflection
        out["w_center_norm"] = normalize_deflection(
            result.center_deflection, fgm, geometry.length, pressure, reference)
    elif analysis == "modal":
        section = section_stiffness(fgm, thermal)
        count = int(cfg.get("modes", 4))
        mode = cfg.get("prestress", "auto")
        prestress = None
        if thermal.mode == "gradient" or thermal.ceramic_face != thermal.reference:
            if mode == "auto":
                mode = "solve" if geometry.hole_radius > 0.0 else "uniform"
            if mode == "uniform":
                prestress = -section.thermal_force
            elif mode == "solve":
                prestress = thermal_membrane_resultants(mesh, section, bc,
                                                        operators)
            elif mode != "none":
                raise ConfigError(f"unknown prestress mode {mode!r}")
        result = modal_solve(mesh, section, count, bc, prestress, operators,
                             smoothed, stabilized)
        omega_bar = normalize_frequency(result.frequencies, fgm,
                                        geometry.length, reference)
        big_omega = frequency_fourth_root(omega_bar, fgm, reference)
        for i in range(len(omega_bar)):
            out[f"omega_norm_{i + 1}"] = float(omega_bar[i])
            out[f"Omega_{i + 1}"] = float(big_omega[i])
        out["omega_1"] = float(result.frequencies[0])
        out["flags"] = ";".join(result.flags)
    elif analysis == "buckling":
        section = section_stiffness(fgm, thermal)
        load = cfg.get("load", {})
        pattern = load.get("pattern", "uniaxial")
        magnitude = float(load.get("traction", 1.0))
        membrane = load.get("membrane", "auto")
        if membrane == "auto":
            membrane = "solve" if geometry.hole_radius > 0.0 else "uniform"
        if membrane == "uniform":
            resultants = uniform_prestress(pattern, magnitude)
        elif membrane == "solve":
            resultants = traction_resultants(mesh, section, pattern, magnitude,
                                             operators)
        else:
            raise ConfigError(f"unknown membrane mode {membrane!r}")
        result = buckling_solve(mesh, section, resultants, bc,
                                int(cfg.get("modes", 4)), None, operators,
                                smoothed, stabilized)
        out["lambda_cr"] = result.critical
        out["lambda_norm"] = normalize_buckling(result.critical, magnitude,
                                                fgm, geometry.width, reference)
    else:   # thermal-buckling
        tcfg = cfg.get("thermal", {})
        profile = tcfg.get("profile", "series")
        t_ref = float(tcfg.get("T_ref", 300.0))
        t_metal = float(tcfg.get("T_m", t_ref + 5.0))
        step = float(cfg.get("fd_step", 1.0))
        base_state = ThermalState.gradient(t_metal, t_metal, t_ref, profile)
        bumped = ThermalState.gradient(t_metal + step, t_metal, t_ref, profile)
        sec0 = section_stiffness(fgm, base_state)
        sec1 = section_stiffness(fgm, bumped)
        unit = -(sec1.thermal_force - sec0.thermal_force) / step
        base = -sec0.thermal_force
        result = buckling_solve(mesh, sec0, unit, bc,
                                int(cfg.get("modes", 4)), base, operators,
                                smoothed, stabilized)
        out["dT_cr"] = result.critical
    out["free_dofs"] = int(result.free_count)
    out["wall_time"] = time.perf_counter() - t0
    return out
