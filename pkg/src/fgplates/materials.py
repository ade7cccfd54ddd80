"""Through-thickness material model for functionally graded Mindlin plates.

A plate section is a two-phase ceramic/metal mixture graded by a power law in
the thickness coordinate.  Phase moduli may depend on temperature, the
temperature itself may vary through the thickness (steady conduction between
the two faces), and the mixture is homogenized either by the Mori-Tanaka
scheme or by the rule of mixtures.  The end product consumed by the element
and solver layers is a :class:`SectionStiffness`: membrane / coupling /
bending / shear stiffness blocks plus thermal resultants and inertias.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DomainError, NumericError

__all__ = [
    "DomainError",
    "NumericError",
    "PhaseProperties",
    "ShearCorrection",
    "FgmSection",
    "ThermalState",
    "SectionStiffness",
    "property_at_temperature",
    "volume_fraction",
    "bulk_shear_moduli",
    "isotropic_from_bulk_shear",
    "mori_tanaka_moduli",
    "effective_elastic",
    "effective_transport",
    "temperature_profile",
    "shear_correction_factors",
    "section_stiffness",
    "material_from_dict",
    "load_material",
    "preset",
    "PRESET_NAMES",
]


# Gauss-Legendre rule used for every thickness integral.  32 points integrate
# all section integrands here (polynomials of modest degree times smooth
# rational homogenization curves) far below the 1e-8 doubling check.
_GAUSS_POINTS = 32


@dataclass(frozen=True)
class PhaseProperties:
    """One constituent phase (ceramic or metal).

    Young's modulus and thermal expansion follow the cubic-with-inverse-term
    temperature fit ``P(T) = P0 * (P_m1/T + 1 + P1*T + P2*T**2 + P3*T**3)``
    with coefficients ordered ``(P0, P_m1, P1, P2, P3)``.  Density, thermal
    conductivity and Poisson's ratio are temperature independent.
    """

    name: str
    youngs_coeffs: tuple[float, float, float, float, float]
    alpha_coeffs: tuple[float, float, float, float, float]
    density: float          # kg/m^3
    conductivity: float     # W/(m K)
    poisson: float

    def __post_init__(self):
        if len(self.youngs_coeffs) != 5 or len(self.alpha_coeffs) != 5:
            raise DomainError("temperature fits need 5 coefficients (P0, P-1, P1, P2, P3)")
        if self.youngs_coeffs[0] <= 0.0:
            raise DomainError(f"{self.name}: leading Young's modulus coefficient must be positive")
        if self.density <= 0.0:
            raise DomainError(f"{self.name}: density must be positive")
        if self.conductivity <= 0.0:
            raise DomainError(f"{self.name}: conductivity must be positive")
        if not -1.0 < self.poisson < 0.5:
            raise DomainError(f"{self.name}: Poisson ratio {self.poisson} outside (-1, 0.5)")

    def youngs_modulus(self, temperature):
        e = property_at_temperature(self.youngs_coeffs, temperature)
        if np.any(np.asarray(e) <= 0.0):
            raise DomainError(f"{self.name}: Young's modulus fit non-positive at T={temperature}")
        return e

    def thermal_expansion(self, temperature):
        return property_at_temperature(self.alpha_coeffs, temperature)

    @property
    def nominal_youngs_modulus(self) -> float:
        """Leading fit coefficient P0, the tabulated room-value modulus."""
        return self.youngs_coeffs[0]


def property_at_temperature(coeffs, temperature):
    """Evaluate ``P0 * (P_m1/T + 1 + P1*T + P2*T**2 + P3*T**3)``."""
    p0, pm1, p1, p2, p3 = coeffs
    t = np.asarray(temperature, dtype=float)
    if np.any(t <= 0.0):
        raise DomainError("absolute temperature must be positive")
    value = p0 * (pm1 / t + 1.0 + p1 * t + p2 * t * t + p3 * t ** 3)
    return value if value.ndim else float(value)


@dataclass(frozen=True)
class ShearCorrection:
    """Transverse shear correction policy.

    ``constant`` applies a fixed factor to both shear directions.
    ``energy`` derives the factor from the usual energy-equivalence argument:
    the correction that makes the average-shear strain energy match the energy
    of the equilibrium (parabolic-like) shear stress profile of the graded
    section.  For a homogeneous section it reduces to 5/6.
    """

    mode: str = "constant"      # "constant" | "energy"
    value: float = 5.0 / 6.0

    def __post_init__(self):
        if self.mode not in ("constant", "energy"):
            raise DomainError(f"unknown shear correction mode {self.mode!r}")
        if self.mode == "constant" and not 0.0 < self.value <= 1.0:
            raise DomainError("constant shear correction factor must lie in (0, 1]")


@dataclass(frozen=True)
class FgmSection:
    """A graded plate section: two phases, power-law index, thickness."""

    ceramic: PhaseProperties
    metal: PhaseProperties
    gradient_index: float   # power-law exponent n; 0 = pure ceramic
    thickness: float        # h, m
    homogenization: str = "mori_tanaka"   # "mori_tanaka" | "rule_of_mixtures"
    shear_correction: ShearCorrection = field(default_factory=ShearCorrection)

    def __post_init__(self):
        if self.gradient_index < 0.0:
            raise DomainError("gradient index must be non-negative")
        if self.thickness <= 0.0:
            raise DomainError("thickness must be positive")
        if self.homogenization not in ("mori_tanaka", "rule_of_mixtures"):
            raise DomainError(f"unknown homogenization {self.homogenization!r}")

    def with_thickness(self, thickness: float) -> "FgmSection":
        return FgmSection(self.ceramic, self.metal, self.gradient_index, thickness,
                          self.homogenization, self.shear_correction)

    def with_gradient_index(self, n: float) -> "FgmSection":
        return FgmSection(self.ceramic, self.metal, n, self.thickness,
                          self.homogenization, self.shear_correction)


@dataclass(frozen=True)
class ThermalState:
    """Temperature environment of the section.

    ``uniform`` holds the whole section at one temperature.  ``gradient``
    prescribes the two face temperatures (ceramic face ``T_c`` on top,
    metal face ``T_m`` on the bottom) and fills the interior with the steady
    conduction profile; ``profile`` selects the full series solution or its
    linear truncation.  ``reference`` is the stress-free temperature.
    """

    mode: str = "uniform"               # "uniform" | "gradient"
    ceramic_face: float = 300.0         # T_c, K
    metal_face: float = 300.0           # T_m, K
    reference: float = 300.0            # stress-free temperature, K
    profile: str = "series"             # "series" | "linear"

    def __post_init__(self):
        if self.mode not in ("uniform", "gradient"):
            raise DomainError(f"unknown thermal mode {self.mode!r}")
        if self.profile not in ("series", "linear"):
            raise DomainError(f"unknown temperature profile {self.profile!r}")
        for t in (self.ceramic_face, self.metal_face, self.reference):
            if t <= 0.0:
                raise DomainError("temperatures must be positive (absolute)")
        if self.mode == "uniform" and self.ceramic_face != self.metal_face:
            raise DomainError("uniform thermal state needs equal face temperatures")

    @classmethod
    def uniform(cls, temperature: float, reference: float = 300.0) -> "ThermalState":
        return cls("uniform", temperature, temperature, reference)

    @classmethod
    def gradient(cls, ceramic_face: float, metal_face: float,
                 reference: float = 300.0, profile: str = "series") -> "ThermalState":
        return cls("gradient", ceramic_face, metal_face, reference, profile)


@dataclass(frozen=True)
class SectionStiffness:
    """Integrated section model consumed by the element layer.

    ``extension``, ``coupling`` and ``bending`` are the 3x3 in-plane blocks
    (xx, yy, xy ordering); ``shear`` is the corrected 2x2 transverse block.
    ``thermal_force`` / ``thermal_moment`` are the resultants of the thermal
    strain relative to the reference temperature.  ``mass`` and
    ``rotary_inertia`` are the translational and rotational inertias per area.
    """

    extension: np.ndarray        # A, N/m
    coupling: np.ndarray         # B, N
    bending: np.ndarray          # D, N m
    shear: np.ndarray            # E_s, N/m
    thermal_force: np.ndarray    # N_th, N/m
    thermal_moment: np.ndarray   # M_th, N
    mass: float                  # kg/m^2
    rotary_inertia: float        # kg
    shear_factors: tuple[float, float]
    thickness: float             # h, m

    def __post_init__(self):
        for name in ("extension", "coupling", "bending"):
            m = getattr(self, name)
            if m.shape != (3, 3) or not np.allclose(m, m.T, rtol=0.0, atol=1e-9 * max(1.0, abs(m).max())):
                raise NumericError(f"section block {name} must be symmetric 3x3")
        if self.shear.shape != (2, 2):
            raise NumericError("shear block must be 2x2")


def volume_fraction(z, section: FgmSection):
    """Ceramic volume fraction ``((2z + h) / (2h)) ** n``.

    ``z`` runs from ``-h/2`` (metal face) to ``+h/2`` (ceramic face).
    """
    h = section.thickness
    z = np.asarray(z, dtype=float)
    if np.any(z < -h / 2 - 1e-12 * h) or np.any(z > h / 2 + 1e-12 * h):
        raise DomainError("z outside the section thickness")
    xi = np.clip((2.0 * z + h) / (2.0 * h), 0.0, 1.0)
    n = section.gradient_index
    if n == 0.0:
        vc = np.ones_like(xi)
    else:
        vc = xi ** n
    return vc if vc.ndim else float(vc)


def bulk_shear_moduli(youngs, poisson):
    """Convert (E, nu) to (K, G)."""
    youngs = np.asarray(youngs, dtype=float)
    bulk = youngs / (3.0 * (1.0 - 2.0 * poisson))
    shear = youngs / (2.0 * (1.0 + poisson))
    return bulk, shear

def isotropic_from_bulk_shear(bulk, shear):
    """Convert (K, G) back to (E, nu)."""
    youngs = 9.0 * bulk * shear / (3.0 * bulk + shear)
    poisson = (3.0 * bulk - 2.0 * shear) / (2.0 * (3.0 * bulk + shear))
    return youngs, poisson


def mori_tanaka_moduli(bulk_c, shear_c, bulk_m, shear_m, vc):
    """Mori-Tanaka effective bulk and shear moduli.

    Ceramic particles in a metal matrix:

        (K - K_m) / (K_c - K_m) = V_c / (1 + (1 - V_c) (K_c - K_m) / (K_m + 4 G_m / 3))
        (G - G_m) / (G_c - G_m) = V_c / (1 + (1 - V_c) (G_c - G_m) / (G_m + f_1))

    with ``f_1 = G_m (9 K_m + 8 G_m) / (6 (K_m + 2 G_m))``.
    """
    vc = np.asarray(vc, dtype=float)
    vm = 1.0 - vc
    f1 = shear_m * (9.0 * bulk_m + 8.0 * shear_m) / (6.0 * (bulk_m + 2.0 * shear_m))
    bulk = bulk_m + (bulk_c - bulk_m) * vc / (
        1.0 + vm * (bulk_c - bulk_m) / (bulk_m + 4.0 * shear_m / 3.0))
    shear = shear_m + (shear_c - shear_m) * vc / (
        1.0 + vm * (shear_c - shear_m) / (shear_m + f1))
    return bulk, shear


def effective_elastic(section: FgmSection, z, temperature):
    """Effective (E, nu) at height ``z`` and local temperature.

    Phase moduli are evaluated at the local temperature first, then mixed.
    """
    vc = volume_fraction(z, section)
    e_c = section.ceramic.youngs_modulus(temperature)
    e_m = section.metal.youngs_modulus(temperature)
    if section.homogenization == "rule_of_mixtures":
        youngs = e_c * vc + e_m * (1.0 - vc)
        poisson = section.ceramic.poisson * vc + section.metal.poisson * (1.0 - vc)
        return youngs, poisson
    kc, gc = bulk_shear_moduli(e_c, section.ceramic.poisson)
    km, gm = bulk_shear_moduli(e_m, section.metal.poisson)
    bulk, shear = mori_tanaka_moduli(kc, gc, km, gm, vc)
    return isotropic_from_bulk_shear(bulk, shear)


def effective_transport(section: FgmSection, z, temperature):
    """Effective (conductivity, expansion, density) at height ``z``.

    Mori-Tanaka mode uses the dilute-sphere conductivity relation

        (k - k_m) / (k_c - k_m) = V_c / (1 + (1 - V_c)(k_c - k_m) / (3 k_m))

    and couples the expansion coefficient to the effective bulk modulus,

        (a - a_m) / (a_c - a_m) = (1/K - 1/K_m) / (1/K_c - 1/K_m).

    Density always follows the rule of mixtures.
    """
    vc = np.asarray(volume_fraction(z, section))
    vm = 1.0 - vc
    cer, met = section.ceramic, section.metal
    density = cer.density * vc + met.density * vm
    a_c = np.asarray(cer.thermal_expansion(temperature))
    a_m = np.asarray(met.thermal_expansion(temperature))
    if section.homogenization == "rule_of_mixtures":
        conductivity = cer.conductivity * vc + met.conductivity * vm
        alpha = a_c * vc + a_m * vm
        return conductivity, alpha, density
    k_c, k_m = cer.conductivity, met.conductivity
    conductivity = k_m + (k_c - k_m) * vc / (1.0 + vm * (k_c - k_m) / (3.0 * k_m))
    bulk_c, g_c = bulk_shear_moduli(np.asarray(cer.youngs_modulus(temperature)), cer.poisson)
    bulk_m, g_m = bulk_shear_moduli(np.asarray(met.youngs_modulus(temperature)), met.poisson)
    if np.allclose(bulk_c, bulk_m, rtol=1e-12, atol=0.0):
        alpha = a_m + (a_c - a_m) * vc
    else:
        bulk_eff, _ = mori_tanaka_moduli(bulk_c, g_c, bulk_m, g_m, vc)
        alpha = a_m + (a_c - a_m) * (1.0 / bulk_eff - 1.0 / bulk_m) / (1.0 / bulk_c - 1.0 / bulk_m)
    return conductivity, alpha, density


def temperature_profile(thermal: ThermalState, section: FgmSection, z):
    """Temperature at height ``z``.

    The gradient profile is the steady-conduction series in the normalized
    coordinate ``xi = (2z + h) / (2h)``:

        T = T_m + (T_c - T_m) * eta(xi) / C,
        eta = sum_{k=0..5} (-r)^k / (k n + 1) * xi^(k n + 1),
        C   = eta(1),  r = (k_c - k_m) / k_m,

    the first six terms of the geometric expansion of ``1 / k(xi)`` for a
    rule-of-mixtures conductivity.  The ``linear`` profile keeps the leading
    term only.  For ``n = 0`` every term is linear in ``xi`` so both agree.
    """
    z = np.asarray(z, dtype=float)
    scalar = z.ndim == 0
    if thermal.mode == "uniform":
        out = np.full_like(z, float(thermal.ceramic_face))
        return float(out) if scalar else out
    h = section.thickness
    xi = np.clip((2.0 * z + h) / (2.0 * h), 0.0, 1.0)
    t_c, t_m = thermal.ceramic_face, thermal.metal_face
    if thermal.profile == "linear":
        out = t_m + (t_c - t_m) * xi
        return float(out) if scalar else out
    n = section.gradient_index
    ratio = (section.ceramic.conductivity - section.metal.conductivity) / section.metal.conductivity
    eta = np.zeros_like(xi)
    norm = 0.0
    for k in range(6):
        coeff = (-ratio) ** k / (k * n + 1.0)
        eta = eta + coeff * xi ** (k * n + 1.0)
        norm += coeff
    if norm <= 0.0:
        raise NumericError("conduction series normalizer non-positive; "
                           "conductivity contrast outside the convergent range")
    out = t_m + (t_c - t_m) * eta / norm
    return float(out) if scalar else out


def _grading_power(index: float) -> int:
    """Exponent for the graded substitution that tames fractional indices.

    A volume fraction ``u**n`` with non-integer ``n < 3`` has an unbounded
    derivative of some order at the metal face, which stalls Gauss-Legendre
    convergence.  Substituting ``u = t**p`` with ``p*n >= 3`` restores at
    least C3 smoothness; integer indices and large ones need no grading.
    """
    if index <= 0.0 or index >= 3.0 or float(index).is_integer():
        return 1
    return min(int(np.ceil(3.0 / index)), 32)


def _gauss_rule(section: FgmSection, points: int):
    x, w = np.polynomial.legendre.leggauss(points)
    u = 0.5 * (x + 1.0)
    du = 0.5 * w
    p = _grading_power(section.gradient_index)
    if p > 1:
        du = p * u ** (p - 1) * du
        u = u ** p
    h = section.thickness
    return (u - 0.5) * h, du * h


def _plane_stress_blocks(youngs, poisson):
    """Plane-stress reduced stiffness entries (q11, q12, q66) at each z."""
    q11 = youngs / (1.0 - poisson ** 2)
    q12 = poisson * q11
    q66 = youngs / (2.0 * (1.0 + poisson))
    return q11, q12, q66


def shear_correction_factors(section: FgmSection, thermal: ThermalState) -> tuple[float, float]:
    """Shear correction factors for the two transverse directions.

    Energy mode: with ``g(z) = int_{-h/2}^{z} E(s) (s - z_n) ds`` (the
    through-thickness shape of the equilibrium shear stress, ``z_n`` the
    stiffness-weighted neutral height),

        kappa = (int g)^2 / (int g^2 / G * int G).

    The section is isotropic in plane, so both directions share one factor.
    """
    sc = section.shear_correction
    if sc.mode == "constant":
        return sc.value, sc.value
    zs, ws = _gauss_rule(section, _GAUSS_POINTS)
    temps = temperature_profile(thermal, section, zs)
    youngs, poisson = effective_elastic(section, zs, temps)
    shear_mod = youngs / (2.0 * (1.0 + poisson))
    weight_e = ws * youngs
    neutral = np.sum(weight_e * zs) / np.sum(weight_e)
    # g at each outer Gauss point by a nested rule on [-h/2, z_i], graded
    # toward the lower endpoint like the outer rule.
    x_in, w_in = np.polynomial.legendre.leggauss(_GAUSS_POINTS)
    u_in = 0.5 * (x_in + 1.0)
    du_in = 0.5 * w_in
    p = _grading_power(section.gradient_index)
    if p > 1:
        du_in = p * u_in ** (p - 1) * du_in
        u_in = u_in ** p
    lo = -0.5 * section.thickness
    g = np.empty_like(zs)
    for i, z_i in enumerate(zs):
        span = z_i - lo
        s = lo + span * u_in
        t_s = temperature_profile(thermal, section, s)
        e_s, _ = effective_elastic(section, s, t_s)
        g[i] = span * np.sum(du_in * e_s * (s - neutral))
    num = np.sum(ws * g) ** 2
    den = np.sum(ws * g * g / shear_mod) * np.sum(ws * shear_mod)
    kappa = float(num / den)
    return kappa, kappa


def _section_arrays(section: FgmSection, thermal: ThermalState, points: int):
    zs, ws = _gauss_rule(section, points)
    temps = temperature_profile(thermal, section, zs)
    youngs, poisson = effective_elastic(section, zs, temps)
    q11, q12, q66 = _plane_stress_blocks(youngs, poisson)
    _, alpha, density = effective_transport(section, zs, temps)
    dtemp = temps - thermal.reference

    def moments(values):
        return (np.sum(ws * values), np.sum(ws * values * zs), np.sum(ws * values * zs * zs))

    a11, b11, d11 = moments(q11)
    a12, b12, d12 = moments(q12)
    a66, b66, d66 = moments(q66)
    ext = np.array([[a11, a12, 0.0], [a12, a11, 0.0], [0.0, 0.0, a66]])
    cpl = np.array([[b11, b12, 0.0], [b12, b11, 0.0], [0.0, 0.0, b66]])
    bnd = np.array([[d11, d12, 0.0], [d12, d11, 0.0], [0.0, 0.0, d66]])
    # Thermal strain alpha*dT is equibiaxial: resultant carries (Q11 + Q12).
    nth = np.sum(ws * (q11 + q12) * alpha * dtemp)
    mth = np.sum(ws * (q11 + q12) * alpha * dtemp * zs)
    thermal_force = np.array([nth, nth, 0.0])
    thermal_moment = np.array([mth, mth, 0.0])
    shear_raw = np.sum(ws * q66)
    mass = np.sum(ws * density)
    rotary = np.sum(ws * density * zs * zs)
    return ext, cpl, bnd, shear_raw, thermal_force, thermal_moment, mass, rotary


def section_stiffness(section: FgmSection, thermal: ThermalState | None = None) -> SectionStiffness:
    """Integrate the section through the thickness.

    A fixed 32-point Gauss rule is used and checked against its doubled
    (64-point) counterpart; disagreement beyond 1e-8 relative raises
    :class:`NumericError` instead of returning silently degraded stiffness.
    """
    if thermal is None:
        thermal = ThermalState.uniform(300.0)
    coarse = _section_arrays(section, thermal, _GAUSS_POINTS)
    fine = _section_arrays(section, thermal, 2 * _GAUSS_POINTS)
    # Each entry is an order-p moment in z of some base integrand; odd moments
    # of near-symmetric profiles cancel to roundoff, so the comparison scale
    # pairs each block with its zeroth-moment sibling times (h/2)^p.
    base_index = (0, 0, 0, 3, 4, 4, 6, 6)
    power = (0, 1, 2, 0, 0, 1, 0, 2)
    half = 0.5 * section.thickness
    for i, (got, want) in enumerate(zip(coarse, fine)):
        got, want = np.asarray(got, dtype=float), np.asarray(want, dtype=float)
        base = np.max(np.abs(np.asarray(coarse[base_index[i]], dtype=float)))
        scale = max(np.max(np.abs(want)), base * half ** power[i])
        if np.max(np.abs(got - want)) > 1e-8 * scale:
            raise NumericError("thickness quadrature not converged at 32 points")
    ext, cpl, bnd, shear_raw, thermal_force, thermal_moment, mass, rotary = coarse
    k4, k5 = shear_correction_factors(section, thermal)
    shear = np.array([[k4 * shear_raw, 0.0], [0.0, k5 * shear_raw]])
    return SectionStiffness(ext, cpl, bnd, shear, thermal_force, thermal_moment,
                            float(mass), float(rotary), (k4, k5), section.thickness)


# -- JSON loading and presets -------------------------------------------------

def _phase_from_dict(name: str, data: dict) -> PhaseProperties:
    try:
        e_raw = data["E_coeffs"]
        a_raw = data["alpha_coeffs"]
        rho = float(data["rho"])
        kappa = float(data["kappa"])
        nu = float(data["nu"])
    except KeyError as missing:
        raise DomainError(f"phase {name!r}: missing key {missing}") from None
    e_coeffs = tuple(float(c) for c in ((e_raw, 0, 0, 0, 0) if np.isscalar(e_raw) else e_raw))
    a_coeffs = tuple(float(c) for c in ((a_raw, 0, 0, 0, 0) if np.isscalar(a_raw) else a_raw))
    if len(e_coeffs) != 5 or len(a_coeffs) != 5:
        raise DomainError(f"phase {name!r}: coefficient lists must have 5 entries or be scalars")
    return PhaseProperties(name, e_coeffs, a_coeffs, rho, kappa, nu)


def material_from_dict(data: dict) -> FgmSection:
    """Build a section from a JSON-style dict (see README for the schema)."""
    if "preset" in data:
        base = preset(data["preset"])
        ceramic, metal = base.ceramic, base.metal
    else:
        try:
            ceramic = _phase_from_dict(data.get("ceramic_name", "ceramic"), data["ceramic"])
            metal = _phase_from_dict(data.get("metal_name", "metal"), data["metal"])
        except KeyError as missing:
            raise DomainError(f"material definition missing key {missing}") from None
    sc_raw = data.get("shear_correction", "constant")
    if isinstance(sc_raw, dict):
        sc = ShearCorrection(sc_raw.get("mode", "constant"),
                             float(sc_raw.get("value", 5.0 / 6.0)))
    elif sc_raw in ("constant", "energy"):
        sc = ShearCorrection(mode=sc_raw)
    else:
        sc = ShearCorrection("constant", float(sc_raw))
    return FgmSection(
        ceramic=ceramic,
        metal=metal,
        gradient_index=float(data.get("n", 0.0)),
        thickness=float(data.get("h", 0.1)),
        homogenization=data.get("homogenization", "mori_tanaka"),
        shear_correction=sc,
    )


def load_material(path) -> FgmSection:
    """Load a section definition from a JSON file."""
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise DomainError(f"{path}: invalid JSON ({err})") from None
    return material_from_dict(data)


def _constant(value: float):
    return (value, 0.0, 0.0, 0.0, 0.0)


_ALUMINUM = PhaseProperties(
    "Al", _constant(70e9), _constant(23e-6), density=2707.0, conductivity=204.0, poisson=0.3)

# Zirconia as used alongside the 151 GPa aluminum pairing.
_ZIRCONIA = PhaseProperties(
    "ZrO2", _constant(151e9), _constant(10e-6), density=3000.0, conductivity=2.09, poisson=0.3)

# Stiffer zirconia variant of the classical graded-plate deflection benchmark.
_ZIRCONIA_1 = PhaseProperties(
    "ZrO2-1", _constant(200e9), _constant(10e-6), density=5700.0, conductivity=2.09, poisson=0.3)

_ALUMINA = PhaseProperties(
    "Al2O3", _constant(380e9), _constant(7.4e-6), density=3800.0, conductivity=10.4, poisson=0.3)

_SILICON_NITRIDE = PhaseProperties(
    "Si3N4",
    (348.43e9, 0.0, -3.070e-4, 2.160e-7, -8.946e-11),
    (5.8723e-6, 0.0, 9.095e-4, 0.0, 0.0),
    density=2370.0, conductivity=9.19, poisson=0.28)

_STAINLESS = PhaseProperties(
    "SUS304",
    (201.04e9, 0.0, 3.079e-4, -6.534e-7, 0.0),
    (12.330e-6, 0.0, 8.086e-4, 0.0, 0.0),
    density=8166.0, conductivity=12.04, poisson=0.28)

_PRESETS = {
    "Al/ZrO2": (_ZIRCONIA, _ALUMINUM),
    "Al/ZrO2-1": (_ZIRCONIA_1, _ALUMINUM),
    "Al/Al2O3": (_ALUMINA, _ALUMINUM),
    "Si3N4/SUS304": (_SILICON_NITRIDE, _STAINLESS),
}

PRESET_NAMES = tuple(_PRESETS)


def preset(name: str, *, gradient_index: float = 0.0, thickness: float = 0.1,
           homogenization: str = "mori_tanaka",
           shear_correction: ShearCorrection | None = None) -> FgmSection:
    """Named ceramic/metal pairing with the benchmark constants."""
    try:
        ceramic, metal = _PRESETS[name]
    except KeyError:
        raise DomainError(f"unknown material preset {name!r}; "
                          f"available: {', '.join(sorted(_PRESETS))}") from None
    return FgmSection(ceramic, metal, gradient_index, thickness, homogenization,
                      shear_correction or ShearCorrection())
