"""Layered mirrors and their reflection coefficients.

Two evaluation branches are provided:

* imaginary (Matsubara) frequencies: real-valued TE/TM amplitudes from the
  Fresnel recursion, with the vertical wavevector
  ``k_jz = sqrt(k_par^2 + eps_j xi^2 / c^2)``;
* the screened zero-frequency TM amplitude, where ionic-charge fluctuations
  in the liquid replace ``k_1z`` by ``sqrt(k_par^2 + kappa^2)`` while the
  ion-free layers keep ``k_jz = k_par``.

All kernels broadcast over numpy arrays of ``k_par``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.constants import c as C_LIGHT

from .errors import DomainError, TopologyError
from .materials import MaterialsDatabase

# exponents below this are flushed to zero (double-precision underflow limit)
_EXP_FLOOR = -700.0


@dataclass(frozen=True)
class Layer:
    """One layer of a mirror: a material name and a thickness in metres.

    ``thickness=None`` marks the terminating half-space.
    """

    material: str
    thickness: float | None = None

    def __post_init__(self):
        if self.thickness is not None and self.thickness <= 0.0:
            raise DomainError(
                f"layer {self.material!r}: finite thickness must be > 0"
            )

    @property
    def is_half_space(self) -> bool:
        return self.thickness is None


@dataclass(frozen=True)
class LayerStack:
    """One mirror: the adjacent liquid plus its layers, liquid side first.

    The last (and only the last) layer must be a half-space.  ``role`` tags
    the stack as the top mirror (suspended plate) or the bottom substrate.
    """

    liquid: str
    layers: tuple[Layer, ...]
    role: str = ""

    def __post_init__(self):
        if not self.layers:
            raise DomainError("a layer stack needs at least one layer")
        if not self.layers[-1].is_half_space:
            raise DomainError("the last layer of a stack must be a half-space")
        for lay in self.layers[:-1]:
            if lay.is_half_space:
                raise DomainError("only the terminating layer may be a half-space")

    @classmethod
    def plate(cls, liquid: str, material: str = "gold", role: str = "top") -> "LayerStack":
        """Bare half-space mirror (the suspended nanoplate)."""
        return cls(liquid, (Layer(material),), role)

    @classmethod
    def coated_substrate(
        cls,
        liquid: str,
        coating: str,
        coating_thickness: float,
        base: str = "gold",
        role: str = "bottom",
    ) -> "LayerStack":
        """Dielectric coating of given thickness on a metallic half-space."""
        return cls(liquid, (Layer(coating, coating_thickness), Layer(base)), role)

    @classmethod
    def film_substrate(
        cls,
        liquid: str,
        coating: str,
        coating_thickness: float,
        film: str,
        film_thickness: float,
        backing: str = "silica",
        role: str = "bottom",
    ) -> "LayerStack":
        """Transmission-type substrate: coating | metal film | backing."""
        return cls(
            liquid,
            (
                Layer(coating, coating_thickness),
                Layer(film, film_thickness),
                Layer(backing),
            ),
            role,
        )


def _kz(eps, xi: float, k_par):
    """Vertical wavevector at imaginary frequency, sqrt(k^2 + eps xi^2/c^2)."""
    return np.sqrt(np.square(k_par) + eps * (xi / C_LIGHT) ** 2)


def fresnel_interface(eps1, eps2, k_par, xi: float, pol: str):
    """Single-interface reflection amplitude at imaginary frequency i*xi.

    Media are described by their (real) permittivities at i*xi; ``math.inf``
    marks the unbounded zero-frequency response of a metal.  TE amplitudes
    vanish identically at xi = 0.
    """
    if pol not in ("TE", "TM"):
        raise DomainError(f"polarisation must be 'TE' or 'TM', got {pol!r}")
    if np.any(np.asarray(k_par) < 0.0):
        raise DomainError("k_par must be >= 0")
    if xi < 0.0:
        raise DomainError("xi must be >= 0")
    if xi == 0.0:
        if np.all(np.asarray(k_par) == 0.0):
            raise DomainError("degenerate wavevector: k_par = 0 and xi = 0")
        if pol == "TE":
            return np.zeros_like(np.asarray(k_par, dtype=float)) + 0.0
        # static TM limit: k_jz = k_par for every medium
        if math.isinf(eps2) and math.isinf(eps1):
            return np.ones_like(np.asarray(k_par, dtype=float)) * 0.0
        if math.isinf(eps2):
            return np.ones_like(np.asarray(k_par, dtype=float))
        if math.isinf(eps1):
            return -np.ones_like(np.asarray(k_par, dtype=float))
        return (eps2 - eps1) / (eps2 + eps1) * np.ones_like(
            np.asarray(k_par, dtype=float)
        )
    k1z = _kz(eps1, xi, k_par)
    k2z = _kz(eps2, xi, k_par)
    if pol == "TE":
        return (k1z - k2z) / (k1z + k2z)
    return (eps2 * k1z - eps1 * k2z) / (eps2 * k1z + eps1 * k2z)


def _decay(kz, thickness: float):
    """exp(-2 kz L) with underflow guard."""
    expo = -2.0 * kz * thickness
    return np.where(expo < _EXP_FLOOR, 0.0, np.exp(np.maximum(expo, _EXP_FLOOR)))


def reflection_from_profile(eps_profile, thicknesses, k_par, xi: float, pol: str):
    """Reflection amplitude of a stratified mirror at imaginary frequency.

    Parameters
    ----------
    eps_profile : sequence
        Permittivities at i*xi, incidence medium first, half-space last.
        Entries may be scalars or arrays broadcastable against ``k_par``.
    thicknesses : sequence of float
        Thicknesses of the interior media (len(eps_profile) - 2 entries).
    k_par, xi, pol
        Parallel wavevector (scalar or ndarray), frequency and polarisation.

    Backward recursion of the two-media Fresnel formula; equivalent to a
    transfer-matrix evaluation but needs only the reflected amplitude.
    """
    n_media = len(eps_profile)
    if len(thicknesses) != n_media - 2:
        raise DomainError("need one thickness per interior medium")
    r = fresnel_interface(eps_profile[-2], eps_profile[-1], k_par, xi, pol)
    for j in range(n_media - 3, -1, -1):
        r_j = fresnel_interface(eps_profile[j], eps_profile[j + 1], k_par, xi, pol)
        if xi == 0.0:
            kz = np.asarray(k_par, dtype=float)
        else:
            kz = _kz(eps_profile[j + 1], xi, k_par)
        phase = _decay(kz, thicknesses[j])
        r = (r_j + r * phase) / (1.0 + r_j * r * phase)
    return r


def _profile(stack: LayerStack, database: MaterialsDatabase, xi: float):
    eps = [database.get(stack.liquid).eps_imag(xi)]
    thick = []
    for lay in stack.layers:
        eps.append(database.get(lay.material).eps_imag(xi))
        if not lay.is_half_space:
            thick.append(lay.thickness)
    return eps, thick


def stack_reflection(
    stack: LayerStack, database: MaterialsDatabase, k_par, xi: float, pol: str
):
    """Reflection amplitude of an arbitrary finite stack at i*xi."""
    eps, thick = _profile(stack, database, xi)
    return reflection_from_profile(eps, thick, k_par, xi, pol)


def slab_reflection(
    stack: LayerStack, database: MaterialsDatabase, k_par, xi: float, pol: str
):
    """Reflection amplitude of a liquid | coating | half-space mirror.

    Same three-media formula the recursion reduces to,
    ``r = (r12 + r23 e^{-2 k2z L}) / (1 + r12 r23 e^{-2 k2z L})``.
    """
    if len(stack.layers) != 2:
        raise TopologyError("slab_reflection expects exactly coating + half-space")
    eps, thick = _profile(stack, database, xi)
    r12 = fresnel_interface(eps[0], eps[1], k_par, xi, pol)
    r23 = fresnel_interface(eps[1], eps[2], k_par, xi, pol)
    kz = np.asarray(k_par, dtype=float) if xi == 0.0 else _kz(eps[1], xi, k_par)
    phase = _decay(kz, thick[0])
    return (r12 + r23 * phase) / (1.0 + r12 * r23 * phase)


# ---------------------------------------------------------------------------
# screened zero-frequency TM coefficients


def screened_interface_tm(eps1_static: float, eps2_static: float, k_par, kappa: float):
    """Liquid/dielectric TM amplitude at zero frequency with ionic screening.

    ``r = (eps2 kb1 - eps1 kb2) / (eps2 kb1 + eps1 kb2)`` with
    ``kb1 = sqrt(k_par^2 + kappa^2)`` in the electrolyte and ``kb2 = k_par``
    in the ion-free layer.  Monotonically increasing in kappa, running from
    the static Fresnel value at kappa = 0 to +1 for kappa >> k_par.
    """
    if kappa < 0.0:
        raise DomainError("kappa must be >= 0")
    k = np.asarray(k_par, dtype=float)
    if np.any(k < 0.0):
        raise DomainError("k_par must be >= 0")
    if kappa == 0.0 and np.any(k == 0.0):
        raise DomainError("degenerate wavevector: k_par = 0 and kappa = 0")
    kb1 = np.sqrt(k**2 + kappa**2)
    return (eps2_static * kb1 - eps1_static * k) / (
        eps2_static * kb1 + eps1_static * k
    )


def _static_eps(database: MaterialsDatabase, name: str) -> float:
    return database.get(name).static_permittivity


def screened_reflection_n0(
    stack: LayerStack, database: MaterialsDatabase, k_par, kappa: float
):
    """Screened TM reflection of one mirror in the n = 0 Matsubara term.

    Supported topologies (anything behind the first metal layer is screened
    out and ignored):

    * liquid | metal ...         -> exactly +1 (unbounded static response),
    * liquid | dielectric | metal ... -> coated-substrate formula with the
      static permittivities of liquid and coating.

    Other shapes raise TopologyError.
    """
    if kappa < 0.0:
        raise DomainError("kappa must be >= 0")
    layers = stack.layers
    if database.get(layers[0].material).is_metal:
        return np.ones_like(np.asarray(k_par, dtype=float))
    if len(layers) < 2 or not database.get(layers[1].material).is_metal:
        raise TopologyError(
            "zero-frequency screening supports only bare-metal or single "
            f"dielectric coating on metal mirrors, got {stack!r}"
        )
    eps1 = _static_eps(database, stack.liquid)
    eps2 = _static_eps(database, layers[0].material)
    r12 = screened_interface_tm(eps1, eps2, k_par, kappa)
    # the coating is ion-free: k_2z = k_par; metal behind reflects with +1
    phase = _decay(np.asarray(k_par, dtype=float), layers[0].thickness)
    return (r12 + phase) / (1.0 + r12 * phase)
