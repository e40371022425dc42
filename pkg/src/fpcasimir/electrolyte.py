"""Ionic screening: Debye length of the electrolyte solution.

The inverse screening length follows from the ion content and the static
permittivity of the solvent,

    lambda_D = sqrt(eps eps0 kB T / (e^2 sum_v n_v v^2)),    kappa = 1/lambda_D,

with number densities n_v in 1/m^3 and integer valencies v.  Public helpers
accept molar salt concentrations (mol/L) and convert internally; a symmetric
univalent salt contributes both ion species to the sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.constants import Avogadro, Boltzmann, e, epsilon_0

from .errors import DomainError
from .materials import DielectricModel

#: effective salt concentration (mol/L) of water equilibrated with ambient
#: CO2 (pH ~ 5.7), giving lambda_D ~ 220 nm at 300 K.  Exposed as a preset,
#: not applied by default.
CO2_EQUILIBRATED_WATER_MOLAR = 1.9e-6


def molar_to_number_density(concentration_molar: float) -> float:
    """mol/L -> 1/m^3."""
    return concentration_molar * 1000.0 * Avogadro


@dataclass(frozen=True)
class ScreeningState:
    """Temperature, ion content and solvent static permittivity.

    ``kappa`` is always derived from these inputs, never stored.
    """

    temperature: float
    ion_species: tuple[tuple[float, int], ...]
    solvent_static_permittivity: float

    def __post_init__(self):
        if self.temperature <= 0.0:
            raise DomainError("temperature must be > 0")
        if self.solvent_static_permittivity < 1.0:
            raise DomainError("solvent static permittivity must be >= 1")
        for density, valency in self.ion_species:
            if density < 0.0:
                raise DomainError(f"negative ion density {density}")
            if int(valency) < 1:
                raise DomainError(f"valency must be a positive integer, got {valency}")

    @classmethod
    def from_concentration(
        cls,
        concentration_molar: float,
        temperature: float,
        solvent_static_permittivity: float,
        valency: int = 1,
    ) -> "ScreeningState":
        """Symmetric v:v salt at the given molar concentration."""
        if concentration_molar < 0.0:
            raise DomainError("concentration must be >= 0")
        n = molar_to_number_density(concentration_molar)
        species = ((n, valency), (n, valency)) if n > 0.0 else ()
        return cls(temperature, species, solvent_static_permittivity)

    @classmethod
    def from_debye_length(
        cls,
        debye_length_m: float,
        temperature: float,
        solvent_static_permittivity: float,
        valency: int = 1,
    ) -> "ScreeningState":
        """State of a univalent symmetric salt with the requested lambda_D."""
        if debye_length_m <= 0.0:
            raise DomainError("Debye length must be > 0")
        c = concentration_for_debye_length(
            debye_length_m, solvent_static_permittivity, temperature, valency
        )
        return cls.from_concentration(
            c, temperature, solvent_static_permittivity, valency
        )

    @classmethod
    def unscreened(
        cls, temperature: float, solvent_static_permittivity: float
    ) -> "ScreeningState":
        """Ion-free solution: kappa = 0."""
        return cls(temperature, (), solvent_static_permittivity)

    @property
    def ionic_strength(self) -> float:
        """sum_v n_v v^2 in 1/m^3."""
        return sum(n * v * v for n, v in self.ion_species)

    @property
    def kappa(self) -> float:
        """Inverse Debye length, 1/m; zero for an ion-free solution."""
        s = self.ionic_strength
        if s == 0.0:
            return 0.0
        lam2 = (
            self.solvent_static_permittivity
            * epsilon_0
            * Boltzmann
            * self.temperature
            / (e**2 * s)
        )
        return 1.0 / math.sqrt(lam2)


def debye_length(state: ScreeningState) -> float:
    """lambda_D in metres; ``math.inf`` when the solution carries no ions."""
    kappa = state.kappa
    return math.inf if kappa == 0.0 else 1.0 / kappa


def concentration_for_debye_length(
    target_m: float,
    solvent,
    temperature: float,
    valency: int = 1,
) -> float:
    """Molar concentration of a symmetric v:v salt giving lambda_D = target.

    ``solvent`` may be a DielectricModel (its static permittivity is used)
    or the static permittivity itself.
    """
    if target_m <= 0.0:
        raise DomainError("target Debye length must be > 0")
    if temperature <= 0.0:
        raise DomainError("temperature must be > 0")
    eps = (
        solvent.static_permittivity
        if isinstance(solvent, DielectricModel)
        else float(solvent)
    )
    # invert lambda^2 = eps eps0 kB T / (e^2 * 2 n v^2) with n = 1000 N_A c
    n = eps * epsilon_0 * Boltzmann * temperature / (
        e**2 * 2.0 * valency**2 * target_m**2
    )
    return n / (1000.0 * Avogadro)
