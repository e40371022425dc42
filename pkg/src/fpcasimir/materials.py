"""Dielectric models and the materials database.

Every material is represented by a causal oscillator model that can be
evaluated both at imaginary frequencies (for the Matsubara sum) and at real
optical frequencies (for transfer-matrix spectra):

* metals: Drude terms plus Lorentz oscillators ("drude_lorentz"),
* dielectrics and liquids: Lorentz oscillators only ("lorentz_oscillators"),
* measured data: tabulated eps(i xi) with log-log interpolation ("tabulated").

On the imaginary axis a Drude term contributes ``wp^2 / (xi (xi + gamma))``
and an oscillator ``C w0^2 / (w0^2 + xi^2 + gamma xi)``, which is real,
>= 0 and monotonically decreasing in xi.  On the real axis the same
parameters give the usual complex permittivity, so the two branches are
Kramers-Kronig consistent by construction.

Polar liquids carry their orientational (static) permittivity in a separate
``static_permittivity`` field: the oscillator fit covers only the IR/UV
response, while the static value feeds the zero-frequency Matsubara term and
the Debye screening length.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np
from scipy.constants import e as _ECHARGE, hbar as _HBAR

from .errors import DomainError, ValidationError

# angular frequency of a 1 eV photon, rad/s
EV = _ECHARGE / _HBAR

#: materials every database must provide
REQUIRED_MATERIALS = ("gold", "silica", "teflon", "water", "glycerol", "benzene")

_MODEL_KINDS = ("drude_lorentz", "lorentz_oscillators", "tabulated")

# sentinel used in data files for an unbounded static response
_INF_TOKENS = ("inf", "infinite", "Infinity")


@dataclass(frozen=True)
class DielectricModel:
    """Parametric permittivity of one material.

    Parameters
    ----------
    name : str
        Material identifier, lower case.
    kind : str
        One of ``drude_lorentz``, ``lorentz_oscillators``, ``tabulated``.
    drude_terms : tuple of (wp, gamma)
        Plasma frequency and damping rate in rad/s (metals only).
    oscillator_terms : tuple of (C, w0, gamma)
        Dimensionless strength, resonance and damping in rad/s.
    static_permittivity : float
        eps(0); ``math.inf`` for metals.  For polar liquids this includes
        the orientational response that the oscillator fit omits.
    polar : bool
        True when ``static_permittivity`` exceeds the oscillator-fit limit
        because of orientational polarisation.
    table : tuple of (xi, eps)
        Sampled eps(i xi) for ``tabulated`` models, ascending in xi.
    citation : str
        Source of the parameter values.
    """

    name: str
    kind: str
    drude_terms: tuple[tuple[float, float], ...] = ()
    oscillator_terms: tuple[tuple[float, float, float], ...] = ()
    static_permittivity: float = math.nan
    polar: bool = False
    table: tuple[tuple[float, float], ...] = ()
    citation: str = ""

    def __post_init__(self):
        if self.kind not in _MODEL_KINDS:
            raise ValidationError(f"{self.name}: unknown model kind {self.kind!r}")
        if self.kind == "tabulated" and len(self.table) < 4:
            raise ValidationError(f"{self.name}: tabulated model needs >= 4 points")

    @property
    def is_metal(self) -> bool:
        return bool(self.drude_terms) or math.isinf(self.static_permittivity)

    def oscillator_limit(self) -> float:
        """eps(i xi -> 0) of the oscillator fit alone (no orientational part)."""
        if self.kind == "tabulated":
            return float(self.table[0][1])
        if self.drude_terms:
            return math.inf
        return 1.0 + sum(c for c, _, _ in self.oscillator_terms)

    def eps_imag(self, xi):
        """Permittivity at imaginary frequency i*xi; real valued, >= 1.

        ``xi`` may be a scalar or an ndarray (rad/s, >= 0).  For a metal at
        xi = 0 the unbounded static response is returned as ``math.inf``.
        """
        xi_arr = np.asarray(xi, dtype=float)
        if np.any(xi_arr < 0.0):
            raise DomainError(f"{self.name}: xi must be >= 0")
        if self.kind == "tabulated":
            out = self._eps_imag_tabulated(xi_arr)
        else:
            out = np.ones_like(xi_arr)
            with np.errstate(divide="ignore"):
                for wp, g in self.drude_terms:
                    out = out + wp**2 / (xi_arr * (xi_arr + g))
            for c, w0, g in self.oscillator_terms:
                out = out + c * w0**2 / (w0**2 + xi_arr**2 + g * xi_arr)
        if out.ndim == 0:
            return float(out)
        return out

    def _eps_imag_tabulated(self, xi_arr):
        tab_xi = np.array([p[0] for p in self.table])
        tab_eps = np.array([p[1] for p in self.table])
        log_eps = np.log(tab_eps - 1.0)
        xi_safe = np.clip(xi_arr, tab_xi[0], None)
        interp = 1.0 + np.exp(
            np.interp(np.log(xi_safe), np.log(tab_xi), log_eps)
        )
        # beyond the last sample, continue as 1 + A/xi^2
        amp = (tab_eps[-1] - 1.0) * tab_xi[-1] ** 2
        high = xi_arr > tab_xi[-1]
        out = np.where(high, 1.0 + amp / np.maximum(xi_arr, tab_xi[0]) ** 2, interp)
        out = np.where(xi_arr < tab_xi[0], tab_eps[0], out)
        return out

    def eps_real(self, omega):
        """Complex permittivity at real angular frequency omega > 0."""
        om = np.asarray(omega, dtype=float)
        if np.any(om <= 0.0):
            raise DomainError(f"{self.name}: omega must be > 0")
        if self.kind == "tabulated":
            raise DomainError(
                f"{self.name}: tabulated models support imaginary frequencies only"
            )
        out = np.ones_like(om, dtype=complex)
        for wp, g in self.drude_terms:
            out = out - wp**2 / (om * (om + 1j * g))
        for c, w0, g in self.oscillator_terms:
            out = out + c * w0**2 / (w0**2 - om**2 - 1j * g * om)
        if out.ndim == 0:
            return complex(out)
        return out

    def refractive_index(self, omega):
        """n + ik with the branch Im(n) >= 0."""
        n = np.sqrt(self.eps_real(omega))
        return np.where(np.imag(n) < 0.0, -n, n) if np.ndim(n) else (
            -n if n.imag < 0.0 else n
        )


def permittivity_imag(model: DielectricModel, xi):
    """eps(i xi) of ``model``; see :meth:`DielectricModel.eps_imag`."""
    return model.eps_imag(xi)


def permittivity_real(model: DielectricModel, omega):
    """eps(omega) of ``model``; see :meth:`DielectricModel.eps_real`."""
    return model.eps_real(omega)


# ---------------------------------------------------------------------------
# database

#: grid on which load-time invariants are checked, rad/s
_CHECK_GRID = np.logspace(11.0, 18.0, 141)


@dataclass(frozen=True)
class MaterialsDatabase:
    """Validated, read-only map of material name -> DielectricModel."""

    materials: dict[str, DielectricModel]
    schema_version: int = 1
    source: str = ""

    def __contains__(self, name: str) -> bool:
        return name in self.materials

    def __getitem__(self, name: str) -> DielectricModel:
        return self.get(name)

    def get(self, name: str) -> DielectricModel:
        try:
            return self.materials[name]
        except KeyError:
            raise DomainError(f"unknown material {name!r}") from None

    def names(self) -> tuple[str, ...]:
        return tuple(sorted(self.materials))


def _validate_model(model: DielectricModel) -> None:
    """Check the physical invariants of one entry; raise ValidationError."""
    name = model.name
    eps0 = model.static_permittivity
    if not math.isinf(eps0):
        if math.isnan(eps0):
            raise ValidationError(f"{name}: static permittivity missing")
        if eps0 < 1.0:
            raise ValidationError(
                f"{name}: static permittivity {eps0} violates eps >= 1"
            )
    for c, w0, g in model.oscillator_terms:
        if c < 0.0 or w0 <= 0.0 or g < 0.0:
            raise ValidationError(f"{name}: oscillator ({c}, {w0}, {g}) out of range")
    for wp, g in model.drude_terms:
        if wp <= 0.0 or g < 0.0:
            raise ValidationError(f"{name}: drude term ({wp}, {g}) out of range")

    eps = model.eps_imag(_CHECK_GRID)
    if np.any(eps < 1.0 - 1e-12):
        raise ValidationError(f"{name}: eps(i xi) < 1 on the check grid")
    if np.any(np.diff(eps) > 1e-12):
        raise ValidationError(f"{name}: eps(i xi) not monotonically non-increasing")
    if not model.is_metal and abs(model.eps_imag(1e20) - 1.0) > 1e-3:
        raise ValidationError(f"{name}: eps(i xi) does not approach 1 at high xi")

    # non-polar materials: the static value must be the oscillator limit
    if not model.is_metal and model.kind != "tabulated":
        limit = model.oscillator_limit()
        if model.polar:
            if eps0 < limit:
                raise ValidationError(
                    f"{name}: polar static permittivity {eps0} below the "
                    f"oscillator-fit limit {limit:.4g}"
                )
        elif abs(limit - eps0) > 0.01 * eps0:
            raise ValidationError(
                f"{name}: static permittivity {eps0} deviates from the "
                f"oscillator-fit limit {limit:.4g} by more than 1%"
            )


def _model_from_record(name: str, rec: dict) -> DielectricModel:
    eps0 = rec.get("static_permittivity")
    if isinstance(eps0, str):
        if eps0 not in _INF_TOKENS:
            raise ValidationError(f"{name}: bad static permittivity {eps0!r}")
        eps0 = math.inf
    if eps0 is None:
        raise ValidationError(f"{name}: static permittivity missing")
    return DielectricModel(
        name=name,
        kind=rec.get("kind", ""),
        drude_terms=tuple((float(a), float(b)) for a, b in rec.get("drude_terms", [])),
        oscillator_terms=tuple(
            (float(a), float(b), float(c)) for a, b, c in rec.get("oscillator_terms", [])
        ),
        static_permittivity=float(eps0),
        polar=bool(rec.get("polar", False)),
        table=tuple((float(a), float(b)) for a, b in rec.get("table", [])),
        citation=rec.get("citation", ""),
    )


def bundled_database_path() -> Path:
    """Path of the materials file shipped with the package."""
    return Path(resources.files("fpcasimir").joinpath("data/materials.json"))


def load_database(path: str | Path | None = None) -> MaterialsDatabase:
    """Load and validate a materials database file.

    Falls back to the ``FPCASIMIR_MATERIALS`` environment variable and then
    to the bundled default when ``path`` is None.  Raises ValidationError
    naming the material and the violated rule on bad entries.
    """
    if path is None:
        path = os.environ.get("FPCASIMIR_MATERIALS") or bundled_database_path()
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except OSError as exc:
        raise ValidationError(f"cannot read materials database {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"materials database {path} does not parse: {exc}") from exc

    if "schema_version" not in raw:
        raise ValidationError("materials database lacks a schema_version field")
    if not isinstance(raw.get("materials"), dict):
        raise ValidationError("materials database lacks a materials table")

    models = {}
    for name, rec in raw["materials"].items():
        model = _model_from_record(name, rec)
        _validate_model(model)
        models[name] = model

    missing = [m for m in REQUIRED_MATERIALS if m not in models]
    if missing:
        raise ValidationError(f"materials database missing required entries: {missing}")
    return MaterialsDatabase(
        materials=models, schema_version=int(raw["schema_version"]), source=str(path)
    )


_DEFAULT_DB: MaterialsDatabase | None = None


def default_database() -> MaterialsDatabase:
    """The bundled database, loaded once per process."""
    global _DEFAULT_DB
    if _DEFAULT_DB is None:
        _DEFAULT_DB = load_database(bundled_database_path())
    return _DEFAULT_DB
