"""Figure-data assembly and deterministic CSV/JSON serialization.

Every artifact is either a CSV (header row plus data rows) or a JSON
object {"metadata": ..., "columns": ...}.  Floats are written with 17
significant digits so a reader recovers the exact doubles; given the same
parameters the bytes are identical run to run.  Column layouts per command
are documented in FORMATS.md.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .auxfun import DEFAULT_ACCURACY, SeriesAccuracy, li_three_halves_circle, map_to_y
from .errors import DimensionError, DomainError


@dataclass
class FigureData:
    """Named numeric series plus an echo of how they were produced."""

    columns: dict[str, np.ndarray]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        lengths = {name: len(vals) for name, vals in self.columns.items()}
        if len(set(lengths.values())) > 1:
            raise DimensionError(f"column lengths differ: {lengths}")
        if "command" not in self.metadata:
            raise ValueError("metadata must record the producing command")

    @property
    def rows(self) -> int:
        return 0 if not self.columns else len(next(iter(self.columns.values())))


def make_metadata(command: str, parameters: dict, timestamp: str | None = None) -> dict:
    return {
        "command": command,
        "version": __version__,
        "timestamp": timestamp,
        "parameters": parameters,
    }


def _format_number(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"cannot serialize non-finite value {value!r}")
    return format(value, ".17g")


def _render_json(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        inner = ",\n".join(
            f"{pad}  {json.dumps(str(key))}: {_render_json(val, indent + 1)}"
            for key, val in obj.items()
        )
        return "{\n" + inner + "\n" + pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        items = [_render_json(v, indent + 1) for v in obj]
        return "[" + ", ".join(items) + "]"
    return _format_number(obj)


def write_json(fig: FigureData, path) -> None:
    payload = {"metadata": fig.metadata, "columns": dict(fig.columns)}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(_render_json(payload) + "\n")


def write_csv(fig: FigureData, path) -> None:
    names = list(fig.columns)
    arrays = [np.asarray(fig.columns[name]) for name in names]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(names) + "\n")
        for i in range(fig.rows):
            fh.write(",".join(_format_number(arr[i]) for arr in arrays) + "\n")


def write_figure(fig: FigureData, path, fmt: str) -> None:
    if fmt == "csv":
        write_csv(fig, path)
    elif fmt == "json":
        write_json(fig, path)
    else:
        raise ValueError(f"unknown format {fmt!r}")


# --------------------------------------------------------------------------
# figure-data producers


def emit_spectrum(n: int, omega: float = 1.0, timestamp: str | None = None) -> FigureData:
    """Level index k against its energy k*omega, k = 0..n-1."""
    if n < 1:
        raise DimensionError(f"need n >= 1, got {n}")
    levels = np.arange(n)
    return FigureData(
        columns={"level": levels, "energy": levels * float(omega)},
        metadata=make_metadata("spectrum", {"n": n, "omega": float(omega)}, timestamp),
    )


def emit_f_curve(
    samples: int = 720,
    acc: SeriesAccuracy = DEFAULT_ACCURACY,
    timestamp: str | None = None,
) -> FigureData:
    """f on the closed angle range [-pi, pi], samples+1 rows inclusive."""
    if samples < 2:
        raise DimensionError(f"need at least 2 samples, got {samples}")
    phi = -math.pi + 2.0 * math.pi * np.arange(samples + 1) / samples
    values = [li_three_halves_circle(float(p), acc) for p in phi]
    worst = max(r.error for r in values)
    return FigureData(
        columns={
            "phi": phi,
            "re_f": np.array([r.value.real for r in values]),
            "im_f": np.array([r.value.imag for r in values]),
        },
        metadata=make_metadata(
            "f-curve",
            {"samples": samples, "max_error_estimate": worst},
            timestamp,
        ),
    )


def emit_domain_map(
    radii, samples_per_circle: int = 721, timestamp: str | None = None
) -> FigureData:
    """Images of the circles |z| = r under the two-sheet map, one closed curve per radius.

    Each curve is sampled at samples_per_circle+1 angles with the endpoint
    repeated by evaluation (theta = 0 and 2*pi), so closure is a real check
    rather than a copy.  Radii above 1 are rejected: the first sheet only.
    An even sample count on the unit circle itself would hit the pole at
    z = -1, hence the odd default.
    """
    radii = [float(r) for r in radii]
    if not radii:
        raise DimensionError("need at least one radius")
    if any(not 0.0 < r <= 1.0 for r in radii):
        raise DomainError(f"radii must lie in (0, 1], got {radii}")
    if samples_per_circle < 8:
        raise DimensionError(f"need >= 8 samples per circle, got {samples_per_circle}")
    rad_col, theta_col, re_col, im_col = [], [], [], []
    for r in radii:
        for j in range(samples_per_circle + 1):
            theta = 2.0 * math.pi * j / samples_per_circle
            y = map_to_y(r * complex(math.cos(theta), math.sin(theta)))
            rad_col.append(r)
            theta_col.append(theta)
            re_col.append(y.real)
            im_col.append(y.imag)
    return FigureData(
        columns={
            "radius": np.array(rad_col),
            "theta": np.array(theta_col),
            "re_y": np.array(re_col),
            "im_y": np.array(im_col),
        },
        metadata=make_metadata(
            "map-domains",
            {"radii": radii, "samples_per_circle": samples_per_circle},
            timestamp,
        ),
    )


def domain_map_closure_gap(fig: FigureData) -> float:
    """Worst first-vs-last point distance over the emitted curves."""
    radius = np.asarray(fig.columns["radius"])
    re_y = np.asarray(fig.columns["re_y"])
    im_y = np.asarray(fig.columns["im_y"])
    worst = 0.0
    for r in np.unique(radius):
        mask = radius == r
        gap = math.hypot(
            re_y[mask][0] - re_y[mask][-1], im_y[mask][0] - im_y[mask][-1]
        )
        worst = max(worst, gap)
    return worst


def domain_map_nesting_violations(rays: int = 360, radii_count: int = 20) -> int:
    """Count rays along which |y| fails to grow with the circle radius.

    Nested non-crossing images follow from |y| being radially monotone
    along every direction in the z-plane; sampled at ``rays`` angles and
    ``radii_count`` radii up to 1.
    """
    violations = 0
    radii = np.linspace(1.0 / radii_count, 1.0, radii_count)
    for j in range(rays):
        theta = 2.0 * math.pi * j / rays
        direction = complex(math.cos(theta), math.sin(theta))
        if direction == -1.0:
            continue  # the pole direction reaches infinity, trivially monotone
        magnitudes = [abs(map_to_y(r * direction)) for r in radii]
        if np.any(np.diff(magnitudes) <= 0.0):
            violations += 1
    return violations
