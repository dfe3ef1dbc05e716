"""The square-root power series family and its two-sheet geometry.

Everything here revolves around series with sqrt-of-index coefficients:

    sqrt_series(n, z)        S_n(z)   = sum_{k=1}^{n} sqrt(k) z^k      (polynomial)
    sqrt_series_disk(z)      S(z)     = sum_{n>=1}   sqrt(n) z^n,      |z| < 1
    li_three_halves(z)       F(z)     = sum_{n>=1} z^n / (n sqrt n),   |z| <= 1
    li_three_halves_circle   f(phi)   = F(e^{i phi})
    angle_kernel(phi)        g(phi)   = sum sqrt(n) e^{i n phi}        (Abel sense)
                                      = -f''(phi)

F converges absolutely on the closed unit disk, so f is an honest function
of the angle; g diverges term-wise on the circle and is defined as the
Abel limit r -> 1- of S(r e^{i phi}), which exists for phi != 0 mod 2*pi.
The kernel g carries every circle-site matrix element of the truncated
oscillator operators, which is why its evaluation is cross-checked by two
independent routes (series extrapolation and a Richardson second
difference of f).

On-circle evaluation of F uses a direct prefix sum plus an exact integral
representation of the remainder: for integer a >= 1 and z off [1, inf),

    sum_{n>=a} n^{-3/2} z^n
        = z^a * a^{-3/2} / Gamma(3/2)
          * int_0^inf u^{1/2} e^{-u} / (1 - z e^{-u/a}) du,

evaluated with generalized Gauss-Laguerre quadrature.  With the tail start
a ~ 120 / |1 - z| the integrand is smooth and 80 nodes reach ~1e-16.

The analytic continuation beyond the circle lives on a double cover joined
along the cut [1, inf).  The coordinate change

    y = 4 z / (1 + z)**2,    z = y / (1 + sqrt(1 - y))**2   (first sheet)

maps both sheets onto one y-plane; the second sheet is z -> 1/z, and the
series on it is the same sum in 1/z.  ``map_to_z`` uses the cancellation-
free algebraic form above rather than the textbook -1 + (2/y)(1 -+ sqrt)
variant, which loses precision for small |y|.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    ConvergenceError,
    DimensionError,
    DomainError,
    NearSingularityError,
    PoleError,
    ZeroFindingError,
)

_GAMMA_3_2 = math.gamma(1.5)
_TAU = 2.0 * math.pi

# Tail start scales like _TAIL_SCALE / |1 - z|; floor keeps the quadrature
# integrand slowly varying even for z far from 1.
_TAIL_SCALE = 120.0
_TAIL_MIN_START = 1000

# Direct summation is preferred strictly inside the disk.
_DISK_RADIUS = 0.99

_CHUNK = 1_000_000

# Kernel evaluation rejects angles within this distance of 0 mod 2*pi.
KERNEL_GUARD = 1e-3


@dataclass(frozen=True)
class SeriesAccuracy:
    """Accuracy contract for infinite-series evaluation."""

    abs_tol: float = 1e-12
    max_terms: int = 20_000_000

    def __post_init__(self):
        if not self.abs_tol >= 1e-14:
            raise ValueError(f"abs_tol must be >= 1e-14, got {self.abs_tol}")
        if self.max_terms < 1:
            raise ValueError(f"max_terms must be >= 1, got {self.max_terms}")


DEFAULT_ACCURACY = SeriesAccuracy()


class SeriesResult(NamedTuple):
    """Value of a series evaluation with an absolute error estimate."""

    value: complex
    error: float
    terms: int


# --------------------------------------------------------------------------
# finite partial sums


def sqrt_series(n: int, z: complex) -> complex:
    """Partial sum S_n(z) = sum_{k=1..n} sqrt(k) z^k by Horner evaluation."""
    if n < 0:
        raise DimensionError(f"order must be >= 0, got {n}")
    acc = 0j
    z = complex(z)
    for k in range(n, 0, -1):
        acc = acc * z + math.sqrt(k)
    return acc * z


def _sqrt_poly_coeffs(n: int) -> np.ndarray:
    """Coefficients of S_n, highest power first (constant term 0)."""
    c = np.sqrt(np.arange(n, 0, -1, dtype=np.float64))
    return np.concatenate([c, [0.0]])


def _polyval(coeffs_high_first: np.ndarray, pts: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(pts, dtype=np.complex128)
    for c in coeffs_high_first:
        acc = acc * pts + c
    return acc


# --------------------------------------------------------------------------
# quadrature backend for the on-circle remainder


_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gauss_laguerre_half(npts: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights for int_0^inf u^{1/2} e^{-u} h(u) du (Golub-Welsch)."""
    cached = _GL_CACHE.get(npts)
    if cached is not None:
        return cached
    alpha = 0.5
    k = np.arange(npts, dtype=np.float64)
    jac = np.diag(2.0 * k + alpha + 1.0)
    sub = np.sqrt(k[1:] * (k[1:] + alpha))
    jac += np.diag(sub, 1) + np.diag(sub, -1)
    nodes, vectors = np.linalg.eigh(jac)
    weights = math.gamma(alpha + 1.0) * vectors[0, :] ** 2
    _GL_CACHE[npts] = (nodes, weights)
    return nodes, weights


def _tail_integral(z: complex, start: int) -> tuple[complex, float]:
    """sum_{n=start}^inf n^{-3/2} z^n for |z| <= 1, z != 1, integer start."""
    x_hi, w_hi = _gauss_laguerre_half(80)
    x_lo, w_lo = _gauss_laguerre_half(64)
    v_hi = complex(np.sum(w_hi / (1.0 - z * np.exp(-x_hi / start))))
    v_lo = complex(np.sum(w_lo / (1.0 - z * np.exp(-x_lo / start))))
    prefactor = start**-1.5 / _GAMMA_3_2
    z_pow = cmath.exp(start * cmath.log(z))
    value = z_pow * prefactor * v_hi
    error = abs(z_pow) * prefactor * (abs(v_hi - v_lo) + 1e-15 * abs(v_hi))
    return value, error


def _prefix_sum(z: complex, last: int, exponent: float) -> complex:
    """sum_{n=1}^{last} n^{-exponent} z^n, chunked to bound memory."""
    if last < 1:
        return 0j
    total = 0j
    log_z = cmath.log(z)
    start = 1
    while start <= last:
        stop = min(last, start + _CHUNK - 1)
        n = np.arange(start, stop + 1, dtype=np.float64)
        total += complex(np.sum(np.exp(n * log_z) * n**-exponent))
        start = stop + 1
    return total


# --------------------------------------------------------------------------
# F = Li_{3/2} on the closed disk, f on the circle


def _zeta_three_halves() -> float:
    """F(1) by direct sum plus the standard power-tail corrections."""
    m = 200_000
    n = np.arange(1, m + 1, dtype=np.float64)
    partial = math.fsum((n**-1.5).tolist())
    a = float(m + 1)
    tail = 2.0 * a**-0.5 + 0.5 * a**-1.5 + 0.125 * a**-2.5 - (105.0 / 5760.0) * a**-4.5
    return partial + tail


_ZETA_3_2 = _zeta_three_halves()


def li_three_halves(
    z: complex,
    acc: SeriesAccuracy = DEFAULT_ACCURACY,
    tail_start: int | None = None,
) -> SeriesResult:
    """F(z) = sum z^n / (n sqrt n) on the closed unit disk.

    Direct summation inside |z| <= 0.99; prefix sum plus the exact
    remainder integral on and near the circle.  ``tail_start`` pins the
    split point so stencils of nearby evaluations share identical error
    behavior (used by the kernel's finite-difference route).

    Raises DomainError outside the closed disk and ConvergenceError when
    the requested tolerance is unreachable within acc.max_terms.
    """
    z = complex(z)
    magnitude = abs(z)
    if magnitude > 1.0 + 1e-12:
        raise DomainError(f"|z| = {magnitude:.6g} > 1; use the second-sheet form")
    if z == 0:
        return SeriesResult(0j, 0.0, 0)

    if magnitude <= _DISK_RADIUS and tail_start is None:
        return _li_three_halves_direct(z, acc)

    distance = abs(1.0 - z)
    if distance < 1e-15:
        return SeriesResult(complex(_ZETA_3_2), 5e-16, 200_000)

    start = tail_start if tail_start is not None else _tail_start_for(z)
    if start - 1 > acc.max_terms:
        capped = max(_TAIL_MIN_START, acc.max_terms)
        value, error = _tail_integral(z, capped)
        value += _prefix_sum(z, capped - 1, 1.5)
        raise ConvergenceError(
            f"tail start {start} exceeds max_terms {acc.max_terms} "
            f"(z within {distance:.3g} of 1)",
            best_estimate=value,
            error_estimate=error + 1e-12,
            terms=capped,
        )
    tail_value, tail_error = _tail_integral(z, start)
    prefix = _prefix_sum(z, start - 1, 1.5)
    # prefix roundoff: pairwise summation of ~start bounded terms
    roundoff = 3e-16 * (1.0 + math.log2(max(start, 2)))
    return SeriesResult(prefix + tail_value, tail_error + roundoff, start - 1)


def _tail_start_for(z: complex) -> int:
    return max(_TAIL_MIN_START, int(math.ceil(_TAIL_SCALE / abs(1.0 - z))))


def _li_three_halves_direct(z: complex, acc: SeriesAccuracy) -> SeriesResult:
    magnitude = abs(z)
    total = 0j
    log_z = cmath.log(z)
    n0 = 1
    block = 4096
    while True:
        n = np.arange(n0, n0 + block, dtype=np.float64)
        total += complex(np.sum(np.exp(n * log_z) * n**-1.5))
        n0 += block
        m = n0 - 1
        bound = magnitude ** (m + 1) / ((m + 1) ** 1.5 * (1.0 - magnitude))
        if bound <= acc.abs_tol * 0.5 or bound < 1e-17:
            return SeriesResult(total, bound + 1e-15, m)
        if m > acc.max_terms:
            raise ConvergenceError(
                f"direct series for F needs more than {acc.max_terms} terms",
                best_estimate=total,
                error_estimate=bound,
                terms=m,
            )


def reduce_angle(phi: float) -> float:
    """Canonical representative of phi in (-pi, pi]."""
    r = math.remainder(phi, _TAU)
    return math.pi if r == -math.pi else r


def li_three_halves_circle(
    phi: float, acc: SeriesAccuracy = DEFAULT_ACCURACY
) -> SeriesResult:
    """f(phi) = F(e^{i phi}); real coefficients give f(-phi) = conj(f(phi))."""
    phi = reduce_angle(phi)
    z = complex(math.cos(phi), math.sin(phi))
    return li_three_halves(z, acc)


def li_three_halves_sheet2(
    z: complex, acc: SeriesAccuracy = DEFAULT_ACCURACY
) -> SeriesResult:
    """Second-sheet continuation of F: the same series in 1/z, |z| > 1."""
    z = complex(z)
    if abs(z) <= 1.0:
        raise DomainError(f"second sheet needs |z| > 1, got |z| = {abs(z):.6g}")
    return li_three_halves(1.0 / z, acc)


# --------------------------------------------------------------------------
# the full sqrt series: disk, second sheet, and the circle kernel


def sqrt_series_disk(z: complex, acc: SeriesAccuracy = DEFAULT_ACCURACY) -> SeriesResult:
    """S(z) = sum sqrt(n) z^n for |z| < 1 by direct summation."""
    z = complex(z)
    magnitude = abs(z)
    if magnitude >= 1.0:
        raise DomainError(f"series converges only for |z| < 1, got {magnitude:.6g}")
    if z == 0:
        return SeriesResult(0j, 0.0, 0)
    total = 0j
    log_z = cmath.log(z)
    n0 = 1
    block = 4096
    while True:
        n = np.arange(n0, n0 + block, dtype=np.float64)
        total += complex(np.sum(np.sqrt(n) * np.exp(n * log_z)))
        n0 += block
        m = n0 - 1
        # sqrt(n) <= sqrt(m+1) + (n - m - 1) for n > m
        rm = magnitude ** (m + 1)
        bound = rm * (math.sqrt(m + 1) / (1.0 - magnitude) + magnitude / (1.0 - magnitude) ** 2)
        if bound <= acc.abs_tol * 0.5 or bound < 1e-17:
            return SeriesResult(total, bound + 1e-15, m)
        if m > acc.max_terms:
            raise ConvergenceError(
                f"sqrt series needs more than {acc.max_terms} terms at |z| = {magnitude:.6g}",
                best_estimate=total,
                error_estimate=bound,
                terms=m,
            )


def sqrt_series_sheet2(z: complex, acc: SeriesAccuracy = DEFAULT_ACCURACY) -> SeriesResult:
    """Second-sheet value sum sqrt(n) z^{-n}, convergent for |z| > 1."""
    z = complex(z)
    if abs(z) <= 1.0:
        raise DomainError(f"second sheet needs |z| > 1, got |z| = {abs(z):.6g}")
    return sqrt_series_disk(1.0 / z, acc)


def _damped_sqrt_sum(phi: float, eps: float, max_terms: int) -> tuple[complex, int]:
    """sum sqrt(n) ((1-eps) e^{i phi})^n, truncated far below double roundoff."""
    n_max = int(math.ceil(52.0 / eps)) + 8
    if n_max > max_terms:
        raise ConvergenceError(
            f"Abel sample at eps={eps:.3g} needs {n_max} terms > budget {max_terms}",
            terms=n_max,
        )
    log_z = math.log1p(-eps) + 1j * phi
    total = 0j
    start = 1
    while start <= n_max:
        stop = min(n_max, start + _CHUNK - 1)
        n = np.arange(start, stop + 1, dtype=np.float64)
        total += complex(np.sum(np.sqrt(n) * np.exp(n * log_z)))
        start = stop + 1
    return total, n_max


def _extrapolate_to_zero(xs, ys) -> tuple[complex, float]:
    """Neville polynomial extrapolation of (xs, ys) to x = 0."""
    n = len(xs)
    tbl = [complex(y) for y in ys]
    second_best = tbl[0]
    for k in range(1, n):
        for i in range(n - k):
            tbl[i] = (xs[i + k] * tbl[i] - xs[i] * tbl[i + 1]) / (xs[i + k] - xs[i])
        if k == n - 2:
            second_best = tbl[0]
    return tbl[0], abs(tbl[0] - second_best)


def _check_kernel_angle(phi: float) -> float:
    phi = reduce_angle(phi)
    if abs(phi) < KERNEL_GUARD:
        raise NearSingularityError(
            f"kernel diverges at phi = 0 mod 2*pi; |phi| = {abs(phi):.3g} < {KERNEL_GUARD}"
        )
    return phi


def angle_kernel_abel(phi: float, acc: SeriesAccuracy = DEFAULT_ACCURACY) -> SeriesResult:
    """g(phi) as the Abel limit r -> 1- of S(r e^{i phi}).

    Seven radii with (1 - r) halving geometrically feed a polynomial
    extrapolation in (1 - r); the limit exists because S extends
    analytically through every boundary point except z = 1.
    """
    phi = _check_kernel_angle(phi)
    distance = 2.0 * abs(math.sin(phi / 2.0))  # |1 - e^{i phi}|
    eps0 = min(1.0 / 16.0, distance / 4.0)
    xs = [eps0 * 0.5**j for j in range(7)]
    total_terms = 0
    ys = []
    for eps in xs:
        value, used = _damped_sqrt_sum(phi, eps, acc.max_terms)
        ys.append(value)
        total_terms += used
    value, est = _extrapolate_to_zero(xs, ys)
    return SeriesResult(value, est + 1e-14 * abs(value), total_terms)


def angle_kernel_fdiff(phi: float, acc: SeriesAccuracy = DEFAULT_ACCURACY) -> SeriesResult:
    """g(phi) = -f''(phi) by central second differences of f.

    Steps h and h/2 are combined to fourth order.  h = 1e-3 except close
    to the singularity, where the h**6 truncation term of the combination
    would exceed the method's own tolerance; there h shrinks like phi/30.
    """
    phi = _check_kernel_angle(phi)
    h = min(1e-3, abs(phi) / 30.0)
    stencil = [phi, phi + h, phi - h, phi + h / 2.0, phi - h / 2.0]
    # shared tail start keeps the evaluation error smooth across the stencil
    start = max(
        _tail_start_for(complex(math.cos(p), math.sin(p))) for p in stencil
    )
    if start - 1 > acc.max_terms:
        raise ConvergenceError(
            f"finite-difference stencil needs tail start {start} > budget {acc.max_terms}",
            terms=start,
        )
    values = {}
    terms = 0
    for p in stencil:
        z = complex(math.cos(p), math.sin(p))
        res = li_three_halves(z, acc, tail_start=start)
        values[p] = res.value
        terms += res.terms

    def second_diff(step: float) -> complex:
        return (values[phi + step] - 2.0 * values[phi] + values[phi - step]) / step**2

    d_h = second_diff(h)
    d_half = second_diff(h / 2.0)
    value = -(16.0 * d_half - d_h) / 15.0
    # noise floor ~ f roundoff / (h/2)^2, truncation ~ h^6 scale
    error = 2e-15 / (h / 2.0) ** 2 + abs(d_half - d_h) / 15.0
    return SeriesResult(value, error, terms)


def angle_kernel(phi: float, acc: SeriesAccuracy = DEFAULT_ACCURACY) -> SeriesResult:
    """g(phi) with the two independent routes cross-checked.

    Returns the extrapolated-series value; the error field carries the
    observed disagreement.  Raises ConvergenceError if the routes differ
    by more than max(1e-6, 1e-4 |g|).
    """
    series = angle_kernel_abel(phi, acc)
    fdiff = angle_kernel_fdiff(phi, acc)
    disagreement = abs(series.value - fdiff.value)
    tolerance = max(1e-6, 1e-4 * abs(series.value))
    if disagreement > tolerance:
        raise ConvergenceError(
            f"kernel routes disagree by {disagreement:.3e} > {tolerance:.3e} at phi = {phi}",
            best_estimate=series.value,
            error_estimate=disagreement,
            terms=series.terms + fdiff.terms,
        )
    return SeriesResult(
        series.value, max(series.error, disagreement), series.terms + fdiff.terms
    )


# --------------------------------------------------------------------------
# two-sheet coordinate change


@dataclass(frozen=True)
class SheetPoint:
    """A point of the double cover: complex coordinate plus sheet index."""

    coord: complex
    sheet: int

    def __post_init__(self):
        if self.sheet not in (1, 2):
            raise ValueError(f"sheet must be 1 or 2, got {self.sheet}")


def sheet_of(z: complex) -> SheetPoint:
    """Classify a z-plane point: sheet 1 for |z| <= 1, else sheet 2."""
    z = complex(z)
    return SheetPoint(z, 1 if abs(z) <= 1.0 else 2)


def sqrt_series_at(point: SheetPoint, acc: SeriesAccuracy = DEFAULT_ACCURACY) -> SeriesResult:
    """Evaluate the sqrt series at a sheet-tagged z-plane point."""
    z = complex(point.coord)
    if point.sheet == 1:
        return sqrt_series_disk(z, acc)
    return sqrt_series_sheet2(z, acc)


def map_to_y(z: complex) -> complex:
    """y = 4 z / (1 + z)**2; undefined at the pole z = -1."""
    z = complex(z)
    if z == -1.0:
        raise PoleError("map has a pole at z = -1")
    return 4.0 * z / (1.0 + z) ** 2


def map_to_z(y: complex, sheet: int = 1) -> complex:
    """Invert y = 4 z / (1 + z)**2 onto the requested sheet.

    The stable algebraic forms are z = y / (1 + w)**2 on sheet 1 and
    z = (1 + w)**2 / y on sheet 2, with w the principal sqrt(1 - y); the
    two are exact reciprocals.  The principal branch puts the cut on real
    y > 1: approach it with an explicit +-0j imaginary part to choose a
    side.  y = 0 maps to z = 0 on sheet 1 and to infinity on sheet 2.
    """
    if sheet not in (1, 2):
        raise ValueError(f"sheet must be 1 or 2, got {sheet}")
    y = complex(y)
    if y == 0:
        if sheet == 1:
            return 0j
        raise PoleError("sheet-2 image of y = 0 is the point at infinity")
    # build 1 - y preserving the sign of -y.imag so +-0j selects the cut side
    one_minus = complex(1.0 - y.real, -y.imag)
    w = cmath.sqrt(one_minus)
    if sheet == 1:
        return y / (1.0 + w) ** 2
    z = (1.0 + w) ** 2 / y
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise PoleError(f"sheet-2 image of y = {y!r} overflows double range")
    return z


# --------------------------------------------------------------------------
# zeros of the partial sums


@dataclass(frozen=True, eq=False)
class ZeroSet:
    """All complex roots of sqrt_series(degree, .), sorted by argument."""

    degree: int
    roots: np.ndarray
    residual: float

    def __post_init__(self):
        arr = np.array(self.roots, dtype=np.complex128, copy=True)
        if arr.ndim != 1 or arr.size != self.degree:
            raise DimensionError(
                f"need exactly {self.degree} roots, got shape {arr.shape}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "roots", arr)

    def near_circle_fraction(self, band: float = 0.1) -> float:
        """Fraction of roots with ||z| - 1| < band."""
        return float(np.mean(np.abs(np.abs(self.roots) - 1.0) < band))


MAX_ZERO_DEGREE = 512


def sqrt_series_zeros(degree: int) -> ZeroSet:
    """Roots of S_degree via companion-matrix eigenvalues plus one Newton step.

    The constant term vanishes, so z = 0 is always among the roots.  The
    residual max |S_degree(root)| must stay below 1e-8 * max coefficient.
    """
    if not 1 <= degree <= MAX_ZERO_DEGREE:
        raise DimensionError(f"degree must be in 1..{MAX_ZERO_DEGREE}, got {degree}")
    coeffs = _sqrt_poly_coeffs(degree)
    try:
        roots = np.roots(coeffs)
    except np.linalg.LinAlgError as exc:
        raise ZeroFindingError(
            f"companion eigenvalue solver failed for degree {degree}",
            diagnostics={"degree": degree, "lapack_error": str(exc)},
        ) from exc
    if roots.size != degree:
        raise ZeroFindingError(
            f"expected {degree} eigenvalues, got {roots.size}",
            diagnostics={"degree": degree, "count": int(roots.size)},
        )
    roots = roots.astype(np.complex128)
    deriv = coeffs[:-1] * np.arange(degree, 0, -1)
    values = _polyval(coeffs, roots)
    slopes = _polyval(deriv, roots)
    safe = slopes != 0
    roots[safe] -= values[safe] / slopes[safe]

    order = np.lexsort((np.abs(roots), np.angle(roots)))
    roots = roots[order]
    residual = float(np.max(np.abs(_polyval(coeffs, roots))))
    bound = 1e-8 * float(np.max(np.abs(coeffs)))
    if residual > bound:
        raise ZeroFindingError(
            f"post-polish residual {residual:.3e} exceeds bound {bound:.3e}",
            diagnostics={"degree": degree, "residual": residual, "bound": bound},
        )
    return ZeroSet(degree=degree, roots=roots, residual=residual)
