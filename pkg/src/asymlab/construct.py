"""Contour-integral construction of an entire function with prescribed
asymptotic targets on n equally spaced rays.

The machinery: a boundary contour of the sector |arg z| < pi/n, the Cauchy
kernel integral E(z) over it, the entire interpolant phi (the outside
branch of E continued across the contour), its rotations, and the final
assembly f(z) = sum_j phi(e^{-2 pi i j / n} z) a_j(z) / e^{z^n}.

Evaluation near the contour replaces the nearby piece by a circular
indentation into the region away from the requested branch; Cauchy's
theorem keeps the value unchanged while the quadrature stays well
separated from the kernel pole.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .logcx import LC_ZERO, LogComplex, lc_add, lc_exp_zn, lc_mul, wrap_angle
from .quadrature import integrate_segment, truncation_radius
from .specs import TargetFunction

ANG_TOL_DEFAULT = 1e-9

# Indentation geometry (unit scale): indent when within _INDENT_TRIGGER of
# the contour, with arc radius _INDENT_RHO, so separation stays >= trigger.
_INDENT_RHO = 0.5
_INDENT_TRIGGER = 0.25
_CORNER_RADIUS = 2.0
_CORNER_TRIGGER = 1.5  # projection parameter below which the corner arc is used


class TooCloseToContour(RuntimeError):
    """z cannot be separated from the contour even after indentation."""


class NotOnRayError(ValueError):
    """Residual evaluation requested off the designated ray."""


class RegionTag(enum.Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    ON_GAMMA = "on_gamma"


@dataclass(frozen=True)
class ContourGamma:
    """Boundary of the sector |arg z| < pi/n, in along angle -pi/n and out
    along +pi/n; on it Re(w^n) = -|w|^n exactly."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("contour requires n >= 2")

    @property
    def direction_out(self) -> complex:
        return cmath.exp(1j * math.pi / self.n)

    @property
    def direction_in(self) -> complex:
        return cmath.exp(-1j * math.pi / self.n)

    def point(self, t: float) -> complex:
        if t < 0:
            return -t * self.direction_in
        return t * self.direction_out


def classify_region(z: complex, n: int, ang_tol: float = ANG_TOL_DEFAULT) -> RegionTag:
    """INSIDE / OUTSIDE / ON_GAMMA for the sector |arg z| < pi/n."""
    if z == 0:
        raise ValueError("z = 0 is the contour corner; classification undefined")
    if n < 2:
        raise ValueError("classification requires n >= 2")
    th = abs(wrap_angle(cmath.phase(complex(z))))
    half = math.pi / n
    if abs(th - half) <= ang_tol:
        return RegionTag.ON_GAMMA
    if th < half:
        return RegionTag.INSIDE
    return RegionTag.OUTSIDE


def c_constant(n: int, tol: float = 1e-12) -> float:
    """integral of e^{-t^n} over [0, inf)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    T = truncation_radius(n, tol)
    res = integrate_segment(lambda t: np.exp(-(t**n)), 0.0, T, tol)
    return float(res.value.real)


def d_constant(n: int, tol: float = 1e-12) -> float:
    """integral of t e^{-t^n} over [0, inf)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    T = truncation_radius(n, tol)
    res = integrate_segment(lambda t: t * np.exp(-(t**n)), 0.0, T, tol)
    return float(res.value.real)


def _arc_sweep(th_a: float, th_b: float, via: float) -> tuple[float, float]:
    """Pick the (th_a, th_b') parametrization whose midpoint angle passes
    closest to `via`; th_b' is th_b shifted by a multiple of 2 pi."""
    best = None
    for shift in (-2.0 * math.pi, 0.0, 2.0 * math.pi):
        tb = th_b + shift
        if abs(tb - th_a) < 1e-12 or abs(tb - th_a) > 2.0 * math.pi + 1e-12:
            continue
        mid = 0.5 * (th_a + tb)
        score = abs(wrap_angle(mid - via))
        if best is None or score < best[0]:
            best = (score, tb)
    assert best is not None
    return th_a, best[1]


def _contour_pieces(n: int, T: float, z: complex | None, want_inside_branch: bool):
    """Pieces of the truncated contour, indented (if needed) so that `z`
    keeps its branch side and stays >= _INDENT_TRIGGER away.

    Pieces are ('seg', a, b) or ('arc', center, radius, th0, th1), in
    traversal order from T e^{-i pi/n} to T e^{i pi/n}.
    """
    u_up = cmath.exp(1j * math.pi / n)
    u_dn = cmath.exp(-1j * math.pi / n)
    plain = [("seg", T * u_dn, 0j), ("seg", 0j, T * u_up)]
    if z is None:
        return plain
    z = complex(z)

    def ray_gap(u):
        t0 = min(max((z * u.conjugate()).real, 0.0), T)
        return abs(z - t0 * u), t0

    d_up, t_up = ray_gap(u_up)
    d_dn, t_dn = ray_gap(u_dn)
    if min(d_up, d_dn) >= _INDENT_TRIGGER:
        return plain

    if d_up <= d_dn:
        u, t0, on_upper = u_up, t_up, True
    else:
        u, t0, on_upper = u_dn, t_dn, False

    if t0 < _CORNER_TRIGGER:
        # Corner indentation: rays shortened to _CORNER_RADIUS joined by an
        # arc through the sector (outside branch) or the long way around
        # through the complement (inside branch).
        rc = _CORNER_RADIUS
        half = math.pi / n
        if want_inside_branch:
            th0, th1 = -half, half - 2.0 * math.pi
        else:
            th0, th1 = -half, half
        return [
            ("seg", T * u_dn, rc * u_dn),
            ("arc", 0j, rc, th0, th1),
            ("seg", rc * u_up, T * u_up),
        ]

    rho = _INDENT_RHO
    if t0 + rho >= T:
        raise TooCloseToContour("indentation would reach past the truncation radius")
    # Normal pointing into the sector from this ray.
    inside_normal = (-1j * u) if on_upper else (1j * u)
    bulge = -inside_normal if want_inside_branch else inside_normal
    p = t0 * u
    p_lo = (t0 - rho) * u  # closer to the origin
    p_hi = (t0 + rho) * u
    if on_upper:
        a_pt, b_pt = p_lo, p_hi
        before = [("seg", T * u_dn, 0j), ("seg", 0j, p_lo)]
        after = [("seg", p_hi, T * u_up)]
    else:
        a_pt, b_pt = p_hi, p_lo
        before = [("seg", T * u_dn, p_hi)]
        after = [("seg", p_lo, 0j), ("seg", 0j, T * u_up)]
    th_a = cmath.phase(a_pt - p)
    th_b = cmath.phase(b_pt - p)
    th_a, th_b = _arc_sweep(th_a, th_b, cmath.phase(bulge))
    return before + [("arc", p, rho, th_a, th_b)] + after


def _integrate_pieces(pieces, integrand, tol: float) -> complex:
    per = tol / len(pieces)
    total = 0j
    for piece in pieces:
        if piece[0] == "seg":
            _, a, b = piece
            total += integrate_segment(integrand, a, b, per).value
        else:
            _, c, r, th0, th1 = piece

            def arc_f(th, c=c, r=r):
                w = c + r * np.exp(1j * th)
                return integrand(w) * 1j * r * np.exp(1j * th)

            total += integrate_segment(arc_f, th0, th1, per).value
    return total


def _eval_E_raw(z: complex, n: int, tol: float, want_inside_branch: bool) -> complex:
    """Cauchy kernel integral over the (possibly indented) contour.

    Returns the branch of E matching `want_inside_branch` at z, i.e. the
    value obtained without the kernel pole ever crossing the contour.
    """
    z = complex(z)
    T = max(truncation_radius(n, min(tol, 1e-3)), abs(z) + 2.0)
    pieces = _contour_pieces(n, T, z, want_inside_branch)

    def integrand(w):
        return np.exp(w**n) / (w - z)

    # Discarded tails stay >= 2 away from z, so the kernel is <= 1/2 there
    # and the tail is already below tol by the choice of T.
    total = _integrate_pieces(pieces, integrand, tol * 2.0 * math.pi)
    return total / (2j * math.pi)


def eval_E(z: complex, n: int, tol: float = 1e-9) -> complex:
    """E(z): normalized Cauchy integral of e^{w^n} over the sector boundary.

    Defined off the contour; for points within angular tolerance of it the
    two-sided limits differ and TooCloseToContour is raised.
    """
    if n < 2:
        raise ValueError("eval_E requires n >= 2")
    if z == 0:
        raise TooCloseToContour("z = 0 lies on the contour")
    tag = classify_region(z, n)
    if tag is RegionTag.ON_GAMMA:
        raise TooCloseToContour("z lies on the contour within angular tolerance")
    return _eval_E_raw(z, n, tol, want_inside_branch=(tag is RegionTag.INSIDE))


def eval_phi(z: complex, n: int, tol: float = 1e-9) -> LogComplex:
    """The entire interpolant: e^{z^n} + O(1/z) inside the sector, O(1/z)
    outside.  Computed as the outside branch of E continued across the
    contour; inside points add e^{z^n} in log space."""
    if n < 2:
        raise ValueError("eval_phi requires n >= 2; n = 1 is the trivial construction")
    z = complex(z)
    if z == 0:
        return LogComplex.from_complex(_eval_E_raw(0j, n, tol, want_inside_branch=False))
    tag = classify_region(z, n)
    if tag is RegionTag.INSIDE:
        e1 = _eval_E_raw(z, n, tol, want_inside_branch=True)
        return lc_add(lc_exp_zn(z, n), LogComplex.from_complex(e1))
    e2 = _eval_E_raw(z, n, tol, want_inside_branch=False)
    return LogComplex.from_complex(e2)


def contour_identity(n: int, tol: float = 1e-12) -> complex:
    """(1/2 pi i) integral of e^{w^n} over the contour; equals
    (c_n / pi) sin(pi / n)."""
    T = truncation_radius(n, tol)
    pieces = _contour_pieces(n, T, None, False)
    total = _integrate_pieces(pieces, lambda w: np.exp(w**n), tol)
    return total / (2j * math.pi)


@dataclass(frozen=True)
class ConstructedF:
    """Assembled entire function with target a_j on the ray of angle
    2 pi j / n (j = 1..n; a_list[j-1] belongs to ray j).

    n = 1 degenerates to the trivial construction f = a_1 (the sector
    complement is empty there), kept so the CLI can accept n = 1.
    """

    n: int
    a_list: tuple[TargetFunction, ...]
    tol: float = 1e-9
    ang_tol: float = field(default=ANG_TOL_DEFAULT)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if len(self.a_list) != self.n:
            raise ValueError("need exactly n target functions")
        object.__setattr__(self, "a_list", tuple(self.a_list))

    def ray_angle(self, j: int) -> float:
        if not 1 <= j <= self.n:
            raise ValueError("ray index out of range")
        return wrap_angle(2.0 * math.pi * j / self.n)

    def rotation(self, j: int) -> complex:
        return cmath.exp(-2j * math.pi * j / self.n)

    def has_real_coeffs(self) -> bool:
        return all(a.has_real_coeffs() for a in self.a_list)


def eval_f(z: complex, cf: ConstructedF) -> LogComplex:
    """f(z) = sum_j phi(e^{-2 pi i j/n} z) a_j(z) / e^{z^n}, assembled in
    log space.  Cancellation warnings from the final sum propagate."""
    z = complex(z)
    if cf.n == 1:
        return LogComplex.from_complex(cf.a_list[0](z))
    inv_exp = lc_exp_zn(z, cf.n).reciprocal()
    total = LC_ZERO
    for j in range(1, cf.n + 1):
        phi_j = eval_phi(cf.rotation(j) * z, cf.n, cf.tol)
        aj = LogComplex.from_complex(cf.a_list[j - 1](z))
        total = lc_add(total, lc_mul(lc_mul(phi_j, aj), inv_exp))
    return total


def residual_lc(z_on_ray: complex, j0: int, cf: ConstructedF) -> LogComplex:
    """f(z) - a_{j0}(z) for z on ray j0, in log scale, computed without
    subtracting near-equal quantities.

    The j0 term collapses to E_inside(|z|) a_{j0}(z) / e^{|z|^n}; the other
    terms are the usual tiny cross contributions.
    """
    z = complex(z_on_ray)
    if not 1 <= j0 <= cf.n:
        raise ValueError("ray index out of range")
    if cf.n == 1:
        return LC_ZERO
    if z == 0:
        raise NotOnRayError("residual undefined at the origin")
    if abs(wrap_angle(cmath.phase(z) - cf.ray_angle(j0))) > cf.ang_tol:
        raise NotOnRayError("z is not on ray %d within angular tolerance" % j0)
    r = abs(z)
    e1 = _eval_E_raw(r, cf.n, cf.tol, want_inside_branch=True)
    a0 = cf.a_list[j0 - 1](z)
    total = lc_mul(
        LogComplex.from_complex(e1 * a0), LogComplex(-(r**cf.n), 0.0)
    )
    inv_exp = lc_exp_zn(z, cf.n).reciprocal()
    for j in range(1, cf.n + 1):
        if j == j0:
            continue
        phi_j = eval_phi(cf.rotation(j) * z, cf.n, cf.tol)
        aj = LogComplex.from_complex(cf.a_list[j - 1](z))
        total = lc_add(total, lc_mul(lc_mul(phi_j, aj), inv_exp))
    return total


def eval_residual(z_on_ray: complex, j0: int, cf: ConstructedF) -> complex:
    """f(z) - a_{j0}(z) as an ordinary complex (may underflow to 0 for
    very large radii; use residual_lc for the log-scale value)."""
    return residual_lc(z_on_ray, j0, cf).to_complex()
