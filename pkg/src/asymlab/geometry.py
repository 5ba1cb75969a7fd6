"""Segmental paths, the domains between adjacent paths, angular measures,
and the harmonic-measure/growth bound formulas attached to them.

Unbounded domains are handled by closing the two bounding paths with a far
circular arc and using winding-number membership; all geometry stays on
polyline data.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass

import numpy as np

from .logcx import wrap_angle

TWO_PI = 2.0 * math.pi
_DEGEN_EPS = 1e-12
_ARC_STEP = TWO_PI / 720.0


class DegenerateRadiusError(RuntimeError):
    """Circle of this radius is tangent to a segment or hits a vertex."""


class LabelConflictError(ValueError):
    """Two paths meet beyond the disk but carry different labels."""


class EmptySliceError(ValueError):
    """Requested domain does not meet the circle of this radius."""


@dataclass(frozen=True)
class SegmentalPath:
    """Polyline from 0 plus a terminal ray from the last vertex.

    vertices[0] must be 0; the path continues from vertices[-1] in
    direction terminal_direction forever.
    """

    vertices: tuple
    terminal_direction: complex

    def __init__(self, vertices, terminal_direction):
        vs = tuple(complex(v) for v in vertices)
        if not vs or vs[0] != 0:
            raise ValueError("path must start at the origin")
        u = complex(terminal_direction)
        if u == 0:
            raise ValueError("terminal direction must be nonzero")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "terminal_direction", u / abs(u))

    @staticmethod
    def ray(angle: float) -> "SegmentalPath":
        return SegmentalPath((0j,), cmath.exp(1j * angle))

    @property
    def terminal_angle(self) -> float:
        return wrap_angle(cmath.phase(self.terminal_direction))

    @property
    def max_vertex_radius(self) -> float:
        return max(abs(v) for v in self.vertices)

    def segments(self) -> list:
        return [
            (self.vertices[i], self.vertices[i + 1])
            for i in range(len(self.vertices) - 1)
        ]

    def elements(self, reach: float) -> list:
        """Segments plus the terminal ray truncated where it leaves the
        disk of radius `reach` (as a long segment)."""
        out = self.segments()
        a = self.vertices[-1]
        length = reach + abs(a) + 1.0
        out.append((a, a + length * self.terminal_direction))
        return out

    def exit_point(self, radius: float) -> complex:
        """Point where the terminal ray crosses |z| = radius (requires the
        ray origin inside that circle)."""
        a = self.vertices[-1]
        if abs(a) >= radius:
            raise ValueError("radius must exceed the last vertex radius")
        u = self.terminal_direction
        b = (a * u.conjugate()).real
        s = -b + math.sqrt(b * b + radius**2 - abs(a) ** 2)
        return a + s * u

    def circle_crossing_angles(self, t: float) -> list:
        """Angles of intersections of the path with |z| = t; raises
        DegenerateRadiusError on tangencies or vertices at radius t."""
        if t <= 0:
            raise ValueError("radius must be positive")
        for v in self.vertices[1:]:
            if abs(abs(v) - t) < _DEGEN_EPS * max(t, 1.0):
                raise DegenerateRadiusError("vertex at radius %g" % t)
        if abs(abs(self.vertices[-1]) - t) < _DEGEN_EPS * max(t, 1.0):
            raise DegenerateRadiusError("ray origin at radius %g" % t)
        angles = []
        for a, b in self.elements(t):
            d = b - a
            qa = abs(d) ** 2
            qb = 2.0 * (a * d.conjugate()).real
            qc = abs(a) ** 2 - t * t
            disc = qb * qb - 4.0 * qa * qc
            scale = max(qa * t * t, 1e-300)
            if abs(disc) < _DEGEN_EPS * scale:
                if disc >= 0:
                    raise DegenerateRadiusError("circle tangent near radius %g" % t)
                continue
            if disc < 0:
                continue
            root = math.sqrt(disc)
            for s in ((-qb - root) / (2 * qa), (-qb + root) / (2 * qa)):
                if -_DEGEN_EPS < s < _DEGEN_EPS or abs(s - 1.0) < _DEGEN_EPS:
                    # crossing at a shared vertex is caught above; at the
                    # truncation end it is beyond reach and ignorable
                    if abs(a + s * d) <= t * (1 + 1e-9) and s < 0.5:
                        raise DegenerateRadiusError("crossing at segment end")
                    continue
                if 0.0 < s < 1.0:
                    angles.append(wrap_angle(cmath.phase(a + s * d)))
        return angles

    def is_simple(self) -> bool:
        els = self.elements(4.0 * self.max_vertex_radius + 8.0)
        for i in range(len(els)):
            for k in range(i + 1, len(els)):
                pts = _intersect_elements(els[i], els[k])
                if not pts:
                    continue
                if k == i + 1:
                    # adjacent elements share exactly one endpoint
                    shared = els[i][1]
                    if all(abs(p - shared) < 1e-12 for p in pts):
                        continue
                return False
        return True


@dataclass(frozen=True)
class PathSystem:
    """n segmental paths in counterclockwise order; domain j sits between
    path j and path j+1 (1-indexed, cyclic)."""

    paths: tuple
    labels: tuple

    def __init__(self, paths, labels=None):
        paths = tuple(paths)
        if not paths:
            raise ValueError("need at least one path")
        if labels is None:
            labels = tuple("a%d" % i for i in range(1, len(paths) + 1))
        labels = tuple(str(s) for s in labels)
        if len(labels) != len(paths):
            raise ValueError("one label per path")
        if len(paths) > 1:
            # counterclockwise = terminal angles strictly increasing when
            # the cycle is rotated to start at its smallest angle
            args = [p.terminal_angle for p in paths]
            k0 = min(range(len(args)), key=lambda i: args[i])
            rot = args[k0:] + args[:k0]
            if any(a >= b for a, b in zip(rot, rot[1:])):
                raise ValueError("paths must be in counterclockwise order")
        object.__setattr__(self, "paths", paths)
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return len(self.paths)

    def domain_boundary(self, j: int) -> tuple:
        """The two paths bounding domain j (1-indexed)."""
        if not 1 <= j <= self.n:
            raise ValueError("domain index out of range")
        return self.paths[j - 1], self.paths[j % self.n]

    @property
    def max_vertex_radius(self) -> float:
        return max(p.max_vertex_radius for p in self.paths)

    def to_json_dict(self) -> dict:
        return {
            "format": "pathsystem/1",
            "paths": [
                {
                    "vertices": [[v.real, v.imag] for v in p.vertices],
                    "terminal_direction": p.terminal_angle,
                    "label": lab,
                }
                for p, lab in zip(self.paths, self.labels)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    @staticmethod
    def from_json_dict(d: dict) -> "PathSystem":
        if d.get("format") != "pathsystem/1":
            raise ValueError("not a pathsystem/1 document")
        paths, labels = [], []
        for entry in d["paths"]:
            vs = [complex(re, im) for re, im in entry["vertices"]]
            paths.append(
                SegmentalPath(vs, cmath.exp(1j * float(entry["terminal_direction"])))
            )
            labels.append(entry.get("label", "a%d" % (len(labels) + 1)))
        return PathSystem(tuple(paths), tuple(labels))

    @staticmethod
    def from_json(text: str) -> "PathSystem":
        return PathSystem.from_json_dict(json.loads(text))

    @staticmethod
    def equally_spaced_rays(n: int, labels=None, base_angle: float | None = None) -> "PathSystem":
        if base_angle is None:
            base_angle = TWO_PI / n
        paths = tuple(
            SegmentalPath.ray(wrap_angle(base_angle + TWO_PI * k / n)) for k in range(n)
        )
        return PathSystem(paths, labels)


@dataclass(frozen=True)
class AngularSlice:
    """Arcs of a circle of radius t inside one domain; phi is the total
    angular measure (radians)."""

    t: float
    arcs: tuple
    phi: float

    def __post_init__(self):
        if not -1e-12 <= self.phi <= TWO_PI + 1e-12:
            raise ValueError("phi out of [0, 2 pi]")


@dataclass(frozen=True)
class KappaParams:
    """Exponents rho < kappa1 < kappa2 < kappa recorded for the growth
    hypothesis checker."""

    kappa: float = 0.5
    kappa1: float = 0.25
    kappa2: float = 0.4

    def __post_init__(self):
        if not 0 < self.kappa1 < self.kappa2 < self.kappa:
            raise ValueError("need 0 < kappa1 < kappa2 < kappa")


@dataclass(frozen=True)
class CarlemanReport:
    R1: float
    R: float
    integral_I: float
    omega_bound: float
    logM_lower: float
    kappa: float
    kappa1: float
    kappa2: float

    def to_json_dict(self) -> dict:
        return {
            "R1": self.R1,
            "R": self.R,
            "integral_I": self.integral_I,
            "omega_bound": self.omega_bound,
            "logM_lower": self.logM_lower,
            "kappa": self.kappa,
            "kappa1": self.kappa1,
            "kappa2": self.kappa2,
        }


# ---------------------------------------------------------------------------
# membership

def _domain_polygon(sys: PathSystem, j: int, r_big: float) -> np.ndarray:
    """Closed polygon approximating domain j clipped at radius r_big:
    out along path j, counterclockwise far arc, back along path j+1."""
    g1, g2 = sys.domain_boundary(j)
    if r_big <= 2.0 * max(g1.max_vertex_radius, g2.max_vertex_radius, 0.25):
        raise ValueError("closing radius too small for this system")
    pts = list(g1.vertices)
    e1 = g1.exit_point(r_big)
    e2 = g2.exit_point(r_big)
    pts.append(e1)
    th1 = cmath.phase(e1)
    gap = (cmath.phase(e2) - th1) % TWO_PI
    if gap < 1e-12:
        gap = TWO_PI
    m = max(8, int(math.ceil(gap / _ARC_STEP)))
    for k in range(1, m):
        pts.append(r_big * cmath.exp(1j * (th1 + gap * k / m)))
    pts.append(e2)
    pts.extend(reversed(g2.vertices))
    arr = np.array(pts, dtype=complex)
    return np.column_stack([arr.real, arr.imag])


def _winding_number(poly: np.ndarray, p: complex) -> int:
    x, y = p.real, p.imag
    x0, y0 = poly[:, 0], poly[:, 1]
    x1, y1 = np.roll(x0, -1), np.roll(y0, -1)
    # standard crossing-with-orientation count
    up = (y0 <= y) & (y1 > y)
    dn = (y0 > y) & (y1 <= y)
    cross = (x1 - x0) * (y - y0) - (x - x0) * (y1 - y0)
    return int(np.sum(up & (cross > 0)) - np.sum(dn & (cross < 0)))


def point_in_domain(sys: PathSystem, j: int, p: complex) -> bool:
    """Membership in domain j via winding number of the closed polygon at
    radius 4 * max(|p|, vertex reach)."""
    p = complex(p)
    r_big = 4.0 * max(abs(p), sys.max_vertex_radius, 1.0)
    poly = _domain_polygon(sys, j, r_big)
    return _winding_number(poly, p) != 0


# ---------------------------------------------------------------------------
# angular measure and the growth-bound formulas

def angular_measure(sys: PathSystem, j: int, t: float) -> AngularSlice:
    """Arcs of |z| = t lying in domain j, found from boundary crossings
    plus a midpoint membership test."""
    g1, g2 = sys.domain_boundary(j)
    angles = list(g1.circle_crossing_angles(t))
    if g2 is not g1:
        angles.extend(g2.circle_crossing_angles(t))
    r_big = 4.0 * max(t, sys.max_vertex_radius, 1.0)
    poly = _domain_polygon(sys, j, r_big)

    def inside(theta):
        return _winding_number(poly, t * cmath.exp(1j * theta)) != 0

    if not angles:
        # circle is entirely inside or entirely outside the domain
        full = inside(0.123456)  # arbitrary probe angle off any crossing
        arcs = ((-math.pi, math.pi),) if full else ()
        return AngularSlice(t, arcs, TWO_PI if full else 0.0)
    angles.sort()
    arcs = []
    total = 0.0
    for i, th in enumerate(angles):
        th_next = angles[(i + 1) % len(angles)]
        if i + 1 == len(angles):
            th_next += TWO_PI
        if th_next - th < 1e-15:
            continue
        mid = 0.5 * (th + th_next)
        if inside(mid):
            arcs.append((th, th_next))
            total += th_next - th
    total = min(total, TWO_PI)
    return AngularSlice(t, tuple(arcs), total)


def carleman_integral(
    sys: PathSystem, j: int, R1: float, R: float, tol: float = 1e-10
) -> float:
    """Adaptive integral of 1/(t * Phi_j(t)) over [R1, R], with jitter at
    degenerate radii."""
    if not 0 < R1 <= R:
        raise ValueError("need 0 < R1 <= R")
    if R1 == R:
        return 0.0

    def phi_at(t):
        for k in (0, 1, -1, 2, -2, 3, -3):
            try:
                return angular_measure(sys, j, t * (1.0 + 1e-9 * k)).phi
            except DegenerateRadiusError:
                continue
        raise DegenerateRadiusError("jitter exhausted at t=%g" % t)

    def integrand(ts):
        ts = np.atleast_1d(ts)
        out = np.empty(ts.shape, dtype=float)
        for i, tv in enumerate(ts):
            t = float(np.real(tv))
            phi = phi_at(t)
            if phi <= 0:
                raise EmptySliceError("domain %d misses the circle at t=%g" % (j, t))
            out[i] = 1.0 / (t * phi)
        return out

    from .quadrature import integrate_segment

    return float(integrate_segment(integrand, R1, R, tol).value.real)


def carleman_report(
    sys: PathSystem,
    j: int,
    R1: float,
    R: float,
    kappa_params: KappaParams | None = None,
    tol: float = 1e-10,
) -> CarlemanReport:
    """Harmonic-measure upper bound and max-modulus lower bound for domain
    j between radii R1 and R; the two are exact reciprocals."""
    kp = kappa_params or KappaParams()
    integral = carleman_integral(sys, j, R1, R, tol)
    om0 = (8.0 / math.pi) * math.exp(-math.pi * integral)
    # the two bounds are exact reciprocals; nudge within one ulp so the
    # stored floats multiply to exactly 1
    omega_bound = logm_lower = None
    for om in (om0, math.nextafter(om0, math.inf), math.nextafter(om0, 0.0)):
        for lm in (1.0 / om, math.nextafter(1.0 / om, math.inf), math.nextafter(1.0 / om, 0.0)):
            if om * lm == 1.0:
                omega_bound, logm_lower = om, lm
                break
        if omega_bound is not None:
            break
    if omega_bound is None:  # pragma: no cover - not reachable in practice
        omega_bound, logm_lower = om0, 1.0 / om0
    return CarlemanReport(
        R1=R1,
        R=R,
        integral_I=integral,
        omega_bound=omega_bound,
        logM_lower=logm_lower,
        kappa=kp.kappa,
        kappa1=kp.kappa1,
        kappa2=kp.kappa2,
    )


def check_sector_inequality(sys: PathSystem, t: float):
    """Cauchy-Schwarz bound sum_j 1/Phi_j(t) >= n^2 / (2 pi); returns
    (lhs, rhs, holds)."""
    n = sys.n
    lhs = 0.0
    for j in range(1, n + 1):
        phi = angular_measure(sys, j, t).phi
        if phi <= 0:
            raise EmptySliceError("domain %d misses the circle at t=%g" % (j, t))
        lhs += 1.0 / phi
    rhs = n * n / TWO_PI
    return lhs, rhs, lhs >= rhs * (1.0 - 1e-9)


def a0_constant(kappa1: float) -> float:
    """Constant in the closed-form bound for the harmonic majorant of
    t^{kappa1}: 20 / ((1/2 - kappa1) 4^{1/2 - kappa1})."""
    if not 0.0 < kappa1 < 0.5:
        raise ValueError("kappa1 must lie in (0, 1/2)")
    e = 0.5 - kappa1
    return 20.0 / (e * 4.0**e)


# ---------------------------------------------------------------------------
# collection normalization

def _intersect_elements(e1, e2, eps: float = 1e-12) -> list:
    """Intersection points of two segments (complex endpoint pairs).
    Collinear overlaps report both overlap endpoints."""
    a, b = e1
    c, d = e2
    r = b - a
    s = d - c
    denom = (r.conjugate() * s).imag  # cross(r, s)
    qp = c - a
    if abs(denom) < eps * max(abs(r) * abs(s), 1e-30):
        if abs((qp.conjugate() * r).imag) > eps * max(abs(qp) * abs(r), 1e-30):
            return []  # parallel, not collinear
        # collinear: project onto r
        rr = (r.conjugate() * r).real
        t0 = (qp.conjugate() * r).real / rr
        t1 = t0 + (s.conjugate() * r).real / rr
        lo, hi = max(0.0, min(t0, t1)), min(1.0, max(t0, t1))
        if lo > hi:
            return []
        return [a + lo * r, a + hi * r]
    t = (qp.conjugate() * s).imag / denom
    u = (qp.conjugate() * r).imag / denom
    if -eps <= t <= 1 + eps and -eps <= u <= 1 + eps:
        return [a + t * r]
    return []


def paths_intersect_beyond(p1: SegmentalPath, p2: SegmentalPath, disk_radius: float) -> bool:
    """True when the two paths share a point strictly outside the disk.
    Terminal rays are compared as long truncated segments whose reach
    covers any possible finite crossing of the polyline data."""
    reach = 4.0 * (disk_radius + p1.max_vertex_radius + p2.max_vertex_radius + 1.0)
    # parallel terminal rays never meet beyond any finite reach unless
    # collinear, which the overlap branch of the element test reports.
    for e1 in p1.elements(reach):
        for e2 in p2.elements(reach):
            for pt in _intersect_elements(e1, e2):
                if abs(pt) > disk_radius * (1.0 + 1e-12):
                    return True
    return False


def normalize_collection(paths, labels, disk_radius: float) -> PathSystem:
    """Prune a labelled path collection to one with pairwise crossings only
    inside the disk and distinct labels on cyclically adjacent paths.

    Paths crossing beyond the disk must share a label (else
    LabelConflictError); one of each such pair is deleted, then one of each
    adjacent equal-label pair, repeated to a fixpoint.
    """
    paths = list(paths)
    labels = [str(s) for s in labels]
    if len(paths) != len(labels):
        raise ValueError("one label per path")
    # stage 1: far crossings
    changed = True
    while changed:
        changed = False
        for i in range(len(paths)):
            for k in range(i + 1, len(paths)):
                if paths_intersect_beyond(paths[i], paths[k], disk_radius):
                    if labels[i] != labels[k]:
                        raise LabelConflictError(
                            "paths %d and %d cross beyond the disk with labels "
                            "%r vs %r" % (i, k, labels[i], labels[k])
                        )
                    del paths[k], labels[k]
                    changed = True
                    break
            if changed:
                break
    # counterclockwise order
    order = sorted(range(len(paths)), key=lambda i: paths[i].terminal_angle)
    paths = [paths[i] for i in order]
    labels = [labels[i] for i in order]
    # stage 2: adjacent equal labels (cyclically)
    changed = True
    while changed and len(paths) > 1:
        changed = False
        for i in range(len(paths)):
            k = (i + 1) % len(paths)
            if labels[i] == labels[k]:
                del paths[k], labels[k]
                changed = True
                break
    return PathSystem(tuple(paths), tuple(labels))
