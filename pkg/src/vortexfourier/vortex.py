"""Straight-line quantum vortices with a rational core profile.

The core density rho(r) of a unit-charge vortex solves

    rho'' + rho'/r - rho'^2 / (2 rho) - 2 rho / r^2 + 2 (1 - rho) rho = 0,
    rho(0) = 0,  rho(infinity) = 1,

in units where the healing length is 1.  We approximate rho by a diagonal
rational function in r^2 of degree q = 4,

    rho_q(r) = (a1 s + ... + aq s^q) / (1 + b1 s + ... + bq s^q),  s = r^2,

fixing aq = bq so rho -> 1 at infinity and choosing the remaining
coefficients so the leading 2q - 1 coefficients of the ODE residual's
expansion in powers of s vanish.  Substituting rho = P/Q and clearing
denominators turns those conditions into polynomial equations; eliminating
all unknowns but a1 leaves a degree-8 polynomial whose unique positive root
with a monotone bounded profile is selected.  The elimination runs in exact
rational arithmetic and the root is refined to 40 digits before rounding, so
the returned doubles are correctly rounded.

A vortex line through point p along unit direction d gets its phase from the
transverse plane: with u1 = normalize(d x e) for the coordinate axis e least
aligned with d, and u2 = d x u1, the field is
sqrt(rho(r)) exp(i charge atan2(w . u2, w . u1)) for the offset w = x - p.
Multiplying such fields superimposes vortices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .fourier import DomainBox, PhysicalField, regular_grid

__all__ = [
    "PadeProfile",
    "VortexSpec",
    "pade_coefficients",
    "vortex2d",
    "straight_vortex",
    "superimpose",
    "initial_field",
]


@dataclass(frozen=True)
class PadeProfile:
    """Diagonal rational core density: numer[i] multiplies s^(i+1), denom[i]
    multiplies s^(i+1) with unit constant term, s = r^2."""

    numer: tuple[float, ...]
    denom: tuple[float, ...]

    def __post_init__(self):
        if len(self.numer) != len(self.denom) or not self.numer:
            raise ValueError("numerator and denominator degrees must match")

    @property
    def degree(self) -> int:
        return len(self.numer)

    def density(self, r) -> np.ndarray:
        s = np.square(np.asarray(r, dtype=float))
        p = np.zeros_like(s)
        q = np.zeros_like(s)
        for cn, cd in zip(reversed(self.numer), reversed(self.denom)):
            p = (p + cn) * s
            q = (q + cd) * s
        return p / (q + 1.0)

    def amplitude(self, r) -> np.ndarray:
        return np.sqrt(self.density(r))


def _eliminate_degree8():
    """Reduce the residual-nullification system to (degree-8 poly in a1,
    substitution chain); exact arithmetic throughout."""
    import sympy as sp

    a1 = sp.symbols("a1")
    K = sp.QQ.frac_field(a1)
    (a1f,) = K.gens
    ring, s, *unknowns = sp.ring("s,a2,a3,a4,b1,b2,b3", K)

    a2, a3, a4, b1, b2, b3 = unknowns
    P = a1f * s + a2 * s**2 + a3 * s**3 + a4 * s**4
    Q = 1 + b1 * s + b2 * s**2 + b3 * s**3 + a4 * s**4
    Pp, Qp = P.diff(s), Q.diff(s)
    num = Pp * Q - P * Qp
    # ODE in s with rho = P/Q, multiplied through by Q^4 and 2 rho r^2
    R = (
        2 * s * P * Q * num
        + 2 * s**2 * P * ((Pp.diff(s) * Q - P * Qp.diff(s)) * Q - 2 * Qp * num)
        - s**2 * num**2
        - P**2 * Q**2
        + s * (Q - P) * P**2 * Q
    )

    def s_coeff(poly, j):
        out = ring.zero
        for monom, coef in poly.terms():
            if monom[0] == j:
                out += ring.from_terms([((0,) + monom[1:], coef)])
        return out

    # coefficients of s^0..s^2 vanish identically; the conditions are s^3..s^9
    eqs = [s_coeff(R, j) for j in range(3, 10)]

    def subst_rational(p, gi, nu, de):
        d = p.degree(gi)
        if d <= 0:
            return p
        buckets: dict[int, list] = {}
        for monom, coef in p.terms():
            rest = monom[:gi] + (0,) + monom[gi + 1 :]
            buckets.setdefault(monom[gi], []).append((rest, coef))
        out = ring.zero
        for e, terms in buckets.items():
            out += ring.from_terms(terms) * nu**e * de ** (d - e)
        return out

    chain = []  # (gen index, numerator, denominator); later entries resolve first
    for eq, target in zip(eqs[:-1], unknowns):
        for gi, nu, de in chain:
            eq = subst_rational(eq, gi, nu, de)
        ti = ring.gens.index(target)
        if eq.degree(ti) != 1:
            raise RuntimeError("residual condition unexpectedly nonlinear")
        lin = ring.zero
        const = ring.zero
        for monom, coef in eq.terms():
            rest = monom[:ti] + (0,) + monom[ti + 1 :]
            term = ring.from_terms([(rest, coef)])
            if monom[ti] == 1:
                lin += term
            else:
                const += term
        chain.append((ti, -const, lin))

    final = eqs[-1]
    for gi, nu, de in chain:
        final = subst_rational(final, gi, nu, de)
    if not final.is_ground:
        raise RuntimeError("elimination left free unknowns")
    numer_poly = sp.Poly(final.coeff(1).numer.as_expr(), a1)

    deg8 = [f for f, _ in numer_poly.factor_list()[1] if f.degree() == 8]
    if len(deg8) != 1:
        raise RuntimeError("expected exactly one degree-8 factor")
    return a1, ring, deg8[0], chain


def _profile_admissible(numer, denom, r_max=20.0) -> bool:
    prof = PadeProfile(tuple(numer), tuple(denom))
    r = np.linspace(0.0, r_max, 4001)
    s = r * r
    q = np.zeros_like(s)
    for cd in reversed(prof.denom):
        q = (q + cd) * s
    q += 1.0
    if np.any(q <= 0):
        return False
    rho = prof.density(r)
    return bool(
        np.all(np.diff(rho) > 0) and np.all(rho >= 0) and np.all(rho <= 1.0) and rho[-1] > 0.9
    )


@lru_cache(maxsize=None)
def pade_coefficients(q: int = 4) -> PadeProfile:
    """Derive the degree-q core profile; only q = 4 is supported.

    Runs the exact elimination, picks the admissible root of the degree-8
    polynomial, back-substitutes at 40 digits, rounds to double.
    """
    if q != 4:
        raise ValueError("only the degree-4 profile is implemented")
    import sympy as sp

    a1sym, ring, deg8, chain = _eliminate_degree8()

    candidates = [r for r in sp.nroots(deg8, n=40) if r.is_real and r > 0]
    admissible = []
    for root in candidates:
        root_f = sp.Float(root, 40)

        def eval_ground(coef):
            # coef lives in QQ(a1); evaluate numerator/denominator at the root
            cn = sp.Poly(coef.numer.as_expr(), a1sym).eval(root_f)
            cd = sp.Poly(coef.denom.as_expr(), a1sym).eval(root_f)
            return cn / cd

        def eval_poly(p, got):
            tot = sp.Float(0, 40)
            for monom, coef in p.terms():
                term = eval_ground(coef)
                for gi, e in enumerate(monom):
                    if e:
                        term *= got[gi] ** e
                tot += term
            return tot

        got: dict[int, object] = {}
        for gi, nu, de in reversed(chain):
            got[gi] = eval_poly(nu, got) / eval_poly(de, got)

        a2, a3, a4, b1, b2, b3 = (float(got[ring.gens.index(g)]) for g in ring.gens[1:])
        numer = (float(root_f), a2, a3, a4)
        denom = (b1, b2, b3, a4)
        if _profile_admissible(numer, denom):
            admissible.append(PadeProfile(numer, denom))
    if len(admissible) != 1:
        raise RuntimeError(f"expected one admissible root, found {len(admissible)}")
    return admissible[0]


@dataclass(frozen=True)
class VortexSpec:
    """A straight vortex line: a point on the line, its direction, and the
    integer winding (sign follows the right-hand rule about direction)."""

    position: tuple[float, float, float]
    direction: tuple[float, float, float]
    charge: int = 1

    def __post_init__(self):
        d = np.asarray(self.direction, dtype=float)
        if not np.all(np.isfinite(d)) or np.linalg.norm(d) == 0:
            raise ValueError("vortex direction must be a nonzero finite vector")
        if self.charge == 0 or self.charge != int(self.charge):
            raise ValueError("vortex charge must be a nonzero integer")


def vortex2d(s1, s2, profile: PadeProfile, charge: int = 1) -> np.ndarray:
    """Planar vortex field sqrt(rho(r)) exp(i charge theta) at transverse
    coordinates (s1, s2); zero at the core point."""
    s1 = np.asarray(s1, dtype=float)
    s2 = np.asarray(s2, dtype=float)
    amp = profile.amplitude(np.hypot(s1, s2))
    return amp * np.exp(1j * charge * np.arctan2(s2, s1))


def _transverse_frame(direction) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    d = np.asarray(direction, dtype=float)
    d = d / np.linalg.norm(d)
    axis = int(np.argmin(np.abs(d)))  # ties resolve to the lowest index
    e = np.zeros(3)
    e[axis] = 1.0
    u1 = np.cross(d, e)
    u1 /= np.linalg.norm(u1)
    u2 = np.cross(d, u1)
    return u1, u2, d


def straight_vortex(
    coords: list[np.ndarray],
    vortex: VortexSpec,
    profile: PadeProfile | None = None,
) -> np.ndarray:
    """Extrude the planar vortex along a straight line.

    coords are the three coordinate vectors of a tensor grid; the result has
    shape (len(coords[0]), len(coords[1]), len(coords[2])).  The value is
    constant along the line direction, so the grid tensor itself is never
    built: only the two transverse coordinate fields are.
    """
    profile = profile or pade_coefficients()
    u1, u2, _ = _transverse_frame(vortex.direction)
    p = vortex.position
    w = [np.asarray(coords[d], dtype=float) - p[d] for d in range(3)]
    s1 = (
        w[0][:, None, None] * u1[0]
        + w[1][None, :, None] * u1[1]
        + w[2][None, None, :] * u1[2]
    )
    s2 = (
        w[0][:, None, None] * u2[0]
        + w[1][None, :, None] * u2[1]
        + w[2][None, None, :] * u2[2]
    )
    return vortex2d(s1, s2, profile, vortex.charge)


def superimpose(fields: list[np.ndarray]) -> np.ndarray:
    """Pointwise product of identically shaped complex fields."""
    if not fields:
        raise ValueError("need at least one field to superimpose")
    out = np.asarray(fields[0], dtype=np.complex128)
    for f in fields[1:]:
        f = np.asarray(f)
        if f.shape != out.shape:
            raise ValueError(f"field shapes differ: {f.shape} vs {out.shape}")
        out = out * f
    return out


def initial_field(
    domain: DomainBox,
    size,
    vortices: list[VortexSpec],
    profile: PadeProfile | None = None,
) -> PhysicalField:
    """Uniform unit condensate threaded by straight vortices, sampled on the
    regular grid of the physical domain."""
    coords = regular_grid(domain, size)
    if not vortices:
        from .fourier import GridSize

        shape = size.n if isinstance(size, GridSize) else tuple(size)
        return PhysicalField(domain, np.ones(shape, dtype=np.complex128))
    profile = profile or pade_coefficients()
    values = superimpose([straight_vortex(coords, v, profile) for v in vortices])
    return PhysicalField(domain, values)
