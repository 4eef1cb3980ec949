"""Ruled-surface models and their numerical lattice Z*S + Z*f.

Two explicit families are supported:

* Decomposable -- the projective bundle of O_C (+) O_C(-delta) for an
  effective divisor delta whose support avoids rational points; the
  section class S has S^2 = deg E = -deg(delta).

* ElmOfProduct -- the elementary transform of C x P^1 centered at a point
  of degree d >= 2 whose fiber coordinate is non-rational; the lattice is
  generated by S = C0 - E (so S^2 = -d) and the fiber class.

Intersection numbers, canonical classes, Euler characteristics, rational
points, the class map of an elementary transform, and the Segre-invariant
values and bounds all live here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf import extend
from .curve import CurveModel, ClosedPoint, DivisorOnCurve
from .rrspace import evaluate, functions_up_to_degree, PoleError

DECOMPOSABLE = "decomposable"
ELM = "elm"

INFTY = "inf"   # fiber coordinate marker for the point at infinity of P^1


@dataclass(frozen=True)
class NumClass:
    """a*S + b*f in the numerical lattice of a ruled surface."""
    a: int
    b: int

    def __add__(self, other):
        return NumClass(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        return NumClass(self.a - other.a, self.b - other.b)

    def __rmul__(self, k: int):
        return NumClass(k * self.a, k * self.b)

    def __str__(self):
        return f"{self.a}S+{self.b}f"


class RuledSurfaceModel:
    __slots__ = ("variant", "curve", "delta", "base_point", "fiber_coord")

    def __init__(self, variant, curve: CurveModel, delta=None,
                 base_point=None, fiber_coord=None):
        self.variant = variant
        self.curve = curve
        self.delta = delta
        self.base_point = base_point
        self.fiber_coord = fiber_coord
        if variant == DECOMPOSABLE:
            if delta is None:
                raise ValueError("decomposable surface needs a divisor delta")
            if not (delta.is_effective() or delta.degree() == 0):
                raise ValueError("delta must be effective")
            # rational points in supp(delta) are fine for the surface itself;
            # the code builders re-check the support against the evaluation set
        elif variant == ELM:
            if base_point is None or fiber_coord is None:
                raise ValueError("elm surface needs a center (base point, fiber)")
            d = base_point.degree
            if base_point.is_infinity or d < 2:
                raise ValueError("the center must have degree >= 2")
            ext = extend(curve.spec, d)
            orb = 1
            t = ext.frob_i(fiber_coord)
            while t != fiber_coord:
                orb += 1
                t = ext.frob_i(t)
            if orb < 2:
                raise ValueError("fiber coordinate of the center is rational; "
                                 "its image on P^1 must have degree >= 2")
            if d % orb != 0:
                raise ValueError("center orbit size is not the declared degree")
        else:
            raise ValueError(f"unknown surface variant {variant!r}")

    # -- invariants of the lattice

    @property
    def e(self) -> int:
        """deg(delta) for decomposable surfaces, the center degree for elm."""
        if self.variant == DECOMPOSABLE:
            return self.delta.degree()
        return self.base_point.degree

    @property
    def deg_sheaf(self) -> int:
        return -self.e

    @property
    def s_squared(self) -> int:
        return self.deg_sheaf

    @property
    def genus(self) -> int:
        return self.curve.genus

    @property
    def q(self) -> int:
        return self.curve.spec.order

    def __repr__(self):
        if self.variant == DECOMPOSABLE:
            return f"Decomposable(e={self.e}, {self.curve!r})"
        return f"Elm(d={self.e}, {self.curve!r})"


def surface_decomposable(curve, delta: DivisorOnCurve) -> RuledSurfaceModel:
    return RuledSurfaceModel(DECOMPOSABLE, curve, delta=delta)


def surface_elm_product(curve, base_point: ClosedPoint,
                        fiber_coord: int) -> RuledSurfaceModel:
    return RuledSurfaceModel(ELM, curve, base_point=base_point,
                             fiber_coord=fiber_coord)


def surface_trivial(curve) -> RuledSurfaceModel:
    """C x P^1 as the decomposable surface with delta = 0."""
    return RuledSurfaceModel(DECOMPOSABLE, curve, delta=DivisorOnCurve(curve))


# ---------------------------------------------------------------------------

def intersect(surface: RuledSurfaceModel, c1: NumClass, c2: NumClass) -> int:
    """Intersection number with S^2 = deg E, f^2 = 0, S.f = 1."""
    return c1.a * c2.a * surface.s_squared + c1.a * c2.b + c2.a * c1.b


def canonical_class(surface: RuledSurfaceModel) -> NumClass:
    """K = -2S + (2g - 2 + deg E) f in the identified lattice."""
    return NumClass(-2, 2 * surface.genus - 2 + surface.deg_sheaf)


def euler_char(surface: RuledSurfaceModel, D: NumClass) -> int:
    """chi(O_X(D)) = (a+1)(b+1-g) - c*a(a+1)/2, c = e or d.

    Cross-checked against the Riemann-Roch path chi = D.(D-K)/2 + 1 - g.
    """
    a, b, g, c = D.a, D.b, surface.genus, surface.e
    chi = (a + 1) * (b + 1 - g) - c * a * (a + 1) // 2
    k = canonical_class(surface)
    dd = intersect(surface, D, D - k)
    assert dd % 2 == 0
    assert chi == dd // 2 + 1 - g, "Euler characteristic paths disagree"
    return chi


def surface_rational_points(surface: RuledSurfaceModel):
    """The (q+1)*N rational points as (rational base point, fiber coord).

    Fiber coordinates run over the encodings of F_q in ascending order with
    the point at infinity last.  For an elm surface these are the points of
    C x P^1 (the center has degree >= 2, so no rational point is touched).
    """
    q = surface.q
    fibers = list(range(q)) + [INFTY]
    out = []
    for p in surface.curve.rational_points():
        for u in fibers:
            out.append((p, u))
    return out


def elm_class_map(a_prime: int, b_prime: int, m: int, d: int,
                  self_int_before: int | None = None):
    """Class of the image of the strict transform of a'C0 + b'f under an
    elementary transform with a degree-d center of multiplicity m.

    Returns (NumClass on the transformed surface, its self-intersection
    there, equal to D^2 + a'd(a' - 2m)).  The source self-intersection D^2
    defaults to 2a'b', the value on the product surface; pass it explicitly
    when transforming away from a non-product source (e.g. for the inverse
    transform, whose center is the image of the contracted fiber).
    """
    if not 0 <= m <= a_prime:
        raise ValueError("multiplicity must satisfy 0 <= m <= a'")
    cls = NumClass(a_prime, b_prime + d * (a_prime - m))
    if self_int_before is None:
        self_int_before = 2 * a_prime * b_prime  # C0^2 = 0 on the product
    self_int = self_int_before + a_prime * d * (a_prime - 2 * m)
    return cls, self_int


def segre_decomposable(surface: RuledSurfaceModel):
    """Exact (s_g, s_a) of a decomposable surface: both equal -deg(delta)."""
    if surface.variant != DECOMPOSABLE:
        raise ValueError("exact Segre invariants require the decomposable variant")
    e = surface.e
    return (-e, -e) if e > 0 else (0, 0)


def segre_lower_bound_elm(surface: RuledSurfaceModel, dmax: int,
                          cap: int = 10 ** 6):
    """Graph-avoidance lower bound for s_a of an elm surface.

    Enumerates every function of degree <= dmax on the base curve, finds the
    largest d* <= dmax such that no function of degree <= d* has its graph
    through the center, and returns (min{e, 2(d*+1) - e}, d*).
    """
    if surface.variant != ELM:
        raise ValueError("graph-avoidance bound requires the elm variant")
    curve = surface.curve
    center = surface.base_point
    fc = surface.fiber_coord
    funcs = functions_up_to_degree(curve, dmax, cap=cap)
    blocked = set()
    for f, deg_f in funcs.values():
        try:
            val = evaluate(f, center)
        except PoleError:
            continue  # the graph passes through (p, infinity), not (p, fc)
        if val.val == fc:
            blocked.add(deg_f)
    dstar = dmax if not blocked else min(blocked) - 1
    e = surface.e
    return min(e, 2 * (dstar + 1) - e), dstar


def segre_upper_bounds(g: int, N: int, q: int) -> int:
    """min(2g, refinement): the 2g bound, refined by the rational-point count.

    If N > max{(t+1)(q^2+1), t(q^2+q+1)} for some t >= 0, then s_a < 2(g-t);
    as an integer bound, s_a <= 2(g-t) - 1 for the largest such t.
    """
    best_t = None
    t = 0
    while N > max((t + 1) * (q * q + 1), t * (q * q + q + 1)):
        best_t = t
        t += 1
    if best_t is None:
        return 2 * g
    return min(2 * g, 2 * (g - best_t) - 1)
