"""Curve models over finite fields: the projective line and nonsingular
Weierstrass elliptic curves, with closed-point enumeration, divisors, the
chord-tangent group law, and class numbers.

Geometric points are coordinate pairs encoded as integers in an extension
field; a closed point is a Frobenius orbit, stored through its canonical
representative (the orbit element with the least coordinate encoding).
"""

from __future__ import annotations

from .gf import FieldSpec, extend, solve_quadratic

P1 = "p1"
ELLIPTIC = "elliptic"


def _isqrt(n: int) -> int:
    x = int(n ** 0.5)
    while x * x > n:
        x -= 1
    while (x + 1) * (x + 1) <= n:
        x += 1
    return x


class CurveModel:
    """A projective line or a nonsingular long-Weierstrass elliptic curve.

    Elliptic:  y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6  over spec.
    """

    __slots__ = ("kind", "spec", "a", "genus", "_coeff_cache", "_count_cache",
                 "_closed_cache", "_rational")

    def __init__(self, kind: str, spec: FieldSpec, coefficients=None):
        if kind not in (P1, ELLIPTIC):
            raise ValueError(f"unknown curve kind {kind!r}")
        if spec.base_card != spec.order:
            raise ValueError("curve base field must be a ground field "
                             "(build it with field_create, not extend)")
        self.kind = kind
        self.spec = spec
        self._coeff_cache = {}
        self._count_cache = {}
        self._closed_cache = {}
        self._rational = None
        if kind == P1:
            self.a = ()
            self.genus = 0
        else:
            if coefficients is None or len(coefficients) != 5:
                raise ValueError("elliptic curve needs coefficients (a1,a2,a3,a4,a6)")
            self.a = tuple(c % spec.order if isinstance(c, int) else c.val
                           for c in coefficients)
            self.genus = 1
            if self.discriminant() == 0:
                raise ValueError("singular Weierstrass equation (zero discriminant)")

    def discriminant(self) -> int:
        s = self.spec
        a1, a2, a3, a4, a6 = self.a

        def ct(n):  # small integer constant in the field
            return n % s.p

        b2 = s.add_i(s.mul_i(a1, a1), s.mul_i(ct(4), a2))
        b4 = s.add_i(s.mul_i(ct(2), a4), s.mul_i(a1, a3))
        b6 = s.add_i(s.mul_i(a3, a3), s.mul_i(ct(4), a6))
        b8 = s.add_i(
            s.add_i(s.mul_i(s.mul_i(a1, a1), a6), s.mul_i(ct(4), s.mul_i(a2, a6))),
            s.add_i(s.neg_i(s.mul_i(a1, s.mul_i(a3, a4))),
                    s.sub_i(s.mul_i(a2, s.mul_i(a3, a3)), s.mul_i(a4, a4))))
        t1 = s.neg_i(s.mul_i(s.mul_i(b2, b2), b8))
        t2 = s.neg_i(s.mul_i(ct(8), s.mul_i(b4, s.mul_i(b4, b4))))
        t3 = s.neg_i(s.mul_i(ct(27), s.mul_i(b6, b6)))
        t4 = s.mul_i(ct(9), s.mul_i(b2, s.mul_i(b4, b6)))
        return s.add_i(s.add_i(t1, t2), s.add_i(t3, t4))

    # -- coefficients embedded in an extension

    def coeffs_in(self, ext: FieldSpec):
        key = (ext.deg, ext.base_card)
        if key not in self._coeff_cache:
            self._coeff_cache[key] = tuple(ext.embed_i(self.spec, c) for c in self.a)
        return self._coeff_cache[key]

    def is_on_curve(self, x: int, y: int, ext: FieldSpec) -> bool:
        if self.kind == P1:
            return True
        a1, a2, a3, a4, a6 = self.coeffs_in(ext)
        lhs = ext.add_i(ext.mul_i(y, y),
                        ext.add_i(ext.mul_i(a1, ext.mul_i(x, y)), ext.mul_i(a3, y)))
        x2 = ext.mul_i(x, x)
        rhs = ext.add_i(ext.mul_i(x2, x),
                        ext.add_i(ext.mul_i(a2, x2),
                                  ext.add_i(ext.mul_i(a4, x), a6)))
        return lhs == rhs

    # -- point enumeration

    def affine_points(self, ext: FieldSpec):
        """All affine geometric points with coordinates in ext, sorted."""
        pts = []
        if self.kind == P1:
            for x in range(ext.order):
                pts.append((x, 0))
            return pts
        a1, a2, a3, a4, a6 = self.coeffs_in(ext)
        for x in range(ext.order):
            b = ext.add_i(ext.mul_i(a1, x), a3)
            x2 = ext.mul_i(x, x)
            c = ext.add_i(ext.mul_i(x2, x),
                          ext.add_i(ext.mul_i(a2, x2),
                                    ext.add_i(ext.mul_i(a4, x), a6)))
            for y in solve_quadratic(ext, b, c):
                pts.append((x, y))
        return pts

    def point_count(self, d: int) -> int:
        """#C(F_{q^d})."""
        if d not in self._count_cache:
            ext = extend(self.spec, d)
            self._count_cache[d] = len(self.affine_points(ext)) + 1
        return self._count_cache[d]

    def rational_points(self):
        """Degree-1 closed points, affine sorted by encoding, infinity last."""
        if self._rational is None:
            pts = [ClosedPoint(self, 1, x, y) for x, y in self.affine_points(self.spec)]
            pts.append(ClosedPoint(self, 1, None, None))
            q, g, n = self.spec.order, self.genus, len(pts)
            assert (n - q - 1) ** 2 <= 4 * g * g * q, "Hasse-Weil bound violated"
            self._rational = pts
        return list(self._rational)

    def closed_points(self, d: int):
        """Closed points of exact degree d, canonical order."""
        if d in self._closed_cache:
            return list(self._closed_cache[d])
        if d == 1:
            out = self.rational_points()
        else:
            ext = extend(self.spec, d)
            seen = set()
            out = []
            for x, y in self.affine_points(ext):
                if (x, y) in seen:
                    continue
                orbit = [(x, y)]
                nx, ny = ext.frob_i(x), ext.frob_i(y)
                while (nx, ny) != (x, y):
                    orbit.append((nx, ny))
                    nx, ny = ext.frob_i(nx), ext.frob_i(ny)
                seen.update(orbit)
                if len(orbit) == d:
                    out.append(ClosedPoint(self, d, x, y))
        self._closed_cache[d] = out
        return list(out)

    def class_number(self) -> int:
        """h = #Pic^0: 1 for the line, #C(F_q) for an elliptic curve."""
        if self.kind == P1:
            return 1
        if self.genus == 1:
            return len(self.rational_points())
        raise ValueError("class number implemented for genus <= 1 only")

    # -- elliptic group law (points are (x, y) encoding pairs, None is O)

    def ell_neg(self, P, ext: FieldSpec):
        if P is None:
            return None
        a1, _, a3, _, _ = self.coeffs_in(ext)
        x, y = P
        return (x, ext.sub_i(ext.neg_i(y), ext.add_i(ext.mul_i(a1, x), a3)))

    def ell_add(self, P, Q, ext: FieldSpec):
        if self.kind != ELLIPTIC:
            raise ValueError("group law requires an elliptic curve")
        if P is None:
            return Q
        if Q is None:
            return P
        for T in (P, Q):
            if not self.is_on_curve(T[0], T[1], ext):
                raise ValueError(f"point {T} is not on the curve")
        a1, a2, a3, a4, a6 = self.coeffs_in(ext)
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2 and y2 == self.ell_neg(P, ext)[1]:
            return None
        if x1 == x2 and y1 == y2:
            num = ext.sub_i(
                ext.add_i(ext.mul_i(3 % ext.p, ext.mul_i(x1, x1)),
                          ext.add_i(ext.mul_i(2 % ext.p, ext.mul_i(a2, x1)), a4)),
                ext.mul_i(a1, y1))
            den = ext.add_i(ext.mul_i(2 % ext.p, y1),
                            ext.add_i(ext.mul_i(a1, x1), a3))
            lam = ext.mul_i(num, ext.inv_i(den))
            nu_num = ext.sub_i(
                ext.add_i(ext.mul_i(a4, x1), ext.mul_i(2 % ext.p, a6)),
                ext.add_i(ext.mul_i(x1, ext.mul_i(x1, x1)), ext.mul_i(a3, y1)))
            nu = ext.mul_i(nu_num, ext.inv_i(den))
        else:
            dx = ext.sub_i(x2, x1)
            lam = ext.mul_i(ext.sub_i(y2, y1), ext.inv_i(dx))
            nu = ext.mul_i(ext.sub_i(ext.mul_i(y1, x2), ext.mul_i(y2, x1)),
                           ext.inv_i(dx))
        x3 = ext.sub_i(ext.sub_i(ext.add_i(ext.mul_i(lam, lam), ext.mul_i(a1, lam)),
                                 a2),
                       ext.add_i(x1, x2))
        y3 = ext.sub_i(ext.neg_i(ext.add_i(ext.mul_i(ext.add_i(lam, a1), x3), nu)),
                       a3)
        return (x3, y3)

    def ell_mul(self, n: int, P, ext: FieldSpec):
        if n < 0:
            return self.ell_mul(-n, self.ell_neg(P, ext), ext)
        R = None
        Q = P
        while n:
            if n & 1:
                R = self.ell_add(R, Q, ext)
            Q = self.ell_add(Q, Q, ext)
            n >>= 1
        return R

    def is_two_torsion(self, x: int, y: int, ext: FieldSpec) -> bool:
        a1, _, a3, _, _ = self.coeffs_in(ext)
        return ext.add_i(ext.mul_i(2 % ext.p, y),
                         ext.add_i(ext.mul_i(a1, x), a3)) == 0

    def __eq__(self, other):
        return (isinstance(other, CurveModel) and self.kind == other.kind
                and self.spec == other.spec and self.a == other.a)

    def __hash__(self):
        return hash((self.kind, self.spec.p, self.spec.deg, self.a))

    def __repr__(self):
        if self.kind == P1:
            return f"P1({self.spec!r})"
        return f"E{self.a}({self.spec!r})"


def curve_create(kind: str, coefficients, spec: FieldSpec) -> CurveModel:
    return CurveModel(kind, spec, coefficients)


class ClosedPoint:
    """A Galois orbit of geometric points, via its canonical representative.

    x is None for the point at infinity (degree 1).  Coordinates live in
    extend(curve.spec, degree).  The stored representative is normalized to
    the orbit element with the least (x, y) encoding pair.
    """

    __slots__ = ("curve", "degree", "x", "y")

    def __init__(self, curve: CurveModel, degree: int, x, y):
        self.curve = curve
        self.degree = degree
        if x is None:
            self.x = None
            self.y = None
            if degree != 1:
                raise ValueError("the point at infinity has degree 1")
            return
        ext = extend(curve.spec, degree)
        orbit = [(x, y)]
        nx, ny = ext.frob_i(x), ext.frob_i(y)
        while (nx, ny) != (x, y):
            orbit.append((nx, ny))
            nx, ny = ext.frob_i(nx), ext.frob_i(ny)
        if len(orbit) != degree:
            raise ValueError(f"orbit size {len(orbit)} != declared degree {degree}")
        if curve.kind == ELLIPTIC and not curve.is_on_curve(x, y, ext):
            raise ValueError("coordinates do not satisfy the curve equation")
        self.x, self.y = min(orbit)

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    @property
    def ext_spec(self) -> FieldSpec:
        return extend(self.curve.spec, self.degree)

    def orbit(self):
        if self.is_infinity:
            return [(None, None)]
        ext = self.ext_spec
        out = [(self.x, self.y)]
        nx, ny = ext.frob_i(self.x), ext.frob_i(self.y)
        while (nx, ny) != (self.x, self.y):
            out.append((nx, ny))
            nx, ny = ext.frob_i(nx), ext.frob_i(ny)
        return out

    def sort_key(self):
        return (self.degree, 1 if self.is_infinity else 0,
                self.x if self.x is not None else -1,
                self.y if self.y is not None else -1)

    def __eq__(self, other):
        return (isinstance(other, ClosedPoint) and self.degree == other.degree
                and self.x == other.x and self.y == other.y
                and self.curve == other.curve)

    def __hash__(self):
        return hash((self.degree, self.x, self.y))

    def __repr__(self):
        if self.is_infinity:
            return "Pt(inf)"
        if self.curve.kind == P1:
            return f"Pt(d{self.degree},x={self.x})"
        return f"Pt(d{self.degree},{self.x},{self.y})"


class DivisorOnCurve:
    """Formal integer combination of closed points with finite support."""

    __slots__ = ("curve", "coeffs")

    def __init__(self, curve: CurveModel, items=None):
        self.curve = curve
        self.coeffs: dict[ClosedPoint, int] = {}
        if items:
            for pt, n in (items.items() if isinstance(items, dict) else items):
                if n:
                    self.coeffs[pt] = self.coeffs.get(pt, 0) + n
                    if self.coeffs[pt] == 0:
                        del self.coeffs[pt]

    def degree(self) -> int:
        return sum(n * pt.degree for pt, n in self.coeffs.items())

    def support(self):
        return sorted(self.coeffs, key=ClosedPoint.sort_key)

    def multiplicity(self, pt: ClosedPoint) -> int:
        return self.coeffs.get(pt, 0)

    def items(self):
        return [(pt, self.coeffs[pt]) for pt in self.support()]

    def pos_part(self) -> "DivisorOnCurve":
        return DivisorOnCurve(self.curve,
                              {p: n for p, n in self.coeffs.items() if n > 0})

    def neg_part(self) -> "DivisorOnCurve":
        """The effective divisor D_- with self = pos_part - neg_part."""
        return DivisorOnCurve(self.curve,
                              {p: -n for p, n in self.coeffs.items() if n < 0})

    def is_effective(self) -> bool:
        return all(n > 0 for n in self.coeffs.values())

    def __add__(self, other):
        out = dict(self.coeffs)
        for p, n in other.coeffs.items():
            out[p] = out.get(p, 0) + n
        return DivisorOnCurve(self.curve, out)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for p, n in other.coeffs.items():
            out[p] = out.get(p, 0) - n
        return DivisorOnCurve(self.curve, out)

    def __mul__(self, k: int):
        return DivisorOnCurve(self.curve, {p: k * n for p, n in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, DivisorOnCurve) and self.curve == other.curve
                and self.coeffs == other.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "Div(0)"
        return "Div(" + " + ".join(f"{n}*{p!r}" for p, n in self.items()) + ")"


def divisor_class_sum(D: DivisorOnCurve):
    """Sum of a degree-0 divisor under the elliptic group law.

    Returns the sum as a point over the lcm extension; None means the zero
    class, i.e. D is principal.
    """
    curve = D.curve
    if curve.kind != ELLIPTIC:
        raise ValueError("class sum needs an elliptic curve")
    if D.degree() != 0:
        raise ValueError("class sum is defined for degree-0 divisors")
    degs = [pt.degree for pt in D.coeffs] or [1]
    L = 1
    for d in degs:
        g = _gcd(L, d)
        L = L // g * d
    ext = extend(curve.spec, L)
    total = None
    for pt, n in D.items():
        if pt.is_infinity:
            continue  # O is the group identity
        sub = extend(curve.spec, pt.degree)
        for gx, gy in pt.orbit():
            P = (ext.embed_i(sub, gx), ext.embed_i(sub, gy))
            total = curve.ell_add(total, curve.ell_mul(n, P, ext), ext)
    return total


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a
