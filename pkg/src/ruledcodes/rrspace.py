"""Riemann-Roch spaces L(D) with explicit function bases.

Functions are held in canonical form: num/den of coprime polynomials with a
monic denominator on the projective line, and (A(x) + B(x)*y)/Q(x) with
gcd(A, B, Q) = 1 and Q monic on an elliptic curve (y^2 reduced away through
the curve equation, so this form is unique).

The elliptic basis algorithm multiplies L(D) into a pole-at-infinity-only
space: an auxiliary function u, a product of minimal polynomials of the
x-coordinates of the positive support, has an explicitly known divisor, so
u * L(D) is the subspace of L(M'*O) cut out by vanishing conditions at known
closed points.  Vanishing to order n at a degree-d point contributes n*d
linear conditions over F_q once the order-n truncated expansion (computed in
F_{q^d} with a cached local chart) is flattened through a fixed F_q-basis of
F_{q^d}.  The resulting nullspace is echelonized against the monomial order
of L(M'*O), which makes bases reproducible.
"""

from __future__ import annotations

from .gf import FieldSpec, FieldElement, extend
from .poly import Poly
from .curve import (CurveModel, ClosedPoint, DivisorOnCurve, P1, ELLIPTIC,
                    divisor_class_sum)
from . import linalg


class PoleError(ArithmeticError):
    """Evaluation or Taylor expansion requested at a pole."""


# ---------------------------------------------------------------------------
# truncated Laurent series over a FieldSpec

class LSeries:
    """sum cs[i] * t^(v+i), known modulo t^abs (abs=None: exact polynomial)."""

    __slots__ = ("spec", "v", "cs", "abs")

    def __init__(self, spec, v, cs, *, abs):
        self.spec = spec
        self.v = v
        self.cs = list(cs)
        self.abs = abs
        # abs None means exact; otherwise it must cover the listed terms
        if self.abs is not None:
            assert self.abs >= self.v + len(self.cs) or not self.cs

    @classmethod
    def const(cls, spec, c):
        return cls(spec, 0, [c] if c else [], abs=None)

    def _coeff_raw(self, k):
        i = k - self.v
        if 0 <= i < len(self.cs):
            return self.cs[i]
        return 0

    def coeff(self, k):
        if self.abs is not None and k >= self.abs:
            raise ValueError("coefficient beyond known precision")
        return self._coeff_raw(k)

    def prec(self):
        return self.abs

    def normalized(self) -> "LSeries":
        cs = self.cs[:]
        v = self.v
        while cs and cs[0] == 0:
            cs.pop(0)
            v += 1
        if not cs:
            # zero to the full known precision
            return LSeries(self.spec, self.abs if self.abs is not None else 0,
                           [], abs=self.abs)
        return LSeries(self.spec, v, cs, abs=self.abs)

    def valuation(self):
        """Exact valuation, or None when zero to the known precision."""
        n = self.normalized()
        return n.v if n.cs else None

    def __add__(self, other):
        s = self.spec
        if self.abs is None and other.abs is None:
            abs_out = None
            hi = max(self.v + len(self.cs), other.v + len(other.cs))
        else:
            abs_out = min(a for a in (self.abs, other.abs) if a is not None)
            hi = abs_out
        v = min(self.v, other.v)
        cs = [s.add_i(self._coeff_raw(k), other._coeff_raw(k))
              for k in range(v, hi)]
        return LSeries(s, v, cs, abs=abs_out)

    def __neg__(self):
        return LSeries(self.spec, self.v, [self.spec.neg_i(c) for c in self.cs],
                       abs=self.abs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        s = self.spec
        if self.abs is None and other.abs is None:
            abs_out = None
            n_out = len(self.cs) + len(other.cs) - 1 if self.cs and other.cs else 0
        else:
            cands = []
            if self.abs is not None:
                cands.append(self.abs + other.v)
            if other.abs is not None:
                cands.append(other.abs + self.v)
            abs_out = min(cands)
            n_out = abs_out - (self.v + other.v)
        v = self.v + other.v
        if not self.cs or not other.cs:
            return LSeries(s, v, [], abs=abs_out)
        out = [0] * max(n_out, 0)
        for i, a in enumerate(self.cs):
            if a and i < n_out:
                top = min(len(other.cs), n_out - i)
                for j in range(top):
                    b = other.cs[j]
                    if b:
                        out[i + j] = s.add_i(out[i + j], s.mul_i(a, b))
        return LSeries(s, v, out, abs=abs_out)

    def scale(self, c):
        s = self.spec
        return LSeries(s, self.v, [s.mul_i(c, a) for a in self.cs], abs=self.abs)

    def inverse(self) -> "LSeries":
        n = self.normalized()
        if not n.cs:
            raise ZeroDivisionError("inverting a series that is zero to precision")
        s = self.spec
        if n.abs is None and len(n.cs) == 1:
            return LSeries(s, -n.v, [s.inv_i(n.cs[0])], abs=None)
        assert n.abs is not None, "cannot invert an exact multi-term series"
        rel = len(n.cs)
        a0inv = s.inv_i(n.cs[0])
        out = [a0inv] + [0] * (rel - 1)
        for k in range(1, rel):
            acc = 0
            for i in range(1, k + 1):
                ai = n.cs[i] if i < len(n.cs) else 0
                if ai:
                    acc = s.add_i(acc, s.mul_i(ai, out[k - i]))
            out[k] = s.neg_i(s.mul_i(a0inv, acc))
        return LSeries(s, -n.v, out, abs=-n.v + rel)

    def truncate(self, abs_prec) -> "LSeries":
        if self.abs is not None and self.abs <= abs_prec:
            return self
        n = abs_prec - self.v
        cs = self.cs[:max(n, 0)]
        if self.abs is None and n > len(self.cs):
            cs = cs + [0] * (n - len(self.cs))
        return LSeries(self.spec, self.v, cs, abs=abs_prec)

    def __repr__(self):
        return f"LSeries(v={self.v}, cs={self.cs}, abs={self.abs})"


def _poly_on_series(f: Poly, xs: LSeries, ext: FieldSpec) -> LSeries:
    """Evaluate a polynomial (coeffs over f.spec) on a series over ext."""
    acc = LSeries.const(ext, 0)
    for c in reversed(f.coeffs):
        acc = acc * xs + LSeries.const(ext, ext.embed_i(f.spec, c))
    return acc


# ---------------------------------------------------------------------------
# local charts: series for the coordinate functions in the uniformizer

class _Chart:
    """Expansion of x and y at a closed point in its canonical uniformizer.

    Uniformizers: x - x0 at affine non-2-torsion, y - y0 at affine
    2-torsion, x/y at the origin of an elliptic curve, 1/x at infinity on
    the projective line.
    """

    def __init__(self, curve: CurveModel, pt: ClosedPoint | None):
        self.curve = curve
        self.pt = pt
        self.ext = pt.ext_spec if pt is not None and not pt.is_infinity else curve.spec
        self._cache_rel = 0
        self._xs = None
        self._ys = None
        if curve.kind == P1:
            self.kind = "p1_inf" if pt.is_infinity else "p1_affine"
        elif pt.is_infinity:
            self.kind = "ell_O"
        else:
            tt = curve.is_two_torsion(pt.x, pt.y, self.ext)
            self.kind = "ell_2tors" if tt else "ell_affine"

    def xy(self, rel: int):
        if rel <= self._cache_rel:
            return self._xs, self._ys
        ext = self.ext
        if self.kind == "p1_affine":
            xs = LSeries(ext, 0, [self.pt.x, 1] + [0] * max(rel - 2, 0), abs=rel)
            ys = None
        elif self.kind == "p1_inf":
            xs = LSeries(ext, -1, [1] + [0] * (rel - 1), abs=rel - 1)
            ys = None
        elif self.kind == "ell_affine":
            xs = LSeries(ext, 0, [self.pt.x, 1] + [0] * max(rel - 2, 0), abs=rel)
            ys = self._newton_y(xs, rel)
        elif self.kind == "ell_2tors":
            ys = LSeries(ext, 0, [self.pt.y, 1] + [0] * max(rel - 2, 0), abs=rel)
            xs = self._newton_x(ys, rel)
        else:
            xs, ys = self._origin_xy(rel)
        self._xs, self._ys, self._cache_rel = xs, ys, rel
        return xs, ys

    def _newton_y(self, xs, rel):
        ext = self.ext
        a1, a2, a3, a4, a6 = self.curve.coeffs_in(ext)
        rhs = self._rhs_series(xs, ext)
        lin = xs.scale(a1) + LSeries.const(ext, a3)
        y = LSeries(ext, 0, [self.pt.y] + [0] * (rel - 1), abs=rel)
        it = 0
        while (1 << it) < rel:
            it += 1
        for _ in range(it + 1):
            f = (y * y + lin * y - rhs).truncate(rel)
            fp = (y.scale(2 % ext.p) + lin).truncate(rel)
            y = (y - f * fp.inverse()).truncate(rel)
        return y

    def _newton_x(self, ys, rel):
        ext = self.ext
        a1, a2, a3, a4, a6 = self.curve.coeffs_in(ext)
        x = LSeries(ext, 0, [self.pt.x] + [0] * (rel - 1), abs=rel)
        it = 0
        while (1 << it) < rel:
            it += 1
        for _ in range(it + 1):
            g = (self._rhs_series(x, ext) - ys * ys
                 - x.scale(a1) * ys - ys.scale(a3)).truncate(rel)
            gp = ((x * x).scale(3 % ext.p) + x.scale(ext.mul_i(2 % ext.p, a2))
                  + LSeries.const(ext, a4) - ys.scale(a1)).truncate(rel)
            x = (x - g * gp.inverse()).truncate(rel)
        return x

    def _rhs_series(self, xs, ext):
        _, a2, _, a4, a6 = self.curve.coeffs_in(ext)
        x2 = xs * xs
        return (x2 * xs + x2.scale(a2) + xs.scale(a4) + LSeries.const(ext, a6))

    def _origin_xy(self, rel):
        # sigma = 1/y solves sigma = t^3 + a2 t^2 s + a4 t s^2 + a6 s^3
        #                            - a1 t s - a3 s^2   with t = x/y
        ext = self.ext
        a1, a2, a3, a4, a6 = self.curve.coeffs_in(ext)
        prec = rel + 4
        t = LSeries(ext, 1, [1] + [0] * (prec - 1), abs=prec + 1)
        sig = (t * t * t).truncate(prec + 3)
        for _ in range(prec + 1):
            s2 = sig * sig
            sig = ((t * t * t) + (t * t * sig).scale(a2) + (t * s2).scale(a4)
                   + (s2 * sig).scale(a6) - (t * sig).scale(a1)
                   - s2.scale(a3)).truncate(prec + 3)
        ys = sig.inverse()          # valuation -3
        xs = (t * ys).truncate(-2 + rel)
        return xs.truncate(-2 + rel), ys.truncate(-3 + rel)


_CHARTS: dict = {}


def _chart(curve: CurveModel, pt: ClosedPoint) -> _Chart:
    key = (id(curve), pt.degree, pt.x, pt.y)
    if key not in _CHARTS:
        _CHARTS[key] = _Chart(curve, pt)
    return _CHARTS[key]


# ---------------------------------------------------------------------------

class CurveFunction:
    """Element of the function field in canonical form."""

    __slots__ = ("curve", "num_a", "num_b", "den")

    def __init__(self, curve: CurveModel, num_a: Poly, num_b: Poly, den: Poly):
        self.curve = curve
        spec = curve.spec
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = num_a.gcd(num_b).gcd(den) if not num_b.is_zero() else num_a.gcd(den)
        if not g.is_zero() and g.degree > 0:
            num_a = num_a // g
            num_b = num_b // g
            den = den // g
        lead = den.coeffs[-1]
        if lead != 1:
            inv = spec.inv_i(lead)
            num_a = num_a * inv
            num_b = num_b * inv
            den = den * inv
        self.num_a = num_a
        self.num_b = num_b
        self.den = den

    # -- constructors

    @classmethod
    def on_p1(cls, curve, num: Poly, den: Poly):
        assert curve.kind == P1
        return cls(curve, num, Poly.zero(curve.spec), den)

    @classmethod
    def on_elliptic(cls, curve, a: Poly, b: Poly, q: Poly):
        assert curve.kind == ELLIPTIC
        return cls(curve, a, b, q)

    @classmethod
    def constant(cls, curve, c: int):
        spec = curve.spec
        return cls(curve, Poly.const(spec, c), Poly.zero(spec), Poly.one(spec))

    def is_zero(self):
        return self.num_a.is_zero() and self.num_b.is_zero()

    def is_constant(self):
        return (self.num_b.is_zero() and self.num_a.is_constant()
                and self.den.is_constant())

    def constant_value(self) -> int:
        assert self.is_constant()
        return self.num_a.coeffs[0] if self.num_a.coeffs else 0

    def key(self):
        return (self.num_a.coeffs, self.num_b.coeffs, self.den.coeffs)

    def __eq__(self, other):
        return (isinstance(other, CurveFunction) and self.curve == other.curve
                and self.key() == other.key())

    def __hash__(self):
        return hash(self.key())

    # -- arithmetic

    def __add__(self, other):
        self._check(other)
        na = self.num_a * other.den + other.num_a * self.den
        nb = self.num_b * other.den + other.num_b * self.den
        return CurveFunction(self.curve, na, nb, self.den * other.den)

    def __sub__(self, other):
        return self + other.scale(self.curve.spec.neg_i(1))

    def __mul__(self, other):
        self._check(other)
        curve = self.curve
        if curve.kind == P1:
            return CurveFunction(curve, self.num_a * other.num_a,
                                 Poly.zero(curve.spec), self.den * other.den)
        spec = curve.spec
        a1, a2, a3, a4, a6 = curve.a
        fx = Poly(spec, (a6, a4, a2, 1))            # x^3 + a2 x^2 + a4 x + a6
        lin = Poly(spec, (a3, a1))                  # a1 x + a3
        a = self.num_a * other.num_a + self.num_b * other.num_b * fx
        b = (self.num_a * other.num_b + self.num_b * other.num_a
             - self.num_b * other.num_b * lin)
        return CurveFunction(curve, a, b, self.den * other.den)

    def scale(self, c: int):
        return CurveFunction(self.curve, self.num_a * c, self.num_b * c, self.den)

    def inverse(self):
        curve = self.curve
        if self.is_zero():
            raise ZeroDivisionError("inverting the zero function")
        if curve.kind == P1:
            return CurveFunction(curve, self.den, Poly.zero(curve.spec), self.num_a)
        spec = curve.spec
        a1, a2, a3, a4, a6 = curve.a
        fx = Poly(spec, (a6, a4, a2, 1))
        lin = Poly(spec, (a3, a1))
        # (A + By)(A - B(a1 x + a3) - By) = A^2 - AB(a1x+a3) - B^2 f(x)
        norm = (self.num_a * self.num_a - self.num_a * self.num_b * lin
                - self.num_b * self.num_b * fx)
        conj_a = self.num_a - self.num_b * lin
        conj_b = -self.num_b
        return CurveFunction(curve, self.den * conj_a, self.den * conj_b, norm)

    def _check(self, other):
        if self.curve != other.curve:
            raise ValueError("functions on different curves")

    def __repr__(self):
        if self.curve.kind == P1:
            return f"Fn({self.num_a!r}/{self.den!r})"
        return f"Fn(({self.num_a!r} + ({self.num_b!r})*y)/{self.den!r})"

    def text(self) -> str:
        def ptxt(p):
            return "+".join(f"{c}x^{i}" for i, c in enumerate(p.coeffs) if c) or "0"
        if self.curve.kind == P1:
            return f"{ptxt(self.num_a)}/{ptxt(self.den)}"
        return f"({ptxt(self.num_a)} + ({ptxt(self.num_b)})*y)/{ptxt(self.den)}"


# ---------------------------------------------------------------------------
# valuations, evaluation, Taylor expansion

def _num_zero_bound(f: CurveFunction) -> int:
    """Upper bound for the zero order of the numerator A + B*y at any point."""
    if f.curve.kind == P1:
        return f.num_a.degree + 1
    da = 2 * f.num_a.degree if not f.num_a.is_zero() else -1
    db = 3 + 2 * f.num_b.degree if not f.num_b.is_zero() else -1
    return max(da, db) + 1


def _numerator_series(f: CurveFunction, chart: _Chart, rel: int) -> LSeries:
    xs, ys = chart.xy(rel)
    ns = _poly_on_series(f.num_a, xs, chart.ext)
    if not f.num_b.is_zero():
        ns = ns + _poly_on_series(f.num_b, xs, chart.ext) * ys
    return ns


def _numerator_valuation(f: CurveFunction, pt: ClosedPoint) -> int:
    curve = f.curve
    if curve.kind == ELLIPTIC and pt.is_infinity:
        da = 2 * f.num_a.degree if not f.num_a.is_zero() else None
        db = 3 + 2 * f.num_b.degree if not f.num_b.is_zero() else None
        return -max(d for d in (da, db) if d is not None)
    chart = _chart(curve, pt)
    bound = _num_zero_bound(f)
    rel = 8
    while True:
        v = _numerator_series(f, chart, rel).valuation()
        if v is not None:
            return v
        if rel > bound + 4:
            raise AssertionError("nonzero numerator vanished beyond its bound")
        rel *= 2


def order_at(f: CurveFunction, pt: ClosedPoint) -> int:
    """Valuation of f at the closed point (same at every orbit member)."""
    if f.is_zero():
        raise ValueError("the zero function has no valuation")
    curve = f.curve
    ext = pt.ext_spec
    if curve.kind == P1:
        if pt.is_infinity:
            return f.den.degree - f.num_a.degree
        return (f.num_a.root_multiplicity(pt.x, ext)
                - f.den.root_multiplicity(pt.x, ext))
    if pt.is_infinity:
        return _numerator_valuation(f, pt) + 2 * f.den.degree
    e = 2 if curve.is_two_torsion(pt.x, pt.y, ext) else 1
    den_ord = e * f.den.root_multiplicity(pt.x, ext)
    return _numerator_valuation(f, pt) - den_ord


def taylor_coeffs(f: CurveFunction, pt: ClosedPoint, k: int):
    """First k coefficients of f in the local uniformizer at pt.

    Raises PoleError if f has a pole there.  Coefficients are FieldElements
    of F_{q^d}, d = deg(pt).
    """
    if k <= 0:
        return []
    curve = f.curve
    ext = pt.ext_spec if not pt.is_infinity else curve.spec
    ls = _laurent(f, pt, k)
    if ls.valuation() is not None and ls.valuation() < 0:
        raise PoleError(f"{f!r} has a pole at {pt!r}")
    return [FieldElement(ext, ls._coeff_raw(i)) for i in range(k)]


def _laurent(f: CurveFunction, pt: ClosedPoint, abs_target: int) -> LSeries:
    """Expansion of f at pt with absolute precision >= abs_target."""
    if f.is_zero():
        ext = pt.ext_spec if not pt.is_infinity else f.curve.spec
        return LSeries(ext, abs_target, [], abs=abs_target)
    curve = f.curve
    chart = _chart(curve, pt)
    bound = _num_zero_bound(f) + 2 * f.den.degree + 2
    rel = max(8, abs_target + 4)
    while True:
        num = _numerator_series(f, chart, rel).normalized()
        den = _poly_on_series(f.den, chart.xy(rel)[0], chart.ext).normalized()
        if num.valuation() is None or den.valuation() is None:
            if rel > bound + abs_target + 8:
                raise AssertionError("series did not stabilize within bounds")
            rel *= 2
            continue
        quot = num * den.inverse()
        if quot.prec() is not None and quot.prec() >= abs_target:
            return quot
        rel *= 2


def evaluate(f: CurveFunction, pt: ClosedPoint) -> FieldElement:
    """Value of f at the canonical representative, in F_{q^d}."""
    curve = f.curve
    if not pt.is_infinity:
        ext = pt.ext_spec
        dv = f.den.eval_i(pt.x, target=ext)
        if dv != 0:
            nv = f.num_a.eval_i(pt.x, target=ext)
            if curve.kind == ELLIPTIC and not f.num_b.is_zero():
                nv = ext.add_i(nv, ext.mul_i(f.num_b.eval_i(pt.x, target=ext), pt.y))
            return FieldElement(ext, ext.mul_i(nv, ext.inv_i(dv)))
    elif curve.kind == P1:
        dn, dd = f.num_a.degree, f.den.degree
        if dn > dd:
            raise PoleError("pole at infinity")
        if dn < dd:
            return FieldElement(curve.spec, 0)
        s = curve.spec
        return FieldElement(s, s.mul_i(f.num_a.coeffs[-1], s.inv_i(f.den.coeffs[-1])))
    return taylor_coeffs(f, pt, 1)[0]


# ---------------------------------------------------------------------------
# minimal polynomial of an x-coordinate, and the fiber of the x-map over it

def _coerce_down(spec: FieldSpec, big: FieldSpec, poly_big: Poly) -> Poly:
    coords = subfield_coords(spec, big)
    out = []
    for c in poly_big.coeffs:
        u = coords(c)
        assert all(x == 0 for x in u[1:]), "coefficient not in the base field"
        out.append(u[0])
    return Poly(spec, out)


_COORD_CACHE: dict = {}


def subfield_coords(small: FieldSpec, big: FieldSpec):
    """Callable mapping enc in big to its coordinate tuple over small,
    with respect to the basis 1, z, ..., z^(d-1) of big (z the class of
    the absolute generator)."""
    key = (id(small), id(big))
    if key in _COORD_CACHE:
        return _COORD_CACHE[key]
    if small is big or small == big:
        fn = lambda enc: (enc,)
        _COORD_CACHE[key] = fn
        return fn
    d = big.deg // small.deg
    p = big.p
    n = big.deg
    z = p if big.deg > 1 else 0   # encoding of the generator z of big
    cols = []
    for j in range(d):
        zj = big.pow_i(z, j) if big.deg > 1 else (1 if j == 0 else 0)
        for i in range(small.deg):
            base_el = big.embed_i(small, small.encode([0] * i + [1]))
            cols.append(big.decode(big.mul_i(base_el, zj)))
    # invert the n x n matrix over F_p
    mat = [[cols[c][r] for c in range(n)] for r in range(n)]
    aug = [row[:] + [1 if i == j else 0 for j in range(n)]
           for i, row in enumerate(mat)]
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if aug[i][c] % p != 0), None)
        assert piv is not None, "basis matrix is singular"
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], p - 2, p)
        aug[r] = [(v * inv) % p for v in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] % p:
                fct = aug[i][c]
                aug[i] = [(a - fct * b) % p for a, b in zip(aug[i], aug[r])]
        r += 1
    inv_mat = [row[n:] for row in aug]

    def fn(enc: int):
        digs = big.decode(enc)
        sol = [sum(inv_mat[i][j] * digs[j] for j in range(n)) % p for i in range(n)]
        return tuple(small.encode(sol[j * small.deg:(j + 1) * small.deg])
                     for j in range(d))

    _COORD_CACHE[key] = fn
    return fn


def x_min_poly(curve: CurveModel, pt: ClosedPoint) -> Poly:
    """Minimal polynomial over F_q of the x-coordinate of pt."""
    assert not pt.is_infinity
    ext = pt.ext_spec
    orbit = [pt.x]
    nx = ext.frob_i(pt.x)
    while nx != pt.x:
        orbit.append(nx)
        nx = ext.frob_i(nx)
    prod = Poly.from_roots(ext, orbit)
    return _coerce_down(curve.spec, ext, prod)


def _x_fiber(curve: CurveModel, pt: ClosedPoint):
    """(min poly m of x(pt), [(closed point Q over a root of m, e_Q)]) with
    div(m(x)) = sum e_Q * Q - 2*deg(m)*O on an elliptic curve."""
    m = x_min_poly(curve, pt)
    dx = m.degree
    fiber = []
    seen = set()
    for dd in sorted({dx, 2 * dx}):
        ext = extend(curve.spec, dd)
        for cp in curve.closed_points(dd):
            if cp.is_infinity or cp in seen:
                continue
            if m.eval_i(cp.x, target=ext) == 0:
                e = 2 if curve.is_two_torsion(cp.x, cp.y, cp.ext_spec) else 1
                fiber.append((cp, e))
                seen.add(cp)
    total = sum(e * cp.degree for cp, e in fiber)
    assert total == 2 * dx, f"x-fiber degree {total} != {2 * dx}"
    return m, fiber


# ---------------------------------------------------------------------------
# Riemann-Roch bases

def rr_basis(curve: CurveModel, D: DivisorOnCurve):
    """Echelonized basis of L(D) = {f : div(f) + D >= 0} over F_q."""
    if D.curve != curve:
        raise ValueError("divisor lives on a different curve")
    if curve.kind == P1:
        return _rr_basis_p1(curve, D)
    if curve.kind == ELLIPTIC:
        return _rr_basis_elliptic(curve, D)
    raise ValueError("unsupported genus")


def _rr_basis_p1(curve, D):
    spec = curve.spec
    den = Poly.one(spec)
    forced = Poly.one(spec)
    n_inf = 0
    for pt, n in D.items():
        if pt.is_infinity:
            n_inf = n
            continue
        m = x_min_poly(curve, pt)
        if n > 0:
            den = den * m ** n
        else:
            forced = forced * m ** (-n)
    top = den.degree + n_inf - forced.degree
    basis = []
    for l in range(top + 1):
        basis.append(CurveFunction.on_p1(curve, forced.shift(l), den))
    return basis


def _rr_basis_elliptic(curve, D):
    spec = curve.spec
    deg_d = D.degree()
    if deg_d < 0:
        return []
    if deg_d == 0:
        # the degree-0 dichotomy is decided by the group law, not by rank
        if divisor_class_sum(D) is not None:
            return []
    dp, dm = D.pos_part(), D.neg_part()
    inf_pt = ClosedPoint(curve, 1, None, None)
    n_o = dp.multiplicity(inf_pt)
    m_o = dm.multiplicity(inf_pt)

    u = Poly.one(spec)
    zdiv: dict[ClosedPoint, int] = {}
    m_pole = 0
    for pt, n in dp.items():
        if pt.is_infinity:
            continue
        e_pt = 2 if curve.is_two_torsion(pt.x, pt.y, pt.ext_spec) else 1
        c = -(-n // e_pt)
        m, fiber = _x_fiber(curve, pt)
        u = u * m ** c
        m_pole += 2 * c * m.degree
        for cp, e in fiber:
            zdiv[cp] = zdiv.get(cp, 0) + c * e
    m_amb = m_pole + n_o

    monomials = [(i, j) for j in (0, 1) for i in range(m_amb + 1)
                 if 2 * i + 3 * j <= m_amb]
    monomials.sort(key=lambda ij: (2 * ij[0] + 3 * ij[1], ij[1]))

    rows = []
    cond_pts = sorted(set(zdiv) | {p for p in dm.support() if not p.is_infinity},
                      key=ClosedPoint.sort_key)
    for qpt in cond_pts:
        r_q = zdiv.get(qpt, 0) - dp.multiplicity(qpt) + dm.multiplicity(qpt)
        if r_q <= 0:
            continue
        ext = qpt.ext_spec
        chart = _chart(curve, qpt)
        coords = subfield_coords(spec, ext)
        rel = r_q + 4
        xs, ys = chart.xy(rel)
        series = _monomial_series(monomials, xs, ys, r_q)
        for k in range(r_q):
            for j in range(qpt.degree):
                rows.append([coords(s._coeff_raw(k))[j] for s in series])
    if m_o > 0:
        chart = _chart(curve, inf_pt)
        rel = m_amb + m_o + 4
        xs, ys = chart.xy(rel)
        series = []
        for i, j in monomials:
            s = _pow_series(xs, i)
            if j:
                s = s * ys
            series.append(s)
        for l in range(m_o):
            rows.append([s._coeff_raw(-m_amb + l) for s in series])

    if rows:
        null = linalg.nullspace(spec, rows)
    else:
        null = [[1 if t == k else 0 for t in range(len(monomials))]
                for k in range(len(monomials))]

    basis = []
    for vec in null:
        a_coeffs = {}
        b_coeffs = {}
        for lam, (i, j) in zip(vec, monomials):
            if lam:
                (b_coeffs if j else a_coeffs)[i] = lam
        a = Poly(spec, [a_coeffs.get(i, 0) for i in range(m_amb + 1)])
        b = Poly(spec, [b_coeffs.get(i, 0) for i in range(m_amb + 1)])
        basis.append(CurveFunction.on_elliptic(curve, a, b, u))

    expected = deg_d if deg_d >= 1 else 1
    assert len(basis) == expected, (
        f"dim L(D) = {len(basis)}, Riemann-Roch predicts {expected}")
    return basis


def _pow_series(s: LSeries, e: int) -> LSeries:
    out = LSeries.const(s.spec, 1)
    base = s
    while e:
        if e & 1:
            out = out * base
        base = base * base
        e >>= 1
    return out


def _monomial_series(monomials, xs, ys, k):
    out = []
    xpow = [LSeries.const(xs.spec, 1)]
    maxi = max(i for i, _ in monomials)
    for _ in range(maxi):
        xpow.append((xpow[-1] * xs).truncate(k + 2))
    for i, j in monomials:
        s = xpow[i]
        if j:
            s = (s * ys).truncate(k + 2)
        out.append(s)
    return out


# ---------------------------------------------------------------------------
# bounded-degree function enumeration

def effective_divisors(curve: CurveModel, n: int):
    """All effective divisors of degree exactly n, deterministic order."""
    pools = {d: curve.closed_points(d) for d in range(1, n + 1)}
    out = []

    def rec(remaining, min_deg, min_idx, acc):
        if remaining == 0:
            out.append(DivisorOnCurve(curve, list(acc)))
            return
        for d in range(min_deg, remaining + 1):
            pts = pools[d]
            start = min_idx if d == min_deg else 0
            for idx in range(start, len(pts)):
                acc.append((pts[idx], 1))
                rec(remaining - d, d, idx, acc)
                acc.pop()

    rec(n, 1, 0, [])
    return out


def function_degree(f: CurveFunction, D: DivisorOnCurve) -> int:
    """Degree of f (= degree of its pole divisor), valid for f in L(D)."""
    if f.is_constant():
        return 0
    total = 0
    for pt in D.support():
        o = order_at(f, pt)
        if o < 0:
            total += (-o) * pt.degree
    return total


def functions_up_to_degree(curve: CurveModel, dmax: int, cap: int = 10 ** 6):
    """All functions of degree <= dmax, as {canonical key: (f, degree)}.

    Built as the constants plus the union of L(D) over effective divisors D
    of degree dmax, deduplicated through the canonical form.
    """
    spec = curve.spec
    result: dict = {}
    for c in range(spec.order):
        f = CurveFunction.constant(curve, c)
        result[f.key()] = (f, 0)
    if dmax < 1:
        return result
    divisors = effective_divisors(curve, dmax)
    est = len(divisors) * spec.order ** (dmax + 1)
    if est > cap:
        raise ValueError(f"enumeration of about {est} functions exceeds cap {cap}")
    for D in divisors:
        basis = rr_basis(curve, D)
        if len(basis) <= 1:
            continue  # L(D) is just the constants
        k = len(basis)
        for mindex in range(1, spec.order ** k):
            digits = []
            mm = mindex
            for _ in range(k):
                digits.append(mm % spec.order)
                mm //= spec.order
            f = None
            for lam, b in zip(digits, basis):
                if lam:
                    term = b.scale(lam)
                    f = term if f is None else f + term
            if f is None or f.is_constant():
                continue
            key = f.key()
            if key in result:
                continue
            result[key] = (f, function_degree(f, D))
    return result
