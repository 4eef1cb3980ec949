"""Generator-matrix construction for the evaluation-code families.

Families:
  * projective (doubly extended) Reed-Solomon PRS(a) on P^1(F_q);
  * AG codes on the base curve, L(beta) evaluated at rational points;
  * decomposable-surface codes: sections of a*S + pi^*(beta) on
    P(O (+) O(-delta)), message space the direct sum of L(beta - i*delta);
  * elm-surface codes: sections with a multiplicity-a condition at the
    center, cut out by flattened local vanishing conditions;
  * product codes PRS(a) (x) C_curve(beta) on C x P^1;
  * unisecant codes (a = 1) with their dimension/distance records.

A section (f_0, ..., f_a) takes the value sum_i f_i(p) u^i at the surface
point (p, u) and the top coefficient f_a(p) at (p, infinity), matching the
projective Reed-Solomon convention on every fiber.
"""

from __future__ import annotations

from math import comb

from .gf import FieldSpec, extend
from .curve import CurveModel, ClosedPoint, DivisorOnCurve
from .rrspace import (rr_basis, evaluate, taylor_coeffs, subfield_coords)
from .surface import (RuledSurfaceModel, DECOMPOSABLE, ELM, INFTY,
                      surface_rational_points, segre_decomposable,
                      segre_lower_bound_elm)
from . import linalg


class LinearCode:
    """A generator matrix over F_q with its evaluation-point column index."""

    __slots__ = ("spec", "matrix", "columns", "meta")

    def __init__(self, spec: FieldSpec, matrix, columns, meta=None):
        self.spec = spec
        self.matrix = [list(r) for r in matrix]
        self.columns = list(columns)
        self.meta = dict(meta or {})
        for row in self.matrix:
            if len(row) != len(self.columns):
                raise ValueError("row length does not match the point index")

    @property
    def n(self) -> int:
        return len(self.columns)

    @property
    def k(self) -> int:
        return len(self.matrix)

    def evaluation_injective(self) -> bool:
        """True iff the rows are independent, i.e. k equals the rank."""
        if "evaluation_injective" not in self.meta:
            self.meta["evaluation_injective"] = (
                linalg.rank(self.spec, self.matrix) == self.k)
        return self.meta["evaluation_injective"]

    def column_labels(self):
        return [_column_label(c) for c in self.columns]

    def __repr__(self):
        fam = self.meta.get("family", "code")
        return f"LinearCode[{fam}](k={self.k}, n={self.n}, q={self.spec.order})"


def _column_label(col) -> str:
    if isinstance(col, tuple) and len(col) == 2 and isinstance(col[0], ClosedPoint):
        p, u = col
        base = "inf" if p.is_infinity else f"{p.x}.{p.y}"
        return f"{base}|{u}"
    if isinstance(col, ClosedPoint):
        return "inf" if col.is_infinity else f"{col.x}.{col.y}"
    return str(col)


# ---------------------------------------------------------------------------

def build_prs(spec: FieldSpec, a: int) -> LinearCode:
    """Projective Reed-Solomon code [q+1, a+1, q+1-a]: degree-a forms
    evaluated on P^1(F_q), with the degree-a coefficient at infinity."""
    q = spec.order
    if not 0 <= a <= q:
        raise ValueError(f"PRS degree a = {a} out of range 0..{q}")
    columns = list(range(q)) + [INFTY]
    matrix = []
    for i in range(a + 1):
        row = [spec.pow_i(u, i) for u in range(q)]
        row.append(1 if i == a else 0)
        matrix.append(row)
    return LinearCode(spec, matrix, columns,
                      {"family": "prs", "a": a, "q": q})


def build_curve_code(curve: CurveModel, beta: DivisorOnCurve) -> LinearCode:
    """Evaluation of L(beta) at the rational points of the curve."""
    pts = curve.rational_points()
    _check_disjoint(beta, pts, "beta")
    b = beta.degree()
    if not 0 <= b < len(pts):
        raise ValueError(f"deg(beta) = {b} must satisfy 0 <= b < N = {len(pts)}")
    basis = rr_basis(curve, beta)
    if not basis:
        raise ValueError("empty message space L(beta)")
    matrix = [[evaluate(f, p).val for p in pts] for f in basis]
    return LinearCode(curve.spec, matrix, pts,
                      {"family": "curve", "b": b, "N": len(pts),
                       "beta": beta, "curve": curve})


def build_code_decomposable(surface: RuledSurfaceModel, a: int,
                            beta: DivisorOnCurve) -> LinearCode:
    """Sections of a*S + pi^*(beta) on a decomposable surface, evaluated at
    all (q+1)N rational points; message space (+)_{i=0..a} L(beta - i*delta)."""
    if surface.variant != DECOMPOSABLE:
        raise ValueError("decomposable builder on a non-decomposable surface")
    if a < 0:
        raise ValueError("a must be >= 0")
    curve = surface.curve
    pts = surface_rational_points(surface)
    rational = curve.rational_points()
    _check_disjoint(beta, rational, "beta")
    _check_disjoint(surface.delta, rational, "delta")
    b = beta.degree()
    if not 0 <= b < len(rational):
        raise ValueError(f"deg(beta) = {b} must satisfy 0 <= b < N")
    blocks = []
    for i in range(a + 1):
        blocks.append(rr_basis(curve, beta - i * surface.delta))
    if not any(blocks):
        raise ValueError("empty message space")
    matrix = []
    block_index = []
    cache = {}
    for i, block in enumerate(blocks):
        for f in block:
            key = f.key()
            if key not in cache:
                cache[key] = {p: evaluate(f, p).val for p in rational}
            vals = cache[key]
            row = []
            for p, u in pts:
                if u == INFTY:
                    row.append(vals[p] if i == a else 0)
                else:
                    row.append(surface.curve.spec.mul_i(
                        vals[p], surface.curve.spec.pow_i(u, i)))
            matrix.append(row)
            block_index.append(i)
    return LinearCode(curve.spec, matrix, pts,
                      {"family": "decomposable_surface", "a": a, "b": b,
                       "e": surface.e, "N": len(rational),
                       "g": curve.genus, "surface": surface, "beta": beta,
                       "curve": curve, "block_index": block_index,
                       "block_dims": [len(bl) for bl in blocks]})


def build_code_elm(surface: RuledSurfaceModel, a: int,
                   beta: DivisorOnCurve) -> LinearCode:
    """Sections of a(C0 - E) + pi^*(beta) on an elm surface.

    Ambient space {sum_i f_i u^i : f_i in L(beta)} restricted by vanishing
    of every local monomial t^j w^k, j + k <= a - 1, at the center
    (t the uniformizer at the base point, w = u - fiber coordinate),
    flattened into F_q-linear conditions.
    """
    if surface.variant != ELM:
        raise ValueError("elm builder on a non-elm surface")
    if a < 0:
        raise ValueError("a must be >= 0")
    curve = surface.curve
    spec = curve.spec
    rational = curve.rational_points()
    _check_disjoint(beta, rational, "beta")
    center = surface.base_point
    if beta.multiplicity(center) != 0:
        raise ValueError("supp(beta) must avoid the center of the transform")
    b = beta.degree()
    if not 0 <= b < len(rational):
        raise ValueError(f"deg(beta) = {b} must satisfy 0 <= b < N")
    basis = rr_basis(curve, beta)
    if not basis:
        raise ValueError("empty message space L(beta)")
    d = center.degree
    ext = extend(spec, d)
    u0 = surface.fiber_coord

    # ambient generators: (i, f) for i = 0..a, f in the L(beta) basis
    ambient = [(i, f) for i in range(a + 1) for f in basis]
    cond_rows = []
    if a >= 1:
        coords = subfield_coords(spec, ext)
        taylors = {f.key(): [c.val for c in taylor_coeffs(f, center, a)]
                   for f in basis}
        u0_pows = [1]
        for _ in range(a):
            u0_pows.append(ext.mul_i(u0_pows[-1], u0))
        for j in range(a):
            for kk in range(a - j):
                entries = []
                for i, f in ambient:
                    if kk > i:
                        entries.append(0)
                        continue
                    binom = comb(i, kk) % spec.p
                    val = ext.mul_i(ext.mul_i(binom, taylors[f.key()][j]),
                                    u0_pows[i - kk])
                    entries.append(val)
                for t in range(d):
                    cond_rows.append([coords(v)[t] for v in entries])
    if cond_rows:
        null = linalg.nullspace(spec, cond_rows)
        cond_rank = linalg.rank(spec, cond_rows)
    else:
        null = [[1 if t == s else 0 for t in range(len(ambient))]
                for s in range(len(ambient))]
        cond_rank = 0
    if not null:
        raise ValueError("empty message space after multiplicity conditions")

    pts = surface_rational_points(surface)
    cache = {f.key(): {p: evaluate(f, p).val for p in rational} for f in basis}
    amb_rows = []
    for i, f in ambient:
        vals = cache[f.key()]
        row = []
        for p, u in pts:
            if u == INFTY:
                row.append(vals[p] if i == a else 0)
            else:
                row.append(spec.mul_i(vals[p], spec.pow_i(u, i)))
        amb_rows.append(row)
    matrix = linalg.mat_mul(spec, null, amb_rows)
    return LinearCode(spec, matrix, pts,
                      {"family": "elm_surface", "a": a, "b": b, "d": d,
                       "N": len(rational), "g": curve.genus,
                       "surface": surface, "beta": beta, "curve": curve,
                       "condition_rank": cond_rank,
                       "condition_count": len(cond_rows)})


def build_product_code(curve: CurveModel, a: int,
                       beta: DivisorOnCurve) -> LinearCode:
    """Tensor product PRS(a) (x) C_curve(beta) on the trivial surface,
    columns ordered like surface_rational_points (base major, fiber minor)."""
    spec = curve.spec
    prs = build_prs(spec, a)
    cc = build_curve_code(curve, beta)
    rational = curve.rational_points()
    fibers = list(range(spec.order)) + [INFTY]
    pts = [(p, u) for p in rational for u in fibers]
    matrix = []
    for i in range(prs.k):
        for j in range(cc.k):
            row = []
            for pi, p in enumerate(rational):
                for ui in range(len(fibers)):
                    row.append(spec.mul_i(cc.matrix[j][pi], prs.matrix[i][ui]))
            matrix.append(row)
    return LinearCode(spec, matrix, pts,
                      {"family": "product", "a": a, "b": beta.degree(),
                       "N": len(rational), "g": curve.genus, "beta": beta,
                       "curve": curve})


def build_unisecant(surface: RuledSurfaceModel, degL: int,
                    beta: DivisorOnCurve | None = None,
                    s_a: int | None = None,
                    segre_dmax: int | None = None) -> LinearCode:
    """The a = 1 code for a divisor of fiber degree degL, with the unisecant
    parameter records k >= deg E + 2(degL + 1 - g) and
    d >= q(N - (deg E - s_a)/2 - degL).

    For an elm surface s_a defaults to the certified graph-avoidance lower
    bound, which keeps the distance record valid.
    """
    curve = surface.curve
    g = curve.genus
    q = surface.q
    N = len(curve.rational_points())
    deg_e = surface.deg_sheaf
    k_bound = deg_e + 2 * (degL + 1 - g)
    if k_bound <= 0:
        raise ValueError(f"deg E + 2(degL + 1 - g) = {k_bound} must be positive")
    if s_a is None:
        if surface.variant == DECOMPOSABLE:
            s_a = segre_decomposable(surface)[1]
        else:
            s_a, _ = segre_lower_bound_elm(
                surface, 2 * g - 1 if segre_dmax is None else segre_dmax)
    if (deg_e - s_a) % 2 != 0:
        raise ValueError("parity violation: deg E and s_a must be congruent mod 2")
    d_bound = q * (N - (deg_e - s_a) // 2 - degL)
    if d_bound <= 0:
        raise ValueError(f"unisecant distance record {d_bound} must be positive")
    if beta is None:
        beta = _divisor_of_degree(surface, degL)
    if beta.degree() != degL:
        raise ValueError("beta degree does not match degL")
    if surface.variant == DECOMPOSABLE:
        code = build_code_decomposable(surface, 1, beta)
    else:
        code = build_code_elm(surface, 1, beta)
    code.meta.update({"family": "unisecant", "degL": degL, "s_a": s_a,
                      "k_lower_unisecant": k_bound,
                      "d_lower_unisecant": d_bound})
    return code


def _divisor_of_degree(surface: RuledSurfaceModel, deg: int) -> DivisorOnCurve:
    """A deterministic effective divisor of the given degree avoiding the
    rational points, supp(delta), and the elm center."""
    curve = surface.curve
    if deg == 0:
        return DivisorOnCurve(curve)
    if deg == 1:
        raise ValueError("degree-1 divisors would meet a rational point")
    excluded = set()
    if surface.variant == DECOMPOSABLE:
        excluded = set(surface.delta.support())
    else:
        excluded = {surface.base_point}
    for d in range(deg, 1, -1):
        if d > deg:
            continue
        rem = deg - d
        if rem == 1:
            continue
        pool = [p for p in curve.closed_points(d) if p not in excluded]
        if not pool:
            continue
        first = pool[0]
        if rem == 0:
            return DivisorOnCurve(curve, [(first, 1)])
        rest = _divisor_of_degree(surface, rem)
        if rest.multiplicity(first) == 0:
            return rest + DivisorOnCurve(curve, [(first, 1)])
    raise ValueError(f"no divisor of degree {deg} available off the excluded set")


def _check_disjoint(divisor: DivisorOnCurve, rational_points, name: str):
    rat = set(rational_points)
    for pt in divisor.support():
        if pt in rat:
            raise ValueError(f"supp({name}) meets the rational point {pt!r}")


# ---------------------------------------------------------------------------
# generator matrix wire format: "k n q" header then k rows of n integers

def write_matrix(code: LinearCode, path):
    with open(path, "w") as fh:
        fh.write(f"{code.k} {code.n} {code.spec.order}\n")
        for row in code.matrix:
            fh.write(" ".join(str(v) for v in row) + "\n")


def write_points(code: LinearCode, path):
    with open(path, "w") as fh:
        for label in code.column_labels():
            fh.write(label + "\n")


def read_matrix(path) -> LinearCode:
    from .gf import field_create, is_prime
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 3:
            raise ValueError("matrix header must be 'k n q'")
        k, n, q = (int(t) for t in header)
        p = next(f for f in range(2, q + 1) if q % f == 0 and is_prime(f))
        m = 0
        qq = q
        while qq > 1:
            qq //= p
            m += 1
        if p ** m != q:
            raise ValueError(f"q = {q} is not a prime power")
        spec = field_create(p, m)
        matrix = []
        for _ in range(k):
            row = [int(t) for t in fh.readline().split()]
            if len(row) != n:
                raise ValueError("matrix row has the wrong length")
            if any(not 0 <= v < q for v in row):
                raise ValueError("matrix entry out of field range")
            matrix.append(row)
    return LinearCode(spec, matrix, list(range(n)), {"family": "imported"})
