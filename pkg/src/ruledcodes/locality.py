"""Fiber restrictions, projective Lagrange recovery, and repair sets.

Restricting a surface codeword to the q+1 points of a fiber gives a word of
(a subcode of) the projective Reed-Solomon code PRS(a); when the fiber
restriction has full rank a+1 it equals PRS(a), and each coordinate can be
recovered from any a+1 other coordinates of its fiber.  Helper sets of size
a+1 are chunked greedily from the fiber points in canonical order, giving
floor(q/(a+1)) pairwise disjoint recovery sets per coordinate.  (The
availability stated with a ceiling is not achievable with disjoint sets of
exact size a+1 when a+1 does not divide q; reports surface the floor.)
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .codes import LinearCode, build_prs, build_curve_code
from .curve import ClosedPoint
from .surface import INFTY


@dataclass(frozen=True)
class RecoverySet:
    """Coefficients recovering one column from a+1 helpers in its fiber."""
    target: int
    helpers: tuple
    coefficients: tuple

    def as_dict(self):
        return {"target": self.target, "helpers": list(self.helpers),
                "coefficients": list(self.coefficients)}


def _fiber_indices(code: LinearCode, p: ClosedPoint):
    idx = [i for i, col in enumerate(code.columns)
           if isinstance(col, tuple) and col[0] == p]
    if not idx:
        raise ValueError(f"{p!r} is not a base point of the code's point index")
    return idx


def _base_points(code: LinearCode):
    seen = []
    for col in code.columns:
        if isinstance(col, tuple) and col[0] not in seen:
            seen.append(col[0])
    return seen


def restriction_fiber(code: LinearCode, p: ClosedPoint) -> LinearCode:
    """The code restricted to the q+1 columns of the fiber over p.

    meta carries the rank and whether the restriction equals PRS(a) as row
    spaces (the computational surrogate for the cohomological surjectivity
    condition).
    """
    idx = _fiber_indices(code, p)
    rows = [[row[i] for i in idx] for row in code.matrix]
    a = code.meta.get("a")
    sub = LinearCode(code.spec, rows, [code.columns[i] for i in idx],
                     {"family": "fiber_restriction", "a": a, "base": p})
    rk = linalg.rank(code.spec, rows)
    sub.meta["rank"] = rk
    if a is not None:
        assert rk <= a + 1, "fiber restriction rank exceeds a + 1"
        prs = build_prs(code.spec, a)
        sub.meta["equals_prs"] = (rk == a + 1
                                  and linalg.row_space_equal(code.spec, rows,
                                                             prs.matrix))
    return sub


def restriction_section(code: LinearCode, section_spec) -> LinearCode:
    """Restriction to the image of a section, one column per base point.

    section_spec is "zero" (the section u = 0, restriction inside the code
    of beta), "infinity" (the section at infinity, restriction inside the
    code of beta - a*delta), or an explicit list of fiber values per base
    point in base-point order.
    meta["expected_divisor"] names the base-curve divisor of the containing
    code when it is known.
    """
    bases = _base_points(code)
    if section_spec == "zero":
        fibers = {p: 0 for p in bases}
    elif section_spec == "infinity":
        fibers = {p: INFTY for p in bases}
    elif isinstance(section_spec, (list, tuple)):
        if len(section_spec) != len(bases):
            raise ValueError("one fiber value per base point is required")
        fibers = dict(zip(bases, section_spec))
    else:
        raise ValueError(f"malformed section spec {section_spec!r}")
    col_of = {col: i for i, col in enumerate(code.columns)}
    idx = []
    for p in bases:
        key = (p, fibers[p])
        if key not in col_of:
            raise ValueError(f"section point {key!r} is not an evaluation point")
        idx.append(col_of[key])
    rows = [[row[i] for i in idx] for row in code.matrix]
    meta = {"family": "section_restriction", "section": section_spec}
    beta = code.meta.get("beta")
    surface = code.meta.get("surface")
    a = code.meta.get("a")
    if beta is not None and a is not None:
        if section_spec == "zero":
            meta["expected_divisor"] = beta
        elif section_spec == "infinity" and surface is not None \
                and surface.variant == "decomposable":
            meta["expected_divisor"] = beta - a * surface.delta
    return LinearCode(code.spec, rows, [code.columns[i] for i in idx], meta)


def section_restriction_contained(code: LinearCode, section_spec) -> bool:
    """Row-space containment of the section restriction in the stated
    base-curve code (raises if the expected divisor is unknown)."""
    sub = restriction_section(code, section_spec)
    expected = sub.meta.get("expected_divisor")
    if expected is None:
        raise ValueError("no expected base-curve divisor for this section")
    curve = code.meta["curve"]
    outer = build_curve_code(curve, expected)
    return linalg.row_space_contains(code.spec, outer.matrix, sub.matrix)


def recovery_sets(code: LinearCode):
    """floor(q/(a+1)) pairwise disjoint recovery sets for every column.

    Requires every fiber restriction to have rank a+1 (checked); the
    coefficients come from projective Lagrange interpolation, the point at
    infinity carrying the degree-a coefficient.
    """
    a = code.meta.get("a")
    if a is None:
        raise ValueError("code has no fiber degree a in its metadata")
    spec = code.spec
    q = spec.order
    r = a + 1
    if r > q:
        raise ValueError("locality a + 1 exceeds the q remaining fiber points")
    prs = build_prs(spec, a)
    prs_col = {u: j for j, u in enumerate(prs.columns)}
    for p in _base_points(code):
        sub = restriction_fiber(code, p)
        if sub.meta["rank"] != r:
            raise ValueError(f"fiber over {p!r} has rank {sub.meta['rank']}, "
                             f"expected {r}; recovery sets unavailable")
    out = {}
    for target_idx, col in enumerate(code.columns):
        p, u_t = col
        fiber = _fiber_indices(code, p)
        others = [i for i in fiber if i != target_idx]
        # canonical order: affine encodings ascending, infinity last
        others.sort(key=lambda i: (code.columns[i][1] == INFTY,
                                   code.columns[i][1] if code.columns[i][1] != INFTY else 0))
        sets = []
        for s in range(q // r):
            chunk = others[s * r:(s + 1) * r]
            coeffs = _lagrange_coefficients(
                spec, prs, prs_col,
                [code.columns[i][1] for i in chunk], u_t)
            sets.append(RecoverySet(target_idx, tuple(chunk), tuple(coeffs)))
        out[target_idx] = sets
    return out


def _lagrange_coefficients(spec, prs: LinearCode, prs_col, helper_us, target_u):
    """gamma with h(target) = sum gamma_j h(helper_j) for all deg <= a forms."""
    r = prs.k
    cols = [prs_col[u] for u in helper_us]
    tcol = prs_col[target_u]
    system = [[prs.matrix[i][c] for c in cols] for i in range(r)]
    rhs = [prs.matrix[i][tcol] for i in range(r)]
    sol = linalg.solve(spec, system, rhs)
    assert sol is not None, "PRS helper columns were dependent"
    return sol


def recover(word, target: int, rset: RecoverySet, spec):
    """The erased coordinate from its helpers (word entries: int or None)."""
    if rset.target != target:
        raise ValueError("recovery set is for a different target")
    acc = 0
    for idx, c in zip(rset.helpers, rset.coefficients):
        v = word[idx]
        if v is None:
            raise ValueError(f"helper position {idx} is erased")
        acc = spec.add_i(acc, spec.mul_i(c, v))
    return acc
