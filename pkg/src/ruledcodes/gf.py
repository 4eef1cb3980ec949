"""Exact arithmetic in finite fields F_{p^m} and their extensions.

Every field is represented absolutely, as F_p[z]/(f) for a deterministic
irreducible modulus f (the lexicographically least one in ascending
coefficient-encoding order), so serialized data is reproducible across runs.
Elements are encoded as integers in [0, p^deg) via sum(c_i * p^i) over the
coefficient vector; this encoding is the wire format used by all exports.

An extension F_{q^d} of a field F_q is just another absolute field of degree
deg(F_q) * d over F_p, together with a cached embedding computed once by
finding the least root of the small modulus inside the big field.  The
Frobenius of a field is x -> x^q where q is the cardinality of the field it
was extended from (for a field built directly by field_create, its own
cardinality, so Frobenius is the identity there).
"""

from __future__ import annotations


DESK_CAP = 1 << 20          # largest field order we agree to construct
_TABLE_MAX = 1 << 16        # build exp/log tables up to this order


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# low-level polynomial arithmetic over F_p (coefficient lists, ascending)

def _pnorm(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pnorm(out)


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    a = a[:]
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df and a:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _pnorm(a)
    return a


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = a[:], b[:]
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


def _ppowmod(base: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def _is_irreducible(f: list[int], p: int) -> bool:
    """Rabin test: f of degree n is irreducible over F_p iff x^(p^n) = x
    mod f and gcd(x^(p^(n/l)) - x, f) = 1 for every prime l dividing n."""
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    x = [0, 1]
    for ell in _prime_factors(n):
        h = _ppowmod(x, p ** (n // ell), f, p)
        h = _pnorm([(h[i] if i < len(h) else 0) - (x[i] if i < len(x) else 0)
                    for i in range(max(len(h), len(x)))])
        h = [c % p for c in h]
        if len(_pgcd(h, f, p)) != 1:
            return False
    top = _ppowmod(x, p ** n, f, p)
    return top == x


def _least_irreducible(p: int, n: int) -> list[int]:
    # monic degree-n polynomials scanned in ascending low-coefficient encoding
    for enc in range(p ** n):
        coeffs = []
        e = enc
        for _ in range(n):
            coeffs.append(e % p)
            e //= p
        f = coeffs + [1]
        if _is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------

class FieldSpec:
    """An absolute finite field F_p[z]/(modulus) of a given degree over F_p.

    base_card is the cardinality q of the tower base: frobenius acts as
    x -> x^q.  Do not call the constructor directly; use field_create and
    extend, which cache specs so equal fields are identical objects.
    """

    __slots__ = ("p", "deg", "modulus", "base_card", "order", "_exp", "_log",
                 "_embeddings", "_digit_cache", "_trace_one")

    def __init__(self, p: int, deg: int, modulus: tuple[int, ...],
                 base_card: int):
        self.p = p
        self.deg = deg
        self.modulus = modulus          # full coefficient tuple, monic
        self.base_card = base_card
        self.order = p ** deg
        self._exp = None
        self._log = None
        self._embeddings = {}
        self._digit_cache = None
        self._trace_one = None
        if self.order <= _TABLE_MAX:
            self._build_tables()

    # -- representation helpers

    def __repr__(self):
        return f"GF({self.p}^{self.deg})"

    def encode(self, coeffs) -> int:
        enc = 0
        for c in reversed(list(coeffs)):
            enc = enc * self.p + (int(c) % self.p)
        return enc

    def decode(self, enc: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.deg):
            out.append(enc % self.p)
            enc //= self.p
        return tuple(out)

    # -- integer-encoded arithmetic (the inner-loop API)

    def add_i(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.deg == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        mult = 1
        while a or b:
            out += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg_i(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.deg == 1:
            return (-a) % self.p
        p = self.p
        out = 0
        mult = 1
        while a:
            out += ((-a) % p) * mult
            a //= p
            mult *= p
        return out

    def sub_i(self, a: int, b: int) -> int:
        return self.add_i(a, self.neg_i(b))

    def mul_i(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        prod = _pmul(list(self.decode(a)), list(self.decode(b)), self.p)
        prod = _pmod(prod, list(self.modulus), self.p)
        return self.encode(prod + [0] * (self.deg - len(prod)))

    def inv_i(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of zero field element")
        if self._exp is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self.pow_i(a, self.order - 2)

    def pow_i(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inversion of zero field element")
            return 1 if e == 0 else 0
        if e < 0:
            a = self.inv_i(a)
            e = -e
        e %= self.order - 1
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        result = 1
        while e:
            if e & 1:
                result = self.mul_i(result, a)
            a = self.mul_i(a, a)
            e >>= 1
        return result

    def frob_i(self, a: int) -> int:
        return self.pow_i(a, self.base_card)

    def sqrt_i(self, a: int):
        """A square root of a, or None if a is not a square.  Odd p only."""
        if self.p == 2:
            # squaring is bijective in characteristic 2
            return self.pow_i(a, self.order // 2)
        if a == 0:
            return 0
        if self._exp is not None:
            l = self._log[a]
            if l % 2:
                return None
            return self._exp[l // 2]
        if self.pow_i(a, (self.order - 1) // 2) != 1:
            return None
        return self._tonelli(a)

    def _tonelli(self, a: int) -> int:
        q, s = self.order - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        # least non-residue in encoding order, deterministic
        z = next(e for e in range(2, self.order)
                 if self.pow_i(e, (self.order - 1) // 2) != 1)
        m, c, t, r = s, self.pow_i(z, q), self.pow_i(a, q), self.pow_i(a, (q + 1) // 2)
        while t != 1:
            t2, i = t, 0
            while t2 != 1:
                t2 = self.mul_i(t2, t2)
                i += 1
            b = self.pow_i(c, 1 << (m - i - 1))
            m, c = i, self.mul_i(b, b)
            t, r = self.mul_i(t, c), self.mul_i(r, b)
        return r

    def trace2_i(self, a: int) -> int:
        """Absolute trace to F_2 (characteristic 2 only)."""
        t = 0
        x = a
        for _ in range(self.deg):
            t = self.add_i(t, x)
            x = self.mul_i(x, x)
        return t

    def trace_one_element(self) -> int:
        """A cached element of absolute trace 1 (characteristic 2)."""
        if self._trace_one is None:
            self._trace_one = next(e for e in range(1, self.order)
                                   if self.trace2_i(e) == 1)
        return self._trace_one

    # -- tables

    def _build_tables(self):
        n1 = self.order - 1
        factors = _prime_factors(n1) if n1 > 1 else []
        gen = None
        for cand in range(1, self.order):
            if all(self._pow_slow(cand, n1 // ell) != 1 for ell in factors):
                gen = cand
                break
        exp = [0] * n1
        log = [0] * self.order
        x = 1
        for i in range(n1):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, gen)
        self._exp, self._log = exp, log

    def _mul_slow(self, a: int, b: int) -> int:
        prod = _pmul(list(self.decode(a)), list(self.decode(b)), self.p)
        prod = _pmod(prod, list(self.modulus), self.p)
        return self.encode(prod + [0] * (self.deg - len(prod)))

    def _pow_slow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_slow(r, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return r

    # -- element-level API

    def element(self, enc: int) -> "FieldElement":
        return FieldElement(self, enc % self.order)

    def from_coeffs(self, coeffs) -> "FieldElement":
        return FieldElement(self, self.encode(coeffs))

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self):
        for enc in range(self.order):
            yield FieldElement(self, enc)

    # -- embeddings

    def _embedding_powers(self, small: "FieldSpec") -> list[int]:
        key = (small.p, small.deg, small.modulus)
        if key in self._embeddings:
            return self._embeddings[key]
        if small.p != self.p or self.deg % small.deg != 0:
            raise ValueError(f"{small} does not embed into {self}")
        if small.deg == self.deg:
            if small.modulus != self.modulus:
                raise ValueError("distinct specs of the same degree")
            pows = [self.encode((0,) * i + (1,) + (0,) * (self.deg - i - 1))
                    for i in range(small.deg)]
            self._embeddings[key] = pows
            return pows
        # least root of the small modulus inside this field; roots form one
        # p-power orbit, and an ascending scan finds the least one first
        mod = small.modulus
        root = None
        for cand in range(self.order):
            acc = 0
            for c in reversed(mod):
                acc = self.add_i(self.mul_i(acc, cand), c % self.p)
            if acc == 0:
                root = cand
                break
        if root is None:
            raise AssertionError("modulus has no root in extension")
        pows = [1]
        for _ in range(small.deg - 1):
            pows.append(self.mul_i(pows[-1], root))
        self._embeddings[key] = pows
        return pows

    def embed_i(self, small: "FieldSpec", enc: int) -> int:
        if small is self:
            return enc
        pows = self._embedding_powers(small)
        digits = small.decode(enc)
        out = 0
        for d, r in zip(digits, pows):
            if d:
                out = self.add_i(out, self.mul_i(d, r))
        return out

    def __eq__(self, other):
        return self is other or (isinstance(other, FieldSpec)
                                 and self.p == other.p
                                 and self.deg == other.deg
                                 and self.modulus == other.modulus
                                 and self.base_card == other.base_card)

    def __hash__(self):
        return hash((self.p, self.deg, self.modulus, self.base_card))


class FieldElement:
    """An element of a FieldSpec, immutable, encoded as an integer."""

    __slots__ = ("spec", "val")

    def __init__(self, spec: FieldSpec, val: int):
        self.spec = spec
        self.val = val

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.decode(self.val)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec is not self.spec and other.spec != self.spec:
                raise ValueError("mixed field specs")
            return other.val
        if isinstance(other, int):
            return other % self.spec.p if self.spec.deg >= 1 else other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.add_i(self.val, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.sub_i(self.val, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.sub_i(v, self.val))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg_i(self.val))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.mul_i(self.val, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.mul_i(self.val, self.spec.inv_i(v)))

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.mul_i(v, self.spec.inv_i(self.val)))

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.spec.pow_i(self.val, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv_i(self.val))

    def frobenius(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.frob_i(self.val))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.val == other.val and self.spec == other.spec
        if isinstance(other, int):
            return self.val == other
        return NotImplemented

    def __hash__(self):
        return hash((self.val, self.spec.p, self.spec.deg))

    def __bool__(self):
        return self.val != 0

    def __repr__(self):
        return f"{self.val}@{self.spec!r}"


_SPEC_CACHE: dict = {}


def field_create(p: int, m: int) -> FieldSpec:
    """The field F_{p^m} with the deterministic least modulus.

    Raises ValueError if p is not prime or m < 1.
    """
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if m < 1:
        raise ValueError(f"extension degree m = {m} must be >= 1")
    if p ** m > DESK_CAP:
        raise ValueError(f"field order {p}^{m} exceeds desk-scale cap {DESK_CAP}")
    key = ("create", p, m)
    if key not in _SPEC_CACHE:
        modulus = tuple(_least_irreducible(p, m))
        _SPEC_CACHE[key] = FieldSpec(p, m, modulus, p ** m)
    return _SPEC_CACHE[key]


def extend(spec: FieldSpec, d: int) -> FieldSpec:
    """The extension F_{q^d} of spec = F_q, with Frobenius x -> x^q.

    The declared Frobenius exponent is the cardinality of the field being
    extended, so orbits partition F_{q^d} into closed points over F_q.
    The embedding of spec is computed eagerly and cached; use embed().
    """
    if d < 1:
        raise ValueError("extension degree must be >= 1")
    if d == 1:
        return spec
    n = spec.deg * d
    if spec.p ** n > DESK_CAP:
        raise ValueError(f"field order {spec.p}^{n} exceeds desk-scale cap {DESK_CAP}")
    key = ("extend", spec.p, n, spec.order)
    if key not in _SPEC_CACHE:
        modulus = tuple(_least_irreducible(spec.p, n))
        _SPEC_CACHE[key] = FieldSpec(spec.p, n, modulus, spec.order)
    big = _SPEC_CACHE[key]
    big._embedding_powers(spec)  # force and cache the embedding now
    return big


def embed(x: FieldElement, target: FieldSpec) -> FieldElement:
    """Image of x under the cached embedding of its field into target."""
    return FieldElement(target, target.embed_i(x.spec, x.val))


def frobenius_orbit(x: FieldElement) -> list[FieldElement]:
    """Orbit of x under the tower Frobenius y -> y^q, starting at x."""
    orbit = [x]
    y = x.frobenius()
    while y.val != x.val:
        orbit.append(y)
        y = y.frobenius()
    return orbit


def solve_quadratic(spec: FieldSpec, b: int, c: int) -> list[int]:
    """Encoded roots y of y^2 + b*y = c, without multiplicity, sorted."""
    if spec.p == 2:
        if b == 0:
            return [spec.sqrt_i(c)]
        binv2 = spec.inv_i(spec.mul_i(b, b))
        a = spec.mul_i(c, binv2)
        if spec.trace2_i(a) != 0:
            return []
        z0 = _artin_schreier_root(spec, a)
        r1 = spec.mul_i(b, z0)
        r2 = spec.add_i(r1, b)
        return sorted({r1, r2})
    # odd characteristic: complete the square
    inv2 = spec.inv_i(2 % spec.p)
    disc = spec.add_i(spec.mul_i(b, b), spec.mul_i(4 % spec.p, c))
    if disc == 0:
        return [spec.mul_i(spec.neg_i(b), inv2)]
    s = spec.sqrt_i(disc)
    if s is None:
        return []
    r1 = spec.mul_i(spec.add_i(spec.neg_i(b), s), inv2)
    r2 = spec.mul_i(spec.sub_i(spec.neg_i(b), s), inv2)
    return sorted({r1, r2})


def _artin_schreier_root(spec: FieldSpec, a: int) -> int:
    """One root z of z^2 + z = a over F_{2^n}, assuming Tr(a) = 0."""
    n = spec.deg
    if n % 2 == 1:
        # half trace
        z = a
        acc = a
        for _ in range((n - 1) // 2):
            acc = spec.mul_i(acc, acc)
            acc = spec.mul_i(acc, acc)
            z = spec.add_i(z, acc)
        return z
    theta = spec.trace_one_element()
    # z = sum_{i=0}^{n-2} (sum_{j=0}^{i} a^{2^j}) * theta^{2^{i+1}}
    z = 0
    partial = a
    theta_pow = spec.mul_i(theta, theta)
    for i in range(n - 1):
        z = spec.add_i(z, spec.mul_i(partial, theta_pow))
        partial = spec.add_i(partial, spec.pow_i(a, 1 << (i + 1)))
        theta_pow = spec.mul_i(theta_pow, theta_pow)
    assert spec.add_i(spec.mul_i(z, z), z) == a, "Artin-Schreier solve failed"
    return z
