"""Polynomials k[t] over a finite field, quotients k[t]/(n), and the residue at infinity."""
from __future__ import annotations

from .fields import GF, FieldElem, FieldError, _trim, pl_divmod, pl_mul, pl_add, pl_sub

ZERO_DEGREE = -1  # degree reported for the zero polynomial


class PolyRing:
    """k[t] for a finite field k."""

    def __init__(self, field: GF, var: str = "t"):
        self.field = field
        self.var = var
        self.q = field.q

    def __call__(self, coeffs) -> "Poly":
        return Poly(self, coeffs)

    def zero(self) -> "Poly":
        return Poly(self, [])

    def one(self) -> "Poly":
        return Poly(self, [1])

    def gen(self) -> "Poly":
        return Poly(self, [0, 1])

    def from_fq(self, c: int) -> "Poly":
        return Poly(self, [c])

    def monic_of_degree(self, d: int):
        """All monic polynomials of degree d, in degree-lex order of coefficient codes."""
        Q = self.field.order
        for code in range(Q ** d):
            cs = []
            for _ in range(d):
                code, r = divmod(code, Q)
                cs.append(r)
            yield Poly(self, cs + [1])

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.field == other.field and self.var == other.var

    def __hash__(self):
        return hash((self.field, self.var))

    def __repr__(self):
        return f"{self.field!r}[{self.var}]"


def _coerce_code(ring, c):
    if isinstance(c, FieldElem):
        return c.code
    return int(c)


class Poly:
    """Immutable polynomial with coefficient codes, low degree first, no trailing zeros."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: PolyRing, coeffs):
        self.ring = ring
        self.coeffs = tuple(_trim([_coerce_code(ring, c) for c in coeffs]))

    @property
    def field(self) -> GF:
        return self.ring.field

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_unit(self) -> bool:
        return len(self.coeffs) == 1

    def __bool__(self):
        return bool(self.coeffs)

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def _other(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise FieldError("polynomials over different rings")
            return other.coeffs
        if isinstance(other, FieldElem):
            return (other.code,) if other.code else ()
        if isinstance(other, int):
            c = self.field.from_int(other)
            return (c,) if c else ()
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Poly(self.ring, pl_add(self.field, list(self.coeffs), list(o)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Poly(self.ring, pl_sub(self.field, list(self.coeffs), list(o)))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Poly(self.ring, pl_sub(self.field, list(o), list(self.coeffs)))

    def __neg__(self):
        F = self.field
        return Poly(self.ring, [F.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Poly(self.ring, pl_mul(self.field, list(self.coeffs), list(o)))

    __rmul__ = __mul__

    def scale(self, c: int) -> "Poly":
        F = self.field
        return Poly(self.ring, [F.mul(c, a) for a in self.coeffs])

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        r, b = self.ring.one(), self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def divmod(self, other: "Poly"):
        o = self._other(other)
        if not o:
            raise ZeroDivisionError("division by the zero polynomial")
        qu, re = pl_divmod(self.field, list(self.coeffs), list(o))
        return Poly(self.ring, qu), Poly(self.ring, re)

    def __divmod__(self, other):
        return self.divmod(other)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def powmod(self, k: int, m: "Poly") -> "Poly":
        r, b = self.ring.one() % m, self % m
        while k:
            if k & 1:
                r = (r * b) % m
            b = (b * b) % m
            k >>= 1
        return r

    def eval(self, x: int) -> int:
        """Value at a code x of the coefficient field (Horner)."""
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def eval_in(self, x, ring):
        """Value at an element x of ``ring`` (which must provide zero() and from_fq())."""
        acc = ring.zero()
        for c in reversed(self.coeffs):
            acc = acc * x
            if c:
                acc = acc + ring.from_fq(c)
        return acc

    def __call__(self, x):
        if isinstance(x, int):
            return self.eval(x)
        if isinstance(x, FieldElem):
            return FieldElem(x.parent, self.eval(x.code))
        raise TypeError("use eval_in for non-field arguments")

    def inverse(self) -> "Poly":
        if self.degree != 0:
            raise ZeroDivisionError(f"{self!r} is not a unit of the polynomial ring")
        return Poly(self.ring, [self.field.inv(self.coeffs[0])])

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        inv = self.field.inv(self.lead())
        return self.scale(inv)

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other: "Poly"):
        """(g, s, u) with s*self + u*other = g monic."""
        r0, r1 = self, other
        s0, s1 = self.ring.one(), self.ring.zero()
        u0, u1 = self.ring.zero(), self.ring.one()
        while r1:
            qq, rr = r0.divmod(r1)
            r0, r1 = r1, rr
            s0, s1 = s1, s0 - qq * s1
            u0, u1 = u1, u0 - qq * u1
        if not r0:
            return r0, s0, u0
        inv = self.field.inv(r0.lead())
        return r0.scale(inv), s0.scale(inv), u0.scale(inv)

    def derivative(self) -> "Poly":
        F = self.field
        return Poly(self.ring, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def sigma(self, k: int = 1) -> "Poly":
        """Apply the q^k-power Frobenius to coefficients only (t fixed)."""
        F = self.field
        return Poly(self.ring, [F.frob(c, k) for c in self.coeffs])

    def frob(self, k: int = 1) -> "Poly":
        """The q^k-th power of the polynomial."""
        F = self.field
        qk = self.ring.q ** k
        out = [0] * ((len(self.coeffs) - 1) * qk + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * qk] = F.frob(c, k)
        return Poly(self.ring, out)

    def reversed(self) -> "Poly":
        return Poly(self.ring, list(reversed(self.coeffs)))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs and self.ring == other.ring
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.coeffs == tuple(o)

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        v = self.ring.var
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else (v if i == 1 else f"{v}^{i}")
            if i == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms)


# ---------------------------------------------------------------------------

class QuotientRing:
    """k[t]/(n) for a nonzero polynomial n; any n is allowed (the ring need not be a field)."""

    def __init__(self, modulus: Poly):
        if modulus.is_zero() or modulus.degree < 1:
            raise ValueError("modulus must have positive degree")
        self.modulus = modulus.monic()
        self.poly_ring = modulus.ring
        self.field = modulus.field
        self.q = self.field.q
        self.degree = self.modulus.degree

    def __call__(self, value) -> "ModElem":
        if not isinstance(value, Poly):
            value = Poly(self.poly_ring, value if isinstance(value, (list, tuple)) else [value])
        return ModElem(self, value)

    def zero(self):
        return ModElem(self, self.poly_ring.zero(), reduced=True)

    def one(self):
        return ModElem(self, self.poly_ring.one())

    def t(self):
        return ModElem(self, self.poly_ring.gen())

    def from_fq(self, c: int):
        return ModElem(self, self.poly_ring.from_fq(c))

    def from_vector(self, vec) -> "ModElem":
        return ModElem(self, Poly(self.poly_ring, list(vec)))

    def elements(self):
        Q = self.field.order
        for code in range(Q ** self.degree):
            cs = []
            for _ in range(self.degree):
                code, r = divmod(code, Q)
                cs.append(r)
            yield ModElem(self, Poly(self.poly_ring, cs), reduced=True)

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("Q", self.modulus))

    def __repr__(self):
        return f"{self.poly_ring!r}/({self.modulus!r})"


class ModElem:
    """Residue class of a polynomial modulo n."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: QuotientRing, value: Poly, reduced: bool = False):
        self.ring = ring
        self.value = value if reduced else value % ring.modulus

    @property
    def modulus(self) -> Poly:
        return self.ring.modulus

    def _v(self, other):
        if isinstance(other, ModElem):
            if other.ring != self.ring:
                raise FieldError("mismatched moduli")
            return other.value
        if isinstance(other, (Poly, int, FieldElem)):
            return ModElem(self.ring, other if isinstance(other, Poly) else self.ring.poly_ring.zero() + other).value
        return None

    def __add__(self, other):
        o = self._v(other)
        if o is None:
            return NotImplemented
        return ModElem(self.ring, self.value + o, reduced=True)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._v(other)
        if o is None:
            return NotImplemented
        return ModElem(self.ring, self.value - o, reduced=True)

    def __rsub__(self, other):
        o = self._v(other)
        if o is None:
            return NotImplemented
        return ModElem(self.ring, o - self.value, reduced=True)

    def __neg__(self):
        return ModElem(self.ring, -self.value, reduced=True)

    def __mul__(self, other):
        o = self._v(other)
        if o is None:
            return NotImplemented
        return ModElem(self.ring, self.value * o)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return ModElem(self.ring, self.value.powmod(k, self.ring.modulus), reduced=True)

    def is_unit(self) -> bool:
        return self.value.gcd(self.ring.modulus).degree == 0

    def inverse(self) -> "ModElem":
        g, s, _ = self.value.xgcd(self.ring.modulus)
        if g.degree != 0:
            raise ZeroDivisionError(f"{self.value!r} is not a unit modulo {self.ring.modulus!r}")
        return ModElem(self.ring, s)

    def __truediv__(self, other):
        o = other if isinstance(other, ModElem) else ModElem(self.ring, self._v(other), reduced=True)
        return self * o.inverse()

    def sigma(self, k: int = 1) -> "ModElem":
        """Coefficientwise q^k-Frobenius with t fixed; well defined since n has F_q coefficients."""
        return ModElem(self.ring, self.value.sigma(k))

    def frob(self, k: int = 1) -> "ModElem":
        return ModElem(self.ring, self.value.frob(k))

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def __bool__(self):
        return not self.value.is_zero()

    def vector(self) -> list[int]:
        """Coefficient codes of the reduced representative, padded to deg n."""
        cs = list(self.value.coeffs)
        return cs + [0] * (self.ring.degree - len(cs))

    def __eq__(self, other):
        if isinstance(other, ModElem):
            return self.ring == other.ring and self.value == other.value
        o = self._v(other)
        if o is None:
            return NotImplemented
        return self.value == o

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f"[{self.value!r}]"


# ---------------------------------------------------------------------------

def residue_at_infinity(a: Poly, b: Poly) -> int:
    """Res_inf((a/b) dt) with u = 1/t and dt = -u^-2 du; the u^-1 du coefficient.

    Writing a = t^da a~(u), b = t^db b~(u) with reversed polynomials a~, b~,
    (a/b) dt = -u^(db-da-2) (a~/b~) du, so the residue is -[u^k](a~/b~) with
    k = da - db + 1.
    """
    if b.is_zero():
        raise ZeroDivisionError("residue of a/0")
    F = a.field
    if a.is_zero():
        return 0
    k = a.degree - b.degree + 1
    if k < 0:
        return 0
    ar, br = a.coeffs[::-1], b.coeffs[::-1]
    # power series quotient a~/b~ up to u^k
    inv0 = F.inv(br[0])
    quo = []
    for j in range(k + 1):
        acc = ar[j] if j < len(ar) else 0
        for i in range(1, min(j, len(br) - 1) + 1):
            acc = F.sub(acc, F.mul(br[i], quo[j - i]))
        quo.append(F.mul(acc, inv0))
    return F.neg(quo[k])


def residue_pairing(n: Poly, a: ModElem, b: ModElem) -> int:
    """Res_inf(n^-1 a b dt) on representatives of a, b in A/(n)."""
    if a.ring != b.ring or a.ring.modulus != n.monic():
        raise FieldError("mismatched moduli")
    return residue_at_infinity(a.value * b.value, n)


def residue_gram(n: Poly) -> list[list[int]]:
    """Gram matrix of the residue pairing on the monomial basis 1, t, ..., t^(d-1)."""
    d = n.degree
    R = n.ring
    return [[residue_at_infinity(Poly(R, [0] * (i + j) + [1]), n) for j in range(d)] for i in range(d)]
