"""Exact arithmetic in k = F_p(t_1, ..., t_r) and its towers of p-power roots.

The ground field is the rational function field over the prime field F_p in
finitely many indeterminates.  Such a field is imperfect as soon as r >= 1,
and everything downstream (splitting levels, residue fields at infinity,
Picard data) hinges on deciding p-th power membership exactly.  Polynomials
are sparse maps from exponent vectors to nonzero residues mod p; rational
functions are kept in a canonical reduced form so that equality is
structural.

Elements of the root tower k^(1/p^N) are represented over an auxiliary
rational function field in variables u_j subject to u_j^(p^N) = t_j.  The
tower is free of rank p^(r*N) over k, which gives exact linear algebra for
subfield membership and compositum degrees.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional, Sequence

from .linalg import RowSpace

DEFAULT_BASIS_CAP = 4096
BASIS_CAP_ENV = "UNIPIC_BASIS_CAP"

NEG_INF = float("-inf")


class FieldMismatch(ValueError):
    """Operands live over different field descriptions."""


class DivisionByZero(ZeroDivisionError):
    """Division by the zero polynomial or rational function."""


class UnknownVariable(ValueError):
    """A variable name is not declared by the field."""


class ZeroInput(ValueError):
    """Zero was passed where a nonzero element is required."""


class LevelMismatch(ValueError):
    """Root-tower elements at different levels were combined."""


class BasisTooLarge(ValueError):
    """The dense tower basis p^(r*N) exceeds the configured cap."""


def basis_cap() -> int:
    """Dense-basis bound for tower linear algebra, overridable by env var."""
    raw = os.environ.get(BASIS_CAP_ENV)
    if raw is None:
        return DEFAULT_BASIS_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"{BASIS_CAP_ENV} must be an integer, got {raw!r}") from exc
    if cap <= 0:
        raise ValueError(f"{BASIS_CAP_ENV} must be positive, got {cap}")
    return cap


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldDesc:
    """Description of k = F_p(vars); r = 0 gives the prime field itself."""

    p: int
    vars: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"characteristic must be prime, got {self.p}")
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")
        for v in self.vars:
            if not v:
                raise ValueError("empty variable name")

    @property
    def r(self) -> int:
        return len(self.vars)

    def var_index(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise UnknownVariable(f"{name!r} is not a variable of {self}") from None

    def zero(self) -> "RatFunc":
        return RatFunc(MPoly.zero(self), MPoly.one(self))

    def one(self) -> "RatFunc":
        return RatFunc(MPoly.one(self), MPoly.one(self))

    def const(self, c: int) -> "RatFunc":
        return RatFunc(MPoly.const(self, c), MPoly.one(self))

    def var(self, name: str) -> "RatFunc":
        i = self.var_index(name)
        e = tuple(1 if j == i else 0 for j in range(self.r))
        return RatFunc(MPoly(self, {e: 1}), MPoly.one(self))

    def generators(self) -> tuple["RatFunc", ...]:
        return tuple(self.var(v) for v in self.vars)

    def __str__(self) -> str:
        if not self.vars:
            return f"GF({self.p})"
        return f"GF({self.p})({', '.join(self.vars)})"


def _grlex_key(e: tuple[int, ...]) -> tuple:
    return (sum(e), e)


class MPoly:
    """Sparse multivariate polynomial over F_p.

    terms maps exponent tuples (length = field.r) to residues in [1, p-1].
    Instances are treated as immutable; all operations return new objects.
    """

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, field: FieldDesc, terms: dict):
        self.field = field
        self.terms = terms
        self._hash = None

    # -- construction ---------------------------------------------------

    @classmethod
    def make(cls, field: FieldDesc, raw: dict) -> "MPoly":
        p = field.p
        terms = {}
        for e, c in raw.items():
            c %= p
            if c:
                terms[e] = c
        return cls(field, terms)

    @classmethod
    def zero(cls, field: FieldDesc) -> "MPoly":
        return cls(field, {})

    @classmethod
    def one(cls, field: FieldDesc) -> "MPoly":
        return cls(field, {(0,) * field.r: 1})

    @classmethod
    def const(cls, field: FieldDesc, c: int) -> "MPoly":
        c %= field.p
        if c == 0:
            return cls.zero(field)
        return cls(field, {(0,) * field.r: c})

    @classmethod
    def var(cls, field: FieldDesc, name: str) -> "MPoly":
        i = field.var_index(name)
        e = tuple(1 if j == i else 0 for j in range(field.r))
        return cls(field, {e: 1})

    # -- predicates -----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_one(self) -> bool:
        return self.terms == {(0,) * self.field.r: 1}

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {(0,) * self.field.r}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    # -- basic queries --------------------------------------------------

    def total_degree(self):
        """Total degree; the zero polynomial reports -inf."""
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def degree_in(self, v: int) -> int:
        if not self.terms:
            return -1
        return max(e[v] for e in self.terms)

    def leading(self) -> tuple[tuple[int, ...], int]:
        """Leading (exponent, coeff) under graded lex on the variable order."""
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def constant_coeff(self) -> int:
        return self.terms.get((0,) * self.field.r, 0)

    # -- ring operations ------------------------------------------------

    def _check(self, other: "MPoly") -> None:
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: "MPoly") -> "MPoly":
        self._check(other)
        p = self.field.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = (out.get(e, 0) + c) % p
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return MPoly(self.field, out)

    def __neg__(self) -> "MPoly":
        p = self.field.p
        return MPoly(self.field, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __mul__(self, other: "MPoly") -> "MPoly":
        self._check(other)
        p = self.field.p
        if not self.terms or not other.terms:
            return MPoly.zero(self.field)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = (out.get(e, 0) + ca * cb) % p
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return MPoly(self.field, out)

    def scale(self, c: int) -> "MPoly":
        c %= self.field.p
        if c == 0:
            return MPoly.zero(self.field)
        if c == 1:
            return self
        p = self.field.p
        return MPoly(self.field, {e: (c * k) % p for e, k in self.terms.items()})

    def mul_monomial(self, exp: tuple[int, ...], c: int = 1) -> "MPoly":
        p = self.field.p
        c %= p
        if c == 0:
            return MPoly.zero(self.field)
        return MPoly(
            self.field,
            {tuple(a + b for a, b in zip(e, exp)): (k * c) % p for e, k in self.terms.items()},
        )

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- char-p structure ----------------------------------------------

    def scale_exponents(self, k: int) -> "MPoly":
        """Raise to the p^j-th power, phrased as exponent scaling (k = p^j)."""
        if k == 1:
            return self
        return MPoly(self.field, {tuple(x * k for x in e): c for e, c in self.terms.items()})

    def frobenius(self, j: int = 1) -> "MPoly":
        return self.scale_exponents(self.field.p ** j)

    def pth_root(self) -> Optional["MPoly"]:
        """Inverse of Frobenius when it exists: divide all exponents by p.

        Coefficients in F_p are fixed by Frobenius, so only the exponent
        divisibility can obstruct.
        """
        p = self.field.p
        out = {}
        for e, c in self.terms.items():
            if any(x % p for x in e):
                return None
            out[tuple(x // p for x in e)] = c
        return MPoly(self.field, out)

    def partial(self, v: int) -> "MPoly":
        p = self.field.p
        out = {}
        for e, c in self.terms.items():
            k = e[v]
            cc = (c * k) % p
            if k and cc:
                e2 = tuple(x - 1 if i == v else x for i, x in enumerate(e))
                out[e2] = (out.get(e2, 0) + cc) % p
                if not out[e2]:
                    del out[e2]
        return MPoly(self.field, out)

    def embed(self, target: FieldDesc, var_images: Sequence[tuple[int, int]]) -> "MPoly":
        """Monomial substitution t_i -> (target var at index j)^s.

        var_images[i] = (j, s).  Supports both field enlargement and the
        tower rewrite t -> u^(p^N).
        """
        if len(var_images) != self.field.r:
            raise ValueError("need one image per source variable")
        out = {}
        for e, c in self.terms.items():
            img = [0] * target.r
            for i, x in enumerate(e):
                j, s = var_images[i]
                img[j] += x * s
            key = tuple(img)
            cc = (out.get(key, 0) + c) % target.p
            if cc:
                out[key] = cc
            elif key in out:
                del out[key]
        return MPoly(target, out)

    # -- division and gcd ----------------------------------------------

    def exact_div(self, d: "MPoly") -> "MPoly":
        """Quotient self/d, assuming the division is exact."""
        self._check(d)
        if not d:
            raise DivisionByZero("division by the zero polynomial")
        p = self.field.p
        if d.is_monomial():
            (ed, cd), = d.terms.items()
            inv = pow(cd, -1, p)
            out = {}
            for e, c in self.terms.items():
                q = tuple(a - b for a, b in zip(e, ed))
                if any(x < 0 for x in q):
                    raise ValueError("inexact monomial division")
                out[q] = (c * inv) % p
            return MPoly(self.field, out)
        ed, cd = d.leading()
        inv = pow(cd, -1, p)
        rem = self
        quot: dict = {}
        while rem:
            er, cr = rem.leading()
            q = tuple(a - b for a, b in zip(er, ed))
            if any(x < 0 for x in q):
                raise ValueError("inexact division")
            cq = (cr * inv) % p
            quot[q] = cq
            rem = rem - d.mul_monomial(q, cq)
        return MPoly(self.field, quot)

    def monic(self) -> "MPoly":
        if not self.terms:
            return self
        _, c = self.leading()
        return self.scale(pow(c, -1, self.field.p))

    def _coeffs_in(self, v: int) -> dict[int, "MPoly"]:
        """Split into coefficients of powers of variable v (v cleared)."""
        buckets: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[v]
            e2 = tuple(x if i != v else 0 for i, x in enumerate(e))
            buckets.setdefault(k, {})[e2] = c
        return {k: MPoly(self.field, t) for k, t in buckets.items()}

    def __eq__(self, other) -> bool:
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self.terms.items())))
        return self._hash

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            factors = []
            for name, k in zip(self.field.vars, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append("*".join([str(c)] + factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"MPoly({self})"


def _gcd_list(polys: list[MPoly], v: int) -> MPoly:
    field = polys[0].field
    g = MPoly.zero(field)
    for f in polys:
        g = _gcd_rec(g, f, v)
        if g.is_one():
            break
    return g


def _pseudo_rem(f: MPoly, g: MPoly, v: int) -> MPoly:
    """Pseudo-remainder of f by g as univariate polynomials in variable v."""
    dg = g.degree_in(v)
    gc = g._coeffs_in(v)
    lg = gc[dg]
    while f and f.degree_in(v) >= dg:
        df = f.degree_in(v)
        fc = f._coeffs_in(v)
        lf = fc[df]
        shift = tuple(df - dg if i == v else 0 for i in range(f.field.r))
        f = f * lg - g * lf.mul_monomial(shift)
    return f


def _primitive(f: MPoly, v: int) -> MPoly:
    if not f:
        return f
    cont = _gcd_list(list(f._coeffs_in(v).values()), v - 1)
    if cont.is_one():
        return f
    return f.exact_div(cont)


def _gcd_rec(f: MPoly, g: MPoly, v: int) -> MPoly:
    if not f:
        return g.monic()
    if not g:
        return f.monic()
    if f.is_monomial() or g.is_monomial():
        exps = [min(e[i] for e in f.terms) for i in range(f.field.r)]
        exps2 = [min(e[i] for e in g.terms) for i in range(g.field.r)]
        return MPoly(f.field, {tuple(min(a, b) for a, b in zip(exps, exps2)): 1})
    while v >= 0 and f.degree_in(v) == 0 and g.degree_in(v) == 0:
        v -= 1
    if v < 0:
        return MPoly.one(f.field)
    fc = list(f._coeffs_in(v).values())
    gc = list(g._coeffs_in(v).values())
    cont_f = _gcd_list(fc, v - 1)
    cont_g = _gcd_list(gc, v - 1)
    c = _gcd_rec(cont_f, cont_g, v - 1)
    a = f.exact_div(cont_f)
    b = g.exact_div(cont_g)
    if a.degree_in(v) < b.degree_in(v):
        a, b = b, a
    while b:
        r = _pseudo_rem(a, b, v)
        a, b = b, _primitive(r, v)
    return (c * _primitive(a, v)).monic()


def poly_gcd(f: MPoly, g: MPoly) -> MPoly:
    """Monic gcd via recursion over the last variable with content extraction."""
    if f.field != g.field:
        raise FieldMismatch(f"{f.field} vs {g.field}")
    return _gcd_rec(f, g, f.field.r - 1)


class RatFunc:
    """Canonical rational function num/den over F_p(vars).

    Canonical form: gcd(num, den) = 1 and the graded-lex leading coefficient
    of den is 1.  Equality and hashing are structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: MPoly, den: MPoly, reduced: bool = False):
        if num.field != den.field:
            raise FieldMismatch(f"{num.field} vs {den.field}")
        if not den:
            raise DivisionByZero("zero denominator")
        if not reduced:
            if not num:
                den = MPoly.one(num.field)
            elif not den.is_one():
                g = poly_gcd(num, den)
                if not g.is_one():
                    num = num.exact_div(g)
                    den = den.exact_div(g)
            _, lc = den.leading()
            if lc != 1:
                inv = pow(lc, -1, den.field.p)
                num = num.scale(inv)
                den = den.scale(inv)
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_poly(cls, f: MPoly) -> "RatFunc":
        return cls(f, MPoly.one(f.field), reduced=True)

    @property
    def field(self) -> FieldDesc:
        return self.num.field

    # -- predicates -----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_one()

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other) -> Optional["RatFunc"]:
        if isinstance(other, RatFunc):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, int):
            return self.field.const(other)
        if isinstance(other, MPoly):
            return RatFunc.from_poly(other)
        return None

    def __add__(self, other) -> "RatFunc":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other) -> "RatFunc":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "RatFunc":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other) -> "RatFunc":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise DivisionByZero("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "RatFunc":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise DivisionByZero("inverse of zero")
        return RatFunc(self.den, self.num)

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n)

    # -- char-p structure ----------------------------------------------

    def frobenius(self, j: int = 1) -> "RatFunc":
        """p^j-th power, computed by exponent scaling."""
        if j == 0:
            return self
        k = self.field.p ** j
        return RatFunc(self.num.scale_exponents(k), self.den.scale_exponents(k), reduced=True)

    def pth_root(self) -> Optional["RatFunc"]:
        """The unique p-th root when self lies in k^p, else None.

        A reduced fraction is a p-th power iff numerator and denominator
        both are, and that reduces to exponent divisibility.
        """
        rn = self.num.pth_root()
        if rn is None:
            return None
        rd = self.den.pth_root()
        if rd is None:
            return None
        return RatFunc(rn, rd, reduced=True)

    def partial(self, name: str) -> "RatFunc":
        v = self.field.var_index(name)
        n = self.num.partial(v) * self.den - self.num * self.den.partial(v)
        return RatFunc(n, self.den * self.den)

    def embed(self, target: FieldDesc, var_images: Sequence[tuple[int, int]]) -> "RatFunc":
        return RatFunc(self.num.embed(target, var_images), self.den.embed(target, var_images))

    # -- equality / display --------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.field.const(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        ns = str(self.num)
        if len(self.num.terms) > 1:
            ns = f"({ns})"
        ds = str(self.den)
        if len(self.den.terms) > 1 or not self.den.is_monomial():
            ds = f"({ds})"
        elif not self.den.is_constant() and ("*" in ds):
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


def rf_arith(op: str, f: RatFunc, g: Optional[RatFunc] = None) -> RatFunc:
    """Named dispatch over field operations; operators are the daily surface."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    if op == "neg":
        return -f
    if op == "inv":
        return f.inverse()
    raise ValueError(f"unknown op {op!r}")


def partial_derivative(f: RatFunc, name: str) -> RatFunc:
    return f.partial(name)


def pth_root(f: RatFunc) -> Optional[RatFunc]:
    return f.pth_root()


def pn_power_test(f: RatFunc, n: int) -> Optional[RatFunc]:
    """Return g with g^(p^n) = f if f is a p^n-th power, else None."""
    if n < 0:
        raise ValueError("level must be nonnegative")
    g = f
    for _ in range(n):
        g = g.pth_root()
        if g is None:
            return None
    return g


def power_level(a: RatFunc, n: int) -> int:
    """Largest v <= n with a in k^(p^v); a nonzero."""
    if not a:
        raise ZeroInput("power level of zero is undefined")
    v = 0
    g = a
    while v < n:
        g = g.pth_root()
        if g is None:
            break
        v += 1
    return v


def root_field_degree(a: RatFunc, n: int) -> int:
    """Degree [k(a^(1/p^n)) : k] = p^(n - v) with v the power level of a."""
    if not a:
        raise ZeroInput("cannot adjoin a root of zero")
    return a.field.p ** (n - power_level(a, n))


# -- root towers -------------------------------------------------------


def tower_field(base: FieldDesc, level: int) -> FieldDesc:
    """Auxiliary field F_p(u_1, ..., u_r) with u_j standing for t_j^(1/p^level)."""
    return FieldDesc(base.p, tuple(f"{v}#{level}" for v in base.vars))


@dataclass(frozen=True)
class RootTowerElem:
    """An element of k^(1/p^level), stored over the auxiliary root field."""

    base: FieldDesc
    level: int
    value: RatFunc

    def __post_init__(self) -> None:
        if self.value.field != tower_field(self.base, self.level):
            raise LevelMismatch("value not over the auxiliary field of this level")

    def power(self, e: int) -> "RootTowerElem":
        """Raise to the p^e-th power."""
        return RootTowerElem(self.base, self.level, self.value.frobenius(e))

    def in_base(self) -> Optional[RatFunc]:
        """Rewrite as an element of k when all root exponents cancel."""
        q = self.base.p ** self.level
        aux = self.value.field

        def down(f: MPoly) -> Optional[MPoly]:
            out = {}
            for e, c in f.terms.items():
                if any(x % q for x in e):
                    return None
                out[tuple(x // q for x in e)] = c
            return MPoly(self.base, out)

        rn = down(self.value.num)
        if rn is None:
            return None
        rd = down(self.value.den)
        if rd is None:
            return None
        del aux
        return RatFunc(rn, rd)


def tower_root(a: RatFunc, n: int, level: int) -> RootTowerElem:
    """a^(1/p^n) as a level-`level` tower element (requires level >= n)."""
    if not a:
        raise ZeroInput("cannot take roots of zero")
    if level < n:
        raise LevelMismatch(f"level {level} cannot hold a p^{n}-th root")
    base = a.field
    aux = tower_field(base, level)
    scale = base.p ** (level - n)
    images = [(j, scale) for j in range(base.r)]
    return RootTowerElem(base, level, a.embed(aux, images))


def _decompose(x: RootTowerElem) -> dict[tuple[int, ...], RatFunc]:
    """Coordinates of x in the k-basis {u^e : 0 <= e_j < p^level}.

    Inverses are cleared via 1/h = h^(p^N - 1) / h^(p^N); the denominator
    is then a p^N-th power of polynomials, i.e. an element of k.
    """
    base = x.base
    q = base.p ** x.level
    num, den = x.value.num, x.value.den
    if not den.is_one():
        num = num * den ** (q - 1)
        den = den.scale_exponents(q)
    den_k = MPoly(base, {tuple(e // q for e in exp): c for exp, c in den.terms.items()})
    dk = RatFunc.from_poly(den_k)
    coords: dict[tuple[int, ...], dict] = {}
    for e, c in num.terms.items():
        res = tuple(x_ % q for x_ in e)
        quo = tuple(x_ // q for x_ in e)
        coords.setdefault(res, {})[quo] = c
    out = {}
    for res, terms in coords.items():
        out[res] = RatFunc.from_poly(MPoly(base, terms)) / dk
    return out


def _basis_index(e: tuple[int, ...], q: int) -> int:
    idx = 0
    for x in e:
        idx = idx * q + x
    return idx


def _exponent_over(x: RootTowerElem) -> int:
    """Smallest e with x^(p^e) in k."""
    for e in range(x.level + 1):
        if x.power(e).in_base() is not None:
            return e
    raise AssertionError("tower element must descend at its own level")


def _span_products(
    base: FieldDesc, level: int, gens: Sequence[tuple[RootTowerElem, int]]
) -> list[RootTowerElem]:
    """Products of generators with exponents below each one's ladder level.

    These span k(gens) as a k-vector space inside the root tower.
    """
    aux_one = RatFunc.from_poly(MPoly.one(tower_field(base, level)))
    stack = [RootTowerElem(base, level, aux_one)]
    for g, e in gens:
        nxt = []
        for acc in stack:
            pw = aux_one
            for d in range(base.p ** e):
                nxt.append(RootTowerElem(base, level, acc.value * pw))
                pw = pw * g.value
        stack = nxt
    return stack


def subfield_membership(
    x: RootTowerElem, gens: Sequence[RootTowerElem], cap: Optional[int] = None
) -> bool:
    """Decide x in k(gens) by exact linear algebra over k in the tower basis."""
    if cap is None:
        cap = basis_cap()
    level = x.level
    for g in gens:
        if g.level != level or g.base != x.base:
            raise LevelMismatch("all elements must share base field and level")
    q = x.base.p ** level
    if x.base.p ** (x.base.r * level) > cap:
        raise BasisTooLarge(
            f"dense tower basis p^(r*N) = {x.base.p ** (x.base.r * level)} exceeds cap {cap}"
        )
    ladder: list[tuple[RootTowerElem, int]] = []
    for g in gens:
        if not g.value:
            raise ZeroInput("zero generator")
        e = _exponent_over(g)
        if e:
            ladder.append((g, e))
    space = RowSpace()
    for prod in _span_products(x.base, level, ladder):
        space.insert({_basis_index(e, q): c for e, c in _decompose(prod).items()})
    vec = {_basis_index(e, q): c for e, c in _decompose(x).items()}
    return space.reduces_to_zero(vec)


def compositum_degree(
    pairs: Sequence[tuple[RatFunc, int]], cap: Optional[int] = None
) -> int:
    """Degree [k(a_1^(1/p^(n_1)), ..., a_s^(1/p^(n_s))) : k].

    Generators are adjoined one at a time; each contributes p^e where e is
    its inseparability exponent over the field built so far.
    """
    if cap is None:
        cap = basis_cap()
    if not pairs:
        return 1
    for a, _ in pairs:
        if not a:
            raise ZeroInput("cannot adjoin roots of zero")
    base = pairs[0][0].field
    for a, _ in pairs:
        if a.field != base:
            raise FieldMismatch("generators over different fields")
    level = max(n for _, n in pairs)
    if level == 0:
        return 1
    if base.p ** (base.r * level) > cap:
        raise BasisTooLarge(
            f"dense tower basis p^(r*N) = {base.p ** (base.r * level)} exceeds cap {cap}"
        )
    q = base.p ** level
    ladder: list[tuple[RootTowerElem, int]] = []
    degree = 1
    space = RowSpace()
    for prod in _span_products(base, level, ladder):
        space.insert({_basis_index(ex, q): c for ex, c in _decompose(prod).items()})
    for a, n in pairs:
        x = tower_root(a, n, level)
        e_needed = None
        for e in range(n + 1):
            xe = x.power(e)
            if xe.in_base() is not None:
                e_needed = e
                break
            vec = {_basis_index(ex, q): c for ex, c in _decompose(xe).items()}
            if space.reduces_to_zero(vec):
                e_needed = e
                break
        assert e_needed is not None
        if e_needed:
            ladder.append((x, e_needed))
            degree *= base.p ** e_needed
            space = RowSpace()
            for prod in _span_products(base, level, ladder):
                space.insert({_basis_index(ex, q): c for ex, c in _decompose(prod).items()})
    return degree
