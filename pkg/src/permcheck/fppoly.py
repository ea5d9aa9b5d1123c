"""Exact sparse multivariate polynomial arithmetic over a prime field F_p.

A polynomial is stored as a dict mapping exponent tuples (one nonnegative
int per variable) to coefficients in {1, ..., p-1}.  Zero coefficients are
never stored; the zero polynomial has an empty term dict.  All values are
immutable after construction, so they can be shared freely between threads.

The module also implements arithmetic in the truncated quotient
F_p[x_1..x_v] / (x_1^q, ..., x_v^q) with q = p^e: any monomial with some
exponent >= q is annihilated.  Truncated multiplication has two interchangeable
backends: a plain dict loop, and a dense numpy array of shape (q,)*v used
when q^v is small enough.  The dense backend is what makes the larger
Frobenius-power computations (q^v in the tens of millions) feasible.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional

import numpy as np

Monomial = tuple  # exponent tuple, one entry per variable

DEFAULT_DEGREE_CAP = 4096

# Largest q**v for which truncated products may use the dense array backend.
DENSE_LIMIT = 1 << 26

# Above this many term pairs, truncated_mul prefers the dense backend.
_DICT_PAIR_LIMIT = 1 << 16


class StructureError(ValueError):
    """Operands live in different variable spaces / characteristics."""


class DegreeOverflowError(ValueError):
    """A product would exceed the configured total-degree cap."""


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@functools.lru_cache(maxsize=None)
def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeModulus:
    """An odd prime p together with an exponent e; q = p^e is the Frobenius power."""

    p: int
    e: int = 1

    def __post_init__(self):
        if not (3 <= self.p < 2**31 and self.p % 2 == 1 and _is_prime(self.p)):
            raise ValueError(f"p must be an odd prime in [3, 2^31), got {self.p}")
        if self.e < 1:
            raise ValueError(f"e must be positive, got {self.e}")
        if self.p**self.e >= 2**63:
            raise ValueError(f"q = p^e does not fit a machine word: {self.p}^{self.e}")

    @property
    def q(self) -> int:
        return self.p**self.e


class VariableSpace:
    """An ordered set of named indeterminates.

    Index assignment is the position in `names`, so it is deterministic for
    a given construction order.
    """

    __slots__ = ("names", "degree_cap", "_index")

    def __init__(self, names: Iterable[str], degree_cap: int = DEFAULT_DEGREE_CAP):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "degree_cap", degree_cap)
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(names)})

    def __setattr__(self, name, value):
        raise AttributeError("VariableSpace is immutable")

    @property
    def count(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VariableSpace)
            and self.names == other.names
            and self.degree_cap == other.degree_cap
        )

    def __hash__(self) -> int:
        return hash((self.names, self.degree_cap))

    def __repr__(self) -> str:
        return f"VariableSpace({len(self.names)} vars: {', '.join(self.names[:6])}{'...' if len(self.names) > 6 else ''})"


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True iff monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    """b / a, assuming a divides b."""
    return tuple(y - x for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


class MonomialOrder:
    """A lex or graded-lex order with an optional variable priority.

    `priority` lists variable indices from most to least significant; the
    natural order (index 0 most significant) is used when omitted.  Both
    kinds are multiplicative total orders.
    """

    __slots__ = ("kind", "priority")

    def __init__(self, kind: str = "grlex", priority: Optional[tuple] = None):
        if kind not in ("lex", "grlex"):
            raise ValueError(f"unknown order kind {kind!r}")
        self.kind = kind
        self.priority = tuple(priority) if priority is not None else None

    def key(self, mono: Monomial):
        proj = mono if self.priority is None else tuple(mono[i] for i in self.priority)
        if self.kind == "lex":
            return proj
        return (sum(mono), proj)

    def __repr__(self) -> str:
        return f"MonomialOrder({self.kind!r}{'' if self.priority is None else f', priority={self.priority}'})"


GRLEX = MonomialOrder("grlex")
LEX = MonomialOrder("lex")


class Polynomial:
    """Immutable sparse polynomial over F_p in a fixed variable space."""

    __slots__ = ("space", "char", "_terms")

    def __init__(self, space: VariableSpace, char: int, terms: Mapping[Monomial, int] | Iterable = ()):
        if not (char >= 3 and char % 2 == 1 and _is_prime(char)):
            raise ValueError(f"characteristic must be an odd prime >= 3, got {char}")
        clean = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        cap = space.degree_cap
        for mono, coeff in items:
            mono = tuple(mono)
            if len(mono) != space.count:
                raise StructureError(
                    f"monomial has {len(mono)} exponents, space has {space.count} variables"
                )
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            if sum(mono) > cap:
                raise DegreeOverflowError(f"monomial degree {sum(mono)} exceeds cap {cap}")
            c = (clean.get(mono, 0) + coeff) % char
            if c:
                clean[mono] = c
            elif mono in clean:
                del clean[mono]
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "char", char)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def _make(cls, space: VariableSpace, char: int, terms: dict) -> "Polynomial":
        # internal fast path: terms must already be canonical (reduced, no zeros)
        self = object.__new__(cls)
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "char", char)
        object.__setattr__(self, "_terms", terms)
        return self

    @classmethod
    def zero(cls, space: VariableSpace, char: int) -> "Polynomial":
        return cls(space, char)

    @classmethod
    def constant(cls, space: VariableSpace, char: int, value: int) -> "Polynomial":
        return cls(space, char, {(0,) * space.count: value})

    @classmethod
    def one(cls, space: VariableSpace, char: int) -> "Polynomial":
        return cls.constant(space, char, 1)

    @classmethod
    def variable(cls, space: VariableSpace, char: int, index: int) -> "Polynomial":
        exps = [0] * space.count
        exps[index] = 1
        return cls(space, char, {tuple(exps): 1})

    @classmethod
    def monomial(cls, space: VariableSpace, char: int, exps, coeff: int = 1) -> "Polynomial":
        return cls(space, char, {tuple(exps): coeff})

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def items(self) -> Iterator:
        return iter(self._terms.items())

    def sorted_terms(self, order: MonomialOrder = GRLEX) -> list:
        """Terms in descending canonical order (leading term first)."""
        return sorted(self._terms.items(), key=lambda kv: order.key(kv[0]), reverse=True)

    def coeff(self, mono: Monomial) -> int:
        return self._terms.get(tuple(mono), 0)

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def variables_used(self) -> set:
        used = set()
        for m in self._terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return used

    def _check_compatible(self, other: "Polynomial"):
        if self.space != other.space or self.char != other.char:
            raise StructureError("polynomials live in different spaces or characteristics")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (
            self.space == other.space
            and self.char == other.char
            and self._terms == other._terms
        )

    __hash__ = None

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        p = self.char
        out = dict(self._terms)
        for mono, c in other._terms.items():
            s = (out.get(mono, 0) + c) % p
            if s:
                out[mono] = s
            elif mono in out:
                del out[mono]
        return Polynomial._make(self.space, p, out)

    def __neg__(self) -> "Polynomial":
        p = self.char
        return Polynomial._make(self.space, p, {m: p - c for m, c in self._terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            c = other % self.char
            if c == 0:
                return Polynomial.zero(self.space, self.char)
            return Polynomial._make(
                self.space, self.char, {m: (v * c) % self.char for m, v in self._terms.items()}
            )
        self._check_compatible(other)
        if self.is_zero or other.is_zero:
            return Polynomial.zero(self.space, self.char)
        if self.total_degree() + other.total_degree() > self.space.degree_cap:
            raise DegreeOverflowError(
                f"product degree {self.total_degree() + other.total_degree()} "
                f"exceeds cap {self.space.degree_cap}"
            )
        p = self.char
        out: dict = {}
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                s = (out.get(m, 0) + c1 * c2) % p
                if s:
                    out[m] = s
                elif m in out:
                    del out[m]
        return Polynomial._make(self.space, p, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.one(self.space, self.char)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __str__(self) -> str:
        return render_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({render_poly(self)}, p={self.char})"


def add(a: Polynomial, b: Polynomial) -> Polynomial:
    return a + b


def mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def coefficient_of(a: Polynomial, mono: Monomial) -> int:
    return a.coeff(mono)


def leading_term(a: Polynomial, order: MonomialOrder = GRLEX) -> tuple:
    """The maximal (monomial, coefficient) pair of a nonzero polynomial."""
    if a.is_zero:
        raise ValueError("the zero polynomial has no leading term")
    mono = max(a._terms, key=order.key)
    return mono, a._terms[mono]


def exact_divide(f: Polynomial, g: Polynomial, order: MonomialOrder = GRLEX) -> Optional[Polynomial]:
    """Return q with f = q*g if g divides f exactly, else None.

    Single-divisor leading-term elimination: over a field this decides
    divisibility (hence principal-ideal membership) completely, and the
    outcome does not depend on the chosen monomial order.
    """
    if g.is_zero:
        raise ValueError("division by the zero polynomial")
    f._check_compatible(g)
    p = f.char
    lt_g, lc_g = leading_term(g, order)
    lc_g_inv = pow(lc_g, p - 2, p)
    rem = dict(f._terms)
    quot: dict = {}
    g_items = list(g._terms.items())
    while rem:
        lt_r = max(rem, key=order.key)
        if not mono_divides(lt_g, lt_r):
            return None
        qm = mono_div(lt_r, lt_g)
        qc = (rem[lt_r] * lc_g_inv) % p
        quot[qm] = qc
        for m, c in g_items:
            mm = mono_mul(qm, m)
            s = (rem.get(mm, 0) - qc * c) % p
            if s:
                rem[mm] = s
            elif mm in rem:
                del rem[mm]
    return Polynomial._make(f.space, p, quot)


def substitute(a: Polynomial, mapping: Mapping[int, Polynomial]) -> Polynomial:
    """Simultaneous substitution of polynomials for variables.

    Variables absent from `mapping` are kept as themselves, which requires the
    target space to coincide with the source space.  The target space and
    characteristic are taken from the mapped values.
    """
    if not mapping:
        return a
    values = list(mapping.values())
    target = values[0].space
    char = values[0].char
    if char != a.char:
        raise StructureError("substitution values have a different characteristic")
    for val in values:
        if val.space != target or val.char != char:
            raise StructureError("substitution values live in different spaces")
    if target != a.space:
        unmapped = a.variables_used() - set(mapping)
        if unmapped:
            names = ", ".join(a.space.names[i] for i in sorted(unmapped))
            raise StructureError(f"variables not mapped into the target space: {names}")

    power_cache: dict = {}

    def var_power(i: int, e: int) -> Polynomial:
        key = (i, e)
        if key not in power_cache:
            base = mapping.get(i)
            if base is None:
                base = Polynomial.variable(target, char, i)
            power_cache[key] = base**e
        return power_cache[key]

    result = Polynomial.zero(target, char)
    for mono, c in a.items():
        term = Polynomial.constant(target, char, c)
        for i, e in enumerate(mono):
            if e:
                term = term * var_power(i, e)
        result = result + term
    return result


def evaluate(a: Polynomial, point) -> int:
    """Value of a at a point of F_p^v."""
    point = tuple(point)
    if len(point) != a.space.count:
        raise StructureError(f"point has {len(point)} entries, expected {a.space.count}")
    p = a.char
    point = tuple(x % p for x in point)
    total = 0
    for mono, c in a.items():
        t = c
        for x, e in zip(point, mono):
            if e:
                t = (t * pow(x, e, p)) % p
        total = (total + t) % p
    return total


# ---------------------------------------------------------------------------
# truncated quotient arithmetic
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncationContext:
    """The quotient by (x_1^q, ..., x_v^q): exponents >= bound are annihilated."""

    modulus: PrimeModulus
    space: VariableSpace

    @property
    def bound(self) -> int:
        return self.modulus.q

    def check(self, a: Polynomial):
        if a.space != self.space or a.char != self.modulus.p:
            raise StructureError("polynomial does not match the truncation context")


def truncate(a: Polynomial, ctx: TruncationContext) -> Polynomial:
    ctx.check(a)
    b = ctx.bound
    kept = {m: c for m, c in a.items() if all(e < b for e in m)}
    if len(kept) == len(a._terms):
        return a
    return Polynomial._make(a.space, a.char, kept)


def _dense_capacity(ctx: TruncationContext) -> int:
    cap = 1
    for _ in range(ctx.space.count):
        cap *= ctx.bound
        if cap > DENSE_LIMIT:
            return cap
    return cap


def _dense_dtype(char: int, n_terms: int):
    # accumulated values stay below n_terms * (char-1)^2 before reduction
    if n_terms * (char - 1) * (char - 1) < 2**31:
        return np.int32
    return np.int64


def _to_dense(a: Polynomial, ctx: TruncationContext, dtype) -> np.ndarray:
    v = ctx.space.count
    b = ctx.bound
    arr = np.zeros((b,) * v, dtype=dtype)
    for mono, c in a.items():
        if all(e < b for e in mono):
            arr[mono] = c
    return arr


def _from_dense(arr: np.ndarray, ctx: TruncationContext) -> Polynomial:
    p = ctx.modulus.p
    flat = arr.reshape(-1)
    nz = np.flatnonzero(flat)
    v = ctx.space.count
    b = ctx.bound
    terms = {}
    if nz.size:
        coeffs = flat[nz] % p
        digits = []
        rest = nz
        for _ in range(v):
            digits.append(rest % b)
            rest = rest // b
        digits.reverse()  # C-order: last axis varies fastest
        for idx in range(nz.size):
            c = int(coeffs[idx])
            if c:
                terms[tuple(int(d[idx]) for d in digits)] = c
    return Polynomial._make(ctx.space, p, terms)


def _dense_mul_terms(arr: np.ndarray, terms, ctx: TruncationContext) -> np.ndarray:
    """arr * (sparse polynomial given by `terms`), truncated, as a dense array."""
    p = ctx.modulus.p
    b = ctx.bound
    out = np.zeros_like(arr)
    for mono, c in terms:
        src = tuple(slice(0, b - e) for e in mono)
        dst = tuple(slice(e, b) for e in mono)
        if c == 1:
            out[dst] += arr[src]
        else:
            out[dst] += arr[src] * c
    out %= p
    return out


class TruncatedAccumulator:
    """A truncated-quotient value held densely when q^v is small enough.

    Chains of products against small polynomials (Frobenius powers of a
    permanent, say) can hold millions of terms; the dense backend keeps them
    as a numpy array and never materializes the sparse form.  Falls back to
    sparse dict arithmetic when the dense array would not fit.
    """

    __slots__ = ("ctx", "_arr", "_poly")

    def __init__(self, poly: Polynomial, ctx: TruncationContext):
        ctx.check(poly)
        self.ctx = ctx
        poly = truncate(poly, ctx)
        if _dense_capacity(ctx) <= DENSE_LIMIT:
            self._arr = _to_dense(poly, ctx, _dense_dtype(ctx.modulus.p, 1 << 10))
            self._poly = None
        else:
            self._arr = None
            self._poly = poly

    @classmethod
    def _wrap(cls, ctx, arr=None, poly=None):
        self = object.__new__(cls)
        self.ctx = ctx
        self._arr = arr
        self._poly = poly
        return self

    def mul_poly(self, poly: Polynomial) -> "TruncatedAccumulator":
        """Truncated product with a (typically small) sparse polynomial."""
        ctx = self.ctx
        poly = truncate(poly, ctx)
        if self._arr is not None:
            # accumulated values stay below n_terms * (p-1)^2; reduce per
            # term when the dtype could overflow
            limit = np.iinfo(self._arr.dtype).max
            if len(poly) * (ctx.modulus.p - 1) ** 2 >= limit:
                out = None
                b = ctx.bound
                for mono, c in poly.items():
                    src = tuple(slice(0, b - e) for e in mono)
                    dst = tuple(slice(e, b) for e in mono)
                    part = np.zeros_like(self._arr)
                    part[dst] = self._arr[src] * c % ctx.modulus.p
                    out = part if out is None else (out + part) % ctx.modulus.p
                if out is None:
                    out = np.zeros_like(self._arr)
                return TruncatedAccumulator._wrap(ctx, arr=out)
            return TruncatedAccumulator._wrap(ctx, arr=_dense_mul_terms(self._arr, poly.items(), ctx))
        return TruncatedAccumulator._wrap(ctx, poly=truncated_mul(self._poly, poly, ctx))

    @property
    def is_zero(self) -> bool:
        if self._arr is not None:
            return not self._arr.any()
        return self._poly.is_zero

    def nnz(self) -> int:
        if self._arr is not None:
            return int(np.count_nonzero(self._arr))
        return len(self._poly)

    def coeff(self, mono) -> int:
        if self._arr is not None:
            mono = tuple(mono)
            if any(e >= self.ctx.bound for e in mono):
                return 0
            return int(self._arr[mono])
        return self._poly.coeff(mono)

    def equals_monomial(self, mono, coefficient: int) -> bool:
        """True iff the value is exactly coefficient * mono."""
        coefficient %= self.ctx.modulus.p
        if self._arr is not None:
            return self.nnz() == 1 and self.coeff(mono) == coefficient
        return self._poly == Polynomial.monomial(
            self.ctx.space, self.ctx.modulus.p, mono, coefficient
        )

    def to_polynomial(self) -> Polynomial:
        if self._arr is not None:
            return _from_dense(self._arr, self.ctx)
        return self._poly


def _truncated_mul_dict(a: Polynomial, b: Polynomial, ctx: TruncationContext) -> Polynomial:
    p = ctx.modulus.p
    bound = ctx.bound
    out: dict = {}
    ta, tb = a._terms, b._terms
    if len(ta) < len(tb):
        ta, tb = tb, ta
    for m2, c2 in tb.items():
        for m1, c1 in ta.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            if any(e >= bound for e in m):
                continue
            s = (out.get(m, 0) + c1 * c2) % p
            if s:
                out[m] = s
            elif m in out:
                del out[m]
    return Polynomial._make(a.space, p, out)


def truncated_mul(a: Polynomial, b: Polynomial, ctx: TruncationContext) -> Polynomial:
    """Product in the truncated quotient; equals truncate(a * b, ctx)."""
    ctx.check(a)
    ctx.check(b)
    a = truncate(a, ctx)
    b = truncate(b, ctx)
    if a.is_zero or b.is_zero:
        return Polynomial.zero(ctx.space, ctx.modulus.p)
    if len(a) * len(b) <= _DICT_PAIR_LIMIT:
        return _truncated_mul_dict(a, b, ctx)
    if _dense_capacity(ctx) <= DENSE_LIMIT:
        big, small = (a, b) if len(a) >= len(b) else (b, a)
        dtype = _dense_dtype(ctx.modulus.p, len(small))
        arr = _to_dense(big, ctx, dtype)
        arr = _dense_mul_terms(arr, small.items(), ctx)
        return _from_dense(arr, ctx)
    return _truncated_mul_dict(a, b, ctx)


def _truncated_pow_repeated(a: Polynomial, k: int, ctx: TruncationContext) -> Polynomial:
    base = truncate(a, ctx)
    if k == 0:
        return Polynomial.one(ctx.space, ctx.modulus.p)
    if base.is_zero or k == 1:
        return base
    if _dense_capacity(ctx) <= DENSE_LIMIT:
        dtype = _dense_dtype(ctx.modulus.p, len(base))
        arr = _to_dense(base, ctx, dtype)
        terms = list(base.items())
        for _ in range(k - 1):
            arr = _dense_mul_terms(arr, terms, ctx)
        return _from_dense(arr, ctx)
    result = base
    for _ in range(k - 1):
        result = truncated_mul(result, base, ctx)
    return result


def _truncated_pow_binary(a: Polynomial, k: int, ctx: TruncationContext) -> Polynomial:
    result = Polynomial.one(ctx.space, ctx.modulus.p)
    base = truncate(a, ctx)
    while k:
        if k & 1:
            result = truncated_mul(result, base, ctx)
        k >>= 1
        if k:
            base = truncated_mul(base, base, ctx)
    return result


def truncated_pow(a: Polynomial, k: int, ctx: TruncationContext, strategy: str = "auto") -> Polynomial:
    """a^k in the truncated quotient (truncation applied after every product).

    Truncation is a ring quotient, so intermediate truncation is sound for any
    powering strategy.  "binary" squares large intermediates against each
    other; "repeated" multiplies by the (typically small) base.  In a
    saturated quotient the intermediates hold vastly more terms than the base,
    which makes repeated multiplication the cheaper route, so "auto" picks it
    whenever the base is small.
    """
    if k < 0:
        raise ValueError("negative power")
    if strategy == "auto":
        strategy = "repeated" if (k >= 3 and len(a) <= 256) else "binary"
    if strategy == "repeated":
        return _truncated_pow_repeated(a, k, ctx)
    if strategy == "binary":
        return _truncated_pow_binary(a, k, ctx)
    raise ValueError(f"unknown powering strategy {strategy!r}")


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------


def render_poly(a: Polynomial) -> str:
    """Canonical text form: graded-lex descending terms joined by ' + '."""
    if a.is_zero:
        return "0"
    parts = []
    names = a.space.names
    for mono, c in a.sorted_terms(GRLEX):
        factors = []
        for i, e in enumerate(mono):
            if e == 1:
                factors.append(names[i])
            elif e >= 2:
                factors.append(f"{names[i]}^{e}")
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append("*".join([str(c)] + factors))
    return " + ".join(parts)


def parse_poly(text: str, space: VariableSpace, char: int) -> Polynomial:
    """Parse the textual polynomial grammar.

    poly ::= term {"+" term} | "0"
    term ::= [coeff "*"] factor {"*" factor}
    factor ::= varname ["^" exponent]

    Coefficients are decimal integers and are reduced mod p; whitespace is
    insignificant.
    """
    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def read_int() -> int:
        nonlocal pos
        start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == start:
            raise ParseError("expected a number", start)
        return int(text[start:pos])

    def read_name() -> str:
        nonlocal pos
        start = pos
        while pos < n and (text[pos].isalnum() or text[pos] == "_"):
            pos += 1
        if pos == start:
            raise ParseError("expected a variable name", start)
        return text[start:pos]

    def read_term() -> tuple:
        nonlocal pos
        skip_ws()
        coeff = 1
        exps = [0] * space.count
        saw_factor = False
        if pos < n and text[pos].isdigit():
            coeff = read_int()
            skip_ws()
            if pos < n and text[pos] == "*":
                pos += 1
            else:
                return tuple(exps), coeff  # bare constant
        while True:
            skip_ws()
            if pos >= n or not (text[pos].isalpha()):
                if not saw_factor:
                    raise ParseError("expected a variable name", pos)
                break
            name_pos = pos
            name = read_name()
            if name not in space:
                raise ParseError(f"unknown variable {name!r}", name_pos)
            e = 1
            skip_ws()
            if pos < n and text[pos] == "^":
                pos += 1
                skip_ws()
                e = read_int()
            exps[space.index(name)] += e
            saw_factor = True
            skip_ws()
            if pos < n and text[pos] == "*":
                pos += 1
                continue
            break
        return tuple(exps), coeff

    terms = []
    skip_ws()
    if pos >= n:
        raise ParseError("empty input", pos)
    while True:
        terms.append(read_term())
        skip_ws()
        if pos < n and text[pos] == "+":
            pos += 1
            continue
        break
    skip_ws()
    if pos != n:
        raise ParseError(f"unexpected character {text[pos]!r}", pos)
    return Polynomial(space, char, terms)
