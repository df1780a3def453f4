"""GF(2) polynomials in t, truncated modulo t**n, plus a multivariate variant.

Coefficients are stored as bit masks: bit ``v`` of ``mask`` is the coefficient
of ``t**v``.  A single machine word covers every bound used anywhere in this
package, so ``bound > 64`` is rejected at construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

MAX_BOUND = 64
MAX_BOX_CELLS = 1 << 20


class BoundMismatchError(ValueError):
    """Operands truncated at different degrees."""


class SubstitutionError(ValueError):
    """Substituted polynomial has a nonzero constant term."""


class NotInvertibleError(ValueError):
    """Element has constant term 0, hence no multiplicative inverse."""


@dataclass(frozen=True, order=True)
class TruncPoly:
    """Polynomial over GF(2) in one variable t, reduced modulo t**bound."""

    bound: int
    mask: int

    def __post_init__(self) -> None:
        if not 1 <= self.bound <= MAX_BOUND:
            raise ValueError(f"bound must be in 1..{MAX_BOUND}, got {self.bound}")
        if not 0 <= self.mask < 1 << self.bound:
            raise ValueError(f"mask {self.mask:#x} has bits at or above t^{self.bound}")

    @staticmethod
    def zero(bound: int) -> "TruncPoly":
        return TruncPoly(bound, 0)

    @staticmethod
    def one(bound: int) -> "TruncPoly":
        return TruncPoly(bound, 1)

    @staticmethod
    def t(bound: int) -> "TruncPoly":
        return TruncPoly(bound, 2 if bound >= 2 else 0)

    @staticmethod
    def from_exponents(bound: int, exponents) -> "TruncPoly":
        mask = 0
        for e in exponents:
            if 0 <= e < bound:
                mask |= 1 << e
        return TruncPoly(bound, mask)

    def exponents(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.bound) if self.mask >> v & 1)

    def _check(self, other: "TruncPoly") -> None:
        if self.bound != other.bound:
            raise BoundMismatchError(f"bounds differ: {self.bound} != {other.bound}")

    def __add__(self, other: "TruncPoly") -> "TruncPoly":
        self._check(other)
        return TruncPoly(self.bound, self.mask ^ other.mask)

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other: "TruncPoly") -> "TruncPoly":
        self._check(other)
        acc = 0
        m = other.mask
        a = self.mask
        v = 0
        while a:
            if a & 1:
                acc ^= m << v
            a >>= 1
            v += 1
        return TruncPoly(self.bound, acc & (1 << self.bound) - 1)

    def __pow__(self, k: int) -> "TruncPoly":
        if k < 0:
            raise ValueError("negative exponent; use .inverse() first")
        by_squaring = self._pow_squaring(k)
        split = self._pow_frobenius_split(k)
        if by_squaring != split:  # pragma: no cover - internal consistency
            raise AssertionError(f"pow paths disagree for {self}^{k}")
        return by_squaring

    def _pow_squaring(self, k: int) -> "TruncPoly":
        result = TruncPoly.one(self.bound)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def _pow_frobenius_split(self, k: int) -> "TruncPoly":
        # a^k = prod of a^(2^v) over the set bits v of k; each factor is a
        # v-fold Frobenius image (exponent doubling).
        result = TruncPoly.one(self.bound)
        factor = self
        while k:
            if k & 1:
                result = result * factor
            factor = factor.frobenius()
            k >>= 1
        return result

    def frobenius(self) -> "TruncPoly":
        """Square, computed by exponent doubling (valid over GF(2))."""
        out = 0
        v = 0
        a = self.mask
        while a and 2 * v < self.bound:
            if a & 1:
                out |= 1 << 2 * v
            a >>= 1
            v += 1
        return TruncPoly(self.bound, out)

    def compose(self, inner: "TruncPoly") -> "TruncPoly":
        """Substitute ``inner`` for t.  ``inner`` must have zero constant term."""
        self._check(inner)
        if inner.mask & 1:
            raise SubstitutionError("substituted polynomial has a constant term")
        acc = self.mask & 1
        power = TruncPoly.one(self.bound)
        for v in range(1, self.bound):
            power = power * inner
            if power.mask == 0:
                break
            if self.mask >> v & 1:
                acc ^= power.mask
        return TruncPoly(self.bound, acc)

    def inverse(self) -> "TruncPoly":
        """Inverse of a unit (constant term 1), by truncated geometric series."""
        if not self.mask & 1:
            raise NotInvertibleError("constant term is 0")
        nil = self.mask ^ 1
        acc = 1
        term = TruncPoly(self.bound, nil)
        power = TruncPoly.one(self.bound)
        while True:
            power = power * term
            if power.mask == 0:
                break
            acc ^= power.mask
        return TruncPoly(self.bound, acc)

    def min_degree(self) -> int | None:
        """Smallest exponent with a set bit, or None for the zero polynomial."""
        if self.mask == 0:
            return None
        return (self.mask & -self.mask).bit_length() - 1

    def truncate(self, bound: int) -> "TruncPoly":
        if bound > self.bound:
            raise ValueError("can only truncate to a smaller or equal bound")
        return TruncPoly(bound, self.mask & (1 << bound) - 1)

    def lift(self, bound: int) -> "TruncPoly":
        if bound < self.bound:
            raise ValueError("can only lift to a larger or equal bound")
        return TruncPoly(bound, self.mask)

    def bitstring(self) -> str:
        """Compact form, LSB (constant term) first."""
        return "".join(str(self.mask >> v & 1) for v in range(self.bound))

    def __str__(self) -> str:
        if self.mask == 0:
            return "0"
        terms = []
        for v in self.exponents():
            terms.append("1" if v == 0 else ("t" if v == 1 else f"t^{v}"))
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"TruncPoly({self.bound}, {self})"


@dataclass(frozen=True, order=True)
class MultiTruncPoly:
    """Polynomial over GF(2) in t1..tk, reduced modulo (t1**n1, ..., tk**nk).

    Exponent boxes are stored densely: cell ``alpha`` sits at the mixed-radix
    index with the last variable fastest.
    """

    bounds: tuple[int, ...]
    mask: int

    def __post_init__(self) -> None:
        if not self.bounds or any(n < 1 for n in self.bounds):
            raise ValueError("bounds must be a nonempty tuple of naturals >= 1")
        cells = prod(self.bounds)
        if cells > MAX_BOX_CELLS:
            raise ValueError(f"exponent box of {cells} cells exceeds {MAX_BOX_CELLS}")
        if not 0 <= self.mask < 1 << cells:
            raise ValueError("mask has bits outside the exponent box")

    @property
    def cells(self) -> int:
        return prod(self.bounds)

    def _index(self, alpha: tuple[int, ...]) -> int:
        idx = 0
        for a, n in zip(alpha, self.bounds):
            idx = idx * n + a
        return idx

    def _alpha(self, idx: int) -> tuple[int, ...]:
        out = []
        for n in reversed(self.bounds):
            idx, r = divmod(idx, n)
            out.append(r)
        return tuple(reversed(out))

    @staticmethod
    def zero(bounds) -> "MultiTruncPoly":
        return MultiTruncPoly(tuple(bounds), 0)

    @staticmethod
    def one(bounds) -> "MultiTruncPoly":
        # the all-zero exponent always sits at cell index 0
        return MultiTruncPoly(tuple(bounds), 1)

    @staticmethod
    def var(bounds, i: int) -> "MultiTruncPoly":
        bounds = tuple(bounds)
        alpha = tuple(1 if j == i else 0 for j in range(len(bounds)))
        if alpha[i] >= bounds[i]:
            return MultiTruncPoly.zero(bounds)
        return MultiTruncPoly.zero(bounds).with_term(alpha)

    def with_term(self, alpha: tuple[int, ...]) -> "MultiTruncPoly":
        return MultiTruncPoly(self.bounds, self.mask | 1 << self._index(alpha))

    def terms(self) -> tuple[tuple[int, ...], ...]:
        m = self.mask
        out = []
        idx = 0
        while m:
            if m & 1:
                out.append(self._alpha(idx))
            m >>= 1
            idx += 1
        return tuple(out)

    def _check(self, other: "MultiTruncPoly") -> None:
        if self.bounds != other.bounds:
            raise BoundMismatchError(f"bounds differ: {self.bounds} != {other.bounds}")

    def __add__(self, other: "MultiTruncPoly") -> "MultiTruncPoly":
        self._check(other)
        return MultiTruncPoly(self.bounds, self.mask ^ other.mask)

    __sub__ = __add__

    def __mul__(self, other: "MultiTruncPoly") -> "MultiTruncPoly":
        self._check(other)
        acc = 0
        for a in self.terms():
            for b in other.terms():
                s = tuple(x + y for x, y in zip(a, b))
                if all(x < n for x, n in zip(s, self.bounds)):
                    acc ^= 1 << self._index(s)
        return MultiTruncPoly(self.bounds, acc)

    def __pow__(self, k: int) -> "MultiTruncPoly":
        result = MultiTruncPoly.one(self.bounds)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def constant_term(self) -> int:
        return self.mask & 1

    def inverse(self) -> "MultiTruncPoly":
        """Inverse of a unit (constant coefficient 1); nilpotent geometric series."""
        one = MultiTruncPoly.one(self.bounds)
        if not self.mask & 1:
            raise NotInvertibleError("constant coefficient is 0")
        nil = self + one
        acc = one
        power = one
        # (self - 1) is nilpotent: degree grows in every product.
        for _ in range(sum(n - 1 for n in self.bounds)):
            power = power * nil
            if power.mask == 0:
                break
            acc = acc + power
        return acc

    def __str__(self) -> str:
        if self.mask == 0:
            return "0"
        parts = []
        for alpha in self.terms():
            factors = []
            for i, e in enumerate(alpha):
                if e == 1:
                    factors.append(f"t{i + 1}")
                elif e > 1:
                    factors.append(f"t{i + 1}^{e}")
            parts.append(" ".join(factors) if factors else "1")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"MultiTruncPoly({self.bounds}, {self})"


def trunc_mul(a: TruncPoly, b: TruncPoly) -> TruncPoly:
    return a * b


def trunc_pow(a: TruncPoly, k: int) -> TruncPoly:
    return a ** k


def compose(p: TruncPoly, q: TruncPoly) -> TruncPoly:
    return p.compose(q)


def inverse_unit(a: TruncPoly) -> TruncPoly:
    return a.inverse()


def multi_mul(a: MultiTruncPoly, b: MultiTruncPoly) -> MultiTruncPoly:
    return a * b


def multi_inverse_unit(a: MultiTruncPoly) -> MultiTruncPoly:
    return a.inverse()


def all_trunc_polys(bound: int, constant_bit: int | None = None):
    """Iterate every TruncPoly at the bound, optionally fixing the constant bit."""
    if constant_bit is None:
        for mask in range(1 << bound):
            yield TruncPoly(bound, mask)
    else:
        for rest in range(1 << (bound - 1)):
            yield TruncPoly(bound, rest << 1 | constant_bit)


def all_multi_polys(bounds, constant_bit: int | None = None):
    bounds = tuple(bounds)
    cells = prod(bounds)
    one = MultiTruncPoly.one(bounds)
    for mask in range(1 << cells):
        p = MultiTruncPoly(bounds, mask)
        if constant_bit is None or (1 if mask & one.mask else 0) == constant_bit:
            yield p
