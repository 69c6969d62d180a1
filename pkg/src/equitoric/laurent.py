"""Multivariate Laurent polynomials and matrices over exact rationals.

Terms are stored sparsely as {exponent tuple: Fraction}; zero coefficients
are pruned eagerly so equality is plain dict comparison on canonical form.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping, Sequence


class LaurentError(ValueError):
    pass


def _coeff(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise LaurentError(f"coefficients must be exact rationals, got {type(x).__name__}")


class LaurentPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        if nvars < 1:
            raise LaurentError("need at least one torus variable")
        clean: dict[tuple[int, ...], Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise LaurentError(f"exponent {exp} does not have {nvars} entries")
            c = _coeff(c)
            if c != 0:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if clean[exp] == 0:
                    del clean[exp]
        self.nvars = nvars
        self.terms = clean

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: _coeff(c)})

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff=1) -> "LaurentPoly":
        exp = tuple(int(e) for e in exponent)
        return cls(len(exp), {exp: _coeff(coeff)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "LaurentPoly":
        exp = tuple(int(i == index) for i in range(nvars))
        return cls(nvars, {exp: Fraction(1)})

    # -- queries --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def monomial_term(self) -> tuple[tuple[int, ...], Fraction] | None:
        """The (exponent, coefficient) pair if this is a single monomial."""
        if len(self.terms) != 1:
            return None
        return next(iter(self.terms.items()))

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exponent), Fraction(0))

    def min_exponent(self, var: int) -> int | None:
        if not self.terms:
            return None
        return min(e[var] for e in self.terms)

    # -- ring operations --------------------------------------------------

    def _check(self, other: "LaurentPoly") -> None:
        if self.nvars != other.nvars:
            raise LaurentError("variable counts differ")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, Fraction(0)) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        res = LaurentPoly.__new__(LaurentPoly)
        res.nvars = self.nvars
        res.terms = out
        return res

    def __neg__(self) -> "LaurentPoly":
        res = LaurentPoly.__new__(LaurentPoly)
        res.nvars = self.nvars
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            c = _coeff(other)
            if c == 0:
                return LaurentPoly.zero(self.nvars)
            res = LaurentPoly.__new__(LaurentPoly)
            res.nvars = self.nvars
            res.terms = {e: c * v for e, v in self.terms.items()}
            return res
        self._check(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(exp, Fraction(0)) + c1 * c2
                if s:
                    out[exp] = s
                else:
                    out.pop(exp, None)
        res = LaurentPoly.__new__(LaurentPoly)
        res.nvars = self.nvars
        res.terms = out
        return res

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __ne__(self, other) -> bool:
        return not self.__eq__(other)

    __hash__ = None  # mutable dict inside

    def divide_by_monomial(self, exponent: Sequence[int], coeff) -> "LaurentPoly":
        c = _coeff(coeff)
        if c == 0:
            raise LaurentError("division by zero monomial")
        exp = tuple(int(e) for e in exponent)
        res = LaurentPoly.__new__(LaurentPoly)
        res.nvars = self.nvars
        res.terms = {
            tuple(a - b for a, b in zip(e, exp)): v / c for e, v in self.terms.items()
        }
        return res

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        """Exact value at a rational torus point (all coordinates nonzero
        when negative exponents occur)."""
        if len(point) != self.nvars:
            raise LaurentError("evaluation point has wrong dimension")
        pts = [_coeff(p) for p in point]
        total = Fraction(0)
        for exp, c in self.terms.items():
            val = c
            for p, e in zip(pts, exp):
                if e == 0:
                    continue
                if p == 0:
                    raise LaurentError("evaluation at zero with a negative exponent")
                val *= p**e
            total += val
        return total

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for exp in sorted(self.terms):
            c = self.terms[exp]
            mono = "*".join(
                f"t{i}^{e}" if e != 1 else f"t{i}" for i, e in enumerate(exp) if e
            )
            bits.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(bits)


class LaurentMatrix:
    """Square matrix of Laurent polynomials in a shared variable set."""

    __slots__ = ("nvars", "size", "rows")

    def __init__(self, nvars: int, rows: Sequence[Sequence[LaurentPoly]]):
        size = len(rows)
        if size < 1:
            raise LaurentError("matrix must have positive size")
        grid = []
        for row in rows:
            if len(row) != size:
                raise LaurentError("matrix must be square")
            for p in row:
                if not isinstance(p, LaurentPoly) or p.nvars != nvars:
                    raise LaurentError("entries must be Laurent polynomials in the same variables")
            grid.append(tuple(row))
        self.nvars = nvars
        self.size = size
        self.rows = tuple(grid)

    # -- constructors --------------------------------------------------

    @classmethod
    def identity(cls, nvars: int, size: int) -> "LaurentMatrix":
        one = LaurentPoly.constant(nvars, 1)
        zero = LaurentPoly.zero(nvars)
        return cls(nvars, [[one if i == j else zero for j in range(size)] for i in range(size)])

    @classmethod
    def constant(cls, nvars: int, values: Sequence[Sequence]) -> "LaurentMatrix":
        return cls(
            nvars,
            [[LaurentPoly.constant(nvars, v) for v in row] for row in values],
        )

    @classmethod
    def diagonal_monomials(cls, exponents: Sequence[Sequence[int]]) -> "LaurentMatrix":
        nvars = len(exponents[0])
        size = len(exponents)
        zero = LaurentPoly.zero(nvars)
        return cls(
            nvars,
            [
                [
                    LaurentPoly.monomial(exponents[i]) if i == j else zero
                    for j in range(size)
                ]
                for i in range(size)
            ],
        )

    # -- operations --------------------------------------------------

    def entry(self, i: int, j: int) -> LaurentPoly:
        return self.rows[i][j]

    def __mul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        if self.nvars != other.nvars or self.size != other.size:
            raise LaurentError("matrix shapes or variables differ")
        k = self.size
        rows = []
        for i in range(k):
            row = []
            for j in range(k):
                acc = LaurentPoly.zero(self.nvars)
                for l in range(k):
                    a = self.rows[i][l]
                    b = other.rows[l][j]
                    if a.is_zero or b.is_zero:
                        continue
                    acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return LaurentMatrix(self.nvars, rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentMatrix)
            and self.nvars == other.nvars
            and self.size == other.size
            and self.rows == other.rows
        )

    __hash__ = None

    def map_entries(self, fn: Callable[[LaurentPoly], LaurentPoly], nvars: int | None = None) -> "LaurentMatrix":
        return LaurentMatrix(
            self.nvars if nvars is None else nvars,
            [[fn(p) for p in row] for row in self.rows],
        )

    def evaluate(self, point: Sequence[Fraction]) -> list[list[Fraction]]:
        return [[p.evaluate(point) for p in row] for row in self.rows]

    def _minor(self, drop_row: int, drop_col: int) -> "LaurentMatrix":
        rows = [
            [p for j, p in enumerate(row) if j != drop_col]
            for i, row in enumerate(self.rows)
            if i != drop_row
        ]
        return LaurentMatrix(self.nvars, rows)

    def determinant(self) -> LaurentPoly:
        """Cofactor expansion along the first row; fine at small size."""
        if self.size == 1:
            return self.rows[0][0]
        acc = LaurentPoly.zero(self.nvars)
        for j, p in enumerate(self.rows[0]):
            if p.is_zero:
                continue
            cof = self._minor(0, j).determinant()
            term = p * cof
            acc = acc + (term if j % 2 == 0 else -term)
        return acc

    def adjugate(self) -> "LaurentMatrix":
        k = self.size
        if k == 1:
            return LaurentMatrix(self.nvars, [[LaurentPoly.constant(self.nvars, 1)]])
        rows = []
        for i in range(k):
            row = []
            for j in range(k):
                cof = self._minor(j, i).determinant()
                row.append(cof if (i + j) % 2 == 0 else -cof)
            rows.append(row)
        return LaurentMatrix(self.nvars, rows)
