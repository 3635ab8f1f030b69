"""Exact linear algebra over the rationals and prime fields.

Everything downstream (cochain complexes, spectral-sequence pages,
resolution certificates) reduces to ranks, kernels, images and solves
computed here.  Matrices are small and dense, so correctness and
reproducibility win over speed: pivoting is deterministic (first nonzero
entry in column order), rational arithmetic uses `fractions.Fraction`,
and prime-field scalars are canonical representatives in ``[0, p)``.

Rank computations take a fraction-free integer path (rows are scaled to
integers, elimination uses cross-multiplication with gcd normalization),
which keeps the large total-complex rank checks fast without leaving
exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class FieldMismatchError(ValueError):
    """An entry cannot be reduced into the requested field."""


_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    # Deterministic Miller-Rabin; the witness set is exact for n < 3.3e24.
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (``p is None``) or the prime field with ``p`` elements."""

    p: int | None = None

    def __post_init__(self) -> None:
        if self.p is not None:
            if not isinstance(self.p, int) or not (2 <= self.p < 2**62):
                raise ValueError(f"modulus must be an integer in [2, 2^62): {self.p!r}")
            if not _is_prime(self.p):
                raise ValueError(f"modulus must be prime: {self.p}")

    @property
    def is_rationals(self) -> bool:
        return self.p is None

    def zero(self):
        return Fraction(0) if self.p is None else 0

    def one(self):
        return Fraction(1) if self.p is None else 1

    def reduce(self, x):
        """Coerce ``x`` to a canonical scalar of this field.

        Accepts ints and Fractions.  Over F_p a Fraction reduces via the
        inverse of its denominator; a denominator divisible by p (or any
        non-exact type such as float) raises FieldMismatchError.
        """
        if isinstance(x, bool):
            x = int(x)
        if self.p is None:
            if isinstance(x, int):
                return Fraction(x)
            if isinstance(x, Fraction):
                return x
            raise FieldMismatchError(f"not an exact rational scalar: {x!r}")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldMismatchError(
                    f"denominator {x.denominator} is divisible by the modulus {self.p}"
                )
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        raise FieldMismatchError(f"not an exact scalar: {x!r}")

    def label(self) -> str:
        return "QQ" if self.p is None else f"GF({self.p})"

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return self.label()


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


def parse_field(text: str) -> Field:
    """Parse a field selector: ``q`` for the rationals, ``p:<prime>`` for F_p."""
    t = text.strip().lower()
    if t in ("q", "qq", "rationals"):
        return QQ
    if t.startswith("p:"):
        return Field(int(t[2:]))
    raise ValueError(f"unknown field selector {text!r}; expected 'q' or 'p:<prime>'")


@dataclass(frozen=True)
class Mat:
    """A dense matrix with entries stored row-major as a flat tuple."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match rows*cols")

    @classmethod
    def from_rows(cls, rows, field: Field) -> "Mat":
        data = []
        ncols = None
        for row in rows:
            row = list(row)
            if ncols is None:
                ncols = len(row)
            elif len(row) != ncols:
                raise ValueError("ragged rows")
            data.extend(field.reduce(x) for x in row)
        nrows = len(list(rows))
        if ncols is None:
            ncols = 0
        return cls(nrows, ncols, tuple(data))

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field) -> "Mat":
        return cls(rows, cols, (field.zero(),) * (rows * cols))

    @classmethod
    def identity(cls, n: int, field: Field) -> "Mat":
        z, o = field.zero(), field.one()
        return cls(n, n, tuple(o if i == j else z for i in range(n) for j in range(n)))

    def entry(self, i: int, j: int):
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_lists(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "Mat":
        return Mat(
            self.cols,
            self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def mul_vec(self, v, field: Field) -> tuple:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        v = [field.reduce(x) for x in v]
        out = []
        for i in range(self.rows):
            base = i * self.cols
            s = field.zero()
            for j, x in enumerate(v):
                if x:
                    s += self.entries[base + j] * x
            out.append(field.reduce(s))
        return tuple(out)

    def mul(self, other: "Mat", field: Field) -> "Mat":
        if self.cols != other.rows:
            raise ValueError("inner dimensions do not match")
        out = []
        for i in range(self.rows):
            base = i * self.cols
            for j in range(other.cols):
                s = field.zero()
                for k in range(self.cols):
                    a = self.entries[base + k]
                    if a:
                        s += a * other.entries[k * other.cols + j]
                out.append(field.reduce(s))
        return Mat(self.rows, other.cols, tuple(out))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)


def _rref(rows: list[list], field: Field) -> list[int]:
    """Fully reduce ``rows`` in place; return the pivot column indices.

    Pivot choice is deterministic: columns are scanned left to right and
    the first row with a nonzero entry is used.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    p = field.p
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pivot_row = rows[r]
        pv = pivot_row[c]
        if p is None:
            inv = Fraction(1) / pv
            for j in range(c, ncols):
                pivot_row[j] *= inv
        else:
            inv = pow(pv, -1, p)
            for j in range(c, ncols):
                pivot_row[j] = pivot_row[j] * inv % p
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if f == 0:
                continue
            ri = rows[i]
            if p is None:
                for j in range(c, ncols):
                    ri[j] -= f * pivot_row[j]
            else:
                for j in range(c, ncols):
                    ri[j] = (ri[j] - f * pivot_row[j]) % p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def _integer_rows(m: Mat) -> list[list[int]]:
    """Scale each row of a rational matrix to integers (rank-preserving)."""
    out = []
    for i in range(m.rows):
        row = m.row(i)
        mult = 1
        for x in row:
            d = x.denominator if isinstance(x, Fraction) else 1
            mult = mult * d // gcd(mult, d)
        out.append([int(x * mult) if isinstance(x, Fraction) else int(x) * mult for x in row])
    return out


def _int_forward_ranks(rows: list[list[int]], checkpoints: list[int]) -> list[int]:
    """Fraction-free forward elimination over the integers.

    Processes columns left to right and records the pivot count after
    each checkpoint column index (checkpoints must be increasing).
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    out = []
    rank = 0
    ci = 0
    for c in range(ncols):
        if rank < nrows:
            pr = None
            for i in range(rank, nrows):
                if rows[i][c]:
                    pr = i
                    break
            if pr is not None:
                rows[rank], rows[pr] = rows[pr], rows[rank]
                pivot_row = rows[rank]
                pv = pivot_row[c]
                for i in range(rank + 1, nrows):
                    ri = rows[i]
                    a = ri[c]
                    if a:
                        g = 0
                        for j in range(c, ncols):
                            ri[j] = ri[j] * pv - a * pivot_row[j]
                            g = gcd(g, ri[j])
                        if g > 1:
                            for j in range(c, ncols):
                                ri[j] //= g
                rank += 1
        while ci < len(checkpoints) and checkpoints[ci] == c:
            out.append(rank)
            ci += 1
    while ci < len(checkpoints):
        out.append(rank)
        ci += 1
    return out


def _modp_forward_ranks(rows: list[list[int]], p: int, checkpoints: list[int]) -> list[int]:
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    out = []
    rank = 0
    ci = 0
    for c in range(ncols):
        if rank < nrows:
            pr = None
            for i in range(rank, nrows):
                if rows[i][c]:
                    pr = i
                    break
            if pr is not None:
                rows[rank], rows[pr] = rows[pr], rows[rank]
                pivot_row = rows[rank]
                inv = pow(pivot_row[c], -1, p)
                for i in range(rank + 1, nrows):
                    ri = rows[i]
                    a = ri[c]
                    if a:
                        f = a * inv % p
                        for j in range(c, ncols):
                            ri[j] = (ri[j] - f * pivot_row[j]) % p
                rank += 1
        while ci < len(checkpoints) and checkpoints[ci] == c:
            out.append(rank)
            ci += 1
    while ci < len(checkpoints):
        out.append(rank)
        ci += 1
    return out


def rank(m: Mat, field: Field) -> int:
    """Row rank (= column rank) of ``m`` over ``field``."""
    if m.rows == 0 or m.cols == 0:
        return 0
    if field.is_rationals:
        rows = _integer_rows(m)
        return _int_forward_ranks(rows, [m.cols - 1])[0]
    rows = [[field.reduce(x) for x in m.row(i)] for i in range(m.rows)]
    return _modp_forward_ranks(rows, field.p, [m.cols - 1])[0]


def column_prefix_ranks(m: Mat, field: Field, order: list[int]) -> list[int]:
    """Rank of the submatrix on the first ``k`` columns of ``order``, all k.

    Returns a list of length ``len(order)``; one elimination pass total.
    """
    if not order:
        return []
    perm_rows = [[m.entry(i, j) for j in order] for i in range(m.rows)]
    checkpoints = list(range(len(order)))
    if m.rows == 0:
        return [0] * len(order)
    if field.is_rationals:
        rows = _integer_rows(Mat.from_rows(perm_rows, field))
        return _int_forward_ranks(rows, checkpoints)
    rows = [[field.reduce(x) for x in row] for row in perm_rows]
    return _modp_forward_ranks(rows, field.p, checkpoints)


def kernel_basis(m: Mat, field: Field) -> list[tuple]:
    """A canonical basis of the right kernel of ``m``.

    One vector per free column of the reduced echelon form: the free
    coordinate is 1 and pivot coordinates are the negated echelon entries.
    """
    if m.cols == 0:
        return []
    if m.rows == 0:
        z, o = field.zero(), field.one()
        return [tuple(o if i == j else z for i in range(m.cols)) for j in range(m.cols)]
    rows = [[field.reduce(x) for x in m.row(i)] for i in range(m.rows)]
    pivots = _rref(rows, field)
    pivot_set = set(pivots)
    z, o = field.zero(), field.one()
    basis = []
    for j in range(m.cols):
        if j in pivot_set:
            continue
        v = [z] * m.cols
        v[j] = o
        for t, pc in enumerate(pivots):
            e = rows[t][j]
            if e != 0:
                v[pc] = field.reduce(-e)
        basis.append(tuple(v))
    return basis


def image_basis(m: Mat, field: Field) -> list[tuple]:
    """The pivot columns of ``m``: a basis of its column space."""
    if m.rows == 0 or m.cols == 0:
        return []
    rows = [[field.reduce(x) for x in m.row(i)] for i in range(m.rows)]
    pivots = _rref(rows, field)
    return [m.col(j) for j in pivots]


def solve_in_subspace(target, generators, field: Field):
    """Coefficients ``c`` with ``sum(c_i * generators[i]) == target``.

    Returns a tuple of coefficients (free variables set to zero, so the
    answer is deterministic), or None when the target lies outside the
    span.  All vectors must have equal length.
    """
    target = [field.reduce(x) for x in target]
    gens = [[field.reduce(x) for x in g] for g in generators]
    n = len(target)
    for g in gens:
        if len(g) != n:
            raise ValueError("generator length does not match target length")
    if not gens:
        return () if all(x == 0 for x in target) else None
    if n == 0:
        return (field.zero(),) * len(gens)
    rows = [[gens[k][i] for k in range(len(gens))] + [target[i]] for i in range(n)]
    pivots = _rref(rows, field)
    if len(gens) in pivots:
        return None
    coeffs = [field.zero()] * len(gens)
    for t, pc in enumerate(pivots):
        coeffs[pc] = rows[t][len(gens)]
    return tuple(coeffs)


def in_span(target, generators, field: Field) -> bool:
    return solve_in_subspace(target, generators, field) is not None
