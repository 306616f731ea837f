"""Exact linear algebra over Q and prime fields.

Matrices act on column vectors: a ``LinearMap`` with ``rows`` x ``cols``
entries is a map ``k^cols -> k^rows``.  Tensor products of coordinate spaces
use left-major ordering, so the basis vector ``e_i (x) e_j`` of
``k^m (x) k^n`` sits at index ``i * n + j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Sequence


class DimensionError(ValueError):
    """Raised when shapes, ambient dimensions or fields do not match."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: str
    characteristic: int | None = None

    def __post_init__(self):
        if self.kind == "rationals":
            if self.characteristic is not None:
                raise ValueError("the rationals carry no characteristic")
        elif self.kind == "prime":
            if self.characteristic is None or not _is_prime(self.characteristic):
                raise ValueError(f"characteristic must be prime, got {self.characteristic}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def is_finite(self) -> bool:
        return self.kind == "prime"

    @property
    def zero(self):
        return Fraction(0) if self.kind == "rationals" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "rationals" else 1

    def reduce(self, x):
        """Canonical representative of ``x`` (lowest-terms fraction or residue)."""
        if self.kind == "rationals":
            return x if type(x) is Fraction else Fraction(x)
        p = self.characteristic
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, p)) % p
        return int(x) % p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "rationals":
            return 1 / Fraction(x)
        return pow(int(x), -1, self.characteristic)

    def elements(self) -> range:
        if not self.is_finite:
            raise ValueError("cannot enumerate the rationals")
        return range(self.characteristic)

    def format_scalar(self, x):
        if self.kind == "rationals":
            x = Fraction(x)
            return f"{x.numerator}/{x.denominator}"
        return self.reduce(x)

    def parse_scalar(self, s):
        if isinstance(s, str):
            s = s.strip()
            if "/" in s:
                a, b = s.split("/")
                value = Fraction(int(a), int(b))
            else:
                value = Fraction(int(s))
        elif isinstance(s, (int, Fraction)) and not isinstance(s, bool):
            value = s
        else:
            raise ValueError(f"cannot parse scalar {s!r}")
        return self.reduce(value)

    def __str__(self):
        return "Q" if self.kind == "rationals" else f"F_{self.characteristic}"


QQ = FieldSpec("rationals")


def GF(p: int) -> FieldSpec:
    return FieldSpec("prime", p)


# ---------------------------------------------------------------------------
# row reduction


def _rref_rows(field: FieldSpec, rows: list[list], ncols: int, stop: int | None = None):
    """In-place Gauss-Jordan elimination; pivots are searched in ``[0, stop)``."""
    red = field.reduce
    stop = ncols if stop is None else stop
    pivots = []
    r = 0
    for c in range(stop):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = field.inv(rows[r][c])
        if inv != 1:
            rows[r] = [red(v * inv) for v in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                row = rows[i]
                rows[i] = [red(a - f * b) for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


@dataclass(frozen=True)
class RrefResult:
    echelon: "LinearMap"
    rank: int
    pivots: tuple[int, ...]
    solution: tuple | None


def rref_solve(m: "LinearMap", rhs: Sequence | None = None) -> RrefResult:
    """Reduced row-echelon form of ``m``, optionally solving ``m x = rhs``.

    The particular solution sets every free variable to zero; it is ``None``
    when the system is inconsistent.
    """
    field = m.field
    if rhs is not None and len(rhs) != m.rows:
        raise DimensionError(f"rhs has length {len(rhs)}, expected {m.rows}")
    if rhs is None:
        rows = [list(r) for r in m.entries]
        rows, pivots = _rref_rows(field, rows, m.cols)
        ech = LinearMap(field, m.rows, m.cols, tuple(tuple(r) for r in rows))
        return RrefResult(ech, len(pivots), tuple(pivots), None)
    rows = [list(r) + [field.reduce(b)] for r, b in zip(m.entries, rhs)]
    rows, pivots = _rref_rows(field, rows, m.cols + 1, stop=m.cols)
    ech = LinearMap(field, m.rows, m.cols, tuple(tuple(r[:-1]) for r in rows))
    rank = len(pivots)
    if any(rows[i][-1] != 0 for i in range(rank, m.rows)):
        return RrefResult(ech, rank, tuple(pivots), None)
    x = [field.zero] * m.cols
    for i, c in enumerate(pivots):
        x[c] = rows[i][-1]
    return RrefResult(ech, rank, tuple(pivots), tuple(x))


# ---------------------------------------------------------------------------
# linear maps


@dataclass(frozen=True)
class LinearMap:
    field: FieldSpec
    rows: int
    cols: int
    entries: tuple[tuple, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative dimension")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionError(
                f"entry table does not have shape {self.rows}x{self.cols}"
            )

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Iterable], cols: int | None = None):
        table = tuple(tuple(field.reduce(v) for v in r) for r in rows)
        if cols is None:
            if not table:
                raise DimensionError("column count of an empty matrix must be given")
            cols = len(table[0])
        return cls(field, len(table), cols, table)

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence], rows: int):
        cols = len(columns)
        for c in columns:
            if len(c) != rows:
                raise DimensionError("column of wrong length")
        table = tuple(
            tuple(field.reduce(columns[j][i]) for j in range(cols)) for i in range(rows)
        )
        return cls(field, rows, cols, table)

    @classmethod
    def zero(cls, field: FieldSpec, rows: int, cols: int):
        z = field.zero
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int):
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def col_slice(self, start: int, stop: int) -> "LinearMap":
        return LinearMap(self.field, self.rows, stop - start, tuple(r[start:stop] for r in self.entries))

    def row_slice(self, start: int, stop: int) -> "LinearMap":
        return LinearMap(self.field, stop - start, self.cols, self.entries[start:stop])

    @property
    def T(self) -> "LinearMap":
        return LinearMap(self.field, self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)))

    def _check_field(self, other: "LinearMap"):
        if self.field != other.field:
            raise DimensionError(f"field mismatch: {self.field} vs {other.field}")

    def __matmul__(self, other):
        if isinstance(other, LinearMap):
            self._check_field(other)
            if self.cols != other.rows:
                raise DimensionError(f"cannot compose {self.shape} after {other.shape}")
            red, zero = self.field.reduce, self.field.zero
            # the matrices here are mostly zeros, so accumulate row by row over nonzeros
            sparse = [[(j, b) for j, b in enumerate(row) if b] for row in other.entries]
            out = []
            for r in self.entries:
                acc = [zero] * other.cols
                for k, a in enumerate(r):
                    if a:
                        for j, b in sparse[k]:
                            acc[j] += a * b
                out.append(tuple(red(x) for x in acc))
            return LinearMap(self.field, self.rows, other.cols, tuple(out))
        return self.apply(other)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for map with {self.cols} columns")
        red = self.field.reduce
        return tuple(red(sum(a * b for a, b in zip(r, v) if a and b)) for r in self.entries)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        red = self.field.reduce
        return LinearMap(self.field, self.rows, self.cols, tuple(
            tuple(red(a + b) for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)
        ))

    def __neg__(self) -> "LinearMap":
        red = self.field.reduce
        return LinearMap(self.field, self.rows, self.cols, tuple(tuple(red(-a) for a in r) for r in self.entries))

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return self + (-other)

    def scale(self, c) -> "LinearMap":
        red = self.field.reduce
        return LinearMap(self.field, self.rows, self.cols, tuple(tuple(red(c * a) for a in r) for r in self.entries))

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.entries for a in r)

    def rank(self) -> int:
        return rref_solve(self).rank

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "LinearMap":
        if self.rows != self.cols:
            raise DimensionError("only square maps are invertible")
        n = self.rows
        ident = LinearMap.identity(self.field, n)
        aug = [list(r) + list(i) for r, i in zip(self.entries, ident.entries)]
        aug, pivots = _rref_rows(self.field, aug, 2 * n, stop=n)
        if len(pivots) != n:
            raise ValueError("map is singular")
        return LinearMap(self.field, n, n, tuple(tuple(r[n:]) for r in aug))

    def image(self) -> "Subspace":
        return Subspace.span(self.field, self.rows, self.columns())

    def kernel(self) -> "Subspace":
        res = rref_solve(self)
        pivots = res.pivots
        free = [c for c in range(self.cols) if c not in set(pivots)]
        vecs = []
        for f in free:
            v = [self.field.zero] * self.cols
            v[f] = self.field.one
            for i, c in enumerate(pivots):
                v[c] = self.field.reduce(-res.echelon.entries[i][f])
            vecs.append(v)
        return Subspace.span(self.field, self.cols, vecs)

    def to_lists(self) -> list[list]:
        return [[self.field.format_scalar(a) for a in r] for r in self.entries]

    def __repr__(self):
        body = "; ".join(" ".join(str(a) for a in r) for r in self.entries)
        return f"LinearMap[{self.field}]({self.rows}x{self.cols}: {body})"


def kronecker(a: LinearMap, b: LinearMap) -> LinearMap:
    """``a (x) b`` on the left-major tensor basis."""
    a._check_field(b)
    red = a.field.reduce
    zero = a.field.zero
    zeros = (zero,) * b.cols
    rows = []
    for ar in a.entries:
        for br in b.entries:
            row = []
            for x in ar:
                row.extend(tuple(red(x * y) for y in br) if x else zeros)
            rows.append(tuple(row))
    return LinearMap(a.field, a.rows * b.rows, a.cols * b.cols, tuple(rows))


def hstack(maps: Sequence[LinearMap], rows: int | None = None, field: FieldSpec | None = None) -> LinearMap:
    if not maps:
        return LinearMap.zero(field, rows, 0)
    r = maps[0].rows
    if any(m.rows != r for m in maps):
        raise DimensionError("hstack of maps with different row counts")
    return LinearMap(maps[0].field, r, sum(m.cols for m in maps),
                     tuple(tuple(a for m in maps for a in m.entries[i]) for i in range(r)))


def vstack(maps: Sequence[LinearMap], cols: int | None = None, field: FieldSpec | None = None) -> LinearMap:
    if not maps:
        return LinearMap.zero(field, 0, cols)
    c = maps[0].cols
    if any(m.cols != c for m in maps):
        raise DimensionError("vstack of maps with different column counts")
    return LinearMap(maps[0].field, sum(m.rows for m in maps), c,
                     tuple(r for m in maps for r in m.entries))


def block_diag(maps: Sequence[LinearMap], field: FieldSpec) -> LinearMap:
    rows = sum(m.rows for m in maps)
    cols = sum(m.cols for m in maps)
    z = field.zero
    out = []
    off = 0
    for m in maps:
        for r in m.entries:
            out.append((z,) * off + tuple(r) + (z,) * (cols - off - m.cols))
        off += m.cols
    return LinearMap(field, rows, cols, tuple(out))


def solve(a: LinearMap, b: LinearMap) -> LinearMap | None:
    """Some ``x`` with ``a @ x == b`` (free variables zero), or ``None``."""
    a._check_field(b)
    if a.rows != b.rows:
        raise DimensionError("solve: row mismatch")
    n = a.cols
    aug = [list(r) + list(s) for r, s in zip(a.entries, b.entries)]
    aug, pivots = _rref_rows(a.field, aug, n + b.cols, stop=n)
    rank = len(pivots)
    if any(aug[i][j] != 0 for i in range(rank, a.rows) for j in range(n, n + b.cols)):
        return None
    z = a.field.zero
    x = [[z] * b.cols for _ in range(n)]
    for i, c in enumerate(pivots):
        x[c] = aug[i][n:]
    return LinearMap(a.field, n, b.cols, tuple(tuple(r) for r in x))


def solve_right(a: LinearMap, b: LinearMap) -> LinearMap | None:
    """Some ``x`` with ``x @ a == b``, or ``None``."""
    xt = solve(a.T, b.T)
    return None if xt is None else xt.T


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """A subspace stored by its reduced row-echelon basis.

    The representation is canonical, so ``==`` decides equality of subspaces.
    """

    field: FieldSpec
    ambient_dim: int
    basis: tuple[tuple, ...]

    @classmethod
    def span(cls, field: FieldSpec, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            rows.append([field.reduce(a) for a in v])
        rows = [r for r in rows if any(a != 0 for a in r)]
        if not rows:
            return cls(field, ambient_dim, ())
        rows, pivots = _rref_rows(field, rows, ambient_dim)
        return cls(field, ambient_dim, tuple(tuple(r) for r in rows[: len(pivots)]))

    @classmethod
    def zero(cls, field: FieldSpec, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, ())

    @classmethod
    def full(cls, field: FieldSpec, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, LinearMap.identity(field, ambient_dim).entries)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, a in enumerate(v) if a != 0) for v in self.basis)

    def basis_matrix(self) -> LinearMap:
        """Inclusion ``k^dim -> k^ambient`` whose columns are the basis vectors."""
        return LinearMap.from_columns(self.field, self.basis, self.ambient_dim)

    def _check(self, other: "Subspace"):
        if self.field != other.field or self.ambient_dim != other.ambient_dim:
            raise DimensionError("ambient mismatch between subspaces")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.field, self.ambient_dim, self.basis + other.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.field, self.ambient_dim)
        # x = A u = B v  <=>  [A | -B] (u, v) = 0
        a = self.basis_matrix()
        b = other.basis_matrix()
        ker = hstack([a, -b]).kernel()
        vecs = [a.apply(k[: self.dim]) for k in ker.basis]
        return Subspace.span(self.field, self.ambient_dim, vecs)

    def contains(self, item) -> bool:
        if isinstance(item, Subspace):
            self._check(item)
            return all(self.contains(v) for v in item.basis)
        if len(item) != self.ambient_dim:
            raise DimensionError("vector has wrong length")
        return not any(self.reduce_vector(item))

    def __contains__(self, item) -> bool:
        return self.contains(item)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)

    def reduce_vector(self, v: Sequence) -> tuple:
        """Normal form of ``v`` modulo the subspace (zero on every pivot)."""
        red = self.field.reduce
        w = [red(a) for a in v]
        for row, p in zip(self.basis, self.pivots):
            c = w[p]
            if c:
                w = [red(a - c * b) for a, b in zip(w, row)]
        return tuple(w)

    def complement_coordinates(self) -> tuple[int, ...]:
        piv = set(self.pivots)
        return tuple(i for i in range(self.ambient_dim) if i not in piv)

    def quotient_projection(self) -> LinearMap:
        """Surjection onto the quotient, whose basis is the non-pivot coordinates."""
        keep = self.complement_coordinates()
        cols = []
        for j in range(self.ambient_dim):
            e = [0] * self.ambient_dim
            e[j] = 1
            w = self.reduce_vector(e)
            cols.append([w[i] for i in keep])
        return LinearMap.from_columns(self.field, cols, len(keep))

    def quotient_section(self) -> LinearMap:
        """Standard embedding of the non-pivot coordinates; a section of the projection."""
        keep = self.complement_coordinates()
        cols = []
        for i in keep:
            e = [0] * self.ambient_dim
            e[i] = 1
            cols.append(e)
        return LinearMap.from_columns(self.field, cols, self.ambient_dim)

    def coordinates(self, v: Sequence) -> tuple:
        """Coordinates of ``v`` in the echelon basis; raises if ``v`` lies outside."""
        if not self.contains(v):
            raise ValueError("vector does not lie in the subspace")
        return tuple(self.field.reduce(v[p]) for p in self.pivots)

    def elements(self) -> Iterator[tuple]:
        """All vectors of the subspace (finite fields only)."""
        m = self.basis_matrix()
        for coeffs in product(self.field.elements(), repeat=self.dim):
            yield m.apply(coeffs)


def image(m: LinearMap) -> Subspace:
    return m.image()


def kernel(m: LinearMap) -> Subspace:
    return m.kernel()


def subspace_calculus(op: str, *args):
    """Dispatch helper over the subspace operations by name."""
    if op == "image":
        return args[0].image()
    if op == "kernel":
        return args[0].kernel()
    if op == "sum":
        return args[0] + args[1]
    if op == "intersect":
        return args[0].intersect(args[1])
    if op == "contains":
        return args[0].contains(args[1])
    if op == "quotient_projection":
        return args[0].quotient_projection()
    raise ValueError(f"unknown subspace operation {op!r}")


def all_vectors(field: FieldSpec, n: int) -> Iterator[tuple]:
    return product(field.elements(), repeat=n)


def all_matrices(field: FieldSpec, rows: int, cols: int) -> Iterator[LinearMap]:
    for flat in product(field.elements(), repeat=rows * cols):
        yield LinearMap(field, rows, cols, tuple(tuple(flat[i * cols:(i + 1) * cols]) for i in range(rows)))
