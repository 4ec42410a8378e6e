"""Exact linear algebra over the rationals and prime fields GF(p).

Matrices are python-flint objects: ``fmpq_mat`` in characteristic 0 and
``nmod_mat`` in characteristic p.  Everything here is a pure function of its
inputs.  Reduced row echelon forms are unique, so every basis produced below
(kernels, cohomology representatives) is canonical for a given input matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from flint import fmpq, fmpq_mat, nmod_mat

from .errors import NotAChainMap, NotAComplex, ShapeMismatch

__all__ = [
    "FieldSpec",
    "QQ",
    "rank",
    "rref",
    "kernel_basis",
    "cohomology_dim",
    "Cohomology",
    "induced_cohomology_map",
]

_MAX_PRIME = 2**31


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: ``characteristic`` 0 is QQ, otherwise GF(p)."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if c != 0 and not (c < _MAX_PRIME and _is_prime(c)):
            raise ValueError(f"characteristic must be 0 or a prime < 2^31, got {c}")

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def scalar(self, value):
        """Coerce an int, Fraction or flint scalar into an entry for this field."""
        if self.characteristic == 0:
            if isinstance(value, fmpq):
                return value
            num = getattr(value, "numerator", value)
            den = getattr(value, "denominator", 1)
            return fmpq(int(num), int(den))
        p = self.characteristic
        if hasattr(value, "denominator") and not isinstance(value, int):
            num, den = int(value.numerator), int(value.denominator)
            if den % p == 0:
                raise ZeroDivisionError(f"{value} has no image in GF({p})")
            return num * pow(den, -1, p) % p
        return int(value) % p

    def matrix(self, rows: int, cols: int, entries=None):
        """Dense matrix from a row-major entry list (``None`` gives zeros)."""
        if self.characteristic == 0:
            if entries is None:
                return fmpq_mat(rows, cols)
            return fmpq_mat(rows, cols, [self.scalar(e) for e in entries])
        if entries is None:
            return nmod_mat(rows, cols, self.characteristic)
        return nmod_mat(rows, cols, [int(e) for e in entries], self.characteristic)

    def from_rows(self, rows, cols: int | None = None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        entries = [e for r in rows for e in r]
        if len(entries) != len(rows) * cols:
            raise ShapeMismatch("ragged rows")
        return self.matrix(len(rows), cols, entries)

    def identity(self, size: int):
        entries = [0] * (size * size)
        for k in range(size):
            entries[k * size + k] = 1
        return self.matrix(size, size, entries)

    def zeros(self, rows: int, cols: int):
        return self.matrix(rows, cols)


QQ = FieldSpec(0)


def field_of(M) -> FieldSpec:
    if isinstance(M, nmod_mat):
        return FieldSpec(int(M.modulus()))
    return QQ


def to_rows(M) -> list[list]:
    """Entries as Python values: ints for GF(p), ``fmpq`` for QQ."""
    rows = M.tolist()
    if isinstance(M, nmod_mat):
        return [[int(x) for x in r] for r in rows]
    return rows


def to_int_rows(M) -> list[list[int]]:
    """Entries as ints; raises if a rational entry is not integral."""
    out = []
    for r in to_rows(M):
        row = []
        for x in r:
            if isinstance(x, fmpq):
                if x.q != 1:
                    raise ValueError(f"non-integral entry {x}")
                x = int(x.p)
            row.append(int(x))
        out.append(row)
    return out


def is_zero(M) -> bool:
    return all(x == 0 for x in M.entries())


def hstack(mats, field: FieldSpec, rows: int):
    mats = list(mats)
    cols = sum(m.ncols() for m in mats)
    if not mats or cols == 0:
        return field.zeros(rows, cols)
    for m in mats:
        if m.nrows() != rows:
            raise ShapeMismatch(f"hstack: expected {rows} rows, got {m.nrows()}")
    parts = [to_rows(m) for m in mats]
    entries = []
    for r in range(rows):
        for part in parts:
            entries.extend(part[r])
    return field.matrix(rows, cols, entries)


def submatrix(M, row_idx, col_idx, field: FieldSpec):
    row_idx, col_idx = list(row_idx), list(col_idx)
    rows = to_rows(M)
    entries = [rows[r][c] for r in row_idx for c in col_idx]
    return field.matrix(len(row_idx), len(col_idx), entries)


def rank(M, field: FieldSpec | None = None) -> int:
    if M.nrows() == 0 or M.ncols() == 0:
        return 0
    if isinstance(M, fmpq_mat):
        # integer ranks are much faster in flint than rational ones
        return M.numer_denom()[0].rank()
    return M.rank()


def rref(M, field: FieldSpec | None = None):
    """Reduced row echelon form and its pivot columns."""
    field = field or field_of(M)
    if M.nrows() == 0 or M.ncols() == 0:
        return field.zeros(M.nrows(), M.ncols()), []
    if isinstance(M, fmpq_mat):
        num, _ = M.numer_denom()
        R, den, r = num.rref()
        R = fmpq_mat(R) * fmpq(1, int(den))
    else:
        R, r = M.rref()
    rows = to_rows(R)
    pivots = []
    for i in range(r):
        row = rows[i]
        pivots.append(next(c for c, x in enumerate(row) if x != 0))
    return R, pivots


def kernel_basis(M, field: FieldSpec | None = None):
    """Columns spanning the null space; one column per free variable."""
    field = field or field_of(M)
    ncols = M.ncols()
    R, pivots = rref(M, field)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    rows = to_rows(R)
    entries = [0] * (ncols * len(free))
    width = len(free)
    for k, f in enumerate(free):
        entries[f * width + k] = 1
        for r, p in enumerate(pivots):
            x = rows[r][f]
            if x != 0:
                entries[p * width + k] = -x
    return field.matrix(ncols, width, entries)


def _check_complex(d_in, d_out, field):
    if d_out.ncols() != d_in.nrows():
        raise ShapeMismatch(
            f"d_out has {d_out.ncols()} columns but d_in has {d_in.nrows()} rows"
        )
    if d_in.ncols() and d_out.nrows() and not is_zero(d_out * d_in):
        raise NotAComplex("d_out * d_in != 0")


def cohomology_dim(d_in, d_out, field: FieldSpec | None = None, check: bool = True) -> int:
    """dim ker(d_out) - rank(d_in) for  A --d_in--> B --d_out--> C."""
    field = field or field_of(d_out)
    if check:
        _check_complex(d_in, d_out, field)
    return d_out.ncols() - rank(d_out, field) - rank(d_in, field)


def solve_in_span(A, V, field: FieldSpec):
    """X with A X = V, for A of full column rank and V inside its column span."""
    r = A.ncols()
    if V.ncols() == 0:
        return field.zeros(r, 0)
    if r == 0:
        if not is_zero(V):
            raise ValueError("vector outside the column span")
        return field.zeros(0, V.ncols())
    R, pivots = rref(hstack([A, V], field, A.nrows()), field)
    if pivots[:r] != list(range(r)) or len(pivots) != r:
        raise ValueError("matrix not of full column rank, or vector outside its span")
    return submatrix(R, range(r), range(r, r + V.ncols()), field)


class Cohomology:
    """Cohomology at the middle of  A --d_in--> B --d_out--> C.

    Representatives are chosen by elimination on [boundary basis | cocycle
    basis], so the basis of H is determined by the two input matrices.
    """

    def __init__(self, d_in, d_out, field: FieldSpec, check: bool = True):
        if check:
            _check_complex(d_in, d_out, field)
        self.d_in = d_in
        self.d_out = d_out
        self.field = field

    @property
    def ambient_dim(self) -> int:
        return self.d_out.ncols()

    @cached_property
    def dim(self) -> int:
        return cohomology_dim(self.d_in, self.d_out, self.field, check=False)

    @cached_property
    def boundary_basis(self):
        _, pivots = rref(self.d_in, self.field)
        return submatrix(self.d_in, range(self.d_in.nrows()), pivots, self.field)

    @cached_property
    def representatives(self):
        m = self.ambient_dim
        if self.dim == 0:
            return self.field.zeros(m, 0)
        Z = kernel_basis(self.d_out, self.field)
        B = self.boundary_basis
        _, pivots = rref(hstack([B, Z], self.field, m), self.field)
        chosen = [p - B.ncols() for p in pivots if p >= B.ncols()]
        return submatrix(Z, range(m), chosen, self.field)

    def coordinates(self, V):
        """Coordinates of the classes of the cocycles V in the representative basis."""
        B = self.boundary_basis
        H = self.representatives
        X = solve_in_span(hstack([B, H], self.field, self.ambient_dim), V, self.field)
        return submatrix(X, range(B.ncols(), B.ncols() + H.ncols()), range(V.ncols()), self.field)


def induced_cohomology_map(source: Cohomology, target: Cohomology, chain_map, check: bool = True):
    """Matrix (target.dim x source.dim) of the map induced on cohomology."""
    field = source.field
    if chain_map.nrows() != target.ambient_dim or chain_map.ncols() != source.ambient_dim:
        raise ShapeMismatch("chain map shape does not match the two slices")
    if source.dim == 0 or target.dim == 0:
        return field.zeros(target.dim, source.dim)
    images = chain_map * source.representatives
    if check:
        if target.d_out.nrows() and not is_zero(target.d_out * images):
            raise NotAChainMap("cocycles are not sent to cocycles")
        Bs = chain_map * source.boundary_basis
        Bt = target.boundary_basis
        if rank(hstack([Bt, Bs], field, target.ambient_dim), field) != Bt.ncols():
            raise NotAChainMap("coboundaries are not sent to coboundaries")
    return target.coordinates(images)
