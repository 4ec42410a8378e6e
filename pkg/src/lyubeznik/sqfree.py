"""Squarefree modules as finite linear data over the Boolean lattice.

A squarefree S-module M (S = K[x_1..x_n]) is determined by its components
M_sigma for sigma a subset of [n] together with the multiplication maps
x_i : M_sigma -> M_{sigma + i} for i not in sigma.  Components in other
N^n-degrees are recovered from the support: M_alpha = M_supp(alpha).

Ext^{n-i}_S(M, omega_S) is computed as the cohomology H^{-i} of the complex

    D^{-i}(M) = (+)_{#sigma = i} (M_sigma)^* (x) K[sigma],

whose slice in squarefree degree tau keeps the summands with sigma >= tau.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import IndexOutOfRange, InternalInconsistency, NotAComplex
from .field_linalg import (
    Cohomology,
    FieldSpec,
    induced_cohomology_map,
    is_zero,
    rank,
    to_rows,
)
from .simplicial import SimplicialComplex, bits, popcount, submasks


def _sign(mask: int, j: int) -> int:
    """(-1)^(number of elements of mask below j)."""
    return -1 if popcount(mask & ((1 << j) - 1)) % 2 else 1


class SquarefreeModule:
    """Components and multiplication maps of a squarefree module.

    ``dims`` maps a subset (bitmask) to dim M_sigma; only positive entries are
    kept.  ``mult[(sigma, i)]`` is the dims[sigma+i] x dims[sigma] matrix of
    multiplication by x_i; missing entries are zero maps.
    """

    def __init__(self, n: int, field: FieldSpec, dims: Mapping[int, int], mult: Mapping | None = None):
        self.n = n
        self.field = field
        self.dims = {s: d for s, d in dims.items() if d > 0}
        self.mult = {}
        for (s, i), A in (mult or {}).items():
            t = s | 1 << i
            if s >> i & 1:
                raise ValueError(f"multiplication by x_{i} from a degree containing it")
            if s in self.dims and t in self.dims:
                if A.nrows() != self.dims[t] or A.ncols() != self.dims[s]:
                    raise ValueError(f"multiplication map at ({s}, {i}) has the wrong shape")
                self.mult[(s, i)] = A
        self._rows: dict = {}

    def dim(self, sigma: int) -> int:
        return self.dims.get(sigma, 0)

    @cached_property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.dims, key=lambda m: (popcount(m), m)))

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    @property
    def is_zero(self) -> bool:
        return not self.dims

    def multiplication(self, sigma: int, i: int):
        A = self.mult.get((sigma, i))
        if A is None:
            return self.field.zeros(self.dim(sigma | 1 << i), self.dim(sigma))
        return A

    def mult_rows(self, sigma: int, i: int):
        """Multiplication map as nested lists, or None for a zero map."""
        key = (sigma, i)
        if key not in self._rows:
            A = self.mult.get(key)
            self._rows[key] = None if A is None or is_zero(A) else to_rows(A)
        return self._rows[key]

    def component_dim(self, alpha: Sequence[int]) -> int:
        return self.dim(sum(1 << i for i, a in enumerate(alpha) if a))

    def degrees(self) -> list[int]:
        """Every tau below some element of the support (where D(M) can live)."""
        out: set[int] = set()
        for s in self.support:
            if s not in out:
                out.update(submasks(s))
        return sorted(out, key=lambda m: (popcount(m), m))

    def commuting_square_failures(self) -> list[tuple[int, int, int]]:
        """(sigma, i, j) where x_j x_i != x_i x_j starting from M_sigma."""
        bad = []
        for s in self.support:
            free = [v for v in range(self.n) if not s >> v & 1]
            for a, i in enumerate(free):
                for j in free[a + 1:]:
                    si, sj = s | 1 << i, s | 1 << j
                    if not self.dim(si | 1 << j):
                        continue
                    lhs = self.multiplication(si, j) * self.multiplication(s, i)
                    rhs = self.multiplication(sj, i) * self.multiplication(s, j)
                    if lhs != rhs:
                        bad.append((s, i, j))
        return bad

    def __repr__(self):
        return f"SquarefreeModule(n={self.n}, field={self.field}, total_dim={self.total_dim})"


def from_complex(delta: SimplicialComplex, field: FieldSpec) -> SquarefreeModule:
    """The Stanley-Reisner ring K[Delta]."""
    one = field.identity(1)
    faces = delta.face_set
    mult = {}
    for s in faces:
        for i in range(delta.n):
            if not s >> i & 1 and (s | 1 << i) in faces:
                mult[(s, i)] = one
    return SquarefreeModule(delta.n, field, {s: 1 for s in faces}, mult)


def canonical_module(n: int, field: FieldSpec) -> SquarefreeModule:
    """omega_S = S(-1): only the top squarefree degree is nonzero."""
    return SquarefreeModule(n, field, {(1 << n) - 1: 1})


def residue_field(n: int, field: FieldSpec) -> SquarefreeModule:
    return SquarefreeModule(n, field, {0: 1})


def nonface_module(delta: SimplicialComplex, field: FieldSpec) -> SquarefreeModule:
    """The Stanley-Reisner ideal I_Delta as a squarefree module."""
    full = (1 << delta.n) - 1
    faces = delta.face_set
    dims = {s: 1 for s in submasks(full) if s not in faces}
    one = field.identity(1)
    mult = {(s, i): one for s in dims for i in range(delta.n) if not s >> i & 1}
    return SquarefreeModule(delta.n, field, dims, mult)


# -- the complex D(M) --------------------------------------------------------

@dataclass
class DualSlice:
    """Degree-tau part of D(M).

    ``terms[i]`` lists the summands sigma (with sigma >= tau, #sigma = i) of
    D^{-i}; ``diffs[i]`` is the matrix of D^{-i} -> D^{-i+1} for i >= 1.
    """

    tau: int
    terms: list[list[int]]
    offsets: list[dict[int, int]]
    sizes: list[int]
    diffs: list
    field: FieldSpec

    def d_out(self, i: int):
        if i == 0:
            return self.field.zeros(0, self.sizes[0])
        return self.diffs[i]

    def d_in(self, i: int):
        if i + 1 >= len(self.sizes):
            return self.field.zeros(self.sizes[i], 0)
        return self.diffs[i + 1]

    @cached_property
    def ranks(self) -> list[int]:
        r = [0] * (len(self.sizes) + 1)
        for i in range(1, len(self.sizes)):
            r[i] = rank(self.diffs[i], self.field)
        return r

    def cohomology_dims(self) -> list[int]:
        """dim H^{-i} for i = 0..n."""
        r = self.ranks
        return [self.sizes[i] - r[i] - r[i + 1] for i in range(len(self.sizes))]

    def cohomology(self, i: int) -> Cohomology:
        return Cohomology(self.d_in(i), self.d_out(i), self.field, check=False)

    def check_d_squared(self):
        for i in range(2, len(self.sizes)):
            A, B = self.diffs[i - 1], self.diffs[i]
            if A.nrows() and B.ncols() and not is_zero(A * B):
                raise NotAComplex(f"d o d != 0 at D^{-i} in degree {bits(self.tau)}")


class DualComplex:
    """The cochain complex D(M) with H^{-i} = Ext^{n-i}_S(M, omega_S)."""

    def __init__(self, module: SquarefreeModule):
        self.module = module

    def slice(self, tau: int) -> DualSlice:
        M = self.module
        n, field = M.n, M.field
        terms: list[list[int]] = [[] for _ in range(n + 1)]
        for s in M.support:
            if s & tau == tau:
                terms[popcount(s)].append(s)
        offsets, sizes = [], []
        for group in terms:
            off, pos = {}, 0
            for s in group:
                off[s] = pos
                pos += M.dims[s]
            offsets.append(off)
            sizes.append(pos)
        diffs = [None]
        for i in range(1, n + 1):
            rows, cols = sizes[i - 1], sizes[i]
            entries = [0] * (rows * cols)
            if rows and cols:
                lower = offsets[i - 1]
                for s in terms[i]:
                    c0 = offsets[i][s]
                    for j in bits(s & ~tau):
                        r = s & ~(1 << j)
                        if r not in lower:
                            continue
                        A = M.mult_rows(r, j)
                        if A is None:
                            continue
                        r0 = lower[r]
                        sg = _sign(s, j)
                        # block (rows of r, cols of s) = sign * A^T
                        for b, arow in enumerate(A):
                            base = c0 + b
                            for a, x in enumerate(arow):
                                if x != 0:
                                    entries[(r0 + a) * cols + base] = x if sg > 0 else -x
            diffs.append(field.matrix(rows, cols, entries))
        return DualSlice(tau, terms, offsets, sizes, diffs, field)

    def projection(self, source: DualSlice, target: DualSlice, i: int):
        """Multiplication D^{-i}_tau -> D^{-i}_{tau'} for tau <= tau' (keeps sigma >= tau')."""
        field = self.module.field
        rows, cols = target.sizes[i], source.sizes[i]
        entries = [0] * (rows * cols)
        for s, r0 in target.offsets[i].items():
            c0 = source.offsets[i][s]
            for a in range(self.module.dims[s]):
                entries[(r0 + a) * cols + c0 + a] = 1
        return field.matrix(rows, cols, entries)


def dual_complex(M: SquarefreeModule) -> DualComplex:
    return DualComplex(M)


def dual_cohomology_dims(M: SquarefreeModule, tau: int) -> list[int]:
    """dim [Ext^{n-i}_S(M, omega_S)]_tau for i = 0..n."""
    return DualComplex(M).slice(tau).cohomology_dims()


def ext_modules(M: SquarefreeModule, indices: Iterable[int] | None = None, check: bool = False) -> dict[int, SquarefreeModule]:
    """Ext^{n-i}_S(M, omega_S) for each requested i, as squarefree modules."""
    n, field = M.n, M.field
    wanted = sorted(set(range(n + 1) if indices is None else indices))
    for i in wanted:
        if not 0 <= i <= n:
            raise IndexOutOfRange(f"index {i} outside 0..{n}")
    D = DualComplex(M)
    slices: dict[int, DualSlice] = {}
    coh: dict[tuple[int, int], Cohomology] = {}
    dims = {i: {} for i in wanted}
    for tau in M.degrees():
        sl = D.slice(tau)
        if check:
            sl.check_d_squared()
        h = sl.cohomology_dims()
        keep = False
        for i in wanted:
            if h[i]:
                dims[i][tau] = h[i]
                coh[(tau, i)] = sl.cohomology(i)
                keep = True
        if keep:
            slices[tau] = sl
    out = {}
    for i in wanted:
        mult = {}
        for tau in dims[i]:
            for k in range(n):
                t2 = tau | 1 << k
                if t2 == tau or (t2, i) not in coh:
                    continue
                P = D.projection(slices[tau], slices[t2], i)
                mult[(tau, k)] = induced_cohomology_map(coh[(tau, i)], coh[(t2, i)], P, check=check)
        out[i] = SquarefreeModule(n, field, dims[i], mult)
    return out


def ext_sq(M: SquarefreeModule, i: int) -> SquarefreeModule:
    """Ext^{n-i}_S(M, omega_S)."""
    if not 0 <= i <= M.n:
        raise IndexOutOfRange(f"index {i} outside 0..{M.n}")
    return ext_modules(M, [i])[i]


# -- link functor ------------------------------------------------------------

def link_functor(M: SquarefreeModule, sigma: int) -> SquarefreeModule:
    """l_sigma(M) over K[x_i : i in sigma], with (l_sigma M)_tau = M_{sigma^c + tau}.

    The result lives on the ground set sigma relabelled 0..#sigma-1.
    """
    full = (1 << M.n) - 1
    comp = full & ~sigma
    order = bits(sigma)

    def expand(t: int) -> int:
        return comp | sum(1 << order[k] for k in bits(t))

    dims = {}
    for t in range(1 << len(order)):
        d = M.dim(expand(t))
        if d:
            dims[t] = d
    mult = {}
    for t in dims:
        for k in range(len(order)):
            if not t >> k & 1 and (t | 1 << k) in dims:
                A = M.mult.get((expand(t), order[k]))
                if A is not None:
                    mult[(t, k)] = A
    return SquarefreeModule(len(order), M.field, dims, mult)


# -- Koszul homology ---------------------------------------------------------

def koszul_slice(M: SquarefreeModule, alpha: Sequence[int]):
    """Koszul complex K(x; M) in degree alpha in N^n, as ``(sizes, diffs)``.

    diffs[i] is the matrix of K_i -> K_{i-1} for i = 1..n (diffs[0] is None).
    """
    n, field = M.n, M.field
    alpha = tuple(alpha)
    supp = sum(1 << v for v, a in enumerate(alpha) if a)

    def comp_support(tau: int) -> int:
        return sum(1 << v for v, a in enumerate(alpha) if a - (tau >> v & 1) > 0)

    terms: list[list[tuple[int, int]]] = [[] for _ in range(n + 1)]
    for tau in submasks(supp):
        beta = comp_support(tau)
        if M.dim(beta):
            terms[popcount(tau)].append((tau, beta))
    for group in terms:
        group.sort()
    offsets, sizes = [], []
    for group in terms:
        off, pos = {}, 0
        for tau, beta in group:
            off[tau] = pos
            pos += M.dims[beta]
        offsets.append(off)
        sizes.append(pos)
    diffs = [None]
    for i in range(1, n + 1):
        rows, cols = sizes[i - 1], sizes[i]
        entries = [0] * (rows * cols)
        if rows and cols:
            for tau, beta in terms[i]:
                c0 = offsets[i][tau]
                for j in bits(tau):
                    lower = tau & ~(1 << j)
                    r0 = offsets[i - 1].get(lower)
                    if r0 is None:
                        continue
                    sg = _sign(tau, j)
                    if beta >> j & 1:
                        # x_j acts bijectively in a direction already in the support
                        A = [[1 if a == b else 0 for b in range(M.dims[beta])] for a in range(M.dims[beta])]
                    else:
                        A = M.mult_rows(beta, j)
                        if A is None:
                            continue
                    for a, arow in enumerate(A):
                        for b, x in enumerate(arow):
                            if x != 0:
                                entries[(r0 + a) * cols + c0 + b] = x if sg > 0 else -x
        diffs.append(field.matrix(rows, cols, entries))
    return sizes, diffs


def koszul_homology_dims(M: SquarefreeModule, alpha: Sequence[int], check: bool = False) -> list[int]:
    """dim Tor_i(K, M)_alpha for i = 0..n."""
    sizes, diffs = koszul_slice(M, alpha)
    n = M.n
    if check:
        for i in range(2, n + 1):
            A, B = diffs[i - 1], diffs[i]
            if A.nrows() and B.ncols() and not is_zero(A * B):
                raise NotAComplex(f"Koszul d o d != 0 in degree {alpha}")
    r = [0] * (n + 2)
    for i in range(1, n + 1):
        r[i] = rank(diffs[i], M.field)
    return [sizes[i] - r[i] - r[i + 1] for i in range(n + 1)]


def _mask_to_alpha(mask: int, n: int) -> tuple[int, ...]:
    return tuple(mask >> v & 1 for v in range(n))


def koszul_betti(M: SquarefreeModule, check: bool = False) -> list[dict[int, int]]:
    """Per i, the nonzero squarefree-degree dims of Tor_i(K, M)."""
    n = M.n
    out: list[dict[int, int]] = [{} for _ in range(n + 1)]
    if M.is_zero:
        return out
    for sigma in range(1 << n):
        if not any(s & sigma == s for s in M.support):
            continue
        h = koszul_homology_dims(M, _mask_to_alpha(sigma, n), check=check)
        for i, d in enumerate(h):
            if d:
                out[i][sigma] = d
    return out


def koszul_tor_dims(M: SquarefreeModule, i: int) -> tuple[int, dict[int, int]]:
    """(total, per-degree) dimensions of Tor_i(K, M)."""
    if not 0 <= i <= M.n:
        raise IndexOutOfRange(f"index {i} outside 0..{M.n}")
    per = koszul_betti(M)[i]
    return sum(per.values()), per


def modules_isomorphic_dims(A: SquarefreeModule, B: SquarefreeModule) -> bool:
    return A.n == B.n and A.dims == B.dims


def assert_same_dims(A: SquarefreeModule, B: SquarefreeModule, what: str):
    if not modules_isomorphic_dims(A, B):
        raise InternalInconsistency(f"{what}: {A.dims} != {B.dims}")
