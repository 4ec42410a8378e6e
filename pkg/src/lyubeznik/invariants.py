"""Lyubeznik tables and related invariants of Stanley-Reisner rings.

All numbers come from the squarefree Ext modules of K[Delta]:

    lambda_{i,j}(K[Delta]_m) = dim [Ext^{n-i}(Ext^{n-j}(K[Delta], w), w)]_0

and, localizing at the monomial prime generated by the variables outside a
face F (so that the local ring is the Stanley-Reisner ring of lk F), the same
formula read in squarefree degree F with n replaced by n - #F.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Sequence

from .errors import InternalInconsistency, VoidComplex
from .field_linalg import QQ, FieldSpec
from .monomial import MonomialIdeal, radical, stanley_reisner
from .simplicial import SimplicialComplex, bits, popcount, reduced_cohomology_dims
from .sqfree import (
    SquarefreeModule,
    dual_cohomology_dims,
    ext_modules,
    from_complex,
    koszul_betti,
    nonface_module,
)


@dataclass(frozen=True)
class LyubeznikTable:
    """(d+1) x (d+1) table, rows i and columns j; entries beyond d are zero."""

    d: int
    entries: tuple[tuple[int, ...], ...]
    field: FieldSpec = QQ

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if 0 <= i <= self.d and 0 <= j <= self.d:
            return self.entries[i][j]
        return 0

    @property
    def highest(self) -> int:
        return self[self.d, self.d]

    def is_trivial(self) -> bool:
        return is_trivial_table(self)

    def nonzero(self) -> dict[tuple[int, int], int]:
        return {(i, j): v for i, row in enumerate(self.entries) for j, v in enumerate(row) if v}

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def shifted_equal(self, other: "LyubeznikTable", h: int) -> bool:
        """other[i, j] == self[i - h, j - h] for every i, j."""
        size = max(self.d + h, other.d) + 1
        return all(other[i, j] == self[i - h, j - h] for i in range(size) for j in range(size))

    def pretty(self) -> str:
        return format_grid(self.entries)


def format_grid(rows: Sequence[Sequence[int]]) -> str:
    """Rows labelled i, columns labelled j, zeros shown as a centered dot."""
    size = max(len(rows), max((len(r) for r in rows), default=0))
    width = max([len(str(v)) for r in rows for v in r] + [len(str(size - 1)), 1])
    ncols = max((len(r) for r in rows), default=0)
    lines = [" " * (width + 3) + " ".join(f"{j:>{width}}" for j in range(ncols))]
    for i, row in enumerate(rows):
        cells = " ".join(f"{(v if v else '·'):>{width}}" for v in row)
        lines.append(f"{i:>{width}} | {cells}")
    return "\n".join(lines)


def is_trivial_table(t: LyubeznikTable) -> bool:
    return t.highest == 1 and sum(sum(r) for r in t.entries) == 1


def _require_nonvoid(delta: SimplicialComplex):
    if delta.is_void:
        raise VoidComplex("the void complex has no Stanley-Reisner ring")


@lru_cache(maxsize=64)
def sr_ext_modules(delta: SimplicialComplex, field: FieldSpec) -> dict[int, SquarefreeModule]:
    """Ext^{n-i}_S(K[Delta], omega_S) for i = 0..n (cached per complex and field)."""
    return ext_modules(from_complex(delta, field))


def _trimmed(full: list[list[int]], d: int, field: FieldSpec, where: str) -> LyubeznikTable:
    for i, row in enumerate(full):
        for j, v in enumerate(row):
            if v and (i > d or j > d):
                raise InternalInconsistency(f"{where}: lambda_{i},{j} = {v} beyond dimension {d}")
    return LyubeznikTable(d, tuple(tuple(row[: d + 1]) for row in full[: d + 1]), field)


def lyubeznik_table(delta: SimplicialComplex, field: FieldSpec = QQ) -> LyubeznikTable:
    """Lyubeznik table of K[Delta] localized at the graded maximal ideal."""
    _require_nonvoid(delta)
    n = delta.n
    exts = sr_ext_modules(delta, field)
    full = [[0] * (n + 1) for _ in range(n + 1)]
    for j in range(n + 1):
        dims = dual_cohomology_dims(exts[j], 0)
        for i in range(n + 1):
            full[i][j] = dims[i]
    return _trimmed(full, delta.ring_dim, field, "lyubeznik_table")


def table_at_face_graded(delta: SimplicialComplex, face: int, field: FieldSpec = QQ) -> LyubeznikTable:
    """Localized table read from the degree-F components of the iterated Ext."""
    _require_nonvoid(delta)
    local = delta.link(face)
    n, f = delta.n, popcount(face)
    s = n - f
    exts = sr_ext_modules(delta, field)
    full = [[0] * (s + 1) for _ in range(s + 1)]
    for j in range(s + 1):
        dims = dual_cohomology_dims(exts[f + j], face)
        for i in range(s + 1):
            full[i][j] = dims[f + i]
    return _trimmed(full, local.ring_dim, field, f"table at face {bits(face)}")


def local_complex(delta: SimplicialComplex, face: int) -> SimplicialComplex:
    """lk F on the ground set [n] minus F, relabelled."""
    full = (1 << delta.n) - 1
    return delta.link(face).reindexed(full & ~face)


def table_at_face_link(delta: SimplicialComplex, face: int, field: FieldSpec = QQ) -> LyubeznikTable:
    """Localized table computed directly from the link."""
    return lyubeznik_table(local_complex(delta, face), field)


def lyubeznik_table_at_face(delta: SimplicialComplex, face: int, field: FieldSpec = QQ) -> LyubeznikTable:
    """Table of K[Delta] localized at the prime (x_i : i not in F).

    Both readings are computed and must agree.
    """
    graded = table_at_face_graded(delta, face, field)
    direct = table_at_face_link(delta, face, field)
    if graded != direct:
        raise InternalInconsistency(
            f"face {bits(face)}: graded {graded.to_lists()} != link {direct.to_lists()}"
        )
    return graded


def lyubeznik_table_monomial(I: MonomialIdeal, field: FieldSpec = QQ) -> LyubeznikTable:
    return lyubeznik_table(stanley_reisner(radical(I)), field)


# -- Hochster-Huneke graph ---------------------------------------------------

class UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))
        self.components = size

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra
            self.components -= 1


@dataclass(frozen=True)
class HochsterHunekeGraph:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    component_count: int

    def to_dot(self, names: Sequence[str] | None = None) -> str:
        def label(mask):
            vs = bits(mask)
            return "{" + ",".join(names[v] if names else str(v + 1) for v in vs) + "}"

        lines = ["graph HH {"]
        for k, v in enumerate(self.vertices):
            lines.append(f'  v{k} [label="{label(v)}"];')
        for a, b in self.edges:
            lines.append(f"  v{a} -- v{b};")
        lines.append("}")
        return "\n".join(lines)


def hochster_huneke_graph(delta: SimplicialComplex) -> HochsterHunekeGraph:
    """Top-dimensional facets, joined when they share a ridge."""
    _require_nonvoid(delta)
    d = delta.ring_dim
    top = tuple(f for f in delta.facets if popcount(f) == d)
    edges = []
    uf = UnionFind(len(top))
    for a in range(len(top)):
        for b in range(a + 1, len(top)):
            if popcount(top[a] & top[b]) == d - 1:
                edges.append((a, b))
                uf.union(a, b)
    return HochsterHunekeGraph(top, tuple(edges), uf.components)


def highest_lyu_via_graph(delta: SimplicialComplex) -> int:
    return hochster_huneke_graph(delta).component_count


# -- multiplicities, gamma, generalized Lyubeznik numbers ---------------------

@dataclass(frozen=True)
class MultiplicityTable:
    """m[j][sigma]: multiplicity of H^{#sigma}_{p_sigma}(S) in H^j_I(S).

    ``gamma[i][j]`` sums m[n-j][sigma] over #sigma = n - i, so column j of
    gamma is graded like column j of the Lyubeznik table and
    ``genlyu[j]`` (the length of H^{n-j}_I(S)) is its column sum.
    """

    n: int
    d: int
    m: tuple[dict, ...]
    field: FieldSpec = QQ
    gamma: tuple[tuple[int, ...], ...] = dc_field(init=False)
    genlyu: tuple[int, ...] = dc_field(init=False)

    def __post_init__(self):
        n = self.n
        gamma = [[0] * (n + 1) for _ in range(n + 1)]
        for j in range(n + 1):
            for sigma, v in self.m[n - j].items():
                gamma[n - popcount(sigma)][j] += v
        genlyu = [sum(self.m[n - j].values()) for j in range(n + 1)]
        object.__setattr__(self, "gamma", tuple(tuple(r) for r in gamma))
        object.__setattr__(self, "genlyu", tuple(genlyu))

    def gamma_at(self, i: int, j: int) -> int:
        if 0 <= i <= self.n and 0 <= j <= self.n:
            return self.gamma[i][j]
        return 0

    def genlyu_at(self, j: int) -> int:
        return self.genlyu[j] if 0 <= j <= self.n else 0

    @property
    def total(self) -> int:
        return sum(sum(row.values()) for row in self.m)


def _m_from_ext(delta: SimplicialComplex, field: FieldSpec) -> list[dict]:
    # m_{j,sigma} = dim Ext^j_S(K[Delta], w)_{complement of sigma};  Ext^j is D-index n - j
    n = delta.n
    full = (1 << n) - 1
    exts = sr_ext_modules(delta, field)
    m = [dict() for _ in range(n + 1)]
    for j in range(n + 1):
        for tau, v in exts[n - j].dims.items():
            m[j][full & ~tau] = v
    return m


def _m_from_dual_betti(delta: SimplicialComplex, field: FieldSpec) -> list[dict]:
    # m_{j,sigma} = beta_{#sigma - j, sigma}(I^dual), Betti numbers of the Alexander dual ideal
    n = delta.n
    betti = koszul_betti(nonface_module(delta.alexander_dual(), field))
    m = [dict() for _ in range(n + 1)]
    for k, per in enumerate(betti):
        for sigma, v in per.items():
            j = popcount(sigma) - k
            if 0 <= j <= n:
                m[j][sigma] = v
            else:
                raise InternalInconsistency(f"dual Betti number outside range at {bits(sigma)}")
    return m


def _m_from_hochster(delta: SimplicialComplex, field: FieldSpec) -> list[dict]:
    # m_{j,sigma} = dim reduced H^{j-2}(restriction of the Alexander dual to sigma)
    n = delta.n
    dual = delta.alexander_dual()
    m = [dict() for _ in range(n + 1)]
    if dual.is_void:
        # the simplex: I = 0 and H^0_I(S) = S
        m[0][0] = 1
        return m
    for sigma in range(1 << n):
        dims = reduced_cohomology_dims(dual.induced_subcomplex(sigma), field)
        for k, v in enumerate(dims):
            j = k + 1  # entry k is degree k - 1 = j - 2
            if v and j <= popcount(sigma):
                m[j][sigma] = v
    return m


def multiplicities(delta: SimplicialComplex, field: FieldSpec = QQ, cross_check: bool = True) -> MultiplicityTable:
    _require_nonvoid(delta)
    m = _m_from_ext(delta, field)
    if cross_check:
        oracle = _m_from_dual_betti(delta, field)
        if m != oracle:
            raise InternalInconsistency(f"Ext multiplicities {m} != dual Betti multiplicities {oracle}")
    return MultiplicityTable(delta.n, delta.ring_dim, tuple(m), field)


def gamma_table(delta: SimplicialComplex, field: FieldSpec = QQ) -> tuple[tuple[int, ...], ...]:
    return multiplicities(delta, field).gamma


def generalized_lyu(delta: SimplicialComplex, field: FieldSpec = QQ) -> list[int]:
    """lambda^0_j for j = 0..d."""
    mt = multiplicities(delta, field)
    return list(mt.genlyu[: delta.ring_dim + 1])


# -- the bound B -------------------------------------------------------------

def bound_B(delta: SimplicialComplex, field: FieldSpec = QQ) -> int:
    """Largest Betti number over all the modules Ext^j_S(K[Delta], S)."""
    _require_nonvoid(delta)
    best = 0
    for N in sr_ext_modules(delta, field).values():
        for per in koszul_betti(N):
            best = max(best, sum(per.values()))
    return best


def iterated_ext_components(delta: SimplicialComplex, field: FieldSpec = QQ) -> dict[tuple[int, int, int], int]:
    """Nonzero dim [Ext^{n-i}(Ext^{n-j}(K[Delta], w), w)]_sigma keyed by (i, j, sigma)."""
    _require_nonvoid(delta)
    out = {}
    for j, N in sr_ext_modules(delta, field).items():
        for sigma in range(1 << delta.n):
            for i, v in enumerate(dual_cohomology_dims(N, sigma)):
                if v:
                    out[(i, j, sigma)] = v
    return out


def faces_with_tables(delta: SimplicialComplex, field: FieldSpec = QQ):
    """Yield (face, localized table) for every face, both readings checked."""
    for face in delta.faces:
        yield face, lyubeznik_table_at_face(delta, face, field)


def face_of_prime(delta_n: int, prime_vars: int) -> int:
    """Face attached to the monomial prime generated by ``prime_vars``."""
    return ((1 << delta_n) - 1) & ~prime_vars


__all__ = [
    "LyubeznikTable",
    "HochsterHunekeGraph",
    "MultiplicityTable",
    "lyubeznik_table",
    "lyubeznik_table_at_face",
    "lyubeznik_table_monomial",
    "table_at_face_graded",
    "table_at_face_link",
    "hochster_huneke_graph",
    "highest_lyu_via_graph",
    "multiplicities",
    "gamma_table",
    "generalized_lyu",
    "bound_B",
    "is_trivial_table",
]
