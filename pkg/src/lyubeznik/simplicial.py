"""Simplicial complexes on a ground set [n] with bitmask faces.

A face is an int whose set bits are its vertices (vertex ``v`` is bit ``v``,
0-based).  Complexes are stored by their facets.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import NotAFace, UserInputError
from .field_linalg import QQ, FieldSpec, rank

MAX_VERTICES = 62


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> list[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def submasks(mask: int):
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def maximal_sets(masks: Iterable[int]) -> tuple[int, ...]:
    """Inclusion-maximal elements, sorted."""
    uniq = sorted(set(masks), key=lambda m: (-popcount(m), m))
    kept: list[int] = []
    for m in uniq:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return tuple(sorted(kept))


def minimal_sets(masks: Iterable[int]) -> tuple[int, ...]:
    uniq = sorted(set(masks), key=lambda m: (popcount(m), m))
    kept: list[int] = []
    for m in uniq:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return tuple(sorted(kept))


@dataclass(frozen=True)
class SimplicialComplex:
    """Facet-represented complex on ``n`` vertices.

    ``facets == ()`` is the void complex (no faces at all); ``facets == (0,)``
    is the irrelevant complex whose only face is the empty set.
    """

    n: int
    facets: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise UserInputError(f"ground set size must be in 0..{MAX_VERTICES}")
        full = (1 << self.n) - 1
        for f in self.facets:
            if f & ~full:
                raise UserInputError(f"facet {bits(f)} is not inside [{self.n}]")
        object.__setattr__(self, "facets", maximal_sets(self.facets))

    @classmethod
    def from_facets(cls, n: int, facets: Iterable[Iterable[int]]) -> "SimplicialComplex":
        return cls(n, tuple(mask_of(f) for f in facets))

    @classmethod
    def simplex(cls, n: int) -> "SimplicialComplex":
        return cls(n, ((1 << n) - 1,))

    @classmethod
    def void(cls, n: int) -> "SimplicialComplex":
        return cls(n, ())

    @classmethod
    def irrelevant(cls, n: int) -> "SimplicialComplex":
        return cls(n, (0,))

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def ring_dim(self) -> int:
        """Krull dimension of K[Delta]: the largest facet size (-1 if void)."""
        return max((popcount(f) for f in self.facets), default=-1)

    @property
    def dim(self) -> int:
        return self.ring_dim - 1

    @cached_property
    def faces(self) -> tuple[int, ...]:
        """Every face, ordered by size and then by mask."""
        seen: set[int] = set()
        for f in self.facets:
            seen.update(submasks(f))
        return tuple(sorted(seen, key=lambda m: (popcount(m), m)))

    @cached_property
    def face_set(self) -> frozenset[int]:
        return frozenset(self.faces)

    def f_vector(self) -> list[int]:
        """Face counts by size 0..ring_dim (so entry 0 counts the empty face)."""
        counts = [0] * (self.ring_dim + 1)
        for f in self.faces:
            counts[popcount(f)] += 1
        return counts

    def is_face(self, sigma: int) -> bool:
        return any(sigma & f == sigma for f in self.facets)

    def link(self, face: int) -> "SimplicialComplex":
        if not self.is_face(face):
            raise NotAFace(f"{bits(face)} is not a face")
        return SimplicialComplex(self.n, tuple(f & ~face for f in self.facets if f & face == face))

    def induced_subcomplex(self, W: int) -> "SimplicialComplex":
        return SimplicialComplex(self.n, tuple(f & W for f in self.facets))

    def vertices(self) -> int:
        m = 0
        for f in self.facets:
            m |= f
        return m

    def reindexed(self, keep: int) -> "SimplicialComplex":
        """The same complex on the smaller ground set ``keep``, relabelled 0..#keep-1."""
        order = bits(keep)
        pos = {v: k for k, v in enumerate(order)}
        out = []
        for f in self.facets:
            if f & ~keep:
                raise UserInputError("complex uses vertices outside the kept set")
            out.append(mask_of(pos[v] for v in bits(f)))
        return SimplicialComplex(len(order), tuple(out))

    @cached_property
    def minimal_nonfaces(self) -> tuple[int, ...]:
        """Generators of the Stanley-Reisner ideal, as supports."""
        if self.is_void:
            return (0,)
        faces = self.face_set
        out = set()
        for f in self.faces:
            for v in range(self.n):
                if f >> v & 1:
                    continue
                g = f | 1 << v
                if g in faces:
                    continue
                if all((g & ~(1 << u)) in faces for u in bits(g)):
                    out.add(g)
        return tuple(sorted(out))

    def alexander_dual(self) -> "SimplicialComplex":
        """{tau : complement of tau is not a face}."""
        full = (1 << self.n) - 1
        return SimplicialComplex(self.n, tuple(full & ~g for g in self.minimal_nonfaces))

    def faces_of_size(self, k: int) -> list[int]:
        return [f for f in self.faces if popcount(f) == k]

    def __str__(self):
        if self.is_void:
            return "void"
        return "{" + ", ".join("{" + ",".join(str(v + 1) for v in bits(f)) + "}" for f in self.facets) + "}"


def coboundary_matrix(lower: list[int], upper: list[int], field: FieldSpec):
    """Simplicial coboundary from faces ``lower`` to faces one size up.

    Rows index ``upper``, columns ``lower``; the entry for removing vertex v
    from sigma is (-1)^(number of vertices of sigma below v).
    """
    index = {f: k for k, f in enumerate(lower)}
    cols = len(lower)
    entries = [0] * (len(upper) * cols)
    for r, sigma in enumerate(upper):
        for pos, v in enumerate(bits(sigma)):
            c = index.get(sigma & ~(1 << v))
            if c is not None:
                entries[r * cols + c] = -1 if pos % 2 else 1
    return field.matrix(len(upper), cols, entries)


def reduced_cohomology_dims(delta: SimplicialComplex, field: FieldSpec = QQ) -> list[int]:
    """Reduced cohomology dims; entry k is the dimension in degree k - 1.

    The list covers degrees -1..dim(delta).  The irrelevant complex gives [1];
    the void complex gives [0].
    """
    if delta.is_void:
        return [0]
    top = delta.ring_dim
    layers = [delta.faces_of_size(k) for k in range(top + 1)]
    ranks = [0] * (top + 2)  # ranks[k]: rank of coboundary from size k to size k+1
    for k in range(top):
        ranks[k] = rank(coboundary_matrix(layers[k], layers[k + 1], field), field)
    return [len(layers[k]) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(top + 1)]


def reduced_euler_characteristic(delta: SimplicialComplex) -> int:
    """sum over faces of (-1)^(dim face), with the empty face in degree -1."""
    return sum((-1) ** (popcount(f) - 1) for f in delta.faces)
