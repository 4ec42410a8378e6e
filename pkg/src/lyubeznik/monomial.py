"""Monomial ideals: parsing, minimal generators, radicals, polarization,
Alexander duality and the Stanley-Reisner correspondence."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    IdealSyntaxError,
    NonPositiveExponent,
    NotSquarefree,
    UnitIdealError,
    UnknownVariable,
    UserInputError,
)
from .simplicial import SimplicialComplex, bits, mask_of, minimal_sets

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

Exponents = tuple[int, ...]


@dataclass(frozen=True)
class PolynomialRing:
    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        for name in names:
            if not _IDENT.match(name):
                raise UserInputError(f"invalid variable name {name!r}")
        if len(set(names)) != len(names):
            raise UserInputError("variable names must be distinct")

    @property
    def n(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownVariable(f"unknown variable {name!r}") from None

    def fresh_name(self, base: str) -> str:
        name = base
        while name in self.names:
            name += "_"
        return name


def divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimalize(gens: Iterable[Sequence[int]]) -> tuple[Exponents, ...]:
    """Drop duplicates and multiples; the rest in descending lex order."""
    uniq = sorted({tuple(g) for g in gens}, key=lambda g: (sum(g), g))
    kept: list[Exponents] = []
    for g in uniq:
        if not any(divides(k, g) for k in kept):
            kept.append(g)
    return tuple(sorted(kept, reverse=True))


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal by minimal generators; no generators means the zero ideal."""

    ring: PolynomialRing
    generators: tuple[Exponents, ...] = field(default=())

    def __post_init__(self):
        n = self.ring.n
        gens = []
        for g in self.generators:
            g = tuple(int(e) for e in g)
            if len(g) != n:
                raise UserInputError(f"exponent vector {g} does not match {n} variables")
            if any(e < 0 for e in g):
                raise NonPositiveExponent(f"negative exponent in {g}")
            gens.append(g)
        gens = minimalize(gens)
        if any(sum(g) == 0 for g in gens):
            raise UnitIdealError("the unit ideal has no Stanley-Reisner complex")
        object.__setattr__(self, "generators", gens)

    @property
    def n(self) -> int:
        return self.ring.n

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_squarefree(self) -> bool:
        return all(e <= 1 for g in self.generators for e in g)

    def contains(self, monomial: Sequence[int]) -> bool:
        return any(divides(g, monomial) for g in self.generators)

    def supports(self) -> list[int]:
        return [mask_of(i for i, e in enumerate(g) if e) for g in self.generators]

    def __str__(self):
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(format_monomial(g, self.ring.names) for g in self.generators) + ")"

    def to_text(self) -> str:
        """Round-trippable text in the input grammar."""
        head = "ring: " + ", ".join(self.ring.names)
        if self.is_zero:
            return head
        return head + "; " + ", ".join(format_monomial(g, self.ring.names) for g in self.generators)


def format_monomial(exps: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for e, name in zip(exps, names):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) or "1"


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<int>[0-9]+)|(?P<op>[*^,;:]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise IdealSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self, offset=0):
        return self.tokens[min(self.k + offset, len(self.tokens) - 1)]

    def take(self, kind, value=None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise IdealSyntaxError(f"expected {want!r}, got {got!r}", tok[2])
        self.k += 1
        return tok

    def ring_decl(self):
        if self.peek()[:2] == ("ident", "ring") and self.peek(1)[:2] == ("op", ":"):
            self.k += 2
            names = [self.take("ident")[1]]
            while self.peek()[:2] == ("op", ","):
                self.k += 1
                names.append(self.take("ident")[1])
            if self.peek()[0] == "end":
                return names, True
            self.take("op", ";")
            return names, False
        return None, False

    def monomial(self):
        factors = [self.factor()]
        while self.peek()[:2] == ("op", "*"):
            self.k += 1
            factors.append(self.factor())
        return factors

    def factor(self):
        tok = self.peek()
        if tok[0] == "int":
            self.k += 1
            if tok[1] == "1" or int(tok[1]) == 1:
                return (None, 0, tok[2])
            raise IdealSyntaxError(f"unexpected number {tok[1]!r}", tok[2])
        name = self.take("ident")
        exponent = 1
        if self.peek()[:2] == ("op", "^"):
            self.k += 1
            e = self.take("int")
            exponent = int(e[1])
            if exponent <= 0:
                raise NonPositiveExponent(f"exponent {exponent} of {name[1]} at position {e[2]}")
        return (name[1], exponent, name[2])

    def gens(self):
        out = [self.monomial()]
        while self.peek()[:2] == ("op", ","):
            self.k += 1
            out.append(self.monomial())
        self.take("end")
        return out


def parse_ideal(text: str, ring: PolynomialRing | Sequence[str] | None = None) -> MonomialIdeal:
    """Parse ``"ring: x, y; x*y^2, y^3"`` or a bare generator list.

    Without a ring declaration (and without ``ring``) the variables are the
    ones mentioned, in order of first appearance.
    """
    p = _Parser(text)
    names, only_ring = p.ring_decl()
    if names is not None:
        ring = PolynomialRing(tuple(names))
    elif ring is not None and not isinstance(ring, PolynomialRing):
        ring = PolynomialRing(tuple(ring))
    if only_ring:
        return MonomialIdeal(ring, ())
    monomials = p.gens()
    if ring is None:
        seen: list[str] = []
        for mono in monomials:
            for name, _, _ in mono:
                if name is not None and name not in seen:
                    seen.append(name)
        ring = PolynomialRing(tuple(seen))
    gens = []
    for mono in monomials:
        exps = [0] * ring.n
        for name, e, pos in mono:
            if name is None:
                continue
            if name not in ring.names:
                raise UnknownVariable(f"unknown variable {name!r} at position {pos}")
            exps[ring.names.index(name)] += e
        if not any(exps):
            raise UnitIdealError("generator 1 makes the ideal the unit ideal")
        gens.append(tuple(exps))
    return MonomialIdeal(ring, tuple(gens))


def ideal_from_json(obj: dict) -> MonomialIdeal:
    try:
        ring = PolynomialRing(tuple(obj["ring"]))
        gens = tuple(tuple(g) for g in obj["generators"])
    except (KeyError, TypeError) as exc:
        raise UserInputError(f"malformed ideal record: {exc}") from None
    return MonomialIdeal(ring, gens)


# -- operations --------------------------------------------------------------

def radical(I: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal(I.ring, tuple(tuple(min(e, 1) for e in g) for g in I.generators))


def _require_squarefree(I: MonomialIdeal):
    if not I.is_squarefree:
        raise NotSquarefree(f"{I} is not squarefree")


def minimal_transversals(n: int, supports: Sequence[int]) -> tuple[int, ...]:
    """Minimal vertex sets meeting every support (the minimal primes)."""
    trans = [0]
    for s in sorted(set(supports), key=lambda m: (bin(m).count("1"), m)):
        nxt = []
        for t in trans:
            if t & s:
                nxt.append(t)
            else:
                nxt.extend(t | 1 << v for v in bits(s))
        trans = list(minimal_sets(nxt))
    return tuple(sorted(trans))


def stanley_reisner(I: MonomialIdeal) -> SimplicialComplex:
    """Complex whose faces are the sets sigma with x^sigma not in I."""
    _require_squarefree(I)
    full = (1 << I.n) - 1
    primes = minimal_transversals(I.n, I.supports())
    return SimplicialComplex(I.n, tuple(full & ~t for t in primes))


def ideal_of_complex(delta: SimplicialComplex, ring: PolynomialRing | None = None) -> MonomialIdeal:
    if ring is None:
        ring = PolynomialRing(tuple(f"x{i + 1}" for i in range(delta.n)))
    if ring.n != delta.n:
        raise UserInputError("ring size differs from the ground set")
    if delta.is_void:
        raise UnitIdealError("the void complex has the unit ideal")
    gens = tuple(tuple((g >> i) & 1 for i in range(delta.n)) for g in delta.minimal_nonfaces)
    return MonomialIdeal(ring, gens)


def dimension(I: MonomialIdeal) -> int:
    """Krull dimension of S/I: largest facet of the complex of the radical."""
    return stanley_reisner(radical(I)).ring_dim


def alexander_dual(I: MonomialIdeal) -> MonomialIdeal:
    """Generated by x^(complement of F) for the facets F of the complex of I."""
    _require_squarefree(I)
    if I.is_zero:
        raise UnitIdealError("the Alexander dual of the zero ideal is the unit ideal")
    delta = stanley_reisner(I)
    full = (1 << I.n) - 1
    gens = tuple(tuple(((full & ~f) >> i) & 1 for i in range(I.n)) for f in delta.facets)
    return MonomialIdeal(I.ring, gens)


@dataclass(frozen=True)
class PolarizationResult:
    ideal: MonomialIdeal
    variable_map: dict  # (original index, copy index), both 0-based -> new index
    height_shift: int

    @property
    def h(self) -> int:
        return self.height_shift


def polarize(I: MonomialIdeal) -> PolarizationResult:
    """Standard polarization: x_i^a becomes x_{i,1} x_{i,2} ... x_{i,a}.

    Every original variable keeps at least one copy; copies are laid out in
    block order and named ``x_i_j`` (1-based).
    """
    n = I.n
    copies = [max([g[i] for g in I.generators] + [1]) for i in range(n)]
    variable_map = {}
    names = []
    for i in range(n):
        for j in range(copies[i]):
            variable_map[(i, j)] = len(names)
            names.append(f"x_{i + 1}_{j + 1}")
    ring = PolynomialRing(tuple(names))
    gens = []
    for g in I.generators:
        exps = [0] * len(names)
        for i, e in enumerate(g):
            for j in range(e):
                exps[variable_map[(i, j)]] = 1
        gens.append(tuple(exps))
    pol = MonomialIdeal(ring, tuple(gens))
    h = dimension(pol) - dimension(I)
    return PolarizationResult(pol, variable_map, h)


def depolarize(result: PolarizationResult, original: PolynomialRing) -> MonomialIdeal:
    """Specialize every copy x_{i,j} to x_i (the quotient by the Theta sequence)."""
    owner = {new: i for (i, _), new in result.variable_map.items()}
    gens = []
    for g in result.ideal.generators:
        exps = [0] * original.n
        for k, e in enumerate(g):
            exps[owner[k]] += e
        gens.append(tuple(exps))
    return MonomialIdeal(original, tuple(gens))


def cone_with_hyperplane(I: MonomialIdeal) -> MonomialIdeal:
    """I S' intersected with (x_{n+1}) in S' = S[x_{n+1}], i.e. x_{n+1} * I."""
    _require_squarefree(I)
    ring = PolynomialRing(I.ring.names + (I.ring.fresh_name(f"y{I.n + 1}"),))
    return MonomialIdeal(ring, tuple(g + (1,) for g in I.generators))
