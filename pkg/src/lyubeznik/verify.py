"""Executable checks of the theorems relating the invariants, over seeded corpora.

Every check returns a :class:`CheckReport`; a report passes when it has no
failures.  All comparisons are exact integer comparisons.
"""

from __future__ import annotations

import random
from functools import partial
from dataclasses import dataclass, field
from typing import Iterable

from .errors import NotAComplex, UserInputError
from .field_linalg import QQ, FieldSpec
from .invariants import (
    LyubeznikTable,
    _m_from_dual_betti,
    _m_from_ext,
    _m_from_hochster,
    bound_B,
    highest_lyu_via_graph,
    hochster_huneke_graph,
    is_trivial_table,
    iterated_ext_components,
    local_complex,
    lyubeznik_table,
    lyubeznik_table_monomial,
    multiplicities,
    sr_ext_modules,
    table_at_face_graded,
    table_at_face_link,
)
from .monomial import (
    MonomialIdeal,
    PolynomialRing,
    cone_with_hyperplane,
    ideal_of_complex,
    minimalize,
    parse_ideal,
    polarize,
    radical,
    stanley_reisner,
)
from .simplicial import SimplicialComplex, bits, mask_of, maximal_sets, popcount, reduced_cohomology_dims
from .sqfree import dual_complex, from_complex, koszul_betti

MAX_CORPUS_VERTICES = 8
MAX_CORPUS_VARS = 4
MAX_CORPUS_EXPONENT = 3


@dataclass(frozen=True)
class CorpusConfig:
    seed: int = 0
    complex_count: int = 0
    max_vertices: int = 6
    ideal_count: int = 0
    max_vars: int = 4
    max_exponent: int = 3
    fields: tuple[FieldSpec, ...] = (QQ,)
    goldens: bool = False

    def __post_init__(self):
        if not 1 <= self.max_vertices <= MAX_CORPUS_VERTICES:
            raise UserInputError(f"max_vertices must be in 1..{MAX_CORPUS_VERTICES}")
        if not 1 <= self.max_vars <= MAX_CORPUS_VARS:
            raise UserInputError(f"max_vars must be in 1..{MAX_CORPUS_VARS}")
        if not 1 <= self.max_exponent <= MAX_CORPUS_EXPONENT:
            raise UserInputError(f"max_exponent must be in 1..{MAX_CORPUS_EXPONENT}")
        if self.complex_count < 0 or self.ideal_count < 0:
            raise UserInputError("corpus sizes must be nonnegative")
        if not -(2**63) <= self.seed < 2**64:
            raise UserInputError("seed must fit in 64 bits")


@dataclass
class CheckReport:
    check_name: str
    instances_run: int = 0
    failures: list = field(default_factory=list)  # (instance, expected, actual)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, instance: str, ok: bool, expected=None, actual=None):
        if not ok:
            self.failures.append((instance, expected, actual))

    def merge(self, other: "CheckReport") -> "CheckReport":
        self.instances_run += other.instances_run
        self.failures.extend(other.failures)
        return self

    def to_dict(self) -> dict:
        return {
            "check": self.check_name,
            "instances": self.instances_run,
            "passed": self.passed,
            "failures": [
                {"instance": inst, "expected": _jsonable(e), "actual": _jsonable(a)}
                for inst, e, a in self.failures
            ],
        }

    def summary(self) -> str:
        status = "PASS" if self.passed else f"FAIL ({len(self.failures)})"
        return f"{self.check_name}: {status} on {self.instances_run} instances"


def _jsonable(x):
    if isinstance(x, LyubeznikTable):
        return x.to_lists()
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    if isinstance(x, list):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


def describe(delta: SimplicialComplex, face: int | None = None, fld: FieldSpec | None = None) -> str:
    s = f"n={delta.n} {delta}"
    if face is not None:
        s += " at {" + ",".join(str(v + 1) for v in bits(face)) + "}"
    if fld is not None:
        s += f" over {fld}"
    return s


# -- corpus generation --------------------------------------------------------

def random_complex(n: int, density: float, rng: random.Random) -> SimplicialComplex:
    """Each nonempty subset of [n] is a candidate facet with probability ``density``."""
    if not 1 <= n <= MAX_CORPUS_VERTICES:
        raise UserInputError(f"n must be in 1..{MAX_CORPUS_VERTICES}")
    if not 0 < density < 1:
        raise UserInputError("density must lie strictly between 0 and 1")
    chosen = [m for m in range(1, 1 << n) if rng.random() < density]
    if not chosen:
        return SimplicialComplex.irrelevant(n)
    return SimplicialComplex(n, maximal_sets(chosen))


def random_ideal(n: int, max_exponent: int, rng: random.Random) -> MonomialIdeal:
    """1..6 generators with nonempty random support and exponents in 1..max_exponent."""
    if not 1 <= n <= MAX_CORPUS_VARS:
        raise UserInputError(f"n must be in 1..{MAX_CORPUS_VARS}")
    ring = PolynomialRing(tuple(f"x{i + 1}" for i in range(n)))
    gens = []
    for _ in range(rng.randint(1, 6)):
        support = rng.randint(1, (1 << n) - 1)
        gens.append(tuple(rng.randint(1, max_exponent) if support >> i & 1 else 0 for i in range(n)))
    return MonomialIdeal(ring, minimalize(gens))


def generate_corpus(config: CorpusConfig):
    rng = random.Random(config.seed)
    complexes = [
        random_complex(rng.randint(1, config.max_vertices), rng.uniform(0.2, 0.8), rng)
        for _ in range(config.complex_count)
    ]
    ideals = [
        random_ideal(rng.randint(1, config.max_vars), config.max_exponent, rng)
        for _ in range(config.ideal_count)
    ]
    return complexes, ideals


# -- checks on complexes -----------------------------------------------------

def check_localization_consistency(delta: SimplicialComplex, fld: FieldSpec = QQ) -> CheckReport:
    rep = CheckReport("localization_consistency")
    for face in delta.faces:
        rep.instances_run += 1
        graded = table_at_face_graded(delta, face, fld)
        direct = table_at_face_link(delta, face, fld)
        rep.record(describe(delta, face, fld), graded == direct, direct, graded)
    return rep


def check_highest_vs_graph(delta: SimplicialComplex, fld: FieldSpec = QQ) -> CheckReport:
    rep = CheckReport("highest_vs_graph")
    for face in delta.faces:
        rep.instances_run += 1
        top = table_at_face_link(delta, face, fld).highest
        comps = highest_lyu_via_graph(local_complex(delta, face))
        rep.record(describe(delta, face, fld), top == comps and top >= 1, comps, top)
    return rep


def check_bound(delta: SimplicialComplex, fld: FieldSpec = QQ) -> CheckReport:
    rep = CheckReport("bound")
    B = bound_B(delta, fld)
    for face in delta.faces:
        rep.instances_run += 1
        worst = max(max(r) for r in table_at_face_link(delta, face, fld).entries)
        rep.record(describe(delta, face, fld), worst <= B, f"<= {B}", worst)
    rep.instances_run += 1
    comps = iterated_ext_components(delta, fld)
    worst = max(comps.values(), default=0)
    rep.record(describe(delta, None, fld) + " (graded components)", worst <= B, f"<= {B}", worst)
    return rep


def check_gral_inequalities(obj, fld: FieldSpec = QQ, shift: str = "dimension") -> CheckReport:
    """Generalized Lyubeznik number and gamma inequalities.

    For a complex, at every face F:
        lambda0_{j-h}(local) <= lambda0_j   and   gamma_{i-h,j-h}(local) <= gamma_{i,j}
    where h is the drop in Krull dimension of the quotient
    (``shift="dimension"``) or h = #F, the drop in dimension of the ambient
    regular ring (``shift="height"``).
    For a monomial ideal: the same inequalities between S/sqrt(I) (shifted by
    h = dim of the polarization minus dim S/I) and the polarization.
    """
    if isinstance(obj, MonomialIdeal):
        return _gral_polarization(obj, fld)
    if shift not in ("dimension", "height"):
        raise UserInputError("shift must be 'dimension' or 'height'")
    delta = obj
    rep = CheckReport(f"gral_inequalities_localization[{shift}]")
    big = multiplicities(delta, fld)
    n, d = delta.n, delta.ring_dim
    for face in delta.faces:
        rep.instances_run += 1
        loc = local_complex(delta, face)
        small = multiplicities(loc, fld)
        h = d - loc.ring_dim if shift == "dimension" else popcount(face)
        bad = _gral_violations(small, big, h, n)
        rep.record(describe(delta, face, fld) + f" h={h}", not bad, "no violations", bad)
    return rep


def _gral_violations(small, big, h: int, n: int) -> list:
    bad = []
    for j in range(n + 1):
        if small.genlyu_at(j - h) > big.genlyu_at(j):
            bad.append(("lambda0", j, small.genlyu_at(j - h), big.genlyu_at(j)))
    for i in range(n + 1):
        for j in range(n + 1):
            if small.gamma_at(i - h, j - h) > big.gamma_at(i, j):
                bad.append(("gamma", i, j, small.gamma_at(i - h, j - h), big.gamma_at(i, j)))
    return bad


def _gral_polarization(I: MonomialIdeal, fld: FieldSpec) -> CheckReport:
    rep = CheckReport("gral_inequalities_polarization")
    pol = polarize(I)
    small = multiplicities(stanley_reisner(radical(I)), fld)
    big = multiplicities(stanley_reisner(pol.ideal), fld)
    rep.instances_run += 1
    bad = _gral_violations(small, big, pol.h, pol.ideal.n)
    rep.record(f"{I.to_text()} over {fld}", not bad, "no violations", bad)
    return rep


def check_cone_trick(delta: SimplicialComplex, fld: FieldSpec = QQ) -> CheckReport:
    rep = CheckReport("cone_trick")
    cone = stanley_reisner(cone_with_hyperplane(ideal_of_complex(delta)))
    rep.instances_run += 1
    whole = lyubeznik_table(cone, fld)
    rep.record(describe(delta, None, fld) + " cone", is_trivial_table(whole), "trivial", whole)
    apex = 1 << delta.n
    at_apex = table_at_face_graded(cone, apex, fld)
    original = lyubeznik_table(delta, fld)
    rep.record(describe(delta, None, fld) + " cone at apex", at_apex == original, original, at_apex)
    return rep


def check_structural(delta: SimplicialComplex, fld: FieldSpec = QQ) -> CheckReport:
    """d*d = 0, commuting squares, Hochster's formula, and the two m-table routes."""
    rep = CheckReport("structural")
    name = describe(delta, None, fld)
    M = from_complex(delta, fld)
    exts = sr_ext_modules(delta, fld)
    for label, mod in [("K[Delta]", M)] + [(f"Ext index {j}", N) for j, N in exts.items()]:
        rep.instances_run += 1
        bad_sq = mod.commuting_square_failures()
        rep.record(f"{name} {label} commuting squares", not bad_sq, [], bad_sq)
        D = dual_complex(mod)
        for tau in range(1 << delta.n):
            try:
                D.slice(tau).check_d_squared()
            except NotAComplex as exc:
                rep.record(f"{name} {label}", False, "d*d = 0", str(exc))
    rep.instances_run += 1
    betti = koszul_betti(M)
    hoch = _hochster_betti(delta, fld)
    rep.record(f"{name} Koszul Tor vs Hochster", betti == hoch, hoch, betti)
    rep.instances_run += 1
    m_ext, m_dual, m_top = _m_from_ext(delta, fld), _m_from_dual_betti(delta, fld), _m_from_hochster(delta, fld)
    rep.record(f"{name} m-table routes", m_ext == m_dual == m_top, m_dual, m_ext)
    return rep


def _hochster_betti(delta: SimplicialComplex, fld: FieldSpec) -> list[dict]:
    # beta_{i,sigma}(K[Delta]) = dim reduced H^{#sigma-i-1}(Delta restricted to sigma)
    n = delta.n
    out = [dict() for _ in range(n + 1)]
    for sigma in range(1 << n):
        dims = reduced_cohomology_dims(delta.induced_subcomplex(sigma), fld)
        for k, v in enumerate(dims):
            i = popcount(sigma) - k
            if v and 0 <= i <= n:
                out[i][sigma] = v
    return out


# -- checks on monomial ideals ------------------------------------------------

def check_polarization_theorem(I: MonomialIdeal, fld: FieldSpec = QQ) -> CheckReport:
    rep = CheckReport("polarization_theorem")
    rep.instances_run += 1
    base = lyubeznik_table_monomial(I, fld)
    pol = polarize(I)
    big = lyubeznik_table_monomial(pol.ideal, fld)
    ok = base.shifted_equal(big, pol.h)
    rep.record(f"{I.to_text()} over {fld} h={pol.h}", ok, base, big)
    return rep


def check_polarization_hh_graph(I: MonomialIdeal) -> CheckReport:
    rep = CheckReport("polarization_hh_graph")
    rep.instances_run += 1
    a = highest_lyu_via_graph(stanley_reisner(radical(I)))
    b = highest_lyu_via_graph(stanley_reisner(polarize(I).ideal))
    rep.record(I.to_text(), a == b, a, b)
    return rep


# -- fixed instances ------------------------------------------------------------

RP2_FACETS = (
    (0, 1, 2), (0, 1, 3), (0, 2, 4), (0, 3, 5), (0, 4, 5),
    (1, 2, 5), (1, 3, 4), (1, 4, 5), (2, 3, 4), (2, 3, 5),
)
BAD_B_RING = ("x", "y", "z", "u", "v")
NONSTANDARD_RING = ("x1", "x2", "x3", "y1", "y2", "y3", "z1", "z2", "z3")
NONSTANDARD_IDEAL = "x1*x2*y3, x1*x2*z3, x1*y2*z3, x1*z2*z3, y1*y2*y3, y1*y2*z3, y1*z2*z3"
SEQ_CM_IDEAL = "x^2*y, x^2*z, x*y*z, x*z^2, y^3, y^2*z, y*z^2"


def rp2() -> SimplicialComplex:
    return SimplicialComplex.from_facets(6, RP2_FACETS)


def bad_b_complex() -> SimplicialComplex:
    """Facets {z,u,v}, {x,u,v}, {x,y,v}, {x,y,z}: a path of triangles."""
    return SimplicialComplex.from_facets(5, [(2, 3, 4), (0, 3, 4), (0, 1, 4), (0, 1, 2)])


def bad_b_ideal() -> MonomialIdeal:
    return ideal_of_complex(bad_b_complex(), PolynomialRing(BAD_B_RING))


def nonstandard_ideal() -> MonomialIdeal:
    return parse_ideal(NONSTANDARD_IDEAL, NONSTANDARD_RING)


def seq_cm_ideal() -> MonomialIdeal:
    return parse_ideal(SEQ_CM_IDEAL, ("x", "y", "z"))


def check_golden_bad_b(fld: FieldSpec = QQ) -> CheckReport:
    rep = CheckReport("golden_bad_b")
    delta = bad_b_complex()
    z, u, v = 2, 3, 4
    cases = [("m", 0, 1, 3), ("(x,y,u,v)", mask_of([z]), 2, 2), ("(x,y)", mask_of([z, u, v]), 1, 0)]
    for label, face, comps, dim in cases:
        rep.instances_run += 1
        loc = local_complex(delta, face)
        got_comps = hochster_huneke_graph(loc).component_count
        table = table_at_face_graded(delta, face, fld)
        same = table == table_at_face_link(delta, face, fld)
        actual = (got_comps, table.highest, table.d, same)
        rep.record(f"bad_b at {label} over {fld}", actual == (comps, comps, dim, True), (comps, comps, dim, True), actual)
    return rep


def check_golden_nonstandard(fld: FieldSpec = QQ) -> CheckReport:
    rep = CheckReport("golden_nonstandard_pair")
    rep.instances_run += 2
    t = lyubeznik_table_monomial(nonstandard_ideal(), fld)
    want = {(7, 7): 2, (5, 6): 1}
    rep.record(f"I' over {fld}", t.d == 7 and t.nonzero() == want, want, t.nonzero())
    base = lyubeznik_table_monomial(seq_cm_ideal(), fld)
    rep.record(f"I over {fld}", is_trivial_table(base) and base.d == 1, "trivial, d=1", base)
    rep.merge(check_polarization_theorem(seq_cm_ideal(), fld))
    return rep


def check_char_dependence() -> CheckReport:
    rep = CheckReport("char_dependence")
    rep.instances_run += 1
    t0 = lyubeznik_table(rp2(), FieldSpec(0))
    t2 = lyubeznik_table(rp2(), FieldSpec(2))
    ok = is_trivial_table(t0) and not is_trivial_table(t2) and t0.highest == t2.highest == 1
    rep.record("RP2 over QQ and GF(2)", ok, "trivial vs nontrivial, top 1", (t0, t2))
    return rep


# -- orchestration ------------------------------------------------------------

COMPLEX_CHECKS = (
    check_localization_consistency,
    check_highest_vs_graph,
    check_bound,
    check_gral_inequalities,
    partial(check_gral_inequalities, shift="height"),
    check_cone_trick,
    check_structural,
)
IDEAL_CHECKS = (check_polarization_theorem, check_gral_inequalities)


def _collect(reports: dict, rep: CheckReport, fld: FieldSpec | None):
    key = rep.check_name if fld is None else f"{rep.check_name}[{fld}]"
    if key not in reports:
        reports[key] = CheckReport(key)
    reports[key].merge(rep)


def run_suite(config: CorpusConfig, progress=None) -> list[CheckReport]:
    complexes, ideals = generate_corpus(config)
    reports: dict[str, CheckReport] = {}
    for fld in config.fields:
        for delta in complexes:
            for check in COMPLEX_CHECKS:
                _collect(reports, check(delta, fld), fld)
            if progress:
                progress(delta)
        for I in ideals:
            for check in IDEAL_CHECKS:
                _collect(reports, check(I, fld), fld)
    for I in ideals:
        _collect(reports, check_polarization_hh_graph(I), None)
    if config.goldens:
        for fld in config.fields:
            _collect(reports, check_golden_bad_b(fld), fld)
            _collect(reports, check_golden_nonstandard(fld), fld)
        _collect(reports, check_char_dependence(), None)
    return list(reports.values())


def all_passed(reports: Iterable[CheckReport]) -> bool:
    return all(r.passed for r in reports)
