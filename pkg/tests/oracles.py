"""Slow, independent reference implementations used only by the tests.

Nothing here imports the engine's linear algebra: ranks are computed by
plain Gaussian elimination over Fraction (or integers mod p), and complexes
are built straight from their definitions by enumerating subsets.
"""

from fractions import Fraction
from itertools import combinations


def rank_exact(rows, p=0):
    """Rank of a list-of-lists matrix over QQ (p == 0) or GF(p)."""
    if p:
        m = [[int(x) % p for x in r] for r in rows]
    else:
        m = [[Fraction(x) for x in r] for r in rows]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p) if p else 1 / m[r][c]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [(a - f * b) % p if p else a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == nrows:
            break
    return r


def all_faces(n, facets):
    """Every subset of some facet (facets given as vertex tuples)."""
    out = set()
    for f in facets:
        for k in range(len(f) + 1):
            out.update(frozenset(c) for c in combinations(sorted(f), k))
    return out


def reduced_cohomology(faces, p=0):
    """dim reduced H^k for k = -1..max dim, from the face set alone."""
    faces = [f for f in faces]
    if not faces:
        return {}
    top = max(len(f) for f in faces)
    layers = {k: sorted((tuple(sorted(f)) for f in faces if len(f) == k)) for k in range(top + 1)}
    ranks = {}
    for k in range(top):
        lo, hi = layers[k], layers[k + 1]
        index = {f: i for i, f in enumerate(lo)}
        mat = []
        for g in hi:
            row = [0] * len(lo)
            for pos, v in enumerate(g):
                row[index[g[:pos] + g[pos + 1:]]] = (-1) ** pos
            mat.append(row)
        ranks[k] = rank_exact(mat, p) if mat and lo else 0
    return {
        k - 1: len(layers[k]) - ranks.get(k, 0) - ranks.get(k - 1, 0)
        for k in range(top + 1)
    }


def complex_of_ideal(n, generators):
    """Faces sigma of [n] with x^sigma outside the ideal (brute force)."""
    faces = set()
    for k in range(n + 1):
        for sigma in combinations(range(n), k):
            s = set(sigma)
            if not any(all((e == 0) or (i in s and e <= 1) for i, e in enumerate(g)) for g in generators):
                faces.add(frozenset(sigma))
    return faces


def link_faces(faces, F):
    F = frozenset(F)
    return {g for g in faces if not (g & F) and (g | F) in faces}


def restrict(faces, W):
    W = frozenset(W)
    return {g for g in faces if g <= W}


def hochster_betti(n, faces, p=0):
    """beta_{i,W}(K[Delta]) = dim reduced H^{#W-i-1}(Delta|W), keyed (i, W)."""
    out = {}
    for k in range(n + 1):
        for W in combinations(range(n), k):
            H = reduced_cohomology(restrict(faces, W), p)
            for deg, v in H.items():
                i = k - deg - 1
                if v and 0 <= i <= n:
                    out[(i, frozenset(W))] = v
    return out


def hochster_local_cohomology(n, faces, p=0):
    """dim H^i_m(K[Delta])_{-F} = dim reduced H^{i-#F-1}(lk F), keyed (i, F)."""
    out = {}
    for F in faces:
        H = reduced_cohomology(link_faces(faces, F), p)
        for deg, v in H.items():
            i = deg + len(F) + 1
            if v:
                out[(i, F)] = v
    return out


def mask(vs):
    m = 0
    for v in vs:
        m |= 1 << v
    return m
