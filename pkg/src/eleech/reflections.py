"""Complex reflections, adjacency/braiding and bounded radical closure.

A root is a primitive lattice vector of norm -3; the w-reflection
    phi_r^mu(v) = v - r (1 - mu) <r, v> / |r|^2
fixes the orthogonal complement of r and multiplies r by mu.  Roots that
differ by a unit give the same reflections, so root sets are kept in a
canonical unit representative: the least coordinate-key sequence over the
six unit multiples (keys order Z[w] by norm, then a, then b).
"""

from __future__ import annotations

from fractions import Fraction

from .rings import Eis, OMEGA, OMEGA2, THETA, UNITS
from .linalg import AutMatrix, LorentzForm, vec_add, vec_scale

MINUS3 = Eis(-3, 0)


def is_norm_root(v, form) -> bool:
    return form.ip(v, v) == MINUS3


def canonical_root(v):
    """The least unit multiple of v under the coordinate key order."""
    best = None
    for u in UNITS:
        cand = tuple(u * x for x in v)
        key = tuple(x.key() for x in cand)
        if best is None or key < best[0]:
            best = (key, cand)
    return best[1]


def reflect(r, mu, v, form):
    """phi_r^mu(v) = v - r (1-mu) <r,v> / |r|^2 with |r|^2 = -3, exactly.

    mu must be a non-1 unit; lattice automorphy needs mu in {w, conj(w)}.
    """
    if form.ip(r, r) != MINUS3:
        raise ValueError("reflection requires a norm -3 root")
    q = form.ip(r, v)
    s = ((Eis(1, 0) - mu) * q).exact_div(Eis(3, 0))
    return vec_add(v, vec_scale(s, r))


def reflection_matrix(r, mu, form) -> AutMatrix:
    """The coordinate matrix of phi_r^mu as an exact AutMatrix."""
    n = len(r)
    frow = _form_row(r, form)
    # phi(v) = v - r (1-mu) <r,v> / (-3) = v + r (1-mu) <r,v> / 3
    scale = (Eis(1, 0) - mu) * Eis(Fraction(1, 3), Fraction(0))
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            x = r[i] * scale * frow[j]
            if i == j:
                x = x + Eis(1, 0)
            row.append(x)
        rows.append(tuple(row))
    return aut_from_rational(rows)


def _form_row(r, form: LorentzForm):
    """The row functional j -> <r, e_j> over Q(w)."""
    out = []
    for j in range(12):
        x = r[j].conj()
        if form.leech_scaled:
            x = Eis(Fraction(x.a, 3), Fraction(x.b, 3))
        out.append(-x)
    out.append(THETA * r[13].conj())       # <r, e_13>
    out.append(-THETA * r[12].conj())      # <r, e_14>
    return tuple(out)


def aut_from_rational(rows) -> AutMatrix:
    """Clear theta denominators of a rational coordinate matrix."""
    cur = tuple(tuple(x for x in row) for row in rows)
    k = 0
    while not all(_integral(x) for row in cur for x in row):
        cur = tuple(tuple(THETA * x for x in row) for row in cur)
        k += 1
        if k > 6:
            raise ValueError("matrix is not theta-integral; not a lattice map")
    mat = tuple(tuple(Eis(int(x.a), int(x.b)) for x in row) for row in cur)
    return AutMatrix(mat, k)


def _integral(x: Eis) -> bool:
    a, b = x.a, x.b
    if isinstance(a, Fraction) and a.denominator != 1:
        return False
    if isinstance(b, Fraction) and b.denominator != 1:
        return False
    return True


def adjacent(a, b, form) -> bool:
    """|<a,b>| = sqrt 3, i.e. norm(<a,b>) = 3; equivalent to braiding."""
    return form.ip(a, b).norm() == 3


def braid_check(a, b, form) -> bool:
    """phi_a phi_b phi_a == phi_b phi_a phi_b as exact matrices."""
    ma = reflection_matrix(a, OMEGA, form)
    mb = reflection_matrix(b, OMEGA, form)
    return ma @ mb @ ma == mb @ ma @ mb


def commute_check(a, b, form) -> bool:
    ma = reflection_matrix(a, OMEGA, form)
    mb = reflection_matrix(b, OMEGA, form)
    return ma @ mb == mb @ ma


def radical_closure(phi, budget: int, form, sources: str = "initial"):
    """Bounded saturation of a root set under reflections.

    Starting from the canonicalized set phi, each round adds
    canon(phi_a^{+-}(b)) for a in the reflecting pool and b in the newest
    roots; ``sources`` picks the pool: "initial" restricts reflections to
    the original roots (budget rounds then give exactly the length-budget
    words Phi_(n)), "current" reflects the running set in itself (faster
    growth, same limit).

    Returns (roots, truncated): truncated is True when the last round
    still added roots, i.e. the budget may have cut the closure short.
    """
    current = {canonical_root(tuple(v)) for v in phi}
    initial = frozenset(current)
    frontier = set(current)
    for _ in range(budget):
        if not frontier:
            return frozenset(current), False
        new = set()
        if sources == "initial":
            pairs = ((a, b) for a in initial for b in frontier)
        else:
            pairs = _current_pairs(current, frontier)
        for a, b in pairs:
            for mu in (OMEGA, OMEGA2):
                c = canonical_root(reflect(a, mu, b, form))
                if c not in current and c not in new:
                    new.add(c)
        current |= new
        frontier = new
    return frozenset(current), bool(frontier)


def _current_pairs(current, frontier):
    for a in current:
        for b in frontier:
            yield a, b
    older = current - frontier
    for a in frontier:
        for b in older:
            yield a, b
