"""Buchberger engine over exact domains, plus the monomial-ideal toolkit.

The engine uses the Gebauer-Moeller pair criteria with sugar selection and
produces reduced, deterministically ordered Groebner bases.  Monomial ideals
get saturation, Hilbert-series numerators, and (dimension, degree) via the
standard pivot recursion.  Toric ideals are built from an integer kernel
basis followed by iterated variable saturation.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .polycore import (
    GREVLEX,
    Exponent,
    Polynomial,
    TermOrder,
    elimination_order,
    grevlex_cheapest,
    mono_degree,
    mono_div,
    mono_divides,
    mono_gcd,
    mono_lcm,
    mono_mul,
    weighted_order,
)


class BudgetError(RuntimeError):
    """A Groebner computation exceeded its pair/step budget."""


class DomainError(TypeError):
    """Operation requires an exact coefficient domain."""


DEFAULT_MAX_PAIRS = 200_000


# ---------------------------------------------------------------------------
# ideals and bases
# ---------------------------------------------------------------------------

@dataclass
class Ideal:
    generators: list[Polynomial]
    nvars: int
    domain: object

    def __post_init__(self):
        self.generators = [g for g in self.generators if not g.is_zero()]
        for g in self.generators:
            if g.nvars != self.nvars:
                raise ValueError("generator in wrong ring")
            if g.domain != self.domain:
                raise ValueError("generator in wrong domain")

    @classmethod
    def of(cls, gens: list[Polynomial]) -> "Ideal":
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            raise ValueError("cannot infer ring from an empty generator list")
        return cls(gens, gens[0].nvars, gens[0].domain)


@dataclass
class GroebnerBasis:
    elements: list[Polynomial]
    order: TermOrder
    reduced: bool = True

    @property
    def nvars(self) -> int:
        return self.elements[0].nvars if self.elements else 0

    def leading_monomials(self) -> list[Exponent]:
        return [g.leading_monomial(self.order) for g in self.elements]


def _require_exact(domain):
    if not domain.exact:
        raise DomainError("Groebner computations require PrimeField or Rational")


# ---------------------------------------------------------------------------
# division / normal form
# ---------------------------------------------------------------------------

def _reduce_full(terms: dict, reducers, dom, keyf) -> dict:
    """Fully reduce ``terms`` modulo reducers = [(lm, lc_inv, items), ...]."""
    work = dict(terms)
    out: dict[Exponent, object] = {}
    heap = [(tuple(-k for k in keyf(m)), m) for m in work]
    heapq.heapify(heap)
    while heap:
        _, m = heapq.heappop(heap)
        c = work.get(m)
        if c is None or dom.is_zero(c):
            work.pop(m, None)
            continue
        hit = None
        for lm, lci, items in reducers:
            if mono_divides(lm, m):
                hit = (lm, lci, items)
                break
        if hit is None:
            out[m] = c
            del work[m]
            continue
        lm, lci, items = hit
        q = mono_div(m, lm)
        factor = dom.mul(c, lci)
        for mg, cg in items:
            nm = mono_mul(q, mg)
            prev = work.get(nm)
            if prev is None:
                nv = dom.neg(dom.mul(factor, cg))
                if not dom.is_zero(nv):
                    work[nm] = nv
                    heapq.heappush(heap, (tuple(-k for k in keyf(nm)), nm))
            else:
                nv = dom.sub(prev, dom.mul(factor, cg))
                if dom.is_zero(nv):
                    del work[nm]
                else:
                    work[nm] = nv
    return out


def _make_reducer(terms: dict, order_keyf, dom):
    lm = max(terms, key=order_keyf)
    lci = dom.inv(terms[lm])
    return (lm, lci, list(terms.items()))


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Remainder of f on division by G; no term divisible by any lm(G)."""
    _require_exact(f.domain)
    if G.elements and G.elements[0].nvars != f.nvars:
        raise ValueError("polynomial and basis in different rings")
    keyf = G.order.key_fn(f.nvars)
    dom = f.domain
    reducers = [_make_reducer(g.terms, keyf, dom) for g in G.elements]
    out = _reduce_full(f.terms, reducers, dom, keyf)
    return Polynomial(out, f.nvars, dom, _clean=True)


# ---------------------------------------------------------------------------
# Buchberger with Gebauer-Moeller criteria and sugar selection
# ---------------------------------------------------------------------------

def buchberger(I: Ideal, order: TermOrder = GREVLEX,
               max_pairs: int = DEFAULT_MAX_PAIRS) -> GroebnerBasis:
    """Reduced Groebner basis of I; deterministic for fixed input."""
    _require_exact(I.domain)
    dom = I.domain
    n = I.nvars
    keyf = order.key_fn(n)

    basis: list[dict] = []      # term dicts, monic
    lms: list[Exponent] = []
    sugars: list[int] = []
    pairs: list[tuple] = []     # heap of (sugar, lcm_key, i, j)
    alive_pairs: dict[tuple[int, int], Exponent] = {}

    def reducers_all():
        return [(lms[i], dom.one, list(basis[i].items())) for i in range(len(basis))]

    def add_poly(terms: dict, sugar: int):
        """Monic-ize, append, and update the pair set (Gebauer-Moeller)."""
        lm = max(terms, key=keyf)
        lc = terms[lm]
        if lc != dom.one:
            lci = dom.inv(lc)
            terms = {m: dom.mul(c, lci) for m, c in terms.items()}
        t = len(basis)
        # new candidate pairs
        cands = []
        for i in range(t):
            L = mono_lcm(lms[i], lm)
            cands.append((i, L))
        # criterion M/F: drop (i, t) if some other new pair's lcm divides its
        # lcm; among equal lcms keep the first.
        keep: list[tuple[int, Exponent]] = []
        for i, L in cands:
            dominated = False
            for j, L2 in cands:
                if j == i:
                    continue
                if L2 == L:
                    if j < i:
                        dominated = True
                        break
                elif mono_divides(L2, L):
                    dominated = True
                    break
            if not dominated:
                keep.append((i, L))
        # criterion B (chain): prune old pairs whose lcm is a proper multiple
        for (i, j), L in list(alive_pairs.items()):
            if (mono_divides(lm, L)
                    and mono_lcm(lms[i], lm) != L
                    and mono_lcm(lms[j], lm) != L):
                del alive_pairs[(i, j)]
        # product criterion: coprime leading monomials need no reduction
        for i, L in keep:
            if L == mono_mul(lms[i], lm):
                continue
            s = max(sugars[i] + mono_degree(mono_div(L, lms[i])),
                    sugar + mono_degree(mono_div(L, lm)))
            alive_pairs[(i, t)] = L
            heapq.heappush(pairs, (s, keyf(L), i, t))
        basis.append(terms)
        lms.append(lm)
        sugars.append(sugar)

    # seed with the input generators, interreducing as we go
    for g in sorted(I.generators, key=lambda p: keyf(p.leading_monomial(order))):
        red = _reduce_full(g.terms, reducers_all(), dom, keyf)
        if red:
            add_poly(red, max(mono_degree(m) for m in red))

    steps = 0
    while pairs:
        s, _, i, j = heapq.heappop(pairs)
        if alive_pairs.pop((i, j), None) is None:
            continue
        steps += 1
        if steps > max_pairs:
            raise BudgetError(f"pair budget {max_pairs} exceeded")
        L = mono_lcm(lms[i], lms[j])
        qi, qj = mono_div(L, lms[i]), mono_div(L, lms[j])
        spoly: dict[Exponent, object] = {}
        for m, c in basis[i].items():
            spoly[mono_mul(qi, m)] = c
        for m, c in basis[j].items():
            nm = mono_mul(qj, m)
            prev = spoly.get(nm)
            nv = dom.neg(c) if prev is None else dom.sub(prev, c)
            if dom.is_zero(nv):
                spoly.pop(nm, None)
            else:
                spoly[nm] = nv
        red = _reduce_full(spoly, reducers_all(), dom, keyf)
        if red:
            add_poly(red, s)

    return _reduce_basis(basis, lms, n, dom, order, keyf)


def _reduce_basis(basis, lms, n, dom, order, keyf) -> GroebnerBasis:
    # minimalize: drop elements whose lm is divisible by another lm
    idx = sorted(range(len(basis)), key=lambda i: keyf(lms[i]))
    minimal: list[int] = []
    for i in idx:
        if not any(mono_divides(lms[j], lms[i]) for j in minimal):
            minimal.append(i)
    # tail-reduce each survivor against the others
    out = []
    for i in minimal:
        reducers = [(lms[j], dom.one, list(basis[j].items()))
                    for j in minimal if j != i]
        red = _reduce_full(basis[i], reducers, dom, keyf)
        lm = max(red, key=keyf)
        lci = dom.inv(red[lm])
        red = {m: dom.mul(c, lci) for m, c in red.items()}
        out.append(Polynomial(red, n, dom, _clean=True))
    out.sort(key=lambda p: keyf(p.leading_monomial(order)))
    return GroebnerBasis(out, order, reduced=True)


def s_polynomial(f: Polynomial, g: Polynomial, order: TermOrder) -> Polynomial:
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    L = mono_lcm(lf, lg)
    dom = f.domain
    mf = Polynomial.monomial(mono_div(L, lf), f.nvars, dom,
                             dom.inv(f.terms[lf]))
    mg = Polynomial.monomial(mono_div(L, lg), g.nvars, dom,
                             dom.inv(g.terms[lg]))
    return mf * f - mg * g


# ---------------------------------------------------------------------------
# monomial ideals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonomialIdeal:
    """Minimal monomial generators (no generator divides another)."""

    gens: tuple[Exponent, ...]
    nvars: int

    @classmethod
    def of(cls, monomials, nvars: int) -> "MonomialIdeal":
        return cls(tuple(_minimalize(list(monomials))), nvars)

    def is_unit(self) -> bool:
        return any(sum(m) == 0 for m in self.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def contains_monomial(self, m: Exponent) -> bool:
        return any(mono_divides(g, m) for g in self.gens)


def _minimalize(monos: list[Exponent]) -> list[Exponent]:
    monos = sorted(set(monos), key=lambda m: (sum(m), m))
    out: list[Exponent] = []
    for m in monos:
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return out


def initial_ideal(I: Ideal, u, max_pairs: int = DEFAULT_MAX_PAIRS) -> MonomialIdeal:
    """in_{-u}(I): leading monomials under weighted(-u) with grevlex tiebreak."""
    order = weighted_order([-w for w in u])
    gb = buchberger(I, order, max_pairs)
    return MonomialIdeal.of(gb.leading_monomials(), I.nvars)


def leading_ideal(gb: GroebnerBasis, nvars: int) -> MonomialIdeal:
    return MonomialIdeal.of(gb.leading_monomials(), nvars)


def saturate_variable(M: MonomialIdeal, j: int) -> MonomialIdeal:
    """M : <x_j>^infinity -- strip all x_j powers from each generator."""
    stripped = []
    for m in M.gens:
        e = list(m)
        e[j] = 0
        stripped.append(tuple(e))
    return MonomialIdeal.of(stripped, M.nvars)


# -- Hilbert series ---------------------------------------------------------

@dataclass(frozen=True)
class HilbertData:
    numerator: tuple[int, ...]      # coefficients of the power of t
    projective_dimension: int       # -1 for the empty scheme
    degree: int


def _poly1_add(a, b):
    n = max(len(a), len(b))
    return [ (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
             for i in range(n) ]


def _poly1_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _hilbert_numerator(gens: tuple[Exponent, ...], memo: dict) -> list[int]:
    """Numerator of the Hilbert series of R/<gens> over (1-t)^nvars."""
    if not gens:
        return [1]
    if any(sum(m) == 0 for m in gens):
        return [0]
    key = gens
    got = memo.get(key)
    if got is not None:
        return got
    # base case: pairwise disjoint supports form a regular sequence
    supports = [tuple(i for i, e in enumerate(m) if e) for m in gens]
    flat = [i for s in supports for i in s]
    if len(flat) == len(set(flat)):
        out = [1]
        for m in gens:
            f = [0] * (sum(m) + 1)
            f[0], f[-1] = 1, -1
            out = _poly1_mul(out, f)
        memo[key] = out
        return out
    # pivot on the variable hitting the most generators
    nvars = len(gens[0])
    counts = [0] * nvars
    for s in supports:
        if len(s) > 1:
            for i in s:
                counts[i] += 1
    j = max(range(nvars), key=lambda i: counts[i])
    colon = []
    plus = []
    for m in gens:
        if m[j]:
            e = list(m)
            e[j] -= 1
            colon.append(tuple(e))
        else:
            plus.append(m)
            colon.append(m)
    pivot = tuple(1 if i == j else 0 for i in range(nvars))
    plus.append(pivot)
    h_plus = _hilbert_numerator(tuple(_minimalize(plus)), memo)
    h_colon = _hilbert_numerator(tuple(_minimalize(colon)), memo)
    out = _poly1_add(h_plus, [0] + h_colon)
    memo[key] = out
    return out


def hilbert_dim_degree(M: MonomialIdeal, nvars: int | None = None) -> HilbertData:
    """Projective (dimension, degree) of R/M via the Hilbert numerator.

    The unit ideal reports dimension -1 and degree 0.
    """
    if nvars is None:
        nvars = M.nvars
    num = _hilbert_numerator(M.gens, {})
    while num and num[-1] == 0:
        num.pop()
    if not num:
        return HilbertData((0,), -1, 0)
    q = list(num)
    c = 0
    while sum(q) == 0:
        # divide by (1 - t)
        out = [0] * (len(q) - 1)
        acc = 0
        for i in range(len(q) - 1):
            acc += q[i]
            out[i] = acc
        q = out
        c += 1
    return HilbertData(tuple(num), nvars - 1 - c, sum(q))


def dim_degree(I: Ideal, order: TermOrder = GREVLEX,
               max_pairs: int = DEFAULT_MAX_PAIRS) -> tuple[int, int]:
    """(projective dimension, degree) of V(I) via a grevlex initial ideal."""
    gb = buchberger(I, order, max_pairs)
    M = leading_ideal(gb, I.nvars)
    h = hilbert_dim_degree(M, I.nvars)
    return h.projective_dimension, h.degree


# ---------------------------------------------------------------------------
# elimination and saturation
# ---------------------------------------------------------------------------

def eliminate(I: Ideal, drop_vars, max_pairs: int = DEFAULT_MAX_PAIRS) -> Ideal:
    """Generators of I intersected with the subring without ``drop_vars``.

    The result lives in the smaller ring of the kept variables, in their
    original relative order.
    """
    drop = sorted(set(drop_vars))
    keep = [i for i in range(I.nvars) if i not in set(drop)]
    if not drop:
        gb = buchberger(I, GREVLEX, max_pairs)
        return Ideal(gb.elements, I.nvars, I.domain)
    order = elimination_order(drop, I.nvars)
    gb = buchberger(I, order, max_pairs)
    kept = [g for g in gb.elements
            if all(all(m[i] == 0 for i in drop) for m in g.terms)]
    gens = [g.restrict_ring(keep) for g in kept]
    return Ideal(gens, len(keep), I.domain)


def saturate_by_polynomial(I: Ideal, f: Polynomial,
                           max_pairs: int = DEFAULT_MAX_PAIRS) -> Ideal:
    """I : f^infinity via the extra-variable trick (t*f - 1, eliminate t)."""
    n = I.nvars
    ext = list(range(1, n + 1))  # old var i -> i+1; t is variable 0
    gens = [g.extend_ring(n + 1, ext) for g in I.generators]
    t = Polynomial.variable(0, n + 1, I.domain)
    gens.append(t * f.extend_ring(n + 1, ext) - 1)
    J = Ideal(gens, n + 1, I.domain)
    return eliminate(J, [0], max_pairs)


# ---------------------------------------------------------------------------
# toric ideals
# ---------------------------------------------------------------------------

def integer_kernel(A: list[list[int]]) -> list[list[int]]:
    """Basis of the integer kernel {v : A v = 0} via column reduction."""
    if not A:
        return []
    r, m = len(A), len(A[0])
    # columns of [A; I], reduced by unimodular column operations
    cols = [[A[i][j] for i in range(r)] + [1 if k == j else 0 for k in range(m)]
            for j in range(m)]
    row = 0
    fixed = 0
    while row < r and fixed < m:
        # euclidean elimination in this row across free columns
        while True:
            nz = [j for j in range(fixed, m) if cols[j][row] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda j: abs(cols[j][row]))
            cols[fixed], cols[piv] = cols[piv], cols[fixed]
            done = True
            for j in range(fixed + 1, m):
                if cols[j][row] != 0:
                    q = cols[j][row] // cols[fixed][row]
                    cols[j] = [x - q * y for x, y in zip(cols[j], cols[fixed])]
                    if cols[j][row] != 0:
                        done = False
            if done:
                fixed += 1
                break
        row += 1
    kernel = [c[r:] for c in cols[fixed:]]
    return kernel


def _binomial_from_vector(v: list[int], nvars: int, domain) -> Polynomial:
    plus = tuple(max(x, 0) for x in v)
    minus = tuple(max(-x, 0) for x in v)
    return Polynomial({plus: domain.one, minus: domain.neg(domain.one)},
                      nvars, domain, _clean=True) if plus != minus else \
        Polynomial.zero(nvars, domain)


def _strip_monomial_content(p: Polynomial) -> Polynomial:
    g = None
    for m in p.terms:
        g = m if g is None else mono_gcd(g, m)
    if g is None or sum(g) == 0:
        return p
    return Polynomial({mono_div(m, g): c for m, c in p.terms.items()},
                      p.nvars, p.domain, _clean=True)


def toric_ideal(A: list[list[int]], domain=None,
                max_pairs: int = DEFAULT_MAX_PAIRS) -> Ideal:
    """Prime toric ideal of the monomial parametrization with exponent matrix A.

    Columns of A are the exponent vectors; the row space of A must contain
    the all-ones vector (projective/homogeneous configuration).  Computed as
    the lattice-basis binomial ideal saturated with respect to every
    variable in turn (grevlex with the saturating variable cheapest).
    """
    from .polycore import RATIONAL

    if domain is None:
        domain = RATIONAL
    nvars = len(A[0])
    ker = integer_kernel(A)
    for v in ker:
        if sum(v) != 0:
            raise ValueError("configuration is not homogeneous "
                             "(all-ones vector not in the row space)")
    gens = [b for v in ker if (b := _binomial_from_vector(v, nvars, domain))]
    if not gens:
        return Ideal([], nvars, domain)
    I = Ideal(gens, nvars, domain)
    for j in range(nvars):
        order = grevlex_cheapest(j, nvars)
        gb = buchberger(I, order, max_pairs)
        I = Ideal([_strip_monomial_content(g) for g in gb.elements],
                  nvars, domain)
    gb = buchberger(I, GREVLEX, max_pairs)
    return Ideal(gb.elements, nvars, domain)
