"""
Exact type-A Weyl group combinatorics and sparse Laurent polynomial arithmetic.

Everything here is pinned to GL_n: the weight lattice is Z^n, the Weyl group is
the symmetric group S_n acting by coordinate permutation, the roots are the
pairs e_i - e_j (i != j), and the positive ones have i < j. Permutations are
stored in one-line notation as 0-based tuples `p` with `p[i] = w(i)`; weights
are plain integer tuples. All scalars are `fractions.Fraction`; no floats
anywhere in the package.

>>> W = symmetric_group(3)
>>> [w.length for w in W.elements]
[0, 1, 1, 2, 2, 3]
>>> W.longest.word
(0, 1, 0)
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import DivisibilityError, InputError

__all__ = [
    "Weight",
    "WeylElement",
    "WeylGroup",
    "CentralizerWeyl",
    "LaurentPoly",
    "SemisimplePoint",
    "symmetric_group",
    "act_on_weight",
    "bruhat_leq",
    "total_order_key",
    "centralizer_data",
    "lpoly_arith",
    "elementary_symmetric",
    "orbit_sum",
    "evaluate_at_point",
    "symmetric_generators",
    "staircase_reduce",
    "staircase_exponents",
    "all_roots",
    "positive_roots",
]

MAX_RANK = 8  # enumeration bound for S_n

# a weight of GL_n, i.e. an element of Z^n
Weight = tuple[int, ...]

# a root e_i - e_j encoded as the ordered pair (i, j), 0-based
Root = tuple[int, int]


# ---------------------------------------------------------------------------
# Weyl group
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeylElement:
    """A permutation with its inversion count and one fixed reduced word."""

    perm: tuple[int, ...]
    length: int
    word: tuple[int, ...]  # indices i of adjacent transpositions s_i = (i, i+1)

    def __repr__(self):
        return f"WeylElement({self.perm})"


class WeylGroup:
    """All of S_n with lengths and reduced words precomputed.

    `elements` is sorted by one-line notation, lexicographically. Reduced words
    are produced by a breadth-first walk of the right Cayley graph, so they are
    deterministic; `w.word` multiplies out left-to-right to `w.perm`.
    """

    def __init__(self, n: int):
        if not 1 <= n <= MAX_RANK:
            raise InputError(f"rank must be between 1 and {MAX_RANK}, got {n}")
        self.n = n
        identity = tuple(range(n))
        found: dict[tuple[int, ...], tuple[int, tuple[int, ...]]] = {
            identity: (0, ())
        }
        queue = deque([identity])
        while queue:
            p = queue.popleft()
            length, word = found[p]
            for i in range(n - 1):
                if p[i] < p[i + 1]:  # right multiplication by s_i goes up
                    q = p[:i] + (p[i + 1], p[i]) + p[i + 2:]
                    if q not in found:
                        found[q] = (length + 1, word + (i,))
                        queue.append(q)
        self.elements: tuple[WeylElement, ...] = tuple(
            WeylElement(p, length, word)
            for p, (length, word) in sorted(found.items())
        )
        self._by_perm = {w.perm: w for w in self.elements}
        self.identity = self._by_perm[identity]
        self.longest = self._by_perm[tuple(reversed(range(n)))]
        self.simple: tuple[WeylElement, ...] = tuple(
            self._by_perm[identity[:i] + (i + 1, i) + identity[i + 2:]]
            for i in range(n - 1)
        )

    def __len__(self):
        return len(self.elements)

    def element(self, perm: Sequence[int]) -> WeylElement:
        p = tuple(perm)
        if p not in self._by_perm:
            raise InputError(f"{p} is not a permutation of 0..{self.n - 1}")
        return self._by_perm[p]

    def mul(self, u: WeylElement, v: WeylElement) -> WeylElement:
        """Product u*v with (u*v)(i) = u(v(i))."""
        return self._by_perm[tuple(u.perm[v.perm[i]] for i in range(self.n))]

    def inv(self, w: WeylElement) -> WeylElement:
        p = [0] * self.n
        for i, wi in enumerate(w.perm):
            p[wi] = i
        return self._by_perm[tuple(p)]


@lru_cache(maxsize=None)
def symmetric_group(n: int) -> WeylGroup:
    """The Weyl group of GL_n, built once per rank."""
    return WeylGroup(n)


def act_on_weight(w: WeylElement, x: Weight) -> Weight:
    """Permute coordinates: (w.x)_i = x_{w^{-1}(i)}.

    >>> W = symmetric_group(3)
    >>> act_on_weight(W.longest, (2, 1, 0))
    (0, 1, 2)
    """
    if len(x) != len(w.perm):
        raise InputError(f"weight of rank {len(x)} under S_{len(w.perm)} element")
    out = [0] * len(x)
    for i, xi in enumerate(x):
        out[w.perm[i]] = xi
    return tuple(out)


def total_order_key(w: WeylElement) -> tuple[int, tuple[int, ...]]:
    """Deterministic total order refining the Bruhat order: length, then lex."""
    return (w.length, w.perm)


@lru_cache(maxsize=None)
def _bruhat_downset(n: int, perm: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    # Subword property: u <= w iff some subword of a fixed reduced word of w is
    # a reduced word for u. Collect all subword products that stay reduced.
    group = symmetric_group(n)
    w = group.element(perm)
    reachable = {group.identity}
    for i in w.word:  # left to right: a subword ending here extends a prefix product
        s = group.simple[i]
        extra = set()
        for v in reachable:
            vs = group.mul(v, s)
            if vs.length > v.length:
                extra.add(vs)
        reachable |= extra
    return frozenset(v.perm for v in reachable)


def bruhat_leq(u: WeylElement, w: WeylElement) -> bool:
    """Bruhat order on S_n via the subword criterion.

    >>> W = symmetric_group(3)
    >>> s1, s2 = W.simple
    >>> bruhat_leq(s1, W.mul(s1, s2)), bruhat_leq(s1, s2)
    (True, False)
    """
    if len(u.perm) != len(w.perm):
        raise InputError("elements of different symmetric groups")
    return u.perm in _bruhat_downset(len(w.perm), w.perm)


# ---------------------------------------------------------------------------
# Roots and centralizers
# ---------------------------------------------------------------------------

def all_roots(n: int) -> tuple[Root, ...]:
    """Every pair (i, j), i != j, lexicographically."""
    return tuple((i, j) for i in range(n) for j in range(n) if i != j)


def positive_roots(n: int) -> tuple[Root, ...]:
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


@dataclass(frozen=True)
class CentralizerWeyl:
    """The Young subgroup W(s) of S_n, with its own positive system.

    `levels[i]` labels the block of position i (positions share a block iff
    the torus coordinates coincide). Lengths of elements are counted against
    `positive_roots` = Phi_s^+, not against the ambient positive system: the
    blocks need not be contiguous, so the two counts can differ.
    """

    n: int
    levels: tuple[int, ...]
    elements: tuple[tuple[int, ...], ...]  # one-line perms, sorted lex
    positive_roots: tuple[Root, ...]

    def length(self, perm: Sequence[int]) -> int:
        return sum(1 for (i, j) in self.positive_roots if perm[i] > perm[j])

    def contains(self, perm: Sequence[int]) -> bool:
        return len(perm) == self.n and all(
            self.levels[perm[i]] == self.levels[i] for i in range(self.n)
        )

    def __len__(self):
        return len(self.elements)


def _level_labels(values: Sequence) -> tuple[int, ...]:
    labels: dict = {}
    out = []
    for v in values:
        if v not in labels:
            labels[v] = len(labels)
        out.append(labels[v])
    return tuple(out)


def centralizer_data(p: "SemisimplePoint") -> tuple[CentralizerWeyl, tuple[WeylElement, ...]]:
    """The Young subgroup W(s) and the minimal-length representatives of W(s)\\W.

    Representatives are characterized by w^{-1}(Phi_s^+) lying in the ambient
    positive system; one per coset, |reps| * |W(s)| = n!.

    >>> pt = SemisimplePoint.of((1, 1, 2), 4, 2)
    >>> ws, reps = centralizer_data(pt)
    >>> len(ws), sorted(r.length for r in reps)
    (2, [0, 1, 2])
    """
    n = len(p.s)
    group = symmetric_group(n)
    levels = _level_labels(p.s)
    members = tuple(
        w.perm for w in group.elements
        if all(levels[w.perm[i]] == levels[i] for i in range(n))
    )
    pos = tuple((i, j) for (i, j) in positive_roots(n) if levels[i] == levels[j])
    subgroup = CentralizerWeyl(n, levels, members, pos)

    # Right cosets W(s)w are the fibers of w -> (levels at w(0), ..., w(n-1)).
    best: dict[tuple[int, ...], WeylElement] = {}
    for w in group.elements:
        key = tuple(levels[w.perm[i]] for i in range(n))
        cur = best.get(key)
        if cur is None or total_order_key(w) < total_order_key(cur):
            best[key] = w
    reps = tuple(sorted(best.values(), key=total_order_key))

    assert len(reps) * len(subgroup) == len(group)
    for w in reps:
        winv = group.inv(w)
        assert all(winv.perm[i] < winv.perm[j] for (i, j) in pos)
    return subgroup, reps


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

def _coerce(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise InputError(f"not an exact rational: {c!r}")


class LaurentPoly:
    """Sparse Laurent polynomial over Q in a fixed number of variables.

    Terms map integer exponent tuples (entries may be negative) to nonzero
    Fractions; the canonical form never stores a zero coefficient. Instances
    are immutable by convention: no method mutates `terms` after construction.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        self.nvars = nvars
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for exps, coeff in terms.items():
                coeff = _coerce(coeff)
                if coeff == 0:
                    continue
                exps = tuple(exps)
                if len(exps) != nvars:
                    raise InputError(
                        f"exponent vector {exps} has arity {len(exps)}, expected {nvars}"
                    )
                clean[exps] = coeff
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "LaurentPoly":
        exps = tuple(exps)
        return cls(len(exps), {exps: _coerce(coeff)})

    @classmethod
    def constant(cls, nvars: int, coeff) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: _coerce(coeff)})

    # -- ring operations ----------------------------------------------------

    def _check(self, other: "LaurentPoly"):
        if self.nvars != other.nvars:
            raise InputError(f"arity mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, Fraction(0)) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly(self.nvars, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, Fraction(0)) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return LaurentPoly(self.nvars, out)

    def scale(self, c) -> "LaurentPoly":
        c = _coerce(c)
        if c == 0:
            return LaurentPoly.zero(self.nvars)
        return LaurentPoly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, LaurentPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items())

    def __repr__(self):
        if self.is_zero():
            return "LaurentPoly(0)"
        bits = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"x{i}^{k}" for i, k in enumerate(e) if k) or "1"
            bits.append(f"{c}*{mono}")
        return f"LaurentPoly({' + '.join(bits)})"

    # -- exact division ------------------------------------------------------

    def exact_div(self, g: "LaurentPoly") -> "LaurentPoly":
        """Return h with g*h == self, or raise DivisibilityError.

        Monomials are units here, so both operands are first shifted to honest
        polynomials; single-divisor reduction by lex-leading terms then either
        terminates at zero or exposes a nonzero remainder. The quotient is
        multiplied back as a final guard.
        """
        self._check(g)
        if g.is_zero():
            raise InputError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero(self.nvars)

        def shift_of(p: LaurentPoly) -> tuple[int, ...]:
            return tuple(
                min(e[k] for e in p.terms) for k in range(p.nvars)
            )

        sf, sg = shift_of(self), shift_of(g)
        f_terms = {tuple(a - b for a, b in zip(e, sf)): c for e, c in self.terms.items()}
        g_terms = {tuple(a - b for a, b in zip(e, sg)): c for e, c in g.terms.items()}
        g_lead = max(g_terms)
        g_lc = g_terms[g_lead]

        quot: dict[tuple[int, ...], Fraction] = {}
        rem = dict(f_terms)
        while rem:
            lead = max(rem)
            diff = tuple(a - b for a, b in zip(lead, g_lead))
            if any(d < 0 for d in diff):
                raise DivisibilityError(
                    "exact division failed", LaurentPoly(self.nvars, rem)
                )
            c = rem[lead] / g_lc
            quot[diff] = c
            for e, v in g_terms.items():
                key = tuple(a + b for a, b in zip(diff, e))
                nv = rem.get(key, Fraction(0)) - c * v
                if nv:
                    rem[key] = nv
                else:
                    rem.pop(key, None)
        net = tuple(a - b for a, b in zip(sf, sg))
        h = LaurentPoly(self.nvars, {
            tuple(a + b for a, b in zip(e, net)): c for e, c in quot.items()
        })
        if g * h != self:  # multiply-back guard; unreachable if the loop is right
            raise DivisibilityError("multiply-back check failed", (g * h) - self)
        return h

    # -- serialization -------------------------------------------------------

    def to_obj(self) -> list[dict]:
        return [
            {"exponents": list(e), "coeff": str(c)} for e, c in self.sorted_terms()
        ]

    @classmethod
    def from_obj(cls, nvars: int, obj: Iterable[dict]) -> "LaurentPoly":
        terms: dict[tuple[int, ...], Fraction] = {}
        for item in obj:
            e = tuple(int(k) for k in item["exponents"])
            terms[e] = terms.get(e, Fraction(0)) + Fraction(item["coeff"])
        return cls(nvars, terms)


def lpoly_arith(f: LaurentPoly, g: LaurentPoly, op: str) -> LaurentPoly:
    """Dispatch add/mul/exact_div by name (the CLI route into the arithmetic)."""
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "exact_div":
        return f.exact_div(g)
    raise InputError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# Semisimple points and symmetric polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SemisimplePoint:
    """A torus point s in (Q*)^n with a scalar q0 and an optional square root.

    q0 must avoid {0, 1, -1} so that it is not a root of unity over Q; the
    square root, when present, is the positive one and squares to q0 exactly.
    """

    s: tuple[Fraction, ...]
    q0: Fraction
    sqrt_q: Fraction | None = None

    def __post_init__(self):
        if not self.s:
            raise InputError("torus point must have positive rank")
        if any(si == 0 for si in self.s):
            raise InputError("torus coordinates must be nonzero")
        if self.q0 in (Fraction(0), Fraction(1), Fraction(-1)):
            raise InputError("q0 must avoid {0, 1, -1}")
        if self.sqrt_q is not None:
            if self.sqrt_q * self.sqrt_q != self.q0 or self.sqrt_q <= 0:
                raise InputError("sqrt_q must be the positive square root of q0")

    @classmethod
    def of(cls, s, q0, sqrt_q=None) -> "SemisimplePoint":
        return cls(
            tuple(_coerce(v) for v in s),
            _coerce(q0),
            None if sqrt_q is None else _coerce(sqrt_q),
        )

    @property
    def n(self) -> int:
        return len(self.s)


def elementary_symmetric(n: int, i: int) -> LaurentPoly:
    """The i-th elementary symmetric polynomial e_i(x_1..x_n)."""
    if not 1 <= i <= n:
        raise InputError(f"e_{i} undefined for rank {n}")
    terms = {}
    for subset in itertools.combinations(range(n), i):
        e = [0] * n
        for k in subset:
            e[k] = 1
        terms[tuple(e)] = Fraction(1)
    return LaurentPoly(n, terms)


def orbit_sum(weight: Weight) -> LaurentPoly:
    """Sum of theta over the W-orbit of the weight, each orbit element once.

    >>> orbit_sum((2, 0)) == LaurentPoly(2, {(2, 0): 1, (0, 2): 1})
    True
    """
    n = len(weight)
    orbit = {act_on_weight(w, weight) for w in symmetric_group(n).elements}
    return LaurentPoly(n, {mu: Fraction(1) for mu in orbit})


def evaluate_at_point(f: LaurentPoly, p: SemisimplePoint) -> Fraction:
    """Substitute s_i for x_i (and q0 for a trailing q slot if present)."""
    n = p.n
    if f.nvars == n:
        values = p.s
    elif f.nvars == n + 1:
        values = p.s + (p.q0,)
    else:
        raise InputError(f"polynomial in {f.nvars} variables at a rank-{n} point")
    total = Fraction(0)
    for e, c in f.terms.items():
        v = c
        for base, k in zip(values, e):
            v *= base ** k
        total += v
    return total


def symmetric_generators(n: int):
    """The classical generators of the invariant ring plus evaluation helpers.

    Returns (e_1..e_n, orbit_sum, evaluate_at_point); the latter two are the
    module-level functions, re-exported as a bundle for callers that want the
    whole toolkit at once.
    """
    if n < 1:
        raise InputError("rank must be at least 1")
    gens = tuple(elementary_symmetric(n, i) for i in range(1, n + 1))
    return gens, orbit_sum, evaluate_at_point


# ---------------------------------------------------------------------------
# Staircase reduction
# ---------------------------------------------------------------------------

def staircase_exponents(n: int) -> tuple[tuple[int, ...], ...]:
    """All exponent tuples a with 0 <= a_k <= n-1-k (0-based), lexicographically.

    These monomials are a free basis of the Laurent ring over the symmetric
    Laurent subring in type A; there are exactly n! of them.
    """
    ranges = [range(n - k) for k in range(n)]
    return tuple(itertools.product(*ranges))


def _relation_cascade(n: int, c: Sequence[Fraction]) -> list[list[LaurentPoly]]:
    # cascade[k] holds the non-leading coefficients [b_0, .., b_{D-1}] of the
    # monic degree-D relation satisfied by x_k modulo (e_i - c_i), D = n - k.
    # cascade[0] has constant coefficients (-1)^i c_i; each next level is the
    # synthetic quotient by (t - x_k), so its coefficients involve x_0..x_{k-1}.
    coeffs: list[LaurentPoly] = []
    for i in range(n, 0, -1):  # b_0 = (-1)^n c_n, ..., b_{n-1} = -c_1
        coeffs.append(LaurentPoly.constant(n, (-1) ** i * c[i - 1]))
    cascade = [coeffs]
    for k in range(1, n):
        prev = cascade[-1]  # b_0..b_{D-1} of the degree D = n-k+1 relation, lead 1
        xk = LaurentPoly.monomial((0,) * (k - 1) + (1,) + (0,) * (n - k), 1)
        deg = n - k + 1
        # Synthetic division by (t - x_{k-1}), Horner from the leading 1:
        # q_{m-1} = b_m + x_{k-1} * q_m with q_{D-1} = 1.
        carry = LaurentPoly.one(n)
        quot: list[LaurentPoly] = [LaurentPoly.zero(n)] * (deg - 1)
        for m in range(deg - 1, 0, -1):
            carry = prev[m] + xk * carry
            quot[m - 1] = carry
        cascade.append(quot)
    return cascade


def staircase_reduce(f: LaurentPoly, c: Sequence) -> LaurentPoly:
    """Reduce modulo (e_1 - c_1, ..., e_n - c_n) to the staircase normal form.

    The result is supported on exponents a with 0 <= a_k <= n-k (1-based), and
    agrees with `f` under evaluation at every point of the orbit W.s whenever
    c = (e_i(s)) for a regular s. Negative exponents are cleared first via
    1/x_i = (prod_{j != i} x_j)/c_n; then each variable is reduced against the
    monic relation cascade, highest index first, so substitutions only ever
    push work toward lower-indexed variables.

    >>> staircase_reduce(LaurentPoly.monomial((2, 0)), (3, 2)).sorted_terms()
    [((0, 0), Fraction(-2, 1)), ((1, 0), Fraction(3, 1))]
    """
    n = f.nvars
    c = tuple(_coerce(v) for v in c)
    if len(c) != n:
        raise InputError(f"expected {n} character values, got {len(c)}")
    if c[-1] == 0:
        raise InputError("c_n must be nonzero (e_n is invertible on the torus)")

    # clear negative exponents: x^a == x^(a + m*1) / c_n^m with m = -min(a)
    cur: dict[tuple[int, ...], Fraction] = {}
    for e, coeff in f.terms.items():
        m = -min(0, min(e))
        if m:
            e = tuple(a + m for a in e)
            coeff = coeff / c[-1] ** m
        v = cur.get(e, Fraction(0)) + coeff
        if v:
            cur[e] = v
        else:
            cur.pop(e, None)

    cascade = _relation_cascade(n, c)
    for k in range(n - 1, -1, -1):
        deg = n - k  # x_k^deg reduces; staircase bound is deg - 1
        rel = cascade[k]
        while True:
            # rewrite all violating terms in one pass so duplicates coalesce
            done: dict[tuple[int, ...], Fraction] = {}
            pending: dict[tuple[int, ...], Fraction] = {}
            for e, coeff in cur.items():
                (pending if e[k] >= deg else done)[e] = coeff
            if not pending:
                cur = done
                break
            for e, coeff in pending.items():
                # x_k^{e_k} = x_k^{e_k - deg} * (-sum_m b_m x_k^m)
                base = e[:k] + (e[k] - deg,) + e[k + 1:]
                for m, b in enumerate(rel):
                    for be, bc in b.terms.items():
                        ne = tuple(
                            base[t] + be[t] + (m if t == k else 0) for t in range(n)
                        )
                        v = done.get(ne, Fraction(0)) - coeff * bc
                        if v:
                            done[ne] = v
                        else:
                            done.pop(ne, None)
            cur = done
    return LaurentPoly(n, cur)


if __name__ == "__main__":
    import doctest

    doctest.testmod()
