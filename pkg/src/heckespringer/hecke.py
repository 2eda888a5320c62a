"""
The affine Hecke algebra of GL_n in the Bernstein presentation.

The algebra is generated over Q[q, q^{-1}] by T_w (w in S_n) and theta_x
(x in Z^n) subject to the quadratic relation (T_s + 1)(T_s - q) = 0 for
simple s, braid products T_w T_w' = T_ww' when lengths add, the lattice
relation theta_x theta_x' = theta_{x+x'}, and the cross relation

    T_s theta_{s(x)} - theta_x T_s = (1 - q) (theta_x - theta_{s(x)}) / (1 - theta_{-alpha}).

Every element is kept in normal form on the basis {theta_x T_w}: a finite map
from (weight, permutation) to a Laurent polynomial in q over Q. Multiplication
rewrites T-letters past theta-parts one simple reflection at a time, using the
derived rule

    T_s theta_z = theta_{s(z)} T_s + (1 - q) * D(z),
    D(z) = (theta_{s(z)} - theta_z) / (1 - theta_{-alpha}),

where the division is exact in the lattice ring and verified by multiply-back.
A nonzero remainder there can only come from a corrupted rule, so it is
escalated as an InvariantViolation rather than returned to callers.

The center is the ring of W-invariant Laurent polynomials; evaluating its
generators e_1..e_n at a torus point s and q at q0 gives a central character,
and the quotient by its kernel is realized operationally: specialize q, then
reduce every theta-coordinate to the staircase normal form. The result is an
honest finite-dimensional algebra on the basis (staircase exponent, w) of size
n! * n!.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Mapping, Sequence

from .combinat import (
    LaurentPoly,
    SemisimplePoint,
    Weight,
    WeylElement,
    act_on_weight,
    elementary_symmetric,
    evaluate_at_point,
    staircase_exponents,
    staircase_reduce,
    symmetric_group,
    total_order_key,
)
from .errors import DivisibilityError, InputError, InvariantViolation

__all__ = [
    "HeckeElement",
    "HeckeAlgebra",
    "CentralCharacter",
    "TruncatedAlgebra",
    "RelationCheck",
    "RelationReport",
    "basis_element",
    "multiply",
    "is_central",
    "verify_defining_relations",
    "central_character",
    "truncated_algebra",
    "qpoly",
    "qpoly_eval",
]

# q-coefficients are Laurent polynomials in the single variable q
_Q = LaurentPoly.monomial((1,))
_ONEQ = LaurentPoly.one(1)


def qpoly(pairs: Mapping[int, object] | int | str | Fraction) -> LaurentPoly:
    """Build a coefficient polynomial in q from {exponent: rational} or a scalar."""
    if isinstance(pairs, (int, str, Fraction)):
        return LaurentPoly.constant(1, pairs)
    return LaurentPoly(1, {(int(k),): Fraction(v) for k, v in pairs.items()})


def qpoly_eval(p: LaurentPoly, q0: Fraction) -> Fraction:
    if p.nvars != 1:
        raise InputError("not a q-polynomial")
    return sum((c * q0 ** e[0] for e, c in p.terms.items()), Fraction(0))


def _perm_length(perm: Sequence[int]) -> int:
    return sum(
        1
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )


class HeckeElement:
    """Normal form on the basis theta_x T_w; immutable by convention."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[tuple[Weight, tuple[int, ...]], LaurentPoly] | None = None):
        self.n = n
        clean: dict[tuple[Weight, tuple[int, ...]], LaurentPoly] = {}
        if terms:
            for (x, w), p in terms.items():
                if p.is_zero():
                    continue
                clean[(tuple(x), tuple(w))] = p
        self.terms = clean

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, HeckeElement)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, frozenset((k, v) for k, v in self.terms.items())))

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        if self.n != other.n:
            raise InputError("rank mismatch")
        out = dict(self.terms)
        for k, p in other.terms.items():
            cur = out.get(k)
            out[k] = p if cur is None else cur + p
        return HeckeElement(self.n, out)

    def __neg__(self) -> "HeckeElement":
        return HeckeElement(self.n, {k: -p for k, p in self.terms.items()})

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + (-other)

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        return _engine(self.n).multiply(self, other)

    def scale(self, c) -> "HeckeElement":
        p = c if isinstance(c, LaurentPoly) else qpoly(c)
        return HeckeElement(self.n, {k: v * p for k, v in self.terms.items()})

    def sorted_terms(self):
        """Weight-lexicographic, then (length, one-line) on the Weyl part."""
        return sorted(
            self.terms.items(),
            key=lambda kv: (kv[0][0], _perm_length(kv[0][1]), kv[0][1]),
        )

    def __repr__(self):
        if self.is_zero():
            return "HeckeElement(0)"
        bits = []
        for (x, w), p in self.sorted_terms():
            bits.append(f"({p!r})*theta{x}*T{w}")
        return " + ".join(bits)

    def to_obj(self) -> list[dict]:
        return [
            {
                "x": list(x),
                "w": [i + 1 for i in w],
                "coeff": [[e[0], str(c)] for e, c in p.sorted_terms()],
            }
            for (x, w), p in self.sorted_terms()
        ]

    @classmethod
    def from_obj(cls, n: int, obj: Iterable[dict]) -> "HeckeElement":
        terms: dict[tuple[Weight, tuple[int, ...]], LaurentPoly] = {}
        for item in obj:
            x = tuple(int(v) for v in item["x"])
            w = tuple(int(v) - 1 for v in item["w"])
            if len(x) != n or sorted(w) != list(range(n)):
                raise InputError(f"bad term {item!r} for rank {n}")
            p = LaurentPoly(1, {(int(e),): Fraction(c) for e, c in item["coeff"]})
            key = (x, w)
            terms[key] = terms.get(key, LaurentPoly.zero(1)) + p
        return cls(n, terms)


class HeckeAlgebra:
    """Rewriting engine producing normal forms; one instance per rank.

    `mutate_bernstein=True` flips the sign of the cross-relation correction
    term. This is the mutation-test mode: the defining-relation verifier must
    catch the corruption with nonzero residuals.
    """

    def __init__(self, n: int, mutate_bernstein: bool = False):
        self.n = n
        self.group = symmetric_group(n)
        self.mutate_bernstein = mutate_bernstein
        self._d_cache: dict[tuple[int, Weight], LaurentPoly] = {}
        self._commute_cache: dict[tuple[tuple[int, ...], Weight], HeckeElement] = {}
        self._tt_cache: dict[tuple[tuple[int, ...], tuple[int, ...]], HeckeElement] = {}

    # -- basis elements -----------------------------------------------------

    def one(self) -> HeckeElement:
        return HeckeElement(self.n, {((0,) * self.n, self.group.identity.perm): _ONEQ})

    def qvar(self) -> HeckeElement:
        return self.one().scale(_Q)

    def theta(self, x: Sequence[int]) -> HeckeElement:
        x = tuple(int(v) for v in x)
        if len(x) != self.n:
            raise InputError(f"weight {x} has rank {len(x)}, expected {self.n}")
        return HeckeElement(self.n, {(x, self.group.identity.perm): _ONEQ})

    def tee(self, w) -> HeckeElement:
        el = w if isinstance(w, WeylElement) else self.group.element(w)
        return HeckeElement(self.n, {((0,) * self.n, el.perm): _ONEQ})

    def basis_element(self, kind: str, value=None) -> HeckeElement:
        if kind == "theta":
            return self.theta(value)
        if kind == "tee":
            return self.tee(value)
        if kind == "unit":
            return self.one()
        if kind == "qvar":
            return self.qvar()
        raise InputError(f"unknown basis element kind {kind!r}")

    # -- the cross-relation kernel -------------------------------------------

    def _d_poly(self, i: int, z: Weight) -> LaurentPoly:
        """D(z) = (theta_{s_i(z)} - theta_z) / (1 - theta_{-alpha_i}), exact."""
        key = (i, z)
        cached = self._d_cache.get(key)
        if cached is not None:
            return cached
        s = self.group.simple[i]
        sz = act_on_weight(s, z)
        if sz == z:
            result = LaurentPoly.zero(self.n)
        else:
            num = LaurentPoly.monomial(sz) - LaurentPoly.monomial(z)
            neg_alpha = [0] * self.n
            neg_alpha[i] = -1
            neg_alpha[i + 1] = 1
            den = LaurentPoly.one(self.n) - LaurentPoly.monomial(neg_alpha)
            try:
                result = num.exact_div(den)
            except DivisibilityError as exc:  # cannot happen for lattice weights
                raise InvariantViolation(
                    f"Bernstein denominator failed to divide at simple {i}, weight {z}"
                ) from exc
        self._d_cache[key] = result
        return result

    def _left_mul_simple(self, i: int, h: HeckeElement) -> HeckeElement:
        """T_{s_i} * h in normal form."""
        s = self.group.simple[i]
        qm1 = _Q - _ONEQ
        correction = qm1 if self.mutate_bernstein else (_ONEQ - _Q)
        out: dict[tuple[Weight, tuple[int, ...]], LaurentPoly] = {}

        def add(key, p):
            cur = out.get(key)
            out[key] = p if cur is None else cur + p

        for (z, u), p in h.terms.items():
            u_el = self.group.element(u)
            su = self.group.mul(s, u_el)
            sz = act_on_weight(s, z)
            if su.length > u_el.length:
                add((sz, su.perm), p)
            else:
                add((sz, su.perm), p * _Q)
                add((sz, u), p * qm1)
            d = self._d_poly(i, z)
            for mu, c in d.terms.items():
                add((mu, u), p * correction.scale(c))
        return HeckeElement(self.n, out)

    def _commute(self, w: WeylElement, y: Weight) -> HeckeElement:
        """Normal form of T_w * theta_y."""
        key = (w.perm, y)
        cached = self._commute_cache.get(key)
        if cached is None:
            cached = self.theta(y)
            for i in reversed(w.word):
                cached = self._left_mul_simple(i, cached)
            self._commute_cache[key] = cached
        return cached

    def _right_mul_simple(self, h: HeckeElement, i: int) -> HeckeElement:
        """h * T_{s_i}; never touches theta-parts."""
        s = self.group.simple[i]
        qm1 = _Q - _ONEQ
        out: dict[tuple[Weight, tuple[int, ...]], LaurentPoly] = {}

        def add(key, p):
            cur = out.get(key)
            out[key] = p if cur is None else cur + p

        for (z, u), p in h.terms.items():
            u_el = self.group.element(u)
            us = self.group.mul(u_el, s)
            if us.length > u_el.length:
                add((z, us.perm), p)
            else:
                add((z, us.perm), p * _Q)
                add((z, u), p * qm1)
        return HeckeElement(self.n, out)

    def _t_times_t(self, u: tuple[int, ...], v: WeylElement) -> HeckeElement:
        key = (u, v.perm)
        cached = self._tt_cache.get(key)
        if cached is None:
            cached = self.tee(u)
            for i in v.word:
                cached = self._right_mul_simple(cached, i)
            self._tt_cache[key] = cached
        return cached

    # -- multiplication --------------------------------------------------------

    def multiply(self, a: HeckeElement, b: HeckeElement) -> HeckeElement:
        if a.n != self.n or b.n != self.n:
            raise InputError("rank mismatch")
        out: dict[tuple[Weight, tuple[int, ...]], LaurentPoly] = {}
        for (x, w), p in a.terms.items():
            w_el = self.group.element(w)
            for (y, v), r in b.terms.items():
                v_el = self.group.element(v)
                pr = p * r
                comm = self._commute(w_el, y)
                for (z, u), c in comm.terms.items():
                    coeff = pr * c
                    tt = self._t_times_t(u, v_el)
                    xz = tuple(xi + zi for xi, zi in zip(x, z))
                    for (_, t), cc in tt.terms.items():
                        key = (xz, t)
                        cur = out.get(key)
                        add = coeff * cc
                        out[key] = add if cur is None else cur + add
        return HeckeElement(self.n, out)


@lru_cache(maxsize=None)
def _engine(n: int) -> HeckeAlgebra:
    return HeckeAlgebra(n)


def basis_element(n: int, kind: str, value=None) -> HeckeElement:
    return _engine(n).basis_element(kind, value)


def multiply(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    if a.n != b.n:
        raise InputError("rank mismatch")
    return _engine(a.n).multiply(a, b)


def is_central(h: HeckeElement) -> tuple[bool, HeckeElement | None]:
    """Commute against every T_{s_i} and against theta_{e_1}.

    These generate a subalgebra containing every theta_{e_i} (conjugation via
    the cross relation) whose centralizer is the full center: commuting with
    an invertible element forces commuting with its inverse, so all theta_x
    follow. Returns (False, nonzero commutator) on failure.
    """
    alg = _engine(h.n)
    gens = [alg.tee(s) for s in alg.group.simple]
    gens.append(alg.theta((1,) + (0,) * (h.n - 1)))
    for g in gens:
        comm = alg.multiply(g, h) - alg.multiply(h, g)
        if not comm.is_zero():
            return False, comm
    return True, None


# ---------------------------------------------------------------------------
# Defining-relation verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RelationCheck:
    kind: str
    label: str
    residual: HeckeElement

    @property
    def zero(self) -> bool:
        return self.residual.is_zero()


@dataclass
class RelationReport:
    n: int
    weight_bound: int
    mutated: bool
    checks: list[RelationCheck] = field(default_factory=list)

    @property
    def all_zero(self) -> bool:
        return all(c.zero for c in self.checks)

    def counts(self) -> dict[str, tuple[int, int]]:
        out: dict[str, tuple[int, int]] = {}
        for c in self.checks:
            total, bad = out.get(c.kind, (0, 0))
            out[c.kind] = (total + 1, bad + (0 if c.zero else 1))
        return out

    def to_obj(self) -> dict:
        failures = [
            {"kind": c.kind, "label": c.label, "residual": c.residual.to_obj()}
            for c in self.checks
            if not c.zero
        ]
        return {
            "n": self.n,
            "weight_bound": self.weight_bound,
            "mutated": self.mutated,
            "total_checks": len(self.checks),
            "all_zero": self.all_zero,
            "by_kind": {
                kind: {"checked": tot, "nonzero": bad}
                for kind, (tot, bad) in sorted(self.counts().items())
            },
            "failures": failures,
        }


def verify_defining_relations(n: int, weight_bound: int, mutate: bool = False) -> RelationReport:
    """Evaluate every defining relation inside the rewriting engine.

    Quadratic relations per simple reflection, braid products over all
    length-additive pairs, lattice additivity over the weight box, and the
    cross relation against the exact quotient, all as expected-zero residuals.
    Nonzero residuals are reported, never raised.
    """
    if not 1 <= n <= 4:
        raise InputError("relation suite supports 1 <= n <= 4")
    if not 0 <= weight_bound <= 3:
        raise InputError("relation suite supports weight bounds up to 3")
    alg = HeckeAlgebra(n, mutate_bernstein=mutate)
    group = alg.group
    report = RelationReport(n, weight_bound, mutate)
    qm1 = _Q - _ONEQ
    one_minus_q = _ONEQ - _Q

    for i, s in enumerate(group.simple):
        ts = alg.tee(s)
        residual = alg.multiply(ts, ts) - ts.scale(qm1) - alg.one().scale(_Q)
        report.checks.append(RelationCheck("quadratic", f"s{i + 1}", residual))

    for w in group.elements:
        for v in group.elements:
            wv = group.mul(w, v)
            if w.length + v.length != wv.length:
                continue
            residual = alg.multiply(alg.tee(w), alg.tee(v)) - alg.tee(wv)
            report.checks.append(
                RelationCheck("braid", f"T{w.perm}*T{v.perm}", residual)
            )

    box = list(itertools.product(range(-weight_bound, weight_bound + 1), repeat=n))
    for x in box:
        for y in box:
            xy = tuple(a + b for a, b in zip(x, y))
            residual = alg.multiply(alg.theta(x), alg.theta(y)) - alg.theta(xy)
            report.checks.append(RelationCheck("lattice", f"theta{x}*theta{y}", residual))

    for i, s in enumerate(group.simple):
        ts = alg.tee(s)
        for x in box:
            sx = act_on_weight(s, x)
            lhs = alg.multiply(ts, alg.theta(sx)) - alg.multiply(alg.theta(x), ts)
            num = LaurentPoly.monomial(x) - LaurentPoly.monomial(sx)
            neg_alpha = [0] * n
            neg_alpha[i] = -1
            neg_alpha[i + 1] = 1
            den = LaurentPoly.one(n) - LaurentPoly.monomial(neg_alpha)
            if x == sx:
                rhs = HeckeElement(n)
            else:
                quot = num.exact_div(den)
                rhs = HeckeElement(
                    n,
                    {
                        (mu, group.identity.perm): one_minus_q.scale(c)
                        for mu, c in quot.terms.items()
                    },
                )
            report.checks.append(
                RelationCheck("cross", f"s{i + 1}, x={x}", lhs - rhs)
            )
    return report


# ---------------------------------------------------------------------------
# Central characters and truncation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CentralCharacter:
    """Values of the central generators e_1..e_n and q at a semisimple point."""

    point: SemisimplePoint
    values: tuple[Fraction, ...]
    q0: Fraction

    def to_obj(self) -> dict:
        return {
            "s": [str(v) for v in self.point.s],
            "e_values": [str(v) for v in self.values],
            "q0": str(self.q0),
        }


def central_character(p: SemisimplePoint) -> CentralCharacter:
    n = p.n
    values = tuple(
        evaluate_at_point(elementary_symmetric(n, i), p) for i in range(1, n + 1)
    )
    return CentralCharacter(p, values, p.q0)


@dataclass
class TruncatedAlgebra:
    """The |W|^2-dimensional quotient at a central character.

    Basis pairs (staircase exponent, permutation) are ordered by exponent then
    by the (length, one-line) total order; structure constants are exact
    rationals obtained by multiplying in the generic algebra, specializing q,
    and staircase-reducing every theta-coordinate.
    """

    n: int
    character: CentralCharacter
    basis: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    structure: dict[tuple[int, int], dict[int, Fraction]]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def index(self, a: Sequence[int], w: Sequence[int]) -> int:
        return self._index[(tuple(a), tuple(w))]

    @property
    def _index(self) -> dict:
        cached = getattr(self, "_index_cache", None)
        if cached is None:
            cached = {key: i for i, key in enumerate(self.basis)}
            object.__setattr__(self, "_index_cache", cached)
        return cached

    def product_vector(self, i: int, j: int) -> dict[int, Fraction]:
        return self.structure.get((i, j), {})

    def multiply_vectors(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, ci in u.items():
            if not ci:
                continue
            for j, cj in v.items():
                if not cj:
                    continue
                f = ci * cj
                for k, ck in self.structure.get((i, j), {}).items():
                    val = out.get(k, Fraction(0)) + f * ck
                    if val:
                        out[k] = val
                    else:
                        out.pop(k, None)
        return out

    @property
    def unit_index(self) -> int:
        return self.index((0,) * self.n, tuple(range(self.n)))

    def check_unit_laws(self) -> bool:
        e = self.unit_index
        dim = self.dimension
        for i in range(dim):
            if self.product_vector(e, i) != {i: Fraction(1)}:
                return False
            if self.product_vector(i, e) != {i: Fraction(1)}:
                return False
        return True

    def check_associativity(self, triples: Iterable[tuple[int, int, int]]) -> tuple[bool, tuple | None]:
        for (i, j, k) in triples:
            left = self.multiply_vectors(self.product_vector(i, j), {k: Fraction(1)})
            right = self.multiply_vectors({i: Fraction(1)}, self.product_vector(j, k))
            if left != right:
                return False, (i, j, k)
        return True, None

    def to_obj(self) -> dict:
        triples = []
        for (i, j) in sorted(self.structure):
            vec = self.structure[(i, j)]
            if vec:
                triples.append([i, j, [[k, str(c)] for k, c in sorted(vec.items())]])
        return {
            "n": self.n,
            "s": [str(v) for v in self.character.point.s],
            "q0": str(self.character.q0),
            "dimension": self.dimension,
            "basis": [
                {"a": list(a), "w": [i + 1 for i in w]} for a, w in self.basis
            ],
            "structure": triples,
        }


def truncated_algebra(p: SemisimplePoint) -> TruncatedAlgebra:
    """Quotient the generic algebra by the kernel of the central character.

    The staircase monomials times T_w descend to a basis because the algebra
    is free of rank |W|^2 over its center; the quotient multiplication is the
    generic product followed by q-specialization and staircase reduction.
    """
    n = p.n
    char = central_character(p)
    alg = _engine(n)
    group = alg.group
    elems = sorted(group.elements, key=total_order_key)
    stair = staircase_exponents(n)
    basis = tuple((a, w.perm) for a in stair for w in elems)
    index = {key: i for i, key in enumerate(basis)}

    reduce_cache: dict[Weight, dict[tuple[int, ...], Fraction]] = {}

    def reduce_weight(z: Weight) -> dict[tuple[int, ...], Fraction]:
        cached = reduce_cache.get(z)
        if cached is None:
            reduced = staircase_reduce(LaurentPoly.monomial(z), char.values)
            cached = dict(reduced.terms)
            reduce_cache[z] = cached
        return cached

    structure: dict[tuple[int, int], dict[int, Fraction]] = {}
    singles = [
        HeckeElement(n, {(a, w): _ONEQ}) for (a, w) in basis
    ]
    for i1, left in enumerate(singles):
        for i2, right in enumerate(singles):
            prod = alg.multiply(left, right)
            vec: dict[int, Fraction] = {}
            for (z, u), poly in prod.terms.items():
                val = qpoly_eval(poly, p.q0)
                if not val:
                    continue
                for a2, r in reduce_weight(z).items():
                    key = index[(a2, u)]
                    acc = vec.get(key, Fraction(0)) + val * r
                    if acc:
                        vec[key] = acc
                    else:
                        vec.pop(key, None)
            structure[(i1, i2)] = vec

    out = TruncatedAlgebra(n, char, basis, structure)
    assert out.dimension == factorial(n) ** 2
    return out
