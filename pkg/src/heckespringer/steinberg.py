"""
Cell combinatorics of Steinberg varieties for collapses of homogeneous bundles.

A datum consists of a reductive group's Weyl data (here: a Young subgroup
W(s) of S_n with its own positive system, possibly all of S_n) together with
a family of root sets V^i, each stable under adding positive group roots.
Such a family encodes the collapses G x^B V^i -> V; the fiber product of two
of them is partitioned by the G-orbits on pairs of flags into vector bundles,
giving one cell per (w, y) in W(s)^2 of complex dimension

    |V^i cap w V^j| + l(w) + l(y)

with lengths taken in W(s). Odd-degree Borel-Moore homology vanishes and the
even part is spanned by fundamental classes of cell closures, so the graded
dimension in homological degree 2m is simply the number of cells of dimension
m, and the degree-k endomorphism space of the associated direct-image sheaves
has dimension equal to the number of cells with k = d_i + d_j - 2m, where
d_i = |Phi_s^+| + |V^i| is the dimension of the i-th bundle space.

Frobenius bookkeeping: the class of an m-dimensional cell carries weight
q^{-m}, the degree conversion twists by q^{(d_i+d_j)/2}, and the degree-k
morphism space carries weight q^{k/2}; the product identity between the three
is asserted exactly for every cell.

Two constructors are provided: the full nilpotent-cone datum (single piece,
all positive roots) and the fixed-point datum of a semisimple pair (s, q0),
whose pieces are indexed by minimal coset representatives and whose total
graded dimension must equal the dimension n!^2 of the truncated Hecke algebra
at (s, q0); `dlc_report` performs that cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels
from .combinat import (
    CentralizerWeyl,
    Root,
    SemisimplePoint,
    all_roots,
    centralizer_data,
    positive_roots,
    symmetric_group,
)
from .errors import InputError, InvariantViolation
from .hecke import truncated_algebra

__all__ = [
    "SpringerDatum",
    "Cell",
    "CellInventory",
    "ExtTable",
    "FrobeniusReport",
    "DlcReport",
    "nilpotent_datum",
    "fixed_point_datum",
    "validate_b_stable",
    "fiber_dim",
    "cell_inventory_and_poincare",
    "full_inventory",
    "ext_graded_dims",
    "ext_graded_totals",
    "frobenius_weight_table",
    "dlc_report",
]


@dataclass(frozen=True)
class SpringerDatum:
    """Weyl data of the acting group plus the family of B-stable root sets.

    `group` carries the positive system used for all lengths and for the
    stability condition; `ambient_weights` is the root support of the ambient
    representation (all roots for the nilpotent cone, the fixed root set for
    a semisimple pair); `piece_reps` records the coset representative that
    produced each piece, when there is one.
    """

    n: int
    group: CentralizerWeyl
    ambient_weights: frozenset[Root]
    pieces: tuple[frozenset[Root], ...]
    piece_reps: tuple[tuple[int, ...] | None, ...]

    @property
    def component_dims(self) -> tuple[int, ...]:
        base = len(self.group.positive_roots)
        return tuple(base + len(v) for v in self.pieces)

    @property
    def piece_count(self) -> int:
        return len(self.pieces)

    def to_obj(self) -> dict:
        return {
            "n": self.n,
            "levels": list(self.group.levels),
            "subgroup_order": len(self.group),
            "positive_group_roots": [[i + 1, j + 1] for (i, j) in self.group.positive_roots],
            "ambient_weights": sorted([i + 1, j + 1] for (i, j) in self.ambient_weights),
            "pieces": [sorted([i + 1, j + 1] for (i, j) in piece) for piece in self.pieces],
            "piece_reps": [
                None if rep is None else [v + 1 for v in rep] for rep in self.piece_reps
            ],
            "component_dims": list(self.component_dims),
        }


def nilpotent_datum(n: int) -> SpringerDatum:
    """The full nilpotent-cone datum: one piece holding every positive root."""
    group = symmetric_group(n)  # validates 1 <= n <= 8
    sub = CentralizerWeyl(
        n=n,
        levels=(0,) * n,
        elements=tuple(w.perm for w in group.elements),
        positive_roots=positive_roots(n),
    )
    return SpringerDatum(
        n=n,
        group=sub,
        ambient_weights=frozenset(all_roots(n)),
        pieces=(frozenset(positive_roots(n)),),
        piece_reps=(None,),
    )


def fixed_point_datum(p: SemisimplePoint) -> SpringerDatum:
    """Fixed-point datum of (s, q0): ambient roots with alpha(s) = q0, one
    piece per minimal coset representative w, cut as V cap w(Phi+).

    The scaling action contributes t^{-1}, so a root vector is fixed exactly
    when alpha(s) equals q0; q0 = +-1 is rejected upstream because zero
    weights would then enter with multiplicity and break the root-set model.
    B-stability of every piece is verified, not assumed.
    """
    n = p.n
    fixed = frozenset(
        (i, j) for (i, j) in all_roots(n) if p.s[i] / p.s[j] == p.q0
    )
    subgroup, reps = centralizer_data(p)
    pieces = []
    for rep in reps:
        inv = [0] * n
        for i, v in enumerate(rep.perm):
            inv[v] = i
        w_pos = frozenset((i, j) for (i, j) in fixed if inv[i] < inv[j])
        pieces.append(w_pos)
    datum = SpringerDatum(
        n=n,
        group=subgroup,
        ambient_weights=fixed,
        pieces=tuple(pieces),
        piece_reps=tuple(rep.perm for rep in reps),
    )
    bad = validate_b_stable(datum)
    if bad:
        raise InvariantViolation(f"fixed-point piece not B-stable: {bad[0]}")
    return datum


def _root_sum(alpha: Root, beta: Root) -> Root | None:
    (a, b), (c, d) = alpha, beta
    if b == c and a != d:
        return (a, d)
    if d == a and c != b:
        return (c, b)
    return None


def validate_b_stable(d: SpringerDatum) -> list[tuple[int, Root, Root]]:
    """Closure of each piece under adding positive group roots, within the
    ambient support. Returns violations as (piece index, alpha, beta)."""
    violations = []
    for idx, piece in enumerate(d.pieces):
        for alpha in sorted(piece):
            for beta in d.group.positive_roots:
                gamma = _root_sum(alpha, beta)
                if gamma is None or gamma not in d.ambient_weights:
                    continue
                if gamma not in piece:
                    violations.append((idx, alpha, beta))
    return violations


def fiber_dim(d: SpringerDatum, i: int, j: int, w: Sequence[int]) -> int:
    """|V^i cap w V^j| with w acting on roots by coordinate permutation."""
    w = tuple(w)
    if not d.group.contains(w):
        raise InputError(f"{w} is not in the acting Weyl group")
    moved = {(w[a], w[b]) for (a, b) in d.pieces[j]}
    return len(d.pieces[i] & moved)


@dataclass(frozen=True)
class Cell:
    i: int
    j: int
    w: tuple[int, ...]
    y: tuple[int, ...]
    fiber_dim: int
    dim: int

    def to_obj(self) -> dict:
        return {
            "i": self.i,
            "j": self.j,
            "w": [v + 1 for v in self.w],
            "y": [v + 1 for v in self.y],
            "fiber": self.fiber_dim,
            "dim": self.dim,
        }


@dataclass
class CellInventory:
    cells: list[Cell]
    per_pair: dict[tuple[int, int], list[Cell]]


def cell_inventory_and_poincare(
    d: SpringerDatum, i: int, j: int
) -> tuple[list[Cell], dict[int, int]]:
    """One cell per (w, y), plus the histogram of complex cell dimensions.

    The histogram *is* the Borel-Moore Poincare vector: dimension m counts
    classes in homological degree 2m, odd degrees vanish.
    """
    if not (0 <= i < d.piece_count and 0 <= j < d.piece_count):
        raise InputError(f"piece index out of range: ({i}, {j})")
    cells = []
    poincare: dict[int, int] = {}
    fibers = {w: fiber_dim(d, i, j, w) for w in d.group.elements}
    for w in d.group.elements:
        fw = fibers[w]
        lw = d.group.length(w)
        for y in d.group.elements:
            dim = fw + lw + d.group.length(y)
            cells.append(Cell(i, j, w, y, fw, dim))
            poincare[dim] = poincare.get(dim, 0) + 1
    return cells, dict(sorted(poincare.items()))


def full_inventory(d: SpringerDatum) -> CellInventory:
    per_pair = {}
    cells = []
    for i in range(d.piece_count):
        for j in range(d.piece_count):
            pair_cells, _ = cell_inventory_and_poincare(d, i, j)
            per_pair[(i, j)] = pair_cells
            cells.extend(pair_cells)
    return CellInventory(cells, per_pair)


def _pair_poincare(d: SpringerDatum, i: int, j: int) -> dict[int, int]:
    # histogram over (w, y) without materializing cells: convolve the
    # (fiber + l(w)) histogram with the length histogram over y
    base: dict[int, int] = {}
    for w in d.group.elements:
        v = fiber_dim(d, i, j, w) + d.group.length(w)
        base[v] = base.get(v, 0) + 1
    lens: dict[int, int] = {}
    for y in d.group.elements:
        ly = d.group.length(y)
        lens[ly] = lens.get(ly, 0) + 1
    out: dict[int, int] = {}
    for v, cv in base.items():
        for ly, cy in lens.items():
            out[v + ly] = out.get(v + ly, 0) + cv * cy
    return dict(sorted(out.items()))


@dataclass
class ExtTable:
    """Graded dimensions of Hom^k between the summand sheaves, by the degree
    conversion k = d_i + d_j - 2m applied to the cell histograms."""

    component_dims: tuple[int, ...]
    entries: dict[tuple[int, int, int], int]
    weights: dict[int, Fraction] | None = None

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def graded_totals(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (_, _, k), v in self.entries.items():
            out[k] = out.get(k, 0) + v
        return dict(sorted(out.items()))

    def hom_dims(self, i: int, j: int) -> dict[int, int]:
        return dict(
            sorted(
                (k, v) for (a, b, k), v in self.entries.items() if (a, b) == (i, j)
            )
        )

    def is_symmetric(self) -> bool:
        return all(
            self.entries.get((j, i, k)) == v for (i, j, k), v in self.entries.items()
        )

    def nonnegative_degrees(self) -> bool:
        # Holds for honest Springer situations; degenerate data (empty pieces
        # with large group) genuinely produce negative degrees, so this is a
        # reported flag rather than an invariant.
        return all(k >= 0 for (_, _, k) in self.entries)

    def max_degree_ok(self) -> bool:
        return all(
            k <= self.component_dims[i] + self.component_dims[j]
            for (i, j, k) in self.entries
        )

    def to_obj(self) -> dict:
        obj = {
            "component_dims": list(self.component_dims),
            "entries": [
                [i, j, k, v] for (i, j, k), v in sorted(self.entries.items())
            ],
            "graded_totals": {str(k): v for k, v in self.graded_totals().items()},
            "total": self.total,
            "symmetric": self.is_symmetric(),
            "nonnegative_degrees": self.nonnegative_degrees(),
            "max_degree_ok": self.max_degree_ok(),
        }
        if self.weights is not None:
            obj["weights"] = {str(k): str(v) for k, v in sorted(self.weights.items())}
        return obj


def ext_graded_dims(d: SpringerDatum) -> ExtTable:
    dims = d.component_dims
    entries: dict[tuple[int, int, int], int] = {}
    for i in range(d.piece_count):
        for j in range(d.piece_count):
            dd = dims[i] + dims[j]
            for m, count in _pair_poincare(d, i, j).items():
                entries[(i, j, dd - 2 * m)] = count
    table = ExtTable(dims, entries)
    if not table.is_symmetric():
        raise InvariantViolation("Ext table symmetry failed")
    if not table.max_degree_ok():
        raise InvariantViolation("Ext degree exceeded d_i + d_j")
    return table


def ext_graded_totals(d: SpringerDatum) -> dict[int, int]:
    """Totals of the Ext table by degree, via the integer kernel backends."""
    n = d.n
    roots = all_roots(n)
    root_index = {r: idx for idx, r in enumerate(roots)}
    n_pieces = d.piece_count
    piece_matrix = np.zeros((n_pieces, len(roots)), dtype=np.uint8)
    for i, piece in enumerate(d.pieces):
        for r in piece:
            piece_matrix[i, root_index[r]] = 1
    elems = d.group.elements
    wcols = np.zeros((len(elems), len(roots)), dtype=np.int64)
    lw = np.zeros(len(elems), dtype=np.int64)
    for wi, w in enumerate(elems):
        inv = [0] * n
        for a, v in enumerate(w):
            inv[v] = a
        for r_idx, (a, b) in enumerate(roots):
            wcols[wi, r_idx] = root_index[(inv[a], inv[b])]
        lw[wi] = d.group.length(w)
    max_l = int(lw.max()) if len(elems) else 0
    ly_hist = np.zeros(max_l + 1, dtype=np.int64)
    for length in lw:
        ly_hist[length] += 1
    dims = np.array(d.component_dims, dtype=np.int64)
    return _kernels.ext_degree_totals(piece_matrix, wcols, dims, lw, ly_hist)


# ---------------------------------------------------------------------------
# Frobenius weights
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FrobeniusRow:
    i: int
    j: int
    cell_dim: int
    count: int
    ext_degree: int
    homology_weight: Fraction
    ext_weight: Fraction
    consistent: bool

    def to_obj(self) -> dict:
        return {
            "i": self.i,
            "j": self.j,
            "cell_dim": self.cell_dim,
            "count": self.count,
            "ext_degree": self.ext_degree,
            "homology_weight": str(self.homology_weight),
            "ext_weight": str(self.ext_weight),
            "consistent": self.consistent,
        }


@dataclass
class FrobeniusReport:
    q0: Fraction
    sqrt_q: Fraction | None
    rows: list[FrobeniusRow] = field(default_factory=list)

    @property
    def all_consistent(self) -> bool:
        return all(r.consistent for r in self.rows)

    def to_obj(self) -> dict:
        return {
            "q0": str(self.q0),
            "sqrt_q": None if self.sqrt_q is None else str(self.sqrt_q),
            "all_consistent": self.all_consistent,
            "rows": [r.to_obj() for r in self.rows],
        }


def frobenius_weight_table(d: SpringerDatum, p: SemisimplePoint) -> FrobeniusReport:
    """Weight q0^{-m} per m-dimensional cell class, sqrtQ^k per degree k, and
    the exact consistency identity q0^{-m} * q0^{(d_i+d_j)/2} = sqrtQ^k.

    Without a stored square root the table only exists when every d_i + d_j
    is even (all Tate twists integral); otherwise the square root is required.
    """
    dims = d.component_dims
    odd = any((dims[i] + dims[j]) % 2 for i in range(len(dims)) for j in range(len(dims)))
    if p.sqrt_q is None and odd:
        raise InputError("square root of q0 required: some d_i + d_j is odd")

    def half_power(exponent: int) -> Fraction:
        # q0^(exponent/2), exact
        if p.sqrt_q is not None:
            return p.sqrt_q ** exponent
        if exponent % 2:
            raise InputError("odd half-integral weight without a square root")
        return p.q0 ** (exponent // 2)

    report = FrobeniusReport(p.q0, p.sqrt_q)
    for i in range(d.piece_count):
        for j in range(d.piece_count):
            dd = dims[i] + dims[j]
            for m, count in _pair_poincare(d, i, j).items():
                k = dd - 2 * m
                hom_w = p.q0 ** (-m)
                ext_w = half_power(k)
                ok = hom_w * half_power(dd) == ext_w
                report.rows.append(
                    FrobeniusRow(i, j, m, count, k, hom_w, ext_w, ok)
                )
    return report


# ---------------------------------------------------------------------------
# The dimension cross-check
# ---------------------------------------------------------------------------

@dataclass
class DlcReport:
    point: SemisimplePoint
    datum: SpringerDatum
    component_count: int
    subgroup_order: int
    geometric_graded: dict[int, int]
    geometric_total: int
    kernel_totals_agree: bool
    algebraic_total: int
    equal: bool
    b_stable: bool
    frobenius: FrobeniusReport | None

    def to_obj(self) -> dict:
        return {
            "s": [str(v) for v in self.point.s],
            "q0": str(self.point.q0),
            "sqrt_q": None if self.point.sqrt_q is None else str(self.point.sqrt_q),
            "component_count": self.component_count,
            "subgroup_order": self.subgroup_order,
            "datum": self.datum.to_obj(),
            "geometric_graded": {str(k): v for k, v in sorted(self.geometric_graded.items())},
            "geometric_total": self.geometric_total,
            "kernel_totals_agree": self.kernel_totals_agree,
            "algebraic_total": self.algebraic_total,
            "equal": self.equal,
            "b_stable": self.b_stable,
            "frobenius": None if self.frobenius is None else self.frobenius.to_obj(),
        }


def dlc_report(p: SemisimplePoint) -> DlcReport:
    """Compare the geometric graded total against the truncated Hecke algebra.

    The geometric side enumerates cells of the fixed-point datum; the
    algebraic side independently builds the n!^2-dimensional truncation at the
    same central character. Equality of the totals is the dimension-level
    shadow of the endomorphism-algebra isomorphism. The graded breakdown, the
    component count |J| = |W| / |W(s)| and the Frobenius weights (when a
    square root is supplied) ride along.
    """
    datum = fixed_point_datum(p)
    violations = validate_b_stable(datum)
    table = ext_graded_dims(datum)
    graded = table.graded_totals()
    kernel_graded = ext_graded_totals(datum)
    talg = truncated_algebra(p)

    expected_cells = (datum.piece_count * len(datum.group)) ** 2
    if table.total != expected_cells:
        # one cell per (i, j, w, y), so the grand total must be |J|^2 |W(s)|^2
        raise InvariantViolation("cell count mismatch against |J|^2 |W(s)|^2")

    frob = None
    if p.sqrt_q is not None:
        frob = frobenius_weight_table(datum, p)
        if not frob.all_consistent:
            raise InvariantViolation("Frobenius weight identity failed on a cell")

    return DlcReport(
        point=p,
        datum=datum,
        component_count=datum.piece_count,
        subgroup_order=len(datum.group),
        geometric_graded=graded,
        geometric_total=table.total,
        kernel_totals_agree=kernel_graded == graded,
        algebraic_total=talg.dimension,
        equal=table.total == talg.dimension,
        b_stable=not violations,
        frobenius=frob,
    )
