import random
from fractions import Fraction
from math import factorial

import pytest

from heckespringer.combinat import SemisimplePoint
from heckespringer.errors import InputError
from heckespringer.steinberg import (
    SpringerDatum,
    cell_inventory_and_poincare,
    dlc_report,
    ext_graded_dims,
    ext_graded_totals,
    fiber_dim,
    fixed_point_datum,
    frobenius_weight_table,
    full_inventory,
    nilpotent_datum,
    validate_b_stable,
)


# ---------------------------------------------------------------------------
# data constructors
# ---------------------------------------------------------------------------

def test_nilpotent_datum_small_ranks():
    d1 = nilpotent_datum(1)
    assert d1.pieces == (frozenset(),) and d1.component_dims == (0,)
    d2 = nilpotent_datum(2)
    assert d2.pieces == (frozenset({(0, 1)}),) and d2.component_dims == (2,)
    d3 = nilpotent_datum(3)
    assert len(d3.pieces[0]) == 3 and d3.component_dims == (6,)


def test_fixed_point_datum_regular():
    d = fixed_point_datum(SemisimplePoint.of((1, 2), 2))
    assert d.ambient_weights == frozenset({(1, 0)})
    assert len(d.group) == 1
    assert sorted(len(p) for p in d.pieces) == [0, 1]
    assert sorted(d.component_dims) == [0, 1]


def test_fixed_point_datum_degenerate_to_flag_variety():
    d = fixed_point_datum(SemisimplePoint.of((1, 1), 3))
    assert d.ambient_weights == frozenset()
    assert len(d.group) == 2
    assert d.pieces == (frozenset(),)
    assert d.component_dims == (1,)


def test_fixed_point_rejects_degenerate_scalars():
    with pytest.raises(InputError):
        SemisimplePoint.of((1, 2), 1)
    with pytest.raises(InputError):
        SemisimplePoint.of((1, 2), -1)
    with pytest.raises(InputError):
        SemisimplePoint.of((1, 0), 2)


def test_component_count_equals_coset_count():
    for s, q0 in [((1, 2, 4), 2), ((1, 1, 2), 3), ((2, 2, 2), 5), ((1, 2, 1, 2), 2)]:
        d = fixed_point_datum(SemisimplePoint.of(s, q0))
        assert d.piece_count * len(d.group) == factorial(len(s))


# ---------------------------------------------------------------------------
# B-stability
# ---------------------------------------------------------------------------

def test_nilpotent_b_stable():
    assert validate_b_stable(nilpotent_datum(3)) == []


def test_b_stability_violation_detected():
    d3 = nilpotent_datum(3)
    broken = SpringerDatum(
        n=3,
        group=d3.group,
        ambient_weights=d3.ambient_weights,
        pieces=(frozenset({(0, 1), (1, 2)}),),  # removed (0, 2)
        piece_reps=(None,),
    )
    violations = validate_b_stable(broken)
    assert (0, (0, 1), (1, 2)) in violations


def test_empty_piece_is_vacuously_stable():
    d3 = nilpotent_datum(3)
    empty = SpringerDatum(
        n=3,
        group=d3.group,
        ambient_weights=d3.ambient_weights,
        pieces=(frozenset(),),
        piece_reps=(None,),
    )
    assert validate_b_stable(empty) == []


def test_all_fixed_point_data_b_stable():
    rng = random.Random(8)
    for _ in range(15):
        n = rng.choice([2, 3, 4])
        s = tuple(rng.choice([1, 2, 4, 8]) for _ in range(n))
        d = fixed_point_datum(SemisimplePoint.of(s, 2))
        assert validate_b_stable(d) == []


# ---------------------------------------------------------------------------
# fibers and cells
# ---------------------------------------------------------------------------

def test_fiber_dim_examples():
    d2 = nilpotent_datum(2)
    assert fiber_dim(d2, 0, 0, (0, 1)) == 1
    assert fiber_dim(d2, 0, 0, (1, 0)) == 0
    fp = fixed_point_datum(SemisimplePoint.of((1, 2), 2))
    rich = max(range(2), key=lambda i: len(fp.pieces[i]))
    assert fiber_dim(fp, rich, rich, (0, 1)) == 1


def test_fiber_dim_requires_group_membership():
    fp = fixed_point_datum(SemisimplePoint.of((1, 2), 2))
    with pytest.raises(InputError):
        fiber_dim(fp, 0, 0, (1, 0))  # W(s) is trivial here


def test_fiber_dim_transposition_symmetry():
    for datum in [
        nilpotent_datum(3),
        fixed_point_datum(SemisimplePoint.of((1, 1, 2), 2)),
        fixed_point_datum(SemisimplePoint.of((3, 3), 5)),
    ]:
        n = datum.n
        for w in datum.group.elements:
            winv = tuple(sorted(range(n), key=lambda i: w[i]))
            for i in range(datum.piece_count):
                for j in range(datum.piece_count):
                    assert fiber_dim(datum, i, j, w) == fiber_dim(datum, j, i, winv)


def test_nilpotent_fiber_is_coinversion_count():
    d = nilpotent_datum(3)
    big_n = 3
    from heckespringer.combinat import symmetric_group

    for w in symmetric_group(3).elements:
        assert fiber_dim(d, 0, 0, w.perm) == big_n - w.length


def test_cell_inventory_rank_two():
    d2 = nilpotent_datum(2)
    cells, poincare = cell_inventory_and_poincare(d2, 0, 0)
    assert sorted(c.dim for c in cells) == [1, 1, 2, 2]
    assert poincare == {1: 2, 2: 2}


def test_cell_inventory_rank_three_closed_form():
    d3 = nilpotent_datum(3)
    _, poincare = cell_inventory_and_poincare(d3, 0, 0)
    assert poincare == {3: 6, 4: 12, 5: 12, 6: 6}
    assert sum(poincare.values()) == 36


def test_point_datum_single_cell():
    _, poincare = cell_inventory_and_poincare(nilpotent_datum(1), 0, 0)
    assert poincare == {0: 1}


def test_full_inventory_counts():
    d = fixed_point_datum(SemisimplePoint.of((1, 1, 2), 2))
    inv = full_inventory(d)
    per_pair = len(d.group) ** 2
    assert len(inv.cells) == d.piece_count ** 2 * per_pair
    assert all(len(v) == per_pair for v in inv.per_pair.values())


# ---------------------------------------------------------------------------
# Ext tables
# ---------------------------------------------------------------------------

def test_ext_nilpotent_examples():
    t2 = ext_graded_dims(nilpotent_datum(2))
    assert t2.hom_dims(0, 0) == {0: 2, 2: 2}
    t3 = ext_graded_dims(nilpotent_datum(3))
    assert t3.hom_dims(0, 0) == {0: 6, 2: 12, 4: 12, 6: 6}
    assert t3.hom_dims(0, 0)[0] == 6  # degree-zero count is |W|


def test_ext_fixed_point_example():
    t = ext_graded_dims(fixed_point_datum(SemisimplePoint.of((1, 2), 2)))
    assert t.graded_totals() == {0: 2, 1: 2}
    assert t.total == 4
    assert t.is_symmetric() and t.nonnegative_degrees() and t.max_degree_ok()


def test_ext_degenerate_case_has_negative_degree():
    # s=(7,7): the flag-variety Steinberg of GL_2; enumeration gives a class
    # in degree -2, so the nonnegativity flag reports False while the total
    # still matches the algebraic side
    t = ext_graded_dims(fixed_point_datum(SemisimplePoint.of((7, 7), 3)))
    assert t.graded_totals() == {-2: 1, 0: 2, 2: 1}
    assert t.total == 4
    assert not t.nonnegative_degrees()
    assert t.max_degree_ok()


def test_ext_symmetry_on_mixed_datum():
    t = ext_graded_dims(fixed_point_datum(SemisimplePoint.of((1, 1, 2), 2)))
    assert t.is_symmetric()


def test_kernel_totals_match_python_table():
    data = [
        nilpotent_datum(2),
        nilpotent_datum(4),
        fixed_point_datum(SemisimplePoint.of((1, 2), 2)),
        fixed_point_datum(SemisimplePoint.of((7, 7), 3)),
        fixed_point_datum(SemisimplePoint.of((1, 2, 4), 2)),
        fixed_point_datum(SemisimplePoint.of((1, 1, 2, 2), 3)),
    ]
    for d in data:
        assert ext_graded_totals(d) == ext_graded_dims(d).graded_totals()


# ---------------------------------------------------------------------------
# Frobenius weights
# ---------------------------------------------------------------------------

def test_frobenius_weight_examples():
    d2 = nilpotent_datum(2)
    point = SemisimplePoint.of((1, 1), 4, 2)
    report = frobenius_weight_table(d2, point)
    assert report.all_consistent
    by_dim = {row.cell_dim: row for row in report.rows}
    assert by_dim[2].homology_weight == Fraction(1, 16)
    assert by_dim[2].ext_degree == 0 and by_dim[2].ext_weight == 1
    assert by_dim[1].ext_degree == 2 and by_dim[1].ext_weight == 4


def test_frobenius_identity_trivial_cell():
    report = frobenius_weight_table(nilpotent_datum(1), SemisimplePoint.of((1,), 4, 2))
    (row,) = report.rows
    assert row.cell_dim == 0 and row.homology_weight == 1 and row.ext_weight == 1


def test_frobenius_requires_sqrt_when_odd():
    d = fixed_point_datum(SemisimplePoint.of((1, 2), 2))  # dims (0, 1): odd sums
    with pytest.raises(InputError):
        frobenius_weight_table(d, SemisimplePoint.of((1, 2), 4))
    report = frobenius_weight_table(d, SemisimplePoint.of((1, 2), 4, 2))
    assert report.all_consistent


def test_frobenius_without_sqrt_on_even_data():
    report = frobenius_weight_table(nilpotent_datum(2), SemisimplePoint.of((1, 1), 4))
    assert report.all_consistent


# ---------------------------------------------------------------------------
# the cross-check
# ---------------------------------------------------------------------------

def test_dlc_regular_rank_two():
    report = dlc_report(SemisimplePoint.of((1, 2), 2))
    assert report.geometric_total == 4 and report.algebraic_total == 4
    assert report.equal and report.kernel_totals_agree and report.b_stable
    assert report.geometric_graded == {0: 2, 1: 2}
    assert report.component_count == 2 and report.subgroup_order == 1


def test_dlc_regular_rank_three():
    report = dlc_report(SemisimplePoint.of((1, 2, 4), 2))
    assert report.geometric_total == 36 and report.algebraic_total == 36
    assert report.equal


def test_dlc_degenerate_point():
    report = dlc_report(SemisimplePoint.of((7, 7), 3))
    assert report.geometric_total == 4 and report.algebraic_total == 4
    assert report.equal
    assert report.component_count == 1 and report.subgroup_order == 2


def test_dlc_with_weights():
    report = dlc_report(SemisimplePoint.of((1, 4), 4, 2))
    assert report.equal
    assert report.frobenius is not None and report.frobenius.all_consistent


def test_dlc_cell_count_identity():
    # |J|^2 |W(s)|^2 = |W|^2 independently of the Hecke side
    for s, q0 in [((1, 2), 2), ((1, 1, 2), 3), ((2, 2), 7)]:
        report = dlc_report(SemisimplePoint.of(s, q0))
        n = len(s)
        assert report.geometric_total == factorial(n) ** 2


def test_report_serialization_is_plain_data():
    import json

    report = dlc_report(SemisimplePoint.of((1, 2), 2))
    encoded = json.dumps(report.to_obj(), sort_keys=True)
    assert "geometric_total" in encoded
