"""Hand-built dg-algebras shared between the unit tests and the acceptance
suite. Each builder returns a validated-shape DgAlgebra (validation itself is
exercised in the tests)."""

from fractions import Fraction

from heckespringer.dgformality import DgAlgebra


def exterior_line():
    """{1, x} with x^2 = 0, |x| = 1, zero differential."""
    return DgAlgebra.build([("one", 0), ("x", 1)], "one", products={("x", "x"): {}})


def exterior_line_with_flat_f():
    """Same, with F = id: cohomology in degree 1 has weight 0, breaking purity."""
    return DgAlgebra.build(
        [("one", 0), ("x", 1)],
        "one",
        products={("x", "x"): {}},
        automorphism={"one": {"one": 1}, "x": {"x": 1}},
    )


def acyclic_pair(r=4):
    """{e, a, b} with d(a) = b and F scaling the pair by r: pure, H = <e>."""
    return DgAlgebra.build(
        [("e", 0), ("a", 1), ("b", 2)],
        "e",
        differential={"a": {"b": 1}},
        automorphism={"e": {"e": 1}, "a": {"a": r}, "b": {"b": r}},
    )


def spectral_misfit():
    """Acyclic pair scaled by 3 while r = 4: pure cohomology, F not r-power."""
    return acyclic_pair(r=3)


def pure_zero_differential(r=4):
    """Zero differential, F = r^i on degree i: already formal, diagonal weights.

    Degree 0 is Q x Q (unit plus an idempotent u), degree 2 a square-zero
    bimodule piece: y is supported on the u-component, z on the complement.
    """
    one = Fraction(1)
    return DgAlgebra.build(
        [("one", 0), ("u", 0), ("y", 2), ("z", 2)],
        "one",
        products={
            ("u", "u"): {"u": one},
            ("u", "y"): {"y": one},
            ("y", "u"): {"y": one},
            ("u", "z"): {},
            ("z", "u"): {},
            ("y", "y"): {},
            ("y", "z"): {},
            ("z", "y"): {},
            ("z", "z"): {},
        },
        automorphism={
            "one": {"one": 1},
            "u": {"u": 1},
            "y": {"y": r * r},
            "z": {"z": r * r},
        },
    )


def jordan_block_pair(r=4):
    """Two acyclic pairs with F acting by a Jordan block on each degree:
    exercises generalized (non-semisimple) eigenspaces."""
    return DgAlgebra.build(
        [("e", 0), ("a1", 1), ("a2", 1), ("b1", 2), ("b2", 2)],
        "e",
        differential={"a1": {"b1": 1}, "a2": {"b2": 1}},
        automorphism={
            "e": {"e": 1},
            "a1": {"a1": r},
            "a2": {"a2": r, "a1": 1},
            "b1": {"b1": r},
            "b2": {"b2": r, "b1": 1},
        },
    )


def off_diagonal_tail(r=4):
    """Nontrivial H in degrees 0 and 2 plus an acyclic pair of weight 2 hung
    in degrees 1-2, so B is a proper subspace and the truncation matters."""
    one = Fraction(1)
    return DgAlgebra.build(
        [("one", 0), ("u", 0), ("y", 2), ("z", 2), ("a", 1), ("c", 2)],
        "one",
        products={
            ("u", "u"): {"u": one},
            ("u", "y"): {"y": one},
            ("y", "u"): {"y": one},
        },
        differential={"a": {"c": 1}},
        automorphism={
            "one": {"one": 1},
            "u": {"u": 1},
            "y": {"y": r * r},
            "z": {"z": r * r},
            "a": {"a": r * r},
            "c": {"c": r * r},
        },
    )


def leibniz_violation():
    """u idempotent in degree 0 with d(u) = a but u.a = a.u = 0."""
    return {
        "basis": [
            {"name": "e", "degree": 0},
            {"name": "u", "degree": 0},
            {"name": "a", "degree": 1},
        ],
        "unit": "e",
        "products": [
            ["u", "u", {"u": "1"}],
            ["u", "a", {}],
            ["a", "u", {}],
            ["a", "a", {}],
        ],
        "differential": [["u", {"a": "1"}]],
    }
