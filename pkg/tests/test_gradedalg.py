import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rdimlab.commalg import ZERO_MODULE, FPModule, RingPresentation, module_dim, verify_regular_sequence
from rdimlab.errors import InputError, VanishingCategory
from rdimlab.gradedalg import (
    AlgebraMorphism,
    Generator,
    GradedPresentation,
    SubringModuleProblem,
    flatten_to_module,
    kunneth_tensor,
    lie_group_rank,
    lower_bound_from_generator,
    preset,
    problem_from_json,
    tensor_problems,
)


def poly(*pairs, relations=()):
    return GradedPresentation.polynomial(list(pairs), relations)


# presentations -------------------------------------------------------------

def test_odd_generators_square_to_zero():
    A = poly(("u", 3), ("v", 2))
    assert A.is_zero(A.parse("u*u"))
    assert not A.is_zero(A.parse("v*v"))
    assert A.is_zero(A.parse("u*v - v*u"))


def test_odd_generators_anticommute():
    A = poly(("a", 1), ("b", 1))
    assert A.is_zero(A.parse("a*b + b*a"))


def test_parity_must_match_degree():
    with pytest.raises(InputError):
        GradedPresentation([Generator("u", 3, "even")])


def test_relations_must_be_parity_homogeneous():
    with pytest.raises(InputError):
        poly(("u", 3), ("v", 2), relations=["u + v"])


def test_kunneth_with_trivial_algebra_is_identity():
    A = poly(("u", 3), ("v", 4))
    assert kunneth_tensor(A, GradedPresentation.trivial()) == A


def test_kunneth_of_polynomial_algebras():
    T = kunneth_tensor(poly(("v1", 2)), poly(("v2", 2)))
    assert T.names == ("v1", "v2")
    assert not T.relation_strings


def test_kunneth_suffixes_clashing_names():
    S = poly(("u", 3), ("v", 4))
    T = kunneth_tensor(S, S)
    assert [(g.name, g.parity) for g in T.generators] == [("u1", "odd"), ("v1", "even"), ("u2", "odd"), ("v2", "even")]


def test_kunneth_rejects_mode_mismatch():
    with pytest.raises(InputError):
        kunneth_tensor(poly(("x", 2)), GradedPresentation.trivial("Z/2"))


# morphisms -----------------------------------------------------------------

def test_morphism_rejects_degree_change():
    with pytest.raises(InputError):
        AlgebraMorphism(poly(("x", 2)), poly(("v", 4)), {"x": "v"})


def test_morphism_rejects_nonzero_relation_image():
    src = poly(("x", 2), relations=["x^2"])
    with pytest.raises(InputError):
        AlgebraMorphism(src, poly(("v", 2)), {"x": "v"})


def test_morphism_accepts_relation_killed_by_exterior_reduction():
    src = poly(("x", 2), relations=["x^2"])
    tgt = poly(("a", 1), ("b", 1))
    f = AlgebraMorphism(src, tgt, {"x": "a*b"})
    assert tgt.is_zero(f("x^2"))


def test_morphism_requires_every_image():
    with pytest.raises(InputError):
        AlgebraMorphism(poly(("x", 2), ("y", 2)), poly(("v", 2)), {"x": "v"})


# flattening and bounds -----------------------------------------------------

def test_flatten_examples():
    R = RingPresentation.from_strings(["x"])
    M = flatten_to_module(SubringModuleProblem(R, FPModule.free(R)))
    assert M.free_rank == 1 and not M.relations
    odd = flatten_to_module(preset("odd_sphere", {"n": 3}))
    assert odd.free_rank == 1 and odd.is_zero() is False
    even = preset("even_sphere", {"n": 2})
    Me = flatten_to_module(even)
    assert Me.free_rank == 2 and even.generator_labels == ("1", "v")
    assert module_dim(Me).dimension == 1


def test_field_has_dimension_zero():
    R = RingPresentation.from_strings([])
    cert = lower_bound_from_generator(SubringModuleProblem(R, FPModule.free(R)))
    assert cert.lower_bound == 0 and cert.regular_sequence is None


def test_zero_module_is_a_vanishing_category():
    R = RingPresentation.from_strings(["x"])
    prob = SubringModuleProblem(R, FPModule.from_strings(R, 1, [["1"]]))
    with pytest.raises(VanishingCategory):
        lower_bound_from_generator(prob)


@pytest.mark.parametrize(
    "name, params, expected",
    [
        ("torus", {"n": 3}, 3),
        ("lie_group", {"family": "G2"}, 2),
        ("cp", {"n": 3}, 1),
        ("odd_sphere", {"n": 5}, 1),
        ("even_sphere", {"n": 4}, 1),
        ("product", {"factors": [{"preset": "odd_sphere", "params": {"n": 3}}, {"preset": "even_sphere", "params": {"n": 2}}]}, 2),
    ],
)
def test_preset_bounds(name, params, expected):
    cert = lower_bound_from_generator(preset(name, params))
    assert cert.lower_bound == expected
    assert len(cert.regular_sequence) == expected
    assert cert.regular_sequence.replay()


@pytest.mark.parametrize(
    "name, params",
    [
        ("odd_sphere", {"n": 4}),
        ("odd_sphere", {"n": 1}),
        ("even_sphere", {"n": 3}),
        ("torus", {"n": 0}),
        ("lie_group", {"family": "SO", "n": 3}),
        ("lie_group", {"family": "SU", "n": 2}),
        ("product", {"factors": []}),
        ("klein_bottle", {}),
    ],
)
def test_preset_rejects(name, params):
    with pytest.raises(InputError):
        preset(name, params)


@pytest.mark.parametrize(
    "family, n, rank",
    [("Sp", 2, 2), ("Sp", 4, 4), ("SU", 3, 2), ("SU", 5, 4), ("Spin", 7, 3), ("Spin", 8, 4), ("Spin", 9, 4),
     ("G2", None, 2), ("F4", None, 4), ("E6", None, 6), ("E7", None, 7), ("E8", None, 8)],
)
def test_lie_group_rank_table(family, n, rank):
    assert lie_group_rank(family, n) == rank


def test_problem_from_json_forms():
    p = problem_from_json({"preset": "torus", "params": {"n": 2}})
    assert lower_bound_from_generator(p).lower_bound == 2
    p = problem_from_json({
        "subring": {"generators": [{"name": "x", "degree": 2}]},
        "target": {"generators": [{"name": "v", "degree": 1}, {"name": "w", "degree": 2}]},
        "images": {"x": "w"},
    })
    assert lower_bound_from_generator(p).lower_bound == 1
    p = problem_from_json({
        "subring": {"variables": ["x"]},
        "module": {"generators": ["1", "v"], "action": {"x": [["0", "0"], ["0", "0"]]}},
    })
    assert lower_bound_from_generator(p).lower_bound == 0


def test_problem_from_json_rejects_foreign_action():
    with pytest.raises(InputError):
        problem_from_json({"subring": {"variables": ["x"]}, "module": {"free_rank": 1, "action": {"y": [["0"]]}}})
    with pytest.raises(InputError):
        problem_from_json({"subring": {"variables": ["x"]}, "module": {"free_rank": 2, "action": {"x": [["0", "1"], ["w", "0"]]}}})


# properties ----------------------------------------------------------------

_PRESETS = [
    ("odd_sphere", {"n": 3}),
    ("even_sphere", {"n": 2}),
    ("torus", {"n": 1}),
    ("torus", {"n": 2}),
    ("cp", {"n": 1}),
    ("lie_group", {"family": "SU", "n": 3}),
]


@given(st.sampled_from(_PRESETS), st.sampled_from(_PRESETS))
@settings(max_examples=20)
def test_products_add_dimensions(a, b):
    pa, pb = preset(*a), preset(*b)
    both = tensor_problems([pa, pb])
    lb = lambda p: lower_bound_from_generator(p, search=False).lower_bound  # noqa: E731
    assert lb(both) == lb(pa) + lb(pb)


@pytest.mark.parametrize("parities", list(itertools.product(["odd", "even"], repeat=3)))
def test_sphere_products_regular_sequences(parities):
    factors = [{"preset": "odd_sphere", "params": {"n": 3}} if p == "odd" else {"preset": "even_sphere", "params": {"n": 2}} for p in parities]
    prob = preset("product", {"factors": factors})
    cert = lower_bound_from_generator(prob)
    assert cert.lower_bound == 3
    M = flatten_to_module(prob)
    assert len(verify_regular_sequence(list(cert.regular_sequence.elements), M)) == 3
    assert module_dim(M).dimension is not ZERO_MODULE
