import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import independent_set_dim, kernel_dim_of_matrix_map, monomials_upto
from rdimlab.commalg import (
    ZERO_MODULE,
    FPModule,
    RegularSequenceFailure,
    RingPresentation,
    annihilator,
    find_regular_sequence,
    fitting_ideal_0,
    in_radical,
    is_nonzerodivisor,
    koszul_depth,
    krull_dim_ideal,
    module_dim,
    module_from_json,
    ring_from_json,
    trial_budget,
    verify_regular_sequence,
)
from rdimlab.errors import InputError, NotFound
from rdimlab.exactpoly import DEGREVLEX, buchberger, ideal_contains


def ring(vars_, rels=()):
    return RingPresentation.from_strings(vars_, rels)


def same_ideal(a, b, R):
    pr = R.poly_ring
    ga = list(a) + list(R.relations)
    gb = list(b) + list(R.relations)
    A = buchberger(ga, DEGREVLEX, pr)
    B = buchberger(gb, DEGREVLEX, pr)
    return all(B.contains(f) for f in ga) and all(A.contains(f) for f in gb)


KXY = ring(["x", "y"])
KXY_XY = ring(["x", "y"], ["x*y"])


# Krull dimension ----------------------------------------------------------

@pytest.mark.parametrize(
    "vars_, rels, expected",
    [
        (["x", "y"], [], 2),
        (["x", "y"], ["x*y"], 1),
        (["x", "t"], ["x*t - 1"], 1),
        (["x", "y", "z"], ["x^2", "y*z"], 1),
    ],
)
def test_krull_dim_examples(vars_, rels, expected):
    rep = krull_dim_ideal(ring(vars_, rels))
    assert rep.dimension == expected
    assert len(rep.witness_independent_set) == expected


def test_unit_ideal_is_zero_module():
    assert krull_dim_ideal(ring(["x"], ["x", "x - 1"])).dimension is ZERO_MODULE


@pytest.mark.parametrize("n", range(1, 7))
def test_polynomial_ring_dimension(n):
    assert krull_dim_ideal(ring([f"x{i}" for i in range(n)])).dimension == n


_mono = st.lists(st.integers(0, 2), min_size=4, max_size=4).filter(any).map(tuple)


@given(st.lists(_mono, min_size=1, max_size=4))
def test_krull_matches_subset_enumeration(monos):
    R = RingPresentation(
        ring(["a", "b", "c", "d"]).poly_ring,
        [ring(["a", "b", "c", "d"]).poly_ring.monomial(e) for e in monos],
    )
    assert krull_dim_ideal(R).dimension == independent_set_dim(4, monos)


# Fitting ideal and annihilator -------------------------------------------

def test_fitting_examples():
    assert fitting_ideal_0(FPModule.free(KXY)) == []
    R = KXY
    assert same_ideal(fitting_ideal_0(FPModule.from_strings(R, 1, [["x"]])), [R.element("x")], R)
    M = FPModule.from_strings(R, 2, [["x", "0"], ["y", "x"]])
    assert same_ideal(fitting_ideal_0(M), [R.element("x^2")], R)


def test_annihilator_examples():
    R = KXY
    assert same_ideal(annihilator(FPModule.from_strings(R, 1, [["x"]])), [R.element("x")], R)
    assert same_ideal(annihilator(FPModule.from_strings(R, 2, [["0", "x"]])), [], R)
    M = FPModule.from_strings(R, 2, [["x", "0"], ["0", "x^2"]])
    assert same_ideal(annihilator(M), [R.element("x^2")], R)


def test_module_dim_examples():
    R3 = ring(["x1", "x2", "x3"])
    assert module_dim(FPModule.free(R3)).dimension == 3
    zero = FPModule.from_strings(KXY, 1, [["1"]])
    assert module_dim(zero).dimension is ZERO_MODULE
    even_sphere = FPModule.free(ring(["x"]), 2)
    assert module_dim(even_sphere).dimension == 1
    assert module_dim(even_sphere, "annihilator").dimension == 1


def test_module_dim_rejects_unknown_method():
    with pytest.raises(InputError):
        module_dim(FPModule.free(KXY), "bogus")


# nonzerodivisors and regular sequences -----------------------------------

def test_nonzerodivisor_examples():
    kx = ring(["x"])
    assert is_nonzerodivisor("x", FPModule.free(kx)).regular
    res = is_nonzerodivisor("x", FPModule.from_strings(kx, 1, [["x"]]))
    assert not res.regular
    assert [str(c) for c in res.witness] == ["1"]
    assert is_nonzerodivisor("x + y", FPModule.free(KXY_XY)).regular
    assert not is_nonzerodivisor("x", FPModule.free(KXY_XY)).regular


def test_x_plus_y_is_regular_mod_xy_by_linear_algebra():
    # pairs (f, q) of degree <= 4 with (x + y) f = x y q; if x + y is regular
    # mod xy these are exactly f = x y r, q = (x + y) r with deg r <= 2
    matrix = [[{(1, 0): 1, (0, 1): 1}, {(1, 1): -1}]]
    assert kernel_dim_of_matrix_map(matrix, 2, 4) == len(monomials_upto(2, 2))


def test_regular_sequence_examples():
    M = FPModule.free(KXY)
    assert len(verify_regular_sequence(["x", "y"], M)) == 2
    with pytest.raises(RegularSequenceFailure) as err:
        verify_regular_sequence(["x", "x"], M)
    assert err.value.index == 2
    assert len(verify_regular_sequence(["x^2", "y^3"], M)) == 2


def test_improper_sequence_fails():
    with pytest.raises(RegularSequenceFailure) as err:
        verify_regular_sequence(["x - 1"], FPModule.from_strings(KXY, 1, [["x"]]))
    assert err.value.index == 1
    assert "improper" in err.value.reason


def test_certificate_replays():
    cert = verify_regular_sequence(["x", "y"], FPModule.free(KXY))
    assert cert.replay()
    assert cert.to_dict()["elements"] == ["x", "y"]


def test_find_regular_sequence_examples():
    assert [str(e) for e in find_regular_sequence(FPModule.free(KXY), 2).elements] == ["x", "y"]
    assert [str(e) for e in find_regular_sequence(FPModule.free(KXY_XY), 1).elements] == ["x + y"]
    assert [str(e) for e in find_regular_sequence(FPModule.free(ring(["x"]), 2), 1).elements] == ["x"]


def test_find_regular_sequence_budget(monkeypatch):
    with pytest.raises(NotFound):
        find_regular_sequence(FPModule.free(KXY_XY), 1, budget=1)
    monkeypatch.setenv("RDIMLAB_TRIAL_BUDGET", "1")
    assert trial_budget() == 1
    with pytest.raises(NotFound):
        find_regular_sequence(FPModule.free(KXY_XY), 1)
    monkeypatch.setenv("RDIMLAB_TRIAL_BUDGET", "nope")
    with pytest.raises(InputError):
        trial_budget()


def test_koszul_depth_examples():
    assert koszul_depth(["x", "y"], FPModule.free(KXY)) == 2
    kx = ring(["x"])
    assert koszul_depth(["x"], FPModule.from_strings(kx, 1, [["x"]])) == 0
    assert koszul_depth(["x", "y"], FPModule.free(KXY_XY)) == 1


def test_koszul_depth_rejects_unit_ideal():
    with pytest.raises(InputError):
        koszul_depth(["x - 1", "x"], FPModule.free(KXY))


def test_json_round_trip():
    M = module_from_json({"ring": {"variables": ["x", "y"], "relations": ["x*y"]}, "free_rank": 2, "relations": [["x", "y"]]})
    assert M.free_rank == 2 and len(M.relations) == 1
    with pytest.raises(InputError):
        ring_from_json({"variables": ["1x"]})
    with pytest.raises(InputError):
        module_from_json({"ring": {"variables": ["x"]}, "free_rank": 2, "relations": [["x"]]})


# properties on small random instances -------------------------------------

_vars3 = ["x", "y", "z"]
_mono3 = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 1)).filter(lambda e: 0 < sum(e) <= 3)
_linear = st.sampled_from(["x", "y", "z", "x + y", "y - z", "x + z", "x + y + z"])


def _ring3(monos):
    pr = ring(_vars3).poly_ring
    return RingPresentation(pr, [pr.monomial(e) for e in monos])


@given(st.lists(_mono3, max_size=2), st.lists(_linear, min_size=1, max_size=2, unique=True))
@settings(max_examples=25)
def test_power_invariance(monos, xs):
    M = FPModule.free(_ring3(monos))
    if M.is_zero():
        return

    def ok(seq):
        try:
            verify_regular_sequence(seq, M)
            return True
        except RegularSequenceFailure:
            return False

    assert ok(xs) == ok([f"({x})^2" for x in xs])


_col = st.lists(st.sampled_from(["0", "x", "y", "x^2", "x*y", "y^2", "x + y"]), min_size=2, max_size=2)


@given(st.lists(_col, max_size=2), st.booleans())
@settings(max_examples=25)
def test_fitting_and_annihilator_agree_up_to_radical(cols, with_relation):
    R = KXY_XY if with_relation else KXY
    M = FPModule.from_strings(R, 2, cols)
    fitt = list(fitting_ideal_0(M))
    ann = list(annihilator(M))
    rels = list(R.relations)
    for f in fitt:
        assert ideal_contains(ann + rels, f) if (ann or rels) else f.is_zero()
    for a in ann:
        assert in_radical(a, fitt + rels)
    assert module_dim(M, "fitting").dimension == module_dim(M, "annihilator").dimension


@given(st.lists(_col, max_size=2), _linear.filter(lambda s: "z" not in s))
@settings(max_examples=25)
def test_dimension_drops_by_at_most_one(cols, x):
    M = FPModule.from_strings(KXY, 2, cols)
    d = module_dim(M).dimension
    if d is ZERO_MODULE:
        return
    q = module_dim(M.quotient_by([x])).dimension
    if q is ZERO_MODULE:
        return
    assert q >= d - 1


@given(st.lists(_mono3, max_size=2))
@settings(max_examples=15)
def test_search_length_bounded_by_depth_and_dimension(monos):
    M = FPModule.free(_ring3(monos))
    if M.is_zero():
        return
    d = module_dim(M).dimension
    if d == 0:
        return
    try:
        cert = find_regular_sequence(M, d)
    except NotFound:
        return
    depth = koszul_depth(list(cert.elements), M)
    assert len(cert) <= depth <= d
