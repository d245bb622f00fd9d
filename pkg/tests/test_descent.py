import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rdimlab.descent import (
    DEFAULT,
    SimplicialComplex,
    StratLabeledComplex,
    arboreal_default_bound,
    complex_from_json,
    default_complex,
    descent_upper_bound,
    level_rdim,
    resolution_bound,
    sod_bound,
    star_poset_depth,
)
from rdimlab.errors import InputError
from rdimlab.quivercat import RootedSignedTree

POINT = RootedSignedTree((), 0)


def tetra_boundary() -> SimplicialComplex:
    return SimplicialComplex.closure(4, itertools.combinations(range(4), 3))


def labeled(cx, n, label):
    return StratLabeledComplex(cx, n, {s: label for s in cx.simplices})


def path_tree(k):
    """Path on k vertices rooted at an end."""
    return RootedSignedTree.with_default_signs(tuple((i, i + 1) for i in range(k - 1)), 0)


def star_tree(arms):
    edges = []
    nxt = 1
    for length in arms:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return RootedSignedTree.with_default_signs(tuple(edges), 0)


# complexes -----------------------------------------------------------------

def test_depth_examples():
    assert star_poset_depth(SimplicialComplex(1, ({0},))) == 1
    assert star_poset_depth(SimplicialComplex.closure(3, [(0, 1, 2)])) == 3
    assert star_poset_depth(tetra_boundary()) == 3


def test_missing_face_is_rejected():
    with pytest.raises(InputError):
        SimplicialComplex(3, ({0}, {1}, {0, 1, 2}))


@pytest.mark.parametrize("simplices", [({0}, {0}), ({0}, {5}), (set(),)])
def test_bad_simplices(simplices):
    with pytest.raises(InputError):
        SimplicialComplex(2, simplices)


def test_empty_complex_has_no_depth():
    with pytest.raises(InputError):
        star_poset_depth(SimplicialComplex(0, ()))


def test_components():
    cx = SimplicialComplex.closure(5, [(0, 1), (2, 3, 4)])
    assert cx.components() == [frozenset({0, 1}), frozenset({2, 3, 4})]


# levels and bounds ---------------------------------------------------------

def test_level_rdim_examples():
    cx = tetra_boundary()
    s = labeled(cx, 2, POINT)
    assert [level_rdim(s, lvl) for lvl in (1, 2, 3)] == [0, 0, 0]
    s5 = default_complex(5)
    assert s5.label({0}) == DEFAULT
    assert level_rdim(s5, 1) == 1
    assert level_rdim(s5, 3) == 0
    with pytest.raises(InputError):
        level_rdim(s5, 0)
    with pytest.raises(InputError):
        level_rdim(s5, 7)


def test_zero_section_surface_gives_two():
    rep = descent_upper_bound(labeled(tetra_boundary(), 2, POINT))
    assert rep.depth == 3
    assert rep.per_level_rdim == [0, 0, 0]
    assert rep.bound == 2


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 2), (3, 3), (4, 5), (5, 7), (6, 9), (7, 11), (8, 13)])
def test_default_complexes(n, expected):
    rep = descent_upper_bound(default_complex(n))
    assert rep.bound == expected == arboreal_default_bound(n)
    assert rep.bound == sum(r + 1 for r in rep.per_level_rdim) - 1


def test_report_records_realizers_and_marks_chain_bound_uncertified():
    rep = descent_upper_bound(default_complex(5))
    d = rep.to_dict()
    assert d["realizers"][0] == [0]
    assert d["experimental_chain_bound_certified"] is False
    assert "bound = " in d["trace"][-1]


def test_oversized_label_names_the_simplex():
    cx = SimplicialComplex.closure(2, [(0, 1)])
    labels = {frozenset({0, 1}): path_tree(3)}
    with pytest.raises(InputError) as err:
        StratLabeledComplex(cx, 2, labels)
    assert err.value.location == "simplices/0-1"


def test_simplex_dimension_above_n_is_rejected():
    with pytest.raises(InputError):
        StratLabeledComplex(SimplicialComplex.closure(3, [(0, 1, 2)]), 1)


def test_explicit_non_ade_label_raises_the_level():
    cx = SimplicialComplex(1, ({0},))
    rep = descent_upper_bound(StratLabeledComplex(cx, 6, {frozenset({0}): star_tree((2, 2, 2))}))
    assert rep.bound == 1


def test_disjoint_union_takes_the_max():
    cx = SimplicialComplex.closure(7, [(0, 1, 2), (3, 4, 5, 6)])
    rep = descent_upper_bound(StratLabeledComplex(cx, 3))
    assert rep.bound == 3
    assert len(rep.components) == 2
    assert sorted(c.bound for c in rep.components) == [2, 3]


def test_complex_from_json():
    obj = {
        "n": 2,
        "vertices": 3,
        "simplices": [{"verts": [0, 1, 2], "label": {"edges": [], "root": 0}}],
    }
    with pytest.raises(InputError):
        complex_from_json(obj)
    s = complex_from_json(obj, close_faces=True)
    assert descent_upper_bound(s).bound == 2
    with pytest.raises(InputError):
        complex_from_json({"n": 2, "vertices": 1})


# combinators ---------------------------------------------------------------

def test_sod_bound_examples():
    assert sod_bound([4]) == 4
    assert sod_bound([0, 0]) == 1
    assert sod_bound([1, 2, 0]) == 5
    with pytest.raises(InputError):
        sod_bound([])
    with pytest.raises(InputError):
        sod_bound([-1])


def test_resolution_bound_examples():
    assert [resolution_bound(k) for k in (1, 2, 4)] == [0, 1, 3]
    with pytest.raises(InputError, match="zero category"):
        resolution_bound(0)


# properties ----------------------------------------------------------------

_TREES = [POINT, path_tree(2), path_tree(3), path_tree(5), star_tree((1, 1, 1)), star_tree((2, 2, 2)), star_tree((1, 1, 1, 1))]


def _grow(t: RootedSignedTree) -> RootedSignedTree:
    """Attach one new leaf to the last vertex."""
    verts = t.vertices
    new = max(verts) + 1
    return RootedSignedTree.with_default_signs(t.edges + ((verts[-1], new),), t.root)


_tops = st.lists(st.lists(st.integers(0, 4), min_size=1, max_size=3, unique=True), min_size=1, max_size=4)


@given(_tops, st.data())
@settings(max_examples=40)
def test_bound_is_monotone_in_labels(tops, data):
    n = 8
    cx = SimplicialComplex.closure(5, tops)
    labels = {}
    for s in cx.simplices:
        fits = [t for t in _TREES if t.size - 1 <= n - (len(s) - 1)]
        labels[s] = data.draw(st.sampled_from(fits))
    base = descent_upper_bound(StratLabeledComplex(cx, n, labels)).bound
    target = data.draw(st.sampled_from(list(cx.simplices)))
    bigger = _grow(labels[target])
    if bigger.size - 1 > n - (len(target) - 1):
        return
    labels[target] = bigger
    assert descent_upper_bound(StratLabeledComplex(cx, n, labels)).bound >= base


@given(_tops)
@settings(max_examples=40)
def test_all_ade_labels_give_depth_minus_one(tops):
    cx = SimplicialComplex.closure(5, tops)
    rep = descent_upper_bound(labeled(cx, 3, POINT))
    assert rep.bound == star_poset_depth(cx) - 1


@given(_tops, _tops)
@settings(max_examples=30)
def test_disjoint_union_bound_is_max(a, b):
    shifted = [[v + 5 for v in s] for s in b]
    cx_a = SimplicialComplex.closure(5, a)
    cx_b = SimplicialComplex.closure(10, shifted)
    both = SimplicialComplex.closure(10, a + shifted)
    bound = lambda cx: descent_upper_bound(StratLabeledComplex(cx, 6)).bound  # noqa: E731
    assert bound(both) == max(bound(cx_a), bound(cx_b))


@given(_tops, st.data())
@settings(max_examples=30)
def test_dropping_a_face_is_rejected(tops, data):
    cx = SimplicialComplex.closure(5, tops)
    tops_only = [s for s in cx.simplices if len(s) > 1]
    if not tops_only:
        return
    big = data.draw(st.sampled_from(tops_only))
    face = data.draw(st.sampled_from([f for f in cx.simplices if f < big]))
    with pytest.raises(InputError):
        SimplicialComplex(5, tuple(s for s in cx.simplices if s != face))


@pytest.mark.parametrize("k", range(1, 11))
def test_exceptional_collections_and_resolutions(k):
    assert sod_bound([0] * k) == k - 1
    assert resolution_bound(k) == k - 1
