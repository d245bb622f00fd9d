import itertools
import json
import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rdimlab.errors import InputError
from rdimlab.quivercat import (
    UNREACHED,
    IntervalObject,
    Quiver,
    RootedSignedTree,
    all_intervals,
    an_hom_total,
    brute_force_generation_time,
    brute_force_hom_tables,
    dynkin_classify,
    ext1_interval,
    full_generator,
    generation_time,
    generation_witness,
    hom_interval,
    path_quiver,
    projective_generator,
    quiver_from_json,
    quiver_rdim,
    star_quiver,
    tree_from_json,
    tree_to_quiver,
)

DATA = Path(__file__).parent / "data"


def relabel_and_reorient(q: Quiver, rng: random.Random) -> Quiver:
    perm = list(range(1, q.vertex_count + 1))
    rng.shuffle(perm)
    arrows = []
    for a, b in q.arrows:
        a, b = perm[a - 1], perm[b - 1]
        arrows.append((a, b) if rng.random() < 0.5 else (b, a))
    rng.shuffle(arrows)
    return Quiver(q.vertex_count, tuple(arrows))


# classification ------------------------------------------------------------

@pytest.mark.parametrize(
    "q, kind",
    [
        (path_quiver(1), "A1"),
        (path_quiver(4), "A4"),
        (Quiver(4, ((2, 1), (2, 3), (4, 3))), "A4"),
        (star_quiver((1, 1, 2)), "D5"),
        (star_quiver((1, 1, 1)), "D4"),
        (star_quiver((1, 2, 2)), "E6"),
        (star_quiver((1, 2, 3)), "E7"),
        (star_quiver((1, 2, 4)), "E8"),
        (star_quiver((2, 2, 2)), "NonDynkin"),
        (star_quiver((1, 1, 1, 1)), "NonDynkin"),
        (star_quiver((1, 3, 3)), "NonDynkin"),
        (star_quiver((1, 2, 5)), "NonDynkin"),
        (Quiver(6, ((1, 3), (2, 3), (3, 4), (4, 5), (4, 6))), "NonDynkin"),
    ],
)
def test_dynkin_classify(q, kind):
    assert dynkin_classify(q) == kind
    assert quiver_rdim(q) == (0 if kind != "NonDynkin" else 1)


@pytest.mark.parametrize(
    "vertices, arrows",
    [
        (3, ((1, 2), (2, 3), (3, 1))),
        (2, ((1, 1),)),
        (2, ((1, 2), (2, 1))),
        (4, ((1, 2), (3, 4))),
        (2, ((1, 3),)),
        (0, ()),
    ],
)
def test_invalid_quivers(vertices, arrows):
    with pytest.raises(InputError):
        Quiver(vertices, arrows)


def test_quiver_from_json():
    q = quiver_from_json({"vertices": 3, "arrows": [[1, 2], [3, 2]]})
    assert dynkin_classify(q) == "A3"
    with pytest.raises(InputError):
        quiver_from_json({"arrows": []})


_SHAPES = [path_quiver(5), star_quiver((1, 1, 3)), star_quiver((1, 2, 3)), star_quiver((2, 2, 2)), star_quiver((1, 1, 1, 1)),
           Quiver(7, ((1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (5, 7)))]


@given(st.sampled_from(_SHAPES), st.integers(0, 10**6))
@settings(max_examples=60)
def test_rdim_invariant_under_relabeling_and_reorientation(q, seed):
    q2 = relabel_and_reorient(q, random.Random(seed))
    assert dynkin_classify(q2) == dynkin_classify(q)
    assert quiver_rdim(q2) == quiver_rdim(q)


# trees ----------------------------------------------------------------------

def test_tree_to_quiver_examples():
    q = tree_to_quiver(RootedSignedTree.with_default_signs(((1, 2),), 2))
    assert q.arrows == ((1, 2),)
    q = tree_to_quiver(RootedSignedTree.with_default_signs(((1, 2), (2, 3)), 2))
    assert set(q.arrows) == {(1, 2), (3, 2)}
    edges = ((0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6))
    star = RootedSignedTree.with_default_signs(edges, 0)
    assert dynkin_classify(tree_to_quiver(star)) == "NonDynkin"
    assert quiver_rdim(tree_to_quiver(star)) == 1


def test_signs_do_not_change_the_quiver():
    edges = ((1, 2), (2, 3), (3, 4))
    a = RootedSignedTree(edges, 1, {"2-3": "+", "3-4": "+"})
    b = RootedSignedTree(edges, 1, {"2-3": "-", "3-4": "+"})
    assert tree_to_quiver(a) == tree_to_quiver(b)


def test_all_arrows_point_toward_the_root():
    t = RootedSignedTree.with_default_signs(((1, 2), (2, 3), (2, 4), (4, 5)), 3)
    q = tree_to_quiver(t)
    out_deg = {v: 0 for v in range(1, 6)}
    for a, _ in q.arrows:
        out_deg[a] += 1
    assert out_deg[3] == 0
    assert all(out_deg[v] == 1 for v in (1, 2, 4, 5))


@pytest.mark.parametrize(
    "obj",
    [
        {"edges": [[1, 2], [2, 3]], "root": 1, "signs": {}},
        {"edges": [[1, 2], [2, 3]], "root": 1, "signs": {"1-2": "+", "2-3": "+"}},
        {"edges": [[1, 2], [2, 3]], "root": 1, "signs": {"2-3": "0"}},
        {"edges": [[1, 2], [2, 3], [3, 1]], "root": 1, "signs": {}},
        {"edges": [[1, 2]]},
    ],
)
def test_tree_validation(obj):
    with pytest.raises(InputError):
        tree_from_json(obj)


# Hom tables -----------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_closed_form_hom_ext_match_representations(n):
    table = brute_force_hom_tables(n)
    for (a, b, c, d), (h, e) in table.items():
        assert hom_interval(a, b, c, d) == h, (a, b, c, d)
        assert ext1_interval(a, b, c, d) == e, (a, b, c, d)


def test_an_hom_total_examples():
    S1 = IntervalObject.of(1, (1, 1, 0))
    assert an_hom_total(S1, S1) == 1
    table = brute_force_hom_tables(2)
    x = IntervalObject.of(2, (1, 1))
    y = IntervalObject.of(2, (2, 2))
    assert an_hom_total(x, y, all_shifts=True) == sum(table[(1, 1, 2, 2)])
    x = IntervalObject.of(2, (1, 2))
    y = IntervalObject.of(2, (1, 1))
    assert an_hom_total(x, y) == table[(1, 2, 1, 1)][0]
    with pytest.raises(InputError):
        an_hom_total(S1, IntervalObject.of(2, (1, 1)))


def test_shifted_hom_uses_relative_shift():
    x = IntervalObject.of(2, (1, 1, 0))
    y = IntervalObject.of(2, (2, 2, 1))
    assert an_hom_total(x, y) == ext1_interval(1, 1, 2, 2)


# generation times -----------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3])
def test_full_generator_reaches_everything_at_level_one(n):
    times = generation_time(full_generator(n))
    assert set(times.values()) == {1}
    assert generation_witness(times) == 0


def test_projectives_of_a2_reach_the_simple_at_level_two():
    times = generation_time(projective_generator(2))
    assert times[(1, 1)] == 2
    assert times[(1, 2)] == times[(2, 2)] == 1


def test_unreached_is_reported():
    times = generation_time(IntervalObject.of(3, (2, 2)), max_level=3)
    assert times[(1, 1)] == UNREACHED
    assert generation_witness(times) == UNREACHED


def test_generation_time_rejects_empty_generator():
    with pytest.raises(InputError):
        generation_time(IntervalObject(2, ()))


def _frozen_cases():
    data = json.loads((DATA / "an_brute_levels.json").read_text())
    return data["cases"]


def test_closed_form_matches_frozen_brute_force_table():
    cases = _frozen_cases()
    assert len(cases) == 1 + 7 + 63
    for case in cases:
        gen = IntervalObject(case["n"], tuple(tuple(iv) for iv in case["generator"]))
        ours = generation_time(gen, max_level=4)
        want = {(i, j): v for i, j, v in case["levels"]}
        assert ours == want, case["generator"]


@pytest.mark.parametrize("sub", [s for k in (1, 2, 3) for s in itertools.combinations(all_intervals(2), k)])
def test_closed_form_matches_live_brute_force_on_a2(sub):
    gen = IntervalObject(2, sub)
    assert generation_time(gen, max_level=4) == brute_force_generation_time(gen, max_level=4)


@pytest.mark.parametrize("sub", [((1, 2), (1, 3), (2, 2)), ((1, 3), (2, 3), (3, 3))])
def test_closed_form_matches_live_brute_force_on_a3_sample(sub):
    gen = IntervalObject(3, sub)
    assert generation_time(gen, max_level=4) == brute_force_generation_time(gen, max_level=4)


_gen3 = st.lists(st.sampled_from(all_intervals(3)), min_size=1, max_size=3, unique=True)


def _le(a, b):
    if b == UNREACHED:
        return True
    return a != UNREACHED and a <= b


@given(_gen3, _gen3)
@settings(max_examples=50)
def test_levels_are_monotone_in_the_generator(g, h):
    G = IntervalObject(3, tuple(g))
    GH = IntervalObject(3, tuple(g + h))
    tg = generation_time(G, max_level=5)
    tgh = generation_time(GH, max_level=5)
    assert all(_le(tgh[iv], tg[iv]) for iv in all_intervals(3))


@given(_gen3, st.integers(1, 4))
@settings(max_examples=50)
def test_level_sets_are_nested(g, m):
    G = IntervalObject(3, tuple(g))
    short = generation_time(G, max_level=m)
    long = generation_time(G, max_level=m + 1)
    reached_short = {iv for iv, v in short.items() if v != UNREACHED}
    reached_long = {iv for iv, v in long.items() if v != UNREACHED}
    assert reached_short <= reached_long
    assert all(long[iv] == short[iv] for iv in reached_short)
