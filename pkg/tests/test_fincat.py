import pytest
from hypothesis import given, settings, strategies as st

from profcalc.fincat import (
    EndpointMismatch,
    FinCat,
    FinFn,
    FinSet,
    Functor,
    NatTrans,
    NonInvertible,
    TwoCell,
    functor_compose,
    identity_functor,
    label_key,
    opposite,
    product,
    twocell_invert,
    twocell_vcompose,
    twocell_whisker_left,
    twocell_whisker_right,
    validate_category,
)
from profcalc.seeds import (
    all_functors,
    arrow_category,
    discrete,
    fork,
    parallel_pair,
    seed_library,
    sym3_category,
    terminal_category,
)

SEEDS = seed_library()


def test_finset_is_canonically_ordered():
    s = FinSet(["b", "a", "c"])
    assert s.elements == ("a", "b", "c")
    t = FinSet([("x", 1), 3, "a"])
    assert t.elements == (3, "a", ("x", 1))


def test_finset_rejects_duplicates():
    with pytest.raises(ValueError):
        FinSet(["a", "a"])


def test_finfn_totality_and_codomain():
    s, t = FinSet([0, 1]), FinSet(["x"])
    with pytest.raises(ValueError):
        FinFn(s, t, {0: "x"})
    with pytest.raises(ValueError):
        FinFn(s, t, {0: "x", 1: "y"})
    fn = FinFn(s, t, {0: "x", 1: "x"})
    assert fn(0) == "x"


def test_finfn_inverse():
    s = FinSet([0, 1])
    swap = FinFn(s, s, {0: 1, 1: 0})
    assert swap.inverse() == swap
    collapse = FinFn(s, s, {0: 0, 1: 0})
    with pytest.raises(NonInvertible):
        collapse.inverse()


def test_terminal_category_valid():
    assert validate_category(terminal_category()).ok


def test_sigma2_monoid_valid():
    from profcalc.seeds import cyclic_group_category

    assert validate_category(cyclic_group_category(2)).ok


def test_corrupted_fork_names_offending_triple():
    cat = fork()
    comp = dict(cat.comp)
    comp[("u", "i")] = "w"
    comp[("v", "i")] = "w"
    # break associativity indirectly: reroute id_y . w
    comp[("id_y", "w")] = "w"
    comp[("u", "id_x")] = "v"  # wrong unit
    broken = FinCat(cat.objects, cat.hom, cat.ids, comp)
    report = validate_category(broken)
    assert not report.ok
    assert any("'u'" in v for v in report.violations)


@pytest.mark.parametrize("name", list(SEEDS))
def test_seed_library_valid(name):
    assert validate_category(SEEDS[name]).ok


def test_opposite_terminal_is_itself():
    cat = terminal_category()
    assert opposite(cat) == cat


def test_opposite_reverses_arrow():
    cat = arrow_category()
    op = opposite(cat)
    assert len(op.hom[("1", "0")]) == 1
    assert len(op.hom[("0", "1")]) == 0


@pytest.mark.parametrize("name", ["fork", "parallel_pair", "chain2", "S3"])
def test_opposite_involution_label_exact(name):
    cat = SEEDS[name]
    assert opposite(opposite(cat)) == cat
    assert validate_category(opposite(cat)).ok


def test_product_with_terminal():
    cat = arrow_category()
    prod = product(cat, terminal_category())
    assert len(prod.objects) == len(cat.objects)
    assert sum(1 for _ in prod.morphisms()) == sum(1 for _ in cat.morphisms())


def test_product_counts():
    prod = product(discrete(2), discrete(3))
    assert len(prod.objects) == 6
    arrow = arrow_category()
    assert sum(1 for _ in product(arrow, arrow).morphisms()) == 9


@pytest.mark.parametrize("a,b", [("arrow", "fork"), ("parallel_pair", "Z2")])
def test_opposite_commutes_with_product(a, b):
    ca, cb = SEEDS[a], SEEDS[b]
    assert opposite(product(ca, cb)) == product(opposite(ca), opposite(cb))


def test_identity_functor_laws():
    cat = fork()
    functors = all_functors(cat, arrow_category())
    ident = identity_functor(cat)
    for fun in functors[:3]:
        assert functor_compose(fun, ident) == fun


def test_constant_functor_composition():
    cat = parallel_pair()
    consts = [f for f in all_functors(cat, fork()) if len(set(f.obj_map.values())) == 1]
    other = all_functors(fork(), arrow_category())[0]
    for c in consts:
        comp = functor_compose(other, c)
        assert len(set(comp.obj_map.values())) == 1


def test_functor_composite_revalidated_on_fork():
    f = all_functors(fork(), parallel_pair())[1]
    g = all_functors(parallel_pair(), arrow_category())[1]
    comp = functor_compose(g, f)
    # re-run the functor laws explicitly
    from profcalc.fincat import functor_violations

    assert functor_violations(comp) == []


def test_functor_endpoint_mismatch():
    f = all_functors(fork(), parallel_pair())[0]
    with pytest.raises(EndpointMismatch):
        functor_compose(f, f)


def test_nat_trans_naturality_enforced():
    cat = parallel_pair()
    fs = all_functors(cat, cat)
    ident = identity_functor(cat)
    # the identity transformation always works
    NatTrans(ident, ident, {a: cat.id_of(a) for a in cat.objects})
    with pytest.raises(ValueError):
        NatTrans(ident, ident, {"a": "id_a", "b": "u"})


# -- two-cell algebra --------------------------------------------------------


def _cell(mapping_by_key):
    comps = {}
    for key, (dom, cod, table) in mapping_by_key.items():
        comps[key] = FinFn(FinSet(dom), FinSet(cod), table)
    return TwoCell(comps)


def test_invert_identity_cell():
    cell = _cell({"k": ([0, 1], [0, 1], {0: 0, 1: 1})})
    assert twocell_invert(cell) == cell


def test_vcompose_inverse_law():
    cell = _cell({"k": ([0, 1], [0, 1], {0: 1, 1: 0})})
    composed = twocell_vcompose(twocell_invert(cell), cell)
    assert composed == _cell({"k": ([0, 1], [0, 1], {0: 0, 1: 1})})


def test_invert_names_bad_component():
    cell = _cell({"bad": ([0, 1], [0, 1], {0: 0, 1: 0})})
    with pytest.raises(NonInvertible) as err:
        twocell_invert(cell)
    assert "bad" in str(err.value)


def test_whisker_right_matches_elementwise_oracle():
    # a 2-component cell reindexed along a functor with 3 source objects
    cell = _cell(
        {
            "a": ([0, 1], ["x", "y"], {0: "x", 1: "y"}),
            "b": ([2], ["z"], {2: "z"}),
        }
    )
    reindex = {"p": "a", "q": "a", "r": "b"}
    whiskered = twocell_whisker_right(cell, lambda k: reindex[k], ["p", "q", "r"])
    for key in ["p", "q", "r"]:
        expected = cell.components[reindex[key]]
        assert whiskered.components[key] == expected


def test_whisker_left_applies_operation():
    cell = _cell({"k": ([0, 1], [0, 1], {0: 1, 1: 0})})
    post = FinFn(FinSet([0, 1]), FinSet(["even", "odd"]), {0: "even", 1: "odd"})
    out = twocell_whisker_left(lambda fn: fn.then(post), cell)
    assert out.components["k"](0) == "odd"


@st.composite
def random_cells(draw):
    size = draw(st.integers(min_value=0, max_value=3))
    dom = list(range(size))
    table1 = {i: draw(st.integers(min_value=0, max_value=2)) for i in dom}
    table2 = {i: draw(st.integers(min_value=0, max_value=2)) for i in range(3)}
    table3 = {i: draw(st.integers(min_value=0, max_value=2)) for i in range(3)}
    rng = FinSet([0, 1, 2])
    a = TwoCell({"k": FinFn(FinSet(dom), rng, table1)})
    b = TwoCell({"k": FinFn(rng, rng, table2)})
    c = TwoCell({"k": FinFn(rng, rng, table3)})
    return a, b, c


@settings(max_examples=40, deadline=None)
@given(random_cells())
def test_vcompose_associative_and_unital(cells):
    a, b, c = cells
    left = twocell_vcompose(c, twocell_vcompose(b, a))
    right = twocell_vcompose(twocell_vcompose(c, b), a)
    assert left == right
    ident = TwoCell({"k": FinFn.identity(a.components["k"].codomain)})
    assert twocell_vcompose(ident, a) == a
    ident_dom = TwoCell({"k": FinFn.identity(a.components["k"].domain)})
    assert twocell_vcompose(a, ident_dom) == a


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(sorted(SEEDS)))
def test_all_composable_scans_pass_on_seeds(name):
    cat = SEEDS[name]
    report = validate_category(cat)
    assert report.ok
