import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clarith.bounds.classes import (
    LINEAR, POLY, Boundclass, closure_contains, dominated, parse_boundclass, replay,
    standard_classes,
)
from clarith.bounds.expr import (
    BlowUp, eval_bound, parse_bound, render_bound, syntactic_variation_eq,
    variation_by_search,
)
from clarith.bounds.regularity import (
    DEFAULT_GRID, FALSIFIED, VERIFIED, WITNESSED, broken_triple, check_regularity,
    dds_table, dds_triples, resolve_triple,
)
from clarith.syntax import Add, Fn, Mul, Succ, Var, ZERO
from clarith.syntax.terms import term_vars

B = parse_bound
STD = standard_classes()


def bounds(vars_=("x", "y")):
    leaves = st.one_of(st.sampled_from(vars_).map(Var), st.just(ZERO))
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            sub.map(Succ),
            st.tuples(sub, sub).map(lambda p: Add(*p)),
            st.tuples(sub, sub).map(lambda p: Mul(*p)),
            sub.map(lambda t: Fn("len", (t,))),
            sub.map(lambda t: Fn("pow2", (Fn("len", (t,)),))),
        ),
        max_leaves=5,
    )


# ---------------------------------------------------------------------------
# syntactic variation

@pytest.mark.parametrize("b1, b2, expected", [
    ("y+z", "x+y", True),
    ("z+z", "x+y", True),
    ("x+x", "x+y", True),
    ("x+y", "x+x", False),
    ("|x|", "x", False),
    ("x*y", "x+y", False),
])
def test_syntactic_variation(b1, b2, expected):
    assert syntactic_variation_eq(B(b1), B(b2)) is expected
    assert variation_by_search(B(b1), B(b2)) is expected


@settings(max_examples=200, deadline=None)
@given(bounds(("x", "y", "z")), bounds(("x", "y", "z")))
def test_variation_matches_brute_force(b1, b2):
    assert syntactic_variation_eq(b1, b2) == variation_by_search(b1, b2)


# ---------------------------------------------------------------------------
# evaluation

def test_eval_bound_exact():
    assert eval_bound(B("2^(|x|*|x|)"), {"x": 7}) == 2 ** 9
    assert eval_bound(B("x*x+0'"), {"x": 10**30}) == 10**60 + 1


def test_blow_up_guard():
    with pytest.raises(BlowUp):
        eval_bound(B("2^x"), {"x": 100}, guard=64)


@settings(max_examples=200, deadline=None)
@given(bounds(), st.integers(0, 40), st.integers(0, 40), st.integers(0, 40), st.integers(0, 40))
def test_monotone(b, x1, y1, dx, dy):
    lo = {"x": x1, "y": y1}
    hi = {"x": x1 + dx, "y": y1 + dy}
    try:
        assert eval_bound(b, lo, guard=4096) <= eval_bound(b, hi, guard=4096)
    except BlowUp:
        pass


# ---------------------------------------------------------------------------
# closures

def test_zero_in_linear_closure():
    assert closure_contains(STD["B1^1"], ZERO).found


def test_linear_closure_with_derivation():
    b = B("x+x+0'")
    r = closure_contains(STD["B3"], b)
    assert r.found and syntactic_variation_eq(replay(r.derivation), b)


def test_exponential_not_in_linear_closure():
    r = closure_contains(STD["B3"], B("2^x"), budget=100_000)
    assert not r.found and not r.exhausted


def test_budget_exhaustion_reported():
    r = closure_contains(STD["B3"], B("x+x+x+x+x+x"), budget=3)
    assert not r.found and r.exhausted


def test_product_needs_polynomial_mode():
    assert not closure_contains(STD["B3"], B("x*x")).found
    assert closure_contains(STD["B5"], B("x*x")).found


@settings(max_examples=200, deadline=None)
@given(bounds(), st.sampled_from(sorted(STD)))
def test_linear_closure_inside_polynomial(b, name):
    c = STD[name]
    lin = Boundclass(c.generators, LINEAR)
    poly = Boundclass(c.generators, POLY)
    if closure_contains(lin, b, 300).found:
        assert closure_contains(poly, b, 300).found


@settings(max_examples=200, deadline=None)
@given(bounds(), st.sampled_from(sorted(STD)))
def test_derivations_replay(b, name):
    r = closure_contains(STD[name], b, 300)
    if r.found:
        assert syntactic_variation_eq(replay(r.derivation), b)


# ---------------------------------------------------------------------------
# dominance

def test_identity_below_square():
    assert dominated(B("x"), B("x*x")).holds


def test_square_not_below_identity():
    d = dominated(B("x*x"), B("x"))
    assert not d.holds and d.point == {"x": 2} and d.values == (4, 2)


def test_dominance_unary_against_binary_takes_max():
    assert dominated(B("x"), B("x+y")).holds
    assert not dominated(B("x+y"), B("x")).holds


@settings(max_examples=200, deadline=None)
@given(bounds(), bounds())
def test_falsification_points_are_genuine(b, c):
    assert dominated(b, b, guard=4096).holds
    d = dominated(b, c, grid=(0, 1, 2, 5), guard=4096)
    if not d.holds:
        assert _at(b, d.point) > _at(c, d.point)
        assert d.values == (_at(b, d.point), _at(c, d.point))


def _at(b, point):
    """Value at a sample point; a unary bound over a wider point reads the max."""
    names = sorted(term_vars(b))
    if len(names) == 1 and names[0] not in point:
        point = {names[0]: max(point.values(), default=0)}
    return eval_bound(b, point, guard=4096)


# ---------------------------------------------------------------------------
# standard classes

def test_standard_generators():
    assert (STD["B3"].generators, STD["B3"].mode) == ((Var("x"),), LINEAR)
    assert (STD["B1^1"].generators, STD["B1^1"].mode) == ((B("|x|"),), LINEAR)
    assert [render_bound(g) for g in STD["B6"].generators[:2]] == ["2^|x|", "2^(|x|*|x|)"]
    assert STD["B5"].mode == STD["B2"].mode == POLY


def test_families_truncate_at_index():
    assert len(standard_classes(5)["B8"].generators) == 5


def test_boundclass_literals():
    assert parse_boundclass("linear{x}") == Boundclass((Var("x"),), LINEAR)
    assert parse_boundclass("poly{2^|x|, 2^(|x|*|x|)}").generators == STD["B6"].generators[:2]
    with pytest.raises(ValueError):
        parse_boundclass("cubic{x}")


# ---------------------------------------------------------------------------
# regularity

def test_linear_log_poly_is_regular():
    r = check_regularity(resolve_triple(("B3", "B1^1", "B5")), budget=500)
    assert r.all_verified(), r.render()
    assert r.conditions["dt1"].status == WITNESSED


def test_top_listed_triple_has_no_falsification():
    r = check_regularity(resolve_triple(("B5", "B5", "B8")), budget=500)
    assert r.falsified() == []


def test_linear_time_falsifies_polynomial_closure():
    r = check_regularity(broken_triple(), budget=500, with_agents=False)
    assert r.falsified() == ["dt3"]
    assert r.conditions["dt3"].witness == B("x*x")


def test_space_above_amplitude_not_verified():
    r = check_regularity(resolve_triple(("B3", "B5", "B5")), budget=500, with_agents=False)
    assert r.conditions["dt5"].status not in (VERIFIED, WITNESSED)
    assert "4 > 2" in r.conditions["dt5"].detail


@pytest.mark.parametrize("names", [("B3", "B1^1", "B5"), ("B4", "B4", "B6"), ("B3", "B5", "B5")])
def test_audit_monotone_in_budget(names):
    small = check_regularity(resolve_triple(names), budget=20, with_agents=False)
    big = check_regularity(resolve_triple(names), budget=500, with_agents=False)
    for k, v in small.conditions.items():
        if v.status in (VERIFIED, WITNESSED, FALSIFIED):
            assert big.conditions[k].status == v.status


def test_supplementary_axioms_make_dadm1_inconclusive():
    r = check_regularity(resolve_triple(("B3", "B1^1", "B5")), with_agents=False,
                         supplementary=("call x . cex y . y = x+x",))
    assert r.conditions["dadm1"].status == "inconclusive"


def test_listed_triples():
    triples = dds_triples()
    assert len(triples) == 26 == len(set(triples))
    assert ("B3", "B2", "B5") in triples and ("B5", "B5", "B8") in triples


def test_table_description_row():
    table = dds_table(budget=50, with_agents=False)
    rows = {r.names: r for r in table.reports}
    assert rows[("B3", "B2", "B5")].description() == \
        "linear amplitude, polylogarithmic space, polynomial time"
    assert all(not r.falsified() for r in table.reports)
    assert len(table.render().splitlines()) == 27


def test_grid_points_cover_product():
    # a binary falsification is found at a grid point, not just on the diagonal
    d = dominated(B("x*y+x"), B("x*y+y"), grid=DEFAULT_GRID)
    assert not d.holds and d.point["x"] > d.point["y"]
    assert d.point in [dict(zip("xy", p)) for p in itertools.product(DEFAULT_GRID, repeat=2)]
