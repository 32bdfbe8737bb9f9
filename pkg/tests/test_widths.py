import math

import pytest

from layered_wheels import build_prefix, parse_f_spec
from layered_wheels import structure as S
from layered_wheels import widths as W
from layered_wheels.functions import INF


# -- formula --------------------------------------------------------------

def test_formula_infinite_when_F_is():
    assert W.tw_upper_bound_formula(4, parse_f_spec("cap:3"), 3) == INF


def test_formula_finite_example():
    f = parse_f_spec("cumulative:1,2,3,4")   # F(4)=4 then infinite
    assert W.tw_upper_bound_formula(5, f, 3) == 360


def test_formula_omega_one():
    for ell in (4, 5, 7):
        assert (W.tw_upper_bound_formula(ell, parse_f_spec("identity"), 1)
                == 15 * (ell + 3))


def test_formula_monotone_in_omega_and_ell():
    f = parse_f_spec("identity")
    vals = [W.tw_upper_bound_formula(4, f, w) for w in range(1, 8)]
    assert vals == sorted(vals)
    by_ell = [W.tw_upper_bound_formula(ell, f, 3) for ell in range(4, 9)]
    assert by_ell == sorted(by_ell)


def test_formula_rejects_bad_omega():
    with pytest.raises(ValueError):
        W.tw_upper_bound_formula(4, parse_f_spec("identity"), 0)


# -- lower bounds and the exact oracle ------------------------------------

def test_minor_lower_bound_values():
    p5 = build_prefix(4, parse_f_spec("identity"), 5)
    lo, cert = W.tw_lower_bound_minor(p5)
    assert lo == 4 and cert.verdict
    p1 = build_prefix(4, parse_f_spec("identity"), 1)
    assert W.tw_lower_bound_minor(p1)[0] == 0


def test_minor_lower_bound_survives_mutation(prefix_68):
    q = prefix_68.copy()
    for g in q.layer_range(3):
        q.up[g] = [w for w in q.up[g] if q.layer_of(w) != 1]
    q._adj = None
    lo, cert = W.tw_lower_bound_minor(q)
    assert cert.verdict and lo == 2
    assert len(cert.data["surviving_layers"]) == 3


def test_exact_treewidth_oracle_examples():
    for ell in (4, 5, 6):
        cyc = [[(i - 1) % ell, (i + 1) % ell] for i in range(ell)]
        assert W.exact_treewidth_small((ell, cyc)) == 2
    k4 = [[j for j in range(4) if j != i] for i in range(4)]
    assert W.exact_treewidth_small((4, k4)) == 3


def test_exact_treewidth_respects_minor_bound():
    for (ell, t) in [(4, 2), (4, 3), (5, 2), (6, 2)]:
        p = build_prefix(ell, parse_f_spec("cap:3"), t)
        if p.n_vertices > 32:
            continue
        assert W.exact_treewidth_small(p) >= t - 1


# -- decompositions -------------------------------------------------------

def test_decomposition_single_bag_cases(prefix_68):
    omega, cert = S.clique_number_exact(prefix_68)
    clique = {prefix_68.vid(*v) for v in cert.data["clique"]}
    dec = W.decomposition_from_separators(prefix_68, clique)
    assert len(dec.bags) == 1 and dec.bags[0] == frozenset(clique)
    tiny = set(list(prefix_68.layer_range(1))[:3])
    dec2 = W.decomposition_from_separators(prefix_68, tiny)
    assert len(dec2.bags) == 1


def test_decomposition_valid_on_68(prefix_68):
    X = S.TargetSet.full(prefix_68)
    dec = W.decomposition_from_separators(prefix_68, X)
    assert dec.validate(range(prefix_68.n_vertices), prefix_68.edges())
    assert dec.width >= 3   # >= t-1 by the minor bound


def test_decomposition_validator_catches_violations(prefix_68):
    X = S.TargetSet.full(prefix_68)
    dec = W.decomposition_from_separators(prefix_68, X)
    edges = prefix_68.edges()
    vertices = range(prefix_68.n_vertices)
    broken = W.TreeDecomposition([b - {0} for b in dec.bags],
                                 list(dec.edges))
    assert not broken.validate(vertices, edges)
    if len(dec.bags) > 1:
        disconnected = W.TreeDecomposition(list(dec.bags),
                                           list(dec.edges)[:-1])
        assert not disconnected.validate(vertices, edges)


def test_sandwich_on_small_prefixes():
    for (ell, t) in [(4, 3), (5, 2), (6, 2)]:
        p = build_prefix(ell, parse_f_spec("cap:3"), t)
        if p.n_vertices > 32:
            continue
        lo, _ = W.tw_lower_bound_minor(p)
        exact = W.exact_treewidth_small(p)
        dec = W.decomposition_from_separators(p, S.TargetSet.full(p))
        assert dec.validate(range(p.n_vertices), p.edges())
        assert lo <= exact <= dec.width


def test_independent_width_examples(prefix_68):
    omega, cert = S.clique_number_exact(prefix_68)
    clique = frozenset(prefix_68.vid(*v) for v in cert.data["clique"])
    kdec = W.TreeDecomposition([clique])
    assert W.independent_width(prefix_68, kdec) == 1
    stable = frozenset(prefix_68.vid(1, i) for i in (0, 2))
    sdec = W.TreeDecomposition([stable])
    assert W.independent_width(prefix_68, sdec) == 2
    X = S.TargetSet.full(prefix_68)
    dec = W.decomposition_from_separators(prefix_68, X)
    assert W.independent_width(prefix_68, dec) <= dec.width + 1


def test_ta_lower_bound(prefix_68):
    ta, cert = W.ta_lower_bound_certified(prefix_68)
    assert ta == 2 and cert.verdict           # ceil(4/3)
    p22 = build_prefix(4, parse_f_spec("cap:3"), 2)
    assert W.ta_lower_bound_certified(p22)[0] == 1


def test_ta_consistency_with_decomposition(prefix_68):
    ta, _ = W.ta_lower_bound_certified(prefix_68)
    dec = W.decomposition_from_separators(prefix_68,
                                          S.TargetSet.full(prefix_68))
    assert W.independent_width(prefix_68, dec) >= ta


def test_width_report_sandwich(prefix_68):
    rep = W.width_report(prefix_68)
    if rep.tw_upper != INF:
        assert rep.tw_lower <= rep.tw_upper
    d = rep.to_dict()
    assert d["formula_inputs"]["ell"] == 4
    assert d["ta_lower"] == rep.ta_lower


# -- demos ----------------------------------------------------------------

def test_demo_question84_small():
    rep = W.demo_question84("coeffs:3", 4, 3, 10 ** 4)   # g constant 3
    assert rep["rows"][0]["status"] == "out-of-scope"
    k3 = next(r for r in rep["rows"] if r.get("k") == 3)
    assert k3["omega"] == 3 and k3["tw_lower"] >= 3
    assert rep["all_certified"]


def test_demo_conjecture85_small():
    rep = W.demo_conjecture85("poly:2", 4, 1, 10 ** 4)
    assert rep["all_certified"]
    c1 = next(r for r in rep["rows"] if r["c"] == 1)
    assert c1["ta_lower"] >= 1 and c1["tw_upper"] != "inf"


def test_demo_conjecture85_flags_infinite_formula():
    # a finite-table profile has F(omega+1) = inf, so the run reports FAIL
    rep = W.demo_conjecture85("1,2,5,9", 4, 2, 10 ** 4)
    c2 = next(r for r in rep["rows"] if r["c"] == 2)
    assert c2["status"] == "FAIL" and c2["tw_upper"] == "inf"
    assert not rep["all_certified"]


def test_demo_hajebi_small_and_reproducible():
    a = W.demo_hajebi(2, 5, 3, 5, 10 ** 4, seed=1)
    b = W.demo_hajebi(2, 5, 3, 5, 10 ** 4, seed=1)
    assert a == b
    assert a["omega"] == 3 and a["tw_lower"] >= 3
    assert a["all_certified"]
    c = W.demo_hajebi(2, 5, 3, 5, 10 ** 4, seed=2)
    assert c["rows"] != a["rows"]


def test_demo_hajebi_rejects_bad_parameters():
    with pytest.raises(ValueError):
        W.demo_hajebi(1, 5, 3, 1, 10 ** 4)
    with pytest.raises(ValueError):
        W.demo_hajebi(2, 4, 3, 1, 10 ** 4)
