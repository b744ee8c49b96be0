import random
from fractions import Fraction

import pytest

from knotconc.infer import LedgerInconsistentError, infer_theta, infer_theta_m
from knotconc.knots import parse_expression
from knotconc.ledger import ledger_from_json, ledger_to_json, load_seed_ledger


def infer(L, text, q=2, **kw):
    return infer_theta(L, parse_expression(text), q=q, **kw)


# -- the worked inference chains -------------------------------------------------


def test_9_42_pair():
    L = load_seed_ledger()
    assert infer(L, "9_42").value == 0
    assert infer(L, "-9_42").value == 1


def test_9_42_whitehead_sum():
    L = load_seed_ledger()
    iv = infer(L, "-(9_42) + Wh(T(2,3))")
    assert iv.value == 2
    assert any("R5" in line for line in iv.justification)
    assert any("delta_MO(9_42)" in k for k in iv.provenance)


def test_whitehead_pair():
    L = load_seed_ledger()
    assert infer(L, "Wh(T(2,3))").value == 1
    assert infer(L, "-Wh(T(2,3))").value == 0
    assert infer(L, "Wh(T(2,5))").value == 1


def test_whitehead_difference():
    L = load_seed_ledger()
    assert infer(L, "Wh(T(2,5)) + -Wh(T(2,3))").value == 1


def test_torus_atoms_exact_via_sequences():
    L = load_seed_ledger()
    for n, want in ((1, 6), (2, 12), (5, 30)):
        iv = infer(L, f"T(3,{6 * n + 1})")
        assert iv.value == want
        assert any("R8" in line for line in iv.justification)
    assert infer(L, "-T(3,7)").value == 0


def test_quasi_alternating_closed_form():
    L = load_seed_ledger()
    assert infer(L, "T(2,5)").value == 2
    assert infer(L, "-T(2,5)").value == 0
    assert infer(L, "T(2,31)").value == 15


def test_q3_certified_equalities():
    L = load_seed_ledger()
    for n in range(1, 6):
        assert infer(L, f"T(2,{6 * n - 1})", q=3).value == 3 * n - 1
        assert infer(L, f"T(2,{6 * n + 1})", q=3).value == 3 * n


def test_slice_and_unknot():
    L = load_seed_ledger()
    assert infer(L, "unknot").value == 0
    assert infer(L, "9_46").value == 0
    assert infer(L, "9_46 + -9_46").value == 0
    assert infer(L, "T(3,7) + -T(3,7)").value == 0  # mirror pair cancels


def test_concordance_rearrangement_gives_lower_bound():
    # T(2,5) is concordant to (T(2,5) + -Wh) + Wh, so theta of the sum is
    # at least theta(T(2,5)) - theta(Wh) = 1; the signature pushes it to 2.
    L = load_seed_ledger()
    iv = infer(L, "T(2,5) + -Wh(T(2,3))")
    assert iv.value == 2
    miv = infer(L, "-T(2,5) + Wh(T(2,3))")
    assert (miv.lower, miv.upper) == (0, 1)


def test_unknotting_number_chain():
    """Crossing-change relations compose: along unknot -> A -> B the engine
    derives theta(B) + theta(-B) <= 2 with no unknotting facts at all."""
    data = {
        "atoms": [{"name": "unknot", "seifert": []}, {"name": "A"}, {"name": "B"}],
        "facts": [
            {"knot": "unknot", "kind": "slice", "value": True, "provenance": "t"},
            {"knot": "A", "kind": "sigma", "value": -2, "provenance": "t"},
            {"knot": "B", "kind": "sigma", "value": -4, "provenance": "t"},
        ],
        "relations": [
            {"plus": "A", "minus": "unknot"},
            {"plus": "B", "minus": "A"},
        ],
    }
    L = ledger_from_json(data)
    b = infer(L, "B")
    mb = infer(L, "-B")
    assert b.value == 2       # sigma lower bound meets the chain upper bound
    assert mb.value == 0      # mirrored chain pins the mirror at zero
    assert b.value + mb.value <= 2


def test_inconsistent_ledger_reports_rules():
    data = {
        "atoms": [{"name": "K"}],
        "facts": [
            {"knot": "K", "kind": "sigma", "value": -4, "provenance": "t"},
            {"knot": "K", "kind": "g4", "value": 1, "provenance": "t"},
        ],
        "relations": [],
    }
    L = ledger_from_json(data)
    with pytest.raises(LedgerInconsistentError) as exc:
        infer(L, "K")
    msg = str(exc.value)
    assert "R1" in msg  # names the clashing rules


def test_no_facts_means_unbounded_above():
    L = ledger_from_json({"atoms": [{"name": "X"}], "facts": [], "relations": []})
    iv = infer(L, "X")
    assert iv.lower == 0 and iv.upper is None
    assert not iv.exact


def test_unknown_atom_raises():
    L = load_seed_ledger()
    with pytest.raises(Exception, match="unknown knot atom"):
        infer(L, "mystery_knot")


# -- interval-valued theta(K, m) --------------------------------------------------


def test_infer_theta_m_exact_torus():
    L = load_seed_ledger()
    for m, want in ((0, 6), (4, 4), (8, 4), (100, 4)):
        iv = infer_theta_m(L, parse_expression("T(3,7)"), 2, m)
        assert iv.exact and iv.value == want


def test_infer_theta_m_interval_path():
    L = load_seed_ledger()
    iv = infer_theta_m(L, parse_expression("T(2,7)"), 3, 4)
    assert not iv.exact
    assert iv.lower == 2 and iv.upper == 3


# -- engine-level properties -------------------------------------------------------


QUERIES = [
    "9_42", "-9_42", "Wh(T(2,3))", "-Wh(T(2,3))", "-(9_42) + Wh(T(2,3))",
    "T(2,5) + -Wh(T(2,3))", "T(3,7)", "-T(3,13)", "T(2,11)",
    "Wh(T(2,5)) + -Wh(T(2,3))", "T(2,3) + T(2,3)", "8_19 + -T(2,3)",
]


def test_rule_order_independence():
    L = load_seed_ledger()
    for text in QUERIES:
        base = infer(L, text)
        for seed in range(10):
            iv = infer(L, text, rule_seed=seed)
            assert (iv.lower, iv.upper) == (base.lower, base.upper), (text, seed)


def test_exact_results_respect_axioms():
    L = load_seed_ledger()
    for text in QUERIES:
        iv = infer(L, text)
        e = parse_expression(text)
        sig = L.sigma_q_expr(e, 2)
        g4 = L.genus_upper_expr(e)
        if sig is not None:
            assert iv.lower >= max(0, Fraction(-sig, 2))
        if g4 is not None and iv.upper is not None:
            assert iv.upper <= g4


def _random_subledger(rng, data):
    keep = {
        "atoms": data["atoms"],
        "facts": [f for f in data["facts"] if rng.random() < 0.75],
        "relations": [r for r in data["relations"] if rng.random() < 0.75],
    }
    try:
        return ledger_from_json(keep)
    except Exception:
        return None


def test_monotone_adding_facts_never_widens():
    """Dropping ledger facts can only loosen the interval, so the full-ledger
    interval always sits inside the sub-ledger interval."""
    full = load_seed_ledger()
    data = ledger_to_json(full)
    rng = random.Random(71)
    checked = 0
    while checked < 1000:
        sub = _random_subledger(rng, data)
        if sub is None:
            continue
        text = rng.choice(QUERIES)
        try:
            wide = infer(sub, text)
        except LedgerInconsistentError:
            continue
        tight = infer(full, text)
        assert tight.lower >= wide.lower, text
        if wide.upper is not None:
            assert tight.upper is not None and tight.upper <= wide.upper, text
        checked += 1
