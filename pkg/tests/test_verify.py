from pontryagin.verify import COMPUTED, LITERATURE, MANIFEST, run_suite

# Every published value the tool reproduces must have a named check in the suite.
REQUIRED = {
    "w1-expansion", "commutator-x1-t", "commutator-x3-t-rational", "degree-w1",
    "so3-mod2-dims", "so3-rational-dims", "truncated-polynomial-a4", "tensor-product-glambda",
    "glambda-mod2-relations", "glambda-rational-relations", "so3-mod2-preset",
    "rule-x1-t", "rule-x1-w2", "rule-x3-t-rational", "nf-x1-t", "nf-t-t",
    "basis-degree-1", "basis-degree-2", "oracle-rank-1", "oracle-rank-2",
    "ideal-t-squared", "ideal-w1-nonzero", "rational-degree-1",
    "diagonal-y1", "diagonal-y2", "diagonal-y3", "pair-t-t", "pair-t-x1", "pair-t-y1",
    "cup-t-x1-commutator", "cup-t-x2-commutator", "cup-t-x3-commutator", "cup-t-x3-commutator-rational",
    "cup-w1-x1y2-on-w2y2", "cup-x1-squared", "nilpotency-x1", "nilpotency-t",
    "series-glambda-low", "series-so3", "james-w-factor", "u0-low-degrees", "mayer-vietoris-p1",
    "u0-growth", "homotopy-model-rational", "no-odd-torsion",
}


def test_manifest_covers_required_checks():
    names = [c.name for c in MANIFEST]
    assert len(names) == len(set(names))
    missing = REQUIRED - set(names)
    assert not missing, f"manifest lacks {sorted(missing)}"


def test_manifest_entries_are_described():
    for c in MANIFEST:
        assert c.anchor and c.basis in (LITERATURE, COMPUTED)
    assert {c.basis for c in MANIFEST} == {LITERATURE, COMPUTED}


def test_suite_passes_and_is_deterministic():
    first = run_suite("paper", seed=7)
    assert [o.name for o in first if o.status != "pass"] == []
    second = run_suite("paper", seed=7)
    assert [(o.name, o.observed) for o in first] == [(o.name, o.observed) for o in second]


def test_a_wrong_expectation_fails_rather_than_crashing():
    from dataclasses import replace
    from pontryagin import verify
    bad = replace(MANIFEST[0], expected="nonsense")
    crash = replace(MANIFEST[0], name="crash", compute=lambda ws: 1 / 0)
    saved = verify.SUITES["paper"]
    verify.SUITES["paper"] = (bad, crash)
    try:
        out = run_suite("paper")
    finally:
        verify.SUITES["paper"] = saved
    assert [o.status for o in out] == ["fail", "fail"]
    assert "ZeroDivisionError" in out[1].observed
