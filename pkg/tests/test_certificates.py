import pytest

from harmdiff.certificates import (
    ATTAINABLE,
    EXACT_COMPLETE,
    NDH,
    OBSTRUCTION,
    REPRESENTABLE,
    UNKNOWN,
    GersonidesAxiom,
    NotPrime,
    OrderChain,
    PrimeSplit,
    ResidueRectangle,
    SuccessorSmoothness,
    chain_fixtures,
    classify,
    close_case,
    find_obstruction,
    prime_split,
    rectangle_analysis,
)
from harmdiff.config import Config
from harmdiff.representations import Form, Proven, UpToBound
from harmdiff.verify import verify
from oracles import differences, form_hits_mod


def test_rectangle_obstructions():
    assert rectangle_analysis(Form.A, 43, 8).kind == OBSTRUCTION
    assert rectangle_analysis(Form.B, 85, 8).kind == OBSTRUCTION


def test_rectangle_forced_parities():
    out = rectangle_analysis(Form.B, 41, 24)
    assert out.kind == ATTAINABLE
    assert out.forced_parities == (0, 0)


def test_rectangle_exact_complete():
    out = rectangle_analysis(Form.B, 5, 8)
    assert out.kind == EXACT_COMPLETE
    assert out.solutions == ((2, 2),)


@pytest.mark.parametrize("form", list(Form))
@pytest.mark.parametrize("t", [5, 7, 41, 43, 85, 97])
@pytest.mark.parametrize("m", [5, 7, 8, 9, 24])
def test_rectangle_attainability_matches_brute_force(form, t, m):
    out = rectangle_analysis(form, t, m)
    # periodic part attainable iff brute force (from the window on) finds a hit
    if out.kind == ATTAINABLE:
        assert form_hits_mod(form.value, t, m)
    if not form_hits_mod(form.value, t, m):
        assert out.kind != ATTAINABLE


def test_find_obstruction():
    assert find_obstruction(Form.A, 41, [8, 24, 40]).modulus == 8
    cert = find_obstruction(Form.A, 85, [8, 40, 120])
    assert cert is not None and cert.modulus in (8, 40, 120)
    assert verify(cert)
    assert find_obstruction(Form.B, 41, [8]) is None
    with pytest.raises(ValueError):
        find_obstruction(Form.A, 41, [])


def test_prime_split_examples():
    cert = prime_split(Form.B, 41, 24)
    assert cert is not None and cert.solutions == ()
    assert cert.catalan_targets == (5, 17)
    assert prime_split(Form.B, 17, 24).solutions == ((6, 4),)
    assert prime_split(Form.A, 7, 24).solutions == ((3, 0), (4, 2))
    for c in (cert, prime_split(Form.B, 17, 24), prime_split(Form.A, 7, 24)):
        assert verify(c)


def test_prime_split_needs_prime():
    with pytest.raises(NotPrime):
        prime_split(Form.B, 85, 24)


def test_prime_split_without_forced_parity():
    assert prime_split(Form.B, 41, 8) is None


def test_close_case_strategies():
    assert isinstance(close_case(Form.C, 41), SuccessorSmoothness)
    assert isinstance(close_case(Form.A, 1), GersonidesAxiom)
    assert isinstance(close_case(Form.A, 5), OrderChain)
    assert isinstance(close_case(Form.B, 17), PrimeSplit)
    assert isinstance(close_case(Form.A, 41), ResidueRectangle)


def test_shipped_chain():
    chain = chain_fixtures()[(Form.A, 5)]
    assert chain.anchor == (5, 3)
    assert chain.solutions == ((3, 1), (5, 3))
    assert verify(chain)


def _pairs(c):
    return {r.pair for r in c.representations}


def test_classify_41():
    c = classify(41)
    assert c.kind == NDH
    assert [case.form for case in c.cases] == [Form.A, Form.B, Form.C]
    certs = [case.certificate for case in c.cases]
    assert certs[0] == ResidueRectangle(Form.A, 41, 8)
    assert certs[1].kind in ("prime-split", "residue-rectangle")
    assert certs[2] == SuccessorSmoothness(41, witness=7)
    assert all(verify(x) for x in certs)


def test_classify_82():
    c = classify(82)
    assert c.kind == NDH
    assert {(case.divisor.value, case.t) for case in c.cases} == {(1, 82), (2, 41)}


def test_classify_17():
    c = classify(17)
    assert c.kind == REPRESENTABLE
    assert _pairs(c) == {(18, 1), (81, 64)}
    assert c.completeness == Proven()


def test_classify_6():
    c = classify(6)
    assert _pairs(c) == {(8, 2), (9, 3), (12, 6), (18, 12), (24, 18), (54, 48)}
    assert c.status == "representable-proven"


def test_classify_unknown_with_weak_pool():
    c = classify(41, Config(modulus_pool=(7,)))
    assert c.kind == UNKNOWN
    assert c.status == "unknown"


def test_classify_bounded():
    c = classify(121)
    assert c.status in ("unknown", "representable-bounded")
    if c.kind == REPRESENTABLE:
        assert c.completeness == UpToBound(96)


def test_classify_rejects_nonpositive():
    with pytest.raises(ValueError):
        classify(0)


def test_certified_solutions_are_complete_up_to_brute_force():
    # soundness spot check: closed cases never miss a difference below 10^6
    for n in list(range(1, 200)) + [257, 8191, 65537]:
        c = classify(n)
        if c.kind == UNKNOWN:
            continue
        if all(case.closed for case in c.cases):
            assert _pairs(c) >= differences(n, 10**6), n
        if c.kind == NDH:
            assert not differences(n, 10**6), n
