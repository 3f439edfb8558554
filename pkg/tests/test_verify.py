from dataclasses import replace

import pytest

from harmdiff.certificates import (
    GersonidesAxiom,
    OrderFact,
    ResidueRectangle,
    chain_fixtures,
    classify,
)
from harmdiff.representations import Form
from harmdiff.verify import catalan_census, gersonides_census, verify, verify_order_chain
from mutations import MUTATIONS
from oracles import form_hits_mod

CHAIN = chain_fixtures()[(Form.A, 5)]


def test_twenty_mutations():
    assert len(MUTATIONS) == 20


@pytest.mark.parametrize("name", sorted(MUTATIONS))
def test_mutation_rejected(name):
    assert verify(MUTATIONS[name]) is False


def test_rectangle_examples():
    assert verify(ResidueRectangle(Form.A, 41, 8))
    assert form_hits_mod("A", 41, 7)  # why the tampered modulus must fail
    assert not verify(ResidueRectangle(Form.A, 41, 7))


def test_gersonides():
    assert gersonides_census(64) == ((1, 2), (2, 3), (3, 4), (8, 9))
    assert verify(GersonidesAxiom(Form.A, 1, ((1, 0), (2, 1))))
    assert verify(GersonidesAxiom(Form.B, 1, ((1, 1), (3, 2))))


def test_catalan_census():
    assert catalan_census(64) == (((1, 1), (2, 3)), ((1, 0), (2, 1)))


def test_chain_valid():
    assert verify_order_chain(CHAIN)
    assert verify(CHAIN)


def test_chain_bad_order():
    steps = (OrderFact(2, 27, 9),) + CHAIN.steps[1:]
    assert not verify_order_chain(replace(CHAIN, steps=steps))


def test_chain_empty():
    assert not verify_order_chain(replace(CHAIN, steps=()))


def test_chain_wrong_anchor():
    assert not verify_order_chain(replace(CHAIN, anchor=(4, 2)))


def test_chain_form_c_rejected():
    assert not verify_order_chain(replace(CHAIN, form=Form.C))


def test_chain_conclusion_not_last():
    steps = CHAIN.steps[-1:] + CHAIN.steps
    assert not verify_order_chain(replace(CHAIN, steps=steps))


def test_unknown_object_rejected():
    assert verify("residue-rectangle") is False


def test_every_emitted_certificate_verifies():
    for n in range(1, 1001):
        for case in classify(n).cases:
            if case.certificate is not None:
                assert verify(case.certificate), (n, case)
