"""Twenty deliberately broken certificates; the verifier must reject each."""

from dataclasses import replace

from harmdiff.certificates import (
    GersonidesAxiom,
    OrderFact,
    PrimeSplit,
    ResidueRectangle,
    SuccessorSmoothness,
    chain_fixtures,
)
from harmdiff.representations import Form


def _chain():
    return chain_fixtures()[(Form.A, 5)]


def _steps(edit):
    steps = list(_chain().steps)
    edit(steps)
    return replace(_chain(), steps=tuple(steps))


def _set(i, step):
    def edit(steps):
        steps[i] = step
    return edit


def _drop(i):
    def edit(steps):
        del steps[i]
    return edit


MUTATIONS = {
    "rectangle-modulus-7": ResidueRectangle(Form.A, 41, 7),
    "rectangle-phantom-solution": ResidueRectangle(Form.A, 41, 8, ((3, 1),)),
    "rectangle-attainable-class": ResidueRectangle(Form.B, 41, 8),
    "rectangle-zero-target": ResidueRectangle(Form.A, 0, 8),
    "rectangle-missing-boundary": ResidueRectangle(Form.B, 5, 8, ()),
    "split-missing-solution": PrimeSplit(Form.B, 17, 24, (5, 17), ()),
    "split-no-forced-parity": PrimeSplit(Form.B, 41, 8, (5, 17), ()),
    "split-composite-target": PrimeSplit(Form.B, 85, 24, (5, 17), ()),
    "split-wrong-catalan": PrimeSplit(Form.B, 41, 24, (5,), ()),
    "split-form-c": PrimeSplit(Form.C, 41, 24, (5, 17), ()),
    "successor-witness-3": SuccessorSmoothness(41, witness=3),
    "successor-witness-not-divisor": SuccessorSmoothness(41, witness=5),
    "successor-missing-solution": SuccessorSmoothness(5, exponents=(1, 1), solutions=()),
    "successor-false-exponents": SuccessorSmoothness(6, exponents=(1, 1), solutions=((1, 1),)),
    "gersonides-dropped-pair": GersonidesAxiom(Form.A, 1, ((1, 0),)),
    "gersonides-wrong-target": GersonidesAxiom(Form.A, 2, ((1, 0), (2, 1))),
    "chain-bad-order": _steps(_set(0, OrderFact(2, 27, 9))),
    "chain-bad-cofactor": _steps(lambda s: s.__setitem__(7, replace(s[7], cofactor=161))),
    "chain-missing-divides": _steps(_drop(7)),
    "chain-no-conclusion": _steps(_drop(-1)),
}
