from nilsoliton.utils.random import (
    FLOAT_TO_INT_MULTIPLIER,
    generate_python_random_seed,
    model_filiform_bracket,
    random_two_step_bracket,
)
from nilsoliton.utils.structs import FunctionalValueList, SpectrumList


def test_truncated_representation():
    assert repr(FunctionalValueList([1.0, 0.5])) == "[1, 0.5]"
    assert repr(FunctionalValueList([3.0, 2.0, 1.5, 1.25, 1.125])) == "[3 ... 1.125 (Total: 5)]"


def test_spectrum_list_is_sorted():
    spectrum = SpectrumList([0.5, -1.0, 0.25])
    assert spectrum == [-1.0, 0.25, 0.5]
    assert repr(spectrum) == "[-1, 0.25, 0.5]"


def test_python_random_seed():
    seed = generate_python_random_seed()
    assert isinstance(seed, int)
    assert 0 <= seed <= FLOAT_TO_INT_MULTIPLIER


def test_seed_brackets(rng):
    assert model_filiform_bracket(4).terms == ((1, 2, 3, 1.0), (1, 3, 4, 1.0))
    B = random_two_step_bracket(6, rng)
    # 4 generators, 2 central vectors
    assert len(B.terms) == 12
    assert {k for _, _, k, _ in B.terms} == {5, 6}
