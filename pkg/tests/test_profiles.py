import numpy as np
import pytest

from waterhammer.errors import ParameterError
from waterhammer.profiles import Profile


def test_constant_profile():
    p = Profile(3)
    assert p.is_constant and p.source == 3.0
    assert np.array_equal(p(np.arange(4.0)), np.full(4, 3.0))


def test_expression_profile():
    p = Profile("1000 + exp(-((x-2)/1)**2) * where(x > 0, 1, 0)")
    assert not p.is_constant
    assert p(np.array([2.0]))[0] == pytest.approx(1001.0)


def test_profile_equality():
    assert Profile("x") == Profile(" x ")
    assert Profile(1.0) == Profile(1)
    assert Profile(Profile("x")) == Profile("x")


@pytest.mark.parametrize("bad", ["__import__('os')", "x.real", "open('f')", "y + 1", "'a'", "x +", True, None])
def test_profile_rejects(bad):
    with pytest.raises(ParameterError):
        Profile(bad)
