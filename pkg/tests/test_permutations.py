import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ahs.errors import SpecError, SummationOverflow
from ahs.permutations import (
    CycleSpec,
    InvolutionSpec,
    apply_array,
    apply_cycle,
    apply_involution,
    class_index,
    permutation_order_on_window,
    rule_collision,
    validate_cycle,
    validate_involution,
)


def random_valid_involution(rng, max_modulus=200):
    while True:
        a, c = rng.randint(2, max_modulus), rng.randint(2, max_modulus)
        b, d = rng.randint(1, a - 1), rng.randint(1, c - 1)
        if (d - b) % math.gcd(a, c):
            return InvolutionSpec(a, b, c, d)


def test_doubling_swap_is_valid():
    spec = validate_involution(2, 1, 4, 2)
    assert (spec.a, spec.b, spec.c, spec.d) == (2, 1, 4, 2)
    assert str(spec) == "2:1:4:2"


@pytest.mark.parametrize("args", [(2, 1, 4, 3), (3, 1, 5, 2)])
def test_residue_overlap(args):
    with pytest.raises(SpecError) as info:
        validate_involution(*args)
    assert info.value.code == "RESIDUE_OVERLAP"


def test_overlap_example_collides_at_three():
    assert rule_collision(2, 1, 4, 3) == 3
    assert rule_collision(2, 1, 4, 3, limit=100) == 3


@pytest.mark.parametrize("args", [(2, 2, 4, 1), (3, 1, 4, 4), (1, 1, 2, 1)])
def test_order_violation(args):
    with pytest.raises(SpecError) as info:
        validate_involution(*args)
    assert info.value.code == "ORDER_VIOLATION"


@pytest.mark.parametrize("args", [(0, 1, 4, 2), (2, 0, 4, 1), (2, 1, -4, 2), (2.0, 1, 4, 2)])
def test_nonpositive_or_noninteger_rejected(args):
    with pytest.raises(SpecError):
        validate_involution(*args)


def test_validator_agrees_with_brute_force(rng):
    checked = 0
    while checked < 300:
        a, c = rng.randint(2, 40), rng.randint(2, 40)
        b, d = rng.randint(1, a - 1), rng.randint(1, c - 1)
        collision = rule_collision(a, b, c, d)
        try:
            validate_involution(a, b, c, d)
            valid = True
        except SpecError as exc:
            assert exc.code == "RESIDUE_OVERLAP"
            valid = False
        assert valid == (collision is None)
        checked += 1


def test_apply_involution_examples():
    spec = InvolutionSpec(2, 1, 4, 2)
    assert [apply_involution(spec, n) for n in (3, 6, 4, 1)] == [6, 3, 4, 2]
    assert [spec(n) for n in range(1, 9)] == [2, 1, 6, 4, 10, 3, 14, 8]


def test_fixed_points_outside_classes(rng):
    for _ in range(50):
        spec = random_valid_involution(rng, 30)
        for n in range(1, 500):
            if class_index(spec, n) is None:
                assert spec(n) == n


def test_apply_cycle_examples():
    spec = CycleSpec(((4, 1), (8, 2), (16, 4)))
    assert apply_cycle(spec, 1) == 2
    assert apply_cycle(spec, 2) == 4
    assert apply_cycle(spec, 4) == 1
    assert apply_cycle(spec, 3) == 3


def test_cycle_brute_force_residue_check():
    spec = CycleSpec(((4, 1), (8, 2), (16, 4)))
    for n in range(1, 2000):
        image = spec(n)
        if n % 4 == 1:
            assert image % 8 == 2
        elif n % 8 == 2:
            assert image % 16 == 4
        elif n % 16 == 4:
            assert image % 4 == 1
        else:
            assert image == n


def test_cycle_validation():
    with pytest.raises(SpecError) as info:
        validate_cycle([(4, 1), (8, 5)])
    assert info.value.code == "RESIDUE_OVERLAP"
    with pytest.raises(SpecError) as info:
        validate_cycle([(4, 4), (8, 2)])
    assert info.value.code == "ORDER_VIOLATION"
    with pytest.raises(SpecError):
        validate_cycle([(4, 1)])
    assert str(validate_cycle([(4, 1), (8, 2), (16, 4)])) == "4:1,8:2,16:4"


def test_apply_rejects_nonpositive():
    with pytest.raises(SpecError):
        apply_involution(InvolutionSpec(2, 1, 4, 2), 0)


def test_order_on_window():
    assert permutation_order_on_window(InvolutionSpec(2, 1, 4, 2), 10**4).order == 2
    result = permutation_order_on_window(CycleSpec(((4, 1), (8, 2), (16, 4))), 10**4)
    assert result.order == 3
    assert result.orbit_bound >= 10**4
    assert permutation_order_on_window(InvolutionSpec(1000, 999, 2000, 1998), 100).order == 1


def test_involution_property(rng):
    n = np.arange(1, 10**5 + 1, dtype=np.int64)
    for _ in range(100):
        spec = random_valid_involution(rng)
        assert np.array_equal(apply_array(spec, apply_array(spec, n)), n)


def test_array_matches_scalar(rng):
    n = np.arange(1, 3000, dtype=np.int64)
    for _ in range(20):
        spec = random_valid_involution(rng, 50)
        assert apply_array(spec, n).tolist() == [spec(int(k)) for k in n]
    cycle = CycleSpec(((4, 1), (8, 2), (16, 4)))
    assert apply_array(cycle, n).tolist() == [cycle(int(k)) for k in n]


def test_window_bijectivity(rng):
    for _ in range(50):
        spec = random_valid_involution(rng, 60)
        N = 5000
        images = apply_array(spec, np.arange(1, N + 1, dtype=np.int64))
        assert len(np.unique(images)) == N


def test_class_preservation_on_blocks(rng):
    for _ in range(30):
        spec = random_valid_involution(rng, 25)
        a, b, c, d = spec.a, spec.b, spec.c, spec.d
        for k in range(3):
            moved = [2 * a * c * k + n * a + b for n in range(2 * c)]
            assert [spec(m) for m in moved] == [2 * c * c * k + n * c + d for n in range(2 * c)]
            back = [2 * a * c * k + n * c + d for n in range(2 * a)]
            assert [spec(m) for m in back] == [2 * a * a * k + n * a + b for n in range(2 * a)]


def test_cycle_order_property():
    spec = CycleSpec(((4, 1), (8, 2), (16, 4), (32, 8)))
    n = np.arange(1, 20_000, dtype=np.int64)
    image = n
    for power in range(1, 5):
        image = apply_array(spec, image)
        assert np.array_equal(image, n) == (power == 4)


def test_overflow_detected():
    spec = InvolutionSpec(2, 1, 2**40, 2)
    with pytest.raises(SummationOverflow):
        apply_array(spec, np.array([2**30], dtype=np.int64))


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 200), st.integers(2, 200), st.data())
def test_involution_hypothesis(a, c, data):
    b = data.draw(st.integers(1, a - 1))
    d = data.draw(st.integers(1, c - 1))
    if (d - b) % math.gcd(a, c) == 0:
        with pytest.raises(SpecError):
            InvolutionSpec(a, b, c, d)
        assert rule_collision(a, b, c, d) is not None
        return
    spec = InvolutionSpec(a, b, c, d)
    n = data.draw(st.integers(1, 10**9))
    assert spec(spec(n)) == n
