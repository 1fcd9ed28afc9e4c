from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubelab import flips

F = Fraction


def signs(n):
    return product((-1, 1), repeat=n)


# -- suffix flip ------------------------------------------------------------

def test_suffix_flip_hand_trace():
    u, v = (1, 1), (-1, -1)
    # difference sums are 0, 2, 4; level 2 is first reached after one step
    assert flips.suffix_flip(u, v, 2) == ((1, -1), (-1, 1))


def test_suffix_flip_nonpositive_level_swaps_everything():
    u, v = (3, -2), (5, 1)
    assert flips.suffix_flip(u, v, 0) == (v, u)
    assert flips.suffix_flip(u, v, -7) == (v, u)


def test_suffix_flip_involution_exhaustive():
    for n in (1, 2, 3, 4):
        for u in signs(n):
            for v in signs(n):
                for r in (-1, 0, 1, 2):
                    try:
                        a, b = flips.suffix_flip(u, v, r)
                    except flips.DomainError:
                        continue
                    assert flips.suffix_flip(a, b, r) == (u, v)


def test_suffix_flip_domain_error():
    with pytest.raises(flips.DomainError):
        flips.suffix_flip((1, 1), (1, 1), 1)


def test_suffix_flip_strict_variant():
    u, v = (1, 1), (-1, 1)
    # difference sums: 0, 2, 2; level 2 met at index 1, exceeded never
    assert flips.suffix_flip(u, v, 2) == ((1, 1), (-1, 1))
    with pytest.raises(flips.DomainError):
        flips.suffix_flip(u, v, 2, strict=True)


# -- prefix flip ------------------------------------------------------------

def test_prefix_flip_hand_traces():
    assert flips.prefix_flip((1, 1), 2) == (-1, 1)
    assert flips.prefix_flip((1,), 2) == (-1,)


def test_prefix_flip_drop_bound():
    rng = np.random.default_rng(0)
    for trial in range(20):
        n = int(rng.integers(1, 11))
        weights = [F(int(a), int(b)) for a, b in
                   zip(rng.integers(1, 9, size=n), rng.integers(1, 5, size=n))]
        for x in signs(n):
            u = tuple(w * s for w, s in zip(weights, x))
            r = F(int(rng.integers(-3, 6)), 2)
            try:
                v = flips.prefix_flip(u, r)
            except flips.DomainError:
                assert 2 * max(np.cumsum([float(t) for t in u])) < r
                continue
            drop = sum(u) - sum(v)
            assert r <= drop < r + 2 * max(abs(t) for t in u)


def test_prefix_flip_injective_exhaustive():
    n = 12
    r = 3
    seen = {}
    for x in signs(n):
        try:
            y = flips.prefix_flip(x, r)
        except flips.DomainError:
            continue
        assert y not in seen, f"collision between {seen[y]} and {x}"
        seen[y] = x


# -- single coordinate flip ---------------------------------------------------

def test_single_coord_flip_hand_trace():
    # running sums 1, 0, 1: the first maximum sits at index 1
    assert flips.single_coord_flip((1, -1, 1)) == (-1, -1, 1)


def test_single_coord_flip_singleton():
    assert flips.single_coord_flip((1,)) == (-1,)
    assert flips.single_coord_unflip((-1,)) == (1,)


def test_single_coord_flip_domain():
    with pytest.raises(flips.DomainError):
        flips.single_coord_flip((-1, -1))


def test_unflip_inverts_flip_exhaustive():
    for n in (1, 2, 5, 10):
        for x in signs(n):
            try:
                y = flips.single_coord_flip(x)
            except flips.DomainError:
                continue
            assert flips.single_coord_unflip(y) == x


def test_flip_moves_last_running_max():
    # after the flip, the last running-sum maximum sits one step earlier
    for x in signs(9):
        sums = flips.running_sums(x)
        if max(sums) <= 0:
            continue
        cut = flips.first_max_index(sums)
        y = flips.single_coord_flip(x)
        assert flips.last_max_index(flips.running_sums(y)[:-1]) == cut - 1


# -- weighted variant -----------------------------------------------------------

def test_weighted_flip_hand_traces():
    assert flips.weighted_coord_flip((2, 1), (1, -1)) == (-1, -1)
    assert flips.weighted_coord_flip((1, 2), (-1, 1)) == (-1, -1)


def test_weighted_flip_domain_from_positive_dot():
    rng = np.random.default_rng(1)
    for trial in range(200):
        n = int(rng.integers(1, 9))
        a = tuple(int(w) for w in rng.integers(0, 7, size=n))
        x = tuple(int(s) for s in rng.choice((-1, 1), size=n))
        if sum(w * s for w, s in zip(a, x)) > 0:
            y = flips.weighted_coord_flip(a, x)
            assert flips.weighted_coord_unflip(a, y) == x


def test_weighted_unflip_inverts_exhaustive():
    rng = np.random.default_rng(2)
    for trial in range(5):
        n = 10
        a = tuple(int(w) for w in rng.integers(1, 12, size=n))
        for x in signs(n):
            if sum(w * s for w, s in zip(a, x)) <= 0:
                continue
            y = flips.weighted_coord_flip(a, x)
            assert flips.weighted_coord_unflip(a, y) == x


# -- the four-piece interval shift ------------------------------------------------

def check_cover(a, s, m):
    """Exhaustively verify the injection on its whole domain."""
    n = len(a)
    outputs = {1: {}, 2: {}, 3: {}, 4: {}}
    hit = 0
    for sigma in signs(n):
        total = sum(w * s_ for w, s_ in zip(a, sigma))
        if not (s + m < total <= s + 3 * m):
            with pytest.raises(flips.DomainError):
                flips.interval_shift_map(a, s, m, sigma)
            continue
        hit += 1
        piece, out = flips.interval_shift_map(a, s, m, sigma)
        new_total = sum(w * s_ for w, s_ in zip(a, out))
        assert s - m < new_total <= s + m, (a, s, m, sigma, piece)
        assert out not in outputs[piece], f"piece {piece} collision"
        outputs[piece][out] = sigma
    return hit


def test_interval_shift_cover_unit_weights():
    hit = check_cover((1,) * 10, 1, F(3, 2))
    assert hit > 0


def test_interval_shift_cover_random_weights():
    rng = np.random.default_rng(3)
    covered = 0
    for trial in range(12):
        n = int(rng.integers(2, 9))
        a = tuple(F(int(x), int(y)) for x, y in
                  zip(rng.integers(1, 8, size=n), rng.integers(1, 4, size=n)))
        m = max(a) * F(int(rng.integers(1, 4)), 2)
        if m < max(a):
            m = max(a)
        s = F(int(rng.integers(0, 6)), 2)
        covered += check_cover(a, s, m)
    assert covered > 50


@given(st.lists(st.integers(1, 9), min_size=1, max_size=10),
       st.integers(0, 8), st.integers(0, 40))
@settings(max_examples=60, deadline=None)
def test_interval_shift_always_lands(pattern, s, seed):
    rng = np.random.default_rng(seed)
    a = tuple(pattern)
    m = max(a)
    sigma = tuple(int(v) for v in rng.choice((-1, 1), size=len(a)))
    total = sum(w * s_ for w, s_ in zip(a, sigma))
    if not (s + m < total <= s + 3 * m):
        return
    piece, out = flips.interval_shift_map(a, s, m, sigma)
    new_total = sum(w * s_ for w, s_ in zip(a, out))
    assert s - m < new_total <= s + m
