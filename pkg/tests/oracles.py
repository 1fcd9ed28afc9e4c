"""Independent brute-force reference implementations used only by tests.

Everything here is deliberately naive: plain Python loops over all points,
subsets or sign patterns, so the fast paths in the package are checked
against a second route that shares no code with them.
"""

from fractions import Fraction
from itertools import combinations, product


def point_signs(m: int, n: int):
    return tuple(1 if (m >> i) & 1 else -1 for i in range(n))


def brute_coefficient(f, subset) -> Fraction:
    total = 0
    for m in range(1 << f.n):
        x = point_signs(m, f.n)
        sign = 1
        for i in subset:
            sign *= x[i]
        total += sign * int(f.table[m])
    return Fraction(total, 1 << f.n)


def brute_spectrum(f) -> dict[int, Fraction]:
    out = {}
    for k in range(f.n + 1):
        for subset in combinations(range(f.n), k):
            mask = 0
            for i in subset:
                mask |= 1 << i
            out[mask] = brute_coefficient(f, subset)
    return out


def brute_influence(f, i: int) -> Fraction:
    count = 0
    for m in range(1 << f.n):
        if f.table[m] != f.table[m ^ (1 << i)]:
            count += 1
    return Fraction(count, 1 << f.n)


def brute_boundary(f, lam: int) -> Fraction:
    count = 0
    for m in range(1 << f.n):
        if int(f.table[m]) != lam:
            continue
        if any(int(f.table[m ^ (1 << i)]) != lam for i in range(f.n)):
            count += 1
    return Fraction(count, 1 << f.n)


def brute_is_monotone(f) -> bool:
    for m in range(1 << f.n):
        for i in range(f.n):
            if not m >> i & 1:
                if f.table[m] > f.table[m | (1 << i)]:
                    return False
    return True


def brute_sum_counts(weights) -> dict[Fraction, int]:
    """Exact distribution of sum(w_i x_i) by enumerating sign patterns."""
    weights = [Fraction(w) for w in weights]
    out: dict[Fraction, int] = {}
    for signs in product((-1, 1), repeat=len(weights)):
        s = sum(w * x for w, x in zip(weights, signs))
        out[s] = out.get(s, 0) + 1
    return out


def brute_tail(weights, t) -> Fraction:
    counts = brute_sum_counts(weights)
    t = Fraction(t)
    hits = sum(c for v, c in counts.items() if v > t)
    return Fraction(hits, 1 << len(list(weights)))


def brute_interval(weights, lo, hi, include_lo=False, include_hi=True) -> Fraction:
    counts = brute_sum_counts(weights)
    lo, hi = Fraction(lo), Fraction(hi)
    hits = 0
    for v, c in counts.items():
        ok_lo = v >= lo if include_lo else v > lo
        ok_hi = v <= hi if include_hi else v < hi
        if ok_lo and ok_hi:
            hits += c
    return Fraction(hits, 1 << len(list(weights)))


def brute_smoothed_influence(weights, t, i, delta) -> Fraction:
    """Exact Uniform(0, delta) average of the influence, via breakpoints of
    the reduced-sum support (built by enumeration, not by the package)."""
    weights = [Fraction(w) for w in weights]
    t, delta = Fraction(t), Fraction(delta)
    w_i = weights[i]
    reduced = [w for j, w in enumerate(weights) if j != i]
    counts = brute_sum_counts(reduced)
    total = Fraction(0)
    for v, c in counts.items():
        # I_i(f_{t+s}) counts this atom while t + s - w_i < v <= t + s + w_i
        lo = v - t - w_i
        hi = v - t + w_i
        overlap = min(hi, delta) - max(lo, Fraction(0))
        if overlap > 0:
            total += c * overlap
    return total / (delta * (1 << len(reduced)))
