"""Regenerate demos/data/citations_synthetic.txt.

The file is a synthetic journal-citation dataset whose summary
statistics match a large real-world citation corpus: 6826 journals,
94267 total citations, counts from 0 to 908, and an index of
dispersion near 19.83 (variance near 273.90).  Heavy overdispersion
like this is what motivates mixture curve families over the
single-parameter ones.

The construction is deterministic: the most-cited journal is pinned
at 908, the rest come from a seeded negative-binomial draw, and
integer transfers between entries then walk the total and the sum of
squares onto their targets exactly (moving one citation between two
journals preserves the total while shifting the variance).
"""

import sys
from pathlib import Path

import numpy as np

N = 6826
TOTAL = 94267
MAX_COUNT = 908
TARGET_VARIANCE = 273.90
SEED = 20230815

OUT_PATH = Path(__file__).resolve().parent.parent / "demos" / "data" / "citations_synthetic.txt"


def negative_binomial_rest(rng):
    """Draw the non-maximum entries.

    The pinned maximum already contributes most of the dispersion, so
    the rest of the sample targets the left-over variance.
    """
    mean = (TOTAL - MAX_COUNT) / (N - 1)
    overall_mean = TOTAL / N
    pinned_term = (MAX_COUNT - overall_mean) ** 2 / N
    rest_variance = TARGET_VARIANCE - pinned_term
    shape = mean**2 / (rest_variance - mean)
    prob = shape / (shape + mean)
    counts = rng.negative_binomial(shape, prob, size=N - 1)
    return np.minimum(counts, MAX_COUNT - 1).astype(np.int64)


def fix_total(counts, rng):
    counts = counts.copy()
    diff = (TOTAL - MAX_COUNT) - int(counts.sum())
    step = 1 if diff > 0 else -1
    while diff != 0:
        i = int(rng.integers(counts.size))
        new = counts[i] + step
        if 0 <= new <= MAX_COUNT - 1:
            counts[i] = new
            diff -= step
    return counts


def fix_sum_of_squares(counts, rng):
    """Transfer single citations between entries until the population
    variance matches the target as closely as integer counts allow.

    Moving one citation from a low-count journal to a high-count one
    raises the sum of squares by 2*(high - low + 1) and conversely,
    so the total never changes.
    """
    counts = counts.copy()
    target_sumsq = round(N * TARGET_VARIANCE + TOTAL**2 / N) - MAX_COUNT**2
    sumsq = int(np.sum(counts**2))
    for _ in range(2000000):
        gap = target_sumsq - sumsq
        if abs(gap) <= 1:
            break
        i, j = rng.integers(counts.size, size=2)
        low, high = int(counts[i]), int(counts[j])
        if low > high:
            i, j, low, high = j, i, high, low
        if gap > 0:
            if low >= 1 and high <= MAX_COUNT - 2 and 2 * (high - low + 1) <= gap:
                counts[i] = low - 1
                counts[j] = high + 1
                sumsq += 2 * (high - low + 1)
        else:
            if high >= low + 2 and 2 * (high - low - 1) <= -gap:
                counts[j] = high - 1
                counts[i] = low + 1
                sumsq -= 2 * (high - low - 1)
    else:
        raise RuntimeError(f"variance adjustment stalled {target_sumsq - sumsq} away")
    return counts


def main():
    rng = np.random.default_rng(SEED)
    rest = fix_sum_of_squares(fix_total(negative_binomial_rest(rng), rng), rng)
    counts = np.sort(np.append(rest, MAX_COUNT))[::-1]

    total = int(counts.sum())
    mean = total / N
    variance = float(np.var(counts))
    assert counts.size == N
    assert total == TOTAL, total
    assert int(counts.max()) == MAX_COUNT
    assert int(counts.min()) == 0
    assert abs(variance - TARGET_VARIANCE) < 0.01, variance

    OUT_PATH.parent.mkdir(parents=True, exist_ok=True)
    OUT_PATH.write_text("".join(f"{c}\n" for c in counts), encoding="utf-8")
    print(f"wrote {OUT_PATH}")
    print(f"n={N} total={total} min={counts.min()} max={counts.max()}")
    print(f"mean={mean:.4f} variance={variance:.4f} ID={variance / mean:.4f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
