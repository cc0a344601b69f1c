"""Synthetic signal builders shared across the test modules."""

import numpy as np


def diurnal(n, amplitude=25.0, baseline=230.0, phase=0.0):
    """Smooth one-period sinusoidal temperature curve in kelvin."""
    t = np.arange(n)
    return baseline + amplitude * np.sin(2 * np.pi * t / n + phase)


def make_step_trial(seed, n=768, sigma=0.08, n_steps=10):
    """One seeded trial for the ordering experiments.

    A diurnal curve plus ``n_steps`` step artifacts of 0.5-2 K (random
    sign, positions kept >= 40 samples from the edges and spread on a
    grid so edges do not pile up) plus iid Gaussian noise.

    Returns (noisy, clean, step_positions).
    """
    rng = np.random.default_rng(seed)
    clean = diurnal(n, phase=rng.uniform(0, 2 * np.pi))
    grid = np.arange(40, n - 40, (n - 80) // n_steps)
    pos = np.sort(rng.choice(grid, size=n_steps, replace=False)
                  + rng.integers(0, 8, n_steps))
    heights = rng.uniform(0.5, 2.0, n_steps) * rng.choice([-1, 1], n_steps)
    steps = np.zeros(n)
    for p, h in zip(pos, heights):
        steps[p:] += h
    clean = clean + steps
    noisy = clean + rng.normal(0.0, sigma, n)
    return noisy, clean, pos


def gapped_rows(seed=0, n_runs=3, run_len=200, gap=300.0, sigma=0.05,
                n_short=1, short_len=10):
    """Timestamp/value rows with large gaps and some too-short runs.

    Returns (timestamps, values) 1-D arrays at nominal 1 s spacing inside
    each run.
    """
    rng = np.random.default_rng(seed)
    ts_parts, val_parts = [], []
    t = 0.0
    lengths = [run_len] * n_runs + [short_len] * n_short
    for m in lengths:
        ts_parts.append(t + np.arange(m, dtype=np.float64))
        base = 230.0 + 20.0 * rng.random()
        val_parts.append(base + rng.normal(0.0, sigma, m))
        t += m + gap
    return np.concatenate(ts_parts), np.concatenate(val_parts)
