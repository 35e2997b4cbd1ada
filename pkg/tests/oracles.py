"""Independent checks that share no code with the package under test."""

import itertools

import numpy as np


def all_inputs(n):
    return np.array(list(itertools.product((0, 1), repeat=n)), dtype=float)


def random_witness_search(outputs, n, samples=10_000, seed=0):
    """Return (w, t) realizing ``outputs`` (binary-counting order) or None.

    Samples weights and threshold uniformly in [-1, 1] and checks every
    row with the strict rule.
    """
    rng = np.random.default_rng(seed)
    params = rng.uniform(-1, 1, size=(samples, n + 1))
    sums = params[:, :n] @ all_inputs(n).T  # (samples, 2^n)
    fires = sums > params[:, n : n + 1]
    ok = np.all(fires == np.asarray(outputs, dtype=bool), axis=1)
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        return None
    best = params[hits[0]]
    return best[:n], best[n]


def xorshift64star_stream(seed, count):
    """Uniform [0, 1) doubles from splitmix64-seeded xorshift64*, in uint64 numpy math."""
    with np.errstate(over="ignore"):
        z = np.uint64(seed) + np.uint64(0x9E3779B97F4A7C15)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        x = z ^ (z >> np.uint64(31))
        out = []
        for _ in range(count):
            x ^= x >> np.uint64(12)
            x ^= x << np.uint64(25)
            x ^= x >> np.uint64(27)
            r = x * np.uint64(0x2545F4914F6CDD1D)
            out.append(int(r >> np.uint64(11)) / 2.0**53)
    return out


def central_difference_grad(f, theta, h=1e-5):
    g = np.zeros_like(theta)
    for i in range(theta.size):
        up, down = theta.copy(), theta.copy()
        up[i] += h
        down[i] -= h
        g[i] = (f(up) - f(down)) / (2 * h)
    return g


def max_relative_error(a, b, floor=1e-8):
    a, b = np.ravel(a), np.ravel(b)
    denom = np.maximum(np.maximum(np.abs(a), np.abs(b)), floor)
    return float(np.max(np.abs(a - b) / denom))
