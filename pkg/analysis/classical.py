"""
Classical References
====================
The binomial random walk and the exact full-dephasing limit of the coined walk.
"""

import math

import numpy as np
from scipy.stats import binom

from core.exceptions import InvalidArgumentError
from .observables import Distribution


def classical_walk(n_steps: int, p_right: float) -> Distribution:
    """
    Binomial(n, p_right) placed on x = 2k - n.

    The classical walk has no coin split: p_H carries the total, p_V is zero.
    """
    if n_steps < 0:
        raise InvalidArgumentError("n_steps", f"must be non-negative, got {n_steps}")
    if not 0.0 <= p_right <= 1.0:
        raise InvalidArgumentError("p_right", f"must lie in [0, 1], got {p_right}")

    k = np.arange(n_steps + 1)
    p_total = binom.pmf(k, n_steps, p_right)
    return Distribution(support=2 * k - n_steps, p_h=p_total, p_v=np.zeros_like(p_total), step=n_steps)


def classical_markov_oracle(n_steps: int, theta: float, w_h: float, w_v: float, x0: int = 0) -> Distribution:
    """
    Markov chain on (position, coin) with the coin's squared magnitudes as
    transition probabilities: keep the coin label with cos^2(2 theta), flip
    it with sin^2(2 theta), then shift H right and V left.
    """
    if n_steps < 0:
        raise InvalidArgumentError("n_steps", f"must be non-negative, got {n_steps}")
    if min(w_h, w_v) < 0 or abs(w_h + w_v - 1.0) > 1e-10:
        raise InvalidArgumentError("occupation", f"(wH, wV) = ({w_h}, {w_v}) is not a probability pair")

    keep = math.cos(2 * theta) ** 2
    flip = math.sin(2 * theta) ** 2
    width = 2 * n_steps + 1
    p_h = np.zeros(width)
    p_v = np.zeros(width)
    p_h[n_steps] = w_h
    p_v[n_steps] = w_v

    for _ in range(n_steps):
        tossed_h = keep * p_h + flip * p_v
        tossed_v = flip * p_h + keep * p_v
        p_h = np.zeros(width)
        p_v = np.zeros(width)
        p_h[1:] = tossed_h[:-1]
        p_v[:-1] = tossed_v[1:]

    support = np.arange(-n_steps, n_steps + 1) + x0
    return Distribution(support=support, p_h=p_h, p_v=p_v, step=n_steps)
