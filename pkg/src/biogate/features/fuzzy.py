"""Fuzzy entropy of a time series across embedding dimensions.

The measure follows the exponential-membership family: embedding vectors of
length ``m`` are baseline-subtracted (each window minus its own mean),
pairwise similarity is ``exp(-(d/r)^n)`` of the Chebyshev distance ``d``, and
the entropy at dimension ``m`` is ``ln(phi_m) - ln(phi_{m+1})`` where both
``phi`` terms average the similarity over the same ``N - m`` windows.

Computing dimensions 1..10 naively costs ten full O(N^2 * m) passes. The
kernel below shares one pass over sample pairs instead: for a pair (i, j) the
Chebyshev distance at every dimension follows from the running min, max and
sum of the sample differences, because

    max_k |(x[i+k] - mean_i) - (x[j+k] - mean_j)|
        = max(run_max - delta_mean, delta_mean - run_min)

with ``delta_mean = run_sum / m``. That makes all ten features one
cache-friendly O(N^2 * m_max) sweep.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from ..errors import SegmentTooShort

#: r defaults to this fraction of the segment standard deviation.
DEFAULT_TOLERANCE_SCALE = 0.2
#: Exponent of the membership function.
DEFAULT_FUZZINESS = 2.0


@dataclass(frozen=True)
class FuzzyEnParams:
    """Parameters of one fuzzy-entropy evaluation.

    ``r=None`` means 0.2 times the segment standard deviation, which makes
    the feature invariant to amplitude scaling.
    """

    m: int
    r: float | None = None
    n: float = DEFAULT_FUZZINESS

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("embedding dimension m must be >= 1")
        if self.r is not None and not (self.r > 0):
            raise ValueError("tolerance r must be > 0")
        if not (self.n > 0):
            raise ValueError("fuzziness exponent n must be > 0")


@njit(cache=True, nogil=True)
def _pair_sums(x, kmax, rinv, n):
    """Similarity sums S[d] over unordered window pairs at dimension d.

    S[d] sums exp(-(dist/r)^n) over all pairs (i, j), i < j, drawn from the
    natural index set of dimension d (windows 0 .. N-d-1).
    """
    N = x.shape[0]
    S = np.zeros(kmax + 2)
    square = n == 2.0
    for i in range(N - 1):
        for j in range(i + 1, N - 1):
            klim = N - 1 - j
            if klim > kmax + 1:
                klim = kmax + 1
            rs = 0.0
            mn = np.inf
            mx = -np.inf
            for k in range(klim):
                d = x[i + k] - x[j + k]
                rs += d
                if d < mn:
                    mn = d
                if d > mx:
                    mx = d
                c = rs / (k + 1.0)
                dd = mx - c
                d2 = c - mn
                if d2 > dd:
                    dd = d2
                t = dd * rinv
                if square:
                    t = t * t
                else:
                    t = t**n
                S[k + 1] += math.exp(-t)
    return S


@njit(cache=True, nogil=True)
def _boundary_sums(x, kmax, rinv, n):
    """Similarity sums R[m] of the boundary window against earlier ones.

    phi at dimension m+1 over the index set of dimension m equals the
    natural-set sum S[m+1] plus the pairs involving window N-m-1; R[m]
    collects exactly those.
    """
    N = x.shape[0]
    R = np.zeros(kmax + 1)
    square = n == 2.0
    for m in range(1, kmax + 1):
        b = N - m - 1
        acc = 0.0
        for i in range(b):
            rs = 0.0
            mn = np.inf
            mx = -np.inf
            for k in range(m + 1):
                d = x[i + k] - x[b + k]
                rs += d
                if d < mn:
                    mn = d
                if d > mx:
                    mx = d
            c = rs / (m + 1.0)
            dd = mx - c
            d2 = c - mn
            if d2 > dd:
                dd = d2
            t = dd * rinv
            if square:
                t = t * t
            else:
                t = t**n
            acc += math.exp(-t)
        R[m] = acc
    return R


def fuzzy_entropy_profile(
    samples, m_max: int = 10, r: float | None = None, n: float = DEFAULT_FUZZINESS
) -> np.ndarray:
    """Fuzzy entropy at every embedding dimension 1..m_max in one pass.

    Returns an array ``fe`` with ``fe[m-1]`` the entropy at dimension m.
    A constant input returns all zeros (perfect regularity) when ``r`` is
    std-relative. Extremely small explicit ``r`` can underflow every
    similarity to zero, in which case the affected entries are non-finite
    and it is the caller's job to reject them.
    """
    x = np.ascontiguousarray(getattr(samples, "samples", samples), dtype=np.float64)
    N = x.shape[0]
    if N < m_max + 2:
        raise SegmentTooShort(f"need at least {m_max + 2} samples for m={m_max}, got {N}")
    if r is None:
        sd = float(x.std())
        if sd == 0.0:
            return np.zeros(m_max)
        r = DEFAULT_TOLERANCE_SCALE * sd
    elif not (r > 0):
        raise ValueError("tolerance r must be > 0")
    S = _pair_sums(x, m_max, 1.0 / r, float(n))
    R = _boundary_sums(x, m_max, 1.0 / r, float(n))
    ms = np.arange(1, m_max + 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        fe = np.log(S[ms]) - np.log(S[ms + 1] + R[ms])
    return fe


def fuzzy_entropy(segment, params: FuzzyEnParams) -> float:
    """Fuzzy entropy of one segment at a single embedding dimension.

    For all ten dimensions at once use :func:`fuzzy_entropy_profile`, which
    shares the pairwise sweep across dimensions.
    """
    profile = fuzzy_entropy_profile(segment, m_max=params.m, r=params.r, n=params.n)
    return float(profile[params.m - 1])
