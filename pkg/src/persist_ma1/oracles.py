"""Independent ground truth: exact piecewise-polynomial DP and seeded Monte Carlo.

Nothing here touches the series or region-formula code paths.

The DP iterates f_1 = 1/(1+a) on [-a, 1] and

    f_{k+1}(y) = 1/(1+a) * integral of f_k over {x in [-a, 1] : theta*x <= y},

so that p_n is the integral of f_{n+1}.  Every f_k is piecewise polynomial
with exact rational breakpoints, so the whole computation is exact.
"""

from __future__ import annotations

import bisect
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import CapExceeded, DomainError
from .model import Params

DEFAULT_CAP = 10
CAP_ENV = "PERSIST_MA1_CAP"


def _cap() -> int:
    raw = os.environ.get(CAP_ENV)
    return int(raw) if raw else DEFAULT_CAP


# -- polynomial helpers on plain coefficient tuples (low -> high) --------------

def _peval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _pantideriv(p: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return (Fraction(0),) + tuple(c / (k + 1) for k, c in enumerate(p))


def _pscale(p: Sequence[Fraction], s: Fraction) -> tuple[Fraction, ...]:
    """p(s*y)."""
    return tuple(c * s**k for k, c in enumerate(p))


def _pstrip(p: Sequence[Fraction]) -> tuple[Fraction, ...]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


@dataclass(frozen=True)
class PiecewisePoly:
    """Polynomial pieces on [breakpoints[i], breakpoints[i+1]]."""

    breakpoints: tuple[Fraction, ...]
    pieces: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.pieces) != len(self.breakpoints) - 1:
            raise ValueError("need one piece per interval")
        if any(lo >= hi for lo, hi in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("breakpoints must be strictly increasing")

    def locate(self, x: Fraction) -> int:
        i = bisect.bisect_right(self.breakpoints, x) - 1
        return min(max(i, 0), len(self.pieces) - 1)

    def __call__(self, x: Fraction) -> Fraction:
        return _peval(self.pieces[self.locate(x)], x)

    def antiderivative(self) -> PiecewisePoly:
        """Continuous G with G(left end) = 0 and G' = self."""
        out = []
        acc = Fraction(0)
        for lo, hi, p in zip(self.breakpoints, self.breakpoints[1:], self.pieces):
            P = _pantideriv(p)
            shift = acc - _peval(P, lo)
            out.append(_pstrip((P[0] + shift,) + P[1:]))
            acc = _peval(out[-1], hi)
        return PiecewisePoly(self.breakpoints, tuple(out))

    def integral(self) -> Fraction:
        G = self.antiderivative()
        return _peval(G.pieces[-1], G.breakpoints[-1])

    def merged(self) -> PiecewisePoly:
        bps = [self.breakpoints[0]]
        pieces: list[tuple[Fraction, ...]] = []
        for hi, p in zip(self.breakpoints[1:], self.pieces):
            if pieces and pieces[-1] == p:
                bps[-1] = hi
            else:
                pieces.append(p)
                bps.append(hi)
        return PiecewisePoly(tuple(bps), tuple(pieces))


def _dp_step(f: PiecewisePoly, a: Fraction, theta: Fraction) -> PiecewisePoly:
    lo_end, hi_end = -a, Fraction(1)
    inv = 1 / (1 + a)
    G = f.antiderivative()
    total = _peval(G.pieces[-1], hi_end)

    cuts = {lo_end, hi_end}
    if theta == 0:
        cuts.add(Fraction(0))
    else:
        cuts.update(theta * x for x in f.breakpoints)
    cuts = sorted(c for c in cuts if lo_end <= c <= hi_end)

    pieces = []
    for y0, y1 in zip(cuts, cuts[1:]):
        mid = (y0 + y1) / 2
        if theta == 0:
            piece = (total * inv,) if mid >= 0 else ()
        else:
            x = mid / theta
            if theta > 0:
                # S(y) = [-a, min(1, y/theta)]
                if x <= lo_end:
                    piece = ()
                elif x >= hi_end:
                    piece = (total * inv,)
                else:
                    g = G.pieces[G.locate(x)]
                    piece = tuple(c * inv for c in _pscale(g, 1 / theta))
            else:
                # S(y) = [max(-a, y/theta), 1]
                if x >= hi_end:
                    piece = ()
                elif x <= lo_end:
                    piece = (total * inv,)
                else:
                    g = _pscale(G.pieces[G.locate(x)], 1 / theta)
                    piece = tuple(-c * inv for c in g)
                    piece = (piece[0] + total * inv,) + piece[1:] if piece else (total * inv,)
        pieces.append(_pstrip(piece))
    return PiecewisePoly(tuple(cuts), tuple(pieces)).merged()


def dp_exact_table(params: Params, n_max: int, cap: int | None = None) -> list[Fraction]:
    """Exact p_0..p_n_max by iterated piecewise-polynomial integration."""
    cap = _cap() if cap is None else cap
    if n_max < 0:
        raise DomainError("n must be nonnegative")
    if n_max > cap:
        raise CapExceeded(f"n = {n_max} exceeds the DP cap {cap} (set {CAP_ENV} to raise it)")
    a, theta = params.a, params.theta
    f = PiecewisePoly((-a, Fraction(1)), ((1 / (1 + a),),))
    out = []
    for _ in range(n_max + 1):
        out.append(f.integral())
        f = _dp_step(f, a, theta)
    return out


def dp_exact_pn(params: Params, n: int, cap: int | None = None) -> Fraction:
    return dp_exact_table(params, n, cap)[n]


# -- Monte Carlo ----------------------------------------------------------------

@dataclass(frozen=True)
class McEstimate:
    mean: float
    stderr: float
    samples: int
    seed: int

    def as_json(self) -> dict:
        return {"mean": self.mean, "stderr": self.stderr, "samples": self.samples, "seed": self.seed}


MC_BLOCK = 1 << 16


def _block_hits(seed: int, block: int, rows: int, n: int, a: float, theta: float) -> int:
    # Philox is counter-based: (seed, block) fixes the stream, so the partition
    # of blocks over workers cannot change any draw.
    gen = np.random.Generator(np.random.Philox(key=(seed & (2**64 - 1)) | (block << 64)))
    u = gen.random((rows, n + 1))
    x = u * (1.0 + a) - a
    ok = np.all(x[:, 1:] >= theta * x[:, :-1], axis=1)
    return int(np.count_nonzero(ok))


def mc_estimate(params: Params, n: int, samples: int, seed: int, workers: int = 1) -> McEstimate:
    """Frequency of {X_(i+1) >= theta X_i, i = 1..n} over ``samples`` draws."""
    if samples < 1:
        raise DomainError("samples must be positive")
    if n < 0:
        raise DomainError("n must be nonnegative")
    a, theta = float(params.a), float(params.theta)
    blocks = [(k, min(MC_BLOCK, samples - k * MC_BLOCK)) for k in range(math.ceil(samples / MC_BLOCK))]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(lambda kb: _block_hits(seed, kb[0], kb[1], n, a, theta), blocks))
    else:
        hits = sum(_block_hits(seed, k, rows, n, a, theta) for k, rows in blocks)
    mean = hits / samples
    return McEstimate(mean, math.sqrt(mean * (1 - mean) / samples), samples, seed)
