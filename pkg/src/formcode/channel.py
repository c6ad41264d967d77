"""Operator-channel corruption and exhaustive minimum-distance decoding.

A transmitted codeword V of dimension l loses ``rho`` dimensions (the
receiver sees a random (l - rho)-dimensional subspace of V) and gains ``t``
error dimensions, each drawn uniformly and resampled until it lies outside
V + U. The received U then satisfies dist(V, U) = rho + t exactly.

Randomness is numpy's PCG64, seeded per trial from ``SeedSequence([seed, trial])``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .codes import SubspaceCode, theoretical_distance
from .errors import DimensionError
from .subspace import Subspace, dist, subspace_from_vectors

RNG_ALGORITHM = "PCG64"
MAX_RESAMPLES = 10_000


@dataclass(frozen=True)
class ChannelConfig:
    rho: int
    t: int
    seed: int = 0

    def validate(self, l: int, N: int) -> None:  # noqa: E741
        if self.rho < 0 or self.t < 0:
            raise DimensionError("rho and t must be nonnegative")
        if self.rho > l:
            raise DimensionError(f"cannot erase {self.rho} of {l} dimensions")
        # Each error vector must leave V + U, so l + t <= N is needed, which
        # is stricter than dim U = l - rho + t <= N.
        if l + self.t > N:
            raise DimensionError(f"cannot inject {self.t} error dimensions outside an {l}-dim space in F_q^{N}")


def trial_rng(seed: int, trial: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, trial])))


def _random_full_rank(field, rows: int, cols: int, rng) -> list[tuple[int, ...]]:
    while True:
        mat = [tuple(int(x) for x in rng.integers(0, field.q, size=cols)) for _ in range(rows)]
        if linalg.rank(field, mat, cols) == rows:
            return mat


def corrupt(v: Subspace, cfg: ChannelConfig, trial: int = 0, rng: np.random.Generator | None = None) -> Subspace:
    cfg.validate(v.l, v.N)
    if rng is None:
        rng = trial_rng(cfg.seed, trial)
    field, N = v.field, v.N
    keep = v.l - cfg.rho
    kept = linalg.combine(field, _random_full_rank(field, keep, v.l, rng), list(v.basis)) if keep else []
    received = list(kept)
    running = list(v.basis)
    for _ in range(cfg.t):
        for _attempt in range(MAX_RESAMPLES):
            x = tuple(int(c) for c in rng.integers(0, field.q, size=N))
            if linalg.rank(field, running + [x], N) > len(running):
                break
        else:  # pragma: no cover - probability below q^-MAX_RESAMPLES
            raise RuntimeError("error vector sampling did not leave V + U")
        running.append(x)
        received.append(x)
    return subspace_from_vectors(field, N, received)


@dataclass(frozen=True)
class DecodeResult:
    status: str  # "unique" or "ambiguous"
    index: int | None
    distance: int
    margin: float  # D/2 - distance

    @property
    def unique(self) -> bool:
        return self.status == "unique"


def decode(code: SubspaceCode, u: Subspace) -> DecodeResult:
    """Exhaustive argmin of dist(codeword, u)."""
    if u.N != code.N or u.field != code.field:
        raise DimensionError(f"received space lives in F_{u.field.q}^{u.N}, code in F_{code.q}^{code.N}")
    dists = [dist(w, u) for w in code.codewords]
    best = min(dists)
    winners = [i for i, x in enumerate(dists) if x == best]
    D = theoretical_distance(code.n, code.d, code.e)
    if len(winners) == 1:
        return DecodeResult("unique", winners[0], best, D / 2 - best)
    return DecodeResult("ambiguous", None, best, D / 2 - best)


@dataclass(frozen=True)
class SimulationReport:
    e: int
    d: int
    q: int
    n: int
    rho: int
    t: int
    trials: int
    unique_correct: int
    unique_wrong: int
    ambiguous: int
    seed: int
    rng: str = RNG_ALGORITHM

    CSV_HEADER = "e,d,q,n,rho,t,trials,unique_correct,unique_wrong,ambiguous,seed"

    def csv(self) -> str:
        return ",".join(
            str(x)
            for x in (self.e, self.d, self.q, self.n, self.rho, self.t, self.trials,
                      self.unique_correct, self.unique_wrong, self.ambiguous, self.seed)
        )


def simulate(code: SubspaceCode, cfg: ChannelConfig, trials: int) -> SimulationReport:
    """Send codeword ``trial % |C|`` through the channel for each trial and decode."""
    correct = wrong = ambiguous = 0
    for trial in range(trials):
        sent = trial % len(code)
        u = corrupt(code.codewords[sent], cfg, trial)
        res = decode(code, u)
        if not res.unique:
            ambiguous += 1
        elif res.index == sent:
            correct += 1
        else:
            wrong += 1
    return SimulationReport(code.e, code.d, code.q, code.n, cfg.rho, cfg.t, trials, correct, wrong, ambiguous, cfg.seed)
