"""Seeded sampling of rational parameters and batch execution of the checkers."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import combinatorial_bases as cb
from .identities import (
    STRUCTURAL,
    IdentityId,
    check_connection,
    check_lah,
    check_multiplication,
    check_structural,
    table1_check,
)
from .reports import IdentityReport
from .unified_family import FamilyParams, pole_order

log = logging.getLogger(__name__)

SUITES = ("structural", "multiplication", "connection", "table1", "lah", "bbh")

# numerators and denominators bounded by 9
POOL = tuple(sorted({Fraction(p, q) for p in range(-9, 10) for q in range(1, 10)}))
NONZERO = tuple(v for v in POOL if v)
GENERIC = tuple(v for v in POOL if v not in (0, 1, -1))


@dataclass(frozen=True)
class SuiteConfig:
    suite: str = "all"
    order: int = 10
    samples: int = 5
    seed: int = 0
    factorial_mode: str = cb.DEFAULT_FACTORIAL_MODE.value

    def suites(self) -> tuple[str, ...]:
        if self.suite == "all":
            return SUITES
        if self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite!r}; choose from all, {', '.join(SUITES)}")
        return (self.suite,)


def _rng(suite: str, seed: int, index: int) -> random.Random:
    return random.Random(f"{suite}:{seed}:{index}")


def _alphas(rng: random.Random, r: int, k: int) -> tuple[Fraction, ...]:
    out = []
    for _ in range(r):
        if rng.random() < 0.25:
            # alpha = 1 gives a pole unless k >= 1
            out.append(Fraction(rng.choice((1, -1))) if k >= 1 else Fraction(-1))
        else:
            out.append(rng.choice(GENERIC))
    return tuple(out)


def _logs(rng: random.Random) -> tuple[Fraction, Fraction, Fraction]:
    la = rng.choice(POOL)
    lb = rng.choice([v for v in POOL if v != la])
    return la, lb, rng.choice(POOL)


def _sample_params(rng: random.Random, r_max=3, m_max=3, k_max=2) -> FamilyParams:
    while True:
        r, m, k = rng.randint(1, r_max), rng.randint(1, m_max), rng.randint(0, k_max)
        p = FamilyParams(k, m, _alphas(rng, r, k), *_logs(rng))
        if pole_order(p) == 0 and pole_order(p.replace(m=1)) == 0:
            return p
        log.info("skipping singular sample %s", p.describe())


def _random_blocks(rng: random.Random, r: int) -> list[tuple[int, Fraction]]:
    cuts = sorted(rng.sample(range(1, r), rng.randint(0, r - 1))) if r > 1 else []
    edges = [0] + cuts + [r]
    return [(b - a, rng.choice(POOL)) for a, b in zip(edges, edges[1:])]


def _structural(cfg: SuiteConfig, i: int) -> list[IdentityReport]:
    rng = _rng("structural", cfg.seed, i)
    p = _sample_params(rng)
    y = rng.choice(POOL)
    split = rng.randint(0, p.r)
    blocks = _random_blocks(rng, p.r)
    out = []
    for id_ in STRUCTURAL:
        q = p.replace(m=1) if id_ is IdentityId.REFLECT_15 else p
        out.append(check_structural(id_, q, cfg.order, y=y, split=split, blocks=blocks))
    return out


def _multiplication(cfg: SuiteConfig, i: int) -> list[IdentityReport]:
    rng = _rng("multiplication", cfg.seed, i)
    ell_max = min(6, cfg.order)
    if i == 0:
        plain = FamilyParams(1, 1, (Fraction(1),), 0, 1, 1)
        lowered = FamilyParams(2, 1, (Fraction(1),), 0, 1, 1)
    else:
        r = rng.randint(1, 2)
        al = tuple(rng.choice(GENERIC) for _ in range(r))
        plain = FamilyParams(rng.randint(0, 2), 1, al, 0, 1, 1)
        lowered = FamilyParams(rng.randint(1, 2), 1, al, 0, 1, 1)
    out = []
    for n in (2, 3):
        out.append(check_multiplication(IdentityId.NORLUND_18, plain, n, ell_max=ell_max))
        out.append(check_multiplication(IdentityId.NORLUND_19, lowered, n, ell_max=ell_max))
        for mm in (2, 3):
            out.append(check_multiplication(IdentityId.CARLITZ_20, plain, n, mm, ell_max=ell_max))
            out.append(check_multiplication(IdentityId.CARLITZ_21, lowered, n, mm, ell_max=ell_max))
    return out


def _connection(cfg: SuiteConfig, i: int) -> list[IdentityReport]:
    rng = _rng("connection", cfg.seed, i)
    if i == 0:
        p = FamilyParams(1, 1, (Fraction(1),), 0, 1, 1)
    else:
        p = _sample_params(rng, r_max=2, m_max=2)
    N = cfg.order
    nodes = tuple(rng.choice(POOL) for _ in range(max(8, N)))
    out = [
        check_connection(IdentityId.GENSTIRLING_22, p, N, nodes=nodes),
        check_connection(IdentityId.STIRLING_23, p, N),
    ]
    for a in (0, Fraction(1, 2)):
        out.append(check_connection(IdentityId.LAGUERRE_24, p, N, alpha=a))
    for a, b in ((0, 0), (Fraction(1, 2), Fraction(1, 3))):
        out.append(check_connection(IdentityId.JACOBI_25, p, N, alpha=a, beta=b))
    out.append(check_connection(IdentityId.HERMITE_26, p, N))
    return out


def _table1(cfg: SuiteConfig, i: int) -> list[IdentityReport]:
    out = []
    for row in range(1, 14):
        rng = _rng(f"table1-{row}", cfg.seed, i)
        la, lb, lc = _logs(rng)
        sample = dict(
            r=rng.randint(1, 3), lam=rng.choice(GENERIC), m=rng.randint(1, 3), k=rng.randint(0, 2),
            beta=rng.choice(GENERIC), L=rng.choice(NONZERO), log_a=la, log_b=lb, log_c=lc,
        )
        sample["alphas"] = tuple(rng.choice(GENERIC) for _ in range(sample["r"]))
        out.append(table1_check(row, sample, cfg.order))
    return out


def _lah(cfg: SuiteConfig, i: int) -> list[IdentityReport]:
    rng = _rng("lah", cfg.seed, i)
    r, k = 1 + i % 2, (i // 2) % 2
    n = min(4, cfg.order)
    al = [rng.choice(GENERIC) for _ in range(r)]
    extra = [rng.choice(GENERIC) for _ in range(r + 8)]
    generic = [rng.choice(GENERIC) for _ in range(r + 8)]
    return [
        check_lah(r, al, al + extra, k, n),
        check_lah(r, al, generic, k, n),
    ]


def _bbh(cfg: SuiteConfig, i: int) -> list[IdentityReport]:
    rng = _rng("bbh", cfg.seed, i)
    r, k = rng.randint(1, 2), rng.randint(0, 2)
    p = FamilyParams(k, 1, tuple(rng.choice(GENERIC) for _ in range(r)), 0, 1, 1)
    while True:
        x, a, b = rng.choice(POOL), rng.choice(POOL), rng.choice(POOL)
        if 1 + a * x:
            break
    return [check_connection(IdentityId.BBH_28, p, cfg.order, x=x, a=a, b=b,
                             factorial_mode=cfg.factorial_mode)]


RUNNERS: dict[str, Callable[[SuiteConfig, int], list[IdentityReport]]] = {
    "structural": _structural,
    "multiplication": _multiplication,
    "connection": _connection,
    "table1": _table1,
    "lah": _lah,
    "bbh": _bbh,
}

_ID_ORDER = {id_.value: n for n, id_ in enumerate(IdentityId)}


def _sort_key(item: tuple[int, IdentityReport]) -> tuple:
    index, rep = item
    if rep.id.startswith("TABLE1_ROW("):
        return (len(_ID_ORDER), int(rep.id[11:-1]), index)
    return (_ID_ORDER[rep.id], 0, index)


def run_suite(config: SuiteConfig) -> list[IdentityReport]:
    """Run the selected checkers on ``config.samples`` seeded parameter draws.

    Reports are ordered by identity, then sample index.
    """
    tagged: list[tuple[int, IdentityReport]] = []
    for name in config.suites():
        for i in range(config.samples):
            tagged.extend((i, rep) for rep in RUNNERS[name](config, i))
    return [rep for _, rep in sorted(tagged, key=_sort_key)]
