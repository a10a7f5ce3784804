# -*- coding: utf-8 -*-
from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Final, NamedTuple

from .dataset import Database, Transaction

if TYPE_CHECKING:
    import numpy as np
    from numpy.typing import NDArray

__all__ = ["SPARSE", "DENSE", "DENSITY_PROFILES", "SynthSpec", "generate"]

logger: logging.Logger = logging.getLogger("synth")

SPARSE: Final[str] = "sparse"
DENSE: Final[str] = "dense"
DENSITY_PROFILES: Final[tuple[str, ...]] = (SPARSE, DENSE)


class SynthSpec(NamedTuple):
    """
    The shape of a synthetic transaction database

    A sparse database draws items with Zipf-like popularity and Poisson-distributed lengths.
    A dense one draws items uniformly, and the lengths stay close to the average.
    """

    n_transactions: int
    n_items: int
    avg_length: float
    max_per_item_utility: int = 10
    seed: int = 0
    density_profile: str = SPARSE

    def validate(self) -> SynthSpec:
        if self.n_transactions < 0:
            raise ValueError(f"Negative number of transactions: {self.n_transactions}")
        if self.n_items < 1:
            raise ValueError(f"Invalid number of items: {self.n_items}")
        if not 1.0 <= self.avg_length <= self.n_items:
            raise ValueError(f"Average length {self.avg_length} out of [1, {self.n_items}]")
        if self.max_per_item_utility < 1:
            raise ValueError(f"Invalid maximal utility: {self.max_per_item_utility}")
        if self.density_profile not in DENSITY_PROFILES:
            raise ValueError(f"Unknown density profile: {self.density_profile}")
        return self

    @property
    def name(self) -> str:
        return (
            f"{self.density_profile}-T{self.n_transactions}-I{self.n_items}-L{self.avg_length:g}"
            f"-U{self.max_per_item_utility}-S{self.seed}"
        )


def generate(spec: SynthSpec) -> Database:
    """
    Build a database; the same spec gives the same database

    :param SynthSpec spec: The shape of the data.
    :return: A database with the items numbered from 1 and their unit profits in [1, `max_per_item_utility`].
    """
    import numpy as np

    spec.validate()
    rng: np.random.Generator = np.random.default_rng(spec.seed)

    profits: NDArray[np.int64] = rng.integers(1, spec.max_per_item_utility + 1, size=spec.n_items)
    weights: NDArray[np.float64]
    lengths: NDArray[np.int64]
    if spec.density_profile == DENSE:
        weights = np.full(spec.n_items, 1.0 / spec.n_items)
        lengths = np.rint(rng.normal(spec.avg_length, 0.1 * spec.avg_length, size=spec.n_transactions))
    else:
        weights = 1.0 / np.arange(1, spec.n_items + 1)
        weights = rng.permutation(weights / weights.sum())
        lengths = 1 + rng.poisson(spec.avg_length - 1.0, size=spec.n_transactions)
    lengths = np.clip(lengths, 1, spec.n_items).astype(np.int64)

    transactions: list[Transaction] = []
    tid: int
    length: int
    for tid, length in enumerate(lengths.tolist(), start=1):
        indices: NDArray[np.int64] = np.sort(rng.choice(spec.n_items, size=length, replace=False, p=weights))
        quantities: NDArray[np.int64] = rng.integers(1, spec.max_per_item_utility // profits[indices] + 1)
        utilities: list[int] = (quantities * profits[indices]).tolist()
        transactions.append(
            Transaction(
                tid=tid,
                items=tuple((indices + 1).tolist()),
                utilities=tuple(utilities),
                tu=sum(utilities),
            )
        )
    logger.debug(f"generated {len(transactions)} transactions of {spec.name}")
    return Database(
        transactions,
        dict((item, int(profit)) for item, profit in enumerate(profits.tolist(), start=1)),
        name=spec.name,
    )
