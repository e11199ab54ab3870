"""Enumeration guards for the exponential (subset-enumerating) evaluators.

Defaults can be overridden with the ``RHOLATIN_GUARDS`` environment variable, which
holds a JSON object mapping field names to integers, e.g.
``RHOLATIN_GUARDS='{"pair_k": 8}'``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields, replace

from .errors import InvalidParams, TooLarge

ENV_VAR = "RHOLATIN_GUARDS"


@dataclass(frozen=True)
class Guards:
    # Ore / Theorem-5.1 evaluators: total number of enumerated vertex bits.
    factor_bits: int = 20
    # single-subset conditions (one of I, J or K enumerated at a time)
    single_rs: int = 6
    single_k: int = 8
    # pairwise (I, K) / (J, K) conditions
    pair_rs: int = 5
    pair_k: int = 6
    # fitting-sequence enumeration: max number of candidate a- (or b-) vectors
    fitting_vectors: int = 20000
    # brute-force oracle
    oracle_n: int = 6
    oracle_k: int = 10
    count_n: int = 4

    def check(self, name: str, value: int, what: str) -> None:
        limit = getattr(self, name)
        if value > limit:
            raise TooLarge(f"{what}={value} exceeds guard {name}={limit}")


def load_guards(env: dict | None = None) -> Guards:
    env = os.environ if env is None else env
    raw = env.get(ENV_VAR)
    if not raw:
        return Guards()
    try:
        overrides = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InvalidParams(f"{ENV_VAR} is not valid JSON: {exc}") from exc
    known = {f.name for f in fields(Guards)}
    unknown = set(overrides) - known
    if unknown:
        raise InvalidParams(f"unknown guard fields in {ENV_VAR}: {sorted(unknown)}")
    return replace(Guards(), **{k: int(v) for k, v in overrides.items()})


DEFAULT_GUARDS = Guards()
