"""Size caps shared by the exact solvers.

Every exact routine takes its cap as a keyword argument whose default is read
from :data:`CAPS`; callers that need a bigger budget pass it explicitly.
"""
from __future__ import annotations

from dataclasses import dataclass


class CapExceeded(Exception):
    """An input is larger than the configured exact-solver budget."""


@dataclass(frozen=True)
class Caps:
    exact_chi: int = 64
    mis_enumeration: int = 30
    fractional_cg: int = 64
    kneser_vertices: int = 5000
    cycle_enumeration: int = 10**6
    kss_exhaustive: int = 10**6


CAPS = Caps()


def check_cap(size: int, cap: int, what: str) -> None:
    if size > cap:
        raise CapExceeded(f"{what}: size {size} exceeds cap {cap}")
