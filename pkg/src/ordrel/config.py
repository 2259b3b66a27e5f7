"""Size guards for the exponential constructions.

The defaults can be overridden process-wide with the ``ORDREL_MAX_SIZE``
environment variable. Explicit arguments always win over the environment.
"""
import os
from dataclasses import dataclass

from .errors import SizeGuard

ENV_VAR = "ORDREL_MAX_SIZE"


@dataclass(frozen=True)
class Limits:
    space: int = 6  # |X| allowed for the upset lattice
    algebra: int = 64  # |A| allowed for prime filter computation
    hom: int = 20  # |A^op x B| allowed when enumerating all relations

    @classmethod
    def from_size(cls, n: int) -> "Limits":
        # One knob: n bounds posets, 2**n bounds lattices, n*n bounds hom enumeration.
        return cls(space=n, algebra=2 ** n, hom=n * n)


def current_limits(max_size: int | None = None) -> Limits:
    if max_size is not None:
        return Limits.from_size(max_size)
    raw = os.environ.get(ENV_VAR)
    if raw:
        try:
            return Limits.from_size(int(raw))
        except ValueError:
            raise SizeGuard(f"{ENV_VAR} must be an integer, got {raw!r}")
    return Limits()


def check_size(what: str, size: int, bound: int):
    if size > bound:
        raise SizeGuard(f"{what} has size {size}, above the guard {bound}; "
                        f"raise it with --max-size or {ENV_VAR}", witness=size)
