"""Lattice configuration: dimension and critical probability."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError

# Exact for d=2 bond percolation (Kesten); no closed form is known for d >= 3,
# so higher dimensions require an explicit value from the caller.
DEFAULT_PC = {2: 0.5}


@dataclass(frozen=True)
class LatticeConfig:
    d: int
    p_c: float

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 2:
            raise ConfigError(f"dimension must be an integer >= 2, got {self.d!r}")
        if not (0.0 < self.p_c < 1.0):
            raise ConfigError(f"p_c must lie in (0, 1), got {self.p_c!r}")

    @property
    def alpha(self) -> float:
        """alpha = 1/p_c - 1, the critical surface-area-to-volume ratio."""
        return 1.0 / self.p_c - 1.0

    @property
    def beta_max(self) -> float:
        """Upper edge 2(d-1) of the subcritical ratio range (0, 2(d-1))."""
        return 2.0 * (self.d - 1)

    def support_bound(self, n: int) -> int:
        """Largest possible outlying-edge count for an n-edge animal."""
        return 2 * (self.d - 1) * n + 2 * self.d


def make_config(d: int, p_c: float | None = None) -> LatticeConfig:
    """Build a LatticeConfig, defaulting p_c where an exact value exists."""
    if p_c is None:
        if d not in DEFAULT_PC:
            raise ConfigError(
                f"no default p_c for d={d}; supply one explicitly"
            )
        p_c = DEFAULT_PC[d]
    return LatticeConfig(d=d, p_c=float(p_c))
