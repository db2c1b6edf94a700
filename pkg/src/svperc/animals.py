"""Exact enumeration of origin-containing bond lattice animals on Z^d.

An animal is the edge set of a finite connected subgraph with the origin as
an endpoint of some edge; it is classified by its edge count n and its
outlying-edge count m (closed edges sharing an endpoint with the animal,
each counted once). The central artifact is the SvTable of exact counts
sigma_{n,m}.

Two independent enumerators live here: the production backtracking kernel
(see _enum_kernel) and a naive level-set enumerator used as its oracle.
"""

from __future__ import annotations

import hashlib
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

from . import _enum_kernel
from .config import LatticeConfig
from .errors import ConfigError, InfeasibleError, InvariantError, RangeError

# Hard per-dimension ceilings on n_max; beyond these the search-tree size
# stops being a desk-scale computation. They also keep every int64 cell of
# the kernel's count matrix far below 2**63.
FEASIBILITY_CAPS = {2: 14, 3: 10}
DEFAULT_CAP_HIGH_D = 8
NODE_BUDGET = 2.0e10


class Edge(NamedTuple):
    """Lattice edge joining base and base + unit(axis); one id per edge."""

    base: tuple[int, ...]
    axis: int


def _unit(d: int, axis: int) -> tuple[int, ...]:
    u = [0] * d
    u[axis] = 1
    return tuple(u)


def origin_edges(d: int) -> list[Edge]:
    origin = (0,) * d
    out = []
    for ax in range(d):
        u = _unit(d, ax)
        out.append(Edge(origin, ax))
        out.append(Edge(tuple(-c for c in u), ax))
    return out


def edge_endpoints(e: Edge) -> tuple[tuple[int, ...], tuple[int, ...]]:
    d = len(e.base)
    u = _unit(d, e.axis)
    return e.base, tuple(e.base[k] + u[k] for k in range(d))


def edge_neighbors(e: Edge) -> list[Edge]:
    """The 2(2d-1) edges sharing an endpoint with e."""
    d = len(e.base)
    out = []
    for p in edge_endpoints(e):
        for ax in range(d):
            u = _unit(d, ax)
            for b2 in (p, tuple(p[k] - u[k] for k in range(d))):
                cand = Edge(b2, ax)
                if cand != e:
                    out.append(cand)
    return out


def outlying_count(edges: frozenset[Edge] | set[Edge]) -> int:
    """Number of distinct non-animal edges adjacent to the animal."""
    outer: set[Edge] = set()
    for e in edges:
        for nb in edge_neighbors(e):
            if nb not in edges:
                outer.add(nb)
    return len(outer)


@dataclass(frozen=True)
class Animal:
    """Validated origin-containing connected edge set."""

    edges: frozenset[Edge]

    def __post_init__(self):
        if not self.edges:
            raise ConfigError("an animal has at least one edge")
        d = len(next(iter(self.edges)).base)
        origin = (0,) * d
        if not any(origin in edge_endpoints(e) for e in self.edges):
            raise ConfigError("animal does not contain the origin")
        # connectivity over the edge-adjacency relation
        todo = [next(iter(self.edges))]
        seen = {todo[0]}
        while todo:
            e = todo.pop()
            for nb in edge_neighbors(e):
                if nb in self.edges and nb not in seen:
                    seen.add(nb)
                    todo.append(nb)
        if seen != self.edges:
            raise ConfigError("animal edge set is not connected")

    @property
    def n(self) -> int:
        return len(self.edges)

    @property
    def m(self) -> int:
        return outlying_count(self.edges)


def naive_enumerate(config: LatticeConfig, n_max: int) -> dict[tuple[int, int], int]:
    """Independent oracle: level-set growth with explicit edge-set dedup.

    Every origin-containing (n+1)-animal contains an origin-containing
    n-animal (remove a leaf edge of a spanning structure, keeping the origin
    side), so growing each level by all adjacent edges and deduplicating
    frozensets is complete. Exponentially slower than the kernel; intended
    for n_max <= 6 or so.
    """
    if n_max < 1:
        raise ConfigError("n_max must be >= 1")
    counts: dict[tuple[int, int], int] = {}
    level = {frozenset([e]) for e in origin_edges(config.d)}
    for animal in level:
        counts[(1, outlying_count(animal))] = counts.get((1, outlying_count(animal)), 0) + 1
    for n in range(2, n_max + 1):
        nxt = set()
        for animal in level:
            for e in animal:
                for nb in edge_neighbors(e):
                    if nb not in animal:
                        nxt.add(animal | {nb})
        level = nxt
        for animal in level:
            m = outlying_count(animal)
            counts[(n, m)] = counts.get((n, m), 0) + 1
    return counts


@dataclass(frozen=True)
class SvTable:
    """Exact counts sigma_{n,m} for one dimension, complete up to n_max."""

    config: LatticeConfig
    n_max: int
    counts: dict[tuple[int, int], int] = field(compare=True)

    def sigma(self, n: int, m: int) -> int:
        if not 1 <= n <= self.n_max:
            raise RangeError(f"n={n} outside enumerated range [1, {self.n_max}]")
        return self.counts.get((n, m), 0)

    def row(self, n: int) -> dict[int, int]:
        """All (m -> count) entries at volume n."""
        if not 1 <= n <= self.n_max:
            raise RangeError(f"n={n} outside enumerated range [1, {self.n_max}]")
        return {m: c for (nn, m), c in self.counts.items() if nn == n}

    def to_csv_bytes(self) -> bytes:
        lines = [
            f"# svtable v1 d={self.config.d} n_max={self.n_max} pc={self.config.p_c!r}"
        ]
        for (n, m) in sorted(self.counts):
            lines.append(f"{n},{m},{self.counts[(n, m)]}")
        return ("\n".join(lines) + "\n").encode("ascii")

    def to_csv(self, path: str | os.PathLike) -> None:
        with open(path, "wb") as fh:
            fh.write(self.to_csv_bytes())

    @classmethod
    def from_csv_bytes(cls, data: bytes) -> "SvTable":
        text = data.decode("ascii")
        lines = [ln for ln in text.split("\n") if ln.strip()]
        if not lines or not lines[0].startswith("# svtable v1 "):
            raise ConfigError("not an svtable v1 file")
        header: dict[str, str] = {}
        for tok in lines[0][len("# svtable v1 ") :].split():
            key, _, val = tok.partition("=")
            header[key] = val
        try:
            d = int(header["d"])
            n_max = int(header["n_max"])
            p_c = float(header["pc"])
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"malformed svtable header: {lines[0]!r}") from exc
        counts: dict[tuple[int, int], int] = {}
        for ln in lines[1:]:
            parts = ln.split(",")
            if len(parts) != 3:
                raise ConfigError(f"malformed svtable row: {ln!r}")
            n, m, c = int(parts[0]), int(parts[1]), int(parts[2])
            if c < 0 or (n, m) in counts:
                raise ConfigError(f"invalid or duplicate svtable row: {ln!r}")
            counts[(n, m)] = c
        return cls(config=LatticeConfig(d=d, p_c=p_c), n_max=n_max, counts=counts)

    @classmethod
    def from_csv(cls, path: str | os.PathLike) -> "SvTable":
        with open(path, "rb") as fh:
            return cls.from_csv_bytes(fh.read())

    def sha256(self) -> str:
        return hashlib.sha256(self.to_csv_bytes()).hexdigest()


def sigma(table: SvTable, n: int, m: int) -> int:
    """sigma_{n,m}: exact count, 0 for absent cells, error beyond n_max."""
    return table.sigma(n, m)


def feasibility_cap(d: int) -> int:
    return FEASIBILITY_CAPS.get(d, DEFAULT_CAP_HIGH_D)


def estimate_nodes(d: int, n_max: int) -> float:
    """Rough search-tree size: root degree branch bound per added edge."""
    return 2 * d * float(2 * (2 * d - 1) - 1) ** (n_max - 1)


def enumerate_table(
    config: LatticeConfig,
    n_max: int,
    *,
    threads: int = 1,
    engine: str = "auto",
    cap: int | None = None,
    node_budget: float = NODE_BUDGET,
) -> SvTable:
    """Enumerate all origin-containing animals with at most n_max edges.

    The search tree is split at fixed shallow depth into (root, first
    candidate) tasks; per-task int64 count matrices are merged by exact
    addition, so the result is identical for any thread count or schedule.
    """
    if n_max < 1:
        raise ConfigError("n_max must be >= 1")
    cap = feasibility_cap(config.d) if cap is None else cap
    est = estimate_nodes(config.d, n_max)
    if n_max > cap or est > node_budget:
        raise InfeasibleError(
            f"n_max={n_max} (d={config.d}) exceeds the feasibility cap {cap} "
            f"or node budget {node_budget:.2e}; estimated search nodes {est:.2e}",
            estimated_nodes=est,
        )
    if engine not in ("auto", "numba", "python"):
        raise ConfigError(f"unknown engine {engine!r}")
    if engine == "numba" and not _enum_kernel.HAVE_NUMBA:
        raise ConfigError("numba engine requested but numba is not importable")
    use_jit = engine != "python" and _enum_kernel.HAVE_NUMBA
    kernel = _enum_kernel.task_counts_jit if use_jit else _enum_kernel.task_counts

    geom = _enum_kernel.build_geometry(config.d, n_max)
    m_top = config.support_bound(n_max)
    deg = geom.nbr_off.shape[1]
    tasks = [(r, j) for r in range(2 * config.d) for j in range(deg)]

    def run_task(task):
        r, j = task
        local = np.zeros((n_max + 1, m_top + 1), dtype=np.int64)
        kernel(
            n_max, geom.Sd, geom.nbr_off, geom.roots, r, j, local, geom.cand_cap, geom.E
        )
        return local

    if threads <= 1:
        partials = [run_task(t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(run_task, tasks))

    total = np.zeros((n_max + 1, m_top + 1), dtype=np.int64)
    for part in partials:
        total += part
    counts = {
        (int(n), int(m)): int(total[n, m])
        for n, m in zip(*np.nonzero(total))
    }
    return SvTable(config=config, n_max=n_max, counts=counts)


@dataclass(frozen=True)
class CheckItem:
    name: str
    passed: bool
    detail: str

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class VerifyReport:
    items: tuple[CheckItem, ...]

    @property
    def ok(self) -> bool:
        return all(item.passed for item in self.items)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checks": [i.to_dict() for i in self.items]}

    def failures(self) -> list[CheckItem]:
        return [i for i in self.items if not i.passed]


def entropy_bound_holds(n: int, m: int, count: int) -> bool:
    """count <= (n+m)^(n+m) / (n^n m^m), compared in exact integers."""
    if count == 0:
        return True
    if m == 0:
        return count <= 1
    return count * n**n * m**m <= (n + m) ** (n + m)


def verify_table(table: SvTable, oracle_limit: int | None = None) -> VerifyReport:
    """Audit the table: support bound, entropy bound, oracle agreement.

    The naive oracle is exponential; its default range is n <= 6 for d=2 and
    n <= 4 above, overridable via oracle_limit.
    """
    d = table.config.d
    items: list[CheckItem] = []

    bad_support = [
        (n, m)
        for (n, m), c in table.counts.items()
        if c > 0 and not (1 <= n <= table.n_max and m <= table.config.support_bound(n))
    ]
    items.append(
        CheckItem(
            "support_bound",
            not bad_support,
            "all cells within m <= 2(d-1)n + 2d"
            if not bad_support
            else f"violations at {sorted(bad_support)[:5]}",
        )
    )

    bad_entropy = [
        (n, m)
        for (n, m), c in table.counts.items()
        if not entropy_bound_holds(n, m, c)
    ]
    items.append(
        CheckItem(
            "entropy_bound",
            not bad_entropy,
            "all cells within (n+m)^(n+m)/(n^n m^m)"
            if not bad_entropy
            else f"violations at {sorted(bad_entropy)[:5]}",
        )
    )

    if oracle_limit is None:
        oracle_limit = min(table.n_max, 6 if d == 2 else 4)
    oracle_limit = min(oracle_limit, table.n_max)
    oracle = naive_enumerate(table.config, oracle_limit)
    table_part = {
        (n, m): c for (n, m), c in table.counts.items() if n <= oracle_limit and c > 0
    }
    agree = oracle == table_part
    diff = ""
    if not agree:
        keys = set(oracle) | set(table_part)
        bad = [
            (k, oracle.get(k, 0), table_part.get(k, 0))
            for k in sorted(keys)
            if oracle.get(k, 0) != table_part.get(k, 0)
        ]
        diff = f"first mismatches {bad[:5]}"
    items.append(
        CheckItem(
            "oracle_agreement",
            agree,
            f"matches naive enumerator for n <= {oracle_limit}" if agree else diff,
        )
    )
    return VerifyReport(items=tuple(items))


def require_verified(table: SvTable, oracle_limit: int | None = None) -> None:
    report = verify_table(table, oracle_limit=oracle_limit)
    if not report.ok:
        names = ", ".join(i.name for i in report.failures())
        raise InvariantError(f"table verification failed: {names}")
