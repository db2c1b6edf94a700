"""Backtracking kernel for exact edge-animal enumeration.

The search is Redelmeier-style, adapted to edge animals: grow the animal one
edge at a time from an ordered frontier of candidate edges; a candidate, once
passed over, stays marked for the rest of that subtree, so every animal is
generated exactly once and no canonical-form hashing is needed. "Contains the
origin" is handled by running the search once per origin-incident root edge
with all earlier roots forbidden.

The outlying-edge count m is maintained incrementally: adjcnt[e] is the number
of animal edges sharing an endpoint with e, so an edge that touches the animal
at both endpoints is still counted once (it enters m when adjcnt goes 0 -> 1).

Edges live in a flat id space over a box that the search provably cannot
leave: an edge of an n-animal containing the origin has base coordinates
within n of the origin, and only such edges ever have their neighbors
expanded. Neighbor id offsets depend only on the axis, so adjacency is one
table row per axis.

The kernel body is plain array code; it is compiled with numba when
available and runs as-is under CPython otherwise (slow, same results).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None
    HAVE_NUMBA = False


@dataclass(frozen=True)
class EnumGeometry:
    d: int
    n_max: int
    S: int
    Sd: int
    E: int
    nbr_off: np.ndarray  # (d, 2(2d-1)) int64 id offsets per edge axis
    roots: np.ndarray  # (2d,) int64 ids of origin-incident edges
    cand_cap: int


def build_geometry(d: int, n_max: int) -> EnumGeometry:
    S = 2 * n_max + 3
    shift = n_max + 1
    Sd = S**d
    powers = [S**k for k in range(d)]

    def unit(ax):
        u = [0] * d
        u[ax] = 1
        return tuple(u)

    def edge_id(base, ax):
        v = ax * Sd
        for k in range(d):
            c = base[k] + shift
            assert 0 <= c < S
            v += c * powers[k]
        return v

    origin = (0,) * d
    deg = 2 * (2 * d - 1)
    nbr_off = np.zeros((d, deg), dtype=np.int64)
    for ax in range(d):
        u_ax = unit(ax)
        neighbors = []
        for ax2 in range(d):
            u2 = unit(ax2)
            for p in (origin, u_ax):
                for b2 in (p, tuple(p[k] - u2[k] for k in range(d))):
                    cand = (b2, ax2)
                    if cand != (origin, ax) and cand not in neighbors:
                        neighbors.append(cand)
        assert len(neighbors) == deg
        for t, (b2, ax2) in enumerate(neighbors):
            nbr_off[ax, t] = (ax2 - ax) * Sd + sum(
                b2[k] * powers[k] for k in range(d)
            )

    roots = np.zeros(2 * d, dtype=np.int64)
    for ax in range(d):
        u_ax = unit(ax)
        roots[2 * ax] = edge_id(origin, ax)
        roots[2 * ax + 1] = edge_id(tuple(-u_ax[k] for k in range(d)), ax)

    return EnumGeometry(
        d=d,
        n_max=n_max,
        S=S,
        Sd=Sd,
        E=d * Sd,
        nbr_off=nbr_off,
        roots=roots,
        cand_cap=deg * (n_max + 2) + 8,
    )


def task_counts(n_max, Sd, nbr_off, roots, r_idx, j, counts, cand_cap, E):
    """Count the subtree: animals containing roots[r_idx] (earlier roots
    forbidden) whose first accepted frontier candidate is index j.

    The single-edge animal {root} is credited to task j == 0. Adds results
    into `counts[(n, m)] += ...`; int64 addition makes the merge across tasks
    order-independent.
    """
    in_animal = np.zeros(E, dtype=np.uint8)
    reached = np.zeros(E, dtype=np.uint8)
    adjcnt = np.zeros(E, dtype=np.int32)
    cand = np.zeros(cand_cap, dtype=np.int64)
    i_st = np.zeros(n_max + 2, dtype=np.int64)
    hi_st = np.zeros(n_max + 2, dtype=np.int64)
    deg = nbr_off.shape[1]

    for t in range(r_idx + 1):
        reached[roots[t]] = 1
    r = roots[r_idx]

    # Include the root: the animal was empty, so adjcnt[r] is 0 and m starts
    # at the root's fresh neighbor count.
    m = 0
    ax = r // Sd
    in_animal[r] = 1
    for t in range(deg):
        e2 = r + nbr_off[ax, t]
        if adjcnt[e2] == 0 and in_animal[e2] == 0:
            m += 1
        adjcnt[e2] += 1
    if j == 0:
        counts[1, m] += 1
    if n_max == 1:
        return

    k = 0
    for t in range(deg):
        e2 = r + nbr_off[ax, t]
        if reached[e2] == 0:
            reached[e2] = 1
            cand[k] = e2
            k += 1
    if j >= k:
        return

    # Include candidate j at depth 1; candidates 0..j-1 stay marked, which is
    # exactly the "declined earlier in this frame" state of the full search.
    e = cand[j]
    ax = e // Sd
    if adjcnt[e] > 0:
        m -= 1
    in_animal[e] = 1
    for t in range(deg):
        e2 = e + nbr_off[ax, t]
        if adjcnt[e2] == 0 and in_animal[e2] == 0:
            m += 1
        adjcnt[e2] += 1
    counts[2, m] += 1
    if n_max == 2:
        return

    kk = 0
    for t in range(deg):
        e2 = e + nbr_off[ax, t]
        if reached[e2] == 0:
            reached[e2] = 1
            cand[k + kk] = e2
            kk += 1
    s = 2  # current animal size; frame s grows the animal to size s+1
    i_st[2] = j + 1
    hi_st[2] = k + kk

    while True:
        if i_st[s] < hi_st[s]:
            e = cand[i_st[s]]
            ax = e // Sd
            if adjcnt[e] > 0:
                m -= 1
            in_animal[e] = 1
            for t in range(deg):
                e2 = e + nbr_off[ax, t]
                if adjcnt[e2] == 0 and in_animal[e2] == 0:
                    m += 1
                adjcnt[e2] += 1
            counts[s + 1, m] += 1
            if s + 1 < n_max:
                kk = 0
                hi = hi_st[s]
                for t in range(deg):
                    e2 = e + nbr_off[ax, t]
                    if reached[e2] == 0:
                        reached[e2] = 1
                        cand[hi + kk] = e2
                        kk += 1
                i_st[s + 1] = i_st[s] + 1
                hi_st[s + 1] = hi + kk
                s += 1
            else:
                for t in range(deg):
                    e2 = e + nbr_off[ax, t]
                    adjcnt[e2] -= 1
                    if adjcnt[e2] == 0 and in_animal[e2] == 0:
                        m -= 1
                in_animal[e] = 0
                if adjcnt[e] > 0:
                    m += 1
                i_st[s] += 1
        else:
            if s == 2:
                break
            s -= 1
            for t in range(hi_st[s], hi_st[s + 1]):
                reached[cand[t]] = 0
            e = cand[i_st[s]]
            ax = e // Sd
            for t in range(deg):
                e2 = e + nbr_off[ax, t]
                adjcnt[e2] -= 1
                if adjcnt[e2] == 0 and in_animal[e2] == 0:
                    m -= 1
            in_animal[e] = 0
            if adjcnt[e] > 0:
                m += 1
            i_st[s] += 1


if HAVE_NUMBA:
    task_counts_jit = numba.njit(nogil=True, cache=True)(task_counts)
else:  # pragma: no cover
    task_counts_jit = None
