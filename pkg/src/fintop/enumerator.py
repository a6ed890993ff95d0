"""Exhaustive generation of small spaces, tables and topological monoids, and counterexample search.

Streams are ordered by the canonical serialisation of their objects
(lexicographic on the JSON text of :mod:`fintop.instances`). Default point
labels are ``a``, ``b``, ``c``, ...
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .errors import SizeOutOfRange, UnknownLaw
from .finspace import FiniteSpace
from .instances import dumps, to_document
from .semigroup import CayleyTable, find_identity
from .topmonoid import TopMonoid, assemble

MAX_SPACE_SIZE = 5
MAX_MONOID_SIZE = 4

ALGEBRA_FLAGS = frozenset({"monoid", "cancellative", "group"})
TOPOLOGY_FLAGS = frozenset(
    {"semitopological", "topological", "open_shifts", "left_open", "right_open", "one_sided_open"}
)


def default_points(n: int) -> tuple[str, ...]:
    return tuple("abcdefghij"[:n])


def _check_size(n: int, upper: int) -> None:
    if not 1 <= n <= upper:
        raise SizeOutOfRange(f"size must be between 1 and {upper}, got {n}")


def _opens_key(space: FiniteSpace) -> str:
    return dumps(to_document(space)["opens"])


# -- spaces ------------------------------------------------------------------


def preorder_min_opens(n: int) -> Iterator[tuple[int, ...]]:
    """Every consistent minimal-open assignment on n points (reflexive, transitive)."""
    mo = [0] * n
    others = [[m for m in range(1 << n) if m >> i & 1] for i in range(n)]

    def place(i):
        if i == n:
            yield tuple(mo)
            return
        for m in others[i]:
            ok = True
            for j in range(i):
                if m >> j & 1 and mo[j] & ~m:
                    ok = False
                    break
                if mo[j] >> i & 1 and m & ~mo[j]:
                    ok = False
                    break
            if ok:
                mo[i] = m
                yield from place(i + 1)

    yield from place(0)


@lru_cache(maxsize=None)
def _spaces(n: int, points: tuple) -> tuple[FiniteSpace, ...]:
    spaces = [FiniteSpace(points, mo) for mo in preorder_min_opens(n)]
    spaces.sort(key=_opens_key)
    return tuple(spaces)


def enum_spaces(n: int, points=None) -> Iterator[FiniteSpace]:
    """All labeled topologies on ``n`` points (1 ≤ n ≤ 5)."""
    _check_size(n, MAX_SPACE_SIZE)
    points = tuple(points) if points is not None else default_points(n)
    return iter(_spaces(n, points))


def enum_spaces_by_families(n: int) -> Iterator[frozenset]:
    """Cross-check generator: every family of subsets closed under ∪ and ∩ containing ∅ and X.

    Yields open-set lattices as frozensets of masks. Exponential in 2^n; n ≤ 4.
    """
    _check_size(n, 4)
    full = (1 << n) - 1
    middle = list(range(1, full))
    for k in range(len(middle) + 1):
        for chosen in combinations(middle, k):
            family = {0, full, *chosen}
            if all(u | v in family and u & v in family for u in chosen for v in chosen):
                yield frozenset(family)


# -- tables ------------------------------------------------------------------


def _associative_so_far(t, n) -> bool:
    for x in range(n):
        row = t[x]
        for y in range(n):
            xy = row[y]
            if xy < 0:
                continue
            rxy = t[xy]
            for z in range(n):
                yz = t[y][z]
                if yz < 0:
                    continue
                lhs = rxy[z]
                rhs = row[yz]
                if lhs >= 0 and rhs >= 0 and lhs != rhs:
                    return False
    return True


def _fill(n, t, cells, latin):
    if not cells:
        yield tuple(tuple(r) for r in t)
        return
    (i, j), rest = cells[0], cells[1:]
    for v in range(n):
        if latin and (v in t[i] or any(t[k][j] == v for k in range(n))):
            continue
        t[i][j] = v
        if _associative_so_far(t, n):
            yield from _fill(n, t, rest, latin)
        t[i][j] = -1


@lru_cache(maxsize=None)
def _tables(n: int, monoid: bool, cancellative: bool) -> tuple[tuple[tuple[int, ...], ...], ...]:
    found = set()
    if monoid:
        for e in range(n):
            t = [[-1] * n for _ in range(n)]
            for x in range(n):
                t[e][x] = x
                t[x][e] = x
            cells = [(i, j) for i in range(n) for j in range(n) if t[i][j] < 0]
            found.update(_fill(n, t, cells, cancellative))
    else:
        t = [[-1] * n for _ in range(n)]
        cells = [(i, j) for i in range(n) for j in range(n)]
        found.update(_fill(n, t, cells, cancellative))
    return tuple(sorted(found))


def enum_tables(n: int, *, monoid: bool = False, cancellative: bool = False, points=None) -> Iterator[CayleyTable]:
    """All associative tables on ``n`` labeled points, optionally only monoids / cancellative ones."""
    _check_size(n, MAX_MONOID_SIZE)
    points = tuple(points) if points is not None else default_points(n)
    rows_list = _tables(n, monoid, cancellative)
    tables = [CayleyTable(points, rows, find_identity(rows)) for rows in rows_list]
    tables.sort(key=lambda t: dumps([[points[k] for k in r] for r in t.table]))
    return iter(tables)


# -- topological monoids ----------------------------------------------------


def _flag(tm: TopMonoid, name: str) -> bool:
    if name == "group":
        return tm.algebra.is_group
    p = tm.profile
    return getattr(p, name)


def enum_topmonoids(n: int, filter=frozenset(), points=None) -> Iterator[TopMonoid]:
    """Every (topology, associative table) pair on ``n`` points whose profile has all ``filter`` flags.

    Flags: monoid, cancellative, group, semitopological, topological,
    open_shifts, left_open, right_open, one_sided_open.
    """
    _check_size(n, MAX_MONOID_SIZE)
    filter = frozenset(filter)
    unknown = filter - ALGEBRA_FLAGS - TOPOLOGY_FLAGS
    if unknown:
        raise ValueError(f"unknown profile flags {sorted(unknown)}")
    tables = [
        t
        for t in enum_tables(
            n,
            monoid="monoid" in filter or "group" in filter,
            cancellative="cancellative" in filter or "group" in filter,
            points=points,
        )
        if "group" not in filter or t.is_group
    ]
    for space in enum_spaces(n, points):
        for t in tables:
            tm = assemble(space, t)
            if all(_flag(tm, f) for f in filter):
                yield tm


# -- counterexample search ---------------------------------------------------


@dataclass(frozen=True)
class SearchSpec:
    law_id: str
    max_size: int
    hypothesis_mask: frozenset = field(default_factory=frozenset)
    budget: int | None = None

    def __post_init__(self):
        if self.max_size < 1:
            raise SizeOutOfRange("max_size must be at least 1")


@dataclass
class SearchResult:
    spec: SearchSpec
    examined: int
    counterexample: object = None
    report: object = None
    elapsed: float = 0.0

    @property
    def found(self) -> bool:
        return self.counterexample is not None


def _instances_for(law, max_size: int, required: frozenset) -> Iterator:
    """Instances in canonical order: by size, then canonical serialisation.

    Pair laws walk ordered pairs (S, T) with |S|, |T| ≤ max_size.
    """
    algebra_filter = required & ALGEBRA_FLAGS
    if law.domain in ("space", "space-pair"):
        upper = min(max_size, MAX_SPACE_SIZE)
        pool = (s for n in range(1, upper + 1) for s in enum_spaces(n))
    else:
        upper = min(max_size, MAX_MONOID_SIZE)
        pool = (tm for n in range(1, upper + 1) for tm in enum_topmonoids(n, algebra_filter))
    if law.domain.endswith("-pair"):
        pool = list(pool)
        for a in pool:
            for b in pool:
                yield (a, b)
    else:
        yield from pool


def search(spec: SearchSpec) -> SearchResult:
    """First instance (canonical order) meeting the kept hypotheses on which the law's conclusion fails."""
    from .laws import LAWS, Verdict, run_law

    if spec.law_id not in LAWS:
        raise UnknownLaw(f"unknown law {spec.law_id!r}")
    law = LAWS[spec.law_id]
    drop = frozenset(spec.hypothesis_mask)
    stray = drop - set(law.hypotheses)
    if stray:
        raise ValueError(f"{spec.law_id} does not require {sorted(stray)}")
    kept = frozenset(law.hypotheses) - drop
    start = time.perf_counter()
    examined = 0
    for inst in _instances_for(law, spec.max_size, kept):
        if spec.budget is not None and examined >= spec.budget:
            break
        report = run_law(spec.law_id, inst, drop=drop)
        if report.verdict is Verdict.HYPOTHESIS_NOT_MET:
            continue
        examined += 1
        if report.verdict is Verdict.FAILS:
            return SearchResult(spec, examined, inst, report, time.perf_counter() - start)
    return SearchResult(spec, examined, None, None, time.perf_counter() - start)


def first_hit(results: list[SearchResult]) -> SearchResult | None:
    """Reconcile partitioned searches: the hit earliest in canonical order wins.

    ``results`` must be listed in the order of their stream partitions.
    """
    for r in results:
        if r.found:
            return r
    return None


__all__ = [
    "SearchResult",
    "SearchSpec",
    "enum_spaces",
    "enum_spaces_by_families",
    "enum_tables",
    "enum_topmonoids",
    "preorder_min_opens",
    "search",
]
