"""Finite semigroups and monoids given by Cayley tables, and their congruences."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .errors import AssociativityViolation, CarrierMismatch, DuplicatePoint, ForeignPoint, NotACongruence
from .finspace import Partition, all_partitions, bits


def find_identity(table: Sequence[Sequence[int]]) -> int | None:
    n = len(table)
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            return e
    return None


def associativity_witness(table: Sequence[Sequence[int]]) -> tuple[int, int, int] | None:
    n = len(table)
    for x in range(n):
        row = table[x]
        for y in range(n):
            xy = row[y]
            for z in range(n):
                if table[xy][z] != row[table[y][z]]:
                    return x, y, z
    return None


@dataclass(frozen=True)
class CayleyTable:
    """Associative operation on ``points``; ``table[i][j]`` is the index of points[i]·points[j]."""

    points: tuple
    table: tuple[tuple[int, ...], ...]
    identity: int | None = field(default=None, compare=False)

    @cached_property
    def index(self) -> dict:
        return {p: i for i, p in enumerate(self.points)}

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def is_monoid(self) -> bool:
        return self.identity is not None

    @cached_property
    def is_cancellative(self) -> bool:
        n = self.n
        rows_injective = all(len(set(row)) == n for row in self.table)
        cols_injective = all(len({self.table[x][a] for x in range(n)}) == n for a in range(n))
        return rows_injective and cols_injective

    @cached_property
    def is_group(self) -> bool:
        e = self.identity
        if e is None:
            return False
        n = self.n
        return all(any(self.table[x][y] == e and self.table[y][x] == e for y in range(n)) for x in range(n))

    def inverse(self, x: int) -> int | None:
        e = self.identity
        for y in range(self.n):
            if self.table[x][y] == e and self.table[y][x] == e:
                return y
        return None

    def mul(self, a, b):
        """Product of two atoms."""
        return self.points[self.table[self.index[a]][self.index[b]]]

    def left(self, a: int) -> tuple[int, ...]:
        """The left shift x ↦ a·x as an index assignment."""
        return self.table[a]

    def right(self, a: int) -> tuple[int, ...]:
        """The right shift x ↦ x·a."""
        return tuple(row[a] for row in self.table)

    def as_atoms(self) -> list[list]:
        return [[self.points[k] for k in row] for row in self.table]

    def __repr__(self):
        return f"CayleyTable({list(self.points)!r}, {self.as_atoms()!r})"


def table_from_indices(points, rows: Sequence[Sequence[int]], check: bool = True) -> CayleyTable:
    points = tuple(points)
    rows = tuple(tuple(r) for r in rows)
    if check:
        witness = associativity_witness(rows)
        if witness is not None:
            x, y, z = (points[i] for i in witness)
            raise AssociativityViolation(f"({x}{y}){z} != {x}({y}{z})", witness=(x, y, z))
    return CayleyTable(points, rows, find_identity(rows))


def make_table(points, table) -> CayleyTable:
    """Validate a Cayley table given as a row matrix of atoms or a ``{(x, y): xy}`` mapping."""
    points = tuple(points)
    if len(set(points)) != len(points):
        raise DuplicatePoint("duplicate point in table carrier")
    index = {p: i for i, p in enumerate(points)}
    n = len(points)

    def lookup(value, where):
        try:
            return index[value]
        except KeyError:
            raise ForeignPoint(f"{where}: {value!r} is not a point") from None

    if isinstance(table, Mapping):
        rows = [[lookup(table[(x, y)], f"({x!r},{y!r})") if (x, y) in table else None for y in points] for x in points]
        missing = [(points[i], points[j]) for i in range(n) for j in range(n) if rows[i][j] is None]
        if missing:
            raise CarrierMismatch(f"table is not total; missing {missing[0]!r}")
    else:
        table = [list(r) for r in table]
        if len(table) != n or any(len(r) != n for r in table):
            raise CarrierMismatch(f"table must be {n}x{n}")
        rows = [[lookup(v, f"row {i} col {j}") for j, v in enumerate(r)] for i, r in enumerate(table)]
    return table_from_indices(points, rows)


def product_table(a: CayleyTable, b: CayleyTable) -> CayleyTable:
    """Componentwise operation on pairs, row-major like :func:`finspace.product`."""
    nb = b.n
    points = tuple((x, y) for x in a.points for y in b.points)
    rows = []
    for i in range(a.n):
        for j in range(nb):
            rows.append(
                tuple(a.table[i][k] * nb + b.table[j][l] for k in range(a.n) for l in range(nb))
            )
    rows = tuple(rows)
    return CayleyTable(points, rows, find_identity(rows))


# -- congruences -------------------------------------------------------------


@dataclass(frozen=True)
class Congruence:
    partition: Partition
    over: CayleyTable = field(repr=False)

    def __post_init__(self):
        if not is_congruence(self.over, self.partition):
            raise NotACongruence(f"{self.partition!r} is not compatible with the operation")


def _compatible(table: Sequence[Sequence[int]], labels: Sequence[int]) -> bool:
    n = len(table)
    first = {}
    for i, k in enumerate(labels):
        first.setdefault(k, i)
    # comparing each point with its block representative suffices by transitivity
    for x in range(n):
        r = first[labels[x]]
        if r == x:
            continue
        for a in range(n):
            if labels[table[x][a]] != labels[table[r][a]] or labels[table[a][x]] != labels[table[a][r]]:
                return False
    return True


def is_congruence(t: CayleyTable, p: Partition) -> bool:
    if p.carrier != t.points:
        raise CarrierMismatch("partition carrier differs from the table's points")
    return _compatible(t.table, p.labels)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx < ry:
            rx, ry = ry, rx
        self.parent[rx] = ry
        return True


def congruence_closure_indices(table: Sequence[Sequence[int]], seed: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    """Canonical labels of the least congruence containing ``seed``.

    Every pair that merges two classes is pushed back with all its one-sided
    translates; pairs already related are dropped.
    """
    n = len(table)
    uf = _UnionFind(n)
    work = list(seed)
    while work:
        x, y = work.pop()
        if uf.union(x, y):
            rx, ry = table[x], table[y]
            for a in range(n):
                work.append((rx[a], ry[a]))
                work.append((table[a][x], table[a][y]))
    labels = [uf.find(i) for i in range(n)]
    relabel = {}
    return tuple(relabel.setdefault(k, len(relabel)) for k in labels)


def _seed_indices(t: CayleyTable, seed) -> list[tuple[int, int]]:
    out = []
    for x, y in seed:
        try:
            out.append((t.index[x], t.index[y]))
        except KeyError as exc:
            raise ForeignPoint(f"seed mentions unknown point {exc.args[0]!r}") from None
    return out


def congruence_closure(t: CayleyTable, seed: Iterable[tuple]) -> Congruence:
    """Least congruence containing the atom pairs in ``seed``."""
    labels = congruence_closure_indices(t.table, _seed_indices(t, seed))
    return Congruence(Partition(t.points, labels), t)


def least_congruence_oracle(t: CayleyTable, seed: Iterable[tuple]) -> Partition:
    """Brute force: meet of every congruence containing ``seed``."""
    pairs = _seed_indices(t, seed)
    result = Partition.total(t.points)
    for p in all_partitions(t.points):
        if all(p.related(x, y) for x, y in pairs) and is_congruence(t, p):
            result = result.meet(p)
    return result


def all_congruences(t: CayleyTable) -> list[Partition]:
    return [p for p in all_partitions(t.points) if is_congruence(t, p)]


@dataclass(frozen=True)
class Homomorphism:
    source: CayleyTable
    target: CayleyTable
    assignment: tuple[int, ...]

    def holds(self) -> bool:
        f, s, t = self.assignment, self.source.table, self.target.table
        n = self.source.n
        return all(f[s[x][y]] == t[f[x]][f[y]] for x in range(n) for y in range(n))


def is_homomorphism(source: CayleyTable, target: CayleyTable, assignment: Sequence[int]) -> bool:
    return Homomorphism(source, target, tuple(assignment)).holds()


def quotient_table(t: CayleyTable, c: Congruence | Partition) -> tuple[CayleyTable, Homomorphism]:
    """Block operation [x][y] = [xy]; points are the blocks as frozensets."""
    p = c.partition if isinstance(c, Congruence) else c
    if isinstance(c, Congruence) and c.over != t:
        raise CarrierMismatch("congruence belongs to a different table")
    if not is_congruence(t, p):
        raise NotACongruence(f"{p!r} is not compatible with the operation")
    reps = [bits(m)[0] for m in p.block_masks]
    rows = tuple(tuple(p.labels[t.table[r][s]] for s in reps) for r in reps)
    q = CayleyTable(p.blocks, rows, find_identity(rows))
    if t.is_monoid:
        assert q.identity == p.labels[t.identity]
    return q, Homomorphism(t, q, p.labels)


def cyclic_group(n: int, points=None) -> CayleyTable:
    points = tuple(points) if points is not None else tuple(str(i) for i in range(n))
    return table_from_indices(points, [[(i + j) % n for j in range(n)] for i in range(n)], check=False)


def table_isomorphisms(a: CayleyTable, b: CayleyTable):
    """Yield every bijection (index tuple) that is an isomorphism a → b. Brute force."""
    if a.n != b.n:
        return
    for perm in permutations(range(a.n)):
        if is_homomorphism(a, b, perm):
            yield perm


__all__ = [
    "CayleyTable",
    "Congruence",
    "Homomorphism",
    "all_congruences",
    "associativity_witness",
    "congruence_closure",
    "congruence_closure_indices",
    "cyclic_group",
    "find_identity",
    "is_congruence",
    "is_homomorphism",
    "least_congruence_oracle",
    "make_table",
    "product_table",
    "quotient_table",
    "table_from_indices",
    "table_isomorphisms",
]
