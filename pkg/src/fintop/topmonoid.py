"""A finite space and a Cayley table sharing one carrier."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import CarrierMismatch, ForeignPoint, NoIdentity, NotACongruence
from .finspace import (
    FiniteSpace,
    Partition,
    SpaceMap,
    all_partitions,
    bits,
    image_mask,
    product,
    quotient_space,
    space_from_subbase,
)
from .semigroup import (
    CayleyTable,
    Congruence,
    congruence_closure_indices,
    is_congruence,
    product_table,
    quotient_table,
)


@dataclass(frozen=True)
class MonoidProfile:
    semitopological: bool
    topological: bool
    left_open: bool
    right_open: bool
    cancellative: bool
    monoid: bool

    @property
    def open_shifts(self) -> bool:
        return self.left_open and self.right_open

    @property
    def one_sided_open(self) -> bool:
        return self.left_open or self.right_open

    def as_dict(self) -> dict:
        return {
            "monoid": self.monoid,
            "semitopological": self.semitopological,
            "topological": self.topological,
            "left_open": self.left_open,
            "right_open": self.right_open,
            "open_shifts": self.open_shifts,
            "cancellative": self.cancellative,
        }


def _profile(space: FiniteSpace, algebra: CayleyTable) -> MonoidProfile:
    n = space.n
    mo = space.min_open
    t = algebra.table
    left_cont = right_cont = left_open = right_open = True
    for a in range(n):
        row = t[a]
        col = tuple(r[a] for r in t)
        for x in range(n):
            li = image_mask(mo[x], row)
            ri = image_mask(mo[x], col)
            if left_cont and li & ~mo[row[x]]:
                left_cont = False
            if right_cont and ri & ~mo[col[x]]:
                right_cont = False
            if left_open and not space.is_open(li):
                left_open = False
            if right_open and not space.is_open(ri):
                right_open = False
    semitop = left_cont and right_cont
    top = semitop and _jointly_continuous(space, algebra)
    return MonoidProfile(semitop, top, left_open, right_open, algebra.is_cancellative, algebra.is_monoid)


def _jointly_continuous(space: FiniteSpace, algebra: CayleyTable) -> bool:
    mo = space.min_open
    t = algebra.table
    members = [list(bits(m)) for m in mo]
    for x in range(space.n):
        for y in range(space.n):
            target = mo[t[x][y]]
            for u in members[x]:
                row = t[u]
                for v in members[y]:
                    if not target >> row[v] & 1:
                        return False
    return True


@dataclass(frozen=True)
class TopMonoid:
    space: FiniteSpace
    algebra: CayleyTable

    @cached_property
    def profile(self) -> MonoidProfile:
        return _profile(self.space, self.algebra)

    @property
    def points(self) -> tuple:
        return self.space.points

    @property
    def n(self) -> int:
        return self.space.n

    def __repr__(self):
        return f"TopMonoid({self.space!r}, {self.algebra!r})"


def assemble(space: FiniteSpace, algebra: CayleyTable) -> TopMonoid:
    if space.points != algebra.points:
        raise CarrierMismatch("space and table must share the same ordered carrier")
    return TopMonoid(space, algebra)


def product_topmonoid(a: TopMonoid, b: TopMonoid) -> TopMonoid:
    return assemble(product(a.space, b.space), product_table(a.algebra, b.algebra))


def shift_map(tm: TopMonoid, a, side: str) -> SpaceMap:
    i = tm.algebra.index[a]
    assignment = tm.algebra.left(i) if side == "left" else tm.algebra.right(i)
    return SpaceMap(tm.space, tm.space, tuple(assignment))


# -- closed congruences ------------------------------------------------------


def pair_closure_labels(space: FiniteSpace, labels) -> list[tuple[int, int]]:
    """Pairs (x, y) in the closure of the relation in S×S that it does not already contain.

    (x, y) is in the closure iff min_open(x) × min_open(y) meets the relation,
    i.e. min_open(x) and min_open(y) meet a common class.
    """
    classes = []
    for m in space.min_open:
        c = 0
        for i in bits(m):
            c |= 1 << labels[i]
        classes.append(c)
    n = space.n
    return [
        (x, y)
        for x in range(n)
        for y in range(x + 1, n)
        if labels[x] != labels[y] and classes[x] & classes[y]
    ]


def is_closed_relation(space: FiniteSpace, partition: Partition) -> bool:
    return not pair_closure_labels(space, partition.labels)


def _index_pairs(tm: TopMonoid, seed) -> list[tuple[int, int]]:
    index = tm.space.index
    out = []
    for x, y in seed:
        if x not in index or y not in index:
            raise ForeignPoint(f"seed pair {(x, y)!r} leaves the carrier")
        out.append((index[x], index[y]))
    return out


def closed_congruence_closure(tm: TopMonoid, seed: Iterable[tuple] = ()) -> Congruence:
    """Least congruence containing ``seed`` whose pair set is closed in S×S.

    Alternates congruence closure with topological closure of the pair set
    until neither adds a pair.
    """
    table = tm.algebra.table
    labels = congruence_closure_indices(table, _index_pairs(tm, seed))
    rounds = 0
    while True:
        extra = pair_closure_labels(tm.space, labels)
        if not extra:
            break
        rounds += 1
        assert rounds <= tm.n * tm.n, "closed-congruence fixpoint failed to converge"
        seed_pairs = [(i, j) for i in range(tm.n) for j in range(tm.n) if labels[i] == labels[j] and i < j]
        labels = congruence_closure_indices(table, seed_pairs + extra)
    return Congruence(Partition(tm.points, labels), tm.algebra)


def least_closed_congruence_oracle(tm: TopMonoid, seed: Iterable[tuple] = ()) -> Partition:
    """Brute force: meet of every closed congruence containing ``seed``."""
    pairs = _index_pairs(tm, seed)
    result = Partition.total(tm.points)
    for p in all_partitions(tm.points):
        if (
            all(p.related(x, y) for x, y in pairs)
            and is_congruence(tm.algebra, p)
            and is_closed_relation(tm.space, p)
        ):
            result = result.meet(p)
    return result


# -- retopologisation and quotients -----------------------------------------


def gamma_retopologize(tm: TopMonoid) -> TopMonoid:
    """Retopologise by the subbase of all translates aU and Ua of the identity's minimal open U."""
    alg = tm.algebra
    if not alg.is_monoid:
        raise NoIdentity("γ-retopologisation needs an identity element")
    u = tm.space.min_open[alg.identity]
    subbase = set()
    for a in range(tm.n):
        subbase.add(image_mask(u, alg.left(a)))
        subbase.add(image_mask(u, alg.right(a)))
    return assemble(space_from_subbase(tm.points, subbase), alg)


def quotient_topmonoid(tm: TopMonoid, c: Congruence | Partition) -> tuple[TopMonoid, SpaceMap]:
    p = c.partition if isinstance(c, Congruence) else c
    if p.carrier != tm.points:
        raise CarrierMismatch("congruence carrier differs from the monoid's points")
    if not is_congruence(tm.algebra, p):
        raise NotACongruence(f"{p!r} is not a congruence")
    qspace, proj = quotient_space(tm.space, p)
    qtable, _ = quotient_table(tm.algebra, p)
    return assemble(qspace, qtable), proj


def is_topological_group(tm: TopMonoid) -> bool:
    """Group whose multiplication and inversion are both continuous."""
    alg = tm.algebra
    if not (alg.is_group and tm.profile.topological):
        return False
    inv = tuple(alg.inverse(x) for x in range(tm.n))
    return all(
        image_mask(m, inv) & ~tm.space.min_open[inv[x]] == 0 for x, m in enumerate(tm.space.min_open)
    )
