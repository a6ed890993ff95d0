"""Finite topological spaces.

A finite space is stored by its minimal-open-neighbourhood map: ``min_open[i]``
is the smallest open set containing point ``i``. Subsets of the carrier are
int bitmasks over the declared point order (bit ``i`` is ``points[i]``).
The full open-set lattice is derived on demand and is only materialised for
small carriers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Sequence

from .errors import (
    CarrierMismatch,
    DuplicatePoint,
    ForeignPoint,
    PartitionError,
    TopologyAxiomViolation,
)

Atom = Hashable


_SMALL = 1 << 12
_BITS_CACHE: dict[int, tuple[int, ...]] = {}


def _bit_indices(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def bits(mask: int) -> tuple[int, ...]:
    """Indices of the set bits of ``mask``, ascending."""
    if mask < _SMALL:
        try:
            return _BITS_CACHE[mask]
        except KeyError:
            return _BITS_CACHE.setdefault(mask, _bit_indices(mask))
    return _bit_indices(mask)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def image_mask(mask: int, assignment: Sequence[int]) -> int:
    out = 0
    for i in bits(mask):
        out |= 1 << assignment[i]
    return out


def preimage_mask(mask: int, assignment: Sequence[int]) -> int:
    out = 0
    for i, j in enumerate(assignment):
        if mask >> j & 1:
            out |= 1 << i
    return out


def _check_points(points) -> tuple:
    points = tuple(points)
    if not points:
        raise TopologyAxiomViolation("a space needs at least one point")
    if len(set(points)) != len(points):
        seen = set()
        dup = next(p for p in points if p in seen or seen.add(p))
        raise DuplicatePoint(f"duplicate point {dup!r}")
    return points


@dataclass(frozen=True)
class FiniteSpace:
    points: tuple
    min_open: tuple[int, ...]

    @classmethod
    def from_min_open(cls, points, min_open: Sequence[int], check: bool = True) -> "FiniteSpace":
        points = _check_points(points)
        min_open = tuple(min_open)
        if check:
            if len(min_open) != len(points):
                raise TopologyAxiomViolation("min_open must have one entry per point")
            for i, m in enumerate(min_open):
                if not m >> i & 1:
                    raise TopologyAxiomViolation(f"min_open({points[i]!r}) omits the point itself")
                if m >> len(points):
                    raise ForeignPoint(f"min_open({points[i]!r}) leaves the carrier")
                for j in bits(m):
                    if min_open[j] & ~m:
                        raise TopologyAxiomViolation(
                            f"min_open({points[j]!r}) is not inside min_open({points[i]!r})"
                        )
        return cls(points, min_open)

    @cached_property
    def index(self) -> dict:
        return {p: i for i, p in enumerate(self.points)}

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def full(self) -> int:
        return (1 << len(self.points)) - 1

    def mask(self, atoms: Iterable[Atom]) -> int:
        out = 0
        for a in atoms:
            try:
                out |= 1 << self.index[a]
            except KeyError:
                raise ForeignPoint(f"{a!r} is not a point of this space") from None
        return out

    def atoms(self, mask: int) -> tuple:
        return tuple(self.points[i] for i in bits(mask))

    def check_subset(self, mask: int) -> int:
        if mask < 0 or mask >> self.n:
            raise ForeignPoint(f"subset mask {mask:#x} leaves the carrier")
        return mask

    def is_open(self, mask: int) -> bool:
        mo = self.min_open
        for i in bits(mask):
            if mo[i] & ~mask:
                return False
        return True

    def is_closed(self, mask: int) -> bool:
        return self.is_open(self.full & ~mask)

    def open_hull(self, mask: int) -> int:
        """Smallest open set containing ``mask``."""
        out = 0
        for i in bits(mask):
            out |= self.min_open[i]
        return out

    @cached_property
    def opens(self) -> frozenset:
        lattice = {0}
        for m in set(self.min_open):
            lattice |= {u | m for u in lattice}
        return frozenset(lattice)

    @cached_property
    def sorted_opens(self) -> tuple[int, ...]:
        """Opens ordered by size, then by member index list."""
        return tuple(sorted(self.opens, key=lambda u: (popcount(u), list(bits(u)))))

    def closed_sets(self) -> Iterator[int]:
        full = self.full
        return (full & ~u for u in self.sorted_opens)

    def __repr__(self):
        mo = {p: self.atoms(m) for p, m in zip(self.points, self.min_open)}
        return f"FiniteSpace({list(self.points)!r}, min_open={mo!r})"


def make_space(points, opens: Iterable[Iterable[Atom]]) -> FiniteSpace:
    """Validate an explicit open-set list and build the space.

    The list must contain the empty set and the carrier and be closed under
    pairwise union and intersection.
    """
    points = _check_points(points)
    index = {p: i for i, p in enumerate(points)}
    lattice = set()
    for k, u in enumerate(opens):
        m = 0
        for a in u:
            if a not in index:
                raise ForeignPoint(f"open set #{k} mentions unknown point {a!r}")
            m |= 1 << index[a]
        lattice.add(m)
    full = (1 << len(points)) - 1
    if 0 not in lattice:
        raise TopologyAxiomViolation("the empty set is missing from opens")
    for u in lattice:
        for v in lattice:
            if u | v not in lattice:
                raise TopologyAxiomViolation(
                    f"union of {_names(points, u)} and {_names(points, v)} is missing"
                )
            if u & v not in lattice:
                raise TopologyAxiomViolation(
                    f"intersection of {_names(points, u)} and {_names(points, v)} is missing"
                )
    if full not in lattice:
        raise TopologyAxiomViolation("the full point set is missing from opens")
    min_open = []
    for i in range(len(points)):
        m = full
        for u in lattice:
            if u >> i & 1:
                m &= u
        min_open.append(m)
    space = FiniteSpace(points, tuple(min_open))
    assert space.opens == frozenset(lattice)
    return space


def _names(points, mask):
    return "{" + ",".join(str(points[i]) for i in bits(mask)) + "}"


def space_from_subbase(points, subbase: Iterable[int]) -> FiniteSpace:
    """Topology generated by a family of subsets (finite intersections, then unions)."""
    points = _check_points(points)
    full = (1 << len(points)) - 1
    subbase = list(subbase)
    min_open = []
    for i in range(len(points)):
        m = full
        for s in subbase:
            if s >> i & 1:
                m &= s
        min_open.append(m)
    return FiniteSpace(points, tuple(min_open))


def discrete_space(points) -> FiniteSpace:
    points = _check_points(points)
    return FiniteSpace(points, tuple(1 << i for i in range(len(points))))


def indiscrete_space(points) -> FiniteSpace:
    points = _check_points(points)
    full = (1 << len(points)) - 1
    return FiniteSpace(points, (full,) * len(points))


def sierpinski() -> FiniteSpace:
    """Points ``a``, ``b`` with ``{b}`` the only proper nonempty open."""
    return make_space(["a", "b"], [[], ["b"], ["a", "b"]])


# -- closure / interior ------------------------------------------------------


def closure(space: FiniteSpace, subset: int) -> int:
    space.check_subset(subset)
    out = 0
    for i, m in enumerate(space.min_open):
        if m & subset:
            out |= 1 << i
    return out


def interior(space: FiniteSpace, subset: int) -> int:
    space.check_subset(subset)
    out = 0
    for i, m in enumerate(space.min_open):
        if m & ~subset == 0:
            out |= 1 << i
    return out


# -- separation --------------------------------------------------------------


@dataclass(frozen=True)
class AxiomFlags:
    t0: bool
    t1: bool
    t2: bool
    t3: bool
    regular: bool
    quasiregular: bool

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in ("t0", "t1", "t2", "t3", "regular", "quasiregular")}


def _t3_by_quantifier(space: FiniteSpace) -> bool:
    opens = space.sorted_opens
    full = space.full
    for x in range(space.n):
        nbhds = [u for u in opens if u >> x & 1]
        for v in opens:
            closed = full & ~v
            if closed >> x & 1:
                continue
            covers = [w for w in opens if w & closed == closed]
            if not any(u & w == 0 for u in nbhds for w in covers):
                return False
    return True


def separation_profile(space: FiniteSpace) -> AxiomFlags:
    """Separation flags evaluated by the defining quantifiers over the open-set lattice.

    Materialises the lattice, so keep this to small carriers; the hot paths use
    :func:`is_t0` and friends instead.
    """
    opens = space.sorted_opens
    pairs = [(x, y) for x in range(space.n) for y in range(space.n) if x != y]
    t0 = all(any((u >> x & 1) != (u >> y & 1) for u in opens) for x, y in pairs)
    t1 = all(any(u >> x & 1 and not u >> y & 1 for u in opens) for x, y in pairs)
    t2 = all(
        any(u & v == 0 for u in opens if u >> x & 1 for v in opens if v >> y & 1)
        for x, y in pairs
    )
    t3 = _t3_by_quantifier(space)
    quasi = _t3_by_quantifier(semiregularization(space))
    return AxiomFlags(t0, t1, t2, t3, t3 and t0, quasi)


def is_t0(space: FiniteSpace) -> bool:
    return len(set(space.min_open)) == space.n


def is_t1(space: FiniteSpace) -> bool:
    # finite T1 spaces are discrete
    return all(m == 1 << i for i, m in enumerate(space.min_open))


def is_t2(space: FiniteSpace) -> bool:
    mo = space.min_open
    return all(mo[i] & mo[j] == 0 for i in range(space.n) for j in range(i + 1, space.n))


def is_t3(space: FiniteSpace) -> bool:
    """Point/closed-set separation; on a finite space, every minimal open is closed."""
    return all(closure(space, m) == m for m in space.min_open)


def is_regular(space: FiniteSpace) -> bool:
    return is_t3(space) and is_t0(space)


def is_quasiregular(space: FiniteSpace) -> bool:
    return is_t3(semiregularization(space))


# -- constructions -----------------------------------------------------------


def semiregularization(space: FiniteSpace) -> FiniteSpace:
    """Same carrier, topology generated by the regular opens Int(Cl(U)).

    The smallest regular open around ``x`` is Int(Cl(min_open(x))) because
    Int∘Cl is monotone and fixes regular opens.
    """
    mo = tuple(interior(space, closure(space, m)) for m in space.min_open)
    return FiniteSpace(space.points, mo)


def product(a: FiniteSpace, b: FiniteSpace) -> FiniteSpace:
    """Product space on pairs ``(x, y)``, row-major in (a, b) order."""
    nb = b.n
    rows = []
    for mb in b.min_open:
        rows.append(sum(1 << j for j in bits(mb)))
    points = tuple((x, y) for x in a.points for y in b.points)
    mo = []
    for ma in a.min_open:
        for rb in rows:
            m = 0
            for i in bits(ma):
                m |= rb << (i * nb)
            mo.append(m)
    return FiniteSpace(points, tuple(mo))


# -- partitions --------------------------------------------------------------


def _canonical_labels(labels: Sequence) -> tuple[int, ...]:
    relabel = {}
    return tuple(relabel.setdefault(k, len(relabel)) for k in labels)


@dataclass(frozen=True)
class Partition:
    """Equivalence relation on ``carrier``; ``labels[i]`` is the block number of point i.

    Labels are canonical (blocks numbered by first occurrence), so dataclass
    equality is equality of relations.
    """

    carrier: tuple
    labels: tuple[int, ...] = field(repr=False)

    @classmethod
    def from_labels(cls, carrier, labels: Sequence) -> "Partition":
        carrier = tuple(carrier)
        if len(labels) != len(carrier):
            raise PartitionError("one label per carrier point is required")
        return cls(carrier, _canonical_labels(labels))

    @classmethod
    def from_blocks(cls, carrier, blocks: Iterable[Iterable[Atom]]) -> "Partition":
        carrier = tuple(carrier)
        index = {p: i for i, p in enumerate(carrier)}
        labels = [None] * len(carrier)
        for k, block in enumerate(blocks):
            block = list(block)
            if not block:
                raise PartitionError("blocks must be nonempty")
            for a in block:
                if a not in index:
                    raise ForeignPoint(f"{a!r} is not in the carrier")
                if labels[index[a]] is not None:
                    raise PartitionError(f"{a!r} lies in two blocks")
                labels[index[a]] = k
        missing = [carrier[i] for i, lab in enumerate(labels) if lab is None]
        if missing:
            raise PartitionError(f"blocks do not cover {missing!r}")
        return cls(carrier, _canonical_labels(labels))

    @classmethod
    def identity(cls, carrier) -> "Partition":
        carrier = tuple(carrier)
        return cls(carrier, tuple(range(len(carrier))))

    @classmethod
    def total(cls, carrier) -> "Partition":
        carrier = tuple(carrier)
        return cls(carrier, (0,) * len(carrier))

    @property
    def n_blocks(self) -> int:
        return max(self.labels) + 1 if self.labels else 0

    @cached_property
    def block_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n_blocks
        for i, k in enumerate(self.labels):
            masks[k] |= 1 << i
        return tuple(masks)

    @property
    def blocks(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(self.carrier[i] for i in bits(m)) for m in self.block_masks)

    def block_lists(self) -> list[list]:
        """Blocks as member lists in carrier order."""
        return [[self.carrier[i] for i in bits(m)] for m in self.block_masks]

    def related(self, i: int, j: int) -> bool:
        return self.labels[i] == self.labels[j]

    def pairs(self) -> Iterator[tuple[int, int]]:
        for m in self.block_masks:
            members = list(bits(m))
            for i in members:
                for j in members:
                    yield i, j

    def saturate(self, mask: int) -> int:
        out = 0
        for k in {self.labels[i] for i in bits(mask)}:
            out |= self.block_masks[k]
        return out

    def refines(self, other: "Partition") -> bool:
        """True iff self ⊆ other as relations."""
        return all(len({other.labels[i] for i in bits(m)}) == 1 for m in self.block_masks)

    def meet(self, other: "Partition") -> "Partition":
        return Partition.from_labels(self.carrier, list(zip(self.labels, other.labels)))

    def is_identity(self) -> bool:
        return self.n_blocks == len(self.carrier)

    def __repr__(self):
        return f"Partition({self.block_lists()!r})"


def all_partitions(carrier) -> Iterator[Partition]:
    """Every partition of ``carrier`` (restricted-growth strings, lexicographic)."""
    carrier = tuple(carrier)
    n = len(carrier)

    def grow(prefix, top):
        if len(prefix) == n:
            yield Partition(carrier, tuple(prefix))
            return
        for k in range(top + 2):
            prefix.append(k)
            yield from grow(prefix, max(top, k))
            prefix.pop()

    if n == 0:
        return iter(())
    return grow([0], 0)


# -- maps --------------------------------------------------------------------


@dataclass(frozen=True)
class SpaceMap:
    source: FiniteSpace
    target: FiniteSpace
    assignment: tuple[int, ...]

    def __post_init__(self):
        if len(self.assignment) != self.source.n or any(
            not 0 <= j < self.target.n for j in self.assignment
        ):
            raise CarrierMismatch("assignment must send every source point to a target point")

    @classmethod
    def from_atoms(cls, source, target, mapping) -> "SpaceMap":
        return cls(source, target, tuple(target.index[mapping[p]] for p in source.points))

    def __call__(self, atom):
        return self.target.points[self.assignment[self.source.index[atom]]]

    def image(self, mask: int) -> int:
        return image_mask(mask, self.assignment)

    def preimage(self, mask: int) -> int:
        return preimage_mask(mask, self.assignment)

    def is_surjective(self) -> bool:
        return len(set(self.assignment)) == self.target.n

    def compose(self, after: "SpaceMap") -> "SpaceMap":
        """``after ∘ self``."""
        if after.source != self.target:
            raise CarrierMismatch("maps are not composable")
        return SpaceMap(self.source, after.target, tuple(after.assignment[j] for j in self.assignment))

    def as_dict(self) -> dict:
        return {p: self.target.points[j] for p, j in zip(self.source.points, self.assignment)}


def identity_map(space: FiniteSpace, target: FiniteSpace | None = None) -> SpaceMap:
    return SpaceMap(space, target or space, tuple(range(space.n)))


@dataclass(frozen=True)
class MapProfile:
    continuous: bool
    open: bool
    closed: bool
    quotient: bool


def is_continuous(f: SpaceMap) -> bool:
    tmo = f.target.min_open
    return all(f.image(m) & ~tmo[f.assignment[i]] == 0 for i, m in enumerate(f.source.min_open))


def _quotient_min_open(space: FiniteSpace, fibres: Partition) -> list[int]:
    """Source-side masks of the smallest saturated open set around each block."""
    out = []
    for block in fibres.block_masks:
        m = block
        while True:
            grown = fibres.saturate(space.open_hull(m))
            if grown == m:
                break
            m = grown
        out.append(m)
    return out


def map_profile(f: SpaceMap) -> MapProfile:
    src, tgt = f.source, f.target
    continuous = is_continuous(f)
    # images commute with unions, so min-opens and point closures suffice
    opened = all(tgt.is_open(f.image(m)) for m in src.min_open)
    closed = all(tgt.is_closed(f.image(closure(src, 1 << i))) for i in range(src.n))
    quotient = False
    if f.is_surjective():
        fibres = Partition.from_labels(src.points, f.assignment)
        # block k of the canonical fibre partition is the fibre of target point order[k]
        order = []
        for j in f.assignment:
            if j not in order:
                order.append(j)
        induced = _quotient_min_open(src, fibres)
        quotient = all(
            f.image(induced[k]) == tgt.min_open[j] for k, j in enumerate(order)
        )
    return MapProfile(continuous, opened, closed, quotient)


def quotient_space(space: FiniteSpace, partition: Partition) -> tuple[FiniteSpace, SpaceMap]:
    """Quotient by ``partition``; target points are the blocks (frozensets of atoms)."""
    if partition.carrier != space.points:
        raise CarrierMismatch("partition carrier differs from the space's points")
    induced = _quotient_min_open(space, partition)
    labels = partition.labels
    mo = tuple(image_mask(m, labels) for m in induced)
    target = FiniteSpace(partition.blocks, mo)
    return target, SpaceMap(space, target, labels)


# -- cellularity -------------------------------------------------------------


def cellularity(space: FiniteSpace) -> int:
    """Largest number of pairwise disjoint nonempty open sets.

    Any cellular family can be shrunk to minimal opens of chosen points, so this
    is a maximum independent set among the distinct minimal opens under the
    "intersects" relation, found by branch and bound.
    """
    cands = sorted(set(space.min_open), key=lambda m: (popcount(m), m))
    best = 0

    def extend(start, used, count):
        nonlocal best
        if count > best:
            best = count
        if count + len(cands) - start <= best:
            return
        for k in range(start, len(cands)):
            if count + len(cands) - k <= best:
                return
            m = cands[k]
            if m & used == 0:
                extend(k + 1, used | m, count + 1)

    extend(0, 0, 0)
    return best
