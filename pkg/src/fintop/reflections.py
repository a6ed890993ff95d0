"""Separation-axiom reflections of finite spaces and finite (semi)topological monoids."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as cartesian
from typing import Union

from .errors import HypothesisNotMet, NotContinuous, ReflectionInvariantViolation, UnsupportedAxiom
from .finspace import (
    FiniteSpace,
    Partition,
    SpaceMap,
    all_partitions,
    bits,
    closure,
    interior,
    is_continuous,
    is_regular,
    is_t0,
    is_t1,
    is_t2,
    is_t3,
    map_profile,
    product,
    quotient_space,
    semiregularization,
)
from .semigroup import is_homomorphism
from .topmonoid import (
    TopMonoid,
    assemble,
    closed_congruence_closure,
    product_topmonoid,
    quotient_topmonoid,
)


class SeparationAxiom(enum.Enum):
    T0 = "T0"
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"
    REG = "REG"

    @property
    def supertopology_closed(self) -> bool:
        return self in (SeparationAxiom.T0, SeparationAxiom.T1, SeparationAxiom.T2)

    @classmethod
    def parse(cls, text: str) -> "SeparationAxiom":
        key = text.strip().upper()
        aliases = {"C0": "T0", "C1": "T1", "C2": "T2", "C3": "T3", "CR": "REG", "R": "REG", "REGULAR": "REG"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise UnsupportedAxiom(f"unknown axiom {text!r}") from None


_PREDICATES = {
    SeparationAxiom.T0: is_t0,
    SeparationAxiom.T1: is_t1,
    SeparationAxiom.T2: is_t2,
    SeparationAxiom.T3: is_t3,
    SeparationAxiom.REG: is_regular,
}


def satisfies(space: FiniteSpace, axiom: SeparationAxiom) -> bool:
    return _PREDICATES[axiom](space)


Object = Union[FiniteSpace, TopMonoid]


def _space_of(obj: Object) -> FiniteSpace:
    return obj.space if isinstance(obj, TopMonoid) else obj


@dataclass(frozen=True)
class ReflectionArrow:
    """``morphism``: source → target, with target satisfying ``axiom``.

    ``partition`` is the kernel of the morphism on the source carrier.
    Construction checks the invariants and raises
    :class:`ReflectionInvariantViolation` when one fails.
    """

    source: Object
    target: Object
    morphism: SpaceMap
    axiom: SeparationAxiom
    partition: Partition = field(repr=False)

    def __post_init__(self):
        src, tgt = _space_of(self.source), _space_of(self.target)
        if self.morphism.source != src or self.morphism.target != tgt:
            raise ReflectionInvariantViolation("morphism does not run from source to target")
        if not is_continuous(self.morphism):
            raise ReflectionInvariantViolation("reflection morphism is not continuous")
        if not satisfies(tgt, self.axiom):
            raise ReflectionInvariantViolation(f"target does not satisfy {self.axiom.value}")
        if self.algebraic:
            if not isinstance(self.target, TopMonoid):
                raise ReflectionInvariantViolation("algebraic source needs an algebraic target")
            if not is_homomorphism(self.source.algebra, self.target.algebra, self.morphism.assignment):
                raise ReflectionInvariantViolation("reflection morphism is not a homomorphism")
        if self.axiom.supertopology_closed and not map_profile(self.morphism).quotient:
            raise ReflectionInvariantViolation("reflection morphism is not a quotient map")

    @property
    def algebraic(self) -> bool:
        return isinstance(self.source, TopMonoid)


# -- bare spaces -------------------------------------------------------------


def _check_space_axiom(axiom: SeparationAxiom) -> None:
    if not axiom.supertopology_closed:
        raise UnsupportedAxiom(f"{axiom.value} reflection of a bare space is not supported")


def t0_partition(space: FiniteSpace) -> Partition:
    """Points are identified exactly when their minimal opens coincide."""
    return Partition.from_labels(space.points, space.min_open)


def _first_violation(space: FiniteSpace, axiom: SeparationAxiom) -> tuple[int, int] | None:
    mo = space.min_open
    for i in range(space.n):
        for j in range(i + 1, space.n):
            if axiom is SeparationAxiom.T0:
                bad = mo[i] == mo[j]
            elif axiom is SeparationAxiom.T1:
                bad = mo[i] >> j & 1 or mo[j] >> i & 1
            else:
                bad = mo[i] & mo[j]
            if bad:
                return i, j
    return None


def merge_fixpoint_partition(space: FiniteSpace, axiom: SeparationAxiom) -> Partition:
    """Merge the first unseparated pair of blocks and re-quotient until the quotient satisfies ``axiom``.

    Any two blocks left unseparated by a quotient stay unseparated in every
    coarser quotient, so each merge stays below the least admissible partition.
    """
    part = Partition.identity(space.points)
    while True:
        q, _ = quotient_space(space, part)
        hit = _first_violation(q, axiom)
        if hit is None:
            return part
        i, j = hit
        labels = [i if k == j else k for k in part.labels]
        part = Partition.from_labels(space.points, labels)


def reflection_partition(space: FiniteSpace, axiom: SeparationAxiom) -> Partition:
    _check_space_axiom(axiom)
    if axiom is SeparationAxiom.T0:
        return t0_partition(space)
    return merge_fixpoint_partition(space, axiom)


def reflect_space(x: FiniteSpace, axiom: SeparationAxiom) -> ReflectionArrow:
    part = reflection_partition(x, axiom)
    target, proj = quotient_space(x, part)
    return ReflectionArrow(x, target, proj, axiom, part)


def oracle_reflection(x: FiniteSpace, axiom: SeparationAxiom) -> Partition:
    """Meet of every partition whose quotient satisfies ``axiom`` (brute force)."""
    _check_space_axiom(axiom)
    result = Partition.total(x.points)
    for p in all_partitions(x.points):
        q, _ = quotient_space(x, p)
        if satisfies(q, axiom):
            result = result.meet(p)
    q, _ = quotient_space(x, result)
    if not satisfies(q, axiom):
        raise ReflectionInvariantViolation(f"meet of {axiom.value}-partitions is not {axiom.value}")
    return result


def functor_map(f: SpaceMap, axiom: SeparationAxiom) -> SpaceMap:
    """The induced map between reflections, commuting with both reflection morphisms."""
    _check_space_axiom(axiom)
    if not is_continuous(f):
        raise NotContinuous("functor_map needs a continuous map")
    rx = reflect_space(f.source, axiom)
    ry = reflect_space(f.target, axiom)
    out = [None] * rx.target.n
    for i, j in enumerate(f.assignment):
        k, v = rx.morphism.assignment[i], ry.morphism.assignment[j]
        if out[k] is None:
            out[k] = v
        elif out[k] != v:
            raise ReflectionInvariantViolation("induced map is not well defined on blocks")
    g = SpaceMap(rx.target, ry.target, tuple(out))
    if not is_continuous(g):
        raise ReflectionInvariantViolation("induced map is not continuous")
    return g


# -- monoids -----------------------------------------------------------------


def _require(tm: TopMonoid, flags: tuple[str, ...]) -> None:
    p = tm.profile
    for flag in flags:
        ok = p.one_sided_open if flag == "one_sided_open" else getattr(p, flag)
        if not ok:
            raise HypothesisNotMet(flag)


MONOID_HYPOTHESES = {
    SeparationAxiom.T0: ("monoid", "semitopological", "open_shifts"),
    SeparationAxiom.T1: ("monoid", "semitopological", "open_shifts"),
    SeparationAxiom.T2: ("monoid", "semitopological", "one_sided_open"),
    SeparationAxiom.T3: ("monoid", "topological", "open_shifts"),
    SeparationAxiom.REG: ("monoid", "topological", "open_shifts"),
}


def reflect_monoid(tm: TopMonoid, axiom: SeparationAxiom, check_hypotheses: bool = True) -> ReflectionArrow:
    """Reflection in the category of semitopological monoids.

    T0/T1 use the space-level partition, T2 the least closed congruence, T3
    the semiregularization on the same carrier, and REG the quotient of the
    semiregularization by regular-open separation. With
    ``check_hypotheses=False`` the constructions run regardless of the
    profile; a target that then breaks an arrow invariant raises
    :class:`ReflectionInvariantViolation`.
    """
    if check_hypotheses:
        _require(tm, MONOID_HYPOTHESES[axiom])
    if axiom in (SeparationAxiom.T0, SeparationAxiom.T1):
        part = reflection_partition(tm.space, axiom)
    elif axiom is SeparationAxiom.T2:
        part = closed_congruence_closure(tm).partition
    elif axiom is SeparationAxiom.T3:
        sr = assemble(semiregularization(tm.space), tm.algebra)
        morphism = SpaceMap(tm.space, sr.space, tuple(range(tm.n)))
        return ReflectionArrow(tm, sr, morphism, axiom, Partition.identity(tm.points))
    else:
        return _regular_reflection(tm)
    target, proj = quotient_topmonoid(tm, part)
    return ReflectionArrow(tm, target, proj, axiom, part)


def regular_open_separation(space: FiniteSpace) -> Partition:
    """Identify points that no regular open set separates."""
    regular = [u for u in space.sorted_opens if interior(space, closure(space, u)) == u]
    signature = [tuple(u >> i & 1 for u in regular) for i in range(space.n)]
    return Partition.from_labels(space.points, signature)


def _regular_reflection(tm: TopMonoid) -> ReflectionArrow:
    part = regular_open_separation(tm.space)
    sr = assemble(semiregularization(tm.space), tm.algebra)
    target, proj = quotient_topmonoid(sr, part)
    morphism = SpaceMap(tm.space, target.space, proj.assignment)
    return ReflectionArrow(tm, target, morphism, SeparationAxiom.REG, part)


def clopen_topology(space: FiniteSpace) -> FiniteSpace:
    """Same carrier, topology of the clopen sets.

    Finite T3 spaces carry partition topologies, so this is the finest T3
    topology coarser than ``space``; used as an independent check of the T3
    reflection.
    """
    full = space.full
    clopens = [u for u in space.sorted_opens if space.is_open(full & ~u)]
    mo = []
    for i in range(space.n):
        m = full
        for u in clopens:
            if u >> i & 1:
                m &= u
        mo.append(m)
    return FiniteSpace(space.points, tuple(mo))


def component_partition(space: FiniteSpace) -> Partition:
    """Points identified when no clopen set separates them (the finite regular-reflection kernel)."""
    return Partition.from_labels(space.points, clopen_topology(space).min_open)


def reflect(obj: Object, axiom: SeparationAxiom) -> ReflectionArrow:
    if isinstance(obj, TopMonoid):
        return reflect_monoid(obj, axiom)
    return reflect_space(obj, axiom)


# -- universal property ------------------------------------------------------


@dataclass
class CertificationReport:
    passed: bool
    bound: int
    targets: int
    maps: int
    failure: dict | None = None

    def as_dict(self) -> dict:
        return {
            "result": "PASS" if self.passed else "FAIL",
            "bound": self.bound,
            "targets_checked": self.targets,
            "maps_checked": self.maps,
            "failure": self.failure,
        }


@lru_cache(maxsize=None)
def _targets(axiom: SeparationAxiom, bound: int, algebraic: bool) -> tuple:
    from .enumerator import enum_spaces, enum_tables

    out = []
    for k in range(1, bound + 1):
        spaces = [s for s in enum_spaces(k) if satisfies(s, axiom)]
        if not algebraic:
            out.extend(spaces)
            continue
        tables = list(enum_tables(k))
        for s in spaces:
            for t in tables:
                tm = assemble(s, t)
                if tm.profile.semitopological:
                    out.append(tm)
    return tuple(out)


def _maps_into(src_space, src_alg, y_space, y_alg):
    """Continuous maps (homomorphisms too when algebras are given) src → Y."""
    n, k = src_space.n, y_space.n
    for assignment in cartesian(range(k), repeat=n):
        f = SpaceMap(src_space, y_space, assignment)
        if not is_continuous(f):
            continue
        if src_alg is not None and not is_homomorphism(src_alg, y_alg, assignment):
            continue
        yield assignment


def certify_universal(arrow: ReflectionArrow, bound: int = 3) -> CertificationReport:
    """Exhaustively check the reflection's universal property against all targets up to ``bound`` points.

    For every target Y satisfying the axiom (a semitopological semigroup in the
    algebraic case) and every continuous f: source → Y (homomorphic when
    algebraic) there must be exactly one continuous g: target → Y with
    g∘morphism = f.
    """
    algebraic = arrow.algebraic
    src = _space_of(arrow.source)
    mid = _space_of(arrow.target)
    src_alg = arrow.source.algebra if algebraic else None
    mid_alg = arrow.target.algebra if algebraic else None
    phi = arrow.morphism.assignment
    reached = set(phi)
    free = [j for j in range(mid.n) if j not in reached]
    targets = _targets(arrow.axiom, bound, algebraic)
    n_maps = 0
    for y in targets:
        y_space = _space_of(y)
        y_alg = y.algebra if algebraic else None
        for f in _maps_into(src, src_alg, y_space, y_alg):
            n_maps += 1
            forced = {}
            clash = False
            for i, j in enumerate(phi):
                if forced.setdefault(j, f[i]) != f[i]:
                    clash = True
                    break
            count = 0
            if not clash:
                for extra in cartesian(range(y_space.n), repeat=len(free)):
                    values = dict(forced)
                    values.update(zip(free, extra))
                    g = tuple(values[j] for j in range(mid.n))
                    if not is_continuous(SpaceMap(mid, y_space, g)):
                        continue
                    if algebraic and not is_homomorphism(mid_alg, y_alg, g):
                        continue
                    count += 1
            if count != 1:
                from .instances import to_document

                failure = {
                    "target": to_document(y),
                    "map": list(f),
                    "factorisations": count,
                }
                return CertificationReport(False, bound, len(targets), n_maps, failure)
    return CertificationReport(True, bound, len(targets), n_maps)


# -- isomorphism -------------------------------------------------------------


def find_isomorphism(a: Object, b: Object) -> tuple[int, ...] | None:
    """A carrier bijection that is a homeomorphism (and isomorphism when algebraic), or None.

    Backtracking over carrier bijections with minimal-open and table checks on
    the partial assignment.
    """
    sa, sb = _space_of(a), _space_of(b)
    if sa.n != sb.n:
        return None
    ta = a.algebra.table if isinstance(a, TopMonoid) else None
    tb = b.algebra.table if isinstance(b, TopMonoid) else None
    n = sa.n
    sig_a = [bin(m).count("1") for m in sa.min_open]
    sig_b = [bin(m).count("1") for m in sb.min_open]
    if sorted(sig_a) != sorted(sig_b):
        return None
    assign = [-1] * n
    used = [False] * n

    def consistent(i):
        for j in range(i + 1):
            fi, fj = assign[i], assign[j]
            if (sa.min_open[i] >> j & 1) != (sb.min_open[fi] >> fj & 1):
                return False
            if (sa.min_open[j] >> i & 1) != (sb.min_open[fj] >> fi & 1):
                return False
        if ta is not None:
            for x in range(i + 1):
                for y in range(i + 1):
                    z = ta[x][y]
                    if z <= i and i in (x, y, z) and assign[z] != tb[assign[x]][assign[y]]:
                        return False
        return True

    def place(i):
        if i == n:
            return True
        for v in range(n):
            if used[v] or sig_a[i] != sig_b[v]:
                continue
            assign[i] = v
            used[v] = True
            if consistent(i) and place(i + 1):
                return True
            used[v] = False
            assign[i] = -1
        return False

    return tuple(assign) if place(0) else None


def is_isomorphic(a: Object, b: Object) -> bool:
    return find_isomorphism(a, b) is not None


# -- products ----------------------------------------------------------------


@dataclass
class ProductComparison:
    axiom: SeparationAxiom
    holds: bool
    reason: str = ""
    abstractly_isomorphic: bool | None = None


@lru_cache(maxsize=4096)
def _factor_reflection(tm: TopMonoid, axiom: SeparationAxiom, check_hypotheses: bool) -> ReflectionArrow:
    # factors recur across many pairs in exhaustive sweeps
    return reflect_monoid(tm, axiom, check_hypotheses)


def compare_product_reflection(
    s: Object, t: Object, axiom: SeparationAxiom, check_hypotheses: bool = True
) -> ProductComparison:
    """Check that the canonical map C(S×T) → C(S)×C(T) is an isomorphism.

    The map sends the class of (x, y) to (φ_S(x), φ_T(y)).
    """
    if isinstance(s, TopMonoid):
        whole = reflect_monoid(product_topmonoid(s, t), axiom, check_hypotheses)
        rs = _factor_reflection(s, axiom, check_hypotheses)
        rt = _factor_reflection(t, axiom, check_hypotheses)
        right = product_topmonoid(rs.target, rt.target)
    else:
        whole = reflect_space(product(s, t), axiom)
        rs, rt = reflect_space(s, axiom), reflect_space(t, axiom)
        right = product(rs.target, rt.target)
    left = whole.target
    left_space, right_space = _space_of(left), _space_of(right)
    nt = _space_of(t).n
    nrt = _space_of(rt.target).n
    canon = [None] * left_space.n
    for idx, k in enumerate(whole.morphism.assignment):
        x, y = divmod(idx, nt)
        v = rs.morphism.assignment[x] * nrt + rt.morphism.assignment[y]
        if canon[k] is None:
            canon[k] = v
        elif canon[k] != v:
            return _mismatch(axiom, "canonical comparison map is not well defined", left, right)
    if len(set(canon)) != len(canon) or len(canon) != right_space.n:
        return _mismatch(axiom, "canonical comparison map is not a bijection", left, right)
    canon = tuple(canon)
    for i, m in enumerate(left_space.min_open):
        image = 0
        for j in bits(m):
            image |= 1 << canon[j]
        if image != right_space.min_open[canon[i]]:
            return _mismatch(axiom, "canonical comparison map is not a homeomorphism", left, right)
    if isinstance(left, TopMonoid) and not is_homomorphism(left.algebra, right.algebra, canon):
        return _mismatch(axiom, "canonical comparison map is not a homomorphism", left, right)
    return ProductComparison(axiom, True)


def _mismatch(axiom, reason, left, right) -> ProductComparison:
    return ProductComparison(axiom, False, reason, is_isomorphic(left, right))


__all__ = [
    "CertificationReport",
    "ReflectionArrow",
    "SeparationAxiom",
    "certify_universal",
    "compare_product_reflection",
    "find_isomorphism",
    "functor_map",
    "is_isomorphic",
    "oracle_reflection",
    "reflect",
    "reflect_monoid",
    "reflect_space",
    "satisfies",
]
