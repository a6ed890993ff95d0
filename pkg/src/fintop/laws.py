"""Named executable checks of the reflection and cellularity theorems.

Instances are one of::

    FiniteSpace                      "space"
    TopMonoid                        "monoid"
    (FiniteSpace, FiniteSpace)       "space-pair"
    (TopMonoid, TopMonoid)           "monoid-pair"
    (FiniteSpace, Partition)         "space+partition"
    (TopMonoid, Partition)           "monoid+congruence"

A law lists the instance kinds it accepts and the profile flags it assumes.
A single monoid given to a pair law is paired with itself.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .errors import FintopError, InstanceKindMismatch, NotACongruence, UnknownLaw
from .finspace import (
    FiniteSpace,
    Partition,
    all_partitions,
    cellularity,
    is_t2,
    is_t3,
    map_profile,
    product,
    quotient_space,
    semiregularization,
)
from .instances import digest, partition_doc, to_document
from .reflections import (
    SeparationAxiom,
    certify_universal,
    clopen_topology,
    compare_product_reflection,
    component_partition,
    reflect_monoid,
    reflect_space,
    reflection_partition,
    t0_partition,
)
from .semigroup import Congruence, all_congruences, is_congruence, quotient_table
from .topmonoid import (
    TopMonoid,
    assemble,
    closed_congruence_closure,
    gamma_retopologize,
    is_closed_relation,
    is_topological_group,
    least_closed_congruence_oracle,
    quotient_topmonoid,
)

A = SeparationAxiom


class Verdict(enum.Enum):
    HOLDS = "HOLDS"
    FAILS = "FAILS"
    HYPOTHESIS_NOT_MET = "HYPOTHESIS_NOT_MET"


@dataclass
class LawReport:
    law_id: str
    instance_digest: str
    verdict: Verdict
    witness: dict | None = None
    elapsed: float = 0.0
    note: str | None = None
    failed_hypothesis: str | None = None

    def as_dict(self, with_elapsed: bool = True) -> dict:
        out = {
            "law": self.law_id,
            "title": LAWS[self.law_id].title,
            "instance_digest": self.instance_digest,
            "verdict": self.verdict.value,
            "witness": self.witness,
            "note": self.note,
            "failed_hypothesis": self.failed_hypothesis,
        }
        if with_elapsed:
            out["elapsed"] = round(self.elapsed, 6)
        return out


@dataclass(frozen=True)
class Context:
    certify: bool = False
    bound: int = 3


@dataclass
class Outcome:
    ok: bool
    violation: dict | None = None
    note: str | None = None


@dataclass(frozen=True)
class Law:
    law_id: str
    title: str
    domain: str
    kinds: frozenset
    hypotheses: tuple[str, ...]
    check: Callable = field(repr=False)
    one_sided: bool = False


# -- instance handling -------------------------------------------------------


def instance_kind(instance) -> str:
    if isinstance(instance, FiniteSpace):
        return "space"
    if isinstance(instance, TopMonoid):
        return "monoid"
    if isinstance(instance, tuple) and len(instance) == 2:
        a, b = instance
        if isinstance(b, Congruence):
            b = b.partition
        if isinstance(a, TopMonoid) and isinstance(b, TopMonoid):
            return "monoid-pair"
        if isinstance(a, FiniteSpace) and isinstance(b, FiniteSpace):
            return "space-pair"
        if isinstance(a, TopMonoid) and isinstance(b, Partition):
            return "monoid+congruence"
        if isinstance(a, FiniteSpace) and isinstance(b, Partition):
            return "space+partition"
    raise InstanceKindMismatch(f"unrecognised instance {type(instance).__name__}")


def _monoids(instance) -> list[TopMonoid]:
    kind = instance_kind(instance)
    if kind == "monoid":
        return [instance]
    if kind == "monoid-pair":
        return list(instance)
    if kind == "monoid+congruence":
        return [instance[0]]
    return []


def _flag_value(tm: TopMonoid, flag: str, one_sided: bool) -> bool:
    p = tm.profile
    if flag == "open_shifts" and one_sided:
        return p.one_sided_open
    return getattr(p, flag)


def _instance_doc(instance):
    kind = instance_kind(instance)
    if kind in ("space", "monoid"):
        return to_document(instance)
    a, b = instance
    if isinstance(b, Congruence):
        b = b.partition
    if isinstance(b, Partition):
        return {"object": to_document(a), "partition": partition_doc(b)}
    return [to_document(a), to_document(b)]


def _partition_arg(instance) -> Partition | None:
    if instance_kind(instance) in ("monoid+congruence", "space+partition"):
        b = instance[1]
        return b.partition if isinstance(b, Congruence) else b
    return None


def _failing(message: str, **detail) -> Outcome:
    return Outcome(False, {"reason": message, **detail})


# -- conclusions -------------------------------------------------------------


def _congruences(instance) -> list[Partition]:
    tm = instance if isinstance(instance, TopMonoid) else instance[0]
    given = _partition_arg(instance)
    if given is not None:
        return [given]
    return all_congruences(tm.algebra)


def _check_quotient_open(instance, ctx) -> Outcome:
    tm = instance if isinstance(instance, TopMonoid) else instance[0]
    for c in _congruences(instance):
        _, proj = quotient_topmonoid(tm, c)
        if not map_profile(proj).open:
            return _failing("quotient projection is not open", congruence=partition_doc(c))
    return Outcome(True)


def _check_t2_iff_closed(instance, ctx) -> Outcome:
    tm = instance if isinstance(instance, TopMonoid) else instance[0]
    for c in _congruences(instance):
        q, _ = quotient_topmonoid(tm, c)
        t2, closed = is_t2(q.space), is_closed_relation(tm.space, c)
        if t2 != closed:
            return _failing(
                "quotient is T2 but congruence not closed" if t2 else "closed congruence but quotient not T2",
                congruence=partition_doc(c),
            )
    return Outcome(True)


def _check_c2(tm: TopMonoid, ctx) -> Outcome:
    fix = closed_congruence_closure(tm).partition
    oracle = least_closed_congruence_oracle(tm)
    if fix != oracle:
        return _failing("fixpoint differs from brute-force least closed congruence",
                        fixpoint=partition_doc(fix), oracle=partition_doc(oracle))
    space_t2 = reflection_partition(tm.space, A.T2)
    if fix != space_t2:
        return _failing("least closed congruence differs from the space-level T2 reflection",
                        fixpoint=partition_doc(fix), space_reflection=partition_doc(space_t2))
    q, _ = quotient_topmonoid(tm, fix)
    if not is_t2(q.space):
        return _failing("quotient by the least closed congruence is not T2", fixpoint=partition_doc(fix))
    arrow = reflect_monoid(tm, A.T2, check_hypotheses=False)
    return _certified(arrow, ctx)


def _certified(arrow, ctx) -> Outcome:
    if not ctx.certify:
        return Outcome(True)
    report = certify_universal(arrow, ctx.bound)
    if not report.passed:
        return _failing("universal property certification failed", certification=report.as_dict())
    return Outcome(True, note=f"certified at bound {ctx.bound} ({report.targets} targets)")


def _check_sr_topological(tm: TopMonoid, ctx) -> Outcome:
    sr = assemble(semiregularization(tm.space), tm.algebra)
    if not sr.profile.topological:
        return _failing("semiregularization is not a topological semigroup",
                        semiregularization=to_document(sr))
    return Outcome(True)


def _check_quasiregular(tm: TopMonoid, ctx) -> Outcome:
    sr = semiregularization(tm.space)
    if not is_t3(sr):
        return _failing("semiregularization is not T3", semiregularization=to_document(sr))
    return Outcome(True)


def _check_c3(tm: TopMonoid, ctx) -> Outcome:
    arrow = reflect_monoid(tm, A.T3, check_hypotheses=False)
    clopen = clopen_topology(tm.space)
    if arrow.target.space != clopen:
        return _failing("semiregularization differs from the finest coarser T3 topology",
                        semiregularization=to_document(arrow.target.space),
                        clopen=to_document(clopen))
    return _certified(arrow, ctx)


def _check_cr(tm: TopMonoid, ctx) -> Outcome:
    arrow = reflect_monoid(tm, A.REG, check_hypotheses=False)
    c3 = reflect_monoid(tm, A.T3, check_hypotheses=False)
    via, proj = quotient_topmonoid(c3.target, t0_partition(c3.target.space))
    if arrow.target != via:
        return _failing("regular reflection differs from T0 reflection of the T3 reflection",
                        regular=to_document(arrow.target), composite=to_document(via))
    if arrow.morphism.assignment != proj.assignment:
        return _failing("reflection morphisms differ", regular=list(arrow.morphism.assignment),
                        composite=list(proj.assignment))
    components = component_partition(tm.space)
    if arrow.partition != components:
        return _failing("regular reflection kernel differs from clopen-component partition",
                        kernel=partition_doc(arrow.partition), components=partition_doc(components))
    return _certified(arrow, ctx)


def _pair(instance):
    if isinstance(instance, tuple):
        return instance
    return instance, instance


def _check_products(instance, ctx) -> Outcome:
    s, t = _pair(instance)
    axioms = [A.T0, A.T1, A.T2]
    note = None
    if s.profile.topological and t.profile.topological:
        axioms += [A.T3, A.REG]
    else:
        note = "T3/REG skipped: a factor is not topological"
    for ax in axioms:
        cmp = compare_product_reflection(s, t, ax, check_hypotheses=False)
        if not cmp.holds:
            return _failing(cmp.reason, axiom=ax.value, abstractly_isomorphic=cmp.abstractly_isomorphic)
    return Outcome(True, note=note or "checked T0, T1, T2, T3, REG")


def _spaces_of_pair(instance):
    a, b = _pair(instance)
    if isinstance(a, TopMonoid):
        return a.space, b.space
    return a, b


def _check_sr_product(instance, ctx) -> Outcome:
    x, y = _spaces_of_pair(instance)
    lhs = semiregularization(product(x, y))
    rhs = product(semiregularization(x), semiregularization(y))
    if lhs != rhs:
        return _failing("sr(X×Y) differs from sr(X)×sr(Y)", lhs=to_document(lhs), rhs=to_document(rhs))
    return Outcome(True)


def _space(instance) -> FiniteSpace:
    kind = instance_kind(instance)
    if kind == "space":
        return instance
    if kind == "monoid":
        return instance.space
    a = instance[0]
    return a.space if isinstance(a, TopMonoid) else a


def _check_cell_c0(instance, ctx) -> Outcome:
    x = _space(instance)
    c, c0 = cellularity(x), cellularity(reflect_space(x, A.T0).target)
    if c != c0:
        return _failing("cellularity changes under T0 reflection", c=c, c_t0=c0)
    return Outcome(True, note=f"c = {c}")


def _check_cell_sr(instance, ctx) -> Outcome:
    x = _space(instance)
    c, csr = cellularity(x), cellularity(semiregularization(x))
    if c != csr:
        return _failing("cellularity changes under semiregularization", c=c, c_sr=csr)
    return Outcome(True, note=f"c = {c}")


CHAIN_NOTE = (
    "restated at the level of the finite supremum of cellular-family sizes; "
    "countable cellularity holds trivially for every finite space"
)


def _check_cell_chain(tm: TopMonoid, ctx) -> Outcome:
    c = {"S": cellularity(tm.space)}
    for ax in A:
        c[ax.value] = cellularity(reflect_monoid(tm, ax, check_hypotheses=False).target.space)
    chain = (
        c["REG"] <= c["T3"]
        and c["REG"] <= c["T2"] <= c["T1"] <= c["T0"] == c["S"]
        and c["REG"] == c["S"]
    )
    if not chain or len(set(c.values())) != 1:
        return _failing("cellularity chain broken", cellularities=c)
    return Outcome(True, note=CHAIN_NOTE)


def _check_cancellative_cr(tm: TopMonoid, ctx) -> Outcome:
    sr = assemble(semiregularization(tm.space), tm.algebra)
    part = t0_partition(sr.space)
    if not is_congruence(sr.algebra, part):
        return _failing("T0 identification of the semiregularization is not a congruence",
                        partition=partition_doc(part))
    q, _ = quotient_table(sr.algebra, part)
    if not q.is_cancellative:
        return _failing("T0 reflection of the semiregularization is not cancellative",
                        partition=partition_doc(part))
    return Outcome(True)


def _check_t2_quotient(instance, ctx) -> Outcome:
    x = _space(instance)
    given = _partition_arg(instance)
    parts = [given] if given is not None else list(all_partitions(x.points))
    for p in parts:
        q, proj = quotient_space(x, p)
        t2, closed = is_t2(q), is_closed_relation(x, p)
        if t2 and not closed:
            return _failing("T2 quotient but relation not closed", partition=partition_doc(p))
        if closed and map_profile(proj).open and not t2:
            return _failing("open projection and closed relation but quotient not T2",
                            partition=partition_doc(p))
    return Outcome(True)


def _check_gamma(tm: TopMonoid, ctx) -> Outcome:
    g = gamma_retopologize(tm)
    p = g.profile
    missing = [f for f in ("semitopological", "left_open", "right_open") if not getattr(p, f)]
    if tm.profile.topological and not p.topological:
        missing.append("topological")
    if missing:
        return _failing("retopologised monoid lacks " + ", ".join(missing),
                        retopologised=to_document(g))
    return Outcome(True)


def _check_group(tm: TopMonoid, ctx) -> Outcome:
    target = reflect_monoid(tm, A.REG, check_hypotheses=False).target
    if not is_topological_group(target):
        return _failing("regular reflection is not a topological group", target=to_document(target))
    return Outcome(True, note="finite analog: compactness is automatic")


# -- catalog -----------------------------------------------------------------

_MONOID = frozenset({"monoid"})
_MONOID_C = frozenset({"monoid", "monoid+congruence"})
_SPACE_LIKE = frozenset({"space", "monoid"})

LAWS: dict[str, Law] = {
    law.law_id: law
    for law in [
        Law("L1", "quotient-open", "monoid", _MONOID_C,
            ("monoid", "semitopological", "open_shifts"), _check_quotient_open, one_sided=True),
        Law("L2", "T2-iff-closed", "monoid", _MONOID_C,
            ("monoid", "semitopological", "open_shifts"), _check_t2_iff_closed, one_sided=True),
        Law("L3", "C2-smallest-closed", "monoid", _MONOID,
            ("monoid", "semitopological", "open_shifts"), _check_c2, one_sided=True),
        Law("L4", "sr-topological", "monoid", _MONOID, ("topological", "open_shifts"), _check_sr_topological),
        Law("L5", "quasiregular", "monoid", _MONOID,
            ("monoid", "topological", "open_shifts"), _check_quasiregular),
        Law("L6", "C3-eq-sr", "monoid", _MONOID, ("monoid", "topological", "open_shifts"), _check_c3),
        Law("L7", "Cr-eq-C0sr", "monoid", _MONOID, ("monoid", "topological", "open_shifts"), _check_cr),
        Law("L8", "product-preservation", "monoid-pair", frozenset({"monoid", "monoid-pair"}),
            ("monoid", "semitopological", "open_shifts"), _check_products),
        Law("L9", "sr-product", "space-pair", frozenset({"space", "monoid", "space-pair", "monoid-pair"}),
            (), _check_sr_product),
        Law("L10", "cell-C0", "space", _SPACE_LIKE, (), _check_cell_c0),
        Law("L11", "cell-sr", "space", _SPACE_LIKE, (), _check_cell_sr),
        Law("L12", "cell-chain", "monoid", _MONOID, ("monoid", "topological", "open_shifts"), _check_cell_chain),
        Law("L13", "cancellative-Cr", "monoid", _MONOID,
            ("cancellative", "topological", "open_shifts"), _check_cancellative_cr),
        Law("L14", "T2-quotient-closed", "space",
            frozenset({"space", "monoid", "space+partition", "monoid+congruence"}), (), _check_t2_quotient),
        Law("L15", "gamma-open-shifts", "monoid", _MONOID, ("monoid", "semitopological"), _check_gamma),
        Law("L16", "finite-group-analog", "monoid", _MONOID,
            ("monoid", "cancellative", "topological", "open_shifts"), _check_group),
    ]
}


def run_law(law_id: str, instance, *, certify: bool = False, bound: int = 3, drop: Iterable[str] = ()) -> LawReport:
    """Evaluate one law on one instance.

    ``drop`` removes hypotheses (used by counterexample search); a law whose
    remaining hypotheses fail reports HYPOTHESIS_NOT_MET and never HOLDS.
    """
    try:
        law = LAWS[law_id]
    except KeyError:
        raise UnknownLaw(f"unknown law {law_id!r}") from None
    kind = instance_kind(instance)
    if kind not in law.kinds:
        raise InstanceKindMismatch(f"{law_id} does not accept a {kind} instance")
    given = _partition_arg(instance)
    if kind == "monoid+congruence" and not is_congruence(instance[0].algebra, given):
        raise NotACongruence(f"{given!r} is not a congruence")
    start = time.perf_counter()
    dig = digest(instance)
    drop = frozenset(drop)
    for flag in law.hypotheses:
        if flag in drop:
            continue
        for tm in _monoids(instance):
            if not _flag_value(tm, flag, law.one_sided):
                return LawReport(law_id, dig, Verdict.HYPOTHESIS_NOT_MET,
                                 elapsed=time.perf_counter() - start, failed_hypothesis=flag)
    ctx = Context(certify=certify, bound=bound)
    try:
        outcome = law.check(instance, ctx)
    except FintopError as exc:
        outcome = _failing(f"{type(exc).__name__}: {exc}")
    witness = None
    if not outcome.ok:
        witness = {"instance": _instance_doc(instance), "violation": outcome.violation}
    verdict = Verdict.HOLDS if outcome.ok else Verdict.FAILS
    return LawReport(law_id, dig, verdict, witness, time.perf_counter() - start, outcome.note)


def resolve_selection(selection, instance=None) -> list[str]:
    """Law ids in catalog order. ``"all"`` keeps only laws accepting the instance's kind."""
    if selection == "all" or selection == ["all"]:
        if instance is None:
            return list(LAWS)
        kind = instance_kind(instance)
        return [lid for lid, law in LAWS.items() if kind in law.kinds]
    chosen = set(selection)
    if not chosen:
        raise ValueError("law selection is empty")
    unknown = chosen - set(LAWS)
    if unknown:
        raise UnknownLaw(f"unknown laws {sorted(unknown)}")
    return [lid for lid in LAWS if lid in chosen]


def run_suite(instance, selection="all", *, certify: bool = False, bound: int = 3) -> list[LawReport]:
    return [run_law(lid, instance, certify=certify, bound=bound) for lid in resolve_selection(selection, instance)]
