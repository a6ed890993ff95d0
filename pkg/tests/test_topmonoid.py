from itertools import combinations

import pytest

import oracles
from fintop.enumerator import enum_spaces, enum_tables, enum_topmonoids
from fintop.errors import CarrierMismatch, NoIdentity
from fintop.finspace import Partition, all_partitions, make_space, map_profile, product, semiregularization, separation_profile
from fintop.semigroup import all_congruences, congruence_closure, cyclic_group, make_table, product_table
from fintop.topmonoid import (
    TopMonoid,
    assemble,
    closed_congruence_closure,
    gamma_retopologize,
    is_closed_relation,
    is_topological_group,
    least_closed_congruence_oracle,
    product_topmonoid,
    quotient_topmonoid,
)

ALL_3 = [tm for n in (1, 2, 3) for tm in enum_topmonoids(n)]
MONOIDS_3 = [tm for tm in ALL_3 if tm.algebra.is_monoid]


def brute_profile(tm):
    pts = tm.points
    opens = oracles.opens_of(tm.space)
    mul = {(x, y): tm.algebra.mul(x, y) for x in pts for y in pts}
    left = [{x: mul[a, x] for x in pts} for a in pts]
    right = [{x: mul[x, a] for x in pts} for a in pts]
    semitop = all(oracles.continuous(opens, opens, f) for f in left + right)
    pp, popens = oracles.product_opens(pts, opens, pts, opens)
    top = oracles.continuous(popens, opens, {p: mul[p] for p in pp})
    def opens_images(fs):
        return all(frozenset(f[x] for x in u) in opens for f in fs for u in opens)
    return semitop, top, opens_images(left), opens_images(right)


def test_m0_profiles(m0, m0_e_open):
    p = m0.profile
    assert p.topological and p.open_shifts and not p.cancellative
    q = m0_e_open.profile
    assert q.topological and not q.open_shifts


def test_z2_discrete_profile(z2):
    assert all(z2.profile.as_dict().values())


def test_profile_matches_brute_force():
    for tm in ALL_3:
        p = tm.profile
        assert (p.semitopological, p.topological, p.left_open, p.right_open) == brute_profile(tm)


def test_finite_degeneracy():
    # sanity: on these carriers separate and joint continuity coincide
    for tm in ALL_3:
        assert tm.profile.semitopological == tm.profile.topological


def test_assemble_checks_carrier(m0_table):
    with pytest.raises(CarrierMismatch):
        assemble(make_space(["a", "b"], [[], ["a", "b"]]), m0_table)


def test_closed_relation_matches_product_closure():
    for space in [s for n in (1, 2, 3) for s in enum_spaces(n)]:
        pp, popens = oracles.product_opens(space.points, oracles.opens_of(space), space.points, oracles.opens_of(space))
        for p in all_partitions(space.points):
            lab = dict(zip(space.points, p.labels))
            rel = frozenset((x, y) for x in space.points for y in space.points if lab[x] == lab[y])
            assert is_closed_relation(space, p) == (oracles.closure(pp, popens, rel) == rel)


# -- closed congruences ------------------------------------------------------


def test_closed_congruence_examples(m0, z2):
    assert closed_congruence_closure(m0).partition.n_blocks == 1
    assert closed_congruence_closure(z2).partition.is_identity


def test_closed_congruence_on_discrete_is_congruence_closure():
    t = cyclic_group(4)
    tm = assemble(make_space(t.points, [[t.points[i] for i in range(4) if m >> i & 1] for m in range(16)]), t)
    for seed in ([], [("0", "2")], [("0", "1")]):
        assert closed_congruence_closure(tm, seed).partition == congruence_closure(t, seed).partition


def test_closed_congruence_matches_oracle():
    for tm in ALL_3:
        pairs = list(combinations(tm.points, 2))
        for seed in [()] + [(p,) for p in pairs]:
            assert closed_congruence_closure(tm, seed).partition == least_closed_congruence_oracle(tm, seed)


# -- gamma ---------------------------------------------------------------------


def test_gamma_examples(m0, m0_e_open, z2):
    assert gamma_retopologize(m0).space == m0.space
    assert gamma_retopologize(z2).space == z2.space
    g = gamma_retopologize(m0_e_open)
    assert len(g.space.opens) == 4
    assert g.profile.open_shifts


def test_gamma_needs_identity():
    t = make_table(["a", "b"], [["a", "a"], ["a", "a"]])
    tm = assemble(make_space(["a", "b"], [[], ["a", "b"]]), t)
    with pytest.raises(NoIdentity):
        gamma_retopologize(tm)


# -- quotients -----------------------------------------------------------------


def test_quotient_examples(m0):
    q, proj = quotient_topmonoid(m0, Partition.total(m0.points))
    assert q.n == 1 and map_profile(proj).open
    q, proj = quotient_topmonoid(m0, closed_congruence_closure(m0))
    assert q.n == 1 and map_profile(proj).open


def test_z2_squared_quotient(z2):
    sq = product_topmonoid(z2, z2)
    c = Partition.from_blocks(sq.points, [[("0", "0"), ("1", "1")], [("0", "1"), ("1", "0")]])
    q, _ = quotient_topmonoid(sq, c)
    assert q.n == 2 and q.algebra.is_group and len(q.space.opens) == 4


def test_quotients_of_monoids_are_monoids():
    for tm in MONOIDS_3:
        if not tm.profile.semitopological:
            continue
        for p in all_congruences(tm.algebra):
            q, _ = quotient_topmonoid(tm, p)
            assert q.algebra.is_monoid


def test_open_shift_quotient_hausdorff_iff_closed():
    for tm in MONOIDS_3:
        if not (tm.profile.semitopological and tm.profile.open_shifts):
            continue
        for p in all_congruences(tm.algebra):
            q, proj = quotient_topmonoid(tm, p)
            assert map_profile(proj).open
            assert separation_profile(q.space).t2 == is_closed_relation(tm.space, p)


def test_sr_of_open_shift_topological_monoids():
    pool = [tm for n in (1, 2, 3, 4) for tm in enum_topmonoids(n, {"monoid", "topological", "open_shifts"})]
    assert pool
    for tm in pool:
        sr = assemble(semiregularization(tm.space), tm.algebra)
        assert sr.profile.topological
        assert separation_profile(sr.space).t3


def test_topological_group(z2, m0):
    assert is_topological_group(z2)
    assert not is_topological_group(m0)
    t = cyclic_group(3)
    indisc = assemble(make_space(t.points, [[], list(t.points)]), t)
    assert is_topological_group(indisc)


def test_product_monoid_carrier(m0, z2):
    p = product_topmonoid(m0, z2)
    assert p.points[1] == ("e", "1")
    assert p.space == product(m0.space, z2.space)
    assert p.algebra == product_table(m0.algebra, z2.algebra)
