"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line.

Every criterion is exhaustive over the stated desk-scale domain except the
random cellularity sample, whose seed is pinned below.
"""

import io
import json
import random
import time

import pytest

import conftest
from fintop import errors
from fintop.cli import dispatch
from fintop.enumerator import enum_spaces, enum_spaces_by_families, enum_topmonoids
from fintop.finspace import FiniteSpace, cellularity, semiregularization, separation_profile
from fintop.instances import parse_instance, serialize
from fintop.laws import Verdict, run_law
from fintop.reflections import (
    SeparationAxiom as A,
    certify_universal,
    oracle_reflection,
    reflect_monoid,
    reflect_space,
)
from fintop.semigroup import all_congruences
from fintop.topmonoid import least_closed_congruence_oracle

RUNTIME_LIMIT_SECONDS = 300  # criterion 1
CERTIFY_BOUND = 3
CELLULARITY_SEED = 20261016
CELLULARITY_SAMPLES = 1000

SPACE_COUNTS = {1: 1, 2: 4, 3: 29, 4: 355}
SEMITOP_ONE_SIDED = frozenset({"monoid", "semitopological", "one_sided_open"})
SEMITOP_OPEN = frozenset({"monoid", "semitopological", "open_shifts"})
TOP_OPEN = frozenset({"monoid", "topological", "open_shifts"})
CANCELLATIVE_TOP_OPEN = frozenset({"cancellative", "topological", "open_shifts"})

# frozen from exhaustive runs of the enumerator
POOL_SIZES = {"one_sided": 123, "open_shift": 105, "topological_open_shift": 105}
# a finite group topology is the coset partition of a subgroup: Z2 2x2, Z3 3x2, Z4 12x3 + Klein 4x5
CANCELLATIVE_BY_SIZE = {1: 1, 2: 4, 3: 6, 4: 56}


def pool(flags, max_size=3):
    return [tm for n in range(1, max_size + 1) for tm in enum_topmonoids(n, flags)]


def report(number, title, failures, detail):
    status = "PASS" if not failures else "FAIL"
    line = f"[{status}] criterion {number}: {title} ({detail}; failures={len(failures)})"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    assert not failures, failures[:3]


def test_criterion_1_oracle_agreement():
    start = time.perf_counter()
    failures = []
    checked = 0
    for n, expected in SPACE_COUNTS.items():
        stream = list(enum_spaces(n))
        families = set(enum_spaces_by_families(n))
        if len(stream) != expected or {s.opens for s in stream} != families:
            failures.append(("count", n, len(stream), len(families)))
        for space in stream:
            for axiom in (A.T0, A.T1, A.T2):
                checked += 1
                if reflect_space(space, axiom).partition != oracle_reflection(space, axiom):
                    failures.append((serialize(space), axiom.value))
    elapsed = time.perf_counter() - start
    if elapsed > RUNTIME_LIMIT_SECONDS:
        failures.append(("runtime", elapsed))
    report(1, "T0/T1/T2 reflections agree with brute force on 389 spaces", failures,
           f"{checked} checks in {elapsed:.1f}s")


def test_criterion_2_c2_smallest_closed_congruence():
    monoids = pool(SEMITOP_ONE_SIDED)
    failures = []
    if len(monoids) != POOL_SIZES["one_sided"]:
        failures.append(("pool", len(monoids)))
    for tm in monoids:
        arrow = reflect_monoid(tm, A.T2)
        if arrow.partition != least_closed_congruence_oracle(tm):
            failures.append((serialize(tm), "fixpoint"))
        if not separation_profile(arrow.target.space).t2:
            failures.append((serialize(tm), "quotient not T2"))
        cert = certify_universal(arrow, CERTIFY_BOUND)
        if not cert.passed:
            failures.append((serialize(tm), cert.failure))
    report(2, "C2 is the smallest closed congruence, T2 and universal", failures,
           f"{len(monoids)} monoids, bound {CERTIFY_BOUND}")


def test_criterion_3_c3_and_cr():
    monoids = pool(TOP_OPEN)
    failures = []
    if len(monoids) != POOL_SIZES["topological_open_shift"]:
        failures.append(("pool", len(monoids)))
    for tm in monoids:
        c3 = reflect_monoid(tm, A.T3)
        if c3.target.space != semiregularization(tm.space) or not separation_profile(c3.target.space).t3:
            failures.append((serialize(tm), "sr target"))
        cert = certify_universal(c3, CERTIFY_BOUND)
        if not cert.passed:
            failures.append((serialize(tm), cert.failure))
        cr = reflect_monoid(tm, A.REG)
        c0 = reflect_monoid(c3.target, A.T0, check_hypotheses=False)
        if cr.target != c0.target or cr.partition != c0.partition:
            failures.append((serialize(tm), "Cr != C0(C3)"))
    report(3, "C3 is the semiregularization and Cr = C0(C3)", failures,
           f"{len(monoids)} monoids, bound {CERTIFY_BOUND}")


def test_criterion_4_quotient_open_and_t2_criterion():
    monoids = pool(SEMITOP_ONE_SIDED)
    failures = []
    instances = 0
    for tm in monoids:
        for p in all_congruences(tm.algebra):
            instances += 1
            for lid in ("L1", "L2"):
                r = run_law(lid, (tm, p))
                if r.verdict is not Verdict.HOLDS:
                    failures.append((lid, serialize(tm), p.block_lists(), r.verdict.value))
    report(4, "laws L1 and L2 over every congruence", failures,
           f"{len(monoids)} monoids, {instances} congruences")


def _random_space(rng, n):
    below = [rng.getrandbits(n) & rng.getrandbits(n) | 1 << i for i in range(n)]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            m = below[i]
            for j in range(n):
                if m >> j & 1:
                    m |= below[j]
            if m != below[i]:
                below[i], changed = m, True
    return FiniteSpace.from_min_open("abcdefg"[:n], below)


def _cell_failures(space):
    c = cellularity(space)
    out = []
    if cellularity(reflect_space(space, A.T0).target) != c:
        out.append((serialize(space), "C0"))
    if cellularity(semiregularization(space)) != c:
        out.append((serialize(space), "sr"))
    return out


def test_criterion_5_cellularity():
    failures = []
    exhaustive = 0
    for n in range(1, 5):
        for space in enum_spaces(n):
            exhaustive += 1
            failures += _cell_failures(space)
    rng = random.Random(CELLULARITY_SEED)
    for _ in range(CELLULARITY_SAMPLES):
        failures += _cell_failures(_random_space(rng, rng.randint(5, 7)))
    monoids = pool(TOP_OPEN)
    for tm in monoids:
        r = run_law("L12", tm)
        if r.verdict is not Verdict.HOLDS:
            failures.append((serialize(tm), "L12", r.verdict.value))
    report(5, "cellularity preserved by C0 and sr; chain L12", failures,
           f"{exhaustive} spaces, {CELLULARITY_SAMPLES} random (seed {CELLULARITY_SEED}), {len(monoids)} monoids")


def test_criterion_6_products():
    failures = []
    monoids = pool(SEMITOP_OPEN)
    if len(monoids) != POOL_SIZES["open_shift"]:
        failures.append(("pool", len(monoids)))
    topological = sum(1 for tm in monoids if tm.profile.topological)
    for a in monoids:
        for b in monoids:
            # L8 covers T0-T2 always and T3/REG when both factors are topological
            r = run_law("L8", (a, b))
            if r.verdict is not Verdict.HOLDS:
                failures.append((serialize(a), serialize(b), r.witness))
    spaces = [s for n in (1, 2, 3) for s in enum_spaces(n)]
    for x in spaces:
        for y in spaces:
            r = run_law("L9", (x, y))
            if r.verdict is not Verdict.HOLDS:
                failures.append((serialize(x), serialize(y), "sr"))
    report(6, "reflections and sr preserve products", failures,
           f"{len(monoids) ** 2} monoid pairs ({topological} topological factors), {len(spaces) ** 2} space pairs")


def test_criterion_7_cancellative_finale():
    failures = []
    monoids = []
    for n, expected in CANCELLATIVE_BY_SIZE.items():
        layer = list(enum_topmonoids(n, CANCELLATIVE_TOP_OPEN))
        if len(layer) != expected:
            failures.append(("pool", n, len(layer)))
        monoids += layer
    for tm in monoids:
        for lid in ("L13", "L16"):
            r = run_law(lid, tm)
            if r.verdict is not Verdict.HOLDS:
                failures.append((lid, serialize(tm), r.verdict.value))
    report(7, "Cr of cancellative monoids is a cancellative topological group", failures,
           f"{len(monoids)} monoids")


# -- criterion 8 -------------------------------------------------------------

M0 = '{"kind":"monoid","points":["e","z"],"opens":[[],["z"],["e","z"]],"table":[["e","z"],["z","z"]]}'
SIGMA = '{"kind":"space","points":["a","b"],"opens":[[],["b"],["a","b"]]}'
GAMMA_FAIL = ('{"kind":"monoid","points":["a","b","c"],"opens":[[],["a","b","c"]],'
              '"table":[["a","a","a"],["a","b","c"],["c","c","c"]]}')
FIXTURES = {
    "m0": M0,
    "sigma": SIGMA,
    "gamma_fail": GAMMA_FAIL,
    "m0_e_open": '{"kind":"monoid","points":["e","z"],"opens":[[],["e"],["e","z"]],"table":[["e","z"],["z","z"]]}',
    "no_full": '{"kind":"space","points":["a","b"],"opens":[[],["b"]]}',
    "dup": '{"kind":"space","points":["a","a"],"opens":[[],["a"]]}',
    "foreign": '{"kind":"space","points":["a","b"],"opens":[[],["q"],["a","b"]]}',
    "shape": '{"kind":"monoid","points":["a","b"],"opens":[[],["a","b"]],"table":[["a"]]}',
    "assoc": '{"kind":"monoid","points":["a","b"],"opens":[[],["a","b"]],"table":[["b","b"],["a","a"]]}',
    "syntax": "{not json",
    "z4": '{"kind":"monoid","points":["0","1","2","3"],"opens":[[],["0","1","2","3"]],'
          '"table":[["0","1","2","3"],["1","2","3","0"],["2","3","0","1"],["3","0","1","2"]]}',
}

# (argv, expected exit code, error class named in the diagnostic or None)
EXIT_CASES = [
    (("check", "@m0"), 0, None),
    (("reflect", "--axiom", "c2", "@m0", "--json"), 0, None),
    (("reflect", "--axiom", "t3", "--certify", "@m0"), 0, None),
    (("verify", "--laws", "all", "@m0"), 0, None),
    (("verify", "--laws", "L15", "@gamma_fail"), 1, None),
    (("search", "--law", "L1", "--drop", "open_shifts", "--max-size", "2"), 0, None),
    (("search", "--law", "L15", "--max-size", "3"), 1, None),
    (("check", "@no_full"), 2, "TopologyAxiomViolation"),
    (("check", "@dup"), 2, "DuplicatePoint"),
    (("check", "@foreign"), 2, "ForeignPoint"),
    (("check", "@shape"), 2, "CarrierMismatch"),
    (("check", "@assoc"), 2, "AssociativityViolation"),
    (("check", "@syntax"), 2, "ParseError"),
    (("quotient", "@m0", "--partition", '[["e"]]'), 2, "PartitionError"),
    (("quotient", "@z4", "--partition", '[["0","1"],["2","3"]]'), 2, "NotACongruence"),
    (("reflect", "--axiom", "t9", "@m0"), 2, "UnsupportedAxiom"),
    (("reflect", "--axiom", "t3", "@sigma"), 2, "UnsupportedAxiom"),
    (("reflect", "--axiom", "t0", "@m0_e_open"), 2, "HypothesisNotMet"),
    (("verify", "--laws", "L99", "@m0"), 2, "UnknownLaw"),
    (("verify", "--laws", "L1", "@sigma"), 2, "InstanceKindMismatch"),
    (("product", "@m0", "@sigma"), 2, "InstanceKindMismatch"),
    (("enum", "--kind", "space", "--size", "9"), 2, "SizeOutOfRange"),
    (("search", "--law", "L1", "--max-size", "0"), 2, "SizeOutOfRange"),
    (("check", "/nonexistent/instance.json"), 2, "FileNotFoundError"),
    (("frobnicate",), 2, "usage error"),
    (("reflect", "@m0"), 2, "usage error"),
]


def _dispatch(argv):
    out, err = io.StringIO(), io.StringIO()
    return dispatch(list(argv), out, err), out.getvalue(), err.getvalue()


def _every_error_class():
    out, stack = [], [errors.FintopError]
    while stack:
        cls = stack.pop()
        out.append(cls)
        stack.extend(cls.__subclasses__())
    return sorted(out, key=lambda c: c.__name__)


def test_criterion_8_cli_round_trip_and_exit_codes(tmp_path, monkeypatch):
    failures = []
    # 100 canonical files: every space on 1-3 points, then monoids in stream order
    objects = [s for n in (1, 2, 3) for s in enum_spaces(n)]
    objects += [tm for n in (1, 2, 3) for tm in enum_topmonoids(n)][: 100 - len(objects)]
    for k, obj in enumerate(objects):
        path = tmp_path / f"instance_{k:03d}.json"
        path.write_text(serialize(obj), encoding="utf-8")
        text = path.read_text(encoding="utf-8")
        back = parse_instance(text)
        if serialize(back) != text or back != obj:
            failures.append(("round-trip", k))
        code, out, _ = _dispatch(["check", str(path), "--json"])
        if code != 0 or json.dumps(json.loads(out)["instance"], ensure_ascii=False) + "\n" != text:
            failures.append(("check --json", k))

    paths = {}
    for name, text in FIXTURES.items():
        p = tmp_path / f"{name}.json"
        p.write_text(text, encoding="utf-8")
        paths[name] = str(p)
    covered = set()
    for argv, expected, named in EXIT_CASES:
        argv = [paths[a[1:]] if a.startswith("@") else a for a in argv]
        code, _, err = _dispatch(argv)
        if code != expected or (named and named not in err):
            failures.append((argv, code, err.strip()))
        if named:
            covered.add(named)

    # classes with no natural trigger through the commands still map to exit 2
    import fintop.cli as cli

    for cls in _every_error_class():
        def boom(args, out, cls=cls):
            raise cls("synthetic") if cls is not errors.HypothesisNotMet else cls("monoid")

        monkeypatch.setattr(cli, "cmd_check", boom)
        code, _, err = _dispatch(["check", paths["m0"]])
        if code != 2 or cls.__name__ not in err:
            failures.append(("class", cls.__name__, code))
    monkeypatch.undo()

    report(8, "CLI round-trip and exit-code contract", failures,
           f"{len(objects)} files, {len(EXIT_CASES)} dispatch cases, {len(_every_error_class())} error classes")
