"""The named property suites: each verified statement as a deterministic case stream.

A suite maps (seed, samples, budget) to a reproducible sequence of cases;
the report counts pass/fail/unknown and serializes a re-runnable witness
for every failure.  Instance scale follows the defaults: 200 generated
instances per suite (20 for the gluing suite), with per-instance sampling
derived from the samples parameter (sequences = samples/4, maps =
samples/10, sets = samples or samples/2 as each statement asks).
"""

from __future__ import annotations

import os
import random
import time
from dataclasses import dataclass, field

from .compactify import (
    bar,
    based_iso,
    infinity,
    is_omega_sequential,
    is_s_compact,
    plus,
    plus_map,
    wedge,
)
from .core import FinitePoint, TailPoint, ev_complement
from .errors import PresentationError
from .exteriority import (
    ExtSpace,
    Externology,
    cocompact_ext_space,
    coreflect,
    e_report,
    is_e_open,
    make_ext_space,
    sequentially_e_open,
)
from .generate import (
    gen_space,
    generate_instances,
    sample_evset,
    sample_open_set,
    sub_rng,
)
from .instances import NAT_TAIL, discrete_point, nat_cofinite, nat_plus_space
from .maps import is_seq_continuous, map_properties
from .sequences import (
    Affine,
    ConstThread,
    Seq,
    WalkThread,
    classify,
    make_seq,
    seq_equal,
    subseq,
    walk_seq,
)
from .serial import (
    entity_from_json,
    entity_to_json,
    evset_from_json,
    evset_to_json,
    map_from_json,
    seq_from_json,
    space_from_json,
)
from .sheaves import (
    INF,
    ConvElem,
    Ideal,
    based_affine_conv,
    build_sigma,
    constant_conv,
    glue,
    is_cover,
    make_ideal,
    restrict_family,
)
from .spaces import (
    is_open,
    is_sequentially_open,
    set_properties,
    space_report,
    subspace,
)

DEFAULT_SEED = 42
DEFAULT_SAMPLES = 200
DEFAULT_BUDGET = 8
SUITE_INSTANCES = 200
GLUE_INSTANCES = 20
GLUE_IDEALS = 30


def default_budget() -> int:
    try:
        return int(os.environ.get("EXTSEQ_BUDGET", DEFAULT_BUDGET))
    except ValueError:
        return DEFAULT_BUDGET


@dataclass
class CheckReport:
    suite: str
    seed: int
    samples: int
    budget: int
    cases: int = 0
    passed: int = 0
    failed: int = 0
    unknown: int = 0
    witnesses: list = field(default_factory=list)
    wall_ms: int = 0

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "samples": self.samples,
            "budget": self.budget,
            "cases": self.cases,
            "passed": self.passed,
            "failed": self.failed,
            "unknown": self.unknown,
            "witnesses": self.witnesses,
            "wall_ms": self.wall_ms,
        }

    @property
    def exit_code(self) -> int:
        if self.failed:
            return 1
        if self.unknown:
            return 2
        return 0


def _case(ok: bool | None, predicate: str, witness: dict | None):
    if ok is True:
        return ("pass", None)
    status = "fail" if ok is False else "unknown"
    data = {"predicate": predicate}
    if witness:
        data.update(witness)
    return (status, data)


# -- suite bodies ------------------------------------------------------------


def suite_proper_vs_noconv(seed, samples, budget):
    """Properness coincides with having no convergent subsequence, on
    sequentially-Hausdorff sequential instances."""
    insts = generate_instances(seed, SUITE_INSTANCES, "s2-only", seqs_per=max(1, samples // 4), maps_per=0)
    for i, inst in enumerate(insts):
        space = inst.ext.space
        for s in inst.seqs:
            cls = classify(space, s)
            ok = cls.proper == cls.no_conv_subseq
            yield _case(
                ok,
                "proper-eq-noconv",
                None
                if ok
                else {"instance": i, "space": entity_to_json(space), "seq": entity_to_json(s)},
            )


def suite_countable_vs_seq_compact(seed, samples, budget):
    """Countable compactness coincides with sequential compactness on T0
    instances; sampled sequences corroborate the sequential side."""
    insts = generate_instances(seed, SUITE_INSTANCES, "all", seqs_per=max(1, samples // 4), maps_per=0)
    for i, inst in enumerate(insts):
        space = inst.ext.space
        report = space_report(space)
        if not report.t0:
            continue
        ok = report.countably_compact == report.seq_compact
        if ok and report.seq_compact:
            ok = all(not classify(space, s).no_conv_subseq for s in inst.seqs)
        if ok and not report.seq_compact:
            ok = any(
                classify(space, walk_seq(space.universe, t)).no_conv_subseq
                for t in space.tails
            )
        yield _case(
            ok,
            "countable-eq-seq-compact",
            None if ok else {"instance": i, "space": entity_to_json(space)},
        )


def suite_proper_vs_seqproper(seed, samples, budget):
    """A map is proper iff it is sequentially proper (domains in-class)."""
    insts = generate_instances(seed, SUITE_INSTANCES, "all", seqs_per=0, maps_per=max(1, samples // 10))
    for i, inst in enumerate(insts):
        for f in inst.maps:
            mp = map_properties(f)
            ok = mp.proper == mp.seq_proper
            yield _case(
                ok,
                "proper-eq-seqproper",
                None if ok else {"instance": i, "map": entity_to_json(f)},
            )


def suite_plus_map_continuity(seed, samples, budget):
    """A map is sequentially proper iff its based one-point extension is
    sequentially continuous."""
    insts = generate_instances(seed, SUITE_INSTANCES, "all", seqs_per=0, maps_per=max(1, samples // 10))
    for i, inst in enumerate(insts):
        dom_plus = plus(inst.ext.space)
        cod_plus = plus(inst.partner.space)
        for f in inst.maps:
            mp = map_properties(f)
            extended = plus_map(f, dom_plus, cod_plus)
            ok = mp.seq_proper == is_seq_continuous(extended)
            yield _case(
                ok,
                "seqproper-eq-plus-seqcontinuous",
                None if ok else {"instance": i, "map": entity_to_json(f)},
            )


def suite_wedge_vs_plus(seed, samples, budget):
    """The sequential one-point compactification equals the Alexandroff one
    on sequentially-Hausdorff instances."""
    insts = generate_instances(seed, SUITE_INSTANCES, "s2-only", seqs_per=0, maps_per=0)
    for i, inst in enumerate(insts):
        space = inst.ext.space
        ok = based_iso(wedge(space), plus(space)) is not None
        yield _case(
            ok, "wedge-iso-plus", None if ok else {"instance": i, "space": entity_to_json(space)}
        )


def suite_plus_sequential(seed, samples, budget):
    """Every instance has matching s-compact and closed compact families,
    and its one-point compactification is sequential (sampled sets)."""
    insts = generate_instances(seed, SUITE_INSTANCES, "all", seqs_per=0, maps_per=0)
    for i, inst in enumerate(insts):
        space = inst.ext.space
        ok = is_omega_sequential(space)
        plus_space = plus(space).space
        rng = sub_rng(seed, "plus-seq", i)
        witness_set = None
        if ok:
            for _ in range(samples):
                s = sample_evset(rng, plus_space)
                if is_sequentially_open(plus_space, s) != is_open(plus_space, s):
                    ok = False
                    witness_set = s
                    break
        yield _case(
            ok,
            "plus-space-sequential",
            None
            if ok
            else {
                "instance": i,
                "space": entity_to_json(space),
                "set": evset_to_json(witness_set) if witness_set else None,
            },
        )


def suite_scompact_closure(seed, samples, budget):
    """Closed s-compact sets are countably compact subspaces; on
    sequentially-Hausdorff instances the three compactness notions agree."""
    insts = generate_instances(seed, SUITE_INSTANCES, "all", seqs_per=0, maps_per=0)
    per = max(1, samples // 2)
    for i, inst in enumerate(insts):
        space = inst.ext.space
        rng = sub_rng(seed, "scompact", i)
        for _ in range(per):
            c = sample_evset(rng, space)
            props = set_properties(space, c)
            if props.closed and is_s_compact(space, c):
                ok = space_report(subspace(space, c)).countably_compact
                yield _case(
                    ok,
                    "closed-scompact-countably-compact",
                    None
                    if ok
                    else {"instance": i, "space": entity_to_json(space), "set": evset_to_json(c)},
                )
    insts2 = generate_instances(seed, SUITE_INSTANCES, "s2-only", seqs_per=0, maps_per=0)
    for i, inst in enumerate(insts2):
        space = inst.ext.space
        rng = sub_rng(seed, "scompact-s2", i)
        for _ in range(per):
            c = sample_evset(rng, space)
            sub = space_report(subspace(space, c))
            a, b, c3 = is_s_compact(space, c), sub.countably_compact, sub.seq_compact
            ok = a == b == c3
            yield _case(
                ok,
                "scompact-three-way",
                None
                if ok
                else {"instance": i, "space": entity_to_json(space), "set": evset_to_json(c)},
            )


def suite_infinity_diagram(seed, samples, budget):
    """The one-point construction over the cocompact externology is the
    Alexandroff compactification, and adding/removing the point at infinity
    are mutually inverse on presentations."""
    insts = generate_instances(seed, SUITE_INSTANCES, "all", seqs_per=0, maps_per=0)
    for i, inst in enumerate(insts):
        space = inst.ext.space
        ext = inst.ext
        witness = {"instance": i, "space": entity_to_json(space), "ext": entity_to_json(ext)}
        ok = based_iso(infinity(cocompact_ext_space(space)), plus(space)) is not None
        if ok:
            ok = bar(infinity(ext)) == ext
        if ok:
            b = infinity(ext)
            ok = based_iso(infinity(bar(b)), b) is not None
        if ok:
            b2 = plus(space)
            ok = based_iso(infinity(bar(b2)), b2) is not None
        yield _case(ok, "infinity-bar-round-trip", None if ok else witness)


def suite_cocompact_form(seed, samples, budget):
    """Membership in the cocompact externology agrees with the direct
    closed-compact-complement test on sampled sets."""
    insts = generate_instances(seed, SUITE_INSTANCES, "all", seqs_per=0, maps_per=0)
    per = max(1, samples // 2)
    for i, inst in enumerate(insts):
        space = inst.ext.space
        cc = cocompact_ext_space(space)
        rng = sub_rng(seed, "ccform", i)
        for j in range(per):
            s = sample_open_set(rng, space) if j % 2 else sample_evset(rng, space)
            direct = set_properties(space, ev_complement(s)).closed_compact
            ok = is_e_open(cc, s) == direct
            yield _case(
                ok,
                "cocompact-closed-form",
                None
                if ok
                else {"instance": i, "space": entity_to_json(space), "set": evset_to_json(s)},
            )


def suite_coreflection(seed, samples, budget):
    """The sequential coreflection is the identity on canonical instances,
    idempotent on raw pairs, and detected by the counit; sampled sets agree
    between e-open and sequentially e-open."""
    insts = generate_instances(seed, SUITE_INSTANCES, "all", seqs_per=0, maps_per=0)
    per = max(1, samples // 2)
    for i, inst in enumerate(insts):
        ext = inst.ext
        space = ext.space
        witness = {"instance": i, "ext": entity_to_json(ext)}
        ok = coreflect(ext) == ext and e_report(ext).e_sequential
        if ok and space.points:
            rng0 = sub_rng(seed, "coreflect-raw", i)
            raw = ExtSpace(space, Externology((rng0.choice(space.points),), ()))
            ok = coreflect(coreflect(raw)) == coreflect(raw)
            if ok:
                ok = e_report(coreflect(raw)).e_sequential
        if ok:
            rng = sub_rng(seed, "coreflect", i)
            for j in range(per):
                s = sample_open_set(rng, space) if j % 2 else sample_evset(rng, space)
                if sequentially_e_open(ext, s) != is_e_open(ext, s):
                    ok = False
                    witness["set"] = evset_to_json(s)
                    break
        yield _case(ok, "coreflection-identity", None if ok else witness)


def _covering_ideal(rng: random.Random) -> Ideal:
    modulus = rng.randrange(1, 5)
    gens = [Affine(modulus, r + modulus * rng.randrange(0, 2)) for r in range(modulus)]
    for _ in range(rng.randrange(0, 3)):
        gens.append(Affine(rng.randrange(1, 9), rng.randrange(0, 9)))
    return make_ideal("M", gens)


def _nat_conv_morphisms(rng: random.Random, count: int) -> list[ConvElem]:
    from .sheaves import NAT

    out = []
    for _ in range(count):
        n = rng.randrange(0, 6)
        prefix = [TailPoint(NAT_TAIL, rng.randrange(0, 9)) for _ in range(rng.randrange(0, 3))]
        out.append(
            ConvElem(
                make_seq(NAT.universe, prefix, (ConstThread(TailPoint(NAT_TAIL, n)),)),
                TailPoint(NAT_TAIL, n),
            )
        )
    return out


def suite_sheaf_glue(seed, samples, budget):
    """Restriction-then-glue over certificate-bearing covering ideals
    recovers the section uniquely; designed incompatible and non-covering
    fixtures produce their outcomes; covering checks never return unknown
    on affine generator sets."""
    for i in range(GLUE_INSTANCES):
        rng = sub_rng(seed, "glue", i)
        space = gen_space(rng, "tailed")
        limits = [x for x in space.points if rng.random() < 0.3]
        tails = {space.tails[0]} | {t for t in space.tails if rng.random() < 0.5}
        ext = make_ext_space(space, limits, tails)
        cset = build_sigma(ext)
        sections = cset.e_sample(rng, 3)
        if not sections:
            sections = [walk_seq(space.universe, sorted(tails)[0])]
        for j in range(GLUE_IDEALS):
            ideal = _covering_ideal(rng)
            cover = is_cover(ideal, "Je", budget)
            if cover.status != "yes":
                yield _case(
                    False if cover.status == "no" else None,
                    "covering-certificate",
                    {"instance": i, "ideal": _ideal_json(ideal)},
                )
                continue
            s = sections[j % len(sections)]
            fam, points, conv = restrict_family(s, ideal, _nat_conv_morphisms(rng, 3))
            res = glue(cset, ideal, fam, points, conv, budget=budget)
            ok = res.kind == "amalgamation" and seq_equal(res.seq, s)
            yield _case(
                ok,
                "glue-round-trip",
                None
                if ok
                else {
                    "instance": i,
                    "ext": entity_to_json(ext),
                    "seq": entity_to_json(s),
                    "ideal": _ideal_json(ideal),
                },
            )
    yield from _glue_fixtures(budget)


def _ideal_json(ideal: Ideal) -> dict:
    return {
        "carrier": ideal.carrier,
        "generators": [
            {"a": g.a, "b": g.b} for g in ideal.generators if isinstance(g, Affine)
        ],
    }


def _glue_fixtures(budget):
    nn = nat_cofinite()
    cset = build_sigma(nn)
    uni = nn.space.universe
    evens = make_ideal("M", [Affine(2, 0)])
    both = make_ideal("M", [Affine(2, 0), Affine(2, 1)])

    ok = is_cover(evens, "Je", budget).status == "no" and is_cover(
        evens, "Je", budget
    ).witness == Affine(2, 1)
    yield _case(ok, "non-covering-witness", None if ok else {"ideal": _ideal_json(evens)})
    ok = is_cover(both, "Je", budget).status == "yes"
    yield _case(ok, "covering-certificate", None if ok else {"ideal": _ideal_json(both)})

    # Glued candidate with a constant thread: consistent over the evens but
    # not exterior, so no amalgamation exists.
    stuck = make_seq(uni, (), (WalkThread(NAT_TAIL, 1, 0), ConstThread(TailPoint(NAT_TAIL, 5))))
    fam = {Affine(2, 0): subseq(stuck, Affine(2, 0))}
    res = glue(cset, evens, fam, stuck, (), require_cover=False, budget=budget)
    ok = res.kind == "no_amalgamation"
    yield _case(ok, "non-covering-no-amalgamation", None if ok else {"got": res.kind})

    # Family conflicting with the point component at position 2.
    section = walk_seq(uni, NAT_TAIL)
    fam2, points, conv = restrict_family(section, both, ())
    tampered = subseq(section, Affine(2, 0))
    tampered = make_seq(
        uni,
        (tampered.at(0), TailPoint(NAT_TAIL, 7)),
        (WalkThread(NAT_TAIL, 2, 4),),
    )
    fam2[Affine(2, 0)] = tampered
    res2 = glue(cset, both, fam2, points, conv, budget=budget)
    ok = res2.kind == "incompatible" and res2.conflict is not None and res2.conflict[2] == 2
    yield _case(ok, "incompatible-at-2", None if ok else {"got": res2.kind})

    # Restriction-then-glue round trip on the identity section.
    fam3, points3, conv3 = restrict_family(section, both, ())
    res3 = glue(cset, both, fam3, points3, conv3, budget=budget)
    ok = res3.kind == "amalgamation" and seq_equal(res3.seq, section)
    yield _case(ok, "glue-round-trip", None if ok else {"got": res3.kind})


def suite_sigma_fixtures(seed, samples, budget):
    """The presheaf embedding on the three site objects matches their
    declared components, by decider-level agreement on sampled elements."""
    per = max(20, samples // 2)
    rng = sub_rng(seed, "sigma", 0)

    one = build_sigma(discrete_point())
    pt = FinitePoint("pt")
    ok = one.c_member(one.cte(pt)) and one.point_member(pt)
    yield _case(ok, "sigma-one-constants", None if ok else {})
    from .sequences import const_seq

    ok = not one.e_member(const_seq(discrete_point().space.universe, pt))
    yield _case(ok, "sigma-one-no-exterior", None if ok else {})

    natp = make_ext_space(nat_plus_space())
    two = build_sigma(natp)
    for _ in range(per):
        elem = _sample_nat_plus_conv(rng)
        independent = _independent_nat_plus_limit(elem.seq)
        ok = two.c_member(elem) == (independent is not None and independent == elem.limit)
        yield _case(
            ok, "sigma-natplus-conv", None if ok else {"seq": entity_to_json(elem.seq)}
        )
        ok = not two.e_member(elem.seq)
        yield _case(ok, "sigma-natplus-no-exterior", None if ok else {})

    nn = build_sigma(nat_cofinite())
    from .sheaves import NAT, is_m_elem

    for _ in range(per):
        cand = _sample_nat_seq(rng)
        ok = nn.e_member(cand) == is_m_elem(cand)
        yield _case(ok, "sigma-nat-exterior-monoid", None if ok else {"seq": entity_to_json(cand)})
        ce = _eventually_constant_conv(rng)
        accepted = nn.c_member(ce)
        independent = all(
            isinstance(th, ConstThread) and th.point == ce.limit for th in ce.seq.threads
        )
        ok = accepted == independent
        yield _case(ok, "sigma-nat-constants", None if ok else {"seq": entity_to_json(ce.seq)})
        walk = ConvElem(_sample_walky_nat_seq(rng), TailPoint(NAT_TAIL, 0))
        ok = not nn.c_member(walk)
        yield _case(ok, "sigma-nat-rejects-walks", None if ok else {})


def _sample_nat_plus_conv(rng: random.Random) -> ConvElem:
    uni = nat_plus_space().universe
    shape = rng.randrange(4)
    if shape == 0:
        return based_affine_conv(Affine(rng.randrange(1, 4), rng.randrange(0, 6)))
    if shape == 1:
        return constant_conv(rng.randrange(0, 6))
    if shape == 2:
        n = rng.randrange(0, 6)
        prefix = tuple(TailPoint(NAT_TAIL, rng.randrange(0, 9)) for _ in range(rng.randrange(1, 3)))
        return ConvElem(
            make_seq(uni, prefix, (ConstThread(TailPoint(NAT_TAIL, n)),)), TailPoint(NAT_TAIL, n)
        )
    threads = []
    for _ in range(rng.randrange(1, 3)):
        if rng.random() < 0.5:
            threads.append(WalkThread(NAT_TAIL, rng.randrange(1, 4), rng.randrange(0, 6)))
        else:
            threads.append(ConstThread(INF if rng.random() < 0.7 else TailPoint(NAT_TAIL, 3)))
    seq = make_seq(uni, (), threads)
    lim = _independent_nat_plus_limit(seq)
    return ConvElem(seq, lim if lim is not None else INF)


def _independent_nat_plus_limit(s: Seq):
    """Thread-shape limit for the convergent-sequence space: all constant at
    one point, or every thread escaping (walks and constants at the added
    point) with limit there."""
    first = s.threads[0]
    if all(isinstance(th, ConstThread) and th == first for th in s.threads):
        return first.point
    if all(
        isinstance(th, WalkThread)
        or (isinstance(th, ConstThread) and th.point == INF)
        for th in s.threads
    ):
        return INF
    return None


def _sample_nat_seq(rng: random.Random) -> Seq:
    from .sheaves import NAT

    uni = NAT.universe
    threads = []
    for _ in range(rng.randrange(1, 3)):
        if rng.random() < 0.6:
            threads.append(WalkThread(NAT_TAIL, rng.randrange(1, 4), rng.randrange(0, 6)))
        else:
            threads.append(ConstThread(TailPoint(NAT_TAIL, rng.randrange(0, 6))))
    prefix = [TailPoint(NAT_TAIL, rng.randrange(0, 9)) for _ in range(rng.randrange(0, 3))]
    return make_seq(uni, prefix, threads)


def _sample_walky_nat_seq(rng: random.Random) -> Seq:
    from .sheaves import NAT

    return make_seq(
        NAT.universe,
        (),
        (WalkThread(NAT_TAIL, rng.randrange(1, 4), rng.randrange(0, 6)),),
    )


def _eventually_constant_conv(rng: random.Random) -> ConvElem:
    from .sheaves import NAT

    uni = NAT.universe
    n = rng.randrange(0, 6)
    prefix = [TailPoint(NAT_TAIL, rng.randrange(0, 9)) for _ in range(rng.randrange(0, 3))]
    return ConvElem(
        make_seq(uni, prefix, (ConstThread(TailPoint(NAT_TAIL, n)),)), TailPoint(NAT_TAIL, n)
    )


def suite_fixture_mutant(seed, samples, budget):
    """Deliberately wrong decider (everything compact); exists to exercise
    the failure path and witness reporting."""
    insts = generate_instances(seed, 20, "all", seqs_per=0, maps_per=0)
    for i, inst in enumerate(insts):
        space = inst.ext.space
        mutant_compact = True
        ok = mutant_compact == space_report(space).compact
        yield _case(
            ok, "mutant-compactness", None if ok else {"instance": i, "space": entity_to_json(space)}
        )


# -- registry and runner -----------------------------------------------------


SUITES = {
    "proper-vs-noconv": (suite_proper_vs_noconv, "thm-2-5"),
    "countable-vs-seq-compact": (suite_countable_vs_seq_compact, "thm-2-4"),
    "proper-vs-seqproper": (suite_proper_vs_seqproper, "prop-3-4"),
    "plus-map-continuity": (suite_plus_map_continuity, "thm-3-2"),
    "wedge-vs-plus": (suite_wedge_vs_plus, "thm-3-8"),
    "plus-sequential": (suite_plus_sequential, "thm-3-9"),
    "scompact-closure": (suite_scompact_closure, "lem-3-7"),
    "infinity-diagram": (suite_infinity_diagram, "dia-4-2"),
    "cocompact-form": (suite_cocompact_form, "eps-cc"),
    "coreflection": (suite_coreflection, "prop-4-13"),
    "sheaf-glue": (suite_sheaf_glue, "thm-4-16"),
    "sigma-fixtures": (suite_sigma_fixtures, "yoneda"),
}

HIDDEN_SUITES = {"fixture-mutant": (suite_fixture_mutant, None)}

TAGS = {tag: name for name, (_, tag) in SUITES.items() if tag}
EXTRA_TAGS = {"prop-3-11": "scompact-closure", "thm-4-16": "sheaf-glue"}
TAGS.update(EXTRA_TAGS)


def suite_names() -> list[str]:
    return list(SUITES)


def resolve_suite(name: str) -> str:
    if name in SUITES or name in HIDDEN_SUITES:
        return name
    if name in TAGS:
        return TAGS[name]
    raise PresentationError(f"unknown suite {name!r}")


def run_suite(
    name: str,
    seed: int = DEFAULT_SEED,
    samples: int = DEFAULT_SAMPLES,
    budget: int | None = None,
) -> CheckReport:
    resolved = resolve_suite(name)
    fn = (SUITES.get(resolved) or HIDDEN_SUITES[resolved])[0]
    budget = default_budget() if budget is None else budget
    report = CheckReport(resolved, seed, samples, budget)
    started = time.perf_counter()
    for status, witness in fn(seed, samples, budget):
        report.cases += 1
        if status == "pass":
            report.passed += 1
        elif status == "fail":
            report.failed += 1
            if witness is not None:
                report.witnesses.append(witness)
        else:
            report.unknown += 1
            if witness is not None:
                report.witnesses.append(witness)
    report.wall_ms = int((time.perf_counter() - started) * 1000)
    return report


# -- witness rechecking -------------------------------------------------------


def recheck_witness(witness: dict) -> bool:
    """Re-evaluate a failing witness standalone; returns the property value
    (False means the failure reproduces)."""
    predicate = witness.get("predicate")
    if predicate == "proper-eq-noconv":
        space = space_from_json(witness["space"])
        cls = classify(space, seq_from_json(witness["seq"], space.universe))
        return cls.proper == cls.no_conv_subseq
    if predicate == "countable-eq-seq-compact":
        report = space_report(space_from_json(witness["space"]))
        return report.countably_compact == report.seq_compact
    if predicate in ("proper-eq-seqproper", "seqproper-eq-plus-seqcontinuous"):
        f = map_from_json(witness["map"])
        mp = map_properties(f)
        if predicate == "proper-eq-seqproper":
            return mp.proper == mp.seq_proper
        extended = plus_map(f, plus(f.dom), plus(f.cod))
        return mp.seq_proper == is_seq_continuous(extended)
    if predicate == "wedge-iso-plus":
        space = space_from_json(witness["space"])
        return based_iso(wedge(space), plus(space)) is not None
    if predicate == "plus-space-sequential":
        space = space_from_json(witness["space"])
        if not is_omega_sequential(space):
            return False
        if witness.get("set"):
            plus_space = plus(space).space
            s = evset_from_json(witness["set"], plus_space.universe)
            return is_sequentially_open(plus_space, s) == is_open(plus_space, s)
        return True
    if predicate == "closed-scompact-countably-compact":
        space = space_from_json(witness["space"])
        c = evset_from_json(witness["set"], space.universe)
        if not (set_properties(space, c).closed and is_s_compact(space, c)):
            return True
        return space_report(subspace(space, c)).countably_compact
    if predicate == "scompact-three-way":
        space = space_from_json(witness["space"])
        c = evset_from_json(witness["set"], space.universe)
        sub = space_report(subspace(space, c))
        return is_s_compact(space, c) == sub.countably_compact == sub.seq_compact
    if predicate == "infinity-bar-round-trip":
        ext = entity_from_json(witness["ext"])
        space = ext.space
        if based_iso(infinity(cocompact_ext_space(space)), plus(space)) is None:
            return False
        if bar(infinity(ext)) != ext:
            return False
        b = infinity(ext)
        return based_iso(infinity(bar(b)), b) is not None
    if predicate == "cocompact-closed-form":
        space = space_from_json(witness["space"])
        s = evset_from_json(witness["set"], space.universe)
        direct = set_properties(space, ev_complement(s)).closed_compact
        return is_e_open(cocompact_ext_space(space), s) == direct
    if predicate == "coreflection-identity":
        ext = entity_from_json(witness["ext"])
        if coreflect(ext) != ext or not e_report(ext).e_sequential:
            return False
        if witness.get("set"):
            s = evset_from_json(witness["set"], ext.space.universe)
            return sequentially_e_open(ext, s) == is_e_open(ext, s)
        return True
    if predicate == "mutant-compactness":
        return space_report(space_from_json(witness["space"])).compact
    if predicate in (
        "glue-round-trip",
        "covering-certificate",
        "non-covering-witness",
        "non-covering-no-amalgamation",
        "incompatible-at-2",
    ):
        ideal = make_ideal(
            witness["ideal"]["carrier"],
            [Affine(g["a"], g["b"]) for g in witness["ideal"]["generators"]],
        ) if "ideal" in witness else None
        if predicate == "covering-certificate" and ideal is not None:
            return is_cover(ideal, "Je").status == "yes"
        if predicate == "non-covering-witness" and ideal is not None:
            return is_cover(ideal, "Je").status == "no"
        if predicate == "glue-round-trip" and "seq" in witness:
            ext = entity_from_json(witness["ext"])
            s = seq_from_json(witness["seq"], ext.space.universe)
            fam, points, conv = restrict_family(s, ideal, ())
            res = glue(build_sigma(ext), ideal, fam, points, conv)
            return res.kind == "amalgamation" and seq_equal(res.seq, s)
        return False
    raise PresentationError(f"unknown witness predicate {predicate!r}")
