"""Monoids, ideals, coverings, the presheaf embedding, and gluing."""

import random

import pytest

from extseq.core import FinitePoint, TailPoint
from extseq.errors import PresentationError
from extseq.generate import gen_ext, gen_map, gen_space
from extseq.instances import NAT_TAIL, nat_cofinite, nat_plus_space, nat_space
from extseq.maps import identity_map
from extseq.sequences import (
    IDENTITY,
    Affine,
    ConstThread,
    WalkThread,
    make_seq,
    seq_equal,
    subseq,
    walk_seq,
)
from extseq.sheaves import (
    INF,
    CMap,
    ConvElem,
    affine_divide,
    affine_seq,
    as_affine,
    based_affine_conv,
    build_sigma,
    c_map_check,
    constant_conv,
    conv_compose,
    conv_equal,
    glue,
    ideal_member,
    is_cover,
    m_compose,
    make_conv,
    make_ideal,
    restrict_family,
    sigma_map,
)

NN = nat_space()
NP = nat_plus_space()
NNU = NN.universe


# -- division and membership ------------------------------------------------


def test_affine_divide_examples():
    assert affine_divide(Affine(4, 2), Affine(2, 0)) == Affine(2, 1)
    assert affine_divide(Affine(2, 1), Affine(2, 0)) is None
    assert affine_divide(Affine(2, 0), Affine(2, 0)) == Affine(1, 0)


def test_ideal_member_examples():
    whole = make_ideal("M", [Affine(1, 0)])
    assert ideal_member(whole, Affine(5, 3)).yes
    evens = make_ideal("M", [Affine(2, 0)])
    hit = ideal_member(evens, Affine(4, 2))
    assert hit.yes and hit.witness == Affine(2, 1)
    assert not ideal_member(evens, Affine(2, 1)).yes


def test_ideal_member_on_sequences():
    evens = make_ideal("M", [Affine(2, 0)])
    # The interleave of 4n+2 and 4n ~ an even-valued non-affine element.
    g = make_seq(NNU, (), (WalkThread(NAT_TAIL, 4, 2), WalkThread(NAT_TAIL, 4, 0)))
    hit = ideal_member(evens, g)
    assert hit.yes
    w = hit.witness
    assert w is not None and seq_equal(m_compose(affine_seq(Affine(2, 0)), w), g)
    odd = make_seq(NNU, (), (WalkThread(NAT_TAIL, 4, 1),))
    assert not ideal_member(evens, odd).yes


def test_ideal_member_with_general_generator():
    gen = make_seq(NNU, (), (WalkThread(NAT_TAIL, 4, 0), WalkThread(NAT_TAIL, 4, 2)))
    ideal = make_ideal("M", [gen])
    g = m_compose(gen, affine_seq(Affine(3, 1)))
    assert ideal_member(ideal, g).yes
    assert not ideal_member(ideal, affine_seq(Affine(2, 1))).yes


def test_ideal_member_mplus():
    evens = make_ideal("M+", [based_affine_conv(Affine(2, 0))])
    assert ideal_member(evens, based_affine_conv(Affine(4, 2))).yes
    assert not ideal_member(evens, based_affine_conv(Affine(2, 1))).yes
    # Constants divide through the value at the added point.
    assert ideal_member(evens, constant_conv(4)).yes
    assert not ideal_member(evens, constant_conv(3)).yes
    whole = make_ideal("M+", [based_affine_conv(Affine(1, 0))])
    assert ideal_member(whole, constant_conv(7)).yes


def test_monoid_action_laws():
    rng = random.Random(1)
    for _ in range(60):
        s = make_seq(
            NNU,
            [TailPoint(NAT_TAIL, rng.randrange(9)) for _ in range(rng.randrange(3))],
            [
                WalkThread(NAT_TAIL, rng.randrange(1, 4), rng.randrange(6))
                for _ in range(rng.randrange(1, 3))
            ],
        )
        u = Affine(rng.randrange(1, 4), rng.randrange(5))
        v = Affine(rng.randrange(1, 4), rng.randrange(5))
        left = m_compose(m_compose(s, affine_seq(u)), affine_seq(v))
        right = m_compose(s, affine_seq(u.then(v)))
        for n in range(100):
            assert left.at(n) == right.at(n)


def test_conv_compose_handles_added_point():
    g = make_conv(NP, walk_seq(NP.universe, NAT_TAIL), INF)
    # Right factor hits the added point at position 0, then escapes.
    u_seq = make_seq(NP.universe, (INF,), (WalkThread(NAT_TAIL, 1, 0),))
    u = ConvElem(u_seq, INF)
    comp = conv_compose(g, u)
    assert comp.seq.at(0) == INF
    assert comp.seq.at(3) == g.seq.at(u_seq.at(3).index)
    assert comp.limit == INF
    c = conv_compose(g, constant_conv(5))
    assert c.limit == g.seq.at(5)


# -- coverings ----------------------------------------------------------------


def test_cover_whole_monoid():
    assert is_cover(make_ideal("M", [Affine(1, 0)]), "Je").status == "yes"


def test_cover_two_residues():
    assert is_cover(make_ideal("M", [Affine(2, 0), Affine(2, 1)]), "Je").status == "yes"


def test_cover_evens_fails_with_witness():
    res = is_cover(make_ideal("M", [Affine(2, 0)]), "Je")
    assert res.status == "no" and res.witness == Affine(2, 1)
    # The witness really fails: no affine right factor lands in the ideal.
    evens = make_ideal("M", [Affine(2, 0)])
    for a in range(1, 9):
        for b in range(0, 9):
            comp = res.witness.then(Affine(a, b))
            assert not ideal_member(evens, comp).yes


def test_cover_carrier_mismatch():
    with pytest.raises(PresentationError):
        is_cover(make_ideal("M", [Affine(1, 0)]), "Jc")


def test_cover_jc_needs_constants():
    gens = [based_affine_conv(Affine(2, 0)), based_affine_conv(Affine(2, 1))]
    assert is_cover(make_ideal("M+", gens), "Jc").status == "yes"
    # Covering residues but missing small values: still fine since the
    # progressions start at 0 and 1 ... now shift one progression up:
    gens2 = [based_affine_conv(Affine(2, 2)), based_affine_conv(Affine(2, 1))]
    res = is_cover(make_ideal("M+", gens2), "Jc")
    assert res.status == "no"  # the value 0 is not any generator's image
    gens3 = gens2 + [constant_conv(0)]
    assert is_cover(make_ideal("M+", gens3), "Jc").status == "yes"


def test_cover_exactness_vs_bounded_search():
    rng = random.Random(2)
    for _ in range(60):
        gens = [
            Affine(rng.randrange(1, 7), rng.randrange(0, 7))
            for _ in range(rng.randrange(1, 4))
        ]
        ideal = make_ideal("M", gens)
        res = is_cover(ideal, "Je")
        assert res.status in ("yes", "no")
        if res.status == "no":
            u = res.witness
            for a in range(1, 7):
                for b in range(0, 7):
                    assert not ideal_member(ideal, u.then(Affine(a, b))).yes
        else:
            for a in range(1, 5):
                for b in range(0, 5):
                    u = Affine(a, b)
                    found = any(
                        ideal_member(ideal, u.then(Affine(av, bv))).yes
                        for av in range(1, 13)
                        for bv in range(0, 13)
                    )
                    assert found


# -- the presheaf embedding -----------------------------------------------------


def test_yoneda_point():
    from extseq.instances import discrete_point

    one = build_sigma(discrete_point())
    pt = FinitePoint("pt")
    assert one.point_member(pt)
    assert one.c_member(one.cte(pt))
    from extseq.sequences import const_seq

    assert not one.e_member(const_seq(discrete_point().space.universe, pt))


def test_yoneda_nat_plus():
    from extseq.exteriority import make_ext_space

    two = build_sigma(make_ext_space(NP))
    assert two.c_member(based_affine_conv(Affine(1, 0)))
    assert two.c_member(constant_conv(3))
    mixed = make_seq(
        NP.universe, (), (WalkThread(NAT_TAIL, 1, 0), ConstThread(TailPoint(NAT_TAIL, 2)))
    )
    assert not two.c_member(ConvElem(mixed, INF))
    assert not two.e_member(walk_seq(NP.universe, NAT_TAIL))


def test_yoneda_nat():
    nn_sigma = build_sigma(nat_cofinite())
    assert nn_sigma.e_member(walk_seq(NNU, NAT_TAIL))
    assert nn_sigma.e_member(affine_seq(Affine(3, 2)))
    assert not nn_sigma.e_member(
        make_seq(NNU, (), (ConstThread(TailPoint(NAT_TAIL, 1)),))
    )
    # Convergent component: eventually constant sequences with their value.
    ev = make_seq(
        NNU, (TailPoint(NAT_TAIL, 5),), (ConstThread(TailPoint(NAT_TAIL, 3)),)
    )
    assert nn_sigma.c_member(ConvElem(ev, TailPoint(NAT_TAIL, 3)))
    assert not nn_sigma.c_member(ConvElem(ev, TailPoint(NAT_TAIL, 5)))
    assert not nn_sigma.c_member(
        ConvElem(walk_seq(NNU, NAT_TAIL), TailPoint(NAT_TAIL, 0))
    )


def test_sigma_of_map_passes_cmap_check():
    rng = random.Random(3)
    for _ in range(25):
        dom, cod = gen_space(rng), gen_space(rng)
        e_dom, e_cod = gen_ext(rng, dom), gen_ext(rng, cod)
        f = gen_map(rng, dom, cod)
        from extseq.exteriority import is_exterior_map

        if not is_exterior_map(f, e_dom, e_cod):
            continue
        report = c_map_check(
            sigma_map(f), build_sigma(e_dom), build_sigma(e_cod), random.Random(7), 10
        )
        assert report.ok, report


def test_sigma_functorial():
    rng = random.Random(4)
    from extseq.maps import compose_maps

    for _ in range(30):
        a, b, c = gen_space(rng), gen_space(rng), gen_space(rng)
        f, g = gen_map(rng, a, b), gen_map(rng, b, c)
        gf = compose_maps(f, g)
        phi, psi, rho = sigma_map(f), sigma_map(g), sigma_map(gf)
        from extseq.generate import gen_seq, sample_point

        for _ in range(8):
            p = sample_point(rng, a)
            assert rho.on_point(p) == psi.on_point(phi.on_point(p))
            s = gen_seq(rng, a)
            assert seq_equal(rho.on_ext(s), psi.on_ext(phi.on_ext(s)))


def test_cmap_check_detects_broken_components():
    cset = build_sigma(nat_cofinite())
    good = sigma_map(identity_map(NN))
    assert c_map_check(good, cset, cset, random.Random(5), 12).ok

    shuffled = CMap(
        on_point=good.on_point,
        on_conv=good.on_conv,
        on_ext=lambda s: subseq(s, Affine(2, 0)),
    )
    rep = c_map_check(shuffled, cset, cset, random.Random(5), 12)
    assert not rep.ok and rep.failed_square in ("e-action", "ev-n-ext")

    broken_ev = CMap(
        on_point=good.on_point,
        on_conv=lambda ce: ConvElem(subseq(ce.seq, Affine(1, 1)), ce.limit),
        on_ext=good.on_ext,
    )
    rep2 = c_map_check(broken_ev, cset, cset, random.Random(5), 12)
    assert not rep2.ok and rep2.failed_square in ("ev-n", "cte", "c-action")


# -- gluing ---------------------------------------------------------------------


def test_cset_action_and_evaluation_laws():
    rng = random.Random(8)
    checked = 0
    while checked < 20:
        space = gen_space(rng, "tailed")
        ext = gen_ext(rng, space)
        cset = build_sigma(ext)
        exts = cset.e_sample(rng, 3)
        convs = cset.c_sample(rng, 3)
        if not exts or not convs:
            continue
        checked += 1
        u = Affine(rng.randrange(1, 4), rng.randrange(0, 5))
        v = Affine(rng.randrange(1, 4), rng.randrange(0, 5))
        for s in exts:
            assert seq_equal(cset.e_act(s, affine_seq(IDENTITY)), s)
            left = cset.e_act(cset.e_act(s, affine_seq(u)), affine_seq(v))
            right = cset.e_act(s, affine_seq(u.then(v)))
            assert seq_equal(left, right)
            for n in (0, 2, 5):
                assert cset.ev_e(cset.e_act(s, affine_seq(u)), n) == cset.ev_e(s, u(n))
            assert conv_equal(cset.c_of_e(s, 3), cset.cte(cset.ev_e(s, 3)))
        for ce in convs:
            ub = based_affine_conv(u)
            assert conv_equal(cset.c_act(ce, based_affine_conv(IDENTITY)), ce)
            for n in (0, 1, 4):
                assert cset.ev_c(cset.c_act(ce, ub), n) == cset.ev_c(ce, u(n))
            assert cset.ev_c_inf(cset.c_act(ce, ub)) == cset.ev_c_inf(ce)
            # Composing with a constant evaluates and freezes.
            cn = constant_conv(2)
            froze = cset.c_act(ce, cn)
            assert cset.ev_c_inf(froze) == cset.ev_c(ce, 2)


def test_glue_round_trip_identity():
    cset = build_sigma(nat_cofinite())
    ideal = make_ideal("M", [Affine(2, 0), Affine(2, 1)])
    section = walk_seq(NNU, NAT_TAIL)
    morphs = [
        ConvElem(
            make_seq(NNU, (TailPoint(NAT_TAIL, 4),), (ConstThread(TailPoint(NAT_TAIL, 2)),)),
            TailPoint(NAT_TAIL, 2),
        )
    ]
    fam, pts, conv = restrict_family(section, ideal, morphs)
    res = glue(cset, ideal, fam, pts, conv)
    assert res.kind == "amalgamation" and seq_equal(res.seq, section)


def test_glue_incompatible_at_two():
    cset = build_sigma(nat_cofinite())
    ideal = make_ideal("M", [Affine(2, 0), Affine(2, 1)])
    section = walk_seq(NNU, NAT_TAIL)
    fam, pts, conv = restrict_family(section, ideal, ())
    fam[Affine(2, 0)] = make_seq(
        NNU, (section.at(0), TailPoint(NAT_TAIL, 9)), (WalkThread(NAT_TAIL, 2, 4),)
    )
    res = glue(cset, ideal, fam, pts, conv)
    assert res.kind == "incompatible"
    assert res.conflict[0] == Affine(2, 0) and res.conflict[2] == 2


def test_glue_generator_pair_conflict():
    cset = build_sigma(nat_cofinite())
    ideal = make_ideal("M", [Affine(2, 0), Affine(4, 2)])
    section = walk_seq(NNU, NAT_TAIL)
    fam, pts, conv = restrict_family(section, ideal, ())
    # Tamper the finer generator so the two disagree on the overlap 4n+2.
    fam[Affine(4, 2)] = make_seq(NNU, (), (WalkThread(NAT_TAIL, 4, 3),))
    res = glue(cset, ideal, fam, pts, conv, require_cover=False)
    assert res.kind == "incompatible"
    assert set(res.conflict[:2]) == {Affine(2, 0), Affine(4, 2)}


def test_glue_non_covering_not_exterior():
    cset = build_sigma(nat_cofinite())
    evens = make_ideal("M", [Affine(2, 0)])
    stuck = make_seq(
        NNU, (), (WalkThread(NAT_TAIL, 1, 0), ConstThread(TailPoint(NAT_TAIL, 5)))
    )
    fam = {Affine(2, 0): subseq(stuck, Affine(2, 0))}
    res = glue(cset, evens, fam, stuck, (), require_cover=False)
    assert res.kind == "no_amalgamation"
    with pytest.raises(PresentationError):
        glue(cset, evens, fam, stuck, ())


def test_glue_conv_component_checked():
    cset = build_sigma(nat_cofinite())
    ideal = make_ideal("M", [Affine(2, 0), Affine(2, 1)])
    section = walk_seq(NNU, NAT_TAIL)
    h = ConvElem(
        make_seq(NNU, (), (ConstThread(TailPoint(NAT_TAIL, 2)),)), TailPoint(NAT_TAIL, 2)
    )
    fam, pts, conv = restrict_family(section, ideal, [h])
    wrong = ConvElem(
        make_seq(NNU, (), (ConstThread(TailPoint(NAT_TAIL, 3)),)), TailPoint(NAT_TAIL, 3)
    )
    res = glue(cset, ideal, fam, pts, [(h, wrong)])
    assert res.kind == "incompatible"


def test_glue_round_trips_on_generated_instances():
    rng = random.Random(6)
    done = 0
    while done < 40:
        space = gen_space(rng, "tailed")
        ext = gen_ext(rng, space)
        cset = build_sigma(ext)
        secs = cset.e_sample(rng, 2)
        if not secs:
            continue
        done += 1
        modulus = rng.randrange(1, 4)
        ideal = make_ideal("M", [Affine(modulus, r) for r in range(modulus)])
        fam, pts, conv = restrict_family(secs[0], ideal, ())
        res = glue(cset, ideal, fam, pts, conv)
        assert res.kind == "amalgamation" and seq_equal(res.seq, secs[0])


def test_as_affine_detects_presentations():
    assert as_affine(affine_seq(Affine(3, 1))) == Affine(3, 1)
    assert as_affine(
        make_seq(NNU, (TailPoint(NAT_TAIL, 0),), (WalkThread(NAT_TAIL, 1, 1),))
    ) == Affine(1, 0)
    assert as_affine(make_seq(NNU, (), (ConstThread(TailPoint(NAT_TAIL, 2)),))) is None
