"""Text-format round trips for presentations, Hopf appendices, and reps."""

from fractions import Fraction

import pytest

from loopdeform.errors import RepValidationError, UnknownGeneratorError
from loopdeform.hopf import build_hopf
from loopdeform.presentations import (
    build_drinfeldian,
    build_uq,
    build_yangian_sl2,
)
from loopdeform.ratfunc import rf
from loopdeform.repn import solve_eval_correction, uq_spin_half
from loopdeform.serial import (
    FormatError,
    dump_bundle,
    dump_presentation,
    load_bundle,
    load_presentation,
    parse_ncpoly,
    parse_tensorpoly,
)


@pytest.mark.parametrize("build", [
    lambda: build_uq("sl2"),
    lambda: build_uq("sl3"),
    lambda: build_drinfeldian("sl2"),
    lambda: build_drinfeldian("sl3"),
    build_yangian_sl2,
], ids=["uq-sl2", "uq-sl3", "drinfeldian-sl2", "drinfeldian-sl3",
        "yangian-sl2"])
def test_presentation_round_trip(build):
    p = build()
    text = dump_presentation(p)
    q = load_presentation(text)
    assert q.name == p.name and q.family == p.family
    assert q.params == p.params and q.degree_bound == p.degree_bound
    assert q.alphabet == p.alphabet
    assert q.shift_element == p.shift_element
    assert len(q.relations) == len(p.relations)
    for a, b in zip(p.relations, q.relations):
        assert (a.label, a.lead, a.repl) == (b.label, b.lead, b.repl)
    # dumping the loaded presentation is byte-identical
    assert dump_presentation(q) == text


def test_loaded_rules_rewrite_identically():
    p = build_drinfeldian("sl2")
    q = load_presentation(dump_presentation(p))
    for rel in q.relations:
        assert q.normal_form(rel.zero_form(q.alphabet)).is_zero()
    probe = p.gen("e+a1") * p.gen("e-a1") * p.gen("k+a1")
    mirror = q.gen("e+a1") * q.gen("e-a1") * q.gen("k+a1")
    assert str(p.normal_form(probe)) == str(q.normal_form(mirror))


def test_bundle_round_trip_with_hopf_and_rep():
    p = build_yangian_sl2()
    H = build_hopf(p)
    r = solve_eval_correction(Fraction(1, 2), p)
    text = dump_bundle(p, H, [r])
    q, H2, reps = load_bundle(text)
    assert H2.delta == dict(H.delta)
    assert H2.antipode == dict(H.antipode)
    assert H2.epsilon == dict(H.epsilon)
    assert len(reps) == 1 and reps[0].label == r.label
    assert reps[0].images == r.images
    assert dump_bundle(q, H2, reps) == text


def test_q_deformed_bundle_round_trip():
    p = build_uq("sl2")
    text = dump_bundle(p, build_hopf(p), [uq_spin_half(p)])
    q, H2, reps = load_bundle(text)
    assert dump_bundle(q, H2, reps) == text


def test_element_parsers_invert_str():
    p = build_drinfeldian("sl2")
    x = (p.gen("e+a1") * p.gen("k-a1")).scale(rf("(q^2-1)/(q*eta)")) \
        + p.unit().scale(rf("-1/2"))
    assert parse_ncpoly(str(x), p.alphabet) == x
    t = x.tensor(p.gen("xi") - p.unit())
    assert parse_tensorpoly(str(t), p.alphabet, 2) == t
    assert parse_ncpoly("0", p.alphabet).is_zero()
    assert parse_tensorpoly("0", p.alphabet, 2).is_zero()


def test_malformed_documents_are_rejected():
    p = build_yangian_sl2()
    good = dump_presentation(p)
    with pytest.raises(FormatError):
        load_presentation("")
    with pytest.raises(FormatError):
        load_presentation(good.replace("family yangian", "family nosuch"))
    with pytest.raises(FormatError):
        load_presentation(good.replace("cartan sl2", "cartan e8"))
    # a gen line that disagrees with the rebuilt alphabet
    with pytest.raises(FormatError):
        load_presentation(good.replace("gen xi weight=-1 degree=1",
                                       "gen xi weight=7 degree=1"))
    # a missing gen line
    lines = [l for l in good.splitlines() if not l.startswith("gen ha1")]
    with pytest.raises(FormatError):
        load_presentation("\n".join(lines))
    # an unknown letter inside a relation
    with pytest.raises(UnknownGeneratorError):
        load_presentation(good.replace("xi.e-a1", "nope.e-a1"))
    # matrices outside a rep block
    with pytest.raises(FormatError):
        load_bundle(good + "mat ha1: 1,0;0,-1\n")


def test_loaded_rep_is_revalidated():
    p = build_yangian_sl2()
    r = solve_eval_correction(Fraction(1, 2), p)
    text = dump_bundle(p, reps=[r])
    # corrupt one matrix entry: construction must replay the relation check
    bad = text.replace("mat ha1: 1,0;0,-1", "mat ha1: 1,0;0,1")
    assert bad != text
    with pytest.raises(RepValidationError):
        load_bundle(bad)


def test_comments_and_blank_lines_are_skipped():
    p = build_yangian_sl2()
    text = dump_presentation(p)
    noisy = "# header comment\n\n" + text.replace(
        "degree-bound", "# inline note\ndegree-bound")
    assert dump_presentation(load_presentation(noisy)) == text
