import pytest

from fincat.core import FinFunctor, WitnessInvalid, builtin, builtin_functor, identity_functor
from fincat.equivalence import (
    EquivalenceWitness,
    NotEquivalence,
    classify_equivalence,
    find_retractions,
    find_sections,
    injective_witness,
    retract_witness,
    validate_witness,
    witness_from_parts,
)
from helpers import brute_force_functors, is_equivalence_bf


def test_identity_is_isomorphism_all_kinds():
    for name in ["terminal", "arrow", "free_iso", "chaotic(2)"]:
        w = classify_equivalence(identity_functor(builtin(name)))
        assert isinstance(w, EquivalenceWitness)
        assert w.kinds == {"plain", "retract", "injective"}
        assert w.unit.is_identity() and w.counit.is_identity()


def test_point_into_free_iso_is_injective_equivalence():
    F = builtin_functor("point_to_iso")
    w = classify_equivalence(F)
    assert isinstance(w, EquivalenceWitness)
    assert w.has_retraction and not w.has_section
    assert w.kind == "injective"
    assert w.unit.is_identity()
    validate_witness(w)


def test_collapse_free_iso_is_retract_equivalence():
    iso = builtin("free_iso")
    one = builtin("terminal")
    F = FinFunctor(iso, one, {"0": "*", "1": "*"}, {m.name: "id_*" for m in iso.morphisms})
    w = classify_equivalence(F)
    assert isinstance(w, EquivalenceWitness)
    assert w.has_section and not w.has_retraction
    assert retract_witness(F).counit.is_identity()
    with pytest.raises(WitnessInvalid):
        injective_witness(F)


def test_chaotic_to_terminal_is_retract_equivalence():
    chaos = builtin("chaotic(2)")
    one = builtin("terminal")
    F = FinFunctor(chaos, one, {a: "*" for a in chaos.objects}, {m.name: "id_*" for m in chaos.morphisms})
    w = classify_equivalence(F)
    assert isinstance(w, EquivalenceWitness)
    assert w.has_section
    rw = retract_witness(F)
    assert rw.counit.is_identity()
    validate_witness(rw)


def test_point_into_arrow_not_equivalence():
    F = builtin_functor("point_to_arrow_0")
    res = classify_equivalence(F)
    assert isinstance(res, NotEquivalence)
    assert res.reason == "not essentially surjective"


def test_collapse_parallel_not_equivalence():
    res = classify_equivalence(builtin_functor("collapse_parallel"))
    assert isinstance(res, NotEquivalence)
    assert res.reason in ("not faithful", "not full")


def test_agreement_with_ff_eso_oracle_on_small_pairs():
    pairs = [
        ("terminal", "free_iso"),
        ("free_iso", "free_iso"),
        ("free_iso", "chaotic(2)"),
        ("chaotic(2)", "chaotic(2)"),
        ("arrow", "arrow"),
        ("free_iso", "terminal"),
        ("arrow", "free_iso"),
    ]
    checked = 0
    for s, d in pairs:
        for F in brute_force_functors(builtin(s), builtin(d)):
            expected = is_equivalence_bf(F)
            got = classify_equivalence(F)
            assert isinstance(got, EquivalenceWitness) == expected
            checked += 1
    assert checked > 20


def test_section_and_retraction_searches_are_exact():
    # free_iso -> terminal collapse: every functor terminal -> free_iso is a
    # section; no retraction exists
    iso = builtin("free_iso")
    one = builtin("terminal")
    F = FinFunctor(iso, one, {"0": "*", "1": "*"}, {m.name: "id_*" for m in iso.morphisms})
    secs = list(find_sections(F))
    assert len(secs) == 2
    assert list(find_retractions(F)) == []
    # point into free_iso: unique retraction candidates collapse everything
    G = builtin_functor("point_to_iso")
    assert list(find_sections(G)) == []
    rets = list(find_retractions(G))
    assert len(rets) == 1
    assert rets[0].omap == {"0": "*", "1": "*"}


def test_every_section_yields_valid_retract_witness():
    # witness choice must not matter downstream: every section normalizes
    chaos = builtin("chaotic(3)")
    one = builtin("terminal")
    F = FinFunctor(
        chaos,
        one,
        {a: "*" for a in chaos.objects},
        {m.name: "id_*" for m in chaos.morphisms},
    )
    sections = list(find_sections(F))
    assert len(sections) == 3
    for G in sections:
        w = witness_from_parts(F, G, "retract", True, False)
        validate_witness(w)
        assert w.counit.is_identity()
