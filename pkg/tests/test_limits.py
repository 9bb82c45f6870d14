import pytest

from fincat.core import (
    CleavageNotNormal,
    FinFunctor,
    NotIdempotent,
    builtin,
    builtin_functor,
    constant_functor,
    find_isomorphism,
    identity_functor,
    identity_nat,
    validate_category,
    validate_functor,
    validate_transformation,
)
from fincat.equivalence import classify_equivalence
from fincat.fibrations import classify_fibration, perturbed_cleavage
from fincat.funcat import evaluation_functor, functor_category
from fincat.limits import (
    build_normal_pullback,
    equifier,
    find_isomorphism_over,
    inserter,
    isocomma,
    pseudolimit_injective_witness,
    pseudolimit_of_arrow,
    pseudolimit_retract_witness,
    pullback_along_normal_isofibration,
    pullback_strict,
    split_idempotent,
    strict_tower_limit,
    tower_alignment_check,
    tower_limit,
)


def to_terminal(cat):
    one = builtin("terminal")
    return FinFunctor(
        cat, one, {a: "*" for a in cat.objects}, {m.name: "id_*" for m in cat.morphisms}
    )


# -- strict pullback ---------------------------------------------------------


def test_pullback_of_identities_is_diagonal_copy():
    A = builtin("free_iso")
    w = pullback_strict(identity_functor(A), identity_functor(A))
    assert w.certificate.ok
    assert find_isomorphism(w.apex, A) is not None


def test_pullback_of_distinct_points_is_empty():
    F = builtin_functor("point_to_arrow_0")
    G = builtin_functor("point_to_arrow_1")
    w = pullback_strict(F, G)
    assert w.apex.n_objects == 0 and w.apex.n_morphisms == 0
    assert w.certificate.ok


def test_pullback_certificate_counts_cones():
    A = builtin("arrow")
    w = pullback_strict(identity_functor(A), identity_functor(A))
    assert w.certificate.cones_checked > 0


# -- isocomma ----------------------------------------------------------------


def test_isocomma_of_terminal_identities():
    one = builtin("terminal")
    w = isocomma(identity_functor(one), identity_functor(one))
    assert w.apex.n_objects == 1
    assert find_isomorphism(w.apex, one) is not None
    assert w.certificate.ok


def test_isocomma_over_free_iso_has_four_objects():
    # independent count: each of the 2x2 object pairs carries exactly one
    # isomorphism of the free-iso category
    iso = builtin("free_iso")
    expected = 0
    for a in iso.objects:
        for b in iso.objects:
            expected += sum(1 for m in iso.hom(b, a) if iso.is_iso(m))
    assert expected == 4
    w = isocomma(identity_functor(iso), identity_functor(iso))
    assert w.apex.n_objects == 4
    assert w.certificate.ok
    validate_category(w.apex)
    validate_transformation(w.structure_cells[0], invertible=True)


def test_isocomma_with_discrete_base_is_strict_pullback():
    two = builtin("two_discrete")
    F = FinFunctor(builtin("terminal"), two, {"*": "0"}, {"id_*": "id_0"})
    G = identity_functor(two)
    w1 = isocomma(F, G)
    w2 = pullback_strict(F, G)
    assert w1.apex.n_objects == w2.apex.n_objects
    iso = find_isomorphism(w1.apex, w2.apex)
    assert iso is not None


# -- pseudolimit of an arrow -------------------------------------------------


def test_pseudolimit_of_identity_is_iso_power():
    A = builtin("free_iso")
    pl = pseudolimit_of_arrow(identity_functor(A))
    power = functor_category(builtin("free_iso"), A)
    assert find_isomorphism(pl.apex, power) is not None


def test_pseudolimit_is_the_pullback_of_cod():
    two = builtin("arrow")
    f = to_terminal(two).then(builtin_functor("point_to_arrow_0"))
    power = functor_category(builtin("free_iso"), two)
    cod = evaluation_functor(power, "1")
    pl = pseudolimit_of_arrow(f)
    pb = pullback_strict(f, cod)
    assert pl.apex == pb.apex
    assert pl.to_source == pb.projections[0]
    assert pl.power_projection == pb.projections[1]


def test_pseudolimit_of_collapse_has_two_objects():
    two, one = builtin("arrow"), builtin("terminal")
    f = to_terminal(two)
    pl = pseudolimit_of_arrow(f)
    # objects are pairs (object of the arrow category, iso in the terminal)
    assert pl.apex.n_objects == 2
    assert pl.witness.certificate.ok


def test_pseudolimit_projection_kinds():
    f = builtin_functor("collapse_parallel")
    pl = pseudolimit_of_arrow(f)
    wu = classify_equivalence(pl.to_source)
    wd = classify_equivalence(pl.diagonal)
    assert "retract" in wu.kinds
    assert "injective" in wd.kinds
    # the direct witnesses also check out
    pseudolimit_retract_witness(pl)
    pseudolimit_injective_witness(pl)


def test_pseudolimit_validates_and_section_equation():
    f = FinFunctor(
        builtin("free_iso"),
        builtin("chaotic(2)"),
        {"0": "0", "1": "1"},
        {"id_0": "u0_0", "id_1": "u1_1", "to": "u0_1", "fro": "u1_0"},
    )
    validate_functor(f)
    pl = pseudolimit_of_arrow(f)
    validate_category(pl.apex)
    validate_functor(pl.to_source)
    validate_functor(pl.to_target)
    validate_functor(pl.diagonal)
    validate_functor(pl.power_comparison)
    validate_transformation(pl.cell, invertible=True)
    validate_transformation(pl.diagonal_cell, invertible=True)
    assert pl.diagonal.then(pl.to_source) == identity_functor(f.source)


# -- inserter / equifier -----------------------------------------------------


def test_inserter_of_identity_on_poset_is_the_poset():
    two = builtin("arrow")
    w = inserter(identity_functor(two), identity_functor(two))
    # only identity endomorphisms exist in a poset
    assert w.apex.n_objects == two.n_objects
    assert find_isomorphism(w.apex, two) is not None
    validate_transformation(w.structure_cells[0])


def test_inserter_of_two_points_is_terminal():
    F = builtin_functor("point_to_arrow_0")
    G = builtin_functor("point_to_arrow_1")
    w = inserter(F, G)
    assert w.apex.n_objects == 1 and w.apex.n_morphisms == 1


def test_inserter_cell_is_natural():
    chaos = builtin("chaotic(2)")
    w = inserter(identity_functor(chaos), identity_functor(chaos))
    validate_transformation(w.structure_cells[0])
    # chaotic(2) has exactly one endomorphism per object
    assert w.apex.n_objects == 2


def test_equifier_of_equal_cells_is_whole_category():
    two = builtin("arrow")
    F = identity_functor(two)
    t = identity_nat(F)
    w = equifier(t, t)
    assert find_isomorphism(w.apex, two) is not None


def test_equifier_separates_distinct_cells():
    chaos = builtin("chaotic(2)")
    one = builtin("terminal")
    F = constant_functor(one, chaos, "0")
    from fincat.core import NatTrans

    t_id = NatTrans(F, F, {"*": "u0_0"})
    w = equifier(t_id, t_id)
    assert w.apex.n_objects == 1


# -- idempotent splitting ----------------------------------------------------


def test_split_identity_gives_whole_category():
    C = builtin("free_iso")
    s = split_idempotent(identity_functor(C))
    assert s.apex == C.relabel(s.apex.label)
    assert s.inclusion.then(s.retraction) == identity_functor(s.apex)


def test_split_collapse_of_chaotic_two():
    chaos = builtin("chaotic(2)")
    e = FinFunctor(
        chaos,
        chaos,
        {"0": "0", "1": "0"},
        {m.name: "u0_0" for m in chaos.morphisms},
    )
    validate_functor(e)
    s = split_idempotent(e)
    assert s.apex.objects == ("0",)
    assert s.apex.n_morphisms == 1
    assert s.retraction.then(s.inclusion) == e


def test_split_rejects_non_idempotent():
    chaos = builtin("chaotic(2)")
    swap = FinFunctor(
        chaos,
        chaos,
        {"0": "1", "1": "0"},
        {"u0_0": "u1_1", "u1_1": "u0_0", "u0_1": "u1_0", "u1_0": "u0_1"},
    )
    with pytest.raises(NotIdempotent):
        split_idempotent(swap)


# -- pullback along a normal isofibration -------------------------------------


def test_normal_pullback_of_identity_leg():
    B = builtin("free_iso")
    f = identity_functor(builtin("chaotic(2)"))
    g = FinFunctor(
        B,
        builtin("chaotic(2)"),
        {"0": "0", "1": "1"},
        {"id_0": "u0_0", "id_1": "u1_1", "to": "u0_1", "fro": "u1_0"},
    )
    w = pullback_along_normal_isofibration(f, g)
    assert find_isomorphism(w.apex, B) is not None
    assert w.certificate.ok


def test_normal_pullback_to_terminal_recovers_other_leg():
    chaos = builtin("chaotic(2)")
    f = to_terminal(chaos)
    g = identity_functor(builtin("terminal"))
    w = pullback_along_normal_isofibration(f, g)
    assert find_isomorphism(w.apex, chaos) is not None


def test_normal_pullback_matches_strict_oracle():
    two = builtin("arrow")
    power = functor_category(builtin("free_iso"), two)
    cod = evaluation_functor(power, "1")
    strict = pullback_strict(cod, cod)
    np = build_normal_pullback(cod, cod)
    assert np.idempotent.then(np.idempotent) == np.idempotent
    iso = find_isomorphism_over(np.witness, strict)
    assert iso is not None


def test_normal_pullback_rejects_non_normal_cleavage():
    chaos = builtin("chaotic(2)")
    f = to_terminal(chaos)
    cl = perturbed_cleavage(f)
    assert cl is not None
    with pytest.raises(CleavageNotNormal):
        build_normal_pullback(f, identity_functor(builtin("terminal")), cleavage=cl)


# -- tower limits --------------------------------------------------------------


def test_tower_of_identities_is_base():
    A = builtin("free_iso")
    tl = tower_limit(A, [identity_functor(A), identity_functor(A)])
    strict = strict_tower_limit(A, [identity_functor(A), identity_functor(A)])
    assert find_isomorphism_over(tl.witness, strict) is not None
    assert find_isomorphism(tl.witness.apex, A) is not None
    assert tl.witness.certificate.ok
    assert tower_alignment_check(tl)


def test_tower_of_length_one():
    chaos = builtin("chaotic(2)")
    f = to_terminal(chaos)
    tl = tower_limit(builtin("terminal"), [f])
    assert find_isomorphism(tl.witness.apex, chaos) is not None
    assert tl.witness.projections[1].then(f) == tl.witness.projections[0]
    assert tower_alignment_check(tl)


def test_chaotic_tower_matches_strict_limit():
    one = builtin("terminal")
    c2, c3 = builtin("chaotic(2)"), builtin("chaotic(3)")
    f1 = to_terminal(c2)
    f2 = FinFunctor(
        c3,
        c2,
        {"0": "0", "1": "1", "2": "0"},
        {m.name: f"u{min(int(m.dom), 1) if m.dom != '2' else 0}_{0 if m.cod == '2' else min(int(m.cod), 1)}" for m in c3.morphisms},
    )
    # explicit collapse 2 ↦ 0 of the chaotic triple onto the chaotic pair
    omap = {"0": "0", "1": "1", "2": "0"}
    mmap = {m.name: f"u{omap[m.dom]}_{omap[m.cod]}" for m in c3.morphisms}
    f2 = FinFunctor(c3, c2, omap, mmap)
    validate_functor(f2)
    assert classify_fibration(f2).normal
    tl = tower_limit(one, [f1, f2])
    strict = strict_tower_limit(one, [f1, f2])
    assert find_isomorphism_over(tl.witness, strict) is not None
    assert find_isomorphism(tl.witness.apex, c3) is not None
    assert tl.witness.certificate.ok
    assert tower_alignment_check(tl)


def test_tower_rejects_non_normal_cleavage():
    chaos = builtin("chaotic(2)")
    f = to_terminal(chaos)
    cl = perturbed_cleavage(f)
    with pytest.raises(CleavageNotNormal):
        tower_limit(builtin("terminal"), [f], cleavages=[cl])
