import pytest

from fincat.core import BudgetExceeded, UnknownName, builtin, identity_functor, validate_category
from fincat.counterexamples import (
    ArrowMorphism,
    arrow_hom_category,
    arrow_hom_postcompose,
    arrow_normal_on_test_set,
    arrow_sections,
    build_fy,
    run_counterexample,
)


def test_groth_leibniz_witness_passes():
    w = run_counterexample("groth_leibniz")
    assert w.passed
    by_name = {c.predicate: c for c in w.claims}
    assert by_name["failing arrow domain"].actual == "(1,0)"
    assert by_name["failing arrow codomain"].actual == "(1,1)"


def test_groth_leibniz_is_replayable_deterministically():
    a = run_counterexample("groth_leibniz").to_dict()
    b = run_counterexample("groth_leibniz").to_dict()
    assert a == b


def test_nip_cat2_witness_passes():
    w = run_counterexample("nip_cat2")
    assert w.passed
    names = [c.predicate for c in w.claims]
    assert "chaotic square has a functor filler" in names


def test_fy_dichotomy_grid():
    for k in range(5):
        for alpha in (2, 3, 4):
            w = run_counterexample(f"fy_family({k},{alpha})")
            assert w.passed, (k, alpha)
            section = next(c for c in w.claims if c.predicate == "square has a section")
            assert section.expected == (k < alpha)


def test_fy_rejects_oversized_parameters():
    with pytest.raises(BudgetExceeded):
        run_counterexample("fy_family(9,3)")
    with pytest.raises(BudgetExceeded):
        run_counterexample("fy_family(3,7)")


def test_unknown_name():
    with pytest.raises(UnknownName):
        run_counterexample("missing_one")


def test_fy_structure_is_lawful():
    f = build_fy(3, 3)
    validate_category(f.source.source)
    validate_category(f.source.target)
    f.validate()
    assert f.level0.source is f.source.source


def test_fy_normality_fails_for_perturbed_square():
    # sanity: the test-set normality check is not vacuous; a non-isofibration
    # square fails it
    from fincat.core import FinFunctor, builtin_functor, terminal_category

    iso = builtin("free_iso")
    one = terminal_category()
    inclusion = builtin_functor("point_to_iso")
    square = ArrowMorphism(
        source=identity_functor(one),
        target=identity_functor(iso),
        level0=inclusion,
        level1=inclusion,
    ).validate()
    assert not arrow_normal_on_test_set(square)


def test_arrow_hom_category_of_terminal_object_is_hom_like():
    one = builtin("terminal")
    two = builtin("arrow")
    from fincat.core import FinFunctor

    X = identity_functor(one)
    A = FinFunctor(two, one, {a: "*" for a in two.objects}, {m.name: "id_*" for m in two.morphisms})
    hom = arrow_hom_category(X, A)
    validate_category(hom.category)
    # squares 1 → (arrow → 1) are just objects of the arrow category
    assert hom.category.n_objects == 2


def test_arrow_sections_of_identity():
    two = builtin("arrow")
    ident = ArrowMorphism(
        source=identity_functor(two),
        target=identity_functor(two),
        level0=identity_functor(two),
        level1=identity_functor(two),
    ).validate()
    assert arrow_sections(ident)
