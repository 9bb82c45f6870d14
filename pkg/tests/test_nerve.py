import pytest

from fincat.core import BoundExceeded, builtin, find_isomorphism
from fincat.corpus import corpus_categories
from fincat.funcat import product_category
from fincat.nerve import (
    TruncSSet,
    check_powers_iso,
    classifying_category,
    classifying_functor,
    coskeletal_filler_check,
    nerve_truncated,
    sset_from_dict,
    sset_product,
    standard_simplex,
    truncated_sset_maps,
    validate_sset,
)


def free_loop_sset() -> TruncSSet:
    """One vertex, one nondegenerate loop, no nondegenerate 2-simplices."""
    v, e = "v", "e"
    sv = "s0v"
    A, B, C = "s0e", "s1e", "s0s0v"
    P, Q, R, T = "s1s0e", "s2s0e", "s2s1e", "s2s1s0v"
    simplices = ((v,), (e, sv), (A, B, C), (P, Q, R, T))
    faces = {
        (1, 0): {e: v, sv: v},
        (1, 1): {e: v, sv: v},
        (2, 0): {A: e, B: sv, C: sv},
        (2, 1): {A: e, B: e, C: sv},
        (2, 2): {A: sv, B: e, C: sv},
        (3, 0): {P: A, Q: B, R: C, T: C},
        (3, 1): {P: A, Q: B, R: B, T: C},
        (3, 2): {P: A, Q: A, R: B, T: C},
        (3, 3): {P: C, Q: A, R: B, T: C},
    }
    degeneracies = {
        (0, 0): {v: sv},
        (1, 0): {e: A, sv: C},
        (1, 1): {e: B, sv: C},
        (2, 0): {A: P, B: Q, C: T},
        (2, 1): {A: P, B: R, C: T},
        (2, 2): {A: Q, B: R, C: T},
    }
    return TruncSSet(simplices, faces, degeneracies, label="loop")


def test_standard_simplices_validate():
    for k in range(3):
        validate_sset(standard_simplex(k))


def test_products_validate():
    X = sset_product(standard_simplex(1), standard_simplex(1))
    validate_sset(X)
    assert X.dim_count(0) == 4


def test_nerves_of_corpus_categories_validate():
    for C in corpus_categories():
        validate_sset(nerve_truncated(C))


def test_nerve_of_terminal_is_a_point():
    N = nerve_truncated(builtin("terminal"))
    assert all(N.dim_count(d) == 1 for d in range(4))
    assert N.nondegenerate(1) == ()


def test_nerve_of_arrow_nondegenerate_counts():
    N = nerve_truncated(builtin("arrow"))
    assert len(N.simplices[0]) == 2
    assert N.nondegenerate(1) == ("(a)",)
    assert N.nondegenerate(2) == ()
    assert N.nondegenerate(3) == ()


def test_nerve_of_free_iso_nondegenerate_counts():
    iso = builtin("free_iso")
    N = nerve_truncated(iso)
    # independent count of nondegenerate chains: pairs of non-identities
    chains = [
        (f.name, g.name)
        for f in iso.morphisms
        for g in iso.morphisms
        if f.cod == g.dom
        and not iso.is_identity(f.name)
        and not iso.is_identity(g.name)
    ]
    assert len(chains) == 2  # (to, fro) and (fro, to)
    assert len(N.nondegenerate(1)) == 2
    assert len(N.nondegenerate(2)) == 2


def test_nerves_are_coskeletal():
    for name in ["terminal", "arrow", "free_iso", "parallel_pair", "chaotic(2)"]:
        assert coskeletal_filler_check(nerve_truncated(builtin(name)))


def test_classifying_of_interval_is_arrow():
    P = classifying_category(standard_simplex(1))
    assert find_isomorphism(P, builtin("arrow")) is not None


def test_classifying_of_point_is_terminal():
    P = classifying_category(standard_simplex(0))
    assert P.n_objects == 1 and P.n_morphisms == 1


def test_classifying_nerve_roundtrip_samples():
    for name in ["terminal", "arrow", "free_iso", "parallel_pair", "chaotic(2)", "chain(3)"]:
        C = (
            builtin(name)
            if "(" not in name or name.startswith(("chaotic", "discrete"))
            else None
        )
        if C is None:
            from fincat.corpus import corpus_category

            C = corpus_category(name)
        P = classifying_category(nerve_truncated(C))
        assert find_isomorphism(P, C) is not None, name


def test_free_loop_raises_bound_exceeded():
    X = validate_sset(free_loop_sset())
    with pytest.raises(BoundExceeded):
        classifying_category(X, bound=4)


def test_classifying_preserves_binary_products():
    for a, b in [("arrow", "arrow"), ("arrow", "free_iso")]:
        A, B = builtin(a), builtin(b)
        X = sset_product(nerve_truncated(A), nerve_truncated(B))
        P = classifying_category(X)
        prod = product_category(A, B)
        assert find_isomorphism(P, prod) is not None


def test_classifying_functor_of_mono_is_injective_on_objects():
    d0, d1 = standard_simplex(0), standard_simplex(1)
    maps = truncated_sset_maps(d0, d1)
    monos = [
        m
        for m in maps
        if len({v for (dim, _), v in m.items() if dim == 0}) == d0.dim_count(0)
    ]
    assert monos
    for m in monos:
        F = classifying_functor(m, d0, d1)
        assert F.injective_on_objects()

    niso = nerve_truncated(builtin("free_iso"))
    interval_maps = truncated_sset_maps(d1, niso)
    levelwise_injective = [
        m
        for m in interval_maps
        if all(
            len({v for (dim, s), v in m.items() if dim == d})
            == len({s for (dim, s) in m if dim == d})
            for d in range(4)
        )
    ]
    assert levelwise_injective
    for m in levelwise_injective:
        F = classifying_functor(m, d1, niso)
        assert F.injective_on_objects()


def test_powers_comparison_for_point():
    rep = check_powers_iso(standard_simplex(0), builtin("arrow"), dim=2)
    assert rep.ok
    # the hom out of a point is the nerve itself
    N = nerve_truncated(builtin("arrow"))
    assert rep.left_counts == tuple(N.dim_count(d) for d in range(3))


def test_powers_comparison_interval_against_arrow():
    rep = check_powers_iso(standard_simplex(1), builtin("arrow"), dim=2)
    assert rep.ok


def test_powers_comparison_free_iso_nerve_against_arrow():
    rep = check_powers_iso(nerve_truncated(builtin("free_iso")), builtin("arrow"), dim=2)
    assert rep.ok


def test_rewrite_system_of_free_iso_nerve():
    from fincat.nerve import rewrite_system

    rs = rewrite_system(nerve_truncated(builtin("free_iso")))
    assert len(rs.generators) == 2
    # the two composable pairs of non-identities reduce to empty words
    assert sorted(r[1:] for r in rs.relations) == [
        (("(fro)", "(to)"), ()),
        (("(to)", "(fro)"), ()),
    ]
    rs.check()


def test_rewrite_system_endpoint_check_rejects_bad_relation():
    import pytest as _pytest

    from fincat.core import StructureError
    from fincat.nerve import RewriteSystem

    broken = RewriteSystem(
        generators=("e",),
        relations=(("v", ("e",), ()),),
        bound=4,
        endpoints={"e": ("v", "w")},
    )
    with _pytest.raises(StructureError):
        broken.check()


def test_sset_roundtrip_serialization():
    X = nerve_truncated(builtin("arrow"))
    again = validate_sset(sset_from_dict(X.to_dict()))
    assert again.simplices == X.simplices
    assert again.faces == X.faces
