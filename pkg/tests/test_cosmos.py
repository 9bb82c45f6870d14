import pytest

from fincat.core import StructureError, builtin
from fincat.cosmos import (
    CosmosFragment,
    check_fragment,
    nip_square_filler,
    _compose,
    _functions,
    _is_injective,
    _is_surjective,
    _split_epis,
    _split_monos,
)


def test_finset_all_fill_at_bound_three():
    res = nip_square_filler("finset", 3)
    assert res.all_fill
    assert res.counterexample is None
    assert res.squares_checked > 1000


def test_finset_all_fill_vacuous_at_bound_zero():
    res = nip_square_filler("finset", 0)
    assert res.all_fill


def test_finset_arrow_counterexample_at_bound_three():
    res = nip_square_filler("finset_arrow", 3)
    assert not res.all_fill
    ce = res.counterexample
    assert ce is not None
    # the left edge is the inclusion of a point into a two-point fiber
    assert ce["A"] == {"source_size": 1, "target_size": 1, "map": [0]}
    assert ce["B"]["source_size"] == 2 and ce["B"]["target_size"] == 1
    # replay: the recorded square really commutes and really has no filler
    A, B = ce["A"], ce["B"]
    C, D = ce["C"], ce["D"]

    def as_obj(o):
        return (o["source_size"], o["target_size"], tuple(o["map"]))

    def as_sq(f):
        return (tuple(f["component0"]), tuple(f["component1"]))

    from fincat.cosmos import _ArrowSpace, _arrow_compose

    space = _ArrowSpace(3)
    i, p = as_sq(ce["i"]), as_sq(ce["p"])
    top, bottom = as_sq(ce["top"]), as_sq(ce["bottom"])
    assert _arrow_compose(p, top) == _arrow_compose(bottom, i)
    assert i in space.split_monos(as_obj(A), as_obj(B))
    assert p in space.split_epis(as_obj(C), as_obj(D))
    fillers = [
        h
        for h in space.homs(as_obj(B), as_obj(C))
        if _arrow_compose(h, i) == top and _arrow_compose(p, h) == bottom
    ]
    assert fillers == []


def test_finset_arrow_determinism():
    a = nip_square_filler("finset_arrow", 3)
    b = nip_square_filler("finset_arrow", 3)
    assert a.to_dict() == b.to_dict()


def test_nip_rejects_oversized_bound():
    with pytest.raises(StructureError):
        nip_square_filler("finset", 9)
    with pytest.raises(StructureError):
        nip_square_filler("mystery", 2)


def test_split_enumeration_against_direct_counts():
    # split monos 2 → 3: all injections; independent count 3!/(3-2)! = 6
    assert len(_split_monos(2, 3)) == 6
    # the empty map splits only onto the empty set
    assert _split_monos(0, 0) == [()]
    assert _split_monos(0, 2) == []
    # split epis 3 → 2: surjections; independent count 2^3 - 2 = 6
    assert len(_split_epis(3, 2)) == 6


def test_fragment_normal_class_passes_all_clauses():
    frag = CosmosFragment(
        objects=(builtin("terminal"), builtin("arrow"), builtin("free_iso")),
        chosen="normal",
        label="core-fragment",
    )
    rep = check_fragment(frag)
    assert rep.passed
    assert set(rep.clauses) == {"hom_isofibration", "limits_exist", "stability"}
    assert "witnessed on fragment" in rep.clauses["limits_exist"].note


def test_fragment_discrete_class_passes_leibniz():
    frag = CosmosFragment(
        objects=(builtin("terminal"), builtin("arrow")),
        chosen="discrete",
        label="discrete-fragment",
    )
    rep = check_fragment(frag)
    leibniz_entries = [
        e for e in rep.clauses["stability"].entries if "Leibniz" in e.description
    ]
    assert leibniz_entries
    assert all(e.passed for e in leibniz_entries)


def test_fragment_wrong_class_fails_with_witness():
    frag = CosmosFragment(
        objects=(builtin("terminal"), builtin("arrow"), builtin("free_iso")),
        chosen="equivalences",
        label="wrong-class",
    )
    rep = check_fragment(frag)
    assert not rep.passed
    stab = rep.clauses["stability"]
    bad = [e for e in stab.entries if not e.passed and "pullback" in e.description]
    assert bad, "pullback-stability must fail for the class of equivalences"


def test_empty_fragment_vacuously_passes():
    rep = check_fragment(CosmosFragment(objects=(), chosen="normal", label="empty"))
    assert rep.passed
