"""Cross-checks between independent characterizations.

The isofibration classifier works by objectwise lift scans.  A second,
independent route goes through the pseudolimit of the arrow: a functor is a
representable isofibration exactly when the canonical invertible cell of
its pseudolimit lifts against it, and the lifted cell can be normalized on
the diagonal exactly when the map is normal.  Both routes must agree, as
must the diagonal-filler route through the canonical test square.
"""
import pytest

from fincat.core import builtin, builtin_functor, identity_functor
from fincat.corpus import corpus_functors
from fincat.fibrations import classify_fibration
from fincat.limits import pseudolimit_of_arrow
from fincat.wfs import canonical_test_square, has_filler


def lifted_cell_exists(f) -> bool:
    """Independent predicate: for every point of the pseudolimit there is an
    isomorphism onto the source projection lying over the canonical cell."""
    pl = pseudolimit_of_arrow(f)
    A = f.source
    u, lam = pl.to_source, pl.cell
    for z in pl.apex.objects:
        target = u.ob(z)
        wanted = lam.component(z)
        candidates = [
            m
            for m in A.morphisms_into(target)
            if A.is_iso(m) and f.mor(m) == wanted
        ]
        if not candidates:
            return False
    return True


SAMPLE = [
    f
    for f in corpus_functors()
    if f.source.n_morphisms <= 9 and f.target.n_morphisms <= 9
][:60]


@pytest.mark.parametrize("idx", range(0, len(SAMPLE), 3))
def test_lifted_cell_agrees_with_classifier(idx):
    f = SAMPLE[idx]
    assert lifted_cell_exists(f) == classify_fibration(f, grothendieck=False).representable


def test_lifted_cell_on_known_cases():
    assert lifted_cell_exists(identity_functor(builtin("free_iso")))
    assert not lifted_cell_exists(builtin_functor("point_to_iso"))


def test_canonical_square_biconditional_over_corpus_sample():
    # filler existence for the canonical square characterizes the normal
    # flag, in both directions
    tested = 0
    for f in corpus_functors():
        if f.source.n_morphisms > 6 or f.target.n_morphisms > 6:
            continue
        flag = classify_fibration(f, grothendieck=False).normal
        assert has_filler(canonical_test_square(f)) == flag, f.label
        tested += 1
    assert tested >= 40
