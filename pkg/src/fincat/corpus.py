"""The deterministic test corpus: small categories, a bounded family of
functors between them, towers, and cospans.

Everything here is generated in a fixed order so that downstream reports
and acceptance runs are reproducible bit for bit.
"""
from __future__ import annotations

from functools import lru_cache

from .core import (
    FinCat,
    FinFunctor,
    Morphism,
    builtin,
    builtin_functor,
    enumerate_functors,
    identity_functor,
    validate_category,
    validate_functor,
)
from .fibrations import classify_fibration
from .funcat import product_category

BUILTIN_NAMES = (
    "terminal",
    "two_discrete",
    "discrete(3)",
    "arrow",
    "parallel_pair",
    "free_iso",
    "chaotic(2)",
    "chaotic(3)",
)


def chain_poset(n: int) -> FinCat:
    """The linear order 0 < 1 < … < n-1 as a category."""
    objs = [str(i) for i in range(n)]
    morphisms = [Morphism(f"id_{a}", a, a) for a in objs]
    morphisms += [
        Morphism(f"a{i}{j}", str(i), str(j)) for i in range(n) for j in range(i + 1, n)
    ]
    arrow_of = {(m.dom, m.cod): m.name for m in morphisms}
    comp = {
        (g.name, f.name): arrow_of[(f.dom, g.cod)]
        for g in morphisms
        for f in morphisms
        if g.dom == f.cod
    }
    return FinCat(objs, morphisms, {a: f"id_{a}" for a in objs}, comp, label=f"chain({n})")


def span_category() -> FinCat:
    objs = ["c", "l", "r"]
    morphisms = [Morphism(f"id_{a}", a, a) for a in objs]
    morphisms += [Morphism("sl", "c", "l"), Morphism("sr", "c", "r")]
    arrow_of = {(m.dom, m.cod): m.name for m in morphisms}
    comp = {
        (g.name, f.name): arrow_of[(f.dom, g.cod)]
        for g in morphisms
        for f in morphisms
        if g.dom == f.cod
    }
    return FinCat(objs, morphisms, {a: f"id_{a}" for a in objs}, comp, label="span")


def cospan_category() -> FinCat:
    objs = ["l", "c", "r"]
    morphisms = [Morphism(f"id_{a}", a, a) for a in objs]
    morphisms += [Morphism("tl", "l", "c"), Morphism("tr", "r", "c")]
    arrow_of = {(m.dom, m.cod): m.name for m in morphisms}
    comp = {
        (g.name, f.name): arrow_of[(f.dom, g.cod)]
        for g in morphisms
        for f in morphisms
        if g.dom == f.cod
    }
    return FinCat(objs, morphisms, {a: f"id_{a}" for a in objs}, comp, label="cospan")


def cyclic_group_category(n: int) -> FinCat:
    objs = ["*"]
    morphisms = [Morphism(f"g{k}", "*", "*") for k in range(n)]
    comp = {(f"g{i}", f"g{j}"): f"g{(i + j) % n}" for i in range(n) for j in range(n)}
    return FinCat(objs, morphisms, {"*": "g0"}, comp, label=f"cyclic({n})")


@lru_cache(maxsize=1)
def corpus_categories() -> tuple[FinCat, ...]:
    """All builtin categories plus six generated ones (≤ 6 objects and
    ≤ 24 morphisms each)."""
    cats = [builtin(name) for name in BUILTIN_NAMES]
    cats.append(validate_category(chain_poset(3)))
    cats.append(validate_category(span_category()))
    cats.append(validate_category(cospan_category()))
    cats.append(validate_category(cyclic_group_category(2)))
    square = product_category(builtin("arrow"), builtin("arrow")).relabel("square")
    cats.append(validate_category(square))
    iso_arrow = product_category(builtin("free_iso"), builtin("arrow")).relabel("iso_arrow")
    cats.append(validate_category(iso_arrow))
    for cat in cats:
        assert cat.n_objects <= 6 and cat.n_morphisms <= 24
    return tuple(cats)


def corpus_category(label: str) -> FinCat:
    for cat in corpus_categories():
        if cat.label == label:
            return cat
    raise KeyError(label)


def to_terminal_functor(cat: FinCat) -> FinFunctor:
    one = builtin("terminal")
    return FinFunctor(
        cat,
        one,
        {a: "*" for a in cat.objects},
        {m.name: "id_*" for m in cat.morphisms},
        label=f"{cat.label}->1",
    )


def chaotic_collapse() -> FinFunctor:
    """chaotic(3) → chaotic(2) sending object 2 to 0."""
    c3, c2 = builtin("chaotic(3)"), builtin("chaotic(2)")
    omap = {"0": "0", "1": "1", "2": "0"}
    mmap = {m.name: f"u{omap[m.dom]}_{omap[m.cod]}" for m in c3.morphisms}
    return validate_functor(FinFunctor(c3, c2, omap, mmap, label="collapse32"))


def iso_inclusion_into_chaotic() -> FinFunctor:
    iso, c2 = builtin("free_iso"), builtin("chaotic(2)")
    return validate_functor(
        FinFunctor(
            iso,
            c2,
            {"0": "0", "1": "1"},
            {"id_0": "u0_0", "id_1": "u1_1", "to": "u0_1", "fro": "u1_0"},
            label="iso_into_chaotic",
        )
    )


def _sample_pair_functors(src: FinCat, dst: FinCat, per_pair: int = 2):
    """A deterministic spread of functors src → dst: first, middle, last of
    a bounded enumeration."""
    found = list(enumerate_functors(src, dst, limit=96))
    if not found:
        return []
    picks = sorted({0, len(found) // 2, len(found) - 1})
    sample = [found[i] for i in picks][:per_pair + 1]
    for k, F in enumerate(sample):
        F.label = f"{src.label}->{dst.label}#{k}"
    return sample


@lru_cache(maxsize=1)
def corpus_functors() -> tuple[FinFunctor, ...]:
    """Identities, named structural maps, and a deterministic sample of
    functors between every pair of corpus categories."""
    cats = corpus_categories()
    out: list[FinFunctor] = []
    for cat in cats:
        out.append(identity_functor(cat))
    for name in (
        "point_to_iso",
        "discrete_to_arrow",
        "collapse_parallel",
        "point_to_arrow_0",
        "point_to_arrow_1",
    ):
        out.append(builtin_functor(name))
    out.append(chaotic_collapse())
    out.append(iso_inclusion_into_chaotic())
    for cat in cats:
        if cat.label != "terminal":
            out.append(to_terminal_functor(cat))
    for src in cats:
        for dst in cats:
            if src.label == dst.label:
                continue
            out.extend(_sample_pair_functors(src, dst))
    # dedupe while preserving order
    seen, unique = set(), []
    for F in out:
        if F.key not in seen:
            seen.add(F.key)
            unique.append(F)
    return tuple(unique)


@lru_cache(maxsize=1)
def corpus_normal_isofibrations() -> tuple[FinFunctor, ...]:
    return tuple(F for F in corpus_functors() if classify_fibration(F).normal)


@lru_cache(maxsize=1)
def corpus_non_isofibrations() -> tuple[FinFunctor, ...]:
    return tuple(F for F in corpus_functors() if not classify_fibration(F).normal)


@lru_cache(maxsize=1)
def corpus_injective_equivalences() -> tuple[FinFunctor, ...]:
    from .equivalence import EquivalenceWitness, classify_equivalence

    out = []
    for F in corpus_functors():
        w = classify_equivalence(F)
        if isinstance(w, EquivalenceWitness) and w.has_retraction:
            out.append(F)
    return tuple(out)


@lru_cache(maxsize=1)
def corpus_towers() -> tuple[tuple[FinCat, tuple[FinFunctor, ...]], ...]:
    """Towers of normal isofibrations, lengths 0 through 4."""
    one = builtin("terminal")
    c2, c3 = builtin("chaotic(2)"), builtin("chaotic(3)")
    two = builtin("arrow")
    square = corpus_category("square")
    from .funcat import product_projections

    proj1, _ = product_projections(square, two, two)
    iso = builtin("free_iso")
    towers = (
        (c2, ()),
        (one, (to_terminal_functor(c2),)),
        (iso, (identity_functor(iso), identity_functor(iso))),
        (one, (to_terminal_functor(c2), chaotic_collapse())),
        (one, (to_terminal_functor(two), proj1, identity_functor(square))),
        (
            one,
            (
                to_terminal_functor(c2),
                chaotic_collapse(),
                identity_functor(c3),
                identity_functor(c3),
            ),
        ),
    )
    for base, maps in towers:
        for f in maps:
            assert classify_fibration(f).normal, f"tower leg {f.label} must be normal"
    return towers


@lru_cache(maxsize=1)
def corpus_cospans_normal_left(max_count: int = 48) -> tuple[tuple[FinFunctor, FinFunctor], ...]:
    """Cospans (f, g) with f a normal isofibration and cod f = cod g."""
    normals = corpus_normal_isofibrations()
    everything = corpus_functors()
    out = []
    for f in normals:
        for g in everything:
            if g.target == f.target:
                out.append((f, g))
                if len(out) >= max_count:
                    return tuple(out)
    return tuple(out)
