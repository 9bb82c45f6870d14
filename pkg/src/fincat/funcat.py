"""Functor categories (powers), binary products, and the induced maps
between them.

``functor_category(C, D)`` enumerates every functor C → D and every natural
transformation between them, producing an ordinary :class:`FinCat` whose
objects are named by their image tuples.  Enumeration is guarded by an
explicit budget: the number of raw candidates is estimated up front and
``EnumerationBudgetExceeded`` reports both the bound and the requirement,
so blowups are loud rather than slow.
"""
from __future__ import annotations

from functools import cached_property

from .core import (
    EnumerationBudgetExceeded,
    FinCat,
    FinFunctor,
    Morphism,
    NatTrans,
    StructureError,
    enumerate_functors,
    enumerate_transformations,
)

DEFAULT_BUDGET = 20_000


class FunctorCat(FinCat):
    """A functor category together with the indexing of its objects by
    actual functors and its morphisms by actual transformations."""

    def __init__(self, *args, source_category=None, target_category=None,
                 functors=None, transformations=None, **kwargs):
        super().__init__(*args, **kwargs)
        self.source_category: FinCat = source_category
        self.target_category: FinCat = target_category
        self.functors: dict[str, FinFunctor] = functors or {}
        self.transformations: dict[str, NatTrans] = transformations or {}

    @cached_property
    def _functor_names(self) -> dict[str, str]:
        return {F.key: name for name, F in self.functors.items()}

    @cached_property
    def _trans_names(self) -> dict[tuple, str]:
        out = {}
        for name, t in self.transformations.items():
            key = (t.source.key, t.target.key, tuple(sorted(t.components.items())))
            out[key] = name
        return out

    def functor_named(self, name: str) -> FinFunctor:
        return self.functors[name]

    def transformation_named(self, name: str) -> NatTrans:
        return self.transformations[name]

    def name_of_functor(self, F: FinFunctor) -> str:
        return self._functor_names[F.key]

    def name_of_transformation(self, t: NatTrans) -> str:
        key = (t.source.key, t.target.key, tuple(sorted(t.components.items())))
        return self._trans_names[key]


def _object_name(C: FinCat, F: FinFunctor) -> str:
    objs = ",".join(F.ob(a) for a in C.objects)
    nonid = [m.name for m in C.morphisms if not C.is_identity(m.name)]
    if nonid:
        return f"({objs};{','.join(F.mor(m) for m in nonid)})"
    return f"({objs})"


def _estimate_functor_candidates(C: FinCat, D: FinCat, budget: int) -> int:
    omap_space = D.n_objects ** C.n_objects if C.n_objects else 1
    if omap_space > budget:
        return omap_space
    nonid = [m for m in C.morphisms if not C.is_identity(m.name)]
    total = 0

    def rec(idx, omap):
        nonlocal total
        if total > budget:
            return
        if idx == C.n_objects:
            prod = 1
            for m in nonid:
                prod *= len(D.hom(omap[m.dom], omap[m.cod]))
                if prod == 0:
                    break
            total += max(prod, 1)
            return
        a = C.objects[idx]
        for x in D.objects:
            omap[a] = x
            rec(idx + 1, omap)
            del omap[a]

    rec(0, {})
    return total


_CACHE: dict[tuple[str, str], FunctorCat] = {}


def functor_category(C: FinCat, D: FinCat, budget: int = DEFAULT_BUDGET) -> FunctorCat:
    """The category of functors C → D and natural transformations, with
    vertical composition.  Results are cached by content."""
    cache_key = (C.digest, D.digest)
    cached = _CACHE.get(cache_key)
    if cached is not None:
        required = cached._budget_required
        if required > budget:
            raise EnumerationBudgetExceeded(budget, required, f"power {D.label}^{C.label}")
        return cached

    required = _estimate_functor_candidates(C, D, budget)
    if required > budget:
        raise EnumerationBudgetExceeded(budget, required, f"power {D.label}^{C.label}")

    functor_list = list(enumerate_functors(C, D))
    names = [_object_name(C, F) for F in functor_list]
    functors = dict(zip(names, functor_list))

    # transformation candidate estimate before enumerating them
    for F in functor_list:
        for G in functor_list:
            prod = 1
            for a in C.objects:
                prod *= len(D.hom(F.ob(a), G.ob(a)))
                if prod == 0:
                    break
            required += max(prod, 1)
            if required > budget:
                raise EnumerationBudgetExceeded(
                    budget, required, f"power {D.label}^{C.label}"
                )

    morphisms: list[Morphism] = []
    transformations: dict[str, NatTrans] = {}
    trans_lookup: dict[tuple, str] = {}
    identity: dict[str, str] = {}
    for i, (fname, F) in enumerate(zip(names, functor_list)):
        for j, (gname, G) in enumerate(zip(names, functor_list)):
            for t in enumerate_transformations(F, G):
                comps = tuple(t.component(a) for a in C.objects)
                tname = f"[{','.join(comps)}]{i}>{j}"
                morphisms.append(Morphism(tname, fname, gname))
                transformations[tname] = t
                trans_lookup[(fname, gname, comps)] = tname
                if i == j and all(
                    D.is_identity(t.component(a)) for a in C.objects
                ):
                    identity.setdefault(fname, tname)

    comp: dict[tuple[str, str], str] = {}
    by_name = {m.name: m for m in morphisms}
    for g in morphisms:
        tg = transformations[g.name]
        for f in morphisms:
            if g.dom != f.cod:
                continue
            tf = transformations[f.name]
            composite = tf.then(tg)
            comps = tuple(composite.component(a) for a in C.objects)
            comp[(g.name, f.name)] = trans_lookup[(f.dom, g.cod, comps)]

    fc = FunctorCat(
        names,
        morphisms,
        identity,
        comp,
        label=f"[{C.label},{D.label}]",
        source_category=C,
        target_category=D,
        functors=functors,
        transformations=transformations,
    )
    fc._budget_required = required
    _CACHE[cache_key] = fc
    return fc


def evaluation_functor(fc: FunctorCat, at: str) -> FinFunctor:
    """Evaluate a functor category at an object of its source."""
    D = fc.target_category
    return FinFunctor(
        fc,
        D,
        {name: F.ob(at) for name, F in fc.functors.items()},
        {name: t.component(at) for name, t in fc.transformations.items()},
        label=f"ev_{at}",
    )


def precompose_functor(j: FinFunctor, D: FinCat, budget: int = DEFAULT_BUDGET) -> FinFunctor:
    """Restriction D^Y → D^X induced by j : X → Y."""
    power_y = functor_category(j.target, D, budget)
    power_x = functor_category(j.source, D, budget)
    omap = {
        name: power_x.name_of_functor(j.then(F)) for name, F in power_y.functors.items()
    }
    mmap = {
        name: power_x.name_of_transformation(t.whisker_pre(j))
        for name, t in power_y.transformations.items()
    }
    return FinFunctor(power_y, power_x, omap, mmap, label=f"{D.label}^{j.label}")


def postcompose_functor(p: FinFunctor, X: FinCat, budget: int = DEFAULT_BUDGET) -> FinFunctor:
    """The map A^X → B^X induced by p : A → B."""
    power_a = functor_category(X, p.source, budget)
    power_b = functor_category(X, p.target, budget)
    omap = {
        name: power_b.name_of_functor(F.then(p)) for name, F in power_a.functors.items()
    }
    mmap = {
        name: power_b.name_of_transformation(t.whisker_post(p))
        for name, t in power_a.transformations.items()
    }
    return FinFunctor(power_a, power_b, omap, mmap, label=f"{p.label}^{X.label}")


def functor_into_power(fs: list[FinFunctor], power: FunctorCat) -> FinFunctor:
    """Pair functors X → D into the power D^(discrete n) they define."""
    if not fs:
        raise StructureError("need at least one functor to pair")
    X = fs[0].source
    C = power.source_category
    if not C.is_discrete() or C.n_objects != len(fs):
        raise StructureError("pairing target must be a power by a discrete category")
    D = power.target_category

    def ob_name(x):
        F = FinFunctor(
            C,
            D,
            {c: fs[k].ob(x) for k, c in enumerate(C.objects)},
            {C.id_of(c): D.id_of(fs[k].ob(x)) for k, c in enumerate(C.objects)},
        )
        return power.name_of_functor(F)

    omap = {x: ob_name(x) for x in X.objects}
    mmap = {}
    for m in X.morphisms:
        src = power.functor_named(omap[m.dom])
        dst = power.functor_named(omap[m.cod])
        t = NatTrans(src, dst, {c: fs[k].mor(m.name) for k, c in enumerate(C.objects)})
        mmap[m.name] = power.name_of_transformation(t)
    return FinFunctor(X, power, omap, mmap, label="pairing")


def cells_into_power(cells: list[NatTrans], power: FunctorCat) -> FinFunctor:
    """Pair parallel 2-cells h ⇒ k into the power by the generic parallel
    pair, sending x to the object (h x ⇉ k x)."""
    if len(cells) != 2:
        raise StructureError("expected exactly two parallel 2-cells")
    t0, t1 = cells
    if t0.source != t1.source or t0.target != t1.target:
        raise StructureError("2-cells must be parallel")
    h, k = t0.source, t0.target
    X = h.source
    C = power.source_category  # the generic parallel pair 0 ⇉ 1
    D = power.target_category

    def ob_name(x):
        F = FinFunctor(
            C,
            D,
            {"0": h.ob(x), "1": k.ob(x)},
            {
                "id_0": D.id_of(h.ob(x)),
                "id_1": D.id_of(k.ob(x)),
                "a0": t0.component(x),
                "a1": t1.component(x),
            },
        )
        return power.name_of_functor(F)

    omap = {x: ob_name(x) for x in X.objects}
    mmap = {}
    for m in X.morphisms:
        src = power.functor_named(omap[m.dom])
        dst = power.functor_named(omap[m.cod])
        t = NatTrans(src, dst, {"0": h.mor(m.name), "1": k.mor(m.name)})
        mmap[m.name] = power.name_of_transformation(t)
    return FinFunctor(X, power, omap, mmap, label="cell-pairing")


# ---------------------------------------------------------------------------
# Binary products


def product_category(A: FinCat, B: FinCat) -> FinCat:
    """The product category with objects (a,b) and morphisms (m,n)."""
    objects = [f"({a},{b})" for a in A.objects for b in B.objects]
    morphisms = [
        Morphism(f"({m.name},{n.name})", f"({m.dom},{n.dom})", f"({m.cod},{n.cod})")
        for m in A.morphisms
        for n in B.morphisms
    ]
    identity = {
        f"({a},{b})": f"({A.id_of(a)},{B.id_of(b)})" for a in A.objects for b in B.objects
    }
    comp = {}
    for g1, f1 in A.composable_pairs():
        c1 = A.compose(g1, f1)
        for g2, f2 in B.composable_pairs():
            comp[(f"({g1},{g2})", f"({f1},{f2})")] = f"({c1},{B.compose(g2, f2)})"
    return FinCat(objects, morphisms, identity, comp, label=f"{A.label}×{B.label}")


def product_projections(prod: FinCat, A: FinCat, B: FinCat) -> tuple[FinFunctor, FinFunctor]:
    def split(name):
        # names were assembled as "(left,right)" with balanced parentheses
        depth = 0
        for i, ch in enumerate(name):
            if ch in "([":
                depth += 1
            elif ch in ")]":
                depth -= 1
            elif ch == "," and depth == 1:
                return name[1:i], name[i + 1 : -1]
        raise StructureError(f"not a pair name: {name}")

    o1 = {o: split(o)[0] for o in prod.objects}
    o2 = {o: split(o)[1] for o in prod.objects}
    m1 = {m.name: split(m.name)[0] for m in prod.morphisms}
    m2 = {m.name: split(m.name)[1] for m in prod.morphisms}
    return (
        FinFunctor(prod, A, o1, m1, label="proj1"),
        FinFunctor(prod, B, o2, m2, label="proj2"),
    )


def product_functor(F: FinFunctor, G: FinFunctor, prod_src: FinCat, prod_dst: FinCat) -> FinFunctor:
    """F×G : A×B → C×D acting componentwise on pair names."""
    p1, p2 = product_projections(prod_src, F.source, G.source)
    return pair_functor(p1.then(F), p2.then(G), prod_dst)


def pair_functor(F: FinFunctor, G: FinFunctor, prod: FinCat) -> FinFunctor:
    """⟨F, G⟩ : X → A×B for parallel-source F : X → A and G : X → B."""
    if F.source != G.source:
        raise StructureError("pairing needs a common source")
    X = F.source
    return FinFunctor(
        X,
        prod,
        {x: f"({F.ob(x)},{G.ob(x)})" for x in X.objects},
        {m.name: f"({F.mor(m.name)},{G.mor(m.name)})" for m in X.morphisms},
        label=f"⟨{F.label},{G.label}⟩",
    )
