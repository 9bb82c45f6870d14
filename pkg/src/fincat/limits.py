"""Limit constructions on finite categories.

Strict pullbacks act as the oracle limit; isocommas, pseudolimits of
arrows, inserters, equifiers, idempotent splittings, cleavage-based
pullbacks and tower limits are all built concretely with deterministic
tuple naming, and each carries a certificate: its one-dimensional
universal property is replayed against a declared finite set of cone
vertices.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import (
    CleavageNotNormal,
    FinCat,
    FinFunctor,
    Morphism,
    NatTrans,
    NotIdempotent,
    StructureError,
    builtin,
    builtin_functor,
    enumerate_functors,
    enumerate_transformations,
    find_isomorphism,
    identity_functor,
    identity_nat,
)
from .equivalence import EquivalenceWitness, validate_witness
from .fibrations import Cleavage, build_normal_cleavage, classify_fibration, lift_iso_2cell
from .funcat import (
    DEFAULT_BUDGET,
    FunctorCat,
    cells_into_power,
    evaluation_functor,
    functor_category,
    functor_into_power,
    postcompose_functor,
    precompose_functor,
)


def default_vertices() -> tuple[FinCat, ...]:
    return (builtin("terminal"), builtin("arrow"))


class TupleCat(FinCat):
    """A category whose objects/morphisms are named tuples of parts, with
    reverse lookup from parts to names."""

    def __init__(self, *args, obj_parts=None, mor_parts=None, **kwargs):
        super().__init__(*args, **kwargs)
        self.obj_parts: dict[str, tuple] = obj_parts or {}
        self.mor_parts: dict[str, tuple] = mor_parts or {}
        self._obj_lookup = {v: k for k, v in self.obj_parts.items()}
        self._mor_lookup = {}
        for name, parts in self.mor_parts.items():
            m = self.mor(name)
            self._mor_lookup[(m.dom, m.cod, parts)] = name

    def obj_named(self, parts: tuple) -> str:
        return self._obj_lookup[tuple(parts)]

    def mor_named(self, dom: str, cod: str, parts: tuple) -> str:
        return self._mor_lookup[(dom, cod, tuple(parts))]


@dataclass
class Certificate:
    """Record of a 1-dimensional universal property replayed over a finite
    set of cone vertices."""

    kind: str
    vertices: tuple[str, ...]
    cones_checked: int
    ok: bool
    failures: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "vertices": list(self.vertices),
            "cones_checked": self.cones_checked,
            "ok": self.ok,
            "failures": list(self.failures),
        }


@dataclass
class LimitWitness:
    """A constructed limit: apex, projections, structure 2-cells, and the
    certificate for its tested universal property."""

    apex: FinCat
    projections: tuple[FinFunctor, ...]
    structure_cells: tuple[NatTrans, ...]
    certificate: Certificate
    label: str = "limit"


# ---------------------------------------------------------------------------
# Strict pullback


def pullback_strict(F: FinFunctor, G: FinFunctor, vertices=None) -> LimitWitness:
    """The strict pullback of the cospan (F : A→C, G : B→C): the subcategory
    of A×B where both images agree."""
    if F.target != G.target:
        raise StructureError("pullback needs a cospan")
    A, B = F.source, G.source
    obj_parts, objects = {}, []
    for a in A.objects:
        for b in B.objects:
            if F.ob(a) == G.ob(b):
                name = f"({a}|{b})"
                objects.append(name)
                obj_parts[name] = (a, b)
    morphisms, mor_parts = [], {}
    for m in A.morphisms:
        for n in B.morphisms:
            if F.mor(m.name) == G.mor(n.name):
                name = f"({m.name}|{n.name})"
                morphisms.append(Morphism(name, f"({m.dom}|{n.dom})", f"({m.cod}|{n.cod})"))
                mor_parts[name] = (m.name, n.name)
    identity = {
        name: f"({A.id_of(a)}|{B.id_of(b)})" for name, (a, b) in obj_parts.items()
    }
    comp = {}
    for m1 in morphisms:
        g1, g2 = mor_parts[m1.name]
        for m2 in morphisms:
            if m1.dom != m2.cod:
                continue
            f1, f2 = mor_parts[m2.name]
            comp[(m1.name, m2.name)] = f"({A.compose(g1, f1)}|{B.compose(g2, f2)})"
    apex = TupleCat(
        objects, morphisms, identity, comp,
        label=f"pb({F.label},{G.label})",
        obj_parts=obj_parts, mor_parts=mor_parts,
    )
    p = FinFunctor(
        apex, A,
        {o: obj_parts[o][0] for o in objects},
        {m.name: mor_parts[m.name][0] for m in morphisms},
        label="pb_proj1",
    )
    q = FinFunctor(
        apex, B,
        {o: obj_parts[o][1] for o in objects},
        {m.name: mor_parts[m.name][1] for m in morphisms},
        label="pb_proj2",
    )
    cert = _certify_pullback(apex, p, q, F, G, vertices or default_vertices())
    return LimitWitness(apex, (p, q), (), cert, label=apex.label)


def _factorization_count(apex, vertex, omap_choices, mmap_choices) -> int:
    return len(list(enumerate_functors(vertex, apex, omap_choices, mmap_choices, limit=2)))


def _certify_pullback(apex, p, q, F, G, vertices) -> Certificate:
    cones, failures = 0, []
    for X in vertices:
        rights = list(enumerate_functors(X, G.source))
        for P in enumerate_functors(X, F.source):
            PF = P.then(F)
            for Q in rights:
                if PF != Q.then(G):
                    continue
                cones += 1
                omap_choices = {
                    x: [o for o in apex.objects if p.ob(o) == P.ob(x) and q.ob(o) == Q.ob(x)]
                    for x in X.objects
                }
                mmap_choices = {
                    m.name: [
                        n.name
                        for n in apex.morphisms
                        if p.mor(n.name) == P.mor(m.name) and q.mor(n.name) == Q.mor(m.name)
                    ]
                    for m in X.morphisms
                }
                hits = _factorization_count(apex, X, omap_choices, mmap_choices)
                if hits != 1:
                    failures.append(f"vertex {X.label}: cone has {hits} factorizations")
    return Certificate(
        kind="pullback",
        vertices=tuple(x.label for x in vertices),
        cones_checked=cones,
        ok=not failures,
        failures=tuple(failures[:5]),
    )


# ---------------------------------------------------------------------------
# Isocomma


def isocomma(F: FinFunctor, G: FinFunctor, vertices=None) -> LimitWitness:
    """The isocomma of (F : A→C, G : B→C): objects (a, b, γ : G b ≅ F a),
    with the invertible structure cell φ : G∘q ⇒ F∘p."""
    if F.target != G.target:
        raise StructureError("isocomma needs a cospan")
    A, B, C = F.source, G.source, F.target
    objects, obj_parts = [], {}
    for a in A.objects:
        for b in B.objects:
            for gamma in C.hom(G.ob(b), F.ob(a)):
                if not C.is_iso(gamma):
                    continue
                name = f"({a}|{b}|{gamma})"
                objects.append(name)
                obj_parts[name] = (a, b, gamma)
    idx = {name: i for i, name in enumerate(objects)}
    morphisms, mor_parts = [], {}
    for dname in objects:
        a, b, gamma = obj_parts[dname]
        for cname in objects:
            a2, b2, gamma2 = obj_parts[cname]
            for m in A.hom(a, a2):
                fm = F.mor(m)
                for n in B.hom(b, b2):
                    if C.compose(gamma2, G.mor(n)) != C.compose(fm, gamma):
                        continue
                    name = f"({m}|{n})@{idx[dname]}>{idx[cname]}"
                    morphisms.append(Morphism(name, dname, cname))
                    mor_parts[name] = (m, n)
    identity = {
        name: f"({A.id_of(parts[0])}|{B.id_of(parts[1])})@{idx[name]}>{idx[name]}"
        for name, parts in obj_parts.items()
    }
    lookup = {(m.dom, m.cod, mor_parts[m.name]): m.name for m in morphisms}
    comp = {}
    for m1 in morphisms:
        g1, g2 = mor_parts[m1.name]
        for m2 in morphisms:
            if m2.cod != m1.dom:
                continue
            f1, f2 = mor_parts[m2.name]
            comp[(m1.name, m2.name)] = lookup[
                (m2.dom, m1.cod, (A.compose(g1, f1), B.compose(g2, f2)))
            ]
    apex = TupleCat(
        objects, morphisms, identity, comp,
        label=f"isocomma({F.label},{G.label})",
        obj_parts=obj_parts, mor_parts=mor_parts,
    )
    p = FinFunctor(
        apex, A,
        {o: obj_parts[o][0] for o in objects},
        {m.name: mor_parts[m.name][0] for m in morphisms},
        label="ic_proj1",
    )
    q = FinFunctor(
        apex, B,
        {o: obj_parts[o][1] for o in objects},
        {m.name: mor_parts[m.name][1] for m in morphisms},
        label="ic_proj2",
    )
    phi = NatTrans(
        q.then(G), p.then(F), {o: obj_parts[o][2] for o in objects}, label="phi"
    )
    cert = _certify_isocomma(apex, p, q, phi, F, G, vertices or default_vertices())
    return LimitWitness(apex, (p, q), (phi,), cert, label=apex.label)


def _certify_isocomma(apex, p, q, phi, F, G, vertices) -> Certificate:
    cones, failures = 0, []
    for X in vertices:
        rights = list(enumerate_functors(X, G.source))
        for P in enumerate_functors(X, F.source):
            for Q in rights:
                for tau in enumerate_transformations(
                    Q.then(G), P.then(F), invertible_only=True
                ):
                    cones += 1
                    omap_choices = {
                        x: [
                            o
                            for o in apex.objects
                            if p.ob(o) == P.ob(x)
                            and q.ob(o) == Q.ob(x)
                            and phi.component(o) == tau.component(x)
                        ]
                        for x in X.objects
                    }
                    mmap_choices = {
                        m.name: [
                            n.name
                            for n in apex.morphisms
                            if p.mor(n.name) == P.mor(m.name)
                            and q.mor(n.name) == Q.mor(m.name)
                        ]
                        for m in X.morphisms
                    }
                    hits = _factorization_count(apex, X, omap_choices, mmap_choices)
                    if hits != 1:
                        failures.append(
                            f"vertex {X.label}: isocone has {hits} factorizations"
                        )
    return Certificate(
        kind="isocomma",
        vertices=tuple(x.label for x in vertices),
        cones_checked=cones,
        ok=not failures,
        failures=tuple(failures[:5]),
    )


# ---------------------------------------------------------------------------
# Pseudolimit of an arrow


@dataclass
class PseudolimitOfArrow:
    """The pseudolimit of f : A → B, realized as the strict pullback of
    cod : B^I → B along f, where I is the free isomorphism.

    ``to_source`` (a retract equivalence) and ``to_target`` are the two
    projections, ``cell`` the invertible 2-cell to_target ≅ f∘to_source,
    ``diagonal`` the injective-equivalence section of ``to_source``, and
    ``power_comparison`` the induced map out of the source's iso-power.
    """

    arrow: FinFunctor
    apex: FinCat
    to_source: FinFunctor
    to_target: FinFunctor
    cell: NatTrans
    diagonal: FinFunctor
    diagonal_cell: NatTrans
    power_comparison: FinFunctor
    power_projection: FinFunctor
    source_power: FunctorCat
    target_power: FunctorCat
    witness: LimitWitness


def constant_iso_object(power: FunctorCat, b: str) -> str:
    """Name, in a power by the free isomorphism, of the constant functor at
    b (the generator maps to the identity)."""
    I = power.source_category
    B = power.target_category
    F = FinFunctor(
        I,
        B,
        {"0": b, "1": b},
        {"id_0": B.id_of(b), "id_1": B.id_of(b), "to": B.id_of(b), "fro": B.id_of(b)},
    )
    return power.name_of_functor(F)


def pseudolimit_of_arrow(
    f: FinFunctor, budget: int = DEFAULT_BUDGET, vertices=None
) -> PseudolimitOfArrow:
    A, B = f.source, f.target
    free_iso = builtin("free_iso")
    power_b = functor_category(free_iso, B, budget)
    power_a = functor_category(free_iso, A, budget)
    cod_b = evaluation_functor(power_b, "1")
    dom_b = evaluation_functor(power_b, "0")
    pb = pullback_strict(f, cod_b, vertices=vertices or default_vertices())
    L: TupleCat = pb.apex
    u, p = pb.projections
    v = p.then(dom_b)
    lam = NatTrans(
        v,
        u.then(f),
        {o: power_b.functor_named(L.obj_parts[o][1]).mor("to") for o in L.objects},
        label="lambda",
    )

    # diagonal: a ↦ (a, identity iso at f a)
    d_omap, d_mmap = {}, {}
    for a in A.objects:
        d_omap[a] = L.obj_named((a, constant_iso_object(power_b, f.ob(a))))
    for m in A.morphisms:
        fm = f.mor(m.name)
        src = power_b.functor_named(L.obj_parts[d_omap[m.dom]][1])
        dst = power_b.functor_named(L.obj_parts[d_omap[m.cod]][1])
        t = NatTrans(src, dst, {"0": fm, "1": fm})
        d_mmap[m.name] = L.mor_named(
            d_omap[m.dom], d_omap[m.cod], (m.name, power_b.name_of_transformation(t))
        )
    d = FinFunctor(A, L, d_omap, d_mmap, label="diagonal")

    # diagonal cell 1 ≅ d∘u with components (id_a, [iso, id])
    delta_parts = {}
    for o in L.objects:
        a, omega = L.obj_parts[o]
        target_obj = d_omap[a]
        src = power_b.functor_named(omega)
        dst = power_b.functor_named(L.obj_parts[target_obj][1])
        t = NatTrans(src, dst, {"0": src.mor("to"), "1": B.id_of(f.ob(a))})
        delta_parts[o] = L.mor_named(
            o, target_obj, (A.id_of(a), power_b.name_of_transformation(t))
        )
    delta = NatTrans(identity_functor(L), u.then(d), delta_parts, label="delta")

    # comparison out of the source iso-power: an iso of A lands on
    # (its codomain, its image iso)
    f_power = postcompose_functor(f, free_iso, budget)
    w_omap = {
        name: L.obj_named((F.ob("1"), f_power.ob(name)))
        for name, F in power_a.functors.items()
    }
    w_mmap = {}
    for name, t in power_a.transformations.items():
        mo = power_a.mor(name)
        w_mmap[name] = L.mor_named(
            w_omap[mo.dom], w_omap[mo.cod], (t.component("1"), f_power.mor(name))
        )
    w = FinFunctor(power_a, L, w_omap, w_mmap, label="w")

    # structural equations, exact
    assert d.then(u) == identity_functor(A)
    assert d.then(v) == f
    assert all(B.is_identity(c) for c in lam.whisker_pre(d).components.values())
    assert all(A.is_identity(c) for c in delta.whisker_post(u).components.values())
    assert delta.whisker_post(v).components == lam.components
    assert p.then(cod_b) == u.then(f)
    assert w.then(u) == evaluation_functor(power_a, "1")
    assert w.then(p) == f_power

    return PseudolimitOfArrow(
        arrow=f,
        apex=L,
        to_source=u,
        to_target=v,
        cell=lam,
        diagonal=d,
        diagonal_cell=delta,
        power_comparison=w,
        power_projection=p,
        source_power=power_a,
        target_power=power_b,
        witness=pb,
    )


def pseudolimit_retract_witness(pl: PseudolimitOfArrow) -> EquivalenceWitness:
    """Adjoint equivalence for the source projection: unit is the diagonal
    cell, counit an identity."""
    A = pl.arrow.source
    counit = NatTrans(
        pl.diagonal.then(pl.to_source),
        identity_functor(A),
        {a: A.id_of(a) for a in A.objects},
        label="counit",
    )
    return validate_witness(
        EquivalenceWitness(
            forward=pl.to_source,
            inverse=pl.diagonal,
            unit=pl.diagonal_cell,
            counit=counit,
            kind="retract",
            has_section=True,
            has_retraction=pl.to_source.is_isomorphism(),
        )
    )


def pseudolimit_injective_witness(pl: PseudolimitOfArrow) -> EquivalenceWitness:
    """Adjoint equivalence for the diagonal: identity unit, counit the
    inverse diagonal cell."""
    A = pl.arrow.source
    unit = NatTrans(
        identity_functor(A),
        pl.diagonal.then(pl.to_source),
        {a: A.id_of(a) for a in A.objects},
        label="unit",
    )
    counit = NatTrans(
        pl.to_source.then(pl.diagonal),
        identity_functor(pl.apex),
        pl.diagonal_cell.inverse().components,
        label="counit",
    )
    return validate_witness(
        EquivalenceWitness(
            forward=pl.diagonal,
            inverse=pl.to_source,
            unit=unit,
            counit=counit,
            kind="injective",
            has_section=pl.diagonal.is_isomorphism(),
            has_retraction=True,
        )
    )


# ---------------------------------------------------------------------------
# Inserter and equifier


def inserter(
    f: FinFunctor, g: FinFunctor, budget: int = DEFAULT_BUDGET, vertices=None
) -> LimitWitness:
    """Universal object inserting a 2-cell f∘P ⇒ g∘P, built as a pullback of
    the endpoint restriction out of the arrow power."""
    if f.source != g.source or f.target != g.target:
        raise StructureError("inserter needs a parallel pair")
    B = f.target
    j = builtin_functor("discrete_to_arrow")
    restriction = precompose_functor(j, B, budget)
    if not classify_fibration(restriction).discrete:
        raise StructureError("endpoint restriction failed the discrete isofibration check")
    power2 = functor_category(builtin("two_discrete"), B, budget)
    pairing = functor_into_power([f, g], power2)
    pb = pullback_strict(pairing, restriction, vertices=vertices or default_vertices())
    apex: TupleCat = pb.apex
    to_a = pb.projections[0]
    power_arrow = functor_category(builtin("arrow"), B, budget)
    cell = NatTrans(
        to_a.then(f),
        to_a.then(g),
        {o: power_arrow.functor_named(apex.obj_parts[o][1]).mor("a") for o in apex.objects},
        label="insertion",
    )
    return LimitWitness(
        apex, (to_a,), (cell,), pb.certificate, label=f"ins({f.label},{g.label})"
    )


def equifier(
    t1: NatTrans, t2: NatTrans, budget: int = DEFAULT_BUDGET, vertices=None
) -> LimitWitness:
    """Universal object over which two parallel 2-cells agree, built as a
    pullback of the fold restriction out of the arrow power."""
    if t1.source != t2.source or t1.target != t2.target:
        raise StructureError("equifier needs parallel 2-cells")
    B = t1.category
    fold = builtin_functor("collapse_parallel")
    restriction = precompose_functor(fold, B, budget)
    if not classify_fibration(restriction).discrete:
        raise StructureError("fold restriction failed the discrete isofibration check")
    power_pp = functor_category(builtin("parallel_pair"), B, budget)
    pairing = cells_into_power([t1, t2], power_pp)
    pb = pullback_strict(pairing, restriction, vertices=vertices or default_vertices())
    to_a = pb.projections[0]
    return LimitWitness(pb.apex, (to_a,), (), pb.certificate, label="equifier")


# ---------------------------------------------------------------------------
# Idempotent splitting


@dataclass
class IdempotentSplitting:
    """A splitting idempotent = inclusion ∘ retraction with
    retraction ∘ inclusion the identity of the apex."""

    idempotent: FinFunctor
    apex: FinCat
    retraction: FinFunctor
    inclusion: FinFunctor


def split_idempotent(e: FinFunctor) -> IdempotentSplitting:
    """Split an idempotent endofunctor through its fixed subcategory."""
    if e.source != e.target:
        raise NotIdempotent(f"{e.label} is not an endofunctor")
    C = e.source
    if e.then(e) != e:
        raise NotIdempotent(f"{e.label}∘{e.label} differs from {e.label}")
    objects = [a for a in C.objects if e.ob(a) == a]
    kept = {m.name for m in C.morphisms if e.mor(m.name) == m.name}
    morphisms = [m for m in C.morphisms if m.name in kept]
    identity = {a: C.id_of(a) for a in objects}
    comp = {
        (g, f): C.compose(g, f) for g in kept for f in kept if C.dom(g) == C.cod(f)
    }
    apex = FinCat(objects, morphisms, identity, comp, label=f"split({e.label})")
    inclusion = FinFunctor(
        apex, C, {a: a for a in objects}, {m: m for m in kept}, label="inclusion"
    )
    retraction = FinFunctor(
        C,
        apex,
        {a: e.ob(a) for a in C.objects},
        {m.name: e.mor(m.name) for m in C.morphisms},
        label="retraction",
    )
    assert inclusion.then(retraction) == identity_functor(apex)
    assert retraction.then(inclusion) == e
    return IdempotentSplitting(e, apex, retraction, inclusion)


# ---------------------------------------------------------------------------
# Pullback along a normal isofibration (isocomma + idempotent splitting)


@dataclass
class NormalPullback:
    """Intermediate data of the cleavage-based pullback: the isocomma, the
    strict comparison (x, ξ), the induced idempotent, its splitting, and the
    resulting limit witness."""

    left: FinFunctor
    right: FinFunctor
    cleavage: Cleavage
    isocomma: LimitWitness
    comparison: FinFunctor
    comparison_cell: NatTrans
    idempotent: FinFunctor
    splitting: IdempotentSplitting
    witness: LimitWitness


def build_normal_pullback(
    f: FinFunctor,
    g: FinFunctor,
    cleavage: Cleavage | None = None,
    vertices=None,
) -> NormalPullback:
    """Pullback of g along the normal isofibration f, computed without
    strict pullbacks: straighten the isocomma through the cleavage and
    split the induced idempotent."""
    if cleavage is None:
        cleavage = build_normal_cleavage(f)
    if cleavage.fibration != f:
        raise StructureError("cleavage does not belong to the left leg")
    C = f.target
    ic = isocomma(f, g, vertices=vertices or default_vertices())
    P: TupleCat = ic.apex
    p, q = ic.projections
    phi = ic.structure_cells[0]

    x, xi = lift_iso_2cell(cleavage, p, phi, label="straightened")
    assert x.then(f) == q.then(g)

    e_omap, e_mmap = {}, {}
    for o in P.objects:
        _, b, _ = P.obj_parts[o]
        e_omap[o] = P.obj_named((x.ob(o), b, C.id_of(g.ob(b))))
    for m in P.morphisms:
        _, n = P.mor_parts[m.name]
        e_mmap[m.name] = P.mor_named(e_omap[m.dom], e_omap[m.cod], (x.mor(m.name), n))
    e = FinFunctor(P, P, e_omap, e_mmap, label="idempotent")
    if e.then(e) != e:
        raise CleavageNotNormal(
            "induced endofunctor is not idempotent; the cleavage lifts some "
            "identity to a non-identity"
        )
    phi_e = phi.whisker_pre(e)
    assert all(C.is_identity(c) for c in phi_e.components.values())

    splitting = split_idempotent(e)
    i = splitting.inclusion
    proj1, proj2 = i.then(p), i.then(q)
    cert = _certify_pullback(
        splitting.apex, proj1, proj2, f, g, vertices or default_vertices()
    )
    witness = LimitWitness(
        splitting.apex, (proj1, proj2), (), cert, label=f"pb_nif({f.label},{g.label})"
    )
    return NormalPullback(
        left=f,
        right=g,
        cleavage=cleavage,
        isocomma=ic,
        comparison=x,
        comparison_cell=xi,
        idempotent=e,
        splitting=splitting,
        witness=witness,
    )


def pullback_along_normal_isofibration(
    f: FinFunctor, g: FinFunctor, cleavage: Cleavage | None = None, vertices=None
) -> LimitWitness:
    return build_normal_pullback(f, g, cleavage, vertices).witness


# ---------------------------------------------------------------------------
# Tower limits


@dataclass
class TowerLimit:
    """Finite tower limit built on the tower's pseudolimit: the inductively
    lifted strict cone, the induced idempotent, and its splitting."""

    base: FinCat
    maps: tuple[FinFunctor, ...]
    cleavages: tuple[Cleavage, ...]
    pseudolimit: FinCat
    projections: tuple[FinFunctor, ...]  # p_n : P → A_n
    structure_cells: dict                # (m, n) -> π^m_n : p_n ≅ f^m_n ∘ p_m
    cone: tuple[FinFunctor, ...]         # q_n : P → A_n, strict over the tower
    cone_cells: tuple[NatTrans, ...]     # α_n : q_n ≅ p_n
    idempotent: FinFunctor
    splitting: IdempotentSplitting
    witness: LimitWitness


def _tower_cats(base: FinCat, maps) -> list[FinCat]:
    cats = [base]
    for k, f in enumerate(maps):
        if f.target != cats[k]:
            raise StructureError(f"tower map {k} does not land in level {k}")
        cats.append(f.source)
    return cats


def strict_tower_limit(base: FinCat, maps, vertices=None) -> LimitWitness:
    """Oracle: the strict tower limit via iterated strict pullbacks."""
    apex: FinCat = base
    projections: list[FinFunctor] = [identity_functor(base)]
    for k, f in enumerate(maps):
        pb = pullback_strict(projections[k], f, vertices=vertices or default_vertices())
        to_prev = pb.projections[0]
        projections = [to_prev.then(pr) for pr in projections]
        projections.append(pb.projections[1])
        apex = pb.apex
    cert = Certificate(kind="strict-tower", vertices=(), cones_checked=0, ok=True)
    return LimitWitness(apex, tuple(projections), (), cert, label="strict_tower")


def tower_limit(base: FinCat, maps, cleavages=None, vertices=None) -> TowerLimit:
    """Limit of a finite tower of normal isofibrations.

    The tower's pseudolimit is realized as an iterated isocomma; a strict
    cone is lifted through the cleavages level by level, the induced
    idempotent with identity structure data is split, and the resulting
    strict cone is certified as a limit against the test vertices.
    """
    maps = tuple(maps)
    cats = _tower_cats(base, maps)
    n = len(maps)
    if cleavages is None:
        cleavages = tuple(build_normal_cleavage(f) for f in maps)
    else:
        cleavages = tuple(cleavages)
        for f, cl in zip(maps, cleavages):
            if cl.fibration != f:
                raise StructureError("cleavage list does not match the tower maps")
    verts = vertices or default_vertices()

    # pseudolimit as iterated isocomma
    P: FinCat = base
    stages: list[FinCat] = [base]
    projections: list[FinFunctor] = [identity_functor(base)]
    consecutive: list[NatTrans] = []  # π^{k+1}_k, re-whiskered as stages grow
    for k, f in enumerate(maps):
        ic = isocomma(projections[k], f, vertices=verts)
        stage: TupleCat = ic.apex
        to_prev, to_new = ic.projections
        phi = ic.structure_cells[0]
        projections = [to_prev.then(pr) for pr in projections]
        projections.append(to_new)
        consecutive = [c.whisker_pre(to_prev) for c in consecutive]
        consecutive.append(phi.inverse())
        stages.append(stage)
        P = stage

    pis: dict[tuple[int, int], NatTrans] = {}
    for k, cell in enumerate(consecutive):
        pis[(k + 1, k)] = cell
    for span in range(2, n + 1):
        for lo in range(0, n + 1 - span):
            hi = lo + span
            pis[(hi, lo)] = pis[(lo + 1, lo)].then(
                pis[(hi, lo + 1)].whisker_post(maps[lo])
            )

    # Step 1: inductively lift a strict cone (q_k, α_k)
    cone: list[FinFunctor] = [projections[0]]
    cone_cells: list[NatTrans] = [identity_nat(projections[0])]
    for k in range(n):
        beta = cone_cells[k].then(pis[(k + 1, k)])
        q_next, alpha_next = lift_iso_2cell(
            cleavages[k], projections[k + 1], beta, label=f"q{k + 1}"
        )
        assert q_next.then(maps[k]) == cone[k]
        cone.append(q_next)
        cone_cells.append(alpha_next)

    # Step 3: induced idempotent with identity structure data
    e = _tower_idempotent(P, stages, cats, cone) if n else identity_functor(P)
    if e.then(e) != e:
        raise CleavageNotNormal("tower idempotent fails e∘e = e")
    for alpha in cone_cells:
        whisked = alpha.whisker_pre(e)
        assert all(whisked.category.is_identity(c) for c in whisked.components.values())

    # Step 4: split; the split cone is strict over the whole tower
    splitting = split_idempotent(e)
    i = splitting.inclusion
    limit_projs = tuple(i.then(pn) for pn in projections)
    for k, f in enumerate(maps):
        assert limit_projs[k + 1].then(f) == limit_projs[k]

    # Step 5: factorization and uniqueness against the test vertices
    cert = _certify_tower(splitting.apex, limit_projs, base, maps, verts)
    witness = LimitWitness(splitting.apex, limit_projs, (), cert, label="tower_limit")
    return TowerLimit(
        base=base,
        maps=maps,
        cleavages=cleavages,
        pseudolimit=P,
        projections=tuple(projections),
        structure_cells=pis,
        cone=tuple(cone),
        cone_cells=tuple(cone_cells),
        idempotent=e,
        splitting=splitting,
        witness=witness,
    )


def _tower_idempotent(P, stages, cats, cone) -> FinFunctor:
    """e : P → P sending a pseudo-cone tuple to its strict replacement:
    components are the lifted-cone images and all structure isos become
    identities."""
    n = len(stages) - 1

    def pack_obj(images):
        o = images[0]
        for k in range(1, n + 1):
            stage: TupleCat = stages[k]
            o = stage.obj_named((o, images[k], cats[k - 1].id_of(images[k - 1])))
        return o

    def pack_mor(dom_images, cod_images, mors):
        m = mors[0]
        dom_o, cod_o = dom_images[0], cod_images[0]
        for k in range(1, n + 1):
            stage: TupleCat = stages[k]
            dom_k = stage.obj_named(
                (dom_o, dom_images[k], cats[k - 1].id_of(dom_images[k - 1]))
            )
            cod_k = stage.obj_named(
                (cod_o, cod_images[k], cats[k - 1].id_of(cod_images[k - 1]))
            )
            m = stage.mor_named(dom_k, cod_k, (m, mors[k]))
            dom_o, cod_o = dom_k, cod_k
        return m

    omap = {z: pack_obj([q.ob(z) for q in cone]) for z in P.objects}
    mmap = {
        m.name: pack_mor(
            [q.ob(m.dom) for q in cone],
            [q.ob(m.cod) for q in cone],
            [q.mor(m.name) for q in cone],
        )
        for m in P.morphisms
    }
    return FinFunctor(P, P, omap, mmap, label="tower_idempotent")


def _certify_tower(apex, limit_projs, base, maps, vertices) -> Certificate:
    cones, failures = 0, []
    strict = strict_tower_limit(base, maps)
    for X in vertices:
        for S in enumerate_functors(X, strict.apex):
            legs = [S.then(pr) for pr in strict.projections]
            cones += 1
            omap_choices = {
                x: [
                    o
                    for o in apex.objects
                    if all(pr.ob(o) == leg.ob(x) for pr, leg in zip(limit_projs, legs))
                ]
                for x in X.objects
            }
            mmap_choices = {
                m.name: [
                    mm.name
                    for mm in apex.morphisms
                    if all(
                        pr.mor(mm.name) == leg.mor(m.name)
                        for pr, leg in zip(limit_projs, legs)
                    )
                ]
                for m in X.morphisms
            }
            hits = _factorization_count(apex, X, omap_choices, mmap_choices)
            if hits != 1:
                failures.append(f"vertex {X.label}: strict cone has {hits} factorizations")
    return Certificate(
        kind="tower",
        vertices=tuple(x.label for x in vertices),
        cones_checked=cones,
        ok=not failures,
        failures=tuple(failures[:5]),
    )


def tower_alignment_check(tl: TowerLimit) -> bool:
    """For every generalized element of the pseudolimit (all objects, i.e.
    cones from the terminal category, and all morphisms, i.e. cones from the
    generic arrow): the lifted-cone cells are all identities exactly when
    the structure cells are all identities."""
    P = tl.pseudolimit
    cats = [tl.base] + [f.source for f in tl.maps]
    for z in P.objects:
        alphas_id = all(
            cats[k].is_identity(tl.cone_cells[k].component(z))
            for k in range(len(cats))
        )
        pis_id = all(
            cats[n].is_identity(cell.component(z))
            for (m, n), cell in tl.structure_cells.items()
        )
        if alphas_id != pis_id:
            return False
    for mor in P.morphisms:
        for z in (mor.dom, mor.cod):
            alphas_id = all(
                cats[k].is_identity(tl.cone_cells[k].component(z))
                for k in range(len(cats))
            )
            pis_id = all(
                cats[n].is_identity(cell.component(z))
                for (m, n), cell in tl.structure_cells.items()
            )
            if alphas_id != pis_id:
                return False
    return True


# ---------------------------------------------------------------------------
# Isomorphism over shared projections


def find_isomorphism_over(w1: LimitWitness, w2: LimitWitness) -> FinFunctor | None:
    """An isomorphism of apexes commuting with all projections."""
    if len(w1.projections) != len(w2.projections):
        return None
    A, B = w1.apex, w2.apex
    omap_choices = {
        o: [
            o2
            for o2 in B.objects
            if all(p2.ob(o2) == p1.ob(o) for p1, p2 in zip(w1.projections, w2.projections))
        ]
        for o in A.objects
    }
    mmap_choices = {
        m.name: [
            m2.name
            for m2 in B.morphisms
            if all(
                p2.mor(m2.name) == p1.mor(m.name)
                for p1, p2 in zip(w1.projections, w2.projections)
            )
        ]
        for m in A.morphisms
    }
    return find_isomorphism(A, B, omap_choices, mmap_choices)
