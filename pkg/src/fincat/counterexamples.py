"""Named, fully reproducible witnesses.

Each witness is assembled from the generic classifiers and constructions —
no claim is a hard-coded boolean — and replaying the same name yields the
same claims bit for bit.

* ``groth_leibniz``: the endpoint restriction out of the arrow power is a
  discrete isofibration but not a Grothendieck fibration; the failing
  arrow is (1,0) → (1,1).
* ``nip_cat2``: an unfillable (split mono, split epi) square in arrows of
  finite sets, lifted to chaotic categories: a square of an injective
  equivalence against a retract equivalence with no functor filler.
* ``fy_family(k, a)``: the two-level family over a k-element discrete
  category whose levelwise retract equivalences assemble to a normal
  isofibration that has a section exactly when k < a.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations

from .core import (
    BudgetExceeded,
    FinCat,
    FinFunctor,
    Morphism,
    StructureError,
    UnknownName,
    builtin,
    builtin_functor,
    chaotic_category,
    discrete_category,
    enumerate_functors,
    enumerate_transformations,
    identity_functor,
    terminal_category,
    validate_functor,
)
from .cosmos import nip_square_filler
from .equivalence import EquivalenceWitness, classify_equivalence
from .fibrations import classify_fibration
from .funcat import precompose_functor
from .wfs import find_arrow_isomorphism, leibniz_power


@dataclass
class Claim:
    predicate: str
    expected: object
    actual: object
    locus: str = ""

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def to_dict(self) -> dict:
        return {
            "predicate": self.predicate,
            "expected": self.expected,
            "actual": self.actual,
            "passed": self.passed,
            "locus": self.locus,
        }


@dataclass
class Witness:
    name: str
    inputs: dict
    claims: list[Claim]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    @property
    def replay(self) -> str:
        return f"fincat counterexample {self.name!r}"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "inputs": self.inputs,
            "passed": self.passed,
            "replay": self.replay,
            "claims": [c.to_dict() for c in self.claims],
        }


# ---------------------------------------------------------------------------
# Arrows of categories: hom-categories, sections, normality on a test set


@dataclass
class ArrowMorphism:
    """A morphism of the arrow category of categories: a strictly commuting
    square (level0, level1) between two functors."""

    source: FinFunctor  # u : A0 → A1
    target: FinFunctor  # v : B0 → B1
    level0: FinFunctor  # A0 → B0
    level1: FinFunctor  # A1 → B1

    def validate(self) -> "ArrowMorphism":
        if self.level0.then(self.target) != self.source.then(self.level1):
            raise StructureError("arrow-category square does not commute")
        return self


def arrow_sections(f: ArrowMorphism) -> list[ArrowMorphism]:
    """All sections of f in the arrow category: levelwise sections whose
    pair is again a commuting square."""
    from .equivalence import find_sections

    out = []
    for s0 in find_sections(f.level0):
        for s1 in find_sections(f.level1):
            candidate = ArrowMorphism(
                source=f.target, target=f.source, level0=s0, level1=s1
            )
            if candidate.level0.then(f.source) == f.target.then(candidate.level1):
                out.append(candidate.validate())
    return out


@dataclass
class ArrowHom:
    """The category of commuting squares X → A, with the indexing of its
    objects by functor pairs and of its morphisms by transformation pairs."""

    category: FinCat
    squares: list
    cells: dict
    lookup: dict

    def object_of(self, s0_key: str, s1_key: str) -> str:
        return self._square_index[(s0_key, s1_key)]

    def __post_init__(self):
        self._square_index = {
            (s0.key, s1.key): f"q{i}" for i, (s0, s1) in enumerate(self.squares)
        }


def _cell_key(dom, cod, t0, t1):
    return (
        dom,
        cod,
        tuple(sorted(t0.components.items())),
        tuple(sorted(t1.components.items())),
    )


def arrow_hom_category(X: FinFunctor, A: FinFunctor) -> ArrowHom:
    """Commuting squares X → A and their compatible transformation pairs."""
    squares = [
        (s0, s1)
        for s0 in enumerate_functors(X.source, A.source)
        for s1 in enumerate_functors(X.target, A.target)
        if s0.then(A) == X.then(s1)
    ]
    obj_names = [f"q{i}" for i in range(len(squares))]
    morphisms, cells, lookup = [], {}, {}
    for i, (s0, s1) in enumerate(squares):
        for j, (r0, r1) in enumerate(squares):
            pairs = [
                (t0, t1)
                for t0 in enumerate_transformations(s0, r0)
                for t1 in enumerate_transformations(s1, r1)
                if t0.whisker_post(A).components == t1.whisker_pre(X).components
            ]
            for k, (t0, t1) in enumerate(pairs):
                name = f"m{i}_{j}_{k}"
                morphisms.append(Morphism(name, f"q{i}", f"q{j}"))
                cells[name] = (t0, t1)
                lookup[_cell_key(f"q{i}", f"q{j}", t0, t1)] = name
    identity = {}
    for i, (s0, s1) in enumerate(squares):
        id0 = {a: s0.target.id_of(s0.ob(a)) for a in s0.source.objects}
        id1 = {a: s1.target.id_of(s1.ob(a)) for a in s1.source.objects}
        identity[f"q{i}"] = lookup[
            (f"q{i}", f"q{i}", tuple(sorted(id0.items())), tuple(sorted(id1.items())))
        ]
    comp = {}
    for m1 in morphisms:
        t0a, t1a = cells[m1.name]
        for m2 in morphisms:
            if m2.cod != m1.dom:
                continue
            t0b, t1b = cells[m2.name]
            comp[(m1.name, m2.name)] = lookup[
                _cell_key(m2.dom, m1.cod, t0b.then(t0a), t1b.then(t1a))
            ]
    cat = FinCat(obj_names, morphisms, identity, comp, label=f"[{X.label},{A.label}]")
    return ArrowHom(category=cat, squares=squares, cells=cells, lookup=lookup)


def arrow_hom_postcompose(X: FinFunctor, f: ArrowMorphism) -> FinFunctor:
    """Postcomposition with f between hom-categories of squares."""
    src = arrow_hom_category(X, f.source)
    dst = arrow_hom_category(X, f.target)
    omap = {}
    for i, (s0, s1) in enumerate(src.squares):
        omap[f"q{i}"] = dst.object_of(s0.then(f.level0).key, s1.then(f.level1).key)
    mmap = {}
    for m in src.category.morphisms:
        t0, t1 = src.cells[m.name]
        mmap[m.name] = dst.lookup[
            _cell_key(
                omap[m.dom],
                omap[m.cod],
                t0.whisker_post(f.level0),
                t1.whisker_post(f.level1),
            )
        ]
    return FinFunctor(
        src.category, dst.category, omap, mmap, label=f"[{X.label},f]"
    )


def default_arrow_test_objects() -> tuple[FinFunctor, ...]:
    one = terminal_category()
    two = discrete_category(2)
    return (
        identity_functor(one),
        FinFunctor(two, one, {"0": "*", "1": "*"}, {"id_0": "id_*", "id_1": "id_*"}, label="2→1"),
    )


def arrow_normal_on_test_set(f: ArrowMorphism, test_objects=None) -> bool:
    """Whether postcomposition with f is a normal isofibration of
    hom-categories for every declared test object."""
    for X in test_objects or default_arrow_test_objects():
        report = classify_fibration(arrow_hom_postcompose(X, f), grothendieck=False)
        if not (report.representable and report.normal):
            return False
    return True


# ---------------------------------------------------------------------------
# groth_leibniz


def groth_leibniz() -> Witness:
    two = builtin("arrow")
    j = builtin_functor("discrete_to_arrow")
    restriction = precompose_functor(j, two)
    report = classify_fibration(restriction)
    fail = report.failures.get("grothendieck", (None, None, None, None))
    lp = leibniz_power(j, FinFunctor(
        two, builtin("terminal"),
        {a: "*" for a in two.objects},
        {m.name: "id_*" for m in two.morphisms},
        label="arrow→1",
    ))
    same = find_arrow_isomorphism(lp.induced, restriction)
    locus = f"{fail[2]} -> {fail[3]} at {fail[0]}"
    claims = [
        Claim("restriction is a discrete isofibration", True, report.discrete),
        Claim("restriction is a Grothendieck fibration", False, report.grothendieck, locus=locus),
        Claim("failing arrow domain", "(1,0)", fail[2], locus=locus),
        Claim("failing arrow codomain", "(1,1)", fail[3], locus=locus),
        Claim(
            "Leibniz power by the endpoint inclusion agrees with the restriction",
            True,
            same is not None,
        ),
        Claim(
            "Leibniz power report matches",
            (True, False),
            (lp.report.discrete, lp.report.grothendieck),
        ),
    ]
    return Witness(
        name="groth_leibniz",
        inputs={"j": "discrete_to_arrow", "power_of": "arrow"},
        claims=claims,
    )


# ---------------------------------------------------------------------------
# nip_cat2


def _chaotic_functor(fn, src: FinCat, dst: FinCat) -> FinFunctor:
    """Functor between chaotic categories induced by an object map."""
    omap = {str(i): str(fn[i]) for i in range(src.n_objects)}
    mmap = {
        m.name: f"u{omap[m.dom]}_{omap[m.cod]}" for m in src.morphisms
    }
    return FinFunctor(src, dst, omap, mmap)


def nip_cat2() -> Witness:
    res = nip_square_filler("finset_arrow", 3)
    claims = [Claim("unfillable square exists at size bound 3", True, not res.all_fill)]
    ce = res.counterexample
    if ce is not None:
        # lift the square to chaotic categories and replay it there
        def chaotic_arrow(obj):
            src = chaotic_category(obj["source_size"])
            dst = chaotic_category(obj["target_size"])
            return _chaotic_functor(obj["map"], src, dst)

        A = chaotic_arrow(ce["A"])
        B = chaotic_arrow(ce["B"])
        C = chaotic_arrow(ce["C"])
        D = chaotic_arrow(ce["D"])

        def square(f, src, dst):
            return ArrowMorphism(
                source=src,
                target=dst,
                level0=_chaotic_functor(f["component0"], src.source, dst.source),
                level1=_chaotic_functor(f["component1"], src.target, dst.target),
            ).validate()

        i = square(ce["i"], A, B)
        p = square(ce["p"], C, D)
        top = square(ce["top"], A, C)
        bottom = square(ce["bottom"], B, D)

        wi0 = classify_equivalence(i.level0)
        wi1 = classify_equivalence(i.level1)
        wp0 = classify_equivalence(p.level0)
        wp1 = classify_equivalence(p.level1)
        claims.append(
            Claim(
                "chaotic left edge components are injective equivalences",
                (True, True),
                (
                    isinstance(wi0, EquivalenceWitness) and wi0.has_retraction,
                    isinstance(wi1, EquivalenceWitness) and wi1.has_retraction,
                ),
            )
        )
        claims.append(
            Claim(
                "chaotic right edge components are retract equivalences",
                (True, True),
                (
                    isinstance(wp0, EquivalenceWitness) and wp0.has_section,
                    isinstance(wp1, EquivalenceWitness) and wp1.has_section,
                ),
            )
        )
        claims.append(
            Claim(
                "chaotic square commutes",
                True,
                top.level0.then(p.level0) == i.level0.then(bottom.level0)
                and top.level1.then(p.level1) == i.level1.then(bottom.level1),
            )
        )
        fillers = _arrow_fillers(i, p, top, bottom)
        claims.append(Claim("chaotic square has a functor filler", False, bool(fillers)))
    return Witness(
        name="nip_cat2",
        inputs={"space": "finset_arrow", "size_bound": 3},
        claims=claims,
    )


def _arrow_fillers(i: ArrowMorphism, p: ArrowMorphism, top: ArrowMorphism, bottom: ArrowMorphism):
    """Fillers (h0, h1) of an arrow-category square, by exhaustion."""
    B, C = i.target, p.source
    out = []
    for h0 in enumerate_functors(B.source, C.source):
        if i.level0.then(h0) != top.level0 or h0.then(p.level0) != bottom.level0:
            continue
        for h1 in enumerate_functors(B.target, C.target):
            if i.level1.then(h1) != top.level1 or h1.then(p.level1) != bottom.level1:
                continue
            if h0.then(C) == B.then(h1):
                out.append((h0, h1))
    return out


# ---------------------------------------------------------------------------
# fy_family


def _subset_name(subset) -> str:
    return "U" + "".join(str(x) for x in subset) if subset else "U∅"


def build_fy(k: int, alpha: int):
    """The square f over (Y → 1) with Y the k-element discrete category:
    level 0 is the pair category over subsets of size < alpha, level 1 the
    chaotic category of those subsets."""
    Y = discrete_category(k)
    one = terminal_category()
    subsets = [()]
    for size in range(1, alpha):
        subsets.extend(combinations(range(k), size))
    subset_names = [_subset_name(s) for s in subsets]
    s_objects = subset_names
    s_morphisms = [
        Morphism(f"c{i}_{j}", subset_names[i], subset_names[j])
        for i in range(len(subsets))
        for j in range(len(subsets))
    ]
    s_comp = {}
    for g in s_morphisms:
        for f in s_morphisms:
            if g.dom == f.cod:
                i = subset_names.index(f.dom)
                j = subset_names.index(g.cod)
                s_comp[(g.name, f.name)] = f"c{i}_{j}"
    s_identity = {
        subset_names[i]: f"c{i}_{i}" for i in range(len(subsets))
    }
    S = FinCat(s_objects, s_morphisms, s_identity, s_comp, label=f"S({k},<{alpha})")

    pairs = [
        (i, x) for i, subset in enumerate(subsets) for x in subset
    ]
    p_objects = [f"({subset_names[i]},{x})" for i, x in pairs]
    p_morphisms = []
    for a, (i, x) in enumerate(pairs):
        for b, (j, y) in enumerate(pairs):
            if x == y:
                p_morphisms.append(
                    Morphism(f"w{a}_{b}", p_objects[a], p_objects[b])
                )
    index_of = {name: t for name, t in zip(p_objects, pairs)}
    p_comp = {}
    pos = {name: a for a, name in enumerate(p_objects)}
    for g in p_morphisms:
        for f in p_morphisms:
            if g.dom == f.cod:
                p_comp[(g.name, f.name)] = f"w{pos[f.dom]}_{pos[g.cod]}"
    p_identity = {name: f"w{pos[name]}_{pos[name]}" for name in p_objects}
    P = FinCat(p_objects, p_morphisms, p_identity, p_comp, label=f"P({k},<{alpha})")

    left_leg = FinFunctor(
        P,
        S,
        {name: subset_names[index_of[name][0]] for name in p_objects},
        {
            m.name: f"c{index_of[m.dom][0]}_{index_of[m.cod][0]}"
            for m in p_morphisms
        },
        label="pairs→subsets",
    )
    pi = FinFunctor(
        P,
        Y,
        {name: str(index_of[name][1]) for name in p_objects},
        {m.name: f"id_{index_of[m.dom][1]}" for m in p_morphisms},
        label="pairs→points",
    )
    sigma = FinFunctor(
        S, one, {a: "*" for a in S.objects}, {m.name: "id_*" for m in S.morphisms},
        label="subsets→1",
    )
    bang = FinFunctor(
        Y, one, {a: "*" for a in Y.objects}, {m.name: "id_*" for m in Y.morphisms},
        label="points→1",
    )
    validate_functor(left_leg)
    validate_functor(pi)
    f = ArrowMorphism(source=left_leg, target=bang, level0=pi, level1=sigma).validate()
    return f


def fy_family(k: int, alpha: int) -> Witness:
    if not (0 <= k <= 4) or alpha not in (2, 3, 4):
        raise BudgetExceeded(
            f"fy_family({k},{alpha}) is outside the supported finite ranges"
        )
    f = build_fy(k, alpha)
    w_pi = classify_equivalence(f.level0)
    w_sigma = classify_equivalence(f.level1)
    sections = arrow_sections(f)
    locus = f"points={k}, threshold={alpha}"
    claims = [
        Claim(
            "level-0 component is a retract equivalence",
            True,
            isinstance(w_pi, EquivalenceWitness) and w_pi.has_section,
            locus=locus,
        ),
        Claim(
            "level-1 component is a retract equivalence",
            True,
            isinstance(w_sigma, EquivalenceWitness) and w_sigma.has_section,
            locus=locus,
        ),
        Claim(
            "square is a normal isofibration on the test set",
            True,
            arrow_normal_on_test_set(f),
            locus=locus,
        ),
        Claim("square has a section", k < alpha, bool(sections), locus=locus),
    ]
    return Witness(
        name=f"fy_family({k},{alpha})",
        inputs={"points": k, "size_threshold": alpha},
        claims=claims,
    )


# ---------------------------------------------------------------------------
# dispatch


_FY_RE = re.compile(r"^fy_family\((\d+)\s*,\s*(\d+)\)$")


def run_counterexample(name: str) -> Witness:
    name = name.strip()
    if name == "groth_leibniz":
        return groth_leibniz()
    if name == "nip_cat2":
        return nip_cat2()
    m = _FY_RE.match(name.replace(" ", ""))
    if m:
        return fy_family(int(m.group(1)), int(m.group(2)))
    raise UnknownName(f"no counterexample named {name!r}")


COUNTEREXAMPLE_NAMES = ("groth_leibniz", "nip_cat2", "fy_family(k,alpha)")
