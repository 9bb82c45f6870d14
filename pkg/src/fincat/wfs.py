"""The (injective equivalence, normal isofibration) weak factorization
machinery: factorization through the pseudolimit of an arrow, the diagonal
filler construction, Leibniz powers, the iso-power comparison map, and the
retract presentation of a normal isofibration through its factorization.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import (
    CleavageNotNormal,
    FinCat,
    FinFunctor,
    NatTrans,
    NotNormalCleavage,
    StructureError,
    WitnessInvalid,
    enumerate_functors,
    enumerate_isomorphisms,
    find_isomorphism,
    identity_functor,
)
from .equivalence import (
    EquivalenceWitness,
    classify_equivalence,
    validate_witness,
)
from .fibrations import (
    Cleavage,
    FibrationReport,
    build_normal_cleavage,
    classify_fibration,
    lift_iso_2cell,
)
from .funcat import DEFAULT_BUDGET, postcompose_functor, precompose_functor
from .limits import (
    LimitWitness,
    PseudolimitOfArrow,
    TupleCat,
    pseudolimit_injective_witness,
    pseudolimit_of_arrow,
    pullback_strict,
)


@dataclass
class LiftingProblem:
    """A commuting square: left∘? …  top on top, bottom on the bottom,
    left : A → B on the left, right : C → D on the right, with
    right∘top = bottom∘left exactly."""

    left: FinFunctor
    right: FinFunctor
    top: FinFunctor
    bottom: FinFunctor

    def validate(self) -> "LiftingProblem":
        if self.top.source != self.left.source or self.top.target != self.right.source:
            raise StructureError("top edge has wrong endpoints")
        if self.bottom.source != self.left.target or self.bottom.target != self.right.target:
            raise StructureError("bottom edge has wrong endpoints")
        if self.top.then(self.right) != self.left.then(self.bottom):
            raise StructureError("square does not commute")
        return self

    def is_filler(self, h: FinFunctor) -> bool:
        return (
            h.source == self.left.target
            and h.target == self.right.source
            and self.left.then(h) == self.top
            and h.then(self.right) == self.bottom
        )


@dataclass
class Factorization:
    """f = right ∘ left with left an injective equivalence (witnessed) and
    right a normal isofibration (with cleavage)."""

    arrow: FinFunctor
    left: FinFunctor
    right: FinFunctor
    left_witness: EquivalenceWitness
    right_cleavage: Cleavage
    pseudolimit: PseudolimitOfArrow


def factorize_wfs(
    f: FinFunctor, budget: int = DEFAULT_BUDGET, vertices=None
) -> Factorization:
    """Factor f through the pseudolimit of the arrow: the diagonal followed
    by the target projection."""
    pl = pseudolimit_of_arrow(f, budget, vertices)
    d, v = pl.diagonal, pl.to_target
    assert d.then(v) == f
    witness = pseudolimit_injective_witness(pl)
    cleavage = build_normal_cleavage(v)
    return Factorization(
        arrow=f,
        left=d,
        right=v,
        left_witness=witness,
        right_cleavage=cleavage,
        pseudolimit=pl,
    )


def solve_lifting(
    problem: LiftingProblem,
    witness: EquivalenceWitness | None = None,
    cleavage: Cleavage | None = None,
) -> FinFunctor:
    """Diagonal filler for a square with an injective equivalence on the
    left and a normal isofibration on the right.

    The filler is built by lifting the whiskered counit-inverse through the
    cleavage; normality then forces agreement with the top edge.
    """
    problem.validate()
    i, p = problem.left, problem.right
    if witness is None:
        w = classify_equivalence(i)
        if not isinstance(w, EquivalenceWitness) or not w.has_retraction:
            raise WitnessInvalid(f"{i.label} is not an injective equivalence")
        witness = w
    if witness.forward != i:
        raise WitnessInvalid("witness does not belong to the left edge")
    if witness.kind != "injective" or not witness.unit.is_identity():
        raise WitnessInvalid("witness must be injective-normalized (identity unit)")
    validate_witness(witness)
    if cleavage is None:
        cleavage = build_normal_cleavage(p)
    if cleavage.fibration != p:
        raise CleavageNotNormal("cleavage does not belong to the right edge")
    if not cleavage.normal:
        raise CleavageNotNormal("filler construction needs a normal cleavage")
    cleavage.check()

    r = witness.inverse
    eta = witness.counit.inverse()  # 1_B ≅ i∘r with η·i and r·η identities
    t = r.then(problem.top)
    beta = eta.whisker_post(problem.bottom)
    h, _theta = lift_iso_2cell(cleavage, t, beta, label="filler")
    if h.then(p) != problem.bottom:
        raise CleavageNotNormal("lift failed to project onto the bottom edge")
    if i.then(h) != problem.top:
        raise CleavageNotNormal("normality failed: filler does not restrict to the top edge")
    return h


def exhaustive_fillers(problem: LiftingProblem, limit=None):
    """All diagonal fillers, by constrained enumeration.

    Constraints from the bottom edge (fibers of the right leg) intersect
    with those from the top edge (forced on the image of the left edge);
    when the left edge identifies points with conflicting top images the
    intersection empties out and no filler exists through them.
    """
    problem.validate()
    i, p = problem.left, problem.right
    B, C = problem.left.target, problem.right.source
    omap_choices = {
        b: [c for c in C.objects if p.ob(c) == problem.bottom.ob(b)] for b in B.objects
    }
    mmap_choices = {
        m.name: [n.name for n in C.morphisms if p.mor(n.name) == problem.bottom.mor(m.name)]
        for m in B.morphisms
    }
    for a in i.source.objects:
        forced = problem.top.ob(a)
        omap_choices[i.ob(a)] = [c for c in omap_choices[i.ob(a)] if c == forced]
    for m in i.source.morphisms:
        forced = problem.top.mor(m.name)
        mmap_choices[i.mor(m.name)] = [
            n for n in mmap_choices[i.mor(m.name)] if n == forced
        ]
    yield from enumerate_functors(B, C, omap_choices, mmap_choices, limit=limit)


def has_filler(problem: LiftingProblem) -> bool:
    return next(exhaustive_fillers(problem, limit=1), None) is not None


def canonical_test_square(f: FinFunctor, budget: int = DEFAULT_BUDGET) -> LiftingProblem:
    """The square whose fillers detect membership in the right class: the
    factorization's diagonal against f itself."""
    fac = factorize_wfs(f, budget)
    return LiftingProblem(
        left=fac.left,
        right=f,
        top=identity_functor(f.source),
        bottom=fac.right,
    ).validate()


# ---------------------------------------------------------------------------
# Leibniz powers


@dataclass
class LeibnizPower:
    """The induced map from a power into the pullback of powers, plus its
    classification."""

    injective_on_objects: FinFunctor
    fibration: FinFunctor
    induced: FinFunctor
    pullback: LimitWitness
    report: FibrationReport


def leibniz_power(
    j: FinFunctor, p: FinFunctor, budget: int = DEFAULT_BUDGET, vertices=None
) -> LeibnizPower:
    """For j : X → Y and p : A → B, the induced map A^Y → B^Y ×_{B^X} A^X
    together with its isofibration report."""
    if not j.injective_on_objects():
        raise StructureError(f"{j.label} must be injective on objects")
    X, Y = j.source, j.target
    A, B = p.source, p.target
    p_x = postcompose_functor(p, X, budget)
    b_j = precompose_functor(j, B, budget)
    pb = pullback_strict(p_x, b_j, vertices=vertices)
    apex: TupleCat = pb.apex
    a_j = precompose_functor(j, A, budget)
    p_y = postcompose_functor(p, Y, budget)
    power_ay = a_j.source
    omap = {
        F: apex.obj_named((a_j.ob(F), p_y.ob(F))) for F in power_ay.objects
    }
    mmap = {
        m.name: apex.mor_named(
            omap[m.dom], omap[m.cod], (a_j.mor(m.name), p_y.mor(m.name))
        )
        for m in power_ay.morphisms
    }
    induced = FinFunctor(power_ay, apex, omap, mmap, label=f"leibniz({j.label},{p.label})")
    assert induced.then(pb.projections[0]) == a_j
    assert induced.then(pb.projections[1]) == p_y
    report = classify_fibration(induced)
    return LeibnizPower(
        injective_on_objects=j,
        fibration=p,
        induced=induced,
        pullback=pb,
        report=report,
    )


# ---------------------------------------------------------------------------
# The iso-power comparison map


@dataclass
class WfComparison:
    """The comparison w : A^I → L_f and the biconditional report between
    the classification of f and of w."""

    arrow: FinFunctor
    comparison: FinFunctor
    arrow_report: FibrationReport
    comparison_report: FibrationReport
    comparison_witness: EquivalenceWitness | None
    biconditionals: dict

    @property
    def ok(self) -> bool:
        return all(self.biconditionals.values())


def compute_wf(f: FinFunctor, budget: int = DEFAULT_BUDGET, vertices=None) -> WfComparison:
    """Compute the induced map out of the iso-power and check that it is an
    isofibration (resp. normal) exactly when f is; when either holds it
    must moreover be a retract equivalence."""
    pl = pseudolimit_of_arrow(f, budget, vertices)
    w = pl.power_comparison
    # only the iso-lifting flags enter the biconditionals
    rf = classify_fibration(f, grothendieck=False)
    rw = classify_fibration(w, grothendieck=False)
    witness = classify_equivalence(w)
    checks = {
        "representable_iff": rf.representable == rw.representable,
        "normal_iff": rf.normal == rw.normal,
    }
    if rf.representable or rw.representable:
        checks["retract_kind"] = (
            isinstance(witness, EquivalenceWitness) and "retract" in witness.kinds
        )
    return WfComparison(
        arrow=f,
        comparison=w,
        arrow_report=rf,
        comparison_report=rw,
        comparison_witness=witness if isinstance(witness, EquivalenceWitness) else None,
        biconditionals=checks,
    )


# ---------------------------------------------------------------------------
# Retract presentation of a normal isofibration


@dataclass
class RetractCertificate:
    """Equations exhibiting an arrow as a retract, in the arrow category,
    of its factorization's right leg."""

    arrow: FinFunctor
    factorization: Factorization
    filler: FinFunctor
    equations: dict

    @property
    def ok(self) -> bool:
        return all(self.equations.values())


def minimal_retract_witness(
    f: FinFunctor,
    cleavage: Cleavage | None = None,
    budget: int = DEFAULT_BUDGET,
) -> RetractCertificate:
    """For a normal isofibration f, solve the square (diagonal, f, 1,
    right leg) and package the retract diagram through the factorization."""
    if cleavage is None:
        report = classify_fibration(f)
        if not report.normal:
            raise NotNormalCleavage(f"{f.label} is not a normal isofibration")
        cleavage = build_normal_cleavage(f)
    if not cleavage.normal:
        raise NotNormalCleavage("retract presentation needs a normal cleavage")
    fac = factorize_wfs(f, budget)
    problem = LiftingProblem(
        left=fac.left,
        right=f,
        top=identity_functor(f.source),
        bottom=fac.right,
    ).validate()
    w = solve_lifting(problem, witness=fac.left_witness, cleavage=cleavage)
    A = f.source
    equations = {
        "section_then_filler_is_identity": fac.left.then(w) == identity_functor(A),
        "filler_over_right_leg": w.then(f) == fac.right,
        "section_square_commutes": fac.left.then(fac.right) == f,
    }
    return RetractCertificate(arrow=f, factorization=fac, filler=w, equations=equations)


# ---------------------------------------------------------------------------
# Isomorphism of arrows (used to compare induced maps with named ones)


def find_arrow_isomorphism(f: FinFunctor, g: FinFunctor):
    """Isomorphisms (σ, τ) with τ∘f = g∘σ, or None."""
    for sigma in enumerate_isomorphisms(f.source, g.source):
        omap_choices = {}
        mmap_choices = {}
        for a in f.source.objects:
            omap_choices.setdefault(f.ob(a), set()).add(g.ob(sigma.ob(a)))
        for m in f.source.morphisms:
            mmap_choices.setdefault(f.mor(m.name), set()).add(g.mor(sigma.mor(m.name)))
        if any(len(v) > 1 for v in omap_choices.values()):
            continue
        if any(len(v) > 1 for v in mmap_choices.values()):
            continue
        tau = find_isomorphism(
            f.target,
            g.target,
            {k: sorted(v) for k, v in omap_choices.items()},
            {k: sorted(v) for k, v in mmap_choices.items()},
        )
        if tau is not None:
            return sigma, tau
    return None
