"""Finite categories presented by explicit composition tables.

Objects and morphisms are identified by strings.  A category carries its
whole composition table, so every law is checked by a finite scan and every
construction layered on top stays total and decidable.  Values are immutable
once built; no operation mutates its arguments.
"""
from __future__ import annotations

import hashlib
import json
import re
from functools import cached_property
from typing import Iterator, Mapping, NamedTuple, Sequence


# ---------------------------------------------------------------------------
# Errors


class FinCatError(Exception):
    """Base class for structured errors raised by this package."""


class StructureError(FinCatError):
    """Raw data is not even shaped like a category/functor/transformation."""


class AssociativityViolation(FinCatError):
    def __init__(self, h: str, g: str, f: str, left: str, right: str):
        self.triple = (h, g, f)
        self.left, self.right = left, right
        super().__init__(
            f"comp({h},comp({g},{f})) = {left} but comp(comp({h},{g}),{f}) = {right}"
        )


class IdentityViolation(FinCatError):
    def __init__(self, morphism: str, side: str, got: str):
        self.morphism, self.side, self.got = morphism, side, got
        super().__init__(f"identity law fails at {morphism} ({side}): got {got}")


class BoundaryViolation(FinCatError):
    def __init__(self, g: str, f: str, composite: str, reason: str):
        self.pair, self.composite, self.reason = (g, f), composite, reason
        super().__init__(f"comp({g},{f}) = {composite}: {reason}")


class NotFunctorial(FinCatError):
    def __init__(self, reason: str, locus=None):
        self.locus = locus
        super().__init__(reason)


class NotNatural(FinCatError):
    def __init__(self, morphism: str, detail: str = ""):
        self.morphism = morphism
        super().__init__(f"naturality fails at {morphism}" + (f": {detail}" if detail else ""))


class NotInvertible(FinCatError):
    def __init__(self, obj: str):
        self.obj = obj
        super().__init__(f"component at {obj} is not an isomorphism")


class UnknownBuiltin(FinCatError):
    pass


class UnknownName(FinCatError):
    pass


class NotIdempotent(FinCatError):
    pass


class NotIsofibration(FinCatError):
    def __init__(self, obj: str, iso: str):
        self.obj, self.iso = obj, iso
        super().__init__(f"no lift of {iso} at {obj}")


class CleavageNotNormal(FinCatError):
    pass


# Both names appear in error contracts downstream; they report the same defect.
NotNormalCleavage = CleavageNotNormal


class WitnessInvalid(FinCatError):
    pass


class BoundExceeded(FinCatError):
    pass


class BudgetExceeded(FinCatError):
    pass


class EnumerationBudgetExceeded(BudgetExceeded):
    def __init__(self, bound: int, required: int, what: str = "enumeration"):
        self.bound, self.required = bound, required
        super().__init__(f"{what} needs {required} candidates, budget is {bound}")


# ---------------------------------------------------------------------------
# Categories


class Morphism(NamedTuple):
    name: str
    dom: str
    cod: str


def _canon_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


class FinCat:
    """A finite category: objects, morphisms, identities, and a composition
    table ``comp[(g, f)] = g∘f`` defined on exactly the composable pairs.

    The constructor performs structural checks only (well-formed names,
    identity endpoints, totality of ``comp``).  The category *laws* are
    checked by :func:`validate_category`.
    """

    def __init__(self, objects, morphisms, identity, comp, label: str = "cat"):
        self.objects: tuple[str, ...] = tuple(objects)
        self.morphisms: tuple[Morphism, ...] = tuple(
            m if isinstance(m, Morphism) else Morphism(*m) for m in morphisms
        )
        self.identity: dict[str, str] = dict(identity)
        if isinstance(comp, Mapping):
            self.comp: dict[tuple[str, str], str] = {tuple(k): v for k, v in comp.items()}
        else:
            self.comp = {tuple(k): v for k, v in comp}
        self.label = label
        self._check_structure()

    def _check_structure(self):
        if len(set(self.objects)) != len(self.objects):
            raise StructureError(f"{self.label}: duplicate object names")
        names = [m.name for m in self.morphisms]
        if len(set(names)) != len(names):
            raise StructureError(f"{self.label}: duplicate morphism names")
        by_name = {m.name: m for m in self.morphisms}
        objs = set(self.objects)
        for m in self.morphisms:
            if m.dom not in objs or m.cod not in objs:
                raise StructureError(f"{self.label}: morphism {m.name} has unknown endpoint")
        if set(self.identity) != objs:
            raise StructureError(f"{self.label}: identity map must cover exactly the objects")
        for a, i in self.identity.items():
            m = by_name.get(i)
            if m is None or m.dom != a or m.cod != a:
                raise StructureError(f"{self.label}: identity of {a} is not an endomorphism of {a}")
        composable = {
            (g.name, f.name)
            for g in self.morphisms
            for f in self.morphisms
            if g.dom == f.cod
        }
        if set(self.comp) != composable:
            missing = composable - set(self.comp)
            extra = set(self.comp) - composable
            raise StructureError(
                f"{self.label}: comp must be defined on exactly the composable pairs"
                f" (missing {sorted(missing)[:3]}, extra {sorted(extra)[:3]})"
            )
        for pair, value in self.comp.items():
            if value not in by_name:
                raise StructureError(f"{self.label}: comp{pair} = {value} is not a morphism")

    # -- lookups ------------------------------------------------------------

    @cached_property
    def _by_name(self) -> dict[str, Morphism]:
        return {m.name: m for m in self.morphisms}

    @cached_property
    def obj_index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.objects)}

    @cached_property
    def mor_index(self) -> dict[str, int]:
        return {m.name: i for i, m in enumerate(self.morphisms)}

    def mor(self, name: str) -> Morphism:
        return self._by_name[name]

    def has_mor(self, name: str) -> bool:
        return name in self._by_name

    def dom(self, name: str) -> str:
        return self._by_name[name].dom

    def cod(self, name: str) -> str:
        return self._by_name[name].cod

    def id_of(self, obj: str) -> str:
        return self.identity[obj]

    def compose(self, g: str, f: str) -> str:
        """g∘f: first f, then g."""
        return self.comp[(g, f)]

    def compose_path(self, names: Sequence[str]) -> str:
        """Compose a path given in diagrammatic order (first arrow first)."""
        if not names:
            raise ValueError("empty path needs an explicit identity")
        acc = names[0]
        for nxt in names[1:]:
            acc = self.compose(nxt, acc)
        return acc

    @cached_property
    def _hom_table(self) -> dict[tuple[str, str], tuple[str, ...]]:
        table: dict[tuple[str, str], list[str]] = {}
        for m in self.morphisms:
            table.setdefault((m.dom, m.cod), []).append(m.name)
        return {k: tuple(v) for k, v in table.items()}

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        return self._hom_table.get((a, b), ())

    @cached_property
    def _into_table(self) -> dict[str, tuple[str, ...]]:
        table: dict[str, list[str]] = {a: [] for a in self.objects}
        for m in self.morphisms:
            table[m.cod].append(m.name)
        return {k: tuple(v) for k, v in table.items()}

    @cached_property
    def _from_table(self) -> dict[str, tuple[str, ...]]:
        table: dict[str, list[str]] = {a: [] for a in self.objects}
        for m in self.morphisms:
            table[m.dom].append(m.name)
        return {k: tuple(v) for k, v in table.items()}

    def morphisms_into(self, b: str) -> tuple[str, ...]:
        return self._into_table[b]

    def morphisms_from(self, a: str) -> tuple[str, ...]:
        return self._from_table[a]

    @cached_property
    def identity_names(self) -> frozenset[str]:
        return frozenset(self.identity.values())

    def is_identity(self, name: str) -> bool:
        return name in self.identity_names

    @cached_property
    def _inverse(self) -> dict[str, str]:
        inv: dict[str, str] = {}
        for m in self.morphisms:
            for n_name in self.hom(m.cod, m.dom):
                if (
                    self.compose(n_name, m.name) == self.id_of(m.dom)
                    and self.compose(m.name, n_name) == self.id_of(m.cod)
                ):
                    inv[m.name] = n_name
                    break
        return inv

    def is_iso(self, name: str) -> bool:
        return name in self._inverse

    def inverse(self, name: str) -> str:
        return self._inverse[name]

    @cached_property
    def isos(self) -> tuple[str, ...]:
        return tuple(m.name for m in self.morphisms if m.name in self._inverse)

    def composable_pairs(self) -> Iterator[tuple[str, str]]:
        """Pairs (g, f) with dom g = cod f, in stored order."""
        for g in self.morphisms:
            for f in self.morphisms:
                if g.dom == f.cod:
                    yield (g.name, f.name)

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.morphisms)

    def is_discrete(self) -> bool:
        return all(self.is_identity(m.name) for m in self.morphisms)

    # -- identity / serialization --------------------------------------------

    def to_dict(self) -> dict:
        return {
            "objects": list(self.objects),
            "morphisms": [{"name": m.name, "dom": m.dom, "cod": m.cod} for m in self.morphisms],
            "identity": dict(self.identity),
            "comp": [
                {"g": g, "f": f, "gf": gf}
                for (g, f), gf in sorted(self.comp.items())
            ],
        }

    @cached_property
    def key(self) -> str:
        """Canonical serialization; equal categories have equal keys."""
        return _canon_json(self.to_dict())

    @cached_property
    def digest(self) -> str:
        return hashlib.sha256(self.key.encode()).hexdigest()

    def relabel(self, label: str) -> "FinCat":
        return FinCat(self.objects, self.morphisms, self.identity, self.comp, label=label)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinCat):
            return NotImplemented
        return (
            self.objects == other.objects
            and self.morphisms == other.morphisms
            and self.identity == other.identity
            and self.comp == other.comp
        )

    def __hash__(self):
        return hash(self.digest)

    def __repr__(self):
        return f"FinCat({self.label!r}, {self.n_objects} objects, {self.n_morphisms} morphisms)"


def validate_category(raw) -> FinCat:
    """Check all category laws and return the verified category.

    Accepts either a :class:`FinCat` or a raw dict in the file format
    (``objects`` / ``morphisms`` / ``identity`` / ``comp``).  Raises
    :class:`BoundaryViolation`, :class:`IdentityViolation` or
    :class:`AssociativityViolation` with the offending entry.
    """
    if isinstance(raw, FinCat):
        cat = raw
    else:
        try:
            comp = {(e["g"], e["f"]): e["gf"] for e in raw["comp"]}
            cat = FinCat(
                raw["objects"],
                [(m["name"], m["dom"], m["cod"]) for m in raw["morphisms"]],
                raw["identity"],
                comp,
                label=raw.get("label", "cat"),
            )
        except (KeyError, TypeError) as exc:
            raise StructureError(f"malformed category data: {exc}") from exc

    for (g, f), gf in cat.comp.items():
        if cat.dom(gf) != cat.dom(f):
            raise BoundaryViolation(g, f, gf, f"dom is {cat.dom(gf)}, expected {cat.dom(f)}")
        if cat.cod(gf) != cat.cod(g):
            raise BoundaryViolation(g, f, gf, f"cod is {cat.cod(gf)}, expected {cat.cod(g)}")
    for m in cat.morphisms:
        left = cat.compose(cat.id_of(m.cod), m.name)
        if left != m.name:
            raise IdentityViolation(m.name, "left", left)
        right = cat.compose(m.name, cat.id_of(m.dom))
        if right != m.name:
            raise IdentityViolation(m.name, "right", right)
    for h in cat.morphisms:
        for g in cat.morphisms:
            if h.dom != g.cod:
                continue
            hg = cat.compose(h.name, g.name)
            for f in cat.morphisms:
                if g.dom != f.cod:
                    continue
                left = cat.compose(h.name, cat.compose(g.name, f.name))
                right = cat.compose(hg, f.name)
                if left != right:
                    raise AssociativityViolation(h.name, g.name, f.name, left, right)
    return cat


# ---------------------------------------------------------------------------
# Functors


class FinFunctor:
    """A map of finite categories, given by object and morphism tables."""

    def __init__(self, source: FinCat, target: FinCat, omap, mmap, label: str = "functor"):
        self.source = source
        self.target = target
        self.omap: dict[str, str] = dict(omap)
        self.mmap: dict[str, str] = dict(mmap)
        self.label = label
        if set(self.omap) != set(source.objects):
            raise StructureError(f"{label}: object map must cover exactly the source objects")
        if set(self.mmap) != {m.name for m in source.morphisms}:
            raise StructureError(f"{label}: morphism map must cover exactly the source morphisms")
        for a, x in self.omap.items():
            if x not in target.obj_index:
                raise StructureError(f"{label}: {a} maps to unknown object {x}")
        for m, n in self.mmap.items():
            if not target.has_mor(n):
                raise StructureError(f"{label}: {m} maps to unknown morphism {n}")

    def ob(self, a: str) -> str:
        return self.omap[a]

    def mor(self, m: str) -> str:
        return self.mmap[m]

    def then(self, other: "FinFunctor") -> "FinFunctor":
        """other ∘ self (apply self first)."""
        if other.source is not self.target and other.source != self.target:
            raise StructureError(f"cannot compose {self.label} with {other.label}")
        return FinFunctor(
            self.source,
            other.target,
            {a: other.ob(x) for a, x in self.omap.items()},
            {m: other.mor(n) for m, n in self.mmap.items()},
            label=f"{other.label}∘{self.label}",
        )

    def is_identity(self) -> bool:
        return (
            self.source == self.target
            and all(a == x for a, x in self.omap.items())
            and all(m == n for m, n in self.mmap.items())
        )

    def is_isomorphism(self) -> bool:
        return (
            len(set(self.omap.values())) == self.source.n_objects == self.target.n_objects
            and len(set(self.mmap.values())) == self.source.n_morphisms == self.target.n_morphisms
        )

    def inverse_functor(self) -> "FinFunctor":
        if not self.is_isomorphism():
            raise StructureError(f"{self.label} is not an isomorphism of categories")
        return FinFunctor(
            self.target,
            self.source,
            {x: a for a, x in self.omap.items()},
            {n: m for m, n in self.mmap.items()},
            label=f"{self.label}⁻¹",
        )

    def injective_on_objects(self) -> bool:
        return len(set(self.omap.values())) == self.source.n_objects

    def bijective_on_objects(self) -> bool:
        return self.injective_on_objects() and len(self.omap) == self.target.n_objects

    def to_dict(self) -> dict:
        return {
            "source": self.source.to_dict(),
            "target": self.target.to_dict(),
            "omap": dict(self.omap),
            "mmap": dict(self.mmap),
        }

    @cached_property
    def key(self) -> str:
        return _canon_json(
            {
                "source": self.source.digest,
                "target": self.target.digest,
                "omap": self.omap,
                "mmap": self.mmap,
            }
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.omap == other.omap
            and self.mmap == other.mmap
        )

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"FinFunctor({self.label!r}: {self.source.label} -> {self.target.label})"


def identity_functor(cat: FinCat) -> FinFunctor:
    return FinFunctor(
        cat,
        cat,
        {a: a for a in cat.objects},
        {m.name: m.name for m in cat.morphisms},
        label=f"1_{cat.label}",
    )


def compose(outer: FinFunctor, inner: FinFunctor) -> FinFunctor:
    """outer ∘ inner."""
    return inner.then(outer)


def constant_functor(source: FinCat, target: FinCat, obj: str, label=None) -> FinFunctor:
    return FinFunctor(
        source,
        target,
        {a: obj for a in source.objects},
        {m.name: target.id_of(obj) for m in source.morphisms},
        label=label or f"const_{obj}",
    )


def validate_functor(F: FinFunctor) -> FinFunctor:
    """Check functor laws exhaustively; raises :class:`NotFunctorial`."""
    src, dst = F.source, F.target
    for m in src.morphisms:
        n = dst.mor(F.mor(m.name))
        if n.dom != F.ob(m.dom) or n.cod != F.ob(m.cod):
            raise NotFunctorial(
                f"{F.label}: image of {m.name} has wrong boundary", locus=m.name
            )
    for a in src.objects:
        if F.mor(src.id_of(a)) != dst.id_of(F.ob(a)):
            raise NotFunctorial(f"{F.label}: identity of {a} not preserved", locus=a)
    for g, f in src.composable_pairs():
        if F.mor(src.compose(g, f)) != dst.compose(F.mor(g), F.mor(f)):
            raise NotFunctorial(
                f"{F.label}: composition not preserved at ({g},{f})", locus=(g, f)
            )
    return F


# ---------------------------------------------------------------------------
# Natural transformations


class NatTrans:
    """A natural transformation between parallel functors, stored as a
    components table indexed by source objects."""

    def __init__(self, source: FinFunctor, target: FinFunctor, components, label: str = "nat"):
        self.source = source
        self.target = target
        self.components: dict[str, str] = dict(components)
        self.label = label
        if source.source != target.source or source.target != target.target:
            raise StructureError(f"{label}: functors are not parallel")
        if set(self.components) != set(source.source.objects):
            raise StructureError(f"{label}: components must cover exactly the source objects")
        cat = source.target
        for a, c in self.components.items():
            if not cat.has_mor(c):
                raise StructureError(f"{label}: component at {a} is not a morphism")

    @property
    def category(self) -> FinCat:
        """The category the components live in."""
        return self.source.target

    def component(self, obj: str) -> str:
        return self.components[obj]

    def then(self, other: "NatTrans") -> "NatTrans":
        """Vertical composite other ∘ self."""
        if other.source != self.target:
            raise StructureError("vertical composite of non-adjacent transformations")
        cat = self.category
        return NatTrans(
            self.source,
            other.target,
            {a: cat.compose(other.component(a), c) for a, c in self.components.items()},
            label=f"{other.label}∘{self.label}",
        )

    def is_identity(self) -> bool:
        cat = self.category
        return self.source == self.target and all(
            cat.is_identity(c) for c in self.components.values()
        )

    def is_invertible(self) -> bool:
        cat = self.category
        return all(cat.is_iso(c) for c in self.components.values())

    def inverse(self) -> "NatTrans":
        cat = self.category
        return NatTrans(
            self.target,
            self.source,
            {a: cat.inverse(c) for a, c in self.components.items()},
            label=f"{self.label}⁻¹",
        )

    def whisker_post(self, H: FinFunctor) -> "NatTrans":
        """H·t : H∘F ⇒ H∘G for H out of the target category."""
        return NatTrans(
            self.source.then(H),
            self.target.then(H),
            {a: H.mor(c) for a, c in self.components.items()},
            label=f"{H.label}·{self.label}",
        )

    def whisker_pre(self, W: FinFunctor) -> "NatTrans":
        """t·W : F∘W ⇒ G∘W for W into the source category."""
        return NatTrans(
            W.then(self.source),
            W.then(self.target),
            {x: self.components[W.ob(x)] for x in W.source.objects},
            label=f"{self.label}·{W.label}",
        )

    def to_dict(self) -> dict:
        return {
            "source": self.source.to_dict(),
            "target": self.target.to_dict(),
            "components": dict(self.components),
        }

    def __eq__(self, other) -> bool:
        if not isinstance(other, NatTrans):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.components == other.components
        )

    def __repr__(self):
        return f"NatTrans({self.label!r}: {self.source.label} => {self.target.label})"


def identity_nat(F: FinFunctor) -> NatTrans:
    cat = F.target
    return NatTrans(
        F, F, {a: cat.id_of(F.ob(a)) for a in F.source.objects}, label=f"id_{F.label}"
    )


def validate_transformation(t: NatTrans, invertible: bool = False) -> NatTrans:
    """Check boundaries and naturality; optionally require invertibility."""
    F, G = t.source, t.target
    cat = t.category
    for a in F.source.objects:
        c = cat.mor(t.component(a))
        if c.dom != F.ob(a) or c.cod != G.ob(a):
            raise NotNatural(a, "component has wrong boundary")
    for m in F.source.morphisms:
        left = cat.compose(G.mor(m.name), t.component(m.dom))
        right = cat.compose(t.component(m.cod), F.mor(m.name))
        if left != right:
            raise NotNatural(m.name, f"{left} != {right}")
    if invertible:
        for a in F.source.objects:
            if not cat.is_iso(t.component(a)):
                raise NotInvertible(a)
    return t


# ---------------------------------------------------------------------------
# Builtin categories


def _id_table(objects):
    return {a: f"id_{a}" for a in objects}


def _poset_cat(label, objects, nonid_arrows):
    """Category with at most one morphism per hom; arrows given as (name, dom, cod)."""
    morphisms = [Morphism(f"id_{a}", a, a) for a in objects]
    morphisms += [Morphism(*t) for t in nonid_arrows]
    arrow_of = {(m.dom, m.cod): m.name for m in morphisms}
    comp = {}
    for g in morphisms:
        for f in morphisms:
            if g.dom == f.cod:
                key = (f.dom, g.cod)
                if key not in arrow_of:
                    raise StructureError(f"{label}: missing composite arrow {key}")
                comp[(g.name, f.name)] = arrow_of[key]
    return FinCat(objects, morphisms, _id_table(objects), comp, label=label)


def terminal_category() -> FinCat:
    return _poset_cat("terminal", ["*"], [])


def discrete_category(n: int) -> FinCat:
    objs = [str(i) for i in range(n)]
    morphisms = [Morphism(f"id_{a}", a, a) for a in objs]
    comp = {(f"id_{a}", f"id_{a}"): f"id_{a}" for a in objs}
    return FinCat(objs, morphisms, _id_table(objs), comp, label=f"discrete({n})")


def arrow_category() -> FinCat:
    """The generic arrow 0 → 1."""
    return _poset_cat("arrow", ["0", "1"], [("a", "0", "1")])


def parallel_pair_category() -> FinCat:
    """The generic parallel pair of arrows 0 ⇉ 1."""
    objs = ["0", "1"]
    morphisms = [
        Morphism("id_0", "0", "0"),
        Morphism("id_1", "1", "1"),
        Morphism("a0", "0", "1"),
        Morphism("a1", "0", "1"),
    ]
    comp = {}
    for g in morphisms:
        for f in morphisms:
            if g.dom == f.cod:
                if f.name.startswith("id"):
                    comp[(g.name, f.name)] = g.name
                elif g.name.startswith("id"):
                    comp[(g.name, f.name)] = f.name
    return FinCat(objs, morphisms, _id_table(objs), comp, label="parallel_pair")


def free_iso_category() -> FinCat:
    """Two objects joined by a pair of mutually inverse morphisms."""
    objs = ["0", "1"]
    morphisms = [
        Morphism("id_0", "0", "0"),
        Morphism("id_1", "1", "1"),
        Morphism("to", "0", "1"),
        Morphism("fro", "1", "0"),
    ]
    comp = {
        ("id_0", "id_0"): "id_0",
        ("id_1", "id_1"): "id_1",
        ("to", "id_0"): "to",
        ("id_1", "to"): "to",
        ("fro", "id_1"): "fro",
        ("id_0", "fro"): "fro",
        ("fro", "to"): "id_0",
        ("to", "fro"): "id_1",
    }
    return FinCat(objs, morphisms, _id_table(objs), comp, label="free_iso")


def chaotic_category(n: int) -> FinCat:
    """n objects with exactly one morphism between each ordered pair."""
    objs = [str(i) for i in range(n)]
    morphisms = [Morphism(f"u{i}_{j}", str(i), str(j)) for i in range(n) for j in range(n)]
    comp = {}
    for g in morphisms:
        for f in morphisms:
            if g.dom == f.cod:
                comp[(g.name, f.name)] = f"u{f.dom}_{g.cod}"
    identity = {str(i): f"u{i}_{i}" for i in range(n)}
    return FinCat(objs, morphisms, identity, comp, label=f"chaotic({n})")


_PARAM_RE = re.compile(r"^(discrete|chaotic)\((\d+)\)$")


def builtin(name: str) -> FinCat:
    """Return a builtin category by name.

    Names: ``terminal``, ``discrete(n)``, ``two_discrete``, ``arrow``,
    ``parallel_pair``, ``free_iso``, ``chaotic(n)``.
    """
    fixed = {
        "terminal": terminal_category,
        "two_discrete": lambda: discrete_category(2).relabel("two_discrete"),
        "arrow": arrow_category,
        "parallel_pair": parallel_pair_category,
        "free_iso": free_iso_category,
    }
    if name in fixed:
        return validate_category(fixed[name]())
    m = _PARAM_RE.match(name.replace(" ", ""))
    if m:
        maker = discrete_category if m.group(1) == "discrete" else chaotic_category
        return validate_category(maker(int(m.group(2))))
    raise UnknownBuiltin(f"no builtin category named {name!r}")


def builtin_functor(name: str) -> FinFunctor:
    """Structural maps used throughout: the injective-on-objects generators
    and a few inclusions.

    Names: ``empty_to_terminal``, ``point_to_iso``, ``discrete_to_arrow``,
    ``collapse_parallel``, ``point_to_arrow_0``, ``point_to_arrow_1``.
    """
    if name == "empty_to_terminal":
        return FinFunctor(discrete_category(0), terminal_category(), {}, {}, label=name)
    if name == "point_to_iso":
        return FinFunctor(
            terminal_category(), free_iso_category(), {"*": "0"}, {"id_*": "id_0"}, label=name
        )
    if name == "discrete_to_arrow":
        return FinFunctor(
            discrete_category(2),
            arrow_category(),
            {"0": "0", "1": "1"},
            {"id_0": "id_0", "id_1": "id_1"},
            label=name,
        )
    if name == "collapse_parallel":
        return FinFunctor(
            parallel_pair_category(),
            arrow_category(),
            {"0": "0", "1": "1"},
            {"id_0": "id_0", "id_1": "id_1", "a0": "a", "a1": "a"},
            label=name,
        )
    if name in ("point_to_arrow_0", "point_to_arrow_1"):
        obj = name[-1]
        return FinFunctor(
            terminal_category(),
            arrow_category(),
            {"*": obj},
            {"id_*": f"id_{obj}"},
            label=name,
        )
    raise UnknownBuiltin(f"no builtin functor named {name!r}")


LEIBNIZ_GENERATORS = (
    "empty_to_terminal",
    "point_to_iso",
    "discrete_to_arrow",
    "collapse_parallel",
)


# ---------------------------------------------------------------------------
# Constrained enumeration (shared search engine)


def enumerate_functors(
    src: FinCat,
    dst: FinCat,
    omap_choices: Mapping[str, Sequence[str]] | None = None,
    mmap_choices: Mapping[str, Sequence[str]] | None = None,
    limit: int | None = None,
) -> Iterator[FinFunctor]:
    """Yield functors src → dst in deterministic index order.

    ``omap_choices`` / ``mmap_choices`` restrict the candidate images of
    particular objects / morphisms.  Identities are forced; composition is
    checked incrementally, so the search prunes early.
    """
    objs = src.objects
    nonid = [m for m in src.morphisms if not src.is_identity(m.name)]
    count = 0

    # identity-law pairs hold automatically in a lawful target; track the rest
    tracked_pairs = [
        (g, f, src.compose(g, f))
        for g, f in src.composable_pairs()
        if not (src.is_identity(g) or src.is_identity(f))
    ]

    def mor_candidates(m: Morphism, omap):
        base = dst.hom(omap[m.dom], omap[m.cod])
        if mmap_choices and m.name in mmap_choices:
            allowed = set(mmap_choices[m.name])
            return [c for c in base if c in allowed]
        return list(base)

    def assign_mors(omap, idx, assigned):
        nonlocal count
        if limit is not None and count >= limit:
            return
        if idx == len(nonid):
            count += 1
            mmap = {m.name: assigned[m.name] for m in src.morphisms}
            yield FinFunctor(src, dst, dict(omap), mmap)
            return
        m = nonid[idx]
        for cand in mor_candidates(m, omap):
            assigned[m.name] = cand
            ok = True
            for g, f, gf in tracked_pairs:
                if m.name not in (g, f, gf):
                    continue
                ig, iff, igf = assigned.get(g), assigned.get(f), assigned.get(gf)
                if ig is None or iff is None or igf is None:
                    continue
                if dst.compose(ig, iff) != igf:
                    ok = False
                    break
            if ok:
                yield from assign_mors(omap, idx + 1, assigned)
            del assigned[m.name]
            if limit is not None and count >= limit:
                return

    def assign_objs(idx, omap):
        if limit is not None and count >= limit:
            return
        if idx == len(objs):
            assigned = {src.id_of(a): dst.id_of(omap[a]) for a in objs}
            yield from assign_mors(omap, 0, assigned)
            return
        a = objs[idx]
        candidates = (
            omap_choices[a] if omap_choices and a in omap_choices else dst.objects
        )
        for x in candidates:
            omap[a] = x
            yield from assign_objs(idx + 1, omap)
            del omap[a]

    yield from assign_objs(0, {})


def enumerate_isomorphisms(
    A: FinCat,
    B: FinCat,
    omap_choices: Mapping[str, Sequence[str]] | None = None,
    mmap_choices: Mapping[str, Sequence[str]] | None = None,
    limit: int | None = None,
) -> Iterator[FinFunctor]:
    """Yield isomorphisms of categories A ≅ B, optionally constrained.

    Backtracks over object bijections (pruned by hom-count profiles) and
    morphism bijections (pruned by incremental composition checks), in
    index order.
    """
    if A.n_objects != B.n_objects or A.n_morphisms != B.n_morphisms:
        return

    def profile(cat: FinCat, a: str):
        outs = sorted(len(cat.hom(a, b)) for b in cat.objects)
        ins = sorted(len(cat.hom(b, a)) for b in cat.objects)
        return (len(cat.hom(a, a)), tuple(outs), tuple(ins))

    a_prof = {a: profile(A, a) for a in A.objects}
    b_prof = {b: profile(B, b) for b in B.objects}

    nonid = [m for m in A.morphisms if not A.is_identity(m.name)]
    tracked = [
        (g, f, A.compose(g, f))
        for g, f in A.composable_pairs()
        if not (A.is_identity(g) or A.is_identity(f))
    ]
    count = 0

    def assign_mors(omap, idx, assigned, used):
        nonlocal count
        if limit is not None and count >= limit:
            return
        if idx == len(nonid):
            count += 1
            mmap = {m.name: assigned[m.name] for m in A.morphisms}
            yield FinFunctor(A, B, dict(omap), mmap, label="iso")
            return
        m = nonid[idx]
        base = B.hom(omap[m.dom], omap[m.cod])
        if mmap_choices and m.name in mmap_choices:
            allowed = set(mmap_choices[m.name])
            base = [c for c in base if c in allowed]
        for cand in base:
            if cand in used:
                continue
            assigned[m.name] = cand
            used.add(cand)
            ok = True
            for g, f, gf in tracked:
                if m.name not in (g, f, gf):
                    continue
                ig, iff, igf = assigned.get(g), assigned.get(f), assigned.get(gf)
                if ig is None or iff is None or igf is None:
                    continue
                if B.compose(ig, iff) != igf:
                    ok = False
                    break
            if ok:
                yield from assign_mors(omap, idx + 1, assigned, used)
            used.discard(cand)
            del assigned[m.name]
            if limit is not None and count >= limit:
                return

    def assign_objs(idx, omap, taken):
        if limit is not None and count >= limit:
            return
        if idx == A.n_objects:
            assigned = {A.id_of(a): B.id_of(omap[a]) for a in A.objects}
            used = set(assigned.values())
            yield from assign_mors(omap, 0, assigned, used)
            return
        a = A.objects[idx]
        base = (
            omap_choices[a]
            if omap_choices and a in omap_choices
            else B.objects
        )
        for b in base:
            if b in taken or a_prof[a] != b_prof[b]:
                continue
            omap[a] = b
            taken.add(b)
            yield from assign_objs(idx + 1, omap, taken)
            taken.discard(b)
            del omap[a]

    yield from assign_objs(0, {}, set())


def find_isomorphism(
    A: FinCat,
    B: FinCat,
    omap_choices: Mapping[str, Sequence[str]] | None = None,
    mmap_choices: Mapping[str, Sequence[str]] | None = None,
) -> FinFunctor | None:
    """First isomorphism A ≅ B in index order, or None."""
    return next(enumerate_isomorphisms(A, B, omap_choices, mmap_choices, limit=1), None)


def enumerate_transformations(
    F: FinFunctor,
    G: FinFunctor,
    invertible_only: bool = False,
    limit: int | None = None,
) -> Iterator[NatTrans]:
    """Yield natural transformations F ⇒ G in deterministic order."""
    if F.source != G.source or F.target != G.target:
        raise StructureError("transformations need a parallel pair")
    cat = F.target
    objs = F.source.objects
    mors = [m for m in F.source.morphisms if not F.source.is_identity(m.name)]
    count = 0

    def candidates(a):
        base = cat.hom(F.ob(a), G.ob(a))
        if invertible_only:
            base = [c for c in base if cat.is_iso(c)]
        return base

    def natural_so_far(parts, m: Morphism):
        ca, cb = parts.get(m.dom), parts.get(m.cod)
        if ca is None or cb is None:
            return True
        return cat.compose(G.mor(m.name), ca) == cat.compose(cb, F.mor(m.name))

    def assign(idx, parts):
        nonlocal count
        if limit is not None and count >= limit:
            return
        if idx == len(objs):
            count += 1
            yield NatTrans(F, G, dict(parts))
            return
        a = objs[idx]
        for c in candidates(a):
            parts[a] = c
            if all(natural_so_far(parts, m) for m in mors if a in (m.dom, m.cod)):
                yield from assign(idx + 1, parts)
            del parts[a]
            if limit is not None and count >= limit:
                return

    yield from assign(0, {})
