"""Truncated simplicial sets, nerves of finite categories, and classifying
categories by bounded word rewriting.

Simplicial sets are truncated at dimension 3: nerves of categories are
2-coskeletal, and the classifying category depends only on dimensions up to
2, so nothing is lost at this scale.  The classifying category is computed
by congruence closure over composable words of generators up to a length
bound; a closure that fails to re-express every maximal-length word below
the bound raises ``BoundExceeded`` (which deliberately does not distinguish
"infinite" from "bound too small").
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .core import (
    BoundExceeded,
    FinCat,
    FinFunctor,
    Morphism,
    StructureError,
    find_isomorphism,
)
from .funcat import DEFAULT_BUDGET, functor_category

DEFAULT_WORD_BOUND = 4
TOP_DIM = 3


@dataclass
class TruncSSet:
    """A simplicial set truncated at dimension 3: simplex name lists per
    dimension plus face and degeneracy tables."""

    simplices: tuple[tuple[str, ...], ...]  # index = dimension, 0..3
    faces: dict[tuple[int, int], dict[str, str]]  # (dim, i): X_dim -> X_{dim-1}
    degeneracies: dict[tuple[int, int], dict[str, str]]  # (dim, i): X_dim -> X_{dim+1}
    label: str = "sset"

    def face(self, dim: int, i: int, s: str) -> str:
        return self.faces[(dim, i)][s]

    def degeneracy(self, dim: int, i: int, s: str) -> str:
        return self.degeneracies[(dim, i)][s]

    def dim_count(self, dim: int) -> int:
        return len(self.simplices[dim])

    def degenerate_names(self, dim: int) -> set[str]:
        """Simplices of the given dimension that are degeneracy images."""
        if dim == 0:
            return set()
        out = set()
        for i in range(dim):
            out.update(self.degeneracies[(dim - 1, i)].values())
        return out

    def nondegenerate(self, dim: int) -> tuple[str, ...]:
        degen = self.degenerate_names(dim)
        return tuple(s for s in self.simplices[dim] if s not in degen)

    def degeneracy_source(self, dim: int, s: str):
        """(i, t) with s = s_i(t), or None if s is nondegenerate."""
        if dim == 0:
            return None
        for i in range(dim):
            for t, img in self.degeneracies[(dim - 1, i)].items():
                if img == s:
                    return (i, t)
        return None

    def to_dict(self) -> dict:
        return {
            "simplices": [list(level) for level in self.simplices],
            "faces": {f"{d},{i}": dict(t) for (d, i), t in sorted(self.faces.items())},
            "degeneracies": {
                f"{d},{i}": dict(t) for (d, i), t in sorted(self.degeneracies.items())
            },
        }


def sset_from_dict(data: dict, label: str = "sset") -> TruncSSet:
    try:
        simplices = tuple(tuple(level) for level in data["simplices"])
        faces = {}
        for key, table in data["faces"].items():
            d, i = (int(part) for part in key.split(","))
            faces[(d, i)] = dict(table)
        degeneracies = {}
        for key, table in data["degeneracies"].items():
            d, i = (int(part) for part in key.split(","))
            degeneracies[(d, i)] = dict(table)
    except (KeyError, ValueError, TypeError) as exc:
        raise StructureError(f"malformed simplicial data: {exc}") from exc
    return TruncSSet(simplices, faces, degeneracies, label=label)


def validate_sset(X: TruncSSet) -> TruncSSet:
    """Check totality of the tables and all simplicial identities that fit
    inside the truncation."""
    if len(X.simplices) != TOP_DIM + 1:
        raise StructureError("expected simplex lists for dimensions 0..3")
    for dim in range(1, TOP_DIM + 1):
        for i in range(dim + 1):
            table = X.faces.get((dim, i))
            if table is None or set(table) != set(X.simplices[dim]):
                raise StructureError(f"face table ({dim},{i}) must cover dimension {dim}")
            for v in table.values():
                if v not in X.simplices[dim - 1]:
                    raise StructureError(f"face ({dim},{i}) lands outside dimension {dim-1}")
    for dim in range(0, TOP_DIM):
        for i in range(dim + 1):
            table = X.degeneracies.get((dim, i))
            if table is None or set(table) != set(X.simplices[dim]):
                raise StructureError(
                    f"degeneracy table ({dim},{i}) must cover dimension {dim}"
                )
            for v in table.values():
                if v not in X.simplices[dim + 1]:
                    raise StructureError(
                        f"degeneracy ({dim},{i}) lands outside dimension {dim+1}"
                    )
    # d_i d_j = d_{j-1} d_i for i < j
    for dim in range(2, TOP_DIM + 1):
        for j in range(dim + 1):
            for i in range(j):
                for s in X.simplices[dim]:
                    left = X.face(dim - 1, i, X.face(dim, j, s))
                    right = X.face(dim - 1, j - 1, X.face(dim, i, s))
                    if left != right:
                        raise StructureError(f"d{i} d{j} fails at {s} (dim {dim})")
    # s_i s_j = s_{j+1} s_i for i <= j
    for dim in range(0, TOP_DIM - 1):
        for j in range(dim + 1):
            for i in range(j + 1):
                for s in X.simplices[dim]:
                    left = X.degeneracy(dim + 1, i, X.degeneracy(dim, j, s))
                    right = X.degeneracy(dim + 1, j + 1, X.degeneracy(dim, i, s))
                    if left != right:
                        raise StructureError(f"s{i} s{j} fails at {s} (dim {dim})")
    # d_i s_j relations
    for dim in range(0, TOP_DIM):
        for j in range(dim + 1):
            for i in range(dim + 2):
                for s in X.simplices[dim]:
                    got = X.face(dim + 1, i, X.degeneracy(dim, j, s))
                    if i == j or i == j + 1:
                        want = s
                    elif i < j:
                        want = X.degeneracy(dim - 1, j - 1, X.face(dim, i, s))
                    else:
                        want = X.degeneracy(dim - 1, j, X.face(dim, i - 1, s))
                    if got != want:
                        raise StructureError(f"d{i} s{j} fails at {s} (dim {dim})")
    return X


# ---------------------------------------------------------------------------
# Standard simplices and products


def standard_simplex(k: int) -> TruncSSet:
    """Δ[k] truncated at dimension 3; simplices are monotone digit strings."""
    if not 0 <= k <= 9:
        raise StructureError("standard simplex parameter out of range")
    simplices = []
    for dim in range(TOP_DIM + 1):
        level = [
            "".join(str(v) for v in word)
            for word in iproduct(range(k + 1), repeat=dim + 1)
            if all(word[t] <= word[t + 1] for t in range(dim))
        ]
        simplices.append(tuple(level))
    faces = {}
    for dim in range(1, TOP_DIM + 1):
        for i in range(dim + 1):
            faces[(dim, i)] = {s: s[:i] + s[i + 1 :] for s in simplices[dim]}
    degeneracies = {}
    for dim in range(0, TOP_DIM):
        for i in range(dim + 1):
            degeneracies[(dim, i)] = {s: s[: i + 1] + s[i:] for s in simplices[dim]}
    return TruncSSet(tuple(simplices), faces, degeneracies, label=f"Δ[{k}]")


def sset_product(X: TruncSSet, Y: TruncSSet) -> TruncSSet:
    """Componentwise product, truncated at dimension 3."""
    simplices = tuple(
        tuple(f"({x},{y})" for x in X.simplices[dim] for y in Y.simplices[dim])
        for dim in range(TOP_DIM + 1)
    )
    pair = {}
    for dim in range(TOP_DIM + 1):
        for x in X.simplices[dim]:
            for y in Y.simplices[dim]:
                pair[(dim, f"({x},{y})")] = (x, y)
    faces = {}
    for dim in range(1, TOP_DIM + 1):
        for i in range(dim + 1):
            faces[(dim, i)] = {
                name: f"({X.face(dim, i, x)},{Y.face(dim, i, y)})"
                for name, (x, y) in ((n, pair[(dim, n)]) for n in simplices[dim])
            }
    degeneracies = {}
    for dim in range(0, TOP_DIM):
        for i in range(dim + 1):
            degeneracies[(dim, i)] = {
                name: f"({X.degeneracy(dim, i, x)},{Y.degeneracy(dim, i, y)})"
                for name, (x, y) in ((n, pair[(dim, n)]) for n in simplices[dim])
            }
    return TruncSSet(simplices, faces, degeneracies, label=f"{X.label}×{Y.label}")


# ---------------------------------------------------------------------------
# Nerve


def nerve_truncated(C: FinCat) -> TruncSSet:
    """Composable chains up to length 3, with composition faces and
    identity-insertion degeneracies."""
    chains1 = [(m.name,) for m in C.morphisms]
    chains2 = [
        (f, g)
        for f in (m.name for m in C.morphisms)
        for g in (m.name for m in C.morphisms)
        if C.cod(f) == C.dom(g)
    ]
    chains3 = [
        (f, g, h)
        for (f, g) in chains2
        for h in (m.name for m in C.morphisms)
        if C.cod(g) == C.dom(h)
    ]

    def name(chain):
        return "(" + ",".join(chain) + ")"

    simplices = (
        tuple(C.objects),
        tuple(name(c) for c in chains1),
        tuple(name(c) for c in chains2),
        tuple(name(c) for c in chains3),
    )
    faces: dict[tuple[int, int], dict[str, str]] = {}
    faces[(1, 0)] = {name((m.name,)): m.cod for m in C.morphisms}
    faces[(1, 1)] = {name((m.name,)): m.dom for m in C.morphisms}
    faces[(2, 0)] = {name(c): name((c[1],)) for c in chains2}
    faces[(2, 1)] = {name(c): name((C.compose(c[1], c[0]),)) for c in chains2}
    faces[(2, 2)] = {name(c): name((c[0],)) for c in chains2}
    faces[(3, 0)] = {name(c): name((c[1], c[2])) for c in chains3}
    faces[(3, 1)] = {name(c): name((C.compose(c[1], c[0]), c[2])) for c in chains3}
    faces[(3, 2)] = {name(c): name((c[0], C.compose(c[2], c[1]))) for c in chains3}
    faces[(3, 3)] = {name(c): name((c[0], c[1])) for c in chains3}
    degeneracies: dict[tuple[int, int], dict[str, str]] = {}
    degeneracies[(0, 0)] = {a: name((C.id_of(a),)) for a in C.objects}
    degeneracies[(1, 0)] = {
        name((m.name,)): name((C.id_of(m.dom), m.name)) for m in C.morphisms
    }
    degeneracies[(1, 1)] = {
        name((m.name,)): name((m.name, C.id_of(m.cod))) for m in C.morphisms
    }
    degeneracies[(2, 0)] = {
        name(c): name((C.id_of(C.dom(c[0])), c[0], c[1])) for c in chains2
    }
    degeneracies[(2, 1)] = {
        name(c): name((c[0], C.id_of(C.cod(c[0])), c[1])) for c in chains2
    }
    degeneracies[(2, 2)] = {
        name(c): name((c[0], c[1], C.id_of(C.cod(c[1])))) for c in chains2
    }
    return TruncSSet(simplices, faces, degeneracies, label=f"N({C.label})")


def coskeletal_filler_check(X: TruncSSet) -> bool:
    """Every boundary-compatible quadruple of 2-simplices has exactly one
    3-simplex filling it.  True for nerves; checked exhaustively."""
    by_faces = {}
    for s in X.simplices[3]:
        key = tuple(X.face(3, i, s) for i in range(4))
        by_faces.setdefault(key, []).append(s)
    if any(len(v) > 1 for v in by_faces.values()):
        return False

    lvl2 = X.simplices[2]
    idx = {}
    for t in lvl2:
        idx.setdefault((X.face(2, 2, t)), []).append(t)

    for f3 in lvl2:
        # d_2 f_2 = d_2 f_3
        for f2 in lvl2:
            if X.face(2, 2, f2) != X.face(2, 2, f3):
                continue
            for f1 in lvl2:
                if X.face(2, 1, f1) != X.face(2, 1, f2):
                    continue
                if X.face(2, 2, f1) != X.face(2, 1, f3):
                    continue
                for f0 in lvl2:
                    if X.face(2, 2, f0) != X.face(2, 0, f3):
                        continue
                    if X.face(2, 1, f0) != X.face(2, 0, f2):
                        continue
                    if X.face(2, 0, f0) != X.face(2, 0, f1):
                        continue
                    fillers = by_faces.get((f0, f1, f2, f3), [])
                    if len(fillers) != 1:
                        return False
    return True


# ---------------------------------------------------------------------------
# Classifying category by bounded congruence closure


@dataclass
class RewriteSystem:
    """A presentation extracted from a truncated simplicial set: generators
    are the nondegenerate 1-simplices; each 2-simplex contributes the
    relation (long edge) ~ (short edges composed); degenerate edges read as
    empty words.  Words are capped at ``bound``."""

    generators: tuple[str, ...]
    relations: tuple[tuple[str, tuple[str, ...], tuple[str, ...]], ...]
    bound: int
    endpoints: dict

    def check(self) -> "RewriteSystem":
        """Both sides of every relation must traverse the same endpoints."""

        def walk(anchor, gens):
            at = anchor
            for g in gens:
                dom, cod = self.endpoints[g]
                if dom != at:
                    raise StructureError(f"relation side breaks at {g}")
                at = cod
            return at

        for anchor, lhs, rhs in self.relations:
            if walk(anchor, lhs) != walk(anchor, rhs):
                raise StructureError(
                    f"relation sides at {anchor} have different endpoints"
                )
        return self


def rewrite_system(X: TruncSSet, bound: int = DEFAULT_WORD_BOUND) -> RewriteSystem:
    """The presentation the classifying category is computed from."""
    generators = tuple(X.nondegenerate(1))
    gen_set = set(generators)
    endpoints = {e: (X.face(1, 1, e), X.face(1, 0, e)) for e in generators}
    relations = []
    for sigma in X.simplices[2]:
        lhs = _edge_to_word(X, X.face(2, 2, sigma), gen_set) + _edge_to_word(
            X, X.face(2, 0, sigma), gen_set
        )
        rhs = _edge_to_word(X, X.face(2, 1, sigma), gen_set)
        anchor = X.face(1, 1, X.face(2, 2, sigma))
        if lhs != rhs:
            relations.append((anchor, lhs, rhs))
    return RewriteSystem(
        generators=generators,
        relations=tuple(relations),
        bound=bound,
        endpoints=endpoints,
    ).check()


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx


def _edge_to_word(X: TruncSSet, edge: str, generators: set[str]):
    """A 1-simplex as a path: a generator, or the empty path at its vertex."""
    if edge in generators:
        return (edge,)
    return ()


def classifying_category(
    X: TruncSSet, bound: int = DEFAULT_WORD_BOUND, label: str | None = None
) -> FinCat:
    """The category presented by the nondegenerate 1-simplices modulo the
    triangle relations of the 2-simplices, computed by congruence closure
    over words of length at most ``bound``.

    Raises :class:`BoundExceeded` when some maximal-length word has no
    shorter representative or when class composition escapes the bound.
    """
    cat, _ = _classifying_data(X, bound, label)
    return cat


def _classifying_data(
    X: TruncSSet, bound: int = DEFAULT_WORD_BOUND, label: str | None = None
):
    """(quotient category, word → morphism-name map)."""
    vertices = list(X.simplices[0])
    system = rewrite_system(X, bound)
    generators = list(system.generators)
    gen_dom = {e: dom for e, (dom, _) in system.endpoints.items()}
    gen_cod = {e: cod for e, (_, cod) in system.endpoints.items()}

    # enumerate typed words up to the bound
    words: list[tuple[str, tuple[str, ...]]] = [(v, ()) for v in vertices]
    frontier = list(words)
    for _ in range(bound):
        nxt = []
        for anchor, gens in frontier:
            at = gen_cod[gens[-1]] if gens else anchor
            for e in generators:
                if gen_dom[e] == at:
                    nxt.append((anchor, gens + (e,)))
        words.extend(nxt)
        frontier = nxt
    index = {w: i for i, w in enumerate(words)}
    uf = _UnionFind(len(words))

    def vertex_at(word, pos: int) -> str:
        anchor, gens = word
        return anchor if pos == 0 else gen_cod[gens[pos - 1]]

    relations = list(system.relations)

    def apply_rewrites(word_idx: int, word, src, dst, rel_anchor):
        anchor, gens = word
        m = len(src)
        for pos in range(len(gens) - m + 1):
            if tuple(gens[pos : pos + m]) != src:
                continue
            if vertex_at(word, pos) != rel_anchor:
                continue
            new = (anchor, gens[:pos] + dst + gens[pos + m :])
            if len(new[1]) <= bound:
                uf.union(word_idx, index[new])
        if m == 0:
            for pos in range(len(gens) + 1):
                if vertex_at(word, pos) != rel_anchor:
                    continue
                new = (anchor, gens[:pos] + dst + gens[pos:])
                if len(new[1]) <= bound:
                    uf.union(word_idx, index[new])

    for wi, word in enumerate(words):
        for rel_anchor, lhs, rhs in relations:
            if lhs:
                apply_rewrites(wi, word, lhs, rhs, rel_anchor)
            else:
                apply_rewrites(wi, word, (), rhs, rel_anchor)
            if rhs:
                apply_rewrites(wi, word, rhs, lhs, rel_anchor)
            else:
                apply_rewrites(wi, word, (), lhs, rel_anchor)

    # classes and shortest representatives
    classes: dict[int, list[int]] = {}
    for i in range(len(words)):
        classes.setdefault(uf.find(i), []).append(i)
    rep: dict[int, tuple[str, tuple[str, ...]]] = {}
    for root, members in classes.items():
        best = min(members, key=lambda i: (len(words[i][1]), i))
        rep[root] = words[best]
    for i, word in enumerate(words):
        if len(word[1]) == bound and bound > 0:
            if len(rep[uf.find(i)][1]) >= bound:
                raise BoundExceeded(
                    f"word {'.'.join(word[1])} has no representative shorter than the bound {bound}"
                )

    def word_name(word) -> str:
        anchor, gens = word
        return f"[{'·'.join(gens)}]" if gens else f"id@{anchor}"

    def word_endpoints(word):
        anchor, gens = word
        return anchor, (gen_cod[gens[-1]] if gens else anchor)

    roots = sorted(rep, key=lambda r: (index[rep[r]],))
    morphisms = []
    names = {}
    for root in roots:
        w = rep[root]
        dom, cod = word_endpoints(w)
        nm = word_name(w)
        morphisms.append(Morphism(nm, dom, cod))
        names[root] = nm
    identity = {}
    for v in vertices:
        identity[v] = names[uf.find(index[(v, ())])]
    comp = {}
    for r1 in roots:
        w1 = rep[r1]
        d1, c1 = word_endpoints(w1)
        for r2 in roots:
            w2 = rep[r2]
            d2, c2 = word_endpoints(w2)
            if c2 != d1:
                continue
            glued = (w2[0], w2[1] + w1[1])
            if len(glued[1]) > bound:
                raise BoundExceeded(
                    f"composite of {word_name(w2)} and {word_name(w1)} escapes the bound {bound}"
                )
            comp[(names[r1], names[r2])] = names[uf.find(index[glued])]
    cat = FinCat(
        vertices,
        morphisms,
        identity,
        comp,
        label=label or f"Π({X.label})",
    )
    class_of_word = {w: names[uf.find(i)] for w, i in index.items()}
    return cat, class_of_word


def classifying_functor(
    smap: dict, X: TruncSSet, Y: TruncSSet, bound: int = DEFAULT_WORD_BOUND
) -> FinFunctor:
    """The functor between classifying categories induced by a truncated
    simplicial map (given as {(dim, name): name})."""
    PX, x_classes = _classifying_data(X, bound)
    PY, y_classes = _classifying_data(Y, bound)
    ygens = set(Y.nondegenerate(1))

    def push(mor_name: str, dom: str) -> str:
        if mor_name.startswith("id@"):
            word = ()
        else:
            word = tuple(mor_name[1:-1].split("·"))
        image = tuple(g for g in (smap[(1, g)] for g in word) if g in ygens)
        return y_classes[(smap[(0, dom)], image)]

    omap = {v: smap[(0, v)] for v in PX.objects}
    mmap = {m.name: push(m.name, m.dom) for m in PX.morphisms}
    from .core import validate_functor

    return validate_functor(FinFunctor(PX, PY, omap, mmap, label="Π(map)"))


# ---------------------------------------------------------------------------
# Truncated simplicial maps and the powers comparison


def truncated_sset_maps(Z: TruncSSet, W: TruncSSet, limit=None):
    """All maps of truncated simplicial sets Z → W, as dicts
    {(dim, simplex): simplex}.  Degenerate simplices are forced; the rest
    backtrack over face-compatible candidates."""
    slots = []
    degeneracy_of = {}
    for dim in range(TOP_DIM + 1):
        for s in Z.simplices[dim]:
            slots.append((dim, s))
            degeneracy_of[(dim, s)] = Z.degeneracy_source(dim, s)

    w_index: dict[int, dict[tuple, list[str]]] = {}
    for dim in range(1, TOP_DIM + 1):
        table: dict[tuple, list[str]] = {}
        for w in W.simplices[dim]:
            key = tuple(W.face(dim, i, w) for i in range(dim + 1))
            table.setdefault(key, []).append(w)
        w_index[dim] = table

    results = []

    def candidates(dim, s, assigned):
        source = degeneracy_of[(dim, s)]
        if source is not None:
            i, t = source
            return [W.degeneracy(dim - 1, i, assigned[(dim - 1, t)])]
        if dim == 0:
            return list(W.simplices[0])
        wanted = tuple(assigned[(dim - 1, Z.face(dim, i, s))] for i in range(dim + 1))
        return w_index[dim].get(wanted, [])

    def rec(k, assigned):
        if limit is not None and len(results) >= limit:
            return
        if k == len(slots):
            results.append(dict(assigned))
            return
        dim, s = slots[k]
        for w in candidates(dim, s, assigned):
            assigned[(dim, s)] = w
            rec(k + 1, assigned)
            del assigned[(dim, s)]
            if limit is not None and len(results) >= limit:
                return

    rec(0, {})
    return results


def _leveled_from_sset(X: TruncSSet, dim: int):
    """(levels, faces, degens) of a truncated sset restricted to ≤ dim."""
    levels = [list(X.simplices[d]) for d in range(dim + 1)]
    faces = {
        (d, i): dict(X.faces[(d, i)]) for d in range(1, dim + 1) for i in range(d + 1)
    }
    degens = {
        (d, i): dict(X.degeneracies[(d, i)]) for d in range(dim) for i in range(d + 1)
    }
    return levels, faces, degens


def _hom_sset_leveled(X: TruncSSet, NY: TruncSSet, dim: int):
    """The hom simplicial set [X, NY] up to the given dimension: level k is
    the set of maps Δ[k]×X → NY; faces/degeneracies act by precomposition
    with the (co)face maps of the simplex factor."""
    deltas = [standard_simplex(k) for k in range(dim + 1)]
    products = [sset_product(deltas[k], X) for k in range(dim + 1)]
    level_maps = [truncated_sset_maps(products[k], NY) for k in range(dim + 1)]

    def key_of(mapping):
        return tuple(sorted((f"{d}:{s}", v) for (d, s), v in mapping.items()))

    names: list[list[str]] = []
    lookup: list[dict] = []
    for k in range(dim + 1):
        lvl_names, lvl_lookup = [], {}
        for j, mapping in enumerate(level_maps[k]):
            nm = f"T{k}_{j}"
            lvl_names.append(nm)
            lvl_lookup[key_of(mapping)] = nm
        names.append(lvl_names)
        lookup.append(lvl_lookup)

    def monotone_precompose(mapping, k_from, word_map):
        """Precompose a map Δ[k]×X → NY with (word-induced)×1 where
        word_map sends each digit-string simplex of Δ[k_from] to one of
        Δ[k]."""
        Zfrom = products[k_from]
        out = {}
        for d in range(TOP_DIM + 1):
            for s in Zfrom.simplices[d]:
                alpha, x = _split_pair(s)
                out[(d, s)] = mapping[(d, f"({word_map(alpha)},{x})")]
        return out

    faces = {}
    degens = {}
    for k in range(1, dim + 1):
        for i in range(k + 1):
            table = {}
            for j, mapping in enumerate(level_maps[k]):

                def coface(alpha, i=i):
                    return "".join(
                        str(int(ch) + 1) if int(ch) >= i else ch for ch in alpha
                    )

                moved = monotone_precompose(mapping, k - 1, coface)
                table[f"T{k}_{j}"] = lookup[k - 1][key_of(moved)]
            faces[(k, i)] = table
    for k in range(0, dim):
        for i in range(k + 1):
            table = {}
            for j, mapping in enumerate(level_maps[k]):

                def codegen(alpha, i=i):
                    return "".join(
                        str(int(ch) - 1) if int(ch) > i else ch for ch in alpha
                    )

                moved = monotone_precompose(mapping, k + 1, codegen)
                table[f"T{k}_{j}"] = lookup[k + 1][key_of(moved)]
            degens[(k, i)] = table
    return names, faces, degens


def _split_pair(name: str):
    depth = 0
    for i, ch in enumerate(name):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 1:
            return name[1:i], name[i + 1 : -1]
    raise StructureError(f"not a pair name: {name}")


def _leveled_iso(levels1, faces1, degens1, levels2, faces2, degens2, dim: int):
    """Backtracking isomorphism of leveled systems respecting faces and
    degeneracies within range."""
    if any(len(levels1[d]) != len(levels2[d]) for d in range(dim + 1)):
        return None

    assign = {}

    def compatible(d, a, b):
        for i in range(d + 1):
            if d >= 1:
                fa = faces1[(d, i)][a]
                fb = faces2[(d, i)][b]
                if assign.get((d - 1, fa)) != fb:
                    return False
        return True

    def rec(d, k, used):
        if d > dim:
            # degeneracy tables must also match
            for (dd, i), table in degens1.items():
                if dd + 1 > dim:
                    continue
                for s, v in table.items():
                    if assign[(dd + 1, v)] != degens2[(dd, i)][assign[(dd, s)]]:
                        return None
            return dict(assign)
        if k == len(levels1[d]):
            return rec(d + 1, 0, set())
        a = levels1[d][k]
        for b in levels2[d]:
            if (d, b) in used:
                continue
            if not compatible(d, a, b):
                continue
            assign[(d, a)] = b
            used.add((d, b))
            res = rec(d, k + 1, used)
            if res is not None:
                return res
            used.discard((d, b))
            del assign[(d, a)]
        return None

    return rec(0, 0, set())


@dataclass
class PowersReport:
    """Comparison of the hom simplicial set [X, NY] with the nerve of the
    functor category out of the classifying category of X."""

    dims: int
    left_counts: tuple[int, ...]
    right_counts: tuple[int, ...]
    bijection: dict | None

    @property
    def bijection_found(self) -> bool:
        return self.bijection is not None

    @property
    def ok(self) -> bool:
        return self.left_counts == self.right_counts and self.bijection_found

    def to_dict(self) -> dict:
        return {
            "dims": self.dims,
            "left_counts": list(self.left_counts),
            "right_counts": list(self.right_counts),
            "bijection_found": self.bijection_found,
            "bijection": (
                {f"{d}:{a}": b for (d, a), b in sorted(self.bijection.items())}
                if self.bijection is not None
                else None
            ),
        }


def check_powers_iso(
    X: TruncSSet,
    Y: FinCat,
    dim: int = 2,
    word_bound: int = DEFAULT_WORD_BOUND,
    budget: int = DEFAULT_BUDGET,
) -> PowersReport:
    """Compare [X, N Y] with N [Π X, Y] up to the given dimension (≤ 2),
    looking for a bijection compatible with all faces and degeneracies."""
    if dim > 2:
        raise StructureError("comparison is supported up to dimension 2")
    NY = nerve_truncated(Y)
    left_levels, left_faces, left_degens = _hom_sset_leveled(X, NY, dim)
    PX = classifying_category(X, word_bound)
    fc = functor_category(PX, Y, budget)
    right = nerve_truncated(fc)
    right_levels, right_faces, right_degens = _leveled_from_sset(right, dim)
    iso = _leveled_iso(
        left_levels, left_faces, left_degens, right_levels, right_faces, right_degens, dim
    )
    return PowersReport(
        dims=dim,
        left_counts=tuple(len(level) for level in left_levels),
        right_counts=tuple(len(level) for level in right_levels),
        bijection=iso,
    )
