"""Independent brute-force oracles used to cross-check the library.

Everything here is written directly against the raw tables, with no calls
into the construction code it checks.
"""
from itertools import product

from fincat.core import FinCat, FinFunctor


def scan_associativity(cat: FinCat):
    """Return the first violating triple (h, g, f) or None."""
    for h in cat.morphisms:
        for g in cat.morphisms:
            if h.dom != g.cod:
                continue
            for f in cat.morphisms:
                if g.dom != f.cod:
                    continue
                left = cat.comp[(h.name, cat.comp[(g.name, f.name)])]
                right = cat.comp[(cat.comp[(h.name, g.name)], f.name)]
                if left != right:
                    return (h.name, g.name, f.name)
    return None


def brute_force_functors(src: FinCat, dst: FinCat):
    """Enumerate all functors src → dst by unpruned exhaustion."""
    objs = list(src.objects)
    mors = [m for m in src.morphisms]
    found = []
    for images in product(dst.objects, repeat=len(objs)):
        omap = dict(zip(objs, images))
        candidate_lists = []
        for m in mors:
            candidate_lists.append(
                [n.name for n in dst.morphisms if n.dom == omap[m.dom] and n.cod == omap[m.cod]]
            )
        for picks in product(*candidate_lists):
            mmap = {m.name: p for m, p in zip(mors, picks)}
            if any(mmap[src.id_of(a)] != dst.id_of(omap[a]) for a in objs):
                continue
            ok = True
            for g in mors:
                for f in mors:
                    if g.dom != f.cod:
                        continue
                    if mmap[src.comp[(g.name, f.name)]] != dst.comp[(mmap[g.name], mmap[f.name])]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                found.append(FinFunctor(src, dst, omap, mmap))
    return found


def is_fully_faithful_bf(F: FinFunctor) -> bool:
    A, B = F.source, F.target
    for a in A.objects:
        for a2 in A.objects:
            images = [F.mmap[m] for m in A.hom(a, a2)]
            if len(set(images)) != len(images):
                return False
            if set(images) != set(B.hom(F.omap[a], F.omap[a2])):
                return False
    return True


def is_essentially_surjective_bf(F: FinFunctor) -> bool:
    A, B = F.source, F.target
    image_classes = set()
    for a in A.objects:
        image_classes.add(F.omap[a])
    for b in B.objects:
        hit = False
        for x in image_classes:
            for m in B.hom(x, b):
                if B.is_iso(m):
                    hit = True
                    break
            if hit:
                break
        if not hit:
            return False
    return True


def is_equivalence_bf(F: FinFunctor) -> bool:
    return is_fully_faithful_bf(F) and is_essentially_surjective_bf(F)


def brute_force_nat_transformations(F, G):
    """All natural transformations F ⇒ G by unpruned exhaustion."""
    cat = F.target
    objs = list(F.source.objects)
    candidate_lists = [list(cat.hom(F.omap[a], G.omap[a])) for a in objs]
    out = []
    for picks in product(*candidate_lists):
        parts = dict(zip(objs, picks))
        ok = True
        for m in F.source.morphisms:
            if cat.comp[(G.mmap[m.name], parts[m.dom])] != cat.comp[(parts[m.cod], F.mmap[m.name])]:
                ok = False
                break
        if ok:
            out.append(parts)
    return out
