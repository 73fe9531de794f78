"""Shared test helpers: random subcomplexes and hand-built spaces."""

from finsub.simplicial import SimplicialMap, SimplicialSet, underlying


def make_random_subcomplex(space, rng, p=0.3):
    """Random subcomplex: seed simplices, close under faces and
    degeneracies, return (subspace, inclusion map)."""
    xs = underlying(space)
    chosen = [set() for _ in range(xs.trunc + 1)]
    chosen[0].add(0)
    for k in range(xs.trunc + 1):
        for s in range(xs.levels[k]):
            if rng.random() < p:
                chosen[k].add(s)
    changed = True
    while changed:
        changed = False
        for k in range(1, xs.trunc + 1):
            for s in list(chosen[k]):
                for i in range(k + 1):
                    t = xs.face(k, i, s)
                    if t not in chosen[k - 1]:
                        chosen[k - 1].add(t)
                        changed = True
        for k in range(xs.trunc):
            for s in list(chosen[k]):
                for j in range(k + 1):
                    t = xs.degeneracy(k, j, s)
                    if t not in chosen[k + 1]:
                        chosen[k + 1].add(t)
                        changed = True
    tables = [sorted(chosen[k]) for k in range(xs.trunc + 1)]
    index = [{s: i for i, s in enumerate(tab)} for tab in tables]
    levels = [len(t) for t in tables]
    faces = [None] * (xs.trunc + 1)
    degeneracies = [None] * (xs.trunc + 1)
    for k in range(1, xs.trunc + 1):
        faces[k] = [[index[k - 1][xs.face(k, i, s)] for s in tables[k]]
                    for i in range(k + 1)]
    for k in range(xs.trunc):
        degeneracies[k] = [[index[k + 1][xs.degeneracy(k, j, s)] for s in tables[k]]
                           for j in range(k + 1)]
    sub = SimplicialSet(xs.trunc, levels, faces, degeneracies)
    return sub, SimplicialMap(sub, space, tables)
