"""Finite-subset-space functors applied levelwise, and their filtrations.

For a based space X the n-th subset space has, at level k, the nonempty
subsets of X's level-k table of size at most n; faces and degeneracies
act elementwise (faces may merge elements, so cardinality can drop).
Variants: subsets containing the basepoint (``exp_based``) and the
quotient by them (``exp_bar``); successive quotients of either chain
model the one-point compactified configuration spaces (``conf_plus``).

Subset keys are sorted index tuples; each level table is ordered
lexicographically, which makes all constructions deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .simplicial import (
    BasedSimplicialSet,
    SimplexRef,
    SimplicialMap,
    SimplicialSet,
    quotient,
    underlying,
)

DEFAULT_LEVEL_CEILING = 5_000_000


class BudgetError(RuntimeError):
    """A construction would exceed the configured simplex-count ceiling."""


def _level_count(m: int, n: int, based: bool) -> int:
    if based:
        return sum(comb(m - 1, j) for j in range(min(n - 1, m - 1) + 1))
    return sum(comb(m, j) for j in range(1, min(n, m) + 1))


def _check_budget(x, n: int, trunc: int, based: bool, ceiling: int) -> None:
    for k in range(trunc + 1):
        count = _level_count(x.level_size(k), n, based)
        if count > ceiling:
            kind = "based subset" if based else "subset"
            raise BudgetError(
                f"{kind} space with n={n} needs {count} simplices at level {k}, "
                f"over the ceiling of {ceiling}; raise the budget or lower trunc")


class _SubsetSpace:
    """A subset space together with its key tables and index dicts."""

    def __init__(self, space: BasedSimplicialSet,
                 tables: list[list[tuple[int, ...]]],
                 index: list[dict[tuple[int, ...], int]]):
        self.space = space
        self.tables = tables
        self.index = index


def _build_subset_space(x: BasedSimplicialSet, n: int, trunc: int,
                        based_only: bool, ceiling: int,
                        with_labels: bool) -> _SubsetSpace:
    xs = underlying(x)
    _check_budget(x, n, trunc, based_only, ceiling)
    tables: list[list[tuple[int, ...]]] = []
    index: list[dict[tuple[int, ...], int]] = []
    for k in range(trunc + 1):
        m = xs.levels[k]
        if based_only:
            bp = x.basepoint_at(k)
            others = [i for i in range(m) if i != bp]
            subs = [tuple(sorted((bp,) + rest))
                    for j in range(min(n - 1, len(others)) + 1)
                    for rest in combinations(others, j)]
        else:
            subs = [rest for j in range(1, min(n, m) + 1)
                    for rest in combinations(range(m), j)]
        subs.sort()
        tables.append(subs)
        index.append({s: i for i, s in enumerate(subs)})
    levels = [len(t) for t in tables]
    faces = [None] * (trunc + 1)
    degeneracies = [None] * (trunc + 1)
    for k in range(1, trunc + 1):
        idx = index[k - 1]
        maps = []
        for i in range(k + 1):
            fmap_x = xs.faces[k][i]
            fmap = [idx[tuple(sorted({fmap_x[e] for e in s}))] for s in tables[k]]
            maps.append(fmap)
        faces[k] = maps
    for k in range(trunc):
        idx = index[k + 1]
        maps = []
        for j in range(k + 1):
            smap_x = xs.degeneracies[k][j]
            smap = [idx[tuple(sorted(smap_x[e] for e in s))] for s in tables[k]]
            maps.append(smap)
        degeneracies[k] = maps
    labels = None
    if with_labels and xs.labels is not None:
        labels = [["{" + ",".join(xs.labels[k][e] for e in s) + "}" for s in tables[k]]
                  for k in range(trunc + 1)]
    space = SimplicialSet(trunc, levels, faces, degeneracies, labels)
    bp0 = index[0][(x.basepoint.index,)]
    return _SubsetSpace(BasedSimplicialSet(space, SimplexRef(0, bp0)),
                        tables, index)


def _resolve_trunc(x: BasedSimplicialSet, trunc) -> int:
    if trunc is None:
        return x.trunc
    if trunc > x.trunc:
        raise ValueError(f"trunc {trunc} exceeds underlying truncation {x.trunc}")
    return trunc


def exp(x: BasedSimplicialSet, n: int, trunc=None, *,
        ceiling: int = DEFAULT_LEVEL_CEILING,
        with_labels: bool = False) -> BasedSimplicialSet:
    """Subset space of at most n points, based at the basepoint singleton.

    For n=1 the result is the identity relabeling of x.
    """
    if n < 1:
        raise ValueError("subset spaces need n >= 1")
    trunc = _resolve_trunc(x, trunc)
    return _build_subset_space(x, n, trunc, False, ceiling, with_labels).space


def exp_based(x: BasedSimplicialSet, n: int, trunc=None, *,
              ceiling: int = DEFAULT_LEVEL_CEILING,
              with_labels: bool = False
              ) -> tuple[BasedSimplicialSet, SimplicialMap]:
    """Subsets containing the basepoint, with the inclusion into exp(x, n).

    Closed under faces since every face of the totally degenerate
    basepoint simplex is again one.
    """
    if n < 1:
        raise ValueError("subset spaces need n >= 1")
    trunc = _resolve_trunc(x, trunc)
    based = _build_subset_space(x, n, trunc, True, ceiling, with_labels)
    full = _build_subset_space(x, n, trunc, False, ceiling, with_labels)
    maps = [[full.index[k][s] for s in based.tables[k]] for k in range(trunc + 1)]
    incl = SimplicialMap(based.space, full.space, maps)
    return based.space, incl


def exp_bar(x: BasedSimplicialSet, n: int, trunc=None, *,
            ceiling: int = DEFAULT_LEVEL_CEILING,
            with_labels: bool = False
            ) -> tuple[BasedSimplicialSet, SimplicialMap]:
    """Quotient of exp(x, n) by the basepoint-containing subsets, with the
    quotient map."""
    if n < 1:
        raise ValueError("subset spaces need n >= 1")
    trunc = _resolve_trunc(x, trunc)
    full = _build_subset_space(x, n, trunc, False, ceiling, with_labels)
    based = _build_subset_space(x, n, trunc, True, ceiling, with_labels)
    maps = [[full.index[k][s] for s in based.tables[k]] for k in range(trunc + 1)]
    incl = SimplicialMap(based.space, full.space, maps)
    return quotient(full.space, incl)


def conf_plus(x: BasedSimplicialSet, n: int, model: str = "based", trunc=None, *,
              ceiling: int = DEFAULT_LEVEL_CEILING) -> BasedSimplicialSet:
    """One-point compactified configuration space of n points in x minus
    its basepoint, as a quotient of either subset-space chain.

    model="based": exp_based(x, n+1) / exp_based(x, n);
    model="bar":   exp_bar(x, n) / exp_bar(x, n-1)  (for n=1, exp_bar(x, 1)).
    """
    if n < 1:
        raise ValueError("configuration spaces need n >= 1")
    trunc = _resolve_trunc(x, trunc)
    if model == "based":
        big = _build_subset_space(x, n + 1, trunc, True, ceiling, False)
        small = _build_subset_space(x, n, trunc, True, ceiling, False)
        maps = [[big.index[k][s] for s in small.tables[k]] for k in range(trunc + 1)]
        incl = SimplicialMap(small.space, big.space, maps)
        space, _ = quotient(big.space, incl)
        return space
    if model == "bar":
        t = tower(x, n, "bar", trunc=trunc, ceiling=ceiling)
        if n == 1:
            return t.spaces[0]
        space, _ = quotient(t.spaces[n - 1], t.inclusions[n - 2])
        return space
    raise ValueError(f"unknown conf_plus model {model!r}")


@dataclass
class FiltrationTower:
    """Nested spaces 1..n with basepoint-preserving inclusions.

    spaces[i] holds stage i+1; inclusions[i] maps stage i+1 into stage
    i+2.  The composite inclusion between any two stages is available
    through :meth:`inclusion`.
    """

    variant: str
    spaces: list[BasedSimplicialSet]
    inclusions: list[SimplicialMap] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.spaces)

    def stage(self, k: int) -> BasedSimplicialSet:
        """Stage k, 1-indexed."""
        return self.spaces[k - 1]

    def inclusion(self, i: int, j: int) -> SimplicialMap:
        """Composite inclusion of stage i into stage j (1-indexed, i <= j)."""
        if not 1 <= i <= j <= self.n:
            raise ValueError("stages out of range")
        if i == j:
            from .simplicial import identity_map
            return identity_map(self.spaces[i - 1])
        m = self.inclusions[i - 1]
        for t in range(i, j - 1):
            m = m.compose(self.inclusions[t])
        return m


def tower(x: BasedSimplicialSet, n: int, variant: str = "bar", trunc=None, *,
          ceiling: int = DEFAULT_LEVEL_CEILING) -> FiltrationTower:
    """Filtration by number of points, in the requested variant.

    "exp": exp_1 x in exp_2 x in ... ; "based": the basepoint-containing
    chain; "bar": the chain of quotients, whose successive cofibers are
    the compactified configuration spaces.
    """
    if n < 1:
        raise ValueError("towers need n >= 1")
    trunc = _resolve_trunc(x, trunc)
    if variant in ("exp", "based"):
        based_only = variant == "based"
        stages = [_build_subset_space(x, k, trunc, based_only, ceiling, False)
                  for k in range(1, n + 1)]
        spaces = [st.space for st in stages]
        inclusions = []
        for k in range(n - 1):
            nxt = stages[k + 1]
            maps = [[nxt.index[lev][s] for s in stages[k].tables[lev]]
                    for lev in range(trunc + 1)]
            inclusions.append(SimplicialMap(spaces[k], spaces[k + 1], maps))
        return FiltrationTower(variant, spaces, inclusions)
    if variant == "bar":
        spaces = []
        keymaps = []  # per stage: level -> {subset key: class index}
        for k in range(1, n + 1):
            full = _build_subset_space(x, k, trunc, False, ceiling, False)
            based = _build_subset_space(x, k, trunc, True, ceiling, False)
            maps = [[full.index[lev][s] for s in based.tables[lev]]
                    for lev in range(trunc + 1)]
            incl = SimplicialMap(based.space, full.space, maps)
            space, qmap = quotient(full.space, incl)
            spaces.append(space)
            keymaps.append([
                {s: qmap.maps[lev][full.index[lev][s]] for s in full.tables[lev]}
                for lev in range(trunc + 1)])
        inclusions = []
        for k in range(n - 1):
            src, dst = spaces[k], spaces[k + 1]
            km_src, km_dst = keymaps[k], keymaps[k + 1]
            maps = []
            for lev in range(trunc + 1):
                mp = [dst.basepoint_at(lev)] * src.level_size(lev)
                for s, cls in km_src[lev].items():
                    if cls != src.basepoint_at(lev):
                        mp[cls] = km_dst[lev][s]
                maps.append(mp)
            inclusions.append(SimplicialMap(src, dst, maps))
        return FiltrationTower(variant, spaces, inclusions)
    raise ValueError(f"unknown tower variant {variant!r}")
