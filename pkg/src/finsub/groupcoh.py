"""Cohomology of symmetric groups with integral coefficients.

H^r(S_n, M) for M the trivial module Z or the sign module, computed
from the normalized bar resolution: degree-r cochains are Z-valued
functions on r-tuples of non-identity group elements, the coboundary is
the usual alternating sum with the module action twisting the first
slot.  Group elements are enumerated in lexicographic one-line order.

This is deliberately the dumbest correct resolution; the basis grows
like (n!-1)^r, so a budget guard refuses degrees that would not fit.
The default ceiling admits S_4 through degree 2 (cohomology at degree r
materializes the degree r+1 tuple table); raising it is an explicit
opt-in to very large eliminations.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product

from .homology import ChainComplex, HomologyGroup, homology
from .snf import SparseIntMatrix

DEFAULT_BASIS_CEILING = 100_000

TRIVIAL = "trivial"
SIGN = "sign"


class ResourceError(RuntimeError):
    """The bar resolution would exceed the configured basis ceiling."""


@dataclass(frozen=True)
class Permutation:
    """Permutation of {0..n-1} in one-line notation."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"{self.images} is not a permutation")

    @property
    def n(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (self * other)(i) = self(other(i))."""
        return Permutation(tuple(self.images[other.images[i]] for i in range(self.n)))

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images))

    def sign(self) -> int:
        seen = [False] * self.n
        sgn = 1
        for i in range(self.n):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = self.images[j]
                length += 1
            if length % 2 == 0:
                sgn = -sgn
        return sgn


@dataclass(frozen=True)
class CoefficientAction:
    """How S_n acts on the coefficient group Z."""

    kind: str

    def __post_init__(self):
        if self.kind not in (TRIVIAL, SIGN):
            raise ValueError(f"unknown action {self.kind!r}")

    def scalar(self, g: Permutation) -> int:
        return g.sign() if self.kind == SIGN else 1


def symmetric_group(n: int) -> list[Permutation]:
    """All of S_n, lexicographic in one-line notation."""
    if n < 1:
        raise ValueError("need n >= 1")
    return [Permutation(p) for p in permutations(range(n))]


def bar_cochain_complex(n: int, action: CoefficientAction, maxdeg: int,
                        ceiling: int = DEFAULT_BASIS_CEILING) -> ChainComplex:
    """Normalized bar cochain complex of S_n through degree maxdeg.

    Degrees 0..maxdeg+1 are materialized so that cohomology at maxdeg
    has both coboundaries; degree r has (n!-1)^r basis tuples.
    """
    if maxdeg < 0:
        raise ValueError("maxdeg must be non-negative")
    elements = symmetric_group(n)
    nontriv = [g for g in elements if not g.is_identity()]
    m = len(nontriv)
    top = maxdeg + 1
    if m ** top > ceiling:
        raise ResourceError(
            f"bar resolution for S_{n} at degree {top} needs {m ** top} "
            f"basis tuples, over the ceiling of {ceiling}")
    tuples: list[list[tuple[Permutation, ...]]] = [
        [tuple(t) for t in product(nontriv, repeat=r)] for r in range(top + 1)]
    index = [{t: i for i, t in enumerate(tab)} for tab in tuples]
    dims = [len(tab) for tab in tuples]
    scalars = {g: action.scalar(g) for g in nontriv}
    prod_table = {(a, b): a * b for a in nontriv for b in nontriv}
    boundary: list[SparseIntMatrix] = [SparseIntMatrix(dims[0], 0)]
    for r in range(top):
        # delta_r : C^r -> C^{r+1}, assembled row by row over (r+1)-tuples
        mat = SparseIntMatrix(dims[r + 1], dims[r])
        idx = index[r]
        for row, t in enumerate(tuples[r + 1]):
            mat.add(row, idx[t[1:]], scalars[t[0]])
            sign = -1
            for i in range(r):
                merged = prod_table[(t[i], t[i + 1])]
                if not merged.is_identity():
                    mat.add(row, idx[t[:i] + (merged,) + t[i + 2:]], sign)
                sign = -sign
            mat.add(row, idx[t[:r]], sign)
        boundary.append(mat)
    c = ChainComplex(dims, boundary, cochain=True,
                     meta={"kind": "bar", "group": f"S_{n}", "action": action.kind,
                           "maxdeg": maxdeg})
    c.assert_valid()
    return c


def group_cohomology(n: int, action: CoefficientAction | str, r: int,
                     ceiling: int = DEFAULT_BASIS_CEILING) -> HomologyGroup:
    """H^r(S_n, M) from the normalized bar resolution."""
    if isinstance(action, str):
        action = CoefficientAction(action)
    if r < 0:
        raise ValueError("degree must be non-negative")
    c = bar_cochain_complex(n, action, r, ceiling=ceiling)
    return homology(c)[r]
