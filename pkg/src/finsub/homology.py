"""Exact integer chain-complex machinery.

Normalized and relative chain complexes of simplicial sets, homology
groups via sparse Smith normal form, homology generator bases, induced
maps, connecting homomorphisms and long-exact-sequence rank checks.

Conventions: a chain complex stores degrees 0..D with boundary[k]
mapping degree k to k-1; boundary[0] is the augmentation row for
reduced complexes and empty otherwise.  Cochain complexes reuse the
same container with boundary[k] mapping degree k-1 to k.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from .simplicial import SimplicialMap, SpaceLike, underlying
from .snf import SparseIntMatrix, diagonalize, invariant_factors, rank

_DD_CHECK_FULL_LIMIT = 4000  # columns; beyond this the d.d=0 check samples


@dataclass(frozen=True)
class HomologyGroup:
    """Finitely generated abelian group: free rank plus invariant-factor
    torsion list (each >= 2, each dividing the next)."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")
        for t in self.torsion:
            if t < 2:
                raise ValueError("torsion coefficients must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion must form a divisibility chain")

    @property
    def trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def torsion_order(self) -> int:
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_json(self, degree: int) -> dict:
        return {"degree": degree, "rank": self.rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, data: dict) -> "HomologyGroup":
        return cls(data["rank"], tuple(data["torsion"]))


class ChainComplex:
    """Bounded complex of free Z-modules with sparse integer boundaries.

    ``basis``/``basis_index`` optionally record which simplex each basis
    element came from, which chain maps need.
    """

    def __init__(self, dims: list[int], boundary: list[SparseIntMatrix],
                 reduced: bool = False, cochain: bool = False,
                 basis: Optional[list[list[int]]] = None,
                 meta: Optional[dict] = None):
        if len(boundary) != len(dims):
            raise ValueError("need one boundary matrix per degree")
        self.dims = list(dims)
        self.boundary = boundary
        self.reduced = reduced
        self.cochain = cochain
        self.basis = basis
        self.basis_index: Optional[list[dict[int, int]]] = None
        if basis is not None:
            self.basis_index = [{s: i for i, s in enumerate(b)} for b in basis]
        self.meta = meta or {}
        for k in range(len(dims)):
            want_cols = dims[k - 1] if (cochain and k) else dims[k]
            if not cochain:
                want_rows = dims[k - 1] if k else (1 if reduced else 0)
            else:
                want_rows = dims[k]
            if k == 0 and cochain:
                want_cols = 0
            b = boundary[k]
            if (b.rows, b.cols) != (want_rows, want_cols):
                raise ValueError(
                    f"boundary[{k}] has shape {b.rows}x{b.cols}, "
                    f"expected {want_rows}x{want_cols}")

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1

    def out_matrix(self, k: int) -> SparseIntMatrix:
        """Differential leaving degree k."""
        if self.cochain:
            if k + 1 <= self.top_degree:
                return self.boundary[k + 1]
            return SparseIntMatrix(0, self.dims[k])
        return self.boundary[k]

    def in_matrix(self, k: int) -> SparseIntMatrix:
        """Differential arriving at degree k."""
        if self.cochain:
            return self.boundary[k]
        if k + 1 <= self.top_degree:
            return self.boundary[k + 1]
        return SparseIntMatrix(self.dims[k], 0)

    def validate(self, sample_stride: Optional[int] = None) -> list[tuple[int, int]]:
        """Columns where the double differential fails to vanish."""
        bad = []
        stride = sample_stride or 1
        for k in range(len(self.dims)):
            outer = self.out_matrix(k)
            inner = self.in_matrix(k)
            if outer.rows == 0 or inner.cols == 0:
                continue
            for c in range(0, inner.cols, stride):
                if outer.mul_col(inner.column(c)):
                    bad.append((k, c))
        return bad

    def assert_valid(self) -> None:
        total = sum(self.dims)
        stride = 1 if total <= _DD_CHECK_FULL_LIMIT else max(1, total // 211)
        bad = self.validate(sample_stride=stride)
        if bad:
            raise RuntimeError(f"double differential nonzero at {bad[:3]}")

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.dims))


def euler_characteristic(c: ChainComplex) -> int:
    """Alternating sum of basis sizes (augmentation row not counted)."""
    return c.euler_characteristic()


# ----------------------------------------------------------------------
# Complexes of spaces
# ----------------------------------------------------------------------

def normalized_complex(space: SpaceLike, reduced: bool = False,
                       maxdeg: Optional[int] = None) -> ChainComplex:
    """Normalized chains: basis the non-degenerate simplices, boundary the
    alternating face sum with degenerate targets dropped.

    Homology in degree k is trustworthy for k <= maxdeg - 1.
    """
    xs = underlying(space)
    if maxdeg is None:
        maxdeg = xs.trunc
    if maxdeg > xs.trunc:
        raise ValueError(f"maxdeg {maxdeg} exceeds truncation {xs.trunc}")
    basis = [xs.nondegenerate(k) for k in range(maxdeg + 1)]
    index = [{s: i for i, s in enumerate(b)} for b in basis]
    dims = [len(b) for b in basis]
    boundary = [SparseIntMatrix(1 if reduced else 0, dims[0])]
    if reduced:
        for j in range(dims[0]):
            boundary[0].set(0, j, 1)
    for k in range(1, maxdeg + 1):
        mat = SparseIntMatrix(dims[k - 1], dims[k])
        fmaps = xs.faces[k]
        idx = index[k - 1]
        for j, cell in enumerate(basis[k]):
            sign = 1
            for i in range(k + 1):
                t = idx.get(fmaps[i][cell])
                if t is not None:
                    mat.add(t, j, sign)
                sign = -sign
        boundary.append(mat)
    c = ChainComplex(dims, boundary, reduced=reduced, basis=basis,
                     meta={"kind": "normalized", "maxdeg": maxdeg})
    c.assert_valid()
    return c


def relative_complex(x: SpaceLike, a: Optional[SimplicialMap],
                     maxdeg: Optional[int] = None,
                     check: bool = True) -> ChainComplex:
    """Chains of x with the image of ``a`` (and degenerates) dropped.

    Computes the homology of the quotient x / im(a) in reduced form
    without materializing the quotient space.  ``a=None`` degenerates to
    the plain unreduced complex of x.
    """
    xs = underlying(x)
    if a is None:
        return normalized_complex(x, reduced=False, maxdeg=maxdeg)
    tgt = underlying(a.target)
    if tgt is not xs and tgt != xs:
        raise ValueError("relative_complex: map does not land in the given space")
    if maxdeg is None:
        maxdeg = min(xs.trunc, a.trunc)
    if maxdeg > a.trunc:
        raise ValueError("relative_complex: subspace map truncated below maxdeg")
    if check:
        if not a.is_injective():
            raise ValueError("relative_complex: subspace map must be injective")
        bad = a.violations()
        if bad:
            raise ValueError(
                f"relative_complex: image not closed under structure maps "
                f"({len(bad)} failures, first {bad[0]})")
    img = [set(a.maps[k]) for k in range(maxdeg + 1)]
    basis = [[s for s in xs.nondegenerate(k) if s not in img[k]]
             for k in range(maxdeg + 1)]
    index = [{s: i for i, s in enumerate(b)} for b in basis]
    dims = [len(b) for b in basis]
    boundary = [SparseIntMatrix(0, dims[0])]
    for k in range(1, maxdeg + 1):
        mat = SparseIntMatrix(dims[k - 1], dims[k])
        fmaps = xs.faces[k]
        idx = index[k - 1]
        for j, cell in enumerate(basis[k]):
            sign = 1
            for i in range(k + 1):
                t = idx.get(fmaps[i][cell])
                if t is not None:
                    mat.add(t, j, sign)
                sign = -sign
        boundary.append(mat)
    c = ChainComplex(dims, boundary, reduced=False, basis=basis,
                     meta={"kind": "relative", "maxdeg": maxdeg})
    c.assert_valid()
    return c


# ----------------------------------------------------------------------
# Homology groups
# ----------------------------------------------------------------------

def _factors_task(args: tuple[int, int, int, list[tuple[int, int, int]]]):
    k, rows, cols, triplets = args
    m = SparseIntMatrix.from_triplets(rows, cols, triplets)
    return k, invariant_factors(m)


def homology(c: ChainComplex, coeffs: str = "Z", jobs: int = 1) -> list[HomologyGroup]:
    """Homology (or cohomology, for cochain complexes) in all degrees.

    rank H_k = dim_k - rank(out_k) - rank(in_k); torsion comes from the
    invariant factors of the incoming differential.  Rational mode
    reports ranks only.
    """
    if coeffs not in ("Z", "Q"):
        raise ValueError("coeffs must be 'Z' or 'Q'")
    mats = {k: c.boundary[k] for k in range(len(c.dims))}
    if jobs > 1:
        tasks = [(k, m.rows, m.cols, m.triplets()) for k, m in mats.items()]
        factors: dict[int, list[int]] = {}
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for k, f in pool.map(_factors_task, tasks):
                factors[k] = f
    else:
        factors = {k: invariant_factors(m) for k, m in mats.items()}
    out: list[HomologyGroup] = []
    top = c.top_degree
    for k in range(top + 1):
        if c.cochain:
            out_key = k + 1 if k + 1 <= top else None
            in_key = k
        else:
            out_key = k
            in_key = k + 1 if k + 1 <= top else None
        out_rank = len(factors[out_key]) if out_key is not None else 0
        in_factors = factors[in_key] if in_key is not None else []
        r = c.dims[k] - out_rank - len(in_factors)
        torsion = tuple(f for f in in_factors if f > 1) if coeffs == "Z" else ()
        out.append(HomologyGroup(r, torsion))
    return out


def betti_numbers(c: ChainComplex, jobs: int = 1) -> list[int]:
    return [g.rank for g in homology(c, "Q", jobs=jobs)]


def space_homology(space: SpaceLike, reduced: bool = False,
                   maxdeg: Optional[int] = None, coeffs: str = "Z",
                   jobs: int = 1) -> list[HomologyGroup]:
    """Homology of a space through its normalized complex.

    Only degrees <= maxdeg - 1 are returned (the trusted range).
    """
    c = normalized_complex(space, reduced=reduced, maxdeg=maxdeg)
    groups = homology(c, coeffs, jobs=jobs)
    return groups[:-1] if len(groups) > 1 else groups


# ----------------------------------------------------------------------
# Generator bases
# ----------------------------------------------------------------------

@dataclass
class HomologyBasis:
    """Presentation of one homology group with explicit generator chains.

    Generators are chains in the complex's degree-k basis; ``coords``
    writes an arbitrary cycle in these generators (torsion coordinates
    reduced mod their orders).
    """

    degree: int
    group: HomologyGroup
    free_gens: list[dict[int, int]]
    torsion_gens: list[dict[int, int]]
    torsion_orders: list[int]
    _out_matrix: SparseIntMatrix
    _vinv_bottom: list[dict[int, int]]
    _u2_rows: list[dict[int, int]]
    _b_factors: list[int]

    def coords(self, cycle: dict[int, int]) -> tuple[list[int], list[int]]:
        """(free coordinates, torsion coordinates) of a cycle's class."""
        if self._out_matrix.mul_col(cycle):
            raise ValueError("chain is not a cycle")
        x = [sum(w * cycle.get(l, 0) for l, w in row.items())
             for row in self._vinv_bottom]
        y = [sum(w * x[j] for j, w in row.items()) for row in self._u2_rows]
        s = len(self._b_factors)
        tors = [y[i] % d for i, d in enumerate(self._b_factors) if d > 1]
        free = y[s:]
        return free, tors


def homology_basis(c: ChainComplex, k: int) -> HomologyBasis:
    """Generators of H_k with the chain-level data to express cycles.

    Kernel lattice from the tracked column transform of the outgoing
    differential; the incoming image is rewritten in kernel coordinates
    and put in Smith form with a tracked row transform.
    """
    dk = c.out_matrix(k)
    dk1 = c.in_matrix(k)
    res1 = diagonalize(dk, track_v=True)
    r = res1.rank
    nk = c.dims[k]
    z = nk - r
    kernel = [res1.V.column(j) for j in range(r, nk)]
    vinv_rows = res1.Vinv.row_dicts()
    vinv_bottom = vinv_rows[r:]
    dk1_rows = dk1.row_dicts()
    b = SparseIntMatrix(z, dk1.cols)
    for i, w in enumerate(vinv_bottom):
        acc: dict[int, int] = {}
        for l, wl in w.items():
            for col, v in dk1_rows[l].items():
                nv = acc.get(col, 0) + wl * v
                if nv:
                    acc[col] = nv
                else:
                    del acc[col]
        for col, v in acc.items():
            b.set(i, col, v)
    res2 = diagonalize(b, track_u=True, chain=True)
    factors = res2.factors
    s = len(factors)
    uinv_cols = [res2.Uinv.column(i) for i in range(z)]
    gens: list[dict[int, int]] = []
    for i in range(z):
        chain: dict[int, int] = {}
        for j, w in uinv_cols[i].items():
            for l, v in kernel[j].items():
                nv = chain.get(l, 0) + w * v
                if nv:
                    chain[l] = nv
                else:
                    del chain[l]
        gens.append(chain)
    torsion_gens = [gens[i] for i in range(s) if factors[i] > 1]
    torsion_orders = [f for f in factors if f > 1]
    free_gens = gens[s:]
    group = HomologyGroup(z - s, tuple(torsion_orders))
    return HomologyBasis(k, group, free_gens, torsion_gens, torsion_orders,
                         dk, vinv_bottom, res2.U.row_dicts(), factors)


# ----------------------------------------------------------------------
# Induced and connecting maps
# ----------------------------------------------------------------------

@dataclass
class HomologyMapDescription:
    """A homology-level map reported on free parts.

    ``free_matrix`` is target-free-rank x source-free-rank in the
    engine's generator bases; ``torsion_images`` gives, per source free
    generator, its coordinates in the target torsion generators (so
    images of infinite-order classes that become torsion stay visible).
    """

    degree_source: int
    degree_target: int
    source: HomologyGroup
    target: HomologyGroup
    free_matrix: list[list[int]]
    torsion_images: list[list[int]]
    kernel_rank: int
    cokernel_rank: int

    def free_index(self) -> Optional[int]:
        """|determinant| when the free matrix is square and nonzero-rank;
        the absolute scale of the map on free parts."""
        n = self.source.rank
        if n != self.target.rank or n == 0:
            return None
        from .snf import SparseIntMatrix as _M
        det_factors = invariant_factors(_M.from_dense(self.free_matrix))
        if len(det_factors) < n:
            return 0
        out = 1
        for f in det_factors:
            out *= f
        return out

    def image_orders(self) -> list[int]:
        """Order of the image of each source free generator in the target
        (0 means infinite order)."""
        orders = []
        tors = self.target.torsion
        for col in range(self.source.rank):
            if any(self.free_matrix[row][col] for row in range(self.target.rank)):
                orders.append(0)
                continue
            order = 1
            for i, t in enumerate(tors):
                v = self.torsion_images[col][i] % t
                if v:
                    order = _lcm(order, t // gcd(v, t))
            orders.append(order)
        return orders


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _assemble_description(src_basis: HomologyBasis, tgt_basis: HomologyBasis,
                          images: list[dict[int, int]]) -> HomologyMapDescription:
    free_cols = []
    tors_cols = []
    for img in images:
        free, tors = tgt_basis.coords(img)
        free_cols.append(free)
        tors_cols.append(tors)
    tr = tgt_basis.group.rank
    sr = src_basis.group.rank
    free_matrix = [[free_cols[c][r] for c in range(sr)] for r in range(tr)]
    mat = SparseIntMatrix.from_triplets(
        tr, sr, [(r, c, free_matrix[r][c]) for r in range(tr) for c in range(sr)
                 if free_matrix[r][c]])
    rk = rank(mat)
    return HomologyMapDescription(
        degree_source=src_basis.degree, degree_target=tgt_basis.degree,
        source=src_basis.group, target=tgt_basis.group,
        free_matrix=free_matrix, torsion_images=tors_cols,
        kernel_rank=sr - rk, cokernel_rank=tr - rk)


def chain_map_matrix(f: SimplicialMap, k: int, src: ChainComplex,
                     tgt: ChainComplex) -> SparseIntMatrix:
    """Matrix of a simplicial map on degree-k normalized chains.

    Basis cells mapping to degenerate or dropped simplices contribute 0.
    """
    if src.basis is None or tgt.basis is None or tgt.basis_index is None:
        raise ValueError("chain maps need complexes with simplex bases")
    mat = SparseIntMatrix(tgt.dims[k], src.dims[k])
    tidx = tgt.basis_index[k]
    mp = f.maps[k]
    for j, cell in enumerate(src.basis[k]):
        t = tidx.get(mp[cell])
        if t is not None:
            mat.set(t, j, 1)
    return mat


def induced_map(f: SimplicialMap, k: int,
                source_complex: Optional[ChainComplex] = None,
                target_complex: Optional[ChainComplex] = None,
                source_reduced: bool = False,
                target_reduced: bool = False) -> HomologyMapDescription:
    """Map induced on degree-k homology by a simplicial map."""
    src = source_complex or normalized_complex(f.source, reduced=source_reduced,
                                               maxdeg=min(k + 1, f.source.trunc))
    tgt = target_complex or normalized_complex(f.target, reduced=target_reduced,
                                               maxdeg=min(k + 1, f.target.trunc))
    fmat = chain_map_matrix(f, k, src, tgt)
    src_basis = homology_basis(src, k)
    tgt_basis = homology_basis(tgt, k)
    images = [fmat.mul_col(g) for g in src_basis.free_gens]
    return _assemble_description(src_basis, tgt_basis, images)


def _connecting_block(x: SpaceLike, a: SimplicialMap, k: int,
                      src: ChainComplex, tgt: ChainComplex) -> SparseIntMatrix:
    """Faces of relative degree-k cells that land on subspace cells,
    written in the subspace complex's degree k-1 basis."""
    xs = underlying(x)
    inv_a = {a.maps[k - 1][s]: s for s in range(len(a.maps[k - 1]))}
    if src.basis is None or tgt.basis_index is None:
        raise ValueError("connecting block needs simplex bases")
    tidx = tgt.basis_index[k - 1]
    conn = SparseIntMatrix(tgt.dims[k - 1], src.dims[k])
    fmaps = xs.faces[k]
    for j, cell in enumerate(src.basis[k]):
        sign = 1
        for i in range(k + 1):
            pre = inv_a.get(fmaps[i][cell])
            if pre is not None:
                t = tidx.get(pre)
                if t is not None:
                    conn.add(t, j, sign)
            sign = -sign
    return conn


def _connecting_complexes(x: SpaceLike, a: SimplicialMap, k: int,
                          rel: Optional[SimplicialMap]
                          ) -> tuple[ChainComplex, ChainComplex]:
    if k < 1:
        raise ValueError("connecting maps start in degree >= 1")
    trunc = min(underlying(x).trunc, a.trunc)
    if trunc < k + 1:
        raise ValueError(
            f"connecting map in degree {k} needs truncation >= {k + 1}, have {trunc}")
    src = relative_complex(x, a, maxdeg=k + 1)
    if rel is None:
        tgt = normalized_complex(a.source, reduced=True, maxdeg=k)
    else:
        tgt = relative_complex(a.source, rel, maxdeg=k)
    return src, tgt


def connecting_map(x: SpaceLike, a: SimplicialMap, k: int,
                   rel: Optional[SimplicialMap] = None) -> HomologyMapDescription:
    """Connecting homomorphism H_k(x/a) -> H_{k-1}(a) (or, with ``rel``,
    into H_{k-1}(a/rel)) by the chain-level zigzag: a relative cycle
    lifts to itself, its full boundary lands on subspace cells.
    """
    src, tgt = _connecting_complexes(x, a, k, rel)
    conn = _connecting_block(x, a, k, src, tgt)
    src_basis = homology_basis(src, k)
    tgt_basis = homology_basis(tgt, k - 1)
    images = [conn.mul_col(g) for g in src_basis.free_gens]
    return _assemble_description(src_basis, tgt_basis, images)


def connecting_free_index(x: SpaceLike, a: SimplicialMap, k: int,
                          rel: Optional[SimplicialMap] = None) -> int:
    """|d| on free parts when the target free part has rank 1.

    The image subgroup of the target's free quotient is generated by the
    images of any lattice basis of the relative cycles, because torsion
    classes die in a free quotient; the index is the gcd of those image
    coordinates.  This avoids presenting the (possibly huge) source
    homology group.
    """
    src, tgt = _connecting_complexes(x, a, k, rel)
    tgt_basis = homology_basis(tgt, k - 1)
    if tgt_basis.group.rank != 1:
        raise ValueError("fast path needs a rank-1 target free part")
    conn = _connecting_block(x, a, k, src, tgt)
    res = diagonalize(src.out_matrix(k), track_v=True)
    g = 0
    for j in range(res.rank, src.dims[k]):
        cycle = res.V.column(j)
        free, _ = tgt_basis.coords(conn.mul_col(cycle))
        g = gcd(g, free[0])
        if g == 1:
            break
    return g


# ----------------------------------------------------------------------
# Long exact sequence rank checks
# ----------------------------------------------------------------------

@dataclass
class LesNode:
    degree: int
    kind: str  # "A", "X", "XA"
    betti: int
    group: Optional[HomologyGroup]
    rank_in: int
    rank_out: int

    @property
    def exact(self) -> bool:
        return self.rank_in + self.rank_out == self.betti


@dataclass
class LesReport:
    nodes: list[LesNode] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(n.exact for n in self.nodes)

    def first_failure(self) -> Optional[LesNode]:
        for n in self.nodes:
            if not n.exact:
                return n
        return None

    def __str__(self) -> str:
        if self.ok:
            return f"exact at all {len(self.nodes)} nodes"
        n = self.first_failure()
        return (f"rank-exactness fails at H_{n.degree}({n.kind}): "
                f"in {n.rank_in} + out {n.rank_out} != betti {n.betti}")


def _induced_rank_q(fmat: SparseIntMatrix, src_out: SparseIntMatrix,
                    tgt_in: SparseIntMatrix) -> int:
    """Rank over Q of the induced map on homology.

    rank [F.Z | B] - rank B, with Z a cycle basis of the source and B
    the target boundaries; exact integer arithmetic throughout.
    """
    res = diagonalize(src_out, track_v=True)
    z_cols = [res.V.column(j) for j in range(res.rank, src_out.cols)]
    stacked = SparseIntMatrix(fmat.rows, len(z_cols) + tgt_in.cols)
    for j, zc in enumerate(z_cols):
        for r, v in fmat.mul_col(zc).items():
            stacked.set(r, j, v)
    for j in range(tgt_in.cols):
        for r, v in tgt_in.column(j).items():
            stacked.set(r, len(z_cols) + j, v)
    return rank(stacked) - rank(tgt_in)


def les_check(x: SpaceLike, a: Optional[SimplicialMap],
              maxdeg: Optional[int] = None,
              with_torsion: bool = True) -> LesReport:
    """Rank-exactness of H(A) -> H(X) -> H(X,A) -> H(A)[-1] over Q.

    Betti numbers and induced-map ranks are computed independently; the
    report carries the integral groups as torsion bookkeeping.  Degrees
    up to maxdeg-1 are checked.
    """
    xs = underlying(x)
    if maxdeg is None:
        maxdeg = xs.trunc if a is None else min(xs.trunc, a.trunc)
    cx = normalized_complex(x, reduced=False, maxdeg=maxdeg)
    cxa = relative_complex(x, a, maxdeg=maxdeg)
    if a is not None:
        ca = normalized_complex(a.source, reduced=False, maxdeg=maxdeg)
    else:
        ca = ChainComplex([0] * (maxdeg + 1),
                          [SparseIntMatrix(0, 0) for _ in range(maxdeg + 1)],
                          basis=[[] for _ in range(maxdeg + 1)])
    betti_a = betti_numbers(ca)
    betti_x = betti_numbers(cx)
    betti_xa = betti_numbers(cxa)
    groups_a = homology(ca) if with_torsion else None
    groups_x = homology(cx) if with_torsion else None
    groups_xa = homology(cxa) if with_torsion else None

    # chain maps: inclusion i, projection j, connecting block
    def imap(k: int) -> SparseIntMatrix:
        if a is None:
            return SparseIntMatrix(cx.dims[k], 0)
        return chain_map_matrix(a, k, ca, cx)

    def jmap(k: int) -> SparseIntMatrix:
        mat = SparseIntMatrix(cxa.dims[k], cx.dims[k])
        xa_idx = cxa.basis_index[k]
        for j, cell in enumerate(cx.basis[k]):
            t = xa_idx.get(cell)
            if t is not None:
                mat.set(t, j, 1)
        return mat

    rank_i = {}
    rank_j = {}
    rank_d = {}
    for k in range(maxdeg):
        rank_i[k] = _induced_rank_q(imap(k), ca.out_matrix(k), cx.in_matrix(k))
        rank_j[k] = _induced_rank_q(jmap(k), cx.out_matrix(k), cxa.in_matrix(k))
    for k in range(1, maxdeg + 1):
        if a is None:
            rank_d[k] = 0
            continue
        conn = _connecting_block(x, a, k, cxa, ca)
        rank_d[k] = _induced_rank_q(conn, cxa.out_matrix(k), ca.in_matrix(k - 1))
    report = LesReport()
    for k in range(maxdeg):
        report.nodes.append(LesNode(
            k, "X", betti_x[k], groups_x[k] if with_torsion else None,
            rank_in=rank_i[k], rank_out=rank_j[k]))
        report.nodes.append(LesNode(
            k, "XA", betti_xa[k], groups_xa[k] if with_torsion else None,
            rank_in=rank_j[k], rank_out=rank_d.get(k, 0)))
        report.nodes.append(LesNode(
            k, "A", betti_a[k], groups_a[k] if with_torsion else None,
            rank_in=rank_d.get(k + 1, 0), rank_out=rank_i[k]))
    return report


def homology_to_json(groups: list[HomologyGroup], **header) -> dict:
    out = dict(header)
    out["groups"] = [g.to_json(k) for k, g in enumerate(groups)]
    return out
