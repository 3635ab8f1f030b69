"""The face-pair double complex at a fixed lattice degree and its pages.

The double complex lives in the fourth quadrant: a pair (F, G) with
F >= G sits at (p, q) = (dim F, -dim G), and at degree ``a`` only pairs
with ``a`` on G appear (at degree zero that is no condition).  The
vertical differential acts on the G index through facet covers; the
horizontal differential acts on the F index through cofacet covers and
carries the row twist (-1)^q, which makes the two differentials
anticommute and the total differential square to zero.

Taking horizontal cohomology first gives the spectral sequence exposed by
``page``: page 0 is the raw double complex with its horizontal maps,
page 1 the horizontal cohomology with the induced vertical maps, page 2
its cohomology together with honest knight-move differentials computed by
zigzag lifting, and the terminal page the associated graded of total
cohomology under the row filtration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dfield

from .cohomology import VSComplex, cohomology_summary, echelon_representatives
from .complexes import FaceComplex, MissingGeometryError
from .linalg import (
    Field,
    Mat,
    QQ,
    column_prefix_ranks,
    image_basis,
    kernel_basis,
    rank,
    solve_in_subspace,
)


def diagonal_sign(dim: int) -> int:
    """Sign on the diagonal augmentation: +1 for dimensions 0,3 mod 4 and
    -1 for dimensions 1,2 mod 4, i.e. (-1)^(n(n+1)/2)."""
    return 1 if dim % 4 in (0, 3) else -1


class UnsupportedPageError(ValueError):
    pass


@dataclass
class ZeemanComplex:
    fc: FaceComplex
    field: Field
    degree: tuple | None  # None means the ordinary (all-zero) degree
    blocks: dict  # (p, q) -> tuple of (f_id, g_id) pairs
    vertical: dict  # (p, q) -> Mat into (p, q+1)
    horizontal: dict  # (p, q) -> Mat into (p+1, q)
    _page1: object = dfield(default=None, repr=False)
    _page2: object = dfield(default=None, repr=False)
    _total: object = dfield(default=None, repr=False)

    @property
    def pmax(self) -> int:
        return self.fc.dim

    def block(self, p: int, q: int) -> tuple:
        return self.blocks.get((p, q), ())

    def vert(self, p: int, q: int) -> Mat:
        m = self.vertical.get((p, q))
        if m is None:
            return Mat.zeros(len(self.block(p, q + 1)), len(self.block(p, q)), self.field)
        return m

    def horiz(self, p: int, q: int) -> Mat:
        m = self.horizontal.get((p, q))
        if m is None:
            return Mat.zeros(len(self.block(p + 1, q)), len(self.block(p, q)), self.field)
        return m


def _check_degree(a, d: int) -> tuple | None:
    if a is None:
        return None
    a = tuple(a)
    if len(a) != d:
        raise ValueError(f"degree vector has length {len(a)}, expected {d}")
    if any(not isinstance(x, int) for x in a):
        raise ValueError(f"degree vector must consist of integers: {a}")
    if all(x == 0 for x in a):
        return None
    return a


def build(fc: FaceComplex, a=None, field: Field = QQ) -> ZeemanComplex:
    """Assemble the double complex of ``fc`` at lattice degree ``a``.

    ``a=None`` (or the zero vector) gives the ordinary degree, which needs
    no geometry; any other degree requires the complex to carry its
    semigroup so that membership of ``a`` on each face can be tested.
    """
    a = _check_degree(a, fc.ambient_dim)
    if a is not None and not fc.has_geometry:
        raise MissingGeometryError(
            "graded evaluation at a nonzero degree needs semigroup geometry"
        )

    def face_admits(g: int) -> bool:
        return a is None or fc.contains_degree(g, a)

    admitted = {g.id for g in fc.faces if face_admits(g.id)}
    blocks: dict = {}
    for g in sorted(admitted):
        qg = -fc.face(g).dim
        for f in sorted(fc.above(g)):
            key = (fc.face(f).dim, qg)
            blocks.setdefault(key, []).append((f, g))
    blocks = {k: tuple(sorted(v)) for k, v in blocks.items()}
    index = {k: {pair: i for i, pair in enumerate(v)} for k, v in blocks.items()}

    vertical: dict = {}
    horizontal: dict = {}
    for (p, q), pairs in blocks.items():
        tgt_v = blocks.get((p, q + 1), ())
        if tgt_v:
            idx = index[(p, q + 1)]
            rows = [[field.zero()] * len(pairs) for _ in tgt_v]
            for j, (f, g) in enumerate(pairs):
                for g2, sign in fc.covers_below(g):
                    i = idx.get((f, g2))
                    if i is not None:
                        rows[i][j] = field.reduce(sign)
            vertical[(p, q)] = Mat.from_rows(rows, field)
        tgt_h = blocks.get((p + 1, q), ())
        if tgt_h:
            idx = index[(p + 1, q)]
            twist = -1 if q % 2 else 1
            rows = [[field.zero()] * len(pairs) for _ in tgt_h]
            for j, (f, g) in enumerate(pairs):
                for f2, sign in fc.covers_above(f):
                    i = idx.get((f2, g))
                    if i is not None:
                        rows[i][j] = field.reduce(twist * sign)
            horizontal[(p, q)] = Mat.from_rows(rows, field)
    return ZeemanComplex(fc, field, a, blocks, vertical, horizontal)


@dataclass(frozen=True)
class AugmentedTotal:
    """The total complex together with its diagonal augmentation vector."""

    complex: VSComplex
    augmentation: tuple


def total_complex(z: ZeemanComplex) -> AugmentedTotal:
    """Collapse to total degrees; the degree-n term collects pairs with
    dim F - dim G = n, ordered with small dim G first (the row filtration
    reads off column prefixes).  The augmentation hits the diagonal pairs
    (F, F) with the alternating sign pattern that makes it a cocycle."""
    if z._total is not None:
        return z._total
    field = z.field
    by_total: dict[int, list] = {}
    for (p, q), pairs in z.blocks.items():
        by_total.setdefault(p + q, []).extend(((p, q), pair) for pair in pairs)
    hi = max(by_total) if by_total else 0
    labels = []
    for n in range(hi + 1):
        entries = by_total.get(n, [])
        entries.sort(key=lambda t: (-t[0][1], t[1]))  # dim G ascending, then pair
        labels.append(tuple(entries))
    index = [
        {lab: i for i, lab in enumerate(level)} for level in labels
    ]
    blk_index = {k: {pair: i for i, pair in enumerate(v)} for k, v in z.blocks.items()}
    diffs = []
    for n in range(hi):
        dom, cod = labels[n], labels[n + 1]
        cod_pos = index[n + 1]
        rows = [[field.zero()] * len(dom) for _ in cod]
        for j, ((p, q), pair) in enumerate(dom):
            jloc = blk_index[(p, q)][pair]
            h = z.horizontal.get((p, q))
            if h is not None:
                for i2, pair2 in enumerate(z.block(p + 1, q)):
                    e = h.entry(i2, jloc)
                    if e:
                        rows[cod_pos[((p + 1, q), pair2)]][j] = e
            v = z.vertical.get((p, q))
            if v is not None:
                for i2, pair2 in enumerate(z.block(p, q + 1)):
                    e = v.entry(i2, jloc)
                    if e:
                        rows[cod_pos[((p, q + 1), pair2)]][j] = e
        diffs.append(Mat.from_rows(rows, field))
    vs = VSComplex(0, hi, tuple(labels), tuple(diffs))
    aug = []
    for (pq, (f, g)) in labels[0]:
        if f == g:
            aug.append(field.reduce(diagonal_sign(z.fc.face(f).dim)))
        else:  # total degree 0 forces dim F = dim G, hence F = G
            aug.append(field.zero())
    result = AugmentedTotal(vs, tuple(aug))
    z._total = result
    return result


@dataclass(frozen=True)
class SSPage:
    """One page of the spectral sequence: dimensions and differentials by
    bidegree.  The differential bidegree depends on the page: (1,0) on
    page 0, (0,1) on page 1, (-1,2) on page 2; the terminal page has none."""

    r: object
    dims: dict
    diffs: dict

    def dim(self, p: int, q: int) -> int:
        return self.dims.get((p, q), 0)

    def euler(self) -> int:
        return sum((-1) ** ((p + q) % 2) * d for (p, q), d in self.dims.items())

    def total_by_degree(self) -> dict:
        out: dict[int, int] = {}
        for (p, q), d in self.dims.items():
            if d:
                out[p + q] = out.get(p + q, 0) + d
        return out


class _Page1Data:
    def __init__(self, summaries, dmats):
        self.summaries = summaries  # (p,q) -> list of rep vectors (D-coordinates)
        self.dmats = dmats  # (p,q) -> Mat of the induced vertical map


def _page1_data(z: ZeemanComplex) -> _Page1Data:
    if z._page1 is not None:
        return z._page1
    field = z.field
    reps: dict = {}
    for q in sorted({q for (_, q) in z.blocks}, reverse=True):
        labels = tuple(z.block(p, q) for p in range(z.pmax + 1))
        diffs = tuple(z.horiz(p, q) for p in range(z.pmax))
        row = VSComplex(0, z.pmax, labels, diffs)
        summary = cohomology_summary(row, field)
        for p in range(z.pmax + 1):
            r = summary.reps(p)
            if r:
                reps[(p, q)] = r
    dmats: dict = {}
    for (p, q), rlist in sorted(reps.items()):
        tgt = reps.get((p, q + 1), ())
        cob = z.horiz(p - 1, q + 1)
        generators = [list(t) for t in tgt]
        for j in range(cob.cols):
            generators.append(list(cob.col(j)))
        if not tgt:
            dmats[(p, q)] = Mat.zeros(0, len(rlist), field)
            continue
        cols = []
        vmat = z.vert(p, q)
        for rep in rlist:
            v = vmat.mul_vec(rep, field) if vmat.rows else ()
            if len(v) == 0:
                cols.append([field.zero()] * len(tgt))
                continue
            sol = solve_in_subspace(v, generators, field)
            if sol is None:
                raise RuntimeError("vertical image failed to reduce on page 1")
            cols.append(list(sol[: len(tgt)]))
        rows = [[cols[j][i] for j in range(len(rlist))] for i in range(len(tgt))]
        dmats[(p, q)] = Mat.from_rows(rows, field)
    data = _Page1Data(reps, dmats)
    z._page1 = data
    return data


class _Page2Data:
    def __init__(self, reps, d2):
        self.reps = reps  # (p,q) -> tuple of vectors in page-1 coordinates
        self.d2 = d2


def _page2_data(z: ZeemanComplex) -> _Page2Data:
    if z._page2 is not None:
        return z._page2
    field = z.field
    p1 = _page1_data(z)

    def dmat(p, q):
        m = p1.dmats.get((p, q))
        if m is None:
            return Mat.zeros(len(p1.summaries.get((p, q + 1), ())), len(p1.summaries.get((p, q), ())), field)
        return m

    reps2: dict = {}
    for (p, q), rlist in sorted(p1.summaries.items()):
        out = dmat(p, q)
        inc = dmat(p, q - 1)
        ker = kernel_basis(out, field)
        img = image_basis(inc, field)
        chosen = echelon_representatives(ker, img, field)
        if chosen:
            reps2[(p, q)] = chosen

    d2: dict = {}
    for (p, q), rlist in sorted(reps2.items()):
        tgt = reps2.get((p - 1, q + 2), ())
        src_reps1 = p1.summaries.get((p, q), ())
        tgt_reps1 = p1.summaries.get((p - 1, q + 2), ())
        cols = []
        for e in rlist:
            zvec = [field.zero()] * len(z.block(p, q))
            for c, rep in zip(e, src_reps1):
                if c:
                    for i, x in enumerate(rep):
                        zvec[i] += c * x
            zvec = [field.reduce(x) for x in zvec]
            v = z.vert(p, q).mul_vec(zvec, field) if z.block(p, q + 1) else ()
            if any(v):
                h = z.horiz(p - 1, q + 1)
                w = solve_in_subspace(v, [h.col(j) for j in range(h.cols)], field)
                if w is None:
                    raise RuntimeError("page-2 class has a non-exact vertical image")
                u = z.vert(p - 1, q + 1).mul_vec(w, field) if z.block(p - 1, q + 2) else ()
            else:
                u = [field.zero()] * len(z.block(p - 1, q + 2))
            if not tgt:
                cols.append([])
                continue
            cob = z.horiz(p - 2, q + 2)
            gens1 = [list(t) for t in tgt_reps1] + [list(cob.col(j)) for j in range(cob.cols)]
            c1 = solve_in_subspace(u, gens1, field)
            if c1 is None:
                raise RuntimeError("page-2 image failed to reduce to page-1 classes")
            c1 = list(c1[: len(tgt_reps1)])
            gens2 = [list(t) for t in tgt]
            dm = dmat(p - 1, q + 1)
            for j in range(dm.cols):
                gens2.append(list(dm.col(j)))
            c2 = solve_in_subspace(c1, gens2, field)
            if c2 is None:
                raise RuntimeError("page-2 image failed to reduce modulo page-1 boundaries")
            cols.append(list(c2[: len(tgt)]))
        rows = [[cols[j][i] for j in range(len(rlist))] for i in range(len(tgt))]
        d2[(p, q)] = Mat.from_rows(rows, field) if tgt else Mat.zeros(0, len(rlist), field)
    data = _Page2Data(reps2, d2)
    z._page2 = data
    return data


def _infinity_dims(z: ZeemanComplex) -> dict:
    """Terminal-page dimensions from the row filtration of the total
    complex: three elimination passes per total degree, all ranks exact."""
    field = z.field
    tot = total_complex(z).complex
    hi = tot.hi
    qs_of = [
        [pq[1] for (pq, _) in tot.basis(n)] for n in range(hi + 1)
    ]
    # prefix ranks of each differential (columns ordered q descending already)
    pref = []
    for n in range(hi + 1):
        d = tot.diff(n, field)
        pref.append(column_prefix_ranks(d, field, list(range(d.cols))))
    # suffix row ranks of each differential
    suff = []
    for n in range(hi + 1):
        if n == 0:
            suff.append([])
            continue
        d = tot.diff(n - 1, field)
        t = d.transpose()
        order = list(range(d.rows))[::-1]
        suff.append(column_prefix_ranks(t, field, order))

    def rank_prefix(n: int, k: int) -> int:
        if k <= 0:
            return 0
        return pref[n][k - 1]

    def rank_suffix_rows(n: int, k: int) -> int:
        if k <= 0 or n == 0:
            return 0
        return suff[n][k - 1]

    dims: dict = {}
    for n in range(hi + 1):
        qs = qs_of[n]
        if not qs:
            continue
        full_rank_prev = rank_prefix(n - 1, len(qs_of[n - 1])) if n > 0 else 0

        def filtered_h(s: int) -> int:
            k = sum(1 for q in qs if q >= s)
            kerdim = k - rank_prefix(n, k)
            below = sum(1 for q in qs if q < s)
            imdim = full_rank_prev - rank_suffix_rows(n, below)
            return kerdim - imdim

        for q in sorted(set(qs)):
            d = filtered_h(q) - filtered_h(q + 1)
            if d:
                dims[(n - q, q)] = d
    return dims


def page(z: ZeemanComplex, r) -> SSPage:
    """Page ``r`` of the spectral sequence; r may be 0, 1, 2, or infinity
    (math.inf or the string "inf")."""
    if r in ("inf", "infinity"):
        r = math.inf
    if r == 0:
        dims = {k: len(v) for k, v in z.blocks.items()}
        diffs = {k: z.horiz(*k) for k in z.blocks}
        return SSPage(0, dims, diffs)
    if r == 1:
        data = _page1_data(z)
        dims = {k: len(v) for k, v in data.summaries.items()}
        return SSPage(1, dims, dict(data.dmats))
    if r == 2:
        data = _page2_data(z)
        dims = {k: len(v) for k, v in data.reps.items()}
        return SSPage(2, dims, dict(data.d2))
    if r == math.inf:
        return SSPage(math.inf, _infinity_dims(z), {})
    raise UnsupportedPageError(f"unsupported page index {r!r}; use 0, 1, 2 or inf")


class ConcentrationResult:
    def __init__(self, ok: bool, column: int, violations: tuple):
        self.ok = ok
        self.column = column
        self.violations = violations  # ((p, q, dim), ...)

    def __bool__(self) -> bool:
        return self.ok


def concentration_check(z: ZeemanComplex, n: int | None = None) -> ConcentrationResult:
    """Whether page 1 is concentrated in the column of the top dimension."""
    if n is None:
        n = z.fc.dim
    p1 = page(z, 1)
    violations = tuple(
        (p, q, d) for (p, q), d in sorted(p1.dims.items()) if d > 0 and p != n
    )
    return ConcentrationResult(not violations, n, violations)


def vertical_cohomology_dims(z: ZeemanComplex) -> dict:
    """Dimensions of the column-wise (vertical-first) cohomology."""
    field = z.field
    dims: dict = {}
    for (p, q), pairs in z.blocks.items():
        out_rank = rank(z.vert(p, q), field) if z.block(p, q + 1) else 0
        in_rank = rank(z.vert(p, q - 1), field) if z.block(p, q - 1) else 0
        d = len(pairs) - out_rank - in_rank
        if d:
            dims[(p, q)] = d
    return dims
