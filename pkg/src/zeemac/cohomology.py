"""Cochain complexes of upper sets and local cohomology near a face.

For a face G the upper set {F : F >= G} carries a cochain complex whose
degree-p basis is the faces of dimension p; the differential entries are
the cover signs.  Its cohomology is the local cohomology of the complex
near G.  For covers G' < G the inclusion of upper-set complexes induces
restriction maps between the cohomologies; the matrices returned here are
scaled by the cover sign so they assemble directly into the vertical
differential of the double complex and into minimal resolutions.

Representative cocycles are the deterministic echelon lifts of a
kernel-modulo-image complement, so every downstream matrix is reproducible
byte for byte.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import NamedTuple

from .complexes import FaceComplex, upper_set
from .linalg import Field, Mat, image_basis, kernel_basis, solve_in_subspace, _rref


@dataclass(frozen=True)
class VSComplex:
    """A bounded cochain complex of finite-dimensional vector spaces.

    ``labels[i]`` names the basis of degree lo+i; ``diffs[i]`` is the
    matrix of the map from degree lo+i to degree lo+i+1 (rows index the
    target basis).
    """

    lo: int
    hi: int
    labels: tuple
    diffs: tuple

    def __post_init__(self):
        if len(self.labels) != self.hi - self.lo + 1:
            raise ValueError("label blocks do not cover the degree range")
        if len(self.diffs) != max(self.hi - self.lo, 0):
            raise ValueError("need one differential per consecutive degree pair")
        for i, d in enumerate(self.diffs):
            if d.cols != len(self.labels[i]) or d.rows != len(self.labels[i + 1]):
                raise ValueError(f"differential {i} has shape {d.rows}x{d.cols}")

    def basis(self, p: int) -> tuple:
        if self.lo <= p <= self.hi:
            return self.labels[p - self.lo]
        return ()

    def dim(self, p: int) -> int:
        return len(self.basis(p))

    def diff(self, p: int, field: Field) -> Mat:
        """The differential out of degree p (a zero map outside the range)."""
        if self.lo <= p < self.hi:
            return self.diffs[p - self.lo]
        return Mat.zeros(self.dim(p + 1), self.dim(p), field)

    def is_complex(self, field: Field) -> bool:
        for i in range(len(self.diffs) - 1):
            if not self.diffs[i + 1].mul(self.diffs[i], field).is_zero():
                return False
        return True


@dataclass(frozen=True)
class CohomologySummary:
    """Per-degree cohomology dimensions with stored representative cocycles."""

    lo: int
    hi: int
    dims: tuple
    representatives: tuple  # per degree: tuple of coordinate vectors

    def dim(self, p: int) -> int:
        if self.lo <= p <= self.hi:
            return self.dims[p - self.lo]
        return 0

    def reps(self, p: int) -> tuple:
        if self.lo <= p <= self.hi:
            return self.representatives[p - self.lo]
        return ()

    def total(self) -> int:
        return sum(self.dims)


def cochain_complex(fc: FaceComplex, g: int, field: Field) -> VSComplex:
    """The upper-set cochain complex of ``fc`` above the face ``g``.

    Degree-p basis: faces F >= g with dim F = p; the entry of the
    differential from F to a cover F' is the cover sign.
    """
    ups = upper_set(fc, g)
    labels = tuple(ups.degree(p) for p in range(ups.lo, ups.hi + 1))
    diffs = []
    for p in range(ups.lo, ups.hi):
        dom = ups.degree(p)
        cod = ups.degree(p + 1)
        cod_index = {f: i for i, f in enumerate(cod)}
        rows = [[field.zero()] * len(dom) for _ in cod]
        for j, f in enumerate(dom):
            for f2, sign in fc.covers_above(f):
                i = cod_index.get(f2)
                if i is not None:
                    rows[i][j] = field.reduce(sign)
        diffs.append(Mat.from_rows(rows, field))
    return VSComplex(ups.lo, ups.hi, labels, tuple(diffs))


def echelon_representatives(kernel, image, field: Field):
    """Kernel vectors extending the image to a basis of the kernel.

    Both inputs are lists of coordinate vectors with image <= kernel.  The
    selection is the deterministic pivot choice on the matrix
    [image | kernel], so representatives are canonical.
    """
    if not kernel:
        return ()
    n = len(kernel[0])
    cols = list(image) + list(kernel)
    if n == 0:
        return ()
    rows = [[field.reduce(c[i]) for c in cols] for i in range(n)]
    pivots = _rref(rows, field)
    picked = [j - len(image) for j in pivots if j >= len(image)]
    return tuple(kernel[j] for j in picked)


def cohomology_summary(vs: VSComplex, field: Field) -> CohomologySummary:
    """Kernel-mod-image dimensions and echelon representatives per degree."""
    dims = []
    reps = []
    for p in range(vs.lo, vs.hi + 1):
        ker = kernel_basis(vs.diff(p, field), field)
        if p > vs.lo:
            img = image_basis(vs.diff(p - 1, field), field)
        else:
            img = []
        chosen = echelon_representatives(ker, img, field)
        dims.append(len(chosen))
        reps.append(chosen)
    return CohomologySummary(vs.lo, vs.hi, tuple(dims), tuple(reps))


def local_cohomology(fc: FaceComplex, g: int, field: Field) -> CohomologySummary:
    """Cohomology of the upper-set complex near ``g``, with representatives."""
    return cohomology_summary(cochain_complex(fc, g, field), field)


def _restriction_core(sign, src, src_h, dst, dst_h, p, field: Field) -> Mat:
    src_reps = src_h.reps(p)
    dst_reps = dst_h.reps(p)
    rows = len(dst_reps)
    cols = len(src_reps)
    if rows == 0 or cols == 0:
        return Mat.zeros(rows, cols, field)

    dst_basis = dst.basis(p)
    dst_index = {f: i for i, f in enumerate(dst_basis)}
    cob = dst.diff(p - 1, field)
    generators = [list(r) for r in dst_reps]
    for j in range(cob.cols):
        generators.append(list(cob.col(j)))

    out_cols = []
    for rep in src_reps:
        vec = [field.zero()] * len(dst_basis)
        for f, x in zip(src.basis(p), rep):
            vec[dst_index[f]] = x
        sol = solve_in_subspace(vec, generators, field)
        if sol is None:
            raise RuntimeError("a cocycle failed to reduce in the larger complex")
        out_cols.append([field.reduce(sign * c) for c in sol[: len(dst_reps)]])
    rows_data = [[out_cols[j][i] for j in range(cols)] for i in range(rows)]
    return Mat.from_rows(rows_data, field)


def restriction_map(fc: FaceComplex, g: int, g_prime: int, field: Field, p: int) -> Mat:
    """The sign-weighted restriction on degree-p local cohomology.

    ``g_prime`` must be a facet of ``g``; the matrix sends the stored
    representative basis near ``g`` into the one near ``g_prime``, scaled
    by the cover sign, by re-expressing each representative inside the
    larger upper-set complex modulo coboundaries.
    """
    if not fc.is_cover(g_prime, g):
        raise ValueError(f"face {g_prime} is not a facet of face {g}")
    sign = fc.cover_sign(g_prime, g)
    src = cochain_complex(fc, g, field)
    dst = cochain_complex(fc, g_prime, field)
    return _restriction_core(
        sign, src, cohomology_summary(src, field), dst, cohomology_summary(dst, field), p, field
    )


class CMResult(NamedTuple):
    ok: bool
    witness: tuple | None  # (face id, cohomological degree, dimension)

    def __bool__(self) -> bool:  # allow `if is_cohen_macaulay(...)`
        return self.ok


def _local_dims(args):
    fc, g, field = args
    return local_cohomology(fc, g, field)


def is_cohen_macaulay(fc: FaceComplex, field: Field) -> CMResult:
    """Whether all local cohomology below the top dimension vanishes.

    On failure the witness is the first (face, degree) pair in face order
    with a nonzero group, together with its dimension.  A complex with
    only the minimal face is Cohen-Macaulay (the condition is vacuous).
    The ZEEMAC_JOBS environment variable >1 computes faces concurrently.
    """
    n = fc.dim
    order = [f.id for f in fc.faces]
    jobs = int(os.environ.get("ZEEMAC_JOBS", "1") or "1")
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            summaries = list(pool.map(_local_dims, [(fc, g, field) for g in order]))
    else:
        summaries = [local_cohomology(fc, g, field) for g in order]
    for g, summary in zip(order, summaries):
        for p in range(summary.lo, min(summary.hi, n - 1) + 1):
            d = summary.dim(p)
            if p < n and d > 0:
                return CMResult(False, (g, p, d))
    return CMResult(True, None)
