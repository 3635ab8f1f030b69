"""Complexes of face modules and irreducible resolutions of face quotients.

A face module is a finite direct sum of face rings k[G]; maps between face
modules are scalar block matrices whose (G', G) block can be nonzero only
when G' is a face of G (the canonical surjection k[G] -> k[G']).  Two
resolutions of the quotient by the radical monomial ideal of a complex are
built here:

* the total resolution, collecting every pair F >= G with the total
  differential of the double complex (always exact, rarely minimal);
* the minimal linear resolution, whose i-th term gathers k[G] with
  multiplicity dim H^n_G for faces G of dimension n-i (n the top
  dimension), with sign-weighted restriction maps; it exists exactly when
  the complex is Cohen-Macaulay.

Exactness is certified degreewise at one lattice point per face of the
ambient cone.  That finite check is complete: the degree-a component of
every module in sight depends only on the smallest cone face containing a,
and all maps are degreewise scalar.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cohomology import (
    _restriction_core,
    cochain_complex,
    cohomology_summary,
    is_cohen_macaulay,
)
from .complexes import DegenerateComplexError, FaceComplex, MissingGeometryError
from .linalg import Field, Mat, QQ, rank
from .zeeman import diagonal_sign


class NotCohenMacaulayError(ValueError):
    """Raised when a minimal linear resolution is requested for a complex
    that is not Cohen-Macaulay; carries the witness (face, degree, dim)."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(
            f"not Cohen-Macaulay: H^{witness[1]} near face {witness[0]} has dimension {witness[2]}"
        )


@dataclass(frozen=True)
class FaceModule:
    """A direct sum of face rings, one entry of ``faces`` per copy.

    ``tags`` optionally records the provenance of each copy (for the total
    resolution: which upper face produced the pair).
    """

    faces: tuple
    tags: tuple | None = None

    def __len__(self) -> int:
        return len(self.faces)

    @property
    def summands(self) -> tuple:
        """The grouped (face id, multiplicity) view."""
        out = []
        for f in self.faces:
            if out and out[-1][0] == f:
                out[-1][1] += 1
            else:
                out.append([f, 1])
        return tuple((f, m) for f, m in out)


@dataclass(frozen=True)
class FaceModuleMap:
    """A scalar block map between face modules (rows index the codomain)."""

    matrix: Mat


class FaceModuleComplex:
    """Terms W^0, W^1, ... with maps and an optional augmentation from the
    face quotient (a scalar per W^0 summand)."""

    def __init__(self, fc: FaceComplex, field: Field, terms, maps, augmentation=None, variant=""):
        self.fc = fc
        self.field = field
        self.terms = tuple(terms)
        self.maps = tuple(m.matrix if isinstance(m, FaceModuleMap) else m for m in maps)
        self.augmentation = tuple(augmentation) if augmentation is not None else None
        self.variant = variant
        if len(self.maps) != max(len(self.terms) - 1, 0):
            raise ValueError("need one map per consecutive term pair")
        for i, m in enumerate(self.maps):
            if m.cols != len(self.terms[i]) or m.rows != len(self.terms[i + 1]):
                raise ValueError(f"map {i} has shape {m.rows}x{m.cols}")
        if self.augmentation is not None and self.terms:
            if len(self.augmentation) != len(self.terms[0]):
                raise ValueError("augmentation length does not match the first term")

    def __len__(self) -> int:
        return len(self.terms)

    def term_sizes(self) -> tuple:
        return tuple(len(t) for t in self.terms)

    def check_block_support(self) -> bool:
        """Entries only where the codomain face is a face of the domain face."""
        below = {f.id: self.fc.below(f.id) for f in self.fc.faces}
        for i, m in enumerate(self.maps):
            dom = self.terms[i].faces
            cod = self.terms[i + 1].faces
            for r in range(m.rows):
                for c in range(m.cols):
                    if m.entry(r, c) != 0 and cod[r] not in below[dom[c]]:
                        return False
        return True

    def check_composition(self) -> bool:
        """Consecutive maps compose to zero; augmentation lands in the kernel."""
        for i in range(len(self.maps) - 1):
            if not self.maps[i + 1].mul(self.maps[i], self.field).is_zero():
                return False
        if self.augmentation is not None and self.maps:
            if any(self.maps[0].mul_vec(self.augmentation, self.field)):
                return False
        return True


def total_resolution(fc: FaceComplex, field: Field = QQ) -> FaceModuleComplex:
    """The resolution collecting every pair F >= G, graded by dim F - dim G.

    The copy indexed by (F, G) is a copy of k[G]; the maps assemble the
    facet covers of G (with their signs) and the cofacet covers of F (with
    the row twist), exactly the total differential of the double complex.
    The augmentation hits the diagonal copies with the alternating signs.
    """
    zero = fc.faces_of_dim(0)
    if len(zero) != 1:
        raise DegenerateComplexError("the complex must have a unique minimal face")
    pairs_by_gap: dict[int, list] = {}
    for g in fc.faces:
        for f in fc.above(g.id):
            gap = fc.face(f).dim - g.dim
            pairs_by_gap.setdefault(gap, []).append((g.id, f))
    hi = max(pairs_by_gap)
    terms = []
    index = []
    for i in range(hi + 1):
        pairs = sorted(pairs_by_gap.get(i, []))
        terms.append(
            FaceModule(
                tuple(g for g, f in pairs),
                tags=tuple(fc.face(f).label for g, f in pairs),
            )
        )
        index.append({pair: k for k, pair in enumerate(pairs)})
    pair_lists = [sorted(pairs_by_gap.get(i, [])) for i in range(hi + 1)]

    maps = []
    for i in range(hi):
        dom = pair_lists[i]
        cod = pair_lists[i + 1]
        rows = [[field.zero()] * len(dom) for _ in cod]
        for j, (g, f) in enumerate(dom):
            for g2, sign in fc.covers_below(g):
                k = index[i + 1].get((g2, f))
                if k is not None:
                    rows[k][j] = field.reduce(sign)
            twist = -1 if fc.face(g).dim % 2 else 1
            for f2, sign in fc.covers_above(f):
                k = index[i + 1].get((g, f2))
                if k is not None:
                    rows[k][j] = field.reduce(twist * sign)
        maps.append(Mat.from_rows(rows, field))

    aug = [
        field.reduce(diagonal_sign(fc.face(g).dim)) if g == f else field.zero()
        for g, f in pair_lists[0]
    ]
    return FaceModuleComplex(fc, field, terms, maps, augmentation=aug, variant="total")


def minimal_linear_resolution(fc: FaceComplex, field: Field = QQ) -> FaceModuleComplex:
    """The minimal linear irreducible resolution of a Cohen-Macaulay complex.

    Term i gathers k[G] with multiplicity dim H^n_G over the faces G of
    dimension n - i (n the top dimension); the maps are the sign-weighted
    restriction matrices and the augmentation is the all-ones diagonal
    into the facet row.  Refuses non-Cohen-Macaulay input, carrying the
    witness.
    """
    verdict = is_cohen_macaulay(fc, field)
    if not verdict.ok:
        raise NotCohenMacaulayError(verdict.witness)
    n = fc.dim

    complexes = {}
    summaries = {}
    for f in fc.faces:
        c = cochain_complex(fc, f.id, field)
        complexes[f.id] = c
        summaries[f.id] = cohomology_summary(c, field)

    term_faces = []
    offsets = []  # per term: face id -> (start column, multiplicity)
    for i in range(n + 1):
        faces = []
        offs = {}
        for g in fc.faces_of_dim(n - i):
            mult = summaries[g].dim(n)
            if mult:
                offs[g] = (len(faces), mult)
                faces.extend([g] * mult)
        term_faces.append(tuple(faces))
        offsets.append(offs)
    while len(term_faces) > 1 and not term_faces[-1]:
        term_faces.pop()
        offsets.pop()

    terms = [FaceModule(faces) for faces in term_faces]
    maps = []
    for i in range(len(terms) - 1):
        dom, cod = terms[i], terms[i + 1]
        rows = [[field.zero()] * len(dom) for _ in range(len(cod))]
        for g, (c0, cm) in offsets[i].items():
            for g2, sign in fc.covers_below(g):
                tgt = offsets[i + 1].get(g2)
                if tgt is None:
                    continue
                r0, rm = tgt
                block = _restriction_core(
                    sign, complexes[g], summaries[g], complexes[g2], summaries[g2], n, field
                )
                for r in range(rm):
                    for c in range(cm):
                        rows[r0 + r][c0 + c] = block.entry(r, c)
        maps.append(Mat.from_rows(rows, field))
    aug = [field.one()] * len(terms[0])
    return FaceModuleComplex(fc, field, terms, maps, augmentation=aug, variant="minimal-linear")


@dataclass(frozen=True)
class ExactnessReport:
    exact: bool
    failing_degree: tuple | None
    checked_degrees: tuple
    note: str

    def __bool__(self) -> bool:
        return self.exact


def evaluation_degrees(fc: FaceComplex) -> tuple:
    """One lattice point per face of the ambient cone (relative-interior
    representatives).  For the orthant these are the 0/1 vectors."""
    if not fc.has_geometry:
        raise MissingGeometryError(
            "exactness verification needs the ambient semigroup; build the "
            "complex via cone_of_simplicial or face_lattice"
        )
    q = fc.semigroup
    return tuple(f.interior_point for f in q.faces())


def verify_exactness(c: FaceModuleComplex, fc: FaceComplex | None = None, field: Field | None = None) -> ExactnessReport:
    """Degreewise exactness of the augmented complex at every ambient face.

    At each evaluation degree the component of k[G] is k exactly when the
    degree lies on G, the quotient's component is k exactly when the degree
    lies on some face of the complex, and every map restricts to the
    corresponding scalar submatrix.  Exactness of each finite restriction
    certifies exactness of the whole graded complex (components are
    constant on the relative interior of each ambient face).
    """
    fc = fc if fc is not None else c.fc
    field = field if field is not None else c.field
    degrees = evaluation_degrees(fc)
    note = (
        "checked one representative degree per ambient cone face; components "
        "depend only on the smallest face containing the degree, so this "
        "finite certificate is complete"
    )
    for a in degrees:
        on_face = {f.id: fc.contains_degree(f.id, a) for f in fc.faces}
        quotient_dim = 1 if any(on_face.values()) else 0
        active = [
            [k for k, g in enumerate(term.faces) if on_face[g]] for term in c.terms
        ]
        sub = []
        for i, m in enumerate(c.maps):
            rows_idx, cols_idx = active[i + 1], active[i]
            rows = [[m.entry(r, col) for col in cols_idx] for r in rows_idx]
            sub.append(Mat.from_rows(rows, field) if rows_idx or cols_idx else Mat.zeros(0, 0, field))
        ranks = [rank(m, field) for m in sub]
        ok = True
        if c.augmentation is not None:
            aug = [c.augmentation[k] for k in active[0]]
            if quotient_dim == 1 and not any(aug):
                ok = False
        for i in range(len(c.terms)):
            dim_i = len(active[i])
            out_rank = ranks[i] if i < len(sub) else 0
            in_rank = ranks[i - 1] if i > 0 else (quotient_dim if c.augmentation is not None else 0)
            if dim_i - out_rank - in_rank != 0:
                ok = False
                break
        if not ok:
            return ExactnessReport(False, tuple(a), degrees, note)
    return ExactnessReport(True, None, degrees, note)


def is_linear(c: FaceModuleComplex, fc: FaceComplex | None = None) -> bool:
    """Whether term i is pure of dimension (top dimension) - i."""
    fc = fc if fc is not None else c.fc
    top = fc.dim
    for i, term in enumerate(c.terms):
        for g in term.faces:
            if fc.face(g).dim != top - i:
                return False
    return True


@dataclass(frozen=True)
class MinimalityScan:
    """Split pairs found between consecutive terms.

    An empty scan is a complete minimality certificate only for linear
    complexes (consecutive terms of a linear complex live in different
    dimensions, so no split pair can exist); ``certificate_complete``
    records whether that applies.
    """

    pairs: tuple
    certificate_complete: bool

    def __bool__(self) -> bool:
        return bool(self.pairs)


def minimality_scan(c: FaceModuleComplex) -> MinimalityScan:
    """All (position, domain copy, codomain copy) with equal faces joined by
    a nonzero scalar: each is a split summand pair, so a nonempty scan
    proves non-minimality."""
    found = []
    for i, m in enumerate(c.maps):
        dom = c.terms[i].faces
        cod = c.terms[i + 1].faces
        for col in range(m.cols):
            for row in range(m.rows):
                if dom[col] == cod[row] and m.entry(row, col) != 0:
                    found.append((i, col, row))
    return MinimalityScan(tuple(found), certificate_complete=is_linear(c))


def canonical_module_hilbert(fc: FaceComplex, face: int, a) -> int:
    """Degree-a dimension (0 or 1) of the canonical module of a face ring:
    1 exactly when ``a`` lies in the relative interior of the face."""
    a = tuple(a)
    if any(not isinstance(x, int) for x in a):
        raise ValueError(f"degree vector must consist of integers: {a}")
    return 1 if fc.relint_contains(face, a) else 0


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _one_minus_t_pow(k: int):
    out = [1]
    for _ in range(k):
        out = _poly_mul(out, [1, -1])
    return out


def _require_simplicial_ambient(fc: FaceComplex) -> None:
    for f in fc.faces:
        if f.key is None or f.key[0] != "s":
            raise ValueError("coarse Hilbert series need a simplicial (orthant) ambient")


def coarse_hilbert_numerator(fc: FaceComplex) -> list:
    """Numerator over (1-t)^d of the coarse Hilbert series of the quotient:
    each face of dimension k contributes t^k (1-t)^(d-k).  Simplicial only."""
    _require_simplicial_ambient(fc)
    d = fc.ambient_dim
    total = [0] * (d + 1)
    for f in fc.faces:
        term = _poly_mul([0] * f.dim + [1], _one_minus_t_pow(d - f.dim))
        for i, x in enumerate(term):
            total[i] += x
    return total


def coarse_resolution_numerator(c: FaceModuleComplex) -> list:
    """Numerator over (1-t)^d of the alternating sum of the coarse Hilbert
    series of the terms: each copy of k[G] contributes (1-t)^(d-dimG).
    Equals ``coarse_hilbert_numerator`` wherever the resolution is exact."""
    fc = c.fc
    _require_simplicial_ambient(fc)
    d = fc.ambient_dim
    total = [0] * (d + 1)
    for i, term in enumerate(c.terms):
        sign = -1 if i % 2 else 1
        for g in term.faces:
            pw = _one_minus_t_pow(d - fc.face(g).dim)
            for j, x in enumerate(pw):
                total[j] += sign * x
    return total
