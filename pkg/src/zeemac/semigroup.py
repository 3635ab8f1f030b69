"""Normal affine semigroups cut out by primitive integer functionals.

A semigroup Q is the set of lattice points where every functional is
nonnegative; the cone must be pointed and full-dimensional, so Q has
trivial unit group and generates the ambient lattice.  Faces are the loci
where a closed set of functionals vanishes; each face knows a lattice
point in its relative interior (the sum of its primitive ray generators).

Incidence signs on the face lattice come from orientations: each face
carries the canonical echelon basis of its linear span, and the sign of a
cover (G, F) is the determinant sign of [basis of G, interior point of F]
expressed in the basis of F.  This satisfies the diamond axiom, which
``complexes.validate`` re-checks in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .complexes import Cover, Face, FaceComplex
from .linalg import Mat, QQ, kernel_basis, rank


@dataclass(frozen=True)
class ConeFace:
    """A face of the cone: its vanishing set (0-based functional indices),
    its dimension, and a lattice point in its relative interior."""

    vanishing: frozenset
    dim: int
    interior_point: tuple

    def label(self) -> str:
        if not self.vanishing:
            return "Q"
        return "F[" + ",".join(str(i + 1) for i in sorted(self.vanishing)) + "]"


def _primitive(vec) -> tuple[int, ...]:
    g = 0
    for x in vec:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in vec)


def _fraction_vector_to_primitive_int(v) -> tuple[int, ...]:
    mult = 1
    for x in v:
        d = x.denominator
        mult = mult * d // gcd(mult, d)
    ints = [int(x * mult) for x in v]
    return _primitive(ints)


class AffineSemigroup:
    """Lattice points of a pointed, full-dimensional rational cone."""

    def __init__(self, d: int, functionals):
        self.d = d
        fs = []
        for t in functionals:
            t = tuple(int(x) for x in t)
            if len(t) != d:
                raise ValueError(f"functional {t} does not have length {d}")
            g = 0
            for x in t:
                g = gcd(g, x)
            if g != 1:
                raise ValueError(f"functional {t} is not primitive (gcd {g})")
            fs.append(t)
        self.functionals = tuple(fs)
        tau = Mat.from_rows(list(self.functionals), QQ)
        if rank(tau, QQ) != d:
            raise ValueError("cone is not pointed: the functionals do not have full rank")
        self.rays = self._enumerate_rays()
        if not self.rays:
            raise ValueError("cone is not full-dimensional: no extreme rays found")
        if rank(Mat.from_rows([list(r) for r in self.rays], QQ), QQ) != d:
            raise ValueError("cone is not full-dimensional: rays do not span")
        self._faces = self._enumerate_faces()
        self._faces_by_vanishing = {f.vanishing: f for f in self._faces}

    @classmethod
    def orthant(cls, d: int) -> "AffineSemigroup":
        return cls(d, [tuple(1 if j == i else 0 for j in range(d)) for i in range(d)])

    # -- construction internals -------------------------------------------

    def evaluate(self, i: int, a) -> int:
        return sum(c * x for c, x in zip(self.functionals[i], a))

    def _enumerate_rays(self) -> tuple[tuple[int, ...], ...]:
        from itertools import combinations

        n = len(self.functionals)
        found = set()
        for subset in combinations(range(n), self.d - 1) if self.d > 1 else [()]:
            m = Mat.from_rows([list(self.functionals[i]) for i in subset], QQ) if subset else Mat.zeros(0, self.d, QQ)
            ker = kernel_basis(m, QQ) if subset else None
            if subset:
                if len(ker) != 1:
                    continue
                g = _fraction_vector_to_primitive_int(ker[0])
            else:
                # d == 1: the candidate line is the whole lattice
                g = (1,)
            for cand in (g, tuple(-x for x in g)):
                if all(self.evaluate(i, cand) >= 0 for i in range(n)):
                    found.add(cand)
                    break
        return tuple(sorted(found))

    def _ray_vanishing(self, ray) -> frozenset:
        return frozenset(i for i in range(len(self.functionals)) if self.evaluate(i, ray) == 0)

    def _enumerate_faces(self) -> tuple[ConeFace, ...]:
        n = len(self.functionals)
        all_idx = frozenset(range(n))
        ray_vanish = {r: self._ray_vanishing(r) for r in self.rays}

        def face_from_rays(rays):
            vanishing = all_idx
            for r in rays:
                vanishing &= ray_vanish[r]
            interior = tuple(sum(r[j] for r in rays) for j in range(self.d))
            dim = rank(Mat.from_rows([list(r) for r in rays], QQ), QQ)
            return ConeFace(frozenset(vanishing), dim, interior), tuple(sorted(rays))

        faces: dict[frozenset, tuple[ConeFace, tuple]] = {}
        top, top_rays = face_from_rays(list(self.rays))
        faces[top.vanishing] = (top, top_rays)
        frontier = [top_rays]
        while frontier:
            new_frontier = []
            for rays in frontier:
                for i in range(n):
                    sub = tuple(r for r in rays if self.evaluate(i, r) == 0)
                    if not sub or len(sub) == len(rays):
                        continue
                    cf, rr = face_from_rays(list(sub))
                    if cf.vanishing not in faces:
                        faces[cf.vanishing] = (cf, rr)
                        new_frontier.append(rr)
            frontier = new_frontier
        minimal = ConeFace(all_idx, 0, (0,) * self.d)
        out = [minimal] + [cf for cf, _ in faces.values()]
        out.sort(key=lambda f: (f.dim, sorted(f.vanishing), f.interior_point))
        self._rays_of = {cf.vanishing: rr for cf, rr in faces.values()}
        self._rays_of[minimal.vanishing] = ()
        return tuple(out)

    # -- public queries -----------------------------------------------------

    def faces(self) -> tuple[ConeFace, ...]:
        return self._faces

    def face_with_vanishing(self, indices) -> ConeFace:
        """The face on which the given functionals (0-based) vanish; the
        vanishing set is closed up automatically."""
        given = frozenset(indices)
        rays = [r for r in self.rays if all(self.evaluate(i, r) == 0 for i in given)]
        if not rays:
            return self._faces[0]
        vanishing = frozenset(
            i for i in range(len(self.functionals)) if all(self.evaluate(i, r) == 0 for r in rays)
        )
        return self._faces_by_vanishing[vanishing]

    def rays_of(self, face: ConeFace) -> tuple:
        return self._rays_of[face.vanishing]

    def membership(self, face: ConeFace, a) -> bool:
        """Whether ``a`` lies on the face: zero on its vanishing set and
        nonnegative on every functional."""
        a = tuple(a)
        if len(a) != self.d:
            raise ValueError(f"degree vector has length {len(a)}, expected {self.d}")
        for i in range(len(self.functionals)):
            v = self.evaluate(i, a)
            if v < 0:
                return False
            if v != 0 and i in face.vanishing:
                return False
        return True

    def relint_membership(self, face: ConeFace, a) -> bool:
        """Whether ``a`` lies in the relative interior of the face: zero on
        the vanishing set, strictly positive elsewhere."""
        a = tuple(a)
        if len(a) != self.d:
            raise ValueError(f"degree vector has length {len(a)}, expected {self.d}")
        for i in range(len(self.functionals)):
            v = self.evaluate(i, a)
            if i in face.vanishing:
                if v != 0:
                    return False
            elif v <= 0:
                return False
        return True

    def carrier(self, a):
        """The smallest face containing ``a``, or None when a is outside Q."""
        a = tuple(a)
        vals = [self.evaluate(i, a) for i in range(len(self.functionals))]
        if any(v < 0 for v in vals):
            return None
        vanishing = frozenset(i for i, v in enumerate(vals) if v == 0)
        best = None
        for f in self._faces:
            if f.vanishing >= vanishing and self.membership(f, a):
                if best is None or f.dim < best.dim:
                    best = f
        return best


def face_lattice(q: AffineSemigroup) -> FaceComplex:
    """The full face lattice of the cone as a validated FaceComplex.

    Signs come from the orientation-determinant rule with the canonical
    echelon basis of each face's span and the face's interior point as the
    inward vector.
    """
    cone_faces = list(q.faces())
    index = {cf.vanishing: i for i, cf in enumerate(cone_faces)}
    faces = [Face(i, cf.dim, cf.label(), key=("v", tuple(sorted(cf.vanishing)))) for i, cf in enumerate(cone_faces)]

    bases = {i: _echelon_basis(q.rays_of(cf)) for i, cf in enumerate(cone_faces)}

    covers = []
    for gi, g in enumerate(cone_faces):
        for fi, f in enumerate(cone_faces):
            if f.dim != g.dim + 1:
                continue
            if not (g.vanishing > f.vanishing):
                continue
            if not set(q.rays_of(g)) <= set(q.rays_of(f)):
                continue
            sign = _orientation_sign(bases[gi], f.interior_point, bases[fi])
            covers.append(Cover(gi, fi, sign))
    return FaceComplex(
        faces,
        covers,
        q.d,
        cone_faces={i: cf for i, cf in enumerate(cone_faces)},
        semigroup=q,
    )


def _echelon_basis(rays) -> tuple[tuple[Fraction, ...], ...]:
    """Canonical ordered basis of the span of the given rays: the nonzero
    rows of the reduced row echelon form (lexicographically smallest)."""
    if not rays:
        return ()
    from .linalg import _rref

    rows = [[Fraction(x) for x in r] for r in rays]
    _rref(rows, QQ)
    return tuple(tuple(row) for row in rows if any(row))


def _coords_in_echelon_basis(v, basis):
    """Coordinates of v in an rref basis: read off the pivot columns."""
    pivots = []
    for b in basis:
        for j, x in enumerate(b):
            if x != 0:
                pivots.append(j)
                break
    coords = [Fraction(v[j]) for j in pivots]
    # consistency: v must lie in the span
    residual = [Fraction(x) for x in v]
    for c, b in zip(coords, basis):
        for j in range(len(residual)):
            residual[j] -= c * b[j]
    if any(residual):
        raise ValueError("vector does not lie in the span of the basis")
    return coords


def _det_sign(rows) -> int:
    """Sign of the determinant of a small square Fraction matrix."""
    n = len(rows)
    m = [list(r) for r in rows]
    sign = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                for j in range(c, n):
                    m[i][j] -= f * m[c][j]
        if m[c][c] < 0:
            sign = -sign
    return sign


def _orientation_sign(basis_g, interior_f, basis_f) -> int:
    """Determinant sign of [basis of G; interior point of F] in basis of F."""
    rows = [_coords_in_echelon_basis(b, basis_f) for b in basis_g]
    rows.append(_coords_in_echelon_basis(interior_f, basis_f))
    s = _det_sign(rows)
    if s == 0:
        raise ValueError("degenerate orientation data on a cover pair")
    return s


def membership(q: AffineSemigroup, face: ConeFace, a) -> bool:
    return q.membership(face, a)


def relint_representatives(q: AffineSemigroup) -> dict:
    """One lattice point strictly inside each face; the zero vector for the
    minimal face."""
    out = {}
    for f in q.faces():
        out[f] = f.interior_point
    return out
