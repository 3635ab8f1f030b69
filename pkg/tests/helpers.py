"""Shared fixtures: named complexes, random generators, small oracles."""

from __future__ import annotations

import random

from zeemac import AffineSemigroup, SimplicialComplex, cone_of_simplicial, face_lattice
from zeemac.complexes import subcomplex


def hollow_triangle() -> SimplicialComplex:
    return SimplicialComplex.from_facets(3, [{1, 2}, {1, 3}, {2, 3}])


def bowtie() -> SimplicialComplex:
    return SimplicialComplex.from_facets(5, [{1, 2, 3}, {3, 4, 5}])


RP2_FACETS = [
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
    (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6),
]


def rp2() -> SimplicialComplex:
    return SimplicialComplex.from_facets(6, RP2_FACETS)


def square_cone() -> AffineSemigroup:
    # cone over the unit square at height one
    return AffineSemigroup(3, [(1, 0, 0), (0, 1, 0), (-1, 0, 1), (0, -1, 1)])


def square_cone_two_facets():
    """The subcomplex of the square cone generated by the two maximal faces
    adjacent along the ray (0,0,1)."""
    q = square_cone()
    full = face_lattice(q)
    f1 = q.face_with_vanishing([0])
    f2 = q.face_with_vanishing([1])
    ids = [i for i, cf in full.cone_faces.items() if cf in (f1, f2)]
    return subcomplex(full, ids), q


def random_simplicial(rng: random.Random) -> SimplicialComplex:
    d = rng.randint(2, 6)
    roll = rng.random()
    if roll < 0.04:
        return SimplicialComplex.from_facets(d, [frozenset()])
    if roll < 0.08:
        return SimplicialComplex.from_facets(d, [frozenset(range(1, d + 1))])
    nf = rng.randint(1, 2 * d if roll < 0.2 else d)
    cand = []
    for _ in range(nf):
        size = rng.randint(1, min(d, 5))
        cand.append(frozenset(rng.sample(range(1, d + 1), size)))
    maximal = [s for s in set(cand) if not any(s < t for t in set(cand))]
    return SimplicialComplex.from_facets(d, maximal)


def random_sweep(n: int, seed: int) -> list[SimplicialComplex]:
    rng = random.Random(seed)
    return [random_simplicial(rng) for _ in range(n)]


def link_family(sc: SimplicialComplex, s) -> set[frozenset]:
    """The link of a simplicial face as a downward-closed family with the
    empty face; assumes s is a face of sc."""
    s = frozenset(s)
    return {f - s for f in sc.faces() if s <= f}


def face_id_of_vertices(fc, verts) -> int:
    key = ("s", tuple(sorted(verts)))
    for f in fc.faces:
        if f.key == key:
            return f.id
    raise KeyError(verts)


def cone_with_ids(sc: SimplicialComplex):
    fc = cone_of_simplicial(sc)
    return fc, {tuple(sorted(v for v in f.key[1])): f.id for f in fc.faces}
