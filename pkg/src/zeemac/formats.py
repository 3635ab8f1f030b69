"""Input file parsing and machine-readable resolution documents.

Three line-oriented input formats, distinguished by their first keyword
(``#`` comments and blank lines are ignored everywhere; all integers are
arbitrary precision):

simplicial            polyhedral              semigroup
  vertices 3            ambient 2               ambient 3
  facet 1 2             face 0 0 origin         functional 1 0 0
  facet 1 3             face 1 1 ray            functional 0 1 0
  facet 2 3             cover 0 1 +1            functional -1 0 1
                                                functional 0 -1 1
                                                delta 1        # optional

A simplicial file carries the complex itself over the orthant.  A
polyhedral file lists faces (id, dimension, optional label) and signed
covers explicitly; it carries no lattice geometry, so only degree-zero
computations apply.  A semigroup file cuts the cone out by primitive
functionals; optional ``delta`` lines select the subcomplex generated by
the faces on which the named functionals (1-based) vanish, defaulting to
the whole face lattice.

Resolutions serialize to JSON documents that embed the input complex, the
terms (face keys per copy), the scalar block matrices, the augmentation
and the certificates; ``resolution_from_doc`` re-ingests such a document
so emitted resolutions can be re-verified.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .complexes import (
    Cover,
    Face,
    FaceComplex,
    SimplicialComplex,
    cone_of_simplicial,
    subcomplex,
)
from .linalg import Field, Mat, QQ, parse_field
from .resolutions import FaceModuleComplex, FaceModule
from .semigroup import AffineSemigroup, face_lattice


class InputFormatError(ValueError):
    """Malformed input file; the message carries the offending line."""


@dataclass
class InputBundle:
    kind: str  # simplicial | polyhedral | semigroup
    fc: FaceComplex
    sc: SimplicialComplex | None = None
    semigroup: AffineSemigroup | None = None
    delta_selectors: tuple | None = None  # for semigroup inputs


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_input_text(text: str) -> InputBundle:
    rows = list(_lines(text))
    if not rows:
        raise InputFormatError("empty input file")
    _, head = rows[0]
    kind = head[0].lower()
    body = rows[1:]
    if kind == "simplicial":
        return _parse_simplicial(body)
    if kind == "polyhedral":
        return _parse_polyhedral(body)
    if kind == "semigroup":
        return _parse_semigroup(body)
    raise InputFormatError(
        f"line 1: unknown input kind {head[0]!r}; expected simplicial, polyhedral or semigroup"
    )


def load_input(path: str) -> InputBundle:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_input_text(fh.read())


def _parse_simplicial(body) -> InputBundle:
    d = None
    facets = []
    for lineno, toks in body:
        if toks[0] == "vertices":
            d = int(toks[1])
        elif toks[0] == "facet":
            facets.append(frozenset(int(t) for t in toks[1:]))
        else:
            raise InputFormatError(f"line {lineno}: unexpected {toks[0]!r} in a simplicial file")
    if d is None:
        raise InputFormatError("missing 'vertices' line")
    try:
        sc = SimplicialComplex.from_facets(d, facets)
    except ValueError as exc:
        raise InputFormatError(str(exc)) from exc
    fc = cone_of_simplicial(sc)
    return InputBundle("simplicial", fc, sc=sc, semigroup=fc.semigroup)


def _parse_polyhedral(body) -> InputBundle:
    ambient = None
    faces = []
    covers = []
    for lineno, toks in body:
        if toks[0] == "ambient":
            ambient = int(toks[1])
        elif toks[0] == "face":
            fid, dim = int(toks[1]), int(toks[2])
            label = toks[3] if len(toks) > 3 else f"f{fid}"
            faces.append((fid, dim, label))
        elif toks[0] == "cover":
            covers.append((int(toks[1]), int(toks[2]), int(toks[3])))
        else:
            raise InputFormatError(f"line {lineno}: unexpected {toks[0]!r} in a polyhedral file")
    if ambient is None:
        raise InputFormatError("missing 'ambient' line")
    faces.sort()
    if [f[0] for f in faces] != list(range(len(faces))):
        raise InputFormatError("face ids must be exactly 0..n-1")
    fc = FaceComplex(
        [Face(fid, dim, label, key=("p", fid)) for fid, dim, label in faces],
        [Cover(lo, hi, sign) for lo, hi, sign in covers],
        ambient,
    )
    return InputBundle("polyhedral", fc)


def _parse_semigroup(body) -> InputBundle:
    ambient = None
    functionals = []
    selectors = []
    for lineno, toks in body:
        if toks[0] == "ambient":
            ambient = int(toks[1])
        elif toks[0] == "functional":
            functionals.append(tuple(int(t) for t in toks[1:]))
        elif toks[0] == "delta":
            selectors.append(tuple(int(t) for t in toks[1:]))
        else:
            raise InputFormatError(f"line {lineno}: unexpected {toks[0]!r} in a semigroup file")
    if ambient is None:
        raise InputFormatError("missing 'ambient' line")
    try:
        q = AffineSemigroup(ambient, functionals)
    except ValueError as exc:
        raise InputFormatError(str(exc)) from exc
    full = face_lattice(q)
    fc = full
    chosen = None
    if selectors:
        ids = []
        for sel in selectors:
            cf = q.face_with_vanishing([i - 1 for i in sel])
            matches = [i for i, c in full.cone_faces.items() if c == cf]
            ids.append(matches[0])
        fc = subcomplex(full, ids)
        chosen = tuple(selectors)
    return InputBundle("semigroup", fc, semigroup=q, delta_selectors=chosen)


# -- JSON documents ---------------------------------------------------------


def _scalar_to_str(x) -> str:
    return str(x)


def _scalar_from_str(s: str, field: Field):
    return field.reduce(Fraction(s))


def _mat_to_doc(m: Mat) -> dict:
    return {"rows": m.rows, "cols": m.cols, "entries": [_scalar_to_str(x) for x in m.entries]}


def _mat_from_doc(doc: dict, field: Field) -> Mat:
    entries = tuple(_scalar_from_str(s, field) for s in doc["entries"])
    return Mat(doc["rows"], doc["cols"], entries)


def complex_to_doc(bundle: InputBundle) -> dict:
    if bundle.kind == "simplicial":
        return {
            "type": "simplicial",
            "vertices": bundle.sc.d,
            "facets": [sorted(f) for f in bundle.sc.facets],
        }
    if bundle.kind == "semigroup":
        return {
            "type": "semigroup",
            "ambient": bundle.semigroup.d,
            "functionals": [list(t) for t in bundle.semigroup.functionals],
            "delta": [list(s) for s in bundle.delta_selectors] if bundle.delta_selectors else None,
        }
    fc = bundle.fc
    return {
        "type": "polyhedral",
        "ambient": fc.ambient_dim,
        "faces": [[f.id, f.dim, f.label] for f in fc.faces],
        "covers": [[c.lower, c.upper, c.sign] for c in fc.covers],
    }


def bundle_from_doc(doc: dict) -> InputBundle:
    t = doc["type"]
    if t == "simplicial":
        sc = SimplicialComplex.from_facets(doc["vertices"], [frozenset(f) for f in doc["facets"]])
        fc = cone_of_simplicial(sc)
        return InputBundle("simplicial", fc, sc=sc, semigroup=fc.semigroup)
    if t == "semigroup":
        q = AffineSemigroup(doc["ambient"], [tuple(f) for f in doc["functionals"]])
        full = face_lattice(q)
        fc = full
        chosen = None
        if doc.get("delta"):
            ids = []
            for sel in doc["delta"]:
                cf = q.face_with_vanishing([i - 1 for i in sel])
                ids.append([i for i, c in full.cone_faces.items() if c == cf][0])
            fc = subcomplex(full, ids)
            chosen = tuple(tuple(s) for s in doc["delta"])
        return InputBundle("semigroup", fc, semigroup=q, delta_selectors=chosen)
    if t == "polyhedral":
        fc = FaceComplex(
            [Face(fid, dim, label, key=("p", fid)) for fid, dim, label in doc["faces"]],
            [Cover(lo, hi, sign) for lo, hi, sign in doc["covers"]],
            doc["ambient"],
        )
        return InputBundle("polyhedral", fc)
    raise InputFormatError(f"unknown complex type {t!r}")


def _face_key_str(fc: FaceComplex, fid: int) -> str:
    key = fc.face(fid).key
    if key is None:
        return f"id:{fid}"
    tag, payload = key[0], key[1]
    if tag == "p":
        return f"id:{payload}"
    return tag + ":" + ",".join(str(v) for v in payload)


def _face_id_from_key(fc: FaceComplex, s: str) -> int:
    tag, _, payload = s.partition(":")
    if tag == "id":
        return int(payload)
    parts = tuple(int(t) for t in payload.split(",")) if payload else ()
    for f in fc.faces:
        if f.key == (tag, parts):
            return f.id
    raise InputFormatError(f"no face with key {s!r} in the complex")


def resolution_to_doc(res: FaceModuleComplex, bundle: InputBundle, field: Field, certificates: dict | None = None) -> dict:
    return {
        "kind": "irreducible-resolution",
        "variant": res.variant,
        "field": "q" if field.is_rationals else f"p:{field.p}",
        "complex": complex_to_doc(bundle),
        "terms": [[_face_key_str(res.fc, g) for g in term.faces] for term in res.terms],
        "maps": [_mat_to_doc(m) for m in res.maps],
        "augmentation": [_scalar_to_str(x) for x in res.augmentation]
        if res.augmentation is not None
        else None,
        "certificates": certificates or {},
    }


def resolution_from_doc(doc: dict):
    """Rebuild (resolution, bundle, field) from an emitted document."""
    if doc.get("kind") != "irreducible-resolution":
        raise InputFormatError("not an irreducible-resolution document")
    field = parse_field(doc["field"])
    bundle = bundle_from_doc(doc["complex"])
    fc = bundle.fc
    terms = [FaceModule(tuple(_face_id_from_key(fc, s) for s in term)) for term in doc["terms"]]
    maps = [_mat_from_doc(m, field) for m in doc["maps"]]
    aug = None
    if doc.get("augmentation") is not None:
        aug = tuple(_scalar_from_str(s, field) for s in doc["augmentation"])
    res = FaceModuleComplex(fc, field, terms, maps, augmentation=aug, variant=doc.get("variant", ""))
    return res, bundle, field


def dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
