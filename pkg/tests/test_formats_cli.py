import json

import pytest

from zeemac import QQ, verify_exactness
from zeemac.cli import run
from zeemac.formats import (
    InputFormatError,
    bundle_from_doc,
    complex_to_doc,
    load_input,
    parse_input_text,
    resolution_from_doc,
)

HOLLOW = "simplicial\nvertices 3\nfacet 1 2\nfacet 1 3\nfacet 2 3\n"
BOWTIE = "simplicial\nvertices 5\nfacet 1 2 3\nfacet 3 4 5\n"
RP2 = (
    "simplicial\nvertices 6\n"
    + "\n".join(
        "facet " + " ".join(str(v) for v in f)
        for f in [
            (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
            (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6),
        ]
    )
    + "\n"
)
SQUARE = (
    "semigroup\nambient 3\n"
    "functional 1 0 0\nfunctional 0 1 0\nfunctional -1 0 1\nfunctional 0 -1 1\n"
    "delta 1\ndelta 2\n"
)
POLY_EDGE = "polyhedral\nambient 1\nface 0 0 apex\nface 1 1 ray\ncover 0 1 +1\n"
POLY_BAD_SIGN = (
    "polyhedral\nambient 2\n"
    "face 0 0 o\nface 1 1 a\nface 2 1 b\nface 3 2 top\n"
    "cover 0 1 +1\ncover 0 2 +1\ncover 1 3 +1\ncover 2 3 +1\n"
)


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_parse_simplicial():
    b = parse_input_text(HOLLOW)
    assert b.kind == "simplicial" and len(b.fc.faces) == 7
    assert b.fc.has_geometry


def test_parse_polyhedral():
    b = parse_input_text(POLY_EDGE)
    assert b.kind == "polyhedral" and len(b.fc.faces) == 2
    assert not b.fc.has_geometry


def test_parse_semigroup_with_delta():
    b = parse_input_text(SQUARE)
    assert b.kind == "semigroup"
    assert len(b.fc.faces) == 6
    assert b.delta_selectors == ((1,), (2,))


def test_parse_semigroup_whole_lattice():
    b = parse_input_text(SQUARE.replace("delta 1\ndelta 2\n", ""))
    assert len(b.fc.faces) == 10


def test_parse_errors_carry_line_numbers():
    with pytest.raises(InputFormatError) as exc:
        parse_input_text("simplicial\nvertices 3\nfacetz 1 2\n")
    assert "line 3" in str(exc.value)
    with pytest.raises(InputFormatError):
        parse_input_text("geodesic\n")
    with pytest.raises(InputFormatError):
        parse_input_text("")


def test_bundle_doc_roundtrip():
    for text in (HOLLOW, SQUARE, POLY_EDGE):
        b = parse_input_text(text)
        doc = complex_to_doc(b)
        b2 = bundle_from_doc(json.loads(json.dumps(doc)))
        assert len(b2.fc.faces) == len(b.fc.faces)
        assert [f.dim for f in b2.fc.faces] == [f.dim for f in b.fc.faces]


def test_cli_cm_check_exit_codes(tmp_path, capsys):
    ht = write(tmp_path, "ht.txt", HOLLOW)
    assert run(["cm-check", ht, "--field", "q"]) == 0
    out = capsys.readouterr().out
    assert "Cohen-Macaulay" in out and "verdicts agree: yes" in out

    rp2 = write(tmp_path, "rp2.txt", RP2)
    assert run(["cm-check", rp2, "--field", "p:2"]) == 1
    out = capsys.readouterr().out
    assert "not Cohen-Macaulay" in out and "witness" in out
    assert run(["cm-check", rp2, "--field", "p:3"]) == 0
    capsys.readouterr()


def test_cli_zeeman_page_table(tmp_path, capsys):
    bow = write(tmp_path, "bow.txt", BOWTIE)
    assert run(["zeeman", bow, "--page", "1"]) == 0
    out = capsys.readouterr().out
    assert "concentration in column 3: no" in out


def test_cli_irres_refusal(tmp_path, capsys):
    bow = write(tmp_path, "bow.txt", BOWTIE)
    assert run(["irres", bow]) == 1
    out = capsys.readouterr().out
    assert "refused" in out and "witness: face {3}" in out


def test_cli_input_errors(tmp_path, capsys):
    assert run(["cm-check", str(tmp_path / "missing.txt")]) == 2
    bad = write(tmp_path, "bad.txt", "simplicial\nvertices 3\nfacet 1 2\nwhat 9\n")
    assert run(["cm-check", bad]) == 2
    err = capsys.readouterr().err
    assert "line 4" in err


def test_cli_validate(tmp_path, capsys):
    good = write(tmp_path, "edge.txt", POLY_EDGE)
    assert run(["validate", good]) == 0
    bad = write(tmp_path, "badsq.txt", POLY_BAD_SIGN)
    assert run(["validate", bad]) == 1
    out = capsys.readouterr().out
    assert "bad diamond" in out


def test_cli_reports_deterministic(tmp_path, capsys):
    ht = write(tmp_path, "ht.txt", HOLLOW)
    run(["cm-check", ht])
    first = capsys.readouterr().out
    run(["cm-check", ht])
    second = capsys.readouterr().out
    assert first == second
    run(["irres", ht, "--format", "json"])
    j1 = capsys.readouterr().out
    run(["irres", ht, "--format", "json"])
    j2 = capsys.readouterr().out
    assert j1 == j2


def test_cli_dual_and_betti(tmp_path, capsys):
    ht = write(tmp_path, "ht.txt", HOLLOW)
    assert run(["dual", ht]) == 0
    out = capsys.readouterr().out
    assert "facets" in out

    assert run(["betti", ht, "--multigraded"]) == 0
    out = capsys.readouterr().out
    assert "linear resolution: yes" in out and "agrees" in out

    bow = write(tmp_path, "bow.txt", BOWTIE)
    assert run(["betti", bow]) == 1
    out = capsys.readouterr().out
    assert "linear resolution: no" in out


def test_cli_hilbert(tmp_path, capsys):
    ht = write(tmp_path, "ht.txt", HOLLOW)
    assert run(["hilbert", ht, "--check-resolution"]) == 0
    out = capsys.readouterr().out
    assert "1 - t^3" in out and "matches" in out
    assert run(["hilbert", ht, "--degree", "1,1,0"]) == 0
    out = capsys.readouterr().out
    assert "quotient component dimension: 1" in out


def test_cli_total_irres_on_semigroup_input(tmp_path, capsys):
    sq = write(tmp_path, "sq.txt", SQUARE)
    assert run(["total-irres", sq]) == 0
    out = capsys.readouterr().out
    assert "certificate exact: True" in out


def test_resolution_json_roundtrip(tmp_path, capsys):
    ht = write(tmp_path, "ht.txt", HOLLOW)
    assert run(["irres", ht, "--format", "json"]) == 0
    out = capsys.readouterr().out
    doc = json.loads(out[out.index("{") :])
    res, bundle, field = resolution_from_doc(doc)
    assert field == QQ
    assert res.term_sizes() == (3, 3, 1)
    assert res.check_composition()
    assert verify_exactness(res).exact
    # the emitted certificates describe what we re-derive
    assert doc["certificates"]["exact"] is True
    assert doc["certificates"]["linear"] is True


def test_semigroup_json_roundtrip(tmp_path, capsys):
    sq = write(tmp_path, "sq.txt", SQUARE)
    assert run(["irres", sq, "--format", "json"]) == 0
    out = capsys.readouterr().out
    doc = json.loads(out[out.index("{") :])
    res, bundle, field = resolution_from_doc(doc)
    assert res.term_sizes() == (2, 1)
    assert verify_exactness(res).exact


def test_load_input_from_file(tmp_path):
    p = write(tmp_path, "ht.txt", HOLLOW)
    b = load_input(p)
    assert b.kind == "simplicial"


def test_cli_json_for_verdict_commands(tmp_path, capsys):
    rp2 = write(tmp_path, "rp2.txt", RP2)
    assert run(["cm-check", rp2, "--field", "p:2", "--format", "json"]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["cohen-macaulay"] is False and doc["exit"] == 1
    assert doc["witness"]["degree"] == 2

    ht = write(tmp_path, "ht.txt", HOLLOW)
    assert run(["zeeman", ht, "--page", "1", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["dims"] == {"2,0": 1, "2,-1": 3, "2,-2": 3}
    assert doc["euler"] == 1 and doc["concentration"] is True

    assert run(["dual", ht, "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["void"] is False and doc["facets"] == [[]]

    assert run(["betti", ht, "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["linear"] is True and doc["cross-check"] is True
    assert sum(e["mult"] for e in doc["entries"]) == 7

    assert run(["hilbert", ht, "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["numerator-coefficients"] == [1, 0, 0, -1]
