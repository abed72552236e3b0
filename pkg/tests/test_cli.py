"""Command-line interface.

Dispatches in-process through ``projstruct.cli.dispatch`` and pins the
input-document format, every subcommand's stdout contract, the exit-code
taxonomy (0 holds / 1 negative / 2 usage / 3 parse-math) and the
byte-determinism of the JSON report mode.
"""

import json

import pytest

from projstruct.cli import DocumentError, dispatch, load_document

TRIVIAL_DOC = """\
[global]
order = 10

[structure]
A = "x"
B = "0"
C = "0"
D = "1"

[field VERT]
a = "0"
b = "1"

[field TILT]
a = "0"
b = "x"
"""

PARAM_DOC = """\
[params]
lam = 2/3

[structure]
A = "lam * x"
D = "1"
"""

PENCIL_DOC = """\
[global]
order = 10

[pencil]
P0 = "0"
Q0 = "1"
Pinf = "-1"
Qinf = "-(x^2 + y)"
"""


@pytest.fixture
def write(tmp_path):
    def _write(text, name="doc.ini"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return _write


# --- document loading ----------------------------------------------------------


def test_load_document_defaults(write):
    doc = load_document(write("[structure]\nB = \"x\"\n"))
    assert doc.order == 12
    assert doc.structure.B.coeff(1, 0) == 1
    assert doc.structure.A.is_zero()
    assert doc.structure.D.is_zero()
    assert doc.fields == {}
    assert doc.pencil is None


def test_load_document_reads_params_fields_and_pencil(write):
    doc = load_document(write(TRIVIAL_DOC + "\n[pencil]\n"
                              "P0 = \"0\"\nQ0 = \"1\"\n"
                              "Pinf = \"-1\"\nQinf = \"-y\"\n"))
    assert doc.order == 10
    assert set(doc.fields) == {"VERT", "TILT"}
    assert doc.pencil is not None


def test_load_document_rejects_incomplete_sections(write):
    with pytest.raises(DocumentError):
        load_document(write("[field V]\na = \"1\"\n"))
    with pytest.raises(DocumentError):
        load_document(write("[pencil]\nP0 = \"1\"\n"))
    with pytest.raises(DocumentError):
        load_document(write("[global]\norder = never\n"))
    with pytest.raises(DocumentError):
        load_document(write("[params]\nt = one\n"))


def test_document_values_may_be_quoted_or_bare(write):
    quoted = load_document(write('[structure]\nA = "x + 1"\n'))
    bare = load_document(write("[structure]\nA = x + 1\n", "bare.ini"))
    assert quoted.structure.A == bare.structure.A


# --- invariants / linearizable ---------------------------------------------------


def test_invariants_worked_example(write, capsys):
    # (A, B, C, D) = (x, 0, 0, 1) has constant invariants (-3, 0).
    code = dispatch(["invariants", write(TRIVIAL_DOC)])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    assert out == ["L1 = -3", "L2 = 0"]


def test_linearizable_negative_names_a_witness(write, capsys):
    assert dispatch(["linearizable", write(TRIVIAL_DOC)]) == 1
    assert capsys.readouterr().out == "not linearizable: L1 = -3\n"


def test_linearizable_positive(write, capsys):
    # (A, B, c, 0) with constant c has vanishing invariants.
    doc = '[structure]\nA = "x"\nB = "1 - x"\nC = "5"\n'
    assert dispatch(["linearizable", write(doc)]) == 0
    assert "linearizable" in capsys.readouterr().out


def test_invariants_requires_a_structure_section(write, capsys):
    assert dispatch(["invariants", write(PENCIL_DOC)]) == 3
    assert "structure" in capsys.readouterr().err


# --- symcheck / symdim -----------------------------------------------------------


def test_symcheck_accepts_a_symmetry(write, capsys):
    assert dispatch(["symcheck", write(TRIVIAL_DOC), "--field", "VERT"]) == 0
    assert "symmetry" in capsys.readouterr().out


def test_symcheck_rejects_a_non_symmetry(write, capsys):
    assert dispatch(["symcheck", write(TRIVIAL_DOC), "--field", "TILT"]) == 1
    out = capsys.readouterr().out
    assert out.startswith("not a symmetry: p^")


def test_symcheck_unknown_field_is_a_document_error(write, capsys):
    assert dispatch(["symcheck", write(TRIVIAL_DOC), "--field", "NOPE"]) == 3
    assert "field NOPE" in capsys.readouterr().err


def test_symdim_reports_the_stabilized_dimension(write, capsys):
    doc = "[global]\norder = 9\n\n[structure]\nA = \"x\"\nD = \"1\"\n"
    assert dispatch(["symdim", write(doc)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("dimension 1 (stabilized")


def test_symdim_trivial_structure_has_the_full_algebra(write, capsys):
    assert dispatch(["symdim", write("[structure]\n")]) == 0
    assert capsys.readouterr().out.startswith("dimension 8 ")


def test_symdim_needs_enough_working_order(write, capsys):
    doc = "[global]\norder = 2\n\n[structure]\nA = \"x\"\n"
    assert dispatch(["symdim", write(doc)]) == 3


# --- pullback / pencil / geodesic ------------------------------------------------


def test_pullback_composes_left_to_right(write, capsys):
    code = dispatch(["pullback", write(TRIVIAL_DOC), "--scale", "2"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    assert out == ["A = 1/2 * x", "B = 0", "C = 0", "D = 4"]


def test_pullback_x_reparametrization(write, capsys):
    doc = '[structure]\nB = "1"\n'
    code = dispatch(["pullback", write(doc), "--psi", "2*x"])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    assert out[1] == "B = 2"


def test_pencil_prints_the_induced_structure(write, capsys):
    code = dispatch(["pencil", write(PENCIL_DOC)])
    out = capsys.readouterr().out.splitlines()
    assert code == 0
    assert out == ["A = 0", "B = 0", "C = 2 * x", "D = 1"]


def test_geodesic_members_of_a_pencil(write, capsys):
    path = write(PENCIL_DOC)
    for z in ("0", "1", "-1", "1/2", "inf"):
        assert dispatch(["geodesic", path, "--z", z]) == 0
        assert "every leaf is a geodesic" in capsys.readouterr().out


def test_geodesic_against_an_unrelated_structure(write, capsys):
    doc = PENCIL_DOC + "\n[structure]\nA = \"x\"\nD = \"1\"\n"
    assert dispatch(["geodesic", write(doc), "--z", "0"]) == 1
    assert "not geodesic" in capsys.readouterr().out


def test_geodesic_rejects_a_bad_member_label(write, capsys):
    assert dispatch(["geodesic", write(PENCIL_DOC), "--z", "sideways"]) == 3


# --- parameters and failure taxonomy --------------------------------------------


def test_params_bind_into_expressions(write, capsys):
    assert dispatch(["invariants", write(PARAM_DOC)]) == 0
    assert capsys.readouterr().out.splitlines() == ["L1 = -2", "L2 = 0"]


def test_unbound_parameter_is_a_math_error(write, capsys):
    assert dispatch(["invariants", write('[structure]\nA = "t * x"\n')]) == 3
    assert capsys.readouterr().err.startswith("error: ")


def test_malformed_expression_reports_offset(write, capsys):
    assert dispatch(["invariants", write('[structure]\nA = "x +"\n')]) == 3
    assert "offset" in capsys.readouterr().err


def test_missing_file_is_a_parse_error(tmp_path, capsys):
    assert dispatch(["invariants", str(tmp_path / "absent.ini")]) == 3


def test_usage_errors_exit_2(write, capsys):
    assert dispatch(["frobnicate"]) == 2
    assert dispatch(["symcheck", write(TRIVIAL_DOC)]) == 2  # missing --field
    assert dispatch([]) == 2
    capsys.readouterr()


def test_help_exits_zero(capsys):
    assert dispatch(["--help"]) == 0
    assert "verify-paper" in capsys.readouterr().out


# --- verify-paper ----------------------------------------------------------------


def test_verify_paper_unknown_case_is_a_usage_error(capsys):
    assert dispatch(["verify-paper", "--case", "thm99"]) == 2
    assert "unknown case" in capsys.readouterr().err


def test_verify_paper_single_case_text_mode(capsys):
    assert dispatch(["verify-paper", "--case", "thm31.iii", "--order", "8"]) == 0
    out = capsys.readouterr().out
    assert "thm31.iii" in out
    assert out.rstrip().splitlines()[-1].startswith("reports: 1 ")


def test_verify_paper_json_is_byte_identical_across_runs(capsys):
    argv = ["verify-paper", "--case", "thm41.i.a.1", "--order", "8", "--json"]
    assert dispatch(argv) == 0
    first = capsys.readouterr().out
    assert dispatch(argv) == 0
    second = capsys.readouterr().out
    assert first == second
    payload = json.loads(first)
    assert [obj["case"] for obj in payload] == ["thm41.i.a.1"] * 3


def test_verify_paper_timestamps_wrap_the_payload(capsys):
    argv = ["verify-paper", "--case", "thm31.iii", "--order", "8",
            "--json", "--timestamps"]
    assert dispatch(argv) == 0
    payload = json.loads(capsys.readouterr().out)
    assert set(payload) == {"generated_at", "cases"}


def test_verify_paper_inconsistent_findings_still_exit_zero(capsys):
    assert dispatch(["verify-paper", "--case", "thm31.i.b", "--order", "8"]) == 0
    assert "paper-inconsistent" in capsys.readouterr().out
