"""Test the command line interface."""

import pytest

from mixedmag.cli import EXIT_INPUT_ERROR, EXIT_OK, EXIT_SOLVER_ERROR, run

from . import MATERIALS_PATH, MESHES_PATH, RESOURCES_PATH


@pytest.mark.parametrize("filename", ["two_triangles.mesh", "square.msh"])
def test_mesh_info(capsys, filename):
    """Test counts and the Euler check of the two-triangle fixtures."""
    assert run(["mesh-info", "--mesh", str(MESHES_PATH / filename)]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("V=4 E=5 T=2\n")
    assert "Euler OK" in out


def test_mesh_info_of_case(capsys):
    """Test a synthetic case mesh is used without --mesh."""
    assert run(["mesh-info", "--case", "checkerboard", "--base-n", "2"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("V=9 E=16 T=8\n")


def test_material_check(capsys, tmp_path):
    """Test alpha = C_a = mu for a linear law."""
    argv = ["material-check", "--materials", str(MATERIALS_PATH / "linear.json"), "--out", str(tmp_path)]
    assert run(argv) == EXIT_OK
    text = (tmp_path / "certification.txt").read_text(encoding="utf-8")
    assert capsys.readouterr().out == text
    assert text.splitlines()[1].split()[:4] == ["0", "linear", "1.000000e+00", "1.000000e+00"]


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "--bogus"],
        ["transform"],
        ["solve", "--order", "3"],
        ["solve", "--formulation", "dual"],
        ["mesh-info", "--mesh", str(MESHES_PATH / "missing.msh")],
        ["mesh-info", "--mesh", str(MESHES_PATH / "quad_element.msh")],
        ["mesh-info", "--mesh", str(MESHES_PATH / "bad_counts.mesh")],
        ["mesh-info", "--mesh", str(MESHES_PATH / "version4.msh")],
        ["material-check", "--materials", str(MATERIALS_PATH / "bad_type.json")],
        ["material-check", "--materials", str(MATERIALS_PATH / "non_monotone.json")],
        ["solve", "--materials", str(MATERIALS_PATH / "linear.json")],
        ["study", "--case", "machine"],
    ],
)
def test_input_errors(capsys, tmp_path, argv):
    """Test invalid flags, configurations and files exit with 1 and a diagnostic."""
    assert run([*argv, "--out", str(tmp_path)]) == EXIT_INPUT_ERROR
    assert capsys.readouterr().err.startswith("mixedmag: error: ")


_SQUARE = "4 1 2\n0 0\n1 0\n1 1\n0 1\n0 1 2 0\n0 2 3 0\n"


@pytest.mark.parametrize(
    ("subcommand", "marker"),
    [
        ("study", b"0 2 11\n"),
        ("solve", b"0 2 11\n"),
        ("mesh-info", b"1 3 11\n"),
    ],
)
def test_marker_off_the_boundary(capsys, tmp_path, subcommand, marker):
    """Test a marker on an edge that is not on the boundary exits with 1."""
    mesh = tmp_path / "marked.mesh"
    mesh.write_bytes(_SQUARE.encode() + marker)
    argv = [subcommand, "--mesh", str(mesh), "--out", str(tmp_path)]
    if subcommand != "mesh-info":
        argv += ["--materials", str(MATERIALS_PATH / "linear.json"), "--levels", "2"]
    assert run(argv) == EXIT_INPUT_ERROR
    err = capsys.readouterr().err
    assert err.startswith("mixedmag: error: boundary marker on ")
    assert "Traceback" not in err


@pytest.mark.parametrize(
    ("subcommand", "flag", "filename", "content"),
    [
        ("mesh-info", "--mesh", "binary.mesh", b"4 4 2\n\xff\xfe\n"),
        ("mesh-info", "--mesh", "binary.msh", b"$MeshFormat\n\xc3\x28\n"),
        ("material-check", "--materials", "binary.json", b'{"regions": \xff}'),
        ("study", "--config", "binary.json", b'{"levels": \xff}'),
    ],
)
def test_undecodable_files(capsys, tmp_path, subcommand, flag, filename, content):
    """Test files that are not UTF-8 exit with 1 and a diagnostic."""
    path = tmp_path / filename
    path.write_bytes(content)
    assert run([subcommand, flag, str(path), "--out", str(tmp_path / "out")]) == EXIT_INPUT_ERROR
    err = capsys.readouterr().err
    assert err.startswith("mixedmag: error: ")
    assert "UTF-8" in err


def test_malformed_file_names_line(capsys):
    """Test the diagnostic of a malformed mesh carries the line number."""
    assert run(["mesh-info", "--mesh", str(MESHES_PATH / "quad_element.msh")]) == EXIT_INPUT_ERROR
    assert "line 13" in capsys.readouterr().err


def test_version(capsys):
    """Test --version exits cleanly."""
    assert run(["--version"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("mixedmag ")


def test_solve(capsys, tmp_path):
    """Test VTK files and reports for both formulations."""
    argv = ["solve", "--case", "manufactured_linear", "--base-n", "4", "--out", str(tmp_path)]
    assert run([*argv, "--no-timings"]) == EXIT_OK
    for name in ("primal", "mixed"):
        assert (tmp_path / f"solution_{name}_order1.vtk").read_text(encoding="utf-8").startswith(
            "# vtk DataFile Version"
        )
        report = (tmp_path / f"report_{name}_order1.txt").read_text(encoding="utf-8")
        assert "converged: yes" in report
        assert "iterations: 1" in report
        assert "wall time" not in report
    assert capsys.readouterr().out.count("formulation: ") == 2


def test_solve_with_mesh_and_materials(tmp_path):
    """Test a mesh file with a material file."""
    argv = [
        "solve",
        "--mesh",
        str(MESHES_PATH / "two_triangles.mesh"),
        "--materials",
        str(MATERIALS_PATH / "linear.json"),
        "--formulation",
        "mixed",
        "--order",
        "2",
        "--out",
        str(tmp_path),
    ]
    assert run(argv) == EXIT_OK
    assert (tmp_path / "solution_mixed_order2.vtk").is_file()


def test_solver_failure_dumps_report(capsys, tmp_path):
    """Test an iteration limit exits with 2 and writes the partial report."""
    argv = [
        "solve",
        "--case",
        "checkerboard_nonlinear",
        "--formulation",
        "primal",
        "--max-iterations",
        "1",
        "--out",
        str(tmp_path),
    ]
    assert run(argv) == EXIT_SOLVER_ERROR
    assert "converged: no" in (tmp_path / "failed_report.txt").read_text(encoding="utf-8")
    assert capsys.readouterr().err.startswith("mixedmag: solver failure: ")


def test_study_from_config_is_byte_stable(tmp_path):
    """Test identical invocations without timings write identical CSV files."""
    outputs = []
    for run_dir in ("first", "second"):
        out = tmp_path / run_dir
        argv = ["study", "--config", str(RESOURCES_PATH / "study.json"), "--no-timings", "--out", str(out)]
        assert run(argv) == EXIT_OK
        outputs.append((out / "study.csv").read_bytes())
    assert outputs[0] == outputs[1]
    lines = outputs[0].decode().splitlines()
    assert lines[0] == "formulation,order,h,error,eoc,iter,time,ndofs,nnz"
    assert len(lines) == 3
    assert all(line.startswith("mixed,1,") for line in lines[1:])


def test_study_rates(tmp_path):
    """Test four levels of the manufactured linear case stay in the rate band."""
    argv = ["study", "--formulation", "mixed", "--levels", "4", "--no-timings", "--out", str(tmp_path)]
    assert run(argv) == EXIT_OK
    rows = [line.split(",") for line in (tmp_path / "study.csv").read_text().splitlines()[1:]]
    assert len(rows) == 4
    assert rows[0][4] == ""
    assert all(0.85 <= float(row[4]) <= 1.15 for row in rows[1:])
    assert all(row[5] == "1" for row in rows)


def test_study_keeps_completed_rows_on_failure(tmp_path):
    """Test a failing study still writes its CSV."""
    argv = [
        "study",
        "--case",
        "checkerboard_nonlinear",
        "--formulation",
        "primal",
        "--levels",
        "2",
        "--max-iterations",
        "1",
        "--out",
        str(tmp_path),
    ]
    assert run(argv) == EXIT_SOLVER_ERROR
    assert (tmp_path / "study.csv").read_text(encoding="utf-8").startswith("formulation,")


def test_compare(capsys, tmp_path):
    """Test the comparison table of both orders."""
    argv = ["compare", "--base-n", "2", "--levels", "2", "--no-timings", "--out", str(tmp_path)]
    assert run(argv) == EXIT_OK
    text = (tmp_path / "compare.csv").read_text(encoding="utf-8")
    assert capsys.readouterr().out == text
    rows = [line.split(",") for line in text.splitlines()[1:]]
    assert [(row[0], row[1], row[2]) for row in rows] == [
        ("primal", "1", "9"),
        ("dual", "1", "40"),
        ("primal", "2", "49"),
        ("dual", "2", "80"),
    ]
    assert all(row[4] == "0.0000" for row in rows)
