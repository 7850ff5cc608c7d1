"""CSV tables and plain-text solve reports."""

from __future__ import annotations

from collections.abc import Sequence
import csv
import io
from pathlib import Path

from mixedmag.const import CSV_COMPARE_COLUMNS, CSV_STUDY_COLUMNS
from mixedmag.models import CertificationReport, ComparisonRow, MeshInfo, SolveReport, StudyRow


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def study_csv(rows: Sequence[StudyRow]) -> str:
    """Render convergence study rows with one line per formulation and level."""
    return _csv_text(
        CSV_STUDY_COLUMNS,
        [
            (
                row["formulation"],
                str(row["order"]),
                f"{row['h']:.6e}",
                f"{row['error']:.6e}",
                "" if row["eoc"] is None else f"{row['eoc']:.4f}",
                str(row["newton_iterations"]),
                f"{row['wall_time_seconds']:.4f}",
                str(row["ndofs"]),
                str(row["nnz"]),
            )
            for row in rows
        ],
    )


def comparison_csv(rows: Sequence[ComparisonRow]) -> str:
    """Render system sizes and one-step costs of both formulations."""
    return _csv_text(
        CSV_COMPARE_COLUMNS,
        [
            (
                row["method"],
                str(row["order"]),
                str(row["ndofs"]),
                str(row["nnz"]),
                f"{row['cpu_time']:.4f}",
            )
            for row in rows
        ],
    )


def report_text(report: SolveReport, timings: bool = True) -> str:
    """Plain-text Newton trace of one solve."""
    lines = [
        f"formulation: {report.formulation.value}",
        f"order: {report.order}",
        f"converged: {'yes' if report.converged else 'no'}",
        f"iterations: {report.iterations}",
        f"ndofs: {report.ndofs}",
        f"nnz: {report.nnz}",
        f"reference residual: {report.reference_norm:.6e}",
    ]
    if timings:
        lines.append(f"wall time: {report.wall_time:.4f} s")
    lines.append("iteration  residual      relative      step")
    lines += [
        f"{record['iteration']:>9}  {record['residual_norm']:.6e}  "
        f"{record['relative_residual']:.6e}  {record['step']:.4g}"
        for record in report.history
    ]
    return "\n".join(lines) + "\n"


def certification_text(reports: Sequence[CertificationReport]) -> str:
    """One line per certified material region."""
    lines = ["region  law            alpha         lipschitz     duality_error"]
    for report in reports:
        duality = (
            "-" if report["duality_error"] is None else f"{report['duality_error']:.3e}"
        )
        lines.append(
            f"{report['region']:>6}  {report['law']:<13}  {report['alpha']:.6e}  "
            f"{report['lipschitz']:.6e}  {duality}"
        )
    return "\n".join(lines) + "\n"


def mesh_info_text(info: MeshInfo) -> str:
    """Counts, quality and Euler check of a mesh."""
    return (
        f"V={info['num_nodes']} E={info['num_edges']} T={info['num_triangles']}\n"
        f"boundary edges: {info['num_boundary_edges']}\n"
        f"h={info['h']:.6g} h_min={info['h_min']:.6g} shape_ratio={info['shape_ratio']:.6g}\n"
        f"Euler {'OK' if info['euler_ok'] else 'FAILED (not simply connected)'}\n"
    )


def write_text(path: str | Path, text: str) -> Path:
    """Write text, creating the parent directory."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path
