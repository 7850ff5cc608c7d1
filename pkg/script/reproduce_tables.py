"""Regenerate the convergence and comparison tables."""
from pathlib import Path

from mixedmag.export import comparison_csv, study_csv, write_text
from mixedmag.mesh import refine
from mixedmag.models import Formulation
from mixedmag.post import case_by_name, compare_formulations, convergence_study

# run from project directory
# python3 -m script.reproduce_tables

OUTPUT = Path("results")

studies = [
    ("manufactured_linear", 5),
    ("manufactured_nonlinear", 5),
    ("checkerboard", 5),
    ("checkerboard_nonlinear", 5),
    ("inclusion", 5),
]

for case_name, levels in studies:
    case = case_by_name(case_name)
    case.materials.certify()
    for order in (0, 1):
        print(f"Study {case_name} order {order + 1}")
        rows = convergence_study(case, Formulation.BOTH, order, levels)
        write_text(OUTPUT / f"{case_name}_order{order + 1}.csv", study_csv(rows))

print("Comparing system sizes")
case = case_by_name("manufactured_linear")
case.materials.certify()
mesh = refine(case.base_mesh(2), 4)
write_text(OUTPUT / "compare.csv", comparison_csv(compare_formulations(mesh, case.materials)))
