"""Round-tripping an optimization problem through the plain-text format.

Any problem the library can pose (including the generated stratum-distance
problems) can be serialized to a hand-editable file and solved again from
it; this is the same format the `strata-opt pop-solve` command reads.
"""

import tempfile

import numpy as np

from strata_opt.datasets import get_dataset
from strata_opt.hierarchy import HierarchyOptions, run_hierarchy
from strata_opt.mech import Sym2Tensor, build_distance_problem_sym2
from strata_opt.popfile import PopProblem, format_pop, parse_pop

a0 = Sym2Tensor.from_matrix(get_dataset("a0").voigt)
problem = build_distance_problem_sym2(a0)
pop = PopProblem(
    var_names=problem.var_names,
    objective=problem.objective,
    constraints=list(problem.constraints),
    ball=300.0,
)

text = format_pop(pop)
print("problem file (first lines):")
for line in text.splitlines()[:5]:
    print(" ", line if len(line) < 100 else line[:97] + "...")
print(f"  ... {len(text.splitlines())} statements, {len(text)} characters total\n")

with tempfile.NamedTemporaryFile("w", suffix=".pop", delete=False) as fh:
    fh.write(text)
    path = fh.name
print(f"written to {path}; solve it with:  strata-opt pop-solve {path}\n")

reparsed = parse_pop(text)
assert reparsed.objective == problem.objective  # byte-exact round trip

from strata_opt.hierarchy import add_ball_constraint

constraints = add_ball_constraint(reparsed.objective, reparsed.constraints, reparsed.ball)
result = run_hierarchy(reparsed.objective, constraints, HierarchyOptions(d_max=2))
print(f"solved from file: status {result.status_xi:+d}, bound {result.bound:.6f}")
print("minimizer:", np.round(result.minimizers[0], 6))
