"""Transient realizability between a 2-state and a 3-state system.

Walks the full decision pipeline: controllability of each system, the
realization condition (embedded small controllable subspace completed
by part of the large one), the blended model on the lcm dimension, and
the necessary modeling condition on the blend.
"""

from fractions import Fraction

from dimvar import (LinSys, build_transient_model, check_modeling_condition,
                    check_realization, ctrb_matrix, ctrb_subspace, mat)

s1 = LinSys("sigma1", mat([[0, 1], [0, 0]]), mat([[0], [1]]))
s2 = LinSys("sigma2", mat([[0, 0, 1], [0, 0, 0], [0, 1, 0]]),
            mat([[0], [1], [0]]))

print("controllability ranks:",
      ctrb_subspace(s1.A, s1.B).rank, "and", ctrb_subspace(s2.A, s2.B).rank)

rep = check_realization(s1, s2)
print(f"realizable: {rep.realizable}  (q={rep.q}, "
      f"dim C1={rep.dim_C1}, dim C2={rep.dim_C2})")
for j in range(rep.witness.dim):
    print("witness column:", rep.witness.basis[:, j].tolist())

# blend with weights 3/2 and 1/2 on dimension lcm(2, 3) = 6
model = build_transient_model(s1, s2, alpha=Fraction(3, 2),
                              beta=Fraction(1, 2))
print("\nblend A on dimension", model.dim)
for row in model.base.A:
    print("  ", [str(x) for x in row])
print("B1* =", [str(x) for x in model.B1_star[:, 0]])
print("B2* =", [str(x) for x in model.B2_star[:, 0]])

C = ctrb_matrix(model.base.A, model.base.B)
print("\nblend controllability rank:",
      ctrb_subspace(model.base.A, model.base.B).rank, "of", model.dim)

mc = check_modeling_condition(s1, s2, model)
print(f"modeling condition holds: {mc.holds} "
      f"({len(mc.tested_vectors)} lifted vectors tested, dim Cz={mc.dim_Cz})")
for v, ok in mc.tested_vectors:
    print("  ", [str(x) for x in v], "in Cz:", ok)
