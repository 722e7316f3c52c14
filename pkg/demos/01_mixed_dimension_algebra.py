"""Tour of the mixed-dimension vector and matrix algebra.

Vectors of different lengths are compared by expanding each to a common
dimension with the all-ones vector; two vectors are equivalent when the
expansions coincide.  Every class has a unique shortest member (the
irreducible representative), and addition, products, and actions all
descend to these classes.
"""

from dimvar import (j_matrix, kron, mat, ones_vector, reduce_vector,
                    second_stp, stp_action, vec, vec_add, vec_equivalent)


def show(label, value):
    if isinstance(value, (list, tuple)):
        value = "[" + ", ".join(str(x) for x in value) + "]"
    print(f"{label:<34} {value}")


x = vec([1, 1, 2, 2])
mv = reduce_vector(x)
show(f"reduce [1, 1, 2, 2] (x{mv.multiplicity}):", mv.irreducible.tolist())

# equivalence ignores repetition multiplicity
show("[1, 2] ~ [1, 1, 2, 2]:", vec_equivalent(vec([1, 2]), x))
show("[1, 2] ~ [1, 2, 3]:", vec_equivalent(vec([1, 2]), vec([1, 2, 3])))

# addition across dimensions expands both operands to the lcm (6 here)
s = vec_add(vec([1, 2]), vec([1, 2, 3]))
show("[1, 2] (+) [1, 2, 3]:", s.tolist())

# the same sum computed after artificially inflating one operand lands
# in the same class -- the operation is well defined on the quotient
s2 = vec_add(kron(vec([1, 2]), ones_vector(3)), vec([1, 2, 3]))
show("inflated operand, same class:", vec_equivalent(s, s2))

# the cross-dimensional matrix product inserts averaging blocks J_k;
# J_a (x) J_b = J_ab makes the product associative on classes
print()
show("J_2 * J_3 (cross-dim product):",
     second_stp(j_matrix(2), j_matrix(3)).tolist() == j_matrix(6).tolist())

# a 2x2 identity "acting" on a 4-vector averages within blocks first
out = stp_action(mat([[1, 0], [0, 1]]), vec([1, 2, 3, 4]))
show("I_2 acting on [1, 2, 3, 4]:", out.tolist())
