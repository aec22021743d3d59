"""
Quantum multiplication on the cotangent bundle of Gr(2,4)
=========================================================

Take the Grassmannian of 2-planes in C^4, realized as the parabolic quotient
of type A3 with Levi subset {1, 3}.  We enumerate the six Schubert cells,
attach a curve degree to every root outside the Levi, and assemble the matrix
of quantum multiplication by the divisor class in the stable basis.

The highlight is the scalar on the diagonal of the purely quantum part.
Summing the bare root pairings would predict 4 h q / (1 - q); the correct
scalar carries an extra ratio of Levi weights per root and comes out as
2 h q / (1 - q).  The integer 2 = min(k, n - k) shows up as a constant
attached to the whole degree class.
"""

from qstab import (
    cp_constant,
    parabolic,
    quantum_matrix,
    root_system,
    stable_tables,
)
from qstab.quantum import annihilates_unit, naive_scalar, scalar_term
from qstab.verify import admissible_weights

rs = root_system("A3")
P = parabolic(rs, (1, 3))
T = stable_tables(P)
F = T.field

print("minimal coset representatives and curve degrees:")
for fp in T.points:
    print(f"  {fp.key:<6} length {fp.rep.length}")
print()

print("roots outside the Levi and their degrees:")
for g in rs.positive_roots:
    if g not in P.levi_roots:
        print(f"  {g.coords} -> degree {P.degree(g).exps}")
print()

# every root outside the Levi lands in one degree class; the attached
# constant is min(k, n-k) = 2 for this Grassmannian
for d, members in P.degree_classes():
    print(f"degree {d.exps}: {len(members)} roots, constant "
          f"C = {cp_constant(T, members[0])}")
print()

lam = admissible_weights(T)[0]
print("divisor weight:", tuple(str(c) for c in lam.coords))
print("scalar of the purely quantum part: ",
      F.to_string(scalar_term(T, lam)))
print("naive sum over the same roots:     ",
      F.to_string(naive_scalar(T, lam)))
print()

op = quantum_matrix(T, lam)
print("purely quantum entries:")
for (r, c), val in sorted(op.quantum.entries.items(),
                          key=lambda kv: (kv[0][0].key, kv[0][1].key)):
    print(f"  [{r.key:<5} <- {c.key:<5}]  {F.to_string(val)}")
print()

print("the purely quantum part kills the unit class:",
      annihilates_unit(T, op.quantum))
