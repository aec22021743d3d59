"""
Restriction tables of the two stable bases
==========================================

Build the full flag variety of type A2, print the fixed point restriction
tables of both chambers, and watch the defining properties hold: triangular
support, diagonal equal to a product of tangent weights, divisibility of the
off-diagonal entries by h, and the duality between the two chambers.
"""

from qstab import MINUS, PLUS, parabolic, root_system, stable_tables

rs = root_system("A2")
T = stable_tables(parabolic(rs, ()))
F = T.field

print("positive roots:", [g.coords for g in rs.positive_roots])
print("Weyl group order:", rs.weyl_order())
print()

# the six fixed points, indexed by Weyl group elements
for chamber in (PLUS, MINUS):
    print(f"--- chamber {chamber} ---")
    for c in T.points:
        for p in T.points:
            val = T.table(chamber).get((c, p))
            if val:
                print(f"  stab({c.key})|_{p.key} = {F.to_string(val)}")
    print()

# the diagonal at h = 0 is the product of the weights of one tangent half
e = T.point(rs.identity)
print("diagonal entry at the identity:", F.to_string(T.entry(PLUS, e, e)))
print("same entry with h set to zero:",
      F.to_string(F.subs_h_zero(T.entry(PLUS, e, e))))
print()

# duality: pairing the plus basis against the signed minus basis gives
# the identity matrix, entry by entry
sign = (-1) ** T.parabolic.m
for y in T.points:
    row = []
    for w in T.points:
        val = sign * T.pairing(T.restriction_vector(PLUS, y),
                               T.restriction_vector(MINUS, w))
        row.append(F.to_string(val))
    print(f"  pairing row {y.key}:", row)

print()
print("axiom check, plus chamber:", T.verify_axioms(PLUS) or "all hold")
print("axiom check, minus chamber:", T.verify_axioms(MINUS) or "all hold")
print("duality check:", T.check_duality() or "all pairs dual")
