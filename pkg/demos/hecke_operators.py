"""
Divided difference operators with a twist
=========================================

The operator sigma~_i sends f to (h f + (alpha_i - h) s_i f) / alpha_i; the
division is always exact, so polynomials go to polynomials.  These operators
satisfy the braid relations, and together with multiplication by linear
forms they generate a twisted version of the group algebra: commuting
sigma~_alpha past x_lambda costs exactly h (lambda, alpha^vee).

Out of them one builds an operator of quantum multiplication acting directly
on polynomials.  We apply it on the full flag variety of A2, check it against
the matrix picture, and finish on a parabolic quotient, where the operator
needs a conjugation by the product of (beta - h) over the Levi roots.
"""

from qstab import (
    Weight,
    bmo_operator,
    crosscheck_conjugation,
    demazure_lusztig,
    demazure_lusztig_root,
    parabolic,
    pcon_operator,
    root_system,
    stable_tables,
)
from qstab.hecke import twisted_commutation_defect, weight_form

rs = root_system("A2")
T = stable_tables(parabolic(rs, ()))
F = T.field

# the operator in action on small polynomials
for text in ("1", "a1", "a1^2", "a1*a2"):
    f = F.parse(text)
    print(f"sigma~_1({text}) = {F.to_string(demazure_lusztig(F, rs, 1, f))}")
print()

# composites along any reduced word of the same reflection agree
theta = rs.positive_roots[-1]
f = F.parse("a1^2*a2")
one = demazure_lusztig_root(F, rs, theta, f, word=(1, 2, 1))
two = demazure_lusztig_root(F, rs, theta, f, word=(2, 1, 2))
print("braid words on the longest reflection agree:", one == two)

# the commutation defect is the constant h (lambda, alpha^vee), whatever f is
lam = rs.fundamental_weight(1)
alpha = rs.simple_root(1)
defect = twisted_commutation_defect(F, rs, alpha, lam, F.parse("a1*a2"))
print("commutation defect on a1*a2:", F.to_string(defect))
print()

# quantum multiplication by the divisor x_lambda, acting on 1 and on x_lambda
xlam = weight_form(F, rs, lam)
print("D(1)      =", F.to_string(bmo_operator(T, lam, F.one)))
print("D(x_lam)  =", F.to_string(bmo_operator(T, lam, xlam)))
print()

# the same operator computed through the fixed point tables
lhs, rhs = crosscheck_conjugation(T, lam, xlam)
print("matrix route and operator route agree:", lhs == rhs)
print()

# on the quotient Gr(1,3) the conjugated operator takes over; on constants
# it still just multiplies by the divisor
TP = stable_tables(parabolic(rs, (2,)))
out = pcon_operator(TP, Weight((1, 0)), TP.field.one)
print("parabolic operator on 1:", TP.field.to_string(out))
check = crosscheck_conjugation(TP, Weight((1, 0)), TP.field.one)
print("parabolic crosscheck:", check[0] == check[1])
