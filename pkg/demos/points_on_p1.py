# Counting exceptional objects on moduli of weighted points on P^1.
from fractions import Fraction

from gkz import curves

d = (2, 2, 2, 2, 2)
print(curves.chamber_sign_pn(d))
print(curves.collection_count_pn(d))   # even and odd halves
print(curves.pgl2_count(d))            # only the even objects descend

# the answer does not depend on the path
print({curves.collection_count_pn(d, seed) for seed in range(5)})
print({curves.collection_count_pn(d, 0, method="search")})

# nor on how the weights are ordered or scaled
print(curves.collection_count_pn((4, 2, 2, 2)), curves.collection_count_pn((1, 1, 1, 2)))
print(curves.collection_count_pn([Fraction(1, 3)] * 6 + [Fraction(1, 2)]))

# a heavy point empties the quotient
print(curves.is_empty_pn((5, 1, 1, 1)))
