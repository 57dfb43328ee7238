"""C-bit logic: belonging to two opposite extremes at once.

A perception x in [-1, 1] becomes the pair (l_pos, l_neg) = ((1+x)/2, (1-x)/2).
OR averages perceptions, AND multiplies them, and the complement negates.
"""
from perceptlet import (NULL, Association, apply_association, cbit_and, cbit_from_perception,
                        cbit_or, complement, estimate_association, tensor)

warm = cbit_from_perception(0.6)
dry = cbit_from_perception(-0.2)
print("warm        ", warm, "perception", warm.perception)
print("not warm    ", complement(warm))
print("warm OR dry ", cbit_or(warm, dry), "-> mean of 0.6 and -0.2")
print("warm AND dry", cbit_and(warm, dry), "-> product 0.6 * -0.2")
print("tensor      ", tensor(warm, dry).as_tuple())

# NULL is passive: it vanishes from an OR and swallows an AND
print("warm OR NULL ", cbit_or(warm, NULL))
print("warm AND NULL", cbit_and(warm, NULL))

# an association maps the belonging of x onto the belonging of y
assoc = estimate_association(0.9, 0.3)
print("estimated association", assoc)
print("applied to warm", apply_association(assoc, warm))
print("identity association", apply_association(Association(1.0, 0.0), warm))
