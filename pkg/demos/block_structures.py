"""Walkthrough: block structures on the circular representation of [n].

Place 1..n clockwise on a circle.  A subset A and a density delta >= 1
determine a unique partition of the circle into blocks (each starting at
an element of A, with length pinned between delta*|A & B| - 1 and
delta*|A & B|) and gaps (free of A).  The closure map f attaches every
gap point to A.
"""

from veronese_sdepth import (
    CircularSet,
    block_structure,
    f_delta,
    validate_block_structure,
)

n = 9
for members, delta in [((1,), 2), ((1, 2), 2), ((1, 4, 5), 2), ((2, 7), 3), ((1, 5), "3/2")]:
    a = CircularSet(n, members)
    bs = block_structure(a, delta)
    closure = f_delta(a, delta)
    print(f"A = {{{a.serialize()}}} at density {delta} on [{n}]")
    print(f"  structure: {bs.render()}")
    print(f"  f(A) = {{{closure.serialize()}}}   (|f(A)| - |A| = {len(closure) - len(a)})")

# The structure is characterized by four local conditions; the validator
# re-checks them for any claimed structure.
a = CircularSet(9, (1, 4, 5))
report = validate_block_structure(a, block_structure(a, 2))
print(f"validator on the constructed structure: ok = {report.ok}")

# Rotating the set rotates the structure: the conditions never mention
# absolute positions.
rotated = block_structure(a.rotate(3), 2)
print(f"A rotated by 3: {rotated.render()}")
