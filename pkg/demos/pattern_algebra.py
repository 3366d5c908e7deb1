# Pattern algebra walkthrough: the three-symbol alphabet, how it lifts
# to matrix products and powers, and what membership in a pattern class
# means for concrete matrices.

import numpy as np

from structfdi import (Symbol, format_pattern, is_member, parse_pattern,
                       pattern_add, pattern_mul, pattern_power, symbol_add,
                       symbol_mul)

print("=== symbol arithmetic ===")
print("A '*' entry is surely nonzero, '?' is anything, '0' is exactly zero.")
print("Two nonzeros can cancel, so * + * = ", symbol_add(Symbol.STAR, Symbol.STAR).name)
print("A product of nonzeros cannot, so * . * =", symbol_mul(Symbol.STAR, Symbol.STAR).name)
print("Zero annihilates:             0 . ? =", symbol_mul(Symbol.ZERO, Symbol.QUESTION).name)

print()
print("=== matrix products ===")
state = parse_pattern("""
0 0 0
* 0 0
0 0 0
""")
faults = parse_pattern("""
* 0 0
0 * 0
0 * *
""")
outputs = parse_pattern("""
? * 0
0 * 0
""")
print("state pattern:")
print(format_pattern(state))
print("output * fault-column products tell which channels are visible:")
for j in range(3):
    response = pattern_mul(outputs, faults.column(j))
    print(f"  channel {j + 1}: response column = {response.row_strings()}")

print()
print("=== powers ===")
print("The single chain entry dies after one hop:")
for k in range(3):
    print(f"  A^{k}:")
    print("   ", format_pattern(pattern_power(state, k)).replace("\n", "\n    ").rstrip())

print()
print("=== membership ===")
signature = parse_pattern("* ?\n* *\n")
candidate = np.ones((2, 2))
print("pattern:")
print(format_pattern(signature))
print("all-ones matrix is a member:", is_member(candidate, signature))
print("zeroing a starred entry breaks membership:",
      is_member(np.array([[0.0, 1.0], [1.0, 1.0]]), signature))

print()
print("=== entrywise sums ===")
print("adding an all-* pattern to itself yields all-? (cancellation):")
stars = parse_pattern("* *\n* *\n")
print(format_pattern(pattern_add(stars, stars)))
