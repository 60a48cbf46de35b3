"""Index computations on polynomial model spaces.

A model space stands in for a Hardy or Bergman space over a polydisc or
ball: the coordinate tuple has index -1 at interior points and 0 outside,
so the index of a composed tuple reduces to multiplicity data of its symbol
zeros. Interior zeros each contribute minus their local degree; in one
variable the result matches minus the winding number of the symbol around
the boundary circle.
"""

from fractions import Fraction

from koszul_index import (DomainDescriptor, ModelTuple, QQi, global_index,
                          local_index, parse_system, winding_number)

disc = DomainDescriptor.unit_disc()

symbol = parse_system("z1^2 - 1/4", 1)
report = global_index(ModelTuple(disc, tuple(symbol)))
print("symbol z^2 - 1/4 on the unit disc:")
for zero in report.zeros:
    print("  zero", tuple(map(str, zero.point)), zero.location,
          "multiplicity", zero.multiplicity)
print("  global index:", report.global_index)
print("  winding oracle:", f"{winding_number(symbol[0]):.6f}")
for check in report.checks:
    print("  check", check.name, "->", "pass" if check.passed else "FAIL")

# A zero outside the closed domain contributes nothing.
outside = global_index(ModelTuple(disc, tuple(parse_system("z1 - 2", 1))))
print("symbol z - 2:", outside.global_index)

# Two variables over the unit bidisc: one interior zero of multiplicity 4.
bidisc = DomainDescriptor.polydisc((QQi(0), QQi(0)), (Fraction(1), Fraction(1)))
squares = global_index(ModelTuple(bidisc, tuple(parse_system("z1^2; z2^2", 2))))
print("symbol (z1^2, z2^2) on the bidisc:", squares.global_index,
      "= -quotient dimension", -squares.quotient_dim)

# Local indices: -degree inside, 0 outside, refusal on the boundary.
mt = ModelTuple(disc, tuple(symbol))
print("local index at 1/2:", local_index(mt, (QQi(Fraction(1, 2)),)))
print("local index of z - 2 at 2:",
      local_index(ModelTuple(disc, tuple(parse_system("z1 - 2", 1))), (QQi(2),)))
