"""Intersection multiplicities three ways.

The multiplicity of an isolated common zero is the dimension of the local
ring modulo the ideal. Three independent routes compute it here: the
truncated local algebra (stabilized codimension), the Groebner quotient
dimension summed over zeros, and the joint eigenspace dimensions of the
multiplication tuple. A fourth identity doubles the variables through the
pair (z - w, g(z)) without changing the local degree.
"""

from koszul_index import (QQi, build_diagonal_system, global_multiplicity_table,
                          groebner, jacobian_regular, local_multiplicity,
                          parse_system, quotient_algebra, verify_diagonal_degree)

system = parse_system("z1^2 - z2; z2^2", 2)
origin = (QQi(0), QQi(0))

cert = local_multiplicity(system, origin)
print("truncation route:   multiplicity", cert.multiplicity,
      "stabilized at order", cert.stabilization_order)

algebra = quotient_algebra(groebner(system))
print("quotient route:     dimension", algebra.dim,
      "with standard monomials", algebra.basis)

table = global_multiplicity_table(system)
print("eigenspace route:  ", [(tuple(map(str, p)), m) for p, m in table.entries])

print("jacobian regular at the origin:", jacobian_regular(system, origin))

# Regular zeros always have multiplicity one.
regular = parse_system("z1 + z2; z1 - z2", 2)
print("regular system multiplicity:",
      local_multiplicity(regular, origin).multiplicity)

# The diagonal trick: (z - w, g(z)) in twice as many variables has the same
# local degree at the doubled zero.
doubled = build_diagonal_system(system)
print("diagonal system:", "; ".join(str(p) for p in doubled))
print("degree survives doubling:", verify_diagonal_degree(system, origin))

# A system with several zeros: multiplicities add up to the quotient dim.
spread = parse_system("z1*(z1 - 1); z2", 2)
spread_table = global_multiplicity_table(spread)
print("zeros of z1(z1-1), z2:",
      [(tuple(map(str, p)), m) for p, m in spread_table.entries],
      "sum", spread_table.total(), "= quotient", spread_table.quotient_dim)
