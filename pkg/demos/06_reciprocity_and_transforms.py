"""Reciprocity between two model domains, the binomial dimension
transforms of the regular case, and the nilpotent tensor bookkeeping.

Pairing the index function of one domain against the local indices of the
other produces the same number both ways round. At a regular zero the
homology dimensions of a composed system with extra symbol components are a
binomial convolution of the base dimensions; with equally many components
the transform is the identity.
"""

from fractions import Fraction

from koszul_index import (CommutingTuple, DomainDescriptor, Matrix, QQi,
                          binomial_identity_holds, lr_identity_holds,
                          parse_system, reciprocity_check,
                          regular_case_identities, tensor_index_identity)

disc = DomainDescriptor.unit_disc()
half = DomainDescriptor.polydisc((QQi(0),), (Fraction(1, 2),))

# One zero (0) inside both domains, one (3/4) inside only the larger one.
report = reciprocity_check(disc, half, parse_system("z1*(z1 - 3/4)", 1))
print("zero table (point, multiplicity, in A, in B):")
for entry in report.zeros:
    print("  ", (str(entry[0][0]), entry[1], entry[2], entry[3]))
print("pairing sums:", report.lhs, "=", report.rhs, "->", report.equal)

# Equal domains make both sums the full interior count.
mirror = reciprocity_check(disc, disc, parse_system("z1^2 - 1/4", 1))
print("equal domains:", mirror.lhs, "=", mirror.rhs)

# The dimension transforms of the regular case.
print("left-inverse identity for n=3, m=7:", lr_identity_holds(3, 7))
print("binomial composition identity:", binomial_identity_holds(3, 7, 8))
print("coordinate dims (1, 0) with one extra component:",
      regular_case_identities([1, 0], 2))
print("equal component count is the identity:",
      regular_case_identities([1, 0], 1))

# Tensoring with a nilpotent tuple: 0 = 0 for the indices, with per-degree
# dimensions bounded by the split case.
base = CommutingTuple([Matrix.zeros(1, 1)])
jordan = CommutingTuple([Matrix([[0, 1], [0, 0]])])
tensor = tensor_index_identity(base, jordan)
print("tensor dims:", tensor.dims_product, "bounded by",
      tensor.aux_dim, "x", tensor.dims_base, "->", tensor.verdict)
