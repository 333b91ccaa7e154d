"""
Relators as clauses
===================

A left order makes each generator positive or negative.  A relator
s_i^a s_j^b s_k^c can only be trivial if its letters do not all share a
sign, which is two 3-clauses over variables x_i.  Their conjunction is
Phi_R; the same constraint read as not-all-equal clauses is Phi'_R.
"""

from triangular_lo.dimacs import from_dimacs, to_dimacs
from triangular_lo.encoding import (
    encode_nae,
    encode_presentation,
    encode_relator,
    encode_survivor_query,
)
from triangular_lo.words import Presentation, Word3

print(encode_relator(Word3.of(1, 2, 3)))
print(encode_relator(Word3.of(-1, 2, -1)))

pres = Presentation(4, [(1, 2, 3), (-1, -2, 4), (2, 2, -3), (1, 4, 4)])
phi = encode_presentation(pres)
print(to_dimacs(phi))

# only relators whose letters all lie over A = {1, 2, 3}
print(encode_presentation(pres, [1, 2, 3]).clauses)

# the NAE form keeps one clause per relator
print(encode_nae(pres).clauses)

# "some subset of at least 3 generators gives a satisfiable formula":
# activity variables a_i = n + i switch relators on, a counter asks for >= 3 of them
query = encode_survivor_query(pres, 3)
print(query.num_variables, "variables,", len(query.clauses), "clauses")
text = to_dimacs(query)
print(text.splitlines()[:4])

# DIMACS round trip keeps clauses and the variable roles
assert from_dimacs(text) == query
