"""An MDS code for informed receivers from a punctured Reed-Solomon code, and its message grouping."""

from infocode.code import verify_all_square_submatrices
from infocode.constructions import mdsir_from_grs
from infocode.eccir import distance_profile, group_messages, is_mdsir

e = mdsir_from_grs(q=11, n=6, L=4)
print("generator over GF(11):")
print(e.generator().rows)
print("every square submatrix nonsingular:", verify_all_square_submatrices(e.generator()))
p = distance_profile(e)
print(p.to_csv())
print("MDSIR:", is_mdsir(e, p))
g = group_messages(e, 2)
print("grouped into 2 messages of 2 symbols, still MDSIR:", is_mdsir(g))
