"""Search the best multiplier beta for a two-message code built from one irreducible inner code.

Usage: python demos/piret_search.py [inner length ...]
"""

import sys

from infocode.code import LinearCode, min_distance
from infocode.constructions import piret_search
from infocode.cyclic import CyclicCodeSpec, generator_matrix_of

for n in [int(a) for a in sys.argv[1:]] or [9, 17, 21]:
    spec = CyclicCodeSpec.from_cosets([1], n)
    inner = min_distance(LinearCode(generator_matrix_of(spec), cyclic=spec)).value
    res = piret_search(spec)
    print(f"inner [{n},{spec.k},{inner}]  ->  [{2 * n},{spec.k}] components with d = {res.distance}, "
          f"beta = {res.beta} (one of {len(res.maximizers)} maximizers); sum has d = {inner}")
