"""Monte Carlo decoding on the length-31 triple as the receiver learns more messages.

With no side information the decoder would face 2^30 codewords per word, so
that case is left out.
"""

from infocode.constructions import example1_triple
from infocode.sim import run_trials

e = example1_triple()
for side in ([1, 2], [1]):
    for t in (1, 2, 3, 5, 6):
        r = run_trials(e, side, t, 200, seed=1)
        mark = "guaranteed" if t <= r.guaranteed_radius else "best effort"
        print(f"S={side!s:<7} t={t}: {r.successes}/{r.trials} decoded  (radius {r.guaranteed_radius}, {mark})")
