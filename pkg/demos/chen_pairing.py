"""Pair chord cocycles with braid loops numerically and through the expansion.

The linking cocycle [G12] counts how often strand 2 winds around strand 1.
The chord part of the triple linking cocycle sees the commutator of two
generators even though every pairwise winding number there is zero.
"""

from diagcomplex.braid import chord_part, chord_word, mu123
from diagcomplex.chen import (braid_expansion, braid_to_loop, evaluate_chord_cocycle,
                              pair_cocycle_expansion, parse_braid)
from diagcomplex.diagram import Parity

EVEN = Parity.EVEN

g12 = chord_word([(1, 2)], 2, EVEN)
for w in range(-2, 3):
    word = parse_braid(f"A12^{w}" if w else "", m=2)
    value, err = evaluate_chord_cocycle(g12, braid_to_loop(word))
    print(f"[G12] on A12^{w:<2}: {value:+.8f}  (err <= {err:.1e})")

mu = chord_part(mu123(EVEN)[0])
for text in ("A12 A23 a12 a23", "A12 A23", "A12 A23 a12 a23 A12 A23 a12 a23"):
    word = parse_braid(text, m=3)
    value, err = evaluate_chord_cocycle(mu, braid_to_loop(word), tol=1e-5)
    oracle = pair_cocycle_expansion(mu, braid_expansion(word, 2))
    print(f"mu on {text!r}: Chen {value:+.6f}, expansion {oracle}")
