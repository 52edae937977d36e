"""Build the triple linking cocycle on three strands and check it.

Three chord words alone are not closed: their bar differential leaves a
tripod behind.  Solving for the tripod coefficient closes them up.
"""

from diagcomplex.braid import bar_differential, chord_part, mu123, verify_cocycle
from diagcomplex.cli import _word_str
from diagcomplex.diagram import Parity

for parity in (Parity.ODD, Parity.EVEN):
    x, c = mu123(parity)
    print(f"{parity.name.lower()} n: tripod coefficient {c}")
    for w, coeff in x.items():
        print(f"  {str(coeff):>3} {_word_str(w)}")
    leftover = bar_differential(chord_part(x), parity)
    print(f"  chord part alone: {len(leftover)} term(s) in its differential")
    print(f"  with the tripod:  closed = {verify_cocycle(x, parity)[0]}")
