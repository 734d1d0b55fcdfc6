"""Characters from prescribed Frobenius vectors, and the sign read off the quotient representation.

Run with ``python3 demos/frobenius_and_sign.py``.
"""

from sftgalois.cohomology import (
    character_for_vector,
    det_mod_p,
    ev,
    os_sign,
    pushforward_character,
    quotient_rep_matrix,
    trace_mod_p,
)
from sftgalois.fixtures import full_shift, sigma8_perm_pair, symbol_perm_automorphism


def main():
    x = full_shift(2)
    for v in ([0, 1], [1, 2], [2, 2]):
        chi = character_for_vector(x, 1, v, 3)
        print(f"target {v}: Ev_1 = {ev(chi, 1).tolist()}, Ev_2 = {ev(chi, 2).tolist()}")

    # transport along the symbol swap permutes the Frobenius vector
    chi = character_for_vector(x, 1, [1, 2], 3)
    swap = symbol_perm_automorphism(2, [1, 0], shift=x)
    print("after swapping symbols:", ev(pushforward_character(swap, chi), 1).tolist())

    fx = sigma8_perm_pair()
    for key, aut in sorted(fx.automorphisms.items()):
        mat = quotient_rep_matrix(aut, 1, 3)
        print(f"{key}: trace {trace_mod_p(mat, 3)}, det {det_mod_p(mat, 3)}, orbit sign {os_sign(aut, 1):+d}")


if __name__ == "__main__":
    main()
