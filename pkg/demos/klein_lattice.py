"""Walk through the Galois correspondence of the Klein cover.

Run with ``python3 demos/klein_lattice.py``.
"""

from sftgalois.correspondence import intermediate_conjugate, quotient_cover, subgroup_of_intermediate
from sftgalois.correspondence import verify_fundamental_theorem
from sftgalois.fixtures import klein_cover


def main():
    fx = klein_cover()
    gc = fx.cover
    print(f"degree {gc.degree}, deck group of order {gc.group.order}")

    # each listed factor fixes one subgroup of order two
    for mid in fx.intermediates:
        h = subgroup_of_intermediate(gc, mid.alpha, mid.beta)
        names = ", ".join(gc.group.names[g] for g in sorted(h))
        q = quotient_cover(gc, h)
        same = intermediate_conjugate(gc, mid, q) is not None
        print(f"{mid.label}: subgroup {{{names}}}, conjugate to Y/H: {same}")

    rep = verify_fundamental_theorem(gc, fx.intermediates)
    print("counterexamples:", rep["counterexamples"] or "none")
    print(rep["lattice_markdown"])


if __name__ == "__main__":
    main()
