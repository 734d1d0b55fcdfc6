"""The tower of cycle covers of the one-point shift.

Run with ``python3 demos/cycle_tower.py [d_max]``.
"""

import sys

from sftgalois.tower import sigma1_tower


def main(d_max=8):
    rep = sigma1_tower(d_max)
    for node in rep["nodes"]:
        print(f"C{node['d']}: degree {node['degree']}, cyclic deck group: {node['cyclic']}")
    print("maps C_m -> C_n:", ", ".join(f"{m}->{n}" for m, n in rep["maps"]))
    print("maps exist exactly when n | m:", rep["divisibility_match"])


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 8)
