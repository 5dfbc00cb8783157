"""Published reference values used by ``verify-tables`` and the acceptance tests."""

# number of transitive groups of degree n (up to conjugacy in S_n)
TRANSITIVE_COUNTS = {
    1: 1, 2: 1, 3: 2, 4: 5, 5: 5, 6: 16, 7: 7, 8: 50, 9: 34, 10: 45,
    11: 8, 12: 301, 13: 9, 14: 63, 15: 104, 16: 1954, 17: 10, 18: 983,
    19: 8, 20: 1117, 21: 164, 22: 59, 23: 7, 24: 25000, 25: 211, 26: 96,
    27: 2392, 28: 1854, 29: 8, 30: 5712, 31: 12, 32: 2801324, 33: 162,
    34: 115, 35: 407,
}

# q(n): indecomposable quandles of size n up to isomorphism
QUANDLE_COUNTS = dict(enumerate([
    1, 0, 1, 1, 3, 2, 5, 3, 8, 1, 9, 10, 11, 0, 7, 9, 15, 12, 17, 10,
    9, 0, 21, 42, 34, 0, 65, 13, 27, 24, 29, 17, 11, 0, 15,
], start=1))

# (name, |Inn X|, |finite enveloping group|) for the racks of the enveloping-group table
ENVELOPING_ORDERS = [
    ("D3", 6, 6),
    ("T", 12, 24),
    ("Aff(5,2)", 20, 20),
    ("(1,2)^S4", 24, 24),
    ("Aff(7,3)", 42, 42),
    ("(1,2,3,4)^S4", 24, 96),
    ("(1,2)^S5", 120, 120),
]


def _h2(entries):
    """Expand [(count, torsion), ...] into a sorted multiset of torsion tuples."""
    out = []
    for count, torsion in entries:
        out.extend([tuple(torsion)] * count)
    return sorted(out)


# Multiset of H_2 torsion parts (all groups have free rank 1) per non-prime size
H2_TORSION = {
    4: _h2([(1, [2])]),
    6: _h2([(1, [2]), (1, [4])]),
    8: _h2([(3, [])]),
    9: _h2([(5, []), (3, [3])]),
    10: _h2([(1, [2])]),
    12: _h2([(3, [2]), (1, [10]), (2, [4]), (1, [2, 4]), (1, [2, 2, 2]), (1, [4, 4]), (1, [6])]),
    15: _h2([(3, []), (1, [2, 2]), (2, [5]), (1, [2])]),
    16: _h2([(2, [4]), (1, [2, 2, 2, 2]), (2, [2, 2]), (2, [2]), (2, [])]),
    18: _h2([(4, [6]), (3, [2]), (3, [4]), (2, [12])]),
    20: _h2([(3, [6]), (3, [2]), (2, [2, 2]), (1, [2, 4]), (1, [4])]),
    21: _h2([(5, []), (1, [2, 2]), (2, [7]), (1, [2])]),
}

# Number of indecomposable quandles of type D per size (sizes below 36 not
# listed here have none).
TYPE_D_COUNTS = {12: 1, 18: 10, 20: 1, 24: 18, 27: 2, 30: 12, 32: 8}


def type_d_count(n: int) -> int:
    return TYPE_D_COUNTS.get(n, 0)
