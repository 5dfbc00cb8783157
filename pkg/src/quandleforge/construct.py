"""Constructors for the standard families of quandles."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .perm import NotInGroupError, Permutation, PermGroup, _inv, _mul, coset_representatives
from .rack import RackTable

FIELD_SIZE_LIMIT = 2**16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


# ---------------------------------------------------------------- finite fields


def _polymulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    """Product of coefficient lists (low degree first) modulo a monic ``mod``."""
    k = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for i in range(k + 1):
                prod[d - k + i] = (prod[d - k + i] - c * mod[i]) % p
    out = prod[:k] + [0] * (k - len(prod))
    return out


def _digits(x: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        x, r = divmod(x, p)
        out.append(r)
    return out


def _undigits(ds: list[int], p: int) -> int:
    return sum(d * p**i for i, d in enumerate(ds))


def _has_root_or_factor(mod: list[int], p: int) -> bool:
    """True if the monic ``mod`` has a monic factor of degree 1..deg/2 (trial division)."""
    k = len(mod) - 1
    for d in range(1, k // 2 + 1):
        for low in range(p**d):
            div = _digits(low, p, d) + [1]
            rem = list(mod)
            for top in range(k, d - 1, -1):
                c = rem[top]
                if c:
                    for i in range(d + 1):
                        rem[top - d + i] = (rem[top - d + i] - c * div[i]) % p
            if not any(rem[:d]):
                return True
    return False


def smallest_irreducible(p: int, k: int) -> list[int]:
    """Coefficients (low first, monic) of the least irreducible of degree k.

    Polynomials are compared by the integer sum(c_i p^i) of their
    lower coefficients, i.e. higher coefficients are most significant.
    """
    for low in range(p**k):
        mod = _digits(low, p, k) + [1]
        if k == 1 or not _has_root_or_factor(mod, p):
            return mod
    raise AssertionError("no irreducible polynomial found")


@dataclass
class FiniteField:
    """GF(p^k) with elements encoded as integers 0..q-1 (base-p digit vectors).

    Digit i of an element is its coefficient of x^i modulo ``modulus``.
    """

    p: int
    k: int
    modulus: list[int]
    _exp: list[int] = field(default_factory=list, repr=False)
    _log: list[int] = field(default_factory=list, repr=False)

    def __post_init__(self):
        q = self.q
        if q == 2:
            self._exp = [1]
            self._log = [0, 0]
            return
        for g in range(2, q):
            exp = [1]
            x = 1
            for _ in range(q - 2):
                x = self._slow_mul(x, g)
                if x == 1:
                    break
                exp.append(x)
            if len(exp) == q - 1:
                self._exp = exp
                log = [0] * q
                for i, e in enumerate(exp):
                    log[e] = i
                self._log = log
                return
        raise AssertionError("multiplicative group has no generator")

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def degree(self) -> int:
        return self.k

    def __len__(self) -> int:
        return self.q

    def elements(self) -> range:
        return range(self.q)

    def _slow_mul(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        prod = _polymulmod(_digits(a, p, k), _digits(b, p, k), self.modulus, p)
        return _undigits(prod, p)

    def digits(self, a: int) -> list[int]:
        return _digits(a, self.p, self.k)

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.k == 1:
            return (a + b) % p
        return _undigits([(x + y) % p for x, y in zip(self.digits(a), self.digits(b))], p)

    def neg(self, a: int) -> int:
        p = self.p
        if self.k == 1:
            return -a % p
        return _undigits([-x % p for x in self.digits(a)], p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._exp[-self._log[a] % (self.q - 1)]

    @property
    def generator(self) -> int:
        """The least primitive element (for q = 2, the element 1)."""
        return self._exp[1] if self.q > 2 else 1

    def format_element(self, a: int) -> str:
        return "[" + ",".join(map(str, self.digits(a))) + "]"

    def modulus_str(self) -> str:
        terms = []
        for i in range(self.k, -1, -1):
            c = self.modulus[i]
            if not c:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(mono if c == 1 and i else (f"{c}" if i == 0 else f"{c}*{mono}"))
        return " + ".join(terms)


def make_field(p: int, k: int = 1) -> FiniteField:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("field degree must be at least 1")
    if p**k > FIELD_SIZE_LIMIT:
        raise ValueError(f"field of order {p}^{k} exceeds the limit {FIELD_SIZE_LIMIT}")
    return FiniteField(p, k, smallest_irreducible(p, k))


# ---------------------------------------------------------------- quandle families


def dihedral_quandle(n: int) -> RackTable:
    """``i ▷ j = 2i - j`` on Z_n; label x+1 stands for the residue x."""
    if n < 2:
        raise ValueError("dihedral quandle needs n >= 2")
    return RackTable([[(2 * i - j) % n for j in range(n)] for i in range(n)])


def affine_quandle_zn(n: int, t: int) -> RackTable:
    """``a ▷ b = (1 - t)a + tb`` on Z_n."""
    if n < 1:
        raise ValueError("n must be positive")
    if math.gcd(t, n) != 1:
        raise ValueError(f"{t} is not a unit modulo {n}")
    return RackTable([[((1 - t) * a + t * b) % n for b in range(n)] for a in range(n)])


def affine_quandle_fq(F: FiniteField, alpha: int) -> RackTable:
    """``a ▷ b = (1 - α)a + αb`` on the field F."""
    if not 0 <= alpha < F.q:
        raise ValueError(f"{alpha} is not an element of GF({F.q})")
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    one_minus = F.sub(1, alpha)
    rows = []
    for a in F.elements():
        ua = F.mul(one_minus, a)
        rows.append([F.add(ua, F.mul(alpha, b)) for b in F.elements()])
    return RackTable(rows)


def conjugation_rack(G: PermGroup, elements: list[Permutation]) -> RackTable:
    """Union of the G-classes of ``elements`` with ``x ▷ y = x y x^-1``.

    Labels follow the sorted image sequences of the class elements.
    """
    members: set[tuple] = set()
    for g in elements:
        if g not in G:
            raise NotInGroupError(f"{g} is not an element of the group")
        members.update(c.array for c in G.conjugacy_class(g))
    elems = sorted(members)
    pos = {e: i for i, e in enumerate(elems)}
    rows = []
    for x in elems:
        xi = _inv(x)
        rows.append([pos[_mul(_mul(x, y), xi)] for y in elems])
    return RackTable(rows)


def homogeneous_quandle(G: PermGroup, H: PermGroup, z: Permutation) -> RackTable:
    """Quandle on the left cosets G/H with ``xH ▷ yH = x z x^-1 y z^-1 H``.

    Cosets are ordered as in :func:`coset_representatives`.
    """
    if not H.is_subgroup_of(G):
        raise NotInGroupError("H is not a subgroup of G")
    if z not in G:
        raise NotInGroupError(f"{z} is not an element of G")
    if not H.centralizes(z):
        raise ValueError(f"{z} does not centralize H")
    reps = [r.array for r in coset_representatives(G, H)]
    m = len(reps)
    za, zi = z.array, _inv(z.array)
    locate = _coset_locator(G, H, reps)
    rows = []
    for x in reps:
        c = _mul(_mul(x, za), _inv(x))
        rows.append([locate(_mul(_mul(c, y), zi)) for y in reps])
    assert all(len(set(r)) == m for r in rows)
    return RackTable(rows)


def _coset_locator(G: PermGroup, H: PermGroup, reps: list[tuple]):
    """Function mapping a group element to the index of its left coset."""
    n = G.degree
    index = len(reps)
    for p in range(n):
        if all(h.array[p] == p for h in H.generators):
            images = [r[p] for r in reps]
            if len(set(images)) == index:
                # H fixes p and the reps separate p, so gH is determined by g(p)
                where = {img: i for i, img in enumerate(images)}
                return lambda g: where[g[p]]
    inverses = [_inv(r) for r in reps]

    def locate(g: tuple) -> int:
        for i, ri in enumerate(inverses):
            if Permutation._raw(_mul(ri, g)) in H:
                return i
        raise AssertionError("element outside G")

    return locate


__all__ = [
    "FiniteField",
    "make_field",
    "smallest_irreducible",
    "dihedral_quandle",
    "affine_quandle_zn",
    "affine_quandle_fq",
    "conjugation_rack",
    "homogeneous_quandle",
    "is_prime",
]
