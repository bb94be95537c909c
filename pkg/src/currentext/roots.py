"""Root systems for semisimple Lie types given as products of Cartan factors.

Weights are plain integer tuples in fundamental-weight coordinates throughout
the package.  Simple root j has fundamental coordinates equal to column j of
the Cartan matrix, so dominance tests are O(rank) and the root lattice is the
column span of the Cartan matrix.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .errors import (
    IllegalTypeError,
    NotDominantError,
    NotSimpleFactorError,
    RankMismatchError,
)
from .linalg import determinant, invert_rational, smith_normal_form

Weight = tuple[int, ...]

_FAMILY_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 3,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}

# number of positive roots per family, used as a construction self-check
_POSITIVE_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


@dataclass(frozen=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        check = _FAMILY_RANKS.get(self.family)
        if check is None or not check(self.rank):
            raise IllegalTypeError(f"not a Dynkin type: {self.family}{self.rank}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class SemisimpleType:
    factors: tuple[CartanType, ...]

    def __post_init__(self):
        if not self.factors:
            raise IllegalTypeError("empty type")
        ordered = tuple(sorted(self.factors, key=lambda t: (t.family, t.rank)))
        object.__setattr__(self, "factors", ordered)

    @property
    def rank(self) -> int:
        return sum(t.rank for t in self.factors)

    def __str__(self) -> str:
        return "x".join(str(t) for t in self.factors)


_TYPE_RE = re.compile(r"^([A-G])([0-9]+)$")


def parse_type(text: str) -> SemisimpleType:
    """Parse strings like "A1" or "A2xA1" (factors are canonically sorted)."""
    factors = []
    for part in text.strip().split("x"):
        m = _TYPE_RE.match(part.strip())
        if not m:
            raise IllegalTypeError(f"cannot parse Cartan type {part!r}")
        factors.append(CartanType(m.group(1), int(m.group(2))))
    return SemisimpleType(tuple(factors))


def _simple_cartan(ct: CartanType) -> list[list[int]]:
    n = ct.rank
    a = [[2 * int(i == j) for j in range(n)] for i in range(n)]

    def bond(i, j, down=-1, up=-1):
        a[i][j] = down
        a[j][i] = up

    fam = ct.family
    if fam in ("A", "B", "C"):
        for i in range(n - 1):
            bond(i, i + 1)
        if fam == "B" and n >= 2:  # last root short
            a[n - 1][n - 2] = -2
        if fam == "C" and n >= 2:  # last root long
            a[n - 2][n - 1] = -2
    elif fam == "D":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 3, n - 1)
    elif fam == "E":
        chain = [0, 2, 3, 4, 5, 6, 7][: n - 1]
        for x, y in zip(chain, chain[1:]):
            bond(x, y)
        bond(1, 3)  # branch node
    elif fam == "F":
        bond(0, 1)
        bond(1, 2, down=-1, up=-2)
        bond(2, 3)
    elif fam == "G":
        a[0][1] = -3
        a[1][0] = -1
    return a


def _symmetrizer(cartan: list[list[int]]) -> list[int]:
    """Positive integers d with d_i * C_ij symmetric (per connected block)."""
    n = len(cartan)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        queue = [start]
        while queue:
            i = queue.pop()
            for j in range(n):
                if i != j and cartan[i][j]:
                    val = d[i] * Fraction(cartan[i][j], cartan[j][i])
                    if d[j] is None:
                        d[j] = val
                        queue.append(j)
                    elif d[j] != val:
                        raise IllegalTypeError("Cartan matrix is not symmetrizable")
    denom = 1
    for v in d:
        denom = denom * v.denominator // gcd(denom, v.denominator)
    return [int(v * denom) for v in d]


@dataclass(frozen=True, eq=False)
class RootDatum:
    stype: SemisimpleType
    cartan: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[int, ...]
    positive_roots: tuple[tuple[int, ...], ...]  # simple-root coordinates
    factor_slices: tuple[tuple[int, int], ...]
    cartan_inverse: tuple[tuple[Fraction, ...], ...]
    snf_diag: tuple[int, ...]
    snf_transform: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.cartan)

    def root_to_weight(self, root: tuple[int, ...]) -> Weight:
        """Fundamental coordinates of a root given in simple-root coordinates."""
        return tuple(
            sum(self.cartan[i][j] * root[j] for j in range(self.rank))
            for i in range(self.rank)
        )

    def weight_to_root_coords(self, w: Weight) -> tuple[Fraction, ...]:
        return tuple(
            sum(self.cartan_inverse[i][j] * w[j] for j in range(self.rank))
            for i in range(self.rank)
        )

    def reflect(self, w: Weight, i: int) -> Weight:
        """Simple reflection s_i in fundamental coordinates."""
        ci = w[i]
        if ci == 0:
            return tuple(w)
        return tuple(w[j] - ci * self.cartan[j][i] for j in range(self.rank))

    def pairing(self, root: tuple[int, ...], w: Weight) -> Fraction:
        """Invariant form (root, w) with (alpha_i, alpha_i) = 2 d_i."""
        return sum(
            Fraction(root[i] * self.symmetrizer[i] * w[i]) for i in range(self.rank)
        )

    @property
    def rho(self) -> Weight:
        return (1,) * self.rank


def _positive_roots(cartan: list[list[int]]) -> list[tuple[int, ...]]:
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        beta = frontier.pop()
        for i in range(n):
            # <alpha_i^vee, beta> = sum_j C_ij beta_j
            pair = sum(cartan[i][j] * beta[j] for j in range(n))
            new = list(beta)
            new[i] -= pair
            new = tuple(new)
            if new not in roots and all(c >= 0 for c in new):
                roots.add(new)
                frontier.append(new)
    # closure above only walks within the positive cone; together with the
    # classical count check in build_root_system this pins the root set
    return sorted(roots, key=lambda r: (sum(r), r))


@lru_cache(maxsize=None)
def build_root_system(stype: SemisimpleType) -> RootDatum:
    """Validated root datum for a semisimple type, factors block-diagonal."""
    rank = stype.rank
    cartan = [[0] * rank for _ in range(rank)]
    slices = []
    offset = 0
    for ct in stype.factors:
        block = _simple_cartan(ct)
        for i in range(ct.rank):
            for j in range(ct.rank):
                cartan[offset + i][offset + j] = block[i][j]
        slices.append((offset, offset + ct.rank))
        offset += ct.rank
    d = _symmetrizer(cartan)
    sym = [[d[i] * cartan[i][j] for j in range(rank)] for i in range(rank)]
    for i in range(rank):
        if cartan[i][i] != 2:
            raise IllegalTypeError("Cartan diagonal must be 2")
        for j in range(rank):
            if i != j and cartan[i][j] > 0:
                raise IllegalTypeError("positive off-diagonal Cartan entry")
            if sym[i][j] != sym[j][i]:
                raise IllegalTypeError("symmetrized matrix not symmetric")
    for k in range(1, rank + 1):
        if determinant([row[:k] for row in sym[:k]]) <= 0:
            raise IllegalTypeError("symmetrized Cartan matrix not positive definite")

    roots: list[tuple[int, ...]] = []
    for (start, end), ct in zip(slices, stype.factors):
        block = _simple_cartan(ct)
        sub = _positive_roots(block)
        expected = _POSITIVE_COUNTS[ct.family](ct.rank)
        if len(sub) != expected:
            raise IllegalTypeError(
                f"positive root count for {ct}: got {len(sub)}, expected {expected}"
            )
        for r in sub:
            roots.append((0,) * start + r + (0,) * (rank - end))

    diag, U, _ = smith_normal_form(cartan)
    return RootDatum(
        stype=stype,
        cartan=tuple(tuple(row) for row in cartan),
        symmetrizer=tuple(d),
        positive_roots=tuple(roots),
        factor_slices=tuple(slices),
        cartan_inverse=tuple(
            tuple(row) for row in invert_rational([[Fraction(v) for v in row] for row in cartan])
        ),
        snf_diag=tuple(diag),
        snf_transform=tuple(tuple(row) for row in U),
    )


def is_dominant(w: Weight) -> bool:
    return all(c >= 0 for c in w)


def check_weight(rd: RootDatum, w) -> Weight:
    w = tuple(int(c) for c in w)
    if len(w) != rd.rank:
        raise RankMismatchError(f"weight {w} has wrong length for {rd.stype}")
    return w


def check_dominant(rd: RootDatum, w) -> Weight:
    w = check_weight(rd, w)
    if not is_dominant(w):
        raise NotDominantError(f"weight {w} is not dominant")
    return w


def dominant_conjugate(rd: RootDatum, w: Weight) -> Weight:
    """The unique dominant Weyl conjugate (plain walk, no sign tracking)."""
    cur = tuple(w)
    while True:
        i = next((k for k, c in enumerate(cur) if c < 0), None)
        if i is None:
            return cur
        cur = rd.reflect(cur, i)


def signed_dominant_conjugate(rd: RootDatum, w: Weight) -> tuple[int, Weight]:
    """Dominant conjugate with the sign of the Weyl element used.

    Returns (0, w') as soon as the walk shows the orbit meets a chamber
    wall; otherwise ((-1)**length, dominant conjugate).  Input is treated
    as an already rho-shifted weight.
    """
    cur = tuple(w)
    sign = 1
    while True:
        if any(c == 0 for c in cur):
            return 0, cur
        i = next((k for k, c in enumerate(cur) if c < 0), None)
        if i is None:
            return sign, cur
        cur = rd.reflect(cur, i)
        sign = -sign


def weyl_orbit(rd: RootDatum, w: Weight) -> set[Weight]:
    seen = {tuple(w)}
    frontier = [tuple(w)]
    while frontier:
        cur = frontier.pop()
        for i in range(rd.rank):
            nxt = rd.reflect(cur, i)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen


def dual_weight(rd: RootDatum, w: Weight) -> Weight:
    """Highest weight of the dual module: the dominant conjugate of -w."""
    w = check_dominant(rd, w)
    return dominant_conjugate(rd, tuple(-c for c in w))


def highest_root(rd: RootDatum) -> Weight:
    """Highest root of a simple type, as a dominant weight."""
    if len(rd.factor_slices) != 1:
        raise NotSimpleFactorError(f"{rd.stype} has {len(rd.factor_slices)} factors")
    best = max(rd.positive_roots, key=lambda r: sum(r))
    theta = rd.root_to_weight(best)
    if not is_dominant(theta):
        raise AssertionError("highest root is not dominant")
    return theta


@dataclass(frozen=True)
class WeightClass:
    """Class of a weight modulo the root lattice, in Smith-form coordinates."""

    residue: tuple[int, ...]
    diagonal: tuple[int, ...]

    def __add__(self, other: "WeightClass") -> "WeightClass":
        if self.diagonal != other.diagonal:
            raise ValueError("classes over different lattices")
        res = tuple(
            (a + b) % d for a, b, d in zip(self.residue, other.residue, self.diagonal)
        )
        return WeightClass(res, self.diagonal)

    def __neg__(self) -> "WeightClass":
        return WeightClass(
            tuple((-r) % d for r, d in zip(self.residue, self.diagonal)),
            self.diagonal,
        )

    @property
    def is_zero(self) -> bool:
        return not any(self.residue)

    @property
    def order(self) -> int:
        if not self.residue:
            return 1
        return lcm(*(d // gcd(r, d) for r, d in zip(self.residue, self.diagonal)))

    def to_json(self):
        return {"residue": list(self.residue), "diagonal": list(self.diagonal)}


def weight_class(rd: RootDatum, w: Weight) -> WeightClass:
    """Image of a weight in the finite group P/Q (Smith normal form of C)."""
    w = check_weight(rd, w)
    U = rd.snf_transform
    res = []
    for i, d in enumerate(rd.snf_diag):
        val = sum(U[i][j] * w[j] for j in range(rd.rank))
        if d == 0:
            raise AssertionError("singular Cartan matrix")
        res.append(val % d)
    return WeightClass(tuple(res), rd.snf_diag)


def fundamental_group_order(rd: RootDatum) -> int:
    out = 1
    for d in rd.snf_diag:
        out *= d
    return out
