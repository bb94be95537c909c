"""Exact character arithmetic for semisimple types.

Weight multiplicities come from Freudenthal's recursion (no alternating
sums, integer arithmetic throughout), dimensions from the Weyl product
formula, and tensor decompositions from the Klimyk signed-orbit sum over
the weights of the second factor.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import NotDominantError, RankMismatchError
from .roots import (
    RootDatum,
    SemisimpleType,
    Weight,
    build_root_system,
    check_dominant,
    check_weight,
    dominant_conjugate,
    highest_root,
    is_dominant,
    signed_dominant_conjugate,
    weyl_orbit,
)


def _add(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Weight, b: Weight) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


@dataclass(eq=False)
class WeightMultiplicityTable:
    """Multiplicities of the weights of one irreducible highest-weight module.

    Only dominant-chamber entries are stored; the full Weyl-invariant table
    is expanded on demand.
    """

    rd: RootDatum
    highest: Weight
    dominant: dict[Weight, int]

    def multiplicity(self, w: Weight) -> int:
        return self.dominant.get(dominant_conjugate(self.rd, tuple(w)), 0)

    def expanded(self) -> dict[Weight, int]:
        out: dict[Weight, int] = {}
        for w, m in self.dominant.items():
            for x in weyl_orbit(self.rd, w):
                out[x] = m
        return out

    def dimension(self) -> int:
        return sum(
            m * len(weyl_orbit(self.rd, w)) for w, m in self.dominant.items()
        )


def _weight_set(rd: RootDatum, lam: Weight) -> set[Weight]:
    """All weights of V(lam): mu with dominant conjugate below lam."""
    inv = rd.cartan_inverse
    rank = rd.rank

    def below(mu: Weight) -> bool:
        dom = dominant_conjugate(rd, mu)
        diff = _sub(lam, dom)
        for i in range(rank):
            c = sum(inv[i][j] * diff[j] for j in range(rank))
            if c.denominator != 1 or c < 0:
                return False
        return True

    seen = {lam}
    frontier = [lam]
    cols = [tuple(rd.cartan[i][j] for i in range(rank)) for j in range(rank)]
    while frontier:
        mu = frontier.pop()
        for j in range(rank):
            nxt = _sub(mu, cols[j])
            if nxt not in seen and below(nxt):
                seen.add(nxt)
                frontier.append(nxt)
    return seen


def _freudenthal(rd: RootDatum, lam: Weight) -> dict[Weight, int]:
    rank = rd.rank
    rho = rd.rho
    weights = _weight_set(rd, lam)
    inv = rd.cartan_inverse

    def height(mu: Weight) -> int:
        diff = _sub(lam, mu)
        h = sum(sum(inv[i][j] * diff[j] for j in range(rank)) for i in range(rank))
        assert h.denominator == 1
        return int(h)

    dominants = sorted(
        (w for w in weights if is_dominant(w)), key=lambda w: (height(w), w)
    )
    pos_roots = [(r, rd.root_to_weight(r)) for r in rd.positive_roots]
    mult: dict[Weight, int] = {}
    for mu in dominants:
        if mu == lam:
            mult[mu] = 1
            continue
        total = 0
        for root, root_w in pos_roots:
            k = 1
            while True:
                nu = tuple(mu[i] + k * root_w[i] for i in range(rank))
                if nu not in weights:
                    break
                m = mult[dominant_conjugate(rd, nu)]
                # (nu, root) with root in simple-root coordinates
                total += m * sum(
                    root[i] * rd.symmetrizer[i] * nu[i] for i in range(rank)
                )
                k += 1
        diff = _sub(lam, mu)
        lam_mu_rho = tuple(lam[i] + mu[i] + 2 for i in range(rank))
        coords = [
            sum(inv[i][j] * diff[j] for j in range(rank)) for i in range(rank)
        ]
        denom = sum(
            coords[i] * rd.symmetrizer[i] * lam_mu_rho[i] for i in range(rank)
        )
        val = Fraction(2 * total) / denom
        assert val.denominator == 1 and val > 0, (lam, mu, val)
        mult[mu] = int(val)
    assert mult[lam] == 1
    return mult


_table_lock = threading.Lock()
_TABLE_CACHE_SIZE = 128


def _make_table_cache(maxsize):
    @lru_cache(maxsize=maxsize)
    def cached(stype: SemisimpleType, lam: Weight) -> WeightMultiplicityTable:
        rd = build_root_system(stype)
        return WeightMultiplicityTable(rd, lam, _freudenthal(rd, lam))

    return cached


_cached_table = _make_table_cache(_TABLE_CACHE_SIZE)


def configure_table_cache(maxsize: int | None) -> None:
    """Rebuild the weight-table LRU cache with a new bound (None = unbounded)."""
    global _cached_table
    with _table_lock:
        _cached_table = _make_table_cache(maxsize)


def weight_multiplicities(rd: RootDatum, lam) -> WeightMultiplicityTable:
    lam = check_dominant(rd, lam)
    return _cached_table(rd.stype, lam)


def irrep_dimension(rd: RootDatum, lam) -> int:
    """Weyl dimension formula, exact."""
    lam = check_dominant(rd, lam)
    rho = rd.rho
    num = Fraction(1)
    shifted = _add(lam, rho)
    for root in rd.positive_roots:
        a = sum(root[i] * rd.symmetrizer[i] * shifted[i] for i in range(rd.rank))
        b = sum(root[i] * rd.symmetrizer[i] for i in range(rd.rank))
        num *= Fraction(a, b)
    assert num.denominator == 1
    return int(num)


@dataclass(eq=False)
class TensorDecomposition:
    """Multiplicities of the simple summands of V(lam) (x) V(mu)."""

    rd: RootDatum
    left: Weight
    right: Weight
    terms: dict[Weight, int]

    def multiplicity(self, nu: Weight) -> int:
        return self.terms.get(tuple(nu), 0)

    def to_json(self):
        return {
            ",".join(map(str, nu)): m
            for nu, m in sorted(self.terms.items())
        }


def tensor_decomposition(rd: RootDatum, lam, mu) -> TensorDecomposition:
    """Klimyk's rule, summing signed dominant conjugates over weights of mu.

    Callers keep the second argument small (for current-algebra homs it is
    an adjoint module, with |roots| + rank weights).
    """
    lam = check_dominant(rd, lam)
    mu = check_dominant(rd, mu)
    rho = rd.rho
    table = weight_multiplicities(rd, mu).expanded()
    terms: dict[Weight, int] = {}
    for delta, m in table.items():
        shifted = tuple(lam[i] + delta[i] + 1 for i in range(rd.rank))
        sign, dom = signed_dominant_conjugate(rd, shifted)
        if sign == 0:
            continue
        nu = _sub(dom, rho)
        terms[nu] = terms.get(nu, 0) + sign * m
    terms = {nu: c for nu, c in terms.items() if c}
    assert all(c > 0 for c in terms.values()), "Klimyk produced a negative term"
    return TensorDecomposition(rd, lam, mu, terms)


def tensor_multiplicity(rd: RootDatum, lam, mu, nu) -> int:
    nu = check_dominant(rd, nu)
    return tensor_decomposition(rd, lam, mu).multiplicity(nu)


def _padded_adjoints(rd: RootDatum) -> list[Weight]:
    out = []
    for (start, end), ct in zip(rd.factor_slices, rd.stype.factors):
        sub = build_root_system(SemisimpleType((ct,)))
        theta = highest_root(sub)
        out.append((0,) * start + theta + (0,) * (rd.rank - end))
    return out


def adjoint_hom_dimension(stype: SemisimpleType, lam, mu) -> int:
    """dim Hom_g(g (x) V(lam), V(mu)), summed over the simple ideals of g.

    Equals the multiplicity of V(mu) in ad (x) V(lam); symmetric in lam, mu
    because the adjoint module is self-dual.
    """
    rd = build_root_system(stype)
    lam = check_dominant(rd, lam)
    mu = check_dominant(rd, mu)
    total = 0
    for theta in _padded_adjoints(rd):
        total += tensor_decomposition(rd, lam, theta).multiplicity(mu)
    return total


def adjoint_tensor_support(stype: SemisimpleType, lam) -> set[Weight]:
    """Dominant weights nu with dim Hom_g(g (x) V(lam), V(nu)) > 0."""
    rd = build_root_system(stype)
    lam = check_dominant(rd, lam)
    out: set[Weight] = set()
    for theta in _padded_adjoints(rd):
        out.update(tensor_decomposition(rd, lam, theta).terms)
    return out
