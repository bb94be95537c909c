"""Finitely presented commutative algebras, rational points, and jets.

The presented algebra stands for the coordinate ring of an affine scheme;
maximal ideals are represented by rational points only.  Local quotients
A/m^k are computed by pure linear algebra on the truncated monomial space
(no term orders), and multi-point truncations are assembled blockwise since
powers of distinct maximal ideals are comaximal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    ArityMismatchError,
    DuplicatePointError,
    InvalidPointError,
)
from .linalg import RowReducer, SVec, rank_exact, svec_add_scaled
from .polyring import Monomial, Poly, parse_poly, parse_rational

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class AlgebraPresentation:
    generators: tuple[str, ...]
    relations: tuple[Poly, ...]

    def __post_init__(self):
        for rel in self.relations:
            if rel.nvars != self.nvars:
                raise ArityMismatchError("relation arity mismatch")
            if rel.is_zero:
                raise InvalidPointError("zero relation in presentation")

    @property
    def nvars(self) -> int:
        return len(self.generators)

    @property
    def is_scalars(self) -> bool:
        return self.nvars == 0

    @staticmethod
    def from_json(doc) -> "AlgebraPresentation":
        gens = tuple(doc.get("generators", ()))
        rels = tuple(parse_poly(r, gens) for r in doc.get("relations", ()))
        return AlgebraPresentation(gens, rels)

    def to_json(self):
        return {
            "generators": list(self.generators),
            "relations": [r.pretty(self.generators) for r in self.relations],
        }

    def parse(self, text: str) -> Poly:
        return parse_poly(text, self.generators)

    def point(self, coords) -> Point:
        return check_point(self, coords)


def polynomial_algebra(*names: str) -> AlgebraPresentation:
    return AlgebraPresentation(tuple(names), ())


def presented_algebra(names, relation_texts) -> AlgebraPresentation:
    gens = tuple(names)
    return AlgebraPresentation(gens, tuple(parse_poly(t, gens) for t in relation_texts))


def check_point(algebra: AlgebraPresentation, coords) -> Point:
    point = tuple(parse_rational(c) for c in coords)
    if len(point) != algebra.nvars:
        raise ArityMismatchError(
            f"point arity {len(point)} != {algebra.nvars} generators"
        )
    return point


def validate_point(algebra: AlgebraPresentation, coords) -> bool:
    """True iff every relation vanishes at the point (exact arithmetic)."""
    point = check_point(algebra, coords)
    return all(rel.evaluate(point) == 0 for rel in algebra.relations)


def require_point(algebra: AlgebraPresentation, coords) -> Point:
    point = check_point(algebra, coords)
    if not validate_point(algebra, point):
        raise InvalidPointError(f"{point} does not satisfy the relations")
    return point


def tangent_dimension(algebra: AlgebraPresentation, coords) -> int:
    """Dimension of the Zariski tangent space at a rational point.

    Computed as nvars minus the rank of the relation Jacobian at the point;
    by the standard identification this is dim Der(A, A/m) = dim (m/m^2)^*.
    """
    point = require_point(algebra, coords)
    rows: list[SVec] = []
    for rel in algebra.relations:
        row = {}
        for i in range(algebra.nvars):
            val = rel.diff(i).evaluate(point)
            if val:
                row[i] = val
        if row:
            rows.append(row)
    return algebra.nvars - rank_exact(rows)


def _monomials_below(nvars: int, k: int) -> list[Monomial]:
    """All exponent tuples of total degree < k, graded-lex ascending."""
    out: list[Monomial] = []
    for d in range(k):
        if nvars == 0:
            if d == 0:
                out.append(())
            continue
        level: list[Monomial] = []

        def level_rec(prefix, remaining, left):
            if remaining == 1:
                level.append(tuple(prefix + [left]))
                return
            for e in range(left + 1):
                level_rec(prefix + [e], remaining - 1, left - e)

        level_rec([], nvars, d)
        out.extend(sorted(level))
    return out


@dataclass(eq=False)
class LocalJet:
    """The quotient A/m^k at one rational point, as explicit linear algebra."""

    point: Point
    order: int
    basis: tuple[Monomial, ...]  # non-pivot monomials, shifted coordinates
    _monomials: tuple[Monomial, ...]
    _index: dict[Monomial, int]
    _relation_rows: RowReducer

    @property
    def dim(self) -> int:
        return len(self.basis)

    def normal_form(self, poly: Poly) -> list[Fraction]:
        """Coordinates of a polynomial in shifted variables, degree < order."""
        vec: SVec = {}
        for exps, coeff in poly.truncate(self.order).terms:
            vec[self._index[exps]] = coeff
        rem = self._relation_rows.reduce(vec)
        out = [Fraction(0)] * self.dim
        pos = {self._index[b]: i for i, b in enumerate(self.basis)}
        for col, val in rem.items():
            out[pos[col]] = val
        return out


def _build_local(algebra: AlgebraPresentation, point: Point, k: int) -> LocalJet:
    monos = _monomials_below(algebra.nvars, k)
    index = {m: i for i, m in enumerate(monos)}
    shifted = [rel.shift(point) for rel in algebra.relations]
    for rel in shifted:
        const = rel.as_dict().get((0,) * algebra.nvars, Fraction(0))
        assert const == 0, "relation does not vanish at the point"
    reducer = RowReducer()
    for rel in shifted:
        for g in monos:
            prod = rel
            if any(g):
                prod = rel * Poly.make(algebra.nvars, {g: Fraction(1)})
            prod = prod.truncate(k)
            if prod.is_zero:
                continue
            reducer.insert({index[e]: c for e, c in prod.terms})
    pivots = set(reducer.rows)
    basis = tuple(m for m in monos if index[m] not in pivots)
    assert (0,) * algebra.nvars in basis, "unit died in the local quotient"
    return LocalJet(point, k, basis, tuple(monos), index, reducer)


@dataclass(eq=False)
class JetAlgebra:
    """Product of local quotients A/m_i^k over a finite set of points.

    Carries a full multiplication table, an evaluation functional per point,
    and normal forms for arbitrary elements of A.  Commutativity,
    associativity, unitality and the homomorphism property of the
    evaluations are all verified exhaustively at construction.
    """

    algebra: AlgebraPresentation
    order: int
    points: tuple[Point, ...]
    locals: tuple[LocalJet, ...]
    offsets: tuple[int, ...]
    dim: int
    labels: tuple[str, ...]
    table: list[list[SVec]]
    unit: SVec
    const_index: dict[int, int]  # basis index -> point index, units of blocks

    def eval_at(self, point_index: int, coords) -> Fraction:
        idx = self.offsets[point_index]  # local constant is basis element 0
        if isinstance(coords, dict):
            return coords.get(idx, Fraction(0))
        return coords[idx]

    def multiply(self, a: SVec, b: SVec) -> SVec:
        out: SVec = {}
        for i, av in a.items():
            row = self.table[i]
            for j, bv in b.items():
                svec_add_scaled(out, row[j], av * bv)
        return out

    def reduce(self, poly: Poly) -> list[Fraction]:
        """Coordinates of the class of a polynomial in the jet basis."""
        if poly.nvars != self.algebra.nvars:
            raise ArityMismatchError("element arity mismatch")
        out: list[Fraction] = []
        for loc in self.locals:
            out.extend(loc.normal_form(poly.shift(loc.point)))
        return out

    def basis_vec(self, i: int) -> SVec:
        return {i: Fraction(1)}


def _verify_jet(jet: JetAlgebra) -> None:
    d = jet.dim
    table = jet.table
    for i in range(d):
        for j in range(i, d):
            prod = table[i][j]
            assert prod == table[j][i], "jet product not commutative"
            for pt in range(len(jet.points)):
                lhs = jet.eval_at(pt, prod)
                rhs = jet.eval_at(pt, jet.basis_vec(i)) * jet.eval_at(
                    pt, jet.basis_vec(j)
                )
                assert lhs == rhs, "evaluation is not multiplicative"
    unit = jet.unit
    for i in range(d):
        assert jet.multiply(unit, jet.basis_vec(i)) == jet.basis_vec(i)
    for i in range(d):
        for j in range(d):
            ij = table[i][j]
            for l in range(d):
                left = jet.multiply(ij, jet.basis_vec(l))
                right = jet.multiply(jet.basis_vec(i), table[j][l])
                assert left == right, "jet product not associative"


def jet_quotient(algebra: AlgebraPresentation, points, k: int) -> JetAlgebra:
    """A / prod_i m_i^k for distinct valid rational points, k >= 1."""
    if k < 1:
        raise InvalidPointError("truncation order must be >= 1")
    pts = [require_point(algebra, p) for p in points]
    if len(set(pts)) != len(pts):
        raise DuplicatePointError("points must be distinct")
    locals_ = tuple(_build_local(algebra, p, k) for p in pts)
    offsets = []
    labels: list[str] = []
    pos = 0
    nv = algebra.nvars
    const_index: dict[int, int] = {}
    for pi, loc in enumerate(locals_):
        offsets.append(pos)
        const_index[pos] = pi  # graded-lex puts the constant monomial first
        for mono in loc.basis:
            if not any(mono):
                labels.append(f"p{pi}:1")
            else:
                labels.append(
                    f"p{pi}:"
                    + "*".join(
                        f"z{v}" + (f"^{e}" if e > 1 else "")
                        for v, e in enumerate(mono)
                        if e
                    )
                )
        pos += loc.dim
    dim = pos

    table: list[list[SVec]] = [[{} for _ in range(dim)] for _ in range(dim)]
    for pi, loc in enumerate(locals_):
        base = offsets[pi]
        for i, mi in enumerate(loc.basis):
            for j, mj in enumerate(loc.basis):
                exps = tuple(a + b for a, b in zip(mi, mj))
                if sum(exps) >= k:
                    entry: SVec = {}
                else:
                    coords = loc.normal_form(Poly.make(nv, {exps: Fraction(1)}))
                    entry = {
                        base + t: c for t, c in enumerate(coords) if c
                    }
                table[base + i][base + j] = entry

    unit: SVec = {off: Fraction(1) for off in offsets}
    jet = JetAlgebra(
        algebra=algebra,
        order=k,
        points=tuple(pts),
        locals=locals_,
        offsets=tuple(offsets),
        dim=dim,
        labels=tuple(labels),
        table=table,
        unit=unit,
        const_index=const_index,
    )
    _verify_jet(jet)
    return jet


def reduce_element(jet: JetAlgebra, poly: Poly) -> list[Fraction]:
    return jet.reduce(poly)
