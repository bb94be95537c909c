"""Labels of finite-dimensional simple modules over a current Lie algebra.

A simple module is labelled by a finitely supported function from rational
points of the coefficient algebra to dominant weights.  Everything here is
label arithmetic; explicit matrices live in the oracle layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebras import AlgebraPresentation, Point, require_point
from .characters import irrep_dimension
from .errors import BadIndexError, ContextMismatchError, DuplicatePointError
from .polyring import Poly, format_rational, parse_rational
from .roots import (
    SemisimpleType,
    Weight,
    WeightClass,
    build_root_system,
    check_dominant,
    dual_weight,
    weight_class,
)


@dataclass(frozen=True)
class SupportFunction:
    """Finite-support map from points to dominant weights; the module label."""

    stype: SemisimpleType
    algebra: AlgebraPresentation
    entries: tuple[tuple[Point, Weight], ...]

    def __post_init__(self):
        rd = build_root_system(self.stype)
        seen = set()
        fixed = []
        for point, w in self.entries:
            point = require_point(self.algebra, point)
            if point in seen:
                raise DuplicatePointError(f"point {point} listed twice")
            seen.add(point)
            fixed.append((point, check_dominant(rd, w)))
        object.__setattr__(self, "entries", tuple(sorted(fixed)))

    def as_dict(self) -> dict[Point, Weight]:
        return dict(self.entries)

    def weight_at(self, point: Point) -> Weight:
        zero = (0,) * build_root_system(self.stype).rank
        return self.as_dict().get(point, zero)

    @property
    def support(self) -> tuple[Point, ...]:
        return tuple(p for p, w in self.entries if any(w))

    def to_json(self):
        return [
            {
                "point": [format_rational(c) for c in point],
                "weight": list(w),
            }
            for point, w in self.entries
        ]

    @staticmethod
    def from_json(stype, algebra, doc) -> "SupportFunction":
        entries = tuple(
            (
                tuple(parse_rational(c) for c in item["point"]),
                tuple(int(x) for x in item["weight"]),
            )
            for item in doc
        )
        return SupportFunction(stype, algebra, entries)


def support_function(stype, algebra, mapping) -> SupportFunction:
    """Build a label from {point: weight}; points may be raw coordinate lists."""
    entries = tuple(
        (tuple(parse_rational(c) for c in point), tuple(int(x) for x in w))
        for point, w in (mapping.items() if hasattr(mapping, "items") else mapping)
    )
    return SupportFunction(stype, algebra, entries)


def _require_same_context(a: SupportFunction, b: SupportFunction) -> None:
    if a.stype != b.stype or a.algebra != b.algebra:
        raise ContextMismatchError("labels live over different contexts")


def normalize(sf: SupportFunction) -> SupportFunction:
    """Drop zero weights; idempotent.  Zero weights carry no information
    since all one-point evaluations of the trivial module are isomorphic."""
    kept = tuple((p, w) for p, w in sf.entries if any(w))
    return SupportFunction(sf.stype, sf.algebra, kept)


def is_isomorphic(a: SupportFunction, b: SupportFunction) -> bool:
    _require_same_context(a, b)
    return normalize(a).entries == normalize(b).entries


def dual(sf: SupportFunction) -> SupportFunction:
    rd = build_root_system(sf.stype)
    return SupportFunction(
        sf.stype,
        sf.algebra,
        tuple((p, dual_weight(rd, w)) for p, w in sf.entries),
    )


@dataclass(frozen=True)
class SpectralCharacter:
    """Pointwise reduction of a label modulo the root lattice."""

    entries: tuple[tuple[Point, WeightClass], ...]

    def as_dict(self):
        return dict(self.entries)

    def to_json(self):
        return [
            {"point": [format_rational(c) for c in p], "class": cls.to_json()}
            for p, cls in self.entries
        ]


def spectral_character(sf: SupportFunction) -> SpectralCharacter:
    rd = build_root_system(sf.stype)
    entries = []
    for point, w in sf.entries:
        cls = weight_class(rd, w)
        if not cls.is_zero:
            entries.append((point, cls))
    return SpectralCharacter(tuple(sorted(entries, key=lambda t: t[0])))


def module_dimension(sf: SupportFunction) -> int:
    rd = build_root_system(sf.stype)
    out = 1
    for _, w in normalize(sf).entries:
        out *= irrep_dimension(rd, w)
    return out


def highest_weight_functional(sf: SupportFunction, a: Poly, h_index: int) -> Fraction:
    """Pairing of a (x) h_i against the label: sum over the support of
    a(point) times the i-th fundamental coordinate of the weight there."""
    rd = build_root_system(sf.stype)
    if a.nvars != sf.algebra.nvars:
        raise ContextMismatchError("element arity mismatch")
    if not 1 <= h_index <= rd.rank:
        raise BadIndexError(f"Cartan index {h_index} out of range")
    total = Fraction(0)
    for point, w in sf.entries:
        total += a.evaluate(point) * w[h_index - 1]
    return total
