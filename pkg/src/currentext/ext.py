"""First extension groups between simple current-algebra modules.

The dimension of Ext^1 between two simple labels is a closed form: it
vanishes when the labels differ at two or more points; when they differ at
exactly one point m it is

    dim Hom_g(g (x) V(lam), V(mu)) * dim Der(A, A/m),

and for equal labels it is the sum of the analogous self-terms over the
support.  Block structure is governed by spectral characters.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebras import Point, tangent_dimension
from .characters import adjoint_hom_dimension, adjoint_tensor_support
from .errors import (
    BoundExceededError,
    ConnectednessRequiredError,
    NotLinkedError,
)
from .modules import (
    SupportFunction,
    _require_same_context,
    normalize,
    spectral_character,
)
from .polyring import format_rational
from .roots import (
    SemisimpleType,
    Weight,
    build_root_system,
    check_dominant,
    weight_class,
)

VANISH_TWO_POINTS = "differ-at-two-or-more"
VANISH_HOM = "hom-zero"
VANISH_TANGENT = "tangent-zero"


@dataclass(frozen=True)
class PointContribution:
    point: Point
    hom_dim: int
    tangent_dim: int

    @property
    def product(self) -> int:
        return self.hom_dim * self.tangent_dim

    def to_json(self):
        return {
            "point": [format_rational(c) for c in self.point],
            "hom": self.hom_dim,
            "tangent": self.tangent_dim,
            "product": self.product,
        }


@dataclass(frozen=True)
class Ext1Report:
    total_dimension: int
    difference_locus: tuple[Point, ...]
    contributions: tuple[PointContribution, ...]
    vanishing_reason: str | None

    def to_json(self):
        return {
            "dimension": self.total_dimension,
            "locus": [[format_rational(c) for c in p] for p in self.difference_locus],
            "contributions": [c.to_json() for c in self.contributions],
            "reason": self.vanishing_reason or "none",
        }


def ext1_dimension(sf: SupportFunction, sf2: SupportFunction) -> Ext1Report:
    """dim Ext^1 from the first label to the second, with its decomposition."""
    _require_same_context(sf, sf2)
    left = normalize(sf)
    right = normalize(sf2)
    lmap = left.as_dict()
    rmap = right.as_dict()
    locus = tuple(
        sorted(p for p in set(lmap) | set(rmap) if lmap.get(p) != rmap.get(p))
    )
    stype = sf.stype
    rd = build_root_system(stype)
    zero = (0,) * rd.rank

    if len(locus) >= 2:
        return Ext1Report(0, locus, (), VANISH_TWO_POINTS)

    if len(locus) == 1:
        point = locus[0]
        hom = adjoint_hom_dimension(
            stype, lmap.get(point, zero), rmap.get(point, zero)
        )
        tangent = tangent_dimension(sf.algebra, point)
        contrib = PointContribution(point, hom, tangent)
        reason = None
        if contrib.product == 0:
            reason = VANISH_HOM if hom == 0 else VANISH_TANGENT
        return Ext1Report(contrib.product, locus, (contrib,), reason)

    # equal labels: one self-term per support point
    contribs = []
    for point, w in left.entries:
        hom = adjoint_hom_dimension(stype, w, w)
        tangent = tangent_dimension(sf.algebra, point)
        contribs.append(PointContribution(point, hom, tangent))
    total = sum(c.product for c in contribs)
    reason = None
    if total == 0:
        # normalized self-terms always have hom >= 1, so only tangents (or
        # an empty support, where no adjoint hom exists at all) can vanish
        reason = VANISH_TANGENT if contribs else VANISH_HOM
    return Ext1Report(total, locus, tuple(contribs), reason)


def same_block(
    sf: SupportFunction, sf2: SupportFunction, *, assume_connected: bool = False
) -> bool:
    """Equality of spectral characters; the caller asserts Spec A connected.

    Whether two simple labels generate the same block is controlled by their
    spectral characters when the coefficient algebra is connected and bigger
    than the scalars; neither hypothesis is decidable from a presentation,
    so the caller must assert the first and we refuse the degenerate second.
    """
    _require_same_context(sf, sf2)
    if not assume_connected:
        raise ConnectednessRequiredError(
            "pass assume_connected=True to assert Spec A is connected"
        )
    if sf.algebra.is_scalars:
        raise ConnectednessRequiredError(
            "block statements are vacuous over the scalars (category semisimple)"
        )
    return spectral_character(sf) == spectral_character(sf2)


@dataclass(frozen=True)
class LinkingChain:
    stype: SemisimpleType
    weights: tuple[Weight, ...]

    def __post_init__(self):
        rd = build_root_system(self.stype)
        assert self.weights, "empty chain"
        first = weight_class(rd, self.weights[0])
        last = weight_class(rd, self.weights[-1])
        assert first == last, "chain endpoints in different classes"
        for a, b in zip(self.weights, self.weights[1:]):
            assert adjoint_hom_dimension(self.stype, a, b) > 0, (a, b)

    def __len__(self) -> int:
        return len(self.weights)

    def to_json(self):
        return [list(w) for w in self.weights]


def default_chain_bound(stype: SemisimpleType, lam: Weight, mu: Weight) -> int:
    coxeter = {"A": lambda n: n + 1, "B": lambda n: 2 * n, "C": lambda n: 2 * n,
               "D": lambda n: 2 * n - 2, "E": lambda n: {6: 12, 7: 18, 8: 30}[n],
               "F": lambda n: 12, "G": lambda n: 6}
    h = max(coxeter[t.family](t.rank) for t in stype.factors)
    return sum(lam) + sum(mu) + 2 * stype.rank * h


def linking_chain(
    stype: SemisimpleType, lam, mu, bound: int | None = None
) -> LinkingChain:
    """Shortest chain of dominant weights joining lam to mu whose consecutive
    adjoint hom spaces are nonzero (breadth-first search).

    Requires lam - mu in the root lattice; a BoundExceeded outcome means the
    search cap was too small, never that no chain exists.
    """
    rd = build_root_system(stype)
    lam = check_dominant(rd, lam)
    mu = check_dominant(rd, mu)
    if weight_class(rd, lam) != weight_class(rd, mu):
        raise NotLinkedError(f"{lam} and {mu} differ modulo the root lattice")
    if bound is None:
        bound = default_chain_bound(stype, lam, mu)
    if lam == mu:
        return LinkingChain(stype, (lam,))
    parents: dict[Weight, Weight] = {lam: lam}
    frontier = [lam]
    while frontier:
        nxt: list[Weight] = []
        for cur in frontier:
            for nb in sorted(adjoint_tensor_support(stype, cur)):
                if nb in parents or sum(nb) > bound:
                    continue
                parents[nb] = cur
                if nb == mu:
                    chain = [nb]
                    while chain[-1] != lam:
                        chain.append(parents[chain[-1]])
                    return LinkingChain(stype, tuple(reversed(chain)))
                nxt.append(nb)
        frontier = nxt
    raise BoundExceededError(
        f"no chain from {lam} to {mu} within height bound {bound} (inconclusive)"
    )


@dataclass(frozen=True)
class ExtQuiver:
    nodes: tuple[SupportFunction, ...]
    edges: tuple[tuple[int, int, int], ...]  # (from, to, dimension)
    blocks: tuple[tuple[int, ...], ...]  # node indices grouped by character

    def edge_dict(self) -> dict[tuple[int, int], int]:
        return {(i, j): d for i, j, d in self.edges}

    def to_json(self):
        return {
            "nodes": [sf.to_json() for sf in self.nodes],
            "edges": [
                {"from": i, "to": j, "dimension": d} for i, j, d in self.edges
            ],
            "character_classes": [list(block) for block in self.blocks],
        }

    def to_dot(self) -> str:
        def label(sf: SupportFunction) -> str:
            if not sf.entries:
                return "trivial"
            return "; ".join(
                "(%s)->%s" % (",".join(format_rational(c) for c in p), list(w))
                for p, w in sf.entries
            )

        lines = ["digraph ext1 {"]
        for i, sf in enumerate(self.nodes):
            lines.append(f'  n{i} [label="{label(sf)}"];')
        for i, j, d in self.edges:
            lines.append(f'  n{i} -> n{j} [label="{d}"];')
        lines.append("}")
        return "\n".join(lines)


def ext_quiver(family) -> ExtQuiver:
    """Pairwise Ext^1 dimensions over a family of labels, with self-loops,
    plus the partition of the family by spectral character."""
    normalized = []
    seen = set()
    for sf in family:
        n = normalize(sf)
        if normalized:
            _require_same_context(normalized[0], n)
        if n.entries in seen:
            continue
        seen.add(n.entries)
        normalized.append(n)
    nodes = tuple(sorted(normalized, key=lambda s: s.entries))
    edges = []
    for i, a in enumerate(nodes):
        for j, b in enumerate(nodes):
            dim = ext1_dimension(a, b).total_dimension
            if dim:
                edges.append((i, j, dim))
    groups: dict[tuple, list[int]] = {}
    for i, sf in enumerate(nodes):
        key = tuple(
            (p, cls.residue, cls.diagonal)
            for p, cls in spectral_character(sf).entries
        )
        groups.setdefault(key, []).append(i)
    blocks = tuple(tuple(v) for _, v in sorted(groups.items()))
    return ExtQuiver(nodes, tuple(edges), blocks)
