"""Explicit matrix realizations for type-A factors: Lie structure constants,
irreducible modules carved out of exterior-power tensors, truncated current
algebras over a jet, and evaluation modules.

This layer is the oracle's raw material: everything is an explicit sparse
rational matrix and every constructed object re-verifies its defining
identities (antisymmetry, Jacobi, bracket compatibility) at build time,
exhaustively below a configurable size and on a deterministic sample above.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .algebras import JetAlgebra, Point
from .characters import irrep_dimension, weight_multiplicities
from .errors import (
    DimensionCapError,
    SupportNotCoveredError,
    UnsupportedTypeError,
)
from .linalg import (
    RowReducer,
    SMat,
    SVec,
    sm_add,
    sm_apply,
    sm_commutator,
    sm_eq,
    sm_mul,
    sm_scale,
    svec_add_scaled,
)
from .modules import SupportFunction, normalize
from .roots import SemisimpleType, Weight, build_root_system, check_dominant

# exhaustive identity checks run below this many basis triples/pairs
VERIFY_TRIPLE_LIMIT = 30
VERIFY_PAIR_LIMIT = 26


@dataclass(eq=False)
class LieStructure:
    """Structure constants [b_i, b_j] = sum_k c[i,j][k] b_k (i < j stored)."""

    dim: int
    brackets: dict[tuple[int, int], SVec]
    weights: tuple[Weight, ...] | None = None

    def bracket(self, i: int, j: int) -> SVec:
        if i == j:
            return {}
        if i < j:
            return self.brackets.get((i, j), {})
        return {k: -v for k, v in self.brackets.get((j, i), {}).items()}

    def bracket_vec(self, vec_a: SVec, vec_b: SVec) -> SVec:
        out: SVec = {}
        for i, av in vec_a.items():
            for j, bv in vec_b.items():
                svec_add_scaled(out, self.bracket(i, j), av * bv)
        return out

    def verify(self) -> None:
        dim = self.dim
        exhaustive = dim <= VERIFY_TRIPLE_LIMIT
        triples = (
            combinations(range(dim), 3)
            if exhaustive
            else _sample_triples(dim)
        )
        for i, j, k in triples:
            total: SVec = {}
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                svec_add_scaled(total, self.bracket_vec(self.bracket(a, b), {c: Fraction(1)}), Fraction(1))
            assert not total, f"Jacobi fails at {(i, j, k)}"


def _sample_triples(dim: int):
    """Deterministic covering sample used above the exhaustive limit."""
    for i in range(dim):
        for j in range(i + 1, dim, 3):
            k = (i + 2 * j + 7) % dim
            if k > j:
                yield i, j, k


@dataclass(eq=False)
class ModuleMatrices:
    """One sparse matrix per Lie basis element, with h-weights per basis line."""

    lie: LieStructure
    dim: int
    mats: list[SMat]
    weights: tuple[Weight, ...] | None = None

    def verify(self, exhaustive: bool | None = None) -> None:
        dim = self.lie.dim
        if exhaustive is None:
            exhaustive = dim <= VERIFY_PAIR_LIMIT and self.dim <= 64
        pairs = (
            combinations(range(dim), 2)
            if exhaustive
            else ((i, (i + 3) % dim) for i in range(dim) if i != (i + 3) % dim)
        )
        for i, j in pairs:
            lhs = sm_commutator(self.mats[i], self.mats[j])
            rhs: SMat = {}
            for k, c in self.lie.bracket(i, j).items():
                rhs = sm_add(rhs, self.mats[k], c)
            assert sm_eq(lhs, rhs), f"not a module at pair {(i, j)}"


@dataclass(eq=False)
class ChevalleyAlgebra:
    """A semisimple Lie algebra of type-A factors with explicit basis."""

    stype: SemisimpleType
    lie: LieStructure
    e_indices: tuple[int, ...]  # per simple root, global basis index
    f_indices: tuple[int, ...]
    h_indices: tuple[int, ...]
    defining: tuple[ModuleMatrices, ...]  # one per factor, padded action

    @property
    def dim(self) -> int:
        return self.lie.dim

    def adjoint_module(self) -> ModuleMatrices:
        mats = []
        for i in range(self.dim):
            mat: SMat = {}
            for j in range(self.dim):
                for k, c in self.lie.bracket(i, j).items():
                    mat[k, j] = mat.get((k, j), Fraction(0)) + c
            mats.append({k: v for k, v in mat.items() if v})
        return ModuleMatrices(self.lie, self.dim, mats, self.lie.weights)


def _sl_basis(n: int):
    """Basis of sl_{n+1}: E_ij (i<j), then h_1..h_n, then E_ij (i>j)."""
    basis = []
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            basis.append(("E", i, j))
    for i in range(n):
        basis.append(("H", i))
    for i in range(n + 1):
        for j in range(i):
            basis.append(("E", i, j))
    return basis


def _sl_matrix(label, size: int) -> SMat:
    if label[0] == "E":
        _, i, j = label
        return {(i, j): Fraction(1)}
    _, i = label
    return {(i, i): Fraction(1), (i + 1, i + 1): Fraction(-1)}


def _sl_decompose(mat: SMat, n: int, basis_pos: dict) -> SVec:
    """Coordinates of a traceless (n+1)x(n+1) matrix in the sl basis."""
    out: SVec = {}
    diag = [Fraction(0)] * (n + 1)
    for (i, j), v in mat.items():
        if i == j:
            diag[i] = v
        else:
            out[basis_pos["E", i, j]] = v
    partial = Fraction(0)
    for i in range(n):
        partial += diag[i]
        if partial:
            out[basis_pos["H", i]] = partial
    return out


@lru_cache(maxsize=None)
def chevalley_structure(stype: SemisimpleType) -> ChevalleyAlgebra:
    """Structure constants and defining representations for type-A products."""
    for ct in stype.factors:
        if ct.family != "A":
            raise UnsupportedTypeError(
                f"explicit matrices only cover type A, got {ct}"
            )
    rd = build_root_system(stype)
    total_rank = rd.rank

    factor_data = []
    offset = 0
    for (start, end), ct in zip(rd.factor_slices, stype.factors):
        n = ct.rank
        labels = _sl_basis(n)
        factor_data.append((start, n, labels, offset))
        offset += len(labels)
    dim = offset

    brackets: dict[tuple[int, int], SVec] = {}
    weights: list[Weight] = [None] * dim
    e_idx: list[int] = []
    f_idx: list[int] = []
    h_idx: list[int] = []
    defining: list[ModuleMatrices] = []

    lie = LieStructure(dim, brackets)

    for start, n, labels, base in factor_data:
        size = n + 1
        basis_pos = {lab: base + t for t, lab in enumerate(labels)}
        mats = {lab: _sl_matrix(lab, size) for lab in labels}
        for t1, lab1 in enumerate(labels):
            for t2 in range(t1 + 1, len(labels)):
                lab2 = labels[t2]
                comm = sm_commutator(mats[lab1], mats[lab2])
                coeffs = _sl_decompose(comm, n, basis_pos)
                if coeffs:
                    brackets[base + t1, base + t2] = coeffs
        for k in range(n):
            e_idx.append(basis_pos["E", k, k + 1])
            f_idx.append(basis_pos["E", k + 1, k])
            h_idx.append(basis_pos["H", k])
        for t, lab in enumerate(labels):
            if lab[0] == "H":
                weights[base + t] = (0,) * total_rank
            else:
                _, i, j = lab
                # root of E_ij: e_i - e_j in terms of the factor's simple roots
                lo, hi = min(i, j), max(i, j)
                root = [0] * n
                for r in range(lo, hi):
                    root[r] = 1 if i < j else -1
                w = tuple(
                    sum(rd.cartan[start + a][start + b] * root[b] for b in range(n))
                    for a in range(n)
                )
                weights[base + t] = (0,) * start + w + (0,) * (total_rank - start - n)

    lie.weights = tuple(weights)
    lie.verify()

    for start, n, labels, base in factor_data:
        size = n + 1
        defw = []
        cur = [0] * total_rank
        cur[start] = 1
        defw.append(tuple(cur))
        for j in range(n):
            col = [rd.cartan[i][start + j] for i in range(total_rank)]
            cur = [a - b for a, b in zip(defw[-1], col)]
            defw.append(tuple(cur))
        mats = []
        for t in range(dim):
            mats.append({})
        for t, lab in enumerate(labels):
            mats[base + t] = _sl_matrix(lab, size)
        mod = ModuleMatrices(lie, size, mats, tuple(defw))
        mod.verify()
        defining.append(mod)

    return ChevalleyAlgebra(
        stype=stype,
        lie=lie,
        e_indices=tuple(e_idx),
        f_indices=tuple(f_idx),
        h_indices=tuple(h_idx),
        defining=tuple(defining),
    )


# ---------------------------------------------------------------------------
# module constructors


def trivial_module(lie: LieStructure, rank: int) -> ModuleMatrices:
    return ModuleMatrices(lie, 1, [{} for _ in range(lie.dim)], ((0,) * rank,))


def tensor_module(a: ModuleMatrices, b: ModuleMatrices) -> ModuleMatrices:
    assert a.lie is b.lie
    dim = a.dim * b.dim
    mats = []
    for x in range(a.lie.dim):
        mat: SMat = {}
        for (i, j), v in a.mats[x].items():
            for t in range(b.dim):
                mat[i * b.dim + t, j * b.dim + t] = v
        for (i, j), v in b.mats[x].items():
            for t in range(a.dim):
                key = (t * b.dim + i, t * b.dim + j)
                mat[key] = mat.get(key, Fraction(0)) + v
        mats.append({k: v for k, v in mat.items() if v})
    weights = None
    if a.weights and b.weights:
        weights = tuple(
            tuple(x + y for x, y in zip(wa, wb))
            for wa in a.weights
            for wb in b.weights
        )
    return ModuleMatrices(a.lie, dim, mats, weights)


def dual_module(a: ModuleMatrices) -> ModuleMatrices:
    mats = [
        {(j, i): -v for (i, j), v in m.items()} for m in a.mats
    ]
    weights = None
    if a.weights:
        weights = tuple(tuple(-c for c in w) for w in a.weights)
    return ModuleMatrices(a.lie, a.dim, mats, weights)


def hom_module(a: ModuleMatrices, b: ModuleMatrices) -> ModuleMatrices:
    """Hom(a, b) with basis the matrix units E_pq, index p * a.dim + q."""
    assert a.lie is b.lie
    dim = b.dim * a.dim
    mats = []
    for x in range(a.lie.dim):
        mat: SMat = {}
        for (p2, p1), v in b.mats[x].items():  # left composition
            for q in range(a.dim):
                key = (p2 * a.dim + q, p1 * a.dim + q)
                mat[key] = mat.get(key, Fraction(0)) + v
        for (q1, q2), v in a.mats[x].items():  # right composition, negated
            for p in range(b.dim):
                key = (p * a.dim + q2, p * a.dim + q1)
                mat[key] = mat.get(key, Fraction(0)) - v
        mats.append({k: v for k, v in mat.items() if v})
    weights = None
    if a.weights and b.weights:
        weights = tuple(
            tuple(x - y for x, y in zip(wb, wa))
            for wb in b.weights
            for wa in a.weights
        )
    return ModuleMatrices(a.lie, dim, mats, weights)


def exterior_power(mod: ModuleMatrices, k: int) -> ModuleMatrices:
    """k-th exterior power; basis indexed by sorted k-subsets."""
    subsets = list(combinations(range(mod.dim), k))
    pos = {s: t for t, s in enumerate(subsets)}
    mats = []
    for x in range(mod.lie.dim):
        action = mod.mats[x]
        by_col: dict[int, list[tuple[int, Fraction]]] = {}
        for (i, j), v in action.items():
            by_col.setdefault(j, []).append((i, v))
        mat: SMat = {}
        for s, t in pos.items():
            for slot, basis_idx in enumerate(s):
                for target, v in by_col.get(basis_idx, ()):
                    if target in s and target != basis_idx:
                        continue
                    arranged = list(s)
                    arranged[slot] = target
                    perm = sorted(arranged)
                    # moving one entry to its sorted slot crosses the others
                    sign = -1 if (slot - perm.index(target)) % 2 else 1
                    key = (pos[tuple(perm)], t)
                    mat[key] = mat.get(key, Fraction(0)) + sign * v
        mats.append({kk: v for kk, v in mat.items() if v})
    weights = None
    if mod.weights:
        weights = tuple(
            tuple(sum(c) for c in zip(*(mod.weights[i] for i in s)))
            for s in subsets
        )
    return ModuleMatrices(mod.lie, len(subsets), mats, weights)


class _Span:
    """Growing exact row space with coordinate solves against its basis."""

    def __init__(self):
        self.reducer = RowReducer()
        self.order: list[int] = []  # pivots in insertion order

    def insert(self, vec: SVec) -> bool:
        piv = self.reducer.insert(vec)
        if piv is None:
            return False
        self.order.append(piv)
        return True

    @property
    def dim(self) -> int:
        return len(self.order)

    def coordinates(self, vec: SVec) -> SVec:
        coords = self.reducer.express(vec)
        pos = {p: t for t, p in enumerate(self.order)}
        return {pos[p]: c for p, c in coords.items() if c}

    def basis_rows(self) -> list[SVec]:
        return [self.reducer.rows[p] for p in self.order]


_IRREP_AMBIENT_CAP = 8192


@lru_cache(maxsize=None)
def _cached_irrep(stype: SemisimpleType, lam: Weight, cap: int) -> ModuleMatrices:
    chev = chevalley_structure(stype)
    rd = build_root_system(stype)
    lam = check_dominant(rd, lam)
    if irrep_dimension(rd, lam) > cap:
        raise DimensionCapError(
            f"irrep dimension {irrep_dimension(rd, lam)} exceeds cap {cap}"
        )

    # ambient space: tensor of exterior powers of the defining modules
    ambient = trivial_module(chev.lie, rd.rank)
    for fi, (start, end) in enumerate(rd.factor_slices):
        fundamental_cache: dict[int, ModuleMatrices] = {}
        for k in range(1, end - start + 1):
            mult = lam[start + k - 1]
            if mult == 0:
                continue
            if k not in fundamental_cache:
                fundamental_cache[k] = exterior_power(chev.defining[fi], k)
            for _ in range(mult):
                ambient = tensor_module(ambient, fundamental_cache[k])
        if ambient.dim > _IRREP_AMBIENT_CAP:
            raise DimensionCapError("ambient tensor space too large")

    # cyclic span of the highest vector under the lowering operators
    top = 0  # index of the tensor of highest vectors (all factors use slot 0)
    span = _Span()
    span.insert({top: Fraction(1)})
    vec_store: list[SVec] = [{top: Fraction(1)}]
    frontier = [{top: Fraction(1)}]
    lowering = [ambient.mats[f] for f in chev.f_indices]
    while frontier:
        nxt = []
        for vec in frontier:
            for f in lowering:
                img = sm_apply(f, vec)
                if img and span.insert(img):
                    vec_store.append(img)
                    nxt.append(img)
        frontier = nxt

    dim = span.dim
    expected = irrep_dimension(rd, lam)
    assert dim == expected, f"cyclic span has dim {dim}, expected {expected}"

    basis = span.basis_rows()
    mats: list[SMat] = []
    for x in range(chev.lie.dim):
        mat: SMat = {}
        for col, bvec in enumerate(basis):
            img = sm_apply(ambient.mats[x], bvec)
            if not img:
                continue
            for row, c in span.coordinates(img).items():
                mat[row, col] = c
        mats.append(mat)
    weights = tuple(
        _vector_weight(ambient.weights, b) for b in basis
    )
    assert weights[0] == lam or dim == 1, "basis does not start at the top weight"
    mod = ModuleMatrices(chev.lie, dim, mats, weights)
    mod.verify()
    table = weight_multiplicities(rd, lam).expanded()
    counts: dict[Weight, int] = {}
    for w in weights:
        counts[w] = counts.get(w, 0) + 1
    assert counts == table, "h-spectrum disagrees with the character table"
    return mod


def _vector_weight(ambient_weights, vec: SVec) -> Weight:
    ws = {ambient_weights[i] for i in vec}
    assert len(ws) == 1, "basis vector is not an h-eigenvector"
    return next(iter(ws))


def irrep_matrices(stype, lam, cap: int = 64) -> ModuleMatrices:
    """Explicit matrices for the simple module with the given highest weight.

    The module is the cyclic span of the top vector inside a tensor product
    of exterior powers of the defining representations; its h-spectrum is
    checked against the Freudenthal table.
    """
    return _cached_irrep(stype, tuple(int(c) for c in lam), cap)


# ---------------------------------------------------------------------------
# current algebras over a jet


@dataclass(eq=False)
class CurrentAlgebra:
    """(A/J) (x) g with basis (jet element, Lie element), row-major."""

    chev: ChevalleyAlgebra
    jet: JetAlgebra
    lie: LieStructure

    def index(self, jet_i: int, lie_i: int) -> int:
        return jet_i * self.chev.dim + lie_i


def truncated_current_algebra(chev: ChevalleyAlgebra, jet: JetAlgebra) -> CurrentAlgebra:
    gdim = chev.dim
    dim = jet.dim * gdim
    brackets: dict[tuple[int, int], SVec] = {}
    weights: list[Weight] = []
    for u in range(jet.dim):
        weights.extend(chev.lie.weights)
    for u in range(jet.dim):
        for v in range(u, jet.dim):
            prod = jet.table[u][v]
            if not prod:
                continue
            for s in range(gdim):
                t_start = s + 1 if u == v else 0
                for t in range(t_start, gdim):
                    gb = chev.lie.bracket(s, t)
                    if not gb:
                        continue
                    i = u * gdim + s
                    j = v * gdim + t
                    if i == j:
                        continue
                    entry: SVec = {}
                    for w, jc in prod.items():
                        for k, gc in gb.items():
                            entry[w * gdim + k] = jc * gc
                    if i < j:
                        brackets[i, j] = entry
                    else:
                        brackets[j, i] = {k: -v2 for k, v2 in entry.items()}
    lie = LieStructure(dim, brackets, tuple(weights))
    lie.verify()
    return CurrentAlgebra(chev, jet, lie)


@dataclass(eq=False)
class EvaluationModule:
    """Tensor of one irreducible per support point, as a module over a
    truncated current algebra; remembers per-slot actions for fast access."""

    current: CurrentAlgebra
    label: SupportFunction
    slot_points: tuple[int, ...]  # jet point index per tensor slot
    slot_mats: tuple[list[SMat], ...]  # per slot, per g-basis element
    module: ModuleMatrices  # over the truncated algebra
    g_action: list[SMat]  # action of 1 (x) g_s

    @property
    def dim(self) -> int:
        return self.module.dim


def evaluation_module(
    current: CurrentAlgebra, label: SupportFunction, cap: int = 64
) -> EvaluationModule:
    chev = current.chev
    jet = current.jet
    label = normalize(label)
    point_pos = {p: i for i, p in enumerate(jet.points)}
    for p, _ in label.entries:
        if p not in point_pos:
            raise SupportNotCoveredError(f"support point {p} not in the jet")

    rank = build_root_system(chev.stype).rank
    slots = []
    for p, w in label.entries:
        slots.append((point_pos[p], irrep_matrices(chev.stype, w, cap)))
    total_dim = 1
    for _, m in slots:
        total_dim *= m.dim
    if total_dim > cap:
        raise DimensionCapError(f"module dimension {total_dim} exceeds cap {cap}")

    # embed slot actions into the tensor product
    slot_mats: list[list[SMat]] = []
    dims = [m.dim for _, m in slots]
    for si, (_, m) in enumerate(slots):
        before = 1
        for d in dims[:si]:
            before *= d
        after = 1
        for d in dims[si + 1 :]:
            after *= d
        embedded = []
        for x in range(chev.dim):
            mat: SMat = {}
            for (i, j), v in m.mats[x].items():
                for b in range(before):
                    for a in range(after):
                        mat[(b * m.dim + i) * after + a, (b * m.dim + j) * after + a] = v
            embedded.append(mat)
        slot_mats.append(embedded)

    weights = [(0,) * rank] * max(total_dim, 1)
    if slots:
        weights = []
        from itertools import product as iproduct

        for combo in iproduct(*(range(d) for d in dims)):
            w = [0] * rank
            for si, (_, m) in enumerate(slots):
                for t in range(rank):
                    w[t] += m.weights[combo[si]][t]
            weights.append(tuple(w))

    g_action: list[SMat] = []
    for s in range(chev.dim):
        total: SMat = {}
        for embedded in slot_mats:
            total = sm_add(total, embedded[s])
        g_action.append(total)

    # ev at each slot's point weights that slot's action
    mats = []
    for u in range(jet.dim):
        uvec = {u: Fraction(1)}
        for s in range(chev.dim):
            total: SMat = {}
            for si, embedded in enumerate(slot_mats):
                eps = jet.eval_at(slots[si][0], uvec)
                if eps:
                    total = sm_add(total, embedded[s], eps)
            mats.append(total)

    module = ModuleMatrices(current.lie, max(total_dim, 1), mats, tuple(weights))
    module.verify()
    return EvaluationModule(
        current=current,
        label=label,
        slot_points=tuple(pi for pi, _ in slots),
        slot_mats=tuple(slot_mats),
        module=module,
        g_action=g_action,
    )
