"""First Lie algebra cohomology with exact linear algebra.

`h1_dimension` computes H^1(L, M) = ker d^1 / im d^0 of the standard cochain
complex directly.  For coefficient modules of the form Hom(V, V') over a
truncated current algebra, `current_hom_h1` computes the same H^1 through
the subcomplex of cochains invariant under the constant copy of g: inner
derivations act trivially on cohomology, the complex is a semisimple
g-module, and taking the trivial isotypic component is exact, so the
invariant subcomplex has the same cohomology while being drastically
smaller.  The two paths are cross-validated in the test suite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .algebras import AlgebraPresentation, JetAlgebra, jet_quotient
from .chevalley import (
    ChevalleyAlgebra,
    CurrentAlgebra,
    EvaluationModule,
    LieStructure,
    ModuleMatrices,
    chevalley_structure,
    evaluation_module,
    truncated_current_algebra,
)
from .errors import DimensionCapError, NotACocycleError
from .ext import ext1_dimension
from .linalg import (
    RowReducer,
    SMat,
    SVec,
    kernel_basis,
    rank_exact,
    rank_with_budget,
    sm_add,
    sm_mul,
    sm_scale,
    solve_exact,
    svec_add_scaled,
)
from .modules import SupportFunction, normalize, _require_same_context
from .roots import build_root_system


@dataclass(frozen=True)
class OracleLimits:
    """Size caps and the per-rank budget for the cohomology oracle."""

    max_lie_dim: int = 24
    max_module_dim: int = 64
    rank_seconds: float = 10.0

    def check_lie(self, dim: int) -> None:
        if dim > self.max_lie_dim:
            raise DimensionCapError(
                f"Lie algebra dimension {dim} exceeds cap {self.max_lie_dim}"
            )

    def check_module(self, dim: int) -> None:
        if dim > self.max_module_dim:
            raise DimensionCapError(
                f"module dimension {dim} exceeds cap {self.max_module_dim}"
            )


DEFAULT_LIMITS = OracleLimits()


# ---------------------------------------------------------------------------
# plain Chevalley-Eilenberg H^1


def h1_dimension(
    lie: LieStructure, module: ModuleMatrices, limits: OracleLimits = DEFAULT_LIMITS
) -> int:
    """dim H^1(L, M) = dim ker d^1 - dim im d^0, exact.

    d^0(m)(x) = x.m and d^1(c)(x, y) = x.c(y) - y.c(x) - c([x,y]).  When both
    the algebra and the module carry h-weights the computation restricts to
    the weight-zero subcomplex, which carries all of the cohomology.
    """
    limits.check_lie(lie.dim)
    limits.check_module(module.dim)
    ldim, mdim = lie.dim, module.dim
    graded = lie.weights is not None and module.weights is not None

    def lw(i):
        return lie.weights[i] if graded else None

    def mw(a):
        return module.weights[a] if graded else None

    def zero_sum(*ws):
        total = None
        for w in ws:
            if total is None:
                total = list(w)
            else:
                total = [a + b for a, b in zip(total, w)]
        return not any(total)

    # C^1 coordinates: (x index, module coordinate) -> column
    cols: dict[tuple[int, int], int] = {}
    for x in range(ldim):
        for a in range(mdim):
            if graded and not zero_sum(mw(a), [-c for c in lw(x)]):
                continue
            cols[x, a] = len(cols)

    # rank of d^0 restricted to weight-zero 0-cochains
    d0_rows: list[SVec] = []
    zero_cochain_cols = [
        a for a in range(mdim) if not graded or not any(mw(a))
    ]
    col_of = {a: t for t, a in enumerate(zero_cochain_cols)}
    transposed: dict[tuple[int, int], SVec] = {}
    for x in range(ldim):
        for (i, j), v in module.mats[x].items():
            if j in col_of:
                transposed.setdefault((x, i), {})[col_of[j]] = v
    d0_rows = [row for row in transposed.values() if row]
    rank_d0 = rank_exact(d0_rows)

    # rows of d^1 over pairs x < y
    rows: list[SVec] = []
    for x in range(ldim):
        for y in range(x + 1, ldim):
            bracket = lie.bracket(x, y)
            matx = module.mats[x]
            maty = module.mats[y]
            row_per_out: dict[int, SVec] = {}
            for (i, j), v in matx.items():
                if (y, j) in cols:
                    row_per_out.setdefault(i, {})[cols[y, j]] = (
                        row_per_out.setdefault(i, {}).get(cols[y, j], 0) + v
                    )
            for (i, j), v in maty.items():
                if (x, j) in cols:
                    tgt = row_per_out.setdefault(i, {})
                    tgt[cols[x, j]] = tgt.get(cols[x, j], 0) - v
            for k, c in bracket.items():
                for a in range(mdim):
                    if (k, a) in cols:
                        tgt = row_per_out.setdefault(a, {})
                        tgt[cols[k, a]] = tgt.get(cols[k, a], 0) - c
            for row in row_per_out.values():
                row = {c: v for c, v in row.items() if v}
                if row:
                    rows.append(row)
    rank_d1 = rank_exact(rows)
    return len(cols) - rank_d1 - rank_d0


# ---------------------------------------------------------------------------
# invariant-subcomplex H^1 for Hom(V, V') over a truncated current algebra


def _weight_index(module_weights):
    by_weight: dict[tuple, list[int]] = {}
    for i, w in enumerate(module_weights):
        by_weight.setdefault(tuple(w), []).append(i)
    return by_weight


def _hom_weight(wa, wb):
    return tuple(x - y for x, y in zip(wa, wb))


def _hom_action(g_out: SMat, g_in: SMat, mat: SMat) -> SMat:
    """Action of a Lie element on Hom(V, V'): left compose minus right."""
    return sm_add(sm_mul(g_out, mat), sm_mul(mat, g_in), Fraction(-1))


def _highest_weight_maps(
    chev: ChevalleyAlgebra,
    modV: EvaluationModule,
    modVp: EvaluationModule,
    target_weight,
) -> list[SMat]:
    """Basis of {m in Hom(V, V') of the given weight : e_i . m = 0 for all i}.

    Hom-elements are V'.dim x V.dim sparse matrices.
    """
    wV = modV.module.weights
    wVp = modVp.module.weights
    units = [
        (a, b)
        for a in range(modVp.dim)
        for b in range(modV.dim)
        if _hom_weight(wVp[a], wV[b]) == tuple(target_weight)
    ]
    if not units:
        return []
    unit_pos = {u: t for t, u in enumerate(units)}
    rows: list[SVec] = []
    for e in chev.e_indices:
        out_rows: dict[tuple[int, int], SVec] = {}
        eV = modV.g_action[e]
        eVp = modVp.g_action[e]
        for (a, b), t in unit_pos.items():
            # e . E_ab = eVp E_ab - E_ab eV
            for (i, a2), v in eVp.items():
                if a2 == a:
                    out_rows.setdefault((i, b), {})[t] = (
                        out_rows.setdefault((i, b), {}).get(t, 0) + v
                    )
            for (b2, j), v in eV.items():
                if b2 == b:
                    tgt = out_rows.setdefault((a, j), {})
                    tgt[t] = tgt.get(t, 0) - v
        rows.extend(r for r in out_rows.values() if r)
    sols = kernel_basis(rows, len(units))
    out = []
    for sol in sols:
        mat: SMat = {}
        for t, v in sol.items():
            mat[units[t]] = v
        out.append(mat)
    return out


def _lower_intertwiner(
    chev: ChevalleyAlgebra,
    modV: EvaluationModule,
    modVp: EvaluationModule,
    theta_index: int,
    hw_map: SMat,
) -> list[SMat]:
    """Extend a highest-weight Hom-element to an intertwiner g -> Hom(V, V').

    The copy of the adjoint module generated by the highest-weight vector is
    traversed by lowering; values are propagated by the module action, and
    the consistency of overlaps is asserted.  Returns the value at every
    Lie basis element.
    """
    lie = chev.lie
    span = RowReducer()
    order: list[int] = []
    values: list[SMat] = []

    def insert(vec: SVec, val: SMat) -> None:
        rem = dict(vec)
        adjust = val
        while rem:
            piv = min((c for c in rem if c in span.rows), default=None)
            if piv is None:
                break
            coeff = rem[piv]
            svec_add_scaled(rem, span.rows[piv], -coeff)
            adjust = sm_add(adjust, values[order.index(piv)], -coeff)
        if not rem:
            assert not adjust, "inconsistent lowering (not an intertwiner)"
            return
        piv = min(rem)
        inv = Fraction(1) / rem[piv]
        row = {c: v * inv for c, v in rem.items()}
        scaled = sm_scale(adjust, inv)
        for existing_piv in list(span.rows):
            other = span.rows[existing_piv]
            if piv in other:
                coeff = other[piv]
                svec_add_scaled(other, row, -coeff)
                idx = order.index(existing_piv)
                values[idx] = sm_add(values[idx], scaled, -coeff)
        span.rows[piv] = row
        order.append(piv)
        values.append(scaled)

    insert({theta_index: Fraction(1)}, hw_map)
    frontier = [({theta_index: Fraction(1)}, hw_map)]
    while frontier:
        nxt = []
        for vec, val in frontier:
            for f in chev.f_indices:
                img = lie.bracket_vec({f: Fraction(1)}, vec)
                if not img:
                    continue
                new_val = _hom_action(modVp.g_action[f], modV.g_action[f], val)
                before = span.rank
                insert(img, new_val)
                if span.rank > before:
                    nxt.append((img, new_val))
        frontier = nxt

    out: list[SMat] = []
    for s in range(lie.dim):
        vec = {s: Fraction(1)}
        rem = dict(vec)
        val: SMat = {}
        while rem:
            piv = min((c for c in rem if c in span.rows), default=None)
            if piv is None:
                break
            coeff = rem[piv]
            svec_add_scaled(rem, span.rows[piv], -coeff)
            val = sm_add(val, values[order.index(piv)], coeff)
        if rem:
            # basis element outside the generated adjoint copy (other factor)
            val = {}
        out.append(val)
    return out


def _adjoint_intertwiners(
    chev: ChevalleyAlgebra, modV: EvaluationModule, modVp: EvaluationModule
) -> list[list[SMat]]:
    """Basis of Hom_g(g, Hom(V, V')), one value list per basis map."""
    rd = build_root_system(chev.stype)
    out: list[list[SMat]] = []
    from .roots import SemisimpleType, highest_root

    for fi, (start, end) in enumerate(rd.factor_slices):
        sub = build_root_system(SemisimpleType((chev.stype.factors[fi],)))
        theta = highest_root(sub)
        padded = (0,) * start + theta + (0,) * (rd.rank - end)
        # the highest-root space is one-dimensional and its (nonzero) weight
        # cannot occur in another factor's block
        theta_index = next(
            i for i, w in enumerate(chev.lie.weights) if w == padded
        )
        for hw in _highest_weight_maps(chev, modV, modVp, padded):
            out.append(
                _lower_intertwiner(chev, modV, modVp, theta_index, hw)
            )
    return out


def current_hom_h1(
    current: CurrentAlgebra,
    modV: EvaluationModule,
    modVp: EvaluationModule,
    limits: OracleLimits = DEFAULT_LIMITS,
) -> tuple[int, str]:
    """dim H^1(L, Hom(V, V')) over a truncated current algebra L.

    Works on the subcomplex of cochains invariant under the constant copy
    of g (which carries the full cohomology) and returns the rank path used
    for the one potentially large elimination.
    """
    chev = current.chev
    jet = current.jet
    lie = current.lie
    limits.check_lie(lie.dim)
    limits.check_module(modV.dim * modVp.dim)
    gdim = chev.dim

    phis = _adjoint_intertwiners(chev, modV, modVp)
    q = len(phis)

    # invariant 0-cochains and the full invariants of Hom(V, V')
    rank = build_root_system(chev.stype).rank
    inv0 = _highest_weight_maps(chev, modV, modVp, (0,) * rank)
    q0 = len(inv0)
    m_l = _full_invariants(current, modV, modVp, inv0)
    dim_b1 = q0 - m_l

    if q == 0:
        assert dim_b1 == 0, "coboundaries without invariant 1-cochains"
        return 0, "exact"

    # profile vectors: functions of (s, t) valued in Hom(V, V')
    # K_a(s,t) = phi_a([g_s, g_t]); per jet point p with slots,
    # G_a^p(s,t) = sum_{slots' at p} sigma'(g_s) phi_a(g_t)
    #            - sum_{slots at p} phi_a(g_t) sigma(g_s)
    coord_index: dict[tuple[int, int, int, int], int] = {}

    def coords_of(profile) -> SVec:
        vec: SVec = {}
        for (s, t), mat in profile.items():
            for (a, b), v in mat.items():
                key = (s, t, a, b)
                idx = coord_index.setdefault(key, len(coord_index))
                vec[idx] = v
        return vec

    npts = len(jet.points)
    slotsV: dict[int, list[int]] = {}
    for si, pi in enumerate(modV.slot_points):
        slotsV.setdefault(pi, []).append(si)
    slotsVp: dict[int, list[int]] = {}
    for si, pi in enumerate(modVp.slot_points):
        slotsVp.setdefault(pi, []).append(si)

    k_profiles = []
    for phi in phis:
        prof = {}
        for s in range(gdim):
            for t in range(gdim):
                mat: SMat = {}
                for k, c in chev.lie.bracket(s, t).items():
                    mat = sm_add(mat, phi[k], c)
                if mat:
                    prof[s, t] = mat
        k_profiles.append(prof)

    g_profiles = []  # [point][alpha] -> profile
    for pi in range(npts):
        per_alpha = []
        for phi in phis:
            prof = {}
            for s in range(gdim):
                for t in range(gdim):
                    mat: SMat = {}
                    for si in slotsVp.get(pi, ()):
                        mat = sm_add(mat, sm_mul(modVp.slot_mats[si][s], phi[t]))
                    for si in slotsV.get(pi, ()):
                        mat = sm_add(
                            mat, sm_mul(phi[t], modV.slot_mats[si][s]), Fraction(-1)
                        )
                    if mat:
                        prof[s, t] = mat
            per_alpha.append(prof)
        g_profiles.append(per_alpha)

    reducer = RowReducer()
    order: list[int] = []

    def register(vec: SVec):
        piv = reducer.insert(vec)
        if piv is not None:
            order.append(piv)

    k_vecs = [coords_of(p) for p in k_profiles]
    g_vecs = [[coords_of(p) for p in per] for per in g_profiles]
    gt_vecs = [
        [coords_of(_transpose_profile(p)) for p in per] for per in g_profiles
    ]
    for vec in itertools.chain(
        k_vecs, *(v for v in g_vecs), *(v for v in gt_vecs)
    ):
        register(vec)
    r = reducer.rank
    pos = {p: i for i, p in enumerate(order)}

    def express(vec: SVec) -> list[Fraction]:
        out = [Fraction(0)] * r
        for p, c in reducer.express(vec).items():
            out[pos[p]] = c
        return out

    k_coords = [express(v) for v in k_vecs]
    g_coords = [[express(v) for v in per] for per in g_vecs]
    gt_coords = [[express(v) for v in per] for per in gt_vecs]

    # assemble the cocycle equations over theta_(u, alpha)
    const_point = {}  # jet basis index -> point index for block units
    for idx, pi in jet.const_index.items():
        const_point[idx] = pi

    nunk = jet.dim * q

    def theta_col(u, alpha):
        return u * q + alpha

    rows: list[SVec] = []
    for u in range(jet.dim):
        for v in range(u, jet.dim):
            prod = jet.table[u][v]
            cu = const_point.get(u)
            cv = const_point.get(v)
            if cu is None and cv is None and not prod:
                continue
            for ell in range(r):
                row: SVec = {}

                def add(col, val):
                    if val:
                        row[col] = row.get(col, Fraction(0)) + val

                for alpha in range(q):
                    if cu is not None:
                        add(theta_col(v, alpha), g_coords[cu][alpha][ell])
                    if cv is not None:
                        add(theta_col(u, alpha), -gt_coords[cv][alpha][ell])
                    kc = k_coords[alpha][ell]
                    if kc:
                        for w, jc in prod.items():
                            add(theta_col(w, alpha), -jc * kc)
                row = {c: v2 for c, v2 in row.items() if v2}
                if row:
                    rows.append(row)

    rank_val, path = rank_with_budget(rows, nunk, limits.rank_seconds)
    dim_z1 = nunk - rank_val
    h1 = dim_z1 - dim_b1
    assert h1 >= 0, "negative cohomology dimension (rank path failure?)"
    return h1, path


def _transpose_profile(profile):
    return {(t, s): mat for (s, t), mat in profile.items()}


def _full_invariants(
    current: CurrentAlgebra,
    modV: EvaluationModule,
    modVp: EvaluationModule,
    inv0: list[SMat],
) -> int:
    """dim of the L-invariants of Hom(V, V'), found inside the g-invariants."""
    if not inv0:
        return 0
    jet = current.jet
    chev = current.chev
    rows_by_out: dict[tuple[int, int, int, int], SVec] = {}
    for u, pi in jet.const_index.items():
        sigV: list[SMat] = []
        sigVp: list[SMat] = []
        for s in range(chev.dim):
            mv: SMat = {}
            for si, spi in enumerate(modV.slot_points):
                if spi == pi:
                    mv = sm_add(mv, modV.slot_mats[si][s])
            sigV.append(mv)
            mvp: SMat = {}
            for si, spi in enumerate(modVp.slot_points):
                if spi == pi:
                    mvp = sm_add(mvp, modVp.slot_mats[si][s])
            sigVp.append(mvp)
        for s in range(chev.dim):
            for t, m in enumerate(inv0):
                acted = _hom_action(sigVp[s], sigV[s], m)
                for (a, b), val in acted.items():
                    rows_by_out.setdefault((u, s, a, b), {})[t] = val
    rows = [r for r in rows_by_out.values() if r]
    return len(inv0) - rank_exact(rows)


# ---------------------------------------------------------------------------
# explicit extensions from cocycles


@dataclass(eq=False)
class ExtensionCocycle:
    """Derivation-like assignment of intertwiners g (x) V(lam) -> V(mu) to
    jet elements at a base point: vanishes on the unit, Leibniz on products
    through evaluation at the base point, each value g-equivariant.

    Values are stored per jet basis element as maps from g-basis index to a
    (dim mu x dim lam) block.
    """

    current: CurrentAlgebra
    point_index: int
    source: EvaluationModule  # V(lam) at the base point
    target: EvaluationModule  # V(mu) at the base point
    values: tuple[tuple[SMat, ...], ...]  # [jet basis][g basis]

    def verify(self) -> None:
        jet = self.current.jet
        chev = self.current.chev

        def value(coords, s) -> SMat:
            out: SMat = {}
            items = coords.items() if isinstance(coords, dict) else enumerate(coords)
            for u, c in items:
                if c:
                    out = sm_add(out, self.values[u][s], c)
            return out

        # unit in the kernel
        for s in range(chev.dim):
            if value(jet.unit, s):
                raise NotACocycleError("nonzero value on the unit")
        # Leibniz rule through evaluation at the base point
        for u in range(jet.dim):
            eu = jet.eval_at(self.point_index, jet.basis_vec(u))
            for v in range(jet.dim):
                ev = jet.eval_at(self.point_index, jet.basis_vec(v))
                prod = jet.table[u][v]
                for s in range(chev.dim):
                    lhs = value(prod, s)
                    rhs = sm_add(
                        sm_scale(self.values[v][s], eu),
                        sm_scale(self.values[u][s], ev),
                    )
                    if not sm_eq_zero(sm_add(lhs, rhs, Fraction(-1))):
                        raise NotACocycleError("Leibniz rule fails")
        # each value is an intertwiner for the g-action
        for u in range(jet.dim):
            for x in range(chev.dim):
                for y in range(chev.dim):
                    # phi([x, y] (x) w) = x phi(y (x) w) - phi(y (x) x w)
                    lhs: SMat = {}
                    for k, c in chev.lie.bracket(x, y).items():
                        lhs = sm_add(lhs, self.values[u][k], c)
                    rhs = sm_add(
                        sm_mul(self.target.g_action[x], self.values[u][y]),
                        sm_mul(self.values[u][y], self.source.g_action[x]),
                        Fraction(-1),
                    )
                    rhs = sm_add(rhs, lhs, Fraction(-1))
                    if not sm_eq_zero(rhs):
                        raise NotACocycleError("values are not g-intertwiners")


def sm_eq_zero(mat: SMat) -> bool:
    return not mat


def build_extension_module(cocycle: ExtensionCocycle) -> ModuleMatrices:
    """The two-step module V(lam) (+) V(mu) twisted by the cocycle."""
    cocycle.verify()
    cur = cocycle.current
    jet = cur.jet
    chev = cur.chev
    dlam = cocycle.source.dim
    dmu = cocycle.target.dim
    dim = dlam + dmu
    mats: list[SMat] = []
    for u in range(jet.dim):
        eps = jet.eval_at(cocycle.point_index, jet.basis_vec(u))
        for s in range(chev.dim):
            mat: SMat = {}
            if eps:
                for (i, j), v in cocycle.source.g_action[s].items():
                    mat[i, j] = eps * v
                for (i, j), v in cocycle.target.g_action[s].items():
                    mat[dlam + i, dlam + j] = eps * v
            for (i, j), v in cocycle.values[u][s].items():
                key = (dlam + i, j)
                mat[key] = mat.get(key, Fraction(0)) + v
            mats.append({k: v for k, v in mat.items() if v})
    module = ModuleMatrices(cur.lie, dim, mats, None)
    module.verify()
    return module


def cocycle_is_coboundary(cocycle: ExtensionCocycle) -> bool:
    """Solvability of values = d^0(psi) for some psi: V(lam) -> V(mu)."""
    cur = cocycle.current
    jet = cur.jet
    chev = cur.chev
    dlam = cocycle.source.dim
    dmu = cocycle.target.dim
    ncols = dmu * dlam

    def col(a, b):
        return a * dlam + b

    rows: list[SVec] = []
    rhs: list[Fraction] = []
    for u in range(jet.dim):
        eps = jet.eval_at(cocycle.point_index, jet.basis_vec(u))
        for s in range(chev.dim):
            sig_mu = cocycle.target.g_action[s]
            sig_lam = cocycle.source.g_action[s]
            per_entry: dict[tuple[int, int], SVec] = {}
            if eps:
                for (a, a2), v in sig_mu.items():
                    for b in range(dlam):
                        per_entry.setdefault((a, b), {})[col(a2, b)] = (
                            per_entry.setdefault((a, b), {}).get(col(a2, b), 0)
                            + eps * v
                        )
                for (b2, b), v in sig_lam.items():
                    for a in range(dmu):
                        tgt = per_entry.setdefault((a, b), {})
                        tgt[col(a, b2)] = tgt.get(col(a, b2), 0) - eps * v
            target_mat = cocycle.values[u][s]
            touched = set(per_entry) | set(target_mat)
            for a, b in touched:
                rows.append(per_entry.get((a, b), {}))
                rhs.append(target_mat.get((a, b), Fraction(0)))
    return solve_exact(rows, rhs, ncols) is not None


def module_splits(
    ext: ModuleMatrices, cocycle: ExtensionCocycle
) -> bool:
    """Module-level splitness: an equivariant section of the quotient map.

    Solve for S: V(lam) -> E with the top block the identity and
    rho_E(x) S = S rho_lam(x) for every basis element x of the algebra.
    This route does not mention the cocycle values, only the assembled
    extension matrices.
    """
    cur = cocycle.current
    dlam = cocycle.source.dim
    dim = ext.dim
    ncols = dim * dlam

    def col(i, b):
        return i * dlam + b

    rows: list[SVec] = []
    rhs: list[Fraction] = []
    # top block is the identity
    for i in range(dlam):
        for b in range(dlam):
            rows.append({col(i, b): Fraction(1)})
            rhs.append(Fraction(1) if i == b else Fraction(0))
    # equivariance; the lambda-action is the top-left block of ext itself
    for xi in range(cur.lie.dim):
        ext_mat = ext.mats[xi]
        lam_mat = {
            (i, j): v for (i, j), v in ext_mat.items() if i < dlam and j < dlam
        }
        per_entry: dict[tuple[int, int], SVec] = {}
        for (i, i2), v in ext_mat.items():
            for b in range(dlam):
                tgt = per_entry.setdefault((i, b), {})
                tgt[col(i2, b)] = tgt.get(col(i2, b), 0) + v
        for (b2, b), v in lam_mat.items():
            for i in range(dim):
                tgt = per_entry.setdefault((i, b), {})
                tgt[col(i, b2)] = tgt.get(col(i, b2), 0) - v
        for key, row in per_entry.items():
            row = {c: v for c, v in row.items() if v}
            if row:
                rows.append(row)
                rhs.append(Fraction(0))
    return solve_exact(rows, rhs, ncols) is not None


# ---------------------------------------------------------------------------
# cross check: closed formula against the cohomology oracle


@dataclass(frozen=True)
class CrossCheckReport:
    formula: int
    oracle: int
    oracle_next: int
    truncation: int
    agree: bool
    rank_paths: tuple[str, str]

    def to_json(self):
        return {
            "formula": self.formula,
            "oracle": self.oracle,
            "oracle_next": self.oracle_next,
            "truncation": self.truncation,
            "agree": self.agree,
            "rank_paths": list(self.rank_paths),
        }


def _oracle_h1(
    stype,
    algebra: AlgebraPresentation,
    sf: SupportFunction,
    sf2: SupportFunction,
    k: int,
    limits: OracleLimits,
) -> tuple[int, str]:
    points = sorted(set(sf.support) | set(sf2.support))
    if not points:
        # both labels trivial: the complex over the zero truncation is zero
        return 0, "exact"
    chev = chevalley_structure(stype)
    jet = jet_quotient(algebra, points, k)
    current = truncated_current_algebra(chev, jet)
    limits.check_lie(current.lie.dim)
    modV = evaluation_module(current, sf, limits.max_module_dim)
    modVp = evaluation_module(current, sf2, limits.max_module_dim)
    limits.check_module(modV.dim * modVp.dim)
    return current_hom_h1(current, modV, modVp, limits)


def cross_check(
    sf: SupportFunction,
    sf2: SupportFunction,
    k: int = 2,
    limits: OracleLimits = DEFAULT_LIMITS,
) -> CrossCheckReport:
    """Compare the closed formula with H^1 of the truncations at k and k+1.

    Disagreement between the two truncation orders flags an insufficient
    truncation rather than a formula failure; all three must agree for the
    report to count as a pass.
    """
    _require_same_context(sf, sf2)
    sf = normalize(sf)
    sf2 = normalize(sf2)
    formula = ext1_dimension(sf, sf2).total_dimension
    h1a, path_a = _oracle_h1(sf.stype, sf.algebra, sf, sf2, k, limits)
    h1b, path_b = _oracle_h1(sf.stype, sf.algebra, sf, sf2, k + 1, limits)
    return CrossCheckReport(
        formula=formula,
        oracle=h1a,
        oracle_next=h1b,
        truncation=k,
        agree=formula == h1a == h1b,
        rank_paths=(path_a, path_b),
    )
