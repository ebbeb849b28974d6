"""Pretwisted data and the object-level module correspondence.

A pretwisted pair carries multiplicity spaces over the vertex set and a
degree-1 element delta written as a sum of (linear map, Ext class) pairs.
Pairing delta against the dual generators of the bocs base yields a
candidate module; triangularity plus the Maurer-Cartan equation make it an
actual module, and filtered modules over the original algebra are sent to
such pairs layer by layer.
"""

from __future__ import annotations

from .ainf import AInfTable, ExtClass
from .bocs import Bocs, bocs_hom_basis
from .linalg import Matrix, ONE, ZERO, in_span, rref_rows
from .modules import FDModule, ModuleMap, hom_basis
from .strata import theta_filtration


class PretwistedModule:
    """Multiplicity spaces X plus delta as (map, degree-1 class) pairs."""

    def __init__(self, X, delta):
        self.X = tuple(X)
        self.delta = list(delta)
        for f, cls in self.delta:
            if cls.k != 1:
                raise ValueError("delta classes must have degree 1")
            if f.rows != self.X[cls.j - 1] or f.cols != self.X[cls.i - 1]:
                raise ValueError("map endpoints do not match the class")

    @property
    def total(self):
        return sum(self.X)

    def offsets(self):
        out = []
        off = 0
        for d in self.X:
            out.append(off)
            off += d
        return out

    def embedded(self, f: Matrix, cls: ExtClass) -> Matrix:
        """The block map placed inside the total space."""
        offs = self.offsets()
        total = self.total
        grid = [[ZERO] * total for _ in range(total)]
        for r in range(f.rows):
            for c in range(f.cols):
                grid[offs[cls.j - 1] + r][offs[cls.i - 1] + c] = \
                    f.data[r][c]
        return Matrix(total, total, grid)


def module_from_pretwisted(pt: PretwistedModule, bocs: Bocs) -> FDModule:
    """Candidate B-module with each generator acting by the pairing.

    The generator dual to a class acts by the sum of the maps attached to
    that class; relations are not checked here (see check_pretwisted).
    """
    B = bocs.B
    total = pt.total
    blocks = {}
    for name, cls in bocs.duals.q0:
        m = Matrix.zero(total, total)
        for f, c in pt.delta:
            if c == cls:
                m = m + pt.embedded(f, c)
        blocks[name] = m
    offs = pt.offsets()
    act = []
    for k in range(B.dim):
        source, names = B.paths[k]
        if not names:
            grid = [[ZERO] * total for _ in range(total)]
            for c in range(pt.X[source - 1]):
                grid[offs[source - 1] + c][offs[source - 1] + c] = ONE
            act.append(Matrix(total, total, grid))
        else:
            m = Matrix.identity(total)
            for aname in names:
                m = blocks[aname] @ m
            # restrict to the source idempotent block
            mask = [[ZERO] * total for _ in range(total)]
            for c in range(pt.X[source - 1]):
                mask[offs[source - 1] + c][offs[source - 1] + c] = ONE
            act.append(m @ Matrix(total, total, mask))
    return FDModule(B, pt.X, act, name="X_delta")


def _mc_matrices(pt: PretwistedModule, table: AInfTable):
    """Coefficient of each degree-2 class in the Maurer-Cartan sum.

    With every class of degree 1 the twisting sign equals the suspension
    sign, so the sum is evaluated through the truncated bar products.
    """
    total = pt.total
    emb = [(cls, pt.embedded(f, cls)) for f, cls in pt.delta]
    out = {}
    chains = [((cls,), m) for cls, m in emb if not m.is_zero()]
    for r in range(2, table.r_max + 1):
        grown = []
        for key, prod in chains:
            for cls, m in emb:
                if key[0].j != cls.i:
                    continue
                nm = m @ prod
                if nm.is_zero():
                    continue
                grown.append(((cls,) + key, nm))
        chains = grown
        if not chains:
            break
        for key, prod in chains:
            for zcls, c in table.bprime(key).items():
                cur = out.get(zcls)
                out[zcls] = prod.scale(c) if cur is None \
                    else cur + prod.scale(c)
    return {z: m for z, m in out.items() if not m.is_zero()}


def _is_nilpotent(pt: PretwistedModule) -> bool:
    total = pt.total
    if total == 0:
        return True
    gens = [pt.embedded(f, cls) for f, cls in pt.delta]
    layer = [m for m in gens if not m.is_zero()]
    for _ in range(total):
        nxt = []
        seen_rows = []
        seen_piv = []
        for g in gens:
            for m in layer:
                p = g @ m
                if p.is_zero():
                    continue
                flat = [x for row in p.data for x in row]
                if in_span(flat, seen_rows, seen_piv):
                    continue
                seen_rows, seen_piv = rref_rows(
                    seen_rows + [flat], total * total)
                nxt.append(p)
        layer = nxt
        if not layer:
            return True
    return False


def check_pretwisted(pt: PretwistedModule, table: AInfTable, bocs: Bocs):
    """(triangular, maurer_cartan) flags for pretwisted data.

    Maurer-Cartan is evaluated through the product tables and
    cross-checked against relation compatibility of the candidate module.
    """
    triangular = _is_nilpotent(pt)
    mc = not _mc_matrices(pt, table)
    candidate = module_from_pretwisted(pt, bocs)
    compatible = True
    for rel in bocs.B.relations.relations:
        total = Matrix.zero(pt.total, pt.total)
        for c, src, names in rel.terms:
            m = Matrix.identity(pt.total)
            for aname in names:
                m = candidate.act[bocs.arrow_idx[aname]] @ m
            total = total + m.scale(c)
        if not total.is_zero():
            compatible = False
    if mc != compatible:
        raise AssertionError(
            "Maurer-Cartan and relation compatibility disagree")
    return triangular, mc


def _extension_coefficients(bocs: Bocs, E: FDModule, pi: ModuleMap,
                            iota: ModuleMap, i: int, j: int):
    """Class coordinates of the extension of Theta(i) by Theta(j).

    pi maps E onto Theta(i), iota embeds Theta(j); the class is read off
    by lifting the augmentation and matching the induced cocycle against
    the tabulated representatives modulo coboundaries.
    """
    table = bocs.table
    rsys = table.rsys
    Ri = rsys.resolution(i)
    Rj = rsys.resolution(j)
    basis = table.basis(1, i, j)
    if not basis:
        return []
    P0 = Ri.P(0)
    P1 = Ri.P(1)
    theta_j = Rj.module

    # lift the augmentation through pi
    space = hom_basis(P0, E)
    cols = [tuple(x for row in (pi.mat @ h.mat).data for x in row)
            for h in space]
    rhs = tuple(x for row in Ri.aug.mat.data for x in row)
    sol = Matrix.from_columns(cols).solve(rhs) if cols else None
    if sol is None:
        raise AssertionError("augmentation does not lift through pi")
    umat = Matrix.zero(E.total, P0.total)
    for c, h in zip(sol, space):
        if c != 0:
            umat = umat + h.mat.scale(c)

    # restrict to the first syzygy and pull back along iota
    rest = umat @ Ri.diff(1).mat
    gcols = []
    for col in range(rest.cols):
        v = iota.mat.solve(rest.column(col))
        if v is None:
            raise AssertionError("lift does not land in the submodule")
        gcols.append(list(v))
    g = Matrix.from_columns(gcols) if gcols else \
        Matrix.zero(theta_j.total, 0)

    # match against tabulated cocycles modulo coboundaries
    cocs = [Rj.aug.mat @ table.graded_map(c).component(1).mat
            for c in basis]
    cobs = [h.mat @ Ri.diff(1).mat for h in hom_basis(P0, theta_j)]
    cols = [tuple(x for row in m.data for x in row)
            for m in cocs + cobs]
    rhs = tuple(x for row in g.data for x in row)
    sol = Matrix.from_columns(cols).solve(rhs)
    if sol is None:
        raise AssertionError("extension cocycle outside the table span")
    return list(sol[:len(basis)])


def filtered_to_bocs_module(M: FDModule, bocs: Bocs, cert=None,
                            layer_bound: int = 4):
    """B-module of a standardly filtered A-module via pretwisted data.

    Adjacent layers give first-order classes; the remaining delta terms
    are solved from the Maurer-Cartan equation gap by gap.  Raises
    ValueError("correction solve failed") when no solution exists within
    the layer bound.
    """
    table = bocs.table
    system = table.rsys.system
    if cert is None:
        cert = theta_filtration(M, system)
    if cert is None:
        raise ValueError("module is not filtered by the standard system")
    layers = cert.layers
    s = len(layers)
    if s > layer_bound:
        raise ValueError("correction solve failed")
    word = [l.vertex for l in layers]
    dims = [0] * system.alg.n
    coord = []
    for v in word:
        coord.append(dims[v - 1])
        dims[v - 1] += 1

    pt0 = PretwistedModule(dims, [])
    offs = pt0.offsets()
    layer_of = [None] * pt0.total
    for t, v in enumerate(word):
        layer_of[offs[v - 1] + coord[t]] = t

    def elementary(t, u, value=ONE):
        f = [[ZERO] * dims[word[t] - 1]
             for _ in range(dims[word[u] - 1])]
        f[coord[u]][coord[t]] = value
        return Matrix(dims[word[u] - 1], dims[word[t] - 1], f)

    # adjacent classes from subquotients
    from .modules import quotient
    delta = []
    kernels = [M]
    for l in layers:
        kernels.append(l.kernel_inclusion.source)
    inclusions = [l.kernel_inclusion for l in layers]
    for t in range(s - 1):
        upper = kernels[t]
        inc1 = inclusions[t]
        inc2 = inclusions[t + 1]
        sub = [tuple(col) for col in (inc1.mat @ inc2.mat).columns()]
        E, proj, _ = quotient(upper, sub)
        pi = ModuleMap(E, system.module(word[t]),
                       _factor_through(layers[t].surjection, proj))
        theta_j = system.module(word[t + 1])
        icols = []
        surj2 = layers[t + 1].surjection
        for c in range(theta_j.total):
            pre = surj2.mat.solve(tuple(ONE if k == c else ZERO
                                        for k in range(theta_j.total)))
            icols.append(list(proj.mat.apply(inc1.mat.apply(pre))))
        iota = ModuleMap(theta_j, E, Matrix.from_columns(icols)
                         if icols else Matrix.zero(E.total, 0))
        xs = _extension_coefficients(bocs, E, pi, iota,
                                     word[t], word[t + 1])
        for x, cls in zip(xs, table.basis(1, word[t], word[t + 1])):
            if x != 0:
                delta.append((elementary(t, t + 1, x), cls))

    def gap_entries(dl, h):
        pt = PretwistedModule(dims, dl)
        mats = _mc_matrices(pt, table)
        out = []
        for zcls in sorted(mats, key=lambda z: z.key()):
            m = mats[zcls]
            for r in range(m.rows):
                for c in range(m.cols):
                    if layer_of[r] is not None and \
                            layer_of[c] is not None and \
                            layer_of[r] - layer_of[c] == h and \
                            m.data[r][c] != 0:
                        out.append((zcls.key(), r, c, m.data[r][c]))
        return out

    def full_entries(dl, h, keys):
        """Entry vector over a fixed key list for linearization."""
        pt = PretwistedModule(dims, dl)
        mats = _mc_matrices(pt, table)
        vec = []
        for zkey, r, c in keys:
            val = ZERO
            for zcls, m in mats.items():
                if zcls.key() == zkey:
                    val = m.data[r][c]
            vec.append(val)
        return vec

    # the gap-2 component must vanish with first-order data alone
    if gap_entries(delta, 2):
        raise ValueError("correction solve failed")

    for g in range(2, s):
        h = g + 1
        unknowns = []
        for t in range(s - g):
            u = t + g
            for cls in table.basis(1, word[t], word[u]):
                unknowns.append((elementary(t, u), cls))
        base = gap_entries(delta, h)
        if not base:
            continue
        keys = [(zkey, r, c) for zkey, r, c, v in base]
        r0 = [v for zkey, r, c, v in base]
        if not unknowns:
            raise ValueError("correction solve failed")
        cols = []
        for up in unknowns:
            shifted = full_entries(delta + [up], h, keys)
            cols.append([a - b for a, b in zip(shifted, r0)])
        sol = Matrix.from_columns(cols).solve([-v for v in r0])
        if sol is None:
            raise ValueError("correction solve failed")
        for lam, (f, cls) in zip(sol, unknowns):
            if lam != 0:
                delta.append((f.scale(lam), cls))

    pt = PretwistedModule(dims, delta)
    triangular, mc = check_pretwisted(pt, table, bocs)
    if not (triangular and mc):
        raise ValueError("correction solve failed")
    out = module_from_pretwisted(pt, bocs)
    out.pretwisted = pt
    return out


def _factor_through(f: ModuleMap, proj: ModuleMap) -> Matrix:
    """Matrix of the map induced by f on the quotient given by proj."""
    cols = []
    for c in range(proj.target.total):
        pre = proj.mat.solve(tuple(ONE if k == c else ZERO
                                   for k in range(proj.target.total)))
        cols.append(list(f.mat.apply(pre)))
    return Matrix.from_columns(cols) if cols else \
        Matrix.zero(f.target.total, 0)


def hom_dim_compare(M: FDModule, N: FDModule, bocs: Bocs):
    """dim Hom over A against dim Hom in the bocs category."""
    XM = filtered_to_bocs_module(M, bocs)
    XN = filtered_to_bocs_module(N, bocs)
    da = len(hom_basis(M, N))
    db = len(bocs_hom_basis(bocs, XM, XN))
    return {"dim_hom_A": da, "dim_hom_bocs": db, "match": da == db,
            "ok": da == db}
