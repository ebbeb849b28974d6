"""Finite-dimensional left modules over an Algebra, and their maps.

A module stores one global square matrix per algebra basis element, acting
on coordinates grouped by vertex (all vertex-1 coordinates first, then
vertex 2, and so on).  Module maps are global matrices that are block
diagonal with respect to that grouping; commuting with the idempotent
actions enforces the block shape automatically, so a single matrix is
enough.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import (Matrix, ONE, ZERO, frac, in_span, reduce_against,
                     rref_rows, vec_is_zero)
from .quiver import Algebra


class FDModule:
    def __init__(self, alg: Algebra, dims, act, name=""):
        self.alg = alg
        self.dims = tuple(dims)
        if len(self.dims) != alg.n:
            raise ValueError("dimension vector length mismatch")
        self.total = sum(self.dims)
        self.offsets = []
        off = 0
        for d in self.dims:
            self.offsets.append(off)
            off += d
        self.act = list(act)  # one total x total Matrix per algebra basis elt
        if len(self.act) != alg.dim:
            raise ValueError("need an action matrix per algebra basis element")
        self.name = name

    def vertex_of_coord(self, c: int) -> int:
        for i in range(self.alg.n - 1, -1, -1):
            if c >= self.offsets[i]:
                return i + 1
        raise ValueError("bad coordinate")

    def vertex_range(self, vertex: int):
        off = self.offsets[vertex - 1]
        return range(off, off + self.dims[vertex - 1])

    def act_elt(self, v) -> Matrix:
        """Action matrix of an arbitrary algebra element (coefficient vector)."""
        m = Matrix.zero(self.total, self.total)
        for k, c in enumerate(v):
            if c != 0:
                m = m + self.act[k].scale(c)
        return m

    def generators_action(self):
        """(algebra basis index, action matrix) for idempotents and arrows."""
        out = []
        for i in range(self.alg.n):
            k = self.alg.unit_index[i]
            out.append((k, self.act[k]))
        for name, s, t, k in self.alg.arrows:
            out.append((k, self.act[k]))
        return out

    def validate(self):
        alg = self.alg
        for i in range(alg.n):
            k = alg.unit_index[i]
            m = self.act[k]
            for r in range(self.total):
                for c in range(self.total):
                    want = (ONE if (r == c and r in self.vertex_range(i + 1))
                            else ZERO)
                    if m.data[r][c] != want:
                        raise ValueError(
                            f"idempotent e{i+1} does not act as the "
                            f"vertex projection")
        for i in range(alg.dim):
            for j in range(alg.dim):
                lhs = self.act[i] @ self.act[j]
                rhs = Matrix.zero(self.total, self.total)
                for k, c in self.alg.table[i][j].items():
                    rhs = rhs + self.act[k].scale(c)
                if lhs != rhs:
                    raise ValueError(
                        f"action is not multiplicative at "
                        f"({alg.labels[i]},{alg.labels[j]})")

    def is_zero(self) -> bool:
        return self.total == 0


class ModuleMap:
    def __init__(self, source: FDModule, target: FDModule, mat: Matrix):
        if mat.rows != target.total or mat.cols != source.total:
            raise ValueError("map shape mismatch")
        self.source = source
        self.target = target
        self.mat = mat

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self after other."""
        if other.target is not self.source and \
                other.target.total != self.source.total:
            raise ValueError("maps not composable")
        return ModuleMap(other.source, self.target, self.mat @ other.mat)

    def __add__(self, other):
        return ModuleMap(self.source, self.target, self.mat + other.mat)

    def scale(self, c):
        return ModuleMap(self.source, self.target, self.mat.scale(c))

    def is_zero(self) -> bool:
        return self.mat.is_zero()

    def check_intertwining(self):
        for k, a in self.source.generators_action():
            if self.mat @ a != self.target.act[k] @ self.mat:
                raise ValueError(
                    f"square for {self.source.alg.labels[k]} does not commute")


def zero_module(alg: Algebra) -> FDModule:
    return FDModule(alg, [0] * alg.n,
                    [Matrix.zero(0, 0) for _ in range(alg.dim)], name="0")


def projective(alg: Algebra, i: int) -> FDModule:
    """A e_i on the basis of algebra words with source i."""
    idxs = [k for k in range(alg.dim) if alg.bsource[k] == i]
    idxs.sort(key=lambda k: (alg.btarget[k], alg.bdegree[k], k))
    dims = [0] * alg.n
    for k in idxs:
        dims[alg.btarget[k] - 1] += 1
    pos = {k: p for p, k in enumerate(idxs)}
    act = []
    for g in range(alg.dim):
        cols = []
        for k in idxs:
            prod = alg.multiply(alg.basis_vec(g), alg.basis_vec(k))
            col = [ZERO] * len(idxs)
            for m, c in enumerate(prod):
                if c != 0:
                    col[pos[m]] = c
            cols.append(col)
        act.append(Matrix.from_columns(cols) if idxs
                   else Matrix.zero(0, 0))
    mod = FDModule(alg, dims, act, name=f"P({i})")
    mod.proj_basis = idxs          # algebra basis index per coordinate
    mod.proj_vertex = i
    mod.generator_coord = idxs.index(alg.unit_index[i - 1])
    return mod


def simple(alg: Algebra, i: int) -> FDModule:
    dims = [0] * alg.n
    dims[i - 1] = 1
    act = []
    for k in range(alg.dim):
        if k == alg.unit_index[i - 1]:
            act.append(Matrix.identity(1))
        else:
            act.append(Matrix.zero(1, 1))
    return FDModule(alg, dims, act, name=f"S({i})")


def from_arrow_matrices(alg: Algebra, dims, arrow_mats, name=""):
    """Build a module from one (target-dim x source-dim) block per arrow.

    Only valid for quiver-presented algebras whose basis elements carry
    paths.  The action of a longer word is the composition of its arrow
    blocks; the relations are checked by FDModule construction plus an
    explicit validate().
    """
    if alg.paths is None:
        raise ValueError("algebra has no path presentation")
    dims = tuple(dims)
    total = sum(dims)
    offsets = []
    off = 0
    for d in dims:
        offsets.append(off)
        off += d

    def embed(block: Matrix, t: int, s: int) -> Matrix:
        m = [[ZERO] * total for _ in range(total)]
        for r in range(block.rows):
            for c in range(block.cols):
                m[offsets[t - 1] + r][offsets[s - 1] + c] = block.data[r][c]
        return Matrix(total, total, m)

    by_arrow = {}
    for (aname, s, t, k), block in zip(alg.arrows, arrow_mats):
        if block.rows != dims[t - 1] or block.cols != dims[s - 1]:
            raise ValueError(f"arrow {aname}: block shape mismatch")
        by_arrow[aname] = embed(block, t, s)

    act = []
    for k in range(alg.dim):
        source, names = alg.paths[k]
        if not names:
            block = Matrix.identity(dims[source - 1])
            act.append(embed(block, source, source))
        else:
            m = Matrix.identity(total)
            for aname in names:
                m = by_arrow[aname] @ m
            act.append(m)
    mod = FDModule(alg, dims, act, name=name)
    mod.validate()
    return mod


def direct_sum(modules, name=""):
    if not modules:
        raise ValueError("empty direct sum")
    alg = modules[0].alg
    dims = [sum(m.dims[i] for m in modules) for i in range(alg.n)]
    total = sum(dims)
    offsets = []
    off = 0
    for d in dims:
        offsets.append(off)
        off += d
    # coordinate embedding per summand
    embeds = []
    cursor = [0] * alg.n
    for m in modules:
        emb = []
        for i in range(alg.n):
            for c in range(m.dims[i]):
                emb.append(offsets[i] + cursor[i] + c)
            cursor[i] += m.dims[i]
        embeds.append(emb)

    act = []
    for k in range(alg.dim):
        grid = [[ZERO] * total for _ in range(total)]
        for m, emb in zip(modules, embeds):
            a = m.act[k]
            for r in range(m.total):
                for c in range(m.total):
                    if a.data[r][c] != 0:
                        grid[emb[r]][emb[c]] = a.data[r][c]
        act.append(Matrix(total, total, grid))
    out = FDModule(alg, dims, act, name=name or "+".join(m.name
                                                         for m in modules))
    incs = []
    projs = []
    for m, emb in zip(modules, embeds):
        gi = [[ZERO] * m.total for _ in range(total)]
        gp = [[ZERO] * total for _ in range(m.total)]
        for c, r in enumerate(emb):
            gi[r][c] = ONE
            gp[c][r] = ONE
        incs.append(ModuleMap(m, out, Matrix(total, m.total, gi)))
        projs.append(ModuleMap(out, m, Matrix(m.total, total, gp)))
    out.summand_inclusions = incs
    out.summand_projections = projs
    return out


def hom_basis(M: FDModule, N: FDModule, radical_only: bool = False):
    """Basis of Hom(M, N) as ModuleMaps.

    With radical_only, the perp of the trace pairing with Hom(N, M) is
    returned; over the rationals this is exactly the radical of the hom
    space (non-isomorphism part).
    """
    if M.alg is not N.alg and M.alg.dim != N.alg.dim:
        raise ValueError("modules over different algebras")
    tM, tN = M.total, N.total
    if tM == 0 or tN == 0:
        return []
    nunk = tN * tM

    def unk(r, c):
        return r * tM + c

    rows = []
    for k, a in M.generators_action():
        b = N.act[k]
        # F a - b F = 0
        for r in range(tN):
            for c in range(tM):
                row = [ZERO] * nunk
                for s in range(tM):
                    if a.data[s][c] != 0:
                        row[unk(r, s)] += a.data[s][c]
                for s in range(tN):
                    if b.data[r][s] != 0:
                        row[unk(s, c)] -= b.data[r][s]
                if any(x != 0 for x in row):
                    rows.append(row)
    sol = Matrix(len(rows), nunk, rows) if rows else Matrix.zero(0, nunk)
    basis_vecs = sol.kernel_basis()

    if radical_only and basis_vecs:
        back = hom_basis(N, M, radical_only=False)
        if back:
            def as_mat(v):
                return Matrix(tN, tM, [[v[unk(r, c)] for c in range(tM)]
                                       for r in range(tN)])
            pair_rows = []
            for g in back:
                pr = []
                for v in basis_vecs:
                    pr.append((g.mat @ as_mat(v)).trace())
                pair_rows.append(pr)
            coeff = Matrix(len(pair_rows), len(basis_vecs), pair_rows)
            kern = coeff.kernel_basis()
            new_vecs = []
            for kv in kern:
                acc = [ZERO] * nunk
                for c, bv in zip(kv, basis_vecs):
                    if c != 0:
                        acc = [a + c * b for a, b in zip(acc, bv)]
                new_vecs.append(tuple(acc))
            basis_vecs = new_vecs

    out = []
    for v in basis_vecs:
        mat = Matrix(tN, tM, [[v[unk(r, c)] for c in range(tM)]
                              for r in range(tN)])
        out.append(ModuleMap(M, N, mat))
    return out


def hom_from_projective(P: FDModule, X: FDModule):
    """Basis of Hom(P, X) for P a realized direct sum of projectives.

    Requires P.proj_basis (set by projective / sum_of_projectives):
    per-coordinate algebra basis indices.  A hom from the summand generated
    at coordinate g with vertex i corresponds to a vector x in e_i X; the
    map sends the coordinate of word w to act_X(w) x.
    """
    gens = getattr(P, "proj_gens", None)
    if gens is None:
        raise ValueError("module does not carry projective summand data")
    out = []
    for (gcoord, vtx, word_idxs) in gens:
        for c in X.vertex_range(vtx):
            x = tuple(ONE if k == c else ZERO for k in range(X.total))
            cols = [None] * P.total
            for coord, widx in word_idxs:
                cols[coord] = X.act[widx].apply(x)
            grid = [[cols[cc][r] if cols[cc] is not None else ZERO
                     for cc in range(P.total)] for r in range(X.total)]
            out.append(ModuleMap(P, X, Matrix(X.total, P.total, grid)))
    return out


def sum_of_projectives(alg: Algebra, vertices, name=""):
    """Direct sum of P(i) for i in vertices, with projective summand data."""
    mods = [projective(alg, i) for i in vertices]
    if not mods:
        out = zero_module(alg)
        out.proj_gens = []
        out.summands = []
        return out
    out = direct_sum(mods, name=name)
    gens = []
    for m, inc in zip(mods, out.summand_inclusions):
        emb = [r for r in range(out.total)
               if any(inc.mat.data[r][c] != 0 for c in range(m.total))]
        # coordinate mapping from the summand into the sum
        coord_of = {}
        for c in range(m.total):
            for r in range(out.total):
                if inc.mat.data[r][c] != 0:
                    coord_of[c] = r
        vtx = m.proj_vertex
        word_idxs = [(coord_of[c], m.proj_basis[c]) for c in range(m.total)]
        gens.append((coord_of[m.generator_coord], vtx, word_idxs))
    out.proj_gens = gens
    out.summands = list(vertices)
    return out


def submodule(M: FDModule, vectors, name=""):
    """Submodule spanned by the given vertex-pure vectors (must be closed).

    Returns (FDModule, inclusion ModuleMap).  Raises when the span is not
    closed under the action.
    """
    per_vertex = {i: [] for i in range(1, M.alg.n + 1)}
    rows, piv = rref_rows(vectors, M.total) if vectors else ([], [])
    for r in rows:
        verts = {M.vertex_of_coord(c) for c, x in enumerate(r) if x != 0}
        if len(verts) > 1:
            raise ValueError("submodule vectors must be vertex-pure")
        if verts:
            per_vertex[verts.pop()].append(tuple(r))
    basis = []
    dims = []
    for i in range(1, M.alg.n + 1):
        dims.append(len(per_vertex[i]))
        basis.extend(per_vertex[i])
    inc = Matrix.from_columns(basis) if basis else Matrix.zero(M.total, 0)
    act = []
    for k in range(M.alg.dim):
        cols = []
        for b in basis:
            img = M.act[k].apply(b)
            sol = inc.solve(list(img)) if basis else None
            if basis and sol is None:
                raise ValueError("span is not closed under the action")
            cols.append(sol if sol is not None else ())
        act.append(Matrix.from_columns(cols) if basis
                   else Matrix.zero(0, 0))
    sub = FDModule(M.alg, dims, act, name=name)
    return sub, ModuleMap(sub, M, inc)


def quotient(M: FDModule, vectors, name=""):
    """Quotient of M by the submodule spanned by vectors.

    Returns (FDModule, projection ModuleMap, section Matrix) where the
    section embeds chosen coset representatives back into M.
    """
    rows, piv = rref_rows(vectors, M.total) if vectors else ([], [])
    pivset = set(piv)
    comp = [c for c in range(M.total) if c not in pivset]
    dims = [0] * M.alg.n
    for c in comp:
        dims[M.vertex_of_coord(c) - 1] += 1
    # order complement coordinates by vertex to keep the grouping invariant
    comp.sort(key=lambda c: (M.vertex_of_coord(c), c))
    # projection of arbitrary v: coordinates of reduce_against(v) at comp
    pmat_rows = []
    for c in comp:
        row = [ZERO] * M.total
        row[c] = ONE
        for rr, p in zip(rows, piv):
            if rr[c] != 0:
                # reduction of unit vector e_p contributes -rr[c] at c;
                # equivalently the projection row for c picks up -rr[c] at p
                row[p] = -rr[c]
        pmat_rows.append(row)
    pmat = (Matrix(len(comp), M.total, pmat_rows) if comp
            else Matrix.zero(0, M.total))
    sect = Matrix.from_columns(
        [[ONE if k == c else ZERO for k in range(M.total)] for c in comp]) \
        if comp else Matrix.zero(M.total, 0)
    act = []
    for k in range(M.alg.dim):
        act.append(pmat @ M.act[k] @ sect if comp else Matrix.zero(0, 0))
    q = FDModule(M.alg, dims, act, name=name)
    return q, ModuleMap(M, q, pmat), sect


def map_spaces(f: ModuleMap):
    """Kernel, image and cokernel of a module map, with witnesses.

    Returns dict with modules and the inclusion/projection maps.
    """
    M, N = f.source, f.target
    kvecs = [v for v in f.mat.kernel_basis()]
    ker, kinc = submodule(M, kvecs, name="ker")
    ivecs = f.mat.column_space_basis()
    img, iinc = submodule(N, ivecs, name="im")
    cok, cproj, _ = quotient(N, ivecs, name="coker")
    assert ker.total + img.total == M.total
    return {"kernel": ker, "kernel_inclusion": kinc,
            "image": img, "image_inclusion": iinc,
            "cokernel": cok, "cokernel_projection": cproj}


def radical_vectors(M: FDModule):
    """Spanning vectors of rad A * M."""
    vecs = []
    for name, s, t, k in M.alg.arrows:
        for c in range(M.total):
            col = M.act[k].column(c)
            if not vec_is_zero(col):
                vecs.append(col)
    # higher radical words are generated by arrow products acting on these,
    # and arrow actions of arrow images are included by closing once more
    changed = True
    rows, piv = rref_rows(vecs, M.total)
    vecs = [tuple(r) for r in rows]
    while changed:
        changed = False
        for name, s, t, k in M.alg.arrows:
            for v in list(vecs):
                w = M.act[k].apply(v)
                if not vec_is_zero(w) and not in_span(w, rows, piv):
                    vecs.append(tuple(w))
                    rows, piv = rref_rows(vecs, M.total)
                    changed = True
    return vecs


def top_dims(M: FDModule):
    """Dimension vector of M / rad M."""
    q, _, _ = quotient(M, radical_vectors(M))
    return q.dims


def trace_submodule(M: FDModule, family, radical_only: bool = False,
                    name="trace"):
    vecs = []
    for F in family:
        for f in hom_basis(F, M, radical_only=radical_only):
            vecs.extend(f.mat.columns())
    vecs = [v for v in vecs if not vec_is_zero(v)]
    return submodule(M, vecs, name=name)


def projective_cover(M: FDModule):
    """Surjection from a sum of projectives with superfluous kernel."""
    alg = M.alg
    q, proj, sect = quotient(M, radical_vectors(M))
    vertices = []
    reps = []  # preimages in M of the top basis vectors
    col = 0
    for i in range(1, alg.n + 1):
        for _ in range(q.dims[i - 1]):
            vertices.append(i)
            reps.append(sect.column(col))
            col += 1
    P = sum_of_projectives(alg, vertices, name=f"cover({M.name})")
    if not vertices:
        return ModuleMap(P, M, Matrix.zero(M.total, 0))
    cols = [None] * P.total
    for (gcoord, vtx, word_idxs), rep in zip(P.proj_gens, reps):
        for coord, widx in word_idxs:
            cols[coord] = M.act[widx].apply(rep)
    grid = [[cols[c][r] for c in range(P.total)] for r in range(M.total)]
    f = ModuleMap(P, M, Matrix(M.total, P.total, grid))
    if f.mat.rank() != M.total:
        raise ValueError("projective cover construction failed to surject")
    return f


def iso_defect(M: FDModule, N: FDModule):
    """dim Hom(M,N) minus dim of its radical (a Morita-invariant pairing)."""
    h = hom_basis(M, N)
    r = hom_basis(M, N, radical_only=True)
    return len(h) - len(r)


def is_isomorphic(M: FDModule, N: FDModule) -> bool:
    """Decide isomorphism through the trace pairing (valid in char 0)."""
    if M.dims != N.dims:
        return False
    if M.total == 0:
        return True
    mn = iso_defect(M, N)
    return mn == iso_defect(M, M) and mn == iso_defect(N, N)
