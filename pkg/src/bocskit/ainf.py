"""Homotopy transfer of the product structure onto Ext degrees 0..2.

The transferred products m_r are computed by the usual perturbation
recursion: lambda_2 is composition, G inverts the differential on the
boundary part, and

    lambda_r = sum_t (-1)^((r-t) * (|a_1| + ... + |a_t|) + 1)
               lambda_2(G lambda_{r-t}(a_r..a_{t+1}), G lambda_t(a_t..a_1))

with G lambda_1 = -id.  Degrees in the exponent are plain (unsuspended)
degrees; on degree-1 inputs the exponent reduces to t(r-t)+1, which is
the sign that makes lambda_r of cocycles a cocycle.  The suspended
products b_r carry the extra sign (-1)^(sum_{j>=2} (j-1)|a_j|) with a_1
the rightmost argument.  Both sign readings are pinned operationally by
stasheff_check and the cocycle property tests.

Tuples are stored in display order (a_r, ..., a_1): the rightmost entry
acts first, matching the composition convention everywhere else.
"""

from __future__ import annotations

from .linalg import ZERO
from .resolution import (GradedMap, ResolvedSystem, differential, ext_basis,
                         hodge_data, zero_graded_map)


class ExtClass:
    """A basis class of Ext^k(Theta(i), Theta(j)) by position."""

    __slots__ = ("k", "i", "j", "idx")

    def __init__(self, k, i, j, idx):
        self.k = k
        self.i = i
        self.j = j
        self.idx = idx

    def key(self):
        return (self.k, self.i, self.j, self.idx)

    def __eq__(self, other):
        return isinstance(other, ExtClass) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"H{self.k}({self.i}->{self.j})#{self.idx}"


def _vertex_pair(rsys: ResolvedSystem, f: GradedMap):
    src = tgt = None
    for i, res in rsys.resolutions.items():
        if res is f.src:
            src = i
        if res is f.tgt:
            tgt = i
    if src is None or tgt is None:
        raise ValueError("graded map does not live on the resolved system")
    return src, tgt


def merkulov_lambda(rsys: ResolvedSystem, maps):
    """lambda_r evaluated on stored chain maps, rightmost acting first."""
    if len(maps) < 2:
        raise ValueError("lambda needs at least two arguments")
    low = list(reversed(maps))  # low[0] = a_1
    degs = [f.k for f in low]
    vertices = []
    for f in low:
        vertices.append(_vertex_pair(rsys, f))
    for t in range(len(low) - 1):
        if vertices[t][1] != vertices[t + 1][0]:
            raise ValueError("arguments are not composable")

    lam_cache = {}
    glam_cache = {}

    def lam(s, e):
        got = lam_cache.get((s, e))
        if got is not None:
            return got
        r = e - s
        if r == 2:
            val = low[s + 1].compose(low[s])
        else:
            val = None
            for t in range(1, r):
                upper = glam(s + t, e)
                lower = glam(s, s + t)
                exp = (r - t) * sum(degs[s:s + t]) + 1
                term = upper.compose(lower)
                if exp % 2 == 1:
                    term = term.scale(-1)
                val = term if val is None else val + term
        lam_cache[(s, e)] = val
        return val

    def glam(s, e):
        got = glam_cache.get((s, e))
        if got is not None:
            return got
        if e - s == 1:
            val = low[s].scale(-1)
        else:
            v = lam(s, e)
            q = v.k
            i0 = vertices[s][0]
            i1 = vertices[e - 1][1]
            val = hodge_data(rsys, i0, i1, q).G(v)
        glam_cache[(s, e)] = val
        return val

    return lam(0, len(low))


def _tabulated(key):
    """Tuples whose transfer values stay in the stored Hodge range.

    At most two degree-0 and at most one degree-2 argument: then every
    contiguous subtuple has a lambda value of degree between 0 and 3, so
    G is always available.  Excluded in-range tuples carry three or more
    degree-0 arguments and vanish by strict unitality.
    """
    r = len(key)
    if r < 2:
        return False
    counts = [0, 0, 0]
    for c in key:
        counts[c.k] += 1
    degsum = counts[1] + 2 * counts[2]
    if degsum - r > 0 or not (0 <= degsum + 2 - r <= 2):
        return False
    return counts[0] <= 2 and counts[2] <= 1


class AInfTable:
    """Tabulated products on Ext classes of degree <= 2.

    m_table maps display-order class tuples to coefficient dicts over the
    output Ext basis; b coefficients add the suspension sign; bprime
    additionally truncates tuples of positive total suspended degree.
    """

    def __init__(self, rsys: ResolvedSystem, r_max: int = 6):
        self.rsys = rsys
        self.r_max = r_max
        self.classes = {}
        self.gmaps = {}
        n = rsys.alg.n
        for k in range(3):
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    lst = []
                    for idx, f in enumerate(ext_basis(rsys, i, j, k)):
                        cls = ExtClass(k, i, j, idx)
                        lst.append(cls)
                        self.gmaps[cls] = f
                    self.classes[(k, i, j)] = lst
        self.m_table = {}
        for r in range(2, r_max + 1):
            for key in self._admissible_tuples(r):
                self.m_table[key] = self._compute_m(key)

    # -- bookkeeping ------------------------------------------------------

    def basis(self, k, i, j):
        return list(self.classes[(k, i, j)])

    def identity_class(self, i):
        return self.classes[(0, i, i)][0]

    def graded_map(self, cls: ExtClass) -> GradedMap:
        return self.gmaps[cls]

    def all_classes(self, degrees):
        out = []
        for (k, i, j), lst in sorted(self.classes.items()):
            if k in degrees:
                out.extend(lst)
        return out

    def _admissible_tuples(self, r):
        """Composable display tuples with output degree 0..2 and total
        suspended degree <= 0."""
        n = self.rsys.alg.n
        out = []

        def extend(chain, start_vertex):
            # chain built from the right; a_1 first
            if len(chain) == r:
                if _tabulated(chain):
                    out.append(tuple(reversed(chain)))
                return
            for k in range(3):
                for j in range(1, n + 1):
                    for cls in self.classes[(k, start_vertex, j)]:
                        chain.append(cls)
                        extend(chain, j)
                        chain.pop()

        for i in range(1, n + 1):
            extend([], i)
        return out

    def _compute_m(self, key):
        low = list(reversed(key))
        r = len(key)
        degsum = sum(c.k for c in key)
        q = degsum + 2 - r
        maps = [self.gmaps[c] for c in key]
        value = merkulov_lambda(self.rsys, maps)
        if value.k != q:
            raise AssertionError("transfer value has the wrong degree")
        i0 = low[0].i
        i1 = key[0].j
        if value.is_zero():
            return {}
        hd = hodge_data(self.rsys, i0, i1, q)
        hcoeffs, _ = hd.decompose(value)
        out = {}
        for c, cls in zip(hcoeffs, self.classes[(q, i0, i1)]):
            if c != 0:
                out[cls] = c
        return out

    # -- products ---------------------------------------------------------

    def m(self, key):
        """Coefficient dict of m_r on a display-order class tuple."""
        if len(key) == 1:
            return {}
        if key in self.m_table:
            return dict(self.m_table[key])
        r = len(key)
        degsum = sum(c.k for c in key)
        if degsum - r > 0 or not (0 <= degsum + 2 - r <= 2):
            return {}
        for t in range(r - 1):
            if key[r - 1 - t].j != key[r - 2 - t].i:
                return {}
        if r > self.r_max:
            raise ValueError("r_max too small")
        if not _tabulated(key):
            # three or more degree-0 arguments; zero by strict unitality
            if r >= 3 and any(self.gmaps[c].equals(
                    self.gmaps[self.identity_class(c.i)])
                    for c in key if c.k == 0):
                return {}
        raise KeyError(f"tuple not tabulated: {key}")

    def suspension_exponent(self, key):
        """Sign exponent of b_r relative to m_r, a_1 rightmost."""
        r = len(key)
        exp = 0
        for pos, cls in enumerate(key):
            j = r - pos  # argument index, a_1 rightmost
            exp += (j - 1) * cls.k
        return exp

    def b(self, key):
        coeffs = self.m(key)
        if not coeffs:
            return {}
        sign = -1 if self.suspension_exponent(key) % 2 == 1 else 1
        return {cls: sign * c for cls, c in coeffs.items()}

    def bprime(self, key):
        if sum(c.k - 1 for c in key) >= 1:
            return {}
        return self.b(key)


def build_tables(system_or_rsys, r_max: int = 6) -> AInfTable:
    """Tabulate the transferred products up to r_max inputs."""
    if isinstance(system_or_rsys, ResolvedSystem):
        rsys = system_or_rsys
    else:
        rsys = ResolvedSystem(system_or_rsys)
    return AInfTable(rsys, r_max)


def _add_into(acc, coeffs, scalar):
    for cls, c in coeffs.items():
        acc[cls] = acc.get(cls, ZERO) + scalar * c
        if acc[cls] == 0:
            del acc[cls]


def stasheff_check(table: AInfTable, k: int) -> bool:
    """Truncated Stasheff identity on all suspended-degree <= 0 tuples.

    Evaluates sum of b'_{r+1+u}(id^r (x) b'_t (x) id^u) over r+t+u = k on
    every composable length-k tuple of Ext^{<=1} classes, with the Koszul
    sign from moving b'_t past the left factors.
    """
    if k > table.r_max:
        raise ValueError("k exceeds r_max")
    n = table.rsys.alg.n
    tuples = []

    def extend(chain, start_vertex):
        if len(chain) == k:
            tuples.append(tuple(reversed(chain)))
            return
        for deg in (0, 1):
            for j in range(1, n + 1):
                for cls in table.classes[(deg, start_vertex, j)]:
                    chain.append(cls)
                    extend(chain, j)
                    chain.pop()

    for i in range(1, n + 1):
        extend([], i)

    for key in tuples:
        acc = {}
        for left in range(0, k):
            for t in range(1, k - left + 1):
                mid = key[left:left + t]
                right = key[left + t:]
                inner = table.bprime(mid)
                if not inner:
                    continue
                koszul = sum(c.k - 1 for c in key[:left])
                sign = -1 if koszul % 2 == 1 else 1
                for cls, c in inner.items():
                    new_key = key[:left] + (cls,) + right
                    outer = table.bprime(new_key)
                    if outer:
                        _add_into(acc, outer, sign * c)
        if acc:
            return False
    return True
