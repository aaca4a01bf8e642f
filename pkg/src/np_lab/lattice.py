"""Exact combinatorial geometry of an n-dimensional parallelotope.

The polytope is spanned by the origin and n linearly independent integer
generators V_1, ..., V_n with nonnegative entries.  Everything here is
exact: barycentric coordinates are `fractions.Fraction`, weights are the
max coordinate, and all set operations are plain enumeration at desk
scale (no Ehrhart machinery).

Index conventions: generator and coordinate indices are 0-based
throughout the code; only rendered output uses 1-based labels.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConeViolation, OutsideDomain


def _det_int(rows):
    """Determinant of a square integer matrix by fraction-free elimination."""
    n = len(rows)
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for col in range(n - 1):
        pivot_row = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot_row is None:
            return 0
        if pivot_row != col:
            m[col], m[pivot_row] = m[pivot_row], m[col]
            sign = -sign
        for r in range(col + 1, n):
            for c in range(col + 1, n):
                m[r][c] = (m[r][c] * m[col][col] - m[r][col] * m[col][c]) // prev
            m[r][col] = 0
        prev = m[col][col]
    return sign * m[n - 1][n - 1]


def smith_diagonal(rows):
    """Diagonal of the Smith normal form of an integer matrix.

    Returns the elementary divisors d_1 | d_2 | ... | d_n (all positive;
    the matrix must be nonsingular).  Textbook pivot-and-reduce algorithm;
    fine for the small n used here.
    """
    n = len(rows)
    m = [list(r) for r in rows]

    def find_pivot(t):
        best = None
        for i in range(t, n):
            for j in range(t, n):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        return best

    divisors = []
    for t in range(n):
        while True:
            pos = find_pivot(t)
            if pos is None:
                raise ValueError("singular matrix has no Smith normal form here")
            i, j = pos
            m[t], m[i] = m[i], m[t]
            for r in range(n):
                m[r][t], m[r][j] = m[r][j], m[r][t]
            piv = m[t][t]
            dirty = False
            for r in range(t + 1, n):
                q = m[r][t] // piv
                if q:
                    for c in range(t, n):
                        m[r][c] -= q * m[t][c]
                if m[r][t]:
                    dirty = True
            for c in range(t + 1, n):
                q = m[t][c] // piv
                if q:
                    for r in range(t, n):
                        m[r][c] -= q * m[r][t]
                if m[t][c]:
                    dirty = True
            if dirty:
                continue
            # pivot must divide every remaining entry; if not, absorb a bad row
            bad = next(((r, c) for r in range(t + 1, n) for c in range(t + 1, n)
                        if m[r][c] % piv != 0), None)
            if bad is None:
                break
            for c in range(t, n):
                m[t][c] += m[bad[0]][c]
        divisors.append(abs(m[t][t]))
    return divisors


@dataclass(frozen=True)
class LatticePoint:
    """An integer point of the cone with its exact barycentric data.

    q    -- the integer coordinate vector,
    z    -- exact coordinates in the generator basis (q = sum z_i V_i),
    w    -- the weight max_i z_i,
    deg  -- the degree vector (see Parallelotope.degree_vector).
    """

    q: tuple
    z: tuple
    w: Fraction
    deg: tuple

    def sort_key(self):
        return (self.w, self.q)


class Parallelotope:
    """The parallelotope spanned by the rows of an integer matrix V."""

    def __init__(self, generators):
        V = tuple(tuple(int(x) for x in row) for row in generators)
        n = len(V)
        if n == 0 or any(len(row) != n for row in V):
            raise ValueError("generators must form a square matrix")
        if any(x < 0 for row in V for x in row):
            raise ValueError("generators must have nonnegative entries")
        if any(all(x == 0 for x in row) for row in V):
            raise ValueError("zero generator row")
        det = _det_int(V)
        if det == 0:
            raise ValueError("singular generators")
        self.n = n
        self.V = V
        self.vol = abs(det)
        self.D = smith_diagonal(V)[-1]
        self._Vinv = self._invert(V, det)

    @staticmethod
    def _invert(V, det):
        n = len(V)
        inv = []
        for i in range(n):
            row = []
            for j in range(n):
                minor = [[V[r][c] for c in range(n) if c != i]
                         for r in range(n) if r != j]
                cof = _det_int(minor) if n > 1 else 1
                row.append(Fraction((-1) ** (i + j) * cof, det))
            inv.append(tuple(row))
        return tuple(inv)

    # -- coordinates and weights ------------------------------------------

    def coords(self, q):
        """Exact z with q = sum z_i V_i, as reduced fractions."""
        q = tuple(q)
        return tuple(sum(Fraction(q[j]) * self._Vinv[j][i] for j in range(self.n))
                     for i in range(self.n))

    def in_cone(self, q):
        return all(z >= 0 for z in self.coords(q))

    def weight(self, q):
        z = self.coords(q)
        if any(zi < 0 for zi in z):
            raise ConeViolation(f"{tuple(q)} has negative coordinate {z}")
        return max(z)

    def degree_vector(self, q):
        """Degree vector of a cone point.

        Writing q = sum_j z_j V_{S_j} over the increasing distinct nonzero
        coordinate values z_1 < ... < z_l with level sets S_j, the vector
        has the increment z_i - z_{i-1} at position n - sum_{j>=i} #S_j
        (0-based) and zeros elsewhere.  Compared lexicographically.
        """
        z = self.coords(q)
        if any(zi < 0 for zi in z):
            raise ConeViolation(f"{tuple(q)} not in cone")
        levels = {}
        for i, zi in enumerate(z):
            if zi != 0:
                levels.setdefault(zi, []).append(i)
        values = sorted(levels)
        deg = [Fraction(0)] * self.n
        prev = Fraction(0)
        suffix = sum(len(levels[v]) for v in values)
        for v in values:
            deg[self.n - suffix] = v - prev
            prev = v
            suffix -= len(levels[v])
        return tuple(deg)

    def point(self, q):
        q = tuple(int(x) for x in q)
        z = self.coords(q)
        if any(zi < 0 for zi in z):
            raise ConeViolation(f"{q} not in cone")
        return LatticePoint(q=q, z=z, w=max(z), deg=self.degree_vector(q))

    def origin(self):
        return self.point((0,) * self.n)

    # -- dilate enumeration ------------------------------------------------

    def _box_iter(self, k):
        far = [k * sum(self.V[i][j] for i in range(self.n)) for j in range(self.n)]
        return itertools.product(*(range(b + 1) for b in far))

    def dilate_points(self, k, closed=False):
        """Lattice points of the k-dilate, canonically sorted.

        closed=True gives 0 <= z_i <= k, closed=False gives 0 <= z_i < k.
        k = 0 returns just the origin in both modes.
        """
        if k < 0:
            raise ValueError("k must be nonnegative")
        if k == 0:
            return [self.origin()]
        pts = []
        for q in self._box_iter(k):
            z = self.coords(q)
            if all(0 <= zi and (zi <= k if closed else zi < k) for zi in z):
                pts.append(self.point(q))
        pts.sort(key=LatticePoint.sort_key)
        return pts

    def dilate_counts(self, k):
        """Closed forms (x_k^-, x_k^+) for the open/closed dilate sizes.

        x_k^- = k^n Vol; x_k^+ counts residue classes by their zero set I,
        with k+1 translates along directions in I and k along the rest.
        """
        if k < 1:
            raise ValueError("k must be >= 1")
        xm = k ** self.n * self.vol
        xp = 0
        for p0 in self.fundamental_points():
            ni = len(self.zero_set(p0))
            xp += (k + 1) ** ni * k ** (self.n - ni)
        return xm, xp

    def weight_ordered_points(self, count):
        """The first `count` cone points in the canonical (weight, lex) order."""
        k = 1
        while True:
            pts = self.dilate_points(k, closed=True)
            if len(pts) >= count:
                return pts[:count]
            k *= 2

    def points_up_to_weight(self, bound):
        """All cone points with weight <= bound, canonically sorted."""
        k = max(1, math.ceil(bound))
        return [pt for pt in self.dilate_points(k, closed=True) if pt.w <= bound]

    # -- residues ----------------------------------------------------------

    def residue(self, q):
        """The representative of q modulo the generator lattice, inside the
        half-open fundamental domain (all coordinates in [0,1))."""
        z = self.coords(q)
        if any(zi < 0 for zi in z):
            raise ConeViolation(f"{tuple(q)} not in cone")
        frac = [zi - math.floor(zi) for zi in z]
        r = tuple(sum(frac[i] * self.V[i][j] for i in range(self.n)) for j in range(self.n))
        if any(x.denominator != 1 for x in r):
            raise AssertionError("residue left the integer lattice")
        return self.point(tuple(int(x) for x in r))

    def fundamental_points(self):
        """The residue set: points with all coordinates in [0,1)."""
        return self.dilate_points(1, closed=False)

    def eta(self, p, p0):
        """The residue permutation P |-> (p P) % of the fundamental domain."""
        pt = p0 if isinstance(p0, LatticePoint) else self.point(p0)
        if any(not (0 <= zi < 1) for zi in pt.z):
            raise OutsideDomain(f"{pt.q} is not a fundamental-domain point")
        return self.residue(tuple(p * x for x in pt.q))

    def zero_set(self, pt):
        """I(Q): indices with vanishing coordinate (0-based frozenset)."""
        return frozenset(i for i, zi in enumerate(pt.z) if zi == 0)

    def residue_class_reps(self, I):
        """Fundamental-domain points whose zero set is exactly I."""
        I = frozenset(I)
        return [pt for pt in self.fundamental_points() if self.zero_set(pt) == I]

    def vertex(self, S):
        """V_S = sum of generators indexed by the nonempty set S."""
        S = sorted(set(S))
        if not S:
            raise ValueError("S must be nonempty")
        return tuple(sum(self.V[i][j] for i in S) for j in range(self.n))

    def vertex_points(self):
        """All nonzero vertices of the polytope, keyed by their index set."""
        out = {}
        for r in range(1, self.n + 1):
            for S in itertools.combinations(range(self.n), r):
                out[frozenset(S)] = self.vertex(S)
        return out

    def to_json(self):
        return {"V": [list(row) for row in self.V]}


@dataclass(frozen=True)
class Block:
    """One piece of the chain decomposition of a dilate.

    Members share the residue class of p0, the zero set I, and the ordered
    level-set pattern `chain`; they form qmin + Y_K(chain) where Y_K is the
    set of weakly increasing integer multiplier vectors bounded by K.
    """

    p0: LatticePoint
    I: frozenset
    chain: tuple
    qmin: LatticePoint
    K: int
    members: tuple

    @property
    def ell(self):
        return len(self.chain)


def _chain_of(delta, pt):
    levels = {}
    for i, zi in enumerate(pt.z):
        if zi != 0:
            levels.setdefault(zi, []).append(i)
    return tuple(frozenset(levels[v]) for v in sorted(levels))


def chain_values(pt, chain):
    """The increasing coordinate values of pt along its chain."""
    vals = []
    for S in chain:
        i = next(iter(S))
        vals.append(pt.z[i])
    return vals


def block_decomposition(delta, p, k, closed=False):
    """Partition the k-dilate into residue/zero-set/chain blocks.

    Each block is checked against its arithmetic-progression description
    (qmin + Y_K); a failure would contradict the structure theory and
    raises AssertionError.
    """
    groups = {}
    for pt in delta.dilate_points(k, closed=closed):
        p0 = delta.residue(pt.q)
        key = (p0.q, delta.zero_set(pt), _chain_of(delta, pt))
        groups.setdefault(key, []).append(pt)
    blocks = []
    for (p0q, I, chain), members in sorted(groups.items()):
        members.sort(key=lambda m: m.deg)
        qmin = members[0]
        ell = len(chain)
        if ell == 0:
            blocks.append(Block(delta.point(p0q), I, chain, qmin, 0, tuple(members)))
            continue
        zmin = chain_values(qmin, chain)
        gaps = [zmin[0]] + [zmin[i] - zmin[i - 1] for i in range(1, ell)]
        if not all(0 < g <= 1 for g in gaps):
            raise AssertionError(f"qmin increments {gaps} leave (0,1]")
        mvecs = set()
        K = 0
        for m in members:
            vals = chain_values(m, chain)
            mv = tuple(vals[i] - zmin[i] for i in range(ell))
            if any(x.denominator != 1 or x < 0 for x in mv):
                raise AssertionError("member not an integer translate of qmin")
            mv = tuple(int(x) for x in mv)
            if any(mv[i] > mv[i + 1] for i in range(ell - 1)):
                raise AssertionError("member multipliers not weakly increasing")
            mvecs.add(mv)
            K = max(K, mv[-1])
        expected = {mv for mv in itertools.product(range(K + 1), repeat=ell)
                    if all(mv[i] <= mv[i + 1] for i in range(ell - 1))}
        if mvecs != expected:
            raise AssertionError("block is not a full Y_K translate family")
        blocks.append(Block(delta.point(p0q), I, chain, qmin, K, tuple(members)))
    return blocks


def y_k_vectors(ell, K):
    """Weakly increasing integer vectors 0 <= m_1 <= ... <= m_ell <= K."""
    return [mv for mv in itertools.product(range(K + 1), repeat=ell)
            if all(mv[i] <= mv[i + 1] for i in range(ell - 1))]
