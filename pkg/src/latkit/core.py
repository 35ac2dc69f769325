"""Finite lattice data model.

Elements are dense indices 0..n-1 and input numbering is preserved, so
error witnesses always refer to the caller's indices.  The order matrix
and both operation tables are materialized at construction; everything
downstream assumes O(1) joins and meets.  Instances are immutable after
construction (numpy arrays are frozen) and safe to share across readers.
"""

import os
from dataclasses import dataclass
from functools import cached_property, reduce
from itertools import permutations

import numpy as np

from .errors import NotALattice, NotAPartialOrder, SizeCapExceeded

DEFAULT_SIZE_CAP = 4096


def size_cap():
    """Element cap; the LATKIT_MAX_N environment variable overrides it."""
    value = os.environ.get("LATKIT_MAX_N")
    return int(value) if value else DEFAULT_SIZE_CAP


@dataclass(frozen=True)
class Block:
    """One summand of a linear-sum decomposition."""

    elements: tuple
    position: int


class FiniteLattice:
    """A finite lattice over elements 0..n-1.

    leq[i, j] is True iff i <= j.  covers is the transitive reduction of
    leq.  join_table/meet_table hold element indices.
    """

    def __init__(self, leq, names=None, _validated=False):
        leq = np.asarray(leq, dtype=bool)
        n = leq.shape[0]
        if n > size_cap():
            raise SizeCapExceeded(f"{n} elements exceeds cap {size_cap()}")
        self.n = n
        self.leq = leq
        self.names = tuple(names) if names is not None else None
        if self.names is not None and len(self.names) != n:
            raise ValueError("names length must equal n")
        if not _validated:
            self._check_partial_order()
        self.join_table, self.meet_table = self._build_tables()
        for arr in (self.leq, self.join_table, self.meet_table):
            arr.flags.writeable = False

    # -- construction -------------------------------------------------

    @classmethod
    def from_covers(cls, n, covers, names=None):
        """Build and validate a lattice from a cover list.

        The order is the reflexive-transitive closure of the pairs; the
        pairs need not be reduced (redundant pairs are absorbed).
        """
        if n < 1:
            raise ValueError("need at least one element")
        leq = np.eye(n, dtype=bool)
        for lo, hi in covers:
            if not (0 <= lo < n and 0 <= hi < n):
                raise ValueError(f"cover ({lo}, {hi}) out of range for n={n}")
            if lo == hi:
                raise NotAPartialOrder([lo])
            leq[lo, hi] = True
        leq = transitive_closure(leq)
        return cls(leq, names=names)

    def _check_partial_order(self):
        leq = self.leq
        if not leq.diagonal().all():
            raise ValueError("order matrix must be reflexive")
        sym = leq & leq.T
        if sym.sum() > self.n:
            i, j = next(zip(*np.nonzero(sym & ~np.eye(self.n, dtype=bool))))
            raise NotAPartialOrder([int(i), int(j)])
        if (np.matmul(leq, leq) & ~leq).any():
            raise ValueError("order matrix must be transitive")

    def _build_tables(self):
        n, leq = self.n, self.leq
        row_of = {leq[i].tobytes(): i for i in range(n)}
        col_of = {leq[:, i].tobytes(): i for i in range(n)}
        join = np.zeros((n, n), dtype=np.int32)
        meet = np.zeros((n, n), dtype=np.int32)
        for i in range(n):
            join[i, i] = meet[i, i] = i
            for j in range(i + 1, n):
                if leq[i, j]:
                    lub, glb = j, i
                else:
                    ups = leq[i] & leq[j]
                    lub = row_of.get(ups.tobytes())
                    if lub is None:
                        raise NotALattice((i, j), "lub")
                    downs = leq[:, i] & leq[:, j]
                    glb = col_of.get(downs.tobytes())
                    if glb is None:
                        raise NotALattice((i, j), "glb")
                join[i, j] = join[j, i] = lub
                meet[i, j] = meet[j, i] = glb
        return join, meet

    # -- basic queries ------------------------------------------------

    def le(self, x, y):
        return bool(self.leq[x, y])

    def join(self, x, y):
        return int(self.join_table[x, y])

    def meet(self, x, y):
        return int(self.meet_table[x, y])

    def join_all(self, xs):
        return reduce(self.join, xs, self.bottom)

    def meet_all(self, xs):
        return reduce(self.meet, xs, self.top)

    def incomparable(self, x, y):
        return not (self.leq[x, y] or self.leq[y, x])

    @cached_property
    def covers(self):
        """Cover pairs (lo, hi): the transitive reduction of leq."""
        lt = self.leq & ~np.eye(self.n, dtype=bool)
        reduced = lt & ~np.matmul(lt, lt)
        return tuple((int(i), int(j)) for i, j in zip(*np.nonzero(reduced)))

    @cached_property
    def upper_covers(self):
        ups = [[] for _ in range(self.n)]
        for lo, hi in self.covers:
            ups[lo].append(hi)
        return tuple(tuple(sorted(u)) for u in ups)

    @cached_property
    def lower_covers(self):
        downs = [[] for _ in range(self.n)]
        for lo, hi in self.covers:
            downs[hi].append(lo)
        return tuple(tuple(sorted(d)) for d in downs)

    @cached_property
    def bottom(self):
        counts = self.leq.sum(axis=1)
        return int(np.argmax(counts))  # the row that sees everything above

    @cached_property
    def top(self):
        counts = self.leq.sum(axis=0)
        return int(np.argmax(counts))

    @cached_property
    def heights(self):
        """Longest-chain height of each element, bottom at 0."""
        h = [0] * self.n
        for x in self.topo_order:
            for y in self.upper_covers[x]:
                h[y] = max(h[y], h[x] + 1)
        return tuple(h)

    @cached_property
    def topo_order(self):
        """Elements sorted by a linear extension of the order."""
        return tuple(sorted(range(self.n), key=lambda x: (int(self.leq[:, x].sum()), x)))

    def name_of(self, x):
        return self.names[x] if self.names else str(x)

    def __repr__(self):
        return f"FiniteLattice(n={self.n}, covers={sorted(self.covers)})"

    # -- antichains and width -----------------------------------------

    def width(self):
        """Maximum antichain size, via Dilworth duality.

        A minimum chain cover has n - M chains where M is a maximum
        matching of the strict comparability relation split into a
        bipartite graph; the width equals the cover size.
        """
        n, leq = self.n, self.leq
        succ = [[j for j in range(n) if j != i and leq[i, j]] for i in range(n)]
        match_right = [-1] * n

        def try_augment(i, seen):
            for j in succ[i]:
                if not seen[j]:
                    seen[j] = True
                    if match_right[j] == -1 or try_augment(match_right[j], seen):
                        match_right[j] = i
                        return True
            return False

        matched = 0
        for i in range(n):
            if try_augment(i, [False] * n):
                matched += 1
        return n - matched

    # -- linear-sum decomposition --------------------------------------

    @cached_property
    def cut_edges(self):
        """Covers (u, v) with L = down(u) | up(v): valid linear-sum cuts.

        Cutting anywhere else would leave a summand that is not closed
        under join or meet, so these are exactly the lattice-sum seams.
        """
        n, leq = self.n, self.leq
        cuts = []
        for lo, hi in self.covers:
            if int(leq[:, lo].sum()) + int(leq[hi].sum()) == n:
                cuts.append((lo, hi))
        cuts.sort(key=lambda p: self.heights[p[0]])
        return tuple(cuts)

    def linear_decompose(self):
        """Ordered blocks whose linear sum reconstructs the lattice."""
        starts = [self.bottom] + [v for _, v in self.cut_edges]
        ends = [u for u, _ in self.cut_edges] + [self.top]
        blocks = []
        for pos, (lo, hi) in enumerate(zip(starts, ends)):
            members = tuple(
                x for x in range(self.n) if self.leq[lo, x] and self.leq[x, hi]
            )
            blocks.append(Block(elements=members, position=pos))
        return blocks

    def restrict(self, subset):
        """Induced lattice on a join/meet-closed subset; the rebuilt
        tables re-verify unique bounds."""
        subset = sorted(subset)
        idx = np.asarray(subset, dtype=int)
        sub = self.leq[np.ix_(idx, idx)].copy()
        names = [self.name_of(x) for x in subset] if self.names else None
        return FiniteLattice(sub, names=names, _validated=True), subset

    def relabel(self, perm):
        """Copy with element i renamed to perm[i]."""
        n = self.n
        if sorted(perm) != list(range(n)):
            raise ValueError("not a permutation")
        out = np.zeros_like(self.leq)
        for i in range(n):
            for j in range(n):
                out[perm[i], perm[j]] = self.leq[i, j]
        names = None
        if self.names:
            names = [""] * n
            for i in range(n):
                names[perm[i]] = self.names[i]
        return FiniteLattice(out, names=names, _validated=True)

    # -- irreducibles ---------------------------------------------------

    def join_irreducibles(self):
        return tuple(x for x in range(self.n) if len(self.lower_covers[x]) == 1)

    def meet_irreducibles(self):
        return tuple(x for x in range(self.n) if len(self.upper_covers[x]) == 1)

    def doubly_reducibles(self):
        """Elements that are both a proper join and a proper meet."""
        return tuple(
            x
            for x in range(self.n)
            if len(self.lower_covers[x]) >= 2 and len(self.upper_covers[x]) >= 2
        )

    def irreducibles_and_dr(self):
        return self.join_irreducibles(), self.meet_irreducibles(), self.doubly_reducibles()


def transitive_closure(rel):
    """Reflexive-transitive closure; rejects cycles."""
    n = rel.shape[0]
    closure = rel.copy()
    np.fill_diagonal(closure, True)
    while True:
        nxt = closure | np.matmul(closure, closure)
        if (nxt == closure).all():
            break
        closure = nxt
    sym = closure & closure.T & ~np.eye(n, dtype=bool)
    if sym.any():
        i, j = next(zip(*np.nonzero(sym)))
        raise NotAPartialOrder([int(i), int(j)])
    return closure


def dual(L):
    """The order dual: joins and meets swap roles."""
    return FiniteLattice(L.leq.T.copy(), names=L.names, _validated=True)


# -- isomorphism and canonical forms -----------------------------------


def _joint_colors(mats):
    """Stable WL-style color refinement run jointly over several posets.

    Colors are comparable across the inputs because each round ranks the
    sorted set of signatures of all elements of all inputs.
    """
    infos = []
    for leq in mats:
        n = leq.shape[0]
        down = [frozenset(np.nonzero(leq[:, i])[0].tolist()) - {i} for i in range(n)]
        up = [frozenset(np.nonzero(leq[i])[0].tolist()) - {i} for i in range(n)]
        infos.append((n, down, up))
    colors = [
        [(len(down[i]), len(up[i])) for i in range(n)] for (n, down, up) in infos
    ]
    for _ in range(max((n for n, _, _ in infos), default=1)):
        sigs = []
        for (n, down, up), cols in zip(infos, colors):
            sigs.append(
                [
                    (
                        cols[i],
                        tuple(sorted(cols[j] for j in down[i])),
                        tuple(sorted(cols[j] for j in up[i])),
                    )
                    for i in range(n)
                ]
            )
        palette = {s: r for r, s in enumerate(sorted({s for ss in sigs for s in ss}))}
        new = [[palette[s] for s in ss] for ss in sigs]
        if new == colors:
            break
        colors = new
    return colors


def wl_colors(L):
    return _joint_colors([L.leq])[0]


def canonical_key(L):
    """A relabeling-invariant canonical form of the order matrix.

    Elements are grouped by refined color and the key is the minimum of
    the flattened order matrix over color-respecting relabelings.  When
    the color classes leave too large a search space, one element of the
    first ambiguous class is individualized (every choice is tried, so
    the result stays invariant) and refinement recurses.  Equal keys
    mean isomorphic.
    """
    return _canonical_key_matrix(L.leq)


_DIRECT_SEARCH_LIMIT = 50000


def _refine_colors(down, up, colors):
    while True:
        sigs = [
            (
                colors[i],
                tuple(sorted(colors[j] for j in down[i])),
                tuple(sorted(colors[j] for j in up[i])),
            )
            for i in range(len(colors))
        ]
        palette = {s: r for r, s in enumerate(sorted(set(sigs)))}
        fresh = [palette[s] for s in sigs]
        if fresh == colors:
            return colors
        colors = fresh


def _blocks_of(colors):
    order = sorted(range(len(colors)), key=lambda i: (colors[i], i))
    blocks = []
    for i in order:
        if blocks and colors[blocks[-1][0]] == colors[i]:
            blocks[-1].append(i)
        else:
            blocks.append([i])
    return blocks


def _canonical_key_matrix(leq):
    n = leq.shape[0]
    down = [frozenset(np.nonzero(leq[:, i])[0].tolist()) - {i} for i in range(n)]
    up = [frozenset(np.nonzero(leq[i])[0].tolist()) - {i} for i in range(n)]
    initial = _refine_colors(down, up, [(len(down[i]), len(up[i])) for i in range(n)])

    def search(colors):
        blocks = _blocks_of(colors)
        space = 1
        for block in blocks:
            for factor in range(2, len(block) + 1):
                space *= factor
        if space > _DIRECT_SEARCH_LIMIT:
            target = next(b for b in blocks if len(b) > 1)
            best = None
            for chosen in target:
                seeded = [(c, 1 if i == chosen else 0) for i, c in enumerate(colors)]
                candidate = search(_refine_colors(down, up, seeded))
                if best is None or candidate < best:
                    best = candidate
            return best
        best = None
        perm = []

        def backtrack(bi):
            nonlocal best
            if bi == len(blocks):
                rows = tuple(
                    tuple(bool(leq[perm[a], perm[b]]) for b in range(n))
                    for a in range(n)
                )
                if best is None or rows < best:
                    best = rows
                return
            for choice in permutations(blocks[bi]):
                start = len(perm)
                perm.extend(choice)
                if best is not None:
                    size = len(perm)
                    prefix = tuple(
                        tuple(bool(leq[perm[a], perm[b]]) for b in range(size))
                        for a in range(size)
                    )
                    ref = tuple(row[:size] for row in best[:size])
                    if prefix > ref:
                        del perm[start:]
                        continue
                backtrack(bi + 1)
                del perm[start:]

        backtrack(0)
        return best

    return search(initial)


def find_isomorphism(L1, L2):
    """Lexicographically least order-isomorphism L1 -> L2, or None.

    On finite lattices an order-isomorphism is automatically a lattice
    isomorphism.
    """
    if L1.n != L2.n:
        return None
    n = L1.n
    c1, c2 = _joint_colors([L1.leq, L2.leq])
    if sorted(c1) != sorted(c2):
        return None
    a, b = L1.leq, L2.leq
    f = [-1] * n
    used = [False] * n

    def backtrack(i):
        if i == n:
            return True
        for j in range(n):
            if used[j] or c1[i] != c2[j]:
                continue
            if all(a[i, k] == b[j, f[k]] and a[k, i] == b[f[k], j] for k in range(i)):
                f[i] = j
                used[j] = True
                if backtrack(i + 1):
                    return True
                used[j] = False
                f[i] = -1
        return False

    return f if backtrack(0) else None


def is_isomorphic(L1, L2):
    return find_isomorphism(L1, L2)
