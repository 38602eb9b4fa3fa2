"""Cubic interval DP for the exact prefix-metric optimum of a single carry tree."""

from __future__ import annotations

from .circuit import PrefixBuilder, as_profile

DEFAULT_LIMIT = 2048


class DpTable:
    """Optimal delays ``best[i][j]`` and split points ``split[i][j]`` (0-based, inclusive).

    For ``i < j`` the right child covers ``i..split`` and the left child
    ``split+1..j``.
    """

    def __init__(self, times):
        n = len(times)
        best = [[0] * n for _ in range(n)]
        split = [[-1] * n for _ in range(n)]
        for i, t in enumerate(times):
            best[i][i] = t
        for length in range(2, n + 1):
            for i in range(n - length + 1):
                j = i + length - 1
                row_i = best[i]
                val = None
                arg = -1
                for l in range(i, j):
                    right = row_i[l] + 2
                    left = best[l + 1][j] + 1
                    d = right if right > left else left
                    if val is None or d < val:
                        val, arg = d, l
                row_i[j] = val
                split[i][j] = arg
        self.n = n
        self.best = best
        self.split = split

    def optimum(self, i=0, j=None):
        return self.best[i][self.n - 1 if j is None else j]

    def tree(self):
        """Reconstruct the optimal tree, smallest split on ties."""
        b = PrefixBuilder(self.n)
        # Post-order without recursion: children are added before parents.
        out = {}
        stack = [(0, self.n - 1, False)]
        while stack:
            i, j, ready = stack.pop()
            if i == j:
                out[i, j] = i
                continue
            l = self.split[i][j]
            if ready:
                out[i, j] = b.add(out[l + 1, j], out[i, l])
            else:
                stack.append((i, j, True))
                stack.append((l + 1, j, False))
                stack.append((i, l, False))
        return b.tree(out[0, self.n - 1])


def dp_optimal(a, limit=DEFAULT_LIMIT):
    """Return ``(d_star, tree)``: the minimum prefix-metric delay and a tree attaining it."""
    prof = as_profile(a)
    if prof.n > limit:
        raise ValueError(f"n = {prof.n} exceeds the DP limit of {limit}")
    table = DpTable(prof.times)
    return table.optimum(), table.tree()


def _pareto(points):
    """Keep (g, p, back) entries not dominated in both delays."""
    points.sort(key=lambda e: (e[0], e[1]))
    kept = []
    best_p = None
    for e in points:
        if best_p is None or e[1] < best_p:
            kept.append(e)
            best_p = e[1]
    return kept


def dp_logic_optimal(a, limit=256):
    """Exact minimum *logic* delay over all prefix trees, with a witness tree.

    Each interval keeps the Pareto front of (generate delay, propagate
    delay) pairs; a gadget maps left (gl, pl) and right (gr, pr) to
    ``(max(gl + 1, max(pl, gr) + 2), max(pl, pr) + 1)``.
    """
    prof = as_profile(a)
    n = prof.n
    if n > limit:
        raise ValueError(f"n = {n} exceeds the logic DP limit of {limit}")
    front = {}
    for i, t in enumerate(prof.times):
        front[i, i] = [(t, t, None)]
    for length in range(2, n + 1):
        for i in range(n - length + 1):
            j = i + length - 1
            cand = []
            for l in range(i, j):
                rights = front[i, l]
                lefts = front[l + 1, j]
                for ri, (gr, pr, _) in enumerate(rights):
                    for li, (gl, pl, _) in enumerate(lefts):
                        inner = (pl if pl > gr else gr) + 2
                        g = gl + 1 if gl + 1 > inner else inner
                        p = (pl if pl > pr else pr) + 1
                        cand.append((g, p, (l, li, ri)))
            front[i, j] = _pareto(cand)
    best = front[0, n - 1][0]

    b = PrefixBuilder(n)

    def build(i, j, idx):
        back = front[i, j][idx][2]
        if back is None:
            return i
        l, li, ri = back
        right = build(i, l, ri)
        left = build(l + 1, j, li)
        return b.add(left, right)

    root = build(0, n - 1, 0)
    return best[0], b.tree(root)
