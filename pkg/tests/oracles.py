"""Independent reference implementations used to cross-check the package.

Everything here deliberately avoids the package's algorithms: products go
through repeated set merging instead of union-find, planarity through an
explicit nesting stack instead of chord interleaving, annularity through
direct row relabeling, and counts through recurrences distinct from the
closed forms in the library.  Only the public Diagram constructor and the
signed block view are shared, since tests must talk about the same
objects.
"""

from __future__ import annotations

import itertools

from brauerkit import Diagram, diagram


def signed_blocks(a):
    return a.signed_blocks


# ---------------------------------------------------------------------------
# multiplication by repeated merging


def oracle_multiply(a, b):
    """Stack a over b, merging blocks through the shared middle row."""
    assert a.n == b.n
    n = a.n
    parts = []
    for block in a.signed_blocks:
        parts.append({("bot", p) if p > 0 else ("mid", -p) for p in block})
    for block in b.signed_blocks:
        parts.append({("mid", p) if p > 0 else ("top", -p) for p in block})
    changed = True
    while changed:
        changed = False
        for i in range(len(parts)):
            if parts[i] is None:
                continue
            for j in range(i + 1, len(parts)):
                if parts[j] is None or not (parts[i] & parts[j]):
                    continue
                parts[i] |= parts[j]
                parts[j] = None
                changed = True
    out = []
    for part in parts:
        if part is None:
            continue
        keep = [p for layer, p in part if layer == "bot"]
        keep += [-p for layer, p in part if layer == "top"]
        if keep:
            out.append(keep)
    return diagram(n, out)


# ---------------------------------------------------------------------------
# enumeration


def oracle_perfect_matchings(n):
    """All ways to pair up the 2n signed points, as diagrams."""
    points = list(range(1, n + 1)) + list(range(-1, -n - 1, -1))

    def rec(rest):
        if not rest:
            yield []
            return
        first, tail = rest[0], rest[1:]
        for k, other in enumerate(tail):
            for more in rec(tail[:k] + tail[k + 1:]):
                yield [[first, other]] + more

    return {diagram(n, blocks) for blocks in rec(points)}


def oracle_partial_matchings(n):
    points = list(range(1, n + 1)) + list(range(-1, -n - 1, -1))

    def rec(rest):
        if not rest:
            yield []
            return
        first, tail = rest[0], rest[1:]
        for more in rec(tail):
            yield [[first]] + more
        for k, other in enumerate(tail):
            for more in rec(tail[:k] + tail[k + 1:]):
                yield [[first, other]] + more

    return {diagram(n, blocks) for blocks in rec(points)}


def oracle_set_partitions(n):
    points = list(range(1, n + 1)) + list(range(-1, -n - 1, -1))

    def rec(rest):
        if not rest:
            yield []
            return
        first, tail = rest[0], rest[1:]
        for more in rec(tail):
            yield [[first]] + more
            for i in range(len(more)):
                yield more[:i] + [more[i] + [first]] + more[i + 1:]

    return {diagram(n, blocks) for blocks in rec(points)}


def circle_order(n):
    """Points in boundary order: bottom left to right, then top right to left."""
    return list(range(1, n + 1)) + list(range(-n, 0))


def oracle_noncrossing_perfect(n):
    """Non-crossing perfect matchings in the boundary order, as diagrams."""
    order = circle_order(n)

    def rec(segment):
        if not segment:
            yield []
            return
        first = segment[0]
        for k in range(1, len(segment), 2):
            left, right = segment[1:k], segment[k + 1:]
            for lm in rec(left):
                for rm in rec(right):
                    yield [[first, segment[k]]] + lm + rm

    return {diagram(n, blocks) for blocks in rec(order)}


# ---------------------------------------------------------------------------
# planarity and annularity


def oracle_planar_pairs(a):
    """Stack-nesting planarity test for diagrams with blocks of size <= 2."""
    pos = {p: i for i, p in enumerate(circle_order(a.n))}
    arcs = []
    for block in a.signed_blocks:
        if len(block) == 1:
            continue
        if len(block) != 2:
            raise ValueError("oracle only handles pair diagrams")
        i, j = sorted(pos[p] for p in block)
        arcs.append((i, j))
    stack = []
    open_at = {i: j for i, j in arcs}
    close_at = {j: i for i, j in arcs}
    for t in range(2 * a.n):
        if t in close_at:
            if not stack or stack[-1] != t:
                return False
            stack.pop()
        if t in open_at:
            stack.append(open_at[t])
    return not stack


def oracle_rotate(a, bottom, top):
    """Advance bottom labels by `bottom` and top labels by `top` (mod n)."""
    n = a.n
    out = []
    for block in a.signed_blocks:
        nb = []
        for p in block:
            if p > 0:
                nb.append((p - 1 + bottom) % n + 1)
            else:
                nb.append(-((-p - 1 + top) % n + 1))
        out.append(nb)
    return diagram(n, out)


def oracle_annular(a):
    n = a.n
    return any(
        oracle_planar_pairs(oracle_rotate(a, p, q))
        for p in range(n) for q in range(n)
    )


# ---------------------------------------------------------------------------
# counting recurrences


def oracle_catalan(n):
    # segment recurrence, not the binomial closed form
    table = [1]
    for m in range(1, n + 1):
        table.append(sum(table[k] * table[m - 1 - k] for k in range(m)))
    return table[n]


def oracle_double_factorial_odd(n):
    # pairing recurrence f(n) = (2n-1) f(n-1)
    if n <= 0:
        return 1
    return (2 * n - 1) * oracle_double_factorial_odd(n - 1)


def oracle_involutions(m):
    # sum over the number of 2-cycles, not the two-term recurrence
    import math
    total = 0
    for k in range(m // 2 + 1):
        total += math.factorial(m) // (
            math.factorial(k) * (2 ** k) * math.factorial(m - 2 * k)
        )
    return total


def oracle_bell(m):
    # Stirling-number triangle, not the Bell triangle
    stirling = [[1]]
    for row in range(1, m + 1):
        prev = stirling[-1]
        cur = [0] * (row + 1)
        for k in range(1, row + 1):
            above = prev[k] if k < len(prev) else 0
            cur[k] = prev[k - 1] + k * above
        stirling.append(cur)
    return sum(stirling[m])


def oracle_motzkin(m):
    # M(m) counts partial non-crossing pairings of m linear points
    table = [1, 1]
    for k in range(2, m + 1):
        table.append(
            table[k - 1]
            + sum(table[i] * table[k - 2 - i] for i in range(k - 1))
        )
    return table[m]


def oracle_random_pair_diagram(n, rng):
    """Random partial matching, independent of the library samplers."""
    points = list(range(1, n + 1)) + list(range(-1, -n - 1, -1))
    rng.shuffle(points)
    blocks = []
    while points:
        p = points.pop()
        if points and rng.random() < 0.7:
            blocks.append([p, points.pop()])
        else:
            blocks.append([p])
    return diagram(n, blocks)
