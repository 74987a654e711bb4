"""Partition diagrams on a two-row boundary, with the *-semigroup product.

A diagram of degree n is a set partition of the 2n boundary points: bottom
row 1..n and top row 1'..n'.  Internally a point is an integer code in
0..2n-1 (bottom i -> i-1, top i -> n+i-1) so the natural integer order is
the canonical point order bottom 1 < ... < bottom n < top 1 < ... < top n.
In the public factory `diagram` and in `signed_blocks`, bottom i is the
positive integer i and top i is -i.

Blocks are stored as sorted tuples, listed by minimum point; singletons are
kept explicitly.  Equality and hashing use only this canonical form, and
values are immutable, so diagrams are safe to share and to use as dict keys.

The product a*b stacks a under b, joins a's top row to b's bottom row, and
reads off the induced partition on the outer rows.  Text round-trip uses
the v1 format  "n:[{1,1'},{2,2'}]"  (top points primed).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import (
    BadDegree,
    BadIndex,
    DegreeMismatch,
    NotABijection,
    ParseError,
    UnsupportedBlockSize,
)


class StringKind(Enum):
    THROUGH = "through"
    INNER = "inner"
    OUTER = "outer"
    BOTTOM_SINGLETON = "bottom-singleton"
    TOP_SINGLETON = "top-singleton"
    OTHER = "other"


class Parity(Enum):
    EVEN = "even"
    ODD = "odd"
    MIXED = "mixed"
    RANK_ZERO = "rank-zero"


@dataclass(frozen=True)
class Diagram:
    n: int
    blocks: tuple[tuple[int, ...], ...]

    @property
    def signed_blocks(self):
        """Blocks as tuples of signed indices: bottom i -> i, top i -> -i."""
        n = self.n
        return tuple(
            tuple(p + 1 if p < n else -(p - n + 1) for p in b) for b in self.blocks
        )

    @property
    def rank(self):
        """Number of blocks meeting both rows."""
        n = self.n
        count = 0
        for b in self.blocks:
            if b[0] < n and b[-1] >= n:
                count += 1
        return count

    def dom(self):
        """Bottom indices lying in through blocks, ascending."""
        n = self.n
        out = []
        for b in self.blocks:
            if b[0] < n and b[-1] >= n:
                out.extend(p + 1 for p in b if p < n)
        return tuple(sorted(out))

    def ran(self):
        """Top indices lying in through blocks, ascending."""
        n = self.n
        out = []
        for b in self.blocks:
            if b[0] < n and b[-1] >= n:
                out.extend(p - n + 1 for p in b if p >= n)
        return tuple(sorted(out))

    def star(self):
        """The involution swapping bottom i with top i."""
        n = self.n
        return Diagram(
            n, _canon(tuple(p + n if p < n else p - n for p in b) for b in self.blocks)
        )

    def __mul__(self, other):
        return multiply(self, other)

    def __repr__(self):
        return f"Diagram({encode(self)!r})"


def _canon(blocks):
    """Sort points within blocks and blocks by minimum point."""
    return tuple(sorted(tuple(sorted(b)) for b in blocks))


def diagram(n, blocks):
    """Build a degree-n diagram from blocks of signed indices.

    Bottom i is written i, top i is written -i.  The blocks must partition
    {1..n, -1..-n}; violations raise BadIndex.
    """
    if not isinstance(n, int) or n < 1:
        raise BadDegree(f"degree must be a positive integer, got {n!r}")
    seen = set()
    coded = []
    for block in blocks:
        cb = []
        for p in block:
            if not isinstance(p, int) or p == 0 or abs(p) > n:
                raise BadIndex(f"point {p!r} out of range for degree {n}")
            code = p - 1 if p > 0 else n + (-p) - 1
            if code in seen:
                raise BadIndex(f"point {p!r} appears twice")
            seen.add(code)
            cb.append(code)
        if not cb:
            raise BadIndex("empty block")
        coded.append(tuple(cb))
    if len(seen) != 2 * n:
        raise BadIndex("blocks do not cover all 2n points")
    return Diagram(n, _canon(coded))


def multiply(a, b):
    """Diagram product: stack a under b and join a's top row to b's bottom row.

    Connected components are computed by union-find over the 3n points of
    the stacked picture; components not meeting an outer row vanish.
    """
    if a.n != b.n:
        raise DegreeMismatch(f"degree {a.n} vs {b.n}")
    n = a.n
    parent = list(range(3 * n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for block in a.blocks:
        r = find(block[0])
        for p in block[1:]:
            rp = find(p)
            if rp != r:
                parent[rp] = r
    for block in b.blocks:
        r = find(block[0] + n)
        for p in block[1:]:
            rp = find(p + n)
            if rp != r:
                parent[rp] = r

    groups = {}
    for p in range(n):
        groups.setdefault(find(p), []).append(p)
    for p in range(2 * n, 3 * n):
        groups.setdefault(find(p), []).append(p - n)
    return Diagram(n, tuple(sorted(tuple(g) for g in groups.values())))


def star(a):
    return a.star()


def identity(n):
    if n < 1:
        raise BadDegree(f"degree must be >= 1, got {n}")
    return Diagram(n, tuple((k, k + n) for k in range(n)))


def rotation(n):
    """The unit rotation: bottom k joined to top k+1 (mod n)."""
    if n < 1:
        raise BadDegree(f"degree must be >= 1, got {n}")
    return Diagram(n, _canon((k, n + (k + 1) % n) for k in range(n)))


def contraction(n, i, j):
    """Projection pairing {i,j} on both rows, identity elsewhere.  Needs i < j."""
    if n < 2:
        raise BadDegree(f"contractions need degree >= 2, got {n}")
    if not (1 <= i < j <= n):
        raise BadIndex(f"need 1 <= i < j <= n, got i={i}, j={j}")
    blocks = [(i - 1, j - 1), (n + i - 1, n + j - 1)]
    blocks += [(k - 1, n + k - 1) for k in range(1, n + 1) if k not in (i, j)]
    return Diagram(n, _canon(blocks))


def adjacent_contraction(n, i):
    """Contraction of the cyclically adjacent pair {i, i+1}; i = n wraps to {n, 1}."""
    if not (1 <= i <= n):
        raise BadIndex(f"need 1 <= i <= n, got {i}")
    j = i % n + 1
    return contraction(n, min(i, j), max(i, j))


def double_contraction(n):
    """Projection contracting {2,3} and {n-1,n}; defined for even n >= 6."""
    if n < 6 or n % 2:
        raise BadDegree(f"defined for even degree >= 6, got {n}")
    special = {2, 3, n - 1, n}
    blocks = [(1, 2), (n + 1, n + 2), (n - 2, n - 1), (2 * n - 2, 2 * n - 1)]
    blocks += [(k - 1, n + k - 1) for k in range(1, n + 1) if k not in special]
    return Diagram(n, _canon(blocks))


def partial_identity(n, i):
    """Rank n-1 partial identity: point i unmatched on both rows."""
    if not (1 <= i <= n):
        raise BadIndex(f"need 1 <= i <= n, got {i}")
    blocks = [(i - 1,), (n + i - 1,)]
    blocks += [(k - 1, n + k - 1) for k in range(1, n + 1) if k != i]
    return Diagram(n, _canon(blocks))


def cascade(n):
    """Closed form of the descending product of adjacent contractions n-1 .. 1.

    Through strings step k -> k+2, with a bottom cap {n-1,n} and a top cap
    {1',2'}.  Defined for n >= 3; `named_element_products` rebuilds it from
    the defining product for verification.
    """
    if n < 3:
        raise BadDegree(f"defined for degree >= 3, got {n}")
    blocks = [(n - 2, n - 1), (n, n + 1)]
    blocks += [(k - 1, n + k + 1) for k in range(1, n - 1)]
    return Diagram(n, _canon(blocks))


def local_rotation(n):
    """Unit of the local monoid at the {n-1,n} contraction: k -> k+2 on 1..n-2.

    Through strings advance by two positions modulo n-2; both rows cap
    {n-1,n}.  For even n its power (n-2)/2 is the adjacent contraction at
    n-1; for odd n it generates a cycle of order n-2.
    """
    if n < 3:
        raise BadDegree(f"defined for degree >= 3, got {n}")
    m = n - 2
    blocks = [(n - 2, n - 1), (2 * n - 2, 2 * n - 1)]
    blocks += [(k - 1, n + ((k + 1) % m)) for k in range(1, m + 1)]
    return Diagram(n, _canon(blocks))


def capped_rotation(n):
    """Rotation with one string broken into caps; defined for odd n >= 3.

    Through strings are k -> k+1 for k <= n-2, plus bottom cap {n-1,n} and
    top cap {1',n'}.  Acts as the single twist on singular elements with a
    suitable outer string.
    """
    if n < 3 or n % 2 == 0:
        raise BadDegree(f"defined for odd degree >= 3, got {n}")
    blocks = [(n - 2, n - 1), (n, 2 * n - 1)]
    blocks += [(k - 1, n + k) for k in range(1, n - 1)]
    return Diagram(n, _canon(blocks))


def named_element_products(n):
    """Recompute the named elements from their defining products.

    Returns a dict with keys "cascade", "local_rotation" and (odd n only)
    "capped_rotation"; callers assert these equal the closed forms.
    """
    if n < 3:
        raise BadDegree(f"defined for degree >= 3, got {n}")
    casc = adjacent_contraction(n, n - 1)
    for i in range(n - 2, 0, -1):
        casc = casc * adjacent_contraction(n, i)
    out = {"cascade": casc}
    xi = casc * adjacent_contraction(n, n) * adjacent_contraction(n, n - 1)
    out["local_rotation"] = xi
    if n % 2:
        tau = identity(n)
        for _ in range((n - 1) // 2):
            tau = tau * xi
        out["capped_rotation"] = tau * adjacent_contraction(n, n)
    return out


def from_permutation(n, images):
    """Embed a permutation given as the sequence (image of 1, ..., image of n)."""
    images = tuple(images)
    if len(images) != n or sorted(images) != list(range(1, n + 1)):
        raise NotABijection(f"not a permutation of 1..{n}: {images!r}")
    return Diagram(n, _canon((k, n + images[k] - 1) for k in range(n)))


def from_transformation(n, images):
    """Embed a full transformation: block {k'} u preimage(k) for each k.

    Multiplicative for maps acting on the right (apply left factor first).
    """
    images = tuple(images)
    if len(images) != n:
        raise BadIndex(f"expected {n} images, got {len(images)}")
    for v in images:
        if not (1 <= v <= n):
            raise BadIndex(f"image {v!r} out of range 1..{n}")
    blocks = []
    for k in range(1, n + 1):
        blocks.append(tuple([n + k - 1] + [j for j in range(n) if images[j] == k]))
    return Diagram(n, _canon(blocks))


# ---------------------------------------------------------------------------
# classification, parity, families of block shapes


def classify_strings(a):
    """Map each block to its StringKind.

    A block meeting both rows is THROUGH regardless of size; one-sided
    blocks split into INNER/OUTER (size >= 2) and the two singleton kinds.
    OTHER is reserved.
    """
    n = a.n
    out = {}
    for b in a.blocks:
        has_bot = b[0] < n
        has_top = b[-1] >= n
        if has_bot and has_top:
            kind = StringKind.THROUGH
        elif len(b) == 1:
            kind = StringKind.BOTTOM_SINGLETON if has_bot else StringKind.TOP_SINGLETON
        else:
            kind = StringKind.INNER if has_bot else StringKind.OUTER
        out[b] = kind
    return out


def parity(a):
    """EVEN/ODD/MIXED over through strings {i, j'} (even iff i = j mod 2).

    Rank-zero diagrams are RANK_ZERO.  A through block whose two sides mix
    index parities counts as mixed.
    """
    n = a.n
    kinds = set()
    for b in a.blocks:
        if b[0] < n and b[-1] >= n:
            bot = {(p + 1) % 2 for p in b if p < n}
            top = {(p - n + 1) % 2 for p in b if p >= n}
            if len(bot) == 1 and len(top) == 1:
                kinds.add(bot == top)
            else:
                kinds.add(True)
                kinds.add(False)
    if not kinds:
        return Parity.RANK_ZERO
    if kinds == {True}:
        return Parity.EVEN
    if kinds == {False}:
        return Parity.ODD
    return Parity.MIXED


def is_projection(a):
    return a.star() == a and a * a == a


def is_brauer(a):
    return all(len(b) == 2 for b in a.blocks)


def is_partial_brauer(a):
    return all(len(b) <= 2 for b in a.blocks)


def _chords(a):
    # boundary positions: bottom i -> i-1, top i -> 2n - i (clockwise circle)
    n = a.n
    chords = []
    for b in a.blocks:
        if len(b) > 2:
            raise UnsupportedBlockSize(f"block of size {len(b)} in {encode(a)}")
        if len(b) == 2:
            p, q = (x if x < n else 2 * n - (x - n + 1) for x in b)
            chords.append((p, q) if p < q else (q, p))
    return chords


def is_planar(a):
    """True when the chord picture is non-crossing in the disk.

    Boundary order is bottom 1..n then top n..1; two chords cross iff their
    endpoints interleave.  Only defined for blocks of size <= 2.
    """
    chords = _chords(a)
    for idx, (p, q) in enumerate(chords):
        for r, s in chords[idx + 1 :]:
            if (p < r < q) != (p < s < q):
                return False
    return True


def is_jones(a):
    return is_brauer(a) and is_planar(a)


def _relabel(a, dbot, dtop):
    """Rotate bottom indices by dbot and top indices by dtop (mod n)."""
    n = a.n
    blocks = [
        tuple(
            (p + dbot) % n if p < n else n + (p - n + dtop) % n for p in b
        )
        for b in a.blocks
    ]
    return Diagram(n, _canon(blocks))


def shift(a, k):
    """Conjugate by the k-th rotation power: every index advances by k (mod n)."""
    return _relabel(a, k, k)


def twist(a, k):
    """Right-multiply by the k-th rotation power: top indices advance by k (mod n)."""
    return _relabel(a, 0, k)


def is_annular(a):
    """True when some pair of row rotations makes the diagram planar.

    This is the operational annularity test: rotating the bottom row by p
    and the top row by q realizes the rotation sandwich, and the diagram
    embeds in the annulus iff some (p, q) gives a planar picture.  Applied
    uniformly, including at rank zero.  Needs blocks of size <= 2.
    """
    if not is_partial_brauer(a):
        raise UnsupportedBlockSize("annularity is only defined for blocks of size <= 2")
    n = a.n
    for p in range(n):
        for q in range(n):
            if is_planar(_relabel(a, p, q)):
                return True
    return False


# ---------------------------------------------------------------------------
# text round-trip (format v1)


def encode(a):
    """Canonical text form, e.g. "2:[{1,1'},{2,2'}]" (top points primed)."""
    n = a.n
    parts = []
    for b in a.blocks:
        pts = ",".join(str(p + 1) if p < n else f"{p - n + 1}'" for p in b)
        parts.append("{" + pts + "}")
    return f"{n}:[" + ",".join(parts) + "]"


def decode(text, n=None):
    """Parse the v1 text form; inverse of `encode` on canonical output.

    Raises ParseError with the offset of the first problem.  When n is
    given, the embedded degree must match it.
    """
    pos = 0
    digits = ""
    while pos < len(text) and text[pos].isdigit():
        digits += text[pos]
        pos += 1
    if not digits:
        raise ParseError("expected degree", pos)
    degree = int(digits)
    if degree < 1:
        raise ParseError("degree must be >= 1", 0)
    if n is not None and degree != n:
        raise ParseError(f"degree {degree} does not match expected {n}", 0)
    if pos >= len(text) or text[pos] != ":":
        raise ParseError("expected ':'", pos)
    pos += 1
    if pos >= len(text) or text[pos] != "[":
        raise ParseError("expected '['", pos)
    pos += 1
    blocks = []
    seen = {}
    if pos < len(text) and text[pos] == "]":
        raise ParseError("empty block list", pos)
    while True:
        if pos >= len(text) or text[pos] != "{":
            raise ParseError("expected '{'", pos)
        pos += 1
        block = []
        while True:
            start = pos
            digits = ""
            while pos < len(text) and text[pos].isdigit():
                digits += text[pos]
                pos += 1
            if not digits:
                raise ParseError("expected point index", pos)
            idx = int(digits)
            if not (1 <= idx <= degree):
                raise ParseError(f"index {idx} out of range 1..{degree}", start)
            primed = pos < len(text) and text[pos] == "'"
            if primed:
                pos += 1
            signed = -idx if primed else idx
            if signed in seen:
                raise ParseError(f"point {text[start:pos]} repeated", start)
            seen[signed] = start
            block.append(signed)
            if pos < len(text) and text[pos] == ",":
                pos += 1
                continue
            break
        if pos >= len(text) or text[pos] != "}":
            raise ParseError("expected '}'", pos)
        pos += 1
        blocks.append(block)
        if pos < len(text) and text[pos] == ",":
            pos += 1
            continue
        break
    if pos >= len(text) or text[pos] != "]":
        raise ParseError("expected ']'", pos)
    pos += 1
    if pos != len(text):
        raise ParseError("trailing input", pos)
    if len(seen) != 2 * degree:
        raise ParseError("blocks do not cover all 2n points", len(text) - 1)
    return diagram(degree, blocks)


# ---------------------------------------------------------------------------
# random elements (for property suites; any easy-to-sample distribution)


def random_partial_brauer(n, rng, pair_prob=0.7):
    """Random degree-n diagram with blocks of size <= 2."""
    pts = list(range(2 * n))
    rng.shuffle(pts)
    blocks = []
    while pts:
        p = pts.pop()
        if pts and rng.random() < pair_prob:
            q = pts.pop(rng.randrange(len(pts)))
            blocks.append((p, q))
        else:
            blocks.append((p,))
    return Diagram(n, _canon(blocks))


def random_brauer(n, rng):
    """Random degree-n diagram with all blocks of size 2 (uniform matching)."""
    pts = list(range(2 * n))
    rng.shuffle(pts)
    blocks = [(pts[i], pts[i + 1]) for i in range(0, 2 * n, 2)]
    return Diagram(n, _canon(blocks))


def random_partition_diagram(n, rng):
    """Random degree-n diagram with arbitrary blocks (random growth string)."""
    blocks = []
    for p in range(2 * n):
        k = rng.randrange(len(blocks) + 1)
        if k == len(blocks):
            blocks.append([p])
        else:
            blocks[k].append(p)
    return Diagram(n, _canon(blocks))
