"""Latin squares, small finite fields, and (r, s)-nets built from MOLS."""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache

from .hypercore import MultiHypergraph

# Monic irreducible polynomials, low-order coefficient first, without the leading 1.
IRREDUCIBLE = {
    4: (2, (1, 1)),        # x^2 + x + 1
    8: (2, (1, 1, 0)),     # x^3 + x + 1
    9: (3, (1, 0)),        # x^2 + 1
    16: (2, (1, 1, 0, 0)),  # x^4 + x + 1
    25: (5, (3, 2)),       # x^2 + 2x + 3
    27: (3, (1, 2, 0)),    # x^3 + 2x + 1
}


@dataclass(frozen=True)
class LatinSquare:
    n: int
    grid: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        grid = tuple(tuple(int(x) for x in row) for row in self.grid)
        object.__setattr__(self, "grid", grid)
        symbols = list(range(self.n))
        if len(grid) != self.n or any(sorted(row) != symbols for row in grid):
            raise ValueError("every row must be a permutation of 0..n-1")
        if any(sorted(col) != symbols for col in zip(*grid)):
            raise ValueError("every column must be a permutation of 0..n-1")

    def transpose(self) -> "LatinSquare":
        return LatinSquare(self.n, tuple(zip(*self.grid)))


def cyclic_latin_square(n: int) -> LatinSquare:
    """Cayley table of Z_n: entry (i, j) is (i + j) mod n."""
    if n < 1:
        raise ValueError("order must be positive")
    return LatinSquare(n, tuple(tuple((i + j) % n for j in range(n)) for i in range(n)))


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


class GF:
    """Finite field of order q with elements encoded as 0..q-1.

    Prime fields use integers mod p; extension fields encode a polynomial by
    its base-p digits (lowest degree first) and multiply modulo a fixed
    irreducible polynomial.
    """

    def __init__(self, q: int):
        if _is_prime(q):
            self.p, self.k = q, 1
            self.modulus: tuple[int, ...] = ()
        elif q in IRREDUCIBLE:
            self.p, self.modulus = IRREDUCIBLE[q]
            self.k = len(self.modulus)
        else:
            raise ValueError(f"unsupported field order {q}")
        self.q = q
        self._add, self._mul = self._tables()

    def _digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return out

    def _encode(self, digits: Sequence[int]) -> int:
        return sum(d * self.p**i for i, d in enumerate(digits))

    def _poly_mul(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
        # x^k = -(modulus) reduction, highest degree first
        for deg in range(2 * k - 2, k - 1, -1):
            c = prod[deg]
            if c:
                prod[deg] = 0
                for i, m in enumerate(self.modulus):
                    prod[deg - k + i] = (prod[deg - k + i] - c * m) % p
        return self._encode(prod[:k])

    def _tables(self):
        q = self.q
        if self.k == 1:
            add = [[(a + b) % q for b in range(q)] for a in range(q)]
            mul = [[(a * b) % q for b in range(q)] for a in range(q)]
        else:
            add = [
                [self._encode([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])
                 for b in range(q)]
                for a in range(q)
            ]
            mul = [[self._poly_mul(a, b) for b in range(q)] for a in range(q)]
        return add, mul

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)


def field_mols(q: int, count: int) -> list[LatinSquare]:
    """``count`` mutually orthogonal Latin squares L_a[i][j] = a*i + j over GF(q), a = 1..count."""
    if not 1 <= count <= q - 1:
        raise ValueError(f"count must lie in 1..{q - 1}")
    f = field(q)
    squares = []
    for a in range(1, count + 1):
        grid = tuple(tuple(f.add(f.mul(a, i), j) for j in range(q)) for i in range(q))
        squares.append(LatinSquare(q, grid))
    return squares


def are_orthogonal(first: LatinSquare, second: LatinSquare) -> bool:
    if first.n != second.n:
        raise ValueError("orthogonality needs squares of equal order")
    n = first.n
    pairs = {
        (first.grid[i][j], second.grid[i][j]) for i in range(n) for j in range(n)
    }
    return len(pairs) == n * n


@dataclass(frozen=True)
class Net:
    """An (r, s)-net: hypergraph on r*r vertices with s parallel classes of r edges.

    Vertex ``i*r + j`` is the cell in row i and column j.
    """

    r: int
    s: int
    hypergraph: MultiHypergraph
    parallel_classes: tuple[tuple[int, ...], ...]
    source_mols: tuple[LatinSquare, ...] = ()


def net_from_mols(r: int, mols: Sequence[LatinSquare]) -> Net:
    """Rows, columns, then one parallel class per square (its symbol level sets)."""
    if r < 1:
        raise ValueError("order must be positive")
    for sq in mols:
        if sq.n != r:
            raise ValueError(f"square of order {sq.n} does not match r={r}")
    for a, b in itertools.combinations(mols, 2):
        if not are_orthogonal(a, b):
            raise ValueError("input squares are not mutually orthogonal")
    edges: list[tuple[int, ...]] = []
    classes: list[tuple[int, ...]] = []

    def add_class(blocks: list[list[int]]) -> None:
        start = len(edges)
        edges.extend(tuple(sorted(b)) for b in blocks)
        classes.append(tuple(range(start, len(edges))))

    add_class([[i * r + j for j in range(r)] for i in range(r)])
    add_class([[i * r + j for i in range(r)] for j in range(r)])
    for sq in mols:
        levels: list[list[int]] = [[] for _ in range(r)]
        for i in range(r):
            for j in range(r):
                levels[sq.grid[i][j]].append(i * r + j)
        add_class(levels)
    hg = MultiHypergraph(r * r, tuple(edges))
    return Net(r, len(classes), hg, tuple(classes), tuple(mols))


def validate_net(net: Net) -> bool:
    """Recheck every net invariant by direct enumeration."""
    g, r = net.hypergraph, net.r
    if g.num_vertices != r * r or g.num_edges != r * net.s or len(net.parallel_classes) != net.s:
        return False
    if sorted(e for c in net.parallel_classes for e in c) != list(range(g.num_edges)):
        return False
    for cls in net.parallel_classes:
        if len(cls) != r:
            return False
        covered = [v for e in cls for v in g.edges[e]]
        if sorted(covered) != list(range(r * r)):
            return False
    for ci, cj in itertools.combinations(net.parallel_classes, 2):
        for e in ci:
            for f in cj:
                if len(set(g.edges[e]) & set(g.edges[f])) != 1:
                    return False
    return True


def mols_from_net(net: Net) -> list[LatinSquare]:
    """Recover the s-2 squares: cell (i, j) is the vertex shared by row i and column j."""
    g, r = net.hypergraph, net.r
    rows, cols = net.parallel_classes[0], net.parallel_classes[1]
    cell = [[0] * r for _ in range(r)]
    for i, e in enumerate(rows):
        for j, f in enumerate(cols):
            (v,) = set(g.edges[e]) & set(g.edges[f])
            cell[i][j] = v
    squares = []
    for cls in net.parallel_classes[2:]:
        level = {v: k for k, e in enumerate(cls) for v in g.edges[e]}
        squares.append(LatinSquare(r, tuple(tuple(level[cell[i][j]] for j in range(r)) for i in range(r))))
    return squares


def affine_plane(q: int) -> Net:
    """The (q, q+1)-net from the full set of q-1 field squares."""
    return net_from_mols(q, field_mols(q, q - 1) if q > 1 else [])


def field_net(r: int, s: int) -> Net:
    """An (r, s)-net from field squares; s <= 3 works for every r via the cyclic square."""
    if s < 2:
        raise ValueError("a net needs at least two parallel classes")
    if s == 2:
        return net_from_mols(r, [])
    if s == 3 and not (_is_prime(r) or r in IRREDUCIBLE):
        return net_from_mols(r, [cyclic_latin_square(r)])
    if s - 2 > r - 1:
        raise ValueError(f"no field construction of an ({r}, {s})-net")
    return net_from_mols(r, field_mols(r, s - 2))
