"""Immutable graphs, bitset vertex sets, partitions, and exact density/energy.

All quantities that the rest of the library compares against thresholds are
carried as ``fractions.Fraction``: the regularity conditions are strict
inequalities, so no floating point is allowed anywhere near a verdict.
Vertex sets are plain integer bitmasks (bit v = vertex v), which keeps the
density kernel a handful of ``&`` / ``bit_count`` operations.
"""

from fractions import Fraction

from .errors import (
    BadEpsilonError,
    BadParamsError,
    EmptySetError,
    InvalidPartitionError,
)


def as_fraction(value):
    """Convert to an exact Fraction.

    Accepts Fraction, int, or a string ("3/8", "0.375", "2"). Floats are
    rejected: their binary value is almost never the rational the caller
    meant, and exactness is the whole point. Scientific notation is rejected
    for the same reason (the parse would be exact but the format invites
    rounded inputs).
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"not an exact rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ValueError(
            f"refusing float {value!r}: pass a string like '1/4' or a Fraction"
        )
    if isinstance(value, str):
        text = value.strip()
        if "e" in text.lower():
            raise ValueError(f"scientific notation not accepted: {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational: {value!r}") from exc
    raise ValueError(f"not an exact rational: {value!r}")


def require_epsilon(eps):
    """Parse and validate an epsilon: exact rational, strictly positive."""
    try:
        value = as_fraction(eps)
    except ValueError as exc:
        raise BadEpsilonError(str(exc)) from exc
    if value <= 0:
        raise BadEpsilonError(f"epsilon must be > 0, got {value}")
    return value


class VertexSet:
    """Immutable subset of {0..capacity-1}, backed by an int bitmask."""

    __slots__ = ("mask", "capacity", "size")

    def __init__(self, mask, capacity):
        if capacity < 0:
            raise ValueError("capacity must be >= 0")
        if mask < 0 or mask >> capacity:
            raise ValueError("mask has bits outside 0..capacity-1")
        object.__setattr__(self, "mask", mask)
        object.__setattr__(self, "capacity", capacity)
        object.__setattr__(self, "size", mask.bit_count())

    def __setattr__(self, name, value):
        raise AttributeError("VertexSet is immutable")

    @classmethod
    def from_iterable(cls, vertices, capacity):
        mask = 0
        for v in vertices:
            if not 0 <= v < capacity:
                raise ValueError(f"vertex {v} outside 0..{capacity - 1}")
            mask |= 1 << v
        return cls(mask, capacity)

    @classmethod
    def full(cls, capacity):
        return cls((1 << capacity) - 1, capacity)

    @classmethod
    def empty(cls, capacity):
        return cls(0, capacity)

    def members(self):
        """Member vertices in ascending order."""
        out = []
        m = self.mask
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return tuple(out)

    def min_member(self):
        if not self.mask:
            raise EmptySetError("empty vertex set has no members")
        return (self.mask & -self.mask).bit_length() - 1

    def issubset(self, other):
        return self.mask & ~other.mask == 0

    def __contains__(self, v):
        return 0 <= v < self.capacity and (self.mask >> v) & 1 == 1

    def __len__(self):
        return self.size

    def __iter__(self):
        return iter(self.members())

    def __and__(self, other):
        self._check_peer(other)
        return VertexSet(self.mask & other.mask, self.capacity)

    def __or__(self, other):
        self._check_peer(other)
        return VertexSet(self.mask | other.mask, self.capacity)

    def __sub__(self, other):
        self._check_peer(other)
        return VertexSet(self.mask & ~other.mask, self.capacity)

    def complement(self):
        return VertexSet(~self.mask & ((1 << self.capacity) - 1), self.capacity)

    def _check_peer(self, other):
        if not isinstance(other, VertexSet) or other.capacity != self.capacity:
            raise ValueError("vertex sets have different capacities")

    def __eq__(self, other):
        return (
            isinstance(other, VertexSet)
            and self.mask == other.mask
            and self.capacity == other.capacity
        )

    def __hash__(self):
        return hash((self.mask, self.capacity))

    def __repr__(self):
        return f"VertexSet({{{', '.join(map(str, self.members()))}}}, n={self.capacity})"


class Graph:
    """Simple undirected graph on vertices 0..n-1; adjacency as row bitmasks."""

    __slots__ = ("n", "rows", "edge_count")

    def __init__(self, rows):
        rows = tuple(rows)
        n = len(rows)
        if n < 1:
            raise BadParamsError("graph needs at least one vertex")
        full = (1 << n) - 1
        for u, row in enumerate(rows):
            if row < 0 or row & ~full:
                raise BadParamsError(f"adjacency row {u} has bits outside 0..{n - 1}")
            if (row >> u) & 1:
                raise BadParamsError(f"loop at vertex {u}")
        for u in range(n):
            for v in range(u + 1, n):
                if (rows[u] >> v) & 1 != (rows[v] >> u) & 1:
                    raise BadParamsError(f"adjacency not symmetric at ({u}, {v})")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "edge_count", sum(r.bit_count() for r in rows) // 2)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @classmethod
    def from_edges(cls, n, edges):
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise BadParamsError(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise BadParamsError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(rows)

    @classmethod
    def empty(cls, n):
        return cls([0] * n)

    @classmethod
    def complete(cls, n):
        full = (1 << n) - 1
        return cls([full ^ (1 << u) for u in range(n)])

    def has_edge(self, u, v):
        return 0 <= u < self.n and 0 <= v < self.n and (self.rows[u] >> v) & 1 == 1

    def degree(self, u):
        return self.rows[u].bit_count()

    def edges(self):
        """Unordered edges (u, v) with u < v, ascending."""
        for u in range(self.n):
            m = self.rows[u] >> (u + 1)
            v = u + 1
            while m:
                if m & 1:
                    yield (u, v)
                m >>= 1
                v += 1

    def vertex_set(self):
        return VertexSet.full(self.n)

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_count})"


class Partition:
    """Ordered list of disjoint nonempty vertex sets covering {0..n-1}.

    Classes are stored in canonical order (ascending smallest member) so that
    every downstream artifact (reports, refinements, files) is deterministic.
    """

    __slots__ = ("classes", "ground_size")

    def __init__(self, classes):
        classes = tuple(classes)
        if not classes:
            raise InvalidPartitionError("partition needs at least one class")
        cap = classes[0].capacity
        union = 0
        total = 0
        for c in classes:
            if not isinstance(c, VertexSet) or c.capacity != cap:
                raise InvalidPartitionError("classes have mismatched capacities")
            if c.size == 0:
                raise InvalidPartitionError("empty class")
            union |= c.mask
            total += c.size
        if total != cap or union != (1 << cap) - 1:
            raise InvalidPartitionError(
                "classes do not partition the ground set (overlap or gap)"
            )
        ordered = tuple(sorted(classes, key=lambda c: c.mask & -c.mask))
        object.__setattr__(self, "classes", ordered)
        object.__setattr__(self, "ground_size", cap)

    def __setattr__(self, name, value):
        raise AttributeError("Partition is immutable")

    @classmethod
    def single(cls, n):
        return cls([VertexSet.full(n)])

    @classmethod
    def discrete(cls, n):
        return cls([VertexSet(1 << v, n) for v in range(n)])

    @classmethod
    def from_sets(cls, sets, n):
        return cls([VertexSet.from_iterable(s, n) for s in sets])

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __getitem__(self, i):
        return self.classes[i]

    def sizes(self):
        return tuple(c.size for c in self.classes)

    def refines(self, other):
        """True if every class here is contained in some class of `other`."""
        if other.ground_size != self.ground_size:
            return False
        return all(
            any(c.issubset(big) for big in other.classes) for c in self.classes
        )

    def __eq__(self, other):
        return isinstance(other, Partition) and self.classes == other.classes

    def __hash__(self):
        return hash(self.classes)

    def __repr__(self):
        body = "; ".join(
            "{" + ",".join(map(str, c.members())) + "}" for c in self.classes
        )
        return f"Partition[{body}]"


def _check_pair(g, i, j):
    if i.capacity != g.n or j.capacity != g.n:
        raise ValueError("vertex sets sized for a different graph")
    if i.size == 0 or j.size == 0:
        raise EmptySetError("density needs nonempty sets on both sides")


def adjacent_pair_count(g, i, j):
    """Number of ordered pairs (u, v) in i x j with u adjacent to v."""
    _check_pair(g, i, j)
    jm = j.mask
    return sum((g.rows[u] & jm).bit_count() for u in i.members())


def density(g, i, j):
    """Edge density of the ordered block i x j, exact in [0, 1].

    Overlapping (or identical) sets are fine: pairs are ordered and the
    diagonal never counts because the graph has no loops.
    """
    _check_pair(g, i, j)
    return Fraction(adjacent_pair_count(g, i, j), i.size * j.size)


def energy(g, p):
    """Sum of |I||J| * d(I,J)^2 over all ordered class pairs of p.

    Equals the squared Frobenius norm of the adjacency matrix averaged over
    each class-pair block (the oracle module computes the same value from
    explicit matrices). Always in [0, n^2], and it can only grow under
    refinement.
    """
    if not isinstance(p, Partition) or p.ground_size != g.n:
        raise InvalidPartitionError("partition does not match the graph")
    k = len(p)
    sizes = [c.size for c in p.classes]
    masks = [c.mask for c in p.classes]
    counts = [[0] * k for _ in range(k)]
    for a in range(k):
        row_counts = counts[a]
        for u in p.classes[a].members():
            r = g.rows[u]
            for b in range(k):
                row_counts[b] += (r & masks[b]).bit_count()
    total = Fraction(0)
    for a in range(k):
        for b in range(k):
            e = counts[a][b]
            if e:
                total += Fraction(e * e, sizes[a] * sizes[b])
    return total


def irregular_mass(pairs):
    """Total |I||J| over the supplied ordered pairs of vertex sets."""
    return sum(i.size * j.size for i, j in pairs)
