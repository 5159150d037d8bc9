"""Shared helpers: seeded random graphs, partitions, and refinements."""

import random

from regpart import Graph, Partition, VertexSet

EDGE_PROBS = (0.1, 0.3, 0.5, 0.7, 0.9)


def random_graph(rng, n):
    rows = [0] * n
    p = rng.choice(EDGE_PROBS)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
    return Graph(rows)


def random_chunks(rng, items, k):
    """Split items into k nonempty runs at random cut points."""
    cuts = sorted(rng.sample(range(1, len(items)), k - 1)) if k > 1 else []
    out = []
    prev = 0
    for cut in cuts + [len(items)]:
        out.append(items[prev:cut])
        prev = cut
    return out


def random_partition(rng, n, max_classes=None):
    vertices = list(range(n))
    rng.shuffle(vertices)
    k = rng.randint(1, min(n, max_classes) if max_classes else n)
    classes = [
        VertexSet.from_iterable(chunk, n)
        for chunk in random_chunks(rng, vertices, k)
    ]
    return Partition(classes)


def random_refinement(rng, p):
    """A partition refining p: each class randomly split in place."""
    n = p.ground_size
    pieces = []
    for cls in p:
        members = list(cls.members())
        rng.shuffle(members)
        k = rng.randint(1, cls.size)
        for chunk in random_chunks(rng, members, k):
            pieces.append(VertexSet.from_iterable(chunk, n))
    return Partition(pieces)
