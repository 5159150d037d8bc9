"""Refinement steps: balancing splits and witness-driven atom refinement.

Both operations only ever refine (each new class sits inside an old one), so
partition energy never decreases across a step. The witness-driven step
additionally guarantees a quantified energy gain whenever the witnessed mass
is large, which is what forces the whole iteration to terminate.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidPartitionError, InvalidWitnessError, NotSubsetError
from .graph import Partition, VertexSet, energy, require_epsilon
from .regularity import validate_witness


@dataclass(frozen=True)
class BalanceCertificate:
    """Evidence for (or against) the balance of a partition.

    core is the family of equal-size classes chosen to cover the graph;
    balanced holds when the vertices outside the core number at most
    limit = eps * n.
    """

    balanced: bool
    core: tuple
    class_size: int
    covered: int
    leftover: int
    limit: Fraction


def is_balanced(p, eps):
    """Certify whether p is eps-balanced.

    Among all class sizes, picks the one whose classes cover the most
    vertices (ties resolved toward the smaller size) and measures what is
    left over. Deterministic, so repeated calls certify the same core.
    """
    eps = require_epsilon(eps)
    n = p.ground_size
    by_size = {}
    for cls in p:
        by_size.setdefault(cls.size, []).append(cls)
    best_size = min(
        by_size, key=lambda s: (-s * len(by_size[s]), s)
    )
    core = tuple(by_size[best_size])
    covered = best_size * len(core)
    leftover = n - covered
    limit = eps * n
    return BalanceCertificate(
        balanced=leftover <= limit,
        core=core,
        class_size=best_size,
        covered=covered,
        leftover=leftover,
        limit=limit,
    )


def balance_refine(p, eps):
    """Split every class into chunks of ceil(t) vertices, t = eps*n/|p|.

    Vertices are taken in ascending order inside each class; at most one
    chunk per class (the last) is smaller than t. The result refines p, has
    at most (1 + 1/eps)|p| classes, and is eps-balanced: chunks of full size
    ceil(t) cover everything except the per-class remainders, whose total
    size is below |p| * t = eps * n.
    """
    eps = require_epsilon(eps)
    n = p.ground_size
    t = eps * n / len(p)
    chunk = math.ceil(t)
    pieces = []
    for cls in p:
        members = cls.members()
        for start in range(0, cls.size, chunk):
            pieces.append(
                VertexSet.from_iterable(members[start : start + chunk], n)
            )
    q = Partition(pieces)
    assert q.refines(p)
    assert len(q) <= (1 + 1 / eps) * len(p)
    assert is_balanced(q, eps).balanced
    return q


def atom_partition(s, sets):
    """Partition s into the atoms generated by a family of subsets of s.

    Two vertices share an atom exactly when no set of the family separates
    them, so each atom is an intersection of sets and complements-within-s.
    Atoms come out sorted by smallest member; with c distinct sets there are
    at most 2**c of them. Raises NotSubsetError if some set leaks outside s.
    """
    distinct = []
    seen = set()
    for x in sets:
        if not x.issubset(s):
            raise NotSubsetError(f"{x!r} is not contained in {s!r}")
        if x.mask not in seen:
            seen.add(x.mask)
            distinct.append(x)
    if s.size == 0:
        return []
    groups = {}
    for v in s.members():
        bit = 1 << v
        signature = 0
        for idx, x in enumerate(distinct):
            if x.mask & bit:
                signature |= 1 << idx
        groups.setdefault(signature, 0)
        groups[signature] |= bit
    atoms = [VertexSet(mask, s.capacity) for mask in groups.values()]
    atoms.sort(key=lambda a: a.mask & -a.mask)
    assert len(atoms) <= 2 ** len(distinct)
    return atoms


def witness_increment(witness):
    """Lower bound |X||Y| (d(X,Y) - d(I,J))^2 this witness forces on the energy gain."""
    gap = witness.d_xy - witness.d_ij
    return witness.x.size * witness.y.size * gap * gap


def witnessed_mass(p, witnesses):
    """Total |I||J| over the ordered class pairs carrying a witness."""
    return sum(p[a].size * p[b].size for (a, b) in witnesses)


def irregularity_refine(g, p, eps, witnesses):
    """Refine p so that every witness set becomes a union of new classes.

    witnesses maps ordered class-index pairs (a, b) to a PairWitness whose x
    lives in class a and y in class b. Every witness is revalidated from
    scratch before anything is split. Each class is replaced by the atoms of
    the witness sets that landed in it, so the result refines p with at most
    |p| * 4**|p| classes, and the energy rises by more than

        eps**4 * (witnessed mass),

    which exceeds eps**5 * n**2 whenever the witnessed mass exceeds eps*n**2.
    """
    eps = require_epsilon(eps)
    if p.ground_size != g.n:
        raise InvalidPartitionError("partition does not match the graph")
    k = len(p)
    eps4 = eps**4
    for (a, b), w in sorted(witnesses.items()):
        if not (0 <= a < k and 0 <= b < k):
            raise InvalidWitnessError(f"witness key ({a}, {b}) out of range")
        validate_witness(g, p[a], p[b], eps, w)
        assert witness_increment(w) > eps4 * p[a].size * p[b].size

    per_class = [[] for _ in range(k)]
    for (a, b) in sorted(witnesses):
        w = witnesses[(a, b)]
        per_class[a].append(w.x)
        per_class[b].append(w.y)

    pieces = []
    for idx in range(k):
        pieces.extend(atom_partition(p[idx], per_class[idx]))
    q = Partition(pieces)

    assert q.refines(p)
    assert len(q) <= k * 4**k
    for idx in range(k):
        for x in per_class[idx]:
            covered = 0
            for piece in q:
                if piece.issubset(x):
                    covered |= piece.mask
            assert covered == x.mask  # witness sets are unions of new classes

    mass = witnessed_mass(p, witnesses)
    gain = energy(g, q) - energy(g, p)
    assert gain >= 0
    if witnesses:
        assert gain > eps4 * mass
    n = g.n
    if mass > eps * n * n:
        assert gain > eps**5 * n * n
    return q
