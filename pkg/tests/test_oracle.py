import random
from fractions import Fraction

import pytest

from conftest import random_graph, random_partition, random_refinement
from regpart import (
    EmptySetError,
    Graph,
    InvalidPartitionError,
    Partition,
    TooLargeError,
    VertexSet,
    check_pair_exhaustive,
    density,
    energy,
    validate_witness,
)
from regpart.oracle import (
    DenseMatrix,
    brute_force_pair_check,
    frobenius_sq,
    inner_product,
    project_block,
    project_partition,
)


class TestDenseMatrix:
    def test_from_graph_symmetric(self):
        m = DenseMatrix.from_graph(Graph.from_edges(3, [(0, 1)]))
        assert m.rows[0][1] == 1 and m.rows[1][0] == 1
        assert m.rows[0][2] == 0 and m.rows[0][0] == 0

    def test_rejects_oversize(self):
        with pytest.raises(TooLargeError):
            DenseMatrix.zeros(257)

    def test_rejects_nonsquare(self):
        with pytest.raises(ValueError):
            DenseMatrix([[0, 1], [1]])

    def test_rejects_floats(self):
        with pytest.raises(ValueError):
            DenseMatrix([[0.5]])

    def test_subtraction(self):
        a = DenseMatrix([[1, 2], [3, 4]])
        b = DenseMatrix([["1/2", 0], [0, 1]])
        assert (a - b).rows[0][0] == Fraction(1, 2)
        assert (a - b).rows[1][1] == 3


class TestProjections:
    def single_edge_matrix(self):
        return DenseMatrix.from_graph(Graph.from_edges(4, [(0, 2)]))

    def test_block_average(self):
        m = self.single_edge_matrix()
        i = VertexSet.from_iterable([0, 1], 4)
        j = VertexSet.from_iterable([2, 3], 4)
        out = project_block(m, i, j)
        for u in range(4):
            for v in range(4):
                expected = Fraction(1, 4) if u in (0, 1) and v in (2, 3) else 0
                assert out.rows[u][v] == expected

    def test_block_idempotent(self):
        m = self.single_edge_matrix()
        i = VertexSet.from_iterable([0, 1], 4)
        j = VertexSet.from_iterable([2, 3], 4)
        once = project_block(m, i, j)
        assert project_block(once, i, j) == once

    def test_block_empty_side(self):
        m = self.single_edge_matrix()
        with pytest.raises(EmptySetError):
            project_block(m, VertexSet.empty(4), VertexSet.full(4))

    def test_zero_matrix_fixed(self):
        z = DenseMatrix.zeros(4)
        assert project_block(z, VertexSet.full(4), VertexSet.full(4)) == z

    def test_partition_discrete_identity(self):
        m = self.single_edge_matrix()
        assert project_partition(m, Partition.discrete(4)) == m

    def test_partition_triangle(self):
        m = DenseMatrix.from_graph(Graph.complete(3))
        out = project_partition(m, Partition.single(3))
        assert all(x == Fraction(2, 3) for row in out.rows for x in row)
        assert frobenius_sq(out) == 4

    def test_partition_four_cycle(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        out = project_partition(DenseMatrix.from_graph(g), Partition.from_sets([[0, 2], [1, 3]], 4))
        assert frobenius_sq(out) == 8

    def test_partition_mismatch(self):
        with pytest.raises(InvalidPartitionError):
            project_partition(DenseMatrix.zeros(4), Partition.single(5))

    def test_partition_idempotent_random(self):
        rng = random.Random(19)
        for _ in range(5):
            n = rng.randint(2, 10)
            m = DenseMatrix(
                [[Fraction(rng.randint(0, 4), rng.randint(1, 4)) for _ in range(n)] for _ in range(n)]
            )
            p = random_partition(rng, n)
            once = project_partition(m, p)
            assert project_partition(once, p) == once


class TestFrobenius:
    def test_zero(self):
        assert frobenius_sq(DenseMatrix.zeros(3)) == 0

    def test_adjacency_is_twice_edges(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2), (3, 4)])
        assert frobenius_sq(DenseMatrix.from_graph(g)) == 6

    def test_constant_block(self):
        m = project_block(
            DenseMatrix.from_graph(Graph.from_edges(4, [(0, 2)])),
            VertexSet.from_iterable([0, 1], 4),
            VertexSet.from_iterable([2, 3], 4),
        )
        # 2x2 block of 1/4: 4 * (1/4)^2
        assert frobenius_sq(m) == Fraction(1, 4)


class TestPythagoras:
    def test_orthogonality_and_identity(self):
        rng = random.Random(29)
        for _ in range(10):
            n = rng.randint(2, 16)
            g = random_graph(rng, n)
            p = random_partition(rng, n)
            q = random_refinement(rng, p)
            a = DenseMatrix.from_graph(g)
            mp = project_partition(a, p)
            mq = project_partition(a, q)
            assert inner_product(mp, mq - mp) == 0
            assert frobenius_sq(mq) == frobenius_sq(mp) + frobenius_sq(mq - mp)
            assert frobenius_sq(mp) == energy(g, p)
            assert frobenius_sq(mq) == energy(g, q)


class TestBruteForcePairCheck:
    def test_single_edge_agrees(self):
        g = Graph.from_edges(4, [(0, 2)])
        i = VertexSet.from_iterable([0, 1], 4)
        j = VertexSet.from_iterable([2, 3], 4)
        eps = Fraction(2, 5)
        ours = check_pair_exhaustive(g, i, j, eps)
        ref = brute_force_pair_check(g, i, j, eps)
        assert ours.kind == ref.kind == "irregular_witnessed"
        # enumeration orders differ, so witnesses need not match; both must hold up
        validate_witness(g, i, j, eps, ref.witness)
        assert ref.witness.d_ij == density(g, i, j)

    def test_regular_case(self):
        g = Graph.complete(4)
        i = VertexSet.from_iterable([0, 1], 4)
        j = VertexSet.from_iterable([2, 3], 4)
        assert brute_force_pair_check(g, i, j, Fraction(1, 2)).kind == "regular_certified"

    def test_side_cap(self):
        g = Graph.empty(30)
        i = VertexSet.from_iterable(range(13), 30)
        j = VertexSet.from_iterable(range(13, 26), 30)
        with pytest.raises(TooLargeError):
            brute_force_pair_check(g, i, j, Fraction(1, 2))

    def test_empty_side(self):
        g = Graph.empty(4)
        with pytest.raises(EmptySetError):
            brute_force_pair_check(g, VertexSet.empty(4), VertexSet.full(4), 1)
