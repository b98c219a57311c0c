import random
from fractions import Fraction as F

from prodviab import linalg


def as_m(rows):
    return tuple(tuple(F(v) for v in r) for r in rows)


def test_determinant_small():
    assert linalg.determinant(as_m([[2]])) == 2
    assert linalg.determinant(as_m([[1, 2], [3, 4]])) == -2
    assert linalg.determinant(as_m([[4, 0, -2], [-3, 2, 0], [0, -1, 2]])) == 10


def test_determinant_singular_and_swaps():
    assert linalg.determinant(as_m([[1, 2], [2, 4]])) == 0
    # zero pivot forces a row swap; sign must flip
    assert linalg.determinant(as_m([[0, 1], [1, 0]])) == -1


def test_determinant_matches_cofactor_expansion():
    rng = random.Random(7)

    def cofactor(rows):
        n = len(rows)
        if n == 1:
            return rows[0][0]
        total = F(0)
        for j in range(n):
            minor = tuple(r[:j] + r[j + 1 :] for r in rows[1:])
            total += (-1) ** j * rows[0][j] * cofactor(minor)
        return total

    for _ in range(25):
        n = rng.randint(1, 4)
        rows = as_m(
            [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        )
        assert linalg.determinant(rows) == cofactor(rows)


def test_solve_square_and_rank():
    a = as_m([[2, 0], [1, 1]])
    x = linalg.solve_square(a, (F(4), F(5)))
    assert x == (F(2), F(3))
    assert linalg.solve_square(as_m([[1, 2], [2, 4]]), (F(1), F(1))) is None
    assert linalg.rank(a) == 2
    assert linalg.rank(as_m([[1, 2], [2, 4]])) == 1
    assert linalg.rank(()) == 0


def test_nullspace():
    a = as_m([[1, 2], [2, 4]])
    basis = linalg.nullspace(a)
    assert len(basis) == 1
    v = basis[0]
    assert all(sum(r[j] * v[j] for j in range(2)) == 0 for r in a)


def test_left_nullspace():
    a = as_m([[1, 0, 0, -1], [0, 1, -1, 0], [0, -1, 1, 0], [0, 0, 0, 1]])
    basis = linalg.left_nullspace(a)
    assert len(basis) == 1
    y = basis[0]
    n = 4
    assert all(sum(y[i] * a[i][j] for i in range(n)) == 0 for j in range(n))
    # the dependency lies on the two middle rows
    assert y[0] == y[3] == 0 and y[1] != 0 and y[2] != 0


def test_mat_vec_and_dot():
    a = as_m([[1, 2], [3, 4]])
    assert linalg.mat_vec(a, (F(1), F(1))) == (F(3), F(7))
    assert linalg.dot((F(1), F(2)), (F(3), F(4))) == 11


def test_submatrix():
    a = as_m([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    assert linalg.submatrix(a, (0, 2), (1, 2)) == as_m([[2, 3], [8, 9]])
