import random
from fractions import Fraction

from dirac_symmetry.linsolve import rational_rank, solve_sparse

F = Fraction


def check(equations, solution):
    for row, rhs in equations:
        assert sum(c * solution.get(k, F(0)) for k, c in row.items()) == rhs


class TestSolveSparse:
    def test_unique_solution(self):
        eqs = [
            ({0: F(2), 1: F(1)}, F(5)),
            ({0: F(1), 1: F(-1)}, F(1)),
        ]
        solution = solve_sparse(eqs)
        assert solution == {0: F(2), 1: F(1)}

    def test_rational_entries(self):
        eqs = [({0: F(1, 3)}, F(5, 6))]
        assert solve_sparse(eqs) == {0: F(5, 2)}

    def test_inconsistent(self):
        eqs = [
            ({0: F(1)}, F(1)),
            ({0: F(2)}, F(3)),
        ]
        assert solve_sparse(eqs) is None

    def test_zero_row_nonzero_rhs(self):
        assert solve_sparse([({}, F(1))]) is None
        assert solve_sparse([({}, F(0))]) == {}

    def test_underdetermined_pins_free_variables(self):
        # x0 + x1 = 3 with x1 free: deterministic solution x1 = 0.
        solution = solve_sparse([({0: F(1), 1: F(1)}, F(3))])
        assert solution == {0: F(3)}

    def test_redundant_rows(self):
        eqs = [
            ({0: F(1), 1: F(2)}, F(3)),
            ({0: F(2), 1: F(4)}, F(6)),
        ]
        solution = solve_sparse(eqs)
        assert solution is not None
        check(eqs, solution)

    def test_randomized_consistent_systems(self):
        rng = random.Random(7)
        for _ in range(200):
            n_unknowns = rng.randint(1, 6)
            planted = {
                k: F(rng.randint(-5, 5), rng.randint(1, 3))
                for k in range(n_unknowns)
            }
            eqs = []
            for _ in range(rng.randint(1, 8)):
                row = {
                    k: F(rng.randint(-4, 4))
                    for k in rng.sample(range(n_unknowns), rng.randint(1, n_unknowns))
                }
                row = {k: v for k, v in row.items() if v}
                rhs = sum(c * planted[k] for k, c in row.items())
                eqs.append((row, F(rhs)))
            solution = solve_sparse(eqs)
            assert solution is not None
            check(eqs, solution)

    def test_deterministic(self):
        eqs = [
            ({0: F(1), 2: F(3)}, F(2)),
            ({1: F(2), 2: F(-1)}, F(0)),
        ]
        assert solve_sparse(eqs) == solve_sparse(list(eqs))


class TestRationalRank:
    def test_basic(self):
        rows = [{0: F(1)}, {1: F(1)}, {0: F(1), 1: F(1)}]
        assert rational_rank(rows) == 2

    def test_empty(self):
        assert rational_rank([]) == 0
        assert rational_rank([{}]) == 0

    def test_tuple_keys(self):
        rows = [{(0, 1): F(2)}, {(0, 1): F(4)}, {(1, 0): F(1)}]
        assert rational_rank(rows) == 2
