import itertools

from covertool import gf2


def brute_solutions(rows, rhs, ncols):
    return [x for x in range(1 << ncols)
            if all(gf2.dot(r, x) == b for r, b in zip(rows, rhs))]


def test_rank_examples():
    assert gf2.rank([]) == 0
    assert gf2.rank([0b011, 0b110, 0b101]) == 2
    assert gf2.rank([0b001, 0b010, 0b100]) == 3
    assert gf2.rank([0b1, 0b1]) == 1


def test_nullspace_matches_brute_force():
    rows = [0b1011, 0b0110]
    basis = gf2.nullspace(rows, 4)
    assert len(basis) == 2
    assert sorted(gf2.span(basis)) == brute_solutions(rows, [0, 0], 4)


def test_solve_consistent_and_inconsistent():
    rows, rhs = [0b011, 0b110], [1, 0]
    x = gf2.solve(rows, rhs, 3)
    assert x in brute_solutions(rows, rhs, 3)
    assert gf2.solve([0b11, 0b11], [0, 1], 2) is None


def test_exhaustive_three_by_three():
    for rows in itertools.product(range(8), repeat=3):
        sols = brute_solutions(rows, [0, 0, 0], 3)
        assert len(sols) == 1 << (3 - gf2.rank(rows))
        assert sorted(gf2.span(gf2.nullspace(rows, 3))) == sols


def test_combine_selects_by_mask():
    basis = [0b001, 0b110, 0b100]
    assert gf2.combine(basis, 0b101) == 0b101
    assert gf2.combine(basis, 0) == 0
    assert list(gf2.span([])) == [0]
