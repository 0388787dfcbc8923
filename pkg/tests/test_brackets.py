import pytest

from pwb.brackets import PoissonAlgebra
from pwb.errors import JacobiFailsError, NotSplittableError
from pwb.families import (homogenized_weyl, jacobian, jacobian_pq, lie_two_dim_nonabelian,
                          ph_lie, quantum_matrices, skew_symmetric, weyl)
from pwb.linalg import Matrix
from pwb.rings import PolyRing
from pwb.scalars import Cyclo, zeta
from pwb.solver import EMPTY, POINTS, SUBSPACE


def skew2(p):
    return skew_symmetric(Matrix([[0, p], [-p, 0]]), names=["x", "y"])


def test_bracket_table_and_leibniz():
    A = skew2(3)
    x, y = A.ring.gens()
    assert A.bracket(x, y) == A.ring.parse("3*x*y")
    # {x^2, y} = 2p x^2 y by Leibniz
    assert A.bracket(x * x, y) == A.ring.parse("6*x^2*y")
    f = A.ring.parse("x^2*y - 2*x + 1")
    assert A.bracket(f, f).is_zero()
    g = A.ring.parse("x*y + y^3")
    h = A.ring.parse("x - y^2")
    assert A.bracket(f, g * h) == g * A.bracket(f, h) + A.bracket(f, g) * h
    assert A.bracket(f, g) == -A.bracket(g, f)


def test_quantum_matrices_table():
    A = quantum_matrices(2)
    a, b, c, d = A.ring.gens()
    assert A.bracket(a, d) == A.ring.parse("2*b*c")
    assert A.bracket(b, c).is_zero()
    assert A.bracket(a, b) == A.ring.parse("a*b")
    assert A.bracket(c, d) == A.ring.parse("c*d")


def test_quantum_matrices_n3():
    A = quantum_matrices(3)
    i11 = A.ring.index("x1_1")
    i22 = A.ring.index("x2_2")
    br = A.bracket(A.ring.var(i11), A.ring.var(i22))
    assert br == A.ring.parse("2*x1_2*x2_1")
    ok, _ = A.jacobi_check()
    assert ok


def test_jacobi_failure_witness():
    ring = PolyRing(["x", "y", "z"])
    table = {(0, 1): ring.parse("x^2"), (2, 0): ring.parse("z^2")}
    with pytest.raises(JacobiFailsError) as e:
        PoissonAlgebra(ring, table)
    assert e.value.triple == ("x", "y", "z")
    A = PoissonAlgebra(ring, table, check_jacobi=False)
    ok, triple = A.jacobi_check()
    assert not ok and triple == ("x", "y", "z")


def test_jacobian_brackets_satisfy_jacobi():
    for (p, q) in [(1, 0), (0, 1), (1, 1), (-1, 1), (2, 3)]:
        A = jacobian_pq(p, q)
        ok, _ = A.jacobi_check()
        assert ok


def test_jacobian_pq_table():
    A = jacobian_pq(1, 0)
    assert A.pair(0, 1) == A.ring.parse("z^2")
    assert A.pair(1, 2) == A.ring.parse("x^2")
    assert A.pair(2, 0) == A.ring.parse("y^2")
    B = jacobian(PolyRing(["x", "y", "z"]).parse("x*y*z"))
    assert B.pair(0, 1) == B.ring.parse("x*y")
    assert B.pair(1, 2) == B.ring.parse("y*z")
    assert B.pair(2, 0) == B.ring.parse("x*z")
    C = jacobian(PolyRing(["x", "y", "z"]).parse("z"))
    assert C.pair(0, 1) == C.ring.one()
    assert not C.quadratic


def test_normal_check():
    A = skew2(2)
    x, y = A.ring.gens()
    pi = A.normal_check(x)
    assert pi is not None
    assert pi.images[0].is_zero() and pi.images[1] == A.ring.parse("2*y")
    assert pi.is_poisson()

    H = homogenized_weyl(1)
    z = H.ring.var(2)
    pi = H.normal_check(z)
    assert pi is not None and pi.is_zero()

    J = jacobian_pq(1, 0)
    assert J.normal_check(J.ring.var(0)) is None


def test_normal_find_deg1_jacobian_p_only():
    assert jacobian_pq(1, 0).normal_find_deg1().kind == EMPTY
    assert jacobian_pq(2, 0).normal_find_deg1().kind == EMPTY


def test_normal_find_deg1_qmatrix2():
    res = quantum_matrices(2).normal_find_deg1()
    assert res.kind == SUBSPACE
    basis = [[str(c) for c in row] for row in res.basis]
    assert basis == [["0", "1", "0", "0"], ["0", "0", "1", "0"]]  # span{b, c}


def test_normal_find_deg1_homogenized_weyl():
    for n in (1, 2):
        res = homogenized_weyl(n).normal_find_deg1()
        assert res.kind == POINTS and len(res.points) == 1
        point = res.points[0]
        assert all(c.is_zero() for c in point[:-1]) and point[-1] == 1


def _assert_points_match(res, expected):
    assert res.kind == POINTS and len(res.points) == len(expected)
    for e in expected:
        assert any(all(Cyclo.of(a) == b for a, b in zip(e, f)) for f in res.points)


def test_normal_find_deg1_cubic_cases():
    g = zeta(3)
    # p = -q: the lines x + gamma y + gamma^2 z
    res = jacobian_pq(-1, 1).normal_find_deg1()
    _assert_points_match(res, [(1, 1, 1), (1, g, g * g), (1, g * g, g)])
    # p = -omega q with omega primitive: omega^2 x + y + z etc., normalized
    om = zeta(3)
    res = jacobian_pq(-om, 1).normal_find_deg1()
    _assert_points_match(res, [(1, om, om), (1, 1, om * om), (1, om * om, 1)])


def test_normal_solutions_pass_normal_check():
    for A in [jacobian_pq(-1, 1), quantum_matrices(2), homogenized_weyl(1)]:
        res = A.normal_find_deg1()
        vectors = []
        if res.kind == POINTS:
            vectors = [list(p) for p in res.points]
        elif res.kind == SUBSPACE:
            vectors = [list(b) for b in res.basis]
        for v in vectors:
            u = A.ring.linear_form(v)
            assert A.normal_check(u) is not None


def test_modular_derivation():
    # exact brackets are unimodular
    for (p, q) in [(1, 0), (0, 1), (-1, 1)]:
        assert jacobian_pq(p, q).is_unimodular()
    # {x,y} = xy: phi(x) = x, phi(y) = -y
    A = skew2(1)
    phi = A.modular_derivation()
    assert phi.images[0] == A.ring.var(0)
    assert phi.images[1] == -A.ring.var(1)
    # the cyclic fixed-ring bracket with n = 3, q = 1
    ring = PolyRing(["X", "y", "z"])
    B = PoissonAlgebra(ring, {
        (0, 1): ring.parse("3*X*y"),
        (1, 2): ring.parse("y*z"),
        (2, 0): ring.parse("3*X*z"),
    }, check_jacobi=False)
    phi = B.modular_derivation()
    assert phi.images[0].is_zero()
    assert phi.images[1] == ring.parse("-2*y")
    assert phi.images[2] == ring.parse("2*z")
    assert not B.is_unimodular()


def test_center_truncated():
    H = homogenized_weyl(1)
    dims = [len(b) for b in H.center_truncated(3)]
    assert dims == [1, 1, 1, 1]
    z = H.ring.var(2)
    assert H.center_truncated(3)[1][0] == z

    Z = skew_symmetric(Matrix([[0, 0], [0, 0]]), names=["x", "y"])
    assert [len(b) for b in Z.center_truncated(1)] == [1, 2]

    A = skew2(1)
    assert [len(b) for b in A.center_truncated(2)] == [1, 0, 0]


def test_center_homogenized_weyl_n2():
    H = homogenized_weyl(2)
    cen = H.center_truncated(3)
    assert [len(b) for b in cen] == [1, 1, 1, 1]
    assert cen[2][0] == H.ring.monomial((0, 0, 0, 0, 2))


def test_derived_ideal_homogenized_weyl():
    H = homogenized_weyl(1)
    D = H.derived_ideal(4)
    # same dimensions as the principal ideal (z^2)
    assert D.dims() == [0, 0, 1, 3, 6]
    z = H.ring.var(2)
    assert D.contains(z * z) and not D.contains(z)
    assert D.is_monomial()
    assert D.components() == [("x1", "y1")]


def test_derived_ideal_qmatrix2():
    A = quantum_matrices(2)
    D = A.derived_ideal(3)
    assert D.is_monomial()
    comps = D.components()
    assert sorted(len(c) for c in comps) == [1, 1, 2]
    assert ("a", "d") in comps and ("b",) in comps and ("c",) in comps
    det = A.ring.parse("a*d - b*c")
    assert not D.contains(det)


def test_derived_ideal_zero_bracket():
    Z = skew_symmetric(Matrix([[0, 0], [0, 0]]), names=["x", "y"])
    assert Z.derived_ideal(3).dims() == [0, 0, 0, 0]


def test_ore_split_skew():
    A = skew2(2)
    split = A.ore_split([1, 0])
    assert split.base.ring.names == ("y",)
    assert split.alpha.images[0] == split.base.ring.parse("2*y")
    assert split.reconstruct().table == split.original_in_split_coordinates().table or \
        all(split.reconstruct().pair(i, j) == split.original_in_split_coordinates().pair(i, j)
            for i in range(2) for j in range(2))


def test_ore_split_homogenized_weyl_fails():
    H = homogenized_weyl(1)
    with pytest.raises(NotSplittableError):
        H.ore_split([0, 0, 1])
    # a direction that is not even Poisson normal is rejected up front
    with pytest.raises(NotSplittableError):
        H.ore_split([1, 0, 0])


def test_ore_split_ph_nonabelian():
    A = ph_lie(lie_two_dim_nonabelian())
    split = A.ore_split([0, 1, 0])  # split off x2
    assert split.base.ring.names == ("x1", "z")
    assert all(p.is_zero() for p in split.base.table.values())
    assert split.alpha.images[0] == split.base.ring.parse("-z")
    assert split.alpha.images[1].is_zero()
    rec = split.reconstruct()
    orig = split.original_in_split_coordinates()
    for i in range(3):
        for j in range(3):
            assert rec.pair(i, j) == orig.pair(i, j)


def test_weyl_flags():
    P = weyl(2)
    assert not P.quadratic and P.bracket_degree == 0
    H = homogenized_weyl(2)
    assert H.quadratic
    assert H.bracket(H.ring.var(0), H.ring.var(1 + 2)).is_zero()  # {x1, y2} = 0
    assert H.bracket(H.ring.var(0), H.ring.var(2)) == H.ring.monomial((0, 0, 0, 0, 2))
