import pytest

from pwb.errors import FileFormatError
from pwb.families import quantum_matrices
from pwb.formats import (emit_algebra, emit_lie, emit_map, emit_matrix, parse_algebra,
                         parse_lie, parse_map, parse_matrix)
from pwb.linalg import Matrix
from pwb.rings import PolyRing
from pwb.scalars import zeta

ALGEBRA_SRC = """
algebra A {
  vars: x, y, z;
  bracket{x,y} = "z^2";
  bracket{y,z} = x^2;   # bare expressions work too
  bracket{z,x} = y^2;
}
"""


def test_parse_algebra():
    name, A = parse_algebra(ALGEBRA_SRC)
    assert name == "A"
    assert A.ring.names == ("x", "y", "z")
    assert A.pair(0, 1) == A.ring.parse("z^2")
    assert A.pair(2, 0) == A.ring.parse("y^2")
    assert A.quadratic


def test_algebra_roundtrip():
    _, A = parse_algebra(ALGEBRA_SRC)
    text = emit_algebra("A", A)
    name2, B = parse_algebra(text)
    assert B.table.keys() == A.table.keys()
    for k in A.table:
        assert A.table[k] == B.table[k]
    # and a second emission is byte-identical
    assert emit_algebra(name2, B) == text


def test_qmatrix_roundtrip():
    A = quantum_matrices(2)
    text = emit_algebra("m2", A)
    _, B = parse_algebra(text)
    for k in A.table:
        assert A.table[k] == B.table[k]


def test_parse_algebra_errors():
    with pytest.raises(FileFormatError):
        parse_algebra("algebra A { bracket{x,y} = x; }")
    with pytest.raises(FileFormatError):
        parse_algebra("nonsense")
    with pytest.raises(FileFormatError):
        parse_algebra("algebra A { vars: x, y; bracket{x,x} = x^2; }")


MAP_SRC = """
map g on A {
  x -> zeta(3)*x;
  y -> y;
  z -> z;
}
"""


def test_parse_map():
    ring = PolyRing(["x", "y", "z"])
    name, on, g = parse_map(MAP_SRC, ring)
    assert (name, on) == ("g", "A")
    assert g.matrix.rows[0][0] == zeta(3)
    assert g.matrix.rows[1][1].is_one()


def test_map_defaults_identity():
    ring = PolyRing(["x", "y"])
    _, _, g = parse_map("map s on A { x -> y; y -> x; }", ring)
    assert g.matrix == Matrix([[0, 1], [1, 0]])
    _, _, h = parse_map("map t on A { x -> 2*x; }", ring)
    assert h.matrix == Matrix([[2, 0], [0, 1]])


def test_map_roundtrip():
    ring = PolyRing(["x", "y", "z"])
    _, _, g = parse_map(MAP_SRC, ring)
    text = emit_map("g", "A", g, ring)
    _, _, h = parse_map(text, ring)
    assert g.matrix == h.matrix


def test_map_degree_guard():
    ring = PolyRing(["x", "y"])
    with pytest.raises(FileFormatError):
        parse_map("map g on A { x -> x^2; }", ring)


LIE_SRC = """
lie g {
  dim: 2;
  bracket{1,2} = x2;
}
"""


def test_parse_lie_roundtrip():
    name, lie = parse_lie(LIE_SRC)
    assert name == "g" and lie.dimension == 2
    assert lie.brackets[(0, 1)][1].is_one()
    text = emit_lie("g", lie)
    _, lie2 = parse_lie(text)
    assert lie2.brackets == lie.brackets or str(lie2.brackets) == str(lie.brackets)


def test_parse_matrix_roundtrip():
    text = "0 1/2 zeta(3)\n-1/2 0 2\n-1 -2 0\n"
    m = parse_matrix(text)
    assert m.rows[0][2] == zeta(3)
    assert emit_matrix(m) == "0 1/2 zeta(3)\n-1/2 0 2\n-1 -2 0\n"


def test_all_families_roundtrip_through_pois_files():
    from pwb.families import (homogenized_weyl, jacobian_pq, lie_two_dim_nonabelian,
                              ph_lie, quantum_matrices, skew_symmetric, weyl)
    from pwb.scalars import Cyclo
    algebras = [
        skew_symmetric(Matrix([[0, zeta(3)], [-zeta(3), 0]])),
        jacobian_pq(-1, 1), jacobian_pq(1, 0),
        quantum_matrices(2), quantum_matrices(3),
        weyl(2), homogenized_weyl(2), ph_lie(lie_two_dim_nonabelian()),
    ]
    for A in algebras:
        text = emit_algebra("A", A)
        _, B = parse_algebra(text, check_jacobi=False)
        assert B.ring.names == A.ring.names
        assert B.table.keys() == A.table.keys()
        for k in A.table:
            assert A.table[k] == B.table[k]
