from pwb.scalars import Cyclo, zeta
from pwb.series import RationalSeries, hilbert_free, hilbert_weighted
from pwb.upoly import UPoly, cyclotomic_upoly, extract_roots, gcd_upoly


def test_upoly_divmod_and_gcd():
    x = UPoly.x()
    p = (x - UPoly.constant(1)) * (x - UPoly.constant(2))
    q, r = p.divmod(x - UPoly.constant(1))
    assert r.is_zero() and q == x - UPoly.constant(2)
    g = gcd_upoly(p, x - UPoly.constant(2))
    assert g == (x - UPoly.constant(2)).monic()


def test_extract_roots_rational_and_cyclotomic():
    x = UPoly.x()
    p = (x - UPoly.constant(2)) * cyclotomic_upoly(3)
    roots, rem = extract_roots(p)
    assert rem.degree() == 0
    assert any(r == 2 for r in roots)
    assert any(r == zeta(3) for r in roots)
    assert any(r == zeta(3, 2) for r in roots)

    # x^3 - 1 splits into the three cube roots of unity
    roots, rem = extract_roots(x ** 3 - UPoly.one())
    assert rem.degree() == 0 and len(roots) == 3

    # 2*zeta(3) is not recognized; remainder left honest
    p = UPoly.linear_root(zeta(3) * 2) * UPoly.linear_root(Cyclo.of(1))
    roots, rem = extract_roots(p)
    assert len(roots) == 1 and rem.degree() == 1


def test_taylor_binomial():
    s = hilbert_free(2)
    assert [c.as_fraction() for c in s.taylor(3)] == [1, 2, 3, 4]


def test_taylor_with_zeta():
    s = RationalSeries.one_over([Cyclo.of(1), zeta(3)])
    t = s.taylor(2)
    assert t[0] == 1
    assert t[1] == 1 + zeta(3)
    assert t[2].is_zero()  # 1 + zeta_3 + zeta_3^2 = 0


def test_taylor_quadratic_free():
    # 1/(1-t)^(2n) at n = 1
    assert [c.as_fraction() for c in hilbert_free(2).taylor(2)] == [1, 2, 3]


def test_series_arithmetic_cauchy_product():
    a = hilbert_free(1)
    b = RationalSeries.one_over([Cyclo.of(-1)])
    prod = a * b
    ta, tb, tp = a.taylor(6), b.taylor(6), prod.taylor(6)
    for k in range(7):
        acc = Cyclo.of(0)
        for j in range(k + 1):
            acc = acc + ta[j] * tb[k - j]
        assert acc == tp[k]


def test_series_equality_and_sum():
    # 1/(1-t) + 1/(1+t) = 2/(1-t^2)
    s = hilbert_free(1) + RationalSeries.one_over([Cyclo.of(-1)])
    t = hilbert_weighted([2]) * 2
    assert s == t


def test_hilbert_weighted():
    s = hilbert_weighted([1, 2])
    assert [c.as_fraction() for c in s.taylor(4)] == [1, 1, 2, 2, 3]
