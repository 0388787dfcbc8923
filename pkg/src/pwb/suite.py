"""Bundled reproduction vectors: each checks one frozen expected result
against a fresh computation, keyed by what it demonstrates."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .brackets import PoissonAlgebra
from .envelope import envelope_dims, envelope_trace
from .families import (homogenized_weyl, jacobian_pq, lie_one_dim_ideals,
                       lie_two_dim_nonabelian, ph_lie, quantum_matrices,
                       skew_symmetric, sl2)
from .fixedrings import (DISTINGUISHED, fixed_cyclic_reflection, fixed_group,
                         is_skew_presentation, presented_from_linear_basis,
                         rigidity_report)
from .linalg import Matrix
from .rings import PolyRing
from .scalars import Cyclo, zeta
from .series import hilbert_free
from .symmetry import (FOUND, NO_REFLECTIONS, GradedMap, classify, find_reflections,
                       group_closure, trace_series)


@dataclass
class VectorResult:
    key: str
    passed: bool
    detail: str


def _skew2(p):
    return skew_symmetric(Matrix([[0, p], [-p, 0]]), names=["x", "y"])


def v_cubic_p_only():
    A = jacobian_pq(1, 0)
    normal = A.normal_find_deg1()
    refl = find_reflections(A)
    ok = normal.kind == "empty" and refl.status == NO_REFLECTIONS
    return ok, f"normal={normal.describe()}, reflections={refl.status}"


def v_cubic_q_only_fixed_ring():
    A = jacobian_pq(0, 1)
    g = GradedMap(Matrix.diagonal([zeta(3), 1, 1]))
    p = fixed_cyclic_reflection(A, g)
    B = p.as_algebra()
    phi = B.modular_derivation()
    iX = p.degrees.index(3)
    iy = p.expressions.index(A.ring.parse("y"))
    iz = p.expressions.index(A.ring.parse("z"))
    R = B.ring

    def mono(i, j, c):
        return R.monomial(tuple((1 if t == i else 0) + (1 if t == j else 0)
                                for t in range(3)), c)

    ok = (p.entry(iX, iy) == mono(iX, iy, 3)
          and p.entry(iy, iz) == mono(iy, iz, 1)
          and p.entry(iz, iX) == mono(iz, iX, 3)
          and phi.images[iy] == -2 * R.var(iy)
          and phi.images[iz] == 2 * R.var(iz)
          and A.is_unimodular() and not B.is_unimodular())
    return ok, "bracket {x^3,y}=3x^3y etc.; modular images (-2y, 2z); unimodularity flips"


def v_cubic_pq_normal_lines():
    g = zeta(3)
    A = jacobian_pq(-1, 1)
    res = A.normal_find_deg1()
    want = [(1, 1, 1), (1, g, g * g), (1, g * g, g)]
    ok = res.kind == "points" and len(res.points) == 3 and all(
        any(all(Cyclo.of(a) == b for a, b in zip(w, p)) for p in res.points) for w in want)
    om = zeta(3)
    B = jacobian_pq(-om, 1)
    res2 = B.normal_find_deg1()
    want2 = [(1, om, om), (1, 1, om * om), (1, om * om, 1)]
    ok2 = res2.kind == "points" and len(res2.points) == 3 and all(
        any(all(Cyclo.of(a) == b for a, b in zip(w, p)) for p in res2.points) for w in want2)
    return ok and ok2, "three normal lines in each case, exact coordinates"


def v_cubic_diagonalization():
    q = 1
    gamma = zeta(3)
    A = jacobian_pq(-q, q)
    p = presented_from_linear_basis(
        A, [[1, 1, 1], [1, gamma, gamma * gamma], [1, gamma * gamma, gamma]],
        ["u", "v", "w"])
    skew = is_skew_presentation(p)
    rho = gamma * q * (1 - gamma)
    ok = skew is not None and skew.rows[0][1] == rho and skew.rows[1][2] == rho \
        and skew.rows[2][0] == rho
    return ok, f"skew presentation with rho = {rho}"


def v_matrix_normal_elements():
    A2 = quantum_matrices(2)
    r2 = A2.normal_find_deg1()
    ok2 = r2.kind == "subspace" and [[str(c) for c in b] for b in r2.basis] == \
        [["0", "1", "0", "0"], ["0", "0", "1", "0"]]
    A3 = quantum_matrices(3)
    r3 = A3.normal_find_deg1()
    corner = {A3.ring.index("x1_3"), A3.ring.index("x3_1")}
    ok3 = r3.kind == "points" and len(r3.points) == 2 and all(
        sum(0 if c.is_zero() else 1 for c in p) == 1
        and next(i for i, c in enumerate(p) if not c.is_zero()) in corner
        for p in r3.points)
    return ok2 and ok3, "n=2: the (b, c) plane; n=3: the two corner directions"


def v_matrix_reflections():
    ok3 = find_reflections(quantum_matrices(3)).status == NO_REFLECTIONS
    A = quantum_matrices(2)
    rep = find_reflections(A)
    fams = [f for f in rep.families if f.samples]
    ok2 = rep.status == FOUND and fams and all(
        f.xi == -1 and not f.xi_free for f in fams)
    sample_ok = all(classify(A, g).kind == "reflection"
                    for f in fams for g in f.samples)
    return ok3 and bool(ok2) and sample_ok, "n=3 has none; n=2 swap family with xi=-1"


def v_matrix_fixed_ring():
    A = quantum_matrices(2)
    mu = Cyclo.of(1)
    g = GradedMap(Matrix([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]))
    p = fixed_group(A, group_closure([g]), bound=2)
    R = p.generator_ring
    a_, s_, d_, w_ = R.gens()
    ok = (p.polynomial
          and [str(e) for e in p.expressions] == ["a", "b + c", "d", "b*c"]
          and p.entry(0, 1) == a_ * s_ and p.entry(0, 3) == 2 * a_ * w_
          and p.entry(0, 2) == 2 * w_ and p.entry(1, 2) == s_ * d_
          and p.entry(3, 2) == 2 * w_ * d_ and p.entry(1, 3).is_zero())
    return ok, "generators a, b+c, bc, d with the six expected brackets"


def v_matrix_rigidity():
    A = quantum_matrices(2)
    g = GradedMap(Matrix([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]))
    rep = rigidity_report(A, group_closure([g]), bound=2)
    ok = (rep.verdict == DISTINGUISHED and rep.witness == "derived_components"
          and rep.ambient.derived_components == 3 and rep.fixed.derived_components == 2)
    return ok, "distinguished by 3 vs 2 derived-ideal components"


def v_weyl_center_and_reflections():
    ok = True
    details = []
    for n in (1, 2):
        H = homogenized_weyl(n)
        dims = [len(b) for b in H.center_truncated(3)]
        ok = ok and dims == [1, 1, 1, 1]
        rep = find_reflections(H)
        ok = ok and rep.status == FOUND and len(rep.families) == 1
        fam = rep.families[0]
        ok = ok and fam.xi == -1 and not fam.xi_free
        g = fam.samples[0]
        ok = ok and g.matrix.column(2 * n)[2 * n] == -1
        details.append(f"n={n}: center dims {dims}, one family, xi=-1, g(z)=-z")
    return ok, "; ".join(details)


def v_weyl_fixed_ring_and_rigidity():
    ok = True
    for n in (1, 2):
        H = homogenized_weyl(n)
        g = GradedMap(Matrix.diagonal([1] * (2 * n) + [-1]))
        p = fixed_cyclic_reflection(H, g)
        iw = p.degrees.index(2)
        ok = ok and p.expressions[iw] == H.ring.parse("z^2")
        R = p.generator_ring
        for i in range(n):
            ix = p.expressions.index(H.ring.parse(f"x{i+1}"))
            iy = p.expressions.index(H.ring.parse(f"y{i+1}"))
            ok = ok and p.entry(ix, iy) == R.var(iw)
        rep = rigidity_report(H, group_closure([g]), bound=2)
        ok = ok and rep.verdict == DISTINGUISHED and rep.witness == "center_gen_in_derived"
    return ok, "fixed bracket {x_i, y_j} = delta_ij w; rigidity via the derived ideal"


def v_ph_lie():
    empty = lie_one_dim_ideals(sl2())
    none = find_reflections(ph_lie(sl2()))
    ok1 = empty.kind == "empty" and none.status == NO_REFLECTIONS
    lie = lie_two_dim_nonabelian()
    ideals = lie_one_dim_ideals(lie)
    ok2 = ideals.kind == "points" and len(ideals.points) == 1
    A = ph_lie(lie)
    m = 3
    g = GradedMap(Matrix([[1, 0, 0], [0, zeta(m), 0], [0, 0, 1]]))
    p = fixed_cyclic_reflection(A, g)
    ok3 = sorted(str(e) for e in p.expressions) == ["x1", "x2^3", "z"]
    return ok1 and ok2 and ok3, "sl2: none; 2-dim family exists with fixed ring k[x1, x2^m, z]"


def v_envelope_dims():
    ok = True
    details = []
    cases = [
        (PoissonAlgebra(PolyRing(["x"]), {}), 1),
        (_skew2(0), 2), (_skew2(1), 2), (_skew2(2), 2),
        (jacobian_pq(0, 1), 3), (homogenized_weyl(1), 3),
    ]
    for A, n in cases:
        d = 3 if 2 * n <= 4 else 2
        dims = envelope_dims(A, d)
        expect = [c.as_fraction() for c in hilbert_free(2 * n).taylor(d)]
        ok = ok and dims == expect
        details.append(f"{2*n} gens: {dims}")
    return ok, "; ".join(details)


def v_envelope_trace():
    ok = True
    A = _skew2(1)
    for xi_order in (2, 3, 5):
        g = GradedMap(Matrix.diagonal([zeta(xi_order), 1]))
        tr = envelope_trace(A, g)
        base = trace_series(g)
        ok = ok and tr.series == base * base and tr.series == tr.factored
        ok = ok and not tr.quasi_reflection
    return ok, "trace of the extension is the square; never of quasi-reflection shape"


def v_two_variables():
    ring = PolyRing(["x", "y"])
    B = PoissonAlgebra(ring, {(0, 1): ring.parse("x^2")}, check_jacobi=False)
    ok1 = find_reflections(B).status == NO_REFLECTIONS
    A = _skew2(2)
    g = GradedMap(Matrix.diagonal([zeta(3), 1]))
    p = fixed_cyclic_reflection(A, g)
    i_pow = p.degrees.index(3)
    i_lin = p.degrees.index(1)
    entry = p.entry(i_pow, i_lin)
    R = p.generator_ring
    expect = R.monomial(tuple(1 if t in (i_pow, i_lin) else 0 for t in range(2)), 6)
    ok2 = entry == expect  # constant p*m = 2*3, differs from p = 2
    return ok1 and ok2, "x^2 bracket: no reflections; pxy fixed ring constant pm"


VECTORS: list[tuple[str, Callable]] = [
    ("cubic potential, p-term only: no normal lines, no reflections", v_cubic_p_only),
    ("cubic potential, q-term only: fixed ring bracket and modular derivation",
     v_cubic_q_only_fixed_ring),
    ("cubic potential, p = -q and p = -wq: exact normal lines", v_cubic_pq_normal_lines),
    ("cubic potential, p = -q: diagonalization to skew form", v_cubic_diagonalization),
    ("matrix Poisson algebra: degree-one normal elements (n = 2, 3)",
     v_matrix_normal_elements),
    ("matrix Poisson algebra: reflections (none for n = 3; swap family for n = 2)",
     v_matrix_reflections),
    ("matrix Poisson algebra n = 2: fixed ring presentation", v_matrix_fixed_ring),
    ("matrix Poisson algebra n = 2: rigidity by component count", v_matrix_rigidity),
    ("homogenized Weyl: center and reflection family", v_weyl_center_and_reflections),
    ("homogenized Weyl: fixed ring and rigidity", v_weyl_fixed_ring_and_rigidity),
    ("homogenized Lie bracket: sl2 rigid; 2-dim family fixed ring", v_ph_lie),
    ("enveloping algebra: graded dimensions match (1-t)^(-2n)", v_envelope_dims),
    ("enveloping algebra: trace squares and quasi-reflection test", v_envelope_trace),
    ("two-variable brackets: x^2 and pxy behaviour", v_two_variables),
]


def run_suite() -> list[VectorResult]:
    out = []
    for key, fn in VECTORS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashed vector is a failure, not an error
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        out.append(VectorResult(key, bool(ok), detail))
    return out
