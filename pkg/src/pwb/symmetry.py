"""Graded Poisson automorphisms: verification, classification, trace and
Molien series, group closure, the diagonal-derivation grading of skew
algebras, and the reflection search.

A reflection g is a rank-one update I + u k^T whose update direction u must
be a degree-one Poisson normal element, so the search runs over charts of
the normal-element variety and solves the automorphism equations in the
unknown covector k, splitting the solution variety on factorable and
univariate generators until each leaf has a constant or visibly free
eigenvalue.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .brackets import PoissonAlgebra
from .errors import BoundExceededError, NotSkewError, PwbError, SingularMatrixError
from .linalg import Matrix
from .rings import Poly, PolyRing
from .scalars import Cyclo, lcm, zeta
from .series import RationalSeries
from .solver import (DEFAULT_BUDGET, EMPTY, IDEAL_ONLY, POINTS, SUBSPACE,
                     AffineResult, classify_affine, groebner_basis, grlex_order,
                     normal_form, set_dedup)
from .upoly import UPoly, extract_roots

_ZERO = Cyclo.of(0)
_ONE = Cyclo.of(1)

NOT_AUTOMORPHISM = "not_automorphism"
IDENTITY = "identity"
REFLECTION = "reflection"
FINITE_NON_REFLECTION = "finite_non_reflection"
INFINITE_ORDER = "infinite_order"


class GradedMap:
    """An invertible linear action on the degree-one generators."""

    __slots__ = ("matrix", "_cache")

    def __init__(self, matrix: Matrix):
        if matrix.nrows != matrix.ncols:
            raise PwbError("graded map matrix must be square")
        if matrix.det().is_zero():
            raise SingularMatrixError("graded map must be invertible")
        self.matrix = matrix
        self._cache = {}

    @property
    def n(self) -> int:
        return self.matrix.nrows

    def image_of_var(self, ring: PolyRing, i: int) -> Poly:
        return ring.linear_form(self.matrix.column(i))

    def apply(self, f: Poly) -> Poly:
        return f.apply_linear(self.matrix)

    def __mul__(self, other: "GradedMap") -> "GradedMap":
        return GradedMap(self.matrix * other.matrix)

    def inverse(self) -> "GradedMap":
        return GradedMap(self.matrix.inverse())

    def __eq__(self, other):
        return isinstance(other, GradedMap) and self.matrix == other.matrix

    __hash__ = None

    def order(self) -> Optional[int]:
        """Multiplicative order, or None if infinite."""
        if "order" in self._cache:
            return self._cache["order"]
        result = _finite_order(self.matrix)
        self._cache["order"] = result
        return result

    def __repr__(self):
        return f"GradedMap({self.matrix!r})"


def _finite_order(m: Matrix) -> Optional[int]:
    """Order of an invertible matrix: minimal polynomial must be squarefree
    with all roots roots of unity."""
    mp = UPoly(m.minpoly_coeffs())
    if not mp.is_squarefree():
        return None
    roots, rem = extract_roots(mp)
    if rem.degree() >= 1:
        return None
    order = 1
    for r in roots:
        if r.is_zero():
            return None
        k = r.root_of_unity_order()
        if k is None:
            return None
        order = lcm(order, k)
    return order


@dataclass(frozen=True)
class Classification:
    kind: str
    order: Optional[int] = None
    xi: Optional[Cyclo] = None
    eigenvector: Optional[tuple] = None      # the xi-eigenvector (reflections)
    fixed_basis: Optional[tuple] = None      # basis of the fixed hyperplane
    witness_pair: Optional[tuple[str, str]] = None

    def describe(self) -> str:
        if self.kind == REFLECTION:
            return f"reflection with eigenvalue {self.xi} (order {self.order})"
        if self.kind == FINITE_NON_REFLECTION:
            return f"finite order {self.order}, not a reflection"
        return self.kind.replace("_", " ")


def is_poisson_automorphism(A: PoissonAlgebra, g: GradedMap
                            ) -> tuple[bool, Optional[tuple[str, str]]]:
    """Check g({x_i, x_j}) = {g(x_i), g(x_j)} on all generator pairs."""
    ring = A.ring
    images = [g.image_of_var(ring, i) for i in range(A.nvars)]
    for i in range(A.nvars):
        for j in range(i + 1, A.nvars):
            lhs = A.pair(i, j).apply_linear(g.matrix)
            rhs = A.bracket(images[i], images[j])
            if lhs != rhs:
                return False, (ring.names[i], ring.names[j])
    return True, None


def classify(A: PoissonAlgebra, g: GradedMap) -> Classification:
    ok, witness = is_poisson_automorphism(A, g)
    if not ok:
        return Classification(NOT_AUTOMORPHISM, witness_pair=witness)
    if g.matrix.is_identity():
        return Classification(IDENTITY, order=1)
    order = g.order()
    if order is None:
        return Classification(INFINITE_ORDER)
    n = g.n
    delta = g.matrix - Matrix.identity(n)
    if delta.rank() == 1:
        xi = g.matrix.trace() - Cyclo.of(n - 1)
        eig = Matrix(
            [[g.matrix.rows[r][c] - (xi if r == c else _ZERO) for c in range(n)]
             for r in range(n)]).kernel_basis()
        fixed = delta.kernel_basis()
        return Classification(REFLECTION, order=order, xi=xi,
                              eigenvector=tuple(eig[0]), fixed_basis=tuple(tuple(v) for v in fixed))
    return Classification(FINITE_NON_REFLECTION, order=order)


def trace_series(g: GradedMap) -> RationalSeries:
    """Generating series of traces on graded components.

    The matrix here acts on the degree-one generators themselves, so the
    series is 1/det(1 - g t); the determinant picks up the inverse only when
    the matrix is taken on the underlying space instead of the functions.
    """
    m = g.matrix
    coeffs = m.charpoly_coeffs()  # det(tI - M) = t^n + a_{n-1}t^{n-1} + ... + a_0
    n = m.nrows
    den = UPoly([_ONE] + [coeffs[n - k] for k in range(1, n + 1)])
    return RationalSeries(UPoly.one(), den)


@dataclass(frozen=True)
class PoissonGroup:
    generators: tuple
    elements: tuple
    exponent: int

    @property
    def order(self) -> int:
        return len(self.elements)


def group_closure(gens: Sequence[GradedMap], bound: int = 512) -> PoissonGroup:
    """Breadth-first closure; every generator must have finite order."""
    if not gens:
        raise PwbError("need at least one generator")
    n = gens[0].n
    elements: list[GradedMap] = [GradedMap(Matrix.identity(n))]
    frontier = list(elements)
    while frontier:
        new_frontier = []
        for e in frontier:
            for g in gens:
                h = e * g
                if not any(h == known for known in elements):
                    elements.append(h)
                    new_frontier.append(h)
                    if len(elements) > bound:
                        raise BoundExceededError(f"group closure exceeded {bound} elements")
        frontier = new_frontier
    exponent = 1
    for e in elements:
        k, power = 1, e.matrix
        while not power.is_identity():
            power = power * e.matrix
            k += 1
            if k > bound:
                raise BoundExceededError("element order exceeded the bound")
        exponent = lcm(exponent, k)
    return PoissonGroup(tuple(gens), tuple(elements), exponent)


def molien_series(group: PoissonGroup) -> RationalSeries:
    total = None
    for e in group.elements:
        s = trace_series(e)
        total = s if total is None else total + s
    return total / Cyclo.of(group.order)


# -- skew-specific grading machinery ---------------------------------------


def l_degree(A: PoissonAlgebra, exponents: Sequence[int]) -> list[Cyclo]:
    """Diagonal-derivation degree of the monomial x^I: the vector q^T I."""
    q = A.skew_matrix()
    if q is None:
        raise NotSkewError("algebra is not skew-symmetric")
    n = A.nvars
    return [sum((Cyclo.of(exponents[i]) * q.rows[i][j] for i in range(n)), _ZERO)
            for j in range(n)]


def bicharacter(A: PoissonAlgebra, I: Sequence[int], J: Sequence[int]) -> Cyclo:
    """chi(alpha_I, alpha_J) = I^T q J, so that {x^I, x^J} = chi * x^(I+J)."""
    q = A.skew_matrix()
    if q is None:
        raise NotSkewError("algebra is not skew-symmetric")
    acc = _ZERO
    for i, a in enumerate(I):
        if a:
            for j, b in enumerate(J):
                if b:
                    acc = acc + q.rows[i][j] * (a * b)
    return acc


def block_decomposition(q: Matrix) -> list[list[int]]:
    """Partition {0..n-1} by equal rows of the skew matrix q."""
    n = q.nrows
    for i in range(n):
        for j in range(n):
            if not (q.rows[i][j] + q.rows[j][i]).is_zero():
                raise NotSkewError("matrix is not skew-symmetric")
    blocks: list[list[int]] = []
    for i in range(n):
        placed = False
        for block in blocks:
            r = block[0]
            if all(q.rows[i][k] == q.rows[r][k] for k in range(n)):
                block.append(i)
                placed = True
                break
        if not placed:
            blocks.append([i])
    for block in blocks:
        for i in block:
            for j in block:
                if not q.rows[i][j].is_zero():
                    raise NotSkewError("nonzero bracket inside a block")
    return blocks


# -- reflection search -------------------------------------------------------

NO_REFLECTIONS = "no_reflections"
FOUND = "found"
INCONCLUSIVE = "inconclusive"


@dataclass
class ReflectionFamily:
    """One leaf of the reflection search.

    direction: coefficients of the eigenvector u as polynomials in the chart
    parameters (constants when the chart is a single point).  xi is the
    common eigenvalue when it is constant on the leaf, None when the leaf
    carries a free eigenvalue parameter.
    """

    chart: int
    direction: tuple
    xi: Optional[Cyclo]
    xi_free: bool
    relations: tuple
    assignments: tuple
    samples: tuple = ()

    def describe(self, names: Sequence[str]) -> str:
        terms = " + ".join(f"({d})*{names[i]}" for i, d in enumerate(self.direction)
                           if not (isinstance(d, Cyclo) and d.is_zero()))
        xi = "free root of unity" if self.xi_free else str(self.xi)
        return f"eigenvector {terms}, eigenvalue {xi}"


@dataclass
class ReflectionsReport:
    status: str
    families: list[ReflectionFamily] = field(default_factory=list)
    normal_set: Optional[object] = None
    diagnostics: list[str] = field(default_factory=list)

    @property
    def xis(self) -> list[Optional[Cyclo]]:
        return [f.xi for f in self.families]


def find_reflections(A: PoissonAlgebra, budget: int = DEFAULT_BUDGET,
                     max_samples: int = 2) -> ReflectionsReport:
    A.require_quadratic("find_reflections")
    n = A.nvars
    charts: list[tuple[list, int]] = []  # (direction coefficient vectors over params, nparams)
    normset = None
    diagnostics: list[str] = []
    q = A.skew_matrix()
    if q is not None:
        # skew case: a degree-one normal element is supported inside a single
        # block, so the blocks give a complete chart cover of the candidates
        for block in block_decomposition(q):
            basis = []
            for i in block:
                vec = [_ZERO] * n
                vec[i] = _ONE
                basis.append(vec)
            r = len(basis)
            for j in range(r):
                charts.append(([basis[j]] + basis[j + 1:], r - 1 - j))
        diagnostics.append("skew bracket: candidate eigenvectors taken blockwise")
    else:
        normset = A.normal_find_deg1(budget)
        if normset.kind == EMPTY:
            return ReflectionsReport(NO_REFLECTIONS, normal_set=normset,
                                     diagnostics=["no degree-one Poisson normal elements"])
        if normset.kind == IDEAL_ONLY:
            return ReflectionsReport(
                INCONCLUSIVE, normal_set=normset,
                diagnostics=["normal-element variety could not be enumerated"])
        if normset.kind == POINTS:
            for p in normset.points:
                charts.append(([list(p)], 0))
        else:
            basis = [list(b) for b in normset.basis]
            r = len(basis)
            for j in range(r):
                charts.append(([basis[j]] + basis[j + 1:], r - 1 - j))

    families: list[ReflectionFamily] = []
    inconclusive = False
    for chart_idx, (vectors, nparams) in enumerate(charts):
        try:
            found = _solve_reflection_chart(A, vectors, nparams, budget, max_samples)
        except PwbError as exc:
            inconclusive = True
            diagnostics.append(f"chart {chart_idx}: {exc}")
            continue
        for fam in found:
            fam.chart = chart_idx
            if fam.xi_free and not fam.samples:
                # a free-eigenvalue leaf only counts once a root-of-unity
                # member has actually been exhibited
                inconclusive = True
                diagnostics.append(
                    f"chart {chart_idx}: candidate family with unresolved eigenvalue "
                    f"({', '.join(str(r) for r in fam.relations) or 'no relations'})")
                continue
            families.append(fam)
    if families:
        return ReflectionsReport(FOUND, families, normal_set=normset, diagnostics=diagnostics)
    if inconclusive:
        return ReflectionsReport(INCONCLUSIVE, normal_set=normset, diagnostics=diagnostics)
    return ReflectionsReport(NO_REFLECTIONS, normal_set=normset, diagnostics=diagnostics)


def _solve_reflection_chart(A: PoissonAlgebra, vectors, nparams: int, budget: int,
                            max_samples: int) -> list[ReflectionFamily]:
    """Reflections with eigenvector u = v0 + sum_l t_l v_(l+1)."""
    n = A.nvars
    param_names = tuple(f"_t{l+1}" for l in range(nparams))
    k_names = tuple(f"_k{i+1}" for i in range(n))
    pk = PolyRing(param_names + k_names)
    kvar = [pk.var(nparams + i) for i in range(n)]
    # u coefficients as elements of pk
    ucoef = []
    for i in range(n):
        acc = pk.scalar(vectors[0][i])
        for l in range(nparams):
            acc = acc + pk.var(l) * pk.scalar(vectors[l + 1][i])
        ucoef.append(acc)
    # mixed ring for the polynomial identities: params + k + x
    mixed = PolyRing(pk.names + A.ring.names)
    off = pk.nvars

    def lift_pk(p: Poly) -> Poly:
        return Poly(mixed, {e + (0,) * n: c for e, c in p.terms.items()})

    def lift_x(p: Poly) -> Poly:
        return Poly(mixed, {(0,) * off + e: c for e, c in p.terms.items()})

    u_mixed = mixed.zero()
    for i in range(n):
        u_mixed = u_mixed + lift_pk(ucoef[i]) * mixed.var(off + i)
    # g(x_i) = x_i + k_i u
    images = [mixed.var(l) for l in range(off)] + \
             [mixed.var(off + i) + lift_pk(kvar[i]) * u_mixed for i in range(n)]
    # {x_i, u} = sum_l u_l {x_i, x_l}
    bracket_with_u = []
    for i in range(n):
        acc = mixed.zero()
        for l in range(n):
            p = A.pair(i, l)
            if not p.is_zero():
                acc = acc + lift_pk(ucoef[l]) * lift_x(p)
        bracket_with_u.append(acc)
    equations: list[Poly] = []
    for i in range(n):
        for j in range(i + 1, n):
            pij = A.pair(i, j)
            lhs = lift_x(pij).substitute(images, mixed) if not pij.is_zero() else mixed.zero()
            rhs = lift_x(pij) \
                + lift_pk(kvar[j]) * bracket_with_u[i] \
                - lift_pk(kvar[i]) * bracket_with_u[j]
            diff = lhs - rhs
            if diff.is_zero():
                continue
            grouped: dict = {}
            for e, c in diff.terms.items():
                grouped.setdefault(e[off:], {})[e[:off]] = c
            for _, pk_terms in grouped.items():
                equations.append(Poly(pk, dict(pk_terms)))
    xi_expr = pk.zero()
    for i in range(n):
        xi_expr = xi_expr + kvar[i] * ucoef[i]

    leaves: list[tuple[dict, list[Poly]]] = []
    _branch_solve(equations, pk, {}, leaves, budget)

    families: list[ReflectionFamily] = []
    seen: set = set()
    for assignments, residual in leaves:
        xi_nf = _apply_assignments(xi_expr, assignments, pk)
        if residual:
            xi_nf = normal_form(xi_nf, residual, grlex_order)
        if xi_nf.is_zero():
            continue  # unipotent directions are not reflections
        if xi_nf.is_scalar():
            xi = _ONE + xi_nf.as_scalar()
            if xi.is_zero() or xi.is_one():
                continue
            if xi.root_of_unity_order() is None:
                continue
            xi_value, xi_free = xi, False
        else:
            xi_value, xi_free = None, True
        direction = tuple(_apply_assignments(c, assignments, pk) for c in ucoef)
        sig = (str(sorted((k, str(v)) for k, v in assignments.items())),
               str(sorted(str(g) for g in residual)),
               str(xi_value), xi_free)
        if sig in seen:
            continue
        seen.add(sig)
        samples = _sample_reflections(A, vectors, nparams, pk, assignments, residual,
                                      xi_expr, xi_free, max_samples, budget)
        families.append(ReflectionFamily(
            chart=-1,
            direction=tuple(d.as_scalar() if d.is_scalar() else d for d in direction),
            xi=xi_value, xi_free=xi_free,
            relations=tuple(residual),
            assignments=tuple(sorted((pk.names[i], str(v)) for i, v in assignments.items())),
            samples=tuple(samples)))
    return families


def _apply_assignments(p: Poly, assignments: dict, ring: PolyRing) -> Poly:
    from .solver import _substitute_value
    for var, value in assignments.items():
        p = _substitute_value(p, var, value)
    return p


def _branch_solve(equations: list[Poly], ring: PolyRing, assignments: dict,
                  leaves: list, budget: int, depth: int = 0):
    """Split the solution variety on univariate and monomial-content factors."""
    if depth > 40:
        raise PwbError("reflection search branch limit exceeded")
    eqs = [e for e in equations if not e.is_zero()]
    if any(e.is_scalar() for e in eqs):
        return
    gb = groebner_basis(eqs, grlex_order, budget)
    if any(g.is_scalar() for g in gb):
        return
    from .solver import _poly_to_upoly, _substitute_value
    # univariate generators: branch on their split roots
    for g in gb:
        for var in range(ring.nvars):
            if var in assignments:
                continue
            u = _poly_to_upoly(g, var)
            if u is not None and u.degree() >= 1:
                roots, rem = extract_roots(u)
                if rem.degree() >= 1:
                    raise PwbError(
                        f"univariate condition {g} does not split over cyclotomic numbers")
                for r in set_dedup(roots):
                    sub = [_substitute_value(h, var, r) for h in gb]
                    _branch_solve(sub, ring, {**assignments, var: r}, leaves, budget, depth + 1)
                return
    # monomial-content factors: V(x^a * h) = V(x) u V(h)
    for g in gb:
        content, cofactor = g.monomial_content()
        if any(content):
            for v in (i for i, k in enumerate(content) if k):
                _branch_solve(gb + [ring.var(v)], ring, dict(assignments),
                              leaves, budget, depth + 1)
            _branch_solve([cofactor if h is g else h for h in gb], ring,
                          dict(assignments), leaves, budget, depth + 1)
            return
    leaves.append((assignments, gb))


def _sample_reflections(A: PoissonAlgebra, vectors, nparams: int, pk: PolyRing,
                        assignments: dict, residual: list, xi_expr: Poly,
                        xi_free: bool, max_samples: int, budget: int) -> list[GradedMap]:
    """Concrete verified reflections on a leaf."""
    targets: list[list[Poly]] = []
    if xi_free:
        for xi0 in (Cyclo.of(-1), zeta(3), zeta(4)):
            extra = _apply_assignments(xi_expr, assignments, pk) - pk.scalar(xi0 - _ONE)
            targets.append(list(residual) + [extra])
    else:
        targets.append(list(residual))
    out: list[GradedMap] = []
    for gens in targets:
        if len(out) >= max_samples:
            break
        point = _find_point(gens, pk, assignments, budget)
        if point is None:
            continue
        g = _build_reflection(A, vectors, nparams, point)
        if g is None:
            continue
        cls = classify(A, g)
        if cls.kind == REFLECTION:
            if not any(g == h for h in out):
                out.append(g)
    return out


def _find_point(gens: list[Poly], ring: PolyRing, assignments: dict,
                budget: int, depth: int = 0) -> Optional[list[Cyclo]]:
    """One exact solution of the system, free variables getting small values."""
    from .solver import _substitute_value
    if depth > ring.nvars + 2:
        return None
    values: dict = dict(assignments)
    gens = [g for g in gens if not g.is_zero()]
    for var, val in values.items():
        gens = [_substitute_value(g, var, val) for g in gens]
    gens = [g for g in gens if not g.is_zero()]
    if any(g.is_scalar() for g in gens):
        return None
    remaining = [v for v in range(ring.nvars) if v not in values]
    res = classify_affine(gens, ring, budget) if gens else AffineResult(SUBSPACE,
        particular=[_ZERO] * ring.nvars, directions=[])
    if res.kind == EMPTY:
        return None
    if res.kind == POINTS:
        point = list(res.points[0])
        for var, val in values.items():
            point[var] = val
        return point
    if res.kind == SUBSPACE:
        point = list(res.particular)
        for var, val in values.items():
            point[var] = val
        return point
    # stuck on a nonlinear leaf: pin one free variable and retry
    for var in remaining:
        if any(any(e[var] for e in g.terms) for g in gens):
            for guess in (Cyclo.of(1), Cyclo.of(-1), Cyclo.of(2), Cyclo.of(-2), _ZERO):
                sub = [_substitute_value(g, var, guess) for g in gens]
                result = _find_point(sub, ring, {**values, var: guess}, budget, depth + 1)
                if result is not None:
                    return result
            return None
    return None


def _build_reflection(A: PoissonAlgebra, vectors, nparams: int,
                      point: list[Cyclo]) -> Optional[GradedMap]:
    n = A.nvars
    u = [Cyclo.of(vectors[0][i]) for i in range(n)]
    for l in range(nparams):
        t = point[l]
        if not t.is_zero():
            u = [a + t * Cyclo.of(vectors[l + 1][i]) for i, a in enumerate(u)]
    k = point[nparams: nparams + n]
    rows = [[(_ONE if r == c else _ZERO) + u[r] * k[c] for c in range(n)] for r in range(n)]
    m = Matrix(rows)
    if m.det().is_zero():
        return None
    return GradedMap(m)
