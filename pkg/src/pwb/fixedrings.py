"""Fixed subrings A^G for finite graded Poisson groups.

Invariants are computed per degree up to a bound d; generators are selected
canonically (reduced against products of lower-degree generators in the
ambient monomial order), the induced bracket table is expressed in the
generators, and polynomiality is certified by comparing the Molien series
with the free product over generator degrees.  Every report carries the
truncation caveat: completeness of the generator list is certified only up
to d.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .brackets import PoissonAlgebra, transport
from .errors import (DegreeBoundTooSmallError, InducedBracketNotClosedError,
                     NotReflectionError, PwbError)
from .linalg import Matrix, _express_in_rows
from .rings import Poly, PolyRing, grlex_key
from .scalars import Cyclo
from .series import RationalSeries, hilbert_weighted
from .solver import DEFAULT_BUDGET, subalgebra_member
from .symmetry import (REFLECTION, GradedMap, PoissonGroup, classify, group_closure,
                       molien_series)
from .upoly import UPoly, extract_roots

_ZERO = Cyclo.of(0)
_ONE = Cyclo.of(1)

TRUNCATION_CAVEAT = ("generator completeness certified only up to the degree bound; "
                     "higher-degree invariants are not excluded")


@dataclass
class PresentedPoisson:
    """A fixed subring: generators with degrees, relations, induced brackets."""

    ambient: PoissonAlgebra
    names: tuple[str, ...]
    degrees: tuple[int, ...]
    expressions: tuple[Poly, ...]
    table: dict
    polynomial: bool
    relations: Optional[tuple[Poly, ...]]
    molien: Optional[RationalSeries]
    bound: int
    diagnostics: list[str] = field(default_factory=list)

    @property
    def generator_ring(self) -> PolyRing:
        return PolyRing(self.names)

    def as_algebra(self, check_jacobi: bool = True) -> PoissonAlgebra:
        if not self.polynomial:
            raise PwbError("presentation has relations; not a polynomial Poisson algebra")
        return PoissonAlgebra(self.generator_ring, dict(self.table), check_jacobi=check_jacobi)

    def entry(self, i: int, j: int) -> Poly:
        ring = self.generator_ring
        if i == j:
            return ring.zero()
        if i < j:
            return self.table.get((i, j), ring.zero())
        p = self.table.get((j, i))
        return -p if p is not None else ring.zero()

    def describe(self) -> str:
        gens = ", ".join(f"{n} = {e} (deg {d})"
                         for n, e, d in zip(self.names, self.expressions, self.degrees))
        return gens


def is_skew_presentation(p: PresentedPoisson) -> Optional[Matrix]:
    """The matrix (q_ij) when every table entry is q_ij * g_i * g_j, else None."""
    if p.relations is None or p.relations:
        return None
    k = len(p.names)
    rows = [[_ZERO] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            entry = p.entry(i, j)
            if entry.is_zero():
                continue
            e = [0] * k
            e[i] += 1
            e[j] += 1
            mono = tuple(e)
            if any(key != mono for key in entry.terms):
                return None
            q = entry.terms[mono]
            rows[i][j] = q
            rows[j][i] = -q
    return Matrix(rows)


# -- simultaneous diagonalization --------------------------------------------


def _try_diagonalize(group: PoissonGroup):
    """Common eigenbasis T and per-generator eigenvalue lists, or None."""
    gens = [g.matrix for g in group.generators]
    n = gens[0].nrows
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if gens[i] * gens[j] != gens[j] * gens[i]:
                return None
    # spaces: (list of column vectors, chars so far)
    spaces: list[tuple[list[list[Cyclo]], list[Cyclo]]] = [
        ([list(r) for r in Matrix.identity(n).rows], [])]
    for g in gens:
        new_spaces = []
        for basis, chars in spaces:
            k = len(basis)
            # restriction of g to the span: g * b_j = sum_i R[i][j] b_i
            rcols = []
            for b in basis:
                img = g.apply(b)
                coeffs = _express_in_rows(basis, img, n)
                if coeffs is None:
                    return None
                rcols.append(coeffs)
            R = Matrix(rcols).transpose()
            mp = UPoly(R.minpoly_coeffs())
            roots, rem = extract_roots(mp)
            if rem.degree() >= 1 or not mp.is_squarefree():
                return None
            uniq: list[Cyclo] = []
            for r in roots:
                if not any(r == u for u in uniq):
                    uniq.append(r)
            uniq.sort(key=lambda c: (not c.is_one(), str(c)))
            for lam in uniq:
                delta = Matrix([[R.rows[a][b] - (lam if a == b else _ZERO)
                                 for b in range(k)] for a in range(k)])
                for vec in delta.kernel_basis():
                    col = [sum((vec[t] * basis[t][i] for t in range(k)), _ZERO)
                           for i in range(n)]
                    new_spaces.append(([col], chars + [lam]))
        spaces = new_spaces
    T = Matrix([s[0][0] for s in spaces]).transpose()
    chars = [[s[1][gi] for s in spaces] for gi in range(len(gens))]
    return T, chars


# -- generator selection ------------------------------------------------------


def _reduce_against(poly: Poly, echelon: dict) -> Poly:
    changed = True
    while changed and not poly.is_zero():
        changed = False
        for e in poly.support():
            hit = echelon.get(e)
            if hit is not None:
                poly = poly - poly.terms[e] * hit
                changed = True
                break
    return poly


def _echelon_insert(poly: Poly, echelon: dict) -> Optional[Poly]:
    """Reduce and insert; returns the monic remainder if it was new."""
    poly = _reduce_against(poly, echelon)
    if poly.is_zero():
        return None
    lead, c = poly.leading()
    poly = poly * c.inverse()
    echelon[lead] = poly
    return poly


def _products_of_degree(chosen: list[tuple[Poly, int]], k: int) -> list[Poly]:
    """All products of chosen generators with total degree k (multisets)."""
    out: list[Poly] = []

    def rec(idx: int, remaining: int, acc: Optional[Poly]):
        if remaining == 0:
            if acc is not None:
                out.append(acc)
            return
        if idx == len(chosen):
            return
        poly, deg = chosen[idx]
        rec(idx + 1, remaining, acc)
        if deg <= remaining:
            rec(idx, remaining - deg, poly if acc is None else acc * poly)

    rec(0, k, None)
    return out


def _canonical_generators(bases_per_degree: dict, d: int) -> list[tuple[Poly, int]]:
    """Pick new generators per degree as canonical complements of products."""
    chosen: list[tuple[Poly, int]] = []
    for k in range(1, d + 1):
        echelon: dict = {}
        for prod in _products_of_degree(chosen, k):
            _echelon_insert(prod, echelon)
        for vec in bases_per_degree.get(k, []):
            new = _echelon_insert(vec, echelon)
            if new is not None:
                chosen.append((new, k))
    return chosen


# -- fixed rings ---------------------------------------------------------------


def fixed_group(A: PoissonAlgebra, group: PoissonGroup, bound: Optional[int] = None,
                canonical: bool = True, with_relations: bool = True,
                budget: int = DEFAULT_BUDGET) -> PresentedPoisson:
    """Invariant generators up to the degree bound with the induced bracket."""
    d = bound if bound is not None else max(4, 2 * group.exponent)
    diag = _try_diagonalize(group)
    if diag is not None:
        return _fixed_diagonal(A, group, diag[0], diag[1], d, canonical,
                               with_relations, budget)
    return _fixed_reynolds(A, group, d, canonical, with_relations, budget)


def fixed_cyclic_reflection(A: PoissonAlgebra, g: GradedMap,
                            budget: int = DEFAULT_BUDGET) -> PresentedPoisson:
    """Fixed ring of a single reflection: the fixed hyperplane plus y1^m."""
    cls = classify(A, g)
    if cls.kind != REFLECTION:
        raise NotReflectionError(f"map classifies as {cls.kind}")
    m = cls.order
    T = Matrix([list(v) for v in cls.fixed_basis] + [list(cls.eigenvector)]).transpose()
    chars = [[_ONE] * (A.nvars - 1) + [cls.xi]]
    group = group_closure([g])
    p = _fixed_diagonal(A, group, T, chars, m, canonical=False,
                        with_relations=True, budget=budget)
    if sorted(p.degrees) != [1] * (A.nvars - 1) + [m]:
        raise InducedBracketNotClosedError(
            "cyclic reflection fixed ring has unexpected generator degrees")
    return p


def _monomial_is_invariant(exps, chars_per_gen) -> bool:
    for chars in chars_per_gen:
        acc = _ONE
        for j, e in enumerate(exps):
            if e:
                acc = acc * chars[j] ** e
        if not acc.is_one():
            return False
    return True


def _fixed_diagonal(A: PoissonAlgebra, group: PoissonGroup, T: Matrix, chars,
                    d: int, canonical: bool, with_relations: bool,
                    budget: int) -> PresentedPoisson:
    n = A.nvars
    ynames = tuple(f"_y{i+1}" for i in range(n))
    Ay = transport(A, T, ynames)
    yring = Ay.ring

    invariant: dict[int, list[tuple[int, ...]]] = {}
    for k in range(1, d + 1):
        invariant[k] = [e for e in yring.monomials_of_degree(k)
                        if _monomial_is_invariant(e, chars)]

    # non-decomposable invariant exponents up to degree d, degree-ascending
    gen_exps: list[tuple[int, ...]] = []
    in_monoid: set = set()
    for k in range(1, d + 1):
        for e in invariant[k]:
            decomposable = False
            for g in gen_exps:
                if all(a >= b for a, b in zip(e, g)):
                    rest = tuple(a - b for a, b in zip(e, g))
                    if sum(rest) == 0 or rest in in_monoid:
                        decomposable = True
                        break
            if decomposable:
                in_monoid.add(e)
            else:
                gen_exps.append(e)
                in_monoid.add(e)

    def expand(e: tuple[int, ...]) -> Poly:
        acc = A.ring.one()
        for j, k in enumerate(e):
            if k:
                acc = acc * A.ring.linear_form(T.column(j)) ** k
        return acc

    if canonical:
        bases: dict[int, list[Poly]] = {}
        for k in range(1, d + 1):
            vecs = [expand(e) for e in invariant[k]]
            vecs.sort(key=lambda p: grlex_key(p.leading()[0]), reverse=True)
            bases[k] = vecs
        chosen = _canonical_generators(bases, d)
        expressions = [p for p, _ in chosen]
        degrees = [deg for _, deg in chosen]
        names = _generator_names(A.ring, expressions)
        table = {}
        for i in range(len(chosen)):
            for j in range(i + 1, len(chosen)):
                br = A.bracket(expressions[i], expressions[j])
                if br.is_zero():
                    continue
                expr = subalgebra_member(br, expressions, tag_names=names, budget=budget)
                if expr is None:
                    raise InducedBracketNotClosedError(
                        f"bracket of {names[i]} and {names[j]} leaves the subalgebra")
                table[(i, j)] = expr
    else:
        gen_exps.sort(key=lambda e: (sum(e), grlex_key(e)))
        expressions = [expand(e) for e in gen_exps]
        degrees = [sum(e) for e in gen_exps]
        names = _generator_names(A.ring, expressions)
        gen_ring = PolyRing(tuple(names))
        table = {}
        for i in range(len(gen_exps)):
            for j in range(i + 1, len(gen_exps)):
                br = Ay.bracket(yring.monomial(gen_exps[i]), yring.monomial(gen_exps[j]))
                if br.is_zero():
                    continue
                table[(i, j)] = _factor_into_generators(br, gen_exps, gen_ring)

    molien = molien_series(group)
    product = hilbert_weighted(degrees) if degrees else RationalSeries.from_scalar(1)
    polynomial = molien == product
    diagnostics = [TRUNCATION_CAVEAT]
    relations: Optional[tuple[Poly, ...]]
    if polynomial:
        relations = ()
    elif with_relations:
        relations = _relations_by_elimination(expressions, names, budget)
        if not relations:
            k = _first_series_gap(molien, degrees, 2 * d + 4)
            raise DegreeBoundTooSmallError(k or d,
                                           "generators incomplete: Molien series exceeds "
                                           f"the generated subalgebra (first gap at degree {k})")
        diagnostics.append(f"{len(relations)} relation(s) among generators")
    else:
        relations = None
        diagnostics.append("relations not computed (non-polynomial presentation)")
    return PresentedPoisson(A, tuple(names), tuple(degrees), tuple(expressions),
                            table, polynomial, relations, molien, d, diagnostics)


def _fixed_reynolds(A: PoissonAlgebra, group: PoissonGroup, d: int, canonical: bool,
                    with_relations: bool, budget: int) -> PresentedPoisson:
    """Generic path: exact Reynolds averaging over the closure, per degree."""
    ring = A.ring
    order_inv = Cyclo.of(group.order).inverse()
    bases: dict[int, list[Poly]] = {}
    for k in range(1, d + 1):
        echelon: dict = {}
        vecs = []
        for e in ring.monomials_of_degree(k):
            mono = ring.monomial(e)
            acc = ring.zero()
            for g in group.elements:
                acc = acc + g.apply(mono)
            avg = acc * order_inv
            if not avg.is_zero() and _echelon_insert(avg, echelon) is not None:
                vecs.append(avg)
        bases[k] = vecs
    chosen = _canonical_generators(bases, d)
    expressions = [p for p, _ in chosen]
    degrees = [deg for _, deg in chosen]
    names = _generator_names(ring, expressions)
    table = {}
    for i in range(len(chosen)):
        for j in range(i + 1, len(chosen)):
            br = A.bracket(expressions[i], expressions[j])
            if br.is_zero():
                continue
            expr = subalgebra_member(br, expressions, tag_names=names, budget=budget)
            if expr is None:
                raise InducedBracketNotClosedError(
                    f"bracket of {names[i]} and {names[j]} leaves the subalgebra")
            table[(i, j)] = expr
    molien = molien_series(group)
    product = hilbert_weighted(degrees) if degrees else RationalSeries.from_scalar(1)
    polynomial = molien == product
    diagnostics = [TRUNCATION_CAVEAT]
    relations: Optional[tuple[Poly, ...]]
    if polynomial:
        relations = ()
    elif with_relations:
        relations = _relations_by_elimination(expressions, names, budget)
        if not relations:
            k = _first_series_gap(molien, degrees, 2 * d + 4)
            raise DegreeBoundTooSmallError(k or d)
        diagnostics.append(f"{len(relations)} relation(s) among generators")
    else:
        relations = None
    return PresentedPoisson(A, tuple(names), tuple(degrees), tuple(expressions),
                            table, polynomial, relations, molien, d, diagnostics)


def _generator_names(ring: PolyRing, expressions: Sequence[Poly]) -> list[str]:
    """Variable names where the expression is literally a variable, else g1, g2, ..."""
    names = []
    counter = 0
    for p in expressions:
        name = None
        if len(p.terms) == 1:
            e, c = next(iter(p.terms.items()))
            if sum(e) == 1 and c.is_one():
                name = ring.names[next(i for i, k in enumerate(e) if k)]
        if name is None:
            counter += 1
            name = f"g{counter}"
        names.append(name)
    seen: dict = {}
    out = []
    for name in names:
        if name in seen:
            seen[name] += 1
            name = f"{name}_{seen[name]}"
        else:
            seen[name] = 0
        out.append(name)
    return out


def _factor_into_generators(p: Poly, gen_exps: list, gen_ring: PolyRing) -> Poly:
    """Express a polynomial with monoid-monomial terms in the generators."""
    out = gen_ring.zero()
    memo: dict = {}

    def factor(e: tuple[int, ...]) -> Optional[tuple[int, ...]]:
        if sum(e) == 0:
            return (0,) * gen_ring.nvars
        if e in memo:
            return memo[e]
        for gi, g in enumerate(gen_exps):
            if all(a >= b for a, b in zip(e, g)):
                rest = factor(tuple(a - b for a, b in zip(e, g)))
                if rest is not None:
                    result = tuple(r + (1 if i == gi else 0) for i, r in enumerate(rest))
                    memo[e] = result
                    return result
        memo[e] = None
        return None

    for e, c in p.terms.items():
        f = factor(e)
        if f is None:
            raise InducedBracketNotClosedError(f"monomial {e} is not a generator product")
        out = out + Poly(gen_ring, {f: c})
    return out


def _relations_by_elimination(expressions: Sequence[Poly], names: Sequence[str],
                              budget: int) -> tuple[Poly, ...]:
    """Kernel of k[tags] -> A, t_i -> g_i, by elimination."""
    from .rings import embed
    from .solver import elim_order, groebner_basis
    if not expressions:
        return ()
    ring = expressions[0].ring
    n = ring.nvars
    combined = PolyRing(ring.names + tuple(f"_tag{i+1}" for i in range(len(expressions))))
    rels = [embed(g, combined) - combined.var(n + i) for i, g in enumerate(expressions)]
    gb = groebner_basis(rels, elim_order(n), budget)
    tag_ring = PolyRing(tuple(names))
    out = []
    for g in gb:
        if not any(any(e[:n]) for e in g.terms):
            out.append(Poly(tag_ring, {e[n:]: c for e, c in g.terms.items()}))
    return tuple(out)


def _first_series_gap(molien: RationalSeries, degrees: Sequence[int],
                      upto: int) -> Optional[int]:
    product = hilbert_weighted(degrees) if degrees else RationalSeries.from_scalar(1)
    a = molien.taylor(upto)
    b = product.taylor(upto)
    for k in range(upto + 1):
        if a[k] != b[k]:
            return k
    return None


def presented_from_linear_basis(A: PoissonAlgebra, vectors: Sequence[Sequence],
                                names: Sequence[str]) -> PresentedPoisson:
    """Present A on a new degree-one generating basis (a plain change of basis)."""
    T = Matrix([[Cyclo.of(c) for c in v] for v in vectors]).transpose()
    By = transport(A, T, names)
    expressions = tuple(A.ring.linear_form(T.column(j)) for j in range(A.nvars))
    return PresentedPoisson(A, tuple(names), (1,) * A.nvars, expressions,
                            dict(By.table), True, (), None, 1,
                            ["degree-one basis change, not a fixed ring"])


# -- rigidity reports -----------------------------------------------------------


@dataclass
class AlgebraProfile:
    label: str
    polynomial: bool
    skew: Optional[bool] = None
    unimodular: Optional[bool] = None
    center_dims: Optional[list[int]] = None
    center_generator: Optional[str] = None
    center_gen_in_derived: Optional[bool] = None
    derived_dims: Optional[list[int]] = None
    derived_monomial: Optional[bool] = None
    derived_components: Optional[int] = None
    component_summary: Optional[list] = None
    notes: list[str] = field(default_factory=list)


DISTINGUISHED = "distinguished"
NOT_DISTINGUISHED = "not_distinguished"

# invariants that do not depend on a choice of grading; compared in this order
_ROBUST_INVARIANTS = ("polynomial", "unimodular", "center_gen_in_derived",
                      "derived_components")


@dataclass
class RigidityReport:
    ambient: AlgebraProfile
    fixed: AlgebraProfile
    presented: PresentedPoisson
    verdict: str
    witness: Optional[str]
    notes: list[str] = field(default_factory=list)


def profile_algebra(B: PoissonAlgebra, label: str, weights: Optional[Sequence[int]] = None,
                    center_bound: int = 3, derived_bound: int = 4) -> AlgebraProfile:
    w = list(weights) if weights is not None else [1] * B.nvars
    derived = B.derived_ideal(derived_bound, w)
    center = B.center_truncated(center_bound, w)
    center_gen = next((basis[0] for k, basis in enumerate(center) if k and basis), None)
    monomial = derived.is_monomial()
    prof = AlgebraProfile(
        label=label,
        polynomial=True,
        skew=B.skew_matrix() is not None,
        unimodular=B.is_unimodular(),
        center_dims=[len(b) for b in center],
        center_generator=str(center_gen) if center_gen is not None else None,
        center_gen_in_derived=(derived.contains(center_gen) if center_gen is not None else None),
        derived_dims=derived.dims(),
        derived_monomial=monomial,
        derived_components=len(derived.components()) if monomial else None,
        component_summary=[list(c) for c in derived.components()] if monomial else None,
    )
    return prof


def profile_presented(P: PresentedPoisson, label: str, center_bound: int = 3,
                      derived_bound: int = 4) -> AlgebraProfile:
    if not P.polynomial:
        return AlgebraProfile(
            label=label, polynomial=False,
            skew=is_skew_presentation(P) is not None if P.relations == () else None,
            notes=["non-polynomial presentation: only presentation-level data computed"]
                  + list(P.diagnostics))
    B = P.as_algebra(check_jacobi=False)
    prof = profile_algebra(B, label, weights=P.degrees,
                           center_bound=center_bound, derived_bound=derived_bound)
    prof.skew = is_skew_presentation(P) is not None
    prof.notes.extend(P.diagnostics)
    return prof


def rigidity_report(A: PoissonAlgebra, group: PoissonGroup, bound: Optional[int] = None,
                    center_bound: int = 3, derived_bound: int = 4,
                    budget: int = DEFAULT_BUDGET) -> RigidityReport:
    presented = fixed_group(A, group, bound=bound, budget=budget)
    prof_a = profile_algebra(A, "A", center_bound=center_bound, derived_bound=derived_bound)
    prof_g = profile_presented(presented, "A^G", center_bound=center_bound,
                               derived_bound=derived_bound)
    verdict, witness = NOT_DISTINGUISHED, None
    for name in _ROBUST_INVARIANTS:
        va, vg = getattr(prof_a, name), getattr(prof_g, name)
        if va is not None and vg is not None and va != vg:
            verdict, witness = DISTINGUISHED, name
            break
    notes = [TRUNCATION_CAVEAT,
             "verdict uses grading-independent invariants only; "
             "NotDistinguished is not a proof of isomorphism"]
    return RigidityReport(prof_a, prof_g, presented, verdict, witness, notes)
