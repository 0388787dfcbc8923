"""Groebner machinery and small polynomial-system solving.

Buchberger with the coprime and chain criteria only; instance sizes here are
a handful of variables with low-degree generators.  A degree budget converts
nontermination risk into a typed error.  Projective solving classifies the
zero set honestly: linear subspace, finitely many points enumerable over
cyclotomic numbers, or the raw elimination ideal.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .errors import DegreeBudgetExceededError, PwbError
from .linalg import Matrix
from .rings import Poly, PolyRing, embed
from .scalars import Cyclo
from .upoly import UPoly, extract_roots

DEFAULT_BUDGET = 24

_ZERO = Cyclo.of(0)
_ONE = Cyclo.of(1)


# -- monomial orders -----------------------------------------------------


def grlex_order(e: tuple[int, ...]):
    return (sum(e), e)


def lex_order(e: tuple[int, ...]):
    return e


def elim_order(k: int) -> Callable:
    """Eliminate the first k variables: block grlex on them, then grlex on the rest."""

    def key(e: tuple[int, ...]):
        head, tail = e[:k], e[k:]
        return (sum(head), head, sum(tail), tail)

    return key


# -- division ------------------------------------------------------------


def normal_form(f: Poly, basis: Sequence[Poly], order: Callable = grlex_order) -> Poly:
    """Remainder of f under multivariate division by basis."""
    if not basis:
        return f
    ring = f.ring
    leads = [g.leading(order) for g in basis]
    rem = ring.zero()
    work = f
    while not work.is_zero():
        we, wc = work.leading(order)
        divided = False
        for g, (ge, gc) in zip(basis, leads):
            if all(a >= b for a, b in zip(we, ge)):
                q = ring.monomial(tuple(a - b for a, b in zip(we, ge)), wc * gc.inverse())
                work = work - q * g
                divided = True
                break
        if not divided:
            t = ring.monomial(we, wc)
            rem = rem + t
            work = work - t
    return rem


def _spoly(f: Poly, g: Poly, order: Callable) -> Poly:
    fe, fc = f.leading(order)
    ge, gc = g.leading(order)
    lcm_e = tuple(max(a, b) for a, b in zip(fe, ge))
    mf = f.ring.monomial(tuple(l - a for l, a in zip(lcm_e, fe)), fc.inverse())
    mg = f.ring.monomial(tuple(l - b for l, b in zip(lcm_e, ge)), gc.inverse())
    return mf * f - mg * g


def groebner_basis(gens: Sequence[Poly], order: Callable = grlex_order,
                   budget: int = DEFAULT_BUDGET) -> list[Poly]:
    """Reduced Groebner basis, deterministic output."""
    ring = None
    basis: list[Poly] = []
    for g in gens:
        if not g.is_zero():
            ring = g.ring
            basis.append(g.monic(order))
    if not basis:
        return []
    basis = _interreduce(basis, order)
    pairs = {(i, j) for i in range(len(basis)) for j in range(i)}
    while pairs:
        # normal selection: smallest lcm degree first, deterministic tiebreak
        def pair_key(ij):
            i, j = ij
            le = basis[i].leading(order)[0]
            ge = basis[j].leading(order)[0]
            lcm_e = tuple(max(a, b) for a, b in zip(le, ge))
            return (sum(lcm_e), lcm_e, i, j)

        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        fe = basis[i].leading(order)[0]
        ge = basis[j].leading(order)[0]
        lcm_e = tuple(max(a, b) for a, b in zip(fe, ge))
        if sum(lcm_e) > budget:
            raise DegreeBudgetExceededError(sum(lcm_e), budget)
        # coprime criterion
        if all(a == 0 or b == 0 for a, b in zip(fe, ge)):
            continue
        # chain criterion: some k with LT(k) | lcm and both pairs done
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            ke = basis[k].leading(order)[0]
            if all(a <= l for a, l in zip(ke, lcm_e)):
                if (max(i, k), min(i, k)) not in pairs and (max(j, k), min(j, k)) not in pairs:
                    skip = True
                    break
        if skip:
            continue
        s = normal_form(_spoly(basis[i], basis[j], order), basis, order)
        if not s.is_zero():
            if s.total_degree() > budget:
                raise DegreeBudgetExceededError(s.total_degree(), budget)
            s = s.monic(order)
            basis.append(s)
            new = len(basis) - 1
            pairs.update((new, t) for t in range(new))
    return _interreduce(basis, order)


def _interreduce(basis: list[Poly], order: Callable) -> list[Poly]:
    basis = [g for g in basis if not g.is_zero()]
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            others = basis[:i] + basis[i + 1:]
            if not others:
                continue
            r = normal_form(basis[i], others, order)
            if r != basis[i]:
                changed = True
                if r.is_zero():
                    basis = others
                else:
                    basis = others + [r.monic(order)]
                break
    basis = [g.monic(order) for g in basis]
    basis.sort(key=lambda g: order(g.leading(order)[0]))
    return basis


@dataclass(frozen=True)
class Ideal:
    """Generators in a fixed ring; `groebner` computes the reduced basis lazily."""

    ring: PolyRing
    gens: tuple[Poly, ...]

    @staticmethod
    def of(gens: Sequence[Poly], ring: Optional[PolyRing] = None) -> "Ideal":
        gens = tuple(g for g in gens if not g.is_zero())
        if ring is None:
            if not gens:
                raise PwbError("empty ideal needs an explicit ring")
            ring = gens[0].ring
        return Ideal(ring, gens)

    def groebner(self, order: Callable = grlex_order, budget: int = DEFAULT_BUDGET) -> list[Poly]:
        return groebner_basis(self.gens, order, budget)

    def member(self, f: Poly, budget: int = DEFAULT_BUDGET) -> bool:
        gb = self.groebner(budget=budget)
        return normal_form(f, gb).is_zero()


def ideal_member(f: Poly, ideal: Ideal, budget: int = DEFAULT_BUDGET) -> bool:
    return ideal.member(f, budget=budget)


def subalgebra_member(f: Poly, gens: Sequence[Poly], tag_names: Optional[Sequence[str]] = None,
                      budget: int = DEFAULT_BUDGET) -> Optional[Poly]:
    """Express f as a polynomial in gens (tag-variable elimination), or None."""
    if not gens:
        return f.ring.zero() if f.is_zero() else (
            None if not f.is_scalar() else PolyRing(()).scalar(f.as_scalar()))
    ring = gens[0].ring
    n = ring.nvars
    if tag_names is None:
        tag_names = [f"t{i+1}" for i in range(len(gens))]
    tag_ring = PolyRing(tuple(tag_names))
    # internal tag names avoid collisions with ambient variable names
    combined = PolyRing(ring.names + tuple(f"_tag{i+1}" for i in range(len(gens))))
    relations = []
    for i, g in enumerate(gens):
        relations.append(embed(g, combined) - combined.var(n + i))
    order = elim_order(n)
    gb = groebner_basis(relations, order, budget)
    nf = normal_form(embed(f, combined), gb, order)
    if any(any(e[:n]) for e in nf.terms):
        return None
    return Poly(tag_ring, {e[n:]: c for e, c in nf.terms.items()})


# -- solution sets ---------------------------------------------------------

EMPTY = "empty"
SUBSPACE = "subspace"
POINTS = "points"
IDEAL_ONLY = "ideal"


@dataclass(frozen=True)
class SolutionSet:
    """Classified zero set of a projective system in n unknowns."""

    kind: str
    nvars: int
    basis: tuple[tuple[Cyclo, ...], ...] = ()    # SUBSPACE: RREF basis rows
    points: tuple[tuple[Cyclo, ...], ...] = ()   # POINTS: first nonzero coord = 1
    generators: tuple[Poly, ...] = ()            # IDEAL_ONLY

    @property
    def dimension(self) -> Optional[int]:
        if self.kind == SUBSPACE:
            return len(self.basis)
        if self.kind == POINTS:
            return 0
        if self.kind == EMPTY:
            return -1
        return None

    def describe(self) -> str:
        if self.kind == EMPTY:
            return "empty"
        if self.kind == SUBSPACE:
            return f"linear subspace of dimension {len(self.basis)}"
        if self.kind == POINTS:
            return f"{len(self.points)} points"
        return "unresolved ideal"


def _poly_to_upoly(f: Poly, var: int) -> Optional[UPoly]:
    """View f as univariate in `var`; None if other variables occur."""
    coeffs: dict[int, Cyclo] = {}
    for e, c in f.terms.items():
        if any(k and i != var for i, k in enumerate(e)):
            return None
        coeffs[e[var]] = c
    if not coeffs:
        return UPoly(())
    out = [_ZERO] * (max(coeffs) + 1)
    for k, c in coeffs.items():
        out[k] = c
    return UPoly(out)


def _substitute_value(f: Poly, var: int, value: Cyclo) -> Poly:
    out: dict = {}
    for e, c in f.terms.items():
        ne = list(e)
        k = ne[var]
        ne[var] = 0
        nc = c * value ** k if k else c
        key = tuple(ne)
        acc = out.get(key)
        s = nc if acc is None else acc + nc
        if s.is_zero():
            out.pop(key, None)
        else:
            out[key] = s
    return Poly(f.ring, out)


@dataclass
class AffineResult:
    kind: str
    points: list[list[Cyclo]] = field(default_factory=list)
    particular: Optional[list[Cyclo]] = None
    directions: list[list[Cyclo]] = field(default_factory=list)
    gb: list[Poly] = field(default_factory=list)


def classify_affine(gens: Sequence[Poly], ring: PolyRing,
                    budget: int = DEFAULT_BUDGET) -> AffineResult:
    """Classify the affine zero set in all variables of `ring`."""
    gens = [g for g in gens if not g.is_zero()]
    n = ring.nvars
    if not gens:
        return AffineResult(SUBSPACE, particular=[_ZERO] * n,
                            directions=[list(r) for r in Matrix.identity(n).rows])
    if any(g.is_scalar() for g in gens):
        return AffineResult(EMPTY)
    gb = groebner_basis(gens, grlex_order, budget)
    if any(g.is_scalar() for g in gb):
        return AffineResult(EMPTY)
    if all(g.total_degree() <= 1 for g in gb):
        return _solve_linear_system(gb, ring)
    # zero-dimensional iff every variable has a pure-power leading monomial
    lead_exps = [g.leading(grlex_order)[0] for g in gb]
    zero_dim = all(
        any(e[i] and all(k == 0 for j, k in enumerate(e) if j != i) for e in lead_exps)
        for i in range(n))
    if zero_dim:
        points = _enumerate_zero_dim(gens, ring, budget)
        if points is not None:
            return AffineResult(POINTS, points=points)
    return AffineResult(IDEAL_ONLY, gb=gb)


def _solve_linear_system(gens: Sequence[Poly], ring: PolyRing) -> AffineResult:
    n = ring.nvars
    zero_e = (0,) * n
    rows, rhs = [], []
    for g in gens:
        row = [_ZERO] * n
        for e, c in g.terms.items():
            if e == zero_e:
                continue
            row[next(i for i, k in enumerate(e) if k)] = c
        rows.append(row)
        rhs.append(-g.coefficient(zero_e))
    m = Matrix(rows)
    from .linalg import solve_linear
    particular = solve_linear(m, rhs)
    if particular is None:
        return AffineResult(EMPTY)
    directions = m.kernel_basis()
    if not directions:
        return AffineResult(POINTS, points=[particular])
    return AffineResult(SUBSPACE, particular=particular, directions=directions)


def _enumerate_zero_dim(gens: Sequence[Poly], ring: PolyRing,
                        budget: int) -> Optional[list[list[Cyclo]]]:
    n = ring.nvars
    try:
        gb = groebner_basis(gens, lex_order, budget)
    except DegreeBudgetExceededError:
        return None
    points: list[list[Cyclo]] = []

    def rec(current: list[Poly], assignment: list[Optional[Cyclo]], var: int) -> bool:
        current = [g for g in current if not g.is_zero()]
        if any(g.is_scalar() for g in current):
            return True
        if var < 0:
            points.append([assignment[i] or _ZERO for i in range(n)])
            return True
        uni = None
        for g in current:
            u = _poly_to_upoly(g, var)
            if u is not None and u.degree() >= 1:
                uni = u if uni is None or u.degree() < uni.degree() else uni
        if uni is None:
            # variable unconstrained: not zero-dimensional after all
            return False
        roots, rem = extract_roots(uni)
        if rem.degree() >= 1:
            return False
        for r in set_dedup(roots):
            assignment[var] = r
            nxt = [_substitute_value(g, var, r) for g in current]
            if not rec(nxt, assignment, var - 1):
                return False
            assignment[var] = None
        return True

    ok = rec(list(gb), [None] * n, n - 1)
    if not ok:
        return None
    return points


def set_dedup(values: list[Cyclo]) -> list[Cyclo]:
    out: list[Cyclo] = []
    for v in values:
        if not any(v == w for w in out):
            out.append(v)
    return out


def _canonical_affine(particular: list[Cyclo], directions: list[list[Cyclo]]
                      ) -> tuple[tuple, tuple]:
    """Canonical (particular, direction-space) pair for affine-subspace equality."""
    if directions:
        reduced, pivots = Matrix(directions).rref()
        dirs = [list(r) for r in reduced.rows[: len(pivots)]]
    else:
        dirs, pivots = [], []
    p = list(particular)
    for row, pv in zip(dirs, pivots):
        f = p[pv]
        if not f.is_zero():
            p = [x - f * y for x, y in zip(p, row)]
    key_dirs = tuple(tuple(str(x) for x in r) for r in dirs)
    key_p = tuple(str(x) for x in p)
    return key_p, key_dirs


def solve_projective(gens: Sequence[Poly], ring: PolyRing,
                     budget: int = DEFAULT_BUDGET) -> SolutionSet:
    """Classify the projective zero set of a homogeneous system."""
    n = ring.nvars
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return SolutionSet(SUBSPACE, n,
                           basis=tuple(tuple(r) for r in Matrix.identity(n).rows))
    gb = groebner_basis(gens, grlex_order, budget)
    if all(g.total_degree() <= 1 for g in gb):
        kernel = _linear_kernel(gb, ring)
        if not kernel:
            return SolutionSet(EMPTY, n)
        return SolutionSet(SUBSPACE, n, basis=tuple(tuple(r) for r in kernel))

    chart_results: list[AffineResult] = []
    for m in range(n):
        sub = PolyRing(ring.names[m + 1:])
        chart_gens = []
        for g in gens:
            h = _substitute_value(g, m, _ONE)
            for i in range(m):
                h = _substitute_value(h, i, _ZERO)
            if not h.is_zero():
                chart_gens.append(Poly(sub, {e[m + 1:]: c for e, c in h.terms.items()}))
        if sub.nvars == 0:
            # the chart holds the single candidate point e_m
            res = AffineResult(POINTS, points=[[]]) if not chart_gens else AffineResult(EMPTY)
        else:
            res = classify_affine(chart_gens, sub, budget)
        if res.kind == IDEAL_ONLY:
            return SolutionSet(IDEAL_ONLY, n, generators=tuple(gb))
        chart_results.append(res)

    return aggregate_chart_results(chart_results, n, fallback=tuple(gb))


def aggregate_chart_results(chart_results: list[AffineResult], n: int,
                            fallback: tuple[Poly, ...] = ()) -> SolutionSet:
    """Assemble per-chart affine classifications into one projective SolutionSet.

    chart_results[m] describes solutions with coordinates (0,..,0,1,*,..,*),
    the 1 in position m.
    """
    if any(res.kind == IDEAL_ONLY for res in chart_results):
        return SolutionSet(IDEAL_ONLY, n, generators=fallback)

    def lift(m: int, vec: list[Cyclo]) -> tuple[Cyclo, ...]:
        return tuple([_ZERO] * m + [_ONE] + list(vec))

    def lift_dir(m: int, vec: list[Cyclo]) -> tuple[Cyclo, ...]:
        return tuple([_ZERO] * (m + 1) + list(vec))

    all_points: list[tuple[Cyclo, ...]] = []
    span_vectors: list[list[Cyclo]] = []
    has_subspace = False
    for m, res in enumerate(chart_results):
        if res.kind == EMPTY:
            continue
        if res.kind == POINTS:
            for p in res.points:
                all_points.append(lift(m, p))
                span_vectors.append(list(lift(m, p)))
        else:
            has_subspace = True
            span_vectors.append(list(lift(m, res.particular)))
            for d in res.directions:
                span_vectors.append(list(lift_dir(m, d)))

    if not span_vectors:
        return SolutionSet(EMPTY, n)
    if not has_subspace:
        uniq: list[tuple[Cyclo, ...]] = []
        for p in all_points:
            if not any(all(a == b for a, b in zip(p, q)) for q in uniq):
                uniq.append(p)
        uniq.sort(key=lambda p: tuple(str(c) for c in p))
        return SolutionSet(POINTS, n, points=tuple(uniq))

    reduced, pivots = Matrix(span_vectors).rref()
    candidate = [list(r) for r in reduced.rows[: len(pivots)]]
    if _verify_union_is_subspace(candidate, chart_results, n):
        return SolutionSet(SUBSPACE, n, basis=tuple(tuple(r) for r in candidate))
    return SolutionSet(IDEAL_ONLY, n, generators=fallback)


def _linear_kernel(gens: Sequence[Poly], ring: PolyRing) -> list[list[Cyclo]]:
    n = ring.nvars
    rows = []
    for g in gens:
        row = [_ZERO] * n
        for e, c in g.terms.items():
            row[next(i for i, k in enumerate(e) if k)] = c
        rows.append(row)
    return Matrix(rows).kernel_basis()


def _verify_union_is_subspace(basis: list[list[Cyclo]], chart_results: list[AffineResult],
                              n: int) -> bool:
    """Check the chart pieces assemble exactly to the candidate subspace."""
    b = Matrix(basis)  # r x n
    for m, res in enumerate(chart_results):
        # V intersect chart m: combinations s with (s.B)_i = 0 for i < m, = 1 at m
        rows = [[b.rows[k][i] for k in range(b.nrows)] for i in range(m + 1)]
        rhs = [_ZERO] * m + [_ONE]
        from .linalg import solve_linear
        s0 = solve_linear(Matrix(rows), rhs)
        if s0 is None:
            if res.kind != EMPTY:
                return False
            continue
        if res.kind == EMPTY:
            return False
        kernel = Matrix(rows).kernel_basis()
        part = [sum((s0[k] * b.rows[k][i] for k in range(b.nrows)), _ZERO) for i in range(n)]
        dirs = []
        for kv in kernel:
            d = [sum((kv[k] * b.rows[k][i] for k in range(b.nrows)), _ZERO) for i in range(n)]
            dirs.append(d)
        if res.kind == POINTS:
            if len(res.points) != 1 or dirs and any(any(not x.is_zero() for x in d) for d in dirs):
                return False
            expect = [_ZERO] * m + [_ONE] + list(res.points[0])
            if _canonical_affine(part, [])[0] != _canonical_affine(expect, [])[0]:
                return False
        else:
            expect_p = [_ZERO] * m + [_ONE] + list(res.particular)
            expect_d = [[_ZERO] * (m + 1) + list(d) for d in res.directions]
            if _canonical_affine(part, dirs) != _canonical_affine(expect_p, expect_d):
                return False
    return True
