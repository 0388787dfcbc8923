"""The Poisson bracket engine.

A PoissonAlgebra is a polynomial ring plus the bracket table {x_i, x_j} for
i < j; antisymmetry is structural and the bracket of arbitrary elements is
the biderivation extension

    {f, g} = sum_{i<j} (df/dx_i dg/dx_j - df/dx_j dg/dx_i) {x_i, x_j},

which is automatically bilinear, antisymmetric, and Leibniz in each slot.
The Jacobi identity is checked on generator triples at construction (that
suffices, again by Leibniz).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (JacobiFailsError, NotMonomialError, NotQuadraticError,
                     NotSplittableError, PwbError)
from .linalg import Matrix
from .rings import Poly, PolyRing
from .scalars import Cyclo
from .solver import (DEFAULT_BUDGET, AffineResult, SolutionSet,
                     aggregate_chart_results, classify_affine)
from .solver import EMPTY as solver_empty
from .solver import IDEAL_ONLY as solver_ideal
from .solver import POINTS as solver_points

_ZERO = Cyclo.of(0)
_ONE = Cyclo.of(1)


class PoissonAlgebra:
    __slots__ = ("ring", "table", "quadratic", "bracket_degree", "name")

    def __init__(self, ring: PolyRing, table: dict, check_jacobi: bool = True,
                 name: str = "A"):
        """table maps (i, j) with i < j to Poly; missing pairs are zero."""
        clean: dict = {}
        for (i, j), p in table.items():
            if i == j or not (0 <= i < ring.nvars and 0 <= j < ring.nvars):
                raise PwbError(f"bad bracket pair ({i}, {j})")
            if i > j:
                i, j, p = j, i, -p
            if (i, j) in clean:
                raise PwbError(f"duplicate bracket pair ({i}, {j})")
            if not p.is_zero():
                clean[(i, j)] = p
        degrees = {p.homogeneous_degree() for p in clean.values()}
        if not degrees:
            quadratic, bdeg = True, 2
        elif None in degrees or len(degrees) > 1:
            quadratic, bdeg = False, None
        else:
            bdeg = degrees.pop()
            quadratic = bdeg == 2
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "table", clean)
        object.__setattr__(self, "quadratic", quadratic)
        object.__setattr__(self, "bracket_degree", bdeg)
        object.__setattr__(self, "name", name)
        if check_jacobi:
            ok, witness = self.jacobi_check()
            if not ok:
                raise JacobiFailsError(witness)

    def __setattr__(self, *a):
        raise AttributeError("PoissonAlgebra is immutable")

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def pair(self, i: int, j: int) -> Poly:
        """{x_i, x_j}, any order of indices."""
        if i == j:
            return self.ring.zero()
        if i < j:
            return self.table.get((i, j), self.ring.zero())
        p = self.table.get((j, i))
        return -p if p is not None else self.ring.zero()

    def require_quadratic(self, what: str):
        if not self.quadratic:
            raise NotQuadraticError(f"{what} requires a quadratic bracket")

    # -- bracket --------------------------------------------------------

    def bracket(self, f: Poly, g: Poly) -> Poly:
        out = self.ring.zero()
        for (i, j), p in self.table.items():
            fi, fj = f.partial(i), f.partial(j)
            gi, gj = g.partial(i), g.partial(j)
            term = fi * gj - fj * gi
            if not term.is_zero():
                out = out + term * p
        return out

    def bracket_var(self, f: Poly, j: int) -> Poly:
        """{f, x_j}."""
        out = self.ring.zero()
        for i in range(self.nvars):
            if i == j:
                continue
            p = self.pair(i, j)
            if not p.is_zero():
                fi = f.partial(i)
                if not fi.is_zero():
                    out = out + fi * p
        return out

    def jacobi_check(self) -> tuple[bool, Optional[tuple[str, str, str]]]:
        names = self.ring.names
        xs = self.ring.gens()
        for i in range(self.nvars):
            for j in range(i + 1, self.nvars):
                for k in range(j + 1, self.nvars):
                    total = (self.bracket(xs[i], self.pair(j, k))
                             + self.bracket(xs[j], self.pair(k, i))
                             + self.bracket(xs[k], self.pair(i, j)))
                    if not total.is_zero():
                        return False, (names[i], names[j], names[k])
        return True, None

    # -- normal elements and derivations ---------------------------------

    def normal_check(self, u: Poly) -> Optional["PoissonDerivation"]:
        """pi_u with {u, x_j} = pi_u(x_j) * u for all j, or None."""
        if u.is_zero():
            raise PwbError("normality of zero is undefined")
        images = []
        for j in range(self.nvars):
            b = self.bracket_var(u, j)
            q = u.divides_into(b) if not b.is_zero() else self.ring.zero()
            if q is None:
                return None
            images.append(q)
        return PoissonDerivation(self, images)

    def modular_derivation(self) -> "PoissonDerivation":
        """f -> sum_j d{f, x_j}/dx_j evaluated on generators."""
        images = []
        for i in range(self.nvars):
            acc = self.ring.zero()
            for j in range(self.nvars):
                p = self.pair(i, j)
                if not p.is_zero():
                    acc = acc + p.partial(j)
            images.append(acc)
        return PoissonDerivation(self, images)

    def is_unimodular(self) -> bool:
        return self.modular_derivation().is_zero()

    def skew_matrix(self) -> Optional[Matrix]:
        """(q_ij) when every table entry is q_ij * x_i * x_j, else None."""
        n = self.nvars
        rows = [[_ZERO] * n for _ in range(n)]
        for (i, j), p in self.table.items():
            e = [0] * n
            e[i] += 1
            e[j] += 1
            mono = tuple(e)
            if any(key != mono for key in p.terms):
                return None
            q = p.terms[mono]
            rows[i][j] = q
            rows[j][i] = -q
        return Matrix(rows)

    # -- truncated center and derived ideal -------------------------------

    def center_truncated(self, d: int, weights: Optional[Sequence[int]] = None
                         ) -> list[list[Poly]]:
        """Per degree k <= d, a basis of {f in A_k : {f, x_j} = 0 for all j}."""
        out: list[list[Poly]] = [[self.ring.one()]]
        for k in range(1, d + 1):
            monos = self.ring.monomials_of_degree(k, weights)
            if not monos:
                out.append([])
                continue
            col_index: dict = {}
            rows = []
            for mexp in monos:
                mono = self.ring.monomial(mexp)
                entries = {}
                for j in range(self.nvars):
                    br = self.bracket_var(mono, j)
                    for ee, c in br.terms.items():
                        entries[(j, ee)] = c
                rows.append(entries)
                for key in entries:
                    col_index.setdefault(key, len(col_index))
            if not col_index:
                out.append([self.ring.monomial(m) for m in monos])
                continue
            # kernel of c -> sum_I c_I {x^I, x_j}: left kernel of the row matrix
            mat = Matrix([[row.get(key, _ZERO) for key in col_index] for row in rows])
            kernel = mat.transpose().kernel_basis()
            basis = []
            for vec in kernel:
                poly = self.ring.zero()
                for coeff, mexp in zip(vec, monos):
                    if not coeff.is_zero():
                        poly = poly + self.ring.monomial(mexp, coeff)
                basis.append(poly)
            out.append(basis)
        return out

    def center_lowest_generator(self, d: int, weights: Optional[Sequence[int]] = None
                                ) -> Optional[Poly]:
        """A lowest positive-degree central element within the truncation, if any."""
        for k, basis in enumerate(self.center_truncated(d, weights)):
            if k and basis:
                return basis[0]
        return None

    def derived_ideal(self, d: int, weights: Optional[Sequence[int]] = None
                      ) -> "DerivedIdeal":
        return DerivedIdeal(self, d, weights)

    # -- Ore splitting -----------------------------------------------------

    def ore_split(self, u_coeffs: Sequence) -> "OreSplit":
        """Split off a degree-one Poisson normal direction u: A = C[u; alpha]."""
        u_vec = [Cyclo.of(c) for c in u_coeffs]
        if all(c.is_zero() for c in u_vec):
            raise PwbError("zero vector cannot be split off")
        u = self.ring.linear_form(u_vec)
        if self.normal_check(u) is None:
            raise NotSplittableError("direction is not Poisson normal", witness=u)
        n = self.nvars
        pivot = next(i for i, c in enumerate(u_vec) if not c.is_zero())
        comp_idx = [i for i in range(n) if i != pivot]
        # columns of B: the new coordinate directions (u first, then kept variables)
        cols = [u_vec] + [[_ONE if r == i else _ZERO for r in range(n)] for i in comp_idx]
        B = Matrix(cols).transpose()  # columns: coefficient vectors of the new basis
        Binv = B.inverse()
        new_names = ("u_" + self.ring.names[pivot],) + tuple(self.ring.names[i] for i in comp_idx)
        yring = PolyRing(new_names)
        # old coordinates in terms of new: x_i = sum_j Binv[j][i] y_j
        y_images = [yring.linear_form(Binv.column(i)) for i in range(n)]

        def to_y(f: Poly) -> Poly:
            return f.substitute(y_images, yring)

        base_ring = PolyRing(new_names[1:])
        base_table: dict = {}
        alpha_images: list[Poly] = []
        cvars = [self.ring.var(i) for i in comp_idx]
        for a in range(len(comp_idx)):
            bry = to_y(self.bracket(u, cvars[a]))
            # {u, c} must equal alpha(c) * u with alpha(c) in the base
            quot = yring.var(0).divides_into(bry) if not bry.is_zero() else yring.zero()
            if quot is None or any(e[0] for e in quot.terms):
                raise NotSplittableError(
                    f"bracket {{u, {base_ring.names[a]}}} is not in u*C",
                    witness=bry)
            alpha_images.append(Poly(base_ring, {e[1:]: c for e, c in quot.terms.items()}))
        for a in range(len(comp_idx)):
            for b in range(a + 1, len(comp_idx)):
                bry = to_y(self.bracket(cvars[a], cvars[b]))
                if any(e[0] for e in bry.terms):
                    raise NotSplittableError(
                        f"complement does not close: {{{base_ring.names[a]}, "
                        f"{base_ring.names[b]}}} involves the split variable",
                        witness=bry)
                if not bry.is_zero():
                    base_table[(a, b)] = Poly(base_ring, {e[1:]: c for e, c in bry.terms.items()})
        base = PoissonAlgebra(base_ring, base_table, check_jacobi=False)
        alpha = PoissonDerivation(base, alpha_images)
        complement = [[_ONE if r == i else _ZERO for r in range(n)] for i in comp_idx]
        return OreSplit(self, u_vec, complement, base, alpha, pivot)

    # -- degree-one normal elements ----------------------------------------

    def normal_find_deg1(self, budget: int = DEFAULT_BUDGET) -> SolutionSet:
        """All degree-one Poisson normal directions, up to scalar.

        Chart m fixes u = x_m + sum_{i>m} mu_i x_i; the requirement
        {u, x_j} in (u) becomes polynomial equations in the mu after
        substituting the solved variable, which is exactly the linear
        elimination of the quotient unknowns.
        """
        self.require_quadratic("normal_find_deg1")
        n = self.nvars
        chart_results: list[AffineResult] = []
        diagnostics: list[Poly] = []
        for m in range(n):
            tail = list(range(m + 1, n))
            mu_names = tuple(f"_m{i}" for i in tail)
            mixed = PolyRing(mu_names + self.ring.names)
            nmu = len(mu_names)
            xoff = nmu

            def lift_poly(p: Poly) -> Poly:
                return Poly(mixed, {(0,) * nmu + e: c for e, c in p.terms.items()})

            # u = x_m + sum mu_i x_i ; substitution x_m -> -(sum mu_i x_i)
            subst_images = [mixed.var(t) for t in range(nmu)]
            for i in range(n):
                if i == m:
                    img = mixed.zero()
                    for t, gi in enumerate(tail):
                        e = [0] * mixed.nvars
                        e[t] = 1
                        e[xoff + gi] = 1
                        img = img + Poly(mixed, {tuple(e): -_ONE})
                    subst_images.append(img)
                else:
                    subst_images.append(mixed.var(xoff + i))
            equations: list[Poly] = []
            mu_ring = PolyRing(mu_names)
            for j in range(n):
                w = lift_poly(self.pair(m, j))
                for t, gi in enumerate(tail):
                    p = self.pair(gi, j)
                    if not p.is_zero():
                        w = w + mixed.var(t) * lift_poly(p)
                if w.is_zero():
                    continue
                rem = w.substitute(subst_images, mixed)
                # group by the x-part of the exponent
                grouped: dict = {}
                for e, c in rem.terms.items():
                    grouped.setdefault(e[xoff:], {})[e[:nmu]] = c
                for _, mu_terms in grouped.items():
                    equations.append(Poly(mu_ring, dict(mu_terms)))
            if nmu:
                res = classify_affine(equations, mu_ring, budget)
            elif any(not e.is_zero() for e in equations):
                res = AffineResult(solver_empty)
            else:
                res = AffineResult(solver_points, points=[[]])
            if res.kind == solver_ideal:
                diagnostics.extend(res.gb)
            chart_results.append(res)
        return aggregate_chart_results(chart_results, n, fallback=tuple(diagnostics))

    def __repr__(self):
        entries = ", ".join(
            f"{{{self.ring.names[i]},{self.ring.names[j]}}}={p}" for (i, j), p in sorted(self.table.items()))
        return f"PoissonAlgebra({', '.join(self.ring.names)}; {entries or 'zero bracket'})"


@dataclass(frozen=True)
class PoissonDerivation:
    """A derivation recorded by its images on the generators."""

    algebra: PoissonAlgebra
    images: tuple

    def __init__(self, algebra: PoissonAlgebra, images: Sequence[Poly]):
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "images", tuple(images))

    def apply(self, f: Poly) -> Poly:
        out = self.algebra.ring.zero()
        for i, img in enumerate(self.images):
            if not img.is_zero():
                fi = f.partial(i)
                if not fi.is_zero():
                    out = out + fi * img
        return out

    def is_zero(self) -> bool:
        return all(img.is_zero() for img in self.images)

    def is_poisson(self) -> bool:
        """Check alpha({x_i, x_j}) = {alpha(x_i), x_j} + {x_i, alpha(x_j)} on generators."""
        A = self.algebra
        xs = A.ring.gens()
        for i in range(A.nvars):
            for j in range(i + 1, A.nvars):
                lhs = self.apply(A.pair(i, j))
                rhs = A.bracket(self.images[i], xs[j]) + A.bracket(xs[i], self.images[j])
                if lhs != rhs:
                    return False
        return True

    def __repr__(self):
        names = self.algebra.ring.names
        body = ", ".join(f"{v} -> {img}" for v, img in zip(names, self.images))
        return f"PoissonDerivation({body})"


@dataclass(frozen=True)
class OreSplit:
    """A = C[u; alpha]: base algebra on the complement plus the twisting derivation."""

    algebra: PoissonAlgebra
    normal_var: tuple
    complement: tuple
    base: PoissonAlgebra
    alpha: PoissonDerivation
    pivot: int

    def __init__(self, algebra, normal_var, complement, base, alpha, pivot):
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "normal_var", tuple(normal_var))
        object.__setattr__(self, "complement", tuple(tuple(v) for v in complement))
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "pivot", pivot)

    def reconstruct(self) -> PoissonAlgebra:
        """Rebuild the bracket on (u, complement) coordinates from (base, alpha)."""
        names = ("u_" + self.algebra.ring.names[self.pivot],) + self.base.ring.names
        ring = PolyRing(names)
        table: dict = {}
        k = self.base.nvars
        for a in range(k):
            img = self.alpha.images[a]
            # {u, c_a} = alpha(c_a) * u
            lifted = Poly(ring, {(1,) + e: c for e, c in img.terms.items()})
            if not lifted.is_zero():
                table[(0, a + 1)] = lifted
        for (a, b), p in self.base.table.items():
            table[(a + 1, b + 1)] = Poly(ring, {(0,) + e: c for e, c in p.terms.items()})
        return PoissonAlgebra(ring, table, check_jacobi=False)

    def original_in_split_coordinates(self) -> PoissonAlgebra:
        """The original bracket transported to the (u, complement) basis."""
        A = self.algebra
        n = A.nvars
        cols = [list(self.normal_var)] + [list(v) for v in self.complement]
        B = Matrix(cols).transpose()
        Binv = B.inverse()
        names = ("u_" + A.ring.names[self.pivot],) + self.base.ring.names
        yring = PolyRing(names)
        images = [yring.linear_form(Binv.column(i)) for i in range(n)]
        new_vars = [A.ring.linear_form(B.column(j)) for j in range(n)]
        table: dict = {}
        for i in range(n):
            for j in range(i + 1, n):
                br = A.bracket(new_vars[i], new_vars[j])
                if not br.is_zero():
                    table[(i, j)] = br.substitute(images, yring)
        return PoissonAlgebra(yring, table, check_jacobi=False)


def transport(A: PoissonAlgebra, basis: Matrix, names: Sequence[str],
              check_jacobi: bool = False) -> PoissonAlgebra:
    """The bracket of A written in the linear coordinates y with x = basis * y.

    Column j of `basis` holds the x-coefficients of the new degree-one
    element y_j.
    """
    n = A.nvars
    inv = basis.inverse()
    yring = PolyRing(tuple(names))
    images = [yring.linear_form(inv.column(i)) for i in range(n)]
    new_elems = [A.ring.linear_form(basis.column(j)) for j in range(n)]
    table: dict = {}
    for i in range(n):
        for j in range(i + 1, n):
            br = A.bracket(new_elems[i], new_elems[j])
            if not br.is_zero():
                table[(i, j)] = br.substitute(images, yring)
    return PoissonAlgebra(yring, table, check_jacobi=check_jacobi)


class DerivedIdeal:
    """Truncated data for the ideal generated by all brackets {A, A}.

    By Leibniz that ideal is generated by the table entries {x_i, x_j}.
    """

    def __init__(self, algebra: PoissonAlgebra, d: int,
                 weights: Optional[Sequence[int]] = None):
        self.algebra = algebra
        self.bound = d
        self.weights = list(weights) if weights is not None else [1] * algebra.nvars
        self.generators = [p for _, p in sorted(algebra.table.items())]
        self._dims: Optional[list[int]] = None

    def dims(self) -> list[int]:
        """Dimension of the degree-k piece of the ideal, k = 0..bound."""
        if self._dims is not None:
            return self._dims
        ring = self.algebra.ring
        out = [0]
        for k in range(1, self.bound + 1):
            col_index: dict = {}
            rows = []
            for g in self.generators:
                gdeg = g.weighted_degree(self.weights)
                if gdeg > k:
                    continue
                for K in ring.monomials_of_degree(k - gdeg, self.weights):
                    prod = ring.monomial(K) * g
                    entries = dict(prod.terms)
                    rows.append(entries)
                    for key in entries:
                        col_index.setdefault(key, len(col_index))
            if not rows:
                out.append(0)
                continue
            mat = Matrix([[row.get(key, _ZERO) for key in col_index] for row in rows])
            out.append(mat.rank())
        self._dims = out
        return out

    def contains(self, f: Poly, budget: int = DEFAULT_BUDGET) -> bool:
        from .solver import Ideal
        if f.is_zero():
            return True
        if self.is_monomial():
            monos = [next(iter(g.terms)) for g in self.generators]
            return all(
                any(all(a >= b for a, b in zip(e, m)) for m in monos)
                for e in f.terms)
        return Ideal.of(self.generators, self.algebra.ring).member(f, budget=budget)

    def is_monomial(self) -> bool:
        return all(len(g.terms) == 1 for g in self.generators)

    def minimal_primes(self) -> list[tuple[str, ...]]:
        """Minimal primes of a monomial derived ideal, as variable-name tuples."""
        if not self.is_monomial():
            raise NotMonomialError("derived ideal is not monomial in these coordinates")
        ring = self.algebra.ring
        supports = []
        for g in self.generators:
            e = next(iter(g.terms))
            supports.append(frozenset(i for i, k in enumerate(e) if k))
        supports = [s for s in supports if s]
        # minimal hitting sets by branch and prune (n is small)
        covers: list[frozenset] = []

        def rec(idx: int, chosen: frozenset):
            if any(c <= chosen for c in covers):
                return
            if idx == len(supports):
                covers[:] = [c for c in covers if not chosen < c]
                if not any(c <= chosen for c in covers):
                    covers.append(chosen)
                return
            if supports[idx] & chosen:
                rec(idx + 1, chosen)
                return
            for v in sorted(supports[idx]):
                rec(idx + 1, chosen | {v})

        rec(0, frozenset())
        uniq = sorted({tuple(sorted(c)) for c in covers})
        minimal = [c for c in uniq
                   if not any(set(o) < set(c) for o in uniq)]
        return [tuple(ring.names[i] for i in c) for c in minimal]

    def components(self) -> list[tuple[str, ...]]:
        """Polynomial-ring components of A/(derived ideal): kept variables per prime."""
        ring = self.algebra.ring
        out = []
        for prime in self.minimal_primes():
            kept = tuple(v for v in ring.names if v not in prime)
            out.append(kept)
        return sorted(out)
