"""Enveloping presentations of quadratic Poisson algebras.

For A on n generators, the associated quadratic associative algebra has 2n
degree-one generators (multiplication symbols m_i and Hamiltonian symbols
h_i) subject to
    [m_i, m_j] = 0,
    [h_i, m_j] = mu({x_i, x_j})     (all i, j),
    [h_i, h_j] = eta({x_i, x_j})    (i < j),
where mu(x_k x_l) = m_k m_l and eta(x_k x_l) = m_l h_k + m_k h_l.  No normal
form is assumed: graded dimensions come from exact linear algebra on word
truncations, checked against the expected series (1-t)^(-2n).
"""
from __future__ import annotations

from dataclasses import dataclass

from .brackets import PoissonAlgebra
from .errors import (CapExceededError, NotAutomorphismError, NotQuadraticError,
                     NotReflectionError)
from .linalg import Matrix
from .rings import Poly
from .scalars import Cyclo
from .series import RationalSeries
from .symmetry import (REFLECTION, GradedMap, classify, is_poisson_automorphism,
                       trace_series)
from .upoly import UPoly

_ZERO = Cyclo.of(0)
_ONE = Cyclo.of(1)

DEFAULT_DIM_CAP = 4

Word = tuple[int, ...]
WordSum = dict  # Word -> Cyclo


@dataclass
class NCPresentation:
    """2n degree-one generators with homogeneous quadratic relations."""

    algebra: PoissonAlgebra
    names: tuple[str, ...]
    relations: tuple[WordSum, ...]

    @property
    def ngens(self) -> int:
        return len(self.names)

    def relation_strings(self) -> list[str]:
        return [f"{self.render(r)} = 0" for r in self.relations]

    def render(self, ws: WordSum) -> str:
        parts = []
        for word in sorted(ws, key=lambda w: tuple(w)):
            c = ws[word]
            body = "*".join(self.names[i] for i in word)
            cs = str(c)
            if cs == "1":
                parts.append(("+", body))
            elif cs == "-1":
                parts.append(("-", body))
            elif cs.startswith("-") and "+" not in cs and "-" not in cs[1:]:
                parts.append(("-", f"{cs[1:]}*{body}"))
            elif "+" in cs or "-" in cs[1:]:
                parts.append(("+", f"({cs})*{body}"))
            else:
                parts.append(("+", f"{cs}*{body}"))
        if not parts:
            return "0"
        sign0, body0 = parts[0]
        out = ("-" if sign0 == "-" else "") + body0
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _quadratic_pairs(p: Poly) -> list[tuple[int, int, Cyclo]]:
    """Decompose a homogeneous quadratic as sum c * x_k x_l with k <= l."""
    out = []
    for e, c in p.terms.items():
        on = [i for i, k in enumerate(e) for _ in range(k)]
        if len(on) != 2:
            raise NotQuadraticError("bracket entry is not homogeneous quadratic")
        out.append((on[0], on[1], c))
    return out


def envelope_presentation(A: PoissonAlgebra, aliases: bool = False) -> NCPresentation:
    """The finite presentation on m- and h-symbols."""
    if not A.quadratic:
        raise NotQuadraticError("enveloping presentation needs a quadratic bracket")
    n = A.nvars
    if aliases:
        names = tuple(f"{v}1" for v in A.ring.names) + tuple(f"{v}2" for v in A.ring.names)
    else:
        names = tuple(f"m_{v}" for v in A.ring.names) + tuple(f"h_{v}" for v in A.ring.names)

    def m(i: int) -> int:
        return i

    def h(i: int) -> int:
        return n + i

    def add(ws: WordSum, word: Word, c: Cyclo):
        acc = ws.get(word, _ZERO) + c
        if acc.is_zero():
            ws.pop(word, None)
        else:
            ws[word] = acc

    relations: list[WordSum] = []
    for i in range(n):
        for j in range(i + 1, n):
            r: WordSum = {}
            add(r, (m(i), m(j)), _ONE)
            add(r, (m(j), m(i)), -_ONE)
            relations.append(r)
    for i in range(n):
        for j in range(n):
            r = {}
            add(r, (h(i), m(j)), _ONE)
            add(r, (m(j), h(i)), -_ONE)
            for (k, l, c) in _quadratic_pairs(A.pair(i, j)):
                add(r, (m(k), m(l)), -c)
            if r:
                relations.append(r)
    for i in range(n):
        for j in range(i + 1, n):
            r = {}
            add(r, (h(i), h(j)), _ONE)
            add(r, (h(j), h(i)), -_ONE)
            for (k, l, c) in _quadratic_pairs(A.pair(i, j)):
                add(r, (m(l), h(k)), -c)
                add(r, (m(k), h(l)), -c)
            relations.append(r)
    return NCPresentation(A, names, tuple(relations))


def _word_index(word: Word, g: int) -> int:
    acc = 0
    for a in word:
        acc = acc * g + a
    return acc


def _sparse_rank(rows: list[dict]) -> int:
    """Rank of sparse rows (column index -> Cyclo) by elimination."""
    pivots: dict[int, dict] = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                inv = row[lead].inverse()
                row = {k: v * inv for k, v in row.items()}
                pivots[lead] = row
                rank += 1
                break
            f = row[lead]
            for k, v in piv.items():
                acc = row.get(k, _ZERO) - f * v
                if acc.is_zero():
                    row.pop(k, None)
                else:
                    row[k] = acc
        # empty row: linearly dependent
    return rank


def _reduce_sparse(row: dict, pivots: dict) -> dict:
    row = dict(row)
    while row:
        lead = min(row)
        piv = pivots.get(lead)
        if piv is None:
            return row
        f = row[lead]
        for k, v in piv.items():
            acc = row.get(k, _ZERO) - f * v
            if acc.is_zero():
                row.pop(k, None)
            else:
                row[k] = acc
    return row


def envelope_dims(A: PoissonAlgebra, d: int, cap: int = DEFAULT_DIM_CAP) -> list[int]:
    """dim of the degree-k component of the presented algebra, k = 0..d."""
    if d > cap:
        raise CapExceededError(f"degree {d} exceeds the cap {cap}")
    pres = envelope_presentation(A)
    g = pres.ngens
    dims = [1]
    for k in range(1, d + 1):
        if k == 1:
            dims.append(g)
            continue
        rows = []
        for r in pres.relations:
            for a in range(k - 1):
                b = k - 2 - a
                for uw in _words(g, a):
                    for vw in _words(g, b):
                        row = {}
                        for word, c in r.items():
                            full = uw + word + vw
                            idx = _word_index(full, g)
                            acc = row.get(idx, _ZERO) + c
                            if acc.is_zero():
                                row.pop(idx, None)
                            else:
                                row[idx] = acc
                        if row:
                            rows.append(row)
        dims.append(g ** k - _sparse_rank(rows))
    return dims


def _words(g: int, length: int) -> list[Word]:
    if length == 0:
        return [()]
    shorter = _words(g, length - 1)
    return [w + (a,) for w in shorter for a in range(g)]


@dataclass
class EnvelopeExtension:
    map: GradedMap
    relations_preserved: bool


def envelope_extend(A: PoissonAlgebra, g: GradedMap) -> EnvelopeExtension:
    """Extend a Poisson automorphism to the 2n generators and verify relations."""
    ok, pair = is_poisson_automorphism(A, g)
    if not ok:
        raise NotAutomorphismError(f"map does not preserve the bracket on {pair}")
    n = A.nvars
    big_rows = []
    for r in range(2 * n):
        row = []
        for c in range(2 * n):
            if r < n and c < n:
                row.append(g.matrix.rows[r][c])
            elif r >= n and c >= n:
                row.append(g.matrix.rows[r - n][c - n])
            else:
                row.append(_ZERO)
        big_rows.append(row)
    extended = GradedMap(Matrix(big_rows))
    pres = envelope_presentation(A)
    # pivot table for the degree-2 relation span
    pivots: dict[int, dict] = {}
    gsz = pres.ngens
    for r in pres.relations:
        row = _reduce_sparse({_word_index(w, gsz): c for w, c in r.items()}, pivots)
        if row:
            lead = min(row)
            inv = row[lead].inverse()
            pivots[lead] = {k: v * inv for k, v in row.items()}
    preserved = True
    for r in pres.relations:
        image: dict = {}
        for (a, b), c in r.items():
            for a2 in range(gsz):
                ca = extended.matrix.rows[a2][a]
                if ca.is_zero():
                    continue
                for b2 in range(gsz):
                    cb = extended.matrix.rows[b2][b]
                    if cb.is_zero():
                        continue
                    idx = _word_index((a2, b2), gsz)
                    acc = image.get(idx, _ZERO) + c * ca * cb
                    if acc.is_zero():
                        image.pop(idx, None)
                    else:
                        image[idx] = acc
        if _reduce_sparse(image, pivots):
            preserved = False
            break
    return EnvelopeExtension(extended, preserved)


@dataclass
class EnvelopeTrace:
    series: RationalSeries
    factored: RationalSeries
    quasi_reflection: bool


def envelope_trace(A: PoissonAlgebra, g: GradedMap) -> EnvelopeTrace:
    """Trace series of the extended action: the square of the base trace."""
    cls = classify(A, g)
    if cls.kind != REFLECTION:
        raise NotReflectionError(f"map classifies as {cls.kind}")
    base = trace_series(g)
    squared = base * base
    n = A.nvars
    # normalizing-sequence form: 1/((1-xi t)^2 (1-t)^(2n-2))
    factored = RationalSeries.one_over([cls.xi, cls.xi] + [_ONE] * (2 * n - 2))
    quasi = _has_quasi_reflection_shape(squared, 2 * n)
    return EnvelopeTrace(squared, factored, quasi)


def _has_quasi_reflection_shape(series: RationalSeries, total: int) -> bool:
    """Is the series 1/((1 - xi t)(1 - t)^(total-1)) for some root of unity xi != 1?"""
    if series.num.degree() != 0:
        return False
    den = series.den
    one_minus_t = UPoly.one_minus(_ONE)
    for _ in range(total - 1):
        q, rem = den.divmod(one_minus_t)
        if not rem.is_zero():
            return False
        den = q
    if den.degree() != 1:
        return False
    xi = -den[1]  # den = 1 - xi t after normalization
    if den[0] != _ONE:
        return False
    order = xi.root_of_unity_order() if not xi.is_zero() else None
    return order is not None and order > 1
