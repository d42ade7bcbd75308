"""Exact representations over the rationals and hom spaces by nullspace.

Nothing here looks at substrings: string and band modules are written down
as matrices and homomorphisms are found by solving the intertwining
equations ``f_t A(x) = B(x) f_s`` with fraction-free elimination.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence, Union

from .errors import NotABand, NotAString, ShapeMismatch, ZeroLambda
from .quiver import Presentation, Walk
from .words import Band, StringWord, _band_ok, is_string

Matrix = list  # list of rows of Fraction


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def jordan_block(lam: Fraction, n: int) -> Matrix:
    m = identity(n)
    for i in range(n):
        m[i][i] = Fraction(lam)
        if i + 1 < n:
            m[i][i + 1] = Fraction(1)
    return m


def matmul(a: Matrix, b: Matrix, inner: Optional[int] = None) -> Matrix:
    inner = len(b) if inner is None else inner
    cols = len(b[0]) if b else 0
    out = zeros(len(a), cols)
    for i, row in enumerate(a):
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                oi = out[i]
                for j in range(cols):
                    if bk[j]:
                        oi[j] += x * bk[j]
    return out


def inverse(m: Matrix) -> Matrix:
    """Gauss-Jordan inverse over the rationals."""
    n = len(m)
    aug = [list(map(Fraction, row)) + identity(n)[i] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


# -- fraction-free elimination ----------------------------------------------


def _integer_row(row: dict) -> dict:
    den = 1
    for v in row.values():
        if v.denominator != 1:
            den = lcm(den, v.denominator)
    if den == 1:
        out = {k: v.numerator for k, v in row.items() if v}
    else:
        out = {k: (v * den).numerator for k, v in row.items() if v}
    g = 0
    for v in out.values():
        g = gcd(g, v)
    if g > 1:
        out = {k: v // g for k, v in out.items()}
    return out


def echelon(rows: Sequence[dict]) -> dict[int, dict]:
    """Row echelon form of sparse rows ``{column: coefficient}``.

    Rows are processed in order; each is reduced against the pivots found so
    far (leading column first) using integer combinations only, and becomes a
    new pivot at its first surviving column.  Returns ``{pivot_column: row}``.
    """
    pivots: dict[int, dict] = {}
    for raw in rows:
        r = _integer_row(raw)
        while r:
            lead = min(r)
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = r
                break
            a, b = p[lead], r[lead]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            new = {k: v * fa for k, v in r.items()}
            for k, v in p.items():
                nv = new.get(k, 0) - fb * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            c = 0
            for v in new.values():
                c = gcd(c, v)
            if c > 1:
                new = {k: v // c for k, v in new.items()}
            r = new
    return pivots


def rank(rows: Sequence[dict]) -> int:
    return len(echelon(rows))


def nullspace(rows: Sequence[dict], ncols: int) -> list[list[Fraction]]:
    """Basis of the solution space: one vector per free column, in column order."""
    piv = echelon(rows)
    free = [c for c in range(ncols) if c not in piv]
    order = sorted(piv, reverse=True)
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for p in order:
            row = piv[p]
            s = sum((v * x[k] for k, v in row.items() if k != p), Fraction(0))
            x[p] = -s / row[p]
        basis.append(x)
    return basis


def matrix_rank(m: Matrix) -> int:
    return rank([{j: v for j, v in enumerate(row) if v} for row in m])


# -- representations ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Representation:
    pres: Presentation = field(repr=False)
    dims: dict
    mats: dict
    provenance: str

    @property
    def dimension(self) -> int:
        return sum(self.dims.values())

    def to_json(self) -> dict:
        return {"provenance": self.provenance, "dims": dict(self.dims),
                "mats": {a: [[str(x) for x in row] for row in m] for a, m in self.mats.items()}}


def _empty_mats(pres: Presentation, dims: dict) -> dict:
    return {a.id: zeros(dims[a.target], dims[a.source]) for a in pres.quiver.arrows}


def _visit_offsets(vertices: Sequence[str], block: int, pres: Presentation):
    dims = {v: 0 for v in pres.quiver.vertices}
    offsets = []
    for v in vertices:
        offsets.append(dims[v])
        dims[v] += block
    return dims, offsets


def build_string_module(pres: Presentation, w: Union[StringWord, Walk]) -> Representation:
    walk = w.walk if isinstance(w, StringWord) else w
    if not is_string(walk, pres):
        raise NotAString(f"{walk} is not a string")
    q = pres.quiver
    visits = [walk.start] + [q.target(x) for x in walk.letters]
    dims, off = _visit_offsets(visits, 1, pres)
    mats = _empty_mats(pres, dims)
    for i, x in enumerate(walk.letters):
        m = mats[x.arrow]
        if x.direct:
            m[off[i + 1]][off[i]] += 1
        else:
            m[off[i]][off[i + 1]] += 1
    return Representation(pres, dims, mats, f"string:{walk}")


def build_band_module(pres: Presentation, b: Band, lam, n: int = 1) -> Representation:
    """M(b, lam, n): identity blocks on every letter but the last, which carries
    the Jordan block J_n(lam) (installed inverted when that letter is inverse)."""
    lam = Fraction(lam)
    if lam == 0:
        raise ZeroLambda("lambda must be non-zero")
    if not isinstance(b, Band) or not _band_ok(b.letters, pres):
        raise NotABand(f"{b} is not a band")
    if n < 1:
        raise ValueError("n must be positive")
    q = pres.quiver
    t = len(b.letters)
    visits = [q.source(x) for x in b.letters]
    dims, off = _visit_offsets(visits, n, pres)
    mats = _empty_mats(pres, dims)
    jordan = jordan_block(lam, n)
    jordan_inv = inverse(jordan)
    ident = identity(n)
    for i, x in enumerate(b.letters):
        j = (i + 1) % t
        if x.direct:
            blk = jordan if i == t - 1 else ident
            rows, cols = off[j], off[i]
        else:
            blk = jordan_inv if i == t - 1 else ident
            rows, cols = off[i], off[j]
        m = mats[x.arrow]
        for r in range(n):
            for c in range(n):
                if blk[r][c]:
                    m[rows + r][cols + c] += blk[r][c]
    return Representation(pres, dims, mats, f"band:{b}:{lam}:{n}")


def _check_shapes(pres: Presentation, rep: Representation) -> None:
    for a in pres.quiver.arrows:
        m = rep.mats.get(a.id)
        if m is None or len(m) != rep.dims[a.target] or any(len(r) != rep.dims[a.source] for r in m):
            raise ShapeMismatch(f"matrix of {a.id} does not match dims")


def verify_representation(pres: Presentation, rep: Representation) -> bool:
    _check_shapes(pres, rep)
    for rel in pres.relations:
        acc = rep.mats[rel[0]]
        for aid in rel[1:]:
            acc = matmul(rep.mats[aid], acc)
        if any(x for row in acc for x in row):
            return False
    return True


def _exact(x):
    """Integers stay plain ints, which keeps elimination off Fraction arithmetic."""
    return x.numerator if x.denominator == 1 else x


def _hom_system(pres: Presentation, A: Representation, B: Representation):
    _check_shapes(pres, A)
    _check_shapes(pres, B)
    offset = {}
    n = 0
    for v in pres.quiver.vertices:
        offset[v] = n
        n += A.dims[v] * B.dims[v]
    rows = []
    for arrow in pres.quiver.arrows:
        s, t = arrow.source, arrow.target
        ma, mb = A.mats[arrow.id], B.mats[arrow.id]
        da_s, da_t, db_s, db_t = A.dims[s], A.dims[t], B.dims[s], B.dims[t]
        if not (da_s and db_t):
            continue
        a_cols = [[(k, _exact(ma[k][j])) for k in range(da_t) if ma[k][j]] for j in range(da_s)]
        b_rows = [[(k, _exact(mb[i][k])) for k in range(db_s) if mb[i][k]] for i in range(db_t)]
        for i in range(db_t):
            for j in range(da_s):
                eq: dict = {}
                # (X_t A)[i][j] = sum_k X_t[i][k] A[k][j]
                for k, val in a_cols[j]:
                    col = offset[t] + i * da_t + k
                    eq[col] = eq.get(col, 0) + val
                # (B X_s)[i][j] = sum_k B[i][k] X_s[k][j]
                for k, val in b_rows[i]:
                    col = offset[s] + k * da_s + j
                    eq[col] = eq.get(col, 0) - val
                eq = {c: v for c, v in eq.items() if v}
                if eq:
                    rows.append(eq)
    return rows, n, offset


def hom_dim(pres: Presentation, A: Representation, B: Representation) -> int:
    rows, n, _ = _hom_system(pres, A, B)
    return n - rank(rows)


@dataclass(frozen=True, eq=False)
class HomMap:
    """A morphism given by one matrix per vertex (shape dims_B x dims_A)."""

    components: dict
    source_dims: dict
    target_dims: dict

    def rank(self) -> int:
        return sum(matrix_rank(m) for m in self.components.values())

    def is_injective(self) -> bool:
        return all(matrix_rank(self.components[v]) == d for v, d in self.source_dims.items() if d)

    def is_surjective(self) -> bool:
        return all(matrix_rank(self.components[v]) == d for v, d in self.target_dims.items() if d)

    def compose(self, first: "HomMap") -> "HomMap":
        """``self`` after ``first``."""
        out = {}
        for v, m in self.components.items():
            rows, cols = self.target_dims[v], first.source_dims[v]
            out[v] = matmul(m, first.components[v]) if rows and cols and first.target_dims[v] \
                else zeros(rows, cols)
        return HomMap(out, first.source_dims, self.target_dims)

    def is_zero(self) -> bool:
        return not any(x for m in self.components.values() for row in m for x in row)

    def to_json(self) -> dict:
        return {v: [[str(x) for x in row] for row in m] for v, m in self.components.items()}


def combine(maps: Sequence[HomMap], coeffs: Sequence) -> HomMap:
    out = {}
    for v in maps[0].components:
        acc = [[Fraction(0)] * len(r) for r in maps[0].components[v]]
        for f, c in zip(maps, coeffs):
            if c:
                for i, row in enumerate(f.components[v]):
                    for j, x in enumerate(row):
                        if x:
                            acc[i][j] += c * x
        out[v] = acc
    first = maps[0]
    return HomMap(out, first.source_dims, first.target_dims)


def hom_basis(pres: Presentation, A: Representation, B: Representation) -> list[HomMap]:
    rows, n, offset = _hom_system(pres, A, B)
    basis = []
    for vec in nullspace(rows, n):
        comps = {}
        for v in pres.quiver.vertices:
            da, db = A.dims[v], B.dims[v]
            base = offset[v]
            comps[v] = [[vec[base + i * da + j] for j in range(da)] for i in range(db)]
        basis.append(HomMap(comps, dict(A.dims), dict(B.dims)))
    return basis


def hom_basis_json(basis: Sequence[HomMap]) -> str:
    return json.dumps([f.to_json() for f in basis])


def is_brick_oracle(pres: Presentation, A: Representation) -> bool:
    return hom_dim(pres, A, A) == 1


def end_dim(pres: Presentation, A: Representation) -> int:
    return hom_dim(pres, A, A)


_GENERIC_COEFFS = ((1, 2, 3, 5, 7, 11, 13, 17, 19, 23), (1, -1, 2, -3, 5, -7, 11, -13, 17, -19))


def find_map(pres: Presentation, A: Representation, B: Representation, want: str,
             basis: Optional[list[HomMap]] = None) -> Optional[HomMap]:
    """An injective (``want='injective'``) or surjective map A -> B, if one
    shows up among the basis or a few fixed generic combinations of it."""
    basis = hom_basis(pres, A, B) if basis is None else basis
    if not basis:
        return None
    test = (lambda f: f.is_injective()) if want == "injective" else (lambda f: f.is_surjective())
    for f in basis:
        if test(f):
            return f
    for coeffs in _GENERIC_COEFFS:
        ext = [coeffs[i % len(coeffs)] * (1 + i // len(coeffs)) for i in range(len(basis))]
        f = combine(basis, ext)
        if test(f):
            return f
    return None
