"""Exact dense matrices over the Gaussian rationals.

Representation: row-major tuple of GaussianRational entries.  Matrices are
immutable; every operation returns a new matrix and equality is exact.

Determinants, inverses, and adjugates run on a denominator-cleared copy of
the matrix using fraction-free (Bareiss style) elimination over the
Gaussian integers.  Divisions inside the elimination are exact by the
Sylvester minor identities; each one is checked with divmod so that a
kernel bug surfaces as a loud error instead of a wrong answer.
Characteristic polynomials use Faddeev-LeVerrier, again on the cleared
matrix, with the coefficients rescaled afterwards.

PolyMatrix is the polynomial-entry companion used by the symbolic
resolvent; it only needs construction, entry access, and evaluation.
"""

from __future__ import annotations

import math
from typing import Iterable, List, Optional, Sequence, Tuple

from .polys import Polynomial
from .scalars import GaussianRational, Rational, ZERO, as_scalar

__all__ = [
    "Matrix",
    "PolyMatrix",
    "SingularMatrixError",
    "PsdVerdict",
    "determinant",
    "exact_inverse",
    "det_and_adjugate",
    "char_poly",
    "hermitian_psd_check",
    "nullspace",
]


class SingularMatrixError(ValueError):
    """Raised when an inverse is requested of a singular matrix.

    The step attribute records the elimination stage (0-indexed pivot
    column) at which rank deficiency was detected.
    """

    def __init__(self, step: int):
        super().__init__(f"matrix is singular (no pivot at elimination step {step})")
        self.step = step


class Matrix:
    """Immutable dense matrix with exact complex-rational entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        es = tuple(as_scalar(e) for e in entries)
        if len(es) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(es)}")
        self.rows = rows
        self.cols = cols
        self.entries = es

    @classmethod
    def from_rows(cls, data: Sequence[Sequence]) -> "Matrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        if any(len(r) != cols for r in data):
            raise ValueError("ragged rows")
        return cls(rows, cols, (e for r in data for e in r))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, (1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (0 for _ in range(rows * cols)))

    def entry(self, i: int, j: int) -> GaussianRational:
        return self.entries[i * self.cols + j]

    def to_rows(self) -> List[List[GaussianRational]]:
        c = self.cols
        return [list(self.entries[i * c : (i + 1) * c]) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._same_shape(other)
        return Matrix(
            self.rows, self.cols, (a + b for a, b in zip(self.entries, other.entries))
        )

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._same_shape(other)
        return Matrix(
            self.rows, self.cols, (a - b for a, b in zip(self.entries, other.entries))
        )

    def __neg__(self):
        return Matrix(self.rows, self.cols, (-a for a in self.entries))

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return NotImplemented
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, s) -> "Matrix":
        s = as_scalar(s)
        return Matrix(self.rows, self.cols, (a * s for a in self.entries))

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(
                f"dimension mismatch: ({self.rows}x{self.cols}) @ "
                f"({other.rows}x{other.cols})"
            )
        n, m, p = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = []
        q0 = Rational(0)
        for i in range(n):
            arow = a[i * m : (i + 1) * m]
            for j in range(p):
                sr = q0
                si = q0
                for k in range(m):
                    x = arow[k]
                    xr, xi = x.re, x.im
                    if not xr and not xi:
                        continue
                    y = b[k * p + j]
                    yr, yi = y.re, y.im
                    if not yr and not yi:
                        continue
                    sr += xr * yr - xi * yi
                    si += xr * yi + xi * yr
                out.append(GaussianRational(sr, si))
        return Matrix(n, p, out)

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            (self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def conj(self) -> "Matrix":
        return Matrix(self.rows, self.cols, (a.conj() for a in self.entries))

    def dagger(self) -> "Matrix":
        """Conjugate transpose."""
        return self.transpose().conj()

    def trace(self) -> GaussianRational:
        if not self.is_square:
            raise ValueError("trace of a non-square matrix")
        return sum(
            (self.entries[i * self.cols + i] for i in range(self.rows)), ZERO
        )

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product, self on the high-order index block."""
        r1, c1, r2, c2 = self.rows, self.cols, other.rows, other.cols
        out = [ZERO] * (r1 * r2 * c1 * c2)
        width = c1 * c2
        for i1 in range(r1):
            for j1 in range(c1):
                a = self.entries[i1 * c1 + j1]
                if a.is_zero():
                    continue
                for i2 in range(r2):
                    base = (i1 * r2 + i2) * width + j1 * c2
                    for j2 in range(c2):
                        b = other.entries[i2 * c2 + j2]
                        if not b.is_zero():
                            out[base + j2] = a * b
        return Matrix(r1 * r2, c1 * c2, out)

    def is_hermitian(self) -> bool:
        if not self.is_square:
            return False
        n = self.cols
        for i in range(n):
            for j in range(i, n):
                if self.entries[i * n + j] != self.entries[j * n + i].conj():
                    return False
        return True

    def is_identity(self) -> bool:
        if not self.is_square:
            return False
        n = self.cols
        return all(
            self.entries[i * n + j] == (1 if i == j else 0)
            for i in range(n)
            for j in range(n)
        )

    def is_unitary(self) -> bool:
        return self.is_square and (self.dagger() @ self).is_identity()

    def _same_shape(self, other: "Matrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(
            ", ".join(str(e) for e in row) for row in self.to_rows()
        )
        return f"Matrix[{body}]"


# -- fraction-free kernels ---------------------------------------------

def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _int_grids(m: Matrix) -> Tuple[List[List[int]], List[List[int]], int]:
    """Clear denominators: return integer re/im grids and the denominator."""
    den = 1
    for e in m.entries:
        den = _lcm(den, int(e.re.denominator))
        den = _lcm(den, int(e.im.denominator))
    re_rows: List[List[int]] = []
    im_rows: List[List[int]] = []
    c = m.cols
    for i in range(m.rows):
        rrow = []
        irow = []
        for j in range(c):
            e = m.entries[i * c + j]
            rrow.append(int(e.re.numerator) * (den // int(e.re.denominator)))
            irow.append(int(e.im.numerator) * (den // int(e.im.denominator)))
        re_rows.append(rrow)
        im_rows.append(irow)
    return re_rows, im_rows, den


class _KernelBug(RuntimeError):
    pass


def _divc(tr, ti, dr, di):
    """Exact division of Gaussian integers; raises if not divisible."""
    if not di:
        qr, r1 = divmod(tr, dr)
        qi, r2 = divmod(ti, dr)
    else:
        norm = dr * dr + di * di
        qr, r1 = divmod(tr * dr + ti * di, norm)
        qi, r2 = divmod(ti * dr - tr * di, norm)
    if r1 or r2:
        raise _KernelBug("inexact division in fraction-free elimination")
    return qr, qi


def _bareiss_det(R: List[List[int]], I: List[List[int]], n: int):
    """Forward Bareiss elimination; returns the determinant as an int pair."""
    if n == 0:
        return 1, 0
    sign = 1
    pr, pi = 1, 0  # previous pivot
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if R[i][k] or I[i][k]), None)
        if piv is None:
            return 0, 0
        if piv != k:
            R[k], R[piv] = R[piv], R[k]
            I[k], I[piv] = I[piv], I[k]
            sign = -sign
        rkR, rkI = R[k], I[k]
        cr, ci = rkR[k], rkI[k]
        for i in range(k + 1, n):
            riR, riI = R[i], I[i]
            fr, fi = riR[k], riI[k]
            for j in range(k + 1, n):
                ar, ai = riR[j], riI[j]
                br, bi = rkR[j], rkI[j]
                tr = cr * ar - ci * ai - fr * br + fi * bi
                ti = cr * ai + ci * ar - fr * bi - fi * br
                riR[j], riI[j] = _divc(tr, ti, pr, pi)
            riR[k] = 0
            riI[k] = 0
        pr, pi = cr, ci
    dr, di = R[n - 1][n - 1], I[n - 1][n - 1]
    return (dr, di) if sign > 0 else (-dr, -di)


def _ffgj(R: List[List[int]], I: List[List[int]], n: int) -> int:
    """Fraction-free Gauss-Jordan on an n-row grid with extra columns.

    On return the left n x n block equals p * identity where p is the
    final pivot (the determinant times the returned row-swap sign), and
    the remaining columns carry p times the solution of the corresponding
    linear systems.  Raises SingularMatrixError when the rank is short.
    """
    m = len(R[0])
    sign = 1
    pr, pi = 1, 0
    for k in range(n):
        piv = next((i for i in range(k, n) if R[i][k] or I[i][k]), None)
        if piv is None:
            raise SingularMatrixError(k)
        if piv != k:
            R[k], R[piv] = R[piv], R[k]
            I[k], I[piv] = I[piv], I[k]
            sign = -sign
        rkR, rkI = R[k], I[k]
        cr, ci = rkR[k], rkI[k]
        for i in range(n):
            if i == k:
                continue
            riR, riI = R[i], I[i]
            fr, fi = riR[k], riI[k]
            if fr or fi:
                for j in range(k + 1, m):
                    ar, ai = riR[j], riI[j]
                    br, bi = rkR[j], rkI[j]
                    tr = cr * ar - ci * ai - fr * br + fi * bi
                    ti = cr * ai + ci * ar - fr * bi - fi * br
                    riR[j], riI[j] = _divc(tr, ti, pr, pi)
            else:
                for j in range(k + 1, m):
                    ar, ai = riR[j], riI[j]
                    if ar or ai:
                        tr = cr * ar - ci * ai
                        ti = cr * ai + ci * ar
                        riR[j], riI[j] = _divc(tr, ti, pr, pi)
            if i < k:
                # settled diagonal rescales from the old pivot to the new
                riR[i], riI[i] = cr, ci
            riR[k] = 0
            riI[k] = 0
        pr, pi = cr, ci
    return sign


def determinant(m: Matrix) -> GaussianRational:
    """Exact determinant via fraction-free forward elimination."""
    if not m.is_square:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return GaussianRational(1, 0)
    R, I, den = _int_grids(m)
    dr, di = _bareiss_det(R, I, n)
    scale = Rational(1, den) ** n
    return GaussianRational(dr * scale, di * scale)


def det_and_adjugate(m: Matrix) -> Tuple[GaussianRational, Matrix]:
    """Determinant and adjugate in one elimination pass.

    The adjugate satisfies m @ adj == det * identity even though it is
    computed from the inverse-style elimination, so the matrix must be
    nonsingular here; determinant() alone handles the singular case.
    """
    if not m.is_square:
        raise ValueError("adjugate of a non-square matrix")
    n = m.rows
    R, I, den = _int_grids(m)
    for i in range(n):
        R[i].extend(1 if j == i else 0 for j in range(n))
        I[i].extend(0 for _ in range(n))
    sign = _ffgj(R, I, n)
    pr, pi = sign * R[0][0] if n else 1, sign * I[0][0] if n else 0
    det_scale = Rational(1, den) ** n
    det = GaussianRational(pr * det_scale, pi * det_scale)
    # right block is sign * adj(den * m) = sign * den^(n-1) * adj(m)
    adj_scale = Rational(sign, den ** (n - 1)) if n else Rational(sign)
    adj = Matrix(
        n,
        n,
        (
            GaussianRational(R[i][n + j] * adj_scale, I[i][n + j] * adj_scale)
            for i in range(n)
            for j in range(n)
        ),
    )
    return det, adj


def exact_inverse(m: Matrix) -> Matrix:
    """Exact inverse; raises SingularMatrixError with the failing step."""
    det, adj = det_and_adjugate(m)
    inv_det = GaussianRational(1, 0) / det
    return adj.scale(inv_det)


def char_poly(m: Matrix) -> Polynomial:
    """Characteristic polynomial det(t * identity - m), monic, exact.

    Runs Faddeev-LeVerrier on the denominator-cleared matrix, where every
    intermediate stays a Gaussian integer, then rescales coefficients.
    """
    if not m.is_square:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = m.rows
    if n == 0:
        return Polynomial((1,))
    BR, BI, den = _int_grids(m)
    # coeffs[k] is the t^k coefficient of det(t*identity - den*m)
    coeffs: List[Tuple[int, int]] = [(0, 0)] * n + [(1, 0)]
    MR = [row[:] for row in BR]
    MI = [row[:] for row in BI]
    for k in range(1, n + 1):
        tr_r = sum(MR[i][i] for i in range(n))
        tr_i = sum(MI[i][i] for i in range(n))
        cr, rr = divmod(tr_r, k)
        ci, ri = divmod(tr_i, k)
        if rr or ri:
            raise _KernelBug("trace not divisible in Faddeev-LeVerrier")
        coeffs[n - k] = (-cr, -ci)
        if k == n:
            break
        for i in range(n):
            MR[i][i] -= cr
            MI[i][i] -= ci
        MR, MI = _grid_matmul(BR, BI, MR, MI, n)
    d = Rational(den)
    out = []
    for k in range(n + 1):
        scale = Rational(1, 1) / d ** (n - k)
        out.append(
            GaussianRational(coeffs[k][0] * scale, coeffs[k][1] * scale)
        )
    return Polynomial(out)


def _grid_matmul(AR, AI, BR, BI, n):
    CR = [[0] * n for _ in range(n)]
    CI = [[0] * n for _ in range(n)]
    for i in range(n):
        ar_row, ai_row = AR[i], AI[i]
        cr_row, ci_row = CR[i], CI[i]
        for k in range(n):
            xr, xi = ar_row[k], ai_row[k]
            if not xr and not xi:
                continue
            br_row, bi_row = BR[k], BI[k]
            for j in range(n):
                yr, yi = br_row[j], bi_row[j]
                if yr or yi:
                    cr_row[j] += xr * yr - xi * yi
                    ci_row[j] += xr * yi + xi * yr
    return CR, CI


class PsdVerdict:
    """Outcome of a positive-semidefiniteness check; truthy iff it holds."""

    __slots__ = ("ok", "reason")

    def __init__(self, ok: bool, reason: Optional[str] = None):
        self.ok = ok
        self.reason = reason

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"PsdVerdict(ok={self.ok}, reason={self.reason!r})"


def hermitian_psd_check(m: Matrix) -> PsdVerdict:
    """Decide exactly whether a Hermitian matrix is positive semidefinite.

    Uses the sign pattern of the characteristic polynomial: with monic
    p(t) = sum c_k t^k of degree n, all eigenvalues are nonnegative iff
    (-1)^(n-k) * c_k >= 0 for every k.  Leading principal minors are not
    used because they can vanish on singular PSD matrices.  A
    non-Hermitian input yields a false verdict with a reason, not an
    exception.
    """
    if not m.is_square:
        return PsdVerdict(False, "not-square")
    if not m.is_hermitian():
        return PsdVerdict(False, "not-hermitian")
    p = char_poly(m)
    n = m.rows
    for k in range(n + 1):
        c = p.coeff(k)
        if c.im:
            raise _KernelBug("complex coefficient in Hermitian characteristic polynomial")
        signed = c.re if (n - k) % 2 == 0 else -c.re
        if signed < 0:
            return PsdVerdict(False, "negative-eigenvalue")
    return PsdVerdict(True)


def nullspace(m: Matrix) -> List[List[GaussianRational]]:
    """Exact basis of the right nullspace via Gauss-Jordan over the field."""
    rows = [list(r) for r in m.to_rows()]
    nr, nc = m.rows, m.cols
    pivots: List[int] = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = GaussianRational(1, 0) / rows[r][c]
        rows[r] = [e * inv for e in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    one = GaussianRational(1, 0)
    for fc in free:
        v = [ZERO] * nc
        v[fc] = one
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis


class PolyMatrix:
    """Immutable dense matrix of polynomials with a declared degree bound."""

    __slots__ = ("rows", "cols", "entries", "degree_bound")

    def __init__(self, rows: int, cols: int, entries: Iterable[Polynomial], degree_bound: int):
        es = tuple(entries)
        if len(es) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(es)}")
        for e in es:
            if not isinstance(e, Polynomial):
                raise TypeError("PolyMatrix entries must be Polynomial")
            if e.degree > degree_bound:
                raise ValueError(
                    f"entry degree {e.degree} exceeds declared bound {degree_bound}"
                )
        self.rows = rows
        self.cols = cols
        self.entries = es
        self.degree_bound = degree_bound

    def entry(self, i: int, j: int) -> Polynomial:
        return self.entries[i * self.cols + j]

    def evaluate(self, z) -> Matrix:
        """Evaluate every entry at an exact point."""
        return Matrix(self.rows, self.cols, (e.evaluate(z) for e in self.entries))

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols}, degree_bound={self.degree_bound})"
