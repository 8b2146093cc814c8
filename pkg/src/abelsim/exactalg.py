"""Exact rational matrices and integer Smith normal form.

Scalars are :class:`fractions.Fraction`.  Matrices are immutable, dense and
row-major.  Products are computed on integer numerators over a common
denominator, which keeps the cost of ``Fraction`` normalisation out of the
inner loop.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

Rational = Fraction

__all__ = [
    "Rational",
    "RationalMatrix",
    "SnfResult",
    "ContractViolation",
    "parse_rational",
    "format_rational",
    "snf",
    "clear_denominators",
    "rref",
    "frac",
]


class ContractViolation(ValueError):
    """Raised when an operation receives input outside its precondition."""


def parse_rational(text):
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction.

    Floats are refused: they would silently smuggle rounding into exact data.
    """
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {text!r}: {exc}") from None
    if "." in text or "e" in text.lower():
        raise ValueError(f"malformed rational {text!r}: decimals are not exact")
    return value


def format_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _coprime(n, d):
    obj = object.__new__(Fraction)
    obj._numerator = n
    obj._denominator = d
    return obj


def frac(n, d=1):
    """Fraction(n, d) for ints n and d > 0, skipping the generic constructor.

    The constructor's type dispatch dominates exact matrix products; this
    reduces with math.gcd and builds the normalised Fraction directly.
    """
    g = gcd(n, d)
    if g != 1:
        n //= g
        d //= g
    return _coprime(n, d)


def _as_fraction(x):
    return x if type(x) is Fraction else Fraction(x)


if frac(6, 4) != Fraction(3, 2) or hash(frac(-3, 1)) != hash(-3):  # pragma: no cover
    def frac(n, d=1):  # noqa: F811
        return Fraction(n, d)


def _den_lcm(values):
    d = 1
    for x in values:
        if x.denominator != 1:
            d = lcm(d, x.denominator)
    return d


class RationalMatrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "ncols", "_hash", "_sparse")

    def __init__(self, rows, ncols=None):
        rows = tuple(tuple(_as_fraction(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        self.rows = rows
        self.ncols = ncols
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def _raw(cls, rows, ncols):
        obj = cls.__new__(cls)
        obj.rows = rows
        obj.ncols = ncols
        obj._hash = None
        return obj

    @classmethod
    def zeros(cls, n, m):
        z = Fraction(0)
        return cls._raw(tuple((z,) * m for _ in range(n)), m)

    @classmethod
    def identity(cls, n):
        one, z = Fraction(1), Fraction(0)
        return cls._raw(tuple(tuple(one if i == j else z for j in range(n)) for i in range(n)), n)

    @classmethod
    def diag(cls, values):
        values = [Fraction(v) for v in values]
        n = len(values)
        z = Fraction(0)
        return cls._raw(tuple(tuple(values[i] if i == j else z for j in range(n)) for i in range(n)), n)

    @classmethod
    def column(cls, values):
        return cls([[v] for v in values], 1)

    @classmethod
    def hstack(cls, blocks, nrows=None):
        blocks = list(blocks)
        if nrows is None:
            nrows = blocks[0].nrows
        rows = [()] * nrows
        ncols = 0
        for b in blocks:
            if b.nrows != nrows:
                raise ValueError("hstack row mismatch")
            rows = [r + br for r, br in zip(rows, b.rows)]
            ncols += b.ncols
        return cls._raw(tuple(rows), ncols)

    @classmethod
    def vstack(cls, blocks, ncols=None):
        blocks = list(blocks)
        if ncols is None:
            ncols = blocks[0].ncols
        rows = ()
        for b in blocks:
            if b.ncols != ncols:
                raise ValueError("vstack column mismatch")
            rows += b.rows
        return cls._raw(rows, ncols)

    @classmethod
    def block(cls, grid):
        """Assemble a matrix from a 2-D list of blocks."""
        return cls.vstack([cls.hstack(row) for row in grid])

    @classmethod
    def block_diag(cls, *blocks):
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        out = [[Fraction(0)] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b.rows):
                out[r0 + i][c0:c0 + b.ncols] = row
            r0 += b.nrows
            c0 += b.ncols
        return cls._raw(tuple(tuple(r) for r in out), m)

    # basic access -------------------------------------------------------

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def shape(self):
        return (len(self.rows), self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def entries(self):
        for r in self.rows:
            yield from r

    def tolist(self):
        return [list(r) for r in self.rows]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ncols, self.rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self.rows)
        return f"RationalMatrix({self.nrows}x{self.ncols}: [{body}])"

    # arithmetic ---------------------------------------------------------

    @property
    def T(self):
        if not self.rows:
            return RationalMatrix.zeros(self.ncols, 0)
        return RationalMatrix._raw(tuple(zip(*self.rows)), len(self.rows))

    def is_integral(self):
        return all(x.denominator == 1 for x in self.entries())

    def is_zero(self):
        return all(x == 0 for x in self.entries())

    def __neg__(self):
        return RationalMatrix._raw(tuple(tuple(-x for x in r) for r in self.rows), self.ncols)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return RationalMatrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.ncols,
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        return RationalMatrix._raw(tuple(tuple(c * x for x in r) for r in self.rows), self.ncols)

    def _integer_form(self):
        d = _den_lcm(self.entries())
        return [[x.numerator * (d // x.denominator) for x in r] for r in self.rows], d

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            a, da = self._integer_form()
            b, db = other._integer_form()
            m = other.ncols
            # sparse row expansion: skip zero coefficients
            b_nz = [[(j, x) for j, x in enumerate(row) if x] for row in b]
            out = []
            d = da * db
            for row in a:
                acc = [0] * m
                for k, x in enumerate(row):
                    if x:
                        for j, y in b_nz[k]:
                            acc[j] += x * y
                out.append(tuple(frac(v, d) for v in acc))
            return RationalMatrix._raw(tuple(out), m)
        return self.matvec(other)

    def _sparse_int(self):
        # cached (denominator, nonzero integer entries per row)
        try:
            return self._sparse
        except AttributeError:
            pass
        a, d = self._integer_form()
        self._sparse = (d, [[(j, x) for j, x in enumerate(r) if x] for r in a])
        return self._sparse

    def matvec(self, x):
        x = [_as_fraction(v) for v in x]
        if len(x) != self.ncols:
            raise ValueError(f"vector length {len(x)} != {self.ncols}")
        d, rows = self._sparse_int()
        dx = _den_lcm(x)
        xi = [v.numerator * (dx // v.denominator) for v in x]
        den = d * dx
        return tuple(frac(sum(a * xi[j] for j, a in r), den) for r in rows)

    def submatrix(self, rows=None, cols=None):
        rows = range(self.nrows) if rows is None else list(rows)
        cols = range(self.ncols) if cols is None else list(cols)
        cols = list(cols)
        return RationalMatrix._raw(tuple(tuple(self.rows[i][j] for j in cols) for i in rows), len(cols))

    def inverse(self):
        """Exact inverse by Gauss-Jordan, or None when singular or non-square."""
        n = self.nrows
        if n != self.ncols:
            return None
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        for c in range(n):
            p = next((i for i in range(c, n) if aug[i][c] != 0), None)
            if p is None:
                return None
            aug[c], aug[p] = aug[p], aug[c]
            piv = aug[c][c]
            aug[c] = [x / piv for x in aug[c]]
            for i in range(n):
                f = aug[i][c]
                if i != c and f:
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
        return RationalMatrix._raw(tuple(tuple(r[n:]) for r in aug), n)

    def det(self):
        n = self.nrows
        if n != self.ncols:
            raise ValueError("det of non-square matrix")
        a = [list(r) for r in self.rows]
        d = Fraction(1)
        for c in range(n):
            p = next((i for i in range(c, n) if a[i][c] != 0), None)
            if p is None:
                return Fraction(0)
            if p != c:
                a[c], a[p] = a[p], a[c]
                d = -d
            d *= a[c][c]
            for i in range(c + 1, n):
                f = a[i][c] / a[c][c]
                if f:
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return d


@dataclass(frozen=True)
class SnfResult:
    """``U @ S @ V == A`` with U, V unimodular.

    ``U_inv`` and ``V_inv`` are tracked alongside so that solvers never need a
    second elimination pass.
    """

    U: RationalMatrix
    S: RationalMatrix
    V: RationalMatrix
    U_inv: RationalMatrix
    V_inv: RationalMatrix

    @property
    def diagonal(self):
        k = min(self.S.shape)
        return [int(self.S[i, i]) for i in range(k)]

    @property
    def rank(self):
        return sum(1 for s in self.diagonal if s != 0)


def _as_int_rows(A):
    if isinstance(A, RationalMatrix):
        rows, ncols = A.rows, A.ncols
    else:
        rows = [list(r) for r in A]
        ncols = len(rows[0]) if rows else 0
    out = []
    for r in rows:
        row = []
        for x in r:
            x = Fraction(x)
            if x.denominator != 1:
                raise ContractViolation(f"snf needs an integer matrix, got entry {x}")
            row.append(x.numerator)
        out.append(row)
    return out, ncols


def _to_matrix(rows, ncols):
    return RationalMatrix._raw(tuple(tuple(Fraction(x) for x in r) for r in rows), ncols)


def snf(A, ncols=None):
    """Smith normal form of an integer matrix.

    Pivots on a minimum-|.| nonzero entry of the trailing block, ties broken
    by the smallest (row, col).  Returns ``SnfResult`` with ``U S V = A``.
    """
    B, m = _as_int_rows(A)
    if ncols is not None:
        m = ncols
    n = len(B)
    # B = L A R throughout; Linv = L^-1 and Rinv = R^-1 give U and V.
    L = [[int(i == j) for j in range(n)] for i in range(n)]
    Linv = [[int(i == j) for j in range(n)] for i in range(n)]
    R = [[int(i == j) for j in range(m)] for i in range(m)]
    Rinv = [[int(i == j) for j in range(m)] for i in range(m)]

    def row_add(dst, src, q):  # row_dst += q * row_src
        if q == 0:
            return
        B[dst] = [x + q * y for x, y in zip(B[dst], B[src])]
        L[dst] = [x + q * y for x, y in zip(L[dst], L[src])]
        for r in Linv:
            r[src] -= q * r[dst]

    def col_add(dst, src, q):  # col_dst += q * col_src
        if q == 0:
            return
        for r in B:
            r[dst] += q * r[src]
        for r in R:
            r[dst] += q * r[src]
        Rinv[src] = [x - q * y for x, y in zip(Rinv[src], Rinv[dst])]

    def row_swap(i, j):
        if i == j:
            return
        B[i], B[j] = B[j], B[i]
        L[i], L[j] = L[j], L[i]
        for r in Linv:
            r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        if i == j:
            return
        for M in (B, R):
            for r in M:
                r[i], r[j] = r[j], r[i]
        Rinv[i], Rinv[j] = Rinv[j], Rinv[i]

    def row_neg(i):
        B[i] = [-x for x in B[i]]
        L[i] = [-x for x in L[i]]
        for r in Linv:
            r[i] = -r[i]

    for t in range(min(n, m)):
        while True:
            best = None
            for i in range(t, n):
                row = B[i]
                for j in range(t, m):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, pi, pj = best
            row_swap(t, pi)
            col_swap(t, pj)
            p = B[t][t]
            dirty = False
            for i in range(t + 1, n):
                if B[i][t]:
                    q = B[i][t] // p
                    row_add(i, t, -q)
                    if B[i][t]:
                        dirty = True
            for j in range(t + 1, m):
                if B[t][j]:
                    q = B[t][j] // p
                    col_add(j, t, -q)
                    if B[t][j]:
                        dirty = True
            if dirty:
                continue
            # pivot isolated; enforce divisibility of the trailing block
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, m) if B[i][j] % p),
                None,
            )
            if bad is None:
                break
            row_add(t, bad, 1)
        if best is None:
            break
        if B[t][t] < 0:
            row_neg(t)

    return SnfResult(
        U=_to_matrix(Linv, n),
        S=_to_matrix(B, m),
        V=_to_matrix(Rinv, m),
        U_inv=_to_matrix(L, n),
        V_inv=_to_matrix(R, m),
    )


def clear_denominators(A):
    """Return ``(scale * A, scale)`` with scale the lcm of all denominators."""
    d = _den_lcm(A.entries())
    ints = [[int(x * d) for x in r] for r in A.rows]
    return ints, d


def rref(rows, ncols):
    """Reduced row echelon form over Q.

    Returns ``(R, T, pivots)`` where ``R = T @ rows``, ``T`` is invertible and
    ``pivots`` lists the pivot column of each nonzero row of R, in order.
    """
    a = [list(map(Fraction, r)) for r in rows]
    n = len(a)
    t = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == n:
            break
        p = next((i for i in range(r, n) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        t[r], t[p] = t[p], t[r]
        piv = a[r][c]
        a[r] = [x / piv for x in a[r]]
        t[r] = [x / piv for x in t[r]]
        for i in range(n):
            f = a[i][c]
            if i != r and f:
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                t[i] = [x - f * y for x, y in zip(t[i], t[r])]
        pivots.append(c)
        r += 1
    return a, t, pivots
