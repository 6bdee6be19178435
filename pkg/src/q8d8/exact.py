"""Exact arithmetic: Gaussian rationals and dense matrices over them.

Scalars are pairs of arbitrary-precision rationals (``fractions.Fraction``),
so everything downstream -- group closure, kernels, determinants, character
sums -- is exact and reproducible bit for bit.  There is no floating point
anywhere in this package.

Pivoting in all eliminations is "first nonzero entry in column order", which
makes ranks, kernels and echelon forms canonical for a given input.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction

__all__ = [
    "GaussQ",
    "Matrix",
    "kron",
    "rational_str",
    "parse_rational",
    "gauss_str",
    "parse_gauss",
]

_RATIONAL_RE = _re.compile(r"[+-]?\d+(?:/[1-9]\d*)?\Z")


def rational_str(q) -> str:
    """Encode a rational as 'p/q', omitting '/q' when the denominator is 1."""
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def parse_rational(s: str) -> Fraction:
    """Parse 'p' or 'p/q'. Decimal and float notation are rejected."""
    s = s.strip()
    if not _RATIONAL_RE.match(s):
        raise ValueError("not an exact rational: %r" % (s,))
    return Fraction(s)


class GaussQ:
    """A Gaussian rational re + im*i with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @staticmethod
    def _coerce(x):
        if type(x) is GaussQ:
            return x
        if isinstance(x, (int, Fraction)):
            return GaussQ(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussQ(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussQ(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussQ(self.re * o.re - self.im * o.im,
                      self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self):
        return GaussQ(self.re, -self.im)

    def norm2(self) -> Fraction:
        """|z|^2 = re^2 + im^2, a nonnegative rational."""
        return self.re * self.re + self.im * self.im

    def inverse(self):
        n = self.norm2()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussQ(self.re / n, -self.im / n)

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        # agree with int/Fraction hashing when purely real
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def sort_key(self):
        return (self.re.numerator, self.re.denominator,
                self.im.numerator, self.im.denominator)

    def __repr__(self):
        return "GaussQ(%s)" % gauss_str(self)


def gauss_str(z: GaussQ) -> str:
    """Encode a Gaussian rational as 'a+b*i' with zero parts elided ('0' for zero)."""
    if not z.im:
        return rational_str(z.re)
    imp = rational_str(abs(z.im)) + "*i"
    if not z.re:
        return imp if z.im > 0 else "-" + imp
    sign = "+" if z.im > 0 else "-"
    return rational_str(z.re) + sign + imp


def parse_gauss(s: str) -> GaussQ:
    """Inverse of ``gauss_str`` (also accepts bare 'i' / '-i')."""
    s = s.strip().replace(" ", "")
    if s in ("i", "+i"):
        return GaussQ(0, 1)
    if s == "-i":
        return GaussQ(0, -1)
    if s.endswith("*i") or s.endswith("i"):
        body = s[:-2] if s.endswith("*i") else s[:-1]
        # split off a leading real part: find the sign separating the parts
        for k in range(len(body) - 1, 0, -1):
            if body[k] in "+-" and body[k - 1] not in "+-/":
                re_part, im_part = body[:k], body[k:]
                if im_part in ("+", "-"):
                    im_part += "1"
                if im_part.endswith("*"):
                    im_part = im_part[:-1]
                return GaussQ(parse_rational(re_part), parse_rational(im_part))
        body = body[:-1] if body.endswith("*") else body
        if body in ("", "+"):
            body = "1"
        elif body == "-":
            body = "-1"
        return GaussQ(0, parse_rational(body))
    return GaussQ(parse_rational(s))


_ZERO = GaussQ(0)
_ONE = GaussQ(1)


class Matrix:
    """Immutable dense matrix of Gaussian rationals, row major."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries):
        ents = tuple(e if type(e) is GaussQ else GaussQ(e) for e in entries)
        if len(ents) != rows * cols:
            raise ValueError("entry count %d does not match %dx%d"
                             % (len(ents), rows, cols))
        self.rows = rows
        self.cols = cols
        self.entries = ents
        self._hash = None

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        nc = len(rows[0]) if rows else 0
        if any(len(r) != nc for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), nc, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int):
        return cls(n, n, [_ONE if i == j else _ZERO
                          for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int):
        return cls(rows, cols, [_ZERO] * (rows * cols))

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r * self.cols + c]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("inner dimensions do not match: %dx%d * %dx%d"
                             % (self.rows, self.cols, other.rows, other.cols))
        n, m, k = self.rows, other.cols, self.cols
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            arow = a[i * k:(i + 1) * k]
            for j in range(m):
                s = _ZERO
                for t in range(k):
                    x = arow[t]
                    if x.re or x.im:
                        s = s + x * b[t * m + j]
                out.append(s)
        return Matrix(n, m, out)

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Matrix(self.rows, self.cols,
                      [x + y for x, y in zip(self.entries, other.entries)])

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Matrix(self.rows, self.cols,
                      [x - y for x, y in zip(self.entries, other.entries)])

    def __neg__(self):
        return Matrix(self.rows, self.cols, [-x for x in self.entries])

    def scale(self, s):
        s = s if type(s) is GaussQ else GaussQ(s)
        return Matrix(self.rows, self.cols, [s * x for x in self.entries])

    def transpose(self):
        return Matrix(self.cols, self.rows,
                      [self.entries[r * self.cols + c]
                       for c in range(self.cols) for r in range(self.rows)])

    def trace(self):
        if self.rows != self.cols:
            raise ValueError("trace requires a square matrix")
        s = _ZERO
        for i in range(self.rows):
            s = s + self.entries[i * self.cols + i]
        return s

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product: block (i,j) equals self[i,j] * other."""
        ra, ca, rb, cb = self.rows, self.cols, other.rows, other.cols
        out = [_ZERO] * (ra * rb * ca * cb)
        width = ca * cb
        for i in range(ra):
            for j in range(ca):
                x = self.entries[i * ca + j]
                if not (x.re or x.im):
                    continue
                for p in range(rb):
                    base = (i * rb + p) * width + j * cb
                    for q in range(cb):
                        out[base + q] = x * other.entries[p * cb + q]
        return Matrix(ra * rb, ca * cb, out)

    def apply(self, vec):
        """Matrix times coordinate vector (tuple in, tuple out)."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = []
        for i in range(self.rows):
            s = _ZERO
            row = self.row(i)
            for x, v in zip(row, vec):
                if x.re or x.im:
                    s = s + x * v
            out.append(s)
        return tuple(out)

    def is_zero(self) -> bool:
        return all(not (x.re or x.im) for x in self.entries)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def sort_key(self):
        """Lexicographic key on the flattened entries: canonical element order."""
        return tuple(e.sort_key() for e in self.entries)

    def rank(self) -> int:
        data = [list(self.row(i)) for i in range(self.rows)]
        _, pivots = _rref(data, self.cols)
        return len(pivots)

    def kernel_basis(self):
        """Canonical basis of the right null space (free-variable unit pattern)."""
        data = [list(self.row(i)) for i in range(self.rows)]
        red, pivots = _rref(data, self.cols)
        pivset = set(pivots)
        basis = []
        for f in range(self.cols):
            if f in pivset:
                continue
            v = [_ZERO] * self.cols
            v[f] = _ONE
            for k, pc in enumerate(pivots):
                v[pc] = -red[k][f]
            basis.append(tuple(v))
        return tuple(basis)

    def det(self) -> GaussQ:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant requires a square matrix")
        n = self.rows
        if n == 0:
            return _ONE
        a = [list(self.row(i)) for i in range(n)]
        sign = 1
        prev = _ONE
        for k in range(n - 1):
            if a[k][k].is_zero():
                for i in range(k + 1, n):
                    if not a[i][k].is_zero():
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return GaussQ(0)
            pk = a[k][k]
            for i in range(k + 1, n):
                aik = a[i][k]
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * pk - aik * a[k][j]) / prev
                a[i][k] = _ZERO
            prev = pk
        d = a[n - 1][n - 1]
        return -d if sign < 0 else d

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("inverse requires a square matrix")
        n = self.rows
        aug = [list(self.row(i)) + [(_ONE if i == j else _ZERO) for j in range(n)]
               for i in range(n)]
        red, pivots = _rref(aug, 2 * n)
        if pivots != list(range(n)):
            raise ValueError("matrix is singular")
        return Matrix(n, n, [red[i][n + j] for i in range(n) for j in range(n)])

    def encode(self):
        """Rows of scalar strings, for JSON reports."""
        return [[gauss_str(x) for x in self.row(i)] for i in range(self.rows)]

    def __repr__(self):
        return "Matrix(%d, %d, [%s])" % (
            self.rows, self.cols, ", ".join(gauss_str(x) for x in self.entries))


def _rref(data, cols):
    """In-place reduced row echelon form; returns (rows, pivot columns).

    Deterministic: the pivot is the first row with a nonzero entry in the
    current column, columns scanned left to right.
    """
    nrows = len(data)
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, nrows):
            if data[i][c].re or data[i][c].im:
                pr = i
                break
        if pr is None:
            continue
        data[r], data[pr] = data[pr], data[r]
        inv = data[r][c].inverse()
        data[r] = [inv * x for x in data[r]]
        for i in range(nrows):
            if i != r and (data[i][c].re or data[i][c].im):
                f = data[i][c]
                data[i] = [x - f * y for x, y in zip(data[i], data[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return data, pivots


def kron(a: Matrix, b: Matrix) -> Matrix:
    return a.kron(b)
