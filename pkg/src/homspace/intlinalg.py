"""Exact integer linear algebra: Smith/Hermite normal forms, kernels, solvers.

Everything here runs on arbitrary-precision Python integers; there is no
floating point and no fixed-width fast path.  Conventions are pinned so that
serialized matrices compare bit-exactly:

* Smith normal form: ``U @ M @ V == D`` with ``U``, ``V`` unimodular, the
  diagonal of ``D`` nonnegative with each entry dividing the next, zeros
  trailing.  Pivots are chosen by smallest nonzero absolute value.
* Hermite normal form is row-style: ``U @ M == H``, pivots positive, entries
  above a pivot reduced into ``[0, pivot)``.
* Kernel bases are saturated and canonicalized through the Hermite form, so
  equal lattices produce identical matrices.

Empty matrices (zero rows or zero columns) are legal everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class IntMatrix:
    """Immutable integer matrix, row-major, arbitrary precision."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        data = tuple(int(e) for e in entries)
        if len(data) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(data)}"
            )
        self.rows = rows
        self.cols = cols
        self._entries = data

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        nrows = len(rows)
        if nrows == 0:
            return cls(0, 0 if cols is None else cols, ())
        ncols = len(rows[0]) if cols is None else cols
        flat = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            flat.extend(r)
        return cls(nrows, ncols, flat)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: Optional[int] = None) -> "IntMatrix":
        ncols = len(columns)
        if ncols == 0:
            return cls(0 if rows is None else rows, 0, ())
        nrows = len(columns[0]) if rows is None else rows
        flat = []
        for i in range(nrows):
            for c in columns:
                if len(c) != nrows:
                    raise ValueError("ragged columns")
                flat.append(c[i])
        return cls(nrows, ncols, flat)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, (1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls(n, n, (values[i] if i == j else 0 for i in range(n) for j in range(n)))

    def __getitem__(self, key: tuple) -> int:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) out of range for {self.rows}x{self.cols}")
        return self._entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self._entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self._entries[j :: self.cols] if self.cols else ()

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols, self.rows, (self._entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows))
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        a, b = self._entries, other._entries
        n, m, p = self.rows, self.cols, other.cols
        out = []
        for i in range(n):
            arow = a[i * m : (i + 1) * m]
            for j in range(p):
                out.append(sum(arow[k] * b[k * p + j] for k in range(m)))
        return IntMatrix(n, p, out)

    def apply(self, vector: Sequence[int]) -> tuple:
        """Matrix-vector product, vector as a column."""
        if len(vector) != self.cols:
            raise ValueError(f"vector length {len(vector)} != {self.cols}")
        return tuple(sum(self.row(i)[k] * vector[k] for k in range(self.cols)) for i in range(self.rows))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        flat = []
        for i in range(self.rows):
            flat.extend(self.row(i))
            flat.extend(other.row(i))
        return IntMatrix(self.rows, self.cols + other.cols, flat)

    def is_zero(self) -> bool:
        return all(e == 0 for e in self._entries)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self._entries == other._entries
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._entries))

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}, {self.cols}, {list(self._entries)})"


@dataclass(frozen=True)
class SnfResult:
    """Smith decomposition ``U @ M @ V == D`` with unimodular transforms."""

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix

    def diagonal(self) -> tuple:
        n = min(self.d.rows, self.d.cols)
        return tuple(self.d[i, i] for i in range(n))

    def rank(self) -> int:
        return sum(1 for x in self.diagonal() if x != 0)


def _xgcd(a: int, b: int):
    """(g, s, t) with s*a + t*b == g == gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _find_pivot(a: list, t: int, rows: int, cols: int):
    best = None
    best_val = None
    for i in range(t, rows):
        ai = a[i]
        for j in range(t, cols):
            x = ai[j]
            if x != 0 and (best_val is None or abs(x) < best_val):
                best, best_val = (i, j), abs(x)
                if best_val == 1:
                    return best
    return best


def _snf_transform(m: IntMatrix, want_u: bool, want_v: bool):
    """Core SNF loop; transforms are accumulated only on demand.

    Entries are cleared by single unimodular 2x2 (extended-gcd) transforms
    rather than repeated Euclidean passes: one transform per cleared entry
    keeps intermediate growth near the size of the matrix minors, where the
    step-by-step chain can blow entries up exponentially."""
    rows, cols = m.rows, m.cols
    a = m.to_rows()
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)] if want_u else None
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)] if want_v else None

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        if u is not None:
            u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for r in a:
            r[j], r[k] = r[k], r[j]
        if v is not None:
            for r in v:
                r[j], r[k] = r[k], r[j]

    def add_row(dst, src, q):
        # row[dst] += q * row[src]
        rd, rs = a[dst], a[src]
        for j in range(cols):
            rd[j] += q * rs[j]
        if u is not None:
            ud, us = u[dst], u[src]
            for j in range(rows):
                ud[j] += q * us[j]

    def add_col(dst, src, q):
        for r in a:
            r[dst] += q * r[src]
        if v is not None:
            for r in v:
                r[dst] += q * r[src]

    def gcd_rows(t, i):
        # unimodular transform of rows (t, i) putting gcd at (t, t)
        p, x = a[t][t], a[i][t]
        g, s, tt = _xgcd(p, x)
        p_g, x_g = p // g, x // g
        rt, ri = a[t], a[i]
        for j in range(cols):
            y, z = rt[j], ri[j]
            rt[j] = s * y + tt * z
            ri[j] = -x_g * y + p_g * z
        if u is not None:
            ut, ui = u[t], u[i]
            for j in range(rows):
                y, z = ut[j], ui[j]
                ut[j] = s * y + tt * z
                ui[j] = -x_g * y + p_g * z

    def gcd_cols(t, j):
        p, x = a[t][t], a[t][j]
        g, s, tt = _xgcd(p, x)
        p_g, x_g = p // g, x // g
        for r in a:
            y, z = r[t], r[j]
            r[t] = s * y + tt * z
            r[j] = -x_g * y + p_g * z
        if v is not None:
            for r in v:
                y, z = r[t], r[j]
                r[t] = s * y + tt * z
                r[j] = -x_g * y + p_g * z

    t = 0
    limit = min(rows, cols)
    while t < limit:
        piv = _find_pivot(a, t, rows, cols)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            for i in range(t + 1, rows):
                x = a[i][t]
                if x:
                    if x % a[t][t] == 0:
                        add_row(i, t, -(x // a[t][t]))
                    else:
                        gcd_rows(t, i)
            for j in range(t + 1, cols):
                x = a[t][j]
                if x:
                    if x % a[t][t] == 0:
                        add_col(j, t, -(x // a[t][t]))
                    else:
                        gcd_cols(t, j)
            if all(a[i][t] == 0 for i in range(t + 1, rows)) and all(
                a[t][j] == 0 for j in range(t + 1, cols)
            ):
                break
        # pivot must divide the whole remaining block, else fold the offending
        # row in and reduce again
        offender = None
        pivot = a[t][t]
        for i in range(t + 1, rows):
            ai = a[i]
            for j in range(t + 1, cols):
                if ai[j] % pivot:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(t, offender, 1)
            continue
        t += 1

    for i in range(limit):
        if a[i][i] < 0:
            for j in range(cols):
                a[i][j] = -a[i][j]
            if u is not None:
                for j in range(rows):
                    u[i][j] = -u[i][j]

    d = IntMatrix.from_rows(a, cols=cols)
    um = IntMatrix.from_rows(u, cols=rows) if u is not None else None
    vm = IntMatrix.from_rows(v, cols=cols) if v is not None else None
    return um, d, vm


def smith_normal_form(m: IntMatrix) -> SnfResult:
    """Diagonalize ``m`` as ``U @ m @ V == D`` with the divisibility chain."""
    u, d, v = _snf_transform(m, want_u=True, want_v=True)
    return SnfResult(u=u, d=d, v=v)


def invariant_factors_of(m: IntMatrix) -> tuple:
    """Nonzero diagonal of the Smith form; no transforms are accumulated."""
    _, d, _ = _snf_transform(m, want_u=False, want_v=False)
    n = min(d.rows, d.cols)
    return tuple(d[i, i] for i in range(n) if d[i, i] != 0)


def hermite_normal_form(m: IntMatrix):
    """Row-style Hermite form: returns ``(H, U)`` with ``U @ m == H``.

    Entries below a pivot are cleared pairwise with unimodular extended-gcd
    transforms, so intermediate entries stay near minor size."""
    rows, cols = m.rows, m.cols
    a = m.to_rows()
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]

    def add_row(dst, src, q):
        rd, rs = a[dst], a[src]
        for j in range(cols):
            rd[j] += q * rs[j]
        ud, us = u[dst], u[src]
        for j in range(rows):
            ud[j] += q * us[j]

    def gcd_rows(t, i, col):
        p, x = a[t][col], a[i][col]
        g, s, tt = _xgcd(p, x)
        p_g, x_g = p // g, x // g
        rt, ri = a[t], a[i]
        for j in range(cols):
            y, z = rt[j], ri[j]
            rt[j] = s * y + tt * z
            ri[j] = -x_g * y + p_g * z
        ut, ui = u[t], u[i]
        for j in range(rows):
            y, z = ut[j], ui[j]
            ut[j] = s * y + tt * z
            ui[j] = -x_g * y + p_g * z

    prow = 0
    for col in range(cols):
        if prow >= rows:
            break
        for i in range(prow + 1, rows):
            if a[i][col]:
                if a[prow][col] == 0:
                    a[prow], a[i] = a[i], a[prow]
                    u[prow], u[i] = u[i], u[prow]
                elif a[i][col] % a[prow][col] == 0:
                    add_row(i, prow, -(a[i][col] // a[prow][col]))
                else:
                    gcd_rows(prow, i, col)
        if a[prow][col] != 0:
            if a[prow][col] < 0:
                for j in range(cols):
                    a[prow][j] = -a[prow][j]
                for j in range(rows):
                    u[prow][j] = -u[prow][j]
            for i in range(prow):
                if a[i][col]:
                    add_row(i, prow, -(a[i][col] // a[prow][col]))
            prow += 1

    return IntMatrix.from_rows(a, cols=cols), IntMatrix.from_rows(u, cols=rows)


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant needs a square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular integer matrix (its Hermite form is I)."""
    if m.rows != m.cols:
        raise ValueError("not square")
    h, u = hermite_normal_form(m)
    if h != IntMatrix.identity(m.rows):
        raise ValueError("matrix is not unimodular")
    return u


def lattice_row_basis(vectors: Sequence[Sequence[int]], ambient_dim: int) -> IntMatrix:
    """Canonical (Hermite) basis, one row per basis vector, of the lattice
    spanned by ``vectors`` inside Z^ambient_dim.  Zero rows are dropped, so
    equal lattices yield equal matrices."""
    mat = IntMatrix.from_rows([list(v) for v in vectors], cols=ambient_dim)
    h, _ = hermite_normal_form(mat)
    kept = [list(h.row(i)) for i in range(h.rows) if any(h.row(i))]
    return IntMatrix.from_rows(kept, cols=ambient_dim)


def integer_kernel(m: IntMatrix) -> IntMatrix:
    """Saturated basis of ``{x : m @ x == 0}``, one column per basis vector,
    canonicalized so the result is unique."""
    _, d, v = _snf_transform(m, want_u=False, want_v=True)
    rank = sum(1 for i in range(min(d.rows, d.cols)) if d[i, i] != 0)
    cols = [list(v.column(j)) for j in range(rank, m.cols)]
    basis = lattice_row_basis(cols, m.cols)
    return basis.transpose()


def solve_integer(m: IntMatrix, b: Sequence[int]) -> Optional[tuple]:
    """One integer solution of ``m @ x == b``, or None when none exists."""
    if len(b) != m.rows:
        raise ValueError(f"right-hand side length {len(b)} != {m.rows} rows")
    u, d, v = _snf_transform(m, want_u=True, want_v=True)
    c = u.apply(b)
    y = [0] * m.cols
    limit = min(m.rows, m.cols)
    for i in range(m.rows):
        di = d[i, i] if i < limit else 0
        if di == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % di:
                return None
            y[i] = c[i] // di
    return v.apply(y)


def parse_matrix_literal(text: str) -> IntMatrix:
    """Parse the CLI matrix literal: rows split by ';', entries by ','."""
    text = text.strip()
    if not text:
        return IntMatrix(0, 0, ())
    rows = []
    for part in text.split(";"):
        entries = [e.strip() for e in part.split(",")]
        try:
            rows.append([int(e) for e in entries])
        except ValueError as exc:
            raise ValueError(f"bad matrix entry in {part!r}") from exc
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("rows have different lengths")
    return IntMatrix.from_rows(rows)


def format_matrix_literal(m: IntMatrix) -> str:
    return ";".join(",".join(str(x) for x in m.row(i)) for i in range(m.rows))
