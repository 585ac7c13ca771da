"""Exact integer and rational linear algebra.

Row-style Hermite normal form over Z with unimodular transform, integer and
rational kernels, canonical subgroup bases, saturation, integer linear
solving, and exact characteristic polynomials.  Plain Python ints and
Fractions throughout; rerunning any function on the same input reproduces
the same output bit for bit.

Convention (used repo-wide): the HNF of a row lattice is the unique row
echelon matrix with positive pivots, entries above each pivot reduced into
[0, pivot), and zero rows dropped.  "Canonical basis" of a subgroup of Z^r
always means the rows of this HNF.
"""

from __future__ import annotations

from fractions import Fraction


def identity_matrix(n: int):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    """Matrix product with exact entries (int or Fraction)."""
    if a and b and len(a[0]) != len(b):
        raise ValueError(f"shape mismatch: {len(a)}x{len(a[0])} @ {len(b)}x{len(b[0])}")
    cols = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def mat_vec(a, v):
    if a and len(a[0]) != len(v):
        raise ValueError(f"shape mismatch: {len(a)}x{len(a[0])} @ {len(v)}")
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def row_hnf_transform(a):
    """Return (h, u) with u unimodular, u @ a = h, h in row echelon HNF.

    h keeps its zero rows (at the bottom), so u is square of size len(a).
    """
    m = len(a)
    n = len(a[0]) if m else 0
    h = [list(map(int, row)) for row in a]
    u = identity_matrix(m)
    row = 0
    for col in range(n):
        if row == m:
            break
        # gcd elimination below position (row, col)
        while True:
            nonzero = [i for i in range(row, m) if h[i][col] != 0]
            if not nonzero:
                break
            pivot = min(nonzero, key=lambda i: abs(h[i][col]))
            if pivot != row:
                h[row], h[pivot] = h[pivot], h[row]
                u[row], u[pivot] = u[pivot], u[row]
            done = True
            for i in range(row + 1, m):
                if h[i][col] != 0:
                    q = h[i][col] // h[row][col]
                    if q:
                        h[i] = [x - q * y for x, y in zip(h[i], h[row])]
                        u[i] = [x - q * y for x, y in zip(u[i], u[row])]
                    if h[i][col] != 0:
                        done = False
            if done:
                break
        if h[row][col] == 0:
            continue
        if h[row][col] < 0:
            h[row] = [-x for x in h[row]]
            u[row] = [-x for x in u[row]]
        p = h[row][col]
        for i in range(row):
            q = h[i][col] // p
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[row])]
                u[i] = [x - q * y for x, y in zip(u[i], u[row])]
        row += 1
    return h, u


def row_hnf(a):
    """Canonical HNF basis of the row lattice of `a` (zero rows dropped)."""
    h, _ = row_hnf_transform(a)
    return [row for row in h if any(row)]


def row_span_basis(rows):
    """Canonical basis of the subgroup of Z^r generated by integer rows."""
    rows = [list(map(int, r)) for r in rows]
    if not rows:
        return []
    return row_hnf(rows)


def int_rank(a):
    """Rank of an integer matrix (exact)."""
    return len(row_hnf(a)) if a else 0


def int_kernel_basis(a, ncols=None):
    """Canonical basis (as rows) of {v in Z^n : a @ v = 0}.

    The kernel of an integer matrix is automatically saturated.  `ncols`
    must be given when `a` has no rows.
    """
    m = len(a)
    if m == 0:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return identity_matrix(ncols)
    at = transpose(a)
    h, u = row_hnf_transform(at)
    kernel = [u[i] for i in range(len(h)) if not any(h[i])]
    return row_hnf(kernel) if kernel else []


def rational_kernel_basis(a, ncols=None):
    """Kernel of a matrix with Fraction entries, as primitive integer rows.

    Over Q the kernel of a rational matrix equals the Q-span of the integer
    kernel of any denominator-cleared form, so the returned integer rows are
    a basis of the rational kernel as well.
    """
    cleared = []
    for row in a:
        row = [Fraction(x) for x in row]
        lcm = 1
        for x in row:
            lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
        cleared.append([int(x * lcm) for x in row])
    return int_kernel_basis(cleared, ncols=ncols)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def solve_integer(a, b):
    """One integer solution x of a @ x = b, or None if none exists.

    `a` is m x n over Z, `b` length m.  Works through the HNF of the
    transpose: x @ a^T ranges over the row lattice of a^T as x ranges over
    Z^n, and membership of b in that lattice is decided by a triangular
    solve with exact divisions.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    if len(b) != m:
        raise ValueError("dimension mismatch in solve_integer")
    at = transpose(a)  # n x m
    if not at:
        return None if any(b) else []
    h_full, u = row_hnf_transform(at)
    rows = [i for i in range(len(h_full)) if any(h_full[i])]
    z = [0] * len(h_full)
    residual = list(map(int, b))
    for i in rows:
        pivot_col = next(j for j in range(m) if h_full[i][j] != 0)
        if residual[pivot_col] % h_full[i][pivot_col] != 0:
            return None
        q = residual[pivot_col] // h_full[i][pivot_col]
        z[i] = q
        if q:
            residual = [x - q * y for x, y in zip(residual, h_full[i])]
    if any(residual):
        return None
    # x = z @ u
    return [sum(z[i] * u[i][j] for i in range(len(u))) for j in range(n)]


def solve_rational(a, b):
    """Unique-free-variable rational solve of a @ x = b; None if inconsistent.

    Gaussian elimination over Q; free variables are set to zero.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    aug = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    pivots = []
    row = 0
    for col in range(n):
        pivot = next((i for i in range(row, m) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[row], aug[pivot] = aug[pivot], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [x * inv for x in aug[row]]
        for i in range(m):
            if i != row and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    for i in range(row, m):
        if aug[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = aug[i][n]
    return x


def saturation_basis(rows, r=None):
    """Canonical basis of the saturation (Q-span intersect Z^r) of a subgroup.

    Computed as the double orthogonal complement: the integer kernel of the
    annihilator of the rows, which is the saturation under the standard
    pairing.
    """
    rows = [list(map(int, row)) for row in rows]
    if not rows:
        return []
    r = len(rows[0]) if r is None else r
    annihilator = int_kernel_basis(rows, ncols=r)
    if not annihilator:
        return identity_matrix(r)
    return int_kernel_basis(annihilator, ncols=r)


def is_saturated(rows, r=None) -> bool:
    """True iff the subgroup generated by `rows` equals its saturation."""
    rows = [list(map(int, row)) for row in rows]
    if not rows:
        return True
    return row_span_basis(rows) == saturation_basis(rows, r=r)


def quotient_projection(kernel_rows, r):
    """Projection of Z^r onto a free complement of a saturated subgroup.

    Given the rows of a basis of a saturated subgroup K of Z^r (rank k),
    returns (q, p, s): the quotient rank q = r - k, a q x r integer matrix p
    with p surjective and kernel exactly K, and an r x q integer section s
    with p @ s = I_q.  For k = 0 this is the identity; for k = r the
    projection is the empty 0 x r matrix.
    """
    k = len(kernel_rows)
    if k == 0:
        ident = identity_matrix(r)
        return r, ident, ident
    kt = transpose([list(map(int, row)) for row in kernel_rows])  # r x k
    h, u = row_hnf_transform(kt)
    # saturated subgroup: the echelon block must be the identity
    top = [row[:k] for row in h[:k]]
    if top != identity_matrix(k) or any(any(row) for row in h[k:]):
        raise ValueError("quotient_projection requires a saturated basis")
    p = [u[i] for i in range(k, r)]
    q = r - k
    if q == 0:
        return 0, [], [[] for _ in range(r)]
    u_inv = invert_unimodular(u)
    s = [[u_inv[i][k + j] for j in range(q)] for i in range(r)]
    return q, p, s


def invert_unimodular(u):
    """Exact inverse of a unimodular integer matrix (integer entries)."""
    n = len(u)
    aug = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
           for i, row in enumerate(u)]
    for col in range(n):
        pivot = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            x = aug[i][n + j]
            assert x.denominator == 1, "matrix was not unimodular"
            row.append(int(x))
        out.append(row)
    return out


def det_int(a):
    """Determinant of a square integer matrix (Bareiss, exact)."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(map(int, row)) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def charpoly(m):
    """Coefficients [1, c1, ..., ck] of det(x*I - m) (Faddeev-LeVerrier)."""
    k = len(m)
    m = [[Fraction(x) for x in row] for row in m]
    coeffs = [Fraction(1)]
    n_mat = identity_matrix(k)
    n_mat = [[Fraction(x) for x in row] for row in n_mat]
    mn = None
    for i in range(1, k + 1):
        mn = mat_mul(m, n_mat)
        c = -sum(mn[j][j] for j in range(k)) / i
        coeffs.append(c)
        n_mat = [[mn[a][b] + (c if a == b else 0) for b in range(k)] for a in range(k)]
    return coeffs


def rational_rank(a):
    """Rank over Q of a matrix with Fraction entries."""
    m = len(a)
    if m == 0:
        return 0
    n = len(a[0])
    work = [[Fraction(x) for x in row] for row in a]
    rank = 0
    for col in range(n):
        pivot = next((i for i in range(rank, m) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = 1 / work[rank][col]
        work[rank] = [x * inv for x in work[rank]]
        for i in range(m):
            if i != rank and work[i][col] != 0:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[rank])]
        rank += 1
        if rank == m:
            break
    return rank


def primitive_vector(v):
    """Divide an integer vector by the gcd of its entries (direction kept)."""
    g = 0
    for x in v:
        g = _gcd(g, x)
    if g == 0:
        return list(v)
    return [x // g for x in v]
