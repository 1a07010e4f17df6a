"""Dense linear algebra over F_q.

Matrices are tuples of row tuples of field ints, vectors are tuples of
field ints.  Every function takes the field as its first argument.
"""

from __future__ import annotations

from .errors import DimensionMismatch, EigenvalueOutsideField, NotDiagonalizable, Singular
from .gf import FieldCtx

Mat = tuple  # tuple[tuple[int, ...], ...]
Vec = tuple  # tuple[int, ...]


def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(n: int, cols: int | None = None) -> Mat:
    return tuple((0,) * (n if cols is None else cols) for _ in range(n))


def diag(d) -> Mat:
    n = len(d)
    return tuple(tuple(d[i] if i == j else 0 for j in range(n)) for i in range(n))


def scalar(n: int, a: int) -> Mat:
    return diag((a,) * n)


def as_mat(rows) -> Mat:
    return tuple(tuple(r) for r in rows)


def transpose(A: Mat) -> Mat:
    return tuple(zip(*A)) if A else ()


def _check_square(A):
    n = len(A)
    if any(len(r) != n for r in A):
        raise DimensionMismatch("matrix is not square", witness={"rows": [len(r) for r in A]})
    return n


def mat_add(F: FieldCtx, A: Mat, B: Mat) -> Mat:
    if len(A) != len(B) or any(len(r) != len(s) for r, s in zip(A, B)):
        raise DimensionMismatch("mat_add shape mismatch")
    add = F.add
    return tuple(tuple(add(x, y) for x, y in zip(r, s)) for r, s in zip(A, B))


def mat_sub(F: FieldCtx, A: Mat, B: Mat) -> Mat:
    return mat_add(F, A, mat_neg(F, B))


def mat_neg(F: FieldCtx, A: Mat) -> Mat:
    neg = F.neg
    return tuple(tuple(neg(x) for x in r) for r in A)


def mat_scale(F: FieldCtx, a: int, A: Mat) -> Mat:
    mul = F.mul
    return tuple(tuple(mul(a, x) for x in r) for r in A)


def mat_mul(F: FieldCtx, A: Mat, B: Mat) -> Mat:
    if A and len(A[0]) != len(B):
        raise DimensionMismatch(f"cannot multiply {len(A)}x{len(A[0])} by {len(B)}x?")
    add, mul = F.add, F.mul
    cols = transpose(B)
    out = []
    for row in A:
        new = []
        for col in cols:
            s = 0
            for x, y in zip(row, col):
                if x and y:
                    s = add(s, mul(x, y))
            new.append(s)
        out.append(tuple(new))
    return tuple(out)


def mat_vec(F: FieldCtx, A: Mat, v: Vec) -> Vec:
    if A and len(A[0]) != len(v):
        raise DimensionMismatch("mat_vec shape mismatch")
    add, mul = F.add, F.mul
    out = []
    for row in A:
        s = 0
        for x, y in zip(row, v):
            if x and y:
                s = add(s, mul(x, y))
        out.append(s)
    return tuple(out)


def mat_pow(F: FieldCtx, A: Mat, k: int) -> Mat:
    if k < 0:
        return mat_pow(F, mat_inv(F, A), -k)
    n = _check_square(A)
    result = identity(n)
    while k:
        if k & 1:
            result = mat_mul(F, result, A)
        k >>= 1
        if k:
            A = mat_mul(F, A, A)
    return result


def vec_add(F: FieldCtx, u: Vec, v: Vec) -> Vec:
    if len(u) != len(v):
        raise DimensionMismatch("vec_add length mismatch")
    add = F.add
    return tuple(add(x, y) for x, y in zip(u, v))


def vec_sub(F: FieldCtx, u: Vec, v: Vec) -> Vec:
    return vec_add(F, u, vec_neg(F, v))


def vec_neg(F: FieldCtx, v: Vec) -> Vec:
    return tuple(F.neg(x) for x in v)


def vec_scale(F: FieldCtx, v: Vec, a: int) -> Vec:
    mul = F.mul
    return tuple(mul(x, a) for x in v)


# --- elimination -----------------------------------------------------------

def rref(F: FieldCtx, A: Mat) -> tuple[list[list[int]], list[int]]:
    """Reduced row-echelon form (leading entries 1) and the pivot columns."""
    R = [list(r) for r in A]
    rows = len(R)
    cols = len(R[0]) if R else 0
    pivots = []
    r = 0
    for col in range(cols):
        piv = next((i for i in range(r, rows) if R[i][col]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = F.inv(R[r][col])
        R[r] = [F.mul(inv, x) for x in R[r]]
        for i in range(rows):
            if i != r and R[i][col]:
                f = F.neg(R[i][col])
                R[i] = [F.add(x, F.mul(f, y)) for x, y in zip(R[i], R[r])]
        pivots.append(col)
        r += 1
        if r == rows:
            break
    return R, pivots


def rank(F: FieldCtx, A: Mat) -> int:
    return len(rref(F, A)[1])


def kernel_basis(F: FieldCtx, A: Mat) -> list[Vec]:
    """Basis of {v : A v = 0}, one vector per free column of rref(A).

    The vector for free column f has a 1 in position f, zeros in the other
    free positions, so the basis is uniquely fixed.
    """
    cols = len(A[0]) if A else 0
    R, pivots = rref(F, A)
    free = [j for j in range(cols) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * cols
        v[f] = 1
        for row, pc in zip(R, pivots):
            v[pc] = F.neg(row[f])
        basis.append(tuple(v))
    return basis


def mat_inv(F: FieldCtx, A: Mat) -> Mat:
    """Gauss-Jordan inverse."""
    n = _check_square(A)
    aug = tuple(tuple(r) + e for r, e in zip(A, identity(n)))
    R, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise Singular("matrix is singular", witness={"rank": sum(1 for p in pivots if p < n)})
    return tuple(tuple(r[n:]) for r in R)


def is_invertible(F: FieldCtx, A: Mat) -> bool:
    return rank(F, A) == len(A)


def det(F: FieldCtx, A: Mat) -> int:
    n = _check_square(A)
    R = [list(r) for r in A]
    d = 1
    for col in range(n):
        piv = next((i for i in range(col, n) if R[i][col]), None)
        if piv is None:
            return 0
        if piv != col:
            R[col], R[piv] = R[piv], R[col]
            d = F.neg(d)
        d = F.mul(d, R[col][col])
        inv = F.inv(R[col][col])
        for i in range(col + 1, n):
            if R[i][col]:
                f = F.neg(F.mul(R[i][col], inv))
                R[i] = [F.add(x, F.mul(f, y)) for x, y in zip(R[i], R[col])]
    return d


# --- characteristic polynomial and eigen-decomposition ---------------------

def _poly_mul(F, a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def _poly_add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = F.add(out[i], y)
    return out


def char_poly(F: FieldCtx, A: Mat) -> list[int]:
    """Coefficients (low to high) of det(tI - A), via Hessenberg reduction."""
    n = _check_square(A)
    H = [list(r) for r in A]
    add, mul, neg = F.add, F.mul, F.neg
    for m in range(1, n - 1):
        i = next((i for i in range(m, n) if H[i][m - 1]), None)
        if i is None:
            continue
        if i != m:
            H[i], H[m] = H[m], H[i]
            for row in H:
                row[i], row[m] = row[m], row[i]
        tinv = F.inv(H[m][m - 1])
        for i in range(m + 1, n):
            u = mul(H[i][m - 1], tinv)
            if not u:
                continue
            H[i] = [add(x, neg(mul(u, y))) for x, y in zip(H[i], H[m])]
            for row in H:
                row[m] = add(row[m], mul(u, row[i]))
    # p_k = (t - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}
    polys = [[1]]
    for k in range(n):
        pk = _poly_mul(F, [neg(H[k][k]), 1], polys[k])
        prod = 1
        for i in range(k - 1, -1, -1):
            prod = mul(prod, H[i + 1][i])
            if not prod:
                break
            coef = mul(H[i][k], prod)
            if coef:
                pk = _poly_add(F, pk, [neg(mul(coef, x)) for x in polys[i]])
        polys.append(pk)
    return polys[n]


def poly_eval(F: FieldCtx, coeffs, x: int) -> int:
    acc = 0
    for a in reversed(coeffs):
        acc = F.add(F.mul(acc, x), a)
    return acc


def root_multiplicity(F: FieldCtx, coeffs, r: int) -> int:
    """Multiplicity of r as a root of the polynomial (synthetic division)."""
    coeffs = list(coeffs)
    mult = 0
    while len(coeffs) > 1:
        # divide by (t - r)
        quot = [0] * (len(coeffs) - 1)
        acc = 0
        for i in range(len(coeffs) - 1, 0, -1):
            acc = F.add(F.mul(acc, r), coeffs[i])
            quot[i - 1] = acc
        rem = F.add(F.mul(acc, r), coeffs[0])
        if rem:
            break
        mult += 1
        coeffs = quot
    return mult


def eigen_diagonalize(F: FieldCtx, S: Mat) -> tuple[Mat, Vec]:
    """Return (A, d) with S = A diag(d) A^{-1}, eigenvalues ascending by encoding.

    Raises EigenvalueOutsideField when det(tI - S) does not split over F_q and
    NotDiagonalizable when some eigenspace is too small.
    """
    n = _check_square(S)
    cp = char_poly(F, S)
    roots = []
    for r in F.elements():
        k = root_multiplicity(F, cp, r)
        if k:
            roots.append((r, k))
    if sum(k for _, k in roots) < n:
        raise EigenvalueOutsideField(
            "characteristic polynomial does not split over the base field",
            witness={"char_poly": cp, "roots": [r for r, _ in roots]})
    cols, d = [], []
    for r, k in roots:
        vecs = kernel_basis(F, mat_sub(F, S, scalar(n, r)))
        if len(vecs) < k:
            raise NotDiagonalizable(
                f"eigenvalue {r} has geometric multiplicity {len(vecs)} < {k}",
                witness={"eigenvalue": r, "algebraic": k, "geometric": len(vecs)})
        cols.extend(vecs)
        d.extend([r] * len(vecs))
    return transpose(tuple(cols)), tuple(d)
