"""Small exact linear algebra over an abstract field.

Callers supply an ops object with attributes/methods
    zero, one, add(a,b), mul(a,b), inv(a), is_zero(a)
(characteristic 2 throughout, so subtraction is addition).  Pivoting is
first-nonzero, which keeps every routine deterministic.
"""

from __future__ import annotations


class IncrementalSpan:
    """Row space built one vector at a time, remembering combinations.

    add(v) returns None when v extends the span, else the coefficients
    expressing v over the previously *added* vectors.
    """

    def __init__(self, ops, width: int):
        self.ops = ops
        self.width = width
        self.rows = []       # echelon rows
        self.combos = []     # combos[i][j]: row i as combo of added vecs
        self.pivots = []
        self.n_added = 0

    def _reduce(self, v):
        ops = self.ops
        v = list(v)
        combo = [ops.zero] * self.n_added
        for row, rc, p in zip(self.rows, self.combos, self.pivots):
            c = v[p]
            if not ops.is_zero(c):
                f = ops.mul(c, ops.inv(row[p]))
                for j in range(self.width):
                    v[j] = ops.add(v[j], ops.mul(f, row[j]))
                for j in range(len(rc)):
                    combo[j] = ops.add(combo[j], ops.mul(f, rc[j]))
        return v, combo

    def reduce(self, v):
        """Residual of v modulo the span plus the combination used."""
        return self._reduce(v)

    def add(self, v):
        resid, combo = self._reduce(v)
        ops = self.ops
        piv = next((j for j in range(self.width) if not ops.is_zero(resid[j])), None)
        self.n_added += 1
        if piv is None:
            return combo
        self.rows.append(resid)
        combo = combo + [ops.zero]
        combo[-1] = ops.one  # residual = v + sum(combo_prev); store as combo of added incl. self
        # rewrite: resid = v - Σ combo_j v_j  => keep combo meaning "resid in terms of added vecs"
        self.combos.append(combo)
        self.pivots.append(piv)
        return None

    @property
    def rank(self):
        return len(self.rows)

    def contains(self, v) -> bool:
        resid, _ = self._reduce(v)
        ops = self.ops
        return all(ops.is_zero(c) for c in resid)


def rank(ops, rows) -> int:
    span = IncrementalSpan(ops, len(rows[0]) if rows else 0)
    for r in rows:
        span.add(r)
    return span.rank


def solve_right(ops, a_rows, b):
    """One solution x of A x = b (A given by rows), or None."""
    m = len(a_rows)
    n = len(a_rows[0]) if m else 0
    aug = [list(a_rows[i]) + [b[i]] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if not ops.is_zero(aug[i][c])), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        f = ops.inv(aug[r][c])
        aug[r] = [ops.mul(f, x) for x in aug[r]]
        for i in range(m):
            if i != r and not ops.is_zero(aug[i][c]):
                g = aug[i][c]
                aug[i] = [ops.add(x, ops.mul(g, y)) for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if not ops.is_zero(aug[i][n]):
            return None
    x = [ops.zero] * n
    for i, c in enumerate(pivots):
        x[c] = aug[i][n]
    return x


def inverse(ops, a_rows):
    """Matrix inverse (raises on singular input)."""
    n = len(a_rows)
    aug = [list(a_rows[i]) + [ops.one if j == i else ops.zero for j in range(n)] for i in range(n)]
    for c in range(n):
        pr = next((i for i in range(c, n) if not ops.is_zero(aug[i][c])), None)
        if pr is None:
            raise ValueError("singular matrix")
        aug[c], aug[pr] = aug[pr], aug[c]
        f = ops.inv(aug[c][c])
        aug[c] = [ops.mul(f, x) for x in aug[c]]
        for i in range(n):
            if i != c and not ops.is_zero(aug[i][c]):
                g = aug[i][c]
                aug[i] = [ops.add(x, ops.mul(g, y)) for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def mat_vec(ops, a_rows, v):
    out = []
    for row in a_rows:
        acc = ops.zero
        for x, y in zip(row, v):
            acc = ops.add(acc, ops.mul(x, y))
        out.append(acc)
    return out


def right_kernel(ops, rows):
    """Basis of {x : A x = 0} for A given by rows."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if not ops.is_zero(mat[i][c])), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        f = ops.inv(mat[r][c])
        mat[r] = [ops.mul(f, x) for x in mat[r]]
        for i in range(m):
            if i != r and not ops.is_zero(mat[i][c]):
                g = mat[i][c]
                mat[i] = [ops.add(x, ops.mul(g, y)) for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [ops.zero] * n
        v[fc] = ops.one
        for i, pc in enumerate(pivots):
            v[pc] = mat[i][fc]
        basis.append(v)
    return basis
