"""Arithmetic in GF(2^k) with elements packed as Python ints.

Bit i of an element is the coefficient of w^i, where w is the image of x
modulo a fixed irreducible polynomial.  The moduli are the Conway
polynomials for k <= 8, so the representation is reproducible and w is a
multiplicative generator; mul/inv run off exp/log tables.
"""

from __future__ import annotations

from functools import lru_cache

# Conway polynomials over GF(2), bitmask includes the leading term.
CONWAY = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1011011,
    7: 0b10000011,
    8: 0b100011101,
}

MAX_K = max(CONWAY)


class GF2k:
    """The finite field GF(2^k); elements are ints in [0, 2^k).

    Addition is xor.  Use gf(k) to get the cached instance.
    """

    def __init__(self, k: int):
        if k not in CONWAY:
            raise ValueError(f"GF(2^{k}) not supported (k must be in 1..{MAX_K})")
        self.k = k
        self.order = 1 << k
        self.modulus = CONWAY[k]
        self._build_tables()

    def _build_tables(self):
        n = self.order
        exp = [1] * (2 * n)
        log = [0] * n
        v = 1
        for i in range(n - 1):
            exp[i] = v
            log[v] = i
            v <<= 1
            if v & n:
                v ^= self.modulus
        for i in range(n - 1, 2 * n):
            exp[i] = exp[i - (n - 1)]
        self._exp = exp
        self._log = log
        # absolute trace: Tr(x) = x + x^2 + ... + x^(2^(k-1))
        tr = []
        for x in range(n):
            t, y = 0, x
            for _ in range(self.k):
                t ^= y
                y = self.mul(y, y)
            tr.append(t & 1)
        self._trace = tr
        # wp(x) = x^2 + x; table of preimages (each image has exactly 2, keep min)
        pre = {}
        for x in range(n):
            im = self.mul(x, x) ^ x
            if im not in pre or x < pre[im]:
                pre[im] = x
        self._wp_pre = pre

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(2^k)")
        return self._exp[(self.order - 1) - self._log[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            return 0 if n else 1
        return self._exp[(self._log[a] * n) % (self.order - 1)]

    def sqrt(self, a: int) -> int:
        """Every element is a square (the field is perfect)."""
        return self.pow(a, 1 << (self.k - 1))

    def trace(self, a: int) -> int:
        return self._trace[a]

    def wp_solve(self, c: int):
        """Smallest f with f^2 + f = c, or None (iff trace(c) = 1)."""
        return self._wp_pre.get(c)

    def __repr__(self):
        return f"GF(2^{self.k})"


@lru_cache(maxsize=None)
def gf(k: int) -> GF2k:
    return GF2k(k)
