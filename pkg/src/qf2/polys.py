"""Exact multivariate polynomials over GF(2^k).

Terms are kept in a dict mapping exponent tuples to nonzero coefficient
ints; the monomial order is lexicographic in declared variable order
(variable 0 most significant), which makes tuple comparison the term
order.  Polynomials are treated as immutable once built.

GCDs use the primitive-PRS Euclidean algorithm on fraction-cleared
polynomials: recurse on the innermost variable with positive degree,
split off contents, and run pseudo-remainders on primitive parts.
Inputs here are desk scale, so no subresultant bookkeeping is needed.
"""

from __future__ import annotations

from .gf2k import GF2k


class Poly:
    __slots__ = ("gf", "nvars", "terms")

    def __init__(self, gf_: GF2k, nvars: int, terms: dict):
        self.gf = gf_
        self.nvars = nvars
        self.terms = terms  # trusted: no zero coefficients

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(gf_: GF2k, nvars: int) -> "Poly":
        return Poly(gf_, nvars, {})

    @staticmethod
    def const(gf_: GF2k, nvars: int, c: int) -> "Poly":
        if c == 0:
            return Poly(gf_, nvars, {})
        return Poly(gf_, nvars, {(0,) * nvars: c})

    @staticmethod
    def var(gf_: GF2k, nvars: int, i: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return Poly(gf_, nvars, {tuple(e): 1})

    @staticmethod
    def monomial(gf_: GF2k, nvars: int, exps, c: int = 1) -> "Poly":
        if c == 0:
            return Poly(gf_, nvars, {})
        return Poly(gf_, nvars, {tuple(exps): c})

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_const(self) -> bool:
        return all(all(e == 0 for e in m) for m in self.terms)

    def const_value(self) -> int:
        if self.is_zero:
            return 0
        [(m, c)] = self.terms.items()
        if any(m):
            raise ValueError("not a constant polynomial")
        return c

    @property
    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get((0,) * self.nvars) == 1

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.nvars == other.nvars
            and self.gf is other.gf
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.gf.k, self.nvars, tuple(sorted(self.terms.items()))))

    # -- term order --------------------------------------------------------

    def lead_monomial(self) -> tuple:
        return max(self.terms)

    def lead_coeff(self) -> int:
        return self.terms[max(self.terms)]

    def sort_key(self):
        return tuple(sorted(self.terms.items(), reverse=True))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        t = dict(self.terms)
        for m, c in other.terms.items():
            r = t.get(m, 0) ^ c
            if r:
                t[m] = r
            else:
                t.pop(m, None)
        return Poly(self.gf, self.nvars, t)

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero or other.is_zero:
            return Poly.zero(self.gf, self.nvars)
        g = self.gf
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                r = t.get(m, 0) ^ g.mul(c1, c2)
                if r:
                    t[m] = r
                else:
                    del t[m]
        return Poly(self.gf, self.nvars, t)

    def scale(self, c: int) -> "Poly":
        if c == 0:
            return Poly.zero(self.gf, self.nvars)
        if c == 1:
            return self
        g = self.gf
        return Poly(self.gf, self.nvars, {m: g.mul(cc, c) for m, cc in self.terms.items()})

    def __pow__(self, n: int) -> "Poly":
        r = Poly.const(self.gf, self.nvars, 1)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def square(self) -> "Poly":
        g = self.gf
        return Poly(
            self.gf,
            self.nvars,
            {tuple(2 * e for e in m): g.mul(c, c) for m, c in self.terms.items()},
        )

    # -- degrees and views -------------------------------------------------

    def deg_in(self, v: int) -> int:
        if self.is_zero:
            return -1
        return max(m[v] for m in self.terms)

    def val_in(self, v: int) -> int:
        """X-adic valuation: minimal exponent of variable v (0 for zero poly by convention)."""
        if self.is_zero:
            return 0
        return min(m[v] for m in self.terms)

    def coeffs_in(self, v: int) -> dict:
        """View as univariate in v: map degree -> Poly free of v."""
        out: dict = {}
        for m, c in self.terms.items():
            e = m[v]
            m0 = m[:v] + (0,) + m[v + 1 :]
            d = out.setdefault(e, {})
            d[m0] = d.get(m0, 0) ^ c
        return {
            e: Poly(self.gf, self.nvars, {m: c for m, c in d.items() if c})
            for e, d in out.items()
            if any(d.values())
        }

    def shift_down(self, v: int, n: int) -> "Poly":
        """Divide exactly by variable v to the n-th power."""
        t = {}
        for m, c in self.terms.items():
            if m[v] < n:
                raise ValueError("not divisible by the variable power")
            t[m[:v] + (m[v] - n,) + m[v + 1 :]] = c
        return Poly(self.gf, self.nvars, t)

    def derivative(self, v: int) -> "Poly":
        t = {}
        for m, c in self.terms.items():
            if m[v] & 1:  # char 2: even exponents vanish
                mm = m[:v] + (m[v] - 1,) + m[v + 1 :]
                t[mm] = t.get(mm, 0) ^ c
        return Poly(self.gf, self.nvars, {m: c for m, c in t.items() if c})

    def uses_var(self, v: int) -> bool:
        return any(m[v] for m in self.terms)

    def substitute(self, v: int, repl: "Poly") -> "Poly":
        """Substitute repl for variable v."""
        out = Poly.zero(self.gf, self.nvars)
        for e, coef in self.coeffs_in(v).items():
            out = out + coef * (repl ** e)
        return out

    def extend_vars(self, new_nvars: int, var_map) -> "Poly":
        """Reindex variables via var_map (old index -> new index)."""
        t = {}
        for m, c in self.terms.items():
            mm = [0] * new_nvars
            for i, e in enumerate(m):
                if e:
                    mm[var_map[i]] = e
            t[tuple(mm)] = c
        return Poly(self.gf, new_nvars, t)

    # -- squares -----------------------------------------------------------

    def is_perfect_square(self) -> bool:
        return all(all(e % 2 == 0 for e in m) for m in self.terms)

    def sqrt(self) -> "Poly":
        """Exact square root; valid when is_perfect_square() (coefficients are
        always squares since GF(2^k) is perfect)."""
        g = self.gf
        t = {}
        for m, c in self.terms.items():
            if any(e % 2 for e in m):
                raise ValueError("not a perfect square")
            t[tuple(e // 2 for e in m)] = g.sqrt(c)
        return Poly(self.gf, self.nvars, t)

    def square_monomial_part(self):
        """Split self = mono^2 * rest with mono the largest monomial square factor."""
        if self.is_zero:
            return Poly.const(self.gf, self.nvars, 1), self
        mins = [min(m[v] for m in self.terms) for v in range(self.nvars)]
        half = [e // 2 for e in mins]
        if not any(half):
            return Poly.const(self.gf, self.nvars, 1), self
        mono = Poly.monomial(self.gf, self.nvars, half)
        rest = Poly(
            self.gf,
            self.nvars,
            {tuple(e - 2 * h for e, h in zip(m, half)): c for m, c in self.terms.items()},
        )
        return mono, rest

    # -- division / gcd ----------------------------------------------------

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        return self.scale(self.gf.inv(self.lead_coeff()))

    def exact_div(self, g_: "Poly") -> "Poly":
        """Exact division (raises if not divisible)."""
        if g_.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        gfld = self.gf
        f = self
        q = Poly.zero(self.gf, self.nvars)
        lm_g = g_.lead_monomial()
        lc_g = g_.lead_coeff()
        while not f.is_zero:
            lm_f = f.lead_monomial()
            diff = tuple(a - b for a, b in zip(lm_f, lm_g))
            if any(d < 0 for d in diff):
                raise ValueError("not an exact division")
            t = Poly.monomial(self.gf, self.nvars, diff, gfld.div(f.lead_coeff(), lc_g))
            q = q + t
            f = f + t * g_
        return q

    def _prem(self, g_: "Poly", v: int) -> "Poly":
        """Pseudo-remainder of self by g_ viewed as univariate in v."""
        df, dg = self.deg_in(v), g_.deg_in(v)
        if df < dg:
            return self
        gc = g_.coeffs_in(v)
        lcg = gc[dg]
        r = self
        while not r.is_zero and r.deg_in(v) >= dg:
            dr = r.deg_in(v)
            rc = r.coeffs_in(v)
            lcr = rc[dr]
            # r := lcg*r + lcr * x^(dr-dg) * g
            shift = Poly.var(self.gf, self.nvars, v) ** (dr - dg)
            r = lcg * r + lcr * shift * g_
        return r

    def content_wrt(self, v: int) -> "Poly":
        cs = list(self.coeffs_in(v).values())
        c = cs[0]
        for p in cs[1:]:
            c = gcd(c, p)
            if c.is_one:
                break
        return c


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic-normalized gcd (lex-leading coefficient 1)."""
    if f.is_zero:
        return g.monic()
    if g.is_zero:
        return f.monic()
    if f.is_const or g.is_const:
        return Poly.const(f.gf, f.nvars, 1)
    v = max(
        i
        for i in range(f.nvars)
        if f.deg_in(i) > 0 or g.deg_in(i) > 0
    )
    if f.deg_in(v) == 0:
        return gcd(f, g.content_wrt(v))
    if g.deg_in(v) == 0:
        return gcd(f.content_wrt(v), g)
    cf, cg = f.content_wrt(v), g.content_wrt(v)
    c = gcd(cf, cg)
    a = f.exact_div(cf)
    b = g.exact_div(cg)
    if a.deg_in(v) < b.deg_in(v):
        a, b = b, a
    while not b.is_zero:
        r = a._prem(b, v)
        if not r.is_zero:
            r = r.exact_div(r.content_wrt(v))
        a, b = b, r
    return (c * a).monic()
