"""Towers of computable fields of characteristic 2 and their elements.

A field here is GF(2^k), extended by transcendentals (rational function
fields) and by degree-2 algebraic generators: inseparable sqrt(d) or
separable Artin-Schreier wp^{-1}(d) (wp(x) = x^2 + x).  Internally the
tower is flattened so that all transcendentals come first; an element is

    sum over subsets S of generators of  (num_S / den) * prod(S)

stored as a single mask -> fraction map with each fraction gcd-reduced
and monic-denominator, so equality is representation equality.

The module also carries the square/Artin-Schreier decision procedures
and the coordinate machinery over the subfield of squares: every field
K in the tower gets a 2-basis (one basis element per transcendental;
algebraic generators swap themselves in for a pivot when inseparable),
and coords() writes any element e as sum of c_m^2 * m over the basis
monomials m.  That turns "linear algebra over K^2" into ordinary linear
algebra over K, which is what the totally-singular solver needs.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import (
    ConstructionError,
    DivisionByZero,
    FieldMismatch,
    VariableClash,
)
from .gf2k import GF2k, gf
from .polys import Poly, gcd as poly_gcd

SQRT = "sqrt"
WP = "wp"

# ---------------------------------------------------------------------------
# fractions of polynomials


def _frac_reduce(gfld, num: Poly, den: Poly):
    if den.is_zero:
        raise DivisionByZero("zero denominator")
    if num.is_zero:
        return (num, Poly.const(gfld, num.nvars, 1))
    g = poly_gcd(num, den)
    if not g.is_one:
        num = num.exact_div(g)
        den = den.exact_div(g)
    lc = den.lead_coeff()
    if lc != 1:
        c = gfld.inv(lc)
        num = num.scale(c)
        den = den.scale(c)
    return (num, den)


def _frac_add(gfld, a, b):
    n1, d1 = a
    n2, d2 = b
    if d1 == d2:
        return _frac_reduce(gfld, n1 + n2, d1)
    return _frac_reduce(gfld, n1 * d2 + n2 * d1, d1 * d2)


def _frac_mul(gfld, a, b):
    n1, d1 = a
    n2, d2 = b
    if n1.is_zero or n2.is_zero:
        return (Poly.zero(gfld, n1.nvars), Poly.const(gfld, n1.nvars, 1))
    g1 = poly_gcd(n1, d2)
    if not g1.is_one:
        n1, d2 = n1.exact_div(g1), d2.exact_div(g1)
    g2 = poly_gcd(n2, d1)
    if not g2.is_one:
        n2, d1 = n2.exact_div(g2), d1.exact_div(g2)
    return _frac_reduce(gfld, n1 * n2, d1 * d2)


# ---------------------------------------------------------------------------
# payloads: mask -> fraction


def _p_norm(payload):
    return {m: f for m, f in payload.items() if not f[0].is_zero}


def _p_add(gfld, a, b):
    out = dict(a)
    for m, f in b.items():
        if m in out:
            s = _frac_add(gfld, out[m], f)
            if s[0].is_zero:
                del out[m]
            else:
                out[m] = s
        else:
            out[m] = f
    return out


def _p_split(payload, bit):
    lo, hi = {}, {}
    for m, f in payload.items():
        if m & bit:
            hi[m & ~bit] = f
        else:
            lo[m] = f
    return lo, hi


def _p_shift(payload, bit):
    return {m | bit: f for m, f in payload.items()}


def _p_scale(gfld, payload, frac):
    if frac[0].is_zero:
        return {}
    return _p_norm({m: _frac_mul(gfld, f, frac) for m, f in payload.items()})


def _p_mul(gfld, gens, a, b, ngens):
    """Product of payloads whose masks lie below 2^ngens."""
    if not a or not b:
        return {}
    if ngens == 0 or (max(a) == 0 and max(b) == 0):
        fa = a.get(0)
        fb = b.get(0)
        if fa is None or fb is None:
            return {}
        r = _frac_mul(gfld, fa, fb)
        return {0: r} if not r[0].is_zero else {}
    h = ngens - 1
    bit = 1 << h
    if max(a) < bit and max(b) < bit:
        return _p_mul(gfld, gens, a, b, h)
    a0, a1 = _p_split(a, bit)
    b0, b1 = _p_split(b, bit)
    kind, d = gens[h]
    t00 = _p_mul(gfld, gens, a0, b0, h)
    t11 = _p_mul(gfld, gens, a1, b1, h)
    t01 = _p_mul(gfld, gens, a0, b1, h)
    t10 = _p_mul(gfld, gens, a1, b0, h)
    lo = _p_add(gfld, t00, _p_mul(gfld, gens, t11, d, h))
    hi = _p_add(gfld, t01, t10)
    if kind == WP:
        hi = _p_add(gfld, hi, t11)
    return _p_norm(_p_add(gfld, lo, _p_shift(hi, bit)))


def _p_inv(gfld, gens, a, ngens):
    if not a:
        raise DivisionByZero("inverse of zero")
    if ngens == 0 or max(a) == 0:
        num, den = a[0]
        return {0: _frac_reduce(gfld, den, num)}
    h = ngens - 1
    bit = 1 << h
    if max(a) < bit:
        return _p_inv(gfld, gens, a, h)
    a0, a1 = _p_split(a, bit)
    kind, d = gens[h]
    if kind == SQRT:
        conj = a
        norm = _p_add(
            gfld,
            _p_mul(gfld, gens, a0, a0, h),
            _p_mul(gfld, gens, _p_mul(gfld, gens, a1, a1, h), d, h),
        )
    else:
        conj = _p_norm(_p_add(gfld, _p_add(gfld, a0, a1), _p_shift(a1, bit)))
        norm = _p_add(
            gfld,
            _p_mul(gfld, gens, a0, _p_add(gfld, a0, a1), h),
            _p_mul(gfld, gens, _p_mul(gfld, gens, a1, a1, h), d, h),
        )
    ninv = _p_inv(gfld, gens, _p_norm(norm), h)
    return _p_mul(gfld, gens, conj, ninv, ngens)


def _payload_key(payload):
    return tuple(
        (m, tuple(sorted(f[0].terms.items())), tuple(sorted(f[1].terms.items())))
        for m, f in sorted(payload.items())
    )


# ---------------------------------------------------------------------------
# fields


class Field:
    """A flattened tower: GF(2^k), transcendentals, then algebraic generators.

    Build with base_field(k), then adjoin_var / adjoin_sqrt / adjoin_wp.
    Instances are immutable; equality is structural.
    """

    __slots__ = (
        "k",
        "gf",
        "var_names",
        "gens",
        "gen_sources",
        "_key",
        "_hash",
        "_pivot_cache",
        "_pbasis_cache",
        "_coords_cache",
        "_wp_cache",
    )

    def __init__(self, k, var_names, gens, gen_sources):
        self.k = k
        self.gf = gf(k)
        self.var_names = var_names
        self.gens = gens              # tuple of (kind, d_payload)
        self.gen_sources = gen_sources  # tuple of El-description strings (for display)
        self._key = (k, var_names, tuple((kind, _payload_key(d)) for kind, d in gens))
        self._hash = hash(self._key)
        self._pivot_cache = {}
        self._pbasis_cache = {}
        self._coords_cache = {}
        self._wp_cache = {}

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Field) and self._key == other._key

    def __hash__(self):
        return self._hash

    @property
    def nvars(self):
        return len(self.var_names)

    @property
    def ngens(self):
        return len(self.gens)

    def __repr__(self):
        s = f"GF(2^{self.k})"
        if self.var_names:
            s += "(" + ",".join(self.var_names) + ")"
        for i, (kind, _) in enumerate(self.gens):
            s += f"[g{i}={kind}({self.gen_sources[i]})]"
        return s

    def gen_name(self, j):
        return f"g{j}"

    # -- construction ------------------------------------------------------

    def adjoin_var(self, name: str) -> "Field":
        if name in self.var_names or name == "w" or name.startswith("g"):
            raise VariableClash(f"variable name {name!r} already in use or reserved")
        nv = self.nvars + 1
        vmap = list(range(self.nvars))
        gens = tuple(
            (kind, {m: (n.extend_vars(nv, vmap), d.extend_vars(nv, vmap)) for m, (n, d) in pl.items()})
            for kind, pl in self.gens
        )
        return Field(self.k, self.var_names + (name,), gens, self.gen_sources)

    def adjoin_sqrt(self, d: "El") -> "Field":
        if d.field != self:
            raise FieldMismatch("sqrt argument lives in a different field")
        if d.is_zero():
            raise ConstructionError("sqrt(0) is not a field extension")
        if is_square(d) is not None:
            raise ConstructionError(f"{d} is already a square; sqrt extension rejected")
        return Field(
            self.k,
            self.var_names,
            self.gens + ((SQRT, d.payload),),
            self.gen_sources + (str(d),),
        )

    def adjoin_wp(self, d: "El") -> "Field":
        if d.field != self:
            raise FieldMismatch("wp argument lives in a different field")
        res = artin_schreier_membership(d)
        if res.status == "witness":
            raise ConstructionError(
                f"{d} is in the Artin-Schreier image (witness {res.witness}); extension rejected"
            )
        return Field(
            self.k,
            self.var_names,
            self.gens + ((WP, d.payload),),
            self.gen_sources + (str(d),),
        )

    # -- element constructors ----------------------------------------------

    def _el(self, payload) -> "El":
        return El(self, _p_norm(payload))

    def zero(self) -> "El":
        return El(self, {})

    def one(self) -> "El":
        return self.const(1)

    def const(self, c: int) -> "El":
        c = int(c)
        if not 0 <= c < (1 << self.k):
            raise ValueError(f"constant {c} outside GF(2^{self.k})")
        if c == 0:
            return self.zero()
        p = Poly.const(self.gf, self.nvars, c)
        return El(self, {0: (p, Poly.const(self.gf, self.nvars, 1))})

    def var(self, name: str) -> "El":
        i = self.var_names.index(name)
        return El(
            self,
            {0: (Poly.var(self.gf, self.nvars, i), Poly.const(self.gf, self.nvars, 1))},
        )

    def gen_el(self, j: int) -> "El":
        one = Poly.const(self.gf, self.nvars, 1)
        return El(self, {1 << j: (one, one)})

    def from_payload_of(self, el: "El") -> "El":
        """Reinterpret an element of a structurally compatible subfield here."""
        return embed(el, self)

    # -- subfield views ----------------------------------------------------

    def drop_gens(self, ngens: int) -> "Field":
        return Field(self.k, self.var_names, self.gens[:ngens], self.gen_sources[:ngens])

    def drop_var(self, xi: int) -> "Field":
        """Subfield without transcendental xi (generators must not use it)."""
        for kind, pl in self.gens:
            for m, (n, d) in pl.items():
                if n.uses_var(xi) or d.uses_var(xi):
                    raise ValueError("a generator depends on the dropped variable")
        nv = self.nvars - 1
        gens = tuple(
            (
                kind,
                {
                    m: (_delete_var(n, xi), _delete_var(d, xi))
                    for m, (n, d) in pl.items()
                },
            )
            for kind, pl in self.gens
        )
        names = self.var_names[:xi] + self.var_names[xi + 1 :]
        return Field(self.k, names, gens, self.gen_sources)


def _truncate_var(p: Poly, nv: int) -> Poly:
    return Poly(p.gf, nv, {m[:nv]: c for m, c in p.terms.items()})


def _delete_var(p: Poly, xi: int) -> Poly:
    return Poly(p.gf, p.nvars - 1, {m[:xi] + m[xi + 1 :]: c for m, c in p.terms.items()})


def base_field(k: int) -> Field:
    return Field(k, (), (), ())


def rational_field(k: int, *names: str) -> Field:
    f = base_field(k)
    for n in names:
        f = f.adjoin_var(n)
    return f


def embed(el: "El", target: Field) -> "El":
    src = el.field
    if src == target:
        return el
    if src.k != target.k:
        raise FieldMismatch("different constant fields")
    try:
        vmap = [target.var_names.index(v) for v in src.var_names]
    except ValueError:
        raise FieldMismatch(f"cannot embed {src!r} into {target!r}") from None
    if src.ngens > target.ngens:
        raise FieldMismatch(f"cannot embed {src!r} into {target!r}")
    nv = target.nvars
    payload = {
        m: (n.extend_vars(nv, vmap), d.extend_vars(nv, vmap)) for m, (n, d) in el.payload.items()
    }
    # check generator prefixes agree after the variable remap
    for j in range(src.ngens):
        kind, pl = src.gens[j]
        tk, tpl = target.gens[j]
        lifted = {m: (n.extend_vars(nv, vmap), d.extend_vars(nv, vmap)) for m, (n, d) in pl.items()}
        if tk != kind or _payload_key(lifted) != _payload_key(tpl):
            raise FieldMismatch("generator mismatch between towers")
    return El(target, payload)


# ---------------------------------------------------------------------------
# elements


class El:
    """An element of a Field; immutable, canonical, hashable."""

    __slots__ = ("field", "payload", "_hash")

    def __init__(self, field: Field, payload: dict):
        self.field = field
        self.payload = payload
        self._hash = None

    def _check(self, other):
        if not isinstance(other, El):
            raise TypeError(f"cannot combine El with {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"elements of {self.field!r} and {other.field!r}")

    def is_zero(self) -> bool:
        return not self.payload

    def __bool__(self):
        return bool(self.payload)

    def __add__(self, other):
        self._check(other)
        return El(self.field, _p_norm(_p_add(self.field.gf, self.payload, other.payload)))

    __sub__ = __add__

    def __mul__(self, other):
        self._check(other)
        return El(
            self.field,
            _p_mul(self.field.gf, self.field.gens, self.payload, other.payload, self.field.ngens),
        )

    def inv(self):
        if self.is_zero():
            raise DivisionByZero("inverse of 0")
        return El(
            self.field, _p_inv(self.field.gf, self.field.gens, self.payload, self.field.ngens)
        )

    def __truediv__(self, other):
        self._check(other)
        return self * other.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        r = self.field.one()
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def square(self):
        return self * self

    def __eq__(self, other):
        return (
            isinstance(other, El)
            and self.field == other.field
            and _payload_key(self.payload) == _payload_key(other.payload)
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field._hash, _payload_key(self.payload)))
        return self._hash

    def key(self):
        return _payload_key(self.payload)

    def sort_key(self):
        return (len(str(self)), str(self))

    # -- display ------------------------------------------------------------

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for m in sorted(self.payload):
            num, den = self.payload[m]
            fs = _poly_str(num, self.field)
            if len(num.terms) > 1 and (m or not den.is_one):
                fs = f"({fs})"
            if not den.is_one:
                ds = _poly_str(den, self.field)
                if len(den.terms) > 1:
                    ds = f"({ds})"
                fs = f"{fs}/{ds}"
            gens = [f"g{j}" for j in range(self.field.ngens) if m & (1 << j)]
            if gens:
                if fs == "1":
                    fs = "*".join(gens)
                else:
                    fs = fs + "*" + "*".join(gens)
            parts.append(fs)
        return " + ".join(parts)

    def __repr__(self):
        return f"<{self} in {self.field!r}>"


def _const_str(gfld: GF2k, c: int) -> str:
    if c == 1:
        return "1"
    bits = [i for i in range(gfld.k) if c >> i & 1]
    terms = []
    for i in sorted(bits, reverse=True):
        terms.append("1" if i == 0 else ("w" if i == 1 else f"w^{i}"))
    s = "+".join(terms)
    return f"({s})" if len(terms) > 1 else s


def _poly_str(p: Poly, field: Field) -> str:
    if p.is_zero:
        return "0"
    names = field.var_names
    parts = []
    for m in sorted(p.terms, reverse=True):
        c = p.terms[m]
        factors = []
        cs = _const_str(field.gf, c)
        if cs != "1":
            factors.append(cs)
        for i, e in enumerate(m):
            if e == 1:
                factors.append(names[i])
            elif e > 1:
                factors.append(f"{names[i]}^{e}")
        parts.append("*".join(factors) if factors else "1")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# ops objects for linalg


class ElOps:
    def __init__(self, field: Field):
        self.field = field
        self.zero = field.zero()
        self.one = field.one()

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inv()

    def is_zero(self, a):
        return a.is_zero()


class _PayloadOps:
    """linalg ops over payloads at a tower level (all vars, ngens gens)."""

    def __init__(self, field: Field, ngens: int):
        self.field = field
        self.ngens = ngens
        one = Poly.const(field.gf, field.nvars, 1)
        self.zero = {}
        self.one = {0: (one, one)}

    def add(self, a, b):
        return _p_norm(_p_add(self.field.gf, a, b))

    def mul(self, a, b):
        return _p_mul(self.field.gf, self.field.gens, a, b, self.ngens)

    def inv(self, a):
        return _p_inv(self.field.gf, self.field.gens, a, self.ngens)

    def is_zero(self, a):
        return not a

# ---------------------------------------------------------------------------
# coordinates over the subfield of squares


def _poly_coords(field: Field, nv: int, f: Poly):
    """Coordinates of a polynomial in vars[0..nv-1]: 2^nv polynomials u_m
    with f = sum u_m^2 * x^m (x^m squarefree monomials in those vars)."""
    if nv == 0:
        return [Poly.const(field.gf, field.nvars, field.gf.sqrt(f.const_value()))] if not f.is_zero else [
            Poly.zero(field.gf, field.nvars)
        ]
    x = nv - 1
    out = [Poly.zero(field.gf, field.nvars) for _ in range(1 << nv)]
    if f.is_zero:
        return out
    halves = {}  # (parity, q) -> term dict
    for m, c in f.terms.items():
        e = m[x]
        m0 = m[:x] + (0,) + m[x + 1 :]
        halves.setdefault((e & 1, e >> 1), {})[m0] = c
    for (par, q), terms in halves.items():
        sub = _poly_coords(field, nv - 1, Poly(field.gf, field.nvars, terms))
        xq = Poly.monomial(field.gf, field.nvars, tuple(q if i == x else 0 for i in range(field.nvars)))
        for mm, s in enumerate(sub):
            if not s.is_zero:
                idx = mm | (par << (nv - 1))
                out[idx] = out[idx] + xq * s
    return out


def _level_pbasis(field: Field, ngens: int):
    """2-basis of the level (all vars, ngens gens) as payloads."""
    key = ngens
    if key in field._pbasis_cache:
        return field._pbasis_cache[key]
    one = Poly.const(field.gf, field.nvars, 1)
    if ngens == 0:
        basis = [
            {0: (Poly.var(field.gf, field.nvars, i), one)} for i in range(field.nvars)
        ]
    else:
        h = ngens - 1
        kind, _d = field.gens[h]
        sub = _level_pbasis(field, h)
        if kind == WP:
            basis = list(sub)
        else:
            piv = _pivot_data(field, h)
            basis = [sub[i] for i in range(len(sub)) if i != piv["bit"]]
            basis.append({1 << h: (one, one)})
    field._pbasis_cache[key] = basis
    return basis


def _pivot_data(field: Field, h: int):
    """Precomputed exchange data for sqrt generator h (cached)."""
    if h in field._pivot_cache:
        return field._pivot_cache[h]
    kind, d = field.gens[h]
    assert kind == SQRT
    ops = _PayloadOps(field, h)
    dc = _coords_payload(field, h, d)
    r = field.nvars
    mstar = next(m for m in range(1, 1 << r) if dc[m])
    bit = next(i for i in range(r) if mstar >> i & 1)
    sub = _level_pbasis(field, h)
    lows = [T for T in range(1 << r) if not (T >> bit & 1)]
    highs = [T | (1 << bit) for T in lows]

    def entry(R, T):
        S = R ^ T
        coeff = dc[S]
        if not coeff:
            return {}
        prod = ops.one
        inter = S & T
        for i in range(r):
            if inter >> i & 1:
                prod = ops.mul(prod, sub[i])
        return ops.mul(coeff, prod)

    m_rows = [[entry(R, T) for T in lows] for R in highs]
    n_rows = [[entry(R, T) for T in lows] for R in lows]
    minv = linalg.inverse(ops, m_rows)
    data = {"bit": bit, "minv": minv, "n": n_rows, "lows": lows, "highs": highs}
    field._pivot_cache[h] = data
    return data


def _half_coords(field: Field, h: int, payload, piv):
    """Solve P = sum a_T^2 m_T + d * sum b_T^2 m_T at level (vars, h)."""
    ops = _PayloadOps(field, h)
    alpha = _coords_payload(field, h, payload)
    rhs = [alpha[R] for R in piv["highs"]]
    b = linalg.mat_vec(ops, piv["minv"], rhs)
    a = []
    for i, T in enumerate(piv["lows"]):
        acc = alpha[T]
        for j in range(len(b)):
            acc = ops.add(acc, ops.mul(piv["n"][i][j], b[j]))
        a.append(acc)
    return a, b


def _coords_payload(field: Field, ngens: int, payload):
    key = (ngens, _payload_key(payload))
    cached = field._coords_cache.get(key)
    if cached is not None:
        return cached
    gfld = field.gf
    r = field.nvars
    if ngens == 0:
        if not payload:
            out = [{} for _ in range(1 << r)]
        else:
            num, den = payload[0]
            f = num * den
            polys = _poly_coords(field, r, f)
            one = Poly.const(gfld, field.nvars, 1)
            dinv = {0: _frac_reduce(gfld, one, den)}
            out = [
                _p_mul(gfld, field.gens, {0: (p, one)}, dinv, 0) if not p.is_zero else {}
                for p in polys
            ]
    else:
        h = ngens - 1
        bit = 1 << h
        kind, d = field.gens[h]
        a_pay, b_pay = _p_split(payload, bit)
        if kind == WP:
            v = _coords_payload(field, h, b_pay)
            shifted = _p_mul(gfld, field.gens, b_pay, d, h)
            u = _coords_payload(field, h, _p_norm(_p_add(gfld, a_pay, shifted)))
            out = [
                _p_norm(_p_add(gfld, u[m], _p_shift(v[m], bit))) for m in range(1 << r)
            ]
        else:
            piv = _pivot_data(field, h)
            a1, b1 = _half_coords(field, h, a_pay, piv)
            c1, f1 = _half_coords(field, h, b_pay, piv)
            out = [{} for _ in range(1 << r)]
            gtop = 1 << (r - 1)
            for i in range(len(piv["lows"])):
                lo_val = _p_norm(_p_add(gfld, a1[i], _p_shift(b1[i], bit)))
                hi_val = _p_norm(_p_add(gfld, c1[i], _p_shift(f1[i], bit)))
                out[i] = lo_val
                out[i | gtop] = hi_val
    if len(field._coords_cache) < 20000:
        field._coords_cache[key] = out
    return out


@dataclass(frozen=True)
class FrobeniusCoordinates:
    """Element e written as sum coords[m]^2 * basis[m] over a 2-basis."""

    element: El
    basis: tuple
    coords: tuple

    def reconstruct(self) -> El:
        field = self.element.field
        acc = field.zero()
        for b, c in zip(self.basis, self.coords):
            acc = acc + c * c * b
        return acc

    def nonzero(self):
        return [(b, c) for b, c in zip(self.basis, self.coords) if not c.is_zero()]


def pbasis(field: Field):
    return tuple(El(field, p) for p in _level_pbasis(field, field.ngens))


def basis_monomials(field: Field):
    """Products of the 2-basis over all subsets, indexed by mask."""
    bas = pbasis(field)
    r = len(bas)
    out = []
    for m in range(1 << r):
        acc = field.one()
        for i in range(r):
            if m >> i & 1:
                acc = acc * bas[i]
        out.append(acc)
    return tuple(out)


def coords(field: Field, e: El):
    if e.field != field:
        raise FieldMismatch("element of a different field")
    return [El(field, p) for p in _coords_payload(field, field.ngens, e.payload)]


def frobenius_coordinates(e: El) -> FrobeniusCoordinates:
    field = e.field
    return FrobeniusCoordinates(
        element=e, basis=basis_monomials(field), coords=tuple(coords(field, e))
    )


def is_square(e: El):
    """Square-root witness r with r^2 = e, or None."""
    if e.is_zero():
        return e.field.zero()
    cs = _coords_payload(e.field, e.field.ngens, e.payload)
    if any(cs[m] for m in range(1, len(cs))):
        return None
    return El(e.field, cs[0])


def sqrt_el(e: El) -> El:
    r = is_square(e)
    if r is None:
        raise ValueError(f"{e} is not a square")
    return r


# ---------------------------------------------------------------------------
# Artin-Schreier membership


@dataclass(frozen=True)
class ASResult:
    """Three-valued answer for e in wp(K): witness / no / undecided."""

    status: str  # "witness" | "no" | "undecided"
    witness: El = None
    reason: str = ""

    def __bool__(self):
        return self.status == "witness"


def artin_schreier_membership(e: El) -> ASResult:
    key = _payload_key(e.payload)
    field = e.field
    cached = field._wp_cache.get(key)
    if cached is not None:
        return cached
    res = _wp_mem(field, field.ngens, e.payload)
    if res.status == "witness":
        w = res.witness
        assert w * w + w == e, "internal: bad Artin-Schreier witness"
    if len(field._wp_cache) < 8192:
        field._wp_cache[key] = res
    return res


def _wp_mem(field: Field, ngens: int, payload) -> ASResult:
    gfld = field.gf
    if ngens > 0:
        h = ngens - 1
        bit = 1 << h
        kind, d = field.gens[h]
        if kind == SQRT and (not payload or max(payload) < bit):
            # sqrt generator with no g-component forces a g-free witness
            return _wp_mem(field, h, payload)
        a_pay, b_pay = _p_split(payload, bit)
        if kind == SQRT:
            bsq = _p_mul(gfld, field.gens, b_pay, b_pay, h)
            target = _p_norm(_p_add(gfld, a_pay, _p_mul(gfld, field.gens, bsq, d, h)))
            sub = _wp_mem(field, h, target)
            if sub.status == "witness":
                w = El(field, _p_norm(_p_add(gfld, sub.witness.payload, _p_shift(b_pay, bit))))
                return ASResult("witness", w)
            return ASResult(sub.status, reason=sub.reason)
        # wp generator: f = u + v*theta with wp(v) = B, wp(u) = A + v^2 d
        subv = _wp_mem(field, h, b_pay)
        if subv.status != "witness":
            return ASResult(subv.status, reason=f"theta-component: {subv.reason}")
        reasons = []
        one = {0: (Poly.const(gfld, field.nvars, 1), Poly.const(gfld, field.nvars, 1))}
        for cand in (subv.witness.payload, _p_norm(_p_add(gfld, subv.witness.payload, one))):
            vsq = _p_mul(gfld, field.gens, cand, cand, h)
            target = _p_norm(_p_add(gfld, a_pay, _p_mul(gfld, field.gens, vsq, d, h)))
            subu = _wp_mem(field, h, target)
            if subu.status == "witness":
                w = El(field, _p_norm(_p_add(gfld, subu.witness.payload, _p_shift(cand, bit))))
                return ASResult("witness", w)
            reasons.append(subu)
        if any(s.status == "undecided" for s in reasons):
            return ASResult("undecided", reason="; ".join(s.reason for s in reasons))
        return ASResult("no", reason="both theta-branches fail: " + reasons[0].reason)
    # gens-free level
    if not payload:
        return ASResult("witness", field.zero())
    num, den = payload[0]
    nv = _top_var(num, den, field)
    if nv is None:
        c = num.const_value() if not num.is_zero else 0
        cd = den.const_value()
        val = gfld.div(c, cd)
        f = gfld.wp_solve(val)
        if f is None:
            return ASResult("no", reason=f"absolute trace of {_const_str(gfld, val)} is 1")
        return ASResult("witness", field.const(f))
    x = nv
    if den.deg_in(x) == 0:
        return _wp_poly_case(field, num, den, x)
    dq = den.derivative(x)
    if not dq.is_zero:
        g = poly_gcd(den, dq)
        if g.deg_in(x) == 0:
            return ASResult(
                "no", reason=f"odd pole order: denominator squarefree in {field.var_names[x]}"
            )
    if den.is_perfect_square():
        return _wp_square_den(field, num, den.sqrt(), x)
    return ASResult("undecided", reason="denominator outside the supported fragment")


def _top_var(num: Poly, den: Poly, field: Field):
    for x in range(field.nvars - 1, -1, -1):
        if num.deg_in(x) > 0 or den.deg_in(x) > 0:
            return x
    return None


def _wp_poly_case(field: Field, num: Poly, den: Poly, x: int) -> ASResult:
    """e = num/den with den free of x: strip even-degree leading terms."""
    gfld = field.gf
    f_acc = field.zero()
    cur = El(field, {0: _frac_reduce(gfld, num, den)})
    while True:
        pl = cur.payload
        if not pl:
            break
        n2, d2 = pl[0]
        if n2.deg_in(x) <= 0:
            break
        n = n2.deg_in(x)
        if d2.deg_in(x) > 0:
            # stripping uncovered an x-denominator: fall back to the general path
            return _wp_mem_retry(field, cur, f_acc)
        if n % 2 == 1:
            return ASResult("no", reason=f"odd degree in {field.var_names[x]}")
        lead = El(field, {0: _frac_reduce(gfld, n2.coeffs_in(x)[n], d2)})
        root = is_square(lead)
        if root is None:
            return ASResult(
                "no",
                reason=f"leading coefficient in {field.var_names[x]} is not a square",
            )
        xq = El(
            field,
            {
                0: (
                    Poly.monomial(
                        field.gf,
                        field.nvars,
                        tuple(n // 2 if i == x else 0 for i in range(field.nvars)),
                    ),
                    Poly.const(gfld, field.nvars, 1),
                )
            },
        )
        f1 = root * xq
        f_acc = f_acc + f1
        cur = cur + f1 * f1 + f1
    if cur.is_zero():
        return ASResult("witness", f_acc)
    sub = _wp_mem(field, 0, cur.payload)
    if sub.status == "witness":
        return ASResult("witness", f_acc + sub.witness)
    return ASResult(sub.status, reason=sub.reason)


def _wp_mem_retry(field: Field, cur: El, f_acc: El) -> ASResult:
    sub = _wp_mem(field, 0, cur.payload)
    if sub.status == "witness":
        return ASResult("witness", f_acc + sub.witness)
    return ASResult(sub.status, reason=sub.reason)


def _wp_square_den(field: Field, p: Poly, s: Poly, x: int, cap: int = 48) -> ASResult:
    """e = p/s^2: solve h^2 + h*s = p over (subfield fractions)[x]."""
    gfld = field.gf
    one = Poly.const(gfld, field.nvars, 1)

    def to_el(poly):
        return El(field, {0: _frac_reduce(gfld, poly, one)})

    s_el = to_el(s)
    p_el = to_el(p)
    budget = [cap]

    def solve(pp: El):
        # solutions h (as El, polynomial in x over lower-var fractions) of h^2 + h s = pp
        if budget[0] <= 0:
            return "undecided"
        budget[0] -= 1
        if pp.is_zero():
            return [field.zero(), s_el]
        npp = pp.payload.get(0)
        if npp is None:
            return []
        if npp[1].deg_in(x) > 0:
            return "undecided"
        dp = npp[0].deg_in(x)
        ds = s.deg_in(x)
        results = []
        # candidate: top of h^2 dominates (deg h > ds)
        if dp % 2 == 0 and dp // 2 > ds:
            lead = El(field, {0: _frac_reduce(gfld, npp[0].coeffs_in(x)[dp], npp[1])})
            root = is_square(lead)
            if root is not None:
                xq = to_el(
                    Poly.monomial(
                        gfld, field.nvars, tuple(dp // 2 if i == x else 0 for i in range(field.nvars))
                    )
                )
                h_top = root * xq
                rest = solve(pp + h_top * h_top + h_top * s_el)
                if rest == "undecided":
                    return "undecided"
                results += [h_top + r for r in rest]
        # candidate: top of h*s dominates (deg h < ds)
        if ds <= dp < 2 * ds:
            dh = dp - ds
            s_lead = El(field, {0: _frac_reduce(gfld, s.coeffs_in(x)[ds], one)})
            p_lead = El(field, {0: _frac_reduce(gfld, npp[0].coeffs_in(x)[dp], npp[1])})
            coef = p_lead / s_lead
            xq = to_el(
                Poly.monomial(gfld, field.nvars, tuple(dh if i == x else 0 for i in range(field.nvars)))
            )
            h_top = coef * xq
            rest = solve(pp + h_top * h_top + h_top * s_el)
            if rest == "undecided":
                return "undecided"
            results += [h_top + r for r in rest]
        # candidate: deg h == ds, tops interact: z^2 + s_top z = p_top
        if dp == 2 * ds:
            s_lead = El(field, {0: _frac_reduce(gfld, s.coeffs_in(x)[ds], one)})
            p_lead = El(field, {0: _frac_reduce(gfld, npp[0].coeffs_in(x)[dp], npp[1])})
            # z = s_top * y: y^2 + y = p_top / s_top^2
            tgt = p_lead / (s_lead * s_lead)
            sub = artin_schreier_membership(tgt)
            if sub.status == "undecided":
                return "undecided"
            if sub.status == "witness":
                xq = to_el(
                    Poly.monomial(gfld, field.nvars, tuple(ds if i == x else 0 for i in range(field.nvars)))
                )
                for y in (sub.witness, sub.witness + field.one()):
                    h_top = s_lead * y * xq
                    rest = solve(pp + h_top * h_top + h_top * s_el)
                    if rest == "undecided":
                        return "undecided"
                    results += [h_top + r for r in rest]
        # dedup
        out = []
        for r in results:
            if r not in out:
                out.append(r)
        return out

    hs = solve(p_el)
    if hs == "undecided":
        return ASResult("undecided", reason="branch budget exhausted on square denominator")
    for h in hs:
        f = h / s_el
        if f * f + f == p_el / (s_el * s_el):
            return ASResult("witness", f)
    return ASResult("no", reason="no h with h^2 + h*s = p (square denominator case)")


# ---------------------------------------------------------------------------
# valuations


def valuation_split(e: El, name: str):
    """e = X^eps * u * s^2 with eps in {0,1} and val_X(u) = 0."""
    field = e.field
    if e.is_zero():
        raise ValueError("valuation_split of 0")
    xi = field.var_names.index(name)
    v = _val_in(e, xi)
    eps = v & 1
    m = (v - eps) // 2
    X = field.var(name)
    s = X ** m if m >= 0 else X.inv() ** (-m)
    u = e * (X ** (-v) if v <= 0 else X.inv() ** v)
    assert _val_in(u, xi) == 0
    return eps, u, s


def _val_in(e: El, xi: int) -> int:
    vals = []
    for m, (num, den) in e.payload.items():
        vals.append(num.val_in(xi) - den.val_in(xi))
    return min(vals)


def element_uses_var(e: El, xi: int) -> bool:
    return any(n.uses_var(xi) or d.uses_var(xi) for n, d in e.payload.values())


def substitute_var(e: El, xi: int, repl: Poly) -> El:
    """Apply the ring substitution var_xi -> repl (a polynomial) to an element.

    Only polynomial replacements are needed (affine changes of variables).
    """
    field = e.field
    gfld = field.gf
    out = {}
    for m, (num, den) in e.payload.items():
        n2 = num.substitute(xi, repl)
        d2 = den.substitute(xi, repl)
        out[m] = _frac_reduce(gfld, n2, d2)
    return El(field, _p_norm(out))


def project_drop_var(e: El, sub: Field, xi: int) -> El:
    """Reinterpret e (free of variable xi) in the subfield sub = field.drop_var(xi)."""
    for m, (num, den) in e.payload.items():
        if num.uses_var(xi) or den.uses_var(xi):
            raise ValueError("element uses the dropped variable")
    payload = {
        m: (_delete_var(n, xi), _delete_var(d, xi)) for m, (n, d) in e.payload.items()
    }
    return El(sub, payload)


def all_field_elements(field: Field):
    """All elements of a finite tower (no transcendentals), in a fixed order."""
    if field.nvars:
        raise ValueError("field is not finite")
    q = 1 << field.k
    n = 1 << field.ngens
    total = q ** n
    out = []
    one = Poly.const(field.gf, 0, 1)
    for code in range(total):
        payload = {}
        c = code
        for m in range(n):
            coeff = c % q
            c //= q
            if coeff:
                payload[m] = (Poly.const(field.gf, 0, coeff), one)
        out.append(El(field, payload))
    return out


def field_size(field: Field):
    if field.nvars:
        return None
    return (1 << field.k) ** (1 << field.ngens)
