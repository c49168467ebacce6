"""Quadratic forms (blocks + totally singular diagonal) and diagonal
bilinear forms over characteristic-2 towers.

A QuadForm is stored structurally: nonsingular pairs (a, b) meaning the
binary form a x^2 + xy + b y^2, a diagonal of nonzero entries c z^2,
plus explicit counts of hyperbolic planes H = [0,0] and zero slots <0>.
The type (r, s) = (#blocks + #H, #diag + #zeros) is an isometry
invariant and every rewrite here preserves it.

Coordinate layout for evaluation: blocks first (two slots each), then
hyperbolic planes (two slots each), then diagonal entries, then zeros.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import fields, linalg
from .errors import DimensionMismatch, FieldMismatch, ZeroScalar
from .fields import El, ElOps, Field, coords
from .polys import Poly


@dataclass(frozen=True)
class PfisterTag:
    """Provenance note: the form equals scalar * (<<slots>> tensor inner)."""

    slots: tuple
    inner: "QuadForm"
    scalar: El


class QuadForm:
    __slots__ = ("field", "blocks", "diag", "hyp", "zeros", "tag")

    def __init__(self, field: Field, blocks=(), diag=(), hyp: int = 0, zeros: int = 0,
                 tag: Optional[PfisterTag] = None):
        self.field = field
        bl = []
        for a, b in blocks:
            bl.append((a, b))
        dg = []
        z = zeros
        for c in diag:
            if c.is_zero():
                z += 1
            else:
                dg.append(c)
        self.blocks = tuple(bl)
        self.diag = tuple(dg)
        self.hyp = hyp
        self.zeros = z
        self.tag = tag

    # -- shape ---------------------------------------------------------------

    @property
    def dim(self) -> int:
        return 2 * (len(self.blocks) + self.hyp) + len(self.diag) + self.zeros

    @property
    def form_type(self):
        return (len(self.blocks) + self.hyp, len(self.diag) + self.zeros)

    @property
    def is_nonsingular(self) -> bool:
        return self.form_type[1] == 0

    @property
    def is_totally_singular(self) -> bool:
        return self.form_type[0] == 0

    def quasilinear(self) -> "QuadForm":
        return QuadForm(self.field, (), self.diag, 0, self.zeros)

    def nonsingular_part(self) -> "QuadForm":
        return QuadForm(self.field, self.blocks, (), self.hyp, 0)

    def __eq__(self, other):
        return (
            isinstance(other, QuadForm)
            and self.field == other.field
            and self.blocks == other.blocks
            and self.diag == other.diag
            and self.hyp == other.hyp
            and self.zeros == other.zeros
        )

    def __hash__(self):
        return hash((self.field, self.blocks, self.diag, self.hyp, self.zeros))

    def __str__(self):
        parts = [f"[{a},{b}]" for a, b in self.blocks]
        parts += ["H"] * self.hyp
        if self.diag:
            parts.append("<" + ",".join(str(c) for c in self.diag) + ">")
        parts += ["0"] * self.zeros
        return " + ".join(parts) if parts else "(empty form)"

    def __repr__(self):
        return f"QuadForm({self})"

    # -- constructions ---------------------------------------------------------

    def _chk(self, other: "QuadForm"):
        if self.field != other.field:
            raise FieldMismatch("forms over different fields")

    def perp(self, other: "QuadForm") -> "QuadForm":
        self._chk(other)
        return QuadForm(
            self.field,
            self.blocks + other.blocks,
            self.diag + other.diag,
            self.hyp + other.hyp,
            self.zeros + other.zeros,
        )

    __add__ = perp

    def scale(self, lam: El) -> "QuadForm":
        if lam.is_zero():
            raise ZeroScalar("scaling a form by 0")
        inv = lam.inv()
        tag = None
        if self.tag is not None:
            tag = PfisterTag(self.tag.slots, self.tag.inner, self.tag.scalar * lam)
        return QuadForm(
            self.field,
            tuple((lam * a, inv * b) for a, b in self.blocks),
            tuple(lam * c for c in self.diag),
            self.hyp,
            self.zeros,
            tag=tag,
        )

    def __rmul__(self, lam: El) -> "QuadForm":
        return self.scale(lam)

    # -- evaluation --------------------------------------------------------------

    def evaluate(self, vec) -> El:
        if len(vec) != self.dim:
            raise DimensionMismatch(f"vector length {len(vec)} != dim {self.dim}")
        acc = self.field.zero()
        i = 0
        for a, b in self.blocks:
            x, y = vec[i], vec[i + 1]
            acc = acc + a * x * x + x * y + b * y * y
            i += 2
        for _ in range(self.hyp):
            x, y = vec[i], vec[i + 1]
            acc = acc + x * y
            i += 2
        for c in self.diag:
            z = vec[i]
            acc = acc + c * z * z
            i += 1
        return acc

    def polar(self, v, w) -> El:
        if len(v) != self.dim or len(w) != self.dim:
            raise DimensionMismatch("polar form needs two vectors of full dimension")
        acc = self.field.zero()
        i = 0
        for _ in range(len(self.blocks) + self.hyp):
            acc = acc + v[i] * w[i + 1] + w[i] * v[i + 1]
            i += 2
        return acc

    def unit_vector(self, i: int):
        return tuple(
            self.field.one() if j == i else self.field.zero() for j in range(self.dim)
        )


def quad_form(field: Field, blocks=(), diag=(), hyp: int = 0, zeros: int = 0) -> QuadForm:
    return QuadForm(field, blocks, diag, hyp, zeros)


def hyperbolic(field: Field, n: int = 1) -> QuadForm:
    return QuadForm(field, hyp=n)


class BilinDiag:
    """Diagonal bilinear form <a_1,...,a_n>_b; Pfister forms carry their slots."""

    __slots__ = ("field", "entries", "pfister_slots")

    def __init__(self, field: Field, entries, pfister_slots=None):
        self.field = field
        es = tuple(entries)
        for e in es:
            if e.is_zero():
                raise ZeroScalar("bilinear diagonal entries must be nonzero")
        self.entries = es
        self.pfister_slots = tuple(pfister_slots) if pfister_slots is not None else None

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __str__(self):
        if self.pfister_slots is not None:
            return "<<" + ",".join(str(s) for s in self.pfister_slots) + ">>"
        return "<" + ",".join(str(e) for e in self.entries) + ">_b"

    def __repr__(self):
        return f"BilinDiag({self})"

    def __eq__(self, other):
        return (
            isinstance(other, BilinDiag)
            and self.field == other.field
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field, self.entries))


def pfister(field: Field, slots) -> BilinDiag:
    """<<x_1,...,x_m>> = <1,x_1> ox ... ox <1,x_m>, entries in subset-mask order."""
    slots = tuple(slots)
    entries = []
    for mask in range(1 << len(slots)):
        acc = field.one()
        for i, s in enumerate(slots):
            if mask >> i & 1:
                acc = acc * s
        if acc.is_zero():
            raise ZeroScalar("Pfister slots must be nonzero")
        entries.append(acc)
    return BilinDiag(field, entries, pfister_slots=slots)


def tensor(b: BilinDiag, q: QuadForm) -> QuadForm:
    if b.field != q.field:
        raise FieldMismatch("tensor arguments over different fields")
    acc = None
    for e in b.entries:
        piece = q.scale(e)
        acc = piece if acc is None else acc.perp(piece)
    if acc is None:
        acc = QuadForm(q.field)
    tag = None
    if b.pfister_slots is not None:
        tag = PfisterTag(b.pfister_slots, q, q.field.one())
    return QuadForm(acc.field, acc.blocks, acc.diag, acc.hyp, acc.zeros, tag=tag)


# ---------------------------------------------------------------------------
# rewrite identities


def strip_squares(e: El) -> El:
    """Representative of e modulo nonzero squares (the <c s^2> ~ <c> rule)."""
    if e.is_zero():
        return e
    field = e.field
    if len(e.payload) != 1 or 0 not in e.payload:
        # generator components: only detect full squares
        return field.one() if fields.is_square(e) is not None else e
    num, den = e.payload[0]
    f = num * den
    _, rest = f.square_monomial_part()
    if rest.is_perfect_square():
        return field.one()
    lc = rest.lead_coeff()
    if lc != 1:
        # constants are squares in GF(2^k); normalize the leading coefficient
        rest = rest.scale(field.gf.inv(lc))
    return El(field, {0: (rest, Poly.const(field.gf, field.nvars, 1))})


def reduce_mod_diag(field: Field, value: El, diag_entries) -> El:
    """Canonical representative of value modulo the K^2-span of the entries."""
    if value.is_zero() or not diag_entries:
        return value
    ops = ElOps(field)
    width = 1 << field.nvars
    span = linalg.IncrementalSpan(ops, width)
    for c in diag_entries:
        span.add(coords(field, c))
    resid, _ = span.reduce(coords(field, value))
    acc = field.zero()
    mons = fields.basis_monomials(field)
    for c, mon in zip(resid, mons):
        acc = acc + c * c * mon
    return acc


def rewrite_identities(q: QuadForm) -> QuadForm:
    """Deterministic fixed point of the block/diagonal simplification rules:
    square stripping on the diagonal, slot reduction modulo the quasilinear
    span, trivial-Arf blocks to H, and pairing equal-slot blocks into H.
    The output is isometric to the input and has the same type; this pass is
    a normalizer only, the solver is the source of truth for indices.
    """
    field = q.field
    blocks = list(q.blocks)
    diag = [strip_squares(c) for c in q.diag]
    hyp = q.hyp
    zeros = q.zeros
    changed = True
    while changed:
        changed = False
        # zero slots inside blocks: [a,0], [0,b], [0,0] are hyperbolic planes
        for i, (a, b) in enumerate(blocks):
            if a.is_zero() or b.is_zero():
                blocks.pop(i)
                hyp += 1
                changed = True
                break
        if changed:
            continue
        # slot reduction modulo the quasilinear part (R3 to a fixed point)
        for i, (a, b) in enumerate(blocks):
            ra = reduce_mod_diag(field, a, diag)
            rb = reduce_mod_diag(field, b, diag)
            if ra != a or rb != b:
                blocks[i] = (ra, rb)
                changed = True
                break
        if changed:
            continue
        # trivial Arf: [a,b] with ab in wp(K) is hyperbolic
        for i, (a, b) in enumerate(blocks):
            res = fields.artin_schreier_membership(a * b)
            if res.status == "witness":
                blocks.pop(i)
                hyp += 1
                changed = True
                break
        if changed:
            continue
        # equal-slot pairs: [a,b] + [a,b'] = [a, b+b'] + H (and the swap)
        done = False
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                ai, bi = blocks[i]
                aj, bj = blocks[j]
                if ai == aj:
                    blocks[j] = (ai, bi + bj)
                    blocks.pop(i)
                    hyp += 1
                    done = True
                elif bi == bj:
                    blocks[j] = (ai + aj, bi)
                    blocks.pop(i)
                    hyp += 1
                    done = True
                if done:
                    break
            if done:
                break
        changed = done
    return QuadForm(field, blocks, diag, hyp, zeros)


# ---------------------------------------------------------------------------
# restriction to a subspace (dominance witness)


def restrict(q: QuadForm, vectors) -> QuadForm:
    """The form q restricted to the span of the given vectors, renormalized
    into blocks+diagonal shape (a dominated form in the structural sense)."""
    vecs = [tuple(v) for v in vectors]
    field = q.field
    blocks = []
    diag = []
    while vecs:
        v = vecs[0]
        partner = None
        for idx in range(1, len(vecs)):
            if not q.polar(v, vecs[idx]).is_zero():
                partner = idx
                break
        if partner is None:
            diag.append(q.evaluate(v))
            vecs.pop(0)
            continue
        w = vecs[partner]
        c = q.polar(v, w)
        cinv = c.inv()
        w = tuple(cinv * x for x in w)
        blocks.append((q.evaluate(v), q.evaluate(w)))
        rest = []
        for idx in range(1, len(vecs)):
            if idx == partner:
                continue
            u = vecs[idx]
            pu_w = q.polar(u, w)
            pu_v = q.polar(u, v)
            u2 = tuple(x + pu_w * y + pu_v * z for x, y, z in zip(u, v, w))
            rest.append(u2)
        vecs = rest
    return QuadForm(field, blocks, diag)
