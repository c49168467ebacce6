import pytest

from qf2.errors import FieldMismatch, ZeroScalar
from qf2.fields import rational_field
from qf2.forms import (
    BilinDiag,
    QuadForm,
    hyperbolic,
    pfister,
    quad_form,
    restrict,
    rewrite_identities,
    strip_squares,
    tensor,
)

F = rational_field(1, "a", "b", "t")
A, B, T = F.var("a"), F.var("b"), F.var("t")
ONE = F.one()


def test_perp_examples():
    phi = quad_form(F, blocks=[(ONE, A)]).perp(quad_form(F, diag=[T]))
    assert phi.form_type == (1, 1) and phi.dim == 3

    hh = hyperbolic(F).perp(hyperbolic(F))
    assert hh.hyp == 2

    # Example field: <1,a> + <t, abt> -> <1,a,t,abt>
    q = quad_form(F, diag=[ONE, A]).perp(quad_form(F, diag=[T, A * B * T]))
    assert q.diag == (ONE, A, T, A * B * T)


def test_perp_field_mismatch():
    G = rational_field(1, "x")
    with pytest.raises(FieldMismatch):
        quad_form(F, diag=[A]).perp(quad_form(G, diag=[G.var("x")]))


def test_scale_identities():
    # t[1,b] = [t, t^-1 b]
    q = quad_form(F, blocks=[(ONE, B)]).scale(T)
    assert q.blocks == ((T, B / T),)
    # a<1,a> = <a, a^2>
    q2 = quad_form(F, diag=[ONE, A]).scale(A)
    assert q2.diag == (A, A * A)
    # identity scaling
    q3 = quad_form(F, blocks=[(A, B)], diag=[T])
    assert q3.scale(ONE) == q3
    with pytest.raises(ZeroScalar):
        q3.scale(F.zero())


def test_tensor_unit_and_dims():
    q = quad_form(F, blocks=[(ONE, A)], diag=[T])
    unit = BilinDiag(F, [ONE])
    assert tensor(unit, q) == q
    pi = pfister(F, [A, B])
    assert pi.entries == (ONE, A, B, A * B)
    assert tensor(pi, q).dim == 4 * q.dim


def test_tensor_example_quasi_pfister():
    # <<b>> ox <1,a,t,abt> has the 8 quasi-Pfister entries of <<a,b,t>> up to order
    phi = quad_form(F, diag=[ONE, A, T, A * B * T])
    pi = pfister(F, [B])
    prod = tensor(pi, phi)
    assert prod.dim == 8 and prod.is_totally_singular
    assert prod.tag is not None and prod.tag.slots == (B,)


def test_evaluate_and_polar():
    q = quad_form(F, blocks=[(ONE, A)])
    v = (F.zero(), ONE)
    assert q.evaluate(v) == A
    ts = quad_form(F, diag=[ONE, A])
    assert ts.polar((ONE, F.zero()), (F.zero(), ONE)).is_zero()
    # <<a>> ox [1,a] at ((0,1),(0,0)) -> a
    prod = tensor(pfister(F, [A]), quad_form(F, blocks=[(ONE, A)]))
    vec = (F.zero(), ONE, F.zero(), F.zero())
    assert prod.evaluate(vec) == A


def test_polar_alternating():
    q = quad_form(F, blocks=[(A, B)], diag=[T])
    v = (A, B, T)
    assert q.polar(v, v).is_zero()


def test_rewrite_zero_slot_blocks():
    q = quad_form(F, blocks=[(A, B), (F.zero(), B)])
    r = rewrite_identities(q)
    assert r.hyp == 1 and len(r.blocks) == 1
    assert r.form_type == q.form_type


def test_rewrite_r3_cancellation():
    # [a,b] + <a> = H + <a>
    q = quad_form(F, blocks=[(A, B)], diag=[A])
    r = rewrite_identities(q)
    assert r.hyp == 1 and not r.blocks and r.diag == (A,)


def test_rewrite_arf_trivial_block():
    # [1, u] with u = wp(e) is H
    u = A * A + A
    q = quad_form(F, blocks=[(ONE, u)])
    r = rewrite_identities(q)
    assert r.hyp == 1 and not r.blocks


def test_rewrite_equal_slot_pair():
    # [1,u] + [1,u] = H + [1,0] = 2H over any field
    q = quad_form(F, blocks=[(ONE, A), (ONE, A)])
    r = rewrite_identities(q)
    assert r.hyp == 2 and not r.blocks


def test_rewrite_square_stripping():
    q = quad_form(F, diag=[A * A * T, (ONE + A) * (ONE + A)])
    r = rewrite_identities(q)
    assert r.diag == (T, ONE)


def test_rewrite_preserves_type_and_dim():
    q = quad_form(F, blocks=[(A, B), (A, T)], diag=[A, A * T])
    r = rewrite_identities(q)
    assert r.dim == q.dim and r.form_type == q.form_type


def test_restrict_block_extraction():
    q = quad_form(F, blocks=[(ONE, A)], diag=[T])
    # restriction to the whole space reproduces an isometric shape
    vs = [q.unit_vector(i) for i in range(3)]
    r = restrict(q, vs)
    assert r.dim == 3 and r.form_type == (1, 1)
    assert r.blocks == ((ONE, A),) and r.diag == (T,)


def test_restrict_zero_on_h():
    # <0> is dominated by H
    h = hyperbolic(F)
    r = restrict(h, [h.unit_vector(0)])
    assert r.dim == 1 and r.zeros == 1 and not r.diag


def test_strip_squares():
    assert strip_squares(A * A * B) == B
    assert strip_squares((ONE + A) * (ONE + A)) == ONE
    assert strip_squares(A / (T * T)) == A
    assert strip_squares(A / T) == A * T  # a/t ~ at mod squares
