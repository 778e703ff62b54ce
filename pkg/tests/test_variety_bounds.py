import pytest

from monobound.errors import (
    DimensionTooSmallError,
    NegativeBettiError,
    ValidationError,
)
from monobound.variety_bounds import (
    VarietyInvariants,
    bound,
    d_vector,
    descend,
    euler_char_section,
)

P1 = VarietyInvariants(n=1, b=(0,), c=())
P2 = VarietyInvariants(n=2, b=(0, 1), c=(2,))
P3 = VarietyInvariants(n=3, b=(0, 1, 0), c=(3, 2))
K3_QUARTIC = VarietyInvariants(n=2, b=(0, 22), c=(-4,))
ELLIPTIC = VarietyInvariants(n=1, b=(2,), c=())


def projective_invariants(n):
    b = tuple(1 if i % 2 == 0 else 0 for i in range(1, n + 1))
    c = tuple(n + 1 - i for i in range(1, n))
    return VarietyInvariants(n=n, b=b, c=c)


def test_shape_validation():
    with pytest.raises(ValidationError):
        VarietyInvariants(n=2, b=(0,), c=(2,))
    with pytest.raises(ValidationError):
        VarietyInvariants(n=2, b=(0, 1), c=())
    with pytest.raises(ValidationError):
        VarietyInvariants(n=1, b=(-1,), c=())
    with pytest.raises(ValidationError):
        VarietyInvariants(n=0, b=(), c=())


def test_full_betti_duality():
    assert P2.full_betti() == (1, 0, 1, 0, 1)
    assert K3_QUARTIC.full_betti() == (1, 0, 22, 0, 1)
    assert ELLIPTIC.full_betti() == (1, 2, 1)


def test_d_vector_examples():
    assert d_vector(P2).entries == (0, 1)
    assert d_vector(K3_QUARTIC).entries == (6, 22)
    assert d_vector(ELLIPTIC).entries == (2,)


def test_d_vector_independent_rederivation():
    # re-derive every entry from scratch against the module's output
    for inv in (P2, P3, K3_QUARTIC, projective_invariants(5)):
        full_b = (1,) + inv.b
        expected = []
        for j in range(1, inv.n):
            acc = sum((-1) ** i * full_b[i] for i in range(j))
            expected.append((-1) ** j * (inv.c[inv.n - j - 1] - 2 * acc))
        expected.append(inv.b[-1])
        assert d_vector(inv).entries == tuple(expected)


def test_negative_betti_rejected():
    bad = VarietyInvariants(n=2, b=(0, 1), c=(5,))
    with pytest.raises(NegativeBettiError) as info:
        d_vector(bad)
    assert info.value.index == 1
    assert info.value.value == -3


def test_euler_char_section():
    assert euler_char_section(P2, 1) == 2
    assert euler_char_section(P2, 0) == 3
    assert euler_char_section(K3_QUARTIC, 0) == 24
    with pytest.raises(ValidationError):
        euler_char_section(P2, 2)


def test_descend_examples():
    assert descend(P2) == P1
    assert descend(K3_QUARTIC) == VarietyInvariants(n=1, b=(6,), c=())
    assert descend(P3) == P2
    with pytest.raises(DimensionTooSmallError):
        descend(P1)


def test_iterated_descent_of_projective_space():
    for n in range(2, 7):
        inv = projective_invariants(n)
        for k in range(n - 1, 0, -1):
            inv = descend(inv)
            assert inv == projective_invariants(k)


def test_descent_preserves_leading_d_entries():
    samples = [P2, P3, K3_QUARTIC] + [projective_invariants(n)
                                      for n in range(2, 7)]
    for inv in samples:
        if inv.n < 2:
            continue
        before = d_vector(inv).entries
        after = d_vector(descend(inv)).entries
        assert after == before[: inv.n - 1]


def test_bound_examples():
    rep = bound(P2, 5, 2)
    assert rep.product.value() == 2
    assert rep.d_vector.entries == (0, 1)
    assert [f.value() for f in rep.factors] == [1, 2]
    assert all(c.stable for c in rep.certificates)

    rep = bound(ELLIPTIC, 7, 1)
    assert rep.product.value() == 48


def test_bound_of_zero_vector_is_identity():
    inv = VarietyInvariants(n=1, b=(0,), c=())
    assert bound(inv, 5, 1).product.value() == 1


def test_bound_divisibility_in_h():
    inv = projective_invariants(4)
    previous = bound(inv, 5, 1).product
    for h in range(2, 5):
        current = bound(inv, 5, h).product
        assert previous.divides(current)
        previous = current


def test_bound_h_validation():
    with pytest.raises(ValidationError):
        bound(P2, 5, 3)
    with pytest.raises(ValidationError):
        bound(P2, 5, 0)
