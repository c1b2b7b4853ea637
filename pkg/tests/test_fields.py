import itertools

import pytest

from geomcode.fields import Field, FieldElement, field_from_string, make_field


def test_prime_field_examples():
    f = make_field(5)
    assert f.mul(2, 3) == 1
    assert f.add(4, 1) == 0
    assert f.q == 5 and f.p == 5 and f.k == 1


def test_gf9_reduction():
    # X * X reduces to -1 = 2 under the modulus X^2 + 1
    f = make_field(3, 2, [1, 0, 1])
    x = f.element([0, 1])
    minus_one = f.element([2, 0])
    assert f.mul(x, x) == minus_one


def test_gf9_modulus_has_no_root():
    # independent check that X^2 + 1 is irreducible over GF(3)
    assert all((c * c + 1) % 3 != 0 for c in range(3))


def test_even_characteristic_rejected():
    with pytest.raises(ValueError):
        make_field(2)


def test_nonprime_rejected():
    with pytest.raises(ValueError):
        make_field(9)
    with pytest.raises(ValueError):
        make_field(15)


def test_reducible_modulus_rejected():
    # X^2 - 1 = (X-1)(X+1) over GF(3)
    with pytest.raises(ValueError, match="reducible"):
        make_field(3, 2, [2, 0, 1])


def test_missing_modulus_rejected():
    with pytest.raises(ValueError, match="no built-in modulus"):
        make_field(11, 2)


def test_non_monic_modulus_rejected():
    with pytest.raises(ValueError, match="monic"):
        make_field(3, 2, [1, 0, 2])


def test_inverse_examples():
    f5 = make_field(5)
    assert f5.inv(2) == 3
    assert f5.inv(4) == 4
    f7 = make_field(7)
    # exhaustive oracle for inv(3) in GF(7)
    expected = next(x for x in range(1, 7) if (3 * x) % 7 == 1)
    assert expected == 5
    assert f7.inv(3) == 5


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        make_field(5).inv(0)


def test_enumeration():
    assert make_field(3).elements() == [0, 1, 2]
    assert make_field(5).elements(nonzero_only=True) == [1, 2, 3, 4]
    els = make_field(3, 2).elements()
    assert len(els) == 9 and els[0] == 0


def test_enumeration_is_lexicographic_on_coeffs():
    for f in [make_field(5), make_field(3, 2), make_field(3, 3)]:
        coeff_vectors = [f.coeffs(c) for c in f.elements()]
        assert coeff_vectors == sorted(coeff_vectors)
        assert len(set(coeff_vectors)) == f.q
        # round trip
        assert all(f.element(f.coeffs(c)) == c for c in f.elements())


@pytest.mark.parametrize("p,k", [(3, 1), (5, 1), (7, 1), (3, 2)])
def test_field_axioms_exhaustive(p, k):
    f = make_field(p, k)
    els = f.elements()
    for a, b in itertools.product(els, els):
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a)
        assert f.sub(a, b) == f.add(a, f.neg(b))
    for a, b, c in itertools.product(els, els, els):
        assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    for a in els[1:]:
        assert f.mul(a, f.inv(a)) == f.one


@pytest.mark.parametrize("p,k", [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3), (7, 2), (3, 4)])
def test_characteristic_is_odd(p, k):
    f = make_field(p, k)
    assert f.add(f.one, f.one) != 0


def test_determinism_across_instances():
    a, b = make_field(3, 2), make_field(3, 2)
    assert a == b
    assert a._mul == b._mul and a._add == b._add


def test_field_element_operators():
    f = make_field(7)
    a, b = f(3), f(5)
    assert (a + b).code == 1
    assert (a * b).code == 1
    assert (a - b).code == 5
    assert (-a).code == 4
    assert (a / b).code == f.mul(3, f.inv(5))
    assert a.inverse().code == 5
    assert f(3) == a and hash(f(3)) == hash(a)


def test_field_element_mismatch():
    a = make_field(5)(2)
    b = make_field(7)(2)
    with pytest.raises(ValueError, match="mismatch"):
        a + b


def test_field_element_coeffs():
    f = make_field(3, 2)
    e = FieldElement(f, f.element([2, 1]))
    assert e.coeffs == (2, 1)


def test_field_from_string():
    assert field_from_string("5").q == 5
    assert field_from_string("3^2").q == 9
    with pytest.raises(ValueError):
        field_from_string("4")


def test_builtin_moduli_are_monic_and_validated():
    for q, (p, k) in [(9, (3, 2)), (25, (5, 2)), (27, (3, 3)), (49, (7, 2)), (81, (3, 4))]:
        f = make_field(p, k)
        assert f.q == q
        assert f.modulus[-1] == 1 and len(f.modulus) == k + 1
