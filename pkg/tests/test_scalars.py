from qgenus.scalars import QQ, Scalar, I, PI, TWO_PI_I


def test_i_squared_reduces():
    assert I * I == Scalar.from_rational(-1)
    assert I ** 4 == 1
    assert (I * I) == -1


def test_pi_is_transcendental():
    # no relation on pi: powers stay distinct
    s = PI * PI
    assert not s.is_rational()
    assert s.terms() == {2: (QQ(1), QQ(0))}
    assert PI ** 3 != PI


def test_mixed_arithmetic():
    iota = PI * I
    sq = (1 + iota) * (1 + iota)
    # (1 + i*pi)^2 = 1 + 2*i*pi - pi^2
    assert sq == Scalar({0: (1, 0), 1: (0, 2), 2: (-1, 0)})
    assert sq - sq == 0
    assert Scalar.from_rational(QQ(2, 3)) * 3 == 2


def test_rational_coercion_and_equality():
    a = Scalar.from_rational(QQ(1, 2))
    assert a == QQ(1, 2)
    assert a + QQ(1, 2) == 1
    assert QQ(1, 2) * a == QQ(1, 4)
    assert a.is_rational() and a.rational() == QQ(1, 2)


def test_inverse_of_monomials():
    x = Scalar.gaussian(0, 2, 1)  # 2*pi*i
    inv = x.inverse()
    assert x * inv == 1
    assert inv.terms() == {-1: (QQ(0), QQ(-1, 2))}
    assert (TWO_PI_I ** 2).inverse() * TWO_PI_I ** 2 == 1


def test_inverse_rejects_sums():
    s = PI + 1
    try:
        s.inverse()
    except ValueError:
        pass
    else:
        raise AssertionError("sum of pi powers should not invert")


def test_negative_powers():
    s = TWO_PI_I ** -2
    # (2*pi*i)^-2 = -1/(4*pi^2)
    assert s == Scalar({-2: (QQ(-1, 4), 0)})


def test_to_complex():
    import math
    z = TWO_PI_I.to_complex()
    assert abs(z - 2j * math.pi) < 1e-12
