"""Residue sets, modular inverses, CRT combination."""

import random

import pytest
from sympy.ntheory.modular import crt as sympy_crt

from sdpc.modular import CrtClass, ResidueSet, crt_combine, linear_map_set, mod_inverse


def test_residue_set_members_roundtrip():
    s = ResidueSet.from_members(7, (3, 1, 5, 1))
    assert list(s) == [1, 3, 5]
    assert len(s) == 3
    assert 3 in s and 0 not in s
    assert s.members == (1, 3, 5)


def test_residue_set_validation():
    with pytest.raises(ValueError):
        ResidueSet.from_members(6, (1,))  # modulus must be prime
    with pytest.raises(ValueError):
        ResidueSet.from_members(7, (7,))  # residue out of range
    with pytest.raises(ValueError):
        ResidueSet(7, 1 << 7)  # mask wider than the modulus


def test_residue_set_algebra_matches_python_sets():
    rng = random.Random(11)
    for _ in range(200):
        p = rng.choice((5, 7, 11, 13))
        xs = {rng.randrange(p) for _ in range(rng.randrange(p))}
        ys = {rng.randrange(p) for _ in range(rng.randrange(p))}
        a, b = ResidueSet.from_members(p, xs), ResidueSet.from_members(p, ys)
        assert set(a.union(b)) == xs | ys
        assert set(a.intersection(b)) == xs & ys
        assert set(a.difference(b)) == xs - ys


def test_residue_set_refuses_mixed_moduli():
    a = ResidueSet.from_members(5, (1,))
    b = ResidueSet.from_members(7, (1,))
    with pytest.raises(ValueError):
        a.union(b)


def test_mod_inverse_small_and_random():
    assert mod_inverse(3, 7) == 5
    rng = random.Random(2)
    for _ in range(500):
        p = rng.choice((5, 7, 101, 9973))
        a = rng.randrange(1, p)
        inv = mod_inverse(a, p)
        assert (a * inv) % p == 1
    with pytest.raises(ValueError):
        mod_inverse(14, 7)
    with pytest.raises(ValueError):
        mod_inverse(0, 5)


def test_crt_class_validation():
    c = CrtClass(30, 25, (2, 3, 5))
    assert c.primes == (2, 3, 5)
    with pytest.raises(ValueError):
        CrtClass(30, 30)  # residue out of range
    with pytest.raises(ValueError):
        CrtClass(30, 1, (2, 3))  # factors do not multiply to q
    with pytest.raises(ValueError):
        CrtClass(12, 1, (2, 6))  # 6 is not prime
    # factor order is normalized
    assert CrtClass(15, 2, (5, 3)).primes == (3, 5)


def test_crt_combine_matches_sympy():
    rng = random.Random(99)
    for _ in range(300):
        primes = rng.sample((2, 3, 5, 7, 11, 13), rng.randrange(1, 5))
        constraints = [(rng.randrange(p), p) for p in primes]
        got = crt_combine(constraints)
        t, q = sympy_crt([p for _, p in constraints], [r for r, _ in constraints])
        assert got.modulus == int(q)
        assert got.residue == int(t) % int(q)
        assert got.primes == tuple(sorted(primes))
        for r, p in constraints:
            assert got.residue % p == r


def test_crt_combine_rejects_duplicate_prime():
    with pytest.raises(ValueError):
        crt_combine([(1, 3), (2, 3)])


def test_linear_map_set_is_bijection():
    # alpha*x + beta permutes residues; image computed two ways must agree.
    rng = random.Random(5)
    for _ in range(200):
        p = rng.choice((5, 7, 11, 13, 17))
        members = {rng.randrange(p) for _ in range(rng.randrange(1, p))}
        s = ResidueSet.from_members(p, members)
        alpha, beta = rng.randrange(1, p), rng.randrange(p)
        mapped = linear_map_set(s, alpha, beta)
        assert set(mapped) == {(alpha * x + beta) % p for x in members}
        assert len(mapped) == len(s)
    with pytest.raises(ValueError):
        linear_map_set(ResidueSet.from_members(5, (1,)), 5, 2)
