import pytest

from motquot.errors import (
    NonCyclicImage,
    NotPrimePower,
    RootsOfUnityMissing,
    ValidationError,
)
from motquot.exact.field import QQ, cyclotomic_field
from motquot.exact.matrix import Matrix
from motquot.exact.poly import UniPoly
from motquot.repgroup import (
    AbelianGroup,
    GroupAction,
    character_eigenspaces,
    cyclic_image_generator,
    faithful_factor,
    irreducible_decomposition,
    restrict_action,
    validate_action,
)


def rot(k):
    return Matrix(k, [[0, -1], [1, 0]])


def diag(k, *entries):
    return Matrix.diagonal(k, [k.coerce(e) for e in entries])


def action(k, orders, gens, dim=None):
    if dim is None:
        dim = gens[0].nrows if gens else 0
    return GroupAction(AbelianGroup(tuple(orders)), k, dim, list(gens))


def test_abelian_group_basics():
    g = AbelianGroup((4, 3))
    assert g.exponent == 12
    assert g.size == 12
    assert AbelianGroup(()).size == 1
    assert AbelianGroup(()).exponent == 1
    with pytest.raises(ValueError):
        AbelianGroup((1,))


def test_validate_sign_action():
    a = action(QQ, [2], [diag(QQ, -1, -1)])
    report = validate_action(a)
    assert report.ok
    assert report.image_order == 2
    assert report.faithful


def test_validate_rotation():
    a = action(QQ, [4], [rot(QQ)])
    report = validate_action(a)
    assert report.ok
    assert report.image_order == 4
    assert report.faithful


def test_validate_unfaithful():
    a = action(QQ, [4], [diag(QQ, -1, 1)])
    report = validate_action(a)
    assert report.ok
    assert report.image_order == 2
    assert not report.faithful


def test_validate_catches_violations():
    bad_order = action(QQ, [3], [diag(QQ, -1, 1)])
    report = validate_action(bad_order)
    assert not report.ok
    assert "order dividing 3" in report.violations[0]

    non_comm = action(QQ, [2, 2], [
        Matrix(QQ, [[0, 1], [1, 0]]),
        diag(QQ, -1, 1),
    ])
    report = validate_action(non_comm)
    assert any("commute" in v for v in report.violations)

    singular = action(QQ, [2], [Matrix(QQ, [[0, 0], [0, 1]])])
    assert any("singular" in v for v in validate_action(singular).violations)


def test_eigenspaces_sign_action():
    a = action(QQ, [2], [diag(QQ, -1, -1)])
    dec = character_eigenspaces(a)
    assert len(dec.entries) == 1
    chi, basis = dec.entries[0]
    assert chi.exponents == (1,)
    assert len(basis) == 2


def test_eigenspaces_rotation_over_gaussians():
    k = cyclotomic_field(4)
    i = k.gen()
    a = action(k, [4], [rot(k)])
    dec = character_eigenspaces(a)
    assert len(dec.entries) == 2
    chi1, basis1 = dec.entries[0]
    chi2, basis2 = dec.entries[1]
    assert chi1.realized == (i,)
    assert basis1 == [(k.one(), -i)]
    assert chi2.realized == (-i,)
    assert basis2 == [(k.one(), i)]


def test_eigenspaces_trivial_group():
    a = action(QQ, [], [], dim=3)
    dec = character_eigenspaces(a)
    assert len(dec.entries) == 1
    chi, basis = dec.entries[0]
    assert chi.is_trivial
    assert len(basis) == 3


def test_eigenspaces_need_roots():
    a = action(QQ, [4], [rot(QQ)])
    with pytest.raises(RootsOfUnityMissing):
        character_eigenspaces(a)


def test_eigenspaces_diagonalize_generators():
    k = cyclotomic_field(12)
    g1 = Matrix(k, [[0, -1], [1, 0]])
    z3 = k.gen() ** 4
    g2 = Matrix.diagonal(k, [z3, z3 ** 2])
    a = GroupAction(AbelianGroup((4, 3)), k, 2, [g1, g2])
    # g1 and g2 do not commute, so this is invalid
    with pytest.raises(ValidationError):
        character_eigenspaces(a)
    g2 = Matrix.diagonal(k, [z3, z3])
    a = GroupAction(AbelianGroup((4, 3)), k, 2, [g1, g2])
    dec = character_eigenspaces(a)
    assert sum(dec.dims) == 2
    # conjugation by the collected basis diagonalizes every generator
    basis = [v for _, vs in dec.entries for v in vs]
    b = Matrix(k, basis).transpose()
    for g in a.generators:
        d = b.inverse() * g * b
        for r in range(2):
            for c in range(2):
                if r != c:
                    assert d[r, c] == k.zero()


def test_irreducible_rotation_pair():
    r = rot(QQ)
    a = action(QQ, [4], [Matrix.block_diag(QQ, [r, r])])
    dec = irreducible_decomposition(a)
    assert len(dec.factors) == 2
    t2p1 = UniPoly(QQ, [1, 0, 1])
    assert all(f.min_poly == t2p1 and f.dim == 2 for f in dec.factors)
    assert dec.multiplicities() == [(t2p1, 2)]


def test_irreducible_split_signs():
    a = action(QQ, [2], [diag(QQ, -1, 1)])
    dec = irreducible_decomposition(a)
    assert [f.min_poly.to_str() for f in dec.factors] == ["1*T + 1", "1*T - 1"]
    assert [f.basis for f in dec.factors] == [
        [(QQ.one(), QQ.zero())], [(QQ.zero(), QQ.one())]]


def test_irreducible_z3_companion():
    m = Matrix(QQ, [[0, -1], [1, -1]])  # companion of T^2 + T + 1
    a = action(QQ, [3], [m])
    dec = irreducible_decomposition(a)
    assert len(dec.factors) == 1
    assert dec.factors[0].min_poly == UniPoly(QQ, [1, 1, 1])
    assert dec.factors[0].dim == 2


def test_noncyclic_image_rejected():
    a = action(QQ, [2, 2], [diag(QQ, -1, 1), diag(QQ, 1, -1)])
    with pytest.raises(NonCyclicImage):
        irreducible_decomposition(a)


def test_cyclic_generator_of_nonfaithful():
    a = action(QQ, [4], [diag(QQ, -1, 1)])
    sigma, order = cyclic_image_generator(a)
    assert order == 2
    assert sigma == diag(QQ, -1, 1)


def test_faithful_factor_rotation_first():
    g = Matrix.block_diag(QQ, [rot(QQ), diag(QQ, -1)])
    a = action(QQ, [4], [g])
    dec = irreducible_decomposition(a)
    assert faithful_factor(dec, a) == 0
    assert dec.factors[0].min_poly == UniPoly(QQ, [1, 0, 1])


def test_faithful_factor_rotation_second():
    g = Matrix.block_diag(QQ, [diag(QQ, -1), rot(QQ)])
    a = action(QQ, [4], [g])
    dec = irreducible_decomposition(a)
    assert faithful_factor(dec, a) == 1


def test_faithful_factor_sign():
    a = action(QQ, [2], [diag(QQ, -1)])
    dec = irreducible_decomposition(a)
    assert faithful_factor(dec, a) == 0


def test_faithful_factor_requires_prime_power():
    g = Matrix.block_diag(QQ, [diag(QQ, -1), Matrix(QQ, [[0, -1], [1, -1]])])
    a = action(QQ, [6], [g])
    dec = irreducible_decomposition(a)
    with pytest.raises(NotPrimePower):
        faithful_factor(dec, a)


def test_faithful_factor_by_image_enumeration():
    # independent check: restrict every image element and verify injectivity
    g = Matrix.block_diag(QQ, [diag(QQ, -1), rot(QQ)])
    a = action(QQ, [4], [g])
    dec = irreducible_decomposition(a)
    idx = faithful_factor(dec, a)
    sub = restrict_action(a, dec.factors[idx].basis)
    seen = set()
    for t in a.exponent_tuples():
        seen.add(sub.element(t))
    assert len(seen) == len(a.image_elements())


def test_restrict_action():
    g = Matrix.block_diag(QQ, [rot(QQ), diag(QQ, -1)])
    a = action(QQ, [4], [g])
    dec = irreducible_decomposition(a)
    sub = restrict_action(a, dec.factors[0].basis)
    assert sub.dim == 2
    assert validate_action(sub).ok
    assert sub.generators[0].multiplicative_order() == 4
