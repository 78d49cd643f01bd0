import pytest

from models.certify import (
    BoundMode,
    TrichotomyBranch,
    Verdict,
    analyze,
    check_cor_two_rows,
    check_prop_cyclic_sums,
    check_prop_cyclic_trichotomy,
    check_thm_abelian,
    delta_of_type,
    lower_bound,
)
from models.cover import character_table, from_rows
from models.prym import EigenType, MinusOrbit, PrymDecomposition, decompose, validate_datum
from models.residue import ResidueVector
from tests.conftest import vec


def _datum(rows, modulus, sigma):
    data = character_table(from_rows(modulus, rows))
    return data, validate_datum(data, ResidueVector(modulus, sigma))


def _with_types(datum, *types):
    return PrymDecomposition(datum=datum, minus_orbits=(), types=types, prym_dim=0, quotient_genus=0)


def _with_orbits(datum, *orbits):
    s = datum.cover.matrix.cols
    zero = ResidueVector.zero(datum.cover.matrix.modulus, s)
    minus = tuple(MinusOrbit(zero, dims, self_dual, zeros) for dims, self_dual, zeros in orbits)
    return PrymDecomposition(datum=datum, minus_orbits=minus, types=(), prym_dim=0, quotient_genus=0)


@pytest.fixture
def long_datum():
    """N=2, one row of fourteen ones."""
    return _datum([[1] * 14], 2, (1,))


@pytest.fixture
def two_row_datum():
    return _datum([[1] * 14, [1, 1] + [0] * 12], 2, (1, 0))


def test_delta_of_type():
    assert delta_of_type(EigenType(2, 2, False, 0)) == 4
    assert delta_of_type(EigenType(2, 2, True, 0)) == 3
    assert delta_of_type(EigenType(5, 0, False, 0)) == 0
    assert delta_of_type(EigenType(3, 1, False, 0)) == 3


def test_cyclic_certificate(cyclic_data):
    analysis = analyze(cyclic_data, validate_datum(cyclic_data, vec(4, 2)))
    cert = analysis.certificate
    assert cert.family_dim == 3
    assert cert.bound_unitary == 4
    assert cert.bound_with_symplectic == 4
    assert cert.verdict is Verdict.NOT_SPECIAL
    assert cert.witnesses == (EigenType(2, 2, False, 0, 1),)


def test_etale_certificate_in_both_modes(etale_data):
    datum = validate_datum(etale_data, vec(2, 0, 0, 1))
    dec = decompose(etale_data, datum)

    unitary = lower_bound(dec)
    assert unitary.bound_unitary == 0
    assert unitary.bound_with_symplectic == 3
    assert unitary.verdict is Verdict.INCONCLUSIVE
    assert unitary.witnesses == ()

    symplectic = lower_bound(dec, BoundMode.WITH_SYMPLECTIC)
    assert symplectic.active_bound == 3
    assert symplectic.verdict is Verdict.INCONCLUSIVE
    assert symplectic.witnesses == (EigenType(2, 2, True, 0, 1),)


def test_distinct_types_add(cyclic_data):
    datum = validate_datum(cyclic_data, vec(4, 2))
    cert = lower_bound(_with_types(datum, EigenType(2, 2, False, 0), EigenType(3, 1, False, 0)))
    assert cert.bound_unitary == 7


def test_repeated_type_counted_once(cyclic_data):
    datum = validate_datum(cyclic_data, vec(4, 2))
    cert = lower_bound(_with_types(datum, EigenType(2, 2, False, 0, 3)))
    assert cert.bound_unitary == 4
    cert = lower_bound(_with_types(datum, EigenType(2, 2, False, 0, 1), EigenType(2, 2, False, 2, 1)))
    assert cert.bound_unitary == 4
    assert cert.witnesses == (EigenType(2, 2, False, 0, 2),)


def test_new_type_never_lowers_bound(cyclic_data):
    datum = validate_datum(cyclic_data, vec(4, 2))
    base = lower_bound(_with_types(datum, EigenType(1, 1, False, 0)), BoundMode.WITH_SYMPLECTIC)
    more = lower_bound(
        _with_types(datum, EigenType(1, 1, False, 0), EigenType(1, 1, True, 0)), BoundMode.WITH_SYMPLECTIC
    )
    assert more.bound_unitary >= base.bound_unitary
    assert more.bound_with_symplectic >= base.bound_with_symplectic


def test_trichotomy(cyclic_data, klein_data):
    datum = validate_datum(cyclic_data, vec(4, 2))
    check = check_prop_cyclic_trichotomy(cyclic_data, datum, decompose(cyclic_data, datum))
    assert check.applicable
    assert check.branch is TrichotomyBranch.EXPECT_NOT_SPECIAL
    assert check.presumption

    datum = validate_datum(klein_data, vec(2, 0, 1))
    assert not check_prop_cyclic_trichotomy(klein_data, datum, decompose(klein_data, datum)).applicable


def test_trichotomy_one_nontrivial():
    data, datum = _datum([[1, 1, 1, 1]], 4, (2,))
    check = check_prop_cyclic_trichotomy(data, datum, decompose(data, datum))
    assert check.branch is TrichotomyBranch.ONE_NONTRIVIAL


def test_trichotomy_all_same_type():
    # alpha = (1,1,1,2,3) has dims (2, 1) = (s - 3, 1)
    data, datum = _datum([[1, 1, 1, 2, 3]], 4, (2,))
    check = check_prop_cyclic_trichotomy(data, datum, decompose(data, datum))
    assert check.branch is TrichotomyBranch.ALL_SAME_1_SM3


def test_cyclic_sums(cyclic_data, klein_data):
    check = check_prop_cyclic_sums(cyclic_data, validate_datum(cyclic_data, vec(4, 2)))
    assert check.applicable
    assert check.group_order == 4
    assert check.presentation == (1, 1, 1, 3, 3, 3)

    data, datum = _datum([[1, 1, 1, 1]], 4, (2,))
    assert not check_prop_cyclic_sums(data, datum).applicable
    assert not check_prop_cyclic_sums(klein_data, validate_datum(klein_data, vec(2, 0, 1))).applicable


def test_cyclic_sums_needs_group_order_three():
    data, datum = _datum([[1] * 6], 2, (1,))
    assert not check_prop_cyclic_sums(data, datum).applicable


def test_abelian_theorem_applies(long_datum):
    _, datum = long_datum
    check = check_thm_abelian(_with_orbits(datum, ((10, 2), False, 0), ((9, 3), False, 0)))
    assert check.applicable
    assert check.zero_hypothesis
    assert {t.pair for t in check.witness_pair} == {(10, 2), (9, 3)}


def test_abelian_theorem_needs_distinct_types(long_datum):
    _, datum = long_datum
    assert not check_thm_abelian(_with_orbits(datum, ((10, 2), False, 0), ((2, 10), False, 0))).applicable


def test_abelian_theorem_needs_dimensions_and_zeros(long_datum):
    _, datum = long_datum
    assert not check_thm_abelian(_with_orbits(datum, ((11, 1), False, 0), ((9, 3), False, 0))).applicable
    assert not check_thm_abelian(_with_orbits(datum, ((10, 2), False, 7), ((9, 3), False, 7))).applicable
    assert not check_thm_abelian(_with_orbits(datum, ((10, 2), True, 0), ((9, 3), False, 0))).applicable


def test_abelian_theorem_needs_many_branch_points(cyclic_data):
    datum = validate_datum(cyclic_data, vec(4, 2))
    assert not check_thm_abelian(_with_orbits(datum, ((2, 2), False, 0), ((3, 2), False, 0))).applicable


def test_two_row_corollary(long_datum, two_row_datum):
    _, datum = two_row_datum
    dec = _with_orbits(datum, ((10, 2), False, 10), ((9, 3), False, 10))
    check = check_cor_two_rows(datum.cover, dec)
    assert check.applicable
    assert not check.zero_hypothesis
    assert not check_thm_abelian(dec).applicable

    data, datum = long_datum
    dec = _with_orbits(datum, ((10, 2), False, 0), ((9, 3), False, 0))
    assert not check_cor_two_rows(data, dec).applicable


def test_two_row_corollary_on_a_cover():
    data, datum = _datum([[1] * 13 + [3], [0] * 7 + [1] * 6 + [2]], 4, (2, 0))
    dec = decompose(data, datum)
    assert sorted(o.pair for o in dec.minus_orbits) == [(5, 1), (6, 6), (8, 4), (9, 3)]
    assert not any(o.self_dual for o in dec.minus_orbits)

    check = check_cor_two_rows(data, dec)
    assert check.applicable
    assert check.zero_hypothesis
    x, y = check.witness_pair
    assert x.pair != y.pair
    assert min(x.b, y.b) >= 2
    assert check_thm_abelian(dec).applicable
    assert lower_bound(dec).bound_unitary == 100
    assert lower_bound(dec).verdict is Verdict.NOT_SPECIAL
