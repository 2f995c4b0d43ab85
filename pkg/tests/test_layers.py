"""Local polynomials F_{m,n}: closed form, base case, recurrence, diagonals."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pillowcount.layers import (
    LayerSignature,
    f_closed,
    f_kontsevich_base,
    f_recurrence,
    f_special_diagonal,
)
from pillowcount.polynomials import Polynomial


def valid_signatures(mn_max: int) -> list[tuple[int, int]]:
    out = []
    for m in range(mn_max + 1):
        for n in range(mn_max + 1 - m):
            if (m, n) == (0, 0) or (m - n) % 2 or m - n < -2:
                continue
            out.append((m, n))
    return out


def test_signature_validation():
    with pytest.raises(ValueError):
        LayerSignature(-1, 1)
    with pytest.raises(ValueError):
        LayerSignature(0, 0)
    with pytest.raises(ValueError):
        LayerSignature(2, 1)  # odd m - n
    with pytest.raises(ValueError):
        LayerSignature(0, 4)  # m - n < -2


def test_signature_derived_quantities():
    sig = LayerSignature(3, 1)
    assert sig.faces == 3
    assert sig.half_degree == 1
    assert LayerSignature(0, 2).faces == 1
    assert LayerSignature(0, 2).half_degree == 0
    assert LayerSignature(2, 2).faces == 2


# the reference table of F_{m,n} for valences 1..3, checked entry by entry
REFERENCE_TABLE = {
    (0, 2): Polynomial.one(),
    (1, 3): Polynomial.monomial((2,)),
    (2, 4): Polynomial.monomial((4,)),
    (3, 5): Polynomial.monomial((6,)),
    (1, 1): Polynomial.one(),
    (2, 2): Polynomial({(2, 0): 2, (0, 2): 2}),
    (3, 3): Polynomial({(4, 0): 3, (2, 2): 12, (0, 4): 3}),
    (2, 0): Polynomial.constant(2),
    (3, 1): Polynomial({(2, 0, 0): 6, (0, 2, 0): 6, (0, 0, 2): 6}),
}


@pytest.mark.parametrize("mn", sorted(REFERENCE_TABLE))
def test_reference_table(mn: tuple[int, int]):
    assert f_closed(LayerSignature(*mn)) == REFERENCE_TABLE[mn]


@pytest.mark.parametrize("mn", valid_signatures(8))
def test_closed_equals_recurrence(mn: tuple[int, int]):
    sig = LayerSignature(*mn)
    assert f_closed(sig) == f_recurrence(sig)


@pytest.mark.parametrize("m", [2, 4, 6, 8, 10])
def test_closed_equals_base_case(m: int):
    assert f_closed(LayerSignature(m, 0)) == f_kontsevich_base(m)


def test_base_case_rejects_bad_m():
    with pytest.raises(ValueError):
        f_kontsevich_base(3)
    with pytest.raises(ValueError):
        f_kontsevich_base(0)


@pytest.mark.parametrize("mn", valid_signatures(8))
def test_structural_properties(mn: tuple[int, int]):
    sig = LayerSignature(*mn)
    poly = f_closed(sig)
    assert poly.homogeneous_degree() == 2 * sig.half_degree
    assert poly.is_symmetric(sig.faces)
    assert all(c > 0 for _, c in poly.items())
    assert all(all(e % 2 == 0 for e in k) for k, _ in poly.items())


def test_special_diagonal_forms():
    for m in range(1, 6):
        assert f_special_diagonal(m, m) == f_closed(LayerSignature(m, m))
    for m in range(0, 6):
        assert f_special_diagonal(m, m + 2) == f_closed(LayerSignature(m, m + 2))
    with pytest.raises(ValueError):
        f_special_diagonal(4, 2)
    with pytest.raises(ValueError):
        f_special_diagonal(0, 0)


def test_closed_form_normalization():
    # the coefficient of w_1^{2a} is m!/a! times 1
    sig = LayerSignature(5, 1)
    a = sig.half_degree
    poly = f_closed(sig)
    lead = poly.coefficient((2 * a,) + (0,) * (sig.faces - 1))
    assert lead == Fraction(120, 2)  # 5!/2!


@given(st.integers(min_value=0, max_value=6))
def test_lowest_diagonal_is_single_monomial(m: int):
    poly = f_closed(LayerSignature(m, m + 2))
    assert poly == Polynomial.monomial((2 * m,))
