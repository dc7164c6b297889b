import pytest

from qcong.hecke import HeckeContext, ROWS, Row, apply_Tp, direct_congruence, verify_row
from qcong.qfuncs import PartitionFamily
from qcong.series import Mod, ZZ, from_coeffs

# published bookkeeping for the seven single-prime rows, keyed by subscript
ROW_META = {
    37: (43, 12, 390, 195),
    41: (47, 21, 332, 83),
    53: (59, 56, 62, 31),
    61: (67, 19, 606, 303),
    65: (71, 32, 500, 125),
    73: (79, 62, 240, 60),
    77: (83, 79, 86, 43),
}


def test_row_table_shape():
    assert len(ROWS) == 7
    assert sorted(r.c for r in ROWS) == sorted(ROW_META)
    for row in ROWS:
        p, b, weight, sturm = ROW_META[row.c]
        assert (row.p, row.b) == (p, b)
        assert row.eta_den == row.c - 1


def test_row_shift_alignment():
    for row in ROWS:
        assert row.b == (-row.shift) % row.p
    with pytest.raises(ValueError):
        Row(3, 5, 1, 25, 2, 4).shift  # 25 - 4 is not 24-aligned


@pytest.mark.parametrize("row", ROWS, ids=lambda r: "c%d" % r.c)
def test_row_quotient_meta(row):
    _, _, weight, sturm = ROW_META[row.c]
    v = verify_row(row, depth=5)
    assert v.meta.weight == weight
    assert v.meta.sturm == sturm
    assert v.meta.cond24 == (True, True)
    assert v.meta.holomorphic
    assert v.ok and v.status == "consistent"
    assert v.constant_term == 0


def test_cheapest_rows_prove_at_sturm_depth():
    for c in (53, 77):
        row = next(r for r in ROWS if r.c == c)
        v = verify_row(row)
        assert v.status == "proved" and v.ok
        assert v.depth == ROW_META[c][3]


def test_row_validation_catches_mismatched_residue():
    with pytest.raises(ValueError):
        verify_row(Row(53, 59, 55, 176, 52, 4), depth=5)
    with pytest.raises(ValueError):
        verify_row(Row(53, 59, 56, 176, 51, 4), depth=5)  # eta_den != c - 1


def test_fabricated_row_is_refuted():
    # same construction, residue class with no congruence behind it
    row = Row(37, 43, 11, 840, 36, 4)
    v = verify_row(row, depth=40)
    assert not v.ok and v.status == "refuted"
    assert v.first_failure == (1, 25)


# --- the operator itself ------------------------------------------------------

def test_apply_Tp_formula_small_weight():
    # weight 1 keeps the chi p^{w-1} term alive; check against the books
    ring = ZZ
    f = from_coeffs(ring, list(range(100)))
    ctx = HeckeContext(p=5, weight=1, ring=ring, chi=lambda d: -1)
    got = apply_Tp(ctx, f)
    assert got.order == 20
    for n in range(20):
        want = f.coeff(5 * n) + (-1) * f.coeff(n // 5) * (1 if n % 5 == 0 else 0)
        assert got.coeff(n) == want


def test_apply_Tp_reduces_to_Up_mod_p():
    # for weight >= 2 the second term carries p^{w-1} == 0 mod p
    ring = Mod(7)
    f = from_coeffs(ring, [n * n + 1 for n in range(70)])
    ctx = HeckeContext(p=7, weight=4, ring=ring)
    got = apply_Tp(ctx, f)
    assert got.coeffs() == [f.coeff(7 * n) for n in range(10)]


def test_apply_Tp_guards():
    f = from_coeffs(ZZ, [1, 2, 3])
    with pytest.raises(ValueError):
        apply_Tp(HeckeContext(p=5, weight=2, ring=ZZ), f)
    with pytest.raises(ValueError):
        apply_Tp(HeckeContext(p=2, weight=2, ring=Mod(3)), f)


# --- plain progression scans ----------------------------------------------------

def test_direct_classical_congruences():
    fam = PartitionFamily("a", 1)
    for p, b in ((5, 4), (7, 5), (11, 6)):
        v = direct_congruence(fam, p, b, p, 80)
        assert v.ok and v.first_failure is None


def test_direct_scan_reports_first_failure():
    v = direct_congruence(PartitionFamily("a", 1), 5, 3, 5, 30)
    # p(3) = 3, so the progression 5n+3 breaks immediately
    assert not v.ok
    assert v.first_failure == (0, 3)


def test_direct_scan_row_instance():
    row = next(r for r in ROWS if r.c == 37)
    v = direct_congruence(PartitionFamily("a", row.c), row.p, row.b, row.p, 60)
    assert v.ok
