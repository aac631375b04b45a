import pytest

import bfnorm

DUBUC = (
    "x2*x3*x4*x5*x7*x8 + x2*x3*x4*x5*x8 + x2*x3*x4*x7*x8 + x2*x3*x4*x6 + x2*x3*x5*x6"
    " + x2*x3*x4*x8 + x2*x4*x6*x8 + x2*x5*x7*x8 + x1*x2*x3 + x3*x4*x5 + x2*x5*x6 + x2*x4*x7"
    " + x3*x4*x7 + x4*x5*x8 + x3*x6*x8 + x3*x7*x8 + x2*x3 + x2*x5 + x3*x5 + x4*x6 + x2*x7"
    " + x3*x8 + x7*x8 + x1 + x2"
)


def test_parse_and_format():
    f = bfnorm.BoolFun.from_anf("x2*x1 + x3", 3)
    assert f.anf() == "x1*x2 + x3"
    assert f.degree() == 2
    assert bfnorm.BoolFun.from_hex(f.hex(), 3) == f
    assert bfnorm.BoolFun.from_bits(f.bits()) == f


def test_product_truth_table():
    f = bfnorm.BoolFun.from_anf("x1*x2", 2)
    assert f.bits() == [0, 0, 0, 1]
    assert f.hex() == "08"


def test_errors_are_value_errors():
    with pytest.raises(ValueError):
        bfnorm.BoolFun.from_anf("x1 + x9", 8)
    with pytest.raises(ValueError):
        bfnorm.BoolFun(4).valuation()


def test_gaussian_and_tables():
    assert bfnorm.gaussian_binomial(8, 3) == 97155
    t = bfnorm.build_flat_table(4, 2)
    assert t.space_count == 35
    assert t.flat_count == 140
    assert t.basis(0) == [1, 2]


def test_dubuc_weakly_normal():
    f = bfnorm.BoolFun.from_anf(DUBUC, 8)
    assert f.degree() == 6
    report = bfnorm.classify(f)
    assert report["status"] == "WeaklyNormal"
    assert report["witness_degree"] == 1
    assert bfnorm.rel_degree(f, report["witness_basis"], report["witness_rep"]) == 1


def test_quadric_methods_agree():
    f = bfnorm.BoolFun.from_anf("x1*x3 + x2*x4 + x5", 5)
    assert bfnorm.classify(f, "naive")["status"] == "WeaklyNormal"
    assert bfnorm.classify(f, "paired")["status"] == "WeaklyNormal"
    assert bfnorm.r_degree(f, 3, bfnorm.build_flat_table(5, 3)) == 1


def test_bent_and_dual():
    f = bfnorm.BoolFun.random_bent(8, seed=5)
    assert bfnorm.is_bent(f)
    assert bfnorm.dual_bent(bfnorm.dual_bent(f)) == f
    assert sum(v * v for v in bfnorm.walsh(f)) == 2 ** 16


def test_work_factor():
    value, log2 = bfnorm.work_factor(4, 1, 6, 6)
    assert value == 7888299 * 4 * 651 * 64
    assert 40.0 <= log2 <= 40.5
    assert bfnorm.known_class_count(2, 3, 8) == 20748


def test_random_lower_bound():
    t = bfnorm.build_flat_table(5, 3)
    entry = bfnorm.random_lower_bound(5, 3, 2, 2, 2000, 1, t)
    assert entry["mode"] == "LowerBound"
    assert entry["value"] == 1
    assert entry["seed"] == 1
