import random
from fractions import Fraction as F

import pytest

from prodviab import generator, viability
from prodviab.core import PriceSystem, build_z_matrix, incomes


def test_weak_viability(ex_incoherent_loop, ex_cyclic_coherent):
    wv, price = viability.is_weakly_viable(ex_incoherent_loop)
    assert wv
    inc = incomes(build_z_matrix(ex_incoherent_loop), price)
    assert all(v >= 0 for v in inc)
    assert viability.is_weakly_viable(ex_cyclic_coherent)[0]


def test_viability_verdicts(
    ex_cyclic_coherent, ex_incoherent_loop, ex_cyclic_viable
):
    viable, price = viability.is_viable(ex_cyclic_coherent)
    assert viable
    assert all(v > 0 for v in incomes(build_z_matrix(ex_cyclic_coherent), price))
    assert viability.is_viable(ex_incoherent_loop) == (False, None)
    assert viability.is_viable(ex_cyclic_viable)[0]


def test_known_witnesses_reverify(ex_acyclic_cv, ex_cyclic_viable):
    # hand-checked points with strictly positive incomes
    za = build_z_matrix(ex_acyclic_cv)
    ps = PriceSystem(p=(F(1, 2), F(1, 2)), q=(F(1, 2),))
    assert incomes(za, ps) == (F(1, 2), F(3, 8), F(5, 8))
    zv = build_z_matrix(ex_cyclic_viable)
    ps = PriceSystem(p=(F(1, 2), F(1, 2)), q=(F(3, 4),))
    assert incomes(zv, ps) == (F(1, 4), F(1, 2), F(1, 4))


def test_constructive_acyclic_price(ex_acyclic_cv):
    price = viability.viable_price_acyclic(ex_acyclic_cv)
    assert price.p == (F(3, 7), F(4, 7))
    assert price.q == (F(8, 21),)
    custom = viability.viable_price_acyclic(ex_acyclic_cv, c=(F(1), F(2), F(1)))
    z = build_z_matrix(ex_acyclic_cv)
    assert all(v > 0 for v in incomes(z, custom))


def test_constructive_rejects_cyclic(ex_cyclic_coherent):
    with pytest.raises(viability.NotAcyclic):
        viability.viable_price_acyclic(ex_cyclic_coherent)


def test_constructive_rejects_bad_c(ex_acyclic_cv):
    with pytest.raises(ValueError):
        viability.viable_price_acyclic(ex_acyclic_cv, c=(F(1), F(0), F(1)))
    with pytest.raises(ValueError):
        viability.viable_price_acyclic(ex_acyclic_cv, c=(F(1), F(1)))


def test_elimination_trace(ex_acyclic_cv):
    z = build_z_matrix(ex_acyclic_cv)
    trace = viability.elimination_trace(z, (F(1),) * 3)
    assert len(trace) == 3
    final_rows, final_c = trace[-1]
    # the final matrix is upper triangular
    assert all(
        final_rows[i][j] == 0 for i in range(3) for j in range(i)
    )
    assert all(v >= 1 for v in final_c)


def test_wcv(ex_viable_not_wcv, ex_cv_no_rip, ex_acyclic_cv):
    ok, failing = viability.is_wcv(ex_viable_not_wcv)
    assert not ok and failing == 0
    ok, witnesses = viability.is_wcv(ex_cv_no_rip)
    assert ok
    z = build_z_matrix(ex_cv_no_rip)
    # witness at vertex X must lie in [1, 2], at vertex Y must be 0
    assert F(1) <= witnesses[0][0] <= F(2)
    assert witnesses[1][0] == 0
    assert viability.is_wcv(ex_acyclic_cv)[0]


def test_wcv_no_intermediates():
    sys = generator.generate_system(
        generator.GeneratorConfig(seed=1, ell_p=(0, 0))
    )
    ok, witnesses = viability.is_wcv(sys)
    assert isinstance(ok, bool)
    if ok:
        assert all(w == () for w in witnesses)


def test_cv(ex_acyclic_cv, ex_cv_no_rip, ex_viable_not_wcv, ex_incoherent_loop):
    assert viability.is_cv(ex_acyclic_cv)
    assert viability.is_cv(ex_cv_no_rip)
    assert not viability.is_cv(ex_viable_not_wcv)
    assert not viability.is_cv(ex_incoherent_loop)


def test_classify_reports(ex_cyclic_coherent, ex_incoherent_loop):
    r = viability.classify(ex_cyclic_coherent)
    assert r.flags() == {
        "acyclic": False,
        "coherent": True,
        "wv": True,
        "v": True,
        "wcv": False,
        "cv": False,
        "rip": False,
        "wrip": False,
    }
    assert r.determinant == 10
    assert r.cycle.product == 6
    r2 = viability.classify(ex_incoherent_loop)
    assert not r2.coherent and r2.conversion_cycle.n == (0, 1, 1, 0)
    assert r2.wv and not r2.v and r2.rip and r2.wcv and not r2.cv


def test_classify_budget_fallback(ex_incoherent_loop):
    r = viability.classify(ex_incoherent_loop, cc_budget=3)
    assert not r.coherent
    assert r.conversion_cycle is None
    assert "budget exceeded" in r.methods["coherent"]


def test_implication_edges_detect_violations():
    flags = {
        "acyclic": True,
        "coherent": False,
        "wv": True,
        "v": True,
        "wcv": True,
        "cv": True,
        "rip": False,
        "wrip": True,
    }
    broken = [
        name for name, check in viability.IMPLICATION_EDGES if not check(flags)
    ]
    assert "acyclic => coherent" in broken


def test_classify_random_systems_never_violate_lattice():
    rng = random.Random(31)
    for _ in range(60):
        sys = generator.generate_system(
            generator.GeneratorConfig(
                seed=rng.randrange(2**32),
                structure=rng.choice(["dag", "allow-cycles"]),
                rip=rng.random() < 0.3,
                wrip=rng.random() < 0.3,
                density=rng.choice([0.2, 0.5, 0.8]),
            )
        )
        report = viability.classify(sys)
        assert viability.verify_implications(report) == ()
