import math

import numpy as np
import pytest

from clifflog import functions as fn
from clifflog.checks import (
    DEFAULT_TOL,
    SUITES,
    expected_root_count,
    grid_min_distance,
    residual,
    roundtrip_core,
    run_suite,
)
from clifflog.core import Signature, mv
from clifflog.sampling import reachable_sectors, stratified

ALL = list(Signature)


def test_residual_is_relative_above_one():
    sig = Signature.CL11
    assert residual(mv(sig, 1.5), mv(sig, 1)) == 0.5
    assert residual(mv(sig, 101), mv(sig, 100)) == pytest.approx(0.01)


@pytest.mark.parametrize("sig", ALL, ids=lambda s: s.tag)
def test_sampler_lands_in_requested_sectors(sig):
    rng = np.random.default_rng(2)
    got = stratified(sig, 40 * len(reachable_sectors(sig)), rng)
    for sector, x in got:
        assert fn.classify_log(x).tag is sector
    assert {s for s, _ in got} == set(reachable_sectors(sig))


@pytest.mark.parametrize("suite", SUITES)
@pytest.mark.parametrize("sig", ALL, ids=lambda s: s.tag)
def test_suites_pass_small(suite, sig):
    rep = run_suite(suite, sig, 150, seed=7)
    assert rep.tol == DEFAULT_TOL[suite]
    assert rep.passed, rep.failures[:3]
    assert all(total > 0 for _, total in rep.counts.values())


def test_suite_is_reproducible():
    a = run_suite("product", Signature.CL20, 50, seed=3).as_dict()
    b = run_suite("product", Signature.CL20, 50, seed=3).as_dict()
    assert a == b


def test_failures_are_reported_with_seed():
    rep = run_suite("roundtrip", Signature.CL02, 30, seed=1, tol=1e-30)
    assert not rep.passed
    f = rep.failures[0]
    assert f["seed"] == 1 and f["residual"] > f["tol"] and len(f["coeffs"]) == 4


def test_run_suite_validates_arguments():
    with pytest.raises(ValueError):
        run_suite("nope", Signature.CL11, 10, 0)
    with pytest.raises(ValueError):
        run_suite("sqrt", Signature.CL11, 0, 0)


def test_roundtrip_core_small():
    for sig in (Signature.CL01, Signature.CL02, Signature.CL10):
        assert roundtrip_core(sig, 500, seed=0).passed


@pytest.mark.parametrize("x, n", [
    (mv(Signature.CL10, 3, 2), 4),
    (mv(Signature.CL11, 2, 0, 0, 1), 4),
    (mv(Signature.CL20, -2, 1, 0, 0), None),
    (mv(Signature.CL20, 0, 0, 0, 1), 2),
    (mv(Signature.CL02, 2, 0.5, 0, 1), 2),
    (mv(Signature.CL01, 4), None),
])
def test_expected_root_count(x, n):
    assert expected_root_count(x) == n
    if n is not None:
        assert len(fn.sqrt_all(x).isolated) == n


def test_grid_finds_exact_image():
    sig = Signature.CL11
    target = fn.exp(mv(sig, 0.5, 1.25, -0.75, 0.25))
    far = mv(sig, -2, 1, 0, 0)
    near, miss = grid_min_distance(sig, [target, far], lo=-2, hi=2, step=0.25)
    assert near <= 1e-12
    assert miss > 1e-3


def test_grid_one_dimensional():
    sig = Signature.CL10
    d = grid_min_distance(sig, [fn.exp(mv(sig, 1.0, -0.5)), mv(sig, -3, 1)])
    assert d[0] <= 1e-12 and d[1] > 1.0


def test_no_solution_targets_classify():
    assert fn.classify_log(mv(Signature.CL11, -3, 1)).tag is fn.Sector.NO_SOLUTION
    assert math.isfinite(grid_min_distance(Signature.CL11, [mv(Signature.CL11, -3, 1)], -1, 1, 0.5)[0])
