import numpy as np
import pytest

from kdist import (
    DiscreteMeasure,
    KernelSpec,
    gram_matrix,
    kernel_distance_sq,
    lifted_distance_sq,
    spectral_lift,
)
from kdist.errors import KdistError
from kdist.exact import union_weights

from conftest import BOX_A, BOX_B


def test_single_point():
    L = spectral_lift(KernelSpec.gaussian(), [[0.5, 0.5]])
    assert L.B.tolist() == [[1.0]]
    assert L.eigenvalues.tolist() == [1.0]
    assert L.dropped_negative == 0.0


def test_reconstruction(rng):
    X = rng.uniform(0, 1, (32, 3))
    k = KernelSpec.gaussian(1.0)
    L = spectral_lift(k, X)
    assert np.abs(L.B.T @ L.B - gram_matrix(k, X)).max() <= 1e-10


def test_box_counterexample_drops_negative():
    L = spectral_lift(KernelSpec.box(2.0), BOX_A + BOX_B)
    assert L.dropped_negative < -0.1


def test_spectrum_descending_and_nonnegative(rng):
    L = spectral_lift(KernelSpec.gaussian(0.5), rng.normal(size=(50, 2)))
    assert np.all(np.diff(L.eigenvalues) <= 0)
    assert np.all(L.eigenvalues >= 0)


def test_eigenvalue_sum_is_trace(rng):
    for k in (KernelSpec.gaussian(2.0), KernelSpec.box(1.0)):
        n = 40
        L = spectral_lift(k, rng.normal(size=(n, 2)))
        G = gram_matrix(k, L.points)
        lam_all = np.linalg.eigvalsh(G)
        dropped = lam_all[lam_all < -1e-10 * n].sum()
        assert L.eigenvalues.sum() + dropped == pytest.approx(n, abs=1e-8 * n)


def test_sign_convention(rng):
    L = spectral_lift(KernelSpec.gaussian(1.0), rng.normal(size=(20, 2)))
    for row in L.B:
        nz = row[np.abs(row) > 1e-12 * np.abs(row).max()]
        if nz.size:
            assert nz[0] > 0


def test_equal_weights_zero():
    L = spectral_lift(KernelSpec.gaussian(), [[0.0], [1.0], [2.0]])
    w = np.array([0.3, -1.0, 2.0])
    assert lifted_distance_sq(L, w, w) == 0.0


def test_homogeneity(rng):
    L = spectral_lift(KernelSpec.gaussian(), rng.normal(size=(10, 2)))
    wp, wq = rng.normal(size=10), rng.normal(size=10)
    assert lifted_distance_sq(L, 3 * wp, 3 * wq) == pytest.approx(9 * lifted_distance_sq(L, wp, wq), rel=1e-12)


def test_length_mismatch():
    L = spectral_lift(KernelSpec.gaussian(), [[0.0], [1.0]])
    with pytest.raises(KdistError):
        lifted_distance_sq(L, [1.0], [0.0, 1.0])


def test_oracle_matches_exact_distance(rng):
    for _ in range(30):
        d = int(rng.integers(1, 5))
        k = KernelSpec.gaussian(float(rng.uniform(0.25, 4)))
        n = int(rng.integers(1, 33))
        P = DiscreteMeasure(rng.normal(size=(n, d)), rng.normal(size=n))
        Q = DiscreteMeasure(rng.normal(size=(int(rng.integers(1, 33)), d)))
        pts, wp, wq = union_weights(P, Q)
        L = spectral_lift(k, pts)
        assert abs(lifted_distance_sq(L, wp, wq) - kernel_distance_sq(k, P, Q)) <= 1e-8


def test_too_many_points():
    with pytest.raises(KdistError):
        spectral_lift(KernelSpec.gaussian(), np.zeros((4097, 1)))
