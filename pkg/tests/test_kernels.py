import os
import subprocess
import sys

import numpy as np

from conftest import proper_angles
from tentomo import backend
from tentomo._kernels import chord_integrals, numpy_chord_integrals


def _random_case(seed, m, ny, nx, nrays):
    rng = np.random.default_rng(seed)
    comps = rng.normal(size=(m + 1, ny, nx))
    beta, phi = proper_angles(rng, nrays, margin=0.05)
    # sprinkle in extension-range and tangent rays as well
    phi[::7] += np.pi
    phi[3::11] = beta[3::11] + np.pi / 2
    return comps, beta, phi


def test_backends_agree():
    for seed, m in [(0, 0), (1, 1), (2, 2)]:
        comps, beta, phi = _random_case(seed, m, 64, 48, 150)
        a = chord_integrals(comps, beta, phi, 512)
        b = numpy_chord_integrals(comps, beta, phi, 512)
        np.testing.assert_allclose(a, b, rtol=0, atol=1e-12)


def test_backend_name():
    assert backend() in ("cython", "numpy")
    # this repository ships the compiled extension; make sure it is the one
    # actually selected unless explicitly disabled
    if not os.environ.get("TENTOMO_DISABLE_EXT"):
        assert backend() == "cython"


def test_disable_ext_env_var():
    code = "import tentomo; print(tentomo.backend())"
    env = dict(os.environ, TENTOMO_DISABLE_EXT="1")
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True
    )
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip() == "numpy"


def test_no_chord_rays_are_zero():
    rng = np.random.default_rng(5)
    comps = rng.normal(size=(1, 32, 32))
    beta = np.array([0.0, 1.0, 2.0])
    phi = beta + np.pi / 2 + np.array([0.2, 0.4, 1.0])  # outside the chord range
    for f in (chord_integrals, numpy_chord_integrals):
        np.testing.assert_array_equal(f(comps, beta, phi, 64), 0.0)


def test_tiny_interval_count():
    comps = np.ones((1, 16, 16))
    beta = np.array([0.3])
    phi = np.array([0.1])
    for f in (chord_integrals, numpy_chord_integrals):
        assert f(comps, beta, phi, 1)[0] == 0.0  # fewer than 2 intervals: no-op
    a = chord_integrals(comps, beta, phi, 2)[0]
    b = numpy_chord_integrals(comps, beta, phi, 2)[0]
    assert a == b
    assert 0.0 < a < 2.0 * np.cos(0.2)
