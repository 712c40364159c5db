"""Smoke test for the fracrheo Python bindings.

Build the extension first:

    cargo build -p fracrheo-py --release --features extension-module

then run `python3 python/smoke_test.py`. An installed wheel (maturin build in
crates/fracrheo-py) is used when present; otherwise the freshly built shared
library under target/release is loaded directly.
"""

import cmath
import importlib.machinery
import importlib.util
import math
import pathlib
import sys


def load():
    try:
        import fracrheo_py

        return fracrheo_py
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parent.parent
    for profile in ("release", "debug"):
        lib = root / "target" / profile / "libfracrheo_py.so"
        if lib.exists():
            loader = importlib.machinery.ExtensionFileLoader("fracrheo_py", str(lib))
            spec = importlib.util.spec_from_file_location("fracrheo_py", lib, loader=loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            return module
    sys.exit("fracrheo_py not found; build it with --features extension-module")


def close(a, b, tol):
    return abs(a - b) <= tol * max(1.0, abs(b))


def main():
    fr = load()

    assert close(fr.mittag_leffler(1.0, 1.0, -2.0), math.exp(-2.0), 1e-14)
    assert abs(fr.mittag_leffler(2.0, 1.0, -(math.pi / 2) ** 2)) < 1e-14
    assert close(fr.gamma(0.5), math.sqrt(math.pi), 1e-14)
    assert fr.recip_gamma(-3.0) == 0.0

    sb = fr.Model.scott_blair(1.0, 0.5)
    g = sb.kernel("relaxation")
    assert close(g(1.0), 1.0 / math.sqrt(math.pi), 1e-14)
    assert g.provenance
    z = sb.frequency("modulus", 1.0)
    assert cmath.isclose(z, complex(math.sqrt(0.5), math.sqrt(0.5)), rel_tol=1e-14)
    assert cmath.isclose(sb.transfer(2.0 + 0j), math.sqrt(2.0), rel_tol=1e-14)

    kv = fr.Model.kelvin_voigt(1.0, 2.0)
    values, excluded = kv.kernel("relaxation").sample([0.5, 1.0])
    assert values == [1.0, 1.0] and excluded == [(2.0, 0.0)]

    # Step stress into a Kelvin-Voigt solid creeps as (1 - e^{-t/λ})/G.
    dt, n = 0.01, 301
    strain, impulses = fr.convolve(kv, [0.0] * n, dt, "strain-from-stress", step_amplitude=1.0)
    for j in range(n):
        assert close(strain[j], 1.0 - math.exp(-j * dt / 2.0), 1e-12)
    assert impulses == []

    # Half-derivative of a ramp is 2 sqrt(t/π).
    d = fr.gl_derivative([j * 1e-3 for j in range(2001)], 1e-3, 0.5)
    assert close(d[-1], 2.0 * math.sqrt(2.0 / math.pi), 1e-3)

    general = fr.Model.general([(1.0, 0.0)], [(1.0, 0.5)])
    assert cmath.isclose(general.frequency("modulus", 1.0), z, rel_tol=1e-14)
    for bad in (lambda: general.kernel("memory"),):
        try:
            bad()
        except NotImplementedError:
            pass
        else:
            raise AssertionError("general model must not have time kernels")
    try:
        fr.Model.scott_blair(-1.0, 0.5)
    except ValueError:
        pass
    else:
        raise AssertionError("negative coefficient accepted")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
