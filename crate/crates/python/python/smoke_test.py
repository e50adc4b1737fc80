"""Quick end-to-end check of the compiled extension module."""

import math

import pysu2limits as su


def close(a, b, tol):
    return all(abs(x - y) <= tol for x, y in zip(a, b))


eta = su.TwoModeState.eta(3)
assert eta.n_photons == 3
assert close([c.real for c in eta.amplitudes], [0.30291, 0, 0, 0.95302], 1e-4)
assert close(eta.stokes_vector(), [0, 0, 2.4495], 1e-3)
lambdas, axes = eta.principal_variances()
assert close(lambdas, [3, 3, 3], 1e-9)

overlap = su.TwoModeState.from_real([0, 0.5704, 0.7914, 0.2199])
lambdas, _ = overlap.principal_variances()
assert close(lambdas, [1.1637, 1.8990, 5.9373], 2e-3)
assert su.same_orbit(eta, overlap) == ("different", None)

canon, euler = eta.canonical_constellation()
thetas = sorted(math.degrees(t) for t, _ in canon)
assert abs(thetas[0]) < 1e-9 and all(abs(t - 107.5) < 0.1 for t in thetas[1:])
assert su.from_constellation(canon).fidelity(eta.rotate(*euler)) > 1 - 1e-9

relation, witness = su.same_orbit(su.TwoModeState.fock(2, 1), su.TwoModeState.noon(2))
assert relation == "same" and len(witness) == 3

noon3 = su.TwoModeState.noon(3).constellation()
assert all(abs(t - math.pi / 2) < 1e-7 for t, _ in noon3)

assert su.check_bounds([0.75, 0.75, 2.5], 2)["all_pass"]
rows = su.sweep_n2(65)
assert abs(rows[0][2] - 4) < 1e-12 and abs(rows[-1][2] - 8) < 1e-12

try:
    su.TwoModeState(2, [0, 0, 0])
except ValueError as e:
    assert "unnormalizable" in str(e)
else:
    raise AssertionError("zero vector accepted")

back = su.TwoModeState.parse(str(eta))
assert back.fidelity(eta) > 1 - 1e-15
print("smoke test passed")
