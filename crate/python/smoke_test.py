"""Smoke test of the pseudospin extension module.

Build and install first:  pip install --no-build-isolation -e crates/py
Run:                      python3 python/smoke_test.py
"""

import math

import pseudospin as ps


def close(a, b, tol):
    return abs(a - b) <= tol


def main():
    cfg = ps.PotentialConfig(3.0, 3.0, 3.0, m=1.0)
    assert cfg.renormalized() == (4.0, 3.0, 2.0)

    # Equal strengths shift the free bands.
    e_minus, e_mid, e_plus = cfg.bands(0.7)
    free = math.hypot(0.7, 1.0)
    assert close(e_minus, 3.0 - free, 1e-12) and close(e_mid, 3.0, 1e-12) and close(e_plus, 3.0 + free, 1e-12)

    flat = ps.PotentialConfig(-0.5, 0.0, 1.5).flat()
    assert flat["on_b"] and not flat["on_a"]

    states = ps.bound_states(cfg, 0.5)
    assert sorted(s.parity for s in states) == ["+", "-"]
    assert all(abs(s.energy) < 1.0 and s.kappa > 0.0 for s in states)
    oracle = ps.oracle_energies(cfg, 0.5)
    assert len(oracle) == len(states)
    assert all(close(a, s.energy, 1e-8) for a, s in zip(oracle, states))

    xs = [-2.0 + 4.0 * i / 200 for i in range(201)]
    for s in states:
        psi1, psi2, psi3 = ps.eigenfunction(cfg, 0.5, s, xs)
        assert close(max(abs(v) for v in psi2), 1.0, 1e-12)
        # psi2 is even for + states and odd for - states about the centre.
        sign = 1.0 if s.parity == "+" else -1.0
        assert all(close(psi2[i], sign * psi2[-1 - i], 1e-9) for i in range(len(xs)))

    assert ps.classify("P2", [1.0, 1.0, -1.0]) == "H1"
    grid = [-6.0 + 12.0 * i / 120 for i in range(121)]
    spectrum = ps.sweep("P2", [1.0, 1.0, -1.0], 2.0, grid)
    assert spectrum["type"] == "H1" and len(spectrum["counts"]) == len(grid)
    assert all(abs(e) < 1.0 for _, e, _, _ in spectrum["rows"])

    e0, parity = ps.limit_energy("P1", [0.0, 1.0, 0.0], "l-2", 2.0, 0)
    assert close(e0, 1.0 / math.sqrt(2.0), 1e-15) and parity == "+"
    (l11, l12), (l21, l22) = ps.limit_matrix("P1", [0.0, 1.0, 0.0], "delta", 2.0, 0)[0]
    assert close(l11 * l22 - l12 * l21, 1.0, 1e-12)
    rows = ps.convergence("P1", [0.0, 1.0, 0.0], "delta", 2.0, 0, [0.25, 0.125, 0.0625])
    assert all(b[3] < a[3] for a, b in zip(rows, rows[1:]))

    try:
        ps.limit_energy("P1", [0.0, 1.0, 0.0], "l-3", 2.0, 0)
    except ValueError:
        pass
    else:
        raise AssertionError("unknown family accepted")

    checks = ps.run_verification(seed=42, cases=3, det_samples=200)
    failed = [name for name, passed, _ in checks if not passed]
    assert not failed, failed

    print(f"pseudospin {ps.__version__}: smoke test passed ({len(checks)} checks)")


if __name__ == "__main__":
    main()
