"""Smoke test for the nucs_py extension module.

Build the module first, then run this script with the directory that
holds ``nucs_py.so`` on ``PYTHONPATH`` (see the README).
"""

import math
import sys

import nucs_py


def close(a, b, tol):
    return abs(a - b) <= tol * max(1.0, abs(b))


def main():
    hydrogen = nucs_py.System.coulomb_ring(z=1.0)
    assert hydrogen.name == "coulomb-ring"

    ground = hydrogen.energy(0, 0, 0)
    assert ground["energy"] == -0.5, ground
    assert ground["method"] == "closed_form"

    rooted = hydrogen.energy_rootfind(2, 1, 0)
    assert close(rooted["energy"], -0.5 / 16.0, 1e-9), rooted

    entries, failures = hydrogen.spectrum(2, 1, [0])
    energies = [e["energy"] for e in entries]
    assert not failures and energies == sorted(energies), entries

    fd = hydrogen.radial_oracle(0.0, 2, points=4000, richardson=True)
    assert close(fd[0], -0.5, 1e-5) and close(fd[1], -0.125, 1e-5), fd

    ring = nucs_py.System.coulomb_ring(z=1.0, b=1.0, c=1.0)
    l = ring.effective_l(0, 1)
    assert close(l, math.sqrt((2.0 + math.sqrt(3.0)) / 2.0), 1e-13), l
    lam = ring.angular_oracle(1, 1, points=4000)[0]
    assert close(lam, l * (l + 1.0), 1e-5), lam

    hartmann = nucs_py.System.hartmann(1.0, 1.0)
    expected = -1.0 / (2.0 * (1.0 + math.sqrt(2.0)) ** 2)
    assert close(hartmann.energy(0, 0, 1)["energy"], expected, 1e-14)

    osc = nucs_py.System.oscillator(1.0)
    assert close(osc.energy(0, 0, 0)["energy"] / math.sqrt(0.5), 3.0, 1e-14)

    ab = nucs_py.System.ab_monopole(1.0, 3.0 * math.pi, -0.5)
    assert close(ab.energy(0, 0, 0)["l_eff"], math.sqrt(2.0) - 0.5, 1e-13)

    trace = hydrogen.trace(0.0, energy=-0.5)
    assert len(trace["branches"]) == 4
    assert trace["selected"]["tau_slope"] < 0.0

    (sample,) = hydrogen.wavefunction(0, 0, 0, [(0.0, 0.3, 0.0)])
    assert close(sample["total_value"], 2.0 / math.sqrt(2.0), 1e-8), sample

    for bad in (lambda: hydrogen.energy(-1, 0, 0), lambda: hydrogen.energy(0, 0, 0, case="iii")):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("nucs_py smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
