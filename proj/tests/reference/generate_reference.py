#!/usr/bin/env python3
"""Independent reference integration used to freeze test fixture values.

Integrates the driven-chain Schroedinger equation with scipy's DOP853 at
tight tolerances (an integrator unrelated to the C++ implementation) and
writes the observable values the test suites pin down to
tests/fixtures/reference_values.json.
"""

import json
import pathlib

import numpy as np
from scipy.integrate import solve_ivp

G = 1.0
OMEGA0 = 2.0 * G
T = 2.0 * np.pi / OMEGA0


def build_chain(sites, exchange, multipliers):
    dim = 1 << sites
    idx = np.arange(dim)
    diag = G * (2.0 * np.array([bin(i).count("1") for i in range(dim)]) - sites)
    bonds = []
    for b, k in enumerate(multipliers):
        mask = 0b11 << b
        bonds.append((idx ^ mask, float(k), exchange))
    return diag, bonds


def rhs(t, psi, diag, bonds, omega):
    out = diag * psi
    for perm, k, j0 in bonds:
        out = out + (j0 * np.cos(k * omega * t)) * psi[perm]
    return -1j * out


def evolve(psi0, t_grid, diag, bonds, omega):
    sol = solve_ivp(
        rhs,
        (t_grid[0], t_grid[-1]),
        psi0,
        t_eval=t_grid,
        method="DOP853",
        rtol=1e-11,
        atol=1e-13,
        args=(diag, bonds, omega),
    )
    assert sol.success
    return sol.y.T  # [time][amplitude]


def sz(psi, site, sites):
    bit = 1 << (site - 1)
    signs = np.where((np.arange(len(psi)) & bit) != 0, 1.0, -1.0)
    return float(np.sum(np.abs(psi) ** 2 * signs))


def corr(psi, bond, sites):
    zl = sz(psi, bond, sites)
    zr = sz(psi, bond + 1, sites)
    bl, br = 1 << (bond - 1), 1 << bond
    idx = np.arange(len(psi))
    zz = float(
        np.sum(
            np.abs(psi) ** 2
            * np.where((idx & bl) != 0, 1.0, -1.0)
            * np.where((idx & br) != 0, 1.0, -1.0)
        )
    )
    return zz - zl * zr


def trimer_case(exchange):
    sites = 3
    diag, bonds = build_chain(sites, exchange, [2, 1])
    psi0 = np.zeros(1 << sites, dtype=complex)
    psi0[0] = 1.0
    n_max = 40
    t_grid = np.arange(n_max + 1) * T
    states = evolve(psi0, t_grid, diag, bonds, OMEGA0)

    dev12 = 0.0
    dev3 = 0.0
    sz1_series = []
    for n in range(n_max + 1):
        ana = -np.cos(2.0 * np.pi * exchange * n / OMEGA0)
        s1 = sz(states[n], 1, sites)
        s2 = sz(states[n], 2, sites)
        s3 = sz(states[n], 3, sites)
        sz1_series.append(s1)
        dev12 = max(dev12, abs(s1 - ana), abs(s2 - ana))
        dev3 = max(dev3, abs(s3 + 1.0))

    c12_5t = corr(states[5], 1, sites)
    fid_20t = abs(np.vdot(psi0, states[20])) ** 2

    # dominant discrete-Fourier period of sz_1(nT), mean removed
    s = np.array(sz1_series) - np.mean(sz1_series)
    freqs = np.linspace(1e-3, 0.5, 4000)
    amps = [abs(np.sum(s * np.exp(-2j * np.pi * f * np.arange(len(s))))) for f in freqs]
    dominant_period = 1.0 / freqs[int(np.argmax(amps))]

    return {
        "max_dev_sz12": dev12,
        "max_dev_sz3": dev3,
        "C12_at_5T": c12_5t,
        "fidelity_at_20T": fid_20t,
        "dominant_period_T": dominant_period,
    }


def chain10_blocks(exchange, multipliers, n_max=40):
    sites = 10
    diag, bonds = build_chain(sites, exchange, multipliers)
    psi0 = np.zeros(1 << sites, dtype=complex)
    psi0[0] = 1.0
    t_grid = np.arange(n_max + 1) * T
    states = evolve(psi0, t_grid, diag, bonds, OMEGA0)
    odd_max = 0.0
    even_max = 0.0
    for n in range(n_max + 1):
        for b in range(1, sites):
            c = corr(states[n], b, sites)
            if b % 2 == 1:
                odd_max = max(odd_max, abs(c))
            else:
                even_max = max(even_max, abs(c))
    return states, odd_max, even_max


def chain10_protocol(exchange):
    sites = 10
    m = 10
    blocks = [1, 2, 1, 2, 1, 1, 2, 1, 2, 1]
    mult1 = [2 if b % 2 == 1 else 1 for b in range(1, sites)]
    mult2 = [1 if b % 2 == 1 else 2 for b in range(1, sites)]
    diag, bonds1 = build_chain(sites, exchange, mult1)
    _, bonds2 = build_chain(sites, exchange, mult2)
    psi = np.zeros(1 << sites, dtype=complex)
    psi[0] = 1.0
    psi0 = psi.copy()

    c56 = [corr(psi, 5, sites)]
    t0 = 0.0
    for block in blocks:
        bonds = bonds1 if block == 1 else bonds2
        t_grid = t0 + np.arange(m + 1) * T
        states = evolve(psi, t_grid, diag, bonds, OMEGA0)
        for n in range(1, m + 1):
            c56.append(corr(states[n], 5, sites))
        psi = states[-1]
        t0 = t_grid[-1]

    fid = abs(np.vdot(psi0, psi)) ** 2
    cmax_final = max(abs(corr(psi, b, sites)) for b in range(1, sites))
    c56 = np.array(c56)
    return {
        "C56_max": float(np.max(c56)),
        "C56_argmax_n": int(np.argmax(c56)),
        "fidelity_at_100T": float(fid),
        "overlap_at_100T": float(np.sqrt(fid)),
        "max_absC_at_100T": float(cmax_final),
    }


def main():
    out = {
        "integrator": "scipy solve_ivp DOP853 rtol=1e-11 atol=1e-13",
        "units": "energies in g, times in 1/g; base frequency Omega0 = 2g, T = pi/g",
    }
    out["trimer_J0_0.1"] = trimer_case(0.1)
    out["trimer_J0_0.05"] = trimer_case(0.05)

    _, odd_max, even_max = chain10_blocks(0.1, [2 if b % 2 == 1 else 1 for b in range(1, 10)])
    out["chain10_drive1"] = {"odd_bond_absC_max": odd_max, "even_bond_absC_max": even_max}
    _, odd_max2, even_max2 = chain10_blocks(0.1, [1 if b % 2 == 1 else 2 for b in range(1, 10)])
    out["chain10_drive2"] = {"odd_bond_absC_max": odd_max2, "even_bond_absC_max": even_max2}

    out["chain10_protocol"] = chain10_protocol(0.1)

    fixtures = pathlib.Path(__file__).resolve().parent.parent / "fixtures"
    fixtures.mkdir(exist_ok=True)
    path = fixtures / "reference_values.json"
    path.write_text(json.dumps(out, indent=2) + "\n")
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
