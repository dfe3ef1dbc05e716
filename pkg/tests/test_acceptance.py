"""Acceptance suite: every shipping criterion at its contracted tolerance.

Each test prints one `[acceptance] criterion N: PASS/FAIL` line (run with
`pytest -s tests/test_acceptance.py` to see them live) and then asserts.
"""

import cmath
import math
import subprocess
import sys
import time
from pathlib import Path

import numpy as np

from circledual import (
    OscillatorConfig,
    build_duality_map,
    build_hamiltonian,
    build_ladder,
    build_position_momentum,
    commutator,
    conjugate_to_ontological,
    duality_deviation,
    li_three_halves_circle,
    map_to_y,
    map_to_z,
    ontological_matrix,
    random_state,
    sqrt_series_disk,
    sqrt_series_sheet2,
    sqrt_series_zeros,
)
from circledual import angle_kernel_abel, angle_kernel_fdiff
from circledual.cli import main

SRC = str(Path(__file__).resolve().parent.parent / "src")


def report(number, label, passed, detail):
    verdict = "PASS" if passed else "FAIL"
    print(f"[acceptance] criterion {number:2d} ({label}): {verdict} — {detail}")
    assert passed, f"criterion {number} failed: {detail}"


def test_criterion_01_unitarity():
    start = time.perf_counter()
    worst = 0.0
    for n in (1, 2, 3, 11, 64, 256, 1024):
        worst = max(worst, build_duality_map(n).unitarity_defect())
    elapsed = time.perf_counter() - start
    report(
        1,
        "duality-map unitarity",
        worst <= 1e-12 and elapsed < 5.0,
        f"max defect {worst:.2e}, {elapsed:.2f}s",
    )


def test_criterion_02_spectrum():
    n = 11
    h = build_hamiltonian(OscillatorConfig(n))
    diagonal = np.diag(h.entries)
    exact = np.array_equal(diagonal.real, np.arange(11.0)) and np.all(diagonal.imag == 0.0)
    h_site = conjugate_to_ontological(h, build_duality_map(n))
    eig_gap = float(np.max(np.abs(np.sort(np.linalg.eigvalsh(h_site.entries)) - np.arange(11.0))))
    report(
        2,
        "spectrum reproduction",
        exact and eig_gap <= 1e-9,
        f"levels exact: {exact}, site-basis eigenvalue gap {eig_gap:.2e}",
    )


def test_criterion_03_stroboscopic_duality():
    start = time.perf_counter()
    rng = np.random.default_rng(0)
    worst = 0.0
    for n in (2, 3, 11, 64, 256):
        dmap = build_duality_map(n)
        states = [random_state(n, rng) for _ in range(100)]
        for state in states:
            for k in range(2 * n + 1):
                worst = max(worst, duality_deviation(state, k, dmap=dmap))
    elapsed = time.perf_counter() - start
    report(
        3,
        "stroboscopic duality",
        worst <= 1e-10 and elapsed < 60.0,
        f"max deviation {worst:.2e}, {elapsed:.1f}s",
    )


def test_criterion_04_closed_form_elements():
    worst = 0.0
    for n in (2, 16, 64, 256):
        dmap = build_duality_map(n)
        a, adag = build_ladder(n)
        x, p = build_position_momentum(n)
        for kind, op in (("a", a), ("adag", adag), ("x", x), ("p", p)):
            closed = ontological_matrix(kind, n).entries
            conjugated = conjugate_to_ontological(op, dmap).entries
            worst = max(worst, float(np.max(np.abs(closed - conjugated))))
    report(
        4,
        "closed-form matrix elements",
        worst <= 1e-10,
        f"max |closed - conjugated| = {worst:.2e}",
    )


def test_criterion_05_hermiticity_and_reality():
    worst_defect = 0.0
    for n in (2, 3, 11, 64, 128, 256):
        dmap = build_duality_map(n)
        x, p = build_position_momentum(n)
        for op in (x, p):
            site = conjugate_to_ontological(op, dmap)
            worst_defect = max(worst_defect, site.hermiticity_defect())
    rng = np.random.default_rng(1)
    worst_reality = 0.0
    for _ in range(1000):
        radius = (1.0 - 1e-5) * math.sqrt(rng.uniform())
        z = radius * cmath.exp(2j * math.pi * rng.uniform())
        direct = sqrt_series_disk(z).value
        mirrored = sqrt_series_disk(z.conjugate()).value
        worst_reality = max(worst_reality, abs(direct.conjugate() - mirrored))
    report(
        5,
        "hermiticity and reality",
        worst_defect <= 1e-12 and worst_reality <= 1e-12,
        f"hermiticity defect {worst_defect:.2e}, reality gap {worst_reality:.2e}",
    )


def test_criterion_06_truncation_commutator():
    worst = 0.0
    for n in (2, 4, 64):
        x, p = build_position_momentum(n)
        defect = commutator(x, p).entries
        expected = 1j * np.eye(n)
        expected[n - 1, n - 1] = 1j * (1.0 - n)
        worst = max(worst, float(np.max(np.abs(defect - expected))))
    report(
        6,
        "truncation commutator",
        worst <= 1e-10,
        f"max entrywise gap {worst:.2e}",
    )


def test_criterion_07_f_values():
    terms = 10_000_000
    n = np.arange(1, terms + 1, dtype=np.float64)
    partial = float(np.sum(n**-1.5))
    a = float(terms + 1)
    oracle = partial + 2.0 * a**-0.5 + 0.5 * a**-1.5 + 0.125 * a**-2.5

    f0_gap = abs(li_three_halves_circle(0.0).value - oracle)
    pi_imag = abs(li_three_halves_circle(math.pi).value.imag)
    rng = np.random.default_rng(2)
    worst_conj = 0.0
    for _ in range(100):
        phi = rng.uniform(1e-3, math.pi)
        plus = li_three_halves_circle(phi).value
        minus = li_three_halves_circle(-phi).value
        worst_conj = max(worst_conj, abs(minus - plus.conjugate()))
    report(
        7,
        "F/f evaluation",
        f0_gap <= 1e-8 and pi_imag <= 1e-8 and worst_conj <= 1e-8,
        f"f(0) gap {f0_gap:.2e}, Im f(pi) {pi_imag:.2e}, conj gap {worst_conj:.2e}",
    )


def test_criterion_08_kernel_consistency():
    rng = np.random.default_rng(3)
    angles = rng.uniform(0.1, math.pi, size=25)
    angles = np.concatenate([angles, -rng.uniform(0.1, math.pi, size=25)])
    worst_ratio = 0.0
    for phi in angles:
        series = angle_kernel_abel(float(phi))
        fdiff = angle_kernel_fdiff(float(phi))
        tolerance = max(1e-6, 1e-4 * abs(series.value))
        worst_ratio = max(worst_ratio, abs(series.value - fdiff.value) / tolerance)
    report(
        8,
        "kernel route agreement",
        worst_ratio <= 1.0,
        f"worst disagreement at {worst_ratio:.3f} of tolerance over 50 angles",
    )


def test_criterion_09_sheet_algebra():
    rng = np.random.default_rng(4)
    worst_trip = 0.0
    worst_product = 0.0
    count = 0
    while count < 1000:
        y = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        if abs(y.imag) < 1e-6 and y.real >= 0.99:
            continue  # off the cut, where a side must be chosen explicitly
        if abs(y) < 1e-12:
            continue
        count += 1
        z1 = map_to_z(y, 1)
        z2 = map_to_z(y, 2)
        worst_trip = max(worst_trip, abs(map_to_y(z1) - y) / max(1.0, abs(y)))
        worst_product = max(worst_product, abs(z1 * z2 - 1.0))

    def abel(values, grid):
        tbl = [complex(v) for v in values]
        for k in range(1, len(grid)):
            for i in range(len(grid) - k):
                tbl[i] = (grid[i + k] * tbl[i] - grid[i] * tbl[i + 1]) / (
                    grid[i + k] - grid[i]
                )
        return tbl[0]

    eps = [0.04 * 0.5**j for j in range(7)]
    worst_match = 0.0
    for j in range(1, 17):
        phi = 2.0 * math.pi * j / 17.0
        inside = abel(
            [sqrt_series_disk((1 - e) * cmath.exp(1j * phi)).value for e in eps], eps
        )
        outside = abel(
            [sqrt_series_sheet2((1 + e) * cmath.exp(1j * phi)).value for e in eps], eps
        )
        worst_match = max(worst_match, abs(outside - inside.conjugate()))
    report(
        9,
        "sheet algebra",
        worst_trip <= 1e-12 and worst_product <= 1e-12 and worst_match <= 1e-4,
        f"round trip {worst_trip:.2e}, sheet product {worst_product:.2e}, "
        f"boundary match {worst_match:.2e}",
    )


def test_criterion_10_zeros():
    start = time.perf_counter()
    fractions = []
    residual_ok = True
    for degree in (16, 64, 256):
        zero_set = sqrt_series_zeros(degree)
        coeff_sum = float(np.sum(np.sqrt(np.arange(1, degree + 1))))
        residual_ok = residual_ok and zero_set.residual <= 1e-8 * coeff_sum
        fractions.append(zero_set.near_circle_fraction())
    elapsed = time.perf_counter() - start
    monotone = fractions[0] <= fractions[1] <= fractions[2]
    report(
        10,
        "kernel polynomial zeros",
        residual_ok and monotone and elapsed < 120.0,
        f"near-circle fractions {[f'{f:.3f}' for f in fractions]}, {elapsed:.1f}s",
    )


def test_criterion_11_cli_determinism(tmp_path):
    figure_commands = {
        "spectrum": ["spectrum", "--n", "11"],
        "f-curve": ["f-curve"],
        "map-domains": ["map-domains"],
    }
    slowest = 0.0
    identical = True
    for name, argv in figure_commands.items():
        artifacts = []
        for attempt in ("a", "b"):
            out = tmp_path / f"{name}-{attempt}.csv"
            start = time.perf_counter()
            proc = subprocess.run(
                [sys.executable, "-m", "circledual", *argv, "--out", str(out)],
                capture_output=True,
                text=True,
                env={"PYTHONPATH": SRC, "PATH": "/usr/bin:/bin"},
            )
            slowest = max(slowest, time.perf_counter() - start)
            assert proc.returncode == 0, proc.stderr
            artifacts.append(out.read_bytes())
        identical = identical and artifacts[0] == artifacts[1]
    # a seeded random suite must also reproduce byte-for-byte
    for attempt in ("a", "b"):
        out = tmp_path / f"duality-{attempt}.json"
        assert main(["duality-check", "--n", "11", "--trials", "100", "--seed", "7",
                     "--out", str(out)]) == 0
    identical = identical and (
        (tmp_path / "duality-a.json").read_bytes()
        == (tmp_path / "duality-b.json").read_bytes()
    )
    report(
        11,
        "CLI determinism",
        identical and slowest < 30.0,
        f"byte-identical: {identical}, slowest figure command {slowest:.1f}s",
    )
