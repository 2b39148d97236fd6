"""The ten acceptance criteria, one test each.

Each test prints a single ``[PASS]`` / ``[FAIL]`` line (visible with or
without ``-s``) and then asserts.  Criterion 8 is expected to fail: the
quoted CJ_0 eigenvalue is twice the true one, see the decisions ledger.
"""
from __future__ import annotations

import itertools
import time
from fractions import Fraction
from math import factorial

import pytest

from wreath_hurwitz.cutjoin import (
    cjk_operator,
    evolve,
    m2_displayed_cj1,
    verify_dft_identities,
)
from wreath_hurwitz.elsv import classical_bruteforce, reduction_check
from wreath_hurwitz.enumeration import (
    hurwitz_classdp,
    multiplicity,
    predicted_multiplicities,
    profiles_up_to,
)
from wreath_hurwitz.kp import kp_check
from wreath_hurwitz.partitions import ColoredPartition, gen_colored_partitions, gen_partitions
from wreath_hurwitz.schur import closed_form_H, verify_eigenbasis
from wreath_hurwitz.wreath import (
    beta_type,
    class_size,
    colored_type,
    embed,
    enumerate_group,
    group_order,
    normalizer_of_tau,
)


def announce(capsys, number: int, title: str, ok: bool, detail: str, started: float) -> None:
    status = "PASS" if ok else "FAIL"
    with capsys.disabled():
        print(f"\n[{status}] criterion {number}: {title} ({detail}; {time.perf_counter() - started:.1f}s)")


def test_criterion_01_initial_condition(capsys):
    t0 = time.perf_counter()
    bad, checked = [], 0
    for m in range(1, 4):
        for n in range(1, 5):
            target = Fraction(1, m**n * factorial(n))
            for cp in gen_colored_partitions(m, n):
                want = target if cp == ColoredPartition.identity(m, n) else 0
                checked += 1
                if hurwitz_classdp(m, n, (0,) * m, cp) != want:
                    bad.append((m, n, str(cp)))
        H = evolve(m, 4, (0,) * m)
        for n in range(1, 5):
            for cp in gen_colored_partitions(m, n):
                want = Fraction(1, m**n * factorial(n)) if cp == ColoredPartition.identity(m, n) else 0
                checked += 1
                if H.hurwitz((0,) * m, cp) != want:
                    bad.append(("evolve", m, n, str(cp)))
    ok = not bad
    announce(capsys, 1, "zero-profile Hurwitz numbers are 1/(m^n n!) at the identity class", ok,
             f"{checked} values, {len(bad)} mismatches", t0)
    assert ok, bad[:10]


def test_criterion_02_triple_engine_agreement(capsys):
    t0 = time.perf_counter()
    bad, checked = [], 0
    for m in (1, 2, 3):
        profiles = profiles_up_to(m, 3)
        orders = (3,) * m
        gen = evolve(m, 3, orders)
        schur = closed_form_H(m, 3, orders)
        for n in range(1, 4):
            for profile in profiles:
                for cp in gen_colored_partitions(m, n):
                    checked += 1
                    a = hurwitz_classdp(m, n, profile, cp)
                    b = gen.hurwitz(profile, cp)
                    c = schur.get(profile, cp)
                    if not (a == b == c):
                        bad.append((m, n, profile, str(cp), a, b, c))
    ok = not bad
    announce(capsys, 2, "enumeration = cut-and-join = Schur closed form", ok,
             f"{checked} values, {len(bad)} mismatches", t0)
    assert ok, bad[:10]


def test_criterion_03_classical_anchor(capsys):
    t0 = time.perf_counter()
    bad, checked = [], 0
    H = evolve(1, 5, (4,))
    for d in range(1, 6):
        for r in range(5):
            for lam in gen_partitions(d):
                cp = ColoredPartition((lam,))
                oracle = classical_bruteforce(d, lam, r)
                checked += 1
                if not (hurwitz_classdp(1, d, (r,), cp) == H.hurwitz((r,), cp) == oracle):
                    bad.append((d, lam, r))
    ok = not bad
    announce(capsys, 3, "m=1 reproduces transposition-factorization counts", ok,
             f"{checked} values, {len(bad)} mismatches", t0)
    assert ok, bad


def test_criterion_04_embedding_and_normalizer(capsys):
    t0 = time.perf_counter()
    bad, checked = [], 0
    for m in range(1, 9):
        for n in range(1, 8 // m + 1):
            checked += 1
            commutant = set(normalizer_of_tau(m, n))
            image = {embed(x) for x in enumerate_group(m, n)}
            if len(commutant) != group_order(m, n) or commutant != image:
                bad.append(("normalizer", m, n))
    for m in range(1, 4):
        for n in range(1, 4):
            elements = list(enumerate_group(m, n))
            images = {x: embed(x) for x in elements}
            for x, y in itertools.product(elements, repeat=2):
                checked += 1
                if embed(x * y) != images[x] * images[y]:
                    bad.append(("homomorphism", m, n, str(x), str(y)))
                    break
    ok = not bad
    announce(capsys, 4, "commutant of tau is the embedded wreath product; embedding is a homomorphism",
             ok, f"{checked} checks, {len(bad)} failing", t0)
    assert ok, bad


def test_criterion_05_conjugacy_classes(capsys):
    t0 = time.perf_counter()
    bad, checked = [], 0
    for m in range(1, 4):
        for n in range(1, 4):
            elements = list(enumerate_group(m, n))
            inverses = [g.inverse() for g in elements]
            by_type: dict[ColoredPartition, set] = {}
            for x in elements:
                checked += 1
                by_type.setdefault(colored_type(x), set()).add(x)
                if beta_type(embed(x), m, n) != colored_type(x):
                    bad.append(("beta", m, n, str(x)))
            seen = set()
            for x in elements:
                if x in seen:
                    continue
                orbit = {g * x * gi for g, gi in zip(elements, inverses)}
                seen |= orbit
                lam = colored_type(x)
                checked += 1
                if orbit != by_type[lam] or len(orbit) != class_size(lam):
                    bad.append(("class", m, n, str(lam)))
            if set(by_type) != set(gen_colored_partitions(m, n)):
                bad.append(("labels", m, n))
    ok = not bad
    announce(capsys, 5, "colored types are exactly the conjugacy classes; beta-cycles agree", ok,
             f"{checked} checks, {len(bad)} failing", t0)
    assert ok, bad[:10]


def test_criterion_06_multiplicity_formulas(capsys):
    t0 = time.perf_counter()
    bad, checked = [], 0
    for m in range(1, 4):
        for n in range(1, 4):
            elements = list(enumerate_group(m, n))
            for lam in gen_colored_partitions(m, n):
                members = [x for x in elements if colored_type(x) == lam]
                for index in range(m):
                    predicted = predicted_multiplicities(lam, index)
                    for sigma in members:
                        for mu in gen_colored_partitions(m, n):
                            checked += 1
                            if multiplicity(sigma, mu, index) != predicted.get(mu, 0):
                                bad.append((m, n, str(lam), index, str(mu), str(sigma)))
    ok = not bad
    announce(capsys, 6, "cut/join/Euler multiplicities match reflection scans for every sigma", ok,
             f"{checked} counts, {len(bad)} mismatches", t0)
    assert ok, bad[:10]


def test_criterion_07_dft_operator_identities(capsys):
    t0 = time.perf_counter()
    reports = [verify_dft_identities(m, n) for m in range(1, 5) for n in range(1, 6)]
    failing = [r.name for r in reports if not r.passed]
    checked = sum(r.checked for r in reports)
    ok = not failing
    announce(capsys, 7, "CJ_0 = m sum CJ_u and CJ_k = sum xi^(k alpha) E_u", ok,
             f"{checked} identities, {len(failing)} failing blocks", t0)
    assert ok, failing


def test_criterion_08_eigenvectors_with_stated_eigenvalues(capsys):
    t0 = time.perf_counter()
    reports = [verify_eigenbasis(m, n) for m in range(1, 4) for n in range(1, 5)]
    failures = [f for r in reports for f in r.failures]
    checked = sum(r.checked for r in reports)
    displayed = cjk_operator(2, 1, 4).matrix(2, 4) == m2_displayed_cj1(4).matrix(2, 4)
    checked += 1
    ok = not failures and displayed
    detail = f"{checked} relations, {len(failures)} failing"
    if failures:
        detail += "; the stated c0 is twice the CJ_0 eigenvalue"
    announce(capsys, 8, "colored Schur eigen-relations with the stated c0, c_k", ok, detail, t0)
    assert displayed
    assert not failures, failures[:10]


def test_criterion_09_kp_residuals(capsys):
    t0 = time.perf_counter()
    bad, checked = [], 0
    rays = {1: [(1,), (Fraction(1, 2),)], 2: [(1, 1), (1, 0), (0, 1), (2, Fraction(-1, 3))]}
    for m, betas in rays.items():
        for b in betas:
            for alpha in range(m):
                rep = kp_check(m, alpha, b, order=3, degree=8)
                checked += 1
                if not rep.passed:
                    bad.append(rep.line())
    control = kp_check(2, 0, (1, 1), order=3, degree=8, perturb=True)
    checked += 1
    if control.passed:
        bad.append("negative control: perturbed F still satisfies both equations")
    ok = not bad
    announce(capsys, 9, "KP residuals vanish per u-family; perturbation is detected", ok,
             f"{checked} runs, {len(bad)} failing", t0)
    assert ok, bad


def test_criterion_10_elsv_reduction(capsys):
    t0 = time.perf_counter()
    reports = [reduction_check(2, 3, (3, 2)), reduction_check(1, 4, (3,))]
    failing = [r.line() for r in reports if not r.passed]
    checked = sum(r.checked for r in reports)
    ok = not failing
    announce(capsys, 10, "log H per u-family equals the classical connected reassembly", ok,
             f"{checked} coefficients, {len(failing)} failing blocks", t0)
    assert ok, failing
