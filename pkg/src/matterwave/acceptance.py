"""Acceptance battery AC1 to AC16.

Each criterion returns a :class:`CriterionResult` with a pass flag, a one-line
summary and the measured numbers. ``quick`` caps refinement ladders at
n = 256 and Monte-Carlo runs at 1e5 samples; ``full`` uses n = 512 and 1e6.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import electrodynamics as ed
from . import grid as fg
from .interactions import (
    EPRSampler, compton_shift, epr_sample, polarization_mc, spin_assign, spin_energy_identity,
)
from .photon import PhotonMode, TransferEvent, photon_potentials, transfer_rate, transversal_fields
from .quantum import uncertainty_product
from .relativity import LorentzFrame, transform_wave_quantities, transformed_wave_residual
from .units import M_ELECTRON, codata_units, derive_constants
from .waves import energy_split, make_photon_wave, make_wave

__all__ = ["CriterionResult", "PROFILES", "CRITERIA", "run_criterion", "run_suite", "format_table"]

PROFILES = {
    "quick": {"ladder": (64, 128, 256), "mc_samples": 100_000, "epr_samples": 100_000},
    "full": {"ladder": (64, 128, 256, 512), "mc_samples": 1_000_000, "epr_samples": 100_000},
}

# the seed used when none is given; every stochastic criterion derives from it
DEFAULT_SEED = 20240601


@dataclass
class CriterionResult:
    id: str
    title: str
    passed: bool
    summary: str
    details: dict = field(default_factory=dict)
    runtime: float = 0.0


def _rel(a, b):
    return abs(a - b) / abs(b)


def _ac1(profile, seed):
    u = codata_units()
    d = derive_constants(u)
    err = _rel(d.hbar_estimate, 1.081e-34)
    dev = (d.hbar_estimate - u.hbar) / u.hbar
    ok = err < 2e-3 and abs(dev - 0.025) <= 0.003
    return ok, f"hbar_estimate={d.hbar_estimate:.5e} (vs 1.081e-34: {err:.2e}), deviation={dev:.4f}", {
        "hbar_estimate": d.hbar_estimate, "relative_to_1.081e-34": err, "deviation_from_hbar": dev}


def _ac2(profile, seed):
    d = derive_constants(codata_units())
    err = _rel(d.beta_f, 2.50e-38)
    return err < 5e-3, f"beta_f={d.beta_f:.5e} (vs 2.50e-38: {err:.2e})", {"beta_f": d.beta_f, "relative": err}


def _random_waves(seed, n=100):
    rng = np.random.default_rng(seed)
    masses = 10 ** rng.uniform(-31, -25, n)
    speeds = 10 ** rng.uniform(0, 8, n)
    directions = rng.normal(size=(n, 3))
    directions /= np.linalg.norm(directions, axis=1)[:, None]
    return [make_wave(m, s * d) for m, s, d in zip(masses, speeds, directions)]


def _ac3(profile, seed):
    worst_phase = worst_lnu = 0.0
    for w in _random_waves(seed):
        worst_phase = max(worst_phase, _rel(w.omega / w.wavenumber, w.speed))
        worst_lnu = max(worst_lnu, _rel(w.wavelength * w.frequency, w.speed))
    ok = worst_phase < 1e-12 and worst_lnu < 1e-12
    return ok, f"max |omega/k - u|/u={worst_phase:.1e}, max |lambda nu - u|/u={worst_lnu:.1e}", {
        "max_phase_speed_error": worst_phase, "max_lambda_nu_error": worst_lnu}


def _ac4(profile, seed):
    u = codata_units()
    worst = 0.0
    waves = _random_waves(seed + 1) + [make_photon_wave(5e14)]
    for w in waves:
        s = energy_split(w)
        worst = max(worst, _rel(s.w_kinetic, s.w_potential), _rel(s.w_total, w.m * w.speed**2),
                    _rel(s.w_total, u.hbar * w.omega))
    return worst < 1e-12, f"max energy-split error={worst:.1e} over {len(waves)} waves", {"max_error": worst}


def _ladder_ok(r: fg.ResidualReport, tol=1e-3, order=2.0, window=0.3):
    """Below ``tol`` at n = 256 and converging at the stencil order.

    Identities that hold exactly on the grid sit at round-off on every rung;
    they have no measurable order and count as converged.
    """
    exact = all(v <= fg.ROUNDOFF for v in r.relative_ladder)
    converging = exact or abs(r.order_estimate - order) <= window
    return r.relative < tol and converging


def _ac5(profile, seed):
    ladder = profile["ladder"]
    waves = {"electron": make_wave(M_ELECTRON, 1e6), "photon": make_photon_wave(5e14),
             "oblique": make_wave(M_ELECTRON, [6e5, 8e5, 0.0])}
    details, ok = {}, True
    checks = {
        "wave_momentum": lambda w: fg.wave_residual(w, field="momentum", ladder=ladder),
        "wave_density": lambda w: fg.wave_residual(w, field="density", ladder=ladder),
        "continuity": lambda w: fg.continuity_residual(w, ladder=ladder),
        "momentum_balance": lambda w: fg.momentum_balance_residual(w, ladder=ladder),
        "free_E": lambda w: ed.free_efield_residual(w, ladder=ladder),
    }
    worst_rel, orders, worst_neg = 0.0, [], math.inf
    for wname, w in waves.items():
        broken = w.with_omega(w.omega / 2)
        for cname, check in checks.items():
            r = check(w)
            neg = check(broken).relative
            good = _ladder_ok(r) and neg > 0.1
            ok &= good
            worst_rel = max(worst_rel, r.relative)
            orders.append(r.order_estimate)
            worst_neg = min(worst_neg, neg)
            details[f"{wname}.{cname}"] = {"relative": r.relative, "order": r.order_estimate,
                                          "broken_relative": neg, "pass": good}
    return ok, (f"max relative={worst_rel:.2e}, orders in [{min(orders):.3f}, {max(orders):.3f}], "
                f"min broken-dispersion relative={worst_neg:.2f}"), details


def _ac6(profile, seed):
    ladder = profile["ladder"]
    details, ok = {}, True
    for wname, w in {"electron": make_wave(M_ELECTRON, 1e6), "oblique": make_wave(M_ELECTRON, [6e5, 8e5, 0.0])}.items():
        for name, r in ed.maxwell_residuals(w, ladder=ladder).items():
            good = _ladder_ok(r)
            ok &= good
            details[f"{wname}.{name}"] = {"relative": r.relative, "order": r.order_estimate,
                                          "ladder": list(r.relative_ladder), "pass": good}
    worst = max(v["relative"] for v in details.values())
    return ok, f"max relative={worst:.2e} (faraday, div B exact on the grid; ampere order " \
               f"{details['electron.ampere_vacuum']['order']:.3f})", details


def _ac7(profile, seed):
    rng = np.random.default_rng(seed)
    mode = PhotonMode.from_frequency(5e14, axis=(1.0, 2.0, 0.5), e_t=(2.0, -1.0, 0.0), rho0=3.7)
    lam = 2 * math.pi / mode.wavenumber
    x = rng.uniform(-5 * lam, 5 * lam, (1000, 3))
    t = rng.uniform(0, 10 / (mode.omega / (2 * math.pi)), 1000)
    pots = photon_potentials(mode, x, t)
    fields = transversal_fields(mode, x, t)
    phi0 = mode.phi0
    comp = float(np.max(np.abs(pots["phi_k"] + pots["phi_e"] - phi0))) / phi0
    energy = (np.sum(fields["E"] ** 2, axis=-1) + np.sum(fields["B"] ** 2, axis=-1)) / (8 * math.pi)
    ident = float(np.max(np.abs(energy - pots["phi_e"]))) / phi0
    ok = comp < 1e-12 and ident < 1e-12
    return ok, f"complementarity error={comp:.1e}, (E^2+B^2)/8pi - phi_e error={ident:.1e} (1000 points)", {
        "complementarity": comp, "energy_identity": ident}


def _ac8(profile, seed):
    h = codata_units().h
    nu = 5e14
    full = transfer_rate(TransferEvent(nu))
    half = transfer_rate(TransferEvent(nu, volume_fraction=0.5))
    err = _rel(full["energy"], h * nu)
    exact_half = half["energy"] == h * nu / 2
    ok = err < 1e-12 and exact_half
    return ok, f"one-period energy error={err:.1e}, half-volume == h nu/2: {exact_half}", {
        "energy": full["energy"], "rate": full["rate"], "half_energy": half["energy"]}


def _ac9(profile, seed):
    w = make_wave(M_ELECTRON, 1e6)
    ok, details = True, {}
    for beta in (0.1, 0.5, 0.866, 0.99):
        f = LorentzFrame(beta)
        q = transform_wave_quantities(w, f)
        errs = (_rel(q["phi0_ratio"], f.gamma), _rel(q["volume_ratio"], 1 / f.gamma), abs(q["energy_ratio"] - 1))
        r = transformed_wave_residual(w, f, ladder=None)
        good = max(errs) < 1e-12 and r.relative < 1e-3
        ok &= good
        details[str(beta)] = {"gamma": f.gamma, "ratio_errors": list(errs), "residual": r.relative, "pass": good}
    worst = max(max(v["ratio_errors"]) for v in details.values())
    worst_r = max(v["residual"] for v in details.values())
    return ok, f"max ratio error={worst:.1e}, max transformed residual={worst_r:.2e}", details


def _ac10(profile, seed):
    u = codata_units()
    worst = 0.0
    for w in _random_waves(seed + 2):
        r = uncertainty_product(w, u)
        worst = max(worst, _rel(r.delta_k, w.wavenumber), _rel(r.delta_x, w.wavelength / 2),
                    _rel(r.product_px, u.h / 2), _rel(r.corrected, u.hbar / 2))
    return worst < 1e-12, f"max error over 100 waves={worst:.1e}", {"max_error": worst}


def _ac11(profile, seed):
    r = compton_shift(1e-10, math.pi / 2)
    err = _rel(r["delta_lambda"], 2.4263e-12)
    shifts = [compton_shift(ls, math.pi / 2)["delta_lambda"] for ls in np.logspace(-12, -9, 7)]
    spread = (max(shifts) - min(shifts)) / shifts[0]
    ok = err < 1e-4 and spread < 1e-12
    return ok, f"delta_lambda(pi/2)={r['delta_lambda']:.6e} ({err:.1e} from 2.4263e-12), spread over 3 decades={spread:.1e}", {
        "delta_lambda": r["delta_lambda"], "relative": err, "spread": spread}


def _ac12(profile, seed):
    r = polarization_mc(1.0, 1.0, n=profile["mc_samples"], seed=seed)
    err = abs(r["mean_abs_delta_W"] / (2 / math.pi) - 1)
    return err < 0.01, f"mean |dW|/W0={r['mean_abs_delta_W']:.5f} vs 2/pi ({err:.1e}, n={r['samples']})", r


def _ac13(profile, seed):
    u = codata_units()
    details, ok = {}, True
    expected = {"boson": (u.hbar, 1.0), "fermion": (u.hbar / 2, 2.0)}
    for kind, (s, g) in expected.items():
        a = spin_assign(kind, (0.3, -0.4, 0.5), u)
        e = spin_energy_identity(a, 2.7e15, u)
        good = (_rel(a.g * a.s, u.hbar) < 1e-15 and (a.s, a.g) == (s, g) and abs(e["ratio"] - 1) < 1e-12)
        ok &= good
        details[kind] = {"s": a.s, "g": a.g, "g_s": a.g * a.s, "energy_ratio": e["ratio"], "pass": good}
    return ok, "g s = hbar; boson (hbar, 1), fermion (hbar/2, 2); energy ratios " + \
        ", ".join(f"{d['energy_ratio']:.15f}" for d in details.values()), details


def _ac14(profile, seed):
    n = profile["epr_samples"]
    lam = 1.0
    sampler = EPRSampler(lam=lam, omega=2 * math.pi, window_dx=lam, rng_seed=seed)
    narrow = epr_sample(sampler, n, 1e-9, 1e-9)["corr"]
    wide = epr_sample(sampler, n, lam, lam)["corr"]
    windows = np.linspace(0.0, 1.0, 11) * lam
    corrs = [epr_sample(sampler, n, w, w)["corr"] for w in windows]
    monotone = all(abs(b) <= abs(a) for a, b in zip(corrs, corrs[1:]))
    ok = abs(narrow + 1) <= 0.01 and abs(wide) <= 0.01 and monotone
    return ok, f"corr(window->0)={narrow:.4f}, corr(window=lambda)={wide:.1e}, monotone={monotone}", {
        "narrow": narrow, "wide": wide, "ladder": corrs}


def _ac15(profile, seed):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(1000):
        omega = rng.normal(size=3) * 10 ** rng.uniform(-3, 16)
        r = rng.normal(size=3) * 10 ** rng.uniform(-12, 2)
        rho = 10 ** rng.uniform(-6, 6)
        f = ed.lorentz_force_balance(ed.RotationState(omega, r, rho))
        worst = max(worst, float(np.max(np.abs(f["F_net"]))))
    return worst == 0.0, f"max |F_L + F_C| over 1000 random states = {worst}", {"max_net": worst}


def _ac16(profile, seed):
    from .experiments import run_experiment

    reports = []
    configs = [("suite-core", {}), ("epr", {"n": 20000}), ("polarization", {"samples": 20000}),
               ("maxwell", {"n": 64}), ("constants", {})]
    for threads in (1, 4, 1):
        texts = []
        for name, params in configs:
            if name == "suite-core":
                rows = run_suite(profile_name=_profile_name(profile), ids=[f"AC{i}" for i in range(1, 16)],
                                 threads=threads, seed=seed)
                texts.append(json.dumps([_result_dict(r) for r in rows], sort_keys=True))
            else:
                rep = run_experiment(name, params, seed=seed, threads=threads)
                d = rep.to_dict()
                d.pop("timestamp")
                texts.append(json.dumps(d, sort_keys=True))
        reports.append(texts)
    same = all(r == reports[0] for r in reports)
    return same, f"3 runs (threads 1, 4, 1): byte-identical={same}", {"identical": same}


def _profile_name(profile):
    return next(k for k, v in PROFILES.items() if v == profile)


CRITERIA = {
    "AC1": ("Planck estimate", _ac1),
    "AC2": ("beta_f value", _ac2),
    "AC3": ("dispersion identity", _ac3),
    "AC4": ("energy split", _ac4),
    "AC5": ("wave, continuity, momentum-balance and free-E residuals", _ac5),
    "AC6": ("Maxwell residuals", _ac6),
    "AC7": ("photon complementarity", _ac7),
    "AC8": ("transfer quantization", _ac8),
    "AC9": ("Lorentz transformation", _ac9),
    "AC10": ("uncertainty product", _ac10),
    "AC11": ("Compton shift", _ac11),
    "AC12": ("polarization Monte Carlo", _ac12),
    "AC13": ("spin assignment", _ac13),
    "AC14": ("EPR sampler", _ac14),
    "AC15": ("Lorentz-force balance", _ac15),
    "AC16": ("determinism", _ac16),
}


def run_criterion(cid: str, profile_name: str = "full", seed: int | None = None) -> CriterionResult:
    if cid not in CRITERIA:
        raise KeyError(f"unknown criterion {cid!r}")
    if profile_name not in PROFILES:
        raise ValueError(f"unknown suite {profile_name!r}; use one of {sorted(PROFILES)}")
    title, fn = CRITERIA[cid]
    start = time.perf_counter()
    passed, summary, details = fn(PROFILES[profile_name], DEFAULT_SEED if seed is None else seed)
    return CriterionResult(cid, title, bool(passed), summary, details, time.perf_counter() - start)


def run_suite(profile_name: str = "quick", ids=None, threads: int = 1, seed: int | None = None) -> list:
    """Run criteria in a thread pool; results come back in criterion order."""
    if profile_name not in PROFILES:
        raise ValueError(f"unknown suite {profile_name!r}; use one of {sorted(PROFILES)}")
    ids = list(ids or CRITERIA)
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        futures = [pool.submit(run_criterion, cid, profile_name, seed) for cid in ids]
        return [f.result() for f in futures]


def _result_dict(r: CriterionResult) -> dict:
    from .report import to_plain

    return {"id": r.id, "title": r.title, "pass": r.passed, "summary": r.summary, "details": to_plain(r.details)}


def format_table(results) -> str:
    lines = []
    for r in results:
        lines.append(f"{r.id:<5} {'PASS' if r.passed else 'FAIL'}  {r.title}: {r.summary}  [{r.runtime:.2f} s]")
    return "\n".join(lines)
