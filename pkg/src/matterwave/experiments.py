"""Registry of runnable experiments.

Every experiment declares typed parameters with defaults and returns named
results, each with a unit and a formula-level provenance string. The CLI
builds its subcommands from this registry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from . import __version__
from . import acceptance
from . import electrodynamics as ed
from . import grid as fg
from . import interactions as ia
from . import photon as ph
from .quantum import SchrodingerSetup, constant_potential, kinetic_operator_check, schrodinger_residual, uncertainty_product
from .relativity import LorentzFrame, transform_wave_quantities, transformed_wave_residual
from .report import ExperimentReport, Result
from .units import M_ELECTRON, codata_units, constants_table, derive_constants
from .waves import energy_split, make_photon_wave, make_wave

__all__ = ["Param", "Experiment", "REGISTRY", "UnknownExperiment", "InvalidParameter", "run_experiment", "coerce"]


class UnknownExperiment(KeyError):
    pass


class InvalidParameter(ValueError):
    pass


@dataclass(frozen=True)
class Param:
    name: str
    type: type
    default: Any
    help: str
    choices: tuple | None = None
    positional: bool = False

    @property
    def key(self) -> str:
        return self.name.replace("-", "_")


@dataclass(frozen=True)
class Experiment:
    name: str
    help: str
    params: tuple
    func: Callable
    stochastic: bool = False


_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def coerce(p: Param, value):
    """Convert ``value`` (possibly text from a config file) to the parameter's type."""
    try:
        if p.type is bool:
            if isinstance(value, str):
                low = value.strip().lower()
                if low not in _TRUE | _FALSE:
                    raise ValueError(value)
                value = low in _TRUE
            else:
                value = bool(value)
        elif p.type is int:
            f = float(value)
            if not f.is_integer():
                raise ValueError(value)
            value = int(f)
        else:
            value = p.type(value)
    except (TypeError, ValueError):
        raise InvalidParameter(f"parameter {p.name!r} expects {p.type.__name__}, got {value!r}") from None
    if p.choices and value not in p.choices:
        raise InvalidParameter(f"parameter {p.name!r} must be one of {list(p.choices)}, got {value!r}")
    if isinstance(value, float) and not math.isfinite(value):
        raise InvalidParameter(f"parameter {p.name!r} must be finite")
    return value


class _Out:
    """Collects results in insertion order."""

    def __init__(self):
        self.results = {}
        self.passed = None

    def __call__(self, name, value, unit, provenance):
        self.results[name] = Result(value, unit, provenance)

    def report(self, r: fg.ResidualReport, prefix: str, identity: str):
        self(f"{prefix}_l2", r.l2, "field units", identity)
        self(f"{prefix}_linf", r.linf, "field units", identity)
        self(f"{prefix}_scale", r.scale, "field units", "L2 norm of the dominant term")
        self(f"{prefix}_relative", r.relative, "1", "L2(residual) / L2(dominant term)")
        if r.n_ladder:
            self(f"{prefix}_order", r.order_estimate, "1", "-slope of log relative residual vs log n")
            self(f"{prefix}_n_ladder", list(r.n_ladder), "points", "refinement ladder")
            self(f"{prefix}_relative_ladder", list(r.relative_ladder), "1", "relative residual per rung")


def _ladder_pass(r: fg.ResidualReport, order: int = 2) -> bool:
    return acceptance._ladder_ok(r, order=float(order))


def _electron(p):
    return make_wave(p.get("m", M_ELECTRON), p.get("u", 1e6))


# -- experiment bodies --------------------------------------------------------------


def _constants(p, ctx, out):
    u = codata_units()
    for key, entry in constants_table(u).items():
        out(key, entry["value"], entry["unit"], entry["provenance"])
    d = derive_constants(u)
    out("hbar_estimate_deviation", (d.hbar_estimate - u.hbar) / u.hbar, "1", "(hbar_estimate - hbar) / hbar")
    out("sqrt_beta_f", math.sqrt(d.beta_f), "numeric", "sqrt(beta_f), compared with e")


def _dispersion(p, ctx, out):
    u = codata_units()
    w = _electron(p)
    s = energy_split(w)
    out("k", w.wavenumber, "1/m", "|k| = m |u| / hbar")
    out("omega", w.omega, "rad/s", "omega = m |u|^2 / hbar")
    out("wavelength", w.wavelength, "m", "lambda = 2 pi / |k|")
    out("frequency", w.frequency, "Hz", "nu = omega / 2 pi")
    out("phase_speed", w.phase_speed, "m/s", "c_ph = omega / |k|")
    out("lambda_nu", w.wavelength * w.frequency, "m/s", "lambda nu = |u|")
    out("w_kinetic", s.w_kinetic, "J", "W_K = m |u|^2 / 2")
    out("w_potential", s.w_potential, "J", "W_P = m |u|^2 / 2")
    out("w_total", s.w_total, "J", "W_T = m |u|^2")
    out("hbar_omega", u.hbar * w.omega, "J", "hbar omega")
    rng = np.random.default_rng(ctx["seed"])
    worst = 0.0
    for _ in range(p["samples"]):
        wi = make_wave(10 ** rng.uniform(-31, -25), 10 ** rng.uniform(0, 8))
        worst = max(worst, abs(wi.phase_speed / wi.speed - 1), abs(wi.wavelength * wi.frequency / wi.speed - 1))
    out("random_max_dispersion_error", worst, "1", "max |omega/(|k||u|) - 1| over random (m, u)")
    out.passed = worst < 1e-12


def _wave_residual(p, ctx, out):
    w = _electron(p)
    if p["broken"]:
        w = w.with_omega(w.omega / 2)
    r = fg.wave_residual(w, field=p["field"], t=p["t"], order=p["order"], n=p["n"])
    out.report(r, "wave", "lap f - (1/u^2) d2f/dt2")
    out.passed = _ladder_pass(r, p["order"]) if not p["broken"] else r.relative > 0.1


def _continuity(p, ctx, out):
    w = _electron(p)
    if p["broken"]:
        w = w.with_omega(w.omega / 2)
    kw = dict(t=p["t"], order=p["order"], n=p["n"])
    reports = {
        "continuity": (fg.continuity_residual(w, **kw), "div p + d(rho)/dt"),
        "momentum_balance": (fg.momentum_balance_residual(w, **kw), "dp/dt + u^2 grad rho"),
        "free_E": (ed.free_efield_residual(w, **kw), "-grad phi + dp/dt"),
    }
    for name, (r, identity) in reports.items():
        out.report(r, name, identity)
    if p["broken"]:
        out.passed = all(r.relative > 0.1 for r, _ in reports.values())
    else:
        out.passed = all(_ladder_pass(r, p["order"]) for r, _ in reports.values())


def _maxwell(p, ctx, out):
    if p["wave"] == "photon":
        mode = ph.PhotonMode.from_frequency(p["nu"])
        w = mode.as_wave()
    else:
        mode = None
        w = _electron(p)
    checks = ("faraday", "ampere", "divb", "emwave") if p["check"] == "all" else (p["check"],)
    names = {"faraday": "faraday", "ampere": "ampere_vacuum", "divb": "div_B"}
    identities = {"faraday": "curl E + dB/dt", "ampere_vacuum": "(1/u^2) dE/dt - curl B", "div_B": "div B"}
    ok = True
    if any(c in names for c in checks):
        reports = ed.maxwell_residuals(w, order=p["order"], n=p["n"])
        for c in checks:
            if c in names:
                r = reports[names[c]]
                out.report(r, names[c], identities[names[c]])
                ok &= _ladder_pass(r, p["order"])
    if "faraday" in checks and mode is not None:
        r = ph.transversal_faraday_residual(mode, order=p["order"], n=p["n"])
        out.report(r, "transversal_faraday", "curl E + (1/c) dB/dt")
        ok &= _ladder_pass(r, p["order"])
    if "emwave" in checks:
        g = fg.Grid.for_wave(w, p["n"])
        pair = ph.photon_em_pair(mode, g) if mode is not None else ed.em_fields_from_wave(w, g, order=p["order"])
        r = ed.em_wave_residual(pair, g, w.speed, order=p["order"])
        out.report(r, "emwave", "lap F - (1/u^2) d2F/dt2")
        ok &= r.relative < 1e-3
    out.passed = bool(ok)


def _lorentz(p, ctx, out):
    w = _electron(p)
    f = LorentzFrame(p["beta"])
    q = transform_wave_quantities(w, f)
    out("gamma", f.gamma, "1", "gamma = 1 / sqrt(1 - beta^2)")
    out("phi0_ratio", q["phi0_ratio"], "1", "phi0' / phi0 = gamma")
    out("volume_ratio", q["volume_ratio"], "1", "V' / V = 1 / gamma")
    out("energy_ratio", q["energy_ratio"], "1", "E0' / E0 = 1")
    r = transformed_wave_residual(w, f, n=p["n"], ladder=None)
    out("u_prime", r.details["u_prime"], "m/s", "u' = (u - V) / (1 - u V / c^2)")
    out("transformed_wave_relative", r.relative, "1", "(1 - beta^2)(lap p - (1/u'^2) d2p/dt2)")
    out.passed = r.relative < 1e-3 and abs(q["energy_ratio"] - 1) < 1e-12


def _uncertainty(p, ctx, out):
    r = uncertainty_product(_electron(p))
    out("k", r.k, "1/m", "|k| = m |u| / hbar")
    out("delta_k", r.delta_k, "1/m", "dk = m dV / (hbar^2 k) with dV = m u^2")
    out("delta_x", r.delta_x, "m", "dx = lambda / 2")
    out("product_kx", r.product_kx, "1", "dk dx = pi")
    out("product_px", r.product_px, "J s", "dp dx = h / 2")
    out("corrected", r.corrected, "J s", "dp dx / (2 pi) = hbar / 2")
    out("relation", r.relation, "-", "bound reported as an equality at the minimum")


def _schrodinger(p, ctx, out):
    u = codata_units()
    w = _electron(p)
    r = kinetic_operator_check(w, order=p["order"], n=p["n"])
    out.report(r, "kinetic", "(-hbar^2/2m) lap psi - (m/2) u^2 psi")
    out("eigenvalue", r.details["eigenvalue"], "J", "m u^2 / 2")
    out("eigenvalue_discrete", r.details["eigenvalue_discrete"], "J", "Rayleigh quotient of the discrete operator")
    out("half_hbar_omega", r.details["half_hbar_omega"], "J", "hbar omega / 2")
    g = fg.Grid.for_wave(w, p["n"])
    psi = w.psi(g.points())
    v0 = p["v0"]
    matched = SchrodingerSetup(w.m, constant_potential(v0), r.details["eigenvalue"] + v0)
    unmatched = SchrodingerSetup(w.m, constant_potential(v0), r.details["eigenvalue"])
    rm = schrodinger_residual(matched, psi, g, order=p["order"], units=u)
    ru = schrodinger_residual(unmatched, psi, g, order=p["order"], units=u)
    out("matched_relative", rm.relative, "1", "(-hbar^2/2m) lap psi + V psi - W psi, W = W_K + V0")
    out("unmatched_relative", ru.relative, "1", "same with W = W_K (k not adjusted to V0)")
    out.passed = r.relative < 1e-3 and rm.relative < 1e-3


def _photon(p, ctx, out):
    ev = ph.TransferEvent(p["nu"], p["fraction"], p["duration-periods"])
    for key, value in ev.to_dict().items():
        unit = {"nu": "Hz", "volume_fraction": "1", "periods": "1", "duration": "s", "rate": "J/s",
                "energy": "J", "h": "J s"}[key]
        prov = {"rate": "h nu^2 fraction", "energy": "h nu fraction periods", "duration": "periods / nu"}.get(key, "input")
        out(key, value, unit, prov)
    mode = ph.PhotonMode.from_frequency(p["nu"], rho0=1.0)
    rng = np.random.default_rng(ctx["seed"])
    lam = 2 * math.pi / mode.wavenumber
    x = rng.uniform(0, 10 * lam, (1000, 3))
    t = rng.uniform(0, 10 / p["nu"], 1000)
    pots = ph.photon_potentials(mode, x, t)
    f = ph.transversal_fields(mode, x, t)
    comp = float(np.max(np.abs(pots["phi_total"] - mode.phi0))) / mode.phi0
    em = (np.sum(f["E"] ** 2, -1) + np.sum(f["B"] ** 2, -1)) / (8 * math.pi)
    ident = float(np.max(np.abs(em - pots["phi_e"]))) / mode.phi0
    out("complementarity_error", comp, "1", "max |phi_k + phi_e - rho0 c^2| / (rho0 c^2)")
    out("field_energy_error", ident, "1", "max |(E^2 + B^2)/8pi - phi_e| / (rho0 c^2)")
    out.passed = comp < 1e-12 and ident < 1e-12


def _charge(p, ctx, out):
    q = ph.charge_quantum()
    out("beta_f", q["beta_f"], "A m^2 kg^1/2", "beta_f = e hbar sqrt(2 / m_e)")
    out("e_estimate", q["e_estimate"], "C (numeric identification)", "e = sqrt(beta_f)")
    out("A_L_flow", q["A_L_flow"], "numeric", "A_L = (4 pi / 3) beta_f / e")
    out("A_L_flow_si_e", q["A_L_flow_si_e"], "numeric", "A_L with the SI value of e")
    out("chain_residual", q["chain_residual"], "1", "((4 pi / 3) e - A_L) / A_L")
    out("relative_to_e", q["relative_to_e"], "1", "sqrt(beta_f) / e - 1")
    out("dimensional_note", q["dimensional_note"], "-", "units of beta_f versus C^2")


def _transfer(p, ctx, out):
    nu, frac = p["nu"], p["fraction"]
    energies = [ph.TransferEvent(nu, frac, k).energy for k in range(1, p["periods"] + 1)]
    one = ph.TransferEvent(nu).energy
    half = ph.TransferEvent(nu, 0.5).energy
    h = codata_units().h
    out("energy_per_period_count", energies, "J", "E(n) = n h nu fraction")
    out("energy_one_period", one, "J", "h nu over one period")
    out("energy_half_volume", half, "J", "h nu / 2 for half the photon volume")
    out("rate", ph.TransferEvent(nu, frac).rate, "J/s", "h nu^2 fraction")
    add = max(abs(e / ((k + 1) * energies[0]) - 1) for k, e in enumerate(energies))
    out("additivity_error", add, "1", "max |E(n) / (n E(1)) - 1|")
    out.passed = abs(one / (h * nu) - 1) < 1e-12 and half == h * nu / 2 and add < 1e-12


def _polarization(p, ctx, out):
    r = ia.polarization_mc(p["k-el"], p["k-ph"], n=p["samples"], seed=ctx["seed"], w0=p["w0"])
    out("mean_abs_delta_k_sq", r["mean_abs_delta_k_sq"], "1/m^2", "mean |2 k_el k_ph cos theta|, theta uniform")
    out("expected_delta_k_sq", r["expected_delta_k_sq"], "1/m^2", "(2/pi) 2 k_el k_ph")
    out("mean_abs_delta_W", r["mean_abs_delta_W"], "J", "w0 mean |delta k^2| / (k_el^2 + k_ph^2)")
    out("expected_delta_W", r["expected_delta_W"], "J", "(2/pi) w0 for equal wavenumbers")
    out("relative_error", r["relative_error"], "1", "Monte-Carlo mean / expected - 1")
    out("samples", r["samples"], "count", "input")
    out.passed = abs(r["relative_error"]) < 0.01


def _spin(p, ctx, out):
    a = ia.spin_assign(p["kind"])
    e = ia.spin_energy_identity(a, p["omega"])
    out("s", a.s, "J s", "hbar (boson) or hbar/2 (fermion)")
    out("g", a.g, "1", "1 (boson) or 2 (fermion)")
    out("g_s", a.g * a.s, "J s", "g s = hbar")
    out("axis", a.axis, "1", "parallel to the magnetic field")
    out("W", e["W"], "J", "g (e/2m) B . s")
    out("W_expected", e["W_expected"], "J", "hbar omega (boson), hbar omega / 2 (fermion)")
    out("energy_ratio", e["ratio"], "1", "W / W_expected")
    out.passed = abs(e["ratio"] - 1) < 1e-12


def _compton(p, ctx, out):
    r = ia.compton_shift(p["lambda"], math.radians(p["theta-deg"]))
    units = {"lambda_s": "m", "theta": "rad", "omega": "rad/s", "u_el0": "m/s", "lambda_compton": "m",
             "doppler_shift_first_order": "m", "doppler_shift_exact": "m", "chain_ratio": "1",
             "chain_closes": "bool", "delta_lambda": "m", "lambda_prime": "m"}
    prov = {"lambda_s": "input", "theta": "input", "omega": "2 pi c / lambda_s", "u_el0": "sqrt(hbar omega / m_e)",
            "lambda_compton": "h / (m_e c)", "doppler_shift_first_order": "lambda_s u_el0 / c",
            "doppler_shift_exact": "lambda_s (sqrt((1+beta)/(1-beta)) - 1)",
            "chain_ratio": "first-order Doppler shift / lambda_C", "chain_closes": "chain_ratio == 1",
            "delta_lambda": "lambda_C (1 - cos theta)", "lambda_prime": "lambda_s + delta_lambda"}
    for key, value in r.items():
        out(key, value, units[key], prov[key])


def _epr(p, ctx, out):
    lam = p["lambda"]
    s = ia.EPRSampler(lam=lam, omega=2 * math.pi * codata_units().c / lam,
                      window_dx=lam, rng_seed=ctx["seed"])
    r = ia.epr_sample(s, p["n"], p["window1"], p["window2"])
    desc = {"corr": ("1", "mean of A1 A2 over all pairs"),
            "corr_definite": ("1", "mean of A1 A2 when both windows < lambda/2"),
            "valid_fraction": ("1", "fraction of readings with window < lambda/2"),
            "corr_crossing_free": ("1", "mean of A1 A2 over pairs without a sign change in either window"),
            "crossing_free_fraction": ("1", "fraction of pairs without a sign change in either window"),
            "window_time1": ("s", "window1 / lambda * period"), "window_time2": ("s", "window2 / lambda * period"),
            "n": ("count", "input"), "seed": ("-", "input"), "window1": ("m", "input"), "window2": ("m", "input")}
    for key, value in r.items():
        out(key, value, *desc[key])


def _suite(p, ctx, out):
    results = acceptance.run_suite(p["name"], threads=ctx["threads"], seed=ctx["seed"])
    for r in results:
        out(r.id, r.passed, "bool", r.title)
        out(f"{r.id}_summary", r.summary, "-", r.title)
    out.passed = all(r.passed for r in results)
    ctx["suite_results"] = results


_M = Param("m", float, M_ELECTRON, "particle mass in kg")
_U = Param("u", float, 1e6, "particle speed in m/s (along x)")
_N = Param("n", int, 256, "grid points per active axis")
_ORDER = Param("order", int, 2, "stencil order", choices=(2, 4))
_T = Param("t", float, 0.0, "evaluation time in s")
_BROKEN = Param("broken", bool, False, "halve omega (negative control)")

REGISTRY = {e.name: e for e in [
    Experiment("constants", "constants table with derived constants", (), _constants),
    Experiment("dispersion", "wave numbers, dispersion identity and energy split",
               (_M, _U, Param("samples", int, 100, "random (m, u) pairs for the dispersion sweep")), _dispersion, True),
    Experiment("wave-residual", "wave-equation residual with convergence order",
               (_M, _U, Param("field", str, "momentum", "field", choices=("momentum", "density", "psi")), _N, _ORDER,
                _T, _BROKEN), _wave_residual),
    Experiment("continuity", "continuity, momentum-balance and free-E residuals", (_M, _U, _N, _ORDER, _T, _BROKEN),
               _continuity),
    Experiment("maxwell", "Maxwell-form residuals of momentum-defined fields",
               (_N, _ORDER, Param("wave", str, "electron", "source wave", choices=("electron", "photon")),
                Param("check", str, "all", "which identity", choices=("faraday", "ampere", "divb", "emwave", "all")),
                _M, _U, Param("nu", float, 5e14, "photon frequency in Hz")), _maxwell),
    Experiment("lorentz", "boost ratios and the transformed wave residual",
               (Param("beta", float, 0.5, "frame velocity / c"), _M, _U, _N), _lorentz),
    Experiment("uncertainty", "uncertainty product of a material wave", (_M, _U), _uncertainty),
    Experiment("schrodinger", "kinetic operator and time-free Schroedinger residuals",
               (_M, _U, Param("v0", float, 1e-19, "constant potential in J"), _N, _ORDER), _schrodinger),
    Experiment("photon", "transfer event and photon complementarity",
               (Param("nu", float, 5e14, "frequency in Hz"), Param("fraction", float, 1.0, "volume fraction"),
                Param("duration-periods", float, 1.0, "interaction time in periods")), _photon, True),
    Experiment("charge", "charge estimate from the field constant", (), _charge),
    Experiment("transfer", "energy transfer over whole periods",
               (Param("nu", float, 5e14, "frequency in Hz"), Param("fraction", float, 1.0, "volume fraction"),
                Param("periods", int, 4, "largest period count")), _transfer),
    Experiment("polarization", "Monte-Carlo polarization energy shift",
               (Param("samples", int, 1_000_000, "Monte-Carlo samples"), Param("k-el", float, 1.0, "electron wavenumber"),
                Param("k-ph", float, 1.0, "photon wavenumber"), Param("w0", float, 1.0, "undisturbed energy")),
               _polarization, True),
    Experiment("spin", "spin assignment and energy identity",
               (Param("kind", str, "boson", "particle kind", choices=("boson", "fermion")),
                Param("omega", float, 1e15, "angular frequency in rad/s")), _spin),
    Experiment("compton", "Compton shift with the recoil-Doppler intermediates",
               (Param("lambda", float, 1e-10, "incident wavelength in m"),
                Param("theta-deg", float, 90.0, "scattering angle in degrees")), _compton),
    Experiment("epr", "correlation of window-averaged oscillating spin signs",
               (Param("n", int, 100_000, "pairs"), Param("window1", float, 0.0, "detector 1 window in m"),
                Param("window2", float, 0.0, "detector 2 window in m"),
                Param("lambda", float, 8e-7, "photon wavelength in m")), _epr, True),
    Experiment("suite", "acceptance battery AC1-AC16",
               (Param("name", str, "quick", "suite", choices=tuple(acceptance.PROFILES), positional=True),), _suite, True),
]}


def run_experiment(name: str, params: dict | None = None, seed: int | None = None, threads: int = 1,
                   ctx: dict | None = None) -> ExperimentReport:
    """Run a registered experiment; unknown names and keys raise, parameters are type-checked."""
    if name not in REGISTRY:
        raise UnknownExperiment(name)
    exp = REGISTRY[name]
    params = dict(params or {})
    if exp.stochastic and "seed" in params:
        # reports echo the seed among their inputs; accept it back for re-runs
        echoed = params.pop("seed")
        seed = echoed if seed is None else seed
    known = {p.name: p for p in exp.params}
    aliases = {p.key: p.name for p in exp.params}
    values = {}
    for key, value in params.items():
        pname = aliases.get(key, key)
        if pname not in known:
            raise InvalidParameter(f"unknown parameter {key!r} for experiment {name!r}")
        values[pname] = coerce(known[pname], value)
    for p in exp.params:
        values.setdefault(p.name, p.default)
    ctx = ctx if ctx is not None else {}
    ctx.update(seed=acceptance.DEFAULT_SEED if seed is None else int(seed), threads=int(threads))
    out = _Out()
    exp.func(values, ctx, out)
    inputs = dict(values)
    if exp.stochastic:
        inputs["seed"] = ctx["seed"]
    return ExperimentReport(experiment=name, inputs=inputs, results=out.results, version=__version__,
                            passed=out.passed)
