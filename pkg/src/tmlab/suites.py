"""Named verification suites.

Each check is a function ``check(cfg) -> (report, samples)`` where
``samples`` maps column names to equal-length arrays for plotting.  Every
margin is oriented so that a nonnegative value means the checked
statement holds; tolerance gates enter as ``gate - |difference|``.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import adams, kernel, rearrangement
from .conformal import (HalfPlane, IdentityMap, Strip, UnitDisc, catalog_map,
                        geometric_inequality_margin, l_shape, load_polygon,
                        random_convex_polygon, regular_polygon, relative_margin, sc_map,
                        unit_square)
from .errors import ConfigError
from .functionals import (BECKNER_VARIANTS, LEVEL_SET_BOUND, beckner_check,
                          beckner_transfer_check, hardy_norm_convex, hardy_norm_disc,
                          level_set_measure, moser_family, plain_exp_integral,
                          remainder_bound_check, sharpness_sweep, tm_defect)
from .hyperbolic import norm_identity_check
from .report import VerificationReport

SUITES = ("kernel-bounds", "rearrangement", "adams-pipeline", "geometric", "functionals",
          "beckner")
ALL = "all"


@dataclass
class SuiteConfig:
    """Options shared by all checks; ``seed`` offsets every seeded family."""

    tol: float = 1e-10
    seed: int = 0
    points: int = 1000
    polygons: list = field(default_factory=list)
    random_polygons: int = 5
    trials: int = 50
    concentrations: list = field(default_factory=lambda: list(np.linspace(1.0, 40.0, 20)))

    @classmethod
    def from_document(cls, doc) -> "SuiteConfig":
        if doc is None:
            return cls()
        if not isinstance(doc, dict):
            raise ConfigError("configuration must be a JSON object")
        known = set(cls.__dataclass_fields__)
        unknown = set(doc) - known
        if unknown:
            raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")
        cfg = cls()
        try:
            for key, value in doc.items():
                default = getattr(cfg, key)
                if isinstance(default, list):
                    if not isinstance(value, list):
                        raise TypeError(f"{key} must be a list")
                    setattr(cfg, key, list(value))
                elif isinstance(default, bool) or not isinstance(value, (int, float)):
                    raise TypeError(f"{key} must be a number")
                else:
                    setattr(cfg, key, type(default)(value))
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc
        if cfg.tol <= 0 or cfg.points < 1 or cfg.trials < 1 or cfg.random_polygons < 0:
            raise ConfigError("tol must be positive and counts at least 1")
        return cfg

    def echo(self) -> dict:
        return {"tol": self.tol, "seed": self.seed}


Outcome = tuple[VerificationReport, dict]


def _finish(check_id, margins, budget, params, cfg, t0, *, scale=None, notes=None) -> VerificationReport:
    ms = int(round(1000 * (time.perf_counter() - t0)))
    return VerificationReport.from_margins(check_id, margins, budget, {**cfg.echo(), **params},
                                           margin_scale=scale, runtime_ms=ms, notes=notes)


# -- kernel ----------------------------------------------------------------------

def check_kernel_bounds(cfg: SuiteConfig) -> Outcome:
    t0 = time.perf_counter()
    grid = np.geomspace(1e-3, 20.0, 200)
    cert = kernel.check_phi_bounds(grid)
    rho = np.array([s.rho for s in cert.samples])
    ph = np.array([s.phi for s in cert.samples])
    b1 = np.array([s.bound_sinh for s in cert.samples])
    b2 = np.array([s.bound_rho_sinh for s in cert.samples])
    margin = np.minimum(b1, b2) - ph
    budget = max(1e-9, cert.error_budget)
    rep = _finish("kernel-bounds.bounds", margin, budget,
                  {"grid": "geomspace(1e-3, 20, 200)"}, cfg, t0)
    return rep, {"rho": rho, "phi": ph, "bound_sinh": b1, "bound_rho_sinh": b2, "margin": margin,
                 "error": [s.error for s in cert.samples]}


def check_kernel_substitutions(cfg: SuiteConfig) -> Outcome:
    t0 = time.perf_counter()
    grid = np.geomspace(1e-3, 20.0, 200)
    dis = np.array([kernel.phi(r).relative_disagreement for r in grid])
    gate = 1e-9
    rep = _finish("kernel-bounds.substitutions", gate - dis, 0.0, {"gate": gate}, cfg, t0,
                  scale=gate)
    return rep, {"rho": grid, "disagreement": dis, "margin": gate - dis}


def check_subordination(cfg: SuiteConfig) -> Outcome:
    t0 = time.perf_counter()
    rhos = np.array([0.5, 1.0, 2.0, 3.0, 5.0])
    rel = np.array([kernel.subordination_crosscheck(r) for r in rhos])
    gate = 1e-4
    rep = _finish("kernel-bounds.subordination", gate - rel, 0.0, {"gate": gate}, cfg, t0,
                  scale=gate)
    return rep, {"rho": rhos, "relative_difference": rel, "margin": gate - rel}


def check_heat_mass(cfg: SuiteConfig) -> Outcome:
    t0 = time.perf_counter()
    ts = np.array([0.25, 1.0, 4.0])
    res = [kernel.heat_kernel_mass(t) for t in ts]
    dev = np.array([abs(r.value - 1.0) for r in res])
    gate = 1e-4
    rep = _finish("kernel-bounds.heat-mass", gate - dev, 0.0, {"gate": gate}, cfg, t0, scale=gate)
    return rep, {"t": ts, "mass": [r.value for r in res], "margin": gate - dev,
                 "error": [r.error_estimate for r in res]}


# -- rearrangement -------------------------------------------------------------------

def check_round_trip(cfg: SuiteConfig) -> Outcome:
    t0 = time.perf_counter()
    ts = np.geomspace(1e-6, 1e6, 50)
    back = np.array([rearrangement.lambda_phi(float(rearrangement.phi_star(t))) for t in ts])
    rel = np.abs(back - ts) / ts
    gate = 1e-8
    rep = _finish("rearrangement.round-trip", gate - rel, 0.0, {"gate": gate}, cfg, t0, scale=gate)
    return rep, {"t": ts, "lambda_of_phi_star": back, "margin": gate - rel}


def check_star_sup(cfg: SuiteConfig) -> Outcome:
    t0 = time.perf_counter()
    ts = np.geomspace(1e-8, 1e8, 400)
    val = ts * np.asarray(rearrangement.phi_star(ts)) ** 2
    margin = 1.0 / (4.0 * math.pi) - val
    rep = _finish("rearrangement.sup-bound", margin, 1e-9, {"grid": "geomspace(1e-8, 1e8, 400)"},
                  cfg, t0)
    return rep, {"t": ts, "t_phi_star_sq": val, "margin": margin}


def check_tail_energy(cfg: SuiteConfig) -> Outcome:
    t0 = time.perf_counter()
    te = rearrangement.tail_energy(4.0)
    gate = 1e-6
    margin = gate - te.error_estimate if math.isfinite(te.value) else -math.inf
    rep = _finish("rearrangement.tail-energy", [margin], 0.0,
                  {"a": 4.0, "gate": gate}, cfg, t0, scale=gate,
                  notes={"value": te.value, "error_estimate": te.error_estimate,
                         "integral_bound": te.integral_bound})
    return rep, {"a": [4.0], "value": [te.value], "error": [te.error_estimate], "margin": [margin]}


# -- Adams pipeline ---------------------------------------------------------------------

def check_transform_identities(cfg: SuiteConfig) -> Outcome:
    t0 = time.perf_counter()
    ks = adams.KernelStar()
    gate = 1e-6
    rows = {"pair": [], "t": [], "product_rel": [], "head_rel": [], "margin": []}
    for k in range(50):
        seed = cfg.seed + k
        v = adams.random_profile(2 * seed)
        p = ks if k < 5 else adams.random_profile(2 * seed + 1)
        for t in (-1.0, 0.5, 2.0):
            r = adams.transform_identities(v, p, t)
            rows["pair"].append(k)
            rows["t"].append(t)
            rows["product_rel"].append(r.product_rel)
            rows["head_rel"].append(r.head_rel)
            rows["margin"].append(gate - max(r.product_rel, r.head_rel))
    rep = _finish("adams-pipeline.identities", rows["margin"], 0.0,
                  {"gate": gate, "pairs": 50, "kernel_star_pairs": 5}, cfg, t0, scale=gate)
    return rep, rows


def check_isometry(cfg: SuiteConfig) -> Outcome:
    t0 = time.perf_counter()
    gate = 1e-8
    rel = []
    for k in range(50):
        v = adams.random_profile(2 * (cfg.seed + k))
        psi, _ = adams.adams_transform(v, adams.KernelStar())
        a = adams.l2_norm_line(psi).value
        b = adams.l2_norm_half_line(v).value
        rel.append(abs(a - b) / b)
    rel = np.array(rel)
    rep = _finish("adams-pipeline.isometry", gate - rel, 0.0, {"gate": gate}, cfg, t0, scale=gate)
    return rep, {"pair": np.arange(rel.size), "relative_difference": rel, "margin": gate - rel}


def check_adams_kernel(cfg: SuiteConfig) -> Outcome:
    t0 = time.perf_counter()
    k = adams.disc_kernel()
    sup, b = adams.kernel_hypotheses(k)
    budget = 1e-9
    margins = [1.0 - sup, 1.0 if math.isfinite(b) else -math.inf]
    rep = _finish("adams-pipeline.kernel-hypotheses", margins, budget,
                  {"n": k.n}, cfg, t0, scale=1.0, notes={"sup": sup, "b": b})
    return rep, {"quantity": [0, 1], "value": [sup, b], "margin": margins}


def check_exp_integral(cfg: SuiteConfig) -> Outcome:
    t0 = time.perf_counter()
    k = adams.disc_kernel()
    seeds = [cfg.seed + s for s in range(20)]
    vals, errs = [], []
    for s in seeds:
        r = adams.adams_exp_integral(k, adams.random_admissible_psi(s, n=k.n))
        vals.append(r.value)
        errs.append(r.error_estimate)
    vals = np.array(vals)
    # the statement checked is finiteness; margins are 1 for finite values
    margin = np.where(np.isfinite(vals), 1.0, -math.inf)
    rep = _finish("adams-pipeline.exp-integral", margin, 0.0, {"seeds": seeds}, cfg, t0, scale=1.0,
                  notes={"max_value": float(np.max(vals)), "b": k.b})
    return rep, {"seed": seeds, "value": vals, "error": errs, "margin": margin}


# -- geometric inequality -------------------------------------------------------------------

def _disc_points(n, rng, margin):
    r = np.sqrt(rng.uniform(0.0, (1.0 - margin) ** 2, n))
    return r * np.exp(2j * np.pi * rng.uniform(size=n))


def _domains(cfg: SuiteConfig):
    """``(name, domain, map factory, sampler)`` for every domain of the suite."""
    out = [
        ("disc", UnitDisc(), lambda d: IdentityMap(),
         lambda n, rng: _disc_points(n, rng, 2e-3)),
        ("half-plane", HalfPlane(), lambda d: catalog_map("half-plane-to-disc"),
         lambda n, rng: rng.uniform(-5, 5, n) + 1j * np.exp(rng.uniform(math.log(1e-3), math.log(5), n))),
        ("strip", Strip(), lambda d: catalog_map("strip-to-disc"),
         lambda n, rng: rng.uniform(-5, 5, n) + 1j * rng.uniform(math.pi * 1e-3, math.pi * (1 - 1e-3), n)),
    ]
    polys = [unit_square(), regular_polygon(6)]
    polys += [random_convex_polygon(cfg.seed + s) for s in range(cfg.random_polygons)]
    for path in cfg.polygons:
        polys.append(load_polygon(path))
    for p in polys:
        out.append((p.name, p, lambda d, tol=cfg.tol: sc_map(d, max(tol, 1e-13)),
                    lambda n, rng, d=p: d.sample_interior(n, 1e-3 * d.diameter,
                                                          int(rng.integers(2 ** 31)))))
    return out


def geometric_check(name, omega, make_map, sampler, cfg: SuiteConfig) -> tuple[Outcome, Outcome | None]:
    """Margins at ``cfg.points`` interior points and, for SC maps, the round trip."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(cfg.seed)
    F = make_map(omega)
    z = sampler(cfg.points, rng)
    lhs = np.asarray(F.density(z))
    rhs = 0.5 / np.asarray(omega.boundary_distance(z))
    margin = lhs - rhs
    budget = 1e-6
    cid = f"geometric.{name.replace(' ', '-')}"
    # the half-plane attains equality, so the margin scale is the size of the sides
    rep = _finish(cid, margin, budget, {"domain": name, "points": int(z.size)}, cfg, t0,
                  scale=float(np.min(rhs)), notes={"min_relative_margin": float(np.min(margin / rhs))})
    samples = {"x": z.real, "y": z.imag, "lhs": lhs, "rhs": rhs, "margin": margin}
    trip = None
    if hasattr(F, "sc"):
        t1 = time.perf_counter()
        err = np.abs(F.sc(F.forward(z)) - z) / omega.diameter
        gate = 1e-8
        r2 = _finish(f"{cid}.round-trip", gate - err, 0.0, {"domain": name, "gate": gate}, cfg, t1,
                     scale=gate, notes={"vertex_error": F.vertex_error})
        trip = (r2, {"x": z.real, "y": z.imag, "error": err, "margin": gate - err})
    return (rep, samples), trip


def check_disc_asymptote(cfg: SuiteConfig) -> Outcome:
    """Absolute margins decrease strictly at |z0| = 0.9, 0.99, 0.999 and relative ones tend to 0."""
    t0 = time.perf_counter()
    radii = np.array([0.9, 0.99, 0.999])
    d, F = UnitDisc(), IdentityMap()
    m = np.array([geometric_inequality_margin(d, F, r) for r in radii])
    rel = np.array([relative_margin(d, F, r) for r in radii])
    decreasing = np.concatenate([m[:-1] - m[1:], rel[:-1] - rel[1:]])
    rep = _finish("geometric.disc-asymptote", decreasing, 1e-15, {"radii": radii}, cfg, t0,
                  notes={"margins": m, "relative_margins": rel})
    return rep, {"radius": radii, "margin": m, "relative_margin": rel}


def check_l_shape(cfg: SuiteConfig) -> Outcome:
    """Negative control: the non-convex L-shape must show a violating point.

    The reported margin is ``-min(margin)``, nonnegative when a violation
    was found.
    """
    t0 = time.perf_counter()
    poly = l_shape()
    F = sc_map(poly)
    z = poly.sample_interior(cfg.points, 1e-3 * poly.diameter, cfg.seed)
    margin = np.asarray(F.density(z)) - 0.5 / poly.boundary_distance(z)
    found = -float(np.min(margin))
    rep = _finish("geometric.l-shape-control", [found], 0.0, {"domain": "L-shape", "gate": False},
                  cfg, t0, notes={"violations": int(np.sum(margin < 0))})
    return rep, {"x": z.real, "y": z.imag, "margin": margin}


# -- functionals ----------------------------------------------------------------------

def _trial_suite(cfg: SuiteConfig):
    from .trial import catalog_trials, random_trial

    out = dict(catalog_trials())
    for k, u in enumerate(moser_family(cfg.concentrations, tol=cfg.tol)):
        out[f"moser-{k:02d}"] = u
    for s in range(10):
        out[f"random-{s:02d}"] = random_trial(cfg.seed + s)
    return out


def check_norm_identity(cfg: SuiteConfig) -> Outcome:
    t0 = time.perf_counter()
    gate = 1e-6
    names, rel, eu, hy = [], [], [], []
    for name, u in _trial_suite(cfg).items():
        r = norm_identity_check(u, cfg.tol)
        names.append(name)
        rel.append(r.relative_difference)
        eu.append(r.euclidean)
        hy.append(r.hyperbolic)
    rel = np.array(rel)
    rep = _finish("functionals.norm-identity", gate - rel, 0.0, {"gate": gate, "trials": names},
                  cfg, t0, scale=gate)
    return rep, {"trial": np.arange(rel.size), "euclidean": eu, "hyperbolic": hy,
                 "margin": gate - rel}


def check_plain_exp(cfg: SuiteConfig) -> Outcome:
    t0 = time.perf_counter()
    gate = 1e-8
    disc = UnitDisc()
    gaps = [plain_exp_integral(u, disc, cfg.tol).relative_gap for u in _trial_suite(cfg).values()]
    gaps = np.array(gaps)
    rep = _finish("functionals.plain-exp", gate - gaps, 0.0, {"gate": gate}, cfg, t0, scale=gate)
    return rep, {"trial": np.arange(gaps.size), "relative_gap": gaps, "margin": gate - gaps}


def check_moser_constants(cfg: SuiteConfig) -> list[Outcome]:
    """Level-set area, restricted remainder, weight chain and Hardy ordering on the Moser suite."""
    t0 = time.perf_counter()
    fam = moser_family(cfg.concentrations, tol=cfg.tol)
    L = np.array(cfg.concentrations, dtype=float)
    disc = UnitDisc()
    lv, l4, rem, rhs, dw, ww, hc, hd = ([] for _ in range(8))
    for u in fam:
        lv.append(level_set_measure(u, 1.0, cfg.tol).value)
        rb = remainder_bound_check(u, cfg.tol)
        rem.append(rb.lhs)
        rhs.append(rb.rhs)
        l4.append(rb.l4)
        dw.append(tm_defect(u, "disc", tol=cfg.tol).value)
        ww.append(tm_defect(u, "distance", disc, cfg.tol).value)
        hc.append(hardy_norm_convex(u, disc, cfg.tol).value)
        hd.append(hardy_norm_disc(u, cfg.tol).value)
    lv, l4, rem, rhs, dw, ww, hc, hd = map(np.array, (lv, l4, rem, rhs, dw, ww, hc, hd))
    budget = 1e-8
    params = {"concentrations": L}
    chain = np.minimum(l4 - lv, LEVEL_SET_BOUND - l4)
    out = [
        (_finish("functionals.level-set", LEVEL_SET_BOUND - lv, budget, params, cfg, t0),
         {"concentration": L, "level_set_measure": lv, "l4": l4, "margin": LEVEL_SET_BOUND - lv}),
        (_finish("functionals.level-set-chain", chain, budget, params, cfg, t0),
         {"concentration": L, "level_set_measure": lv, "l4": l4, "margin": chain}),
        (_finish("functionals.remainder", rhs - rem, budget, params, cfg, t0),
         {"concentration": L, "lhs": rem, "rhs": rhs, "margin": rhs - rem}),
        (_finish("functionals.weight-chain", 4.0 * dw - ww, budget, params, cfg, t0),
         {"concentration": L, "disc_weight": dw, "distance_weight": ww, "margin": 4.0 * dw - ww}),
        (_finish("functionals.hardy-ordering", hc - hd, budget, params, cfg, t0),
         {"concentration": L, "hardy_convex": hc, "hardy_disc": hd, "margin": hc - hd}),
    ]
    return out


def check_sharpness(cfg: SuiteConfig) -> Outcome:
    """Exploratory: margin is ``final(4.4 pi) - 10 cap`` (infinite on overflow)."""
    t0 = time.perf_counter()
    L = list(cfg.concentrations)
    crit = sharpness_sweep(4.0 * math.pi, L, tol=max(cfg.tol, 1e-9))
    over = sharpness_sweep(4.4 * math.pi, L, tol=max(cfg.tol, 1e-9))
    cap = crit.max_value
    margin = math.inf if over.overflow_at is not None else over.final_value - 10.0 * cap
    rep = _finish("functionals.sharpness", [margin], 0.0, {"betas": ["4pi", "4.4pi"]}, cfg, t0,
                  scale=1.0, notes={"cap": cap, "final_supercritical": over.final_value,
                                    "overflow_at": over.overflow_at, "exploratory": True})
    n = len(over.values)
    return rep, {"concentration": over.concentrations,
                 "tm_critical": crit.values[:n], "tm_supercritical": over.values,
                 "margin": [v - 10.0 * cap for v in over.values]}


# -- Beckner ---------------------------------------------------------------------------

def check_beckner(cfg: SuiteConfig, variant: str) -> Outcome:
    from .trial import random_trial

    t0 = time.perf_counter()
    res = [beckner_check(random_trial(cfg.seed + s), variant, cfg.tol) for s in range(cfg.trials)]
    margin = np.array([r.margin for r in res])
    budget = max(1e-6, max(r.error_budget for r in res))
    rep = _finish(f"beckner.{variant.replace('/', '_')}", margin, budget,
                  {"variant": variant, "trials": cfg.trials}, cfg, t0)
    return rep, {"trial": np.arange(margin.size), "lhs": [r.lp_norm_sq for r in res],
                 "rhs": [r.rhs for r in res], "margin": margin}


def check_beckner_transfer(cfg: SuiteConfig) -> Outcome:
    from .trial import halfplane_bump, halfplane_moser

    t0 = time.perf_counter()
    gate = 1e-6
    rng = np.random.default_rng(cfg.seed)
    rel = []
    for k in range(5):
        y = float(rng.uniform(0.5, 3.0))
        c = complex(rng.normal(), y)
        r = float(rng.uniform(0.2, 0.9)) * y
        F = halfplane_bump(c, r, float(rng.choice([2.0, 3.0]))) if k % 2 == 0 else \
            halfplane_moser(c, r * math.exp(-rng.uniform(0.5, 4.0)), r)
        rel.append(max(beckner_transfer_check(F, v, cfg.tol).relative_difference
                       for v in BECKNER_VARIANTS))
    rel = np.array(rel)
    rep = _finish("beckner.cayley-transfer", gate - rel, 0.0, {"gate": gate}, cfg, t0, scale=gate)
    return rep, {"trial": np.arange(rel.size), "relative_difference": rel, "margin": gate - rel}


# -- registry ----------------------------------------------------------------------

def _geometric_checks(cfg: SuiteConfig) -> list[Callable[[SuiteConfig], list[Outcome]]]:
    def make(entry):
        def run(c):
            main, trip = geometric_check(*entry, c)
            return [main] + ([trip] if trip else [])
        return run
    return [make(e) for e in _domains(cfg)] + [lambda c: [check_disc_asymptote(c)],
                                                 lambda c: [check_l_shape(c)]]


def _wrap(f):
    return lambda c: [f(c)]


def suite_checks(name: str, cfg: SuiteConfig) -> list[Callable[[SuiteConfig], list[Outcome]]]:
    """The check runners of one suite (``all`` concatenates every suite)."""
    if name == ALL:
        return [c for s in SUITES for c in suite_checks(s, cfg)]
    if name == "kernel-bounds":
        return [_wrap(check_kernel_bounds), _wrap(check_kernel_substitutions),
                _wrap(check_subordination), _wrap(check_heat_mass)]
    if name == "rearrangement":
        return [_wrap(check_round_trip), _wrap(check_star_sup), _wrap(check_tail_energy)]
    if name == "adams-pipeline":
        return [_wrap(check_transform_identities), _wrap(check_isometry),
                _wrap(check_adams_kernel), _wrap(check_exp_integral)]
    if name == "geometric":
        return _geometric_checks(cfg)
    if name == "functionals":
        return [_wrap(check_norm_identity), _wrap(check_plain_exp), check_moser_constants,
                _wrap(check_sharpness)]
    if name == "beckner":
        return [_wrap(lambda c, v=v: check_beckner(c, v)) for v in BECKNER_VARIANTS] + \
            [_wrap(check_beckner_transfer)]
    raise ConfigError(f"unknown suite {name!r}; choose from {list(SUITES) + [ALL]}")


def _run_one(args) -> list[Outcome]:
    name, index, cfg = args
    return suite_checks(name, cfg)[index](cfg)


def run_checks(name: str, cfg: SuiteConfig, jobs: int = 1) -> list[Outcome]:
    """Run a suite, optionally in worker processes; results are ordered by ``check_id``."""
    checks = suite_checks(name, cfg)
    if jobs > 1 and len(checks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_run_one, [(name, i, cfg) for i in range(len(checks))]))
    else:
        parts = [c(cfg) for c in checks]
    outcomes = [o for part in parts for o in part]
    return sorted(outcomes, key=lambda o: o[0].check_id)


def polygon_outcomes(path: str, cfg: SuiteConfig) -> list[Outcome]:
    """Geometric inequality and round trip for one polygon file.

    Non-convex polygons are mapped too; the inequality is then expected to fail.
    """
    poly = load_polygon(path)
    main, trip = geometric_check(
        poly.name, poly, lambda d: sc_map(d, max(cfg.tol, 1e-13)),
        lambda n, rng: poly.sample_interior(n, 1e-3 * poly.diameter, int(rng.integers(2 ** 31))),
        cfg)
    return [main] + ([trip] if trip else [])


__all__ = ["SUITES", "ALL", "SuiteConfig", "suite_checks", "run_checks", "polygon_outcomes",
           "geometric_check"]
