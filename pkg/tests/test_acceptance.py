"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL ...`` line; the lines are
also collected and repeated in the terminal summary.
"""

import time

import pytest

from tmlab.suites import SuiteConfig, run_checks

RESULTS: dict[int, str] = {}


def _record(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
    RESULTS[n] = line
    print(line)


@pytest.fixture(scope="module")
def suites():
    cache = {}

    def get(name):
        if name not in cache:
            t0 = time.perf_counter()
            out = run_checks(name, SuiteConfig())
            cache[name] = ({r.check_id: (r, s) for r, s in out}, time.perf_counter() - t0)
        return cache[name]
    return get


def _passed(reports, *ids):
    return all(reports[i][0].status == "pass" for i in ids)


def test_criterion_1_kernel_bounds(suites):
    reps, elapsed = suites("kernel-bounds")
    b, s = reps["kernel-bounds.bounds"][0], reps["kernel-bounds.substitutions"][0]
    ok = (b.n_samples == 200 and b.min_margin >= -1e-9 and s.min_margin >= 0
          and _passed(reps, "kernel-bounds.bounds", "kernel-bounds.substitutions") and elapsed < 10)
    _record(1, ok, f"min_margin={b.min_margin:.3g} max_disagreement={1e-9 - s.min_margin:.2g} "
                   f"suite_time={elapsed:.1f}s")
    assert ok


def test_criterion_2_subordination_and_heat_mass(suites):
    reps, _ = suites("kernel-bounds")
    sub, heat = reps["kernel-bounds.subordination"][0], reps["kernel-bounds.heat-mass"][0]
    rel = max(reps["kernel-bounds.subordination"][1]["relative_difference"])
    dev = max(abs(m - 1.0) for m in reps["kernel-bounds.heat-mass"][1]["mass"])
    ok = (sub.n_samples == 5 and heat.n_samples == 3 and sub.min_margin >= 0
          and heat.min_margin >= 0)
    _record(2, ok, f"max_subordination_rel={rel:.2g} max_mass_deviation={dev:.2g}")
    assert ok


def test_criterion_3_rearrangement(suites):
    reps, _ = suites("rearrangement")
    rt, sup, te = (reps[f"rearrangement.{k}"][0] for k in ("round-trip", "sup-bound", "tail-energy"))
    ok = (rt.n_samples == 50 and rt.min_margin >= 0 and sup.min_margin >= -1e-9
          and te.min_margin >= 0 and te.notes["error_estimate"] <= 1e-6)
    _record(3, ok, f"round_trip_max_rel={1e-8 - rt.min_margin:.2g} sup_margin={sup.min_margin:.3g} "
                   f"tail_energy={te.notes['value']:.6g}+-{te.notes['error_estimate']:.2g}")
    assert ok


def test_criterion_4_adams_pipeline(suites):
    reps, elapsed = suites("adams-pipeline")
    ids = ["adams-pipeline.identities", "adams-pipeline.isometry",
           "adams-pipeline.kernel-hypotheses", "adams-pipeline.exp-integral"]
    idn = reps[ids[0]][0]
    ok = _passed(reps, *ids) and idn.n_samples == 150 and reps[ids[3]][0].n_samples == 20 \
        and elapsed < 60
    hyp = reps[ids[2]][0].notes
    _record(4, ok, f"identity_max_rel={1e-6 - idn.min_margin:.2g} "
                   f"isometry_max_rel={1e-8 - reps[ids[1]][0].min_margin:.2g} "
                   f"sup={hyp['sup']:.12g} b={hyp['b']:.4g} suite_time={elapsed:.1f}s")
    assert ok


def test_criterion_5_geometric(suites):
    reps, elapsed = suites("geometric")
    domains = [k for k in reps if k.count(".") == 1 and k not in
               ("geometric.disc-asymptote", "geometric.l-shape-control")]
    trips = [k for k in reps if k.endswith(".round-trip")]
    worst = min(reps[k][0].min_margin for k in domains)
    ok = (len(domains) == 10 and len(trips) == 7
          and all(reps[k][0].n_samples == 1000 for k in domains)
          and _passed(reps, *domains, *trips, "geometric.disc-asymptote", "geometric.l-shape-control")
          and elapsed < 300)
    _record(5, ok, f"domains={len(domains)} worst_margin={worst:.3g} "
                   f"asymptote={[round(float(x), 6) for x in reps['geometric.disc-asymptote'][1]['relative_margin']]} "
                   f"suite_time={elapsed:.1f}s")
    assert ok


def test_criterion_6_constant_caps(suites):
    reps, _ = suites("functionals")
    ids = ["functionals.level-set", "functionals.remainder", "functionals.weight-chain"]
    ok = _passed(reps, *ids) and all(reps[i][0].n_samples == 20 for i in ids)
    lv = max(reps[ids[0]][1]["level_set_measure"])
    rem = max(reps[ids[1]][1]["lhs"])
    _record(6, ok, f"max_level_set={lv:.3g} max_remainder={rem:.4g} "
                   f"min_chain_margin={reps[ids[2]][0].min_margin:.3g}")
    assert ok


def test_criterion_7_beckner(suites):
    reps, _ = suites("beckner")
    var = [k for k in reps if k != "beckner.cayley-transfer"]
    ok = (len(var) == 3 and all(reps[k][0].n_samples == 50 for k in var)
          and _passed(reps, *reps) and reps["beckner.cayley-transfer"][0].n_samples == 5)
    _record(7, ok, " ".join(f"{k.split('.')[1]}={reps[k][0].min_margin:.3g}" for k in var) +
            f" transfer_max_rel={1e-6 - reps['beckner.cayley-transfer'][0].min_margin:.2g}")
    assert ok


def test_criterion_8_functional_identities(suites):
    reps, _ = suites("functionals")
    ni, pe = reps["functionals.norm-identity"][0], reps["functionals.plain-exp"][0]
    ok = _passed(reps, "functionals.norm-identity", "functionals.plain-exp")
    _record(8, ok, f"trials={ni.n_samples} norm_identity_max_rel={1e-6 - ni.min_margin:.2g} "
                   f"plain_exp_max_rel={1e-8 - pe.min_margin:.2g}")
    assert ok


def test_criterion_9_sharpness_probe(suites):
    reps, _ = suites("functionals")
    r = reps["functionals.sharpness"][0]
    ok = r.min_margin >= 0
    _record(9, ok, f"(exploratory) cap_at_4pi={r.notes['cap']:.4g} "
                   f"final_at_4.4pi={r.notes['final_supercritical']:.4g} "
                   f"overflow_at={r.notes['overflow_at']}")
    assert ok
