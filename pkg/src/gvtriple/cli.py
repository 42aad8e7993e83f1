"""Config-driven verification CLI.

Single binary with subcommands:

- ``verify``: run a verification suite (clifford, holonomy, forms,
  algebra, cocycles, all, or the deliberately failing negative suite),
  write a JSON report and a CSV summary, exit 0 iff every check passes;
- ``eval-cocycle``: evaluate one of the cocycles (cgv, cmgv, chern) on
  configured or seeded-random kernels;
- ``residue``: sample z * I(1+2z) on a z-list and Richardson-extrapolate;
- ``forms``: print the exact jet-form identities and their status;
- ``report``: re-render an existing JSON report as a CSV summary.

Configuration is a TOML file (JSON accepted as an alternate encoding)
holding the group generators, word-equality mode, quadrature settings,
seed, and optional named kernels.  Fixed seed implies bitwise-identical
report files.  GVTRIPLE_THREADS caps quadrature worker threads.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

import numpy as np

from . import clifford, cocycles, convalg, holonomy, jetforms
from .diffeo import DiffeoGroup, GroupWord, make_generator, random_word


class ConfigError(ValueError):
    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("invalid configuration:\n" + "\n".join(self.errors))


DEFAULT_GENERATORS = (
    {"kind": "rotation", "alpha": 0.37},
    {"kind": "perturbation", "eps": 0.6, "m": 1},
)

DEFAULT_QUADRATURE = {"panel_order": 32, "max_levels": 12, "rel_tol": 1e-9}

SUITES = ("clifford", "holonomy", "forms", "algebra", "cocycles", "all",
          "negative")


class ExperimentConfig:
    """Validated experiment description: group, quadrature, seed, kernels."""

    def __init__(self, generators=DEFAULT_GENERATORS, equality_mode="free",
                 quadrature=None, seed=7, suite="all", kernels=None,
                 tol_scale=1.0, out=None):
        self.generator_specs = [dict(g) for g in generators]
        self.equality_mode = equality_mode
        self.quadrature = dict(DEFAULT_QUADRATURE)
        if quadrature:
            self.quadrature.update(quadrature)
        self.seed = int(seed)
        self.suite = suite
        self.kernel_specs = dict(kernels or {})
        self.tol_scale = float(tol_scale)
        self.out = out
        self._group = None

    @property
    def group(self) -> DiffeoGroup:
        if self._group is None:
            self._group = DiffeoGroup(
                [make_generator(spec) for spec in self.generator_specs]
            )
        return self._group

    def to_json(self):
        return {
            "group": {
                "generators": self.generator_specs,
                "equality_mode": self.equality_mode,
            },
            "quadrature": self.quadrature,
            "seed": self.seed,
            "suite": self.suite,
            "tol_scale": self.tol_scale,
            "kernels": self.kernel_specs,
        }

    def build_kernel(self, name) -> convalg.Kernel:
        spec = self.kernel_specs[name]
        group = self.group
        terms = {}
        for term in spec["terms"]:
            word = group.word([tuple(l) for l in term["word"]])
            trig = [(t["k"], complex(t.get("re", 0.0), t.get("im", 0.0)))
                    for t in term["trig"]]
            c_bump = None
            if "c_bump" in term:
                c_bump = (term["c_bump"]["c0"], term["c_bump"]["s"])
            eta_bump = term.get("eta_bump")
            if isinstance(eta_bump, dict):
                eta_bump = (eta_bump["e0"], eta_bump["s"])
            fiber = convalg.fiber_from_descriptor(
                spec["space"], trig, c_bump, eta_bump
            )
            if word in terms:
                raise ConfigError([f"kernel {name!r}: duplicate word"])
            terms[word] = fiber
        return convalg.Kernel(spec["space"], group, terms)


def _validate(raw):
    errors = []
    if not isinstance(raw, dict):
        return ["top level must be a table"]
    known = {"group", "quadrature", "seed", "suite", "tol_scale", "kernels"}
    for key in raw:
        if key not in known:
            errors.append(f"unknown top-level key {key!r}")
    group = raw.get("group", {})
    for i, gen in enumerate(group.get("generators", [])):
        kind = gen.get("kind")
        if kind == "rotation":
            if "alpha" not in gen:
                errors.append(f"group.generators[{i}]: rotation needs alpha")
        elif kind == "perturbation":
            eps = gen.get("eps")
            if eps is None or not abs(float(eps)) < 1.0:
                errors.append(
                    f"group.generators[{i}]: perturbation needs |eps| < 1 "
                    f"(got {eps!r}), otherwise it is not a diffeomorphism"
                )
        elif kind == "mobius":
            a, b, c, d = (gen.get(k) for k in "abcd")
            if None in (a, b, c, d):
                errors.append(f"group.generators[{i}]: mobius needs a,b,c,d")
            elif abs(a * d - b * c - 1.0) > 1e-9:
                errors.append(f"group.generators[{i}]: need ad - bc = 1")
        else:
            errors.append(f"group.generators[{i}]: unknown kind {kind!r}")
    mode = group.get("equality_mode", "free")
    if mode not in ("free", "fingerprint"):
        errors.append(f"group.equality_mode: unknown mode {mode!r}")
    quad = raw.get("quadrature", {})
    for key, val in quad.items():
        if key not in DEFAULT_QUADRATURE:
            errors.append(f"quadrature.{key}: unknown setting")
        elif key != "rel_tol" and (not isinstance(val, int) or val <= 0):
            errors.append(f"quadrature.{key}: must be a positive integer")
    suite = raw.get("suite", "all")
    if suite not in SUITES:
        errors.append(f"suite: must be one of {', '.join(SUITES)}")
    for name, spec in raw.get("kernels", {}).items():
        if spec.get("space") not in convalg.SPACES:
            errors.append(f"kernels.{name}.space: must be one of V, Q, Hstar")
            continue
        for j, term in enumerate(spec.get("terms", [])):
            where = f"kernels.{name}.terms[{j}]"
            if "word" not in term or "trig" not in term:
                errors.append(f"{where}: needs word and trig")
            if spec["space"] in ("Q", "Hstar") and "c_bump" not in term:
                errors.append(f"{where}: needs c_bump on {spec['space']}")
    return errors


def parse_config(path) -> ExperimentConfig:
    if path is None:
        return ExperimentConfig()
    try:
        with open(path, "rb") as fh:
            if str(path).endswith(".json"):
                raw = json.load(fh)
            else:
                raw = tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError([f"config file not found: {path}"])
    except (tomllib.TOMLDecodeError, json.JSONDecodeError) as exc:
        raise ConfigError([f"{path}: {exc}"])
    errors = _validate(raw)
    if errors:
        raise ConfigError(errors)
    group = raw.get("group", {})
    return ExperimentConfig(
        generators=group.get("generators", DEFAULT_GENERATORS),
        equality_mode=group.get("equality_mode", "free"),
        quadrature=raw.get("quadrature"),
        seed=raw.get("seed", 7),
        suite=raw.get("suite", "all"),
        kernels=raw.get("kernels"),
        tol_scale=raw.get("tol_scale", 1.0),
    )


# ---------------------------------------------------------------------------
# seeded fixtures shared by the suites
# ---------------------------------------------------------------------------


def _support_words(group, max_len=2):
    """Identity, generators, inverses, and a few length-2 words (including
    a repeated non-affine letter, which the 2-cocycle bracket needs)."""
    e = GroupWord.identity()
    a = group.word([(0, 1)])
    b = group.word([(1, 1)]) if len(group.generators) > 1 else a
    words = [e, a, a.inverse(), b, b.inverse()]
    if max_len >= 2:
        for w in (b * b, a * b, b * a):
            words.extend([w, w.inverse()])
    seen = []
    for w in words:
        if w not in seen:
            seen.append(w)
    return seen


def _check(suite, identity, defect, tol, samples=None):
    entry = {
        "suite": suite,
        "identity": identity,
        "max_defect": float(defect),
        "tolerance": float(tol),
        "pass": bool(float(defect) < float(tol)),
    }
    if samples is not None:
        entry["samples"] = int(samples)
    return entry


def suite_clifford(cfg: ExperimentConfig):
    ts = cfg.tol_scale
    rep = clifford.verify_functoriality(n_maps=200, seed=cfg.seed,
                                        tol=1e-10 * ts)
    return [
        _check("clifford", "pushforward square on all blades",
               rep["square_defect"], 1e-10 * ts, rep["samples"]),
        _check("clifford", "pushforward compatibility with c_L and c_R",
               rep["action_defect"], 1e-10 * ts, rep["samples"]),
    ]


def suite_holonomy(cfg: ExperimentConfig):
    ts = cfg.tol_scale
    group = cfg.group
    checks = []
    for rep in holonomy.verify_transformation_laws(
        group, n_pairs=500, seed=cfg.seed, tol=1e-8 * ts
    ):
        checks.append(_check("holonomy", rep["identity"], rep["max_defect"],
                             1e-8 * ts, rep["samples"]))
    rep = holonomy.verify_action_laws(group, seed=cfg.seed + 1, tol=1e-9 * ts)
    checks.append(_check("holonomy", rep["identity"], rep["max_defect"],
                         1e-9 * ts, rep["samples"]))
    rep = holonomy.verify_ell_consistency(
        group, _support_words(group), tol=1e-9 * ts
    )
    checks.append(_check("holonomy", rep["identity"], rep["max_defect"],
                         1e-9 * ts, rep["samples"]))
    return checks


def suite_forms(cfg: ExperimentConfig, perturb=False):
    ts = cfg.tol_scale
    checks = []
    for name, _res, ok in jetforms.check_jet_equations():
        checks.append(_check("forms", f"exact jet equation {name} = 0",
                             0.0 if ok else 1.0, 0.5))
    for name, _res, ok in jetforms.check_structure_equations(perturb=perturb):
        label = "perturbed " if perturb else ""
        checks.append(_check("forms", f"{label}structure equation {name} = 0",
                             0.0 if ok else 1.0, 0.5))
    gv_conn, gv_triple, ref = jetforms.godbillon_vey_form()
    checks.append(_check("forms", "-w1^dw1 equals (1/u1^3) du0^du1^du2",
                         0.0 if (gv_conn - ref).is_zero() else 1.0, 0.5))
    checks.append(_check("forms", "w0^w1^w2 equals (1/u1^3) du0^du1^du2",
                         0.0 if (gv_triple - ref).is_zero() else 1.0, 0.5))
    rep = jetforms.adjudicate_dodgys(jetforms.default_dodgys_families())
    checks.append(_check("forms", "jet coefficient fit (1, 2)",
                         rep["defect_12"], 1e-7 * ts, rep["n_families"]))
    checks.append(_check("forms", "rejection margin for coefficients (2, 3)",
                         max(0.0, 1e-2 - rep["defect_23"]), 1e-2,
                         rep["n_families"]))
    return checks


def suite_algebra(cfg: ExperimentConfig):
    ts = cfg.tol_scale
    group = cfg.group
    rng = np.random.default_rng(cfg.seed + 10)
    words = _support_words(group, max_len=1)
    a = convalg.random_kernel("Q", group, words[:3], rng)
    b = convalg.random_kernel("Q", group, words[1:4], rng)
    c = convalg.random_kernel("Q", group, words[2:5], rng)
    rho = convalg.random_kernel("Hstar", group, words[:3], rng)
    checks = []

    assoc = convalg.kernel_max_defect(
        convalg.convolve(convalg.convolve(a, b), c),
        convalg.convolve(a, convalg.convolve(b, c)),
        seed=cfg.seed + 11,
    )
    checks.append(_check("algebra", "convolution associativity",
                         assoc, 1e-9 * ts, 200))

    unit = convalg.Kernel.unit("Q", group)
    unit_defect = max(
        convalg.kernel_max_defect(convalg.convolve(a, unit), a,
                                  seed=cfg.seed + 12),
        convalg.kernel_max_defect(convalg.convolve(unit, a), a,
                                  seed=cfg.seed + 13),
    )
    checks.append(_check("algebra", "unit kernel is a two-sided unit",
                         unit_defect, 1e-12 * ts, 200))

    invol = max(
        convalg.kernel_max_defect(
            convalg.involution(convalg.involution(a)), a, seed=cfg.seed + 14
        ),
        convalg.kernel_max_defect(
            convalg.involution(convalg.convolve(a, b)),
            convalg.convolve(convalg.involution(b), convalg.involution(a)),
            seed=cfg.seed + 15,
        ),
    )
    checks.append(_check("algebra", "involution is an anti-automorphism",
                         invol, 1e-9 * ts, 200))

    t_ab, _ = convalg.trace_Q(convalg.convolve(a, b))
    t_ba, _ = convalg.trace_Q(convalg.convolve(b, a))
    checks.append(_check("algebra", "trace vanishes on commutators",
                         abs(t_ab - t_ba), 5e-8 * ts))

    deriv = convalg.kernel_max_defect(
        convalg.delta1(convalg.convolve(a, b)),
        convalg.convolve(convalg.delta1(a), b)
        + convalg.convolve(a, convalg.delta1(b)),
        seed=cfg.seed + 16,
    )
    checks.append(_check("algebra", "delta_1 is a derivation of the product",
                         deriv, 1e-8 * ts, 200))

    try:
        _, rep = convalg.commutator_B(a, rho, n_points=200,
                                      seed=cfg.seed + 17, tol=1e-9 * ts)
        checks.append(_check("algebra", rep["identity"], rep["max_defect"],
                             1e-9 * ts, rep["samples"]))
    except convalg.IdentityViolation:
        checks.append(_check("algebra", "[B, a] = delta_1(a) as operators",
                             math.inf, 1e-9 * ts, 200))

    arrow_rng = np.random.default_rng(cfg.seed + 18)
    worst = {"b1_constant_defect": 0.0, "b_eta_independence": 0.0,
             "b_constant_match": 0.0}
    for _ in range(3):
        u = holonomy.GroupoidArrow(group, float(arrow_rng.uniform()),
                                   random_word(group, arrow_rng, max_len=3))
        rep = convalg.check_B1_equivariance(u, tol=1e-9 * ts)
        for key in worst:
            worst[key] = max(worst[key], rep[key])
    checks.append(_check("algebra",
                         "B1 twists by the constant log Delta(u)",
                         worst["b1_constant_defect"], 1e-9 * ts))
    checks.append(_check("algebra",
                         "B twist is eta-independent",
                         worst["b_eta_independence"], 1e-9 * ts))
    checks.append(_check("algebra",
                         "B twist equals e^c delta(u^{-1})",
                         worst["b_constant_match"], 1e-9 * ts))

    for s in (1.5, 2.0, 2.5):
        va = convalg.resolvent_weighted_trace(a, s, method="factorized")
        vb = convalg.resolvent_weighted_trace(a, s, method="direct")
        checks.append(_check("algebra",
                             f"summability trace factorized vs direct, s={s}",
                             abs(va - vb) / max(abs(va), 1e-30), 1e-6 * ts))
    checks.append(_check("algebra", "resolvent integral I(2) = pi",
                         abs(convalg.resolvent_integral(2.0) - math.pi),
                         1e-10 * ts))
    return checks


def _cocycle_fixtures(cfg: ExperimentConfig, rng):
    group = cfg.group
    words = _support_words(group, max_len=2)
    fs = [convalg.random_kernel("V", group, words, rng, trig_deg=1)
          for _ in range(4)]
    q_words = [w for w in words if len(w) <= 1][:4]
    qs = [convalg.random_kernel("Q", group, q_words, rng, trig_deg=1)
          for _ in range(3)]
    return fs, qs


def suite_cocycles(cfg: ExperimentConfig, drop_term=False):
    ts = cfg.tol_scale
    rng = np.random.default_rng(cfg.seed + 20)
    fs, qs = _cocycle_fixtures(cfg, rng)
    checks = []
    label = "bracket-term-dropped " if drop_term else ""
    tol2 = (1e-3 if drop_term else 1e-6) * ts
    rep = cocycles.check_cyclic2(*fs, tol=tol2, drop_term=drop_term)
    for chk in rep.checks:
        checks.append(_check("cocycles", label + chk["identity"],
                             chk["max_defect"], tol2))
    if drop_term:
        return checks

    rep = cocycles.eval_cmgv(qs[0], qs[1], tol=1e-8 * ts)
    for chk in rep.checks:
        checks.append(_check("cocycles", chk["identity"], chk["max_defect"],
                             1e-8 * ts))
    rep = cocycles.check_cyclic1(qs[0], qs[1], qs[2], tol=5e-7 * ts)
    for chk in rep.checks:
        checks.append(_check("cocycles", chk["identity"], chk["max_defect"],
                             5e-7 * ts))

    group = cfg.group
    q_words = [w for w in _support_words(group, max_len=2) if len(w) <= 1]
    for i in range(5):
        a0 = convalg.random_kernel("Q", group, q_words[:3], rng, trig_deg=1)
        a1 = convalg.random_kernel("Q", group, q_words[:3], rng, trig_deg=1)
        rep = cocycles.chern_character(a0, a1, agreement_tol=0.01 * ts)
        chk = rep.checks[0]
        checks.append(_check("cocycles",
                             f"{chk['identity']} (pair {i})",
                             chk["max_defect"], 0.01 * ts))
    rep = cocycles.residue_limit_check(tol=1e-4 * ts)
    chk = rep.checks[0]
    checks.append(_check("cocycles", chk["identity"], chk["max_defect"],
                         1e-4 * ts))
    return checks


def suite_negative(cfg: ExperimentConfig):
    """Deliberately broken identities; every check here must FAIL."""
    checks = []
    for chk in suite_forms(cfg, perturb=True):
        # the w1 bump is visible only in the first structure equation
        if chk["identity"].startswith("perturbed structure equation dw0"):
            chk["suite"] = "negative"
            checks.append(chk)
    rep = jetforms.adjudicate_dodgys(jetforms.default_dodgys_families())
    checks.append(_check("negative", "jet coefficient fit against (2, 3)",
                         rep["defect_23"], 1e-7 * cfg.tol_scale,
                         rep["n_families"]))
    for chk in suite_cocycles(cfg, drop_term=True):
        chk["suite"] = "negative"
        checks.append(chk)
    return checks


SUITE_RUNNERS = {
    "clifford": suite_clifford,
    "holonomy": suite_holonomy,
    "forms": suite_forms,
    "algebra": suite_algebra,
    "cocycles": suite_cocycles,
    "negative": suite_negative,
}


def run_suite(cfg: ExperimentConfig):
    """Execute the configured suite; returns (exit_status, report dict)."""
    names = (
        ["clifford", "holonomy", "forms", "algebra", "cocycles"]
        if cfg.suite == "all"
        else [cfg.suite]
    )
    checks = []
    for name in names:
        checks.extend(SUITE_RUNNERS[name](cfg))
    all_pass = all(c["pass"] for c in checks)
    report = {
        "config": cfg.to_json(),
        "checks": checks,
        "pass": all_pass,
    }
    return (0 if all_pass else 1), report


# ---------------------------------------------------------------------------
# report emission
# ---------------------------------------------------------------------------


def _dump_json(report, path):
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def summary_csv(report):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["suite", "identity", "max_defect", "tolerance", "pass"])
    for chk in report.get("checks", []):
        writer.writerow([
            chk.get("suite", ""),
            chk["identity"],
            repr(chk["max_defect"]),
            repr(chk.get("tolerance", "")),
            chk["pass"],
        ])
    return buf.getvalue()


def _write_reports(report, out):
    _dump_json(report, out)
    if out is not None:
        csv_path = out[:-5] + ".csv" if out.endswith(".json") else out + ".csv"
        with open(csv_path, "w") as fh:
            fh.write(summary_csv(report))


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _add_common(p):
    p.add_argument("--config", default=None, help="TOML (or JSON) config file")
    p.add_argument("--out", default=None, help="output JSON report path")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol-scale", type=float, default=None,
                   help="global tolerance multiplier")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gvtriple",
        description="verification toolkit for the Godbillon-Vey cocycles",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a verification suite")
    _add_common(p)
    p.add_argument("--suite", choices=SUITES, default=None)

    p = sub.add_parser("eval-cocycle", help="evaluate one cocycle")
    _add_common(p)
    p.add_argument("--cocycle", choices=("cgv", "cmgv", "chern"),
                   required=True)

    p = sub.add_parser("residue", help="residue extrapolation of z*I(1+2z)")
    _add_common(p)
    p.add_argument("--zs", default="0.2,0.1,0.05,0.025",
                   help="comma list, geometric sequence")

    p = sub.add_parser("forms", help="exact jet-form identities")
    _add_common(p)

    p = sub.add_parser("report", help="re-render a JSON report as CSV")
    p.add_argument("--config", default=None, help=argparse.SUPPRESS)
    p.add_argument("report_json")
    p.add_argument("--out", default=None)
    return parser


def _load_config(args):
    cfg = parse_config(getattr(args, "config", None))
    if getattr(args, "seed", None) is not None:
        cfg.seed = args.seed
    if getattr(args, "suite", None) is not None:
        cfg.suite = args.suite
    if getattr(args, "tol_scale", None) is not None:
        cfg.tol_scale = args.tol_scale
    return cfg


def _cmd_verify(args):
    cfg = _load_config(args)
    status, report = run_suite(cfg)
    _write_reports(report, args.out)
    n = len(report["checks"])
    n_pass = sum(1 for c in report["checks"] if c["pass"])
    print(f"suite {cfg.suite}: {n_pass}/{n} checks passed", file=sys.stderr)
    return status


def _cmd_eval_cocycle(args):
    cfg = _load_config(args)
    rng = np.random.default_rng(cfg.seed + 30)
    group = cfg.group

    def kernel(name, space, words):
        if name in cfg.kernel_specs:
            return cfg.build_kernel(name)
        return convalg.random_kernel(space, group, words, rng, trig_deg=1)

    if args.cocycle == "cgv":
        words = _support_words(group, max_len=2)
        rep = cocycles.eval_cgv(
            kernel("f0", "V", words), kernel("f1", "V", words),
            kernel("f2", "V", words), equality_mode=cfg.equality_mode,
        )
    else:
        words = [w for w in _support_words(group, max_len=2) if len(w) <= 1]
        a0 = kernel("a0", "Q", words[:3])
        a1 = kernel("a1", "Q", words[:3])
        if args.cocycle == "cmgv":
            rep = cocycles.eval_cmgv(a0, a1)
        else:
            rep = cocycles.chern_character(a0, a1)
    report = {"cocycle": args.cocycle, "config": cfg.to_json(),
              **rep.to_json()}
    _write_reports(report, args.out)
    return 0 if rep.all_pass() else 1


def _cmd_residue(args):
    cfg = _load_config(args)
    zs = tuple(float(z) for z in args.zs.split(","))
    rep = cocycles.residue_limit_check(zs=zs, tol=1e-4 * cfg.tol_scale)
    report = {"config": cfg.to_json(), **rep.to_json()}
    _write_reports(report, args.out)
    return 0 if rep.all_pass() else 1


def _cmd_forms(args):
    cfg = _load_config(args)
    checks = suite_forms(cfg)
    report = {"config": cfg.to_json(), "checks": checks,
              "pass": all(c["pass"] for c in checks)}
    gv_conn, gv_triple, ref = jetforms.godbillon_vey_form()
    report["godbillon_vey_form"] = repr(ref)
    _write_reports(report, args.out)
    return 0 if report["pass"] else 1


def _cmd_report(args):
    with open(args.report_json) as fh:
        report = json.load(fh)
    text = summary_csv(report)
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    handlers = {
        "verify": _cmd_verify,
        "eval-cocycle": _cmd_eval_cocycle,
        "residue": _cmd_residue,
        "forms": _cmd_forms,
        "report": _cmd_report,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except (convalg.QuadratureError, convalg.IdentityViolation,
            cocycles.ResidueFailure) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
