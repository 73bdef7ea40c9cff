"""Command-line front end: catalogs, sweeps, potentials, partners, checks.

Subcommands
    catalog        seed solutions per order, CSV
    phase-diagram  (lambda0, mu0) sweep of areas/curves/solution presence, CSV
    potential      sampled V(x), CSV
    partner        Darboux partner potential and spectrum comparison
    verify         closed-form vs generic oracle suites, JSON report

All tabular output is RFC-4180 style CSV with a header row, '.' decimal
separator, and 12 significant digits; identical configs and seeds give
byte-identical files.  Exit codes: 0 ok, 1 verification failure, 2 bad
configuration.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import verify as verify_mod
from .charexp import enumerate_solutions
from .errors import BadConfig, GrefError
from .liouville import map_grid
from .params import PotentialSpec, canonicalize
from .regions import area_of, drt_curves, on_separatrix, separatrices, threshold_curves
from .seedsol import seed_wavefunction
from .susy import build_partner, isospectral_report


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation needs; built from argv, then immutable."""

    command: str
    spec_input: dict | None
    out: str | None
    seed: int
    threads: int
    options: dict = field(default_factory=dict)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.12g}"
    return str(value)


def emit_csv(rows: list[dict], schema: list[str], out: str | None) -> None:
    """Write rows under a fixed header; missing keys become empty fields."""
    def write(fh):
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(schema)
        for row in rows:
            writer.writerow([_fmt(row.get(k)) for k in schema])

    if out is None:
        write(sys.stdout)
    else:
        try:
            with open(out, "w", newline="", encoding="utf-8") as fh:
                write(fh)
        except OSError as exc:
            raise BadConfig(f"cannot write {out}: {exc}") from exc


def _load_spec(path: str | None) -> PotentialSpec:
    raw = _load_config_dict(path)
    try:
        spec = canonicalize(raw)
    except GrefError as exc:
        raise BadConfig(f"invalid spec parameters: {exc}") from exc
    # echo the canonicalized parameters without disturbing CSV streams
    print("canonicalized: " + json.dumps(spec.as_dict(), sort_keys=True), file=sys.stderr)
    return spec


def _load_config_dict(path: str | None) -> dict:
    if path is None:
        raise BadConfig("--config FILE with the potential parameters is required")
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise BadConfig(f"cannot read config {path}: {exc}") from exc


def _parse_range(text: str) -> np.ndarray:
    try:
        a, b, n = text.split(":")
        a, b, n = float(a), float(b), int(n)
    except ValueError as exc:
        raise BadConfig(f"range must be 'start:stop:count', got {text!r}") from exc
    if n < 1 or not (b >= a):
        raise BadConfig(f"empty or reversed range {text!r}")
    return np.linspace(a, b, n)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_catalog(cfg: RunConfig) -> int:
    spec = _load_spec(cfg.options["config"])
    m_max = cfg.options["m_max"]
    if m_max < 0:
        raise BadConfig("--m-max must be >= 0")
    z_nodes = np.linspace(0.1, 0.9, 9)
    schema = ["m", "type", "tag", "lam0", "lam1", "mu_signed", "eps", "nodeless", "route"]
    if cfg.options["emit_wavefunctions"]:
        schema += [f"phi_z{z:.1f}" for z in z_nodes]
    rows = []
    for m in range(m_max + 1):
        for sol in enumerate_solutions(spec, m):
            row = {
                "m": m, "type": sol.sol_type, "tag": sol.sequence_tag,
                "lam0": sol.lam0, "lam1": sol.lam1, "mu_signed": sol.mu_signed,
                "eps": sol.eps, "nodeless": sol.nodeless, "route": sol.route,
            }
            if cfg.options["emit_wavefunctions"]:
                vals = seed_wavefunction(spec, sol, z_nodes)
                row.update({f"phi_z{z:.1f}": v for z, v in zip(z_nodes, vals)})
            rows.append(row)
    rows.sort(key=lambda r: (r["m"], r["type"], r["tag"]))
    emit_csv(rows, schema, cfg.out)
    return 0


def _phase_point(tp_kwargs, lam0: float, mu0: float, m: int) -> dict:
    spec = canonicalize(dict(tp_kwargs, lambda0=lam0, mu0=mu0))
    seps = separatrices(lam0, m)
    mu_a, mu_b = threshold_curves(spec, m)
    ad_mu, bd_mu = drt_curves(spec, m)
    row = {
        "lambda0": lam0, "mu0": mu0, "m": m,
        "area": area_of(lam0, mu0, m),
        "boundary": on_separatrix(lam0, mu0, m, tol=1e-9),
        "sep_muA": seps["muA"], "sep_muB": seps["muB"], "sep_muC": seps["muC"],
        "threshold_a": _quiet(mu_a, lam0),
        "threshold_b": _quiet(mu_b, lam0),
        "ad_mu": _quiet(ad_mu, lam0),
        "bd_mu": _quiet(bd_mu, lam0),
    }
    sols = enumerate_solutions(spec, m)
    for letter in "abcd":
        members = [s for s in sols if s.sol_type == letter]
        row[f"n_{letter}"] = len(members)
        verdicts = {s.nodeless if s.nodeless != "numeric-only"
                    else ("yes" if s.interior_zeros == 0 else "no")
                    for s in members}
        row[f"nodeless_{letter}"] = "yes" if "yes" in verdicts else ("no" if members else "")
    return row


def _quiet(fn, x):
    try:
        return fn(x)
    except GrefError:
        return None


def _cmd_phase_diagram(cfg: RunConfig) -> int:
    raw = _load_config_dict(cfg.options["config"])
    tp_kwargs = {k: raw[k] for k in ("a2", "c0", "c1") if k in raw}
    if "c0" not in tp_kwargs:
        raise BadConfig("config must provide at least c0 (and a2, c1) for the sweep")
    tp_kwargs.setdefault("a2", 0.0)
    tp_kwargs.setdefault("c1", 1.0)
    m = cfg.options["m"]
    lam_grid = _parse_range(cfg.options["lambda0"])
    mu_grid = _parse_range(cfg.options["mu0"])
    points = [(l0, mu) for l0 in lam_grid for mu in mu_grid if mu > 0]
    if not points:
        raise BadConfig("sweep ranges produced no admissible points")

    def work(pt):
        return _phase_point(tp_kwargs, pt[0], pt[1], m)

    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            rows = list(pool.map(work, points))
    else:
        rows = [work(pt) for pt in points]
    rows.sort(key=lambda r: (r["lambda0"], r["mu0"]))
    schema = ["lambda0", "mu0", "m", "area", "boundary", "sep_muA", "sep_muB", "sep_muC",
              "threshold_a", "threshold_b", "ad_mu", "bd_mu",
              "n_a", "nodeless_a", "n_b", "nodeless_b", "n_c", "nodeless_c",
              "n_d", "nodeless_d"]
    emit_csv(rows, schema, cfg.out)
    return 0


def _cmd_potential(cfg: RunConfig) -> int:
    spec = _load_spec(cfg.options["config"])
    xmin, xmax, n = cfg.options["xmin"], cfg.options["xmax"], cfg.options["n"]
    if not (xmin < xmax) or n < 1:
        raise BadConfig("need xmin < xmax and --n >= 1")
    x = np.linspace(xmin, xmax, n + 1)
    grid = map_grid(spec, x)
    v = grid.potential_values()
    rows = [{"x": xi, "z": zi, "V": vi} for xi, zi, vi in zip(grid.x, grid.z, v)]
    emit_csv(rows, ["x", "z", "V"], cfg.out)
    return 0


def _parse_chain(text: str) -> list[tuple[str, int]]:
    chain = []
    for part in text.split(","):
        try:
            letter, m_text = part.strip().split(":")
            m = int(m_text)
        except ValueError as exc:
            raise BadConfig(f"--ff expects 'type:m[,type:m...]', got {text!r}") from exc
        if letter not in "abcd" or m < 0:
            raise BadConfig(f"bad factorization step {part!r}")
        chain.append((letter, m))
    return chain


def _cmd_partner(cfg: RunConfig) -> int:
    spec = _load_spec(cfg.options["config"])
    chain = _parse_chain(cfg.options["ff"])
    try:
        result = build_partner(spec, chain, h=cfg.options["h"],
                               kappa_min=cfg.options["kappa_min"])
    except GrefError as exc:
        raise BadConfig(f"partner construction failed: {exc}") from exc
    if cfg.out is not None:  # CSV only on request; stdout carries the report
        rows = [{"x": x, "v": v, "v_partner": w}
                for x, v, w in zip(result.base_profile.x_samples,
                                   result.base_profile.v_samples,
                                   result.partner_profile.v_samples)]
        emit_csv(rows, ["x", "v", "v_partner"], cfg.out)
    report = isospectral_report(result)
    payload = report.as_dict()
    payload["spec"] = spec.as_dict()
    payload["ff_chain"] = [f"{s.label}:{s.m}" for s in result.ff_chain]
    payload["base_spectrum"] = [float(e) for e in result.base_spectrum]
    payload["partner_spectrum"] = [float(e) for e in result.partner_spectrum]
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0 if report.passed else 1


def _cmd_verify(cfg: RunConfig) -> int:
    families = ([cfg.options["family"]] if cfg.options["family"] != "all"
                else list(verify_mod.FAMILIES))
    reports = [verify_mod.run_family(f, seed=cfg.seed) for f in families]
    payload = {"seed": cfg.seed, "reports": reports,
               "passed": all(r["passed"] for r in reports)}
    text = json.dumps(payload, indent=2, sort_keys=True)
    if cfg.out:
        Path(cfg.out).write_text(text + "\n", encoding="utf-8")
    print(text)
    return 0 if payload["passed"] else 1


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gref", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--config", help="JSON file with a2, c0, c1, lambda0, mu0")
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    parser.add_argument("--threads", type=int, default=1, help="sweep worker threads")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="seed solutions per order")
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--emit-wavefunctions", action="store_true")

    p = sub.add_parser("phase-diagram", help="sweep the (lambda0, mu0) plane")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--lambda0", required=True, metavar="A:B:N")
    p.add_argument("--mu0", required=True, metavar="A:B:N")

    p = sub.add_parser("potential", help="sample V(x) on a grid")
    p.add_argument("--xmin", type=float, required=True)
    p.add_argument("--xmax", type=float, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("partner", help="Darboux partner and spectrum report")
    p.add_argument("--ff", required=True, help="chain as type:m[,type:m...]")
    p.add_argument("--h", type=float, default=0.01)
    p.add_argument("--kappa-min", dest="kappa_min", type=float, default=1.0)

    p = sub.add_parser("verify", help="closed-form oracle suites")
    p.add_argument("--family", choices=list(verify_mod.FAMILIES) + ["all"], default="all")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    options = {k: v for k, v in vars(args).items()
               if k not in ("out", "seed", "threads", "command")}
    return RunConfig(command=args.command, spec_input=None, out=args.out,
                     seed=args.seed, threads=max(1, args.threads), options=options)


def run(cfg: RunConfig) -> int:
    """Dispatch one parsed configuration; deterministic for a fixed seed."""
    handlers = {
        "catalog": _cmd_catalog,
        "phase-diagram": _cmd_phase_diagram,
        "potential": _cmd_potential,
        "partner": _cmd_partner,
        "verify": _cmd_verify,
    }
    return handlers[cfg.command](cfg)


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    cfg = _config_from_args(args)
    try:
        return run(cfg)
    except BadConfig as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GrefError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
