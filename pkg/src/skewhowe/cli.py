"""Command-line front end.

Every output starts with a metadata header (version, command line, seed,
realized parameters) and depends only on the arguments, so two runs with the
same arguments write identical bytes.
"""
from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .characters import DEFAULT_TUPLE_BUDGET
from .howe import DEFAULT_PARTITION_BUDGET, HoweParams, sample_howe
from .jue import JueParams, sample_spectrum
from .serialize import csv_text, dumps_json, jsonable, metadata

log = logging.getLogger("skewhowe")


@dataclass
class RunConfig:
    command: str
    params: dict
    seed: int = 0
    samples: int | None = None
    out: str | None = None
    fmt: str = "csv"
    budget_tuples: int = DEFAULT_TUPLE_BUDGET
    budget_partitions: int = DEFAULT_PARTITION_BUDGET
    argv: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.budget_tuples <= 0 or self.budget_partitions <= 0:
            raise ValueError("budgets must be positive")
        if self.samples is not None and self.samples <= 0:
            raise ValueError("--samples must be positive")

    def meta(self, realized: dict) -> dict:
        return metadata(self.command, self.argv, self.seed, realized)


class UsageError(ValueError):
    pass


def _write(text: str, out: str | None, name: str | None = None):
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    if name is not None:
        path.mkdir(parents=True, exist_ok=True)
        path = path / name
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    log.info("wrote %s", path)


def _sidecar(out: str | None) -> str | None:
    return None if out is None else str(Path(out).with_suffix(".json"))


# -- sample --------------------------------------------------------------------


def cmd_sample(cfg: RunConfig, args) -> int:
    samples = cfg.samples or (1000 if args.ensemble == "howe" else 1)
    if args.ensemble == "howe":
        if args.n is None or args.k is None or args.p is None:
            raise UsageError("sample howe needs --n, --k and --p")
        params = HoweParams(args.n, args.k, args.p)
        shapes = sample_howe(params, samples, cfg.seed, workers=args.workers)
        meta = cfg.meta({"n": params.n, "k": params.k, "p": params.p, "samples": samples})
        if cfg.fmt == "json":
            _write(dumps_json({"meta": meta, "samples": [list(s) for s in shapes]}), cfg.out)
        else:
            header = ["sample_id"] + [f"lambda_{i}" for i in range(1, params.n + 1)]
            rows = ([i] + list(s) + [0] * (params.n - len(s)) for i, s in enumerate(shapes))
            _write(csv_text(meta, header, rows), cfg.out)
        return 0
    params = JueParams(args.dim, args.c_alpha, args.c_beta)
    spectra = [sample_spectrum(params, cfg.seed, r, with_minor=args.minor) for r in range(samples)]
    meta = cfg.meta({**params.as_dict(), "samples": samples, "minor": args.minor})
    if cfg.fmt == "json":
        payload = {"meta": meta, "samples": [
            {"sample_id": r, "eigenvalues": s.eigenvalues, "minor_eigenvalues": s.minor_eigenvalues,
             "zero_count": s.zero_count()} for r, s in enumerate(spectra)]}
        _write(dumps_json(payload), cfg.out)
    else:
        rows = []
        for r, s in enumerate(spectra):
            rows += [[r, i, float(v), 0] for i, v in enumerate(s.eigenvalues, start=1)]
            if s.minor_eigenvalues is not None:
                rows += [[r, i, float(v), 1] for i, v in enumerate(s.minor_eigenvalues, start=1)]
        _write(csv_text(meta, ["sample_id", "eig_index", "value", "is_minor"], rows), cfg.out)
    return 0


# -- verify --------------------------------------------------------------------


def cmd_verify(cfg: RunConfig, args) -> int:
    from .verify import VerifyConfig, run_suite

    vcfg = VerifyConfig(seed=cfg.seed, samples=cfg.samples or 100_000, budget_tuples=cfg.budget_tuples,
                        budget_partitions=cfg.budget_partitions)
    report = run_suite(args.suite, vcfg)
    payload = {"meta": cfg.meta({"suite": args.suite, "samples": vcfg.samples}), **report.to_json()}
    if cfg.fmt == "json":
        _write(dumps_json(payload), cfg.out)
    else:
        rows = [[e.suite, e.check, jsonable(e.params), jsonable(e.lhs), jsonable(e.rhs), e.residual, e.status]
                for e in report.entries]
        meta = {**payload["meta"], "pass_count": report.pass_count, "fail_count": report.fail_count}
        _write(csv_text(meta, ["suite", "check", "params", "lhs", "rhs", "residual", "status"], rows), cfg.out)
    for e in report.entries:
        if e.status == "fail":
            log.error("FAIL %s %s", e.check, e.params)
    return 0 if report.ok else 1


# -- figures -------------------------------------------------------------------


def cmd_figures(cfg: RunConfig, args) -> int:
    from .figures import FIG1, FIG2, figure1_data, figure2_data

    ref = FIG1 if args.which == "1" else FIG2
    ca = ref["c_alpha"] if args.c_alpha is None else args.c_alpha
    cb = ref["c_beta"] if args.c_beta is None else args.c_beta
    if args.which == "1":
        d = figure1_data(args.dim or FIG1["N"], ca, cb, cfg.seed, bins=args.bins)
        meta = cfg.meta(d.summary())
        if cfg.fmt == "json" or cfg.out is None:
            payload = {"meta": meta, "summary": d.summary(),
                       "histogram": {"edges": d.bin_edges, "counts": d.counts, "density": d.density},
                       "sigma": {"x": d.grid, "value": d.sigma}}
            _write(dumps_json(payload), cfg.out, None if cfg.out is None else "figure1.json")
        else:
            hist = zip(d.bin_edges[:-1], d.bin_edges[1:], d.counts, d.density)
            _write(csv_text(meta, ["left", "right", "count", "density"], hist), cfg.out, "figure1_histogram.csv")
            _write(csv_text(meta, ["x", "value"], zip(d.grid, d.sigma)), cfg.out, "figure1_sigma.csv")
            _write(dumps_json({"meta": meta, **d.summary()}), cfg.out, "figure1_summary.json")
        return 0
    sizes = tuple(args.sizes)
    seeds = cfg.samples or 20
    d = figure2_data(sizes, ca, cb, seeds, cfg.seed)
    meta = cfg.meta(d.summary())
    grid, omega = d.omega_grid
    if cfg.fmt == "json" or cfg.out is None:
        payload = {"meta": meta, "summary": d.summary(), "omega": {"t": grid, "value": omega},
                   "profiles": {str(N): {"t": xs, "f": ys} for N, (xs, ys) in d.breakpoints.items()}}
        _write(dumps_json(payload), cfg.out, None if cfg.out is None else "figure2.json")
    else:
        _write(csv_text(meta, ["t", "value"], zip(grid, omega)), cfg.out, "figure2_omega.csv")
        rows = [[N, float(x), float(y)] for N, (xs, ys) in d.breakpoints.items() for x, y in zip(xs, ys)]
        _write(csv_text(meta, ["N", "t", "f"], rows), cfg.out, "figure2_profiles.csv")
        _write(dumps_json({"meta": meta, **d.summary()}), cfg.out, "figure2_summary.json")
    return 0


# -- edge comparison -----------------------------------------------------------


def cmd_edge_compare(cfg: RunConfig, args) -> int:
    from .figures import edge_comparison

    samples = cfg.samples or 500
    e = edge_comparison(args.dim or 100, args.c_alpha, args.c_beta, samples, cfg.seed, args.top)
    entry = {"check": "edge_comparison_ks", "params": e.summary(), "lhs": None, "rhs": None,
             "residual": e.ks, "status": "report-only"}
    meta = cfg.meta(e.summary())
    if cfg.out is None or cfg.fmt == "json":
        payload = {"meta": meta, "entry": entry, "x": e.x, "y": e.y}
        _write(dumps_json(payload), cfg.out, None if cfg.out is None else "edge_compare.json")
    else:
        top = e.x.shape[1]
        header = ["sample_id"] + [f"x_{i}" for i in range(1, top + 1)]
        _write(csv_text(meta, header, ([i] + list(r) for i, r in enumerate(e.x))), cfg.out, "edge_x.csv")
        header = ["sample_id"] + [f"y_{i}" for i in range(1, top + 1)]
        _write(csv_text(meta, header, ([i] + list(r) for i, r in enumerate(e.y))), cfg.out, "edge_y.csv")
        _write(dumps_json({"meta": meta, "entry": entry}), cfg.out, "edge_report.json")
    return 0


# -- limit shape and densities ---------------------------------------------------


def _howe_asymptotics(args):
    from .limits import HoweAsymptoticParams

    if args.c is not None and args.alpha_h is not None:
        return HoweAsymptoticParams(args.c, args.alpha_h)
    if args.n is not None and args.k is not None and args.p is not None:
        HoweParams(args.n, args.k, args.p)
        return HoweAsymptoticParams.from_box(args.n, args.k, args.p)
    return HoweAsymptoticParams.from_jue(args.c_alpha, args.c_beta)


def cmd_limitshape(cfg: RunConfig, args) -> int:
    from .limits import howe_limit_density, howe_transition_measure, jue_limit_density, limit_shape

    if args.which == "jue":
        model = jue_limit_density(args.c_alpha, args.c_beta)
        lo, hi = 0.0, 1.0
        realized = {"c_alpha": args.c_alpha, "c_beta": args.c_beta}
        fn = model
    else:
        hp = _howe_asymptotics(args)
        realized = {"c": hp.c, "alpha_h": hp.alpha_h, "zeta": hp.zeta}
        lo, hi = -1.0, hp.c
        if args.which == "omega":
            shape = limit_shape(hp)
            model, fn = shape.rho, shape
        elif args.which == "rho":
            model = fn = howe_limit_density(hp)
        else:
            model = fn = howe_transition_measure(hp)
    x = np.linspace(lo, hi, args.points)
    values = np.asarray(fn(x), dtype=float)
    side = {"which": args.which, "support": list(model.support), "atoms": [list(a) for a in model.atoms],
            "plateaus": [list(p) for p in model.plateaus], "mass": model.mass()}
    meta = cfg.meta({**realized, "which": args.which, "points": args.points})
    if cfg.fmt == "json":
        _write(dumps_json({"meta": meta, **side, "x": x, "value": values}), cfg.out)
    else:
        _write(csv_text(meta, ["x", "value"], zip(x, values)), cfg.out)
        if cfg.out is not None:
            _write(dumps_json({"meta": meta, **side}), _sidecar(cfg.out))
    return 0


def cmd_equilibrium(cfg: RunConfig, args) -> int:
    from .limits import equilibrium_solver, potential_preset

    if args.potential == "howe":
        hp = _howe_asymptotics(args)
        pot = potential_preset("howe", c=hp.c, alpha_h=hp.alpha_h)
        realized = {"c": hp.c, "alpha_h": hp.alpha_h}
    elif args.potential == "jue":
        pot = potential_preset("jue", c_alpha=args.c_alpha, c_beta=args.c_beta)
        realized = {"c_alpha": args.c_alpha, "c_beta": args.c_beta}
    else:
        pot = potential_preset("gue")
        realized = {}
    res = equilibrium_solver(pot, grid=args.points)
    meta = cfg.meta({"potential": args.potential, **realized})
    side = res.to_json()
    if cfg.fmt == "json":
        _write(dumps_json({"meta": meta, **side, "x": res.xs, "value": res.density}), cfg.out)
    else:
        _write(csv_text(meta, ["x", "value"], zip(res.xs, res.density)), cfg.out)
        if cfg.out is not None:
            _write(dumps_json({"meta": meta, **side}), _sidecar(cfg.out))
    return 0


# -- parser --------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("common")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", help="output file (or directory for multi-file commands); stdout if omitted")
    g.add_argument("--format", choices=("csv", "json"), default=None,
                   help="default: json for verify, csv otherwise")
    g.add_argument("--budget-tuples", type=int, default=DEFAULT_TUPLE_BUDGET)
    g.add_argument("--budget-partitions", type=int, default=DEFAULT_PARTITION_BUDGET)
    g.add_argument("--samples", type=int, default=None)
    g.add_argument("-v", "--verbose", action="store_true")
    return p


def _jue_flags(p: argparse.ArgumentParser, dim: int | None = None, ca: float | None = 1.6,
               cb: float | None = 4.8):
    p.add_argument("--dim", type=int, default=dim, help="matrix size N")
    p.add_argument("--c-alpha", type=float, default=ca)
    p.add_argument("--c-beta", type=float, default=cb)


def _howe_flags(p: argparse.ArgumentParser):
    p.add_argument("--c", type=float, default=None, help="k/n")
    p.add_argument("--alpha-h", type=float, default=None, help="p/(nk-p)")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--p", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="skewhowe", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sample", parents=[common], help="draw Howe diagrams or JUE spectra")
    s.add_argument("ensemble", choices=("howe", "jue"))
    s.add_argument("--n", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--p", type=int)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--minor", action="store_true", help="also emit the corner-minor spectrum")
    _jue_flags(s, dim=100)
    s.set_defaults(func=cmd_sample)

    v = sub.add_parser("verify", parents=[common], help="run identity checks")
    v.add_argument("suite", choices=("measure", "characters", "hurwitz", "markov-krein", "tau", "equilibrium", "all"))
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("figures", parents=[common], help="plot data for figure 1 or 2")
    f.add_argument("which", choices=("1", "2"))
    f.add_argument("--sizes", type=int, nargs="+", default=[50, 500, 1500])
    f.add_argument("--bins", type=int, default=60)
    _jue_flags(f, ca=None, cb=None)
    f.set_defaults(func=cmd_figures)

    e = sub.add_parser("edge-compare", parents=[common], help="first-row vs top-eigenvalue fluctuations")
    e.add_argument("--top", type=int, default=1)
    _jue_flags(e, dim=100)
    e.set_defaults(func=cmd_edge_compare)

    ls = sub.add_parser("limitshape", parents=[common], help="limit shape and limiting densities on a grid")
    ls.add_argument("--which", choices=("omega", "rho", "sigma-h", "jue"), default="omega")
    ls.add_argument("--points", type=int, default=401)
    _howe_flags(ls)
    _jue_flags(ls)
    ls.set_defaults(func=cmd_limitshape)

    eq = sub.add_parser("equilibrium", parents=[common], help="single-cut equilibrium measure")
    eq.add_argument("--potential", choices=("gue", "jue", "howe"), default="gue")
    eq.add_argument("--points", type=int, default=201)
    _howe_flags(eq)
    _jue_flags(eq)
    eq.set_defaults(func=cmd_equilibrium)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = RunConfig(args.command, {}, args.seed, args.samples, args.out,
                        args.format or ("json" if args.command == "verify" else "csv"),
                        args.budget_tuples, args.budget_partitions, argv)
        return args.func(cfg, args)
    except (UsageError, ValueError, KeyError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
