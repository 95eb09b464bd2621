"""Command-line front end: ``bounds``, ``sweep``, ``figure`` and ``check``.

Exit codes: 0 success, 1 property failure, 2 invalid arguments,
3 dimension/math errors, 4 I/O errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .bounds import BOUNDS, bound_names, check_bound_names, full_report
from .errors import ComputationError, InvalidArgument
from .measurement import parse_basis
from .selfcheck import run_check
from .states import StateFamilySpec

EXIT_OK, EXIT_PROPERTY, EXIT_ARGS, EXIT_MATH, EXIT_IO = 0, 1, 2, 3, 4


class CLIError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def fmt(x: float) -> str:
    """Round to 12 significant digits, then print the shortest round-trip form."""
    return repr(float(f"{float(x):.12g}") + 0.0)


@dataclass
class SweepConfig:
    state: StateFamilySpec
    param_name: str
    start: float
    stop: float
    steps: int
    bases: list[str]
    bounds: list[str]
    out_path: str
    seed: int | None = None
    emit_svg: bool = False

    def validate(self) -> None:
        if self.steps < 2:
            raise InvalidArgument("steps must be >= 2")
        if self.start > self.stop:
            raise InvalidArgument("--from must not exceed --to")
        check_bound_names(self.bounds)
        if len(self.bases) != 2:
            pairs_only = [b for b in self.bounds if BOUNDS[b].pairs_only]
            if pairs_only:
                raise InvalidArgument(f"bound(s) {', '.join(pairs_only)} need exactly two bases")

    @property
    def header(self) -> list[str]:
        return ["param", "lhs_entropy", "lhs_coherence", *self.bounds]


# -- helpers --------------------------------------------------------------------

def _split(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _bases(labels: Sequence[str]):
    return [parse_basis(label) for label in labels]


def _check_writable(path: Path) -> None:
    parent = path.parent if str(path.parent) else Path(".")
    if not parent.is_dir() or not os.access(parent, os.W_OK):
        raise CLIError(f"cannot write to {path}: directory missing or not writable", EXIT_IO)


def _sweep_row(args: tuple) -> list[float]:
    spec, name, value, labels, bounds, seed = args
    rho = spec.with_param(name, value).build(seed)
    rep = full_report(rho, _bases(labels), bounds, enforce=True, with_quantities=False)
    return [value, *rep.row(bounds)]


def compute_sweep(config: SweepConfig, workers: int = 1) -> list[list[float]]:
    config.validate()
    _bases(config.bases)  # fail fast on bad labels
    values = np.linspace(config.start, config.stop, config.steps)
    jobs = [(config.state, config.param_name, float(v), config.bases, config.bounds, config.seed) for v in values]
    # validate the template once in-process so errors surface before forking
    config.state.with_param(config.param_name, values[0]).build(config.seed)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_sweep_row, jobs))  # map keeps parameter order
    return [_sweep_row(job) for job in jobs]


def render_csv(header: Sequence[str], rows: Sequence[Sequence[float]]) -> str:
    lines = [",".join(header)]
    lines += [",".join(fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def write_svg(path: Path, header: Sequence[str], rows: Sequence[Sequence[float]], title: str = "") -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.hashsalt"] = "entropic-ur"
    data = np.asarray(rows, dtype=float)
    fig, ax = plt.subplots(figsize=(6, 4))
    for k, name in enumerate(header[1:], start=1):
        if name == "lhs_entropy" and any(BOUNDS[b].lhs == "coherence" for b in header[3:]):
            continue
        if name == "lhs_coherence" and not any(BOUNDS[b].lhs == "coherence" for b in header[3:]):
            continue
        ax.plot(data[:, 0], data[:, k], label=name)
    ax.set_xlabel(header[0])
    ax.set_ylabel("bits")
    if title:
        ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def run_sweep(config: SweepConfig, workers: int = 1) -> str:
    out = Path(config.out_path)
    _check_writable(out)
    rows = compute_sweep(config, workers)
    text = render_csv(config.header, rows)
    try:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
        if config.emit_svg:
            write_svg(out.with_suffix(".svg"), ["param", *config.header[1:]], rows, title=config.state.family)
    except OSError as exc:
        raise CLIError(f"cannot write {out}: {exc}", EXIT_IO) from exc
    return text


FIGURES = {
    "fig1": ("werner", "eta", ["X", "Y", "Z"], ["liu_improved", "zhang"]),
    "fig2": ("xstate", "p", ["X", "Z"], ["coh_adabi", "coh_berta"]),
    "fig3": ("werner", "eta", ["X", "Y", "Z"], ["coh_multi", "coh_zhang"]),
}


def figure_config(name: str, out_dir: str | Path, emit_svg: bool = False, steps: int = 101) -> SweepConfig:
    family, param, bases, bounds = FIGURES[name]
    return SweepConfig(
        state=StateFamilySpec(family),
        param_name=param,
        start=0.0,
        stop=1.0,
        steps=steps,
        bases=bases,
        bounds=bounds,
        out_path=str(Path(out_dir) / f"{name}.csv"),
        emit_svg=emit_svg,
    )


# -- commands -------------------------------------------------------------------

def cmd_bounds(args) -> int:
    spec = StateFamilySpec.parse(args.state)
    rho = spec.build(args.seed)
    labels = _split(args.bases)
    bases = _bases(labels)
    names = check_bound_names(_split(args.bounds)) if args.bounds else bound_names(len(bases))
    report = full_report(rho, bases, names, enforce=False)
    q = report.quantities
    print(f"state: {spec.to_text()}   bases: {','.join(labels)}")
    rows = [
        ("lhs_entropy", report.lhs_entropy),
        ("lhs_coherence", report.lhs_coherence),
        ("lhs_no_memory", report.lhs_no_memory),
        ("S(A|B)", q.s_cond),
        ("I(A:B)", q.mutual),
        ("delta", q.delta),
    ]
    if q.j_a is not None:
        rows += [("J_A", q.j_a), ("D_A", q.d_a)]
    for label, value in rows:
        print(f"  {label:<16}{fmt(value):>22}")
    if names:
        print(f"  {'bound':<16}{'value':>22}{'gap':>22}")
        for name in names:
            print(f"  {name:<16}{fmt(report.bounds[name]):>22}{fmt(report.gaps[name]):>22}")
    header = ["lhs_entropy", "lhs_coherence", *names]
    csv_text = render_csv(header, [report.row(names)])
    print(csv_text, end="")
    if args.out:
        out = Path(args.out)
        _check_writable(out)
        try:
            out.write_text(csv_text)
        except OSError as exc:
            raise CLIError(f"cannot write {out}: {exc}", EXIT_IO) from exc
    violated = [n for n in names if report.gaps[n] < -BOUNDS[n].tolerance]
    if violated:
        print(f"bound violation: {', '.join(violated)}", file=sys.stderr)
        return EXIT_MATH
    return EXIT_OK


def cmd_sweep(args) -> int:
    if not args.out:
        raise InvalidArgument("sweep needs --out")
    config = SweepConfig(
        state=StateFamilySpec.parse(args.state),
        param_name=args.param,
        start=args.start,
        stop=args.stop,
        steps=args.steps,
        bases=_split(args.bases),
        bounds=_split(args.bounds),
        out_path=args.out,
        seed=args.seed,
        emit_svg=args.svg,
    )
    run_sweep(config, args.workers)
    print(f"wrote {config.steps} rows to {config.out_path}")
    return EXIT_OK


def cmd_figure(args) -> int:
    out_dir = Path(args.out or ".")
    if not out_dir.is_dir() or not os.access(out_dir, os.W_OK):
        raise CLIError(f"output directory {out_dir} is missing or not writable", EXIT_IO)
    names = list(FIGURES) if args.name == "all" else [args.name]
    for name in names:
        config = figure_config(name, out_dir, emit_svg=args.svg, steps=args.steps)
        run_sweep(config, args.workers)
        print(f"wrote {config.out_path}")
    return EXIT_OK


def cmd_check(args) -> int:
    if args.samples < 1:
        raise InvalidArgument("--samples must be >= 1")
    seed = 42 if args.seed is None else args.seed
    summary = run_check(args.samples, seed, oracle=not args.no_oracle)
    text = "\n".join(summary.lines()) + "\n"
    print(text, end="")
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            raise CLIError(f"cannot write {args.out}: {exc}", EXIT_IO) from exc
    return EXIT_OK if summary.ok else EXIT_PROPERTY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entropic-ur",
        description="Entropic and coherence uncertainty bounds with quantum memory.",
    )
    # global flags are accepted before or after the subcommand; the subcommand
    # copies use SUPPRESS so they do not clobber values given before it
    common = argparse.ArgumentParser(add_help=False)
    for target, default in ((parser, None), (common, argparse.SUPPRESS)):
        target.add_argument("--out", default=default, help="output file (bounds, sweep, check) or directory (figure)")
        target.add_argument("--seed", type=int, default=default, help="seed for random state families and check")
        target.add_argument(
            "--svg",
            action="store_true",
            default=False if default is None else default,
            help="also write an SVG line plot next to the CSV",
        )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", parents=[common], help="evaluate bounds for one state")
    p.add_argument("--state", required=True, help="e.g. werner:eta=0.5, xstate:p=0.3, ginibre:seed=42")
    p.add_argument("--bases", default="X,Z", help="comma-separated: X, Y, Z or custom:<path.json>")
    p.add_argument("--bounds", default="", help=f"comma-separated subset of: {', '.join(BOUNDS)}")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("sweep", parents=[common], help="sweep one state parameter and write CSV")
    p.add_argument("--state", required=True, help="state family template, e.g. werner or ginibre:seed=3")
    p.add_argument("--param", required=True, help="parameter to sweep, e.g. eta or p")
    p.add_argument("--from", dest="start", type=float, default=0.0)
    p.add_argument("--to", dest="stop", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--bases", default="X,Z")
    p.add_argument("--bounds", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("figure", parents=[common], help="write the preset figure sweeps")
    p.add_argument("name", choices=[*FIGURES, "all"])
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("check", parents=[common], help="run the property suite on seeded random states")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--no-oracle", action="store_true", help="skip the dense-grid optimizer oracle")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except InvalidArgument as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except ComputationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
