"""Command-line entry point.

Exit codes: 0 success or "yes", 1 "no" (or an infeasible ILP check),
2 usage or input error, 3 resource cap hit, 4 internal verification failure.
"""
from __future__ import annotations

import argparse
import sys

from . import approx, exact, gridio, ilp, kernelizer, oracle, reduction, xp
from .errors import ResourceLimitError, VerificationError
from .grid import WHITE, ColorGrid, count_corners, is_extension

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_CAP, EXIT_VERIFY = 0, 1, 2, 3, 4


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _grid(args) -> ColorGrid:
    return gridio.parse_grid(_read(args.grid))


def _restriction(args, grid: ColorGrid):
    """``(allowed, counted colors)`` for ``--restrict c``, else the full palette."""
    c = getattr(args, "restrict", None)
    if c is None:
        return set(range(grid.k + 1)), None
    if not 1 <= c <= grid.k:
        raise ValueError(f"--restrict color {c} outside palette [1, {grid.k}]")
    return {WHITE, c}, {c}


def _report(value, grid: ColorGrid | None = None) -> None:
    print(f"corners={value}")
    if grid is not None:
        sys.stdout.write(gridio.emit_grid(grid))


def cmd_solve(args) -> int:
    grid = _grid(args)
    allowed, colors = _restriction(args, grid)
    if args.approx:
        if colors is not None or args.fpt:
            raise ValueError("--approx works on the unrestricted problem without --fpt")
        res = approx.approx_extension(grid)
        if not is_extension(grid, res.extension, allowed) or count_corners(res.extension) > res.value:
            raise VerificationError("approximate extension breaks its guarantee")
        _report(res.value, res.extension)
        return EXIT_OK
    if args.fpt:
        if colors is not None:
            raise ValueError("--fpt solves the unrestricted problem only")
        res = kernelizer.solve_fpt(grid, state_cap=args.state_cap)
    else:
        res = exact.solve_exact(grid, allowed, colors=colors, state_cap=args.state_cap)
    if not is_extension(grid, res.extension, allowed) or count_corners(res.extension, colors) != res.optimum:
        raise VerificationError("solver witness does not match its reported optimum")
    _report(res.optimum, res.extension)
    return EXIT_OK


def cmd_decide(args) -> int:
    grid = _grid(args)
    allowed, colors = _restriction(args, grid)
    yes = xp.decide(grid, args.budget, allowed, method=args.method, colors=colors)
    print("yes" if yes else "no")
    return EXIT_OK if yes else EXIT_NO


def cmd_kernelize(args) -> int:
    grid = _grid(args)
    kernel, trace = kernelizer.kernelize(grid)
    if args.emit_trace:
        for line in kernelizer.format_trace(trace):
            print(f"# trace: {line}")
    sys.stdout.write(gridio.emit_grid(kernel))
    return EXIT_OK


def cmd_oracle(args) -> int:
    grid = _grid(args)
    allowed, colors = _restriction(args, grid)
    if args.all:
        optima = oracle.enumerate_optima(grid, allowed, colors=colors, cap=args.cap)
        print(f"corners={count_corners(optima[0], colors)}")
        print(f"optima={len(optima)}")
        for h in optima:
            sys.stdout.write(gridio.emit_grid(h))
        return EXIT_OK
    res = oracle.brute_force_optimum(grid, allowed, colors=colors, cap=args.cap)
    _report(res.optimum, res.extension)
    return EXIT_OK


def cmd_reduce(args) -> int:
    formula = reduction.parse_formula(_read(args.formula))
    embedding = reduction.parse_embedding(_read(args.embedding), len(formula.clauses))
    inst = reduction.build_instance(formula, embedding)
    grid, budget = inst.grid, inst.budget
    if args.general:
        grid, budget = reduction.restricted_to_general(grid, budget)
    print(f"# budget={budget}")
    print(f"# restricted color={reduction.BLUE}" if not args.general else "# unrestricted")
    sys.stdout.write(gridio.emit_grid(grid))
    return EXIT_OK


def cmd_ilp(args) -> int:
    grid = _grid(args)
    if args.action == "export":
        text = ilp.export_lp(ilp.build_model(grid))
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    if not args.extension:
        raise ValueError("ilp check needs --extension")
    ext = gridio.parse_grid(_read(args.extension))
    feasible, objective = ilp.evaluate_extension(grid, ext)
    print(f"feasible={'true' if feasible else 'false'}")
    print(f"corners={objective}")
    return EXIT_OK if feasible else EXIT_NO


def cmd_render(args) -> int:
    sys.stdout.write(gridio.render(_grid(args), args.format))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mincorner", description="Minimum-corner grid extensions.")
    p.add_argument("--seed", type=int, default=None, help="accepted and ignored; all algorithms are deterministic")
    sub = p.add_subparsers(dest="command", required=True)

    def grid_arg(sp):
        sp.add_argument("grid", help="grid file, or - for stdin")

    sp = sub.add_parser("solve", help="minimum-corner extension")
    grid_arg(sp)
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exact row DP (default)")
    mode.add_argument("--approx", action="store_true", help="polynomial row-merging approximation")
    sp.add_argument("--restrict", type=int, metavar="C", help="fill only with color C and count only C-corners")
    sp.add_argument("--fpt", action="store_true", help="kernelize before solving exactly")
    sp.add_argument("--state-cap", type=int, default=exact.DEFAULT_STATE_CAP)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("decide", help="is there an extension within a corner budget")
    grid_arg(sp)
    sp.add_argument("--budget", type=int, required=True)
    sp.add_argument("--method", choices=("xp", "exact"), default="xp")
    sp.add_argument("--restrict", type=int, metavar="C")
    sp.set_defaults(func=cmd_decide)

    sp = sub.add_parser("kernelize", help="apply the line reduction rules")
    grid_arg(sp)
    sp.add_argument("--emit-trace", action="store_true", help="print the steps as '# trace:' lines")
    sp.set_defaults(func=cmd_kernelize)

    sp = sub.add_parser("oracle", help="exhaustive search on tiny grids")
    grid_arg(sp)
    sp.add_argument("--restrict", type=int, metavar="C")
    sp.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP)
    sp.add_argument("--all", action="store_true", help="list every optimal extension")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("reduce", help="build the hardness instance of a monotone formula")
    sp.add_argument("--formula", required=True)
    sp.add_argument("--embedding", required=True)
    sp.add_argument("--general", action="store_true", help="emit the unrestricted instance (budget 2l+4)")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("ilp", help="export or check the integer program")
    sp.add_argument("action", choices=("export", "check"))
    grid_arg(sp)
    sp.add_argument("--extension", help="candidate extension grid file (check)")
    sp.add_argument("-o", "--output", help="write the LP here instead of stdout (export)")
    sp.set_defaults(func=cmd_ilp)

    sp = sub.add_parser("render", help="draw a grid")
    grid_arg(sp)
    sp.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    sp.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"mincorner: resource limit: {exc}", file=sys.stderr)
        return EXIT_CAP
    except VerificationError as exc:
        print(f"mincorner: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (ValueError, OSError) as exc:
        print(f"mincorner: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
