"""Command line entry point: solve / analyze / generate / verify / bounds."""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import core
from .crossings import MatrixTooLarge, crossing_lower_bound, crossing_matrix
from .cutwidth import cut_profile, f_coefficient, optimize_a
from .reductions import classify_pairs, reduce, theorem2_bound, unsuited_bound
from .solvers import ALGORITHMS, BudgetExceeded, solve

EXIT_OK, EXIT_BUDGET, EXIT_INPUT, EXIT_FINDINGS = 0, 1, 2, 3

log = logging.getLogger("oscm")


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    input: str | None = None
    algo: str = "auto"
    threads: int = 1
    seed: int = 0
    time_limit: float | None = None
    dp_limit: int = 24
    branch_budget: int = 30
    cmin: float = 0.01
    cmax: float = 0.5
    steps: int = 50

    def __post_init__(self):
        for name in ("threads", "dp_limit", "branch_budget", "steps"):
            if getattr(self, name) <= 0:
                raise ValueError(f"--{name.replace('_', '-')} must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("--time-limit must be positive")


def _read_input(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="ascii")


def _fmt(x: float) -> str:
    return repr(float(x))


def cmd_solve(args, cfg: RunConfig) -> int:
    instance = core.parse_instance(_read_input(cfg.input))
    start = time.perf_counter()
    report = solve(instance, cfg.algo, branch_budget=cfg.branch_budget, dp_limit=cfg.dp_limit,
                   time_limit=cfg.time_limit, threads=cfg.threads)
    elapsed = time.perf_counter() - start
    sys.stdout.write(core.write_solution(report.solution, instance))
    st = report.stats
    print(f"c crossings {report.solution.crossings}", file=sys.stderr)
    print(f"c algorithm {report.algorithm} unsuited {report.n_unsuited} "
          f"reduced_b {report.plan.reduced.n_b}", file=sys.stderr)
    print(f"c nodes {st.nodes} prunes {st.prunes} time {elapsed:.3f}", file=sys.stderr)
    return EXIT_OK


def cmd_analyze(args, cfg: RunConfig) -> int:
    instance = core.parse_instance(_read_input(cfg.input))
    matrix = crossing_matrix(instance, threads=cfg.threads)
    plan = reduce(instance)
    pairs = classify_pairs(matrix)
    lines = [
        f"n_a {instance.n_a}",
        f"n_b {instance.n_b}",
        f"m {instance.m}",
        f"removed_isolated {plan.n_isolated}",
        f"merged_twins {plan.n_twins}",
        f"lower_bound {crossing_lower_bound(matrix)}",
        f"forced {len(pairs.forced)}",
        f"unsuited {len(pairs.unsuited)}",
        f"degenerate {len(pairs.degenerate)}",
    ]
    if args.ordering:
        pi = core.parse_ordering(Path(args.ordering).read_text(encoding="ascii"), instance)
        w = cut_profile(instance, pi).width
        bound = theorem2_bound(instance.n_b, w, instance.m)
        general = unsuited_bound(instance.n_b, w, instance.m)
        holds = len(pairs.unsuited) <= bound
        lines += [
            f"cutwidth {w}",
            f"theorem2_bound {bound}",
            f"bound_holds {'yes' if holds else 'no'}",
            f"tight {'yes' if len(pairs.unsuited) == bound else 'no'}",
        ]
        if general != bound:
            lines.append(f"general_bound {general}")
    print("\n".join(lines))
    if args.dump_crossings:
        with open(args.dump_crossings, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow([""] + list(instance.b_labels))
            for label, row in zip(instance.b_labels, matrix.tolist()):
                writer.writerow([label] + row)
    return EXIT_OK


def cmd_generate(args, cfg: RunConfig) -> int:
    from . import generators as gen

    family = args.family
    ordering_text = None
    if family == "bandwidth":
        graph, pi = gen.bandwidth_graph(args.n, args.k)
        text = core.write_graph(graph)
        ordering_text = "".join(f"{v + 1}\n" for v in pi.order)
    elif family == "unsuited":
        inst, pi = gen.unsuited_extremal(args.n_b, args.w)
        text = core.write_instance(inst)
        ordering_text = core.write_ordering(pi, inst)
    elif family == "golden":
        cfg_ = gen.golden_ratio_config(args.d)
        text = "c marked triple " + " ".join(
            str(cfg_.instance.b_labels[b]) for b in cfg_.triple) + "\n"
        text += core.write_instance(cfg_.instance)
    elif family == "string":
        if not args.string:
            raise ValueError("--string is required for the string family")
        inst, index = gen.from_string(args.string)
        text = "".join(f"c char {ch} -> {inst.b_labels[b]}\n" for ch, b in index.items())
        text += core.write_instance(inst)
    elif family == "random":
        inst = gen.random_bipartite(args.n_a, args.n_b, args.m, cfg.seed)
        text = core.write_instance(inst)
    else:
        raise ValueError(f"unknown family {family!r}")
    if args.output:
        out = Path(args.output)
        out.write_text(text, encoding="ascii")
        if ordering_text is not None:
            out.with_suffix(".ord").write_text(ordering_text, encoding="ascii")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _verify_chunk(task):
    from .verify import verify_corpus
    items, suites = task
    return verify_corpus(items, suites)


def cmd_verify(args, cfg: RunConfig) -> int:
    from .verify import SUITES, CorpusReport, default_corpus, exhaustive_report

    suites = SUITES if args.suite == "all" else (args.suite,)
    report = CorpusReport()
    report.merge(exhaustive_report(args.exhaustive_order, args.exhaustive_order, suites))
    items = default_corpus(cfg.seed, args.count)
    chunk = max(1, len(items) // (4 * cfg.threads))
    tasks = [(items[i:i + chunk], suites) for i in range(0, len(items), chunk)]
    if cfg.threads > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            parts = list(pool.map(_verify_chunk, tasks))
    else:
        parts = [_verify_chunk(t) for t in tasks]
    for part in parts:
        report.merge(part)

    out = io.StringIO()
    print(f"seed {cfg.seed}", file=out)
    for suite in suites:
        n_viol = sum(f.suite == suite for f in report.violations)
        n_tight = sum(f.suite == suite for f in report.tight)
        print(f"{suite} checks {report.checks.get(suite, 0)} violations {n_viol} tight {n_tight}",
              file=out)
    for f in report.violations:
        print(f"VIOLATION {f.suite} {f.check} {f.source}: {f.detail}", file=out)
    if report.notes:
        print(f"note {len(report.notes)} items exceed the closed-form unsuited bound "
              f"with n_b < w-1 (outside its valid range)", file=out)
    sys.stdout.write(out.getvalue())
    if report.skipped_cycles:
        log.warning("%d cycles contained pairs with zero denominators; those pairs were skipped",
                    report.skipped_cycles)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["kind", "suite", "check", "source", "detail"])
            for kind, group in (("violation", report.violations), ("tight", report.tight),
                                ("note", report.notes)):
                for f in group:
                    writer.writerow([kind, f.suite, f.check, f.source, f.detail])
    return EXIT_OK if report.ok else EXIT_FINDINGS


def bounds_rows(cmin: float, cmax: float, steps: int):
    """Rows ``c, f(c), a*, g(c), a*_plus, g_plus(c)`` on an inclusive grid."""
    if not 0 < cmin <= cmax <= 0.5:
        raise ValueError("need 0 < cmin <= cmax <= 0.5")
    rows = []
    for i in range(steps):
        # weighted form hits both endpoints exactly
        c = cmax if steps == 1 else (cmin * (steps - 1 - i) + cmax * i) / (steps - 1)
        a_star, g = optimize_a(c)
        a_plus, g_plus = optimize_a(c, sign=+1)
        rows.append((c, f_coefficient(c), a_star, g, a_plus, g_plus))
    return rows


def cmd_bounds(args, cfg: RunConfig) -> int:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["c", "f(c)", "a_star", "g(c)", "a_star_plus", "g_plus(c)"])
    for row in bounds_rows(cfg.cmin, cfg.cmax, cfg.steps):
        writer.writerow([_fmt(x) for x in row])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oscm", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("solve", help="solve an instance (stdin or file)")
    p.add_argument("input", nargs="?")
    p.add_argument("--algo", choices=ALGORITHMS, default="auto")
    p.add_argument("--time-limit", type=float)
    p.add_argument("--dp-limit", type=int, default=24)
    p.add_argument("--branch-budget", type=int, default=30)
    common(p)

    p = sub.add_parser("analyze", help="reductions, pair classes, cutwidth bound")
    p.add_argument("input", nargs="?")
    p.add_argument("--ordering")
    p.add_argument("--dump-crossings")
    common(p)

    p = sub.add_parser("generate", help="write an instance from a family")
    p.add_argument("--family", required=True,
                   choices=("bandwidth", "unsuited", "golden", "string", "random"))
    p.add_argument("--n", type=int, default=7)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--n-b", type=int, default=12)
    p.add_argument("--w", type=int, default=6)
    p.add_argument("--d", type=int, default=100)
    p.add_argument("--string")
    p.add_argument("--n-a", type=int, default=6)
    p.add_argument("--m", type=int, default=10)
    p.add_argument("-o", "--output")
    common(p)

    p = sub.add_parser("verify", help="audit the theorem bounds over the corpus")
    p.add_argument("--suite", choices=("lemmas", "thm2", "thm3", "thm4", "all"), default="all")
    p.add_argument("--count", type=int, default=500, help="random corpus instances")
    p.add_argument("--exhaustive-order", type=int, default=6)
    p.add_argument("--csv")
    common(p)

    p = sub.add_parser("bounds", help="CSV of the dense size-bound coefficients")
    p.add_argument("--cmin", type=float, default=0.01)
    p.add_argument("--cmax", type=float, default=0.5)
    p.add_argument("--steps", type=int, default=50)
    common(p)
    return parser


COMMANDS = {"solve": cmd_solve, "analyze": cmd_analyze, "generate": cmd_generate,
            "verify": cmd_verify, "bounds": cmd_bounds}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = RunConfig(
            subcommand=args.subcommand,
            input=getattr(args, "input", None),
            algo=getattr(args, "algo", "auto"),
            threads=args.threads,
            seed=args.seed,
            time_limit=getattr(args, "time_limit", None),
            dp_limit=getattr(args, "dp_limit", 24),
            branch_budget=getattr(args, "branch_budget", 30),
            cmin=getattr(args, "cmin", 0.01),
            cmax=getattr(args, "cmax", 0.5),
            steps=getattr(args, "steps", 50),
        )
        return COMMANDS[args.subcommand](args, cfg)
    except BudgetExceeded as exc:
        print(f"oscm: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (core.InstanceFormatError, MatrixTooLarge, ValueError, OSError) as exc:
        print(f"oscm: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
