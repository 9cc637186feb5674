"""Command-line surface.

Subcommands: ``tensor info|apply|subtensor|transform``, ``aux build``,
``lcp solve|w-unique``, ``tcp solve|omega-unique``, ``check <class>`` and
``reproduce-paper``. Exit codes for ``check``: 0 Holds, 1 Fails,
2 Unknown. The default seed comes from ``TENSORCOMP_SEED`` and is
overridden by ``--seeds``.
"""

from __future__ import annotations

import os
import time

import click

from . import auxiliary, classes, io, lcp, suite, tcp
from .io import ArithmeticMode, OutputFormat, RunConfig, emit_report, fraction_text
from .linalg import Matrix
from .monomials import label_text
from .tensor import SparseTensor, transform_diag, transform_perm


def _default_seed() -> int:
    raw = os.environ.get("TENSORCOMP_SEED")
    try:
        return int(raw) if raw is not None else 0
    except ValueError:
        return 0


@click.group()
@click.option("--format", "output_format", type=click.Choice(["text", "json"]),
              default="text", show_default=True, help="Report format.")
@click.option("--seeds", type=int, default=None,
              help="Search seed (defaults to TENSORCOMP_SEED or 0).")
@click.option("--exact/--float", "exact_mode", default=True, show_default=True,
              help="Arithmetic mode for verification paths.")
@click.option("--cap-lcp", type=int, default=12, show_default=True,
              help="Support-enumeration size cap.")
@click.option("--cap-tcp", type=int, default=4, show_default=True,
              help="Tensor-problem dimension cap.")
@click.option("--cap-matrix", type=int, default=8, show_default=True,
              help="Exact matrix-adequacy size cap.")
@click.pass_context
def main(ctx, output_format, seeds, exact_mode, cap_lcp, cap_tcp, cap_matrix):
    """Tensor complementarity toolkit: polynomial maps, companion systems,
    solvers and class certificates."""
    ctx.obj = RunConfig(
        mode=ArithmeticMode.EXACT if exact_mode else ArithmeticMode.FLOAT,
        seeds=seeds if seeds is not None else _default_seed(),
        output_format=OutputFormat(output_format),
        lcp_cap=cap_lcp,
        tcp_cap=cap_tcp,
        matrix_cap=cap_matrix,
    )


def _read_tensor(path: str) -> SparseTensor:
    with open(path, "r", encoding="utf-8") as fh:
        return io.parse_tensor(fh.read())


def _echo(ctx, payload) -> None:
    click.echo(emit_report(payload, ctx.obj.output_format))


@main.group()
def tensor():
    """Inspect and transform tensor files."""


@tensor.command("info")
@click.argument("path", type=click.Path(exists=True))
@click.pass_context
def tensor_info(ctx, path):
    t = _read_tensor(path)
    _echo(ctx, {
        "order": t.order,
        "dim": t.dim,
        "nnz": t.nnz,
        "row_diagonal": t.is_row_diagonal(),
        "majorization": t.majorization(),
    })


@tensor.command("apply")
@click.argument("path", type=click.Path(exists=True))
@click.option("--x", "xtext", required=True, help="Vector, e.g. '1,-1/2'.")
@click.option("--full", is_flag=True, help="Evaluate the degree-m form instead.")
@click.pass_context
def tensor_apply(ctx, path, xtext, full):
    t = _read_tensor(path)
    x = io.parse_vector(xtext)
    if ctx.obj.mode == ArithmeticMode.FLOAT:
        x = tuple(float(v) for v in x)
    if full:
        _echo(ctx, {"value": t.apply_full(x)})
    else:
        _echo(ctx, {"value": tuple(t.apply_deg(x))})


@tensor.command("subtensor")
@click.argument("path", type=click.Path(exists=True))
@click.option("--indices", required=True, help="1-based index subset, e.g. '2,3'.")
@click.pass_context
def tensor_subtensor(ctx, path, indices):
    t = _read_tensor(path)
    subset = [int(tok) for tok in indices.replace(",", " ").split()]
    sub = t.principal_subtensor(subset)
    click.echo(io.emit_tensor(sub, header_comment=f"principal sub-tensor on {subset}"), nl=False)


@tensor.command("transform")
@click.argument("path", type=click.Path(exists=True))
@click.option("--perm", help="Permutation as images of 1..n, e.g. '2,1'.")
@click.option("--diag-p", "diag_p", help="Left diagonal, e.g. '2,3'.")
@click.option("--diag-q", "diag_q", help="Right diagonal, e.g. '1,2'.")
@click.pass_context
def tensor_transform(ctx, path, perm, diag_p, diag_q):
    t = _read_tensor(path)
    if perm and (diag_p or diag_q):
        raise click.UsageError("use either --perm or the diagonal pair")
    if perm:
        images = [int(tok) for tok in perm.replace(",", " ").split()]
        rows = [[1 if j + 1 == images[i] else 0 for j in range(t.dim)]
                for i in range(t.dim)]
        out = transform_perm(t, Matrix.from_rows(rows))
        note = f"conjugated by permutation {images}"
    elif diag_p and diag_q:
        p = Matrix.diagonal(io.parse_vector(diag_p))
        q = Matrix.diagonal(io.parse_vector(diag_q))
        out = transform_diag(t, p, q)
        note = "two-sided diagonal scaling"
    else:
        raise click.UsageError("need --perm or both --diag-p and --diag-q")
    click.echo(io.emit_tensor(out, header_comment=note), nl=False)


@main.group()
def aux():
    """Companion-system construction."""


@aux.command("build")
@click.argument("path", type=click.Path(exists=True))
@click.option("--q", "qtext", default=None, help="Right-hand side to pad.")
@click.pass_context
def aux_build(ctx, path, qtext):
    t = _read_tensor(path)
    system = auxiliary.build(t)
    headers = [label_text(a) for a in system.basis.labels]
    payload = {
        "columns": headers,
        "coef": system.coef,
        "abar": system.abar,
        "majorization_block": auxiliary.split_blocks(system)[0],
        "mixed_block": auxiliary.split_blocks(system)[1],
        "mixed_block_zero": auxiliary.mixed_block_is_zero(system),
    }
    if qtext is not None:
        payload["qbar"] = auxiliary.pad_rhs(io.parse_vector(qtext), system.size)
    if ctx.obj.output_format == OutputFormat.TEXT:
        widths = [max(len(h), 6) for h in headers]
        lines = ["  ".join(h.rjust(w) for h, w in zip(headers, widths))]
        for row in system.coef.data:
            lines.append("  ".join(fraction_text(v).rjust(w) for v, w in zip(row, widths)))
        click.echo("\n".join(lines))
        payload = {k: v for k, v in payload.items() if k not in ("columns", "coef")}
    _echo(ctx, payload)


def _read_lcp(path: str) -> lcp.LcpInstance:
    with open(path, "r", encoding="utf-8") as fh:
        return io.parse_lcp(fh.read())


@main.group(name="lcp")
def lcp_group():
    """Linear complementarity solvers."""


@lcp_group.command("solve")
@click.argument("path", type=click.Path(exists=True))
@click.option("--method", type=click.Choice(["lemke", "enumerate"]), default="lemke",
              show_default=True)
@click.pass_context
def lcp_solve(ctx, path, method):
    inst = _read_lcp(path)
    t0 = time.perf_counter()
    if method == "lemke":
        result = lcp.lemke_solve(inst)
        payload = {"method": "lemke", "result": result}
    else:
        pieces = lcp.enumerate_solutions(inst, cap=ctx.obj.lcp_cap)
        payload = {"method": "enumerate", "pieces": pieces}
    payload["timings"] = {"seconds": time.perf_counter() - t0}
    _echo(ctx, payload)


@lcp_group.command("w-unique")
@click.argument("path", type=click.Path(exists=True))
@click.pass_context
def lcp_w_unique(ctx, path):
    inst = _read_lcp(path)
    rep = lcp.w_unique(inst, cap=ctx.obj.lcp_cap)
    _echo(ctx, {"unique": rep.unique, "vacuous": rep.vacuous,
                "w_values": rep.w_values, "witness_pair": rep.witness_pair})


@main.group(name="tcp")
def tcp_group():
    """Tensor complementarity solvers."""


@tcp_group.command("solve")
@click.argument("path", type=click.Path(exists=True))
@click.option("--q", "qtext", required=True)
@click.option("--method", type=click.Choice(["auto", "reduced", "enumerate"]),
              default="auto", show_default=True)
@click.option("--budget", type=int, default=40, show_default=True,
              help="Random starts per support.")
@click.pass_context
def tcp_solve(ctx, path, qtext, method, budget):
    t = _read_tensor(path)
    inst = tcp.TcpInstance(t, io.parse_vector(qtext))
    t0 = time.perf_counter()
    system = auxiliary.build(t)
    reducible = (t.order % 2 == 0 and auxiliary.mixed_block_is_zero(system)
                 and ctx.obj.mode == ArithmeticMode.EXACT)
    if method == "reduced" or (method == "auto" and reducible):
        families = tcp.solve_exact_reduced(inst, cap=ctx.obj.lcp_cap)
        payload = {
            "method": "reduced",
            "families": families,
            "solutions": tcp.reduced_point_solutions(inst, families),
        }
    else:
        sols = tcp.solve_enumerate(inst, budget=budget, cap=ctx.obj.tcp_cap,
                                   seed=ctx.obj.seeds)
        payload = {"method": "enumerate", "solutions": sols,
                   "note": "enumeration is heuristic: verified points only"}
    payload["timings"] = {"seconds": time.perf_counter() - t0}
    _echo(ctx, payload)


@tcp_group.command("omega-unique")
@click.argument("path", type=click.Path(exists=True))
@click.option("--q", "qtext", required=True)
@click.pass_context
def tcp_omega_unique(ctx, path, qtext):
    t = _read_tensor(path)
    inst = tcp.TcpInstance(t, io.parse_vector(qtext))
    rep = tcp.omega_unique(inst, lcp_cap=ctx.obj.lcp_cap, tcp_cap=ctx.obj.tcp_cap,
                           seed=ctx.obj.seeds)
    _echo(ctx, rep)


@main.command("check")
@click.argument("class_name")
@click.argument("path", type=click.Path(exists=True))
@click.option("--seeds", "seeds", type=int, default=None,
              help="Override the falsifier seed count.")
@click.option("--budget", type=int, default=10000, show_default=True,
              help="Samples per falsifier seed.")
@click.pass_context
def check_cmd(ctx, class_name, path, seeds, budget):
    """Class membership with certified verdicts (exit 0 Holds, 1 Fails,
    2 Unknown)."""
    t = _read_tensor(path)
    search = classes.SearchBudget(seeds=seeds if seeds is not None else 2, samples=budget)
    verdict = classes.check(class_name, t, budget=search, seed=ctx.obj.seeds,
                            matrix_cap=ctx.obj.matrix_cap)
    payload = {
        "class": classes.normalize_class_name(class_name),
        "verdict": verdict.status,
        "certificate": verdict.certificate,
        "counterexample": verdict.counterexample,
        "search_report": verdict.search_report,
    }
    _echo(ctx, payload)
    ctx.exit(verdict.exit_code)


@main.command("reproduce-paper")
@click.pass_context
def reproduce(ctx):
    """Replay the bundled worked-example corpus and diff against frozen
    expected values."""
    t0 = time.perf_counter()
    report = suite.run_paper_suite()
    for result in report.results:
        status = "ok" if result.ok else "MISMATCH"
        click.echo(f"{result.id:.<34} {status}")
        for m in result.mismatches:
            click.echo(f"    {m}")
    click.echo(f"{len(report.results)} cases in {time.perf_counter() - t0:.2f}s")
    ctx.exit(report.exit_code)


if __name__ == "__main__":
    main()
