"""Command-line front end: ``synclab <command> ...``.

Exit codes: 0 success, 1 input automaton is not synchronizing
(oracle/greedy/chain), 2 usage or parse error.
"""

from __future__ import annotations

import csv
import io
import sys
from dataclasses import dataclass
from functools import wraps

import click

from synclab.audit import (
    CLAIMS,
    AuditScope,
    audit_claims,
    audit_document,
    census_csv,
    extremal_census,
    reports_csv,
    to_json,
)
from synclab.dfa import (
    Dfa,
    DfaFormatError,
    cerny_family,
    format_word,
    parse_dfa,
    serialize_dfa,
    sporadic_examples,
)
from synclab.oracle import DEFAULT_BUDGET, greedy_sync_word, shortest_sync_word
from synclab.span import run_chain, span_dimension_of_all


@dataclass
class RunConfig:
    command: str = ""
    input: str | None = None
    format: str = "text"
    seed: int = 0
    step_limit: int | None = None
    budget: int = DEFAULT_BUDGET
    workers: int = 1
    out: str | None = None


_GLOBALS = ("format", "seed", "workers", "step_limit", "budget", "out")


def _global_options(f):
    f = click.option("--format", "format", type=click.Choice(["text", "json", "csv"]), default=None)(f)
    f = click.option("--seed", type=int, default=None)(f)
    f = click.option("--workers", type=click.IntRange(min=1), default=None)(f)
    f = click.option("--step-limit", type=click.IntRange(min=1), default=None)(f)
    f = click.option("--budget", type=click.IntRange(min=1), default=None)(f)
    f = click.option("--out", type=click.Path(dir_okay=False), default=None)(f)
    return f


def _command(f):
    """Merge per-command global flags over the group's and hand over a RunConfig."""

    @_global_options
    @click.pass_context
    @wraps(f)
    def wrapper(ctx, **kwargs):
        cfg = RunConfig(**vars(ctx.obj)) if ctx.obj else RunConfig()
        cfg.command = ctx.info_name
        for name in _GLOBALS:
            value = kwargs.pop(name)
            if value is not None:
                setattr(cfg, name, value)
        return f(cfg, **kwargs)

    return wrapper


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _read_dfa(cfg: RunConfig, path: str) -> Dfa:
    cfg.input = path
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        return parse_dfa(text)
    except OSError as exc:
        _fail(f"cannot read {path}: {exc.strerror}")
    except DfaFormatError as exc:
        _fail(f"{path}: {exc}")


def _kv_text(pairs: list[tuple[str, object]]) -> str:
    width = max(len(k) for k, _ in pairs)
    lines = []
    for key, value in pairs:
        shown = "-" if value is None else value
        lines.append(f"{key:<{width}}  {shown}")
    return "\n".join(lines) + "\n"


def _table_text(header: list[str], rows: list[list[object]]) -> str:
    cells = [header] + [["-" if c is None else str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in cells)


def _csv_row(doc: dict, keys: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(keys)
    w.writerow(["" if doc[k] is None else doc[k] for k in keys])
    return buf.getvalue()


def _render(cfg: RunConfig, doc: dict, keys: list[str]) -> str:
    if cfg.format == "json":
        return to_json(doc)
    if cfg.format == "csv":
        return _csv_row(doc, keys)
    automaton = doc.get("automaton")
    body = _kv_text([(k, doc[k]) for k in keys if k != "automaton"])
    return (f"automaton:\n{automaton}" if automaton else "") + body


@click.group()
@_global_options
@click.pass_context
def main(ctx, **kwargs):
    """Synchronizing automata lab: exact oracles, chain certificates, and claim audits."""
    cfg = RunConfig()
    for name, value in kwargs.items():
        if value is not None:
            setattr(cfg, name, value)
    ctx.obj = cfg


@main.command()
@click.argument("family", type=click.Choice(["cerny", "sporadic"]))
@click.option("--n", "n", type=int, default=None, help="State count (cerny only).")
@_command
def gen(cfg, family, n):
    """Print automata in DFA text format."""
    if family == "cerny":
        if n is None:
            _fail("gen cerny requires --n")
        try:
            dfa = cerny_family(n)
        except ValueError as exc:
            _fail(str(exc))
        if cfg.format == "json":
            _emit(cfg, to_json({"kind": "gen", "name": f"cerny_{n}", "automaton": serialize_dfa(dfa)}))
        else:
            _emit(cfg, serialize_dfa(dfa))
        return
    examples = sporadic_examples()
    if cfg.format == "json":
        doc = [
            {"name": e.name, "source": e.source, "expected_length": e.expected_length,
             "automaton": serialize_dfa(e.dfa)}
            for e in examples
        ]
        _emit(cfg, to_json({"kind": "gen", "examples": doc}))
    else:
        _emit(cfg, "".join(f"# name: {e.name}\n# expected: {e.expected_length}\n{serialize_dfa(e.dfa)}" for e in examples))


@main.command()
@click.argument("input", metavar="INPUT")
@click.option("--subset-limit", type=click.IntRange(min=1), default=1 << 22, show_default=True)
@_command
def oracle(cfg, input, subset_limit):
    """Exact shortest synchronizing word (power-set BFS)."""
    dfa = _read_dfa(cfg, input)
    try:
        res = shortest_sync_word(dfa, subset_limit)
    except ValueError as exc:
        _fail(str(exc))
    doc = {
        "kind": "oracle",
        "automaton": serialize_dfa(dfa),
        "synchronizing": res.synchronizing,
        "status": "synchronizing" if res.synchronizing else "not synchronizing",
        "length": res.length,
        "witness": None if res.witness is None else format_word(res.witness, dfa.k),
        "explored": res.explored,
    }
    _emit(cfg, _render(cfg, doc, ["status", "length", "witness", "explored"]))
    sys.exit(0 if res.synchronizing else 1)


@main.command()
@click.argument("input", metavar="INPUT")
@_command
def greedy(cfg, input):
    """Pair-merging heuristic reset word."""
    dfa = _read_dfa(cfg, input)
    w = greedy_sync_word(dfa)
    doc = {
        "kind": "greedy",
        "automaton": serialize_dfa(dfa),
        "synchronizing": w is not None,
        "status": "synchronizing" if w is not None else "not synchronizing",
        "length": None if w is None else len(w),
        "word": None if w is None else format_word(w, dfa.k),
    }
    _emit(cfg, _render(cfg, doc, ["status", "length", "word"]))
    sys.exit(0 if w is not None else 1)


@main.command()
@click.argument("input", metavar="INPUT")
@click.option("--strategy", type=click.Choice(["insertion", "shortest"]), default="insertion", show_default=True)
@_command
def chain(cfg, input, strategy):
    """Ascending chain of spans with its certificate."""
    dfa = _read_dfa(cfg, input)
    synchronizing = greedy_sync_word(dfa) is not None
    cert = run_chain(dfa, cfg.step_limit, strategy)
    doc = {"kind": "chain", "synchronizing": synchronizing, **cert.to_dict()}
    if cfg.format == "json":
        text = to_json(doc)
    else:
        rows = [[i, s["word"], s["letter"], s["rank"], s["dimension"]] for i, s in enumerate(doc["steps"], 1)]
        if cfg.format == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["step", "word", "letter", "rank", "dimension"])
            w.writerows(rows)
            text = buf.getvalue()
        else:
            summary = [
                ("status", "synchronizing" if synchronizing else "not synchronizing"),
                ("strategy", strategy),
                ("outcome", cert.outcome),
                ("sync_word", doc["sync_word"]),
                ("steps", len(cert.steps)),
            ]
            if cert.notice:
                summary.append(("notice", cert.notice))
            text = (
                f"automaton:\n{doc['automaton']}"
                + _kv_text(summary)
                + _table_text(["step", "word", "letter", "rank", "dimension"], rows)
            )
    _emit(cfg, text)
    sys.exit(0 if synchronizing else 1)


def _pair(text: str) -> tuple[int, int]:
    a, _, b = text.partition(",")
    return int(a), int(b)


def table_budget_exceeded(nk: tuple[int, int], budget: int) -> bool:
    n, k = nk
    return n ** (n * k) > budget


@main.command()
@click.option("--trials", type=click.IntRange(min=0), default=1000, show_default=True)
@click.option("--exhaustive", default="3,2", show_default=True, help="N,K for the exhaustive sweep.")
@click.option("--sample-states", default="2,6", show_default=True, help="LO,HI state counts for sampling.")
@click.option("--cerny", "cerny", default="3,8", show_default=True, help="LO,HI Černý sizes.")
@click.option("--dim-max", type=click.IntRange(min=1), default=5, show_default=True)
@click.option("--ceiling-words", type=click.IntRange(min=0), default=1000, show_default=True)
@click.option("--claims", default=None, help=f"Comma-separated subset of: {', '.join(CLAIMS)}.")
@_command
def audit(cfg, trials, exhaustive, sample_states, cerny, dim_max, ceiling_words, claims):
    """Audit every lemma, corollary and bound on seeded or exhaustive populations."""
    try:
        scope = AuditScope(
            sample_states=_pair(sample_states),
            trials=trials,
            exhaustive=_pair(exhaustive),
            cerny_states=_pair(cerny),
            dim_max_n=dim_max,
            ceiling_words=ceiling_words,
            claims=tuple(claims.split(",")) if claims else None,
        )
        if table_budget_exceeded(scope.exhaustive, cfg.budget):
            _fail(f"exhaustive scope {scope.exhaustive} exceeds budget {cfg.budget}")
        reports = audit_claims(scope, cfg.seed)
    except ValueError as exc:
        _fail(str(exc))
    if cfg.format == "json":
        text = to_json(audit_document(reports, scope, cfg.seed))
    elif cfg.format == "csv":
        text = reports_csv(reports)
    else:
        rows = [[r.claim, r.trials, len(r.violations), r.verdict] for r in reports]
        text = f"seed {cfg.seed}\n" + _table_text(["claim", "trials", "violations", "verdict"], rows)
        for r in reports:
            ratio = r.details.get("max_chain_over_oracle")
            if ratio is not None:
                text += f"max chain/oracle length ratio: {ratio}\n"
    _emit(cfg, text)


@main.command()
@click.option("--n", "n", type=click.IntRange(min=1), required=True)
@click.option("--k", "k", type=click.IntRange(min=1), required=True)
@_command
def census(cfg, n, k):
    """Exhaustive census of canonical synchronizing automata."""
    try:
        doc = extremal_census(n, k, workers=cfg.workers, budget=cfg.budget)
    except ValueError as exc:
        _fail(str(exc))
    if cfg.format == "json":
        text = to_json(doc)
    elif cfg.format == "csv":
        text = census_csv(doc)
    else:
        keys = ["n", "k", "tables", "synchronizing_classes", "strongly_connected_synchronizing_classes",
                "max_oracle_length", "cerny_bound", "extremal_count", "extremal_strongly_connected_count",
                "max_chain_over_oracle"]
        text = _kv_text([(key, doc[key]) for key in keys])
        text += _kv_text([("reference_count", doc["reference"]["count"]), ("reference_note", doc["reference"]["note"])])
        rows = [
            [r["automaton"].replace("\n", " / ").rstrip(" /"), r["oracle_length"], r["chain_outcome"], r["chain_length"], r["cerny_bound"]]
            for r in doc["rows"]
        ]
        text += _table_text(["automaton", "oracle", "chain", "chain_len", "(n-1)^2"], rows)
    _emit(cfg, text)


@main.command()
@click.option("--n", "n", type=click.IntRange(min=1), required=True)
@click.option("--k", "k", type=click.IntRange(min=1), required=True)
@_command
def dim(cfg, n, k):
    """Span dimension of all row-monomial n x k matrices."""
    try:
        d = span_dimension_of_all(n, k, limit=cfg.budget)
    except ValueError as exc:
        _fail(str(exc))
    doc = {"kind": "dim", "n": n, "k": k, "dimension": d, "formula": 1 if k == 1 else n * (k - 1) + 1}
    _emit(cfg, _render(cfg, doc, ["n", "k", "dimension", "formula"]))


if __name__ == "__main__":
    main()
