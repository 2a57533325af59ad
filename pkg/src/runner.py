"""
Run configuration, per-command instance evaluation and the corpus search.

``run`` returns an exit status together with the report envelope; the click
script in ``scripts/sidorenko_toolkit.py`` only parses options and writes the
envelope out.
"""

from dataclasses import asdict, dataclass, field

import click
from joblib import Parallel, delayed

from src.config import DEFAULT_MAX_EVALUATIONS
from src.drc_audit import DrcParams, deficient_tuple_count, verify_goodstep
from src.embed_verify import (
    ThresholdPredicate,
    estimate_hyper_hom_fraction,
    link_hypergraph,
    verify_importantstep,
    verify_main_theorem,
    verify_tensor_multiplicativity,
)
from src.errors import ConfigError, ParseError
from src.graph_core import (
    BipartiteApexGraph,
    emit_graph6,
    is_apex_bipartite,
    load_graphs,
    parse_graph6,
    random_graph,
)
from src.hom_count import enumerate_apex_bipartite, hom_density, sidorenko_check
from src.numeric_core import ExactRational
from src.report import approx, build_envelope

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_GUARD = 3
EXIT_VIOLATION = 4

COMMANDS = ["hom", "density", "check-sidorenko", "drc", "embed-verify", "tensor", "search"]
NEEDS_H = {"hom", "density", "check-sidorenko", "embed-verify", "tensor"}


@dataclass
class RunConfig:
    command: str
    h_graph6: str | None = None
    g_graph6: str | None = None
    h_file: str | None = None
    g_files: tuple = ()
    n: int | None = None
    k: int | None = None
    r: int | None = None
    max_vertices: int | None = None
    random: str | None = None
    seed: int = 0
    sample_count: int | None = None
    guard: int = DEFAULT_MAX_EVALUATIONS
    out: str | None = None
    fmt: str = "json"
    strict: bool = False
    timestamp: bool = True
    jobs: int = 1

    def validate(self):
        """
        Check that the parameters the command needs are present.

        Raises
        ------
        ConfigError
            On a missing or out-of-range parameter.
        """
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}; choose from {', '.join(COMMANDS)}.")
        if self.command in NEEDS_H and not (self.h_graph6 or self.h_file):
            raise ConfigError(f"{self.command} needs --h-graph6 or --h-file.")
        if not (self.g_graph6 or self.g_files or self.random):
            raise ConfigError(f"{self.command} needs --g-graph6, --g-file or --random.")
        if self.command == "drc" and self.n is None:
            raise ConfigError("drc needs --n.")
        if self.command == "search" and self.max_vertices is None:
            raise ConfigError("search needs --max-vertices.")
        for name in ("n", "r", "max_vertices", "sample_count"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ConfigError(f"--{name.replace('_', '-')} must be at least 1, got {value}.")
        if self.k is not None and (self.n is None or not 1 <= self.k <= self.n):
            raise ConfigError("--k must lie in 1..n and needs --n.")
        if self.guard < 1:
            raise ConfigError(f"--guard must be positive, got {self.guard}.")
        if self.jobs == 0:
            raise ConfigError("--jobs must be non-zero.")

    def echo(self):
        """Configuration fields that affect results (output location excluded)."""
        fields = asdict(self)
        for name in ("out", "fmt", "timestamp", "jobs", "strict"):
            fields.pop(name)
        return fields


@dataclass
class RunOutcome:
    status: int
    envelope: dict
    violations: list = field(default_factory=list)


def graph_label(G, fallback):
    try:
        return emit_graph6(G)
    except ValueError:
        return fallback


def parse_random_spec(spec):
    """
    Parse ``N,P_NUM/P_DEN,COUNT``.

    Raises
    ------
    ParseError
        If the text does not have that shape.
    """
    fields = spec.split(",")
    if len(fields) != 3:
        raise ParseError(f"--random expects N,P_NUM/P_DEN,COUNT, got {spec!r}", 0)
    try:
        N, count = int(fields[0]), int(fields[2])
        p = ExactRational.parse(fields[1])
    except ValueError as exc:
        raise ParseError(f"--random expects N,P_NUM/P_DEN,COUNT, got {spec!r}", 0) from exc
    return N, p, count


def random_corpus(N, p, count, seed):
    """``count`` graphs G(N, p); graph i uses seed ``(seed + i) mod 2^64``."""
    return [random_graph(N, p, (seed + i) % 2**64) for i in range(count)]


def _load(graph6_text, paths):
    labelled = []
    if graph6_text:
        G = parse_graph6(graph6_text)
        labelled.append((graph_label(G, graph6_text), G))
    for path in paths:
        for index, G in enumerate(load_graphs(path)):
            labelled.append((graph_label(G, f"{path}#{index}"), G))
    return labelled


def _unique_labels(labelled):
    """Suffix repeated labels with their position so instance ids stay unique."""
    seen = {}
    unique = []
    for index, (label, G) in enumerate(labelled):
        if label in seen:
            label = f"{label}#{index}"
        seen[label] = index
        unique.append((label, G))
    return unique


def load_h_graphs(config):
    return _unique_labels(_load(config.h_graph6, [config.h_file] if config.h_file else []))


def load_g_graphs(config):
    labelled = _load(config.g_graph6, config.g_files)
    if config.random:
        N, p, count = parse_random_spec(config.random)
        labelled.extend((graph_label(G, f"random#{i}"), G) for i, G in enumerate(random_corpus(N, p, count, config.seed)))
    return _unique_labels(labelled)


def _instance_id(**parts):
    return ";".join(f"{key}={value}" for key, value in parts.items() if value is not None)


def _hom_record(h_label, H, g_label, G, config):
    result = hom_density(H, G, config.guard)
    return {"instance_id": _instance_id(H=h_label, G=g_label), "command": "hom", "status": "ok", "count": result.count}


def _density_record(h_label, H, g_label, G, config):
    result = hom_density(H, G, config.guard)
    return {
        "instance_id": _instance_id(H=h_label, G=g_label),
        "command": "density",
        "status": "ok",
        "count": result.count,
        "density": result.density,
        "density_approx": approx(result.density),
    }


def _sidorenko_record(h_label, H, g_label, G, config, command="check-sidorenko"):
    verdict = sidorenko_check(H, G, config.guard)
    status = "ok"
    if not verdict.holds:
        status = "violation" if verdict.apex_hypothesis else "counterexample"
    return {
        "instance_id": _instance_id(H=h_label, G=g_label),
        "command": command,
        "status": status,
        "holds": verdict.holds,
        "apex_hypothesis": verdict.apex_hypothesis,
        "count": verdict.count,
        "lhs": verdict.lhs,
        "rhs": verdict.rhs,
        "slack": verdict.slack_ratio,
        "slack_approx": approx(verdict.slack_ratio),
    }


def _drc_record(g_label, G, config):
    report = verify_goodstep(G, config.n)
    record = {
        "instance_id": _instance_id(G=g_label, n=config.n),
        "command": "drc",
        "status": "violation" if report.lemma_violation else "ok",
        "holds": report.holds,
        "good_degree_sum": report.good_degree_sum,
        "bound": report.bound,
        "good_vertices": report.good_vertices,
        "xk_checks": [
            {"k": check.k, "X_k": check.X_k, "upper": check.upper, "holds": check.holds, "all_hold": check.all_hold}
            for check in report.xk_checks
        ],
    }
    if config.k is not None:
        params = DrcParams.for_graph(G, config.n)
        record["deficient_at_k"] = [deficient_tuple_count(G, v, config.k, params) for v in range(G.vertex_count)]
    return record


def _lemma_fields(report):
    return {
        "status": "violation" if report.lemma_violation else "ok",
        "hypothesis_satisfied": report.hypothesis_satisfied,
        "conclusion_holds": report.conclusion_holds,
        "internal_checks_hold": report.internal_checks_hold,
        "lhs": report.lhs,
        "rhs_num": report.rhs_num,
        "rhs_den": report.rhs_den,
    }


def _embed_record(h_label, H, g_label, G, config):
    apex = H if isinstance(H, BipartiteApexGraph) else BipartiteApexGraph.from_graph(H)
    report = verify_importantstep(apex, G, config.guard)
    details = dict(report.details)
    if config.sample_count:
        hyp = link_hypergraph(apex)
        for anchor in details["anchors"]:
            pred = ThresholdPredicate(G, anchor["vertex"], DrcParams.for_graph(G, apex.n))
            estimate = estimate_hyper_hom_fraction(hyp, pred, config.sample_count, config.seed)
            anchor["sampled_fraction_approx"] = estimate.fraction
            anchor["sampling_passes"] = estimate.passes
    return {
        "instance_id": _instance_id(H=h_label, G=g_label),
        "command": "embed-verify",
        **_lemma_fields(report),
        "details": details,
    }


def _tensor_record(h_label, H, f_label, F, g_label, G, config):
    report = verify_tensor_multiplicativity(H, F, G, config.guard)
    return {
        "instance_id": _instance_id(H=h_label, F=f_label, G=g_label),
        "command": "tensor",
        **_lemma_fields(report),
        "details": report.details,
    }


def _main_theorem_record(h_label, H, g_label, G, config):
    report = verify_main_theorem(H, G, config.r, config.guard)
    return {
        "instance_id": _instance_id(H=h_label, G=g_label, r=config.r),
        "command": "tensor",
        **_lemma_fields(report),
        "details": report.details,
    }


def _search_record(h_label, H, g_label, G, config):
    record = _sidorenko_record(h_label, H, g_label, G, config, command="search")
    lower = verify_importantstep(H, G, config.guard)
    record["lower_bound_holds"] = lower.conclusion_holds
    if lower.lemma_violation:
        record["status"] = "violation"
    return record


def _tasks(config):
    """``(instance_label, function, args)`` for every instance of the command."""
    graphs = load_g_graphs(config)
    command = config.command
    if command == "drc":
        return [(label, _drc_record, (label, G, config)) for label, G in graphs]
    if command == "search":
        apex_graphs = _unique_labels(
            [(emit_graph6(H.as_graph()), H) for H in enumerate_apex_bipartite(config.max_vertices)]
        )
        return [
            (f"{h_label}/{g_label}", _search_record, (h_label, H, g_label, G, config))
            for h_label, H in apex_graphs
            for g_label, G in graphs
        ]
    h_graphs = load_h_graphs(config)
    handlers = {
        "hom": _hom_record,
        "density": _density_record,
        "check-sidorenko": _sidorenko_record,
        "embed-verify": _embed_record,
    }
    if command in handlers:
        return [
            (f"{h_label}/{g_label}", handlers[command], (h_label, H, g_label, G, config))
            for h_label, H in h_graphs
            for g_label, G in graphs
        ]
    tasks = [
        (f"{h_label}/{f_label}/{g_label}", _tensor_record, (h_label, H, f_label, F, g_label, G, config))
        for h_label, H in h_graphs
        for i, (f_label, F) in enumerate(graphs)
        for g_label, G in graphs[i:]
    ]
    if config.r is not None:
        tasks.extend(
            (f"{h_label}/{g_label}", _main_theorem_record, (h_label, H, g_label, G, config))
            for h_label, H in h_graphs
            if is_apex_bipartite(H)
            for g_label, G in graphs
        )
    return tasks


def _evaluate(label, function, args):
    try:
        return function(*args)
    except ParseError:
        raise
    except ValueError as exc:
        raise type(exc)(f"instance {label}: {exc}") from exc


def _summary(records):
    violations = sorted(record["instance_id"] for record in records if record["status"] == "violation")
    counterexamples = sorted(record["instance_id"] for record in records if record["status"] == "counterexample")
    summary = {"instances": len(records), "violations": violations, "counterexamples": counterexamples}
    min_slack = {}
    for record in records:
        slack = record.get("slack")
        if slack is None:
            continue
        h_label = record["instance_id"].split(";")[0].removeprefix("H=")
        best = min_slack.get(h_label)
        if best is None or slack < best["slack"]:
            min_slack[h_label] = {
                "slack": slack,
                "slack_approx": approx(slack),
                "g": record["instance_id"].split(";")[1].removeprefix("G="),
            }
    if min_slack:
        summary["min_slack_by_h"] = min_slack
    return summary


def run(config):
    """
    Execute ``config.command`` over every input instance.

    Returns
    -------
    RunOutcome
        ``status`` is 0 when every instance passed and 4 when some lemma
        check failed; with ``strict`` the run stops at the first failure.

    Raises
    ------
    ConfigError, ParseError, InstanceTooLargeError, OSError
        Mapped to exit statuses by the command-line front end.
    """
    config.validate()
    tasks = _tasks(config)
    click.echo(f"Running {config.command} on {len(tasks)} instance(s)...", err=True)
    if config.strict or config.jobs == 1:
        records = []
        for label, function, args in tasks:
            record = _evaluate(label, function, args)
            records.append(record)
            if config.strict and record["status"] == "violation":
                click.echo(f"Lemma violation at {record['instance_id']}; stopping (--strict).", err=True)
                break
    else:
        records = Parallel(n_jobs=config.jobs)(delayed(_evaluate)(*task) for task in tasks)

    summary = _summary(records)
    envelope = build_envelope(config.echo(), records, summary, timestamp=config.timestamp)
    violations = summary["violations"]
    if violations:
        click.echo(f"{len(violations)} lemma violation(s) found.", err=True)
    return RunOutcome(EXIT_VIOLATION if violations else EXIT_OK, envelope, violations)


def search(config):
    """
    Sweep every apex H up to ``config.max_vertices`` against the G corpus.

    Each (H, G) pair gets the Sidorenko verdict and the apex lower bound; the
    summary lists the smallest slack per H and any violations.
    """
    if config.command != "search":
        config = RunConfig(**{**asdict(config), "command": "search"})
    return run(config)
