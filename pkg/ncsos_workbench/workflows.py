"""Workflows behind the ``ncsos`` subcommands.

Each workflow is a plain function with typed parameters so that jsonargparse
can build its command line. Results are printed as rich tables; ``out``
writes the machine-readable artifact (or the rendered report) to a file.
Workflows return an exit code, None meaning success.
"""

import io
from fractions import Fraction
from pathlib import Path

from rich.console import Console
from rich.table import Table

from ncsos_workbench.certificates.gram import (
    GramCertificate,
    SearchResult,
    sos_search,
    trace_sos_search,
    write_certificate,
)
from ncsos_workbench.certificates.halting import (
    eval_state_alpha,
    eval_sync_state_beta,
    expected_tau_pq,
    halting_rep,
    tau_pq,
)
from ncsos_workbench.certificates.inequalities import calibration_report
from ncsos_workbench.certificates.quotients import (
    CommutativeQuotient,
    FreeStarQuotient,
    InvolutiveQuotient,
    Quotient,
)
from ncsos_workbench.config import WorkbenchConfig, load_config
from ncsos_workbench.decompositions.decomposition import (
    read_decomposition,
    size,
    verify,
    write_decomposition,
)
from ncsos_workbench.decompositions.key_relation import decompose_key_relation, size_exponent
from ncsos_workbench.errors import BudgetExhausted, VerificationFailed
from ncsos_workbench.groups.cover import InvolutiveCover
from ncsos_workbench.groups.gs import GroupGS, WordProblemOutcome
from ncsos_workbench.groups.ks import KGroup, word_metrics
from ncsos_workbench.machines.library import resolve_machine
from ncsos_workbench.machines.turing import TuringMachine, run_bounded
from ncsos_workbench.presentations.presentation import free_reduce
from ncsos_workbench.presentations.provider import TruncatedProvider
from ncsos_workbench.reduction.compiler import compile_alpha, compile_beta
from ncsos_workbench.reduction.relations import relations_Rm
from ncsos_workbench.selftest import run_selftest, selftest_table
from ncsos_workbench.utils.logging import get_logger
from ncsos_workbench.words.formats import format_polynomial, format_tensor, parse_polynomial
from ncsos_workbench.words.polynomial import involutive_reduce
from ncsos_workbench.words.word import Word, parse_word

logger = get_logger(__name__)

DEFAULT_MACHINE = "halt_immediately"
DEFAULT_BUDGET = 64
REPORT_WIDTH = 100
NORMAL_FORMS = ("ks", "gs", "h", "z2", "free")
QUOTIENTS = ("involutive", "commutative", "free")


def _config(path: str | None) -> WorkbenchConfig:
    return load_config(path)


def _table(title: str) -> Table:
    table = Table(title=title)
    table.add_column("Name", justify="right", style="cyan")
    table.add_column("Metric", style="magenta")
    table.add_column("Value", justify="right", style="green")
    return table


def render(table: Table) -> str:
    """Plain-text rendering with a fixed width, identical across runs."""
    buffer = io.StringIO()
    Console(file=buffer, width=REPORT_WIDTH, color_system=None, force_terminal=False).print(table)
    return buffer.getvalue()


def _emit(table: Table, out: str | None = None) -> None:
    Console().print(table)
    if out is not None:
        Path(out).write_text(render(table))
        logger.info(f"wrote report to {out}")


def _text_or_file(value: str) -> str:
    path = Path(value)
    if len(value) < 4096 and "\n" not in value and path.is_file():
        return path.read_text()
    return value


def normalize(
    word: str,
    builtin: str = "ks",
    tm: str = "delay:3",
    budget: int | None = None,
    out: str | None = None,
) -> None:
    """Print the normal form of a word.

    Args:
        word: the word in token syntax, e.g. ``"z[0,0] x[0,0]"``.
        builtin: ks (the group K), gs (the group G), h (its involutive cover),
            z2 (free product of Z_2's) or free (free group).
        tm: machine defining the groups.
        budget: simulation budget per representative computation.
        out: optional file for the normal form.
    """
    if builtin not in NORMAL_FORMS:
        raise ValueError(f"unknown builtin {builtin!r}; choose from {NORMAL_FORMS}")
    w = parse_word(word)
    if builtin == "ks":
        kg = KGroup(resolve_machine(tm), budget)
        nf_word = kg.eta(Word(tuple(kg.canonical_letter(x) for x in w))).to_word()
    elif builtin == "gs":
        nf_word = GroupGS(resolve_machine(tm), budget).normal_form(w).to_word()
    elif builtin == "h":
        nf_word = InvolutiveCover(resolve_machine(tm), budget).normal_form(w).to_word()
    elif builtin == "z2":
        nf_word = involutive_reduce(w)
    else:
        nf_word = free_reduce(w)
    length, bits, max_index = word_metrics(nf_word)
    in_length, in_bits, in_index = word_metrics(w)
    table = _table(f"normal form in {builtin}")
    table.add_row("normal form", "", str(nf_word))
    table.add_row("length", "input -> output", f"{in_length} -> {length}")
    table.add_row("bit length", "input -> output", f"{in_bits} -> {bits}")
    table.add_row("max index", "input -> output", f"{in_index} -> {max_index}")
    Console().print(table)
    print(nf_word)
    if out is not None:
        Path(out).write_text(f"{nf_word}\n")


def wp(word: str, tm: str = "delay:3", budget: int | None = None, out: str | None = None) -> int | None:
    """Decide whether a word over J, S, T, W, X, Z is trivial in G.

    Args:
        word: the word; ``X[m,i]`` and ``Z[m,i]`` macros are expanded.
        tm: machine defining G.
        budget: simulation budget per representative computation.
        out: optional report file.
    """
    outcome, report = GroupGS(resolve_machine(tm), budget).is_trivial(parse_word(word))
    table = _table("word problem")
    table.add_row("outcome", "", outcome.value)
    table.add_row("pinches", "count", str(len(report.pinches)))
    for k, p in enumerate(report.pinches):
        table.add_row(f"pinch {k}", f"{p.letter}^{p.exponent} @ {p.position}", f"{p.element} -> {p.image}")
    table.add_row("final word", "", str(report.final_word))
    _emit(table, out)
    if outcome is WordProblemOutcome.UNDECIDED_BUDGET:
        raise BudgetExhausted(f"word problem undecided within the budget for {word!r}")
    return None


def compile_reduction(
    kind: str,
    tm: str = DEFAULT_MACHINE,
    m: int = 1,
    config: str | None = None,
    out: str | None = None,
) -> None:
    """Compile alpha(m) or beta(m) and write the expanded polynomial.

    Args:
        kind: alpha or beta.
        tm: machine reference.
        m: machine input, at least 1.
        config: reduction config file.
        out: file for the expanded polynomial.
    """
    cfg = _config(config)
    machine = resolve_machine(tm)
    table = _table(f"{kind}({m}) for {machine.name}")
    if kind == "alpha":
        alpha = compile_alpha(m, machine, cfg.reduction)
        text = format_polynomial(alpha.polynomial)
        table.add_row("W_m", "relations", str(len(alpha.w_m)))
        table.add_row("squares", "count", str(len(alpha.square_roots)))
        table.add_row("penalty", "1/(Lambda~^2 m^2k')", str(alpha.penalty))
        table.add_row("alpha", "terms", str(len(alpha.polynomial)))
    elif kind == "beta":
        beta = compile_beta(m, machine, cfg.reduction)
        text = format_tensor(beta.polynomial)
        table.add_row("tensor squares", "count", str(len(beta.square_roots)))
        table.add_row("sync terms", "count", str(len(beta.sync)))
        table.add_row("penalty", "1/(Gamma~^2 m^2k')", str(beta.penalty))
        table.add_row("beta", "terms", str(len(beta.polynomial)))
    else:
        raise ValueError(f"kind must be alpha or beta, got {kind!r}")
    Console().print(table)
    if out is not None:
        Path(out).write_text(text)
        logger.info(f"wrote {kind}({m}) to {out}")


def verify_decomp(path: str, out: str | None = None) -> int | None:
    """Verify a decomposition file exactly and report its size.

    Args:
        path: decomposition file (its target and relations files sit next to it).
        out: optional report file.
    """
    d = read_decomposition(path)
    result = verify(d)
    s = size(d)
    table = _table(f"decomposition {Path(path).name}")
    table.add_row("entries", "count", str(len(d)))
    table.add_row("valid", "target = sum of entries", str(result.valid))
    table.add_row("size", "sum |lambda| (1 + ||r|| deg v)", str(s.value))
    if not result:
        table.add_row("difference", "terms", str(len(result.difference)))
    _emit(table, out)
    if not result:
        raise VerificationFailed(f"{path} does not expand to its target")
    return None


def decompose_key(
    tm: str = "loop_forever",
    m: int = 1,
    n: int = 0,
    config: str | None = None,
    budget: int | None = None,
    out: str | None = None,
) -> None:
    """Decompose the key relation P~_n + X~_n P~_n X~_n - P~_{n+1} over R_m.

    Args:
        tm: machine reference; it must not halt on m at or before step n.
        m: machine input, at least 1.
        n: step index.
        config: reduction config file.
        budget: steps simulated to check n < h(m).
        out: file for the decomposition.
    """
    cfg = _config(config)
    d = decompose_key_relation(m, n, resolve_machine(tm), config=cfg.reduction, budget=budget)
    s = size(d)
    table = _table(f"key relation m={m} n={n}")
    table.add_row("entries", "count", str(len(d)))
    table.add_row("size", "exact", str(s.value))
    table.add_row("bound", "C((n+1)m)^k", str(cfg.reduction.size_bound(m, n)))
    Console().print(table)
    if out is not None:
        write_decomposition(d, out)


def _quotient(kind: str, generators: list[str]) -> Quotient:
    if kind == "involutive":
        return InvolutiveQuotient(generators)
    if kind == "commutative":
        return CommutativeQuotient(generators)
    if kind == "free":
        return FreeStarQuotient(generators)
    raise ValueError(f"unknown quotient {kind!r}; choose from {QUOTIENTS}")


def _gram(
    search: str,
    polynomial: str,
    degree: int,
    quotient: str,
    generators: list[str] | None,
    config: str | None,
    out: str | None,
) -> SearchResult:
    cfg = _config(config)
    f = parse_polynomial(_text_or_file(polynomial))
    names = generators or sorted({x.name for x in f.letters()})
    q = _quotient(quotient, names)
    fn = sos_search if search == "sos" else trace_sos_search
    result = fn(f, q, degree, cfg.solver)
    table = _table(f"{search} at degree {degree}")
    table.add_row("basis", "monomials", str(len(result.basis)))
    table.add_row("status", "", "certified" if result.feasible else "infeasible")
    if isinstance(result, GramCertificate):
        table.add_row("residual", "max coefficient error", f"{result.residual:.3e}")
        table.add_row("min eigenvalue", "", f"{result.min_eigenvalue:.3e}")
        table.add_row("commutators", "count", str(len(result.commutators)))
    else:
        table.add_row("residual floor", "", f"{result.residual_floor:.3e}")
        table.add_row("reason", "", result.reason)
    table.add_row("iterations", "", str(result.iterations))
    Console().print(table)
    if out is not None:
        write_certificate(result, out)
    return result


def sos(
    polynomial: str,
    degree: int = 1,
    quotient: str = "involutive",
    generators: list[str] | None = None,
    config: str | None = None,
    out: str | None = None,
) -> None:
    """Search for a sum-of-squares certificate.

    Args:
        polynomial: polynomial text (``c : word`` per line) or a file holding it.
        degree: largest monomial degree of the squared elements.
        quotient: involutive, commutative or free.
        generators: letters of the quotient; defaults to those of the polynomial.
        config: solver config file.
        out: certificate file.
    """
    _gram("sos", polynomial, degree, quotient, generators, config, out)


def trace_sos(
    polynomial: str,
    degree: int = 1,
    quotient: str = "involutive",
    generators: list[str] | None = None,
    config: str | None = None,
    out: str | None = None,
) -> None:
    """Search for a certificate of squares plus commutators; arguments as for ``sos``."""
    _gram("trace-sos", polynomial, degree, quotient, generators, config, out)


def _halting_rows(table: Table, machine: TuringMachine, m: int, cfg: WorkbenchConfig, budget: int) -> bool:
    """Add tau(PQ), tau(alpha) and phi(beta) rows; True when every value is as expected."""
    rep = halting_rep(machine, m, budget)
    provider = TruncatedProvider(machine)
    rep.verify(relations_Rm(m, provider))
    tpq = tau_pq(rep)
    alpha = eval_state_alpha(machine, m, cfg.reduction, rep, provider)
    beta = eval_sync_state_beta(machine, m, cfg.reduction, rep, provider)
    table.add_row("h(m)", "halting time", str(rep.n))
    table.add_row("tau(PQ)", f"expected {expected_tau_pq(rep.n)}", str(tpq))
    table.add_row("tau(alpha(m))", f"expected {alpha.expected}", str(alpha.value))
    table.add_row("alpha squares", "nonzero / total", f"{alpha.nonzero_squares}/{alpha.squares}")
    table.add_row("phi(beta(m))", f"expected {beta.expected}", str(beta.value))
    table.add_row("beta squares", "nonzero / total", f"{beta.nonzero_squares}/{beta.squares}")
    return (
        tpq == expected_tau_pq(rep.n)
        and all(e.value == e.expected and e.nonzero_squares == 0 and e.value < 0 for e in (alpha, beta))
    )


def eval_halting(
    tm: str = DEFAULT_MACHINE,
    m: int = 1,
    config: str | None = None,
    budget: int = DEFAULT_BUDGET,
    out: str | None = None,
) -> None:
    """Evaluate tau(PQ), alpha(m) and beta(m) in the block representation.

    Args:
        tm: machine reference; it must halt on m within the budget.
        m: machine input, at least 1.
        config: reduction config file.
        budget: simulation budget.
        out: optional report file.
    """
    table = _table(f"halting evaluation for {tm}, m={m}")
    ok = _halting_rows(table, resolve_machine(tm), m, _config(config), budget)
    _emit(table, out)
    if not ok:
        raise VerificationFailed("an evaluated value differs from the closed form")


def pipeline(
    tm: str = DEFAULT_MACHINE,
    m: int = 1,
    config: str | None = None,
    budget: int = DEFAULT_BUDGET,
    horizon: int = 4,
    calibrate: bool = False,
    seed: int = 0,
    out: str | None = None,
) -> None:
    """Run the whole chain for one input and print a single report.

    When tm halts on m the report has tau(PQ), tau(alpha(m)) and phi(beta(m));
    otherwise it has the key-relation decompositions for n < horizon.

    Args:
        tm: machine reference.
        m: machine input, at least 1.
        config: config file.
        budget: simulation budget for the halting check.
        horizon: number of key relations to decompose when tm has not halted.
        calibrate: also report the P~_0 calibration on perturbed states.
        seed: seed of the calibration states.
        out: report file.
    """
    cfg = _config(config)
    machine = resolve_machine(tm)
    profile = run_bounded(machine, m, budget)
    table = _table(f"pipeline for {machine.name}, m={m}")
    table.add_row("h(m)", "status", str(profile))
    ok = True
    if profile.halted:
        ok = _halting_rows(table, machine, m, cfg, budget)
    else:
        points: list[tuple[int, Fraction]] = []
        provider = TruncatedProvider(machine)
        for n in range(horizon):
            d = decompose_key_relation(m, n, machine, provider, cfg.reduction, budget)
            valid = bool(verify(d))
            ok = ok and valid
            s = size(d).value
            points.append(((n + 1) * m, s))
            table.add_row(f"key relation n={n}", "size / verified", f"{s} / {valid}")
        table.add_row("size growth", "fitted degree", f"{size_exponent(points):.2f}")
        if calibrate:
            table.add_row("calibration", "seed", str(seed))
            for finding in calibration_report(machine, m, cfg.reduction, seed, horizon=budget):
                table.add_row(
                    f"scale {finding.scale:g}",
                    "||P~_0|| / bound",
                    f"{finding.p0_norm:.3e} / {finding.bound:.3e}",
                )
    _emit(table, out)
    if not ok:
        raise VerificationFailed("the pipeline report contains a failed check")


def selftest(
    suite: str,
    seed: int = 0,
    workers: int = 0,
    fraction: float = 1.0,
    out: str | None = None,
) -> int | None:
    """Run a property suite: normalform, britton, inequalities, certificates, decomposition or all.

    Args:
        suite: suite name or all.
        seed: base seed of every randomized trial.
        workers: worker processes for independent trials.
        fraction: scale factor on the trial counts.
        out: optional report file.
    """
    checks = run_selftest(suite, seed, workers, fraction)
    _emit(selftest_table(checks, seed), out)
    return None if all(c.passed for c in checks) else 1


workflows = {
    "normalize": normalize,
    "wp": wp,
    "compile": compile_reduction,
    "verify-decomp": verify_decomp,
    "decompose-key": decompose_key,
    "sos": sos,
    "trace-sos": trace_sos,
    "eval-halting": eval_halting,
    "pipeline": pipeline,
    "selftest": selftest,
}
