#!/usr/bin/env python
"""
Command-line entry point: ``aspconf solve|query|transform|publish|check``.

Results go to stdout, diagnostics to stderr. The log level of the
diagnostics stream is read from ``ASPCONF_DIAGNOSTICS`` (``-v`` lowers it to
INFO).

Exit codes: 0 success, 1 no solution or failed check, 2 parse error,
3 resource cap, 4 inconsistent input, 5 usage error.
"""
import logging
import sys
from argparse import ArgumentParser

from aspconf import config
from aspconf.confidentiality import (
    DELETE_INSERT,
    DELETE_ONLY,
    ConfidentialitySetup,
    publish,
    transform,
    verify,
)
from aspconf.exceptions import (
    AspconfException,
    EmptyPolicy,
    EmptyUniverse,
    InconsistentProgram,
    ParseError,
    ResourceCap,
)
from aspconf.parser import SourceProgram, parse_policy, parse_program, parse_query, serialize
from aspconf.program import Program, constants_of
from aspconf.report import (
    AnswerSetsReport,
    CheckReport,
    PublishReport,
    QueryReport,
    RunMetadata,
    SolutionReport,
    TransformReport,
    Verification,
)
from aspconf.solver import Solver
from aspconf.util import diagnostics_level, timed

logger = logging.getLogger("aspconf.cli")

EXIT_OK = 0
EXIT_NO_SOLUTION = 1
EXIT_PARSE = 2
EXIT_RESOURCE = 3
EXIT_INCONSISTENT = 4
EXIT_USAGE = 5

MODES = {"delete-only": DELETE_ONLY, "delete-insert": DELETE_INSERT}


class UsageError(Exception):
    pass


class _ArgumentParser(ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("{0}: error: {1}\n".format(self.prog, message))
        sys.exit(EXIT_USAGE)


class RunConfig:
    """
    The parsed command line of one invocation.
    """

    def __init__(
        self,
        subcommand,
        kb,
        prior=None,
        policy=None,
        query=None,
        mode="delete-only",
        all_solutions=False,
        json=False,
        show_transforms=False,
        caps=None,
        extra_constants=(),
    ):
        self.subcommand = subcommand
        self.kb = kb
        self.prior = prior
        self.policy = policy
        self.query = query
        self.mode = MODES[mode]
        self.all_solutions = all_solutions
        self.json = json
        self.show_transforms = show_transforms
        self.caps = dict(caps or {})
        self.extra_constants = tuple(extra_constants)
        for name, value in self.caps.items():
            if value is not None and value <= 0:
                raise UsageError("--{0} must be positive".format(name.replace("_", "-")))

    @classmethod
    def from_args(cls, args):
        extra = [c.strip() for c in (args.extra_constants or "").split(",") if c.strip()]
        return cls(
            args.subcommand,
            args.kb,
            prior=args.prior,
            policy=getattr(args, "policy", None),
            query=getattr(args, "query", None),
            mode=getattr(args, "mode", "delete-only"),
            all_solutions=getattr(args, "all_solutions", False),
            json=args.json,
            show_transforms=getattr(args, "show_transforms", False),
            caps={
                "max_ground_rules": args.max_ground_rules,
                "max_ground_literals": args.max_ground_literals,
                "max_branches": args.max_branches,
            },
            extra_constants=extra,
        )

    def solver(self):
        return Solver(**self.caps)

    def effective_caps(self):
        return {
            "max_ground_rules": self.caps.get("max_ground_rules") or config.MAX_GROUND_RULES,
            "max_ground_literals": self.caps.get("max_ground_literals")
            or config.MAX_GROUND_LITERALS,
            "max_branches": self.caps.get("max_branches") or config.MAX_BRANCHES,
        }


def _read(path, origin):
    try:
        return SourceProgram.from_path(path, origin)
    except OSError as e:
        raise UsageError("cannot read {0}: {1}".format(path, e.strerror or e)) from None


def _with_path(path, load):
    try:
        return load()
    except ParseError as e:
        e.path = path
        raise


def load_program(path, origin="kb"):
    if path is None:
        return Program()
    src = _read(path, origin)
    return _with_path(path, lambda: parse_program(src))


def load_policy(path):
    src = _read(path, "policy")
    return _with_path(path, lambda: parse_policy(src))


def load_setup(run):
    return ConfidentialitySetup(
        load_program(run.kb),
        load_program(run.prior, "prior"),
        load_policy(run.policy),
        run.extra_constants,
    )


def _emit_json(out, report):
    out.write(report.model_dump_json(indent=2))
    out.write("\n")


def _indent(text, prefix="    "):
    return "".join(prefix + line + "\n" for line in text.splitlines())


def cmd_solve(run, out):
    kb = load_program(run.kb)
    universe = sorted(set(constants_of(kb)) | set(run.extra_constants))
    with timed("solve", logger):
        result = run.solver().answer_sets(kb, universe)
    found = result.consistent
    if run.json:
        _emit_json(
            out,
            AnswerSetsReport(
                answer_sets=[[str(l) for l in s] for s in found],
                contradictory=result.has_contradictory,
            ),
        )
        return EXIT_OK
    if not found:
        out.write("no consistent answer sets\n")
    for i, s in enumerate(found, 1):
        out.write("Answer set {0}: {1}\n".format(i, s))
    return EXIT_OK


def cmd_query(run, out):
    combined = load_program(run.kb) | load_program(run.prior, "prior")
    q = _with_path("<query>", lambda: parse_query(run.query))
    universe = sorted(set(constants_of(combined)) | set(run.extra_constants))
    found = sorted(run.solver().cred(combined, q, universe), key=lambda i: i.sort_key)
    if run.json:
        _emit_json(out, QueryReport(query=str(q), responses=[str(i) for i in found]))
        return EXIT_OK
    for inst in found:
        out.write("{0}\n".format(inst))
    return EXIT_OK


def _transform_report(t):
    layers = None
    if t.layers is not None:
        layers = [[str(l) for l in layer] for layer in t.layers]
    return TransformReport(
        mode=t.mode,
        ptr=serialize(t.ptr.rules | Program([t.ptr.goal])),
        dependency_layers=layers,
        abducibles=serialize(t.abducibles),
        normal_form_program=serialize(t.normal_form.k),
        normal_form_abducibles=serialize(t.normal_form.a),
        update_program=serialize(t.update.rules),
    )


def _transform_text(report):
    sections = [("policy transformation", report.ptr)]
    if report.dependency_layers is not None:
        sections.append(
            (
                "dependency layers",
                "".join(
                    "% P{0}: {1}\n".format(i, " ".join(layer))
                    for i, layer in enumerate(report.dependency_layers)
                ),
            )
        )
    sections.extend(
        [
            ("abducibles", report.abducibles),
            ("normal form: program", report.normal_form_program),
            ("normal form: abducibles", report.normal_form_abducibles),
            ("update program", report.update_program),
        ]
    )
    return "\n".join("% {0}\n{1}".format(title, body) for title, body in sections)


def cmd_transform(run, out):
    setup = load_setup(run)
    with timed("transform", logger):
        report = _transform_report(transform(setup, run.mode))
    if run.json:
        _emit_json(out, report)
    else:
        out.write(_transform_text(report))
    return EXIT_OK


def witness_text(atom, t):
    """An update atom as ``+ member`` or ``- member`` in user syntax."""
    sign = "+" if atom in t.update.ua_plus else "-"
    return "{0} {1}".format(sign, t.names.rule_for(t.update.provenance[atom]))


def _solution_report(solution, t):
    cs = solution.changeset
    return SolutionReport(
        deletions=[str(r) for r in cs.deletions()],
        insertions=[str(r) for r in cs.insertions()],
        k_pub=serialize(solution.k_pub, publishable=True),
        verification=Verification.from_report(solution.report),
        witness=[witness_text(a, t) for a in solution.witness],
    )


def _solution_text(i, s):
    lines = ["Solution {0}:".format(i)]
    lines.extend("  delete: {0}".format(r) for r in s.deletions)
    lines.extend("  insert: {0}".format(r) for r in s.insertions)
    lines.extend("  update: {0}".format(w) for w in s.witness)
    lines.append("  verified: {0}".format("yes" if s.verification.passed else "no"))
    lines.append("  published program:")
    return "\n".join(lines) + "\n" + _indent(s.k_pub)


def cmd_publish(run, out):
    setup = load_setup(run)
    solver = run.solver()
    with timed("publish", logger):
        result = publish(setup, run.mode, solver)
    t = result.transformation
    shown = list(result) if run.all_solutions else list(result)[:1]

    solutions = []
    for solution in shown:
        # re-check before anything is printed
        report = verify(solution.k_pub, setup.prior, t.conjunctions, t.universe, solver)
        if not report.passed:
            logger.warning("skipping solution that failed verification: {0}".format(solution))
            continue
        solutions.append(_solution_report(solution, t))
    reason = result.reason if not solutions else None
    if result and not solutions:
        reason = "no solution passed verification"

    if run.show_transforms and not run.json:
        out.write(_transform_text(_transform_report(t)))
        out.write("\n")
    if run.json:
        _emit_json(
            out,
            PublishReport(
                solutions=solutions,
                reason=reason,
                metadata=RunMetadata(
                    mode=run.mode,
                    universe=list(t.universe),
                    answer_sets=result.stats.get("answer_sets", 0),
                    candidates=result.stats.get("candidates", 0),
                    filter_checks=result.stats.get("filter_checks", 0),
                    reduction_checks=result.stats.get("reduction_checks", 0),
                    caps=run.effective_caps(),
                ),
            ),
        )
    elif not solutions:
        out.write("no solution: {0}\n".format(reason))
    else:
        out.write("\n".join(_solution_text(i, s) for i, s in enumerate(solutions, 1)))
    return EXIT_OK if solutions else EXIT_NO_SOLUTION


def cmd_check(run, out):
    setup = load_setup(run)
    report = verify(setup.k, setup.prior, setup.policy, setup.universe(), run.solver())
    if run.json:
        _emit_json(out, CheckReport(verification=Verification.from_report(report)))
    else:
        out.write("PASS\n" if report.passed else "FAIL\n")
        if not report.consistent:
            out.write("the program is inconsistent with the prior knowledge\n")
        for q, found in report.leaks:
            out.write(
                "leak: {0}: {1}\n".format(q, " ".join("[{0}]".format(i) for i in found))
            )
    return EXIT_OK if report.passed else EXIT_NO_SOLUTION


COMMANDS = {
    "solve": cmd_solve,
    "query": cmd_query,
    "transform": cmd_transform,
    "publish": cmd_publish,
    "check": cmd_check,
}


def build_parser():
    parser = _ArgumentParser(
        prog="aspconf",
        description="""
        Confidentiality-preserving publishing of extended disjunctive logic
        programs.

        Diagnostics verbosity can be set by the environment variable
        ASPCONF_DIAGNOSTICS.
        """,
    )
    common = _ArgumentParser(add_help=False)
    common.add_argument(
        "--kb", metavar="<kb.lp>", required=True, help="knowledge base (or published program)"
    )
    common.add_argument("--prior", metavar="<prior.lp>", help="prior knowledge of the users")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument(
        "--extra-constants",
        metavar="c1,c2",
        dest="extra_constants",
        default="",
        help="additional constants of the Herbrand universe",
    )
    common.add_argument("--max-ground-rules", type=int, dest="max_ground_rules")
    common.add_argument("--max-ground-literals", type=int, dest="max_ground_literals")
    common.add_argument("--max-branches", type=int, dest="max_branches")
    common.add_argument("-v", "--verbose", action="store_true", help="log pipeline stages")

    with_policy = _ArgumentParser(add_help=False)
    with_policy.add_argument("--policy", metavar="<policy.pol>", required=True)

    with_mode = _ArgumentParser(add_help=False)
    with_mode.add_argument("--mode", choices=sorted(MODES), default="delete-only")

    commands = parser.add_subparsers(dest="subcommand", metavar="command")
    commands.required = True
    commands.add_parser("solve", parents=[common], help="print the answer sets")
    query = commands.add_parser("query", parents=[common], help="credulous query responses")
    query.add_argument("--query", required=True, metavar="'p(X), not q(X)'")
    commands.add_parser(
        "transform",
        parents=[common, with_policy, with_mode],
        help="print the intermediate programs",
    )
    publish_cmd = commands.add_parser(
        "publish",
        parents=[common, with_policy, with_mode],
        help="find confidentiality-preserving programs",
    )
    publish_cmd.add_argument("--all-solutions", action="store_true", dest="all_solutions")
    publish_cmd.add_argument("--show-transforms", action="store_true", dest="show_transforms")
    commands.add_parser(
        "check", parents=[common, with_policy], help="verify a published program"
    )
    return parser


def _fail(code, message):
    sys.stderr.write("aspconf: {0}\n".format(message))
    return code


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    level = logging.INFO if args.verbose else diagnostics_level()
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger("aspconf").setLevel(level)

    try:
        run = RunConfig.from_args(args)
        return COMMANDS[run.subcommand](run, out)
    except ParseError as e:
        return _fail(EXIT_PARSE, "{0}: {1}".format(getattr(e, "path", "<input>"), e))
    except ResourceCap as e:
        return _fail(EXIT_RESOURCE, e)
    except InconsistentProgram as e:
        return _fail(EXIT_INCONSISTENT, e)
    except (UsageError, EmptyPolicy, EmptyUniverse) as e:
        return _fail(EXIT_USAGE, e)
    except AspconfException as e:
        logger.exception("internal error")
        return _fail(EXIT_USAGE, e)


if __name__ == "__main__":
    sys.exit(main())
