"""
Command-Line Interface
Entry point main(argv) for computing with Leavitt path algebras and their invariants
"""
import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional

from config.settings import (
    DEFAULT_FIELD, ENTRY_MAX, EXIT_FAILED, EXIT_OK, EXIT_UNDECIDED, EXIT_USAGE, LAG_MAX, STAGE_CAP,
)
from controllers.file_parser import FileParser
from controllers.hom_pipeline import HomPipeline
from controllers.iso_search import IsoSearchManager
from models.algebra import LeavittPathAlgebra
from models.bfmod import IsoCertificate, bf_dual, bf_graded, bf_ungraded, canonicalize
from models.coefficients import CoefficientRing
from models.errors import (
    ExpressionSyntaxError, FileFormatError, GraphValidationError, InvalidBounds, InvalidField, LPAError,
    StageCapExceeded, UnknownGenerator,
)
from models.expression import parse_expression
from models.graph import Graph, classify, essential_reduction, is_primitive, is_strongly_graded
from models.reports import FAIL, PASS
from models.zerocomp import TrivialK1, fullness_certificate, k0_class, k1_class, verify_fullness
from utils.data_helpers import DataFormatter
from views.report_components import OUTPUT_FORMATS, TEXT, ReportRenderer

logger = logging.getLogger(__name__)

USAGE_ERRORS = (FileFormatError, ExpressionSyntaxError, UnknownGenerator, InvalidField, InvalidBounds,
                GraphValidationError)


@dataclass
class RunConfig:
    """Validated settings of one invocation"""
    subcommand: str
    paths: List[str] = field(default_factory=list)
    field_selector: str = DEFAULT_FIELD
    stage_cap: int = STAGE_CAP
    entry_max: int = ENTRY_MAX
    lag_max: int = LAG_MAX
    output_format: str = TEXT
    verbosity: int = 0
    ring: Optional[CoefficientRing] = field(default=None, repr=False)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> 'RunConfig':
        paths = [getattr(args, name) for name in ('graph', 'graph_e', 'graph_f', 'homfile', 'certfile', 'zfile')
                 if getattr(args, name, None)]
        paths += list(getattr(args, 'homotopies', None) or [])
        config = cls(args.command, paths, args.field, args.stage_cap, args.entry_max, args.lag_max,
                     args.format, args.verbose)
        config.validate()
        return config

    def validate(self) -> None:
        for name in ('stage_cap', 'entry_max', 'lag_max'):
            if getattr(self, name) < 0:
                raise InvalidBounds(f"--{name.replace('_', '-')} must be nonnegative")
        self.ring = CoefficientRing.from_selector(self.field_selector)

    @property
    def log_level(self) -> int:
        return {0: logging.WARNING, 1: logging.INFO}.get(self.verbosity, logging.DEBUG)


def status_exit(status: str) -> int:
    return {PASS: EXIT_OK, FAIL: EXIT_FAILED}.get(status, EXIT_UNDECIDED)


# Subcommands

def load_graph(path: str) -> Graph:
    return FileParser.load_graph(Path(path))


def cmd_info(args, config: RunConfig, out: ReportRenderer) -> int:
    g = load_graph(args.graph)
    cls = classify(g)
    values: Dict = {
        'graph': g.name,
        'vertices': list(g.vertices),
        'edges': len(g.edges),
        'sinks': list(cls.sinks),
        'sources': list(cls.sources),
        'regular': cls.is_regular,
        'essential': cls.is_essential,
        'strongly graded': is_strongly_graded(g),
        'weighted': g.is_weighted,
    }
    if cls.is_regular:
        exponent = is_primitive(g)
        values['primitive'] = exponent is not None
        if exponent is not None:
            values['primitive exponent'] = exponent
        if not cls.is_essential:
            reduced, eliminated = essential_reduction(g)
            values['essential reduction'] = f"{reduced.name} (eliminated {', '.join(eliminated)})"
    else:
        values['primitive'] = False
    out.fields('info', values)
    out.adjacency(g)
    return EXIT_OK


def cmd_eval(args, config: RunConfig, out: ReportRenderer) -> int:
    algebra = LeavittPathAlgebra(load_graph(args.graph), config.ring)
    x = parse_expression(args.expression, algebra)
    values: Dict = {'value': str(x)}
    if args.normalize:
        values['terms'] = [f"{x.ring.format(c)} {DataFormatter.format_monomial(m)}" for m, c in x.monomials()]
    if args.degree:
        degree = x.degree()
        if x.is_zero():
            values['degree'] = "zero element"
        elif degree is None:
            values['degree'] = f"inhomogeneous {x.degrees()}"
        else:
            values['degree'] = degree
    out.fields('eval', values)
    return EXIT_OK


def cmd_bf(args, config: RunConfig, out: ReportRenderer) -> int:
    g = load_graph(args.graph)
    if args.ungraded:
        bf = bf_ungraded(g)
        out.fields('bf-ungraded', {'graph': g.name, 'group': bf.describe(), 'divisors': list(bf.divisors),
                                   'free rank': bf.free_rank})
        return EXIT_OK
    presentation = bf_dual(g) if args.dual else bf_graded(g)
    record = presentation.to_record()
    if out.json:
        out.record({'kind': 'bf', **record})
        return EXIT_OK
    out.line(f"graph: {record['graph']}")
    out.line(f"presentation: {record['kind']}")
    out.line(f"generators: {', '.join(record['generators'])}")
    out.line("relations:")
    for row in record['relations']:
        out.line("  [" + ", ".join(row) + "]")
    return EXIT_OK


def _print_certificate(out: ReportRenderer, e: Graph, f: Graph, cert: IsoCertificate) -> None:
    if out.json:
        out.record({'kind': 'certificate', 'source': e.name, 'target': f.name, **cert.to_record()})
    else:
        out.line(f"pointed isomorphism {e.name} -> {f.name}")
        for row in FileParser.format_certificate(cert).splitlines():
            out.line(row)


def cmd_iso(args, config: RunConfig, out: ReportRenderer) -> int:
    e, f = load_graph(args.graph_e), load_graph(args.graph_f)
    manager = IsoSearchManager(config.lag_max, config.entry_max, config.stage_cap)
    outcome = manager.search(e, f)
    if isinstance(outcome, IsoCertificate):
        _print_certificate(out, e, f, outcome)
        if args.output:
            with open(args.output, 'w', encoding='utf-8') as handle:
                handle.write(FileParser.format_certificate(outcome))
        return EXIT_OK
    out.fields('not-found', outcome.to_record())
    return EXIT_UNDECIDED


def cmd_verify_iso(args, config: RunConfig, out: ReportRenderer) -> int:
    e, f = load_graph(args.graph_e), load_graph(args.graph_f)
    cert = FileParser.parse_certificate(FileParser.read(Path(args.certfile)), args.certfile)
    report = IsoSearchManager(stage_cap=config.stage_cap).verify(e, f, cert)
    out.report(report)
    return status_exit(report.status)


def cmd_check_hom(args, config: RunConfig, out: ReportRenderer) -> int:
    e, f = load_graph(args.graph_e), load_graph(args.graph_f)
    pipeline = HomPipeline(config.ring, config.stage_cap)
    result = pipeline.check_hom(e, f, FileParser.read(Path(args.homfile)), args.homfile)
    out.report(result.report)
    if result.k0 is not None:
        out.fields('k0-map', {'lag': result.k0.lag, 'M': DataFormatter.format_int_matrix(result.k0.m)})
    out.notes(result.notes)
    return status_exit(result.report.status)


def cmd_deform(args, config: RunConfig, out: ReportRenderer) -> int:
    e, f = load_graph(args.graph_e), load_graph(args.graph_f)
    pipeline = HomPipeline(config.ring, config.stage_cap)
    result = pipeline.deform(e, f, FileParser.read(Path(args.homfile)), FileParser.read(Path(args.zfile)),
                             args.homfile, args.zfile)
    out.report(result.report)
    if result.deformed is not None:
        out.line("deformed images:")
        out.lines('deformed', (f"  {line}" if not out.json else line for line in result.deformed.to_lines()))
    if result.u_representative:
        values = {f"U[{v}]": cls.describe() for v, cls in result.u_representative.items()}
        out.fields('u-representative', values)
    out.notes(result.notes)
    return status_exit(result.report.status)


def cmd_full_cert(args, config: RunConfig, out: ReportRenderer) -> int:
    algebra = LeavittPathAlgebra(load_graph(args.graph), config.ring)
    cert = fullness_certificate(algebra, args.edge)
    ok = verify_fullness(cert)
    out.fields('fullness', {'edge': cert.edge, 'pairs': len(cert.pairs), 'verified': ok})
    out.lines('pairs', (f"{y} ; {x}" for y, x in cert.pairs))
    return EXIT_OK if ok else EXIT_FAILED


def cmd_k0(args, config: RunConfig, out: ReportRenderer) -> int:
    algebra = LeavittPathAlgebra(load_graph(args.graph), config.ring)
    p = parse_expression(args.expression, algebra)
    cls = k0_class(p, config.stage_cap)
    out.fields('k0', {'class': cls.describe(), 'canonical': canonicalize(cls).describe()})
    return EXIT_OK


def cmd_k1(args, config: RunConfig, out: ReportRenderer) -> int:
    algebra = LeavittPathAlgebra(load_graph(args.graph), config.ring)
    u = parse_expression(args.expression, algebra)
    cls = k1_class(u, stage_cap=config.stage_cap)
    out.fields('k1', {'class': cls.describe()})
    if isinstance(cls, TrivialK1):
        out.notes([cls.reason])
    return EXIT_OK


def cmd_check_homotopy(args, config: RunConfig, out: ReportRenderer) -> int:
    e, f = load_graph(args.graph_e), load_graph(args.graph_f)
    pipeline = HomPipeline(config.ring, config.stage_cap)
    texts = [(FileParser.read(Path(path)), path) for path in args.homotopies]
    result = pipeline.check_homotopies(e, f, texts)
    out.report(result.report)
    return status_exit(result.report.status)


def cmd_rotate(args, config: RunConfig, out: ReportRenderer) -> int:
    e, f = load_graph(args.graph_e), load_graph(args.graph_f)
    pipeline = HomPipeline(config.ring, config.stage_cap)
    cert = pipeline.rotate(e, f, FileParser.read(Path(args.homfile)), args.unit, args.homfile)
    out.report(cert.report)
    out.line("images:")
    out.lines('images', (f"  {line}" if not out.json else line for line in cert.as_hom().to_lines()))
    return status_exit(cert.report.status)


COMMANDS: Dict[str, Callable] = {
    'info': cmd_info,
    'eval': cmd_eval,
    'bf': cmd_bf,
    'iso': cmd_iso,
    'verify-iso': cmd_verify_iso,
    'check-hom': cmd_check_hom,
    'deform': cmd_deform,
    'full-cert': cmd_full_cert,
    'k0': cmd_k0,
    'k1': cmd_k1,
    'check-homotopy': cmd_check_homotopy,
    'rotate': cmd_rotate,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--field', default=DEFAULT_FIELD, help="coefficient field: q or fp:<p>")
    common.add_argument('--stage-cap', type=int, default=STAGE_CAP)
    common.add_argument('--entry-max', type=int, default=ENTRY_MAX)
    common.add_argument('--lag-max', type=int, default=LAG_MAX)
    common.add_argument('--format', choices=OUTPUT_FORMATS, default=TEXT)
    common.add_argument('-v', '--verbose', action='count', default=0, help="-v for INFO, -vv for DEBUG on stderr")

    parser = argparse.ArgumentParser(prog='lpa', description="Leavitt path algebras and their graded invariants")
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('info', parents=[common], help="classification, primitivity and adjacency")
    p.add_argument('graph')

    p = sub.add_parser('eval', parents=[common], help="evaluate an expression in normal form")
    p.add_argument('graph')
    p.add_argument('-e', '--expression', required=True)
    p.add_argument('--normalize', action='store_true', help="list the basis terms")
    p.add_argument('--degree', action='store_true')

    p = sub.add_parser('bf', parents=[common], help="graded Bowen-Franks presentation")
    p.add_argument('graph')
    p.add_argument('--ungraded', action='store_true')
    p.add_argument('--dual', action='store_true')

    p = sub.add_parser('iso', parents=[common], help="bounded pointed isomorphism search")
    p.add_argument('graph_e')
    p.add_argument('graph_f')
    p.add_argument('-o', '--output', help="write the certificate to this file")

    p = sub.add_parser('verify-iso', parents=[common], help="verify an isomorphism certificate")
    p.add_argument('graph_e')
    p.add_argument('graph_f')
    p.add_argument('certfile')

    p = sub.add_parser('check-hom', parents=[common], help="verify a hom and its induced K0 map")
    p.add_argument('graph_e')
    p.add_argument('graph_f')
    p.add_argument('homfile')

    p = sub.add_parser('deform', parents=[common], help="deform a hom by corner units")
    p.add_argument('graph_e')
    p.add_argument('graph_f')
    p.add_argument('homfile')
    p.add_argument('zfile')

    p = sub.add_parser('full-cert', parents=[common], help="fullness certificate for ee*")
    p.add_argument('graph')
    p.add_argument('--edge', required=True)

    for name, text in (('k0', "K0 class of a degree-zero idempotent"), ('k1', "K1 class of a degree-zero unit")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument('graph')
        p.add_argument('-e', '--expression', required=True)

    p = sub.add_parser('check-homotopy', parents=[common], help="verify a chain of polynomial homotopies")
    p.add_argument('graph_e')
    p.add_argument('graph_f')
    p.add_argument('homotopies', nargs='+')

    p = sub.add_parser('rotate', parents=[common], help="M2 rotation homotopy for ad_u h and h")
    p.add_argument('graph_e')
    p.add_argument('graph_f')
    p.add_argument('homfile')
    p.add_argument('-u', '--unit', required=True)
    return parser


def configure_logging(level: int) -> None:
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s", force=True)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    out = ReportRenderer(args.format)
    try:
        config = RunConfig.from_args(args)
        configure_logging(config.log_level)
        logger.debug("running %s on %s", config.subcommand, config.paths)
        return COMMANDS[args.command](args, config, out)
    except USAGE_ERRORS as exc:
        out.error(exc.code, str(exc))
        return EXIT_USAGE
    except StageCapExceeded as exc:
        out.error(exc.code, str(exc))
        return EXIT_UNDECIDED
    except LPAError as exc:
        out.error(exc.code, str(exc))
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
