"""
Command-line entry point.

Every verb prints one report, as text or as a JSON object with ``schema: 1``.
Exit status: 0 when the check passes, 1 on a verification failure, 2 on a
usage error.
"""
import argparse
import json
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from features import services
from features.jantzen.service import FILTRATION, MX
from shared.config import Config
from shared.exceptions import AppException
from shared.models import Method, Side

logger = logging.getLogger(__name__)

SCHEMA = 1

Result = Tuple[Dict[str, Any], bool]


def _split(values: Optional[Sequence[str]]) -> List[str]:
    """Roots given as repeated flags or comma-separated lists."""
    result = []
    for value in values or []:
        result.extend(v for v in value.split(',') if v.strip())
    return result


# --- verbs ----------------------------------------------------------------------

def cmd_roots(args) -> Result:
    return services.root_system(args.algebra).to_dict(), True


def cmd_shapovalov(args) -> Result:
    service = services.shapovalov_service(args.algebra, seed=args.seed, cache_dir=args.cache)
    theta = service.compute_shapovalov(args.gamma, args.m, Method(args.method))
    return service.describe(theta), True


def cmd_verify(args) -> Result:
    service = services.shapovalov_service(args.algebra, seed=args.seed, cache_dir=args.cache)
    theta = service.compute_shapovalov(args.gamma, args.m, Method(args.method))
    report = service.verify_defining_property(theta)
    report['degrees'] = service.degree_report(theta).to_dict()
    if args.both_methods and theta.weyl_data is not None:
        report['methods_agree'] = service.methods_agree(args.gamma, args.m)
        return report, report['methods_agree']
    return report, True


def cmd_square(args) -> Result:
    service = services.shapovalov_service(args.algebra, seed=args.seed, cache_dir=args.cache)
    return {'gamma': args.gamma, 'vanishes': service.square_check(args.gamma)}, True


def cmd_chain_compare(args) -> Result:
    service = services.shapovalov_service(args.algebra, seed=args.seed, cache_dir=args.cache)
    report = service.borel_chain_compare(args.gamma, count=args.samples)
    return report, report['verified']


def cmd_man(args) -> Result:
    service = services.shapovalov_service(args.algebra, seed=args.seed, cache_dir=args.cache)
    holds = service.man_identity(args.gamma, args.alpha, args.p, args.weight, Side(args.side))
    return {'gamma': args.gamma, 'alpha': args.alpha, 'p': args.p, 'side': args.side, 'holds': holds}, holds


def cmd_kt(args) -> Result:
    service = services.shapovalov_service(args.algebra, seed=args.seed, cache_dir=args.cache)
    report = service.kt_report(args.gamma, args.gamma_prime, args.weight)
    if args.xi:
        report['bad_parameters'] = service.bad_parameters(args.weight, args.xi, args.gamma, args.gamma_prime)
    return report, True


def cmd_oracle(args) -> Result:
    service = services.shapovalov_service(args.algebra, seed=args.seed, cache_dir=args.cache)
    report = service.oracle_check(args.gamma, args.m, args.samples)
    return report, report['agree']


def cmd_layers(args) -> Result:
    service = services.jantzen_service(args.algebra, seed=args.seed, cache_dir=args.cache)
    cfg = service.choose_deformation(FILTRATION, xi=args.xi)
    table = service.layer_table(args.weight, args.depth, cfg)
    return {'deformation': cfg.to_dict(), 'rows': service.describe_layers(table)}, True


def cmd_jantzen_sum(args) -> Result:
    service = services.jantzen_service(args.algebra, seed=args.seed, cache_dir=args.cache)
    cfg = service.choose_deformation(FILTRATION, xi=args.xi)
    report = service.sum_formula_report(args.weight, args.depth, cfg)
    return report.to_dict(), report.verdict


def cmd_mx_dims(args) -> Result:
    service = services.jantzen_service(args.algebra, seed=args.seed, cache_dir=args.cache)
    excluded = _split(args.X)
    cfg = service.choose_deformation(MX, excluded, xi=args.xi)
    return service.mx_weight_dims(args.weight, excluded, args.depth, cfg), True


def cmd_probe(args) -> Result:
    service = services.jantzen_service(args.algebra, seed=args.seed, cache_dir=args.cache)
    return service.strict_kernel_probe(args.weight, args.gamma, args.depth), True


def cmd_pig(args) -> Result:
    service = services.jantzen_service(args.algebra, seed=args.seed, cache_dir=args.cache)
    report = service.pig_check(args.weight, args.gamma, args.gamma_prime, args.depth)
    return report, report['verdict'] == 'pass'


# --- parser ---------------------------------------------------------------------

def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--algebra', required=True, help='e.g. "sl(3)", "gl(2|2)@anti", "gl(2|2)@chain[2]"')
    parser.add_argument('--format', choices=('text', 'json'), default='text')
    parser.add_argument('--seed', type=int, default=None, help='sample-grid and T-point offsets')
    parser.add_argument('--cache', default=None, help='element cache directory (THETA_FORGE_CACHE)')
    parser.add_argument('--log-level', default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='theta-forge',
        description='Šapovalov elements, partition characters and Jantzen layers in exact arithmetic.',
    )
    sub = parser.add_subparsers(dest='verb', required=True)

    def verb(name: str, handler: Callable[[Any], Result], help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        _common(p)
        p.set_defaults(handler=handler)
        return p

    verb('roots', cmd_roots, 'root system of the algebra')

    for name, handler, help_text in (
        ('shapovalov', cmd_shapovalov, 'compute θ_{γ,m}'),
        ('verify', cmd_verify, 'defining property, degree bound and leading term'),
    ):
        p = verb(name, handler, help_text)
        p.add_argument('--gamma', required=True)
        p.add_argument('--m', type=int, default=1)
        p.add_argument('--method', choices=[m.value for m in Method], default=Method.SOLVE_INTERPOLATE.value)
        if name == 'verify':
            p.add_argument('--both-methods', action='store_true', help='also compare with the recursion')

    p = verb('square', cmd_square, 'θ_γ(λ-γ)θ_γ(λ) = 0 on H_γ')
    p.add_argument('--gamma', required=True)

    p = verb('chain-compare', cmd_chain_compare, 'comparison along odd reflections')
    p.add_argument('--gamma', required=True)
    p.add_argument('--samples', type=int, default=20)

    p = verb('man', cmd_man, 'pin/pun identities with θ_{α,p}')
    p.add_argument('--gamma', required=True)
    p.add_argument('--alpha', required=True)
    p.add_argument('--p', type=int, required=True)
    p.add_argument('--lambda', dest='weight', required=True)
    p.add_argument('--side', choices=[s.value for s in Side], required=True)

    p = verb('kt', cmd_kt, 'ratio of the two θ-products for orthogonal isotropic roots')
    p.add_argument('--gamma', required=True)
    p.add_argument('--gamma-prime', required=True)
    p.add_argument('--lambda', dest='weight', required=True)
    p.add_argument('--xi', default=None, help='also list the bad parameters on λ + cξ')

    p = verb('oracle', cmd_oracle, 'θ against brute-force singular vectors')
    p.add_argument('--gamma', required=True)
    p.add_argument('--m', type=int, default=1)
    p.add_argument('--samples', type=int, default=10)

    for name, handler, help_text in (
        ('layers', cmd_layers, 'Jantzen layer dimensions'),
        ('jantzen-sum', cmd_jantzen_sum, 'sum formula report'),
    ):
        p = verb(name, handler, help_text)
        p.add_argument('--lambda', dest='weight', required=True)
        p.add_argument('--depth', type=int, default=Config.DEPTH)
        p.add_argument('--xi', default=None)

    p = verb('mx-dims', cmd_mx_dims, 'weight-space dimensions of M^X(λ)')
    p.add_argument('--lambda', dest='weight', required=True)
    p.add_argument('--X', action='append', default=[], help='isotropic root; repeat or comma-separate')
    p.add_argument('--depth', type=int, default=Config.DEPTH)
    p.add_argument('--xi', default=None)

    p = verb('probe', cmd_probe, 'specialized kernel against U(g)θ_γ v_λ')
    p.add_argument('--lambda', dest='weight', required=True)
    p.add_argument('--gamma', required=True)
    p.add_argument('--depth', type=int, default=Config.DEPTH)

    p = verb('pig', cmd_pig, 'layers for two orthogonal isotropic roots')
    p.add_argument('--lambda', dest='weight', required=True)
    p.add_argument('--gamma', required=True)
    p.add_argument('--gamma-prime', required=True)
    p.add_argument('--depth', type=int, default=Config.DEPTH)

    return parser


# --- output ---------------------------------------------------------------------

def _cell(value: Any) -> str:
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True, ensure_ascii=False)
    return str(value)


def render_text(payload: Dict[str, Any]) -> str:
    """key: value lines, then an aligned table for ``rows``."""
    lines = []
    rows = payload.get('rows')
    for key in sorted(payload):
        if key == 'rows':
            continue
        lines.append(f"{key}: {_cell(payload[key])}")
    if rows:
        columns = list(rows[0])
        cells = [[_cell(row.get(c, '')) for c in columns] for row in rows]
        widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(columns)]
        lines.append('  '.join(c.ljust(w) for c, w in zip(columns, widths)).rstrip())
        for r in cells:
            lines.append('  '.join(v.ljust(w) for v, w in zip(r, widths)).rstrip())
    return '\n'.join(lines)


def emit(payload: Dict[str, Any], fmt: str, stream=None) -> None:
    stream = stream or sys.stdout
    if fmt == 'json':
        stream.write(json.dumps(dict(payload, schema=SCHEMA), sort_keys=True, ensure_ascii=False) + '\n')
    else:
        stream.write(render_text(payload) + '\n')


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    Config.configure_logging(args.log_level)
    try:
        Config.validate()
        payload, passed = args.handler(args)
    except AppException as e:
        logger.debug("%s failed", args.verb, exc_info=True)
        emit({'verb': args.verb, 'error': type(e).__name__, 'message': e.message}, args.format, sys.stderr)
        return e.exit_code
    except ValueError as e:
        emit({'verb': args.verb, 'error': 'ValueError', 'message': str(e)}, args.format, sys.stderr)
        return 2
    emit(dict(payload, verb=args.verb), args.format)
    return 0 if passed else 1


if __name__ == '__main__':
    sys.exit(main())
