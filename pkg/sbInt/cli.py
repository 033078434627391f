"""
The :mod:`sbInt.cli` module implements the ``sbint`` command line tool.

Verbs:
    * ``eval`` -- closed form of one integral
    * ``check`` -- closed form against a Monte Carlo, quadrature or hybrid
      oracle
    * ``table`` -- CSV table of one J/K family over parameter ranges
    * ``asymptote`` -- growth exponent of a family as q or p tends to infinity

Records are printed to stdout as one JSON object per line (or as text with
``--format text``). Exit codes: 0 success, 1 failed verification, 2 usage or
domain error.

---------------
Module Contents
---------------
Functions:
    * build_parser
    * main
    * cmd_eval
    * cmd_check
    * cmd_table
    * cmd_asymptote
    * spec_from_args
    * spec_from_record
    * output_record
"""
import argparse
import csv
import json
import logging
import math
import os
import sys

from sbInt import (DEFAULT_CHUNK_SIZE, DEFAULT_SAMPLES, SEED_ENV_VAR,
                   __version__)
from sbInt.errors import DomainError, SbIntError, UnsupportedFamilyError
from sbInt.exact_forms import MultiIndex
from sbInt.integral_formulas import (InnerProductPower, IntegralSpec, Limit,
                                     Measure, MonomialAbsPower, Region,
                                     SignedMonomial, Space,
                                     asymptotic_exponent, asymptotic_spread,
                                     evaluate, family_label, parse_family)
from sbInt.oracle import (OracleConfig, hybrid_estimate, mc_estimate,
                          quadrature_estimate)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

TABLE_HEADER = ['family', 'n_or_N', 'alpha', 'p', 'q', 'anchor_norm',
                'measure', 'value', 'log_value', 'exact']

MAX_Z_SCORE = 4.0


def _format_float(value):
    return "{:.17g}".format(value)


def _finite_or_none(value):
    if value is None or not math.isfinite(value):
        return None
    return value


def parse_alpha(text):
    """
    Parses a comma separated multi-index such as ``"2,1,0"``.

    :param text: the multi-index
    :type text: str
    :rtype: MultiIndex
    """
    try:
        return MultiIndex(int(entry) for entry in text.split(','))
    except ValueError:
        raise DomainError("--alpha must be comma separated nonnegative "
                          "integers, got {!r}".format(text))


def parse_range(text):
    """
    Parses an integer range ``a..b`` (inclusive, empty for b < a) or a single
    integer.

    :param text: the range
    :type text: str
    :rtype: list
    """
    try:
        if '..' in text:
            low, high = text.split('..', 1)
            return list(range(int(low), int(high) + 1))
        return [int(text)]
    except ValueError:
        raise DomainError("expected an integer or a range a..b, got "
                          "{!r}".format(text))


def parse_values(text):
    """
    Parses a comma separated list of reals.

    :param text: the list
    :type text: str
    :rtype: list
    """
    try:
        return [float(entry) for entry in text.split(',')]
    except ValueError:
        raise DomainError("expected comma separated numbers, got "
                          "{!r}".format(text))


def default_seed():
    """
    The seed from the environment variable SBINT_SEED, or 0.

    :rtype: int
    """
    text = os.environ.get(SEED_ENV_VAR)
    if not text:
        return 0
    try:
        return int(text)
    except ValueError:
        raise DomainError("{} must be an integer, got {!r}".format(
            SEED_ENV_VAR, text))


def spec_from_args(args):
    """
    Builds the integral from the ``eval``/``check`` flags.

    :param args: parsed arguments
    :type args: argparse.Namespace
    :rtype: sbInt.integral_formulas.IntegralSpec
    """
    space = Space(args.space, args.dim)
    if args.signed:
        if args.alpha is None:
            raise DomainError("--signed needs --alpha")
        integrand = SignedMonomial(parse_alpha(args.alpha))
    elif args.inner_product:
        if args.p is None:
            raise DomainError("--inner-product needs --p")
        integrand = InnerProductPower(args.p, args.anchor_norm)
    else:
        if args.alpha is None or args.p is None:
            raise DomainError("a monomial integrand needs --alpha and --p")
        integrand = MonomialAbsPower(parse_alpha(args.alpha), args.p)
    return IntegralSpec(space, args.region, integrand, args.q,
                        Measure(args.measure))


def output_record(spec, value):
    """
    The JSON record of an evaluated integral: the spec echo and the value.

    :param spec: the integral
    :type spec: sbInt.integral_formulas.IntegralSpec
    :param value: its value
    :type value: sbInt.integral_formulas.IntegralValue
    :rtype: dict
    """
    integrand = spec.integrand
    alpha = getattr(integrand, 'alpha', None)
    return {
        'family': family_label(spec),
        'space': spec.space.kind.value,
        'dim': spec.space.dim,
        'alpha': list(alpha) if alpha is not None else None,
        'p': getattr(integrand, 'p', None),
        'q': spec.q if spec.region is Region.BALL else None,
        'anchor_norm': getattr(integrand, 'anchor_norm', None),
        'measure': spec.measure.value,
        'value': value.value,
        'log_value': value.log_value,
        'exact': str(value.exact) if value.exact is not None else None,
    }


def spec_from_record(record):
    """
    Rebuilds the integral echoed in a record of a J/K family. The region is
    recovered from the family label, so records of signed monomials
    (``"custom"``) cannot be rebuilt.

    :param record: an output record
    :type record: dict
    :rtype: sbInt.integral_formulas.IntegralSpec
    """
    pattern = parse_family(record['family'])
    space = Space(record['space'], record['dim'])
    if record.get('anchor_norm') is not None:
        integrand = InnerProductPower(record['p'], record['anchor_norm'])
    else:
        integrand = MonomialAbsPower(record['alpha'], record['p'])
    q = record.get('q')
    return IntegralSpec(space, pattern.region, integrand,
                        0.0 if q is None else q, Measure(record['measure']))


def _emit(record, output_format):
    if output_format == 'text':
        for key, value in record.items():
            if isinstance(value, float):
                value = _format_float(value)
            elif isinstance(value, list):
                value = ",".join(str(entry) for entry in value)
            elif value is None:
                value = "-"
            print("{}: {}".format(key, value))
    else:
        print(json.dumps(record))


def cmd_eval(args):
    """
    ``eval``: prints the closed form of one integral.

    :param args: parsed arguments
    :type args: argparse.Namespace
    :return: exit code
    :rtype: int
    """
    spec = spec_from_args(args)
    _emit(output_record(spec, evaluate(spec)), args.format)
    return EXIT_OK


def _choose_oracle(spec, requested):
    if requested != 'auto':
        return requested
    if spec.region is Region.BALL and spec.q < 0:
        return 'hybrid'
    return 'mc'


def cmd_check(args):
    """
    ``check``: compares the closed form with an oracle. Monte Carlo and
    hybrid checks pass when the closed form lies within 4 standard errors,
    quadrature checks when the relative error is at most ``--tol``.

    :param args: parsed arguments
    :type args: argparse.Namespace
    :return: exit code
    :rtype: int
    """
    spec = spec_from_args(args)
    seed = default_seed() if args.seed is None else args.seed
    config = OracleConfig(args.samples, seed, args.chunk_size)
    closed = evaluate(spec)
    if closed.value is None:
        raise DomainError("the closed form is outside the double range; "
                          "nothing to compare")
    reference = closed.value

    oracle = _choose_oracle(spec, args.oracle)
    logger.info("checking %s with the %s oracle", family_label(spec), oracle)
    record = output_record(spec, closed)
    record['oracle'] = oracle

    if oracle == 'quadrature':
        estimate = quadrature_estimate(spec, args.tol)
        error = abs(estimate - reference)
        if reference == 0:
            relative = None
            passed = error <= args.tol
        else:
            relative = error / abs(reference)
            passed = relative <= args.tol
        record.update(estimate=estimate, standard_error=None,
                      samples=None, z_score=None, relative_error=relative)
    else:
        if oracle == 'hybrid':
            result = hybrid_estimate(spec, config, args.tol,
                                     workers=args.workers)
        else:
            result = mc_estimate(spec, config, workers=args.workers)
        passed = result.agrees_with(reference, z_max=MAX_Z_SCORE)
        relative = (abs(result.mean - reference) / abs(reference)
                    if reference != 0 else None)
        record.update(estimate=result.mean,
                      standard_error=result.standard_error,
                      samples=result.samples_used,
                      z_score=_finite_or_none(result.z_score(reference)),
                      relative_error=relative)
    record['seed'] = seed
    record['status'] = 'PASS' if passed else 'FAIL'
    _emit(record, args.format)
    return EXIT_OK if passed else EXIT_FAILED


def _table_specs(args):
    pattern = parse_family(args.family)
    alpha = parse_alpha(args.alpha) if args.alpha is not None else None
    dims = sorted(parse_range(args.dim))
    with_q = pattern.region is Region.BALL and not pattern.q_free

    if pattern.integer_level:
        if args.m is None:
            raise DomainError("family {} needs --m".format(pattern.label))
        ps = [2.0 * m for m in sorted(parse_range(args.m))]
        if with_q:
            if args.k is None:
                raise DomainError("family {} needs --k".format(
                    pattern.label))
            qs = [float(k) for k in sorted(parse_range(args.k))]
        else:
            qs = [0.0]
    else:
        if args.p is None:
            raise DomainError("family {} needs --p".format(pattern.label))
        ps = sorted(parse_values(args.p))
        if with_q:
            if args.q is None:
                raise DomainError("family {} needs --q".format(
                    pattern.label))
            qs = sorted(parse_values(args.q))
        else:
            qs = [0.0]

    return [pattern.spec(dim, alpha, p, q, args.anchor_norm)
            for dim in dims for p in ps for q in qs]


def _table_row(spec, value):
    record = output_record(spec, value)

    def cell(entry):
        if entry is None:
            return ""
        if isinstance(entry, float):
            return _format_float(entry)
        if isinstance(entry, list):
            return ",".join(str(item) for item in entry)
        return entry

    return [cell(record['family']), record['dim'], cell(record['alpha']),
            cell(record['p']), cell(record['q']), cell(record['anchor_norm']),
            record['measure'], cell(record['value']),
            cell(record['log_value']), cell(record['exact'])]


def cmd_table(args):
    """
    ``table``: writes a CSV table of one family. Rows are ordered by
    dimension, then p (or m), then q (or k).

    :param args: parsed arguments
    :type args: argparse.Namespace
    :return: exit code
    :rtype: int
    """
    rows = [_table_row(spec, evaluate(spec)) for spec in _table_specs(args)]
    writer = csv.writer(sys.stdout)
    writer.writerow(TABLE_HEADER)
    writer.writerows(rows)
    return EXIT_OK


def cmd_asymptote(args):
    """
    ``asymptote``: prints the growth exponent e with value ~ t^e |y|^p and,
    with ``--verify``, the spread of value(t) t^(-e) over t = 10^3 ... 10^6.

    :param args: parsed arguments
    :type args: argparse.Namespace
    :return: exit code
    :rtype: int
    """
    pattern = parse_family(args.family)
    limit = Limit(args.limit)
    if limit is Limit.Q_TO_INFINITY and pattern.q_free:
        raise UnsupportedFamilyError(
            "unsupported: family {} has no weight q".format(pattern.label))
    alpha = parse_alpha(args.alpha) if args.alpha is not None else None
    spec = pattern.spec(args.dim, alpha, args.p, args.q, args.anchor_norm)
    exponent = asymptotic_exponent(spec, limit)

    integrand = spec.integrand
    record = {
        'family': pattern.label,
        'space': spec.space.kind.value,
        'dim': spec.space.dim,
        'alpha': (list(integrand.alpha)
                  if isinstance(integrand, MonomialAbsPower) else None),
        'p': None if limit is Limit.P_TO_INFINITY else integrand.p,
        'q': (spec.q if spec.region is Region.BALL
              and limit is Limit.P_TO_INFINITY else None),
        'measure': spec.measure.value,
        'limit': limit.value,
        'exponent': str(exponent),
        'exponent_value': float(exponent),
    }
    exit_code = EXIT_OK
    if args.verify:
        spread = asymptotic_spread(spec, limit)
        record['spread'] = spread
        record['bounded'] = spread <= 4.0
        if not record['bounded']:
            exit_code = EXIT_FAILED
    _emit(record, args.format)
    return exit_code


def _common_parser(suppress_defaults=False):
    """
    Flags accepted both before and after the verb. The copy attached to the
    verbs suppresses its defaults so that a flag given before the verb is not
    overwritten.
    """
    def default(value):
        return argparse.SUPPRESS if suppress_defaults else value

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=['json', 'text'],
                        default=default('json'),
                        help="output format (default: json)")
    common.add_argument('--seed', type=int, default=default(None),
                        help="random seed (default: ${} or 0)".format(
                            SEED_ENV_VAR))
    common.add_argument('--samples', type=int,
                        default=default(DEFAULT_SAMPLES),
                        help="Monte Carlo samples")
    common.add_argument('--tol', type=float, default=default(1e-10),
                        help="quadrature tolerance")
    common.add_argument('-v', '--verbose', action='store_true',
                        default=default(False),
                        help="debug logging on stderr")
    return common


def _spec_parser():
    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument('--space', choices=['real', 'complex'], default='real')
    flags.add_argument('--dim', type=int, required=True,
                       help="n for real space, N for complex space")
    flags.add_argument('--region', choices=[region.value for region in Region],
                       required=True)
    kind = flags.add_mutually_exclusive_group()
    kind.add_argument('--inner-product', action='store_true',
                      help="integrate |<x, y>|^p")
    kind.add_argument('--signed', action='store_true',
                      help="integrate x^alpha without absolute values")
    flags.add_argument('--alpha', help="multi-index, e.g. 2,1,0")
    flags.add_argument('--p', type=float)
    flags.add_argument('--q', type=float, default=0.0,
                       help="ball weight exponent, q > -1")
    flags.add_argument('--anchor-norm', type=float, default=1.0)
    flags.add_argument('--measure', choices=[measure.value
                                             for measure in Measure],
                       default=Measure.STANDARD.value)
    return flags


def build_parser():
    """
    Builds the argument parser of the ``sbint`` tool.

    :rtype: argparse.ArgumentParser
    """
    parser = argparse.ArgumentParser(
        prog='sbint', parents=[_common_parser()],
        description="Integrals of |x^alpha|^p and |<x, y>|^p over spheres, "
                    "balls and Gaussian-weighted space.")
    parser.add_argument('--version', action='version',
                        version="%(prog)s {}".format(__version__))
    verbs = parser.add_subparsers(dest='command', metavar='COMMAND')
    verbs.required = True
    common = _common_parser(suppress_defaults=True)
    spec_flags = _spec_parser()

    eval_parser = verbs.add_parser('eval', parents=[common, spec_flags],
                                   help="evaluate a closed form")
    eval_parser.set_defaults(handler=cmd_eval)

    check_parser = verbs.add_parser('check', parents=[common, spec_flags],
                                    help="verify a closed form")
    check_parser.add_argument('--oracle', default='auto',
                              choices=['auto', 'mc', 'quadrature', 'hybrid'])
    check_parser.add_argument('--workers', type=int, default=1)
    check_parser.add_argument('--chunk-size', type=int,
                              default=DEFAULT_CHUNK_SIZE)
    check_parser.set_defaults(handler=cmd_check)

    table_parser = verbs.add_parser('table', parents=[common],
                                    help="CSV table of a family")
    table_parser.add_argument('--family', required=True,
                              help="J1 ... K8 with up to three primes")
    table_parser.add_argument('--dim', required=True,
                              help="dimension or range a..b")
    table_parser.add_argument('--m', help="p = 2m, integer or range")
    table_parser.add_argument('--k', help="q = k, integer or range")
    table_parser.add_argument('--p', help="comma separated values of p")
    table_parser.add_argument('--q', help="comma separated values of q")
    table_parser.add_argument('--alpha', help="multi-index (default e_1)")
    table_parser.add_argument('--anchor-norm', type=float, default=1.0)
    table_parser.set_defaults(handler=cmd_table)

    asymptote_parser = verbs.add_parser('asymptote', parents=[common],
                                        help="asymptotic growth exponent")
    asymptote_parser.add_argument('--family', required=True)
    asymptote_parser.add_argument('--dim', type=int, required=True)
    asymptote_parser.add_argument('--limit', choices=['q', 'p'],
                                  required=True)
    asymptote_parser.add_argument('--alpha')
    asymptote_parser.add_argument('--p', type=float, default=2.0)
    asymptote_parser.add_argument('--q', type=float, default=0.0)
    asymptote_parser.add_argument('--anchor-norm', type=float, default=1.0)
    asymptote_parser.add_argument('--verify', action='store_true')
    asymptote_parser.set_defaults(handler=cmd_asymptote)
    return parser


def main(argv=None):
    """
    Entry point of the ``sbint`` tool.

    :param argv: the arguments, defaults to sys.argv[1:]
    :type argv: list
    :return: the exit code
    :rtype: int
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.handler(args)
    except SbIntError as error:
        print("error: {}".format(error), file=sys.stderr)
        return EXIT_USAGE
