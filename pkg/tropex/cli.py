"""
Tropex CLI - Command Line Interface

Main entry point for the tropex batch tool.

Exit codes:
  0 - Success
  1 - Internal error
  2 - Validation failure (a report with status "invalid" is still written)
  64 - Usage error
  130 - User interrupted (Ctrl+C)

Usage:
    tropex tropicalize --poly line.json --out line.report.json
    tropex balance --graph line.report.json
    tropex limit --graph line_half.json --fan p2.json --out limit.json
    tropex secondary --d 2 --report secondary.json

Author: tropex developers
License: MIT
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from . import __version__
from .core.config import Config, set_config
from .core.errors import TropexError
from .core.logging import get_logger, setup_logging
from .runner import CommandRunner

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INVALID = 2
EXIT_USAGE = 64
EXIT_INTERRUPTED = 130

COMMANDS = {
    'refine': 'Common refinement of two fans',
    'star': 'Star of a ray, as a fan in the quotient lattice',
    'minimize': 'Unique minimal polyhedral structure of a 1-complex',
    'conify': 'Cone over an embedded 1-complex and its height-one slice',
    'dilation': 'Minimal dilation making all vertices integral',
    'tropicalize': 'Weighted tropical curve of a plane tropical polynomial',
    'balance': 'Balancing defects and asymptotic profile of a weighted 1-complex',
    'limit': 'Tropical flat limit: minimal structure, base change and expansion',
    'expand': 'Expansion dual complex with tube marking and DT stability',
    'xg': 'Realization cone of the type of an embedded 1-complex',
    'surjections': 'Surjection types over the realization cone of a 1-complex',
    'modspace': 'Cone space fragment of a finite family of graph types',
    'secondary': 'Secondary fan of the degree-d triangle and weight forgetting',
    'validate': 'Validate an embedded 1-complex (or a report holding one)',
}


class UsageParser(argparse.ArgumentParser):
    """Argument parser that exits with EX_USAGE on bad command lines."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)

    io_group = common.add_argument_group('Input/Output')
    io_group.add_argument(
        '--fan',
        type=Path,
        metavar='FILE',
        help='Fan JSON of the target (default: fan of the projective plane)'
    )
    io_group.add_argument(
        '--out', '--report',
        dest='out',
        type=Path,
        metavar='FILE',
        help='Write the JSON report here (default: stdout)'
    )

    comp_group = common.add_argument_group('Computation')
    comp_group.add_argument(
        '--config',
        type=Path,
        metavar='FILE',
        help='Configuration YAML merged over the shipped tropex/config/defaults.yaml'
    )
    comp_group.add_argument(
        '--threads',
        type=int,
        metavar='N',
        help='Worker threads for enumeration (default: computation.threads)'
    )
    comp_group.add_argument(
        '--budget',
        type=int,
        metavar='N',
        help='Maximum number of cells or chambers to explore'
    )

    verbosity_group = common.add_argument_group('Output Verbosity')
    verbosity_group.add_argument(
        '-v', '--verbose',
        action='count',
        default=0,
        help='Increase verbosity (-v for INFO, -vv for DEBUG)'
    )
    verbosity_group.add_argument(
        '-q', '--quiet',
        action='store_true',
        help='Only log errors'
    )
    verbosity_group.add_argument(
        '--log-file',
        type=Path,
        metavar='FILE',
        help='Also write logs to this file'
    )
    verbosity_group.add_argument(
        '--log-json',
        action='store_true',
        help='Log in JSON lines format'
    )
    verbosity_group.add_argument(
        '--no-color',
        action='store_true',
        help='Disable colored log output'
    )
    return common


def create_parser() -> argparse.ArgumentParser:
    """Create and configure argument parser."""
    parser = UsageParser(
        prog='tropex',
        description='tropex - exact tropical and polyhedral computations',
        epilog='Rationals are written as "p/q" strings, large integers as decimal strings.',
        formatter_class=argparse.RawDescriptionHelpFormatter
    )
    parser.add_argument(
        '--version',
        action='version',
        version=f'%(prog)s {__version__}'
    )

    common = _common_options()
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub = {
        name: subparsers.add_parser(name, help=text, description=text, parents=[common])
        for name, text in COMMANDS.items()
    }

    sub['refine'].add_argument('--other', type=Path, metavar='FILE', required=True,
                               help='Second fan JSON')
    sub['star'].add_argument('--ray', required=True, metavar='RAY',
                             help='Ray name, cone index or comma-separated primitive vector')

    for name in ('minimize', 'conify', 'dilation', 'balance', 'limit', 'expand',
                 'xg', 'surjections', 'validate'):
        sub[name].add_argument('--graph', type=Path, metavar='FILE', required=True,
                               help='1-complex JSON (or a report whose result holds "complex")')

    sub['tropicalize'].add_argument('--poly', type=Path, metavar='FILE', required=True,
                                    help='Tropical polynomial JSON')

    sub['balance'].add_argument('--degree', type=int, metavar='D',
                                help='Check the asymptotic profile against degree D')
    sub['balance'].add_argument('--strict', action='store_true',
                                help='Report status "invalid" (exit 2) when balancing fails')

    sub['expand'].add_argument('--coarse', type=Path, metavar='FILE',
                               help='Coarser 1-complex; vertices absent from it are tubes')
    sub['expand'].add_argument('--shadow', type=Path, metavar='FILE',
                               help='Subscheme shadow JSON for the DT stability check')

    sub['surjections'].add_argument('--boundary', action='store_true',
                                    help='Also enumerate types on boundary cells')
    sub['surjections'].add_argument('--max-codim', type=int, metavar='K',
                                    help='Skip cells of codimension above K')

    sub['modspace'].add_argument('--family', default='dual-plane', metavar='dual-plane|vertex|FILE',
                                 help='Built-in family name, or JSON holding a list of graphs')
    sub['modspace'].add_argument('--close', action='store_true',
                                 help='Close a family file under image surjections first')
    sub['modspace'].add_argument('--barycentric', action='store_true',
                                 help='Use barycentric refinements of the subdivisions')

    sub['secondary'].add_argument('--d', type=int, required=True, metavar='D',
                                  help='Degree of the triangle (1 or 2 enumerable)')
    sub['secondary'].add_argument('--forget', action='store_true',
                                  help='Also check weight forgetting on maximal cones')

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point."""
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_USAGE

    # Build config overrides from CLI args
    cli_overrides = {}
    if args.threads is not None:
        cli_overrides.setdefault('computation', {})['threads'] = args.threads
    if args.log_file:
        cli_overrides.setdefault('paths', {})['log_file'] = str(args.log_file)
    if args.log_json:
        cli_overrides.setdefault('logging', {})['json_format'] = True
    if args.no_color:
        cli_overrides.setdefault('logging', {})['colors'] = False

    try:
        config = Config.load(config_file=args.config, cli_overrides=cli_overrides)
    except ValueError as e:
        print(f"tropex: configuration error: {e}", file=sys.stderr)
        return EXIT_INVALID
    set_config(config)

    # Determine log level
    if args.quiet:
        log_level = 'ERROR'
    else:
        verbosity_map = {1: 'INFO', 2: 'DEBUG'}
        log_level = verbosity_map.get(min(args.verbose, 2), config.log_level)

    setup_logging(
        level=log_level,
        log_file=config.log_file,
        json_format=config.log_json_format,
        use_colors=config.log_colors,
        command=args.command,
    )
    logger.debug(f"tropex {__version__}: {args.command} with {config.max_workers} workers")

    try:
        return CommandRunner(config).run(args)
    except KeyboardInterrupt:
        logger.warning("Interrupted by user")
        return EXIT_INTERRUPTED
    except TropexError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code
    except Exception as e:
        logger.exception(f"Unexpected error: {e}")
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
