# ---------------------------------------------------------------------------------------------
#  Copyright (c) Microsoft Corporation. All rights reserved.
#  Licensed under the MIT License. See LICENSE in the project root for license information.
# --------------------------------------------------------------------------------------------

"""Command-line front door for searching, checking, converting and rendering plane-filling curves."""

import argparse
import logging
import re
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Union

from src.config import config
from src.services.geometry import ExactPoint
from src.services.grids import GridKind
from src.services.lsystem import (
    CurveRecord,
    MultiLsys,
    SimpleLsys,
    emit_listing,
    iterate_simple,
    parse_listing,
    reverse,
    swap_signs,
)
from src.services.managers import ConversionRegistry, CurveCatalog
from src.services.render import (
    RenderOptions,
    render_carousel,
    render_cloud,
    render_decomposition,
    render_origins,
    render_path,
    render_tiling,
    save,
)
from src.services.search import allowed_orders, export_records, run_search, similarity_letters, symmetry_letters
from src.services.tiles import k0_diagnostic, numeration_system, tile_iterate
from src.services.transforms import convert_curve_with_origins, divide, divide_multi, product, verify
from src.services.validity import full_check, turtle

# Constants
PROGRAM_NAME = "gridcurve"
LISTING_SUFFIX = ".listing"
SEARCH_GRIDS = ("tri", "square", "trihex")
REFERENCE_PATTERN = re.compile(r"^R(?P<order>\d+)-(?P<id>\d+)$")
PRODUCTION_PATTERN = re.compile(r"^F[F+\-0]*$")

# Exit codes
EXIT_OK = 0
EXIT_FAILURE = 1

# Error messages
CURVE_GRID_REQUIRED = "Curve {spec!r} needs a grid tag such as @tri, @square or @trihex"
CURVE_NOT_FOUND = "No curve {label} at order {order} on {grid}"
SYSTEM_NOT_FOUND = "No named system {name!r}"
DIVIDE_USAGE = "divide needs --curve and --parts, or --system"

logger = logging.getLogger(__name__)


class CurveReferenceError(ValueError):
    """Raised when a curve reference cannot be resolved."""


def _listing_path(cache_dir: Path, grid: GridKind, order: int) -> Path:
    return cache_dir / f"{grid.short_name}-R{order}{LISTING_SUFFIX}"


def load_listing(grid: GridKind, order: int, cache_dir: Optional[Union[str, Path]] = None) -> List[CurveRecord]:
    """
    Records of one grid and order, read from the cache or found by an on-demand search.

    Args:
        grid: Searchable grid
        order: Curve order
        cache_dir: Directory of cached listings; nothing is cached when empty

    Returns:
        List[CurveRecord]: The listing records
    """
    cache = Path(cache_dir) if cache_dir else None
    if cache is not None:
        path = _listing_path(cache, grid, order)
        if path.exists():
            logger.debug("Using cached listing %s", path)
            return parse_listing(path.read_text(encoding="utf-8"))
    records = run_search(grid, order).records
    if cache is not None:
        cache.mkdir(parents=True, exist_ok=True)
        _listing_path(cache, grid, order).write_text(emit_listing(records), encoding="utf-8")
        logger.info("Cached listing R%s on %s", order, grid.value)
    return records


def resolve_curve(
    spec: str, catalog: Optional[CurveCatalog] = None, cache_dir: Optional[Union[str, Path]] = None
) -> SimpleLsys:
    """
    Resolve a curve reference.

    Accepted forms are an inline production with grid tag ("F+F-F@tri"), a name from the curve
    catalog ("terdragon"), or a listing reference ("R13-4@square").

    Raises:
        CurveReferenceError: If the reference cannot be resolved
    """
    catalog = catalog or CurveCatalog()
    named = catalog.get_curve(spec)
    if named is not None:
        return named
    text, _, tag = spec.rpartition("@")
    if not text:
        raise CurveReferenceError(CURVE_GRID_REQUIRED.format(spec=spec))
    try:
        grid = GridKind.parse(tag)
    except ValueError as e:
        raise CurveReferenceError(str(e)) from e
    if PRODUCTION_PATTERN.match(text):
        return SimpleLsys(grid, text)
    match = REFERENCE_PATTERN.match(text)
    if match is None:
        raise CurveReferenceError(f"Cannot read curve reference {spec!r}")
    order, curve_id = int(match.group("order")), int(match.group("id"))
    cache = cache_dir if cache_dir is not None else config["cache_dir"]
    for record in load_listing(grid, order, cache):
        if record.id == curve_id:
            return SimpleLsys(grid, record.production)
    raise CurveReferenceError(CURVE_NOT_FOUND.format(label=text, order=order, grid=grid.value))


def format_number(z: ExactPoint, grid: GridKind) -> str:
    """Gaussian integers as x+yi, Eisenstein integers as x+yw with w = exp(i*pi/3)."""
    if grid is GridKind.SQUARE:
        real, imag, symbol = z.a, z.d, "i"
    else:
        real, imag, symbol = z.a, z.c, "w"
    if imag == 0:
        return str(real)
    unit = symbol if abs(imag) == 1 else f"{abs(imag)}{symbol}"
    if real == 0:
        return unit if imag > 0 else f"-{unit}"
    return f"{real}{'+' if imag > 0 else '-'}{unit}"


def _options(args: argparse.Namespace, color: str = "flat") -> RenderOptions:
    rounding = args.e if getattr(args, "e", None) is not None else float(config.get("rounding", 0.0))
    return RenderOptions(rounding=rounding, color=getattr(args, "color", color) or color)


def _curve(args: argparse.Namespace, attribute: str = "curve") -> SimpleLsys:
    return resolve_curve(getattr(args, attribute), cache_dir=args.cache_dir)


def _write(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
        logger.info("Wrote %s", out)
    else:
        sys.stdout.write(text)


def cmd_search(args: argparse.Namespace) -> int:
    grid = GridKind.parse(args.grid)
    report = run_search(grid, args.order, args.jobs)
    if args.format == "records":
        _write(export_records(grid, report.records), args.out)
    else:
        _write(emit_listing(report.records), args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    result = full_check(_curve(args))
    print(result)
    return EXIT_OK if result.passed else EXIT_FAILURE


def cmd_render(args: argparse.Namespace) -> int:
    curve = _curve(args)
    opts = _options(args)
    if opts.color == "parts":
        document = render_decomposition(curve, args.iter, opts)
    else:
        document = render_path(turtle(iterate_simple(curve, args.iter), curve.grid), opts)
    save(document, args.out)
    return EXIT_OK


def cmd_tile(args: argparse.Namespace) -> int:
    tile = tile_iterate(_curve(args), args.sign, args.iter)
    save(render_path(tile.path, _options(args)), args.out)
    return EXIT_OK


def cmd_tiling(args: argparse.Namespace) -> int:
    save(render_tiling(_curve(args), args.sign, args.iter, args.span, _options(args)), args.out)
    return EXIT_OK


def cmd_carousel(args: argparse.Namespace) -> int:
    save(render_carousel(_curve(args), args.iter, _options(args)), args.out)
    return EXIT_OK


def cmd_convert(args: argparse.Namespace) -> int:
    registry = ConversionRegistry.default()
    catalog = CurveCatalog()
    if args.curve:
        curve = resolve_curve(args.curve, catalog, args.cache_dir)
        spec = registry.get(args.spec, source=curve.grid)
    else:
        spec = registry.get(args.spec)
        curve = resolve_curve(spec.example, catalog, args.cache_dir)
    path, origins = convert_curve_with_origins(curve, spec, args.iter, args.sign)
    logger.info("%s of %s: %s edges on %s", spec.name, curve, len(path), spec.target.value)
    status = EXIT_OK
    if args.verify:
        ok = verify(path, spec)
        print(f"{spec.mode} {'verified' if ok else 'not verified'} on {spec.target.value}")
        status = EXIT_OK if ok else EXIT_FAILURE
    if args.out:
        save(render_origins(path, origins, _options(args)), args.out)
    return status


def cmd_conversions(args: argparse.Namespace) -> int:
    registry = ConversionRegistry.default()
    source = GridKind.parse(args.source) if args.source else None
    for spec in registry.list_specs(source):
        flag = "" if spec.verified else "  (unverified)"
        print(f"{spec.source.short_name}:{spec.name}  -> {spec.target.value} {spec.mode}{flag}")
    return EXIT_OK


def cmd_product(args: argparse.Namespace) -> int:
    factors = []
    for attribute in ("a", "b"):
        curve = _curve(args, attribute)
        if getattr(args, f"reverse_{attribute}"):
            curve = reverse(curve)
        if getattr(args, f"swap_{attribute}"):
            curve = swap_signs(curve)
        factors.append(curve)
    result = product(factors[0], factors[1])
    print(f"F {result.production}  R{result.order}@{result.grid.short_name}")
    print(full_check(result))
    return EXIT_OK


def _parse_parts(text: str) -> Union[int, List[int]]:
    values = [int(value) for value in text.split(",") if value.strip()]
    if not values:
        raise ValueError("--parts needs at least one number")
    return values[0] if len(values) == 1 else values


def _parse_substitution(text: str) -> Dict[str, str]:
    substitution = {}
    for item in text.split(","):
        letter, _, targets = item.partition("=")
        if not letter.strip() or not targets.strip():
            raise ValueError(f"Cannot read substitution {item!r}; use L=AB,R=CD")
        substitution[letter.strip()] = targets.strip()
    return substitution


def _print_system(system: MultiLsys) -> None:
    print(f"axiom: {system.axiom}")
    for letter in sorted(system.rules):
        print(f"{letter} -> {system.rules[letter]}")


def cmd_divide(args: argparse.Namespace) -> int:
    if args.system:
        system = CurveCatalog().get_system(args.system)
        if system is None:
            raise CurveReferenceError(SYSTEM_NOT_FOUND.format(name=args.system))
        substitution = _parse_substitution(args.substitution)
        parts = None
        if args.parts:
            quotas = _parse_parts(args.parts)
            quotas = [quotas] if isinstance(quotas, int) else quotas
            parts = {letter: quotas for letter in substitution}
        _print_system(divide_multi(system, substitution, parts))
        return EXIT_OK
    _print_system(divide(_curve(args), _parse_parts(args.parts)))
    return EXIT_OK


def cmd_digits(args: argparse.Namespace) -> int:
    curve = _curve(args)
    ns = numeration_system(curve, args.sign)
    if ns is None:
        print("no base makes the digits a complete residue system")
        return EXIT_FAILURE
    print("digits: " + " ".join(format_number(d, curve.grid) for d in ns.digits))
    print(f"base: {format_number(ns.base, curve.grid)}")
    k0 = k0_diagnostic(ns)
    print(f"k0: {k0 if k0 is not None else 'none'}")
    return EXIT_OK


def cmd_numsys_cloud(args: argparse.Namespace) -> int:
    curve = _curve(args)
    ns = numeration_system(curve, args.sign)
    if ns is None:
        logger.error("No numeration system for %s", curve)
        return EXIT_FAILURE
    save(render_cloud(ns, args.depth), args.out)
    return EXIT_OK


def cmd_orders(args: argparse.Namespace) -> int:
    print(" ".join(str(order) for order in allowed_orders(GridKind.parse(args.grid), args.max)))
    return EXIT_OK


def cmd_symmetry(args: argparse.Namespace) -> int:
    curve = _curve(args)
    print(f"symm: {symmetry_letters(curve) or '-'}")
    if args.other:
        print(f"same: {similarity_letters(curve, _curve(args, 'other')) or '-'}")
    return EXIT_OK


def _add_render_flags(parser: argparse.ArgumentParser, out_required: bool = True) -> None:
    parser.add_argument("--e", type=float, default=None, help="Rounding parameter in [0, 0.5]")
    parser.add_argument("--out", required=out_required, help="Output SVG file")


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one sub-parser per command."""
    parser = argparse.ArgumentParser(prog=PROGRAM_NAME, description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true", help="Log at DEBUG level")
    parser.add_argument("--cache-dir", default=None, help="Directory of cached search listings")
    commands = parser.add_subparsers(dest="command", required=True)

    def command(name: str, handler: Callable[[argparse.Namespace], int], help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text)
        sub.set_defaults(handler=handler)
        return sub

    sub = command("search", cmd_search, "Search all curves of one order")
    sub.add_argument("--grid", required=True, choices=SEARCH_GRIDS)
    sub.add_argument("--order", required=True, type=int)
    sub.add_argument("--jobs", type=int, default=None)
    sub.add_argument("--format", choices=("listing", "records"), default="listing")
    sub.add_argument("--out")

    sub = command("verify", cmd_verify, "Run the validity checks on a curve")
    sub.add_argument("--curve", required=True)

    sub = command("render", cmd_render, "Render an iterate of a curve")
    sub.add_argument("--curve", required=True)
    sub.add_argument("--iter", type=int, default=2)
    sub.add_argument("--color", choices=("flat", "parts"), default="flat")
    _add_render_flags(sub)

    for name, handler, help_text in (
        ("tile", cmd_tile, "Render a tile of a curve"),
        ("tiling", cmd_tiling, "Render translated copies of a tile"),
    ):
        sub = command(name, handler, help_text)
        sub.add_argument("--curve", required=True)
        sub.add_argument("--sign", choices=("+", "-"), default="+")
        sub.add_argument("--iter", type=int, default=1)
        if name == "tiling":
            sub.add_argument("--span", type=int, default=1)
        _add_render_flags(sub)

    sub = command("carousel", cmd_carousel, "Render rotated copies meeting at a point")
    sub.add_argument("--curve", required=True)
    sub.add_argument("--iter", type=int, default=2)
    _add_render_flags(sub)

    sub = command("convert", cmd_convert, "Convert a curve to another uniform grid")
    sub.add_argument("--spec", required=True)
    sub.add_argument("--curve")
    sub.add_argument("--iter", type=int, default=None)
    sub.add_argument("--sign", choices=("+", "-"), default=None)
    sub.add_argument("--verify", action="store_true")
    sub.add_argument("--color", choices=("flat", "origin"), default="flat")
    _add_render_flags(sub, out_required=False)

    sub = command("conversions", cmd_conversions, "List the registered conversions")
    sub.add_argument("--source", choices=SEARCH_GRIDS)

    sub = command("product", cmd_product, "Multiply two curves")
    for attribute in ("a", "b"):
        sub.add_argument(f"--{attribute}", required=True)
        sub.add_argument(f"--reverse-{attribute}", action="store_true")
        sub.add_argument(f"--swap-{attribute}", action="store_true")

    sub = command("divide", cmd_divide, "Divide a curve into parts")
    sub.add_argument("--curve")
    sub.add_argument("--parts")
    sub.add_argument("--system")
    sub.add_argument("--substitution", default="L=AB,R=CD")

    sub = command("digits", cmd_digits, "Print the numeration system of a tile")
    sub.add_argument("--curve", required=True)
    sub.add_argument("--sign", choices=("+", "-"), default="+")

    sub = command("numsys-cloud", cmd_numsys_cloud, "Render the fundamental region of a numeration system")
    sub.add_argument("--curve", required=True)
    sub.add_argument("--sign", choices=("+", "-"), default="+")
    sub.add_argument("--depth", type=int, default=6)
    sub.add_argument("--out", required=True)

    sub = command("orders", cmd_orders, "List the orders at which curves can exist")
    sub.add_argument("--grid", required=True, choices=SEARCH_GRIDS)
    sub.add_argument("--max", required=True, type=int)

    sub = command("symmetry", cmd_symmetry, "Print symmetry and similarity letters")
    sub.add_argument("--curve", required=True)
    sub.add_argument("--other")

    return parser


def configure_logging(verbose: bool = False) -> None:
    """Log to standard error at the configured level."""
    level = logging.DEBUG if verbose else getattr(logging, str(config["log_level"]), logging.INFO)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s", force=True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one command.

    Returns:
        int: 0 on success, 1 on a domain failure; usage errors exit with 2
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "divide" and not args.system and not (args.curve and args.parts):
        parser.error(DIVIDE_USAGE)
    configure_logging(args.verbose)
    try:
        return args.handler(args)
    except (ValueError, OSError) as e:
        logger.error("%s", e)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
