import argparse
import asyncio
import logging
import sys

from config import DEFAULT_CONFIG, FORMATS, load_run_config, with_overrides
from errors import PairedOperatorError
from kernels.construction import pair_from_function
from kernels.isomorphisms import coburn_check
from kernels.null_space import kernel_basis, kernel_projections
from operators.paired import PairedSpec, apply_S, apply_Sigma
from operators.sections import SectionKind, norm_report
from properties.coordinator import SuiteCoordinator
from properties.generators import GeneratorConfig
from properties.suites import SUITES
from reports.report_generator import ReportGenerator
from symbols.factorization import inner_outer_factor
from symbols.parser import parse_symbol

LOGGER = logging.getLogger("main")

EXIT_ERROR = 2


def format_number(x):
    return f"{x + 0.0:.12g}"


def coefficient_rows(v, **extra):
    return [{**extra, "exponent": k, "re": c.real, "im": c.imag} for k, c in sorted(v.coeffs.items())]


def format_triples(v):
    """Sorted (exponent, re, im) triples; the zero vector prints as an empty string."""
    return " ".join(f"({k}, {format_number(c.real)}, {format_number(c.imag)})"
                    for k, c in sorted(v.coeffs.items()))


def _spec(args):
    return PairedSpec.of(parse_symbol(args.a), parse_symbol(args.b))


def cmd_apply(args, config):
    spec = _spec(args)
    f = parse_symbol(args.f)
    image = apply_Sigma(spec, f) if args.sigma else apply_S(spec, f)
    result = {
        "operator": "Sigma" if args.sigma else "S",
        "spec": spec.to_json(),
        "f": f.to_json(),
        "image": image.to_json(),
        "expression": image.to_expression(),
        "triples": format_triples(image),
    }
    return result, coefficient_rows(image)


def cmd_norm(args, config):
    spec = _spec(args)
    bands = args.bands or DEFAULT_CONFIG["norm_bands"]
    reports = [norm_report(spec, band, config.grid_points) for band in sorted(bands)]
    sigmas = [report.sigma_max for report in reports]
    monotone = all(x <= y + config.tol("exact") for x, y in zip(sigmas, sigmas[1:]))
    table = [report.to_json() for report in reports]
    for row in table:
        del row["spec"]
    result = {"spec": spec.to_json(), "monotone": monotone, "norms": table}
    rows = [{"N": row["N"], "sigma_max": row["sigma_max"], **row["bounds"]} for row in table]
    return result, rows


def cmd_kernel(args, config):
    spec = _spec(args)
    kind = SectionKind.SIGMA if args.sigma else SectionKind.S
    kernel = kernel_basis(spec, config.band, kind, threshold=config.tol("null_threshold"),
                          gap_ratio=config.tol("gap_ratio"), membership=config.tol("membership"))
    result = kernel.to_json()
    result["basis_expressions"] = [v.to_expression() for v in kernel.basis]
    result["max_residual"] = kernel.max_residual()
    rows = []
    if args.project:
        projections = kernel_projections(kernel)
        result["projections"] = projections.to_json()
        result["plus_basis"] = [v.to_expression() for v in projections.plus]
        result["minus_basis"] = [v.to_expression() for v in projections.minus]
        result["reconstruction_error"] = projections.reconstruction_error(kernel)
        for i, (plus, minus) in enumerate(zip(projections.plus, projections.minus)):
            rows += coefficient_rows(plus, vector=i, part="plus")
            rows += coefficient_rows(minus, vector=i, part="minus")
    else:
        for i, v in enumerate(kernel.basis):
            rows += coefficient_rows(v, vector=i)
    return result, rows or [{"dim": kernel.dimension}]


def cmd_factor(args, config):
    p = parse_symbol(args.p)
    factors = inner_outer_factor(p)
    constant = factors.unimodular_constant
    result = factors.to_json()
    result.update({
        "p": p.to_expression(),
        "inner_is_constant": factors.inner_is_constant,
        "outer_expression": factors.outer_poly.to_expression(),
        "outer_at_zero": float(factors.outer_poly(0.0).real),
        "inner_deviation": factors.inner_deviation(config.grid_points),
        "product_residual": factors.product_residual(p, config.grid_points),
    })
    rows = [{"inner_is_constant": factors.inner_is_constant, "unimodular_re": constant.real,
             "unimodular_im": constant.imag, "monomial_order": factors.monomial_order,
             "outer": result["outer_expression"], "inner_deviation": result["inner_deviation"],
             "product_residual": result["product_residual"]}]
    return result, rows


def cmd_pair_from(args, config):
    phi = parse_symbol(args.f)
    pair = pair_from_function(phi, config.band)
    result = pair.to_json()
    spec = pair.as_spec()
    result["spec"] = spec.to_json() if spec is not None else None
    result["within_tolerance"] = pair.residual <= config.tol("rational")
    rows = [{"residual": pair.residual, "convention": pair.convention or "",
             "a": str(pair.a), "b": str(pair.b)}]
    return result, rows


def cmd_coburn(args, config):
    spec = _spec(args)
    report = coburn_check(spec, band=config.band, method=args.method)
    result = report.to_json()
    rows = [{"passed": report.passed, "ker_ab": report.dim_ab, "ker_ba": report.dim_ba,
             "ker_conj": report.dim_conj, "ker_adjoint": report.dim_adjoint,
             "invertible": " ".join(report.cases)}]
    return result, rows


async def cmd_suite(args, config):
    generator_config = GeneratorConfig(seed=config.seed, trials=args.trials)
    coordinator = SuiteCoordinator(generator_config).select(args.name)
    report = await coordinator.run_all()
    result = report.to_json(include_runtime=args.include_runtime)
    rows = [{"suite": suite["suite"], "passed": suite["passed"], "trials": suite["trials"],
             "checks_run": suite["checks_run"], "violations": len(suite["violations"]),
             "ambiguities": len(suite["ambiguities"]), "max_residual": suite["max_residual"]}
            for suite in result["suites"]]
    return result, rows, report.exit_code


COMMANDS = {
    "apply": cmd_apply,
    "norm": cmd_norm,
    "kernel": cmd_kernel,
    "factor": cmd_factor,
    "pair-from": cmd_pair_from,
    "coburn": cmd_coburn,
}


def _pair_arguments(subparser):
    subparser.add_argument("--a", required=True, help="symbol a, e.g. \"z^-1 + 2\"")
    subparser.add_argument("--b", required=True, help="symbol b")


def build_parser():
    parser = argparse.ArgumentParser(description="Paired operators aP+ + bP- on Laurent polynomial symbols")
    parser.add_argument("--config", help="JSON file with RunConfig fields")
    parser.add_argument("--save-config", help="Write the effective configuration to this JSON file")
    parser.add_argument("--out", help="Write the report to this file instead of stdout")
    parser.add_argument("--format", choices=FORMATS, help="Report format (default pretty)")
    parser.add_argument("--seed", type=int, help="Random seed (unsigned 64-bit)")
    parser.add_argument("--N", dest="band", type=int, help="Band N of finite sections and kernels")
    parser.add_argument("--grid", dest="grid_points", type=int, help="Circle grid points for sup norms")
    parser.add_argument("--log-level", default="WARNING",
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="Logging level")
    commands = parser.add_subparsers(dest="command", required=True)

    apply = commands.add_parser("apply", help="Apply S_{a,b} (or Sigma_{a,b}) to f")
    _pair_arguments(apply)
    apply.add_argument("--f", required=True, help="coefficient vector as an expression")
    apply.add_argument("--sigma", action="store_true", help="Apply Sigma_{a,b} = P+a + P-b instead")

    norm = commands.add_parser("norm", help="Finite-section norms with the sup-norm bounds")
    _pair_arguments(norm)
    norm.add_argument("--N", dest="bands", type=int, nargs="+", help="Bands to evaluate")

    kernel = commands.add_parser("kernel", help="Band-limited kernel basis")
    _pair_arguments(kernel)
    kernel.add_argument("--N", dest="band", type=int, default=argparse.SUPPRESS, help="Band N")
    kernel.add_argument("--project", action="store_true", help="Also report the Riesz projections")
    kernel.add_argument("--sigma", action="store_true", help="Kernel of Sigma_{a,b} instead of S_{a,b}")

    factor = commands.add_parser("factor", help="Inner-outer factorization of an analytic polynomial")
    factor.add_argument("--p", required=True, help="analytic polynomial")

    pair_from = commands.add_parser("pair-from", help="Pair (a, b) whose kernel contains f")
    pair_from.add_argument("--f", required=True, help="trigonometric polynomial")

    coburn = commands.add_parser("coburn", help="Coburn dichotomy and kernel dimensions")
    _pair_arguments(coburn)
    coburn.add_argument("--method", choices=["exact", "band"], default="exact",
                        help="Exact root counts or band SVD kernels")

    suite = commands.add_parser("suite", help="Run property suites")
    suite.add_argument("name", choices=sorted(SUITES) + ["all"], help="Suite name or all")
    suite.add_argument("--trials", type=int, default=DEFAULT_CONFIG["suites"]["trials"],
                       help="Random trials per suite")
    suite.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="Random seed")
    suite.add_argument("--include-runtime", action="store_true",
                       help="Keep runtimes in the report (JSON is then no longer byte-stable)")
    return parser


async def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level),
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")

    try:
        config = with_overrides(load_run_config(args.config), band=args.band, grid_points=args.grid_points,
                                seed=args.seed, format=args.format, output=args.out)
        if args.save_config:
            config.save(args.save_config)
            LOGGER.info("effective configuration saved to %s", args.save_config)
    except (OSError, ValueError) as e:
        print(f"error: invalid configuration: {e}", file=sys.stderr)
        return EXIT_ERROR

    LOGGER.info("command %s with N=%d, grid=%d, seed=%d", args.command, config.band,
                config.grid_points, config.seed)
    exit_code = 0
    try:
        if args.command == "suite":
            result, rows, exit_code = await cmd_suite(args, config)
        else:
            result, rows = COMMANDS[args.command](args, config)
    except PairedOperatorError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR

    generator = ReportGenerator(config.format, config)
    text = generator.render(args.command, result, rows)
    path = generator.write(text, config.output)
    if path is not None:
        print(f"Report saved to {path}", file=sys.stderr)
    return exit_code


if __name__ == "__main__":
    sys.exit(asyncio.run(main()))
