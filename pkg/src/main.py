#!/usr/bin/env python3
"""
Main entry point for the ECDLP challenge ladder.
Dispatches the generate, verify, solve, shor-sample, estimate and
emit-datasets workflows and maps their outcomes to exit codes.
"""

import argparse
import json
import os
import sys

import pandas as pd

from src.analysis.curves import emit_curves
from src.analysis.classical_cost import describe_seconds
from src.analysis.datasets import DatasetCatalog, coerce, parse_duration
from src.analysis.quantum_cost import (
    estimate_resources, hardware_params, CODES, SCHEDULES, HARDWARE_PRESETS,
)
from src.ec_core.curve import mul_xy
from src.ec_core.field import to_hex
from src.ladder.card import load_card, load_appendix_cards, plant_secret
from src.ladder.generator import generate_card, MIN_K, MAX_K
from src.ladder.verify import verify_card
from src.quantum.shor_oracle import (
    ShorInstance, sample_batch, recover_with_stats, dense_simulate, exact_law,
)
from src.solvers.brute import solve_brute
from src.solvers.kangaroo import solve_kangaroo
from src.solvers.rho import RhoConfig, solve, solve_memoryless
from src.utils.config import load_config, resolve_dataset_dir
from src.utils.errors import (
    BudgetExceededError, CardFormatError, CountingInfeasibleError, DatasetLookupError,
    LadderError, ParameterError, ShorRecoveryError,
)
from src.utils.logger import setup_logger
from src.utils.rng import DEFAULT_SEED

logger = setup_logger()

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

DENSE_TOLERANCE = 1e-12


def _int(text):
    """Integer flag accepting decimal or 0x-prefixed hex."""
    return int(text, 0)


def _seed(args, config):
    if getattr(args, 'seed', None) is not None:
        return args.seed
    return config.get('seed') if config.get('seed') is not None else DEFAULT_SEED


def _write_text(text, out):
    if out:
        with open(out, 'w', newline='') as file:
            file.write(text)
        logger.info(f"Wrote {out}")
    else:
        sys.stdout.write(text)


def cmd_generate(args, config):
    """Generate the card for one bit-length."""
    if not MIN_K <= args.k <= MAX_K:
        logger.error(f"k={args.k} outside the ladder range [{MIN_K}, {MAX_K}]")
        return EXIT_USAGE
    ladder = config['ladder']
    cap = args.cap if args.cap is not None else ladder['counting_cap']
    try:
        card = generate_card(args.k, seed=_seed(args, config), cap=cap,
                             retries=ladder['bsgs_retries'], workers=args.workers or ladder['workers'],
                             factor_budget=ladder['factor_budget'],
                             ascending_max_k=ladder['ascending_max_k'])
    except CountingInfeasibleError as e:
        logger.error(f"{e}")
        return EXIT_USAGE
    _write_text(card.to_json(), args.out)
    return EXIT_OK


def cmd_verify(args, config):
    """Verify one card file or every published card."""
    if args.all_appendix:
        cards = load_appendix_cards()
    elif args.path:
        cards = [load_card(args.path)]
    else:
        logger.error("verify needs a card path or --all-appendix")
        return EXIT_USAGE

    reports = [verify_card(card) for card in cards]
    if args.format == 'json':
        sys.stdout.write(json.dumps([report.to_dict() for report in reports], indent=2) + "\n")
    else:
        for report in reports:
            print(report.summary())
        passed = sum(report.passed for report in reports)
        print(f"{passed}/{len(reports)} cards passed")
    return EXIT_OK if all(report.passed for report in reports) else EXIT_FAILURE


def cmd_solve(args, config):
    """Solve a card with rho, kangaroo or brute force."""
    card = load_card(args.path)
    rho_config = config['rho']

    if args.method == 'brute' and card.k > rho_config['brute_max_bits']:
        logger.error(f"brute force refused for k={card.k} (limit {rho_config['brute_max_bits']} bits)")
        return EXIT_USAGE
    if args.method == 'rho' and card.k > rho_config['rho_max_bits']:
        logger.error(f"rho refused for k={card.k} (limit {rho_config['rho_max_bits']} bits)")
        return EXIT_USAGE
    if args.method == 'kangaroo' and (args.lo is None or args.width is None):
        logger.error("kangaroo needs --lo and --width")
        return EXIT_USAGE

    report = verify_card(card)
    if not report.passed:
        logger.error(f"card does not verify: {', '.join(report.failures)}")
        return EXIT_FAILURE

    seed = _seed(args, config)
    if args.method == 'brute':
        result = solve_brute(card, rho_config['brute_max_bits'])
    elif args.method == 'kangaroo':
        result = solve_kangaroo(card, args.lo, args.width, seed=seed, dp_bits=args.dp_bits)
    else:
        cfg = RhoConfig(
            m=args.m or rho_config['m'],
            dp_bits=args.dp_bits,
            use_negation=rho_config['use_negation'] and not args.no_negation,
            seed=seed,
            max_walkers=args.walkers or rho_config['max_walkers'],
            budget_multiple=args.budget_multiple or rho_config['budget_multiple'],
        )
        result = solve_memoryless(card, cfg) if args.memoryless else solve(card, cfg)

    if mul_xy(card.p, result.d, card.G.xy()) != card.Q.xy():
        logger.error(f"returned d={to_hex(result.d)} fails [d]G = Q")
        return EXIT_FAILURE
    print(to_hex(result.d))
    print(json.dumps(result.stats()))
    return EXIT_OK


def cmd_shor_sample(args, config):
    """Sample the Shor outcome law and recover d."""
    if args.samples <= 0:
        logger.error("--samples must be positive")
        return EXIT_USAGE

    card = None
    if args.card:
        card = load_card(args.card)
        if args.d is not None:
            card = plant_secret(card, args.d)
        if card.d is None:
            logger.error("card has no planted secret; pass --d")
            return EXIT_USAGE
        n, d = card.n, card.d
    elif args.n is not None and args.d is not None:
        n, d = args.n, args.d
    else:
        logger.error("shor-sample needs --card or both --n and --d")
        return EXIT_USAGE

    try:
        inst = ShorInstance(n, d)
    except ValueError as e:
        logger.error(f"{e}")
        return EXIT_USAGE

    summary = {'n': n}
    if args.check:
        if n > config['shor']['dense_cap']:
            logger.error(f"--check limited to n <= {config['shor']['dense_cap']}")
            return EXIT_USAGE
        deviation = float(abs(dense_simulate(inst, seed=_seed(args, config)) - exact_law(inst)).max())
        summary['dense_max_deviation'] = deviation
        if deviation >= DENSE_TOLERANCE:
            logger.error(f"dense simulation deviates from the sample law by {deviation:.3e}")
            return EXIT_FAILURE

    samples = sample_batch(inst, args.samples, seed=_seed(args, config))
    frame = pd.DataFrame({'a': [s.a for s in samples], 'b': [s.b for s in samples]})
    _write_text(frame.to_csv(index=False, lineterminator="\n"), args.out)

    try:
        recovered, used, _ = recover_with_stats(samples, card=card, n=n)
    except ShorRecoveryError as e:
        logger.error(f"{e}")
        return EXIT_FAILURE
    if recovered != d:
        logger.error(f"recovered d={to_hex(recovered)} differs from the planted secret")
        return EXIT_FAILURE

    summary.update({'recovered_d': to_hex(recovered), 'samples_used': used})
    stream = sys.stdout if args.out else sys.stderr
    print(json.dumps(summary), file=stream)
    return EXIT_OK


def _surface_table(schedule, hardware):
    return f"surface_{schedule.replace('-', '')}_{hardware}"


def cmd_estimate(args, config):
    """Resource estimate from the cost model or from the bundled tables."""
    catalog = DatasetCatalog(resolve_dataset_dir(config))
    schedule = args.schedule or config['estimate']['schedule']
    hardware = args.hardware or config['estimate']['hardware']

    if args.from_dataset:
        table = 'repcat' if args.code == 'repcat' else _surface_table(schedule, hardware)
        row = catalog.row(table, args.bits)
        record = {column: coerce(value) for column, value in row.items()}
        if args.code == 'repcat':
            record['t_seconds'] = parse_duration(row['t'])
        print(json.dumps({'table': table, **record}))
        return EXIT_OK

    params = hardware_params(
        hardware, p=args.p, p_th=args.pth, tau=args.tau, factories=args.factories,
        r_fac=args.rfac, eps_target=args.eps,
    )
    if args.emit:
        emit_curves(catalog.bit_values(), args.emit, series='estimator', params=params,
                    schedule=schedule, code=args.code, catalog=catalog)
        logger.info(f"Wrote estimator series to {args.emit}")
        return EXIT_OK

    logical = catalog.logical_resources(schedule, args.bits)
    estimate = estimate_resources(logical, params, args.code)
    print(json.dumps({'b': args.bits, 'schedule': schedule, 'N_log': logical.N_log,
                      'T_count': logical.T_count, 'T_depth': logical.T_depth, **estimate.to_dict(),
                      'time_label': describe_seconds(estimate.t_seconds)}))
    return EXIT_OK


def cmd_emit_datasets(args, config):
    """Re-serialise every bundled table and the classical curve into a directory."""
    catalog = DatasetCatalog(resolve_dataset_dir(config))
    os.makedirs(args.out, exist_ok=True)
    tables = [args.table] if args.table else catalog.tables()
    for table in tables:
        catalog.write(table, args.out)
    emit_curves(catalog.bit_values(), os.path.join(args.out, 'classical_curve.csv'))
    logger.info(f"Wrote {len(tables)} tables and the classical curve to {args.out}")
    return EXIT_OK


COMMANDS = {
    'generate': cmd_generate,
    'verify': cmd_verify,
    'solve': cmd_solve,
    'shor-sample': cmd_shor_sample,
    'estimate': cmd_estimate,
    'emit-datasets': cmd_emit_datasets,
}


def build_parser():
    parser = argparse.ArgumentParser(description="ECDLP challenge ladder")
    parser.add_argument("--config", default="config.yaml", help="Path to configuration file")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="Generate the card for bit-length k")
    gen.add_argument("--k", type=int, required=True)
    gen.add_argument("--seed", type=_int)
    gen.add_argument("--out", help="Card JSON path (default stdout)")
    gen.add_argument("--cap", type=int, help="Point-counting cap in bits")
    gen.add_argument("--workers", type=int, help="Processes counting candidate primes")

    ver = sub.add_parser("verify", help="Verify challenge cards")
    ver.add_argument("path", nargs="?")
    ver.add_argument("--all-appendix", action="store_true", help="Verify every published card")
    ver.add_argument("--format", choices=["text", "json"], default="text")

    sol = sub.add_parser("solve", help="Recover d for a card")
    sol.add_argument("path")
    sol.add_argument("--method", choices=["rho", "kangaroo", "brute"], default="rho")
    sol.add_argument("--seed", type=_int)
    sol.add_argument("--walkers", type=int)
    sol.add_argument("--m", type=int, help="Number of update rules")
    sol.add_argument("--dp-bits", type=int)
    sol.add_argument("--no-negation", action="store_true")
    sol.add_argument("--memoryless", action="store_true", help="Brent cycle finding instead of DPs")
    sol.add_argument("--budget-multiple", type=float)
    sol.add_argument("--lo", type=_int, help="Kangaroo interval start")
    sol.add_argument("--width", type=_int, help="Kangaroo interval width")

    sho = sub.add_parser("shor-sample", help="Sample Shor measurement outcomes")
    sho.add_argument("--card")
    sho.add_argument("--n", type=_int)
    sho.add_argument("--d", type=_int)
    sho.add_argument("--samples", type=int, required=True)
    sho.add_argument("--seed", type=_int)
    sho.add_argument("--out", help="CSV path for the a,b rows (default stdout)")
    sho.add_argument("--check", action="store_true", help="Cross-check with the dense simulator")

    est = sub.add_parser("estimate", help="Quantum resource estimate")
    est.add_argument("--bits", type=int, default=256)
    est.add_argument("--code", choices=list(CODES), default="surface")
    est.add_argument("--p", type=float)
    est.add_argument("--pth", type=float)
    est.add_argument("--tau", type=float)
    est.add_argument("--factories", type=int)
    est.add_argument("--rfac", type=float)
    est.add_argument("--eps", type=float)
    est.add_argument("--schedule", choices=list(SCHEDULES))
    est.add_argument("--hardware", choices=list(HARDWARE_PRESETS))
    est.add_argument("--from-dataset", action="store_true")
    est.add_argument("--emit", help="Write the estimator series CSV to this path")

    emi = sub.add_parser("emit-datasets", help="Write the bundled datasets")
    emi.add_argument("--out", required=True)
    emi.add_argument("--table")
    return parser


def main(argv=None):
    """Parse arguments, run one subcommand and return its exit code."""
    global logger
    parser = build_parser()
    args = parser.parse_args(argv)
    config = load_config(args.config)
    logger = setup_logger(args.config)

    try:
        return COMMANDS[args.command](args, config)
    except BudgetExceededError as e:
        logger.error(f"Budget exhausted after {e.ops} group operations: {e}")
        return EXIT_BUDGET
    except (CardFormatError, FileNotFoundError, ParameterError, DatasetLookupError,
            CountingInfeasibleError, json.JSONDecodeError) as e:
        logger.error(f"{e}")
        return EXIT_USAGE
    except ShorRecoveryError as e:
        logger.error(f"{e}")
        return EXIT_FAILURE
    except LadderError as e:
        logger.error(f"{e}")
        return EXIT_USAGE
    except ValueError as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
