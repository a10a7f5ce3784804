# -*- coding: utf-8 -*-
from __future__ import annotations

import logging
import sys
from argparse import Namespace
from pathlib import Path
from typing import BinaryIO, TextIO

from .dataset import Database, DatasetFormatError, Opener, dump_records, read_database, save_database, save_records
from .miner import CohuiRecord, MiningParams, MiningStats, mine
from .utils import LU_SU, PRUNE, aligned_table, json_dumps, key_value_block

__all__ = ["EXIT_OK", "EXIT_DIFFERENCE", "EXIT_INPUT", "EXIT_REFUSAL", "cmd_mine", "cmd_verify", "cmd_bench", "cmd_gen"]

logger: logging.Logger = logging.getLogger("cli")

EXIT_OK: int = 0
EXIT_DIFFERENCE: int = 1
EXIT_INPUT: int = 2
EXIT_REFUSAL: int = 3


def _load(args: Namespace) -> Database | None:
    try:
        return read_database(args.input, merge_duplicates=args.merge_duplicates, trust_sum=args.trust_sum)
    except OSError as ex:
        logger.error(f"Cannot read {args.input}: {ex.strerror or ex}")
    except DatasetFormatError as ex:
        logger.error(f"Invalid data in {args.input}: {ex}")
    except UnicodeDecodeError as ex:
        logger.error(f"Invalid data in {args.input}: {ex}")
    return None


def _params(args: Namespace, **overrides: object) -> MiningParams | None:
    """the run configuration from the options; `bench` gives the thresholds as the overrides"""
    fields: dict[str, object] = {
        "min_util": getattr(args, "min_util", None),
        "min_cor": getattr(args, "min_cor", None),
        "kulc_mode": getattr(args, "kulc_mode", PRUNE),
        "bounds_mode": getattr(args, "bounds", LU_SU),
        "max_pattern_length": args.max_len,
        "absolute": args.absolute,
    }
    fields.update(overrides)
    if fields["min_util"] is None or fields["min_cor"] is None:
        logger.error("No thresholds given")
        return None
    params: MiningParams = MiningParams(**fields)
    try:
        return params.validate()
    except ValueError as ex:
        logger.error(str(ex))
        return None


def _write_stats(stats: MiningStats, args: Namespace) -> None:
    f: TextIO
    if args.stats is not None:
        with Opener(args.stats).open("w", newline="\n") as f:
            f.write(key_value_block(stats.to_dict()))
    if args.stats_json is not None:
        g: BinaryIO
        with Opener(args.stats_json).open("wb") as g:
            g.write(json_dumps(dict((k, v) for k, v in stats.to_dict().items() if v is not None)) + b"\n")


def cmd_mine(args: Namespace) -> int:
    from .bench import PeakMemoryTracker

    params: MiningParams | None = _params(args)
    if params is None:
        return EXIT_INPUT
    db: Database | None = _load(args)
    if db is None:
        return EXIT_INPUT

    memory: PeakMemoryTracker
    records: list[CohuiRecord]
    stats: MiningStats
    with PeakMemoryTracker() as memory:
        records, stats = mine(db, params)
    stats.peak_memory = memory.peak
    stats.peak_memory_source = memory.source

    try:
        if args.output is None:
            dump_records(records, sys.stdout)
        else:
            save_records(records, args.output)
        _write_stats(stats, args)
    except OSError as ex:
        logger.error(f"Cannot write {ex.filename or args.output}: {ex.strerror or ex}")
        return EXIT_INPUT
    return EXIT_OK


def cmd_verify(args: Namespace) -> int:
    from .oracle import (
        Caps,
        DiffReport,
        OracleRefusal,
        OracleResult,
        PruningLoss,
        audit_pruning,
        compare,
        enumerate_all,
        kulc_growth_counterexamples,
    )

    params: MiningParams | None = _params(args)
    if params is None:
        return EXIT_INPUT
    if args.max_items < 1:
        logger.error(f"Invalid item limit: {args.max_items}")
        return EXIT_INPUT
    db: Database | None = _load(args)
    if db is None:
        return EXIT_INPUT

    try:
        reference: OracleResult = enumerate_all(db, params, Caps(max_items=args.max_items, max_length=args.max_len))
    except OracleRefusal as ex:
        logger.error(str(ex))
        return EXIT_REFUSAL
    records: list[CohuiRecord]
    records, _ = mine(db, params)
    report: DiffReport = compare(records, reference)

    print(f"{len(records)} patterns mined, {reference.enumerated} itemsets evaluated, {len(reference.records)} expected")
    if not report:
        print("no differences")
        return EXIT_OK

    if params.kulc_mode == PRUNE and report.missing:
        losses: list[PruningLoss] = audit_pruning(records, report.missing, db, params)
        loss: PruningLoss
        for loss in losses:
            print(loss)
        kulc_growth_counterexamples(reference.records, db)
        # the lost patterns are told above
        report = DiffReport(spurious=report.spurious, mismatches=report.mismatches)
    line: str
    for line in report.lines():
        print(line)
    return EXIT_DIFFERENCE


def cmd_bench(args: Namespace) -> int:
    from .bench import BenchReport, ScalabilityPoint, ScalabilitySeries, run_bench, scalability_series

    if not args.min_util_list or not args.min_cor_list:
        logger.error("No thresholds given")
        return EXIT_INPUT
    if args.repeat < 1:
        logger.error(f"Invalid number of repetitions: {args.repeat}")
        return EXIT_INPUT
    params: MiningParams | None
    min_util: float
    min_cor: float
    for min_util in args.min_util_list:
        for min_cor in args.min_cor_list:
            params = _params(args, min_util=min_util, min_cor=min_cor, bounds_mode=args.modes[0])
            if params is None:
                return EXIT_INPUT
    db: Database | None = _load(args)
    if db is None:
        return EXIT_INPUT

    try:
        report: BenchReport = run_bench(
            db,
            args.min_util_list,
            args.min_cor_list,
            bounds_modes=args.modes,
            kulc_modes=args.kulc_modes,
            repeat=args.repeat,
            absolute=args.absolute,
            max_pattern_length=args.max_len,
        )
    except ValueError as ex:
        logger.error(str(ex))
        return EXIT_INPUT

    try:
        if args.table is None:
            report.dump_table()
        else:
            report.save_table(args.table)
        if args.report is not None:
            report.save(args.report)
    except OSError as ex:
        logger.error(f"Cannot write {ex.filename}: {ex.strerror or ex}")
        return EXIT_INPUT

    if args.fractions:
        params = _params(
            args,
            min_util=args.min_util_list[0],
            min_cor=args.min_cor_list[0],
            bounds_mode=args.modes[0],
            kulc_mode=args.kulc_modes[0],
        )
        try:
            series: ScalabilitySeries = scalability_series(db, params, args.fractions, repeat=args.repeat)
        except ValueError as ex:
            logger.error(str(ex))
            return EXIT_INPUT
        p: ScalabilityPoint
        sys.stdout.write(
            aligned_table(
                ("fraction", "transactions", "wall_time", "fitted", "candidates", "patterns"),
                [
                    (p.fraction, p.transactions, p.wall_time, series.fitted(p.transactions), p.candidates, p.patterns)
                    for p in series.points
                ],
            )
        )
        logger.info(f"the worst ratio to the linear fit is {series.worst_ratio():.3f}")
    return EXIT_OK


def cmd_gen(args: Namespace) -> int:
    from .synth import SynthSpec, generate

    spec: SynthSpec = SynthSpec(
        n_transactions=args.trans,
        n_items=args.items,
        avg_length=args.avg_len,
        max_per_item_utility=args.max_util,
        seed=args.seed,
        density_profile=args.profile,
    )
    try:
        spec.validate()
    except ValueError as ex:
        logger.error(str(ex))
        return EXIT_INPUT
    try:
        save_database(generate(spec), args.out)
    except OSError as ex:
        logger.error(f"Cannot write {args.out}: {ex.strerror or ex}")
        return EXIT_INPUT
    logger.info(f"{spec.name} written to {Path(args.out)}")
    return EXIT_OK


COMMANDS = {
    "mine": cmd_mine,
    "verify": cmd_verify,
    "bench": cmd_bench,
    "gen": cmd_gen,
}
