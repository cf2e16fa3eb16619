"""Command-line front end: ``gen``, ``build``, ``query``, ``stats``, ``bench``."""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import serialize
from .analysis import CalibrationError, calibrate, choose_strategy, profile_of
from .bench import SWEEP_PARAMS, bench_spec, run_bench, sweep
from .bitgrid import IndexConfig, default_alphabet, footprint_bits
from .datagen import GenSpec, generate_keys
from .family import IndexFamily, family_footprint_bits
from .index import Strategy, TripletIndex


class CLIError(Exception):
    pass


def _emit(records, fmt: str, out=None) -> None:
    out = out or sys.stdout
    records = list(records)
    if fmt == "jsonl":
        for rec in records:
            out.write(json.dumps(rec, sort_keys=False) + "\n")
        return
    for rec in records:
        width = max(map(len, rec), default=0)
        for key, value in rec.items():
            if isinstance(value, float):
                value = f"{value:.6g}"
            out.write(f"{key:<{width}}  {value}\n")
        out.write("\n")


def _load_keys(path: str, k: Optional[int], l: Optional[int], lenient: bool):
    alphabet, numbered = serialize.read_keyfile(path)
    if alphabet is None:
        if k is not None:
            alphabet = default_alphabet(k)
        elif numbered:
            alphabet = serialize.infer_alphabet(key for _, key in numbered)
        else:
            alphabet = default_alphabet(2)
    elif k is not None and k != len(alphabet):
        raise CLIError(f"--k {k} contradicts the declared alphabet of size {len(alphabet)}")
    if len(alphabet) < 2:
        alphabet += next(c for c in default_alphabet(26) if c not in alphabet)
    if l is None:
        l = max([3] + [len(key) for _, key in numbered])
    config = IndexConfig(alphabet, l)
    keys = []
    for lineno, key in numbered:
        try:
            config.check_key(key)
        except ValueError as exc:
            if lenient:
                print(f"{path}:{lineno}: skipped: {exc}", file=sys.stderr)
                continue
            raise CLIError(f"{path}:{lineno}: {exc}") from None
        keys.append(key)
    return config, keys


def cmd_gen(args) -> None:
    spec = GenSpec(m=args.m, k=args.k, l=args.l, distribution=args.dist,
                   zipf_exponent=args.zipf_exp, seed=args.seed)
    keys = generate_keys(spec)
    if args.out:
        serialize.write_keyfile(args.out, keys, spec.symbols)
    else:
        sys.stdout.write(f"%alphabet={spec.symbols}\n")
        sys.stdout.writelines(key + "\n" for key in keys)


def cmd_build(args) -> None:
    config, keys = _load_keys(args.input, args.k, args.l, args.lenient)
    index = IndexFamily(config, args.variant) if args.family else TripletIndex(config, args.variant)
    for key in keys:
        index.insert(key)
    serialize.save(index, args.out)
    _emit([{"artifact": args.out, "k": config.k, "l": config.l, "m": len(index),
            "variant": args.variant, "family": args.family}], args.format)


def _auto_strategy(index, query: str) -> Strategy:
    base = index.base if isinstance(index, IndexFamily) else index
    sample = [k for k in base.keys() if len(k) >= 3][:200]
    try:
        cost = calibrate(base, sample)
    except CalibrationError:
        return Strategy.INDEX
    return choose_strategy(cost, profile_of(base), max(3, len(query)))


def cmd_query(args) -> None:
    index = serialize.load(args.artifact)
    family = isinstance(index, IndexFamily)
    if args.mode in ("prefix", "substring") and not family:
        raise CLIError(f"{args.mode} queries need an artifact built with --family")
    strategy = _auto_strategy(index, args.query) if args.strategy == "auto" else Strategy(args.strategy)
    rec = {"mode": args.mode, "query": args.query, "strategy": strategy.value}
    if args.mode == "exact":
        out = index.search(args.query, strategy)
        rec.update(found=out.found, pruned_at=out.pruned_at, containers_probed=out.containers_probed)
        if args.format == "table":
            if out.found:
                print("found")
            elif isinstance(out.pruned_at, int):
                print(f"not found (pruned at triplet {out.pruned_at})")
            elif out.pruned_at == "mark":
                print("not found (mark bit unset)")
            else:
                print(f"not found ({out.containers_probed} container probed)"
                      if out.pruned_at else "not found")
            return
    else:
        res = {"suffix": index.suffix_query, "prefix": getattr(index, "prefix_query", None),
               "substring": getattr(index, "substring_query", None)}[args.mode](args.query, strategy)
        rec.update(results=sorted(res.keys), count=len(res.keys),
                   candidates=None if res.candidates is None else res.candidates.positions(),
                   containers_probed=res.containers_probed)
        if args.mode == "substring":
            rec.update(prefix_searches=res.prefix_searches, structures=list(res.structures))
    _emit([rec], args.format)


def cmd_stats(args) -> None:
    index = serialize.load(args.artifact)
    cfg = index.config
    rec = dict(index.stats())
    rec.update(k=cfg.k, l=cfg.l, variant=index.variant,
               family=isinstance(index, IndexFamily),
               index_bits=footprint_bits(cfg))
    if isinstance(index, IndexFamily):
        rec["reverse_family_bits"] = family_footprint_bits(cfg)
    _emit([rec], args.format)


def cmd_bench(args) -> None:
    common = dict(variant=args.variant, family=args.family, reps=args.reps,
                  fragment_count=args.fragments)
    if args.input:
        config, keys = _load_keys(args.input, args.k, args.l, args.lenient)
        reports = [run_bench(keys, config, seed=args.seed, **common)]
    else:
        spec = GenSpec(m=args.m, k=args.k or 26, l=args.l or 10, distribution=args.dist,
                       zipf_exponent=args.zipf_exp, seed=args.seed)
        seeds = [args.seed + i for i in range(args.seeds)]
        if args.sweep:
            param, _, values = args.sweep.partition("=")
            if param not in SWEEP_PARAMS or not values:
                raise CLIError(f"--sweep expects PARAM=v1,v2,... with PARAM in {SWEEP_PARAMS}")
            reports = sweep(spec, param, [int(v) for v in values.split(",")], seeds, **common)
        else:
            from dataclasses import replace
            reports = [bench_spec(replace(spec, seed=s), **common) for s in seeds]
    _emit((r.to_record() for r in reports), args.format)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tripletindex", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp, default="jsonl"):
        sp.add_argument("--format", choices=("jsonl", "table"), default=default)

    def gen_flags(sp, m_default=3000):
        sp.add_argument("--m", type=int, default=m_default)
        sp.add_argument("--dist", choices=("uniform", "zipf"), default="uniform")
        sp.add_argument("--zipf-exp", type=float, default=1.0)
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("gen", help="generate a synthetic key file")
    gen_flags(sp)
    sp.add_argument("--k", type=int, default=26)
    sp.add_argument("--l", type=int, default=10)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("build", help="build and save an index from a key file")
    sp.add_argument("input")
    sp.add_argument("--out", required=True)
    sp.add_argument("--variant", choices=("list", "tree"), default="list")
    sp.add_argument("--family", action="store_true", help="also build prefix/substring structures")
    sp.add_argument("--k", type=int, help="alphabet size when the file declares none")
    sp.add_argument("--l", type=int, help="maximum key length (default: longest key)")
    sp.add_argument("--lenient", action="store_true", help="skip invalid keys instead of aborting")
    fmt(sp)
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("query", help="query a saved index")
    sp.add_argument("artifact")
    sp.add_argument("query")
    sp.add_argument("--mode", choices=("exact", "prefix", "suffix", "substring"), default="exact")
    sp.add_argument("--strategy", choices=("index", "direct", "auto"), default="index")
    fmt(sp)
    sp.set_defaults(func=cmd_query)

    sp = sub.add_parser("stats", help="container statistics of a saved index")
    sp.add_argument("artifact")
    fmt(sp)
    sp.set_defaults(func=cmd_stats)

    sp = sub.add_parser("bench", help="run the workload protocol and report metrics")
    gen_flags(sp)
    sp.add_argument("--k", type=int)
    sp.add_argument("--l", type=int)
    sp.add_argument("--input", help="key file to benchmark instead of synthetic data")
    sp.add_argument("--lenient", action="store_true")
    sp.add_argument("--variant", choices=("list", "tree"), default="list")
    sp.add_argument("--family", action="store_true")
    sp.add_argument("--seeds", type=int, default=1, help="number of consecutive seeds")
    sp.add_argument("--sweep", help="PARAM=v1,v2,... with PARAM one of " + ", ".join(SWEEP_PARAMS))
    sp.add_argument("--reps", type=int, default=5, help="timing repetitions (median)")
    sp.add_argument("--fragments", type=int, help="prefix/suffix/substring queries per type")
    fmt(sp)
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (CLIError, ValueError, OSError) as exc:
        print(f"tripletindex: error: {exc}", file=sys.stderr)
        return 1
    return 0
