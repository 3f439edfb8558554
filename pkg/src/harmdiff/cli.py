"""Command-line entry point.

Exit codes: 0 success, 1 usage or internal error, 2 classification Unknown,
3 certificate verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import families
from .cache import DocumentCache, classify_document
from .certificates import chain_from_dict, step_to_dict
from .config import Config, ConfigError, load_config
from .documents import (
    DocumentError,
    abc_csv,
    census_json,
    decode,
    encode,
    scan_csv,
    scan_json,
    sums_csv,
    verify_document,
)
from .representations import all_representations
from .smooth import enumerate_smooth
from .verify import verify_order_chain

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN, EXIT_BAD_CERT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        raise UsageError(message)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", type=Path, help="key = value config file")
    p.add_argument("--pool", type=_int_list, help="modulus pool, e.g. 8,3,24")
    p.add_argument("--bound", type=int, help="search bound: power values <= 2^BOUND")
    p.add_argument("--jobs", type=int, help="worker processes for scans")
    p.add_argument("--cache", type=Path, help="classification cache file")
    p.add_argument("--out", type=Path, help="write output here instead of stdout")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="harmdiff", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enumerate", parents=[common], help="list harmonic numbers")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")

    p = sub.add_parser("represent", parents=[common], help="all representations n = h1 - h2")
    p.add_argument("n", type=int)

    p = sub.add_parser("classify", parents=[common], help="classify n with certificates")
    p.add_argument("n", type=int)
    p.add_argument("--emit-cert", type=Path, help="write the certificate document here")
    p.add_argument("--json", action="store_true", help="print the document instead of a summary")

    p = sub.add_parser("verify", parents=[common], help="check a certificate document")
    p.add_argument("path", type=Path)

    p = sub.add_parser("scan", parents=[common], help="classify a range of integers")
    p.add_argument("range", nargs="?", help="LO..HI")
    p.add_argument("--lo", type=int)
    p.add_argument("--hi", type=int)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("families", parents=[common], help="family censuses")
    p.add_argument("family", choices=("fermat", "mersenne", "x41", "p48k41", "sums"))
    p.add_argument("--exponents", type=_int_list, default=families.MERSENNE_EXPONENTS)
    p.add_argument("--kind", choices=("pow2", "pow3"), default="pow2")
    p.add_argument("--max-exp", type=int, default=10)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--sum-family", choices=("fermat", "mersenne"), default="mersenne")

    p = sub.add_parser("abc", parents=[common], help="abc-triple audit")
    p.add_argument("--value-bound", type=int, default=10**4)
    p.add_argument("--extend", action="append", choices=families.EXTENSIONS, default=[])
    p.add_argument("--exceptional-only", action="store_true")

    p = sub.add_parser("chain-verify", parents=[common], help="replay order-chain certificates")
    p.add_argument("path", type=Path, nargs="?", help="chain JSON (default: shipped fixtures)")
    return parser


def build_config(args: argparse.Namespace) -> Config:
    cfg = load_config(args.config) if args.config else Config()
    cfg = cfg.with_env()
    overrides = {}
    if args.pool is not None:
        overrides["modulus_pool"] = args.pool
    if args.bound is not None:
        overrides["exponent_bound"] = args.bound
    if args.jobs is not None:
        overrides["jobs"] = args.jobs
    if args.cache is not None:
        overrides["cache_path"] = args.cache
    return replace(cfg, **overrides) if overrides else cfg


def _emit(args: argparse.Namespace, text: str, out) -> None:
    if args.out is not None:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text, encoding="utf-8")
    else:
        out.write(text)


def _cmd_enumerate(args, cfg, out) -> int:
    values = enumerate_smooth(args.limit)
    if args.format == "json":
        text = json.dumps([{"value": str(s.value), "a": str(s.two_exp), "b": str(s.three_exp)} for s in values], indent=2) + "\n"
    elif args.format == "csv":
        text = "value,a,b\n" + "".join(f"{s.value},{s.two_exp},{s.three_exp}\n" for s in values)
    else:
        text = "".join(f"{s.value} = 2^{s.two_exp} 3^{s.three_exp}\n" for s in values)
    _emit(args, text, out)
    return EXIT_OK


def _cmd_represent(args, cfg, out) -> int:
    reps, status = all_representations(args.n, cfg.exponent_bound, cfg.modulus_pool)
    lines = [
        f"{r.minuend.value} - {r.subtrahend.value}   scale {r.scale.value}, form {r.primitive.form.value}"
        f"({r.primitive.x}, {r.primitive.y})\n"
        for r in reps
    ]
    lines.append(f"{args.n}: {len(reps)} representation(s), {status}\n")
    _emit(args, "".join(lines), out)
    return EXIT_OK


def _cmd_classify(args, cfg, out) -> int:
    cache = DocumentCache(cfg.cache_path) if cfg.cache_path else None
    doc = classify_document(args.n, cfg, cache)
    if cache is not None:
        cache.flush()
    text = encode(doc)
    if args.emit_cert:
        args.emit_cert.parent.mkdir(parents=True, exist_ok=True)
        args.emit_cert.write_text(text, encoding="utf-8")
    if args.json:
        _emit(args, text, out)
    else:
        kinds = sorted({r.kind for r in doc.cases})
        reps = sorted(
            {_pair(doc.n, r, x, y) for r in doc.cases for x, y in r.solutions},
        )
        summary = f"{doc.n}: {doc.status} [{', '.join(kinds)}]"
        if reps:
            summary += " " + ", ".join(f"{a}-{b}" for a, b in reps)
        _emit(args, summary + "\n", out)
    return EXIT_UNKNOWN if doc.status == "unknown" else EXIT_OK


def _pair(n: int, rec, x: int, y: int) -> tuple[int, int]:
    g = rec.divisor
    if rec.form == "A":
        return g * 2**x, g * 3**y
    if rec.form == "B":
        return g * 3**y, g * 2**x
    return g * 2**x * 3**y, g


def _cmd_verify(args, cfg, out, err) -> int:
    try:
        doc = decode(args.path.read_text(encoding="utf-8"))
    except DocumentError as exc:
        err.write(f"{args.path}: malformed certificate: {exc}\n")
        return EXIT_ERROR
    problems = verify_document(doc)
    if problems:
        for p in problems:
            err.write(f"{args.path}: {p}\n")
        return EXIT_BAD_CERT
    out.write(f"{args.path}: ok ({doc.n}: {doc.status}, {len(doc.cases)} cases)\n")
    return EXIT_OK


def _cmd_scan(args, cfg, out) -> int:
    lo, hi = args.lo, args.hi
    if args.range:
        try:
            lo_s, hi_s = args.range.split("..")
            lo, hi = int(lo_s), int(hi_s)
        except ValueError:
            raise UsageError(f"range must look like LO..HI, got {args.range!r}")
    if lo is None or hi is None:
        raise UsageError("scan needs LO..HI or --lo/--hi")
    rows = families.ndh_scan(lo, hi, cfg)
    _emit(args, scan_csv(rows) if args.format == "csv" else scan_json(rows), out)
    return EXIT_OK


def _cmd_families(args, cfg, out) -> int:
    if args.family == "fermat":
        text = census_json(families.fermat_report(cfg))
    elif args.family == "mersenne":
        text = census_json(families.mersenne_report(args.exponents, cfg))
    elif args.family == "x41":
        text = census_json(families.family_x41(args.kind, args.max_exp, cfg))
    elif args.family == "p48k41":
        text = census_json(families.primes_48k41(args.count, cfg))
    else:
        text = sums_csv(families.sum_scan(args.sum_family))
    _emit(args, text, out)
    return EXIT_OK


def _cmd_abc(args, cfg, out) -> int:
    triples = families.abc_audit(args.extend, args.value_bound)
    if args.exceptional_only:
        triples = [t for t in triples if t.exceptional]
    _emit(args, abc_csv(triples), out)
    return EXIT_OK


def _load_chains(path: Path | None):
    if path is None:
        text = resources.files("harmdiff").joinpath("data/order_chains.json").read_text(encoding="utf-8")
    else:
        text = path.read_text(encoding="utf-8")
    data = json.loads(text)
    return [chain_from_dict(d) for d in (data if isinstance(data, list) else [data])]


def _cmd_chain_verify(args, cfg, out, err) -> int:
    try:
        chains = _load_chains(args.path)
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        err.write(f"malformed chain file: {exc}\n")
        return EXIT_ERROR
    status = EXIT_OK
    for chain in chains:
        ok = verify_order_chain(chain)
        out.write(f"form {chain.form.value}, t={chain.t}, anchor {chain.anchor}: {'valid' if ok else 'INVALID'}\n")
        for step in chain.steps:
            fields = step_to_dict(step)
            kind = fields.pop("kind")
            out.write(f"  {kind:12s} {' '.join(f'{k}={v}' for k, v in fields.items())}\n")
        if not ok:
            status = EXIT_BAD_CERT
    return status


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = build_config(args)
        if args.command == "verify":
            return _cmd_verify(args, cfg, out, err)
        if args.command == "chain-verify":
            return _cmd_chain_verify(args, cfg, out, err)
        handler = {
            "enumerate": _cmd_enumerate,
            "represent": _cmd_represent,
            "classify": _cmd_classify,
            "scan": _cmd_scan,
            "families": _cmd_families,
            "abc": _cmd_abc,
        }[args.command]
        return handler(args, cfg, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        parser.print_usage(err)
        return EXIT_ERROR
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR
    except (ConfigError, ValueError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_ERROR
    except Exception as exc:  # noqa: BLE001
        err.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_ERROR


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
