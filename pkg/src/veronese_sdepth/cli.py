"""Command-line front end.

Commands: ``report`` (bounds and certification for one instance),
``build`` (write a partition certificate file), ``verify`` (check one),
``table`` (CSV over ranges), ``blocks`` (debug view of one block
structure).

Exit codes are a stable contract:
  0   success / instance verified
  10  valid arguments but only bounds certified
  2   usage error or unparseable input
  3   internal verification failure
  4   a certificate file that parses but is not a valid partition

Partition certificate files are ASCII with LF line endings: a header
``n=<int> d=<int> regime=<tag>`` followed by one ``<lower>;<upper>`` line
per interval, both sides comma-separated sorted 1-indexed integers.
"""

from __future__ import annotations

import argparse
import re
import sys
from math import comb

import numpy as np

from . import bitops
from .blocks import Density, block_structure
from .builder import (
    DEFAULT_SWEEP_CAP,
    MATERIALIZE_LIMIT,
    IntervalPartition,
    build_partition,
    build_partition_k3,
)
from .core import (
    CircularSet,
    conjectured_sdepth,
    k3_band_exact,
    regime_of,
    sdepth_upper_bound,
)
from .errors import (
    DensityOutOfRangeError,
    EmptySetError,
    InternalCheckError,
    InvalidPartitionError,
    PartitionFileError,
    PreconditionViolatedError,
    SdepthError,
    SizeMismatchError,
    SOutOfRangeError,
    UniverseMismatchError,
)
from .verify import exact_sdepth, sdepth_report, verify_partition

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INTERNAL = 3
EXIT_INVALID_CERTIFICATE = 4
EXIT_BOUNDS_ONLY = 10

_USAGE_ERRORS = (
    PreconditionViolatedError,
    DensityOutOfRangeError,
    SOutOfRangeError,
    SizeMismatchError,
    UniverseMismatchError,
    EmptySetError,
    PartitionFileError,
    ValueError,
)

_HEADER_RE = re.compile(r"^n=(\d+) d=(\d+) regime=([A-Za-z0-9]+)$")
_CHUNK = 200_000


def write_partition_file(p: IntervalPartition, path: str) -> None:
    names = [""] + [str(i) for i in range(1, p.n + 1)]

    def csv_of(mask: int) -> str:
        parts = []
        while mask:
            low = mask & -mask
            parts.append(names[low.bit_length()])
            mask ^= low
        return ",".join(parts)

    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(f"n={p.n} d={p.d} regime={p.regime.regime.value}\n")
        total = len(p)
        for start in range(0, total, _CHUNK):
            stop = min(start + _CHUNK, total)
            lo_chunk = p.lowers[start:stop].tolist()
            up_chunk = p.uppers[start:stop].tolist()
            lines = []
            for lo, up in zip(lo_chunk, up_chunk):
                s = csv_of(lo)
                lines.append(s + ";" + (s if up == lo else csv_of(up)))
            fh.write("\n".join(lines))
            fh.write("\n")


def parse_partition_file(path: str) -> IntervalPartition:
    with open(path, "r", encoding="ascii", newline="") as fh:
        header = fh.readline()
        match = _HEADER_RE.match(header.rstrip("\n"))
        if not match:
            raise PartitionFileError(f"bad header {header!r}", lineno=1)
        n, d = int(match.group(1)), int(match.group(2))
        tag = match.group(3)
        if not (1 <= d <= n):
            raise PartitionFileError(f"header needs 1 <= d <= n, got n={n} d={d}", 1)
        if n > bitops.MAX_UNIVERSE:
            raise PartitionFileError(f"universe {n} too large", 1)
        reg = regime_of(n, d)
        if tag != reg.regime.value:
            raise PartitionFileError(
                f"regime tag {tag} does not match {reg.regime.value} for n={n}, d={d}", 1
            )

        def parse_side(text: str, lineno: int) -> int:
            mask = 0
            prev = 0
            for piece in text.split(","):
                try:
                    x = int(piece)
                except ValueError:
                    raise PartitionFileError(f"bad integer {piece!r}", lineno)
                if x <= prev:
                    raise PartitionFileError(
                        f"members not sorted strictly increasing at {x}", lineno
                    )
                if x > n:
                    raise PartitionFileError(f"member {x} outside [1, {n}]", lineno)
                mask |= 1 << (x - 1)
                prev = x
            return mask

        lowers: list[int] = []
        uppers: list[int] = []
        for lineno, raw in enumerate(fh, start=2):
            line = raw.rstrip("\n")
            if not line:
                raise PartitionFileError("blank line", lineno)
            lo_s, sep, up_s = line.partition(";")
            if not sep or ";" in up_s:
                raise PartitionFileError("expected exactly one ';'", lineno)
            lo = parse_side(lo_s, lineno)
            up = lo if up_s == lo_s else parse_side(up_s, lineno)
            if lo & ~up:
                raise PartitionFileError("lower is not a subset of upper", lineno)
            if lo.bit_count() < d:
                raise PartitionFileError(f"lower endpoint smaller than d={d}", lineno)
            lowers.append(lo)
            uppers.append(up)

    dtype = bitops.mask_dtype(n)
    count = len(lowers)
    return IntervalPartition(
        n,
        d,
        reg,
        np.fromiter(lowers, dtype=dtype, count=count),
        np.fromiter(uppers, dtype=dtype, count=count),
        np.zeros(count, dtype=np.int16),
        ("file",),
    )


def _within_cap(n: int, cap: int) -> bool:
    return n <= MATERIALIZE_LIMIT and comb(n, (n + 1) // 2) <= cap


def cmd_report(args) -> int:
    rep = sdepth_report(
        args.n,
        args.d,
        with_oracle=args.oracle,
        oracle_budget=args.oracle_budget,
        cap=args.cap,
    )
    print(f"Stanley depth report for the squarefree Veronese ideal I({args.n},{args.d})")
    print(f"n={rep.n}")
    print(f"d={rep.d}")
    print(f"regime={rep.regime.regime.value}")
    print(f"k={rep.regime.k}")
    print(f"r={rep.regime.r}")
    print(f"conjectured={rep.conjectured}")
    print(f"upper_bound={rep.upper_bound_formula}")
    cert = "none" if rep.certified_lower is None else str(rep.certified_lower)
    print(f"certified_lower={cert}")
    print(f"certification={rep.certification}")
    if args.oracle:
        oracle = "none" if rep.oracle_exact is None else str(rep.oracle_exact)
        print(f"oracle_exact={oracle}")
    print(f"verified={'yes' if rep.verified else 'no'}")
    return EXIT_OK if rep.verified else EXIT_BOUNDS_ONLY


def cmd_build(args) -> int:
    n, d = args.n, args.d
    conjectured_sdepth(n, d)  # argument validation
    if args.k3 and n != 4 * d + 3:
        print(f"--k3 requires n = 4d + 3 = {4 * d + 3}, got n={n}", file=sys.stderr)
        return EXIT_USAGE
    if not _within_cap(n, args.cap):
        print(
            f"materializing n={n} exceeds the enumeration cap {args.cap}; "
            "use `report` for a layered certificate",
            file=sys.stderr,
        )
        return EXIT_USAGE
    part, _ = build_partition_k3(d) if args.k3 else build_partition(n, d)
    verdict = verify_partition(part)
    if not verdict.ok:
        print("internal error: built partition failed verification", file=sys.stderr)
        return EXIT_INTERNAL
    write_partition_file(part, args.out)
    print(f"intervals={verdict.interval_count}")
    print(f"min_upper_size={verdict.min_upper_size}")
    return EXIT_OK


def cmd_verify(args) -> int:
    part = parse_partition_file(args.in_path)
    if not _within_cap(part.n, args.cap):
        print(
            f"verifying n={part.n} exceeds the enumeration cap {args.cap}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    verdict = verify_partition(part)
    if verdict.ok:
        print(
            f"verified: disjoint and covering; intervals={verdict.interval_count} "
            f"min_upper_size={verdict.min_upper_size}"
        )
        return EXIT_OK
    if not verdict.disjoint:
        i, j, witness = verdict.overlap_witness
        print(f"not disjoint: intervals {i} and {j} share {{{witness.serialize()}}}")
    if not verdict.covers:
        print(f"not covering: {{{verdict.uncovered_witness.serialize()}}} is uncovered")
    return EXIT_INVALID_CERTIFICATE


def cmd_table(args) -> int:
    d_lo, d_hi = args.d_range
    n_lo, n_hi = args.n_range
    print("n,d,regime,conjectured,certified_lower,upper_bound,verified")
    for d in range(d_lo, d_hi + 1):
        for n in range(n_lo, n_hi + 1):
            if n < d:
                continue
            reg = regime_of(n, d)
            conjectured = conjectured_sdepth(n, d)
            upper = sdepth_upper_bound(n, d)
            if not _within_cap(n, args.cap):
                band = k3_band_exact(n, d)
                cert = "" if band is None else str(band)
                verified = "SKIPPED(cap)"
            else:
                rep = sdepth_report(n, d, cap=args.cap)
                cert = "" if rep.certified_lower is None else str(rep.certified_lower)
                verified = "yes" if rep.verified else "no"
            print(f"{n},{d},{reg.regime.value},{conjectured},{cert},{upper},{verified}")
    return EXIT_OK


def cmd_blocks(args) -> int:
    a = CircularSet.parse(args.n, args.set)
    density = Density.coerce(args.density)
    bs = block_structure(a, density)
    closure = CircularSet(args.n, set(a.members) | set(bs.gap_positions()))
    print(bs.render())
    print(f"f={closure.serialize()}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    value = exact_sdepth(args.n, args.d, budget=args.budget)
    print(f"oracle_exact={'none' if value is None else value}")
    return EXIT_OK if value is not None else EXIT_BOUNDS_ONLY


def _range_arg(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}")
    try:
        lo_i, hi_i = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers in {text!r}")
    if lo_i > hi_i:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo_i, hi_i


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="veronese-sdepth",
        description="Interval-partition certificates for the Stanley depth of "
        "squarefree Veronese ideals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_cap(sp):
        sp.add_argument(
            "--cap",
            type=int,
            default=DEFAULT_SWEEP_CAP,
            help="max subsets enumerated per verification sweep",
        )

    sp = sub.add_parser("report", help="bounds and certification for one instance")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-d", type=int, required=True)
    sp.add_argument("--oracle", action="store_true", help="also run the exact oracle")
    sp.add_argument("--oracle-budget", type=int, default=None)
    add_cap(sp)
    sp.set_defaults(func=cmd_report)

    sp = sub.add_parser("build", help="build and write a partition certificate")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-d", type=int, required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--k3", action="store_true", help="use the n = 4d+3 construction")
    add_cap(sp)
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("verify", help="verify a partition certificate file")
    sp.add_argument("--in", dest="in_path", required=True)
    add_cap(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("table", help="CSV of bounds over ranges")
    sp.add_argument("--d-range", type=_range_arg, required=True)
    sp.add_argument("--n-range", type=_range_arg, required=True)
    sp.add_argument("--format", choices=["csv"], default="csv")
    add_cap(sp)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("blocks", help="debug view of one block structure")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--set", required=True, help="comma-separated members, e.g. 1,2")
    sp.add_argument("--density", required=True, help="integer or rational, e.g. 2 or 3/2")
    sp.set_defaults(func=cmd_blocks)

    sp = sub.add_parser("oracle", help="run only the exact oracle (tiny n)")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-d", type=int, required=True)
    sp.add_argument("--budget", type=int, default=None)
    sp.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    if getattr(args, "oracle_budget", None) is None and hasattr(args, "oracle_budget"):
        from .verify import DEFAULT_ORACLE_BUDGET

        args.oracle_budget = DEFAULT_ORACLE_BUDGET
    if getattr(args, "budget", None) is None and hasattr(args, "budget"):
        from .verify import DEFAULT_ORACLE_BUDGET

        args.budget = DEFAULT_ORACLE_BUDGET
    try:
        return args.func(args)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InternalCheckError, InvalidPartitionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except SdepthError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entrypoint() -> None:
    sys.exit(main())
