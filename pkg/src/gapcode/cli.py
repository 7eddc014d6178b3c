"""Command-line surface: parameter tables, stream encode/decode, sequence
checks, and verification runs.

Line protocol: one vector per line.  Messages are 0/1 strings (MSB first)
or, with ``--format hex``, fixed-width hex packing the same bits.
Codewords default to the sparse ``n=<n>:i,j,...`` form; ``--format bits``
switches to the dense 0/1 string.

Exit codes: 0 success, 1 usage/parameter error, 2 data error on at least
one input line, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from multiprocessing import Pool

from .analysis import bounds_report
from .core import BitString, CodeError, Codeword, ParameterError
from .derived import CONSTRUCTIONS, make_code
from .oracle import DEFAULT_BUDGET, verify_exhaustive, verify_sampled
from .sequences import MAX_ELL, CharSeq, f_ell, f_hat, is_anchor_decodable

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_VERIFY = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; the contract here is 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _add_construction_args(p, need_code=True):
    p.add_argument(
        "--construction",
        choices=CONSTRUCTIONS,
        default="c",
        help="code family (default: c)",
    )
    p.add_argument("--ell", type=int, required=True, help="blocklength exponent")
    p.add_argument("--t", type=int, default=None, help="weight/truncation parameter")
    p.add_argument("--r", type=int, default=None, help="two-parameter family index")


def _build_code(args):
    return make_code(args.construction, args.ell, t=args.t, r=args.r)


def _hex_width(k: int) -> int:
    return (k + 3) // 4


def _parse_message(line: str, k: int, fmt: str) -> BitString:
    if fmt == "hex":
        value = int(line, 16)
        if value >> k:
            raise ParameterError(f"hex value does not fit {k} bits")
        return BitString(value, k)
    x = BitString.from_text(line)
    if x.length != k:
        raise ParameterError(f"message has {x.length} bits, expected {k}")
    return x


def _render_message(x: BitString, fmt: str) -> str:
    if fmt == "hex":
        return format(x.value, f"0{_hex_width(x.length)}x")
    return x.text()


def _parse_codeword(line: str, fmt: str) -> Codeword:
    if fmt == "bits":
        return Codeword.from_bits_text(line)
    return Codeword.from_ones_text(line)


def _render_codeword(c: Codeword, fmt: str) -> str:
    if fmt == "bits":
        return c.bits_text()
    return c.ones_text()


# Worker state for --jobs: each process rebuilds the code once.
_WORKER = {}


def _init_worker(construction, ell, t, r, direction, fmt, strict):
    _WORKER["code"] = make_code(construction, ell, t=t, r=r)
    _WORKER["direction"] = direction
    _WORKER["fmt"] = fmt
    _WORKER["strict"] = strict


def _run_line(code, direction, fmt, strict, line):
    if direction == "encode":
        x = _parse_message(line, code.params.k, fmt)
        return _render_codeword(code.encode(x), "bits" if fmt == "bits" else "ones")
    c = _parse_codeword(line, "bits" if fmt == "bits" else "ones")
    return _render_message(code.decode(c, strict=strict), fmt)


def _worker_line(numbered):
    idx, line = numbered
    try:
        return idx, True, _run_line(
            _WORKER["code"],
            _WORKER["direction"],
            _WORKER["fmt"],
            _WORKER["strict"],
            line,
        )
    except (CodeError, ValueError) as exc:
        return idx, False, str(exc)


def _stream(args, direction) -> int:
    try:
        code = _build_code(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    fin = open(args.input) if args.input else sys.stdin
    fout = open(args.output, "w") if args.output else sys.stdout
    status = EXIT_OK
    try:
        lines = [
            (i, ln.strip()) for i, ln in enumerate(fin, 1) if ln.strip()
        ]
        if args.jobs and args.jobs > 1:
            with Pool(
                args.jobs,
                initializer=_init_worker,
                initargs=(
                    args.construction,
                    args.ell,
                    args.t,
                    args.r,
                    direction,
                    args.format,
                    args.strict,
                ),
            ) as pool:
                results = pool.map(_worker_line, lines)
        else:
            results = []
            for i, line in lines:
                try:
                    results.append(
                        (i, True, _run_line(code, direction, args.format, args.strict, line))
                    )
                except (CodeError, ValueError) as exc:
                    results.append((i, False, str(exc)))
        for i, ok, payload in results:
            if ok:
                print(payload, file=fout)
            else:
                print(f"line {i}: error: {payload}", file=sys.stderr)
                status = EXIT_DATA
    finally:
        if args.input:
            fin.close()
        if args.output:
            fout.close()
    return status


def _cmd_params(args) -> int:
    try:
        code = _build_code(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    p = code.params
    print(f"construction={p.construction} ell={p.ell}"
          + (f" t={p.t}" if p.t is not None else "")
          + (f" r={p.r}" if p.r is not None else ""))
    print(f"n={p.n} k={p.k} w={p.w}")
    if code.seq is not None:
        print(f"seq={code.seq}")
    else:
        from .derived import _bt_plan

        lens = _bt_plan(p.ell, p.t)[0]
        print("blocks=" + ",".join(str(v) for v in reversed(lens)))
    return EXIT_OK


def _table_rows(max_ell: int, with_bounds: bool):
    for ell in range(3, max_ell + 1):
        f = f_ell(ell)
        fh = f_hat(ell)
        row = f'{ell},"{f}","{fh}",{f.k},{fh.k}'
        if with_bounds:
            b = bounds_report(ell)
            row += (
                f",{b.floor_log2_binom},{b.stirling_ub:.6f},"
                f"{b.necklace_ub},{b.delta_ell}"
            )
        yield row


def _cmd_table(args) -> int:
    if not 3 <= args.max_ell <= MAX_ELL:
        print(f"error: need 3 <= max-ell <= {MAX_ELL}", file=sys.stderr)
        return EXIT_USAGE
    out = open(args.output, "w") if args.output else sys.stdout
    try:
        for row in _table_rows(args.max_ell, args.bounds):
            print(row, file=out)
    finally:
        if args.output:
            out.close()
    return EXIT_OK


def _cmd_bounds(args) -> int:
    if not 3 <= args.max_ell <= MAX_ELL:
        print(f"error: need 3 <= max-ell <= {MAX_ELL}", file=sys.stderr)
        return EXIT_USAGE
    out = open(args.output, "w") if args.output else sys.stdout
    try:
        print(
            "ell,k_ell,k_hat_ell,floor_log2_binom,stirling_ub,necklace_ub,delta_ell",
            file=out,
        )
        for ell in range(3, args.max_ell + 1):
            b = bounds_report(ell)
            print(
                f"{b.ell},{b.k_ell},{b.k_hat_ell},{b.floor_log2_binom},"
                f"{b.stirling_ub:.6f},{b.necklace_ub},{b.delta_ell}",
                file=out,
            )
    finally:
        if args.output:
            out.close()
    return EXIT_OK


def _cmd_check_seq(args) -> int:
    try:
        seq = CharSeq.parse(args.seq)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    witness = is_anchor_decodable(seq)
    if witness.ok:
        print(f"anchor-decodable: yes (k={seq.k})")
    else:
        names = {"shape": "shape (non-decreasing, last entry = length)",
                 "capacity": "condition 1 (power-sum capacity)",
                 "shift": "condition 2 (gamma shift-invariant)"}
        print(f"anchor-decodable: no — {names[witness.condition]}; {witness.detail} (k={seq.k})")
    return EXIT_OK


def _cmd_verify(args) -> int:
    try:
        code = _build_code(args)
        if args.sampled:
            report = verify_sampled(
                code, samples=args.samples, seed=args.seed, strict=args.strict
            )
        else:
            report = verify_exhaustive(code, strict=args.strict, budget=args.budget)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        print(json.dumps(report.summary()))
    else:
        print(report.render_text())
    return EXIT_OK if report.ok else EXIT_VERIFY


def build_parser() -> _Parser:
    parser = _Parser(prog="gapcode", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="resolve and print (n, k, w) plus the sequence")
    _add_construction_args(p)
    p.set_defaults(func=_cmd_params)

    for name, direction in (("encode", "encode"), ("decode", "decode")):
        p = sub.add_parser(name, help=f"{name} one vector per line")
        _add_construction_args(p)
        p.add_argument(
            "--format",
            choices=("ones", "bits", "hex"),
            default="ones",
            help="ones: sparse codewords (default); bits: dense codewords; "
            "hex: hex-packed messages",
        )
        p.add_argument("--input", default=None, help="input file (default stdin)")
        p.add_argument("--output", default=None, help="output file (default stdout)")
        p.add_argument("--jobs", type=int, default=1, help="parallel workers")
        strictness = p.add_mutually_exclusive_group()
        strictness.add_argument(
            "--strict", dest="strict", action="store_true", default=True,
            help="reject words outside the encoder image (default)",
        )
        strictness.add_argument(
            "--permissive", dest="strict", action="store_false",
            help="best-effort decoding of out-of-image words",
        )
        p.set_defaults(func=lambda a, d=direction: _stream(a, d))

    p = sub.add_parser("table", help="CSV of f, f-hat and their dimensions")
    p.add_argument("--max-ell", type=int, default=10)
    p.add_argument("--bounds", action="store_true", help="append bound columns")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("bounds", help="CSV of dimension bounds per ell")
    p.add_argument("--max-ell", type=int, default=16)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("check-seq", help="decide anchor-decodability of a sequence")
    p.add_argument("seq", help="comma-separated block lengths, e.g. 1,2,2,4")
    p.set_defaults(func=_cmd_check_seq)

    p = sub.add_parser("verify", help="exhaustive or sampled round-trip verification")
    _add_construction_args(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", dest="sampled", action="store_false", default=False)
    mode.add_argument("--sampled", dest="sampled", action="store_true")
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--json", action="store_true", help="machine-readable summary")
    strictness = p.add_mutually_exclusive_group()
    strictness.add_argument(
        "--strict", dest="strict", action="store_true", default=True
    )
    strictness.add_argument("--permissive", dest="strict", action="store_false")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
