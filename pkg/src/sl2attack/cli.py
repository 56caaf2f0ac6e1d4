"""Command-line front end: hash, collide, invgen, preimage, verify, experiment."""

from __future__ import annotations

import argparse
import random
import sys

from .algebra import ModMatrix2, Word, WordParseError, evaluate_word, zemor_hash
from .errors import RetryExhausted
from .experiment import format_summary_table, run_experiment, write_csv, write_json
from .collision import identity_word, inverse_generator_words
from .number_theory import is_prime
from .preimage import preimage_word


def _parse_prime(text: str) -> int:
    p = int(text)
    if p < 3 or not is_prime(p):
        raise ValueError(f"modulus must be an odd prime, got {p}")
    return p


def _parse_matrix(text: str, p: int) -> ModMatrix2:
    m = ModMatrix2.parse(text, p)
    if m.det() != 1:
        raise ValueError(f"matrix {text!r} has determinant {m.det()} mod {p}, expected 1")
    return m


def _make_rng(seed: int | None) -> random.Random:
    return random.Random(seed) if seed is not None else random.Random()

def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="ascii") as fh:
            fh.write(text)


def cmd_hash(args) -> int:
    p = _parse_prime(args.prime)
    bits = []
    for i, ch in enumerate(args.bits):
        if ch not in "01":
            raise ValueError(f"message must be over {{0,1}}, found {ch!r} at position {i}")
        bits.append(int(ch))
    print(zemor_hash(bits, p))
    return 0


def cmd_collide(args) -> int:
    p = _parse_prime(args.prime)
    word = identity_word(p, _make_rng(args.seed))
    if not evaluate_word(word, p).is_identity():
        print("internal error: collision word failed verification", file=sys.stderr)
        return 1
    _emit(str(word) + "\n", args.out)
    return 0


def cmd_invgen(args) -> int:
    p = _parse_prime(args.prime)
    w_a, w_b = inverse_generator_words(p, _make_rng(args.seed))
    _emit(f"{w_a}\n{w_b}\n", args.out)
    return 0


def cmd_preimage(args) -> int:
    p = _parse_prime(args.prime)
    target = _parse_matrix(args.matrix, p)
    word = preimage_word(target, _make_rng(args.seed), args.alphabet)
    if evaluate_word(word, p) != target:
        print("internal error: preimage word failed verification", file=sys.stderr)
        return 1
    _emit(str(word) + "\n", args.out)
    return 0


def cmd_verify(args) -> int:
    p = _parse_prime(args.prime)
    target = _parse_matrix(args.matrix, p)
    if args.word_file is not None:
        with open(args.word_file, encoding="ascii") as fh:
            text = fh.read()
    else:
        text = args.word
    word = Word.parse(text.strip())
    if evaluate_word(word, p) == target:
        print("ok")
        return 0
    print(f"mismatch: word evaluates to {evaluate_word(word, p)}", file=sys.stderr)
    return 1


def cmd_experiment(args) -> int:
    bits_list = [int(part) for part in args.bits.split(",") if part]
    if not bits_list:
        raise ValueError("need at least one bit size")
    records, summaries = run_experiment(
        bits_list, args.trials, args.seed, args.timeout_secs or None, args.alphabet
    )
    if args.out is not None:
        with open(args.out, "w", encoding="ascii") as fh:
            if args.format == "csv":
                write_csv(records, fh)
            else:
                write_json(records, summaries, fh)
        print(format_summary_table(summaries))
    else:
        if args.format == "csv":
            write_csv(records, sys.stdout)
        else:
            write_json(records, summaries, sys.stdout)
        print(format_summary_table(summaries), file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sl2attack",
        description="Hash, collide, and find preimages for the Cayley hash over SL2(p).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_hash = sub.add_parser("hash", help="hash a bit string to a matrix")
    p_hash.add_argument("--prime", required=True)
    p_hash.add_argument("bits", nargs="?", default="", help="message bits, e.g. 0110")
    p_hash.set_defaults(func=cmd_hash)

    p_collide = sub.add_parser("collide", help="emit a word for the identity matrix")
    p_collide.add_argument("--prime", required=True)
    p_collide.add_argument("--seed", type=int)
    p_collide.add_argument("--out")
    p_collide.set_defaults(func=cmd_collide)

    p_invgen = sub.add_parser("invgen", help="emit words for A^-1 and B^-1 (two lines)")
    p_invgen.add_argument("--prime", required=True)
    p_invgen.add_argument("--seed", type=int)
    p_invgen.add_argument("--out")
    p_invgen.set_defaults(func=cmd_invgen)

    p_pre = sub.add_parser("preimage", help="emit a word for a target matrix")
    p_pre.add_argument("--prime", required=True)
    p_pre.add_argument("--matrix", required=True, metavar="a,b,c,d")
    p_pre.add_argument("--alphabet", choices=("extended", "positive"), default="positive")
    p_pre.add_argument("--seed", type=int)
    p_pre.add_argument("--out")
    p_pre.set_defaults(func=cmd_preimage)

    p_verify = sub.add_parser("verify", help="check that a word evaluates to a matrix")
    p_verify.add_argument("--prime", required=True)
    p_verify.add_argument("--matrix", required=True, metavar="a,b,c,d")
    group = p_verify.add_mutually_exclusive_group(required=True)
    group.add_argument("word", nargs="?")
    group.add_argument("--word-file")
    p_verify.set_defaults(func=cmd_verify)

    p_exp = sub.add_parser("experiment", help="run preimage trials and report statistics")
    p_exp.add_argument("--bits", default="10,20,40", help="comma-separated bit sizes")
    p_exp.add_argument("--trials", type=int, default=100)
    p_exp.add_argument("--seed", type=int)
    p_exp.add_argument("--alphabet", choices=("extended", "positive"), default="positive")
    p_exp.add_argument("--format", choices=("csv", "json"), default="csv")
    p_exp.add_argument("--out")
    p_exp.add_argument("--timeout-secs", type=float, default=60.0,
                       help="per-trial wall clock budget; 0 disables")
    p_exp.set_defaults(func=cmd_experiment)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except WordParseError as exc:
        print(f"parse error at byte {exc.offset}: {exc}", file=sys.stderr)
        return 2
    except RetryExhausted as exc:
        print(f"attack failed: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
