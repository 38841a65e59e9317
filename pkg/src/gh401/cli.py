"""Command-line front end.

Subcommands: encrypt, decrypt, analyze, compare, sbox-eval, bench.
Images travel as binary PGM (P5, maxval 255); GH401 key envelopes as
UTF-8 text files; IEAHF side-channel data as the binary SSX1 format.

Exit codes (stable):
    0  success
    2  validation error (bad arguments, malformed inputs, odd dimensions)
    3  I/O error (missing or unreadable files)
    4  crypto mismatch (wrong side-channel file, envelope, or S-box)
"""

from __future__ import annotations

import argparse
import os
import sys
import time

import numpy as np

from gh401 import analysis, chaos, cipher
from gh401.image_io import read_pgm, write_pgm
from gh401.permute import SCHEME_GH401, SCHEME_IEAHF
from gh401.sbox import bundled_sbox, load_sbox, transparency_order

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_MISMATCH = 4

_BUNDLED_SBOXES = ("aes", "identity")


def _write_atomic(path, data: bytes) -> None:
    tmp = f"{os.fspath(path)}.tmp.{os.getpid()}"
    with open(tmp, "wb") as fh:
        fh.write(data)
    os.replace(tmp, path)


def _emit(text: str, report_path) -> None:
    if report_path:
        _write_atomic(report_path, text.encode("utf-8"))
    else:
        sys.stdout.write(text)


def _resolve_sbox(value: str):
    if value in _BUNDLED_SBOXES:
        return bundled_sbox(value)
    return load_sbox(value)


def _seeded_params(args) -> chaos.SystemParams:
    if args.seed is not None:
        return chaos.draw_params(args.system, args.seed)
    return chaos.default_params(args.system)


def _params_for(args) -> chaos.SystemParams:
    if getattr(args, "key", None):
        with open(args.key, "r", encoding="utf-8") as fh:
            return cipher.KeyEnvelope.from_text(fh.read()).params
    return _seeded_params(args)


def _default_out(input_path: str, suffix: str) -> str:
    stem, _ = os.path.splitext(input_path)
    return stem + suffix


def cmd_encrypt(args) -> int:
    img = read_pgm(args.input)
    out = args.out or _default_out(args.input, ".enc.pgm")
    params = _seeded_params(args)
    if args.scheme == SCHEME_IEAHF:
        rounds = args.rounds if args.rounds is not None else 2
        cipher_img, side = cipher.encrypt_ieahf(img, params, rounds, system=args.system)
        ss_path = args.ss or _default_out(args.input, ".ss")
        write_pgm(out, cipher_img)
        _write_atomic(ss_path, side.to_bytes())
        print(f"ciphertext: {out}")
        print(f"side-channel file: {ss_path} ({len(side.to_bytes())} bytes)")
    else:
        rounds = args.rounds if args.rounds is not None else cipher.DEFAULT_GH401_ROUNDS
        sbox = _resolve_sbox(args.sbox)
        cipher_img, env = cipher.encrypt_gh401(img, params, rounds, sbox, system=args.system)
        key_path = args.key or _default_out(args.input, ".key")
        write_pgm(out, cipher_img)
        _write_atomic(key_path, env.to_text().encode("utf-8"))
        print(f"ciphertext: {out}")
        print(f"key envelope: {key_path} ({len(env.to_text())} bytes)")
    return EXIT_OK


def cmd_decrypt(args) -> int:
    img = read_pgm(args.input)
    out = args.out or _default_out(args.input, ".dec.pgm")
    if args.ss:
        with open(args.ss, "rb") as fh:
            side = cipher.SideChannelFile.from_bytes(fh.read())
        plain = cipher.decrypt_ieahf(img, side)
    elif args.key:
        with open(args.key, "r", encoding="utf-8") as fh:
            env = cipher.KeyEnvelope.from_text(fh.read())
        sbox = _resolve_sbox(args.sbox)
        plain = cipher.decrypt_gh401(img, env, sbox)
    else:
        raise ValueError("decrypt needs --key (GH401 envelope) or --ss (IEAHF side-channel file)")
    write_pgm(out, plain)
    print(f"plaintext: {out}")
    return EXIT_OK


def _encrypt_closure(args, params):
    if args.scheme == SCHEME_IEAHF:
        rounds = args.rounds if args.rounds is not None else 2
        return lambda im: cipher.encrypt_ieahf(im, params, rounds, system=args.system)[0]
    rounds = args.rounds if args.rounds is not None else cipher.DEFAULT_GH401_ROUNDS
    sbox = _resolve_sbox(args.sbox)
    return lambda im: cipher.encrypt_gh401(im, params, rounds, sbox, system=args.system)[0]


def cmd_analyze(args) -> int:
    img = read_pgm(args.input)
    plain = read_pgm(args.plain) if args.plain else None
    report = analysis.full_report(img, plain, pairs=args.pairs, seed=args.seed or 0)
    text = analysis.report_to_text(report, title="image")
    if args.differential:
        params = _params_for(args)
        encrypt_fn = _encrypt_closure(args, params)
        diff = analysis.differential_test(encrypt_fn, img, args.trials, args.seed or 0)
        text += (
            f"differential.scheme={args.scheme}\n"
            f"differential.trials={diff.trials}\n"
            f"differential.seed={diff.seed}\n"
            f"differential.mean_npcr={diff.mean_npcr:.6f}\n"
            f"differential.mean_uaci={diff.mean_uaci:.6f}\n"
            f"differential.best_npcr={diff.best_npcr:.6f}\n"
            f"differential.best_uaci={diff.best_uaci:.6f}\n"
            f"differential.best_trial={diff.best_trial}\n"
        )
    _emit(text, args.report)
    return EXIT_OK


def cmd_compare(args) -> int:
    """Both schemes on one image: per-scheme metrics plus differential means."""
    img = read_pgm(args.input)
    seed = args.seed or 0
    params = _seeded_params(args)
    rounds = args.rounds if args.rounds is not None else cipher.DEFAULT_GH401_ROUNDS
    sbox = _resolve_sbox(args.sbox)
    sections = []
    for scheme in (SCHEME_IEAHF, SCHEME_GH401):
        if scheme == SCHEME_IEAHF:
            encrypt_fn = lambda im: cipher.encrypt_ieahf(im, params, rounds, system=args.system)[0]
        else:
            encrypt_fn = lambda im: cipher.encrypt_gh401(im, params, rounds, sbox, system=args.system)[0]
        cipher_img = encrypt_fn(img)
        report = analysis.full_report(cipher_img, img, pairs=args.pairs, seed=seed)
        title = scheme.lower()
        text = analysis.report_to_text(report, title=title)
        diff = analysis.differential_test(encrypt_fn, img, args.trials, seed)
        text += (
            f"{title}.differential.mean_npcr={diff.mean_npcr:.6f}\n"
            f"{title}.differential.mean_uaci={diff.mean_uaci:.6f}\n"
            f"{title}.differential.best_npcr={diff.best_npcr:.6f}\n"
        )
        sections.append(text)
    header = (
        "# informational comparison; third-party schemes are not implemented\n"
        f"compare.rounds={rounds}\n"
        f"compare.system={args.system}\n"
        f"compare.trials={args.trials}\n"
    )
    _emit(header + "".join(sections), args.report)
    return EXIT_OK


def cmd_sbox_eval(args) -> int:
    sbox = _resolve_sbox(args.sbox)
    to = transparency_order(sbox)
    text = (
        f"sbox.name={sbox.name}\n"
        "sbox.bijective=true\n"
        f"sbox.transparency_order={to:.6f}\n"
        "sbox.note=lower transparency order indicates higher DPA resistance\n"
    )
    _emit(text, args.report)
    return EXIT_OK


def cmd_bench(args) -> int:
    """Wall-clock timing; hardware-dependent, informational only."""
    if args.input:
        img = read_pgm(args.input)
    else:
        img = np.random.default_rng(args.seed or 0).integers(0, 256, size=(256, 256)).astype(np.uint8)
    params = chaos.default_params(args.system)
    rounds = args.rounds if args.rounds is not None else cipher.DEFAULT_GH401_ROUNDS
    enc_times, dec_times = [], []
    if args.scheme == SCHEME_IEAHF:
        for _ in range(args.trials):
            t0 = time.perf_counter()
            cipher_img, side = cipher.encrypt_ieahf(img, params, max(rounds, 2), system=args.system)
            t1 = time.perf_counter()
            cipher.decrypt_ieahf(cipher_img, side)
            t2 = time.perf_counter()
            enc_times.append(t1 - t0)
            dec_times.append(t2 - t1)
    else:
        sbox = _resolve_sbox(args.sbox)
        for _ in range(args.trials):
            t0 = time.perf_counter()
            cipher_img, env = cipher.encrypt_gh401(img, params, rounds, sbox, system=args.system)
            t1 = time.perf_counter()
            cipher.decrypt_gh401(cipher_img, env, sbox)
            t2 = time.perf_counter()
            enc_times.append(t1 - t0)
            dec_times.append(t2 - t1)
    text = (
        f"bench.scheme={args.scheme}\n"
        f"bench.image={img.shape[1]}x{img.shape[0]}\n"
        f"bench.trials={args.trials}\n"
        f"bench.encrypt.mean_s={np.mean(enc_times):.6f}\n"
        f"bench.encrypt.min_s={np.min(enc_times):.6f}\n"
        f"bench.encrypt.max_s={np.max(enc_times):.6f}\n"
        f"bench.decrypt.mean_s={np.mean(dec_times):.6f}\n"
        f"bench.decrypt.min_s={np.min(dec_times):.6f}\n"
        f"bench.decrypt.max_s={np.max(dec_times):.6f}\n"
        "bench.note=wall-clock times are hardware-dependent and informational only\n"
    )
    _emit(text, args.report)
    return EXIT_OK


def _add_common(parser, *, scheme=True, sbox=True, rounds=True, seed=True):
    if scheme:
        parser.add_argument("--scheme", choices=(SCHEME_IEAHF, SCHEME_GH401),
                            default=SCHEME_GH401, help="cipher scheme (default GH401)")
    parser.add_argument("--system", choices=tuple(chaos.list_systems()),
                        default=cipher.DEFAULT_SYSTEM,
                        help="dynamical system id (default %(default)s)")
    if rounds:
        parser.add_argument("--rounds", type=int, default=None,
                            help="round count (defaults: IEAHF 2, GH401 4)")
    if sbox:
        parser.add_argument("--sbox", default="aes",
                            help="bundled S-box name (aes, identity) or a .txt/.bin table file")
    if seed:
        parser.add_argument("--seed", type=int, default=None,
                            help="64-bit seed; for encrypt it draws the key parameters")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gh401",
        description="Chaos-based grayscale image encryption toolkit (binary PGM only)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encrypt", help="encrypt a PGM image")
    p.add_argument("input")
    _add_common(p)
    p.add_argument("--out", help="ciphertext PGM path")
    p.add_argument("--key", help="key envelope output path (GH401)")
    p.add_argument("--ss", help="side-channel file output path (IEAHF)")
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a PGM image")
    p.add_argument("input")
    _add_common(p, scheme=False, rounds=False, seed=False)
    p.add_argument("--out", help="plaintext PGM path")
    p.add_argument("--key", help="key envelope path (GH401)")
    p.add_argument("--ss", help="side-channel file path (IEAHF)")
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("analyze", help="security metrics for an image")
    p.add_argument("input")
    _add_common(p)
    p.add_argument("--plain", help="reference image for NPCR/UACI")
    p.add_argument("--pairs", type=int, default=analysis.DEFAULT_CORRELATION_PAIRS,
                   help="adjacent pixel pairs sampled per correlation (default %(default)s)")
    p.add_argument("--differential", action="store_true",
                   help="run the single-pixel differential harness (encrypts internally)")
    p.add_argument("--trials", type=int, default=100,
                   help="differential trials (default %(default)s)")
    p.add_argument("--key", help="key envelope supplying parameters for --differential")
    p.add_argument("--report", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("compare", help="run both schemes on one image, side by side")
    p.add_argument("input")
    _add_common(p, scheme=False)
    p.add_argument("--pairs", type=int, default=analysis.DEFAULT_CORRELATION_PAIRS)
    p.add_argument("--trials", type=int, default=100,
                   help="differential trials per scheme (default %(default)s)")
    p.add_argument("--report", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("sbox-eval", help="bijectivity and transparency order of an S-box")
    p.add_argument("--sbox", required=True,
                   help="bundled S-box name (aes, identity) or a .txt/.bin table file")
    p.add_argument("--report", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_sbox_eval)

    p = sub.add_parser("bench", help="wall-clock encrypt/decrypt timing")
    p.add_argument("input", nargs="?", help="PGM image (default: seeded random 256x256)")
    _add_common(p)
    p.add_argument("--trials", type=int, default=100,
                   help="timing repetitions (default %(default)s)")
    p.add_argument("--report", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except cipher.CryptoMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
