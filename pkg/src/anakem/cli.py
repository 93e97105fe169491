"""Command-line interface.

Key material lives in small binary files (profile embedded), envelopes are
read and written as files or on stdin/stdout. The ``games run`` subcommand
executes a security experiment and prints the report as a text table plus a
JSON record.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .core import AnamorphicError, profile_new
from .envelope import (
    covert_open_pk,
    covert_open_sk,
    covert_seal_pk,
    covert_seal_sk,
    envelope_from_bytes,
    normal_open,
    seal,
)
from .games import ADVERSARIES, EXPERIMENTS
from .pke import load_pke_pk, load_pke_sk, pke_keygen, serialize_pke_pk, serialize_pke_sk
from .rrkem import DhRrKem, load_dk, load_ek, parse_key_record, serialize_dk, serialize_ek
from .skakem import CounterState, load_dk_file, serialize_dk_file, skakem_agen


def _rng(args) -> random.Random | None:
    return random.Random(args.seed) if args.seed is not None else None


def _seed_len(profile, scheme: str) -> int:
    return profile.rho_pk if scheme == "pk" else profile.rho_sk


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _write(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
    else:
        Path(path).write_bytes(data)


def cmd_keygen(args) -> int:
    profile = profile_new(128, args.amsg_len, args.group)
    rng = _rng(args)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    kem = DhRrKem(profile, _seed_len(profile, args.scheme))
    pair = kem.keygen(rng)
    (out / "recipient.ek").write_bytes(serialize_ek(kem, pair))
    (out / "recipient.dk").write_bytes(serialize_dk(kem, pair))
    if args.scheme == "pk":
        pk, sk = pke_keygen(profile, rng)
        (out / "covert.pk").write_bytes(serialize_pke_pk(pk))
        (out / "covert.sk").write_bytes(serialize_pke_sk(sk))
    else:
        _, dk = skakem_agen(profile, rng)
        (out / "covert.dk").write_bytes(serialize_dk_file(profile, dk))
    print(f"wrote {args.scheme} key set to {out}", file=sys.stderr)
    return 0


def cmd_seal(args) -> int:
    data = _read(args.ek)
    profile, _, _ = parse_key_record(data)
    kem, ek = load_ek(data, _seed_len(profile, args.scheme))
    env = seal(profile, ek, args.scheme, _read(args.message), args.ctr, _rng(args))
    _write(args.out, env.to_bytes())
    return 0


def cmd_open(args) -> int:
    env = envelope_from_bytes(_read(args.input))
    _, keys = load_dk(_read(args.dk), _seed_len(env.profile, env.scheme))
    _write(args.out, normal_open(env, keys))
    return 0


def cmd_audit(args) -> int:
    env = envelope_from_bytes(_read(args.input))
    _, keys = load_dk(_read(args.dk), _seed_len(env.profile, env.scheme))
    msg = normal_open(env, keys)
    print(f"scheme        {env.scheme}")
    print(f"counter       {env.ctr}")
    print(f"kem_ct_bytes  {len(env.kem_ct)}")
    print(f"dem_ct_bytes  {len(env.dem_ct)}")
    print(f"normal_msg    {msg.hex()}")
    return 0


def cmd_covert_seal(args) -> int:
    ek_data = _read(args.ek)
    amsg = bytes.fromhex(args.amsg)
    normal_msg = _read(args.message)
    profile, _, _ = parse_key_record(ek_data)
    if args.scheme == "pk":
        kem, ek = load_ek(ek_data, profile.rho_pk)
        dk_prime = load_pke_pk(_read(args.covert_key))
        env = covert_seal_pk(profile, ek, dk_prime, amsg, normal_msg, args.ctr, _rng(args))
    else:
        kem, ek = load_ek(ek_data, profile.rho_sk)
        _, dk = load_dk_file(_read(args.covert_key))
        env = covert_seal_sk(profile, ek, dk, amsg, normal_msg, args.ctr, CounterState())
    _write(args.out, env.to_bytes())
    return 0


def cmd_covert_open(args) -> int:
    env = envelope_from_bytes(_read(args.input))
    _, keys = load_dk(_read(args.dk), _seed_len(env.profile, env.scheme))
    if env.scheme == "pk":
        amsg = covert_open_pk(env, keys, load_pke_sk(_read(args.covert_key)))
    else:
        _, dk = load_dk_file(_read(args.covert_key))
        amsg = covert_open_sk(env, dk, keys, args.ctr)
    print(amsg.hex())
    return 0


def cmd_games_run(args) -> int:
    profile = profile_new(128, args.amsg_len, args.group)
    runner = EXPERIMENTS[args.experiment]
    adversary = ADVERSARIES[args.adversary]()
    report = runner(
        profile, adversary, args.trials, seed=args.seed, control=args.control
    )
    for line in report.lines():
        print(line)
    print(json.dumps(report.to_dict()))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="anakem")
    sub = p.add_subparsers(dest="command", required=True)

    def common_profile(sp):
        sp.add_argument("--amsg-len", type=int, default=32)
        sp.add_argument("--group", default="g1")

    sp = sub.add_parser("keygen", help="generate a key set")
    common_profile(sp)
    sp.add_argument("--scheme", choices=["pk", "sk"], required=True)
    sp.add_argument("--out-dir", required=True)
    sp.add_argument("--seed", type=int, default=None)
    sp.set_defaults(fn=cmd_keygen)

    sp = sub.add_parser("seal", help="seal a normal envelope")
    sp.add_argument("--scheme", choices=["pk", "sk"], required=True)
    sp.add_argument("--ek", required=True)
    sp.add_argument("--message", required=True)
    sp.add_argument("--ctr", type=int, default=0)
    sp.add_argument("--out", default="-")
    sp.add_argument("--seed", type=int, default=None)
    sp.set_defaults(fn=cmd_seal)

    sp = sub.add_parser("open", help="open the normal channel")
    sp.add_argument("--dk", required=True)
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--out", default="-")
    sp.set_defaults(fn=cmd_open)

    sp = sub.add_parser("audit", help="dictator view: normal channel + metadata")
    sp.add_argument("--dk", required=True)
    sp.add_argument("--in", dest="input", required=True)
    sp.set_defaults(fn=cmd_audit)

    sp = sub.add_parser("covert-seal", help="seal an envelope with a covert message")
    sp.add_argument("--scheme", choices=["pk", "sk"], required=True)
    sp.add_argument("--ek", required=True)
    sp.add_argument("--covert-key", required=True, help="covert.pk (pk) or covert.dk (sk)")
    sp.add_argument("--amsg", required=True, help="covert message as hex")
    sp.add_argument("--message", required=True)
    sp.add_argument("--ctr", type=int, default=0)
    sp.add_argument("--out", default="-")
    sp.add_argument("--seed", type=int, default=None)
    sp.set_defaults(fn=cmd_covert_seal)

    sp = sub.add_parser("covert-open", help="recover the covert message")
    sp.add_argument("--dk", required=True)
    sp.add_argument("--covert-key", required=True, help="covert.sk (pk) or covert.dk (sk)")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--ctr", type=int, default=None)
    sp.set_defaults(fn=cmd_covert_open)

    sp = sub.add_parser("games", help="security-game harness")
    gsub = sp.add_subparsers(dest="games_command", required=True)
    sp = gsub.add_parser("run")
    common_profile(sp)
    sp.add_argument("experiment", choices=sorted(EXPERIMENTS))
    sp.add_argument("--adversary", choices=sorted(ADVERSARIES), default="stat")
    sp.add_argument("--trials", type=int, default=2000)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--control", default=None)
    sp.set_defaults(fn=cmd_games_run)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except AnamorphicError as exc:
        print(f"error: {exc.kind.value}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
