#!/usr/bin/env python3
"""Generate the frozen CLI test vectors under tests/vectors/.

Run once; the outputs are committed and never regenerated. Each vector
directory contains the key files, a covert-sealed envelope, and the
expected plaintexts:

    recipient.ek / recipient.dk      outer KEM key pair
    covert.pk + covert.sk (pk mode)  covert receiver key pair
    covert.dk (sk mode)              shared double key
    envelope.bin                     covert-sealed envelope
    amsg.hex                         covert message (hex text)
    normal_msg.bin                   normal-channel message
    ctr.txt                          counter used at sealing
"""

import sys
from pathlib import Path

from anakem.cli import main

ROOT = Path(__file__).resolve().parent.parent / "tests" / "vectors"

VECTORS = [
    # name, scheme, seed, amsg hex, normal message, ctr
    ("pk1", "pk", 101, "00112233445566778899aabbccddeeff" * 2, b"routine status report\n", 1),
    ("pk2", "pk", 202, "deadbeef" * 8, b"meeting moved to 3pm", 7),
    ("sk1", "sk", 303, "a5" * 32, b"nothing to see here", 42),
]


def run(argv):
    rc = main(argv)
    if rc != 0:
        sys.exit(f"command failed: {argv}")


def make(name, scheme, seed, amsg_hex, normal_msg, ctr):
    d = ROOT / name
    d.mkdir(parents=True, exist_ok=True)
    (d / "normal_msg.bin").write_bytes(normal_msg)
    (d / "amsg.hex").write_text(amsg_hex + "\n")
    (d / "ctr.txt").write_text(f"{ctr}\n")
    run(["keygen", "--scheme", scheme, "--out-dir", str(d), "--seed", str(seed)])
    covert_key = d / ("covert.pk" if scheme == "pk" else "covert.dk")
    run(
        [
            "covert-seal",
            "--scheme", scheme,
            "--ek", str(d / "recipient.ek"),
            "--covert-key", str(covert_key),
            "--amsg", amsg_hex,
            "--message", str(d / "normal_msg.bin"),
            "--ctr", str(ctr),
            "--out", str(d / "envelope.bin"),
            "--seed", str(seed + 1),
        ]
    )
    print(f"{name}: {len((d / 'envelope.bin').read_bytes())} byte envelope")


if __name__ == "__main__":
    for spec in VECTORS:
        make(*spec)
