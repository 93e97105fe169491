"""PRF, MAC, invertible Feistel PRF, and the Encode/Decode pair.

The PRF is counter-mode HMAC-SHA256, so outputs are extendable: the first
16 bytes of a 48-byte output equal the 16-byte output for the same inputs.
Labels are NUL-free ASCII and joined with a NUL separator, which keeps the
label set prefix-free as byte strings.

The MAC is a PRF-based tag (simultaneously strongly unforgeable and
pseudorandom); verification compares in constant time.

The invertible PRF is a 4-round balanced Feistel network whose round
functions are the PRF under per-round labels, i.e. a keyed permutation of
byte strings of a fixed even length.
"""

from __future__ import annotations

import hashlib
import hmac
import random
from dataclasses import dataclass

from .core import AnamorphicError, ErrorKind, Profile, rand_bytes

PRF_KEY_LEN = 32

# Documented stable label set. prf_eval accepts any NUL-free ASCII label;
# these are the ones the library itself uses.
PRF_LABELS = (
    "MASK",
    "IPF-R1",
    "IPF-R2",
    "IPF-R3",
    "IPF-R4",
    "KDF",
    "DEM",
    "DEM-MAC",
    "MAC",
)

IPF_ROUNDS = 4


@dataclass(frozen=True)
class PrfKey:
    key: bytes

    def __post_init__(self):
        if len(self.key) != PRF_KEY_LEN:
            raise AnamorphicError(ErrorKind.LENGTH_MISMATCH)

    def __repr__(self):  # keep key bytes out of logs
        return "PrfKey(<hidden>)"


@dataclass(frozen=True)
class MacKey:
    key: bytes

    def __repr__(self):
        return "MacKey(<hidden>)"


def prf_keygen(rng: random.Random | None = None) -> PrfKey:
    return PrfKey(rand_bytes(rng, PRF_KEY_LEN))


def prf_eval(key: PrfKey | bytes, label: str, data: bytes, out_len: int) -> bytes:
    """Deterministic variable-output-length PRF with domain-separating label."""
    if out_len < 1:
        raise AnamorphicError(ErrorKind.LENGTH_MISMATCH)
    kb = key.key if isinstance(key, PrfKey) else key
    prefix = label.encode("ascii") + b"\x00" + data
    out = bytearray()
    block = 0
    while len(out) < out_len:
        out += hmac.new(kb, prefix + block.to_bytes(4, "big"), hashlib.sha256).digest()
        block += 1
    return bytes(out[:out_len])


def hash_expand(label: str, parts: list[bytes], out_len: int) -> bytes:
    """Unkeyed expandable hash over length-prefixed parts (SHA-256 counter mode)."""
    enc = label.encode("ascii") + b"\x00"
    for p in parts:
        enc += len(p).to_bytes(4, "big") + p
    out = bytearray()
    block = 0
    while len(out) < out_len:
        out += hashlib.sha256(enc + block.to_bytes(4, "big")).digest()
        block += 1
    return bytes(out[:out_len])


# --- MAC -------------------------------------------------------------------


def mac_keygen(profile: Profile, rng: random.Random | None = None) -> MacKey:
    return MacKey(rand_bytes(rng, profile.mak_len))


def mac_tag(key: MacKey, message: bytes, tag_len: int = 16) -> bytes:
    return prf_eval(key.key, "MAC", message, tag_len)


def mac_verify(key: MacKey, message: bytes, tag: bytes) -> bool:
    expected = mac_tag(key, message, len(tag))
    return hmac.compare_digest(expected, tag)


# --- Invertible PRF (balanced Feistel) -------------------------------------


@dataclass(frozen=True)
class FeistelIpfKey:
    master: PrfKey
    domain_len: int
    rounds: int = IPF_ROUNDS


def ipf_setup(profile: Profile, master: PrfKey, domain_len: int) -> FeistelIpfKey:
    if domain_len < 2 or domain_len % 2 != 0:
        raise AnamorphicError(ErrorKind.LENGTH_MISMATCH)
    return FeistelIpfKey(master=master, domain_len=domain_len)


def _round_fn(key: FeistelIpfKey, rnd: int, half: bytes) -> bytes:
    return prf_eval(key.master, f"IPF-R{rnd}", half, len(half))


def _xor(a: bytes, b: bytes) -> bytes:
    return bytes(x ^ y for x, y in zip(a, b))


def ipf_eval(key: FeistelIpfKey, x: bytes) -> bytes:
    if len(x) != key.domain_len:
        raise AnamorphicError(ErrorKind.LENGTH_MISMATCH)
    h = key.domain_len // 2
    left, right = x[:h], x[h:]
    for rnd in range(1, key.rounds + 1):
        left, right = right, _xor(left, _round_fn(key, rnd, right))
    return left + right


def ipf_invert(key: FeistelIpfKey, y: bytes) -> bytes:
    if len(y) != key.domain_len:
        raise AnamorphicError(ErrorKind.LENGTH_MISMATCH)
    h = key.domain_len // 2
    left, right = y[:h], y[h:]
    for rnd in range(key.rounds, 0, -1):
        left, right = _xor(right, _round_fn(key, rnd, left)), left
    return left + right


# --- Encode / Decode -------------------------------------------------------
#
# The randomness space of every RR-KEM in this library is the set of uniform
# byte strings of length rho, so the reversible embedding of (c, tau) into
# that space is the identity with a length check.


def encode(c_prime: bytes, rho: int) -> bytes:
    if len(c_prime) != rho:
        raise AnamorphicError(ErrorKind.LENGTH_MISMATCH)
    return c_prime


def decode(r_e: bytes, rho: int) -> bytes:
    if len(r_e) != rho:
        raise AnamorphicError(ErrorKind.LENGTH_MISMATCH)
    return r_e
