"""Shared domain types: parameter profiles, counters, and the error taxonomy.

Every fallible operation in the library raises :class:`AnamorphicError` with
exactly one :class:`ErrorKind`. Error values carry no plaintext-dependent
content so that rejection looks the same regardless of the cause at the API
boundary.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum

PROFILE_MAGIC = b"ANMP"
PROFILE_VERSION = 0x01

# Inner hybrid-PKE KEM seed length (bytes). Part of the normative ciphertext
# layout: changing it changes every derived length below.
PKE_SEED_LEN = 32

SESSION_KEY_LEN = 32
COUNTER_LEN = 8

_SYSTEM_RNG = random.SystemRandom()


class ErrorKind(Enum):
    DECAPS_FAILURE = "DecapsFailure"
    MAC_REJECT = "MacReject"
    LENGTH_MISMATCH = "LengthMismatch"
    COUNTER_REUSE = "CounterReuse"
    DECODE_FAILURE = "DecodeFailure"
    PKE_REJECT = "PkeReject"


class AnamorphicError(Exception):
    """Library-wide rejection value: compares equal iff the kind is equal."""

    def __init__(self, kind: ErrorKind):
        super().__init__(kind.value)
        self.kind = kind

    def __eq__(self, other):
        if not isinstance(other, AnamorphicError):
            return NotImplemented
        return self.kind == other.kind

    def __hash__(self):
        return hash(self.kind)


# Registered group identifiers and the byte length of an encoded element.
# The actual group objects live in anakem.group; core only needs lengths
# for the profile arithmetic.
GROUP_ELEM_LEN = {"g1": 256}


@dataclass(frozen=True)
class Profile:
    """Parameter set binding all length equations.

    ``rho_pk`` and ``rho_sk`` are the randomness-space lengths of the
    public-key and symmetric-key covert configurations:

        rho_pk = pke_ct_len + mac_tag_len
        rho_sk = amsg_len + mac_tag_len

    Both must be an even number of bytes (balanced-Feistel constraint).
    """

    lambda_bits: int
    amsg_len: int
    group_id: str
    mak_len: int
    mac_tag_len: int
    pke_ct_len: int
    rho_pk: int
    rho_sk: int

    @property
    def elem_len(self) -> int:
        return GROUP_ELEM_LEN[self.group_id]

    @property
    def pke_plaintext_len(self) -> int:
        # aEnc always encrypts amsg || mak; nothing else is ever encrypted.
        return self.amsg_len + self.mak_len

    def kem_ct_len(self, scheme: str) -> int:
        """Ciphertext length of the outer RR-KEM for scheme 'pk' or 'sk'."""
        if scheme == "pk":
            return self.elem_len + self.rho_pk
        if scheme == "sk":
            return self.elem_len + self.rho_sk
        raise ValueError(f"unknown scheme {scheme!r}")

    def to_bytes(self) -> bytes:
        gid = self.group_id.encode("ascii")
        return (
            PROFILE_MAGIC
            + bytes([PROFILE_VERSION])
            + self.lambda_bits.to_bytes(2, "big")
            + self.amsg_len.to_bytes(4, "big")
            + bytes([len(gid)])
            + gid
        )


def profile_new(lambda_bits: int, amsg_len: int, group_id: str = "g1") -> Profile:
    """Build a profile, computing all derived lengths.

    Deterministic for identical inputs. Raises LengthMismatch when the
    derived randomness lengths violate positivity or evenness.
    """
    if lambda_bits != 128:
        raise AnamorphicError(ErrorKind.LENGTH_MISMATCH)
    if group_id not in GROUP_ELEM_LEN:
        raise AnamorphicError(ErrorKind.LENGTH_MISMATCH)
    if amsg_len < 1:
        raise AnamorphicError(ErrorKind.LENGTH_MISMATCH)

    mak_len = lambda_bits // 8
    mac_tag_len = lambda_bits // 8
    elem_len = GROUP_ELEM_LEN[group_id]

    # Hybrid PKE ciphertext: inner KEM ct || masked plaintext || DEM tag.
    inner_kem_ct_len = elem_len + PKE_SEED_LEN
    pke_ct_len = inner_kem_ct_len + (amsg_len + mak_len) + mac_tag_len

    rho_pk = pke_ct_len + mac_tag_len
    rho_sk = amsg_len + mac_tag_len
    for rho in (rho_pk, rho_sk):
        if rho <= 0 or rho % 2 != 0:
            raise AnamorphicError(ErrorKind.LENGTH_MISMATCH)

    return Profile(
        lambda_bits=lambda_bits,
        amsg_len=amsg_len,
        group_id=group_id,
        mak_len=mak_len,
        mac_tag_len=mac_tag_len,
        pke_ct_len=pke_ct_len,
        rho_pk=rho_pk,
        rho_sk=rho_sk,
    )


def profile_from_bytes(data: bytes) -> tuple[Profile, int]:
    """Parse a serialized profile record; returns (profile, bytes consumed)."""
    try:
        if data[:4] != PROFILE_MAGIC or data[4] != PROFILE_VERSION:
            raise AnamorphicError(ErrorKind.DECODE_FAILURE)
        lambda_bits = int.from_bytes(data[5:7], "big")
        amsg_len = int.from_bytes(data[7:11], "big")
        gid_len = data[11]
        group_id = data[12 : 12 + gid_len].decode("ascii")
        if len(data) < 12 + gid_len:
            raise AnamorphicError(ErrorKind.DECODE_FAILURE)
    except (IndexError, UnicodeDecodeError):
        raise AnamorphicError(ErrorKind.DECODE_FAILURE) from None
    return profile_new(lambda_bits, amsg_len, group_id), 12 + gid_len


def check_amsg(profile: Profile, amsg: bytes) -> None:
    if len(amsg) != profile.amsg_len:
        raise AnamorphicError(ErrorKind.LENGTH_MISMATCH)


def ctr_bytes(ctr: int) -> bytes:
    """Fixed 8-byte big-endian counter serialization for all PRF inputs."""
    if not 0 <= ctr < 2**64:
        raise AnamorphicError(ErrorKind.LENGTH_MISMATCH)
    return ctr.to_bytes(COUNTER_LEN, "big")


def rand_bytes(rng: random.Random | None, n: int) -> bytes:
    """Uniform bytes from the given source, or the OS CSPRNG by default."""
    if rng is None:
        rng = _SYSTEM_RNG
    return rng.getrandbits(8 * n).to_bytes(n, "big") if n else b""
