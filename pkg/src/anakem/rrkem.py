"""Randomness-recoverable KEMs.

Two instantiations of one contract:

* :class:`DhRrKem` -- seeded Diffie-Hellman over the uniform-encoded group.
  Encapsulation is fully derandomized: the ephemeral scalar, the element
  encoding tweak, and the session key are all derived from the seed, so
  decapsulation can recover the exact seed and re-run encapsulation as a
  ciphertext-integrity check. The re-encapsulation check binds an accepted
  ciphertext injectively to its seed.

* :class:`ToyRrKem` -- a 16-bit random-permutation table. Test-only and
  insecure by construction; its whole point is that correctness and
  injectivity are exhaustively checkable, which makes it the brute-force
  oracle for the rest of the suite.

A KEM instance is parameterized by its seed length, so the same machinery
serves the PKAKEM outer layer, the SKAKEM outer layer, and the hybrid PKE's
inner layer, which use different randomness-space sizes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .core import (
    AnamorphicError,
    ErrorKind,
    Profile,
    SESSION_KEY_LEN,
    profile_from_bytes,
    rand_bytes,
)
from .group import SCALAR_LEN, TWEAK_LEN, ModpGroup, group_by_id
from .primitives import hash_expand

KEY_MAGIC = b"ANMK"
KEY_VERSION = 0x01
ROLE_EK = 0x01
ROLE_DK = 0x02
ROLE_PKE_PK = 0x03
ROLE_PKE_SK = 0x04


@dataclass(frozen=True)
class DhKeyPair:
    """ek is the public element; dk additionally stores ek because the
    re-encapsulation check at decapsulation must re-run encapsulation."""

    ek: int
    dk: int
    profile: Profile
    seed_len: int


class DhRrKem:
    def __init__(self, profile: Profile, seed_len: int):
        self.profile = profile
        self.seed_len = seed_len
        self.group: ModpGroup = group_by_id(profile.group_id)
        self.ct_len = self.group.elem_len + seed_len

    def keygen(self, rng: random.Random | None = None) -> DhKeyPair:
        d = int.from_bytes(rand_bytes(rng, SCALAR_LEN), "big") | 1
        ek = self.group.base_exp(d)
        return DhKeyPair(ek=ek, dk=d, profile=self.profile, seed_len=self.seed_len)

    def _scalar(self, r_e: bytes, ek: int) -> int:
        digest = hash_expand(
            "DH-SCALAR", [r_e, self.group.elem_bytes(ek)], SCALAR_LEN
        )
        return int.from_bytes(digest, "big") | 1

    def encaps(self, ek: int, r_e: bytes) -> tuple[bytes, bytes]:
        """Deterministic encapsulation under explicit randomness r_e."""
        if len(r_e) != self.seed_len:
            raise AnamorphicError(ErrorKind.LENGTH_MISMATCH)
        g = self.group
        s = self._scalar(r_e, ek)
        eph = g.base_exp(s)
        tweak = hash_expand("DH-LIFT", [r_e, g.elem_bytes(ek)], TWEAK_LEN)
        eph_enc = g.encode_uniform(eph, tweak)
        shared = g.exp(ek, s)
        mask = hash_expand("DH-MASK", [g.elem_bytes(shared), eph_enc], self.seed_len)
        body = eph_enc + bytes(a ^ b for a, b in zip(r_e, mask))
        key = hash_expand("DH-KDF", [r_e, body], SESSION_KEY_LEN)
        return key, body

    def decaps(self, keys: DhKeyPair, ct: bytes) -> tuple[bytes, bytes]:
        """Recover (session key, seed); rejects unless re-encapsulation of the
        recovered seed reproduces the ciphertext byte-for-byte."""
        g = self.group
        if len(ct) != self.ct_len:
            raise AnamorphicError(ErrorKind.DECAPS_FAILURE)
        eph_enc, masked = ct[: g.elem_len], ct[g.elem_len :]
        eph = g.decode_uniform(eph_enc)
        shared = g.exp(eph, keys.dk)
        mask = hash_expand("DH-MASK", [g.elem_bytes(shared), eph_enc], self.seed_len)
        r_e = bytes(a ^ b for a, b in zip(masked, mask))
        key, expected = self.encaps(keys.ek, r_e)
        if expected != ct:
            raise AnamorphicError(ErrorKind.DECAPS_FAILURE)
        return key, r_e


# --- Toy instantiation (test-only, insecure) -------------------------------

TOY_SEED_LEN = 2
TOY_DOMAIN = 1 << 16


@dataclass(frozen=True)
class ToyKeyPair:
    forward: tuple  # seed index -> ciphertext index
    inverse: tuple
    profile: Profile
    seed_len: int = TOY_SEED_LEN

    @property
    def ek(self):
        return self.forward

    @property
    def dk(self):
        return self.inverse


class ToyRrKem:
    """Enumerable random-permutation KEM over 2-byte seeds. NOT secure:
    the 'public' key is the full permutation table."""

    def __init__(self, profile: Profile):
        self.profile = profile
        self.seed_len = TOY_SEED_LEN
        self.ct_len = TOY_SEED_LEN

    def keygen(self, rng: random.Random | None = None) -> ToyKeyPair:
        rng = rng or random.SystemRandom()
        table = list(range(TOY_DOMAIN))
        rng.shuffle(table)
        inverse = [0] * TOY_DOMAIN
        for i, c in enumerate(table):
            inverse[c] = i
        return ToyKeyPair(forward=tuple(table), inverse=tuple(inverse), profile=self.profile)

    def encaps(self, ek, r_e: bytes) -> tuple[bytes, bytes]:
        if len(r_e) != TOY_SEED_LEN:
            raise AnamorphicError(ErrorKind.LENGTH_MISMATCH)
        idx = int.from_bytes(r_e, "big")
        body = ek[idx].to_bytes(2, "big")
        key = hash_expand("TOY-KDF", [r_e, body], SESSION_KEY_LEN)
        return key, body

    def decaps(self, keys: ToyKeyPair, ct: bytes) -> tuple[bytes, bytes]:
        if len(ct) != TOY_SEED_LEN:
            raise AnamorphicError(ErrorKind.DECAPS_FAILURE)
        r_e = keys.inverse[int.from_bytes(ct, "big")].to_bytes(2, "big")
        key = hash_expand("TOY-KDF", [r_e, ct], SESSION_KEY_LEN)
        return key, r_e


# --- Key files -------------------------------------------------------------


def _key_record(profile: Profile, role: int, key_bytes: bytes) -> bytes:
    return KEY_MAGIC + bytes([KEY_VERSION]) + profile.to_bytes() + bytes([role]) + key_bytes


def serialize_ek(kem: DhRrKem, keys: DhKeyPair) -> bytes:
    return _key_record(kem.profile, ROLE_EK, kem.group.elem_bytes(keys.ek))


def serialize_dk(kem: DhRrKem, keys: DhKeyPair) -> bytes:
    body = keys.dk.to_bytes(SCALAR_LEN, "big") + kem.group.elem_bytes(keys.ek)
    return _key_record(kem.profile, ROLE_DK, body)


def parse_key_record(data: bytes) -> tuple[Profile, int, bytes]:
    if data[:4] != KEY_MAGIC or data[4] != KEY_VERSION:
        raise AnamorphicError(ErrorKind.DECODE_FAILURE)
    profile, used = profile_from_bytes(data[5:])
    off = 5 + used
    if len(data) < off + 1:
        raise AnamorphicError(ErrorKind.DECODE_FAILURE)
    return profile, data[off], data[off + 1 :]


def load_ek(data: bytes, seed_len: int) -> tuple[DhRrKem, int]:
    profile, role, body = parse_key_record(data)
    if role != ROLE_EK:
        raise AnamorphicError(ErrorKind.DECODE_FAILURE)
    kem = DhRrKem(profile, seed_len)
    return kem, kem.group.elem_from_bytes(body)

def load_dk(data: bytes, seed_len: int) -> tuple[DhRrKem, DhKeyPair]:
    profile, role, body = parse_key_record(data)
    if role != ROLE_DK:
        raise AnamorphicError(ErrorKind.DECODE_FAILURE)
    kem = DhRrKem(profile, seed_len)
    if len(body) != SCALAR_LEN + kem.group.elem_len:
        raise AnamorphicError(ErrorKind.DECODE_FAILURE)
    d = int.from_bytes(body[:SCALAR_LEN], "big")
    ek = kem.group.elem_from_bytes(body[SCALAR_LEN:])
    return kem, DhKeyPair(ek=ek, dk=d, profile=profile, seed_len=seed_len)
