"""Symmetric-key anamorphic KEM.

The shared double key DK = (k, mak) drives a counter-based channel: the
covert message is XOR-masked with a per-counter PRF output, tagged, and the
(message, tag) block is pushed through the invertible Feistel PRF to become
the outer KEM's randomness. The PRF mask and the Feistel round functions
share the master key k under disjoint labels.

The MAC deliberately covers only the masked block c, not the counter;
decrypting an honest ciphertext under the wrong counter therefore verifies
but yields a different message. That behavior is inherent to the
construction, not a bug here.

Counter discipline: encapsulating with a previously consumed counter is
refused. ``CounterState`` supports a compact strictly-increasing
high-water-mark policy (default) and an exact-set policy. aEnc mutates the
state, so callers must serialize aEnc calls per double key; aDec is pure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .core import AnamorphicError, ErrorKind, Profile, check_amsg, ctr_bytes
from .primitives import (
    FeistelIpfKey,
    MacKey,
    PrfKey,
    ipf_eval,
    ipf_invert,
    ipf_setup,
    mac_keygen,
    mac_tag,
    mac_verify,
    prf_eval,
    prf_keygen,
)
from .rrkem import DhKeyPair, DhRrKem

DK_MAGIC = b"ANMD"
DK_VERSION = 0x01


@dataclass(frozen=True)
class DoubleKey:
    k: PrfKey
    mak: MacKey


@dataclass
class CounterState:
    """Tracks consumed counters; ``exact`` keeps the full set, otherwise a
    strictly-increasing high-water mark is enforced."""

    exact: bool = False
    high_water: int = -1
    used: set = field(default_factory=set)

    def consume(self, ctr: int) -> None:
        if self.exact:
            if ctr in self.used:
                raise AnamorphicError(ErrorKind.COUNTER_REUSE)
            self.used.add(ctr)
        else:
            if ctr <= self.high_water:
                raise AnamorphicError(ErrorKind.COUNTER_REUSE)
            self.high_water = ctr


def outer_kem(profile: Profile) -> DhRrKem:
    return DhRrKem(profile, profile.rho_sk)


def skakem_agen(
    profile: Profile, rng: random.Random | None = None
) -> tuple[DhKeyPair, DoubleKey]:
    kem_keys = outer_kem(profile).keygen(rng)
    dk = DoubleKey(k=prf_keygen(rng), mak=mac_keygen(profile, rng))
    return kem_keys, dk


def _ipf(profile: Profile, dk: DoubleKey) -> FeistelIpfKey:
    return ipf_setup(profile, dk.k, profile.rho_sk)


def _mask(profile: Profile, dk: DoubleKey, ctr: int) -> bytes:
    return prf_eval(dk.k, "MASK", ctr_bytes(ctr), profile.amsg_len)


def skakem_aenc(
    profile: Profile,
    ek: int,
    dk: DoubleKey,
    amsg: bytes,
    ctr: int,
    state: CounterState,
) -> tuple[bytes, bytes]:
    """Anamorphic encapsulation; consumes ctr, returns (session key, act)."""
    check_amsg(profile, amsg)
    state.consume(ctr)
    c = bytes(a ^ b for a, b in zip(amsg, _mask(profile, dk, ctr)))
    tau = mac_tag(dk.mak, c, profile.mac_tag_len)
    r_e = ipf_eval(_ipf(profile, dk), c + tau)
    return outer_kem(profile).encaps(ek, r_e)


def skakem_adec(
    profile: Profile, dk: DoubleKey, kem_keys: DhKeyPair, ctr: int, act: bytes
) -> bytes:
    _, r_e = outer_kem(profile).decaps(kem_keys, act)
    c_prime = ipf_invert(_ipf(profile, dk), r_e)
    c, tau = c_prime[: profile.amsg_len], c_prime[profile.amsg_len :]
    if not mac_verify(dk.mak, c, tau):
        raise AnamorphicError(ErrorKind.MAC_REJECT)
    return bytes(a ^ b for a, b in zip(c, _mask(profile, dk, ctr)))


# --- Double-key file -------------------------------------------------------


def serialize_dk_file(profile: Profile, dk: DoubleKey) -> bytes:
    return (
        DK_MAGIC
        + bytes([DK_VERSION])
        + profile.to_bytes()
        + dk.k.key
        + dk.mak.key
    )


def load_dk_file(data: bytes) -> tuple[Profile, DoubleKey]:
    from .core import profile_from_bytes
    from .primitives import PRF_KEY_LEN

    if data[:4] != DK_MAGIC or data[4] != DK_VERSION:
        raise AnamorphicError(ErrorKind.DECODE_FAILURE)
    profile, used = profile_from_bytes(data[5:])
    body = data[5 + used :]
    if len(body) != PRF_KEY_LEN + profile.mak_len:
        raise AnamorphicError(ErrorKind.DECODE_FAILURE)
    dk = DoubleKey(k=PrfKey(body[:PRF_KEY_LEN]), mak=MacKey(body[PRF_KEY_LEN:]))
    return profile, dk
