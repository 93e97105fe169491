"""KEM-DEM message envelope and its binary format.

Layout (normative, fixed offsets):

    magic "ANME" | version 0x01 | profile record | scheme byte | counter(8)
    | kem_ct | dem_ct

``kem_ct`` is the (possibly anamorphic) outer KEM ciphertext; its length is
fixed by (profile, scheme). ``dem_ct`` is the normal message under a PRF
keystream plus a MAC, both keyed from the KEM session key. The counter
field is always present: covert SK envelopes use it as the shared covert
counter, every other mode fills a genuine transmission sequence number, so
the header shape never depends on whether a covert channel is in use.

The covert channel reads only ``kem_ct``; the normal channel authenticates
``dem_ct`` independently. Tampering with one side therefore never disturbs
the other side's ability to reject or recover -- the decoupling property.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .core import (
    AnamorphicError,
    COUNTER_LEN,
    ErrorKind,
    Profile,
    ctr_bytes,
    profile_from_bytes,
    rand_bytes,
)
from .pke import PkePublicKey, PkeSecretKey
from .pkakem import normal_encaps, outer_kem as pk_outer_kem, pkakem_adec, pkakem_aenc
from .primitives import MacKey, mac_tag, mac_verify, prf_eval
from .rrkem import DhKeyPair
from .skakem import CounterState, DoubleKey, outer_kem as sk_outer_kem, skakem_adec, skakem_aenc

ENVELOPE_MAGIC = b"ANME"
ENVELOPE_VERSION = 0x01
SCHEME_PK = 0x01
SCHEME_SK = 0x02
SCHEME_NAMES = {"pk": SCHEME_PK, "sk": SCHEME_SK}


@dataclass(frozen=True)
class Envelope:
    profile: Profile
    scheme: str  # "pk" | "sk"
    ctr: int
    kem_ct: bytes
    dem_ct: bytes

    def header_bytes(self) -> bytes:
        return (
            ENVELOPE_MAGIC
            + bytes([ENVELOPE_VERSION])
            + self.profile.to_bytes()
            + bytes([SCHEME_NAMES[self.scheme]])
            + ctr_bytes(self.ctr)
        )

    def to_bytes(self) -> bytes:
        return self.header_bytes() + self.kem_ct + self.dem_ct


def envelope_from_bytes(data: bytes) -> Envelope:
    if data[:4] != ENVELOPE_MAGIC or data[4] != ENVELOPE_VERSION:
        raise AnamorphicError(ErrorKind.DECODE_FAILURE)
    profile, used = profile_from_bytes(data[5:])
    off = 5 + used
    if len(data) < off + 1 + COUNTER_LEN:
        raise AnamorphicError(ErrorKind.DECODE_FAILURE)
    scheme_byte = data[off]
    scheme = {v: k for k, v in SCHEME_NAMES.items()}.get(scheme_byte)
    if scheme is None:
        raise AnamorphicError(ErrorKind.DECODE_FAILURE)
    ctr = int.from_bytes(data[off + 1 : off + 1 + COUNTER_LEN], "big")
    body = data[off + 1 + COUNTER_LEN :]
    kem_len = profile.kem_ct_len(scheme)
    if len(body) < kem_len + profile.mac_tag_len:
        raise AnamorphicError(ErrorKind.LENGTH_MISMATCH)
    return Envelope(
        profile=profile,
        scheme=scheme,
        ctr=ctr,
        kem_ct=body[:kem_len],
        dem_ct=body[kem_len:],
    )


# --- DEM layer -------------------------------------------------------------


def _dem_encrypt(profile: Profile, session_key: bytes, header: bytes, kem_ct: bytes, msg: bytes) -> bytes:
    masked = msg
    if msg:
        keystream = prf_eval(session_key, "DEM", header, len(msg))
        masked = bytes(a ^ b for a, b in zip(msg, keystream))
    mac_key = MacKey(prf_eval(session_key, "DEM-MAC", header, profile.mak_len))
    tag = mac_tag(mac_key, header + kem_ct + masked, profile.mac_tag_len)
    return masked + tag


def _dem_decrypt(profile: Profile, session_key: bytes, header: bytes, kem_ct: bytes, dem_ct: bytes) -> bytes:
    if len(dem_ct) < profile.mac_tag_len:
        raise AnamorphicError(ErrorKind.LENGTH_MISMATCH)
    masked, tag = dem_ct[: -profile.mac_tag_len], dem_ct[-profile.mac_tag_len :]
    mac_key = MacKey(prf_eval(session_key, "DEM-MAC", header, profile.mak_len))
    if not mac_verify(mac_key, header + kem_ct + masked, tag):
        raise AnamorphicError(ErrorKind.MAC_REJECT)
    if not masked:
        return b""
    keystream = prf_eval(session_key, "DEM", header, len(masked))
    return bytes(a ^ b for a, b in zip(masked, keystream))


def _assemble(profile, scheme, ctr, session_key, kem_ct, normal_msg) -> Envelope:
    partial = Envelope(profile=profile, scheme=scheme, ctr=ctr, kem_ct=kem_ct, dem_ct=b"")
    header = partial.header_bytes()
    dem_ct = _dem_encrypt(profile, session_key, header, kem_ct, normal_msg)
    return Envelope(profile=profile, scheme=scheme, ctr=ctr, kem_ct=kem_ct, dem_ct=dem_ct)


# --- Sealing ---------------------------------------------------------------


def seal(
    profile: Profile,
    ek: int,
    scheme: str,
    normal_msg: bytes,
    ctr: int = 0,
    rng: random.Random | None = None,
) -> Envelope:
    """Normal (non-anamorphic) envelope: uniform KEM randomness, no covert
    payload. The counter field carries a plain sequence number."""
    if scheme == "pk":
        session_key, kem_ct = normal_encaps(profile, ek, rng)
    elif scheme == "sk":
        kem = sk_outer_kem(profile)
        session_key, kem_ct = kem.encaps(ek, rand_bytes(rng, profile.rho_sk))
    else:
        raise ValueError(f"unknown scheme {scheme!r}")
    return _assemble(profile, scheme, ctr, session_key, kem_ct, normal_msg)


def covert_seal_pk(
    profile: Profile,
    ek: int,
    dk_prime: PkePublicKey,
    amsg: bytes,
    normal_msg: bytes,
    ctr: int = 0,
    rng: random.Random | None = None,
) -> Envelope:
    session_key, kem_ct = pkakem_aenc(profile, ek, dk_prime, amsg, rng)
    return _assemble(profile, "pk", ctr, session_key, kem_ct, normal_msg)


def covert_seal_sk(
    profile: Profile,
    ek: int,
    dk: DoubleKey,
    amsg: bytes,
    normal_msg: bytes,
    ctr: int,
    state: CounterState,
) -> Envelope:
    session_key, kem_ct = skakem_aenc(profile, ek, dk, amsg, ctr, state)
    return _assemble(profile, "sk", ctr, session_key, kem_ct, normal_msg)


# --- Opening ---------------------------------------------------------------


def covert_open_pk(env: Envelope, dk_keys: DhKeyPair, tk_prime: PkeSecretKey) -> bytes:
    """Covert retrieval; dem_ct is ignored entirely."""
    if env.scheme != "pk":
        raise AnamorphicError(ErrorKind.DECODE_FAILURE)
    return pkakem_adec(env.profile, dk_keys, tk_prime, env.kem_ct)


def covert_open_sk(
    env: Envelope, dk: DoubleKey, kem_keys: DhKeyPair, ctr: int | None = None
) -> bytes:
    if env.scheme != "sk":
        raise AnamorphicError(ErrorKind.DECODE_FAILURE)
    if ctr is None:
        ctr = env.ctr
    return skakem_adec(env.profile, dk, kem_keys, ctr, env.kem_ct)


def normal_open(env: Envelope, dk_keys: DhKeyPair) -> bytes:
    """The dictator's legitimate path: decapsulate with dk, open the DEM."""
    kem = pk_outer_kem(env.profile) if env.scheme == "pk" else sk_outer_kem(env.profile)
    session_key, _ = kem.decaps(dk_keys, env.kem_ct)
    header = Envelope(
        profile=env.profile, scheme=env.scheme, ctr=env.ctr, kem_ct=env.kem_ct, dem_ct=b""
    ).header_bytes()
    return _dem_decrypt(env.profile, session_key, header, env.kem_ct, env.dem_ct)
