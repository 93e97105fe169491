"""Hybrid public-key encryption with pseudorandom ciphertexts.

KEM/DEM over the seeded-DH RR-KEM: a fresh 32-byte seed drives the inner
encapsulation, the session key expands into a keystream and a one-time MAC
key, and the ciphertext is

    inner_kem_ct || (m XOR keystream) || dem_tag

All three segments are pseudorandom bytes, which is what the covert layer
needs when it embeds this ciphertext into a KEM randomness space. The
plaintext length is fixed per profile (always amsg || mak); anything else
is rejected. Decryption failures of any cause surface as a single opaque
PkeReject.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .core import AnamorphicError, ErrorKind, PKE_SEED_LEN, Profile, rand_bytes
from .primitives import MacKey, mac_tag, mac_verify, prf_eval
from .rrkem import DhKeyPair, DhRrKem


@dataclass(frozen=True)
class PkePublicKey:
    ek: int
    profile: Profile


@dataclass(frozen=True)
class PkeSecretKey:
    keys: DhKeyPair
    profile: Profile


def _kem(profile: Profile) -> DhRrKem:
    return DhRrKem(profile, PKE_SEED_LEN)


def pke_keygen(
    profile: Profile, rng: random.Random | None = None
) -> tuple[PkePublicKey, PkeSecretKey]:
    pair = _kem(profile).keygen(rng)
    return PkePublicKey(ek=pair.ek, profile=profile), PkeSecretKey(keys=pair, profile=profile)


def _dem_keys(profile: Profile, session_key: bytes, m_len: int) -> tuple[bytes, MacKey]:
    keystream = prf_eval(session_key, "DEM", b"", m_len)
    mac_key = MacKey(prf_eval(session_key, "DEM-MAC", b"", profile.mak_len))
    return keystream, mac_key


def pke_encrypt(pk: PkePublicKey, m: bytes, rng: random.Random | None = None) -> bytes:
    profile = pk.profile
    if len(m) != profile.pke_plaintext_len:
        raise AnamorphicError(ErrorKind.LENGTH_MISMATCH)
    kem = _kem(profile)
    seed = rand_bytes(rng, PKE_SEED_LEN)
    session_key, kem_ct = kem.encaps(pk.ek, seed)
    keystream, mac_key = _dem_keys(profile, session_key, len(m))
    masked = bytes(a ^ b for a, b in zip(m, keystream))
    tag = mac_tag(mac_key, kem_ct + masked, profile.mac_tag_len)
    body = kem_ct + masked + tag
    assert len(body) == profile.pke_ct_len
    return body


def pke_decrypt(sk: PkeSecretKey, c: bytes) -> bytes:
    profile = sk.profile
    if len(c) != profile.pke_ct_len:
        raise AnamorphicError(ErrorKind.PKE_REJECT)
    kem = _kem(profile)
    kem_ct = c[: kem.ct_len]
    masked = c[kem.ct_len : kem.ct_len + profile.pke_plaintext_len]
    tag = c[kem.ct_len + profile.pke_plaintext_len :]
    try:
        session_key, _ = kem.decaps(sk.keys, kem_ct)
    except AnamorphicError:
        raise AnamorphicError(ErrorKind.PKE_REJECT) from None
    keystream, mac_key = _dem_keys(profile, session_key, len(masked))
    if not mac_verify(mac_key, kem_ct + masked, tag):
        raise AnamorphicError(ErrorKind.PKE_REJECT)
    return bytes(a ^ b for a, b in zip(masked, keystream))


# Key file plumbing reuses the rrkem record layout with PKE role bytes.

from .rrkem import ROLE_PKE_PK, ROLE_PKE_SK, SCALAR_LEN, _key_record, parse_key_record
from .group import group_by_id


def serialize_pke_pk(pk: PkePublicKey) -> bytes:
    g = group_by_id(pk.profile.group_id)
    return _key_record(pk.profile, ROLE_PKE_PK, g.elem_bytes(pk.ek))


def serialize_pke_sk(sk: PkeSecretKey) -> bytes:
    g = group_by_id(sk.profile.group_id)
    body = sk.keys.dk.to_bytes(SCALAR_LEN, "big") + g.elem_bytes(sk.keys.ek)
    return _key_record(sk.profile, ROLE_PKE_SK, body)


def load_pke_pk(data: bytes) -> PkePublicKey:
    profile, role, body = parse_key_record(data)
    if role != ROLE_PKE_PK:
        raise AnamorphicError(ErrorKind.DECODE_FAILURE)
    return PkePublicKey(ek=group_by_id(profile.group_id).elem_from_bytes(body), profile=profile)


def load_pke_sk(data: bytes) -> PkeSecretKey:
    profile, role, body = parse_key_record(data)
    if role != ROLE_PKE_SK:
        raise AnamorphicError(ErrorKind.DECODE_FAILURE)
    g = group_by_id(profile.group_id)
    if len(body) != SCALAR_LEN + g.elem_len:
        raise AnamorphicError(ErrorKind.DECODE_FAILURE)
    d = int.from_bytes(body[:SCALAR_LEN], "big")
    ek = g.elem_from_bytes(body[SCALAR_LEN:])
    pair = DhKeyPair(ek=ek, dk=d, profile=profile, seed_len=PKE_SEED_LEN)
    return PkeSecretKey(keys=pair, profile=profile)
