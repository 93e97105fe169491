"""Public-key anamorphic KEM.

The covert sender encrypts amsg || mak under the covert receiver's public
key, tags that ciphertext with mak, embeds ciphertext-plus-tag as the
outer KEM's randomness, and encapsulates. The result is a perfectly
ordinary-looking KEM ciphertext whose session key works for everyone; only
the covert trapdoor holder can peel the randomness back into a message.

``adec`` surfaces distinct internal error kinds (DecapsFailure, PkeReject,
MacReject) so tests can assert on causes; CLI-facing callers collapse them
all to a single rejection.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .core import AnamorphicError, ErrorKind, Profile, check_amsg, rand_bytes
from .pke import PkePublicKey, PkeSecretKey, pke_decrypt, pke_encrypt, pke_keygen
from .primitives import decode, encode, mac_keygen, mac_tag, mac_verify, MacKey
from .rrkem import DhKeyPair, DhRrKem


@dataclass(frozen=True)
class PkAnamorphicKeys:
    kem_keys: DhKeyPair  # (ek, dk): the standard pair surrendered on demand
    dk_prime: PkePublicKey  # covert receiver's public key
    tk_prime: PkeSecretKey  # covert trapdoor, never surrendered
    profile: Profile

    @property
    def ek(self) -> int:
        return self.kem_keys.ek


def outer_kem(profile: Profile) -> DhRrKem:
    return DhRrKem(profile, profile.rho_pk)


def pkakem_agen(profile: Profile, rng: random.Random | None = None) -> PkAnamorphicKeys:
    dk_prime, tk_prime = pke_keygen(profile, rng)
    kem_keys = outer_kem(profile).keygen(rng)
    return PkAnamorphicKeys(
        kem_keys=kem_keys, dk_prime=dk_prime, tk_prime=tk_prime, profile=profile
    )


def pkakem_aenc(
    profile: Profile,
    ek: int,
    dk_prime: PkePublicKey,
    amsg: bytes,
    rng: random.Random | None = None,
) -> tuple[bytes, bytes]:
    """Anamorphic encapsulation; returns (session key, act)."""
    check_amsg(profile, amsg)
    mak = mac_keygen(profile, rng)
    c = pke_encrypt(dk_prime, amsg + mak.key, rng)
    tau = mac_tag(mak, c, profile.mac_tag_len)
    r_e = encode(c + tau, profile.rho_pk)
    return outer_kem(profile).encaps(ek, r_e)


def pkakem_adec(
    profile: Profile, dk_keys: DhKeyPair, tk_prime: PkeSecretKey, act: bytes
) -> bytes:
    kem = outer_kem(profile)
    _, r_e = kem.decaps(dk_keys, act)  # DecapsFailure on tamper
    c_prime = decode(r_e, profile.rho_pk)
    c, tau = c_prime[: profile.pke_ct_len], c_prime[profile.pke_ct_len :]
    plaintext = pke_decrypt(tk_prime, c)  # PkeReject on wrong key / tamper
    amsg, mak = plaintext[: profile.amsg_len], MacKey(plaintext[profile.amsg_len :])
    if not mac_verify(mak, c, tau):
        raise AnamorphicError(ErrorKind.MAC_REJECT)
    return amsg


def normal_encaps(
    profile: Profile, ek: int, rng: random.Random | None = None
) -> tuple[bytes, bytes]:
    """The dictator's baseline: honest encapsulation with uniform randomness."""
    r_e = rand_bytes(rng, profile.rho_pk)
    return outer_kem(profile).encaps(ek, r_e)
