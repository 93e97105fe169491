"""Envelope format, the two channels, and their decoupling."""

import random

import pytest

from anakem.core import AnamorphicError, ErrorKind, rand_bytes
from anakem.envelope import (
    Envelope,
    covert_open_pk,
    covert_open_sk,
    covert_seal_pk,
    covert_seal_sk,
    envelope_from_bytes,
    normal_open,
    seal,
)
from anakem.pkakem import pkakem_agen
from anakem.skakem import CounterState, skakem_agen


@pytest.fixture(scope="module")
def pk_keys(profile):
    return pkakem_agen(profile, random.Random(0xE0))


@pytest.fixture(scope="module")
def sk_keys(profile):
    return skakem_agen(profile, random.Random(0xE1))


def test_normal_seal_open_both_schemes(profile, pk_keys, sk_keys, rng):
    msg = b"hello there"
    env = seal(profile, pk_keys.ek, "pk", msg, ctr=3, rng=rng)
    assert normal_open(env, pk_keys.kem_keys) == msg
    kem_keys, _ = sk_keys
    env = seal(profile, kem_keys.ek, "sk", msg, ctr=4, rng=rng)
    assert normal_open(env, kem_keys) == msg


def test_covert_pk_both_channels(profile, pk_keys, rng):
    amsg, msg = rand_bytes(rng, 32), b"innocuous cover traffic"
    env = covert_seal_pk(profile, pk_keys.ek, pk_keys.dk_prime, amsg, msg, 1, rng)
    assert normal_open(env, pk_keys.kem_keys) == msg
    assert covert_open_pk(env, pk_keys.kem_keys, pk_keys.tk_prime) == amsg


def test_covert_sk_both_channels(profile, sk_keys, rng):
    kem_keys, dk = sk_keys
    amsg, msg = rand_bytes(rng, 32), b"weather report"
    env = covert_seal_sk(profile, kem_keys.ek, dk, amsg, msg, 9, CounterState())
    assert normal_open(env, kem_keys) == msg
    assert covert_open_sk(env, dk, kem_keys) == amsg
    assert covert_open_sk(env, dk, kem_keys, ctr=9) == amsg


def test_serialize_parse_identity(profile, pk_keys, rng):
    env = covert_seal_pk(profile, pk_keys.ek, pk_keys.dk_prime, bytes(32), b"m", 2, rng)
    env2 = envelope_from_bytes(env.to_bytes())
    assert env2 == env
    assert env2.to_bytes() == env.to_bytes()


def test_parse_rejects_garbage(profile, pk_keys, rng):
    env = seal(profile, pk_keys.ek, "pk", b"x", rng=rng)
    blob = env.to_bytes()
    with pytest.raises(AnamorphicError):
        envelope_from_bytes(b"XXXX" + blob[4:])
    with pytest.raises(AnamorphicError):
        envelope_from_bytes(blob[:30])
    # unknown scheme byte
    bad = bytearray(blob)
    bad[19] = 0x09  # scheme byte follows the 5-byte header + 14-byte profile record
    with pytest.raises(AnamorphicError):
        envelope_from_bytes(bytes(bad))


def test_scheme_byte_offset_assumption(profile, pk_keys, rng):
    # guard for the hand-computed offset used above
    env = seal(profile, pk_keys.ek, "pk", b"", rng=rng)
    assert env.to_bytes()[19] == 0x01


def test_empty_normal_message(profile, pk_keys, rng):
    env = seal(profile, pk_keys.ek, "pk", b"", rng=rng)
    assert len(env.dem_ct) == profile.mac_tag_len  # tag only
    assert normal_open(env, pk_keys.kem_keys) == b""


def test_format_identical_normal_vs_covert(profile, pk_keys, sk_keys, rng):
    msg = b"fixed length msg"
    normal = seal(profile, pk_keys.ek, "pk", msg, ctr=5, rng=rng)
    covert = covert_seal_pk(profile, pk_keys.ek, pk_keys.dk_prime, bytes(32), msg, 5, rng)
    assert len(normal.to_bytes()) == len(covert.to_bytes())
    assert len(normal.kem_ct) == len(covert.kem_ct)
    assert normal.header_bytes() == covert.header_bytes()
    kem_keys, dk = sk_keys
    normal = seal(profile, kem_keys.ek, "sk", msg, ctr=5, rng=rng)
    covert = covert_seal_sk(profile, kem_keys.ek, dk, bytes(32), msg, 5, CounterState())
    assert len(normal.to_bytes()) == len(covert.to_bytes())
    assert normal.header_bytes() == covert.header_bytes()


def test_decoupling_dem_tamper_keeps_covert_channel(profile, pk_keys, rng):
    amsg = rand_bytes(rng, 32)
    env = covert_seal_pk(profile, pk_keys.ek, pk_keys.dk_prime, amsg, b"msg", 1, rng)
    for _ in range(20):
        bad_dem = bytearray(env.dem_ct)
        bad_dem[rng.randrange(len(bad_dem))] ^= 1 + rng.randrange(255)
        mutated = Envelope(env.profile, env.scheme, env.ctr, env.kem_ct, bytes(bad_dem))
        # normal channel rejects, covert channel is untouched
        with pytest.raises(AnamorphicError) as exc:
            normal_open(mutated, pk_keys.kem_keys)
        assert exc.value.kind == ErrorKind.MAC_REJECT
        assert covert_open_pk(mutated, pk_keys.kem_keys, pk_keys.tk_prime) == amsg


def test_decoupling_kem_tamper_kills_both(profile, pk_keys, rng):
    env = covert_seal_pk(profile, pk_keys.ek, pk_keys.dk_prime, bytes(32), b"msg", 1, rng)
    bad_kem = bytearray(env.kem_ct)
    bad_kem[rng.randrange(len(bad_kem))] ^= 1 + rng.randrange(255)
    mutated = Envelope(env.profile, env.scheme, env.ctr, bytes(bad_kem), env.dem_ct)
    with pytest.raises(AnamorphicError):
        covert_open_pk(mutated, pk_keys.kem_keys, pk_keys.tk_prime)
    with pytest.raises(AnamorphicError):
        normal_open(mutated, pk_keys.kem_keys)


def test_header_tamper_rejected(profile, pk_keys, rng):
    # the DEM MAC binds the header: a modified counter must not open
    env = seal(profile, pk_keys.ek, "pk", b"msg", ctr=1, rng=rng)
    mutated = Envelope(env.profile, env.scheme, 2, env.kem_ct, env.dem_ct)
    with pytest.raises(AnamorphicError) as exc:
        normal_open(mutated, pk_keys.kem_keys)
    assert exc.value.kind == ErrorKind.MAC_REJECT


def test_scheme_mismatch_rejected(profile, pk_keys, sk_keys, rng):
    kem_keys, dk = sk_keys
    env = seal(profile, pk_keys.ek, "pk", b"m", rng=rng)
    with pytest.raises(AnamorphicError):
        covert_open_sk(env, dk, kem_keys)
    env = seal(profile, kem_keys.ek, "sk", b"m", rng=rng)
    with pytest.raises(AnamorphicError):
        covert_open_pk(env, pk_keys.kem_keys, pk_keys.tk_prime)
    with pytest.raises(ValueError):
        seal(profile, pk_keys.ek, "xx", b"m", rng=rng)
