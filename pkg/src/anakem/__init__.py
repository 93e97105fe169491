"""Anamorphic key-encapsulation library.

Covert channels inside ordinary KEM ciphertexts: a public-key variant
(asymmetric covert receiver keys) and a symmetric-key variant (pre-shared
double key with a counter), both layered generically over a
randomness-recoverable KEM, plus an executable security-game harness.
"""

from .core import AnamorphicError, ErrorKind, Profile, profile_new
from .pkakem import PkAnamorphicKeys, normal_encaps, pkakem_adec, pkakem_aenc, pkakem_agen
from .skakem import CounterState, DoubleKey, skakem_adec, skakem_aenc, skakem_agen
from .envelope import (
    Envelope,
    covert_open_pk,
    covert_open_sk,
    covert_seal_pk,
    covert_seal_sk,
    envelope_from_bytes,
    normal_open,
    seal,
)
from .games import (
    ADVERSARIES,
    EXPERIMENTS,
    ExperimentReport,
    estimate_advantage,
    run_anamorphic_game_pk,
    run_anamorphic_game_sk,
    run_sindcca_pk,
    run_sindcca_sk,
)

__all__ = [
    "AnamorphicError",
    "ErrorKind",
    "Profile",
    "profile_new",
    "PkAnamorphicKeys",
    "pkakem_agen",
    "pkakem_aenc",
    "pkakem_adec",
    "normal_encaps",
    "DoubleKey",
    "CounterState",
    "skakem_agen",
    "skakem_aenc",
    "skakem_adec",
    "Envelope",
    "seal",
    "covert_seal_pk",
    "covert_seal_sk",
    "covert_open_pk",
    "covert_open_sk",
    "normal_open",
    "envelope_from_bytes",
    "ExperimentReport",
    "estimate_advantage",
    "run_anamorphic_game_pk",
    "run_anamorphic_game_sk",
    "run_sindcca_pk",
    "run_sindcca_sk",
    "ADVERSARIES",
    "EXPERIMENTS",
]

__version__ = "0.1.0"
