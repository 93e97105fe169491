"""Executable security experiments.

Each experiment runs N independent trials with fresh keys per trial and
aggregates a distinguishing-advantage estimate with a 95% Wilson interval.
Negligible advantage cannot be proven empirically; acceptance is a CI
threshold plus negative controls (deliberately leaky component variants)
that demonstrate the harness actually detects real leaks.

World bits are allocated balanced (exactly half per world, shuffled), so a
constant adversary scores an advantage of exactly zero instead of coin-flip
noise; each trial's bit is still marginally uniform.

Controls:

* ``zero-pad`` (pk anamorphic): the covert world skips the PKE entirely and
  zero-pads the message into the randomness space -- low-entropy leak.
* ``no-mask-no-ipf`` (sk anamorphic): the covert world disables both the
  XOR mask and the Feistel permutation, so the recovered randomness starts
  with the submitted message verbatim.
* ``world-indicator``: both worlds append a world byte to the ciphertext --
  the harness-sensitivity floor.
* ``weak-tag`` (pk sIND-CCA): the decryption oracle checks only the first
  byte of the MAC tag, enabling the tag-mauling forgery strategy.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .core import AnamorphicError, ErrorKind, Profile, rand_bytes
from .pkakem import (
    PkAnamorphicKeys,
    normal_encaps,
    outer_kem as pk_outer_kem,
    pkakem_adec,
    pkakem_aenc,
    pkakem_agen,
)
from .pke import pke_decrypt
from .primitives import MacKey, decode, mac_tag
from .skakem import (
    CounterState,
    outer_kem as sk_outer_kem,
    skakem_adec,
    skakem_aenc,
    skakem_agen,
)

_Z95 = 1.959963984540054


# --- Advantage estimation --------------------------------------------------


def wilson_interval(successes: int, trials: int, z: float = _Z95) -> tuple[float, float]:
    if not 0 <= successes <= trials or trials < 1:
        raise ValueError("need 0 <= successes <= trials, trials >= 1")
    p = successes / trials
    denom = 1 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def estimate_advantage(successes: int, trials: int) -> tuple[float, float, float]:
    """Advantage point 2*|p - 1/2| and the Wilson interval mapped through
    the same transform."""
    lo, hi = wilson_interval(successes, trials)
    point = 2 * abs(successes / trials - 0.5)
    g = lambda p: 2 * abs(p - 0.5)
    if lo <= 0.5 <= hi:
        return point, 0.0, max(g(lo), g(hi))
    return point, min(g(lo), g(hi)), max(g(lo), g(hi))


@dataclass
class ExperimentReport:
    experiment: str
    trials: int
    successes: int
    advantage_estimate: float
    ci_low: float
    ci_high: float
    restriction_violations: int
    seed: int
    control: str | None = None
    forged_acceptances: int = 0

    def lines(self) -> list[str]:
        return [
            f"experiment             {self.experiment}",
            f"control                {self.control or '-'}",
            f"trials                 {self.trials}",
            f"successes              {self.successes}",
            f"advantage_estimate     {self.advantage_estimate:.4f}",
            f"ci_95                  [{self.ci_low:.4f}, {self.ci_high:.4f}]",
            f"restriction_violations {self.restriction_violations}",
            f"forged_acceptances     {self.forged_acceptances}",
            f"seed                   {self.seed}",
        ]

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _make_rng(seed: int | None) -> tuple[random.Random, int]:
    if seed is None:
        seed = random.SystemRandom().getrandbits(64)
    return random.Random(seed), seed


def _world_bits(trials: int, rng: random.Random) -> list[int]:
    bits = [0] * (trials // 2) + [1] * (trials - trials // 2)
    rng.shuffle(bits)
    return bits


# --- Anamorphic games ------------------------------------------------------


@dataclass
class AnamorphicTrial:
    """Per-trial view handed to a distinguisher: public values, the standard
    decapsulation key, and the encryption oracle. Nothing else."""

    profile: Profile
    scheme: str  # "pk" | "sk"
    ek: int
    dk_keys: object  # DhKeyPair; includes the surrendered dk
    oracle: object  # pk: amsg -> (K, act); sk: (amsg, ctr) -> (K, act)
    rng: random.Random


def _pk_oracles(profile, rng, control):
    keys = pkakem_agen(profile, rng)
    kem = pk_outer_kem(profile)

    def real(amsg):
        return normal_encaps(profile, keys.ek, rng)

    if control == "zero-pad":

        def covert(amsg):
            # Leaky variant: message zero-padded straight into the
            # randomness space, no PKE, no MAC.
            r_e = amsg + bytes(profile.rho_pk - len(amsg))
            return kem.encaps(keys.ek, r_e)

    else:

        def covert(amsg):
            return pkakem_aenc(profile, keys.ek, keys.dk_prime, amsg, rng)

    return keys.ek, keys.kem_keys, real, covert


def _sk_oracles(profile, rng, control):
    kem_keys, dk = skakem_agen(profile, rng)
    kem = sk_outer_kem(profile)
    state = CounterState(exact=True)

    def real(amsg, ctr):
        state.consume(ctr)
        return kem.encaps(kem_keys.ek, rand_bytes(rng, profile.rho_sk))

    if control == "no-mask-no-ipf":

        def covert(amsg, ctr):
            state.consume(ctr)
            c = amsg  # mask disabled
            tau = mac_tag(dk.mak, c, profile.mac_tag_len)
            return kem.encaps(kem_keys.ek, c + tau)  # identity in place of IPF

    else:

        def covert(amsg, ctr):
            return skakem_aenc(profile, kem_keys.ek, dk, amsg, ctr, state)

    return kem_keys.ek, kem_keys, real, covert


def _run_anamorphic(experiment, profile, adversary, trials, seed, control, scheme):
    if trials < 100:
        raise ValueError("trials must be >= 100")
    rng, seed = _make_rng(seed)
    worlds = _world_bits(trials, rng)
    successes = 0
    for world in worlds:
        if scheme == "pk":
            ek, dk_keys, real, covert = _pk_oracles(profile, rng, control)
        else:
            ek, dk_keys, real, covert = _sk_oracles(profile, rng, control)
        oracle = covert if world == 1 else real

        if control == "world-indicator":
            inner = oracle

            def oracle(*args, _inner=inner, _w=world):
                key, act = _inner(*args)
                return key, act + bytes([_w])

        trial = AnamorphicTrial(
            profile=profile,
            scheme=scheme,
            ek=ek,
            dk_keys=dk_keys,
            oracle=oracle,
            rng=rng,
        )
        try:
            guess = adversary.distinguish(trial)
        except Exception:
            guess = 1 - world  # adversary failure counts as a wrong guess
        if guess == world:
            successes += 1
    point, lo, hi = estimate_advantage(successes, trials)
    return ExperimentReport(
        experiment=experiment,
        trials=trials,
        successes=successes,
        advantage_estimate=point,
        ci_low=lo,
        ci_high=hi,
        restriction_violations=0,
        seed=seed,
        control=control,
    )


def run_anamorphic_game_pk(profile, adversary, trials, seed=None, control=None):
    return _run_anamorphic("anamorphic-pk", profile, adversary, trials, seed, control, "pk")


def run_anamorphic_game_sk(profile, adversary, trials, seed=None, control=None):
    return _run_anamorphic("anamorphic-sk", profile, adversary, trials, seed, control, "sk")


# --- sIND-CCA experiments --------------------------------------------------


class SindccaPkSession:
    """One trial of the PKAKEM sIND-CCA experiment. The adversary holds
    (ek, dk, dk') and a decryption oracle; the covert trapdoor stays with
    the challenger."""

    def __init__(self, profile: Profile, rng: random.Random, control: str | None, beta: int):
        self.profile = profile
        self.rng = rng
        self.control = control
        self._beta = beta
        self.keys = pkakem_agen(profile, rng)
        self.ek = self.keys.ek
        self.dk_keys = self.keys.kem_keys
        self.dk_prime = self.keys.dk_prime
        self.act_star: bytes | None = None
        self.violations = 0
        self.forgeries = 0

    def _raw_adec(self, act: bytes) -> bytes:
        if self.control == "weak-tag":
            return _pk_adec_weak_tag(self.profile, self.keys, act)
        return pkakem_adec(self.profile, self.dk_keys, self.keys.tk_prime, act)

    def adec(self, act: bytes) -> bytes:
        if self.act_star is not None and act == self.act_star:
            self.violations += 1
            raise AnamorphicError(ErrorKind.DECAPS_FAILURE)
        amsg = self._raw_adec(act)  # raises on rejection
        if self.act_star is not None:
            self.forgeries += 1
        return amsg

    def challenge(self, amsg0: bytes, amsg1: bytes) -> bytes:
        assert self.act_star is None, "challenge may be issued once"
        _, self.act_star = pkakem_aenc(
            self.profile, self.ek, self.dk_prime, (amsg0, amsg1)[self._beta], self.rng
        )
        return self.act_star


def _pk_adec_weak_tag(profile: Profile, keys: PkAnamorphicKeys, act: bytes) -> bytes:
    """Deliberately weakened decryption: MAC comparison truncated to the
    first tag byte. Negative-control only."""
    kem = pk_outer_kem(profile)
    _, r_e = kem.decaps(keys.kem_keys, act)
    c_prime = decode(r_e, profile.rho_pk)
    c, tau = c_prime[: profile.pke_ct_len], c_prime[profile.pke_ct_len :]
    plaintext = pke_decrypt(keys.tk_prime, c)
    amsg, mak = plaintext[: profile.amsg_len], MacKey(plaintext[profile.amsg_len :])
    expected = mac_tag(mak, c, profile.mac_tag_len)
    if expected[:1] != tau[:1]:
        raise AnamorphicError(ErrorKind.MAC_REJECT)
    return amsg


def run_sindcca_pk(profile, adversary, trials, seed=None, control=None):
    if trials < 100:
        raise ValueError("trials must be >= 100")
    rng, seed = _make_rng(seed)
    betas = _world_bits(trials, rng)
    successes = violations = forgeries = 0
    for beta in betas:
        session = SindccaPkSession(profile, rng, control, beta)
        try:
            guess = adversary.run_pk(session)
        except Exception:
            guess = 1 - beta
        violations += session.violations
        forgeries += session.forgeries
        if guess == beta and session.violations == 0:
            successes += 1
    point, lo, hi = estimate_advantage(successes, trials)
    return ExperimentReport(
        experiment="sindcca-pk",
        trials=trials,
        successes=successes,
        advantage_estimate=point,
        ci_low=lo,
        ci_high=hi,
        restriction_violations=violations,
        seed=seed,
        control=control,
        forged_acceptances=forgeries,
    )


class SindccaSkSession:
    """One trial of the SKAKEM sIND-CCA experiment, with both oracles and
    the freshness rules on ctr* and (ctr*, act*)."""

    def __init__(self, profile: Profile, rng: random.Random, beta: int):
        self.profile = profile
        self.rng = rng
        self._beta = beta
        self.kem_keys, self.dk = skakem_agen(profile, rng)
        self.ek = self.kem_keys.ek
        self.state = CounterState(exact=True)
        self.ctr_star: int | None = None
        self.act_star: bytes | None = None
        self.violations = 0
        self.forgeries = 0

    def aenc(self, amsg: bytes, ctr: int):
        if self.ctr_star is not None and ctr == self.ctr_star:
            self.violations += 1
            raise AnamorphicError(ErrorKind.COUNTER_REUSE)
        return skakem_aenc(self.profile, self.ek, self.dk, amsg, ctr, self.state)

    def adec(self, ctr: int, act: bytes) -> bytes:
        if self.act_star is not None and ctr == self.ctr_star and act == self.act_star:
            self.violations += 1
            raise AnamorphicError(ErrorKind.DECAPS_FAILURE)
        amsg = skakem_adec(self.profile, self.dk, self.kem_keys, ctr, act)
        if self.act_star is not None and act != self.act_star:
            self.forgeries += 1
        return amsg

    def challenge(self, amsg0: bytes, amsg1: bytes, ctr_star: int) -> bytes:
        assert self.act_star is None, "challenge may be issued once"
        if self.state.exact and ctr_star in self.state.used:
            self.violations += 1
        self.ctr_star = ctr_star
        _, self.act_star = skakem_aenc(
            self.profile, self.ek, self.dk, (amsg0, amsg1)[self._beta], ctr_star, self.state
        )
        return self.act_star


def run_sindcca_sk(profile, adversary, trials, seed=None, control=None):
    if trials < 100:
        raise ValueError("trials must be >= 100")
    if control is not None:
        raise ValueError("sindcca-sk has no controls")
    rng, seed = _make_rng(seed)
    betas = _world_bits(trials, rng)
    successes = violations = forgeries = 0
    for beta in betas:
        session = SindccaSkSession(profile, rng, beta)
        try:
            guess = adversary.run_sk(session)
        except Exception:
            guess = 1 - beta
        violations += session.violations
        forgeries += session.forgeries
        if guess == beta and session.violations == 0:
            successes += 1
    point, lo, hi = estimate_advantage(successes, trials)
    return ExperimentReport(
        experiment="sindcca-sk",
        trials=trials,
        successes=successes,
        advantage_estimate=point,
        ci_low=lo,
        ci_high=hi,
        restriction_violations=violations,
        seed=seed,
        control=None,
        forged_acceptances=forgeries,
    )


# --- Built-in adversary zoo ------------------------------------------------


class ConstantAdversary:
    """Always outputs the same bit; the zero-advantage baseline."""

    def __init__(self, bit: int = 0):
        self.bit = bit

    def distinguish(self, trial: AnamorphicTrial) -> int:
        return self.bit

    def run_pk(self, session):
        session.challenge(
            bytes(session.profile.amsg_len), b"\xff" * session.profile.amsg_len
        )
        return self.bit

    def run_sk(self, session):
        session.challenge(
            bytes(session.profile.amsg_len), b"\xff" * session.profile.amsg_len, 0
        )
        return self.bit


class RandomGuesser:
    """Guesses with a coin from the trial RNG."""

    def distinguish(self, trial: AnamorphicTrial) -> int:
        return trial.rng.getrandbits(1)

    def run_pk(self, session):
        session.challenge(
            bytes(session.profile.amsg_len), b"\xff" * session.profile.amsg_len
        )
        return session.rng.getrandbits(1)

    def run_sk(self, session):
        session.challenge(
            bytes(session.profile.amsg_len), b"\xff" * session.profile.amsg_len, 7
        )
        return session.rng.getrandbits(1)


class RandomnessInspector:
    """Best-effort statistical dictator for the anamorphic games.

    Decapsulates oracle outputs with the surrendered dk and inspects the
    recovered randomness: submitted-message prefix, zero-byte excess, and a
    ciphertext-length check (catches the world-indicator control). Outputs
    'covert' only on strong evidence, 'real' otherwise.
    """

    queries = 4

    def distinguish(self, trial: AnamorphicTrial) -> int:
        profile = trial.profile
        if trial.scheme == "pk":
            kem, rho = pk_outer_kem(profile), profile.rho_pk
        else:
            kem, rho = sk_outer_kem(profile), profile.rho_sk
        pooled = bytearray()
        for q in range(self.queries):
            amsg = rand_bytes(trial.rng, profile.amsg_len)
            if trial.scheme == "pk":
                _, act = trial.oracle(amsg)
            else:
                _, act = trial.oracle(amsg, q)
            if len(act) != kem.ct_len:
                # format self-test: any length difference is itself a leak
                return act[-1] & 1 if len(act) == kem.ct_len + 1 else 1
            _, r_e = kem.decaps(trial.dk_keys, act)
            if r_e[: profile.amsg_len] == amsg:
                return 1
            pooled += r_e
        # expected zero-byte count is len(pooled)/256; fire far above it
        if pooled.count(0) > max(20, len(pooled) // 32):
            return 1
        return 0


class BestEffortSkDictator:
    """sIND-CCA SK adversary: decapsulates the challenge with dk but holds
    no double key, so the Feistel layer is opaque; answers deterministically."""

    def run_sk(self, session):
        profile = session.profile
        act = session.challenge(
            bytes(profile.amsg_len), b"\xff" * profile.amsg_len, 1000
        )
        kem = sk_outer_kem(profile)
        _, r_e = kem.decaps(session.kem_keys, act)
        # without k, r_e is an opaque permutation image; no test available
        return 0


class ReplayAdversary:
    """Queries the forbidden (ctr*, act*) pair; exists to prove the
    restriction bookkeeping works."""

    def run_sk(self, session):
        profile = session.profile
        act = session.challenge(
            bytes(profile.amsg_len), b"\xff" * profile.amsg_len, 42
        )
        try:
            session.adec(42, act)
        except AnamorphicError:
            pass
        return 0

    def run_pk(self, session):
        profile = session.profile
        act = session.challenge(
            bytes(profile.amsg_len), b"\xff" * profile.amsg_len
        )
        try:
            session.adec(act)
        except AnamorphicError:
            pass
        return 0


class TagMauler:
    """The generic mauling strategy against the PKAKEM decryption oracle:
    re-encapsulate the challenge's (c, tau') for every last-byte variant of
    the tag. Succeeds only against the weak-tag control."""

    def run_pk(self, session):
        profile = session.profile
        amsg0 = bytes(profile.amsg_len)
        amsg1 = b"\xff" * profile.amsg_len
        act_star = session.challenge(amsg0, amsg1)
        kem = pk_outer_kem(profile)
        _, r_e = kem.decaps(session.dk_keys, act_star)
        c, tau = r_e[: profile.pke_ct_len], r_e[profile.pke_ct_len :]
        for v in range(256):
            tau2 = tau[:-1] + bytes([v])
            if tau2 == tau:
                continue
            _, act2 = kem.encaps(session.ek, c + tau2)
            try:
                amsg = session.adec(act2)
            except AnamorphicError:
                continue
            return 0 if amsg == amsg0 else 1
        return 0


ADVERSARIES = {
    "constant": ConstantAdversary,
    "random": RandomGuesser,
    "stat": RandomnessInspector,
    "best-effort-sk": BestEffortSkDictator,
    "replay": ReplayAdversary,
    "tag-mauler": TagMauler,
}

EXPERIMENTS = {
    "anamorphic-pk": run_anamorphic_game_pk,
    "anamorphic-sk": run_anamorphic_game_sk,
    "sindcca-pk": run_sindcca_pk,
    "sindcca-sk": run_sindcca_sk,
}
