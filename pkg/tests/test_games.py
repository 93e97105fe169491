"""Advantage estimation and the security-game harness."""

import random

import pytest

from anakem.core import AnamorphicError
from anakem.games import (
    ADVERSARIES,
    ConstantAdversary,
    EXPERIMENTS,
    RandomGuesser,
    ReplayAdversary,
    SindccaPkSession,
    TagMauler,
    estimate_advantage,
    run_anamorphic_game_pk,
    run_anamorphic_game_sk,
    run_sindcca_pk,
    run_sindcca_sk,
    wilson_interval,
)

# Wilson 95% intervals recomputed independently (z = 1.959963984540054)
# and frozen to 1e-9.
WILSON_ORACLE = [
    # (successes, trials, lo, hi)
    (1000, 2000, 0.478107950751, 0.521892049249),
    (2000, 2000, 0.998082952719, 1.0),
    (0, 2000, 0.0, 0.001917047281),
    (1100, 2000, 0.528121622764, 0.571686672508),
    (60, 100, 0.502002586791, 0.690598713568),
    (1500, 2000, 0.730555610784, 0.768485865575),
]

ADVANTAGE_ORACLE = [
    # (successes, trials, point, adv_lo, adv_hi)
    (1000, 2000, 0.0, 0.0, 0.043784098498),
    (2000, 2000, 1.0, 0.996165905437, 1.0),
    (0, 2000, 1.0, 0.996165905437, 1.0),
    (1100, 2000, 0.1, 0.056243245528, 0.143373345015),
    (60, 100, 0.2, 0.004005173582, 0.381197427135),
    (1500, 2000, 0.5, 0.461111221568, 0.536971731150),
]


@pytest.mark.parametrize("s,n,lo,hi", WILSON_ORACLE)
def test_wilson_frozen(s, n, lo, hi):
    got_lo, got_hi = wilson_interval(s, n)
    assert got_lo == pytest.approx(lo, abs=1e-9)
    assert got_hi == pytest.approx(hi, abs=1e-9)


@pytest.mark.parametrize("s,n,pt,lo,hi", ADVANTAGE_ORACLE)
def test_estimate_advantage_frozen(s, n, pt, lo, hi):
    got_pt, got_lo, got_hi = estimate_advantage(s, n)
    assert got_pt == pytest.approx(pt, abs=1e-9)
    assert got_lo == pytest.approx(lo, abs=1e-9)
    assert got_hi == pytest.approx(hi, abs=1e-9)


def test_wilson_validates():
    with pytest.raises(ValueError):
        wilson_interval(-1, 10)
    with pytest.raises(ValueError):
        wilson_interval(11, 10)
    with pytest.raises(ValueError):
        wilson_interval(0, 0)


def test_trials_floor(profile):
    for runner in EXPERIMENTS.values():
        with pytest.raises(ValueError):
            runner(profile, ConstantAdversary(), 99)


def test_constant_adversary_zero_advantage(profile):
    # balanced world allocation makes this exact, not approximate
    for runner in (run_anamorphic_game_pk, run_anamorphic_game_sk):
        rep = runner(profile, ConstantAdversary(), 100, seed=1)
        assert rep.successes == 50
        assert rep.advantage_estimate == 0.0
        assert rep.ci_low == 0.0


def test_report_reproducible(profile):
    a = run_anamorphic_game_sk(profile, RandomGuesser(), 100, seed=7)
    b = run_anamorphic_game_sk(profile, RandomGuesser(), 100, seed=7)
    assert a.to_dict() == b.to_dict()
    assert a.seed == 7
    assert len(a.lines()) == 9


def test_controls_detected_at_small_scale(profile):
    # the leaky variants must be detectable even at the 100-trial floor
    stat = ADVERSARIES["stat"]
    rep = run_anamorphic_game_pk(profile, stat(), 100, seed=2, control="zero-pad")
    assert rep.advantage_estimate > 0.9
    rep = run_anamorphic_game_sk(profile, stat(), 100, seed=3, control="no-mask-no-ipf")
    assert rep.advantage_estimate > 0.9
    rep = run_anamorphic_game_sk(profile, stat(), 100, seed=4, control="world-indicator")
    assert rep.advantage_estimate >= 0.95


def test_replay_restrictions_counted(profile):
    rep = run_sindcca_sk(profile, ReplayAdversary(), 100, seed=5)
    assert rep.restriction_violations == 100
    assert rep.successes == 0  # violating trials can never count
    rep = run_sindcca_pk(profile, ReplayAdversary(), 100, seed=6)
    assert rep.restriction_violations == 100
    assert rep.successes == 0


def test_sindcca_sk_rejects_controls(profile):
    with pytest.raises(ValueError):
        run_sindcca_sk(profile, ConstantAdversary(), 100, control="weak-tag")


def test_tag_mauler_forges_against_weak_tag(profile):
    rep = run_sindcca_pk(profile, TagMauler(), 100, seed=8, control="weak-tag")
    assert rep.forged_acceptances >= 1
    assert rep.advantage_estimate > 0.9  # forgery reveals the challenge bit
    assert rep.restriction_violations == 0


def test_tag_mauler_blocked_by_full_tag(profile):
    # single honest session instead of a full game: all 255 tag variants
    # must be rejected and the adversary learns nothing
    session = SindccaPkSession(profile, random.Random(9), None, beta=1)
    guess = TagMauler().run_pk(session)
    assert session.forgeries == 0
    assert session.violations == 0
    assert guess == 0  # falls through to the default answer


def test_sindcca_sessions_hide_beta(profile):
    # the challenge bit must not be recoverable from public session state
    session = SindccaPkSession(profile, random.Random(10), None, beta=1)
    public = {k: v for k, v in vars(session).items() if not k.startswith("_")}
    assert "beta" not in public


def test_adversary_exception_counts_as_wrong(profile):
    class Crasher:
        def distinguish(self, trial):
            raise RuntimeError("boom")

    rep = run_anamorphic_game_pk(profile, Crasher(), 100, seed=11)
    assert rep.successes == 0


def test_registry_complete():
    assert set(EXPERIMENTS) == {"anamorphic-pk", "anamorphic-sk", "sindcca-pk", "sindcca-sk"}
    assert set(ADVERSARIES) == {
        "constant",
        "random",
        "stat",
        "best-effort-sk",
        "replay",
        "tag-mauler",
    }
