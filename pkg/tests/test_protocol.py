"""Encryption, recipient decryption, and the authority's decryption pass."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from translucent import (
    Ciphertext,
    EscrowAttempt,
    decrypt_escrow,
    decrypt_recipient,
    encrypt,
    gen_escrow_keys,
    gen_recipient_keys,
    keypair_from_secret,
    make_escrow_keys,
)
from translucent.errors import (
    IndexOutOfRangeError,
    NonceOutOfRangeError,
    SessionKeyOutOfGroupError,
)
from translucent.escrow import PRESETS

from helpers import element_order, scan_inverse, slow_mod_exp


@pytest.fixture(scope="module")
def toy_setup(toy23):
    secret, params = make_escrow_keys(toy23, t=3, x_l=9, ell=2)
    pair = keypair_from_secret(toy23, 6)
    return toy23, secret, params, pair


class TestRecipientKeys:
    def test_golden_keypair(self, toy23):
        assert slow_mod_exp(5, 6, 23) == 8
        pair = keypair_from_secret(toy23, 6)
        assert (pair.x_b, pair.y_b) == (6, 8)

    def test_exponent_one_gives_generator(self, toy23):
        assert keypair_from_secret(toy23, 1).y_b == toy23.g

    def test_generated_exponents_in_range(self, toy23):
        for seed in range(1000):
            pair = gen_recipient_keys(toy23, random.Random(seed))
            assert 1 <= pair.x_b <= toy23.rho - 2
            assert pair.y_b == slow_mod_exp(toy23.g, pair.x_b, toy23.rho)

    def test_out_of_range_secret_rejected(self, toy23):
        for bad in (0, 22, 23):
            with pytest.raises(ValueError):
                keypair_from_secret(toy23, bad)


class TestEncrypt:
    def test_golden_vector(self, toy_setup):
        glob, _, params, pair = toy_setup
        # oracle: c1 = 5^3, c2 = 13 * 8^3, c3 = 13 * 11^3 (all mod 23)
        assert slow_mod_exp(5, 3, 23) == 10
        assert 13 * slow_mod_exp(8, 3, 23) % 23 == 9
        assert 13 * slow_mod_exp(11, 3, 23) % 23 == 7
        ct = encrypt(glob, pair.y_b, params, i=2, s=13, k=3)
        assert (ct.c1, ct.c2, ct.c3, ct.i) == (10, 9, 7, 2)

    def test_golden_vector_other_slot(self, toy_setup):
        glob, _, params, pair = toy_setup
        assert 13 * slow_mod_exp(18, 3, 23) % 23 == 8
        ct = encrypt(glob, pair.y_b, params, i=1, s=13, k=3)
        assert (ct.c1, ct.c2, ct.c3, ct.i) == (10, 9, 8, 1)

    def test_index_bounds(self, toy_setup):
        glob, _, params, pair = toy_setup
        for bad in (0, 4, -1):
            with pytest.raises(IndexOutOfRangeError):
                encrypt(glob, pair.y_b, params, i=bad, s=13, k=3)

    def test_session_key_bounds(self, toy_setup):
        glob, _, params, pair = toy_setup
        for bad in (0, 23, -5):
            with pytest.raises(SessionKeyOutOfGroupError):
                encrypt(glob, pair.y_b, params, i=2, s=bad, k=3)

    def test_nonce_bounds(self, toy_setup):
        glob, _, params, pair = toy_setup
        # k = 0 would transmit s in the clear; k = rho-1 is also out of contract
        for bad in (0, 22, 23):
            with pytest.raises(NonceOutOfRangeError):
                encrypt(glob, pair.y_b, params, i=2, s=13, k=bad)


class TestDecryptRecipient:
    def test_golden_vector(self, toy_setup):
        glob, _, _, pair = toy_setup
        # oracle: 10^6 = 6, 9 * inv(6) = 13
        assert slow_mod_exp(10, 6, 23) == 6
        assert 9 * scan_inverse(6, 23) % 23 == 13
        ct = Ciphertext(c1=10, c2=9, c3=7, i=2)
        assert decrypt_recipient(glob, pair.x_b, ct) == 13

    def test_third_component_is_ignored(self, toy_setup):
        glob, _, _, pair = toy_setup
        for c3 in range(1, 23):
            ct = Ciphertext(c1=10, c2=9, c3=c3, i=2)
            assert decrypt_recipient(glob, pair.x_b, ct) == 13

    def test_round_trip_at_nonce_edge(self, toy_setup):
        glob, _, params, pair = toy_setup
        ct = encrypt(glob, pair.y_b, params, i=3, s=19, k=glob.rho - 2)
        assert decrypt_recipient(glob, pair.x_b, ct) == 19

    def test_round_trip_toy_exhaustive_sampling(self, toy_setup):
        glob, _, params, pair = toy_setup
        rng = random.Random(101)
        for _ in range(1000):
            s = rng.randrange(1, glob.rho)
            k = rng.randrange(1, glob.rho - 1)
            i = rng.randrange(1, params.t + 1)
            ct = encrypt(glob, pair.y_b, params, i, s, k)
            assert decrypt_recipient(glob, pair.x_b, ct) == s

    def test_round_trip_demo512(self, demo512):
        rng = random.Random(55)
        secret, params = gen_escrow_keys(demo512, 4, rng)
        pair = gen_recipient_keys(demo512, rng)
        for _ in range(100):
            s = rng.randrange(1, demo512.rho)
            k = rng.randrange(1, demo512.rho - 1)
            i = rng.randrange(1, 5)
            ct = encrypt(demo512, pair.y_b, params, i, s, k)
            assert decrypt_recipient(demo512, pair.x_b, ct) == s


class TestDecryptEscrow:
    def test_golden_match(self, toy_setup):
        glob, secret, _, _ = toy_setup
        # oracle: 10^9 = 20, 7 * inv(20) = 13
        assert slow_mod_exp(10, 9, 23) == 20
        assert 7 * scan_inverse(20, 23) % 23 == 13
        attempt = decrypt_escrow(glob, secret, Ciphertext(c1=10, c2=9, c3=7, i=2))
        assert attempt == EscrowAttempt(attempted=True, candidate=13)

    def test_label_mismatch_skipped(self, toy_setup):
        glob, secret, _, _ = toy_setup
        attempt = decrypt_escrow(glob, secret, Ciphertext(c1=10, c2=9, c3=8, i=1))
        assert attempt.attempted is False
        assert attempt.candidate is None

    def test_forced_attempt_on_mismatch_gives_garbage(self, toy_setup):
        glob, secret, _, _ = toy_setup
        assert 8 * scan_inverse(20, 23) % 23 == 5
        attempt = decrypt_escrow(
            glob, secret, Ciphertext(c1=10, c2=9, c3=8, i=1), force_attempt=True
        )
        assert attempt == EscrowAttempt(attempted=True, candidate=5)
        assert attempt.candidate != 13

    def test_attempts_exactly_on_matching_label(self, toy_setup):
        glob, secret, params, pair = toy_setup
        rng = random.Random(3)
        for _ in range(200):
            i = rng.randrange(1, params.t + 1)
            ct = encrypt(glob, pair.y_b, params, i, rng.randrange(1, 23), rng.randrange(1, 22))
            attempt = decrypt_escrow(glob, secret, ct)
            assert attempt.attempted == (i == secret.ell)

    def test_mismatch_candidate_closed_form(self, toy_setup):
        # forcing the attempt on slot i yields s * U^((i - ell) * k), which
        # equals s exactly when (i - ell) * k vanishes mod ord(U)
        glob, secret, params, pair = toy_setup
        order = element_order(glob.u, glob.rho)
        rng = random.Random(9)
        for _ in range(300):
            i = rng.randrange(1, params.t + 1)
            s = rng.randrange(1, glob.rho)
            k = rng.randrange(1, glob.rho - 1)
            ct = encrypt(glob, pair.y_b, params, i, s, k)
            attempt = decrypt_escrow(glob, secret, ct, force_attempt=True)
            shift = ((i - secret.ell) * k) % order
            expected = s * slow_mod_exp(glob.u, shift, glob.rho) % glob.rho
            assert attempt.candidate == expected
            assert (attempt.candidate == s) == (shift == 0)

    def test_honest_match_recovers_for_any_slot(self, toy23):
        rng = random.Random(12)
        for ell in (1, 2, 3):
            secret, params = make_escrow_keys(toy23, t=3, x_l=rng.randrange(1, 22), ell=ell)
            pair = gen_recipient_keys(toy23, rng)
            s = rng.randrange(1, 23)
            ct = encrypt(toy23, pair.y_b, params, ell, s, rng.randrange(1, 22))
            assert decrypt_escrow(toy23, secret, ct).candidate == s


class TestEscrowAttemptInvariant:
    def test_candidate_presence_must_match_flag(self):
        with pytest.raises(ValueError):
            EscrowAttempt(attempted=True, candidate=None)
        with pytest.raises(ValueError):
            EscrowAttempt(attempted=False, candidate=5)


class TestRoundTripProperty:
    @given(
        s=st.integers(min_value=1, max_value=PRESETS["test64"].rho - 1),
        k=st.integers(min_value=1, max_value=PRESETS["test64"].rho - 2),
        i=st.integers(min_value=1, max_value=4),
        x_b=st.integers(min_value=1, max_value=PRESETS["test64"].rho - 2),
    )
    @settings(max_examples=30)
    def test_recipient_always_recovers(self, test64, s, k, i, x_b):
        secret, params = make_escrow_keys(test64, t=4, x_l=12345, ell=2)
        pair = keypair_from_secret(test64, x_b)
        ct = encrypt(test64, pair.y_b, params, i, s, k)
        assert decrypt_recipient(test64, pair.x_b, ct) == s
