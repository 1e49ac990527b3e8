"""Tests for best responses, payoff bounds, and equilibria under noisy
observation of the leader's actions."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _generators import (
    random_dist,
    random_informative_channel,
    random_mixed_payoff,
    random_payoff,
    random_revealing_channel,
    random_uninformative_channel,
)
from _oracles import (
    bisect_root,
    golden_min,
    policy_grid_max,
    refined_vhat_min,
    vhat_scalar,
)

from noisyleader import (
    BinaryDist,
    BRComponent,
    Channel,
    FollowerPolicy,
    GameClass,
    PayoffMatrix,
    Relevance,
    ZeroProbabilityObservation,
    best_response,
    best_response_component,
    classify,
    component_matrix,
    expected_payoff,
    indifference_point,
    leader_equilibrium,
    minmax_pure,
    nash,
    observation_relevance,
    payoff_bounds,
    payoff_v,
    posterior,
    s_value,
    u_hat,
    v_hat,
    v_hat_policy,
)

unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


class TestChannel:
    def test_det(self, fig_w):
        assert abs(fig_w.det - 0.6) < 1e-15

    def test_rejects_row_stochastic_only(self):
        # rows sum to 1 but columns do not
        with pytest.raises(ValueError, match="column-stochastic"):
            Channel(0.7, 0.3, 0.6, 0.4)

    def test_rejects_entries_outside_unit_interval(self):
        with pytest.raises(ValueError):
            Channel(1.2, -0.2, -0.2, 1.2)

    @given(unit, unit)
    @settings(max_examples=200)
    def test_det_identity(self, w11, w12):
        """w11 - w12 and w22 - w21 agree for every valid channel."""
        w = Channel(w11, w12, 1.0 - w11, 1.0 - w12)
        assert abs((w.w11 - w.w12) - (w.w22 - w.w21)) < 1e-12
        assert abs(w.det - (w.w11 - w.w12)) == 0.0


class TestComponentMatrix:
    def test_figure_game_obs1(self, fig_u, fig_w):
        got = component_matrix(fig_u, fig_w, 1)
        expected = ((-6.4, 1.2), (1.6, -0.4))
        for got_row, want_row in zip(got.as_rows(), expected):
            for g, e in zip(got_row, want_row):
                assert g == pytest.approx(e, abs=1e-12)

    def test_identity_channel_selects_column(self, fig_u):
        w = Channel(1.0, 0.0, 0.0, 1.0)
        assert component_matrix(fig_u, w, 1).as_rows() == ((-8.0, 0.0), (2.0, 0.0))

    def test_uninformative_channel_halves(self, fig_u):
        w = Channel(0.5, 0.5, 0.5, 0.5)
        for i in (1, 2):
            assert component_matrix(fig_u, w, i).as_rows() == ((-4.0, 3.0), (1.0, -1.0))


class TestSValue:
    def test_figure_example(self, fig_u, fig_w):
        got = s_value(fig_u, fig_w, BinaryDist.from_p1(4.0 / 9.0), 1)
        assert abs(got - (-8.0 / 3.0)) < 1e-12

    def test_zero_at_indifference_point(self, fig_u, fig_w):
        assert abs(s_value(fig_u, fig_w, BinaryDist.from_p1(1.0 / 6.0), 1)) < 1e-12

    @given(unit, st.floats(-10, 10, allow_nan=False))
    @settings(max_examples=100)
    def test_constant_game_always_zero(self, p1, c):
        u = PayoffMatrix(c, c, c, c)
        w = Channel(0.8, 0.2, 0.2, 0.8)
        for i in (1, 2):
            assert s_value(u, w, BinaryDist.from_p1(p1), i) == 0.0


class TestBestResponse:
    def test_figure_components(self, fig_u, fig_w):
        p = BinaryDist.from_p1(4.0 / 9.0)
        assert best_response_component(fig_u, fig_w, p, 1) is BRComponent.PURE_A2
        at_bp = BinaryDist.from_p1(1.0 / 6.0)
        assert best_response_component(fig_u, fig_w, at_bp, 1) is BRComponent.ANY_MIXED

    def test_figure_pairs(self, fig_u, fig_w):
        assert best_response(fig_u, fig_w, BinaryDist.from_p1(0.5)) == (
            BRComponent.PURE_A2,
            BRComponent.PURE_A1,
        )
        assert best_response(fig_u, fig_w, BinaryDist.from_p1(1.0)) == (
            BRComponent.PURE_A2,
            BRComponent.PURE_A2,
        )

    def test_uninformative_channel_components_agree(self, rng):
        for _ in range(100):
            u = random_payoff(rng)
            w = random_uninformative_channel(rng)
            p = random_dist(rng)
            pair = best_response(u, w, p)
            assert pair[0] == pair[1]

    def test_constant_game_any_mixed(self):
        u = PayoffMatrix(3.0, 3.0, 3.0, 3.0)
        w = Channel(0.6, 0.3, 0.4, 0.7)
        assert best_response(u, w, BinaryDist.from_p1(0.4)) == (
            BRComponent.ANY_MIXED,
            BRComponent.ANY_MIXED,
        )

    def test_decomposition_beats_policy_grid(self, rng):
        """The analytic best response must match a 201x201 brute-force search
        over follower policies."""
        for _ in range(100):
            u = random_payoff(rng)
            w = random_informative_channel(rng, min_det=0.0)
            p1 = float(rng.uniform(0.0, 1.0))
            analytic = v_hat(u, w, BinaryDist.from_p1(p1))
            brute = policy_grid_max(u.as_rows(), w.as_rows(), p1)
            assert abs(analytic - brute) < 1e-9

    def test_posterior_reformulation(self, rng):
        """Classifying by the commitment-weighted sign statistic agrees with
        classifying by the posterior-expected payoff difference."""
        checked = 0
        while checked < 200:
            u = random_payoff(rng)
            w = random_informative_channel(rng, min_det=0.0)
            p = random_dist(rng)
            for i in (1, 2):
                marginal = w.prob(i, 1) * p.p1 + w.prob(i, 2) * p.p2
                if marginal <= 1e-9:
                    continue
                s = s_value(u, w, p, i)
                if abs(s) < 1e-6 and s != 0.0:
                    continue  # stay off the tolerance boundary
                post = posterior(w, p, i)
                diff = expected_payoff(u, BinaryDist.from_p1(1.0), post) - expected_payoff(
                    u, BinaryDist.from_p1(0.0), post
                )
                component = best_response_component(u, w, p, i)
                if component is BRComponent.PURE_A1:
                    assert diff > 0.0
                elif component is BRComponent.PURE_A2:
                    assert diff < 0.0
                else:
                    assert abs(diff * marginal) <= 1e-9
                checked += 1


class TestPosterior:
    def test_figure_posterior_equals_ne_leader_strategy(self, fig_w):
        post = posterior(fig_w, BinaryDist.from_p1(1.0 / 6.0), 1)
        assert abs(post.p1 - 4.0 / 9.0) < 1e-12

    def test_uninformative_channel_returns_prior(self, rng):
        for _ in range(50):
            w = random_uninformative_channel(rng)
            p = random_dist(rng)
            for obs in (1, 2):
                if w.prob(obs, 1) == 0.0:
                    continue
                post = posterior(w, p, obs)
                assert abs(post.p1 - p.p1) < 1e-12

    def test_identity_channel_reveals_action(self):
        w = Channel(1.0, 0.0, 0.0, 1.0)
        post = posterior(w, BinaryDist.from_p1(0.3), 1)
        assert post.p1 == 1.0

    def test_impossible_observation_raises(self):
        w = Channel(1.0, 0.0, 0.0, 1.0)
        with pytest.raises(ZeroProbabilityObservation):
            posterior(w, BinaryDist.from_p1(0.0), 1)

    def test_bayes_consistency(self, rng):
        """Marginal-weighted posteriors recover the prior."""
        for _ in range(100):
            w = random_informative_channel(rng, min_det=0.0)
            p = random_dist(rng)
            mix = 0.0
            for obs in (1, 2):
                marginal = w.prob(obs, 1) * p.p1 + w.prob(obs, 2) * p.p2
                if marginal == 0.0:
                    continue
                mix += marginal * posterior(w, p, obs).p1
            assert abs(mix - p.p1) < 1e-9


class TestPayoffV:
    def test_figure_cross_policy(self, fig_u, fig_w):
        policy = FollowerPolicy.pure(2, 1)
        got = payoff_v(fig_u, fig_w, policy, BinaryDist.from_p1(0.5))
        assert abs(got - 2.2) < 1e-12

    @given(unit, unit)
    @settings(max_examples=100)
    def test_observation_independent_policy_marginalizes(self, q1, p1):
        u = PayoffMatrix(-8.0, 6.0, 2.0, -2.0)
        w = Channel(0.8, 0.2, 0.2, 0.8)
        q = BinaryDist.from_p1(q1)
        policy = FollowerPolicy(q, q)
        p = BinaryDist.from_p1(p1)
        assert abs(payoff_v(u, w, policy, p) - expected_payoff(u, q, p)) < 1e-9

    def test_constant_game(self):
        u = PayoffMatrix(4.0, 4.0, 4.0, 4.0)
        w = Channel(0.7, 0.1, 0.3, 0.9)
        policy = FollowerPolicy(BinaryDist.from_p1(0.3), BinaryDist.from_p1(0.9))
        assert abs(payoff_v(u, w, policy, BinaryDist.from_p1(0.2)) - 4.0) < 1e-12


class TestIndifferencePoint:
    def test_figure_values(self, fig_u, fig_w):
        assert abs(indifference_point(fig_u, fig_w, 1) - 1.0 / 6.0) < 1e-12
        assert abs(indifference_point(fig_u, fig_w, 2) - 16.0 / 21.0) < 1e-12

    def test_absent_for_constant_game(self, fig_w):
        u = PayoffMatrix(2.0, 2.0, 2.0, 2.0)
        assert indifference_point(u, fig_w, 1) is None

    def test_matches_sign_change_of_s(self, rng):
        """Closed form against a bisection root of the sign statistic."""
        found = 0
        while found < 50:
            u = random_mixed_payoff(rng)
            w = random_informative_channel(rng)
            for i in (1, 2):
                x = indifference_point(u, w, i)
                if x is None or not 0.001 < x < 0.999:
                    continue

                def f(p1, i=i):
                    return s_value(u, w, BinaryDist.from_p1(p1), i)

                if f(0.0) * f(1.0) >= 0.0:
                    continue
                root = bisect_root(f, 0.0, 1.0)
                assert abs(root - x) < 1e-9
                found += 1

    def test_sandwich_and_ordering(self, rng):
        """For mixed games the static optimum sits between the two
        indifference points, ordered by the channel determinant's sign."""
        for _ in range(300):
            u = random_mixed_payoff(rng)
            w = random_informative_channel(rng, min_det=0.0)
            p_star = nash(u).leader_strategy.p1
            x1 = indifference_point(u, w, 1)
            x2 = indifference_point(u, w, 2)
            assert x1 is not None and x2 is not None
            assert min(x1, x2) - 1e-9 <= p_star <= max(x1, x2) + 1e-9
            if w.det > 0:
                assert x1 <= x2 + 1e-12
            elif w.det < 0:
                assert x2 <= x1 + 1e-12

    def test_uninformative_channel_collapses_to_ne(self, rng):
        for _ in range(50):
            u = random_mixed_payoff(rng)
            w = random_uninformative_channel(rng)
            p_star = nash(u).leader_strategy.p1
            for i in (1, 2):
                x = indifference_point(u, w, i)
                if x is not None:
                    assert abs(x - p_star) < 1e-9


class TestVHat:
    def test_figure_values(self, fig_u, fig_w):
        assert abs(v_hat(fig_u, fig_w, BinaryDist.from_p1(1.0 / 6.0)) - 11.0 / 3.0) < 1e-12
        assert abs(v_hat(fig_u, fig_w, BinaryDist.from_p1(16.0 / 21.0)) - 22.0 / 21.0) < 1e-12
        assert abs(v_hat(fig_u, fig_w, BinaryDist.from_p1(1.0)) - 2.0) < 1e-12

    def test_matches_scalar_oracle(self, rng):
        for _ in range(100):
            u = random_payoff(rng)
            w = random_informative_channel(rng, min_det=0.0)
            p1 = float(rng.uniform(0.0, 1.0))
            assert abs(v_hat(u, w, BinaryDist.from_p1(p1)) - vhat_scalar(u.as_rows(), w.as_rows(), p1)) < 1e-12

    def test_policy_attains_v_hat(self, rng):
        for _ in range(200):
            u = random_payoff(rng)
            w = random_informative_channel(rng, min_det=0.0)
            p = random_dist(rng)
            policy = v_hat_policy(u, w, p)
            assert abs(payoff_v(u, w, policy, p) - v_hat(u, w, p)) < 1e-9

    def test_monotone_outside_the_breakpoints(self, rng):
        for _ in range(100):
            u = random_mixed_payoff(rng)
            w = random_informative_channel(rng, min_det=0.0)
            x1 = indifference_point(u, w, 1)
            x2 = indifference_point(u, w, 2)
            lo, hi = min(x1, x2), max(x1, x2)
            samples = 20
            previous = None
            for k in range(samples + 1):
                p1 = lo * k / samples
                value = v_hat(u, w, BinaryDist.from_p1(p1))
                if previous is not None:
                    assert value <= previous + 1e-9  # non-increasing up to lo
                previous = value
            previous = None
            for k in range(samples + 1):
                p1 = min(1.0, hi + (1.0 - hi) * k / samples)
                value = v_hat(u, w, BinaryDist.from_p1(p1))
                if previous is not None:
                    assert value >= previous - 1e-9  # non-decreasing past hi
                previous = value


class TestLeaderEquilibrium:
    def test_figure_instance(self, fig_u, fig_w):
        eq = leader_equilibrium(fig_u, fig_w)
        assert abs(eq.leader_commitment.p1 - 16.0 / 21.0) < 1e-12
        assert abs(eq.value - 22.0 / 21.0) < 1e-12
        assert eq.indifferent_observation == 2
        assert eq.follower_policy.on_obs_a1 == BinaryDist.from_p1(0.0)
        assert eq.follower_policy.on_obs_a2 == BinaryDist.from_p1(1.0)

    def test_degenerate_game_commits_pure(self, fig_w):
        u = PayoffMatrix(1.0, 0.0, 0.0, 0.0)
        eq = leader_equilibrium(u, fig_w)
        assert eq.value == 0.0
        assert eq.value == minmax_pure(u)
        assert eq.leader_commitment.p1 in (0.0, 1.0)

    def test_fully_revealing_channel_gives_pure_minmax(self, rng):
        for _ in range(100):
            u = random_payoff(rng)
            w = random_revealing_channel(rng)
            eq = leader_equilibrium(u, w)
            assert abs(eq.value - minmax_pure(u)) < 1e-9

    def test_value_is_v_hat_at_commitment(self, rng):
        for _ in range(200):
            u = random_payoff(rng)
            w = random_informative_channel(rng, min_det=0.0)
            eq = leader_equilibrium(u, w)
            assert abs(eq.value - v_hat(u, w, eq.leader_commitment)) < 1e-9

    def test_policy_components_pass_the_sign_test(self, rng):
        for _ in range(200):
            u = random_payoff(rng)
            w = random_informative_channel(rng, min_det=0.0)
            eq = leader_equilibrium(u, w)
            for obs in (1, 2):
                component = best_response_component(u, w, eq.leader_commitment, obs)
                chosen = eq.follower_policy.component(obs)
                if component is BRComponent.PURE_A1:
                    assert chosen.p1 == 1.0
                elif component is BRComponent.PURE_A2:
                    assert chosen.p1 == 0.0

    def test_matches_refined_grid_oracle(self, rng):
        """Candidate-set minimization against a 10001-point scan with
        golden-section refinement of the winning bracket."""
        for _ in range(25):
            u = random_mixed_payoff(rng)
            w = random_informative_channel(rng, min_det=0.0)
            eq = leader_equilibrium(u, w)
            _, oracle_min = refined_vhat_min(u.as_rows(), w.as_rows())
            assert abs(eq.value - oracle_min) < 1e-7

    def test_posterior_at_equilibrium_recovers_ne(self, rng):
        for _ in range(200):
            u = random_mixed_payoff(rng)
            w = random_informative_channel(rng)
            eq = leader_equilibrium(u, w)
            if eq.indifferent_observation is None:
                continue
            post = posterior(w, eq.leader_commitment, eq.indifferent_observation)
            assert abs(post.p1 - nash(u).leader_strategy.p1) < 1e-9


class TestPayoffBounds:
    def test_figure_chain(self, fig_u, fig_w):
        chain = payoff_bounds(fig_u, fig_w, BinaryDist.from_p1(4.0 / 9.0))
        assert abs(chain.ne_value - (-2.0 / 9.0)) < 1e-12
        assert abs(chain.u_hat_value - (-2.0 / 9.0)) < 1e-9
        assert abs(chain.upper_bound - (2.0 * 4.0 / 9.0 + 6.0 * 5.0 / 9.0)) < 1e-12

    def test_chain_ordering(self, rng):
        for _ in range(500):
            u = random_payoff(rng)
            w = random_informative_channel(rng, min_det=0.0)
            chain = payoff_bounds(u, w, random_dist(rng))
            assert chain.ne_value <= chain.u_hat_value + 1e-9
            assert chain.u_hat_value <= chain.v_hat_value + 1e-9
            assert chain.v_hat_value <= chain.upper_bound + 1e-9

    def test_uninformative_channel_collapses_middle(self, rng):
        for _ in range(100):
            u = random_payoff(rng)
            w = random_uninformative_channel(rng)
            chain = payoff_bounds(u, w, random_dist(rng))
            assert abs(chain.u_hat_value - chain.v_hat_value) < 1e-9

    def test_revealing_channel_collapses_top(self, rng):
        for _ in range(100):
            u = random_payoff(rng)
            w = random_revealing_channel(rng)
            chain = payoff_bounds(u, w, random_dist(rng))
            assert abs(chain.v_hat_value - chain.upper_bound) < 1e-9


class TestObservationRelevance:
    def test_figure_is_beneficial(self, fig_u, fig_w):
        report = observation_relevance(fig_u, fig_w)
        assert report.relevance is Relevance.BENEFICIAL
        assert report.reasons == ("mixed_game_with_informative_channel",)
        assert not report.fully_revealing
        assert abs(report.ne_value - (-2.0 / 9.0)) < 1e-12
        assert abs(report.equilibrium_value - 22.0 / 21.0) < 1e-12

    def test_uninformative_channel_is_irrelevant(self, fig_u):
        report = observation_relevance(fig_u, Channel(0.5, 0.5, 0.5, 0.5))
        assert report.relevance is Relevance.IRRELEVANT
        assert "uninformative_channel" in report.reasons
        assert abs(report.ne_value - report.equilibrium_value) < 1e-9

    def test_degenerate_game_is_irrelevant(self, fig_w):
        report = observation_relevance(PayoffMatrix(1.0, 0.0, 0.0, 0.0), fig_w)
        assert report.relevance is Relevance.IRRELEVANT
        assert "degenerate_game" in report.reasons
        assert report.ne_value == report.equilibrium_value == 0.0

    def test_fully_revealing_flag(self, fig_u):
        report = observation_relevance(fig_u, Channel(1.0, 0.0, 0.0, 1.0))
        assert report.fully_revealing
        assert abs(report.equilibrium_value - minmax_pure(fig_u)) < 1e-9


def test_golden_section_reference_beats_naive_grid(fig_u, fig_w):
    """Sanity check on the test oracle itself: refinement reaches the kink the
    uniform grid cannot hit."""
    x, fx = golden_min(
        lambda p1: vhat_scalar(fig_u.as_rows(), fig_w.as_rows(), p1), 0.7, 0.8
    )
    assert abs(x - 16.0 / 21.0) < 1e-10
    assert abs(fx - 22.0 / 21.0) < 1e-12
