#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "shockmix/analysis.hpp"
#include "shockmix/lyapunov.hpp"

using namespace shockmix;

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(ClosedForm, SymmetricExclusionConstants) {
  const auto params = make_exact_params(0, Rational(1, 2));
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto s = uniform_configuration(n, 2);
    EXPECT_EQ(closed_form_drift_f1(s, params), Rational(1, static_cast<std::int64_t>(2 * (2 * n + 1))));
  }
}

TEST(ClosedForm, VoterDriftOfF2IsZeroAndF1IsNegative) {
  const auto params = make_exact_params(1);
  const auto s = Configuration::parse("3:1,2:5");
  EXPECT_EQ(closed_form_drift_f2(s, params), Rational(0));
  EXPECT_EQ(closed_form_drift_f1(s, params), Rational(-2, 5));
}

TEST(ClosedForm, RejectsHeaviside) {
  EXPECT_THROW(closed_form_drift_f1(Configuration(), make_params(0.5)), std::invalid_argument);
  EXPECT_THROW(closed_form_drift_f2(Configuration(), make_exact_params(0, Rational(1, 2))), std::invalid_argument);
}

TEST(VerifyDrift, ExactModeHasZeroResiduals) {
  const auto states = enumerate_states(10, 4);
  for (const auto& beta : {Rational(0), Rational(1, 3), Rational(1)})
    for (const auto& p : {Rational(1, 10), Rational(7, 10)}) {
      const auto reports = verify_drift(states, make_exact_params(beta, p));
      ASSERT_EQ(reports.size(), states.size());
      for (const auto& r : reports) {
        ASSERT_FALSE(r.flagged) << r.config.str();
        ASSERT_EQ(r.residual_f1, Rational(0));
        ASSERT_EQ(r.residual_f2, Rational(0));
      }
    }
}

TEST(VerifyDrift, FloatModeWithinTolerance) {
  const auto reports = verify_drift(enumerate_states(10, 4), make_params(0.37, 0.81));
  for (const auto& r : reports) EXPECT_FALSE(r.flagged) << r.config.str();
}

TEST(VerifyDrift, ZeroToleranceFlagsRoundingInFloatMode) {
  // A negative tolerance can never be met, so every report is flagged.
  const auto reports = verify_drift({Configuration::parse("1:1")}, make_params(0.5), -1.0);
  EXPECT_TRUE(reports.front().flagged);
}

TEST(VerifyDrift, SecondMomentsMatchEnumeration) {
  const auto params = make_exact_params(Rational(1, 2), Rational(1, 4));
  const auto s = Configuration::parse("2:1,1:3");
  const auto r = verify_drift({s}, params).front();
  EXPECT_EQ(r.second_moment_f1, exact_second_moment(s, params, [](const Configuration& x) { return f1(x); }));
  EXPECT_EQ(r.second_moment_f2, exact_second_moment(s, params, [](const Configuration& x) { return f2(x); }));
}

TEST(States, EnumerationCountMatchesCompositions) {
  for (std::size_t size : {4u, 9u, 12u})
    for (std::size_t blocks : {1u, 2u, 5u}) {
      std::uint64_t expected = 0;
      for (std::uint64_t n = 1; n <= blocks; ++n)
        for (std::uint64_t total = 2 * n; total <= size; ++total) expected += binomial(total - 1, 2 * n - 1);
      EXPECT_EQ(enumerate_states(size, blocks).size(), expected) << size << " " << blocks;
    }
  EXPECT_TRUE(enumerate_states(1, 3).empty());
  EXPECT_TRUE(enumerate_states(10, 0).empty());
}

TEST(States, RandomConfigurationRespectsBounds) {
  CounterRng rng(2, 0);
  for (int i = 0; i < 1000; ++i) {
    const auto s = random_configuration(rng, 6, 4);
    ASSERT_GE(s.num_blocks(), 1u);
    ASSERT_LE(s.num_blocks(), 6u);
    for (auto [n, m] : s.blocks()) {
      ASSERT_LE(n, 4u);
      ASSERT_LE(m, 4u);
    }
  }
  EXPECT_THROW(random_configuration(rng, 0, 3), std::invalid_argument);
}

TEST(LyapunovFunctionText, ParseAndEvaluate) {
  EXPECT_EQ(LyapunovFunction::parse("f1").kind, LyapunovKind::F1);
  EXPECT_EQ(LyapunovFunction::parse("phi:0.95").alpha, 0.95);
  EXPECT_EQ(LyapunovFunction::parse("psi:1/2").alpha, 0.5);
  for (const char* bad : {"phi", "psi", "f3", "phi:0", "phi:-1", "f1:2", "psi:x"})
    EXPECT_THROW(LyapunovFunction::parse(bad), std::invalid_argument) << bad;
  const auto s = Configuration::parse("2:2");
  EXPECT_DOUBLE_EQ(LyapunovFunction::parse("f2")(s), 8.0);
  EXPECT_DOUBLE_EQ(LyapunovFunction::parse("phi:0.5")(s), std::sqrt(8.0));
  EXPECT_DOUBLE_EQ(LyapunovFunction::parse("psi:1")(s), 0.25);
  EXPECT_TRUE(std::isinf(LyapunovFunction::parse("psi:1")(Configuration())));
}

TEST(TransformedDrift, PhiWithUnitExponentIsTheF2Drift) {
  const auto params = make_params(0.2, 0.7);
  const auto s = Configuration::parse("3:1,1:2");
  LyapunovFunction phi{LyapunovKind::Phi, 1.0};
  EXPECT_NEAR(transformed_drift(s, params, phi), closed_form_drift_f2(s, params), 1e-12);
}

TEST(TransformedDrift, PhiIsASupermartingaleOnLargeSymmetricStates) {
  const LyapunovFunction phi{LyapunovKind::Phi, 0.95};
  const auto params = make_params(0.5, 0.5);
  // Independent evaluation of the same enumeration gives -0.3627 here.
  EXPECT_NEAR(transformed_drift(Configuration::parse("50:50"), params, phi), -0.3627, 2e-3);
  EXPECT_LT(transformed_drift(Configuration::parse("100:100"), params, phi), 0);
  // On small states the concavity gain is too weak.
  EXPECT_GT(transformed_drift(Configuration::parse("2:2"), params, phi), 0);
}

TEST(TransformedDrift, PsiIsInfiniteWhenHeavisideIsReachable) {
  const LyapunovFunction psi{LyapunovKind::Psi, 1.0};
  EXPECT_TRUE(std::isinf(transformed_drift(Configuration::parse("1:1"), make_params(1.0), psi)));
  EXPECT_TRUE(std::isfinite(transformed_drift(Configuration::parse("3:3,2:2"), make_params(1.0), psi)));
  EXPECT_THROW(transformed_drift(Configuration(), make_params(1.0), psi), std::invalid_argument);
}

TEST(Foster, ErgodicExclusionWithF2) {
  const auto v = check_foster(make_params(0, 0.9), LyapunovFunction::parse("f2"), 12, FosterCriterion::Ergodic);
  EXPECT_EQ(v.verdict, Evidence::For);
  EXPECT_EQ(v.n_exceptional, 0u);
  EXPECT_LT(v.max_drift, 0);
  EXPECT_EQ(v.n_states, enumerate_states(12, 6).size());
}

TEST(Foster, TransientExclusionWithF1HasUnitJumps) {
  const auto v = check_foster(make_params(0, 0.4), LyapunovFunction::parse("f1"), 12, FosterCriterion::Transient2);
  EXPECT_EQ(v.verdict, Evidence::For);
  EXPECT_DOUBLE_EQ(v.jump_bound, 1.0);
  EXPECT_TRUE(v.jumps_bounded);
  EXPECT_GE(v.min_drift, 0.1);
}

TEST(Foster, VoterF2FailsBoundedJumps) {
  const auto v = check_foster(make_params(1.0), LyapunovFunction::parse("f2"), 12, FosterCriterion::Transient2);
  EXPECT_FALSE(v.jumps_bounded);
  EXPECT_GT(v.jump_bound, v.jump_bound_inner);
  EXPECT_EQ(v.verdict, Evidence::Against);
  // Zero drift everywhere: every state violates drift >= epsilon.
  EXPECT_EQ(v.n_exceptional, v.n_states);
}

TEST(Foster, HybridCasesWithF1) {
  for (const auto& params : {make_params(0.8, 0.3), make_params(0.5, 0.5)}) {
    const auto v = check_foster(params, LyapunovFunction::parse("f1"), 12, FosterCriterion::Ergodic);
    EXPECT_EQ(v.verdict, Evidence::For) << params.beta;
  }
}

TEST(Foster, PhiOnSmallSymmetricStatesIsAgainst) {
  const auto v =
      check_foster(make_params(0.5, 0.5), LyapunovFunction::parse("phi:0.95"), 12, FosterCriterion::Ergodic);
  EXPECT_EQ(v.verdict, Evidence::Against);
  EXPECT_EQ(v.max_exceptional_size, 12u);
}

TEST(Foster, RecurrenceAndMomentCriteria) {
  const auto rec = check_foster(make_params(1.0), LyapunovFunction::parse("f2"), 10, FosterCriterion::Recurrent);
  EXPECT_EQ(rec.verdict, Evidence::For);
  EXPECT_EQ(rec.n_exceptional, 0u);
  const auto mom = check_foster(make_params(0, 0.9), LyapunovFunction::parse("f1"), 10, FosterCriterion::Moment);
  EXPECT_EQ(mom.verdict, Evidence::For);
}

TEST(Foster, TransientOneNeedsAnEscapeState) {
  // EP(0.4): f1^-1 decreases in expectation away from small states.
  const auto v = check_foster(make_params(0, 0.4), LyapunovFunction::parse("psi:1"), 10, FosterCriterion::Transient1);
  EXPECT_TRUE(v.has_escape_state);
}

TEST(Foster, Preconditions) {
  const auto g = LyapunovFunction::parse("f1");
  EXPECT_THROW(check_foster(make_params(1.0), g, 3, FosterCriterion::Ergodic), std::invalid_argument);
  FosterOptions bad;
  bad.epsilon = -1;
  EXPECT_THROW(check_foster(make_params(1.0), g, 8, FosterCriterion::Ergodic, bad), std::invalid_argument);
  EXPECT_THROW(parse_criterion("ergodic"), std::invalid_argument);
  EXPECT_EQ(parse_criterion("tr2"), FosterCriterion::Transient2);
  EXPECT_EQ(to_string(Evidence::For), "evidence-for");
}

TEST(SecondMoment, MatchesExactEnumeration) {
  const std::vector<Configuration> family{Configuration::parse("1:1"), Configuration::parse("2:3"),
                                          Configuration::parse("1:2,3:1"), Configuration::parse("4:1,1:1,2:2")};
  const auto scan = second_moment_scan(family);
  ASSERT_EQ(scan.points.size(), 4u);
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto exact =
        exact_second_moment(family[i], make_exact_params(1), [](const Configuration& x) { return f2(x); });
    EXPECT_NEAR(scan.points[i].second_moment, to_double(exact), 1e-9 * to_double(exact));
  }
}

TEST(SecondMoment, SingleBlockScalesAsFourthPower) {
  std::vector<Configuration> family;
  for (std::int64_t l : {16, 32, 64, 128, 256}) family.push_back(Configuration::from_blocks({{l, l}}));
  EXPECT_NEAR(second_moment_scan(family).fit.slope, 4.0, 0.1);
}

TEST(SecondMoment, Preconditions) {
  EXPECT_THROW(second_moment_scan({Configuration::parse("1:1")}), std::invalid_argument);
  EXPECT_THROW(extremal_configuration(1), std::invalid_argument);
}

TEST(SecondMoment, ExtremalFamilyShape) {
  // ceil(N^{5/4}): 4 -> 6, 16 -> 32 exactly, 81 -> 243 exactly.
  EXPECT_EQ(extremal_configuration(4).zeros(1), 6u);
  EXPECT_EQ(extremal_configuration(16).zeros(1), 32u);
  EXPECT_EQ(extremal_configuration(81).ones(81), 243u);
  const auto s = extremal_configuration(5);
  EXPECT_EQ(s.num_blocks(), 5u);
  EXPECT_EQ(s.zeros(2), 1u);
  EXPECT_EQ(s.ones(1), 1u);
}

TEST(Quadrant, KernelMatchesVoterChainOnOneBlock) {
  for (std::int64_t n = 1; n <= 4; ++n)
    for (std::int64_t m = 1; m <= 4; ++m) {
      std::map<std::pair<std::int64_t, std::int64_t>, Rational> walk, chain;
      Rational walk_absorb(0), chain_absorb(0);
      for (const auto& st : quadrant_kernel(n, m)) (st.absorbing ? walk_absorb : walk[{st.n, st.m}]) += st.probability;
      const auto law = transition_distribution(Configuration::from_blocks({{n, m}}), make_exact_params(1));
      for (const auto& e : law.entries) {
        if (e.successor.is_heaviside()) {
          chain_absorb += e.probability;
        } else {
          ASSERT_EQ(e.successor.num_blocks(), 1u);
          chain[{static_cast<std::int64_t>(e.successor.zeros(1)), static_cast<std::int64_t>(e.successor.ones(1))}] +=
              e.probability;
        }
      }
      EXPECT_EQ(walk, chain) << n << "," << m;
      EXPECT_EQ(walk_absorb, chain_absorb);
    }
  EXPECT_THROW(quadrant_kernel(0, 1), std::invalid_argument);
}
