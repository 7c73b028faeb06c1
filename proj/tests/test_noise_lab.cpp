#include <cmath>

#include "support.hpp"

using namespace lgi;

namespace {

const EvolutionConfig kOptimum{0.0, 15.0};

TEST(RandomStream, Xoshiro256StarStarReferenceOutputs) {
    RandomStream r = RandomStream::from_state({1, 2, 3, 4});
    EXPECT_EQ(r(), 11520u);
    EXPECT_EQ(r(), 0u);
    EXPECT_EQ(r(), 1509978240u);
    EXPECT_EQ(r(), 1215971899390074240u);
}

TEST(RandomStream, SplitMix64ReferenceOutput) {
    EXPECT_EQ(splitmix64_mix(kGoldenGamma), 0xE220A8397B1DCDAFULL);
}

// Golden values from an independent Python transcription of the generator.
TEST(RandomStream, NormalGoldenValues) {
    RandomStream r(42);
    EXPECT_DOUBLE_EQ(r.normal(), -1.6132237513849157);
    EXPECT_DOUBLE_EQ(r.normal(), 0.7816920450573488);
    EXPECT_DOUBLE_EQ(r.normal(), 0.015871293375984856);
    RandomStream child = RandomStream::child(7, 3);
    EXPECT_DOUBLE_EQ(child.normal(), -0.0712432757746545);
}

TEST(RandomStream, NormalMoments) {
    RandomStream r(5);
    double sum = 0.0;
    double sq = 0.0;
    constexpr int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double g = r.normal();
        sum += g;
        sq += g * g;
    }
    EXPECT_NEAR(sum / n, 0.0, 0.01);
    EXPECT_NEAR(sq / n, 1.0, 0.01);
}

TEST(PerturbIntensity, Examples) {
    RandomStream r(99);
    EXPECT_EQ(perturb_intensity(1.0, {0.0, 99, 0.0}, r), 1.0);
    EXPECT_EQ(perturb_intensity(0.0, {0.02, 99, 0.0}, r), 0.0);
    RandomStream g(42);
    EXPECT_DOUBLE_EQ(perturb_intensity(1.0, {0.02, 42, 0.0}, g), 0.9677355249723016);
    RandomStream again(42);
    EXPECT_DOUBLE_EQ(perturb_intensity(1.0, {0.02, 42, 0.0}, again), 0.9677355249723016);
}

TEST(PerturbIntensity, ClampsAndValidates) {
    RandomStream r(1);
    for (int i = 0; i < 1000; ++i) ASSERT_GE(perturb_intensity(0.0, {0.0, 1, 0.5}, r), 0.0);
    EXPECT_THROW(perturb_intensity(-0.1, {}, r), InvalidInput);
}

TEST(NoiseConfig, Validation) {
    EXPECT_THROW(validate(NoiseConfig{-0.1, 1, 0.0}), ConfigError);
    EXPECT_THROW(validate(NoiseConfig{0.1, 1, -1.0}), ConfigError);
    EXPECT_NO_THROW(validate(NoiseConfig{}));
}

TEST(SimulateRun, ZeroNoiseCollapsesToPipeline) {
    std::mt19937_64 gen(31);
    RandomStream r(3);
    for (int i = 0; i < 500; ++i) {
        const CoherencyMatrix rho = lgi::testing::random_state(gen);
        const EvolutionConfig cfg{lgi::testing::random_angle(gen), lgi::testing::random_angle(gen)};
        const KStat noisy = simulate_run(rho, cfg, {0.0, 3, 0.0}, r);
        const KStat clean = k_statistic(rho, cfg);
        ASSERT_EQ(noisy.k, clean.k);
        ASSERT_EQ(noisy.violated, clean.violated);
    }
    EXPECT_NEAR(simulate_run(initial_state(DiagonalState{}), kOptimum, {0.0, 1, 0.0}, r).k, 1.5, 1e-12);
}

TEST(SimulateRun, DeterministicForSeed) {
    const CoherencyMatrix rho = initial_state(DiagonalState{});
    RandomStream a(77);
    RandomStream b(77);
    for (int i = 0; i < 100; ++i) ASSERT_EQ(simulate_run(rho, kOptimum, {0.05, 77, 0.01}, a).k,
                                            simulate_run(rho, kOptimum, {0.05, 77, 0.01}, b).k);
}

TEST(SimulateRun, MonteCarloMeanAndOvershoot) {
    const CoherencyMatrix rho = initial_state(DiagonalState{});
    RandomStream r(2021);
    const TrialStats s = repeat_trials(rho, kOptimum, {0.02, 2021, 0.0}, 10000, r);
    EXPECT_NEAR(s.mean_k, 1.5, 3.0 * s.std_error());
    const auto above = std::count_if(s.samples.begin(), s.samples.end(), [](double k) { return k > 1.5; });
    const double fraction = static_cast<double>(above) / static_cast<double>(s.n_trials);
    EXPECT_GE(fraction, 0.4);
    EXPECT_LE(fraction, 0.6);
}

TEST(SimulateRun, UnbiasedAtOptimumForSmallNoise) {
    for (double sigma : {0.005, 0.01, 0.05}) {
        RandomStream r(11);
        const TrialStats s = repeat_trials(initial_state(UnpolarizedState{}), kOptimum, {sigma, 11, 0.0}, 10000, r);
        EXPECT_NEAR(s.mean_k, 1.5, 3.0 * s.std_error()) << "sigma " << sigma;
    }
}

TEST(SimulateRun, ErrorPolicyReportsDegenerateTables) {
    // Enormous additive noise on tiny intensities makes empty tables likely.
    const CoherencyMatrix rho = initial_state(DiagonalState{});
    const NoiseConfig wild{0.0, 5, 5.0};
    RandomStream r(5);
    bool threw = false;
    for (int i = 0; i < 200 && !threw; ++i) {
        try {
            simulate_run(rho, kOptimum, wild, r, DegeneratePolicy::error);
        } catch (const DegenerateSample&) {
            threw = true;
        }
    }
    EXPECT_TRUE(threw);

    RandomStream a(5);
    const TrialStats resampled = repeat_trials(rho, kOptimum, wild, 200, a, DegeneratePolicy::resample);
    EXPECT_EQ(resampled.n_trials, 200u);
    EXPECT_GT(resampled.degenerate, 0u);

    RandomStream b(5);
    const TrialStats dropped = repeat_trials(rho, kOptimum, wild, 200, b, DegeneratePolicy::error);
    EXPECT_EQ(dropped.n_trials + dropped.degenerate, 200u);
    EXPECT_EQ(dropped.samples.size(), dropped.n_trials);
    EXPECT_GT(dropped.degenerate, 0u);
}

TEST(RepeatTrials, ZeroNoiseHasNoSpread) {
    std::mt19937_64 gen(32);
    for (int i = 0; i < 20; ++i) {
        const CoherencyMatrix rho = lgi::testing::random_state(gen);
        const EvolutionConfig cfg{lgi::testing::random_angle(gen), lgi::testing::random_angle(gen)};
        RandomStream r(1);
        const TrialStats s = repeat_trials(rho, cfg, {0.0, 1, 0.0}, 5, r);
        EXPECT_EQ(s.std_k, 0.0);
        EXPECT_EQ(s.n_trials, 5u);
        EXPECT_NEAR(s.mean_k, k_statistic(rho, cfg).k, 1e-15);
    }
}

TEST(RepeatTrials, FiveRepeatsGiveNonzeroDeterministicBars) {
    const CoherencyMatrix rho = initial_state(DiagonalState{});
    RandomStream a(8);
    RandomStream b(8);
    const TrialStats s = repeat_trials(rho, kOptimum, {0.02, 8, 0.0}, 5, a);
    const TrialStats t = repeat_trials(rho, kOptimum, {0.02, 8, 0.0}, 5, b);
    EXPECT_EQ(s.n_trials, 5u);
    EXPECT_GT(s.std_k, 0.0);
    EXPECT_EQ(s.samples, t.samples);
    EXPECT_EQ(s.std_k, t.std_k);
    EXPECT_DOUBLE_EQ(s.std_error(), s.std_k / std::sqrt(5.0));
}

TEST(RepeatTrials, SpreadScalesLinearlyWithSigma) {
    const CoherencyMatrix rho = initial_state(DiagonalState{});
    RandomStream a(12);
    RandomStream b(13);
    const double s1 = repeat_trials(rho, kOptimum, {0.01, 12, 0.0}, 10000, a).std_k;
    const double s2 = repeat_trials(rho, kOptimum, {0.02, 13, 0.0}, 10000, b).std_k;
    EXPECT_NEAR(s2 / s1, 2.0, 0.15 * 2.0);
}

TEST(RepeatTrials, RejectsZeroTrials) {
    RandomStream r(1);
    EXPECT_THROW(repeat_trials(initial_state(DiagonalState{}), kOptimum, {}, 0, r), ConfigError);
}

TEST(NoiseForState, PartialPreparationIsNoisier) {
    const NoiseConfig base{0.02, 1, 0.0};
    EXPECT_DOUBLE_EQ(noise_for_state(PartiallyPolarizedState{0.8, 0.0}, base).sigma_rel, 0.04);
    EXPECT_DOUBLE_EQ(noise_for_state(PartiallyPolarizedState{0.8, 0.0}, base, 3.0).sigma_rel, 0.06);
    EXPECT_DOUBLE_EQ(noise_for_state(DiagonalState{}, base).sigma_rel, 0.02);
}

}  // namespace
