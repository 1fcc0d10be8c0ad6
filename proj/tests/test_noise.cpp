#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ddmag/errors.hpp"
#include "ddmag/noise.hpp"
#include "ddmag/seeding.hpp"

using namespace ddmag;

namespace {

struct Moments {
    double mean = 0.0;
    double std = 0.0;
};

Moments moments(const std::vector<double>& v) {
    Moments m;
    for (double x : v) {
        m.mean += x;
    }
    m.mean /= static_cast<double>(v.size());
    for (double x : v) {
        m.std += (x - m.mean) * (x - m.mean);
    }
    m.std = std::sqrt(m.std / static_cast<double>(v.size() - 1));
    return m;
}

NoiseSpec paper_noise(std::uint64_t seed) {
    NoiseSpec spec;
    spec.coherence_length = 3.0;
    spec.total_phase_std = 100.0;
    spec.seed = seed;
    return spec;
}

} // namespace

TEST_CASE("noiseless profile is all zeros") {
    NoiseSpec spec = paper_noise(9);
    spec.total_phase_std = 0.0;
    const PhaseProfile p = sample_profile(spec, 500.0);
    REQUIRE(p.phases.size() == 167);
    for (double phase : p.phases) {
        CHECK(phase == 0.0);
    }
}

TEST_CASE("segment count covers the fiber") {
    // ceil(500 / 3) by direct count: 166 segments reach 498 m, the 167th covers the rest.
    int count = 0;
    for (double end = 0.0; end < 500.0; end += 3.0) {
        ++count;
    }
    CHECK(count == 167);
    const PhaseProfile p = sample_profile(paper_noise(1), 500.0);
    CHECK(p.phases.size() == 167);
    CHECK(p.segment_length == 3.0);
    CHECK(p.covered_length() >= 500.0);

    CHECK(sample_profile(paper_noise(1), 6.0).phases.size() == 2);
    CHECK(sample_profile(paper_noise(1), 0.5).phases.size() == 1);
}

TEST_CASE("per-segment spread is total / sqrt(N)") {
    std::vector<double> draws;
    for (std::uint64_t i = 0; draws.size() < 100000; ++i) {
        const PhaseProfile p = sample_profile(paper_noise(derive_seed(77, Stream::Noise, i)), 500.0);
        draws.insert(draws.end(), p.phases.begin(), p.phases.end());
    }
    const double expected = 100.0 / std::sqrt(167.0); // 7.738...
    CHECK(std::abs(moments(draws).std / expected - 1.0) < 0.02);
}

TEST_CASE("segment phases have zero mean") {
    std::vector<double> draws;
    for (std::uint64_t i = 0; draws.size() < 1000000; ++i) {
        const PhaseProfile p = sample_profile(paper_noise(derive_seed(5, Stream::Noise, i)), 500.0);
        draws.insert(draws.end(), p.phases.begin(), p.phases.end());
    }
    const double segment_std = 100.0 / std::sqrt(167.0);
    CHECK(std::abs(moments(draws).mean) < 3.0 * segment_std / 1e3);
}

TEST_CASE("total accumulated phase has the configured spread") {
    std::vector<double> totals;
    for (std::uint64_t i = 0; i < 20000; ++i) {
        const PhaseProfile p = sample_profile(paper_noise(derive_seed(31, Stream::Noise, i)), 500.0);
        double sum = 0.0;
        for (double phase : p.phases) {
            sum += phase;
        }
        totals.push_back(sum);
    }
    CHECK(std::abs(moments(totals).std / 100.0 - 1.0) < 0.05);
}

TEST_CASE("profiles are deterministic per seed") {
    const PhaseProfile a = sample_profile(paper_noise(42), 500.0);
    const PhaseProfile b = sample_profile(paper_noise(42), 500.0);
    const PhaseProfile c = sample_profile(paper_noise(43), 500.0);
    CHECK(a.phases == b.phases);
    CHECK(a.phases != c.phases);
}

TEST_CASE("derived seeds separate streams and indices") {
    CHECK(derive_seed(1, Stream::Noise, 0) != derive_seed(1, Stream::Lattice, 0));
    CHECK(derive_seed(1, Stream::Noise, 0) != derive_seed(1, Stream::Noise, 1));
    CHECK(derive_seed(1, Stream::Noise, 0) != derive_seed(2, Stream::Noise, 0));
    static_assert(derive_seed(1, Stream::Noise, 5) == derive_seed(1, Stream::Noise, 5));
}

TEST_CASE("phase_at looks up the covering segment") {
    PhaseProfile p;
    p.segment_length = 3.0;
    p.phases = {0.5, -1.25, 2.0};
    CHECK(phase_at(p, 0.0) == 0.5);
    CHECK(phase_at(p, 3.0 * 1.5) == -1.25);
    CHECK(phase_at(p, std::nextafter(9.0, 0.0)) == 2.0);
    CHECK_THROWS_AS(phase_at(p, 9.0), std::out_of_range);
    CHECK_THROWS_AS(phase_at(p, -1e-12), std::out_of_range);
}

TEST_CASE("invalid noise parameters are rejected") {
    NoiseSpec spec = paper_noise(0);
    spec.coherence_length = 0.0;
    CHECK_THROWS_AS(sample_profile(spec, 10.0), InvalidArgument);
    spec = paper_noise(0);
    spec.total_phase_std = -1.0;
    CHECK_THROWS_AS(sample_profile(spec, 10.0), InvalidArgument);
    spec = paper_noise(0);
    spec.wavelength = 0.0;
    CHECK_THROWS_AS(sample_profile(spec, 10.0), InvalidArgument);
    CHECK_THROWS_AS(sample_profile(paper_noise(0), 0.0), InvalidArgument);
}
