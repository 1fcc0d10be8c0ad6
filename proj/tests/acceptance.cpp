// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Runs at the reference parameters with 1000 realizations.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ddmag/csv.hpp"
#include "ddmag/experiments.hpp"
#include "ddmag/field.hpp"
#include "ddmag/metrics.hpp"
#include "ddmag/polarization.hpp"
#include "su2_oracle.hpp"

using namespace ddmag;

namespace {

constexpr double kPi = std::numbers::pi;

int failures = 0;

void report(const char* name, bool pass, const std::string& detail) {
    std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", name, detail.c_str());
    std::fflush(stdout);
    if (!pass) {
        ++failures;
    }
}

std::string fmt(const char* format, auto... args) {
    char buffer[512];
    std::snprintf(buffer, sizeof buffer, format, args...);
    return buffer;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

SimulationConfig reference() {
    SimulationConfig c; // L = 500 m, L_c = 3 m, sigma = 100 rad, 1000 realizations
    c.threads = 0;
    return c;
}

struct Curve {
    std::vector<double> separation;
    std::vector<double> fidelity;
    std::vector<double> stderr_;
};

Curve dd_curve(const SweepResult& r, double fraction) {
    Curve out;
    const auto sep = r.column("separation");
    const auto frac = r.column("placement_fraction");
    const auto dd = r.column("dd_enabled");
    const auto f = r.column("fidelity");
    const auto e = r.column("fidelity_stderr");
    for (std::size_t i = 0; i < sep.size(); ++i) {
        if (dd[i] == 1.0 && frac[i] == fraction) {
            out.separation.push_back(sep[i]);
            out.fidelity.push_back(f[i]);
            out.stderr_.push_back(e[i]);
        }
    }
    return out;
}

double combined(double a, double b) { return std::sqrt(a * a + b * b); }

void no_dd_depolarization() {
    SimulationConfig c = reference();
    c.fiber.dd_enabled = false;
    const auto start = std::chrono::steady_clock::now();
    const SweepResult r = single_run(c);
    const double elapsed = seconds_since(start);
    const double f = r.column("fidelity")[0];
    const double e = r.column("fidelity_stderr")[0];
    report("no-DD depolarization", std::abs(f - 0.5) <= 0.02 && elapsed < 30.0,
           fmt("fidelity %.4f +/- %.4f (target 0.50 +/- 0.02), %.2f s (target < 30 s)", f, e, elapsed));
}

void dd_threshold_and_placement(const SweepResult& fig3, const SweepResult& spot) {
    const Curve ideal_spot = dd_curve(spot, 0.0);
    const double f010 = ideal_spot.fidelity[0];
    const double f013 = ideal_spot.fidelity[1];
    const Curve ideal = dd_curve(fig3, 0.0);
    const double f3 = ideal.fidelity.back();

    std::string violations;
    int count = 0;
    for (double fraction : default_placement_fractions()) {
        const Curve c = dd_curve(fig3, fraction);
        for (std::size_t i = 0; i + 1 < c.fidelity.size(); ++i) {
            const double rise = c.fidelity[i + 1] - c.fidelity[i];
            if (rise > 2.0 * combined(c.stderr_[i], c.stderr_[i + 1])) {
                ++count;
                if (count <= 3) {
                    violations += fmt(" [frac %.2f: y %.4f->%.4f F %.3f->%.3f]", fraction, c.separation[i],
                                      c.separation[i + 1], c.fidelity[i], c.fidelity[i + 1]);
                }
            }
        }
    }
    const bool pass = f010 > 0.95 && f013 > 0.95 && f3 < 0.60 && count == 0;
    report("DD preservation threshold", pass,
           fmt("F(y=0.10)=%.4f F(y=0.13)=%.4f (targets > 0.95), F(y=3)=%.4f (target < 0.60), "
               "%d rises beyond 2 sigma",
               f010, f013, f3, count) +
               violations);

    const std::vector<double> fractions{0.04, 0.08, 0.12};
    int misses = 0;
    double worst = 0.0;
    double worst_y = 0.0;
    std::size_t points = 0;
    const Curve a = dd_curve(fig3, fractions[0]);
    const Curve b = dd_curve(fig3, fractions[1]);
    const Curve c = dd_curve(fig3, fractions[2]);
    for (std::size_t i = 0; i < a.fidelity.size(); ++i) {
        ++points;
        const Curve* curves[] = {&a, &b, &c};
        for (int p = 0; p < 3; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                const double gap = std::abs(curves[p]->fidelity[i] - curves[q]->fidelity[i]);
                const double allowed = 2.0 * combined(curves[p]->stderr_[i], curves[q]->stderr_[i]);
                if (gap > allowed) {
                    ++misses;
                    if (gap / allowed > worst) {
                        worst = gap / allowed;
                        worst_y = a.separation[i];
                    }
                }
            }
        }
    }
    report("placement-error insensitivity", misses == 0,
           fmt("%d of %zu curve pairs outside 2x combined stderr; worst %.1fx at y=%.4f m", misses, 3 * points,
               worst, worst_y));
}

void detuning_envelope_check() {
    SimulationConfig c = reference();
    c.noise.total_phase_std = 0.0;
    c.realizations = 1;
    const std::vector<double> detunings = default_detunings();
    const SweepResult r = sweep_signal_vs_detuning(c, detunings, 600);
    const auto d = r.column("detuning_fraction");
    const auto ratio = r.column("ratio");
    double worst_excess = -1.0;
    double at_zero = 0.0;
    std::vector<double> positive;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] == 0.0) {
            at_zero = ratio[i];
            continue;
        }
        worst_excess = std::max(worst_excess, std::abs(ratio[i]) - detuning_envelope(d[i], 600));
        if (d[i] > 0.0) {
            positive.push_back(ratio[i]);
        }
    }
    const int roots = count_zero_crossings(positive, 1e-9);
    report("detuning envelope", worst_excess <= 0.01 && at_zero == 1.0 && roots >= 60,
           fmt("%zu points, max |ratio| - envelope = %.3g (limit 0.01), ratio(0) = %.17g, "
               "%d zero crossings on (0, 0.05] (target >= 60)",
               d.size(), worst_excess, at_zero, roots));
}

void linearity_check() {
    const std::vector<double> lengths = default_lengths();
    const std::vector<double> fractions{0.0, 0.12};
    const SweepResult r = sweep_rotation_vs_length(reference(), lengths, fractions);
    const auto len = r.column("length");
    const auto frac = r.column("placement_fraction");
    const auto mean = r.column("mean_toggled_azimuth");
    const auto ideal = r.column("ideal_toggled_azimuth");
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> y_ideal;
    for (std::size_t i = 0; i < len.size(); ++i) {
        if (frac[i] == 0.12) {
            x.push_back(len[i]);
            y.push_back(mean[i]);
            y_ideal.push_back(ideal[i]);
        }
    }
    const LinearFit fit = fit_line(x, y);
    const LinearFit ideal_fit = fit_line(x, y_ideal);
    const double deviation = std::abs(fit.slope / ideal_fit.slope - 1.0);
    report("linearity under placement error", deviation <= 0.03 && fit.r_squared > 0.99,
           fmt("slope %.6g rad/m vs ideal %.6g rad/m (%.2f%% off, limit 3%%), R^2 = %.6f", fit.slope,
               ideal_fit.slope, 100 * deviation, fit.r_squared));
}

void bandwidth_check() {
    SimulationConfig c = reference();
    c.realizations = 200;
    const std::vector<double> fractions{0.0, 0.12};
    const std::vector<double> detunings = default_heatmap_detunings();
    const SweepResult r = sweep_heatmap(c, fractions, detunings);
    const auto frac = r.column("placement_fraction");
    const auto value = r.column("normalized_rotation");
    double widths[2] = {0.0, 0.0};
    for (int k = 0; k < 2; ++k) {
        std::vector<double> row;
        for (std::size_t i = 0; i < frac.size(); ++i) {
            if (frac[i] == fractions[k]) {
                row.push_back(value[i]);
            }
        }
        widths[k] = half_max_width(detunings, row);
    }
    const double change = std::abs(widths[1] / widths[0] - 1.0);
    report("bandwidth non-widening", change <= 0.15,
           fmt("half-max width %.6g at fraction 0.12 vs %.6g at 0 (%.2f%% change, limit 15%%)", widths[1],
               widths[0], 100 * change));
}

void verdet_desk_checks() {
    const double silica = faraday_rotation_angle(1.1, 0.2, 3.5);
    const double degrees = silica * 180.0 / kPi;
    const double terbium = faraday_rotation_angle(-32.0, 10e-6, 4.0);
    const bool pass = std::abs(silica - 0.77) < 1e-12 && std::abs(degrees - 45.0) <= 2.0 &&
                      std::abs(std::abs(terbium) - 1.28e-3) < 1e-15;
    report("Verdet desk checks", pass,
           fmt("1.1*0.2*3.5 = %.4f rad = %.3f deg (45 +/- 2); |-32*10e-6*4| = %.3g rad "
               "(a quoted 128e-6 rad does not follow from these inputs)",
               silica, degrees, std::abs(terbium)));
}

void oracle_check() {
    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> angle(-4 * kPi, 4 * kPi);
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_int_distribution<int> length(1, 60);
    std::normal_distribution<double> gauss;
    double worst = 0.0;
    constexpr int kSequences = 2000;
    for (int s = 0; s < kSequences; ++s) {
        Eigen::Vector3d start(gauss(rng), gauss(rng), gauss(rng));
        start.normalize();
        PolarizationState state = PolarizationState::from_bloch(start);
        std::vector<AxisRotation> sequence;
        const int n = length(rng);
        for (int i = 0; i < n; ++i) {
            const int p = pick(rng);
            if (p == 3) {
                state = apply_pi_pulse_x(state);
                sequence.push_back({Axis::X, kPi});
            } else {
                const AxisRotation rot{static_cast<Axis>(p), angle(rng)};
                state = apply_rotation(state, rot);
                sequence.push_back(rot);
            }
        }
        const Eigen::Vector3d expected = su2::evolve(start, sequence);
        worst = std::max(worst, (state.bloch() - expected).cwiseAbs().maxCoeff());
    }
    report("SU(2) oracle equivalence", worst <= 1e-9,
           fmt("%d random sequences, max componentwise difference %.3g (limit 1e-9)", kSequences, worst));
}

std::string rows_only(const std::string& csv) {
    std::string out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        const std::size_t end = csv.find('\n', pos);
        const std::string line = csv.substr(pos, end - pos);
        if (!line.starts_with("# ")) {
            out += line + '\n';
        }
        pos = end == std::string::npos ? csv.size() : end + 1;
    }
    return out;
}

std::string without_timestamp(const std::string& csv) {
    std::string out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        const std::size_t end = csv.find('\n', pos);
        const std::string line = csv.substr(pos, end - pos);
        if (!line.starts_with("# timestamp: ")) {
            out += line + '\n';
        }
        pos = end == std::string::npos ? csv.size() : end + 1;
    }
    return out;
}

void determinism_check() {
    SimulationConfig c = reference();
    c.realizations = 200;
    c.fiber.length = 100.0;
    const std::vector<double> separations{0.05, 0.1, 0.3};
    const std::vector<double> fractions{0.0, 0.08};
    std::vector<std::string> outputs;
    for (unsigned threads : {1u, 1u, 2u, 8u}) {
        c.threads = threads;
        outputs.push_back(to_csv(sweep_fidelity_vs_separation(c, separations, fractions)));
    }
    bool same = true;
    for (const std::string& o : outputs) {
        same = same && rows_only(o) == rows_only(outputs[0]) && without_timestamp(o) == without_timestamp(outputs[0]);
    }
    report("determinism", same,
           fmt("%zu runs at 1, 1, 2, 8 threads: CSV %s apart from the timestamp line", outputs.size(),
               same ? "byte-identical" : "DIFFERS"));
}

} // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();

    no_dd_depolarization();

    const SweepResult fig3 =
        sweep_fidelity_vs_separation(reference(), default_separations(), default_placement_fractions());
    const std::vector<double> spot_separations{0.10, 0.13};
    const std::vector<double> spot_fractions{0.0};
    const SweepResult spot = sweep_fidelity_vs_separation(reference(), spot_separations, spot_fractions);
    dd_threshold_and_placement(fig3, spot);

    detuning_envelope_check();
    linearity_check();
    bandwidth_check();
    verdet_desk_checks();
    oracle_check();
    determinism_check();

    std::printf("%d criteria failed; total %.1f s\n", failures, seconds_since(start));
    return failures == 0 ? 0 : 1;
}
