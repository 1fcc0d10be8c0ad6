#include "ddmag/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ddmag/errors.hpp"

namespace ddmag {

SignalStrength signal_strength(double theta, double theta_max) {
    if (theta_max == 0.0) {
        throw DegenerateError("signal strength needs a non-zero reference rotation");
    }
    return {theta, theta_max, theta / theta_max};
}

double detuning_envelope(double detuning_fraction, int cycles) {
    if (cycles < 1) {
        throw InvalidArgument("field cycle count must be at least 1");
    }
    if (detuning_fraction == 0.0) {
        throw DegenerateError("detuning envelope is undefined on resonance");
    }
    const double envelope = 1.0 / (2.0 * std::numbers::pi * cycles * std::abs(detuning_fraction));
    return std::min(1.0, envelope);
}

int count_sign_changes(std::span<const double> values) {
    int changes = 0;
    double previous = 0.0;
    for (double v : values) {
        if (v == 0.0) {
            continue;
        }
        if (previous != 0.0 && (v > 0.0) != (previous > 0.0)) {
            ++changes;
        }
        previous = v;
    }
    return changes;
}

int count_zero_crossings(std::span<const double> values, double tolerance) {
    if (!(tolerance >= 0.0)) {
        throw InvalidArgument("zero tolerance must be non-negative");
    }
    int roots = 0;
    int previous_sign = 0;
    bool in_zero_run = false;
    for (double v : values) {
        if (std::abs(v) <= tolerance) {
            if (!in_zero_run) {
                ++roots;
                in_zero_run = true;
            }
            continue;
        }
        const int sign = v > 0.0 ? 1 : -1;
        if (!in_zero_run && previous_sign != 0 && sign != previous_sign) {
            ++roots;
        }
        in_zero_run = false;
        previous_sign = sign;
    }
    return roots;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw InvalidArgument("line fit needs at least two paired samples");
    }
    const auto n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) {
        throw DegenerateError("line fit abscissa has zero spread");
    }
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

double half_max_width(std::span<const double> abscissa, std::span<const double> values) {
    if (abscissa.size() != values.size() || abscissa.size() < 3) {
        throw InvalidArgument("half-max width needs at least three paired samples");
    }
    std::size_t peak = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (std::abs(values[i]) > std::abs(values[peak])) {
            peak = i;
        }
    }
    const double half = 0.5 * std::abs(values[peak]);
    if (half == 0.0) {
        throw DegenerateError("half-max width of an all-zero curve");
    }

    auto crossing = [&](std::size_t inside, std::size_t outside) {
        const double a = std::abs(values[inside]);
        const double b = std::abs(values[outside]);
        const double t = (a - half) / (a - b);
        return abscissa[inside] + t * (abscissa[outside] - abscissa[inside]);
    };

    std::size_t right = peak;
    while (right + 1 < values.size() && std::abs(values[right + 1]) >= half) {
        ++right;
    }
    std::size_t left = peak;
    while (left > 0 && std::abs(values[left - 1]) >= half) {
        --left;
    }
    if (right + 1 == values.size() || left == 0) {
        throw InvalidArgument("curve does not fall below half maximum inside the sampled range");
    }
    return crossing(right, right + 1) - crossing(left, left - 1);
}

} // namespace ddmag
