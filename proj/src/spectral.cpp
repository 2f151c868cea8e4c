#include "starkcav/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace starkcav::scan {

void fft(std::vector<std::complex<double>>& data) {
    const size_t n = data.size();
    if (n == 0 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("fft: size must be a power of two");
    }

    // Bit-reversal permutation.
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    for (size_t len = 2; len <= n; len <<= 1) {
        const double angle = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(angle), std::sin(angle));
        for (size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = data[i + k];
                const std::complex<double> v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

PeakReport spectral_peaks(const std::vector<double>& series, double duration,
                          const std::vector<double>& expected_omega) {
    const size_t n = series.size();
    if (n < 1024 || (n & (n - 1)) != 0) {
        throw std::invalid_argument(
            "spectral_peaks: need a power-of-two length >= 1024");
    }
    if (!(duration > 0.0)) {
        throw std::invalid_argument("spectral_peaks: nonpositive duration");
    }
    if (expected_omega.empty()) {
        throw std::invalid_argument("spectral_peaks: empty expected set");
    }

    const double slowest =
        *std::min_element(expected_omega.begin(), expected_omega.end(),
                          [](double a, double b) {
                              return std::abs(a) < std::abs(b);
                          });
    if (std::abs(slowest) * duration < 10.0 * 2.0 * std::numbers::pi) {
        throw std::invalid_argument(
            "spectral_peaks: under-resolved series (need >= 10 periods of "
            "the slowest expected frequency)");
    }

    double mean = 0.0;
    for (double x : series) mean += x;
    mean /= static_cast<double>(n);

    std::vector<std::complex<double>> buf(n);
    for (size_t i = 0; i < n; ++i) {
        const double hann =
            0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / n);
        buf[i] = (series[i] - mean) * hann;
    }
    fft(buf);

    PeakReport rep;
    rep.bin_width = 2.0 * std::numbers::pi / duration;

    std::vector<double> mag(n / 2);
    for (size_t k = 0; k < n / 2; ++k) mag[k] = std::abs(buf[k]);

    // All local maxima, any magnitude; expected frequencies match against
    // these. Only maxima above 5% of the strongest are reported and held to
    // the "explained" requirement.
    std::vector<Peak> maxima;
    double top = 0.0;
    for (size_t k = 1; k + 1 < n / 2; ++k) {
        if (mag[k] >= mag[k - 1] && mag[k] > mag[k + 1]) {
            maxima.push_back(
                {rep.bin_width * static_cast<double>(k), mag[k], false});
            top = std::max(top, mag[k]);
        }
    }

    rep.expected_found.assign(expected_omega.size(), false);
    if (top == 0.0) return rep;  // flat series: nothing to match

    // Matching floor: far above the FFT noise floor, far below any genuine
    // line, so sidelobe ripples cannot stand in for a missing frequency.
    const double floor = 1e-3 * top;
    for (size_t e = 0; e < expected_omega.size(); ++e) {
        const double want = std::abs(expected_omega[e]);
        for (auto& peak : maxima) {
            if (peak.magnitude >= floor &&
                std::abs(peak.omega - want) <= rep.bin_width) {
                peak.matched = true;
                rep.expected_found[e] = true;
            }
        }
    }

    for (const auto& peak : maxima) {
        if (peak.magnitude >= 0.05 * top) rep.peaks.push_back(peak);
    }

    rep.all_expected_found =
        std::all_of(rep.expected_found.begin(), rep.expected_found.end(),
                    [](bool b) { return b; });
    rep.no_unexplained = std::all_of(rep.peaks.begin(), rep.peaks.end(),
                                     [](const Peak& p) { return p.matched; });
    return rep;
}

}  // namespace starkcav::scan
