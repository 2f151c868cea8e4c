// spectral.hpp — Discrete-Fourier peak detection for sampled population
// series: locates the dominant oscillation frequencies and matches them
// against an expected set of angular frequencies.

#pragma once

#include <complex>
#include <vector>

namespace starkcav::scan {

// In-place radix-2 Cooley-Tukey; size must be a power of two.
void fft(std::vector<std::complex<double>>& data);

struct Peak {
    double omega = 0.0;      // angular frequency of the bin
    double magnitude = 0.0;  // spectrum magnitude (Hann-windowed)
    bool matched = false;    // within one bin of an expected frequency
};

struct PeakReport {
    std::vector<Peak> peaks;          // local maxima >= 5% of the largest
    std::vector<bool> expected_found; // per expected frequency
    double bin_width = 0.0;           // 2 pi / duration
    bool all_expected_found = false;
    bool no_unexplained = false;      // every reported peak matched

    bool pass() const { return all_expected_found && no_unexplained; }
};

// `series` must be uniformly sampled over [0, duration), power-of-two length
// >= 1024, and the duration must cover >= 10 periods of the slowest expected
// frequency; throws std::invalid_argument otherwise. The series is
// mean-removed and Hann-windowed, so window sidelobes stay below the 5%
// reporting threshold.
PeakReport spectral_peaks(const std::vector<double>& series, double duration,
                          const std::vector<double>& expected_omega);

}  // namespace starkcav::scan
