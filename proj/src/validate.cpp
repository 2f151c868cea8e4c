#include "starkcav/validate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "starkcav/correlations.hpp"
#include "starkcav/oracle.hpp"
#include "starkcav/scan.hpp"
#include "starkcav/spectral.hpp"

namespace starkcav::scan {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

SystemParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> freq(0.0, 2.0);
    std::uniform_real_distribution<double> stark(0.0, 5.0);
    std::uniform_real_distribution<double> coupling(0.1, 2.0);
    std::uniform_int_distribution<int> fock(0, 5);

    SystemParams p;
    p.wz = freq(rng);
    p.wc = freq(rng);
    p.gamma1 = stark(rng);
    p.gamma2 = stark(rng);
    p.lambda1 = coupling(rng);
    p.lambda2 = coupling(rng);
    p.n = fock(rng);
    return p;
}

// Random dynamical-state populations: e2 in [0, 1/2), b2 in [0, 1-2 e2].
Populations random_dynamical(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double e2 = 0.5 * unit(rng);
    const double b2 = (1.0 - 2.0 * e2) * unit(rng);
    return make_populations(e2, b2, 1.0 - 2.0 * e2 - b2);
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

bool ValidationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const Check& c) { return c.pass; });
}

std::string ValidationReport::text() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.pass ? "[PASS] " : "[FAIL] ") << c.id << ' ' << c.name
           << ": observed " << c.observed << " vs threshold " << c.threshold;
        if (!c.detail.empty()) os << " (" << c.detail << ')';
        if (c.seconds > 0.0) os << " [" << c.seconds << " s]";
        os << '\n';
    }
    os << (all_pass() ? "VALIDATION PASSED" : "VALIDATION FAILED") << '\n';
    return os.str();
}

std::string ValidationReport::json() const {
    nlohmann::json root;
    root["all_pass"] = all_pass();
    root["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        root["checks"].push_back({{"id", c.id},
                                  {"name", c.name},
                                  {"pass", c.pass},
                                  {"observed", c.observed},
                                  {"threshold", c.threshold},
                                  {"detail", c.detail},
                                  {"seconds", c.seconds}});
    }
    return root.dump(2) + "\n";
}

ValidationReport run_validation(const ValidationOptions& opts) {
    ValidationReport report;
    std::mt19937_64 rng(opts.seed);
    const std::vector<SystemParams> presets = figure_points();

    // 1 — unitarity of the exact backend.
    {
        const auto start = Clock::now();
        double worst = 0.0;
        for (int draw = 0; draw < 20; ++draw) {
            const SystemParams p = random_params(rng);
            const ExactPropagator prop(p);
            for (int i = 0; i < 1000; ++i) {
                const double t = 10.0 * i / 999.0;
                worst = std::max(
                    worst, std::abs(prop.at(t).norm2() - 1.0));
            }
        }
        const double secs = elapsed(start);
        report.checks.push_back({"1", "exact backend norm conservation",
                                 worst < 1e-12, worst, 1e-12, "", secs});
        report.checks.push_back({"1t", "norm conservation runtime",
                                 secs < 1.0, secs, 1.0, "", secs});
    }

    // 2 — exact backend vs adaptive integrator on the figure points.
    {
        const auto start = Clock::now();
        double worst = 0.0;
        double worst_pop = 0.0;
        for (const auto& p : presets) {
            const auto rep = oracle::crosscheck(p, 5.0, 500);
            worst = std::max(worst, rep.max_amplitude_error);
            worst_pop = std::max(worst_pop, rep.max_population_error);
        }
        const double secs = elapsed(start);
        report.checks.push_back({"2", "exact backend vs ODE oracle",
                                 worst < 1e-8, worst, 1e-8, "", secs});
        report.checks.push_back({"2t", "oracle agreement runtime",
                                 secs < 10.0, secs, 10.0, "", secs});
        // Reported metric, not a gate: the symmetric closed form is a
        // different model and its population deviation is expected. The
        // only bound is the trivial probability ceiling.
        report.checks.push_back({"2b",
                                 "symmetric vs exact population deviation "
                                 "(reported)",
                                 worst_pop <= 1.0, worst_pop, 1.0, "", 0.0});
    }

    // 3 — symmetric backend weight conditions + rational-form regression.
    {
        double worst_cond = 0.0;
        double worst_dev = 0.0;
        for (const auto& p : presets) {
            const auto w = symmetric_weights(dressed_coefficients(p));
            worst_cond = std::max(worst_cond, w.condition_residual);
            worst_dev = std::max(worst_dev, w.max_rel_deviation);
        }
        report.checks.push_back({"3", "mode weights satisfy k-conditions",
                                 worst_cond < 1e-10, worst_cond, 1e-10, "",
                                 0.0});
        // Frozen baseline: the rational forms agree with the linear solve
        // to rounding (first recorded maximum 4.5e-14).
        report.checks.push_back({"3b", "rational weight forms regression",
                                 worst_dev < 1e-11, worst_dev, 1e-11, "",
                                 0.0});
    }

    // 4 — coherence closed form vs eigen-based JSD + analytic anchors.
    {
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const Populations pops = random_dynamical(rng);
            const TwoQubitXState s = reduce_to_atoms(pops);
            const double closed =
                coherence_closed_form(pops.e2) + opts.coherence_tamper;
            worst = std::max(worst, std::abs(closed - coherence_jsd(s)));
        }
        report.checks.push_back({"4", "coherence closed form vs JSD",
                                 worst < 1e-10, worst, 1e-10, "", 0.0});

        const double bell =
            coherence_closed_form(0.5) + opts.coherence_tamper;
        const double quarter =
            coherence_closed_form(0.25) + opts.coherence_tamper;
        report.checks.push_back({"4b", "coherence anchor e2=1/2",
                                 std::abs(bell - 0.55792305) < 1e-6,
                                 bell, 0.55792305, "", 0.0});
        report.checks.push_back({"4c", "coherence anchor e2=1/4",
                                 std::abs(quarter - 0.39451117) < 1e-6,
                                 quarter, 0.39451117, "", 0.0});
    }

    // 5 — discord identities and brute-force agreement.
    {
        const auto start = Clock::now();
        double worst_q2 = 0.0;
        double worst_bf = 0.0;
        double worst_floor = 0.0;  // grid minimum must not beat closed form
        double worst_theta = 0.0;  // distance of argmin theta from {0, pi/2}
        double worst_ijq = 0.0;
        const double theta_step =
            (std::numbers::pi / 2.0) / (opts.bf_theta_steps - 1);

        for (int i = 0; i < opts.bf_states; ++i) {
            const Populations pops = random_dynamical(rng);
            const TwoQubitXState s = reduce_to_atoms(pops);
            const DiscordBreakdown d = discord_closed_form(s);

            worst_q2 = std::max(worst_q2, std::abs(d.q2 - 2.0 * pops.e2));
            worst_ijq =
                std::max(worst_ijq, std::abs(d.mutual - d.j - d.q));

            const BruteForceResult bf = discord_bruteforce(
                s, opts.bf_theta_steps, opts.bf_phi_steps);
            worst_bf = std::max(worst_bf, std::abs(bf.q - d.q));
            worst_floor = std::max(worst_floor, d.q - bf.q);

            const double dist = std::min(
                bf.argmin.theta, std::numbers::pi / 2.0 - bf.argmin.theta);
            worst_theta = std::max(worst_theta, dist);
        }
        const double secs = elapsed(start);

        report.checks.push_back({"5a", "generic Q2 equals 2 e2",
                                 worst_q2 < 1e-12, worst_q2, 1e-12, "", 0.0});
        report.checks.push_back({"5b", "closed-form vs brute-force discord",
                                 worst_bf < 1e-3, worst_bf, 1e-3, "", secs});
        report.checks.push_back({"5b2", "grid minimum not below closed form",
                                 worst_floor < 1e-9, worst_floor, 1e-9, "",
                                 0.0});
        report.checks.push_back({"5c", "argmin theta at {0, pi/2}",
                                 worst_theta <= theta_step + 1e-12,
                                 worst_theta, theta_step, "", 0.0});
        report.checks.push_back({"5d", "I = J + Q conservation",
                                 worst_ijq < 1e-9, worst_ijq, 1e-9, "", 0.0});
        report.checks.push_back({"5t", "brute-force runtime", secs < 30.0,
                                 secs, 30.0, "", secs});
    }

    // 6 — Bell point.
    {
        const TwoQubitXState s =
            reduce_to_atoms(make_populations(0.5, 0.0, 0.0));
        const DiscordBreakdown d = discord_closed_form(s);
        report.checks.push_back({"6", "Bell point discord",
                                 std::abs(d.q - 1.0) < 1e-9, d.q, 1.0, "",
                                 0.0});
        report.checks.push_back({"6b", "Bell point mutual information",
                                 std::abs(d.mutual - 2.0) < 1e-9, d.mutual,
                                 2.0, "", 0.0});
    }

    // 7 — spectral content of the symmetric backend populations.
    {
        const auto start = Clock::now();
        bool all_ok = true;
        std::string detail;
        for (const auto& p : presets) {
            const DressedCoefficients c = dressed_coefficients(p);
            const double sq = std::sqrt(c.delta);
            const std::vector<double> expected = {
                sq, std::abs(c.F - sq) / 2.0, (c.F + sq) / 2.0};
            const double slowest =
                *std::min_element(expected.begin(), expected.end());
            const double duration =
                12.0 * 2.0 * std::numbers::pi / slowest;

            const SymmetricPropagator prop(p);
            constexpr int kSamples = 4096;
            std::vector<double> series(kSamples);
            for (int i = 0; i < kSamples; ++i) {
                series[i] = std::norm(prop.at(duration * i / kSamples).e);
            }
            const PeakReport rep =
                spectral_peaks(series, duration, expected);
            if (!rep.pass()) {
                all_ok = false;
                std::ostringstream os;
                os << "failed at gamma=(" << p.gamma1 << ',' << p.gamma2
                   << ") n=" << p.n << " wz=" << p.wz;
                detail = os.str();
            }
        }
        report.checks.push_back({"7", "population spectrum peaks",
                                 all_ok, all_ok ? 1.0 : 0.0, 1.0, detail,
                                 elapsed(start)});
    }

    // 8 — peak coherence non-increasing in the total Stark shift.
    {
        double previous = std::numeric_limits<double>::infinity();
        double worst_rise = 0.0;
        for (double g1 : {1.0, 2.0, 3.0, 4.0}) {
            SystemParams p;
            p.gamma1 = g1;
            p.gamma2 = g1 + 1.0;
            const SymmetricPropagator prop(p);
            double peak = 0.0;
            for (int i = 0; i < 1000; ++i) {
                const double t = 5.0 * i / 999.0;
                const Populations pops = prop.populations(t);
                peak = std::max(peak, coherence_closed_form(pops.e2));
            }
            worst_rise = std::max(worst_rise, peak - previous);
            previous = peak;
        }
        report.checks.push_back({"8", "peak coherence vs Stark shift",
                                 worst_rise <= 1e-12, worst_rise, 0.0, "",
                                 0.0});
    }

    // 9 — mean coherence non-increasing in the photon number.
    {
        double previous = std::numeric_limits<double>::infinity();
        double worst_rise = 0.0;
        for (int n : {0, 1, 3}) {
            SystemParams p;
            p.gamma1 = 1.0;
            p.gamma2 = 2.0;
            p.n = n;
            const SymmetricPropagator prop(p);
            double mean = 0.0;
            for (int i = 0; i < 1000; ++i) {
                const double t = 5.0 * i / 999.0;
                const Populations pops = prop.populations(t);
                mean += coherence_closed_form(pops.e2);
            }
            mean /= 1000.0;
            worst_rise = std::max(worst_rise, mean - previous);
            previous = mean;
        }
        report.checks.push_back({"9", "mean coherence vs photon number",
                                 worst_rise <= 1e-12, worst_rise, 0.0, "",
                                 0.0});
    }

    // 10 — determinism of figure reproduction.
    {
        const std::filesystem::path base =
            opts.scratch_dir.empty()
                ? std::filesystem::temp_directory_path() / "starkcav-validate"
                : opts.scratch_dir;
        const auto dir_a = base / "determinism_a";
        const auto dir_b = base / "determinism_b";
        std::filesystem::remove_all(dir_a);
        std::filesystem::remove_all(dir_b);

        const auto files_a = reproduce_figure("fig2", dir_a);
        const auto files_b = reproduce_figure("fig2", dir_b);

        bool identical = files_a.size() == files_b.size();
        for (size_t i = 0; identical && i < files_a.size(); ++i) {
            identical = read_file(files_a[i]) == read_file(files_b[i]);
        }
        report.checks.push_back({"10", "figure reproduction determinism",
                                 identical, identical ? 1.0 : 0.0, 1.0, "",
                                 0.0});
        std::filesystem::remove_all(dir_a);
        std::filesystem::remove_all(dir_b);
    }

    return report;
}

}  // namespace starkcav::scan
