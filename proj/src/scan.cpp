#include "starkcav/scan.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "starkcav/svg.hpp"

namespace starkcav::scan {
namespace {

std::string fmt17(double v) {
    char buf[64];
    auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general,
                      17);
    return std::string(buf, ptr);
}

const char* measure_name(MeasureSelect m) {
    switch (m) {
        case MeasureSelect::qc: return "qc";
        case MeasureSelect::qd: return "qd";
        default: return "both";
    }
}

const char* backend_select_name(BackendSelect b) {
    switch (b) {
        case BackendSelect::exact: return "exact";
        case BackendSelect::symmetric: return "symmetric";
        default: return "both";
    }
}

const char* mode_name(StateMode m) {
    return m == StateMode::fock ? "fock" : "coherent";
}

// Measures for one already-reduced state.
void fill_measures(const TwoQubitXState& s, MeasureSelect measure,
                   CorrelationSample& out) {
    if (measure != MeasureSelect::qd) {
        out.coherence = coherence_closed_form(s.r22);
    }
    if (measure != MeasureSelect::qc) {
        const DiscordBreakdown d = discord_closed_form(s);
        out.discord = d.q;
        out.classical = d.j;
        out.mutual_info = d.mutual;
    }
}

CorrelationSample evaluate_sample(const SystemParams& p,
                                  const SweepConfig& cfg, Backend backend,
                                  double t, const ExactPropagator* exact,
                                  const SymmetricPropagator* symmetric) {
    CorrelationSample out;
    out.t = t;
    out.backend = backend;

    try {
        TwoQubitXState state;
        if (cfg.mode == StateMode::coherent) {
            const int n_max = poisson_truncation(std::norm(p.alpha));
            state = reduce_coherent_mix(p, t, n_max, backend);
            out.pops = make_populations(state.r22, state.r44, state.r11);
        } else {
            out.pops = backend == Backend::exact
                           ? populations_exact(exact->at(t))
                           : symmetric->populations(t);
            state = reduce_to_atoms(out.pops);
        }
        fill_measures(state, cfg.measure, out);
        out.valid = true;
    } catch (const InvalidPopulationsError&) {
        out.valid = false;
    } catch (const InvalidStateError&) {
        out.valid = false;
    } catch (const DegeneracyError&) {
        out.valid = false;
    } catch (const TruncationError&) {
        out.valid = false;
    }
    return out;
}

// Placeholder rows for a point whose symmetric closed form is unusable
// (degenerate spectrum); populations are NaN and the row is flagged.
CorrelationSample invalid_sample(Backend backend, double t) {
    CorrelationSample out;
    out.t = t;
    out.backend = backend;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out.pops.e2 = nan;
    out.pops.b2 = nan;
    out.pops.a2 = nan;
    out.pops.valid = false;
    out.valid = false;
    return out;
}

}  // namespace

void SweepConfig::validate() const {
    if (points.empty()) {
        throw std::invalid_argument("sweep: no parameter points");
    }
    if (!(t_max > 0.0)) {
        throw std::invalid_argument("sweep: t_max must be positive");
    }
    if (samples < 2) {
        throw std::invalid_argument("sweep: need at least 2 samples");
    }
    for (const auto& p : points) p.validate();
}

std::vector<CorrelationSample> evaluate_point(const SystemParams& p,
                                              const SweepConfig& cfg) {
    std::vector<Backend> backends;
    if (cfg.backend != BackendSelect::symmetric) {
        backends.push_back(Backend::exact);
    }
    if (cfg.backend != BackendSelect::exact) {
        backends.push_back(Backend::symmetric);
    }

    std::optional<ExactPropagator> exact;
    std::optional<SymmetricPropagator> symmetric;
    bool symmetric_degenerate = false;
    if (cfg.mode == StateMode::fock) {
        for (Backend b : backends) {
            if (b == Backend::exact) exact.emplace(p);
            if (b == Backend::symmetric) {
                try {
                    symmetric.emplace(p);
                } catch (const DegeneracyError&) {
                    symmetric_degenerate = true;
                }
            }
        }
    }

    std::vector<CorrelationSample> rows;
    rows.reserve(static_cast<size_t>(cfg.samples) * backends.size());
    for (int i = 0; i < cfg.samples; ++i) {
        const double t = cfg.t_max * i / (cfg.samples - 1);
        for (Backend b : backends) {
            if (b == Backend::symmetric && symmetric_degenerate) {
                rows.push_back(invalid_sample(b, t));
            } else {
                rows.push_back(evaluate_sample(
                    p, cfg, b, t, exact ? &*exact : nullptr,
                    symmetric ? &*symmetric : nullptr));
            }
        }
    }
    return rows;
}

std::string render_csv(const SystemParams& p, const SweepConfig& cfg,
                       const std::vector<CorrelationSample>& rows) {
    std::ostringstream os;
    os << "# backend=" << backend_select_name(cfg.backend)
       << " measure=" << measure_name(cfg.measure)
       << " mode=" << mode_name(cfg.mode) << " tmax=" << fmt17(cfg.t_max)
       << " samples=" << cfg.samples << " wz=" << fmt17(p.wz)
       << " wc=" << fmt17(p.wc) << " gamma1=" << fmt17(p.gamma1)
       << " gamma2=" << fmt17(p.gamma2) << " lambda1=" << fmt17(p.lambda1)
       << " lambda2=" << fmt17(p.lambda2) << " n=" << p.n
       << " alpha=" << fmt17(p.alpha.real()) << "\n";
    os << "t,backend,wz,wc,gamma1,gamma2,lambda1,lambda2,n,e2,b2,a2,"
          "coherence,discord,classical,mutual_info,valid\n";

    for (const CorrelationSample& s : rows) {
        os << fmt17(s.t) << ',' << backend_name(s.backend) << ','
           << fmt17(p.wz) << ',' << fmt17(p.wc) << ',' << fmt17(p.gamma1)
           << ',' << fmt17(p.gamma2) << ',' << fmt17(p.lambda1) << ','
           << fmt17(p.lambda2) << ',' << p.n << ',' << fmt17(s.pops.e2) << ','
           << fmt17(s.pops.b2) << ',' << fmt17(s.pops.a2) << ',';
        if (s.valid) {
            const bool qc = cfg.measure != MeasureSelect::qd;
            const bool qd = cfg.measure != MeasureSelect::qc;
            os << (qc ? fmt17(s.coherence) : "") << ','
               << (qd ? fmt17(s.discord) : "") << ','
               << (qd ? fmt17(s.classical) : "") << ','
               << (qd ? fmt17(s.mutual_info) : "");
        } else {
            os << ",,,";
        }
        os << ',' << (s.valid ? "true" : "false") << '\n';
    }
    return os.str();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() +
                                 " for writing");
    }
    out << body;
    if (!out) {
        throw std::runtime_error("write failed on " + path.string());
    }
}

}  // namespace

std::vector<std::filesystem::path> run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    std::filesystem::create_directories(cfg.out_dir);

    // Points evaluated concurrently, assembled in config order.
    std::vector<std::future<std::vector<CorrelationSample>>> pending;
    pending.reserve(cfg.points.size());
    for (const auto& p : cfg.points) {
        pending.push_back(std::async(std::launch::async, [&p, &cfg] {
            return evaluate_point(p, cfg);
        }));
    }

    std::vector<std::filesystem::path> written;
    for (size_t i = 0; i < cfg.points.size(); ++i) {
        const std::vector<CorrelationSample> rows = pending[i].get();
        char name[32];
        std::snprintf(name, sizeof(name), "sweep_p%03zu.csv", i);
        const std::filesystem::path path = cfg.out_dir / name;
        write_file(path, render_csv(cfg.points[i], cfg, rows));
        written.push_back(path);
    }
    return written;
}

// ------------------------------------------------------------- figures --

namespace {

constexpr std::pair<double, double> kStarkPairs[] = {
    {1.0, 2.0}, {2.0, 3.0}, {3.0, 4.0}, {4.0, 5.0}};
constexpr int kPanelN[] = {0, 1, 3};

// Curve palette: blue, brown, red, green, one per Stark pair.
const char* kCurveColors[] = {"#1f77b4", "#8c564b", "#d62728", "#2ca02c"};

SystemParams make_point(double wz, double wc, double g1, double g2, int n) {
    SystemParams p;
    p.wz = wz;
    p.wc = wc;
    p.gamma1 = g1;
    p.gamma2 = g2;
    p.lambda1 = 1.0;
    p.lambda2 = 1.0;
    p.n = n;
    return p;
}

}  // namespace

FigurePreset figure_preset(const std::string& id) {
    FigurePreset preset;
    preset.id = id;
    if (id == "fig2") {
        preset.measure = MeasureSelect::qc;
    } else if (id == "fig3") {
        preset.measure = MeasureSelect::qc;
        preset.wz = 0.5;
        preset.wc = 1.0;
    } else if (id == "fig4") {
        preset.measure = MeasureSelect::qd;
    } else if (id == "fig5") {
        preset.measure = MeasureSelect::qd;
        preset.wz = 0.5;
        preset.wc = 1.0;
    } else {
        throw std::invalid_argument("unknown figure id: " + id);
    }

    for (int n : kPanelN) {
        FigurePanel panel;
        panel.n = n;
        for (auto [g1, g2] : kStarkPairs) {
            panel.points.push_back(make_point(preset.wz, preset.wc, g1, g2, n));
        }
        preset.panels.push_back(std::move(panel));
    }
    return preset;
}

std::vector<SystemParams> figure_points() {
    std::vector<SystemParams> points;
    for (auto [wz, wc] : {std::pair{0.0, 0.0}, std::pair{0.5, 1.0}}) {
        for (int n : kPanelN) {
            for (auto [g1, g2] : kStarkPairs) {
                points.push_back(make_point(wz, wc, g1, g2, n));
            }
        }
    }
    return points;
}

std::vector<std::filesystem::path> reproduce_figure(
    const std::string& id, const std::filesystem::path& out_dir) {
    const FigurePreset preset = figure_preset(id);
    std::filesystem::create_directories(out_dir);

    SweepConfig cfg;
    cfg.backend = BackendSelect::symmetric;
    cfg.measure = MeasureSelect::both;
    cfg.t_max = preset.t_max;
    cfg.samples = preset.samples;
    cfg.out_dir = out_dir;

    std::vector<std::filesystem::path> written;
    for (const auto& panel : preset.panels) {
        // Panel CSV: all Stark pairs concatenated, point order preserved.
        std::string csv;
        std::vector<Curve> curves;
        for (size_t c = 0; c < panel.points.size(); ++c) {
            const SystemParams& p = panel.points[c];
            const auto rows = evaluate_point(p, cfg);
            const std::string one = render_csv(p, cfg, rows);
            if (c == 0) {
                csv = one;
            } else {
                // Skip the header lines of subsequent points.
                const size_t first = one.find('\n');
                const size_t second = one.find('\n', first + 1);
                csv += one.substr(second + 1);
            }

            Curve curve;
            std::ostringstream label;
            label << "gamma1=" << p.gamma1 << " gamma2=" << p.gamma2;
            curve.label = label.str();
            curve.color = kCurveColors[c % 4];
            for (const CorrelationSample& row : rows) {
                curve.x.push_back(row.t);
                double y = std::numeric_limits<double>::quiet_NaN();
                if (row.valid) {
                    y = preset.measure == MeasureSelect::qc ? row.coherence
                                                            : row.discord;
                }
                curve.y.push_back(y);
            }
            curves.push_back(std::move(curve));
        }

        const std::string stem = id + "_n" + std::to_string(panel.n);
        const auto csv_path = out_dir / (stem + ".csv");
        write_file(csv_path, csv);
        written.push_back(csv_path);

        ChartSpec chart;
        chart.title = stem;
        chart.x_label = "t";
        chart.y_label =
            preset.measure == MeasureSelect::qc ? "coherence" : "discord";
        const auto svg_path = out_dir / (stem + ".svg");
        write_file(svg_path, render_line_chart(chart, curves));
        written.push_back(svg_path);
    }
    return written;
}

}  // namespace starkcav::scan
