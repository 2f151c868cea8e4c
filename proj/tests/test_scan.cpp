#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "starkcav/scan.hpp"
#include "starkcav/spectral.hpp"
#include "starkcav/validate.hpp"

using namespace starkcav;
using namespace starkcav::scan;

namespace {

std::filesystem::path scratch(const std::string& leaf) {
    const auto dir = std::filesystem::temp_directory_path() /
                     "starkcav-tests" / leaf;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

SweepConfig small_config(const std::filesystem::path& out) {
    SweepConfig cfg;
    SystemParams p;
    p.gamma1 = 1.0;
    p.gamma2 = 2.0;
    cfg.points = {p};
    cfg.backend = BackendSelect::both;
    cfg.t_max = 2.0;
    cfg.samples = 50;
    cfg.out_dir = out;
    return cfg;
}

}  // namespace

TEST_CASE("sweep config validation") {
    SweepConfig cfg;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);  // no points

    cfg = small_config(".");
    cfg.t_max = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg = small_config(".");
    cfg.samples = 1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    cfg = small_config(".");
    cfg.points[0].n = -2;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("run_sweep: schema, row order and the population identity") {
    const auto dir = scratch("sweep");
    const auto files = run_sweep(small_config(dir));
    REQUIRE(files.size() == 1);

    std::ifstream in(files[0]);
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("# backend=both", 0) == 0);
    std::getline(in, line);
    CHECK(line ==
          "t,backend,wz,wc,gamma1,gamma2,lambda1,lambda2,n,e2,b2,a2,"
          "coherence,discord,classical,mutual_info,valid");

    int rows = 0;
    double prev_t = -1.0;
    bool expect_exact = true;
    while (std::getline(in, line)) {
        ++rows;
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        // Trailing "valid" column is never empty, so the split is stable.
        REQUIRE(fields.size() == 17);

        const double t = std::stod(fields[0]);
        CHECK(t >= prev_t);
        if (expect_exact) {
            CHECK(fields[1] == "exact");
            prev_t = t;
        } else {
            CHECK(fields[1] == "symmetric");
        }
        expect_exact = !expect_exact;

        if (fields[16] == "true") {
            const double e2 = std::stod(fields[9]);
            const double b2 = std::stod(fields[10]);
            const double a2 = std::stod(fields[11]);
            CHECK(std::abs(a2 + 2.0 * e2 + b2 - 1.0) < 1e-9);
        } else {
            CHECK(fields[12].empty());
        }
    }
    CHECK(rows == 100);  // 50 samples x 2 backends
}

TEST_CASE("run_sweep: reruns are byte-identical") {
    const auto dir_a = scratch("det_a");
    const auto dir_b = scratch("det_b");
    const auto a = run_sweep(small_config(dir_a));
    const auto b = run_sweep(small_config(dir_b));
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        const std::string body = slurp(a[i]);
        CHECK(body == slurp(b[i]));
        CHECK(body.find('\r') == std::string::npos);
    }
}

TEST_CASE("run_sweep: measure selector empties the other columns") {
    auto cfg = small_config(scratch("measure"));
    cfg.measure = MeasureSelect::qc;
    const auto files = run_sweep(cfg);
    std::ifstream in(files[0]);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    std::getline(in, line);  // first data row
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    REQUIRE(fields.size() == 17);
    CHECK_FALSE(fields[12].empty());  // coherence
    CHECK(fields[13].empty());        // discord
    CHECK(fields[14].empty());        // classical
    CHECK(fields[15].empty());        // mutual_info
}

TEST_CASE("run_sweep: degenerate symmetric point yields flagged rows only") {
    SweepConfig cfg;
    SystemParams p;
    p.wz = 1.0;  // F = sqrt(delta): chi3 collides with chi1
    cfg.points = {p};
    cfg.backend = BackendSelect::both;
    cfg.t_max = 1.0;
    cfg.samples = 5;
    cfg.out_dir = scratch("degenerate");

    const auto files = run_sweep(cfg);
    std::ifstream in(files[0]);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    int exact_valid = 0;
    int symmetric_invalid = 0;
    while (std::getline(in, line)) {
        const bool is_exact = line.find(",exact,") != std::string::npos;
        const bool is_valid = line.rfind(",true") == line.size() - 5;
        if (is_exact && is_valid) ++exact_valid;
        if (!is_exact && !is_valid) ++symmetric_invalid;
    }
    CHECK(exact_valid == 5);
    CHECK(symmetric_invalid == 5);
}

TEST_CASE("run_sweep: out-of-range closed-form rows are emptied, not clamped") {
    // Strong-coupling symmetric dynamics push a2 negative at late times.
    SweepConfig cfg;
    cfg.points = {SystemParams{}};
    cfg.backend = BackendSelect::symmetric;
    cfg.t_max = 5.0;
    cfg.samples = 40;
    cfg.out_dir = scratch("invalidrows");

    const auto files = run_sweep(cfg);
    std::ifstream in(files[0]);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    int invalid_rows = 0;
    while (std::getline(in, line)) {
        if (line.rfind(",false") != line.size() - 6) continue;
        ++invalid_rows;
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        REQUIRE(fields.size() == 17);
        const double a2 = std::stod(fields[11]);  // reported, not clamped
        CHECK(a2 < 0.0);
        CHECK(fields[12].empty());
        CHECK(fields[13].empty());
    }
    CHECK(invalid_rows > 0);
}

TEST_CASE("figure presets: panel structure and the 24 parameter points") {
    const auto preset = figure_preset("fig2");
    CHECK(preset.measure == MeasureSelect::qc);
    CHECK(preset.wz == 0.0);
    REQUIRE(preset.panels.size() == 3);
    CHECK(preset.panels[0].n == 0);
    CHECK(preset.panels[1].n == 1);
    CHECK(preset.panels[2].n == 3);
    for (const auto& panel : preset.panels) {
        REQUIRE(panel.points.size() == 4);
        CHECK(panel.points[0].gamma1 == 1.0);
        CHECK(panel.points[3].gamma2 == 5.0);
        for (const auto& p : panel.points) {
            CHECK(p.lambda1 == 1.0);
            CHECK(p.lambda2 == 1.0);
        }
    }

    const auto fig3 = figure_preset("fig3");
    CHECK(fig3.wz == 0.5);
    CHECK(fig3.wc == 1.0);
    CHECK(fig3.measure == MeasureSelect::qc);
    CHECK(figure_preset("fig4").measure == MeasureSelect::qd);
    CHECK(figure_preset("fig5").measure == MeasureSelect::qd);
    CHECK_THROWS_AS(figure_preset("fig9"), std::invalid_argument);

    CHECK(figure_points().size() == 24);
}

TEST_CASE("run_sweep: fig2 preset yields 12 files of 1000 rows") {
    const auto preset = figure_preset("fig2");
    SweepConfig cfg;
    for (const auto& panel : preset.panels) {
        cfg.points.insert(cfg.points.end(), panel.points.begin(),
                          panel.points.end());
    }
    cfg.backend = BackendSelect::symmetric;
    cfg.t_max = preset.t_max;
    cfg.samples = preset.samples;
    cfg.out_dir = scratch("fig2sweep");

    const auto files = run_sweep(cfg);
    REQUIRE(files.size() == 12);
    CHECK(files[0].filename() == "sweep_p000.csv");
    CHECK(files[11].filename() == "sweep_p011.csv");
    for (const auto& f : files) {
        const std::string body = slurp(f);
        // comment + header + 1000 data rows
        CHECK(std::count(body.begin(), body.end(), '\n') == 1002);
    }
}

TEST_CASE("reproduce_figure: emits per-panel CSV and SVG") {
    const auto dir = scratch("fig");
    const auto files = reproduce_figure("fig2", dir);
    REQUIRE(files.size() == 6);  // 3 panels x (csv + svg)
    CHECK(files[0].filename() == "fig2_n0.csv");
    CHECK(files[1].filename() == "fig2_n0.svg");
    CHECK(files[5].filename() == "fig2_n3.svg");

    const std::string csv = slurp(files[0]);
    // 4 curves x 1000 samples + 1 comment + 1 header.
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4002);

    const std::string svg = slurp(files[1]);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(std::count(svg.begin(), svg.end(), '<') ==
          std::count(svg.begin(), svg.end(), '>'));
    // One polyline per Stark pair.
    size_t polylines = 0;
    for (size_t pos = svg.find("<polyline"); pos != std::string::npos;
         pos = svg.find("<polyline", pos + 1)) {
        ++polylines;
    }
    CHECK(polylines == 4);
}

TEST_CASE("spectral peaks: trivial-point |b|^2 lines at sqrt(2), 2 sqrt(2)") {
    // b(t) = cos(sqrt(2) t) - 1, so |b|^2 = (1 - cos wt)^2 carries lines at
    // w and 2w only.
    const double w = std::sqrt(2.0);
    const double duration = 14.0 * 2.0 * std::numbers::pi / w;
    constexpr int n = 2048;
    std::vector<double> series(n);
    for (int i = 0; i < n; ++i) {
        const double c = std::cos(w * duration * i / n);
        series[i] = (1.0 - c) * (1.0 - c);
    }
    const auto rep = spectral_peaks(series, duration, {w, 2.0 * w});
    CHECK(rep.pass());
    REQUIRE(rep.peaks.size() == 2);
    CHECK(std::abs(rep.peaks[0].omega - w) <= rep.bin_width);
    CHECK(std::abs(rep.peaks[1].omega - 2.0 * w) <= rep.bin_width);

    // A missing expected line is flagged.
    const auto bad = spectral_peaks(series, duration, {w, 2.0 * w, 5.0 * w});
    CHECK_FALSE(bad.all_expected_found);
    CHECK_FALSE(bad.pass());
}

TEST_CASE("spectral peaks: precondition guards") {
    std::vector<double> short_series(512, 0.0);
    CHECK_THROWS_AS(spectral_peaks(short_series, 1.0, {1.0}),
                    std::invalid_argument);

    std::vector<double> series(2048, 0.0);
    // Ten periods of omega = 1 need duration >= 20 pi.
    CHECK_THROWS_AS(spectral_peaks(series, 10.0, {1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(spectral_peaks(series, 100.0, {}), std::invalid_argument);
}

TEST_CASE("spectral peaks: exact backend shows eigenvalue differences") {
    SystemParams p;
    p.gamma1 = 1.0;
    p.gamma2 = 2.0;
    const ExactPropagator prop(p);
    const auto& eig = prop.decomposition().eigenvalues;

    std::vector<double> diffs;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            const double d = std::abs(eig(i) - eig(j));
            if (d > 1e-9) diffs.push_back(d);
        }
    }

    const double slowest = *std::min_element(diffs.begin(), diffs.end());
    const double duration = 12.0 * 2.0 * std::numbers::pi / slowest;
    constexpr int n = 4096;
    std::vector<double> series(n);
    for (int i = 0; i < n; ++i) {
        series[i] = populations_exact(prop.at(duration * i / n)).e2;
    }
    const auto rep = spectral_peaks(series, duration, diffs);
    // Every reported peak must be explained by some eigenvalue difference
    // (weak lines may fall below the reporting floor, which is fine).
    CHECK(rep.no_unexplained);
    CHECK(!rep.peaks.empty());
}

TEST_CASE("validation report: fault injection flips the gate") {
    ValidationOptions opts;
    opts.bf_states = 4;
    opts.bf_theta_steps = 41;
    opts.bf_phi_steps = 41;
    opts.scratch_dir = scratch("validate");

    const auto good = run_validation(opts);
    CHECK(good.all_pass());
    CHECK(good.checks.size() >= 20);

    opts.coherence_tamper = 1e-3;
    const auto bad = run_validation(opts);
    CHECK_FALSE(bad.all_pass());
    bool coherence_failed = false;
    for (const auto& c : bad.checks) {
        if (c.id == "4" && !c.pass) coherence_failed = true;
    }
    CHECK(coherence_failed);

    // Machine-readable form parses and mirrors the text verdict.
    const auto parsed = nlohmann::json::parse(bad.json());
    CHECK(parsed["all_pass"] == false);
    CHECK(parsed["checks"].size() == bad.checks.size());
}
