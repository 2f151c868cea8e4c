// scan.hpp — Sweep engine: evaluates correlation measures over time grids
// for lists of parameter points, writes deterministic CSV files and SVG
// charts, and bundles the figure presets (fig2..fig5).

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "starkcav/correlations.hpp"
#include "starkcav/model.hpp"
#include "starkcav/propagator.hpp"

namespace starkcav::scan {

enum class BackendSelect { exact, symmetric, both };
enum class MeasureSelect { qc, qd, both };
enum class StateMode { fock, coherent };

struct SweepConfig {
    std::vector<SystemParams> points;
    BackendSelect backend = BackendSelect::symmetric;
    MeasureSelect measure = MeasureSelect::both;
    StateMode mode = StateMode::fock;
    double t_max = 5.0;
    int samples = 1000;
    std::filesystem::path out_dir = ".";
    int bf_theta_steps = 361;
    int bf_phi_steps = 721;

    // Throws std::invalid_argument on an empty/invalid configuration.
    void validate() const;
};

// Evaluates every (time sample, backend) pair for one parameter point, in
// deterministic order (time ascending, exact before symmetric). Invalid
// populations yield rows with valid=false and empty measures.
std::vector<CorrelationSample> evaluate_point(const SystemParams& p,
                                              const SweepConfig& cfg);

// Serializes rows for one parameter point: a '#'-prefixed config echo, the
// fixed header
//   t,backend,wz,wc,gamma1,gamma2,lambda1,lambda2,n,e2,b2,a2,coherence,
//   discord,classical,mutual_info,valid
// and one line per row with 17-significant-digit, locale-independent
// number formatting and '\n' line endings. Byte-identical across reruns.
std::string render_csv(const SystemParams& p, const SweepConfig& cfg,
                       const std::vector<CorrelationSample>& rows);

// Runs every point (points computed concurrently, output in config order)
// and writes sweep_p<index>.csv files into cfg.out_dir. Returns the paths.
// Throws std::system_error style I/O failures as std::runtime_error.
std::vector<std::filesystem::path> run_sweep(const SweepConfig& cfg);

// ------------------------------------------------------------- figures --

struct FigurePanel {
    int n = 0;
    std::vector<SystemParams> points;  // one per Stark pair
};

struct FigurePreset {
    std::string id;            // fig2..fig5
    MeasureSelect measure;     // qc for fig2/fig3, qd for fig4/fig5
    double wz = 0.0, wc = 0.0;
    std::vector<FigurePanel> panels;  // n in {0, 1, 3}
    double t_max = 5.0;
    int samples = 1000;
};

// Stark pairs (1,2), (2,3), (3,4), (4,5); lambda1 = lambda2 = 1.
FigurePreset figure_preset(const std::string& id);

// All 24 distinct figure parameter points (4 Stark pairs x n in {0,1,3} x
// both frequency settings).
std::vector<SystemParams> figure_points();

// Writes <id>_n<k>.csv and <id>_n<k>.svg per panel (one curve per Stark
// pair, symmetric backend) into out_dir; returns the emitted paths.
std::vector<std::filesystem::path> reproduce_figure(
    const std::string& id, const std::filesystem::path& out_dir);

}  // namespace starkcav::scan
