#pragma once

#include <string>
#include <vector>

#include "exciton/cylinder2d.hpp"
#include "exciton/schrodinger1d.hpp"
#include "exciton/solvable.hpp"

namespace exciton {

// Zero means "choose automatically" for either field.
struct GridPolicy {
    double half_length = 0.0;
    int points = 0;
};

Grid1D grid_1d(Radius r, const GridPolicy& policy);
Grid1D grid_2d(Radius r, const GridPolicy& policy, int levels = 1);

// One H_C level and its counterparts: the j-th level of the same parity in
// the H_eff and full spectra. Missing counterparts and their gaps are NaN.
struct LevelRow {
    int level;  // position in the H_C list, from 1
    Parity parity;
    double hc, heff, full;
    double gap_eff_c, gap_full_eff, gap_full_c;
};

struct RadiusRecord {
    double radius;
    Grid1D grid_1d, grid_2d;
    std::vector<HcLevel> hc;
    std::vector<HeffLevel> heff;
    std::vector<FullLevel> full;
    std::vector<LevelRow> rows;
};

enum class Trend { NonIncreasing, Increasing, NotApplicable };
std::string to_string(Trend t);
Trend trend_from_string(const std::string& s);

// Behaviour of each gap of one level along the sweep.
struct LevelVerdict {
    int level;
    Trend eff_c, full_eff, full_c;
};

struct SpectrumReport {
    int levels;
    int mode_cut;
    std::vector<RadiusRecord> records;  // in sweep order
    std::vector<LevelVerdict> verdicts;
};

// Radii must be strictly descending. Radii run on worker threads
// (threads = 0: hardware concurrency); records keep input order.
SpectrumReport convergence_report(const std::vector<double>& r_values, int levels, const GridPolicy& policy,
                                  int mode_cut = 4, int threads = 0);

// Sign-free trend of a sequence, NaNs skipped; n/a with fewer than two values.
Trend gap_trend(const std::vector<double>& gaps);

std::string report_to_json(const SpectrumReport& report);
SpectrumReport report_from_json(const std::string& text);
std::string report_to_csv(const SpectrumReport& report);

}  // namespace exciton
