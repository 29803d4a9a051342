#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qfscan/bounds.hpp"
#include "qfscan/types.hpp"

namespace qfscan::scan {

struct ScanConfig {
    GroupKind group = GroupKind::SL2;
    Signature sig{0, 1};
    i64 dmin = -50;
    i64 dmax = -3;
    double R = 5.0;
    double rho = 8.0;
    double tol = 1e-9;
    std::string out_dir;  // empty: no files written
    int jobs = 1;
    double safety = 4.0;  // frozen-constant safety factor over the calibration max
    void validate() const;
};

struct ScanResult {
    std::vector<BoundReport> reports;  // deterministic order: |D| asc, then label
    bounds::HarnessConstants constants;
    std::optional<double> min_regulator;  // real-signature scans
    std::optional<bounds::DecayFit> decay;
    int exit_code = 0;  // 0 all pass, 1 check failure
};

ScanResult run_scan_collect(const ScanConfig& cfg);

// writes scan.csv and scan.json under cfg.out_dir (if set); returns exit code
int run_scan(const ScanConfig& cfg);

std::string reports_to_csv(const std::vector<BoundReport>& reports);
std::string result_to_json(const ScanConfig& cfg, const ScanResult& res);

}  // namespace qfscan::scan
