#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spinboson::acceptance {

struct Options {
    double nbar = 50.0;
    int n_max = 150;
    double phi = 0.52359877559829882;  // pi/6
    std::uint64_t seed = 20240917;
    unsigned threads = 0;
};

struct CriterionResult {
    int id;
    std::string name;
    bool passed;
    double measured;
    double threshold;
    std::string detail;
};

CriterionResult unitarity(const Options& o);
CriterionResult two_path_equivalence(const Options& o);
CriterionResult oracle_equivalence(const Options& o);
CriterionResult figure2_reproduction(const Options& o);
CriterionResult figure3_reproduction(const Options& o);
CriterionResult overlap_law(const Options& o);
CriterionResult entanglement_horizon(const Options& o);
CriterionResult state_preparation(const Options& o);
CriterionResult correction_factor_fidelity(const Options& o);
CriterionResult determinism(const Options& o);

std::vector<CriterionResult> run_all(const Options& o);

// "PASS  [4] name: measured=... threshold=... detail"
std::string format_line(const CriterionResult& r);
std::string to_json(const Options& o, const std::vector<CriterionResult>& results);

// Upper envelope of y sampled on x: local maxima (plus both endpoints)
// joined by linear interpolation, evaluated back on x.
std::vector<double> peak_envelope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace spinboson::acceptance
