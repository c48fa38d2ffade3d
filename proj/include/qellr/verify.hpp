#ifndef QELLR_VERIFY_HPP
#define QELLR_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace qellr {

struct VerifyOptions {
    bool quick = false;  // smaller sample counts and bounds
    int jobs = 1;
    uint64_t seed = 0;   // offset added to every fixed seed
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;   // deterministic counts only
    double seconds = 0;   // wall time, kept out of the report
};

// Criteria 1-8 of the property suite.
std::vector<CriterionResult> run_property_suite(const VerifyOptions& opt);
// Criterion 9: runs the suite a second time and compares the rendered reports.
CriterionResult determinism_check(const VerifyOptions& opt, const std::string& first_report);
std::vector<CriterionResult> run_verify(const VerifyOptions& opt);

// One line per criterion, without timings.
std::string render_report(const std::vector<CriterionResult>& results);

}  // namespace qellr

#endif
