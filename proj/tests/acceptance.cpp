// Acceptance runner: one PASS/FAIL line per criterion. Optional argument: path of the qellr CLI,
// used for the determinism criterion (two `verify --quick` runs compared byte for byte).
#include <array>
#include <cstdio>
#include <iostream>
#include <string>

#include "qellr/verify.hpp"

using namespace qellr;

namespace {

bool run_capture(const std::string& cmd, std::string& out) {
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return false;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    return pclose(p) == 0;
}

void print(const CriterionResult& r) {
    std::printf("%s  %d  %s: %s  [%.2fs]\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str(),
                r.seconds);
    std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
    VerifyOptions opt;
    auto results = run_property_suite(opt);
    bool all = true;
    for (const auto& r : results) {
        print(r);
        all = all && r.pass;
    }
    CriterionResult det;
    if (argc > 1) {
        det.id = 9;
        det.name = "determinism";
        std::string cmd = std::string("\"") + argv[1] + "\" verify --quick 2>/dev/null";
        std::string a, b;
        bool ok_a = run_capture(cmd, a), ok_b = run_capture(cmd, b);
        det.pass = ok_a && ok_b && a == b && !a.empty();
        det.detail = std::string("two `verify --quick` runs ") + (a == b ? "byte-identical" : "differ") +
                     (ok_a && ok_b ? "" : ", nonzero exit");
    } else {
        det = determinism_check(opt, render_report(results));
    }
    print(det);
    all = all && det.pass;
    std::printf("%s\n", all ? "ALL PASS" : "SOME CRITERIA FAILED");
    return all ? 0 : 1;
}
