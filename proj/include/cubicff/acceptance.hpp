#pragma once

#include <string>
#include <vector>

namespace cubicff {
namespace acceptance {

struct Options {
    int threads = 0;            // 0 keeps the OpenMP default
    unsigned seed = 1;          // drives the sampled canonical-form check
    double budget_seconds = 0;  // 0: no limit; otherwise stop before the next criterion once exceeded
};

struct Result {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;  // never part of the formatted line
};

// criteria 1..11 in order; fewer when the budget runs out
std::vector<Result> run(const Options& opt);
// criterion 12: rerun criteria 1..11 at each thread count and compare with the baseline text
Result determinism(const std::string& baseline, const Options& opt, const std::vector<int>& threads);

std::string format(const Result& r);
std::string report(const std::vector<Result>& rs);

}  // namespace acceptance
}  // namespace cubicff
