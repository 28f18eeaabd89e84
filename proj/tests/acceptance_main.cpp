#include <cstdio>
#include <iostream>

#include "cubicff/acceptance.hpp"

using namespace cubicff;

int main() {
    acceptance::Options opt;
    opt.threads = 1;
    auto rs = acceptance::run(opt);
    std::string baseline = acceptance::report(rs);
    rs.push_back(acceptance::determinism(baseline, opt, {4, 8}));
    bool ok = true;
    for (auto& r : rs) {
        std::cout << acceptance::format(r) << std::endl;
        std::fprintf(stderr, "criterion %d: %.1f s\n", r.id, r.seconds);
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}
