#pragma once

#include <functional>
#include <vector>

#include "cubicff/census.hpp"
#include "cubicff/zeta.hpp"

namespace cubicff {

// real even psi whose transform psi_hat(u) = int psi(x) e^{-2 pi i u x} dx is supported in [-supp, supp]
struct TestFunction {
    double supp = 1;
    std::function<double(double)> psi;
    std::function<double(double)> psi_hat;
    bool fejer = false;  // closed-form periodization available
};

struct DensityReport {
    int q = 0;
    int M = 0;
    int N = 0;  // 2g
    double supp = 0;
    long long family_size = 0;
    double avg_zeros = 0;
    double avg_explicit = 0;
    double max_method_diff = 0;  // per field
    double trivial_cap = 0;
    long long cap_violations = 0;
    double symplectic = 0;           // psi_hat(0) - psi(0)/2
    double gap = 0;                  // avg_zeros - symplectic
    double from_split_counts = 0;    // average rebuilt from census counts #F_{P,S}, all places of degree | n
    double predicted_main = 0;       // same sum with #F_{P,S} replaced by the main terms
    double predicted_corrected = 0;  // main plus secondary terms
};

namespace onelevel {

TestFunction fejer_pair(double supp);
// max over xs of |psi(x) - int psi_hat(u) cos(2 pi u x) du|
double fourier_pair_error(const TestFunction& t, const std::vector<double>& xs);

// sum_m psi(x + N m)
double periodized(const TestFunction& t, double x, int N);
double D_L_from_zeros(const std::vector<double>& angles, int N, const TestFunction& t);
// (1/N) sum_n psi_hat(n/N) c_n with c_{-n} = c_n; c must reach floor(supp N)
double D_L_explicit(const std::vector<double>& c, int N, const TestFunction& t);
// |D_L| <= N (psi(0) + 1/(supp N^2)) for the Fejer pair
double trivial_cap(const TestFunction& t, int N);

DensityReport family_average(const Fq& F, const Census& c, const std::vector<zeta::FieldZeta>& zs,
                             const TestFunction& t, bool parallel = true);

}  // namespace onelevel
}  // namespace cubicff
