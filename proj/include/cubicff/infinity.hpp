#pragma once

#include <array>
#include <string>
#include <vector>

#include "cubicff/field.hpp"
#include "cubicff/form.hpp"
#include "cubicff/qsixth.hpp"

namespace cubicff {

// Exact finite Laurent sum  sum_i c[i] pi^(val+i), pi = 1/T.
struct LPoly {
    int val = 0;
    std::vector<fe> c;
    bool is_zero() const { return c.empty(); }
};

struct LForm {
    std::array<LPoly, 4> co;
};

// Etale cubic algebra over K_inf: splitting type plus the fine tag
// (r in {0,1} for (1^2 1), i in {0,1,2} for (1^3), 0 otherwise).
struct SigmaClass {
    SplitType type = SplitType::S111;
    int fine = 0;
    bool operator==(const SigmaClass& o) const { return type == o.type && fine == o.fine; }
    bool operator!=(const SigmaClass& o) const { return !(*this == o); }
    bool operator<(const SigmaClass& o) const {
        return type != o.type ? static_cast<int>(type) < static_cast<int>(o.type) : fine < o.fine;
    }
};

namespace infinity {

std::string sigma_name(const SigmaClass& s);
SigmaClass sigma_from_name(const std::string& s);
std::vector<SigmaClass> all_sigma(const Fq& F);

int gamma(SplitType t);
inline int gamma(const SigmaClass& s) { return gamma(s.type); }
int aut_order(SplitType t, int q);
inline int aut_order(const SigmaClass& s, int q) { return aut_order(s.type, q); }

struct InfinityData {
    SigmaClass sigma;
    int gamma = 0;     // valuation of the discriminant at infinity at the centre
    int deg_disc = 0;  // finite part
    int M = 0;         // deg Disc + gamma
    int center_n = 0;
};

// exact: walk to the centre vertex and read the class off its top layers
InfinityData classify_at_infinity(const Fq& F, const Form& f);
// same, for a form already reduced at v_n; lc_disc is the leading coefficient of Disc(f)
SigmaClass sigma_of_reduced(const Fq& F, const Form& red, int n, fe lc_disc);

LForm representative_form(const Fq& F, const SigmaClass& s);
int disc_valuation(const Fq& F, const LForm& v);

struct EpsilonContext {
    int ell = 0;
    SigmaClass sigma;
    int v_lambda0_mod3 = 0;  // -v_inf(lambda_0) mod 3
};
EpsilonContext epsilon_context(int ell, const SigmaClass& s);
// representative in {0,1,2} of -v_inf(u lambda_0), where k = v_inf(u)
int epsilon(int k, const EpsilonContext& ctx);

// integral of q^(2 eps(v(x,y) lambda_0)/3) |v(x,y)|^(-2/3) over max(|x|,|y|) = 1, with -v(lambda_0) = L
QSixth integrate_shell(const Fq& F, const LForm& v, int L);
// C2 for a representative and an actual exponent ell; uses v' = pi v(x/pi, y) when ell + vD = 2 mod 4
QSixth eval_C2_at(const Fq& F, const SigmaClass& s, int ell);
// smallest admissible ell in the residue class; bootstrap = take the route through v'
QSixth eval_C2(const Fq& F, const SigmaClass& s, int ell_mod3, bool bootstrap = false);

}  // namespace infinity
}  // namespace cubicff
