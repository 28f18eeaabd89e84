#pragma once

#include <map>
#include <vector>

#include "cubicff/form.hpp"
#include "cubicff/qsixth.hpp"

namespace cubicff {

// formal sum  sum_n c_n phi(n), n even; phi(n) stands for C2*(M + n)
class SecondaryElem {
public:
    SecondaryElem() = default;
    static SecondaryElem phi(int n, const QSixth& c);

    const std::map<int, QSixth>& terms() const { return t_; }
    QSixth coeff(int n) const;

    SecondaryElem operator+(const SecondaryElem& o) const;
    SecondaryElem operator-(const SecondaryElem& o) const;
    SecondaryElem operator*(const QSixth& s) const;
    bool operator==(const SecondaryElem& o) const;

    // drop shifts below min_shift
    SecondaryElem truncated(int min_shift) const;

private:
    void add(int n, const QSixth& c);
    std::map<int, QSixth> t_;
};

struct PrimeCondition {
    Poly P;
    SplitType split;
};

struct PredictionResult {
    int q = 0;
    int M = 0;
    double main = 0;
    double secondary = 0;
    double combined = 0;
    double band = 0;  // Y^(2/3) |P_1 ... P_n|^(2/3), implied constant 1
    std::vector<PrimeCondition> conditions;
};

namespace predict {

SecondaryElem tensor(const SecondaryElem& a, const SecondaryElem& b);
QSixth eval_phi_exact(const SecondaryElem& a, int M, int q);
double eval_phi(const SecondaryElem& a, int M, int q);

// table values
QSixth C2_star(int k, int q);
// sum over sigma of q^(-5 gamma/6) / #Aut * C2^sigma(k - gamma)
QSixth C2_star_assembled(int k, int q);
// the three-case constant of the total count
QSixth C2_total(int M, int q);
Rational main_coefficient(int q);
PredictionResult predict_total(int q, int M);

Rational c_split(SplitType s, int q, int degP);
Rational x_P(int q, int degP);
Rational c1_split(SplitType s, int q, int degP);  // C1 coefficient
SecondaryElem d_P(SplitType s, int q, int degP);
// phi(0) - phi(-2 deg P) |P|^(-5/3)
SecondaryElem euler_factor(int q, int degP);
// sum_{k <= K} phi(-2 k deg P) |P|^(-5k/3), K the first index with tail below q^-30
SecondaryElem euler_factor_inverse(int q, int degP);
// product of euler_factor over all primes of degree <= max_deg, shifts >= -2 max_shift kept
SecondaryElem euler_collapse(int q, int max_deg, int max_shift);
// phi(0) - q^(-2/3) phi(-2)
SecondaryElem collapsed_product(int q);

// the formal secondary element before evaluation (prefactor not included)
SecondaryElem split_secondary_elem(int q, const std::vector<PrimeCondition>& conds);
Rational split_prefactor(int q, const std::vector<PrimeCondition>& conds);
PredictionResult predict_split(int q, int M, const std::vector<PrimeCondition>& conds);
// secondary coefficient C_{2,P,S} (the factor in front of Y^(5/6))
double C2_split(int q, int M, int degP, SplitType s);

struct OneLevelInequality {
    double value = 0;     // 2 C_{2,(111)} - C_{2,(3)} + C_{2,(1^21)}
    double leading = 0;   // -(1/q) |P|^(-1/3) (C2*(M - 4 deg P) - q^(-2/3) C2*(M - 2 - 4 deg P))
    double bracket = 0;   // C2*(M - 4 deg P) - q^(-2/3) C2*(M - 2 - 4 deg P)
    bool negative = false;
};
OneLevelInequality onelevel_inequality(int q, int M, int degP);

}  // namespace predict
}  // namespace cubicff
