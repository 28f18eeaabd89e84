#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cubicff/extfield.hpp"
#include "cubicff/field.hpp"
#include "cubicff/form.hpp"
#include "cubicff/infinity.hpp"
#include "cubicff/poly.hpp"
#include "cubicff/predict.hpp"

namespace cubicff {

struct FieldRecord {
    Form form;  // canonical reduced representative (reduction::canonical_reduced)
    int M = 0;
    int center_n = 0;
    SigmaClass sigma;
    bool galois = false;
    Poly disc;
    // splitting type at every prime of degree <= split_deg, in poly::primes_of_degree order
    std::vector<SplitType> split;
    // filled by zeta: coefficients of the L-polynomial (fingerprint together with M, sigma)
    std::vector<long long> lpoly;
};

struct CensusOptions {
    int split_deg = 2;
    bool mass_check = true;  // also sum weights over every enumerated form
};

struct Census {
    int q = 0;
    int M = 0;
    std::vector<FieldRecord> fields;  // sorted by form::less of the representative
    std::vector<Poly> split_primes;   // primes matching FieldRecord::split
    long long s3 = 0;
    long long galois = 0;
    // sum over orbits of 1/#Stab, from the canonical records
    Rational mass_orbits;
    // sum over all enumerated forms of |normalizer slice| / |G_n|
    Rational mass_weighted;
    bool mass_checked = false;
    bool stable = true;  // the two mass computations agree (true when unchecked)
    long long forms_examined = 0;
};

namespace census {

// vertices v_n that can carry maximal irreducible forms with disc exponent M
std::vector<int> center_vertices(int M);

// exact enumeration by reduction theory; OpenMP over work items, deterministic merge
Census enumerate_fields(const Fq& F, int M, const CensusOptions& opt = {});
// serial reference: normalized forms at every vertex and reduction::canonical_reduced
Census enumerate_fields_serial(const Fq& F, int M, const CensusOptions& opt = {});

long long count_fields(const Census& c, bool include_galois = false);
// conditions must name distinct primes
long long count_fields_split(const Fq& F, const Census& c, const std::vector<PrimeCondition>& conds,
                             bool include_galois = false);
SplitType split_at(const Fq& F, const Census& c, const FieldRecord& r, const Poly& P);

struct OrbitCount {
    long long orbits = 0;
    Rational mass;
};
// GL2(R)-orbits of irreducible forms (not necessarily maximal) with deg Disc = ell and class sigma
OrbitCount enumerate_form_orbits(const Fq& F, int ell, const SigmaClass& sigma);

struct GeneratorRecord {
    Form form;  // canonical form of the maximalized generator
    Poly generator_disc;
    Poly index;
    Poly max_disc;
    int M = 0;
    bool galois = false;
};
// x^3 + A x + B with deg A <= degA, deg B <= degB; maximalize and keep irreducible ones with disc exponent M
std::vector<GeneratorRecord> generator_fields(const Fq& F, int M, int degA, int degB);

// number of pairs of records with equal (M, sigma, L-polynomial) but different splitting
long long fingerprint_collisions(const Census& c);

std::string record_json(const Fq& F, const FieldRecord& r);

}  // namespace census
}  // namespace cubicff
