#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"
#include "cubicff/acceptance.hpp"
#include "cubicff/census.hpp"
#include "cubicff/fourier.hpp"
#include "cubicff/infinity.hpp"
#include "cubicff/onelevel.hpp"
#include "cubicff/predict.hpp"
#include "cubicff/zeta.hpp"
#include "json.hpp"

using namespace cubicff;
using json = nlohmann::json;

namespace {

constexpr int kSchema = 1;
constexpr int kExitFail = 1;
constexpr int kExitBudget = 2;
constexpr std::uint64_t kFullSweep = 2401;  // (R/P)^4 for q = 7, deg P = 1

struct Common {
    int q = 5;
    int threads = 0;
    unsigned seed = 1;
    std::string out;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

void check_q(int q) {
    if (q % 2 == 0 || q % 3 == 0)
        throw UsageError("q = " + std::to_string(q) + " rejected: the characteristic must not be 2 or 3 (gcd(q, 6) = 1)");
    int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(q))));
    bool ok = q <= 49 && (is_prime(q) || (r * r == q && is_prime(r)));
    if (!ok) throw UsageError("q = " + std::to_string(q) + " rejected: q must be a prime or a prime square, at most 49");
}

void check_M(int M) {
    if (M < 4 || M % 2) throw UsageError("M = " + std::to_string(M) + " rejected: M must be even and >= 4");
}

void apply(const Common& c) {
    check_q(c.q);
    if (c.threads > 0) omp_set_num_threads(c.threads);
}

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--q", c.q, "field size")->envname("CUBICFF_Q")->capture_default_str();
    sub->add_option("--threads", c.threads, "OpenMP threads (0: default)")->envname("CUBICFF_THREADS");
    sub->add_option("--seed", c.seed, "seed")->envname("CUBICFF_SEED")->capture_default_str();
    sub->add_option("--out", c.out, "output path (stdout when empty)")->envname("CUBICFF_OUT");
}

// stdout or a file
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw UsageError("cannot open " + path);
        }
    }
    std::ostream& os() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

// "c0,c1,...,cd" lowest coefficient first; monic irreducible
Poly parse_prime(const Fq& F, const std::string& s) {
    std::vector<int> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            v.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw UsageError("bad prime '" + s + "': expected comma-separated coefficients, constant term first");
        }
    }
    for (int x : v)
        if (x < 0 || x >= F.q()) throw UsageError("bad prime '" + s + "': coefficients must lie in 0..q-1");
    Poly P = poly::from_ints(v);
    if (!poly::is_monic(P) || poly::deg(P) < 1 || !poly::is_irreducible(F, P))
        throw UsageError("bad prime '" + s + "': not a monic irreducible polynomial of degree >= 1");
    return P;
}

std::vector<PrimeCondition> parse_conditions(const Fq& F, const std::vector<std::string>& primes,
                                             const std::vector<std::string>& splits) {
    if (primes.size() != splits.size()) throw UsageError("--prime and --split must be given in pairs");
    std::vector<PrimeCondition> out;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        SplitType t;
        try {
            t = split_from_name(splits[i]);
        } catch (const std::exception&) {
            throw UsageError("bad splitting type '" + splits[i] + "'");
        }
        out.push_back({parse_prime(F, primes[i]), t});
    }
    return out;
}

std::string conditions_str(const Fq& F, const std::vector<PrimeCondition>& cs) {
    std::string s;
    for (auto& c : cs) s += (s.empty() ? "" : ";") + poly::str(F, c.P) + ":" + split_name(c.split);
    return s.empty() ? "none" : s;
}

std::string g17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

int cmd_tables(const Common& c, const std::vector<int>& Ms) {
    apply(c);
    Fq F(c.q);
    Sink out(c.out);
    auto& os = out.os();
    os << "schema_version,table,key,column,value_exact,value_float\n";
    for (auto& s : infinity::all_sigma(F))
        for (int col = 0; col < 3; ++col) {
            QSixth v = infinity::eval_C2(F, s, col);
            os << kSchema << ",C2," << infinity::sigma_name(s) << "," << col << "," << csv_quote(v.str()) << ","
               << g17(v.to_double()) << "\n";
        }
    for (int k = 0; k < 3; ++k) {
        QSixth v = predict::C2_star(k, c.q);
        os << kSchema << ",C2star,k_mod3," << k << "," << csv_quote(v.str()) << "," << g17(v.to_double()) << "\n";
    }
    for (auto t : kSplitTypes) {
        SecondaryElem d = predict::d_P(t, c.q, 1);
        for (auto& [n, v] : d.terms())
            os << kSchema << ",d_P_deg1," << split_name(t) << ",phi(" << n << ")," << csv_quote(v.str()) << ","
               << g17(v.to_double()) << "\n";
    }
    for (int M : Ms) {
        check_M(M);
        auto p = predict::predict_total(c.q, M);
        for (auto [name, v] : {std::pair{"main", p.main}, std::pair{"secondary", p.secondary},
                               std::pair{"combined", p.combined}, std::pair{"band", p.band}})
            os << kSchema << ",predict_total,M=" << M << "," << name << ",," << g17(v) << "\n";
    }
    return 0;
}

int cmd_fourier(const Common& c, const std::string& prime, double tol, std::uint64_t samples) {
    apply(c);
    Fq F(c.q);
    Poly P = parse_prime(F, prime);
    if (poly::deg(P) > 2) throw UsageError("fourier-check supports primes of degree <= 2");
    fourier::ResidueSpace S(F, P);
    auto w = fourier::tabulate(S, [&](const Form& x) { return fourier::omega(F, x, P); });
    auto wt = fourier::tabulate(S, [&](const Form& x) { return fourier::omega_tilde(F, x, P); });
    struct Row {
        long long count = 0;
        double brute = 0, closed = 0, diff = 0;
    };
    std::map<std::pair<std::string, std::string>, Row> rows;
    double worst = 0;
    // every dual form when the space is small, otherwise the zero form and a seeded sample
    std::vector<std::uint64_t> duals;
    if (S.size() <= kFullSweep) {
        for (std::uint64_t i = 0; i < S.size(); ++i) duals.push_back(i);
    } else {
        std::mt19937_64 rng(c.seed);
        duals.push_back(0);
        while (duals.size() < samples) duals.push_back(rng() % S.size());
    }
    for (std::uint64_t i : duals) {
        Form y = S.form(i);
        std::string cls;
        if (i == 0)
            cls = "zero";
        else if (fourier::has_triple_root(F, y, P))
            cls = "triple_root";
        else if (poly::mod(F, form::disc(F, y), P).empty())
            cls = "double_root";
        else
            cls = "nonsingular";
        for (int k = 0; k < 2; ++k) {
            auto v = fourier::brute_fourier(S, k ? wt : w, y);
            double cl = (k ? fourier::omega_tilde_hat_closed(F, P, y) : fourier::omega_hat_closed(F, P, y))
                            .convert_to<double>();
            Row& r = rows[{k ? "omega_tilde" : "omega", cls}];
            if (r.count++ == 0) {
                r.brute = v.real();
                r.closed = cl;
            }
            r.diff = std::max(r.diff, std::abs(v - cl));
            worst = std::max(worst, r.diff);
        }
    }
    Sink out(c.out);
    auto& os = out.os();
    os << "schema_version,P,transform,y_class,count,brute,closed,abs_diff\n";
    for (auto& [key, r] : rows)
        os << kSchema << "," << csv_quote(poly::str(F, P)) << "," << key.first << "," << key.second << "," << r.count
           << "," << g17(r.brute) << "," << g17(r.closed) << "," << g17(r.diff) << "\n";
    return worst < tol ? 0 : kExitFail;
}

int cmd_c2(const Common& c, bool all_fine) {
    apply(c);
    Fq F(c.q);
    Sink out(c.out);
    auto& os = out.os();
    os << "schema_version,sigma,ell_mod3,value_exact,value_float\n";
    for (auto& s : infinity::all_sigma(F)) {
        if (!all_fine && s.fine != 0) continue;
        for (int col = 0; col < 3; ++col) {
            QSixth v = infinity::eval_C2(F, s, col);
            os << kSchema << "," << infinity::sigma_name(s) << "," << col << "," << csv_quote(v.str()) << ","
               << g17(v.to_double()) << "\n";
        }
    }
    return 0;
}

int cmd_census(const Common& c, int M, const std::vector<std::string>& primes, const std::vector<std::string>& splits,
               const std::string& method, int boundA, int boundB, int margin) {
    apply(c);
    check_M(M);
    Fq F(c.q);
    auto conds = parse_conditions(F, primes, splits);
    std::string counts_path = c.out.empty() ? "" : c.out + ".counts.csv";
    std::string records_path = c.out.empty() ? "" : c.out + ".jsonl";
    long long s3 = 0, gal = 0;
    bool stable = true;
    std::string mass = "";
    if (method == "exact") {
        Census cs = census::enumerate_fields(F, M);
        stable = cs.stable;
        std::stringstream ms;
        ms << cs.mass_orbits;
        mass = ms.str();
        s3 = census::count_fields_split(F, cs, conds, false);
        gal = census::count_fields_split(F, cs, conds, true) - s3;
        if (!records_path.empty()) {
            Sink rec(records_path);
            for (auto& r : cs.fields) {
                bool keep = true;
                for (auto& cd : conds) keep = keep && census::split_at(F, cs, r, cd.P) == cd.split;
                if (!keep) continue;
                json j = json::parse(census::record_json(F, r));
                j["schema_version"] = kSchema;
                rec.os() << j.dump() << "\n";
            }
        }
    } else if (method == "generators") {
        if (!conds.empty()) throw UsageError("splitting conditions need --method exact");
        auto base = census::generator_fields(F, M, boundA, boundB);
        auto wide = census::generator_fields(F, M, boundA + margin, boundB + margin);
        std::set<std::vector<std::vector<int>>> a, b;
        for (auto& g : base) a.insert(form::to_ints(g.form));
        for (auto& g : wide) b.insert(form::to_ints(g.form));
        stable = a == b;
        for (auto& g : base) (g.galois ? gal : s3)++;
        if (!records_path.empty()) {
            Sink rec(records_path);
            for (auto& g : base) {
                json j{{"schema_version", kSchema}, {"M", g.M},         {"galois", g.galois},
                       {"form", form::to_ints(g.form)}, {"generator_disc", poly::str(F, g.generator_disc)},
                       {"index", poly::str(F, g.index)}};
                rec.os() << j.dump() << "\n";
            }
        }
    } else {
        throw UsageError("--method must be exact or generators");
    }
    Sink out(counts_path);
    out.os() << "schema_version,q,M,conditions,method,s3,galois,total,mass,stable\n"
             << kSchema << "," << c.q << "," << M << "," << csv_quote(conditions_str(F, conds)) << "," << method
             << "," << s3 << "," << gal << "," << s3 + gal << "," << csv_quote(mass) << ","
             << (stable ? "true" : "false") << "\n";
    return 0;
}

int cmd_zeta(const Common& c, int M, double tol) {
    apply(c);
    check_M(M);
    Fq F(c.q);
    Census cs = census::enumerate_fields(F, M);
    std::vector<zeta::FieldZeta> zs;
    auto rep = zeta::census_zeta(F, cs, &zs);
    Sink out(c.out);
    for (std::size_t i = 0; i < zs.size(); ++i) {
        json j{{"schema_version", kSchema},
               {"M", M},
               {"g", zs[i].lp.g},
               {"sigma", infinity::sigma_name(cs.fields[i].sigma)},
               {"e", zs[i].lp.e},
               {"rh_deviation", zs[i].rh},
               {"form", form::to_ints(cs.fields[i].form)}};
        out.os() << j.dump() << "\n";
    }
    json s{{"schema_version", kSchema}, {"q", c.q},        {"M", M},
           {"fields", rep.fields},       {"fe_failures", rep.fe_failures},
           {"weil_failures", rep.weil_failures}, {"max_rh", rep.max_rh},
           {"max_trace_diff", rep.max_trace_diff}};
    std::cerr << s.dump() << "\n";
    bool ok = rep.fe_failures == 0 && rep.weil_failures == 0 && rep.max_rh < tol && rep.max_trace_diff < tol;
    return ok ? 0 : kExitFail;
}

int cmd_onelevel(const Common& c, const std::vector<int>& Ms, double supp, double tol) {
    apply(c);
    Fq F(c.q);
    auto t = onelevel::fejer_pair(supp);
    Sink out(c.out);
    auto& os = out.os();
    os << "schema_version,M,sigma_supp,avg_D,prediction,gap,family_size,avg_explicit,max_method_diff,"
          "predicted_main,predicted_corrected\n";
    bool ok = true;
    for (int M : Ms) {
        check_M(M);
        Census cs = census::enumerate_fields(F, M);
        std::vector<zeta::FieldZeta> zs;
        zeta::census_zeta(F, cs, &zs);
        auto r = onelevel::family_average(F, cs, zs, t);
        ok = ok && r.max_method_diff < tol && r.cap_violations == 0;
        os << kSchema << "," << M << "," << g17(supp) << "," << g17(r.avg_zeros) << "," << g17(r.symplectic) << ","
           << g17(r.gap) << "," << r.family_size << "," << g17(r.avg_explicit) << "," << g17(r.max_method_diff)
           << "," << g17(r.predicted_main) << "," << g17(r.predicted_corrected) << "\n";
    }
    return ok ? 0 : kExitFail;
}

int cmd_predict(const Common& c, const std::vector<int>& Ms, const std::vector<std::string>& primes,
                const std::vector<std::string>& splits, bool with_census) {
    apply(c);
    Fq F(c.q);
    auto conds = parse_conditions(F, primes, splits);
    Sink out(c.out);
    auto& os = out.os();
    os << "schema_version,q,M,conditions,main,secondary,combined,band";
    if (with_census) os << ",count,residual_main,residual_combined";
    os << "\n";
    for (int M : Ms) {
        check_M(M);
        auto p = predict::predict_split(c.q, M, conds);
        os << kSchema << "," << c.q << "," << M << "," << csv_quote(conditions_str(F, conds)) << "," << g17(p.main)
           << "," << g17(p.secondary) << "," << g17(p.combined) << "," << g17(p.band);
        if (with_census) {
            Census cs = census::enumerate_fields(F, M);
            double n = static_cast<double>(census::count_fields_split(F, cs, conds, true));
            os << "," << static_cast<long long>(n) << "," << g17(n - p.main) << "," << g17(n - p.combined);
        }
        os << "\n";
    }
    return 0;
}

int cmd_verify(const Common& c, double budget, bool determinism) {
    apply(c);
    acceptance::Options opt;
    opt.threads = c.threads > 0 ? c.threads : 1;
    opt.seed = c.seed;
    opt.budget_seconds = budget;
    auto rs = acceptance::run(opt);
    bool partial = rs.size() < 11;
    if (determinism && !partial) {
        std::vector<int> others;
        for (int n : {1, 4, 8})
            if (n != opt.threads) others.push_back(n);
        rs.push_back(acceptance::determinism(acceptance::report(rs), opt, others));
    }
    Sink out(c.out);
    bool ok = true;
    for (auto& r : rs) {
        out.os() << acceptance::format(r) << "\n";
        std::fprintf(stderr, "criterion %d: %.1f s\n", r.id, r.seconds);
        ok = ok && r.pass;
    }
    if (partial) {
        out.os() << "PARTIAL: budget of " << budget << " s exhausted after " << rs.size() << " criteria\n";
        return kExitBudget;
    }
    return ok ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cubic function field census and verification"};
    app.set_config("--config", "", "TOML/INI configuration file; flags win");
    app.require_subcommand(1);

    Common common;
    std::vector<int> Ms{4, 6, 8};
    std::vector<std::string> primes, splits;
    std::string prime = "0,1", method = "exact";
    int M = 6, boundA = 2, boundB = 3, margin = 1;
    double tol = 0, supp = 1, budget = 0;
    std::uint64_t samples = 32;
    bool all_fine = false, with_census = false, no_det = false;

    auto* tables = app.add_subcommand("tables", "C2, C2*, d_P and total predictions as CSV");
    add_common(tables, common);
    tables->add_option("--M", Ms, "discriminant exponents for the prediction rows");

    auto* fc = app.add_subcommand("fourier-check", "brute-force transforms against the closed forms");
    add_common(fc, common);
    fc->add_option("--prime", prime, "monic prime, coefficients constant term first")->capture_default_str();
    fc->add_option("--tol", tol, "tolerance")->default_val(1e-10);
    fc->add_option("--samples", samples, "dual forms sampled when the residue space exceeds 7^4")->capture_default_str();

    auto* c2 = app.add_subcommand("c2-integrate", "C2 values at infinity as CSV");
    add_common(c2, common);
    c2->add_flag("--all-sigma", all_fine, "every fine class instead of one per splitting type");

    auto* cen = app.add_subcommand("census", "exact field census; JSON-lines records and a counts CSV");
    add_common(cen, common);
    cen->add_option("--M", M, "discriminant exponent")->envname("CUBICFF_M")->capture_default_str();
    cen->add_option("--prime", primes, "prime condition (repeatable)");
    cen->add_option("--split", splits, "splitting type for the matching --prime");
    cen->add_option("--method", method, "exact or generators")->capture_default_str();
    cen->add_option("--boundsA", boundA, "generator route: deg A bound")->capture_default_str();
    cen->add_option("--boundsB", boundB, "generator route: deg B bound")->capture_default_str();
    cen->add_option("--margin", margin, "generator route: bound increase for the stability check")
        ->capture_default_str();

    auto* zt = app.add_subcommand("zeta", "L-polynomials of every census field as JSON-lines");
    add_common(zt, common);
    zt->add_option("--M", M, "discriminant exponent")->envname("CUBICFF_M")->capture_default_str();
    zt->add_option("--tol", tol, "RH and trace tolerance")->default_val(1e-7);

    auto* ol = app.add_subcommand("onelevel", "family one-level density as CSV");
    add_common(ol, common);
    ol->add_option("--M", Ms, "discriminant exponents")->default_str("6 8");
    ol->add_option("--supp", supp, "Fourier support of the Fejer test function")->capture_default_str();
    ol->add_option("--tol", tol, "per-field method tolerance")->default_val(1e-6);

    auto* pr = app.add_subcommand("predict", "main and secondary term predictions as CSV");
    add_common(pr, common);
    pr->add_option("--M", Ms, "discriminant exponents");
    pr->add_option("--prime", primes, "prime condition (repeatable)");
    pr->add_option("--split", splits, "splitting type for the matching --prime");
    pr->add_flag("--census", with_census, "add exact census counts and residuals");

    auto* vf = app.add_subcommand("verify", "run the acceptance suite");
    add_common(vf, common);
    vf->add_option("--budget", budget, "seconds; stop with a partial marker once exceeded (0: none)");
    vf->add_flag("--no-determinism", no_det, "skip the thread-count rerun");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (ol->parsed() && ol->count("--M") == 0) Ms = {6, 8};
    try {
        if (tables->parsed()) return cmd_tables(common, Ms);
        if (fc->parsed()) return cmd_fourier(common, prime, tol, samples);
        if (c2->parsed()) return cmd_c2(common, all_fine);
        if (cen->parsed()) return cmd_census(common, M, primes, splits, method, boundA, boundB, margin);
        if (zt->parsed()) return cmd_zeta(common, M, tol);
        if (ol->parsed()) return cmd_onelevel(common, Ms, supp, tol);
        if (pr->parsed()) return cmd_predict(common, Ms, primes, splits, with_census);
        if (vf->parsed()) return cmd_verify(common, budget, !no_det);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return 0;
}
