#include "cubicff/census.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <omp.h>

#include "cubicff/reduction.hpp"

namespace cubicff {
namespace census {

namespace {

using V4 = std::array<fe, 4>;

struct Found {
    Form f;
    int n = 0;
    SigmaClass sigma;
    bool galois = false;
    Poly disc;
    int stab = 1;
};

struct ScanSpec {
    int M = 0;              // 4H - 2n at the centre
    bool maximal = true;    // keep maximal forms only
    int ell = -1;           // if >= 0: require deg Disc = ell
    std::optional<SigmaClass> sigma;
    bool mass = true;
};

struct ItemOut {
    std::vector<Found> found;
    long long examined = 0;
    long long weighted = 0;  // forms passing the filter, to be weighted by the item's slice weight
};

// the filter shared by every route; the caller guarantees f is reduced at v_n with a != 0
bool examine(const Fq& F, const Form& f, int n, const ScanSpec& sp, const FqTypeTable& tt, Found& out) {
    Poly D = form::disc(F, f);
    if (D.empty()) return false;
    SigmaClass s = infinity::sigma_of_reduced(F, f, n, poly::lc(D));
    int H = reduction::top_index(f, n);
    if (poly::deg(D) + infinity::gamma(s) != 4 * H - 2 * n)
        throw std::logic_error("census: centre invariant differs from gamma(sigma)");
    if (sp.ell >= 0 && poly::deg(D) != sp.ell) return false;
    if (sp.sigma && *sp.sigma != s) return false;
    if (sp.maximal && !form::is_maximal(F, f)) return false;
    bool irr = false;
    for (int t = 0; t < F.q() && !irr; ++t) {
        V4 v = form::eval_at(F, f, static_cast<fe>(t));
        irr = tt(v[0], v[1], v[2], v[3]) == SplitType::S3;
    }
    if (!irr && !form::is_irreducible(F, f)) return false;
    out.f = f;
    out.n = n;
    out.sigma = s;
    out.galois = poly::is_square(F, D);
    out.disc = std::move(D);
    return true;
}

Form assemble(const std::vector<V4>& layers, int H) {
    // n = 0: layer j holds the coefficients of T^(H-j)
    Form f;
    for (int k = 0; k < 4; ++k) {
        Poly p(H + 1, 0);
        for (int j = 0; j <= H; ++j) p[H - j] = layers[j][k];
        poly::trim(p);
        f.co[k] = std::move(p);
    }
    return f;
}

V4 v4_from_index(int q, std::uint64_t idx) {
    V4 v;
    for (int k = 3; k >= 0; --k) {
        v[k] = static_cast<fe>(idx % q);
        idx /= q;
    }
    return v;
}

std::uint64_t ipow_u(int q, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= static_cast<std::uint64_t>(q);
    return r;
}

// n = 0 via top-layer orbit representatives: forms with top layer v modulo Stab(v) in GL2(F_q)
struct TopRep {
    V4 v;
    std::vector<SmallMat> stab;
    std::vector<V4> next;  // second layers keeping the form reduced
};

std::vector<TopRep> top_reps(const Fq& F, const reduction::TopLayerIndex& idx) {
    int q = F.q();
    std::vector<TopRep> out;
    for (std::uint64_t i = 1; i < ipow_u(q, 4); ++i) {
        V4 v = v4_from_index(q, i);
        const auto& mins = idx.minimisers(v);
        if (reduction::apply(F, idx.group()[mins[0]], v) != v) continue;
        TopRep r;
        r.v = v;
        for (auto& g : idx.group())
            if (reduction::apply(F, g, v) == v) r.stab.push_back(g);
        for (std::uint64_t j = 0; j < ipow_u(q, 4); ++j) {
            V4 w = v4_from_index(q, j);
            if (reduction::layers_reduced(F, v, w)) r.next.push_back(w);
        }
        out.push_back(std::move(r));
    }
    return out;
}

struct Scan {
    std::vector<Found> found;
    long long examined = 0;
    Rational mass_weighted;
};

Scan scan_vertex0_fast(const Fq& F, const ScanSpec& sp, const reduction::TopLayerIndex& idx,
                       const FqTypeTable& tt, bool parallel) {
    int q = F.q();
    int H = sp.M / 4;
    auto reps = top_reps(F, idx);
    struct Item {
        int rep;
        int next;
    };
    std::vector<Item> items;
    for (int r = 0; r < static_cast<int>(reps.size()); ++r) {
        if (H == 0) {
            items.push_back({r, -1});
            continue;
        }
        for (int j = 0; j < static_cast<int>(reps[r].next.size()); ++j) items.push_back({r, j});
    }
    std::uint64_t inner = H >= 2 ? ipow_u(q, 4 * (H - 1)) : 1;
    std::vector<ItemOut> outs(items.size());

    auto run = [&](std::size_t it) {
        const TopRep& rep = reps[items[it].rep];
        ItemOut& o = outs[it];
        std::vector<V4> layers(H + 1);
        layers[0] = rep.v;
        if (H >= 1) layers[1] = rep.next[items[it].next];
        for (std::uint64_t k = 0; k < inner; ++k) {
            std::uint64_t x = k;
            for (int j = 2; j <= H; ++j) {
                layers[j] = v4_from_index(q, x % ipow_u(q, 4));
                x /= ipow_u(q, 4);
            }
            bool anya = false;
            for (int j = 0; j <= H; ++j) anya = anya || layers[j][0] != 0;
            if (!anya) continue;
            Form f = assemble(layers, H);
            ++o.examined;
            auto canonical = [&] {
                for (auto& g : rep.stab)
                    if (form::less(reduction::apply(F, g, f), f)) return false;
                return true;
            };
            bool canon = true;
            if (!sp.mass) {
                canon = canonical();
                if (!canon) continue;
            }
            Found fd;
            if (!examine(F, f, 0, sp, tt, fd)) continue;
            ++o.weighted;
            if (sp.mass) canon = canonical();
            if (!canon) continue;
            int st = 0;
            for (auto& g : rep.stab) st += reduction::apply(F, g, f) == f;
            fd.stab = st;
            o.found.push_back(std::move(fd));
        }
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::size_t it = 0; it < items.size(); ++it) run(it);
    } else {
        for (std::size_t it = 0; it < items.size(); ++it) run(it);
    }
    Scan s;
    for (std::size_t it = 0; it < items.size(); ++it) {
        auto& o = outs[it];
        s.examined += o.examined;
        s.mass_weighted += Rational(o.weighted, static_cast<long long>(reps[items[it].rep].stab.size()));
        for (auto& fd : o.found) s.found.push_back(std::move(fd));
    }
    return s;
}

// normalized forms at v_n: a monic, b_{deg a .. deg a + n} = 0; slice weight |N| / |G_n|
Scan scan_normalized(const Fq& F, int n, const ScanSpec& sp, const reduction::TopLayerIndex& idx,
                     const FqTypeTable& tt, bool parallel) {
    int q = F.q();
    int H = (sp.M + 2 * n) / 4;
    int db = H - n, dc = H, dd = H + n;
    std::uint64_t nc = ipow_u(q, dc + 1), nd = ipow_u(q, dd + 1);
    // index layout per degree of a: free b coefficients, then c, then d
    std::vector<std::pair<int, std::uint64_t>> blocks;
    for (int da = 0; da <= H - 2 * n; ++da) {
        int nb_free = 0;
        for (int i = 0; i <= db; ++i)
            if (i < da || i > da + n) ++nb_free;
        blocks.push_back({da, ipow_u(q, da) * ipow_u(q, nb_free) * nc * nd});
    }
    const std::uint64_t chunk = 4096;
    struct Item {
        int da;
        std::uint64_t lo, hi;
    };
    std::vector<Item> items;
    for (auto& [da, cnt] : blocks)
        for (std::uint64_t lo = 0; lo < cnt; lo += chunk) items.push_back({da, lo, std::min(cnt, lo + chunk)});
    std::vector<ItemOut> outs(items.size());

    auto run = [&](std::size_t it) {
        const Item& I = items[it];
        ItemOut& o = outs[it];
        std::vector<int> bfree_idx;
        for (int i = 0; i <= db; ++i)
            if (i < I.da || i > I.da + n) bfree_idx.push_back(i);
        for (std::uint64_t k = I.lo; k < I.hi; ++k) {
            std::uint64_t x = k;
            Form f;
            Poly d = poly::from_index(q, x % nd, dd + 1);
            x /= nd;
            Poly c = poly::from_index(q, x % nc, dc + 1);
            x /= nc;
            Poly b(db + 1, 0);
            for (int i : bfree_idx) {
                b[i] = static_cast<fe>(x % q);
                x /= q;
            }
            poly::trim(b);
            Poly a(I.da + 1, 0);
            for (int i = 0; i < I.da; ++i) {
                a[i] = static_cast<fe>(x % q);
                x /= q;
            }
            a[I.da] = 1;
            f.co = {a, b, c, d};
            if (reduction::top_index(f, n) != H) continue;
            if (!reduction::is_reduced_at(F, f, n)) continue;
            ++o.examined;
            bool canon = true;
            if (!sp.mass) {
                canon = reduction::canonical_reduced(F, f, n, idx) == f;
                if (!canon) continue;
            }
            Found fd;
            if (!examine(F, f, n, sp, tt, fd)) continue;
            ++o.weighted;
            if (sp.mass) canon = reduction::canonical_reduced(F, f, n, idx) == f;
            if (!canon) continue;
            fd.stab = 1;
            if (fd.galois) {
                int st = 0;
                for (auto& g : reduction::stabilizer(F, n)) st += form::act(F, g, f) == f;
                fd.stab = st;
            }
            o.found.push_back(std::move(fd));
        }
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::size_t it = 0; it < items.size(); ++it) run(it);
    } else {
        for (std::size_t it = 0; it < items.size(); ++it) run(it);
    }
    long long qq = q;
    Rational w(static_cast<long long>(ipow_u(q, n + 1)) * (qq - 1), reduction::stabilizer_order(q, n));
    Scan s;
    for (auto& o : outs) {
        s.examined += o.examined;
        s.mass_weighted += w * o.weighted;
        for (auto& fd : o.found) s.found.push_back(std::move(fd));
    }
    return s;
}

Scan scan_all(const Fq& F, const ScanSpec& sp, bool fast, bool parallel) {
    reduction::TopLayerIndex idx(F);
    FqTypeTable tt(F);
    Scan all;
    for (int n : center_vertices(sp.M)) {
        Scan s = (n == 0 && fast) ? scan_vertex0_fast(F, sp, idx, tt, parallel)
                                  : scan_normalized(F, n, sp, idx, tt, parallel);
        if (n == 0 && fast) {
            // store the representative chosen by the reference canonical form
            auto canon = [&](Found& fd) {
                fd.f = reduction::canonical_reduced(F, fd.f, 0, idx);
                fd.disc = form::disc(F, fd.f);
            };
            if (parallel) {
#pragma omp parallel for schedule(dynamic, 64)
                for (std::size_t i = 0; i < s.found.size(); ++i) canon(s.found[i]);
            } else {
                for (auto& fd : s.found) canon(fd);
            }
        }
        all.examined += s.examined;
        all.mass_weighted += s.mass_weighted;
        for (auto& fd : s.found) all.found.push_back(std::move(fd));
    }
    std::sort(all.found.begin(), all.found.end(),
              [](const Found& x, const Found& y) { return form::less(x.f, y.f); });
    for (std::size_t i = 1; i < all.found.size(); ++i)
        if (all.found[i].f == all.found[i - 1].f) throw std::logic_error("census: orbit listed twice");
    return all;
}

Census build(const Fq& F, int M, const CensusOptions& opt, bool fast, bool parallel) {
    if (M < 4 || M % 2) throw std::invalid_argument("census: M must be even and >= 4");
    ScanSpec sp;
    sp.M = M;
    sp.mass = opt.mass_check;
    Scan s = scan_all(F, sp, fast, parallel);
    Census c;
    c.q = F.q();
    c.M = M;
    c.forms_examined = s.examined;
    c.mass_checked = opt.mass_check;
    c.mass_weighted = s.mass_weighted;
    SplitEngine eng(F, std::max(1, opt.split_deg));
    for (int d = 1; d <= opt.split_deg; ++d)
        for (auto& P : eng.primes(d)) c.split_primes.push_back(P);
    c.fields.resize(s.found.size());
    auto fill = [&](std::size_t i) {
        Found& fd = s.found[i];
        FieldRecord& r = c.fields[i];
        r.form = std::move(fd.f);
        r.M = M;
        r.center_n = fd.n;
        r.sigma = fd.sigma;
        r.galois = fd.galois;
        r.disc = std::move(fd.disc);
        for (int d = 1; d <= opt.split_deg; ++d) {
            auto t = eng.classify_all(r.form, d);
            r.split.insert(r.split.end(), t.begin(), t.end());
        }
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (std::size_t i = 0; i < s.found.size(); ++i) fill(i);
    } else {
        for (std::size_t i = 0; i < s.found.size(); ++i) fill(i);
    }
    for (std::size_t i = 0; i < s.found.size(); ++i) {
        (c.fields[i].galois ? c.galois : c.s3)++;
        c.mass_orbits += Rational(1, s.found[i].stab);
    }
    c.stable = !c.mass_checked || c.mass_orbits == c.mass_weighted;
    return c;
}

}  // namespace

std::vector<int> center_vertices(int M) {
    std::vector<int> out;
    for (int n = 0; 6 * n <= M; ++n)
        if ((M + 2 * n) % 4 == 0) out.push_back(n);
    return out;
}

Census enumerate_fields(const Fq& F, int M, const CensusOptions& opt) { return build(F, M, opt, true, true); }

Census enumerate_fields_serial(const Fq& F, int M, const CensusOptions& opt) {
    return build(F, M, opt, false, false);
}

long long count_fields(const Census& c, bool include_galois) { return c.s3 + (include_galois ? c.galois : 0); }

SplitType split_at(const Fq& F, const Census& c, const FieldRecord& r, const Poly& P) {
    for (std::size_t i = 0; i < c.split_primes.size() && i < r.split.size(); ++i)
        if (c.split_primes[i] == P) return r.split[i];
    return form::classify_mod_P(F, r.form, P);
}

long long count_fields_split(const Fq& F, const Census& c, const std::vector<PrimeCondition>& conds,
                             bool include_galois) {
    for (std::size_t i = 0; i < conds.size(); ++i) {
        const Poly& P = conds[i].P;
        if (poly::deg(P) < 1 || !poly::is_monic(P) || !poly::is_irreducible(F, P))
            throw std::invalid_argument("count_fields_split: conditions need monic primes");
        for (std::size_t j = 0; j < i; ++j)
            if (conds[j].P == P) throw std::invalid_argument("count_fields_split: repeated prime");
    }
    long long n = 0;
    for (auto& r : c.fields) {
        if (r.galois && !include_galois) continue;
        bool ok = true;
        for (auto& cd : conds) ok = ok && split_at(F, c, r, cd.P) == cd.split;
        n += ok;
    }
    return n;
}

OrbitCount enumerate_form_orbits(const Fq& F, int ell, const SigmaClass& sigma) {
    ScanSpec sp;
    sp.M = ell + infinity::gamma(sigma);
    if (sp.M % 2 || ell < 0) return {};
    sp.maximal = false;
    sp.ell = ell;
    sp.sigma = sigma;
    sp.mass = false;
    OrbitCount oc;
    if (sp.M < 2) return oc;
    Scan s = scan_all(F, sp, true, true);
    oc.orbits = static_cast<long long>(s.found.size());
    for (auto& fd : s.found) oc.mass += Rational(1, fd.stab);
    return oc;
}

std::vector<GeneratorRecord> generator_fields(const Fq& F, int M, int degA, int degB) {
    int q = F.q();
    reduction::TopLayerIndex idx(F);
    std::uint64_t nA = ipow_u(q, degA + 1), nB = ipow_u(q, degB + 1);
    std::vector<std::vector<GeneratorRecord>> outs(nA);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::uint64_t ia = 0; ia < nA; ++ia) {
        Poly A = poly::from_index(q, ia, degA + 1);
        for (std::uint64_t ib = 0; ib < nB; ++ib) {
            Poly B = poly::from_index(q, ib, degB + 1);
            Form g;
            g.co = {Poly{1}, Poly{}, A, B};
            Poly D = form::disc(F, g);
            if (D.empty()) continue;
            if (!form::is_irreducible(F, g)) continue;
            auto [m, index] = form::maximalize(F, g);
            auto can = reduction::canonicalize(F, m, idx);
            Poly Dm = form::disc(F, m);
            SigmaClass s = infinity::sigma_of_reduced(F, can.form, can.n, poly::lc(form::disc(F, can.form)));
            if (poly::deg(Dm) + infinity::gamma(s) != M) continue;
            GeneratorRecord r;
            r.form = can.form;
            r.generator_disc = D;
            r.index = index;
            r.max_disc = Dm;
            r.M = M;
            r.galois = poly::is_square(F, Dm);
            outs[ia].push_back(std::move(r));
        }
    }
    std::vector<GeneratorRecord> all;
    for (auto& o : outs)
        for (auto& r : o) all.push_back(std::move(r));
    std::stable_sort(all.begin(), all.end(),
                     [](const GeneratorRecord& x, const GeneratorRecord& y) { return form::less(x.form, y.form); });
    std::vector<GeneratorRecord> uniq;
    for (auto& r : all)
        if (uniq.empty() || uniq.back().form != r.form) uniq.push_back(std::move(r));
    return uniq;
}

long long fingerprint_collisions(const Census& c) {
    std::map<std::tuple<int, SigmaClass, std::vector<long long>>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < c.fields.size(); ++i) {
        auto& r = c.fields[i];
        groups[{r.M, r.sigma, r.lpoly}].push_back(i);
    }
    long long n = 0;
    for (auto& [key, ids] : groups) {
        std::map<std::vector<SplitType>, long long> by_split;
        for (auto i : ids) by_split[c.fields[i].split]++;
        long long tot = static_cast<long long>(ids.size());
        long long same = 0;
        for (auto& [k, m] : by_split) same += m * (m - 1) / 2;
        n += tot * (tot - 1) / 2 - same;
    }
    return n;
}

std::string record_json(const Fq& F, const FieldRecord& r) {
    std::ostringstream os;
    auto ints = form::to_ints(r.form);
    os << "{\"M\":" << r.M << ",\"sigma\":\"" << infinity::sigma_name(r.sigma) << "\",\"galois\":"
       << (r.galois ? "true" : "false") << ",\"center\":" << r.center_n << ",\"form\":[";
    for (std::size_t k = 0; k < ints.size(); ++k) {
        os << (k ? "," : "") << "[";
        for (std::size_t i = 0; i < ints[k].size(); ++i) os << (i ? "," : "") << ints[k][i];
        os << "]";
    }
    os << "],\"disc\":\"" << poly::str(F, r.disc) << "\",\"lpoly\":[";
    for (std::size_t i = 0; i < r.lpoly.size(); ++i) os << (i ? "," : "") << r.lpoly[i];
    os << "],\"split\":\"";
    for (auto t : r.split) os << split_name(t) << ";";
    os << "\"}";
    return os.str();
}

}  // namespace census
}  // namespace cubicff
