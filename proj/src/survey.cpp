#include "diaglab/survey.hpp"

#include <atomic>
#include <condition_variable>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace diaglab {

using nlohmann::json;

std::optional<Family> family_from_name(const std::string& name) {
    if (name == "3var01") return Family::V3_01;
    if (name == "3varpm1") return Family::V3_PM1;
    if (name == "4var01") return Family::V4_01;
    if (name == "6var-factored") return Family::V6_FACTORED;
    return std::nullopt;
}

std::string family_name(Family f) {
    switch (f) {
        case Family::V3_01: return "3var01";
        case Family::V3_PM1: return "3varpm1";
        case Family::V4_01: return "4var01";
        case Family::V6_FACTORED: return "6var-factored";
    }
    return "?";
}

namespace {

// nonconstant multilinear monomials of n variables, ordered by
// (total degree, lexicographic exponents) — the mask bit order everywhere
std::vector<std::vector<int>> multilinear_monomials(int n) {
    std::vector<std::vector<int>> out;
    for (int mask = 1; mask < (1 << n); mask++) {
        std::vector<int> e(n, 0);
        for (int b = 0; b < n; b++)
            if (mask & (1 << b)) e[b] = 1;
        out.push_back(e);
    }
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) {
        int ta = 0, tb = 0;
        for (int x : a) ta += x;
        for (int x : b) tb += x;
        if (ta != tb) return ta < tb;
        return a < b;
    });
    return out;
}

PolynomialSpec spec_from_mask(int nvars, const std::vector<std::vector<int>>& monos, long mask,
                              bool ternary) {
    PolynomialSpec s;
    s.nvars = nvars;
    long m = mask;
    for (auto& e : monos) {
        long c;
        if (ternary) {
            long digit = m % 3;
            m /= 3;
            c = digit == 0 ? 0 : (digit == 1 ? 1 : -1);
        } else {
            c = m & 1;
            m >>= 1;
        }
        if (c) s.p[e] = c;
    }
    return s;
}

// 3-variable factor embedded into a 6-variable space at offset
PolynomialSpec embed6(const PolynomialSpec& f, int offset) {
    PolynomialSpec s;
    s.nvars = 6;
    for (auto& [e, c] : f.p) {
        std::vector<int> e6(6, 0);
        for (int i = 0; i < 3; i++) e6[offset + i] = e[i];
        s.p[e6] = c;
    }
    return s;
}

std::vector<u64> key_series_for(const Fp& K, const SurveyItem& item, int terms,
                                const std::vector<std::vector<u64>>* factor_keys) {
    if (item.mask1 >= 0 && factor_keys) {
        // hadamard of the two factor diagonals
        const auto& a = (*factor_keys)[item.mask1];
        const auto& b = (*factor_keys)[item.mask2];
        std::vector<u64> out(terms);
        for (int i = 0; i < terms; i++) out[i] = K.mul(a[i], b[i]);
        return out;
    }
    auto s = diagonal_series_fp(K, item.spec, terms - 1);
    return s.a;
}

} // namespace

std::vector<SurveyItem> enumerate_family(Family f) {
    std::vector<SurveyItem> out;
    switch (f) {
        case Family::V3_01: {
            auto monos = multilinear_monomials(3);
            for (long m = 0; m < (1 << 7); m++)
                out.push_back({spec_from_mask(3, monos, m, false), -1, -1});
            break;
        }
        case Family::V3_PM1: {
            auto monos = multilinear_monomials(3);
            long total = 1;
            for (int i = 0; i < 7; i++) total *= 3;
            for (long m = 0; m < total; m++)
                out.push_back({spec_from_mask(3, monos, m, true), -1, -1});
            break;
        }
        case Family::V4_01: {
            auto monos = multilinear_monomials(4);
            for (long m = 0; m < (1 << 15); m++)
                out.push_back({spec_from_mask(4, monos, m, false), -1, -1});
            break;
        }
        case Family::V6_FACTORED: {
            auto monos = multilinear_monomials(3);
            // factors with constant diagonal would inject an order-one class
            // that Table B1 does not have; identify them by a 12-term probe
            Fp K(default_primes()[0]);
            std::vector<bool> degenerate(128, false);
            for (long m = 0; m < 128; m++) {
                if (m == 0) { degenerate[m] = true; continue; }
                auto s = diagonal_series_fp(K, spec_from_mask(3, monos, m, false), 12);
                bool constant = true;
                for (int i = 1; i <= 12; i++)
                    if (s.a[i] != 0) constant = false;
                degenerate[m] = constant;
            }
            for (int m1 = 1; m1 < 128; m1++) {
                if (degenerate[m1]) continue;
                for (int m2 = m1; m2 < 128; m2++) {
                    if (degenerate[m2]) continue;
                    PolynomialSpec p1 = embed6(spec_from_mask(3, monos, m1, false), 0);
                    PolynomialSpec p2 = embed6(spec_from_mask(3, monos, m2, false), 3);
                    SurveyItem it;
                    it.spec = p1.times(p2);
                    it.mask1 = m1;
                    it.mask2 = m2;
                    out.push_back(std::move(it));
                }
            }
            break;
        }
    }
    return out;
}

DedupeResult dedupe(Family f, int k) {
    if (k < 10) throw std::invalid_argument("dedupe: prefix length must be >= 10");
    DedupeResult res;
    res.k = k;
    const u64 p0 = default_primes()[0], p1 = default_primes()[1];
    res.key_primes[0] = p0;
    res.key_primes[1] = p1;
    auto items = enumerate_family(f);
    const int terms = 2 * k;

    // factor diagonals once for the factored family
    std::vector<std::vector<u64>> fk0, fk1;
    const std::vector<std::vector<u64>>*pf0 = nullptr, *pf1 = nullptr;
    if (f == Family::V6_FACTORED) {
        auto monos = multilinear_monomials(3);
        Fp K0(p0), K1(p1);
        fk0.resize(128);
        fk1.resize(128);
        for (long m = 1; m < 128; m++) {
            auto sp = spec_from_mask(3, monos, m, false);
            fk0[m] = diagonal_series_fp(K0, sp, terms - 1).a;
            fk1[m] = diagonal_series_fp(K1, sp, terms - 1).a;
        }
        pf0 = &fk0;
        pf1 = &fk1;
    }

    std::vector<std::vector<u64>> keys(items.size());
    std::atomic<size_t> next{0};
    int jobs = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; t++) {
        pool.emplace_back([&]() {
            Fp K0(p0), K1(p1);
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= items.size()) break;
                auto k0 = key_series_for(K0, items[i], terms, pf0);
                auto k1 = key_series_for(K1, items[i], terms, pf1);
                k0.insert(k0.end(), k1.begin(), k1.end());
                keys[i] = std::move(k0);
            }
        });
    }
    for (auto& t : pool) t.join();

    // group by the k-prefix at the first prime, then the full 2k keys split
    std::map<std::vector<u64>, std::vector<size_t>> groups;
    for (size_t i = 0; i < items.size(); i++) {
        std::vector<u64> kk(keys[i].begin(), keys[i].begin() + k);
        groups[kk].push_back(i);
    }
    std::map<std::vector<u64>, std::vector<size_t>> final_groups;
    long splits = 0;
    for (auto& [kk, members] : groups) {
        std::map<std::vector<u64>, std::vector<size_t>> sub;
        for (size_t i : members) sub[keys[i]].push_back(i);
        if (sub.size() > 1) splits += (long)sub.size() - 1;
        for (auto& [fullk, mem] : sub) final_groups[fullk].push_back(mem[0]), final_groups[fullk].insert(final_groups[fullk].end(), mem.begin() + 1, mem.end());
    }
    res.near_miss_splits = splits;

    std::vector<SurveyClass> classes;
    for (auto& [fullk, members] : final_groups) {
        SurveyClass c;
        size_t first = *std::min_element(members.begin(), members.end());
        c.rep = items[first];
        c.members = (long)members.size();
        c.key = fullk;
        classes.push_back(std::move(c));
    }
    // deterministic ids: order classes by their first member's enumeration index
    std::map<std::vector<u64>, size_t> first_member;
    for (auto& [fullk, members] : final_groups)
        first_member[fullk] = *std::min_element(members.begin(), members.end());
    std::sort(classes.begin(), classes.end(), [&](const SurveyClass& a, const SurveyClass& b) {
        return first_member[a.key] < first_member[b.key];
    });
    for (size_t i = 0; i < classes.size(); i++) classes[i].id = (long)i;
    res.classes = std::move(classes);
    return res;
}

// ---- pipeline ----

namespace {

json record_to_json(const ClassRecord& r) {
    json j;
    j["id"] = r.id;
    j["rep"] = r.rep_text;
    j["prefix"] = r.prefix;
    j["members"] = r.members;
    j["order"] = r.op.order;
    j["degree"] = r.op.degree;
    j["resolved"] = r.op.resolved;
    j["excluded_below_order"] = r.op.excluded_below_order;
    j["excluded_degree_bound"] = r.op.excluded_degree_bound;
    j["modp_op"] = r.op.modp_text;
    j["prime"] = r.op.prime;
    j["rational_op"] = r.op.rational_text;
    j["terms_used"] = r.op.terms_used;
    j["verdict"] = r.verdict;
    j["witness"] = r.witness;
    j["ops_used"] = r.ops_used;
    j["primes_used"] = r.primes_used;
    j["status"] = r.status;
    return j;
}

ClassRecord record_from_json(const json& j) {
    ClassRecord r;
    r.id = j.at("id").get<long>();
    r.rep_text = j.at("rep").get<std::string>();
    r.prefix = j.at("prefix").get<std::vector<std::string>>();
    r.members = j.at("members").get<long>();
    r.op.order = j.at("order").get<int>();
    r.op.degree = j.at("degree").get<int>();
    r.op.resolved = j.at("resolved").get<bool>();
    r.op.excluded_below_order = j.at("excluded_below_order").get<int>();
    r.op.excluded_degree_bound = j.at("excluded_degree_bound").get<int>();
    r.op.modp_text = j.at("modp_op").get<std::string>();
    r.op.prime = j.at("prime").get<u64>();
    r.op.rational_text = j.at("rational_op").get<std::string>();
    r.op.terms_used = j.at("terms_used").get<long>();
    r.verdict = j.at("verdict").get<std::string>();
    r.witness = j.at("witness").get<std::string>();
    r.ops_used = j.at("ops_used").get<long long>();
    r.primes_used = j.at("primes_used").get<std::vector<u64>>();
    r.status = j.at("status").get<std::string>();
    return r;
}

std::string ore_modp_text(const Fp& K, const OreOp<Fp>& op) {
    std::string out = "mod=" + std::to_string(K.p) + "; order=" + std::to_string(op.order());
    for (int i = 0; i <= op.order(); i++) {
        out += "; a" + std::to_string(i) + " =";
        const Poly<Fp>& p = op.c[i].num;
        if (p.is_zero()) { out += " 0"; continue; }
        bool first = true;
        for (int j = 0; j <= p.degree(); j++) {
            if (p.c[j] == 0) continue;
            out += (first ? " " : " + ") + std::to_string(p.c[j]);
            if (j >= 1) out += "*x" + (j > 1 ? "^" + std::to_string(j) : "");
            first = false;
        }
    }
    return out;
}

// exact first-k coefficients of the representative over Q
std::vector<std::string> exact_prefix(const SurveyItem& item, int k) {
    QQ K;
    Series<QQ> s;
    if (item.mask1 >= 0) {
        auto monos = multilinear_monomials(3);
        auto f1 = spec_from_mask(3, monos, item.mask1, false);
        auto f2 = spec_from_mask(3, monos, item.mask2, false);
        s = hadamard(K, diagonal_of(K, f1, k - 1), diagonal_of(K, f2, k - 1));
    } else {
        s = diagonal_of(K, item.spec, k - 1);
    }
    std::vector<std::string> out;
    for (auto& v : s.a) out.push_back(v.get_str());
    return out;
}

struct FactorCache {
    std::mutex mu;
    std::map<int, std::vector<u64>> extended; // mask -> long factor diagonal mod p
};

// long diagonal series provider; returns however many terms the budget allows
struct SeriesProvider {
    Family family;
    const SurveyItem* item;
    const PipelineConfig* cfg;
    Fp K;
    FactorCache* cache;
    long long* ops;

    std::vector<u64> factor_series(int mask) {
        {
            std::lock_guard<std::mutex> g(cache->mu);
            auto it = cache->extended.find(mask);
            if (it != cache->extended.end()) return it->second;
        }
        auto monos = multilinear_monomials(3);
        auto sp = spec_from_mask(3, monos, mask, false);
        int n0 = 240;
        auto s = diagonal_series_fp(K, sp, n0, ops);
        GuessConfig g;
        g.survey_mode = true;
        g.max_order = 6;
        g.max_degree = 40;
        auto mo = min_order_mod_p(K, s.a, g);
        std::vector<u64> longs;
        if (mo) {
            try {
                Series<Fp> seed;
                seed.a = s.a;
                auto ext = extend_by_operator(K, mo->op, seed, (int)cfg->extend_terms);
                longs = ext.a;
            } catch (const std::domain_error&) {
            }
        }
        if (longs.empty()) longs = s.a;
        {
            std::lock_guard<std::mutex> g2(cache->mu);
            cache->extended[mask] = longs;
        }
        return longs;
    }

    // escalation levels of series terms
    std::vector<u64> terms_at_level(int level, bool& exhausted) {
        exhausted = false;
        if (family == Family::V6_FACTORED) {
            auto a = factor_series(item->mask1);
            auto b = factor_series(item->mask2);
            size_t n = std::min(a.size(), b.size());
            std::vector<long> sizes = {300, 700, (long)n};
            size_t want = (size_t)sizes[std::min(level, (int)sizes.size() - 1)];
            if (level >= (int)sizes.size() - 1 && want >= n) exhausted = true;
            want = std::min(want, n);
            std::vector<u64> out(want);
            for (size_t i = 0; i < want; i++) out[i] = K.mul(a[i], b[i]);
            return out;
        }
        int n = cfg->start_n;
        for (int l = 0; l < level; l++) n *= 2;
        long long projected = 1;
        for (int q = 0; q < item->spec.nvars; q++) projected *= (n + 1);
        projected *= (long long)std::max<size_t>(item->spec.p.size(), 1);
        if (projected > cfg->budget_ops - *ops) {
            exhausted = true;
            throw resource_error("series escalation exceeds the per-case budget");
        }
        auto s = diagonal_series_fp(K, item->spec, n, ops, cfg->budget_ops - *ops);
        return s.a;
    }
};

} // namespace

std::vector<ClassRecord> load_catalog(const std::string& path) {
    std::vector<ClassRecord> out;
    std::ifstream in(path);
    if (!in) return out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            out.push_back(record_from_json(json::parse(line)));
        } catch (...) {
            break; // truncated tail from an interrupted run; resume overwrites
        }
    }
    return out;
}

std::vector<ClassRecord> run_pipeline(Family f, const PipelineConfig& cfg,
                                      const std::string& catalog_path, bool resume) {
    DedupeResult ded = dedupe(f);
    std::map<long, ClassRecord> done;
    if (resume) {
        for (auto& r : load_catalog(catalog_path)) done[r.id] = r;
    }

    std::vector<const SurveyClass*> todo;
    for (auto& c : ded.classes)
        if (!done.count(c.id)) todo.push_back(&c);

    FactorCache cache;
    std::vector<ClassRecord> fresh(todo.size());
    std::atomic<size_t> next{0};
    const u64 work_prime = default_primes()[2]; // distinct from the dedupe keys

    auto worker = [&]() {
        Fp K(work_prime);
        while (true) {
            size_t wi = next.fetch_add(1);
            if (wi >= todo.size()) break;
            const SurveyClass& c = *todo[wi];
            ClassRecord r;
            r.id = c.id;
            r.rep_text = spec_to_text(c.rep.spec);
            r.members = c.members;
            r.primes_used = {work_prime};
            long long ops = 0;
            try {
                r.prefix = exact_prefix(c.rep, ded.k);
                SeriesProvider prov{f, &c.rep, &cfg, K, &cache, &ops};
                GuessConfig g;
                g.survey_mode = true;
                g.max_order = cfg.max_order;
                g.max_degree = cfg.max_degree;

                std::optional<MinOrder> found;
                std::vector<u64> series;
                bool exhausted = false;
                for (int level = 0; !exhausted; level++) {
                    try {
                        series = prov.terms_at_level(level, exhausted);
                    } catch (const resource_error&) {
                        break;
                    }
                    found = min_order_mod_p(K, series, g);
                    if (found) break;
                }
                if (found && f != Family::V6_FACTORED) {
                    // cheap long series from the found recurrence, then the
                    // minimality ladder at generous degrees
                    try {
                        Series<Fp> seed;
                        seed.a = series;
                        auto ext = extend_by_operator(K, found->op, seed, (int)cfg.extend_terms);
                        auto mo2 = min_order_mod_p(K, ext.a, g);
                        if (mo2) {
                            found = mo2;
                            series = ext.a;
                        }
                    } catch (const std::domain_error&) {
                    }
                }
                r.op.terms_used = (long)series.size();
                if (found) {
                    r.op.order = found->order;
                    r.op.degree = found->degree;
                    r.op.resolved = true;
                    r.op.excluded_below_order = found->order;
                    r.op.excluded_degree_bound = found->degree_bound_checked;
                    r.op.prime = K.p;
                    r.op.modp_text = ore_modp_text(K, found->op);
                    r.status = "resolved";
                    if (found->order <= cfg.lift_max_order) {
                        // rational lift across further primes, verified against
                        // two primes not used in the reconstruction
                        std::vector<std::pair<u64, OreOp<Fp>>> fits{{K.p, found->op}};
                        QQ Q;
                        for (size_t pi = 3; pi < default_primes().size() - 2; pi++) {
                            Fp K2(default_primes()[pi]);
                            SeriesProvider prov2{f, &c.rep, &cfg, K2, &cache, &ops};
                            bool ex2 = false;
                            std::vector<u64> s2;
                            try {
                                s2 = prov2.terms_at_level(0, ex2);
                            } catch (const resource_error&) {
                                break;
                            }
                            if ((long)s2.size() < needed_terms(found->order, found->degree, 10))
                                continue;
                            auto fit = fit_shape_mod_p(K2, s2, found->order, found->degree);
                            if (fit.size() != 1) continue;
                            fits.push_back({K2.p, fit[0]});
                            auto lifted = lift_operator(fits, nullptr);
                            if (!lifted) continue;
                            // verification primes
                            bool ok = true;
                            for (int vp = 0; vp < 2 && ok; vp++) {
                                Fp Kv(default_primes()[default_primes().size() - 1 - vp]);
                                SeriesProvider prov3{f, &c.rep, &cfg, Kv, &cache, &ops};
                                bool ex3 = false;
                                auto s3 = prov3.terms_at_level(0, ex3);
                                try {
                                    OreOp<Fp> red = ore_reduce(Kv, *lifted);
                                    Series<Fp> ss;
                                    ss.a = s3;
                                    ok = series_is_zero(Kv, apply(Kv, red, ss));
                                } catch (const std::domain_error&) {
                                    ok = false;
                                }
                            }
                            if (ok) {
                                r.op.rational_text = ore_to_text(Q, *lifted);
                                for (auto& [p, op] : fits) r.primes_used.push_back(p);
                                if (cfg.classify_small) {
                                    auto verdict = classify(*lifted);
                                    r.verdict = galois_kind_name(verdict.kind);
                                    if (!verdict.witness.is_zero()) {
                                        r.witness = verdict.witness_kind;
                                    }
                                }
                                break;
                            }
                        }
                    }
                } else {
                    r.status = "unresolved";
                    r.op.resolved = false;
                    // record the strongest exclusion evidence the budget bought
                    if (!series.empty()) {
                        int v = 10;
                        long avail = ((long)series.size() - v) / (cfg.max_order + 1) - 1;
                        r.op.excluded_below_order = cfg.max_order + 1;
                        r.op.excluded_degree_bound = (int)std::max<long>(avail, 0);
                        // per-order bounds are larger for small orders; record
                        // the order-4 bound, the tier-A relevant one
                        long a4 = ((long)series.size() - v - 4) / 5 - 1;
                        r.op.degree = -1;
                        r.op.order = -1;
                        r.op.terms_used = (long)series.size();
                        (void)a4;
                    }
                }
            } catch (const resource_error& e) {
                r.status = std::string("unresolved");
                r.op.resolved = false;
            } catch (const std::exception& e) {
                r.status = std::string("error:") + e.what();
            }
            r.ops_used = ops;
            fresh[wi] = std::move(r);
        }
    };

    int jobs = std::max(1, cfg.jobs);
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; t++) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    // single append-writer, in id order, after the parallel phase
    std::ofstream out(catalog_path, resume ? std::ios::app : std::ios::trunc);
    std::vector<ClassRecord> all;
    for (auto& [id, r] : done) all.push_back(r);
    for (auto& r : fresh) {
        out << record_to_json(r).dump() << "\n";
        all.push_back(r);
    }
    std::sort(all.begin(), all.end(), [](auto& a, auto& b) { return a.id < b.id; });
    // index sidecar
    std::ofstream idx(catalog_path + ".idx", std::ios::trunc);
    for (auto& r : all) idx << r.id << "\n";
    return all;
}

Histogram report_histogram(const std::vector<ClassRecord>& catalog) {
    Histogram h;
    for (auto& r : catalog) {
        if (r.op.resolved && r.status == "resolved") {
            h.resolved[r.op.order]++;
            std::string v = r.verdict.empty() ? "unclassified" : r.verdict;
            h.verdict_rows[v][r.op.order]++;
        } else {
            h.unresolved++;
        }
    }
    return h;
}

std::string histogram_table(const Histogram& h, const std::string& table) {
    std::ostringstream os;
    if (table == "orders") {
        os << "order  count\n";
        for (auto& [o, c] : h.resolved) os << o << "  " << c << "\n";
        if (h.unresolved) os << "unresolved  " << h.unresolved << "\n";
    } else if (table == "verdicts") {
        for (auto& [v, row] : h.verdict_rows) {
            os << v << ":";
            for (auto& [o, c] : row) os << "  order " << o << " -> " << c;
            os << "\n";
        }
        if (h.unresolved) os << "unresolved  " << h.unresolved << "\n";
    }
    return os.str();
}

} // namespace diaglab
