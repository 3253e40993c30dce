#include "diaglab/modular.hpp"

#include <fstream>

#include <json.hpp>

#include "diaglab/coefftable.hpp"

namespace diaglab {

using nlohmann::json;

Series<QQ> pullback_series(const PullbackRepr& r, int n) {
    QQ K;
    Series<QQ> out = r.prefactor.empty() ? series_one(K, n) : algebraic_series(r.prefactor, n);
    if (!r.upper.empty() || !r.lower.empty()) {
        Series<QQ> f = pFq_series(r.upper, r.lower, mpq_class(1), n);
        out = series_mul(K, out, compose_pullback(f, r.pullback, n));
    }
    return out;
}

VerifyResult verify_pullback(const Series<QQ>& s, const PullbackRepr& r, int n) {
    QQ K;
    if ((int)s.a.size() < n + 1)
        throw std::invalid_argument("verify_pullback: series shorter than the requested order");
    for (auto& f : r.prefactor)
        if (f.q.is_zero() || f.q.c[0] != 1)
            throw std::domain_error("verify_pullback: malformed prefactor (q(0) != 1)");
    Series<QQ> rhs = pullback_series(r, n);
    VerifyResult res;
    for (int i = 0; i <= n; i++) {
        if (s.a[i] != rhs.a[i]) {
            res.first_mismatch = i;
            return res;
        }
    }
    res.pass = true;
    return res;
}

Series<QQ> hauptmodul_series(const HauptmodulTemplate& t, int n) {
    QQ K;
    RatFunc<QQ> composed = rf_compose(K, t.tmpl, t.subst);
    return rf_series(K, composed, n);
}

bool involution_check(const RatFunc<QQ>& template_a, const RatFunc<QQ>& template_b,
                      const mpq_class& c) {
    QQ K;
    // z -> c/z
    RatFunc<QQ> cz = rf_normalize(K, poly_const(K, c), poly_x(K));
    RatFunc<QQ> swapped = rf_compose(K, template_a, cz);
    return rf_eq(K, swapped, template_b);
}

BivarPoly parse_bivar(const std::string& text) {
    MPoly m = parse_mpoly_expr(text, {"Y", "Z"});
    BivarPoly out;
    for (auto& [e, cv] : m) out[{e[0], e[1]}] = cv;
    return out;
}

mpz_class bivar_checksum(const BivarPoly& rel) {
    mpz_class s = 0;
    for (auto& [e, c] : rel) s += abs(c);
    return s;
}

VerifyResult verify_modular_curve(const BivarPoly& rel, const Series<QQ>& y, const Series<QQ>& z,
                                  int n) {
    QQ K;
    int maxy = 0, maxz = 0;
    for (auto& [e, c] : rel) {
        maxy = std::max(maxy, e.first);
        maxz = std::max(maxz, e.second);
    }
    std::vector<Series<QQ>> ypow(maxy + 1), zpow(maxz + 1);
    ypow[0] = series_one(K, n);
    zpow[0] = series_one(K, n);
    for (int i = 1; i <= maxy; i++) ypow[i] = series_mul(K, ypow[i - 1], series_truncate(K, y, n));
    for (int i = 1; i <= maxz; i++) zpow[i] = series_mul(K, zpow[i - 1], series_truncate(K, z, n));
    Series<QQ> acc = series_zero(K, n);
    for (auto& [e, c] : rel) {
        Series<QQ> t = series_mul(K, ypow[e.first], zpow[e.second]);
        acc = series_add(K, acc, series_scale(K, t, mpq_class(c)));
    }
    VerifyResult res;
    for (int i = 0; i <= n; i++) {
        if (sgn(acc.a[i]) != 0) {
            res.first_mismatch = i;
            return res;
        }
    }
    res.pass = true;
    return res;
}

FamilySeries family_series(int family_id, int n, int terms) {
    if (n < 1) throw std::invalid_argument("family_series: n >= 1");
    QQ K;
    FamilySeries out;
    PolynomialSpec spec;
    spec.nvars = 3; // variables x, y, z
    std::vector<int> ex(3, 0);
    ex[0] = 1;
    std::vector<int> ez(3, 0);
    ez[2] = 1;
    switch (family_id) {
        case 1: {
            // 1/(1 - x - z - y^n)
            spec.p[ex] = 1;
            spec.p[ez] = 1;
            spec.p[{0, n, 0}] = 1;
            for (int k = 1; k <= 2 * n; k++) out.upper.push_back(mpq_class(k, 2 * n + 1));
            for (int j = 1; j <= n - 1; j++) {
                out.lower.push_back(mpq_class(j, n));
                out.lower.push_back(mpq_class(j, n));
            }
            out.lower.push_back(mpq_class(1));
            mpz_class num, den;
            mpz_ui_pow_ui(num.get_mpz_t(), 2 * n + 1, 2 * n + 1);
            mpz_ui_pow_ui(den.get_mpz_t(), n, 2 * n);
            out.scale = mpq_class(num) / mpq_class(den);
            out.arg_power = n;
            break;
        }
        case 2: {
            // 1/(1 - x - z - x^n y^n)
            spec.p[ex] = 1;
            spec.p[ez] = 1;
            spec.p[{n, n, 0}] = 1;
            for (int k = 1; k <= n; k++) out.upper.push_back(mpq_class(k, n + 1));
            for (int j = 1; j <= n - 1; j++) out.lower.push_back(mpq_class(j, n));
            mpz_class num, den;
            mpz_ui_pow_ui(num.get_mpz_t(), n + 1, n + 1);
            mpz_ui_pow_ui(den.get_mpz_t(), n, n);
            out.scale = mpq_class(num) / mpq_class(den);
            out.arg_power = n;
            break;
        }
        case 3: {
            // 1/(1 - x - z - x y^n)
            spec.p[ex] = 1;
            spec.p[ez] = 1;
            spec.p[{1, n, 0}] = 1;
            for (int k = 1; k <= n; k++) out.upper.push_back(mpq_class(2 * k - 1, 2 * n));
            for (int j = 1; j <= n - 1; j++) out.lower.push_back(mpq_class(j, n - 1));
            mpz_class num, den = 1;
            mpz_ui_pow_ui(num.get_mpz_t(), 4, n);
            mpz_class nn;
            mpz_ui_pow_ui(nn.get_mpz_t(), n, n);
            num *= nn;
            if (n >= 2) mpz_ui_pow_ui(den.get_mpz_t(), n - 1, n - 1);
            out.scale = mpq_class(num) / mpq_class(den);
            out.arg_power = n;
            // odd n: 1/2 sits in both parameter lists and cancels
            if (n % 2 == 1 && n > 1) {
                auto half = mpq_class(1, 2);
                out.upper.erase(std::find(out.upper.begin(), out.upper.end(), half));
                out.lower.erase(std::find(out.lower.begin(), out.lower.end(), half));
            }
            break;
        }
        default:
            throw std::invalid_argument("family_series: family 1, 2 or 3");
    }
    out.diagonal = diagonal_of(K, spec, terms);
    // closed form: pFq evaluated at scale * x^arg_power
    int inner = terms / out.arg_power + 1;
    Series<QQ> f = pFq_series(out.upper, out.lower, out.scale, inner);
    out.closed_form = series_zero(K, terms);
    for (int k = 0; k <= inner; k++) {
        long deg = (long)k * out.arg_power;
        if (deg > terms) break;
        out.closed_form.a[deg] = f.a[k];
    }
    return out;
}

// --- fixtures ---

namespace {

RatFunc<QQ> parse_rf(const std::string& num, const std::string& den, const std::string& var) {
    QQ K;
    auto to_poly = [&](const std::string& text) {
        MPoly m = parse_mpoly_expr(text, {var});
        Poly<QQ> p;
        for (auto& [e, c] : m) {
            if ((int)p.c.size() <= e[0]) p.c.resize(e[0] + 1, K.zero());
            p.c[e[0]] = mpq_class(c);
        }
        poly_trim(K, p);
        return p;
    };
    return rf_normalize(K, to_poly(num), to_poly(den));
}

mpq_class parse_q(const std::string& s) { return mpq_class(s); }

PullbackRepr repr_from_json(const json& j) {
    QQ K;
    PullbackRepr r;
    if (j.count("prefactor"))
        for (auto& pf : j.at("prefactor")) {
            AlgebraicFactor f;
            MPoly m = parse_mpoly_expr(pf.at(0).get<std::string>(), {"x"});
            for (auto& [e, c] : m) {
                if ((int)f.q.c.size() <= e[0]) f.q.c.resize(e[0] + 1, K.zero());
                f.q.c[e[0]] = mpq_class(c);
            }
            poly_trim(K, f.q);
            f.e = parse_q(pf.at(1).get<std::string>());
            r.prefactor.push_back(std::move(f));
        }
    if (j.count("upper"))
        for (auto& u : j.at("upper")) r.upper.push_back(parse_q(u.get<std::string>()));
    if (j.count("lower"))
        for (auto& l : j.at("lower")) r.lower.push_back(parse_q(l.get<std::string>()));
    if (j.count("pullback_num"))
        r.pullback = parse_rf(j.at("pullback_num").get<std::string>(),
                              j.at("pullback_den").get<std::string>(), "x");
    return r;
}

Series<QQ> diagonal_from_json(const json& j, int n) {
    QQ K;
    if (j.count("spec")) {
        PolynomialSpec s = spec_from_text(j.at("spec").get<std::string>());
        if (s.nvars <= 3) return diagonal_of(K, s, n);
        return diagonal_of(K, s, n);
    }
    if (j.count("hadamard")) {
        Series<QQ> acc;
        bool first = true;
        for (auto& part : j.at("hadamard")) {
            PolynomialSpec s = spec_from_text(part.get<std::string>());
            Series<QQ> d = diagonal_of(K, s, n);
            acc = first ? d : hadamard(K, acc, d);
            first = false;
        }
        return acc;
    }
    throw parse_error("fixture: no diagonal given (spec or hadamard)");
}

} // namespace

FixtureResult run_fixture_json(const std::string& text, int order_override) {
    QQ K;
    json j = json::parse(text);
    FixtureResult res;
    res.name = j.value("name", "unnamed");
    std::string type = j.at("type").get<std::string>();
    int n = order_override > 0 ? order_override : j.value("order", 40);

    if (type == "pullback") {
        Series<QQ> s = diagonal_from_json(j, n);
        PullbackRepr r = repr_from_json(j);
        auto v = verify_pullback(s, r, n);
        res.outcome = v.pass ? FixtureOutcome::PASS : FixtureOutcome::FAIL;
        if (!v.pass) res.detail = "first mismatch at index " + std::to_string(v.first_mismatch);
        return res;
    }
    if (type == "curve") {
        Series<QQ> y = rf_series(K, parse_rf(j.at("Y_num").get<std::string>(),
                                             j.at("Y_den").get<std::string>(), "x"), n);
        Series<QQ> z = rf_series(K, parse_rf(j.at("Z_num").get<std::string>(),
                                             j.at("Z_den").get<std::string>(), "x"), n);
        bool erratum_flagged = j.value("erratum_suspect", false);
        std::vector<std::string> readings;
        if (j.count("relation")) readings.push_back(j.at("relation").get<std::string>());
        if (j.count("readings"))
            for (auto& r : j.at("readings")) readings.push_back(r.get<std::string>());
        for (size_t i = 0; i < readings.size(); i++) {
            BivarPoly rel = parse_bivar(readings[i]);
            if (j.count("checksums")) {
                mpz_class want(j.at("checksums").at(i).get<std::string>());
                if (bivar_checksum(rel) != want) {
                    res.outcome = FixtureOutcome::FAIL;
                    res.detail = "transcription checksum mismatch on reading " + std::to_string(i);
                    return res;
                }
            }
            auto v = verify_modular_curve(rel, y, z, n);
            if (v.pass) {
                res.outcome = FixtureOutcome::PASS;
                res.detail = readings.size() > 1 ? "reading " + std::to_string(i) + " vanishes" : "";
                return res;
            }
        }
        if (erratum_flagged) {
            res.outcome = FixtureOutcome::ERRATUM;
            res.detail = "no printed reading vanishes; fixture flagged as a paper erratum";
        } else {
            res.outcome = FixtureOutcome::FAIL;
            res.detail = "relation does not vanish on the series";
        }
        return res;
    }
    if (type == "hauptmodul") {
        HauptmodulTemplate t;
        t.tmpl = parse_rf(j.at("template_num").get<std::string>(),
                          j.at("template_den").get<std::string>(), "z");
        t.subst = parse_rf(j.at("subst_num").get<std::string>(),
                           j.at("subst_den").get<std::string>(), "x");
        Series<QQ> got = hauptmodul_series(t, n);
        Series<QQ> want = rf_series(K, parse_rf(j.at("expect_num").get<std::string>(),
                                                j.at("expect_den").get<std::string>(), "x"), n);
        res.outcome = FixtureOutcome::PASS;
        for (int i = 0; i <= n; i++)
            if (got.a[i] != want.a[i]) {
                res.outcome = FixtureOutcome::FAIL;
                res.detail = "hauptmodul series differs at index " + std::to_string(i);
                break;
            }
        return res;
    }
    if (type == "involution") {
        RatFunc<QQ> a = parse_rf(j.at("template1_num").get<std::string>(),
                                 j.at("template1_den").get<std::string>(), "z");
        RatFunc<QQ> b = parse_rf(j.at("template2_num").get<std::string>(),
                                 j.at("template2_den").get<std::string>(), "z");
        mpq_class c = parse_q(j.at("c").get<std::string>());
        bool ok = involution_check(a, b, c);
        res.outcome = ok ? FixtureOutcome::PASS : FixtureOutcome::FAIL;
        if (!ok) res.detail = "z -> c/z does not map template1 to template2";
        return res;
    }
    throw parse_error("fixture: unknown type " + type);
}

FixtureResult run_fixture_file(const std::string& path, int order_override) {
    std::ifstream in(path);
    if (!in) throw parse_error("fixture: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return run_fixture_json(text, order_override);
}

} // namespace diaglab
