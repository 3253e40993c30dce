#include "diaglab/ore.hpp"

#include "diaglab/polyspec.hpp"

namespace diaglab {

OreOp<QQ> ore_normalize_primitive(const QQ& K, const OreOp<QQ>& l) {
    if (l.is_zero()) return l;
    OreOp<QQ> r = ore_clear_denominators(K, l);
    mpz_class den_lcm = 1;
    for (auto& v : r.c)
        for (auto& e : v.num.c)
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), e.get_den().get_mpz_t());
    mpz_class content = 0;
    for (auto& v : r.c)
        for (auto& e : v.num.c) {
            mpq_class s = e * den_lcm;
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), s.get_num().get_mpz_t());
        }
    if (content == 0) content = 1;
    // sign: first nonzero coefficient of the leading polynomial positive
    mpq_class lead = 0;
    for (auto& e : r.c.back().num.c)
        if (sgn(e) != 0) { lead = e; break; }
    if (lead < 0) content = -content;
    mpq_class factor = mpq_class(den_lcm) / mpq_class(content);
    for (auto& v : r.c) v = rf_scale(K, v, factor);
    return r;
}

OreOp<Fp> ore_reduce(const Fp& K, const OreOp<QQ>& l) {
    OreOp<Fp> r;
    for (auto& v : l.c) r.c.push_back(rf_reduce(K, v));
    ore_trim(K, r);
    if (r.c.size() != l.c.size())
        throw std::domain_error("ore_reduce: leading coefficient vanishes mod p");
    return r;
}

std::string ore_to_text(const QQ& K, const OreOp<QQ>& l) {
    OreOp<QQ> n = ore_normalize_primitive(K, l);
    std::string out = "order=" + std::to_string(n.order());
    std::vector<std::string> var{"x"};
    for (int i = 0; i <= n.order(); i++) {
        MPoly m;
        const Poly<QQ>& p = n.c[i].num;
        for (int j = 0; j <= p.degree(); j++) {
            if (sgn(p.c[j]) == 0) continue;
            m[{j}] = p.c[j].get_num();
        }
        out += "; a" + std::to_string(i) + " = " + mpoly_to_text(m, var);
    }
    return out;
}

OreOp<QQ> ore_from_text(const std::string& text) {
    QQ K;
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ';') { parts.push_back(cur); cur.clear(); }
        else cur += c;
    }
    if (!cur.empty()) parts.push_back(cur);
    auto strip = [](const std::string& v) {
        size_t a = v.find_first_not_of(" \t\r\n");
        size_t b = v.find_last_not_of(" \t\r\n");
        return a == std::string::npos ? std::string() : v.substr(a, b - a + 1);
    };
    int order = -1;
    std::map<int, Poly<QQ>> coeffs;
    std::vector<std::string> var{"x"};
    for (auto& raw : parts) {
        std::string part = strip(raw);
        if (part.empty()) continue;
        auto eq = part.find('=');
        if (eq == std::string::npos) throw parse_error("operator field without '=': " + part);
        std::string key = strip(part.substr(0, eq)), val = strip(part.substr(eq + 1));
        if (key == "order") {
            order = std::stoi(val);
        } else if (key.size() >= 2 && key[0] == 'a') {
            int idx = std::stoi(key.substr(1));
            MPoly m = parse_mpoly_expr(val, var);
            Poly<QQ> p;
            for (auto& [e, c] : m) {
                if ((int)p.c.size() <= e[0]) p.c.resize(e[0] + 1, K.zero());
                p.c[e[0]] = mpq_class(c);
            }
            poly_trim(K, p);
            coeffs[idx] = p;
        } else {
            throw parse_error("operator: unknown field '" + key + "'");
        }
    }
    if (order < 0) throw parse_error("operator: missing order=");
    OreOp<QQ> l;
    l.c.assign(order + 1, rf_zero(K));
    for (auto& [i, p] : coeffs) {
        if (i > order) throw parse_error("operator: coefficient index exceeds order");
        l.c[i] = rf_from_poly(K, p);
    }
    ore_trim(K, l);
    if (l.order() != order) throw parse_error("operator: leading coefficient is zero");
    return l;
}

} // namespace diaglab
