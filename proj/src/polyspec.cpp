#include "diaglab/polyspec.hpp"

#include <cctype>
#include <sstream>

namespace diaglab {

MPoly mpoly_const(int nvars, const mpz_class& c) {
    MPoly r;
    if (c != 0) r[std::vector<int>(nvars, 0)] = c;
    return r;
}

MPoly mpoly_add(const MPoly& a, const MPoly& b) {
    MPoly r = a;
    for (auto& [e, c] : b) {
        r[e] += c;
        if (r[e] == 0) r.erase(e);
    }
    return r;
}

MPoly mpoly_neg(const MPoly& a) {
    MPoly r;
    for (auto& [e, c] : a) r[e] = -c;
    return r;
}

MPoly mpoly_sub(const MPoly& a, const MPoly& b) { return mpoly_add(a, mpoly_neg(b)); }

MPoly mpoly_mul(const MPoly& a, const MPoly& b) {
    MPoly r;
    for (auto& [ea, ca] : a)
        for (auto& [eb, cb] : b) {
            std::vector<int> e(ea.size());
            for (size_t i = 0; i < e.size(); i++) e[i] = ea[i] + eb[i];
            r[e] += ca * cb;
            if (r[e] == 0) r.erase(e);
        }
    return r;
}

MPoly PolynomialSpec::denominator() const {
    return mpoly_sub(mpoly_const(nvars, 1), p);
}

MPoly PolynomialSpec::numerator() const {
    if (num.empty()) return mpoly_const(nvars, 1);
    return num;
}

bool PolynomialSpec::num_is_one() const {
    if (num.empty()) return true;
    MPoly one = mpoly_const(nvars, 1);
    return num == one;
}

mpz_class PolynomialSpec::den_at_origin() const {
    mpz_class v = 1;
    auto it = p.find(std::vector<int>(nvars, 0));
    if (it != p.end()) v -= it->second;
    return v;
}

PolynomialSpec PolynomialSpec::times(const PolynomialSpec& other) const {
    if (other.nvars != nvars) throw std::invalid_argument("times: nvars mismatch");
    PolynomialSpec r;
    r.nvars = nvars;
    MPoly den = mpoly_mul(denominator(), other.denominator());
    r.p = mpoly_sub(mpoly_const(nvars, 1), den);
    MPoly n = mpoly_mul(numerator(), other.numerator());
    r.num = n;
    return r;
}

PolynomialSpec PolynomialSpec::permuted(const std::vector<int>& perm) const {
    PolynomialSpec r;
    r.nvars = nvars;
    auto permute = [&](const MPoly& m) {
        MPoly out;
        for (auto& [e, c] : m) {
            std::vector<int> e2(nvars, 0);
            for (int i = 0; i < nvars; i++) e2[perm[i]] = e[i];
            out[e2] += c;
        }
        return out;
    };
    r.p = permute(p);
    r.num = permute(num);
    return r;
}

PolynomialSpec PolynomialSpec::scaled(const std::vector<mpz_class>& lambda) const {
    PolynomialSpec r;
    r.nvars = nvars;
    auto scale = [&](const MPoly& m) {
        MPoly out;
        for (auto& [e, c] : m) {
            mpz_class f = c;
            for (int i = 0; i < nvars; i++) {
                for (int k = 0; k < e[i]; k++) f *= lambda[i];
            }
            if (f != 0) out[e] = f;
        }
        return out;
    };
    r.p = scale(p);
    r.num = scale(num);
    return r;
}

PolynomialSpec make_spec(int nvars, const std::vector<std::pair<std::vector<int>, long>>& mono) {
    PolynomialSpec s;
    s.nvars = nvars;
    for (auto& [e, c] : mono) {
        if ((int)e.size() != nvars) throw std::invalid_argument("make_spec: exponent arity");
        if (c != 0) s.p[e] += c;
    }
    return s;
}

// ---- expression parser ----

namespace {

struct ExprParser {
    const std::string& s;
    size_t i = 0;
    const std::vector<std::string>& vars;
    int nvars;

    ExprParser(const std::string& text, const std::vector<std::string>& varnames)
        : s(text), vars(varnames), nvars((int)varnames.size()) {}

    void skip_ws() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) i++;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) { i++; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw parse_error("polynomial expression: " + msg + " at offset " + std::to_string(i) +
                          " in '" + s + "'");
    }

    MPoly parse() {
        MPoly r = parse_sum();
        skip_ws();
        if (i != s.size()) fail("trailing input");
        return r;
    }

    MPoly parse_sum() {
        skip_ws();
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        MPoly r = parse_product();
        if (neg) r = mpoly_neg(r);
        while (true) {
            skip_ws();
            if (eat('+')) r = mpoly_add(r, parse_product());
            else if (eat('-')) r = mpoly_sub(r, parse_product());
            else return r;
        }
    }

    MPoly parse_product() {
        MPoly r = parse_power();
        while (true) {
            skip_ws();
            if (eat('*')) r = mpoly_mul(r, parse_power());
            else if (i < s.size() && (s[i] == '(' || std::isalpha((unsigned char)s[i])))
                r = mpoly_mul(r, parse_power()); // implicit product like 2x or x(1+x)
            else return r;
        }
    }

    MPoly parse_power() {
        MPoly base = parse_atom();
        skip_ws();
        if (eat('^')) {
            skip_ws();
            size_t j = i;
            while (j < s.size() && std::isdigit((unsigned char)s[j])) j++;
            if (j == i) fail("expected integer exponent");
            long e = std::stol(s.substr(i, j - i));
            i = j;
            MPoly r = mpoly_const(nvars, 1);
            for (long k = 0; k < e; k++) r = mpoly_mul(r, base);
            return r;
        }
        return base;
    }

    MPoly parse_atom() {
        skip_ws();
        if (i >= s.size()) fail("unexpected end");
        if (eat('(')) {
            MPoly r = parse_sum();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (std::isdigit((unsigned char)s[i])) {
            size_t j = i;
            while (j < s.size() && std::isdigit((unsigned char)s[j])) j++;
            mpz_class v(s.substr(i, j - i));
            i = j;
            return mpoly_const(nvars, v);
        }
        if (std::isalpha((unsigned char)s[i])) {
            size_t j = i;
            while (j < s.size() && (std::isalnum((unsigned char)s[j]) || s[j] == '_')) j++;
            std::string name = s.substr(i, j - i);
            for (int v = 0; v < nvars; v++) {
                if (vars[v] == name) {
                    i = j;
                    std::vector<int> e(nvars, 0);
                    e[v] = 1;
                    MPoly r;
                    r[e] = 1;
                    return r;
                }
            }
            fail("unknown variable '" + name + "'");
        }
        fail("unexpected character");
    }
};

std::string monomial_text(const std::vector<int>& e, const mpz_class& mag,
                          const std::vector<std::string>& vars) {
    std::string out;
    bool all_zero = true;
    for (int x : e)
        if (x) all_zero = false;
    if (mag != 1 || all_zero) out = mag.get_str();
    for (size_t v = 0; v < e.size(); v++) {
        if (!e[v]) continue;
        if (!out.empty()) out += "*";
        out += vars[v];
        if (e[v] > 1) out += "^" + std::to_string(e[v]);
    }
    return out;
}

} // namespace

MPoly parse_mpoly_expr(const std::string& text, const std::vector<std::string>& varnames) {
    ExprParser p(text, varnames);
    return p.parse();
}

std::string mpoly_to_text(const MPoly& m, const std::vector<std::string>& vars) {
    if (m.empty()) return "0";
    // order: by total degree, then lexicographic exponent
    std::vector<std::pair<std::vector<int>, mpz_class>> terms(m.begin(), m.end());
    std::stable_sort(terms.begin(), terms.end(), [](auto& a, auto& b) {
        int ta = 0, tb = 0;
        for (int x : a.first) ta += x;
        for (int x : b.first) tb += x;
        if (ta != tb) return ta < tb;
        return a.first < b.first;
    });
    std::string out;
    for (size_t t = 0; t < terms.size(); t++) {
        auto& [e, c] = terms[t];
        mpz_class mag = abs(c);
        if (t == 0) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        out += monomial_text(e, mag, vars);
    }
    return out;
}

static std::vector<std::string> xvars(int n) {
    std::vector<std::string> v(n);
    for (int i = 0; i < n; i++) v[i] = "x" + std::to_string(i + 1);
    return v;
}

std::string spec_to_text(const PolynomialSpec& s) {
    std::vector<std::string> vars = xvars(s.nvars);
    std::string out = "nvars=" + std::to_string(s.nvars) + "; den=" +
                      mpoly_to_text(s.denominator(), vars) + "; num=" +
                      mpoly_to_text(s.numerator(), vars);
    return out;
}

PolynomialSpec spec_from_text(const std::string& text) {
    // split on ';', each field key=value
    std::map<std::string, std::string> fields;
    std::string cur;
    std::vector<std::string> parts;
    for (char c : text) {
        if (c == ';') { parts.push_back(cur); cur.clear(); }
        else cur += c;
    }
    if (!cur.empty()) parts.push_back(cur);
    for (auto& part : parts) {
        auto eq = part.find('=');
        if (eq == std::string::npos) {
            bool blank = true;
            for (char c : part)
                if (!std::isspace((unsigned char)c)) blank = false;
            if (blank) continue;
            throw parse_error("spec field without '=': " + part);
        }
        std::string key = part.substr(0, eq), val = part.substr(eq + 1);
        auto strip = [](std::string v) {
            size_t a = v.find_first_not_of(" \t\r\n");
            size_t b = v.find_last_not_of(" \t\r\n");
            return a == std::string::npos ? std::string() : v.substr(a, b - a + 1);
        };
        fields[strip(key)] = strip(val);
    }
    if (!fields.count("nvars") || !fields.count("den"))
        throw parse_error("spec needs nvars= and den= fields");
    PolynomialSpec s;
    s.nvars = std::stoi(fields["nvars"]);
    if (s.nvars < 1 || s.nvars > 16) throw parse_error("spec nvars out of range");
    std::vector<std::string> vars = xvars(s.nvars);
    MPoly den = parse_mpoly_expr(fields["den"], vars);
    s.p = mpoly_sub(mpoly_const(s.nvars, 1), den);
    if (fields.count("num") && fields["num"] != "1")
        s.num = parse_mpoly_expr(fields["num"], vars);
    return s;
}

} // namespace diaglab
