#include <doctest.h>

#include "diaglab/linalg.hpp"
#include "diaglab/poly.hpp"
#include "diaglab/reconstruct.hpp"

using namespace diaglab;

TEST_CASE("nullspace: full-rank identity has empty kernel") {
    QQ K;
    Matrix<QQ> m(K, 2, 2);
    m.at(0, 0) = 1;
    m.at(1, 1) = 1;
    CHECK(nullspace(K, m).empty());
}

TEST_CASE("nullspace: zero map has full kernel") {
    QQ K;
    Matrix<QQ> m(K, 2, 3);
    CHECK(nullspace(K, m).size() == 3);
}

TEST_CASE("nullspace: [[1,1,0],[0,1,1]] -> span{(1,-1,1)}") {
    QQ K;
    Matrix<QQ> m(K, 2, 3);
    m.at(0, 0) = 1; m.at(0, 1) = 1;
    m.at(1, 1) = 1; m.at(1, 2) = 1;
    auto b = nullspace(K, m);
    REQUIRE(b.size() == 1);
    mpq_class s = b[0][2];
    REQUIRE(sgn(s) != 0);
    CHECK(b[0][0] / s == 1);
    CHECK(b[0][1] / s == -1);
    CHECK(b[0][2] / s == 1);
    for (int i = 0; i < 2; i++) {
        mpq_class acc = 0;
        for (int j = 0; j < 3; j++) acc += m.at(i, j) * b[0][j];
        CHECK(sgn(acc) == 0);
    }
}

TEST_CASE("rational_reconstruct: small integer") {
    auto q = rational_reconstruct(mpz_class(2), mpz_class(101));
    REQUIRE(q.has_value());
    CHECK(*q == 2);
}

TEST_CASE("rational_reconstruct: inverse of 3 mod 10007 -> 1/3") {
    Fp K(10007);
    u64 r = K.inv(3);
    auto q = rational_reconstruct(mpz_class((unsigned long)r), mpz_class(10007));
    REQUIRE(q.has_value());
    CHECK(*q == mpq_class(1, 3));
    CHECK(K.mul(3, r) == 1);
}

TEST_CASE("rational_reconstruct: r=5003, m=10007 against exhaustive search") {
    // oracle: scan |a|, b <= 70 = floor(sqrt(10007/2))
    mpz_class m = 10007, r = 5003;
    bool exists = false;
    mpq_class found;
    for (long b = 1; b <= 70 && !exists; b++) {
        for (long a = -70; a <= 70; a++) {
            if (mpz_class(a - 5003 * b) % m == 0) {
                mpz_class g;
                mpz_gcd(g.get_mpz_t(), mpz_class(a).get_mpz_t(), mpz_class(b).get_mpz_t());
                if (g == 1 || (a == 0 && b == 1)) {
                    exists = true;
                    found = mpq_class(a, b);
                    break;
                }
            }
        }
    }
    auto q = rational_reconstruct(r, m);
    CHECK(q.has_value() == exists);
    if (q && exists) {
        CHECK(*q == found);
        CHECK(abs(q->get_num()) <= 70);
        CHECK(q->get_den() <= 70);
    }
}

TEST_CASE("rational_reconstruct: modulus must exceed 1") {
    CHECK_THROWS(rational_reconstruct(mpz_class(0), mpz_class(1)));
}

TEST_CASE("crt_combine examples") {
    auto [r1, m1] = crt_combine({{1, 3}, {1, 5}});
    CHECK(r1 == 1);
    CHECK(m1 == 15);
    auto [r2, m2] = crt_combine({{2, 3}, {3, 5}});
    long expect = -1;
    for (long t = 0; t < 15; t++)
        if (t % 3 == 2 && t % 5 == 3) expect = t;
    CHECK(r2 == expect);
    CHECK(m2 == 15);
    auto [r3, m3] = crt_combine({{0, 97}});
    CHECK(r3 == 0);
    CHECK(m3 == 97);
    CHECK_THROWS(crt_combine({{1, 3}, {2, 3}}));
}

TEST_CASE("poly divmod and gcd") {
    QQ K;
    Poly<QQ> a{{mpq_class(-1), mpq_class(0), mpq_class(1)}};
    Poly<QQ> b{{mpq_class(1), mpq_class(1)}};
    auto [q, r] = poly_divmod(K, a, b);
    CHECK(r.is_zero());
    CHECK(poly_eq(K, poly_mul(K, q, b), a));
    Poly<QQ> g = poly_gcd(K, a, b);
    CHECK(g.degree() == 1);
}

TEST_CASE("taylor shift and integer roots") {
    QQ K;
    Poly<QQ> p{{mpq_class(-10), mpq_class(3), mpq_class(1)}}; // (x-2)(x+5)
    auto roots = poly_integer_roots_bounded(K, p, 100);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == -5);
    CHECK(roots[1] == 2);
    Poly<QQ> sh = poly_taylor_shift(K, p, mpq_class(2));
    CHECK(sgn(poly_eval(K, sh, mpq_class(0))) == 0);
}

TEST_CASE("nullspace_fp kernel dimension") {
    Fp K(default_primes()[0]);
    std::vector<u64> m = {
        1, 2, 3, 4, 5,
        0, 1, 2, 3, 4,
        0, 0, 1, 2, 3,
    };
    auto kern = nullspace_fp(K, m, 3, 5);
    CHECK(kern.size() == 2);
}

TEST_CASE("fp field basics") {
    Fp K(default_primes()[1]);
    u64 a = K.from_int(-7);
    CHECK(K.add(a, K.from_int(7)) == 0);
    u64 x = 123456789;
    CHECK(K.mul(x, K.inv(x)) == 1);
}

TEST_CASE("resultant of (x-1)(x-2) and (x-3)") {
    QQ K;
    Poly<QQ> a{{mpq_class(2), mpq_class(-3), mpq_class(1)}};
    Poly<QQ> b{{mpq_class(-3), mpq_class(1)}};
    // res = a(3) * lc(b)^... = (3-1)(3-2) = 2
    CHECK(poly_resultant(K, a, b) == 2);
}
