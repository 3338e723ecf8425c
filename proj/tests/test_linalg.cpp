#include "doctest.h"

#include <random>

#include "freydlab/linalg.hpp"

using namespace freydlab;

namespace {

Mat make(const Ring& r, std::vector<std::vector<long>> rows) {
    std::vector<std::vector<mpq_class>> q;
    for (auto& row : rows) {
        q.emplace_back();
        for (long v : row) q.back().emplace_back(v);
    }
    return Mat::from_rows(r, q);
}

// Independent Smith oracle: d_k = gcd(k-minors) / gcd((k-1)-minors).
std::vector<mpz_class> minor_gcd_invariants(const Mat& a) {
    int m = a.rows(), n = a.cols();
    int mn = std::min(m, n);
    std::vector<mpz_class> gcds(mn + 1);
    gcds[0] = 1;
    // enumerate all k x k minors by index subsets
    for (int k = 1; k <= mn; ++k) {
        mpz_class g = 0;
        std::vector<int> ri(k), ci(k);
        std::function<void(int, int)> rows_rec = [&](int pos, int start) {
            if (pos == k) {
                std::function<void(int, int)> cols_rec = [&](int cpos, int cstart) {
                    if (cpos == k) {
                        // expansion determinant of the selected minor
                        std::function<mpz_class(std::vector<int>, std::vector<int>)> det =
                            [&](std::vector<int> rs, std::vector<int> cs) -> mpz_class {
                            if (rs.size() == 1) return a.at(rs[0], cs[0]).get_num();
                            mpz_class d = 0;
                            for (size_t j = 0; j < cs.size(); ++j) {
                                std::vector<int> rs2(rs.begin() + 1, rs.end());
                                std::vector<int> cs2;
                                for (size_t t = 0; t < cs.size(); ++t)
                                    if (t != j) cs2.push_back(cs[t]);
                                mpz_class sub = det(rs2, cs2);
                                mpz_class term = a.at(rs[0], cs[j]).get_num() * sub;
                                d += (j % 2 == 0) ? term : -term;
                            }
                            return d;
                        };
                        mpz_class d = det(ri, ci);
                        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
                        return;
                    }
                    for (int c = cstart; c < n; ++c) {
                        ci[cpos] = c;
                        cols_rec(cpos + 1, c + 1);
                    }
                };
                cols_rec(0, 0);
                return;
            }
            for (int r = start; r < m; ++r) {
                ri[pos] = r;
                rows_rec(pos + 1, r + 1);
            }
        };
        rows_rec(0, 0);
        gcds[k] = g;
    }
    std::vector<mpz_class> d;
    for (int k = 1; k <= mn; ++k) {
        if (gcds[k] == 0) break;
        d.push_back(gcds[k] / gcds[k - 1]);
    }
    return d;
}

// all vectors over Z/n of length len, as columns
std::vector<std::vector<long>> all_vectors(long n, int len) {
    std::vector<std::vector<long>> out;
    std::vector<long> cur(len, 0);
    while (true) {
        out.push_back(cur);
        int i = 0;
        while (i < len && ++cur[i] == n) cur[i++] = 0;
        if (i == len) break;
    }
    if (len == 0) out.assign(1, {});
    return out;
}

Mat col_vec(const Ring& r, const std::vector<long>& v) {
    Mat m(r, static_cast<int>(v.size()), 1);
    for (size_t i = 0; i < v.size(); ++i) m.set(static_cast<int>(i), 0, mpq_class(v[i]));
    return m;
}

bool in_column_span_bruteforce(const Mat& gens, const Mat& target, long n) {
    // enumerate all coefficient vectors over Z/n
    auto coeffs = all_vectors(n, gens.cols());
    for (auto& cf : coeffs) {
        Mat x = col_vec(gens.ring(), cf);
        if ((gens * x) == target) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("smith normal form over Z matches the minor-gcd oracle") {
    Ring Z = Ring::integers();
    // frozen from the oracle: diag(2,3) ~ diag(1,6)
    Mat a = make(Z, {{2, 0}, {0, 3}});
    auto oracle = minor_gcd_invariants(a);
    REQUIRE(oracle.size() == 2);
    CHECK(oracle[0] == 1);
    CHECK(oracle[1] == 6);
    auto nf = normal_form(a);
    CHECK(nf.n.at(0, 0) == 1);
    CHECK(nf.n.at(1, 1) == 6);
    CHECK(nf.u * a * nf.v == nf.n);
    CHECK(is_invertible(nf.u));
    CHECK(is_invertible(nf.v));

    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        int m = 1 + rng() % 3, n = 1 + rng() % 3;
        Mat r(Z, m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) r.set(i, j, mpq_class(static_cast<long>(rng() % 9) - 4));
        auto f = normal_form(r);
        CHECK(f.u * r * f.v == f.n);
        CHECK(is_invertible(f.u));
        CHECK(is_invertible(f.v));
        auto want = minor_gcd_invariants(r);
        int mn = std::min(m, n);
        for (int i = 0; i < mn; ++i) {
            mpz_class got = f.n.at(i, i).get_num();
            mpz_class expect = i < static_cast<int>(want.size()) ? want[i] : mpz_class(0);
            CHECK(got == expect);
            for (int j = 0; j < n; ++j)
                if (j != i) CHECK(f.n.at(i, j) == 0);
        }
    }
}

TEST_CASE("normal form identity and prime field cases") {
    for (auto ring : {Ring::integers(), Ring::rationals(), Ring::prime_field(5),
                      Ring::integers_mod(6)}) {
        Mat id = Mat::identity(ring, 3);
        auto nf = normal_form(id);
        CHECK(nf.n == id);
    }
    Mat two = make(Ring::prime_field(2), {{2}});
    CHECK(normal_form(two).n.at(0, 0) == 0);
}

TEST_CASE("normal form over Z/n gives divisor-chain diagonal") {
    Ring z6 = Ring::integers_mod(6);
    Mat a = make(z6, {{4}});
    auto nf = normal_form(a);
    CHECK(nf.n.at(0, 0) == 2);  // 4 is associate to gcd(4,6)=2 mod 6
    CHECK(nf.u * a * nf.v == nf.n);
    CHECK(is_invertible(nf.u));
    CHECK(is_invertible(nf.v));

    std::mt19937 rng(11);
    for (long mod : {4L, 6L, 8L, 9L}) {
        Ring zn = Ring::integers_mod(mod);
        for (int trial = 0; trial < 40; ++trial) {
            int m = 1 + rng() % 3, n = 1 + rng() % 3;
            Mat r(zn, m, n);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < n; ++j) r.set(i, j, mpq_class(static_cast<long>(rng() % mod)));
            auto f = normal_form(r);
            CHECK(f.u * r * f.v == f.n);
            CHECK(is_invertible(f.u));
            CHECK(is_invertible(f.v));
            mpz_class prev = 1;
            for (int i = 0; i < std::min(m, n); ++i) {
                mpz_class d = f.n.at(i, i).get_num();
                if (d == 0) continue;
                CHECK(mpz_divisible_p(mpz_class(mod).get_mpz_t(), d.get_mpz_t()));
                if (prev != 0) CHECK(mpz_divisible_p(d.get_mpz_t(), prev.get_mpz_t()));
                prev = d;
            }
        }
    }
}

TEST_CASE("solve_right examples") {
    Ring Z = Ring::integers();
    auto x = solve_right(make(Z, {{2}}), make(Z, {{4}}));
    REQUIRE(x.has_value());
    CHECK(x->at(0, 0) == 2);
    CHECK_FALSE(solve_right(make(Z, {{2}}), make(Z, {{3}})).has_value());

    // over Z/4 the solutions of 2x = 2 are {1, 3}; the canonical pick is 1
    Ring z4 = Ring::integers_mod(4);
    Mat a = make(z4, {{2}}), b = make(z4, {{2}});
    std::vector<long> sols;
    for (long c = 0; c < 4; ++c)
        if ((a * col_vec(z4, {c})) == b) sols.push_back(c);
    CHECK(sols == std::vector<long>{1, 3});
    auto xm = solve_right(a, b);
    REQUIRE(xm.has_value());
    CHECK(xm->at(0, 0) == 1);

    CHECK_THROWS_AS(solve_right(make(Z, {{1}}), make(z4, {{1}})), Error);
    CHECK_THROWS_AS(solve_right(make(Z, {{1}, {2}}), make(Z, {{1}})), Error);
}

TEST_CASE("solve_right returns exact solutions on random instances") {
    std::mt19937 rng(23);
    std::vector<Ring> rings = {Ring::integers(), Ring::rationals(), Ring::prime_field(3),
                               Ring::integers_mod(6)};
    for (const auto& ring : rings) {
        for (int trial = 0; trial < 50; ++trial) {
            int m = 1 + rng() % 3, n = 1 + rng() % 3, k = 1 + rng() % 2;
            Mat a(ring, m, n), x0(ring, n, k);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < n; ++j) a.set(i, j, mpq_class(static_cast<long>(rng() % 7) - 3));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < k; ++j) x0.set(i, j, mpq_class(static_cast<long>(rng() % 7) - 3));
            Mat b = a * x0;
            auto x = solve_right(a, b);
            REQUIRE(x.has_value());
            CHECK(a * *x == b);
        }
    }
}

TEST_CASE("kernel generators") {
    Ring Q = Ring::rationals();
    Mat k = kernel_gens(make(Q, {{1, 1}}));
    REQUIRE(k.cols() == 1);
    // spanned by (1,-1): the computed generator must be a scalar multiple
    CHECK(k.at(0, 0) == -k.at(1, 0));
    CHECK(k.at(1, 0) != 0);

    Ring z4 = Ring::integers_mod(4);
    Mat k4 = kernel_gens(make(z4, {{2}}));
    // brute force over Z/4: kernel of (2) is {0, 2} = <2>
    std::vector<long> ker;
    for (long c = 0; c < 4; ++c)
        if ((make(z4, {{2}}) * col_vec(z4, {c})).is_zero()) ker.push_back(c);
    CHECK(ker == std::vector<long>{0, 2});
    REQUIRE(k4.cols() == 1);
    CHECK(k4.at(0, 0) == 2);

    Mat empty(Ring::integers(), 0, 3);
    CHECK(kernel_gens(empty) == Mat::identity(Ring::integers(), 3));
}

TEST_CASE("kernel generators are sound and complete over finite rings") {
    std::mt19937 rng(5);
    for (long mod : {2L, 4L, 6L}) {
        Ring ring = mod == 2 ? Ring::prime_field(2) : Ring::integers_mod(mod);
        for (int trial = 0; trial < 30; ++trial) {
            int m = 1 + rng() % 2, n = 1 + rng() % 3;
            Mat a(ring, m, n);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < n; ++j) a.set(i, j, mpq_class(static_cast<long>(rng() % mod)));
            Mat k = kernel_gens(a);
            CHECK((a * k).is_zero());
            // completeness: every kernel vector is a combination of the columns
            for (auto& v : all_vectors(mod, n)) {
                Mat x = col_vec(ring, v);
                if ((a * x).is_zero()) CHECK(in_column_span_bruteforce(k, x, mod));
            }
        }
    }
}

TEST_CASE("integer kernels are lattice bases") {
    Ring Z = Ring::integers();
    std::mt19937 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        int m = 1 + rng() % 2, n = 1 + rng() % 3;
        Mat a(Z, m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) a.set(i, j, mpq_class(static_cast<long>(rng() % 7) - 3));
        Mat k = kernel_gens(a);
        CHECK((a * k).is_zero());
        // membership: random small kernel vectors solve through k exactly
        for (int probe = 0; probe < 10; ++probe) {
            Mat x(Z, n, 1);
            for (int i = 0; i < n; ++i) x.set(i, 0, mpq_class(static_cast<long>(rng() % 9) - 4));
            if ((a * x).is_zero()) {
                auto c = solve_right(k, x);
                CHECK(c.has_value());
            }
        }
    }
}

TEST_CASE("cokernel invariants") {
    Ring Z = Ring::integers();
    auto inv = cokernel_invariants(make(Z, {{2, 0}, {0, 3}}));
    REQUIRE(inv.torsion.size() == 1);
    CHECK(inv.torsion[0] == 6);
    CHECK(inv.free_rank == 0);
    CHECK(inv.to_string() == "Z/6");

    auto free1 = cokernel_invariants(Mat(Z, 1, 0));
    CHECK(free1.free_rank == 1);
    CHECK(free1.to_string() == "Z");

    auto zero = cokernel_invariants(Mat::identity(Z, 2));
    CHECK(zero.is_zero());
    CHECK(zero.to_string() == "0");

    Ring Q = Ring::rationals();
    CHECK(cokernel_invariants(make(Q, {{0, 0}, {1, 0}})).free_rank == 1);
}

TEST_CASE("span canonicalization is stable") {
    Ring Z = Ring::integers();
    Mat a = make(Z, {{2, 4}, {6, 8}});
    Mat b = make(Z, {{6, 8}, {2, 4}, {8, 12}});
    CHECK(span_canonical_rows(a) == span_canonical_rows(b));

    Ring z4 = Ring::integers_mod(4);
    Mat c = make(z4, {{2, 1}});
    Mat how = span_canonical_rows(c);
    // Howell closure needs the annihilator row (0, 2)
    REQUIRE(how.rows() == 2);
    CHECK(how.at(1, 0) == 0);
    CHECK(how.at(1, 1) == 2);
}
