#include "freydlab/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace freydlab {
namespace {

using ZMat = std::vector<std::vector<mpz_class>>;

ZMat to_z(const Mat& m) {
    ZMat z(m.rows(), std::vector<mpz_class>(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            const mpq_class& v = m.at(i, j);
            if (v.get_den() != 1) throw Error("NotIntegral", "integer routine fed a fraction");
            z[i][j] = v.get_num();
        }
    return z;
}

Mat from_z(const Ring& ring, const ZMat& z, int cols) {
    Mat m(ring, static_cast<int>(z.size()), cols);
    for (size_t i = 0; i < z.size(); ++i)
        for (int j = 0; j < cols; ++j) m.set(static_cast<int>(i), j, mpq_class(z[i][j]));
    return m;
}

ZMat z_identity(int n) {
    ZMat u(n, std::vector<mpz_class>(n, 0));
    for (int i = 0; i < n; ++i) u[i][i] = 1;
    return u;
}

void row_swap(ZMat& a, int i, int j) { std::swap(a[i], a[j]); }
void row_addmul(ZMat& a, int dst, int src, const mpz_class& c) {
    for (size_t j = 0; j < a[dst].size(); ++j) a[dst][j] += c * a[src][j];
}
void row_scale(ZMat& a, int i, const mpz_class& c) {
    for (auto& v : a[i]) v *= c;
}
void col_swap(ZMat& a, int i, int j) {
    for (auto& r : a) std::swap(r[i], r[j]);
}
void col_addmul(ZMat& a, int dst, int src, const mpz_class& c) {
    for (auto& r : a) r[dst] += c * r[src];
}
void col_scale(ZMat& a, int j, const mpz_class& c) {
    for (auto& r : a) r[j] *= c;
}

// Round-to-nearest quotient keeps remainders small during reduction.
mpz_class quot_near(const mpz_class& a, const mpz_class& b) {
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (2 * r > abs(b)) q += 1;
    return q;
}

// Smith form over Z: u*a*v = diag(d1 | d2 | ...), di >= 0.
void smith_z(ZMat& a, int ncols, ZMat& u, ZMat& v) {
    int m = static_cast<int>(a.size());
    int n = ncols;
    u = z_identity(m);
    v = z_identity(n);
    int t = 0;
    while (t < m && t < n) {
        // locate a smallest nonzero pivot in the trailing block
        int pi = -1, pj = -1;
        mpz_class best;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j)
                if (a[i][j] != 0 && (pi < 0 || abs(a[i][j]) < best)) {
                    best = abs(a[i][j]);
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;
        if (pi != t) { row_swap(a, pi, t); row_swap(u, pi, t); }
        if (pj != t) { col_swap(a, pj, t); col_swap(v, pj, t); }
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < m; ++i)
                if (a[i][t] != 0) {
                    mpz_class q = quot_near(a[i][t], a[t][t]);
                    row_addmul(a, i, t, -q);
                    row_addmul(u, i, t, -q);
                    if (a[i][t] != 0) {
                        row_swap(a, i, t);
                        row_swap(u, i, t);
                        clean = false;
                    }
                }
            for (int j = t + 1; j < n; ++j)
                if (a[t][j] != 0) {
                    mpz_class q = quot_near(a[t][j], a[t][t]);
                    col_addmul(a, j, t, -q);
                    col_addmul(v, j, t, -q);
                    if (a[t][j] != 0) {
                        col_swap(a, j, t);
                        col_swap(v, j, t);
                        clean = false;
                    }
                }
            if (!clean) continue;
            // divisibility fix: pivot must divide the trailing block
            for (int i = t + 1; i < m && clean; ++i)
                for (int j = t + 1; j < n && clean; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        row_addmul(a, t, i, 1);
                        row_addmul(u, t, i, 1);
                        clean = false;
                    }
        }
        if (a[t][t] < 0) { row_scale(a, t, -1); row_scale(u, t, -1); }
        ++t;
    }
}

// Row Hermite form over Z: u*a = h, pivots positive, entries above pivots
// reduced into [0, pivot).
void hnf_z(ZMat& a, int ncols, ZMat& u) {
    int m = static_cast<int>(a.size());
    int n = ncols;
    u = z_identity(m);
    int r = 0;
    for (int j = 0; j < n && r < m; ++j) {
        while (true) {
            int pi = -1;
            mpz_class best;
            for (int i = r; i < m; ++i)
                if (a[i][j] != 0 && (pi < 0 || abs(a[i][j]) < best)) {
                    best = abs(a[i][j]);
                    pi = i;
                }
            if (pi < 0) break;
            bool others = false;
            for (int i = r; i < m; ++i)
                if (i != pi && a[i][j] != 0) {
                    others = true;
                    mpz_class q = quot_near(a[i][j], a[pi][j]);
                    row_addmul(a, i, pi, -q);
                    row_addmul(u, i, pi, -q);
                }
            if (!others) {
                if (pi != r) { row_swap(a, pi, r); row_swap(u, pi, r); }
                if (a[r][j] < 0) { row_scale(a, r, -1); row_scale(u, r, -1); }
                for (int i = 0; i < r; ++i) {
                    mpz_class q;
                    mpz_fdiv_q(q.get_mpz_t(), a[i][j].get_mpz_t(), a[r][j].get_mpz_t());
                    if (q != 0) { row_addmul(a, i, r, -q); row_addmul(u, i, r, -q); }
                }
                ++r;
                break;
            }
        }
    }
}

int leading_index(const std::vector<mpz_class>& row) {
    for (size_t j = 0; j < row.size(); ++j)
        if (row[j] != 0) return static_cast<int>(j);
    return -1;
}

// Unit u (mod n) with u*a == gcd(a, n) (mod n).
mpz_class associate_unit(const mpz_class& a, const mpz_class& n) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    mpz_class ap = a / g, q = n / g;
    mpz_class u0 = 1;
    if (q > 1) {
        if (mpz_invert(u0.get_mpz_t(), ap.get_mpz_t(), q.get_mpz_t()) == 0)
            throw Error("Internal", "associate_unit: gcd(a/g, n/g) != 1");
    }
    mpz_class u = u0;
    while (true) {
        mpz_class gg;
        mpz_class um = u % n;
        mpz_gcd(gg.get_mpz_t(), um.get_mpz_t(), n.get_mpz_t());
        if (gg == 1) return um;
        u += q;
    }
}

void mod_reduce(ZMat& a, const mpz_class& n) {
    for (auto& row : a)
        for (auto& v : row) mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
}

// Howell form of the row span over Z/n.  Returns canonical nonzero rows:
// strictly increasing pivot columns, pivots dividing n, entries above a pivot
// reduced modulo it, and the span closed under annihilator rows.
ZMat howell_rows(ZMat rows, const mpz_class& n, int ncols) {
    mod_reduce(rows, n);
    std::vector<std::vector<mpz_class>> work;
    for (auto& r : rows)
        if (leading_index(r) >= 0) work.push_back(r);
    ZMat result;
    for (int j = 0; j < ncols; ++j) {
        // merge every row with leading index j into a single pivot row
        std::vector<std::vector<mpz_class>> rest;
        std::vector<mpz_class> pivot;
        bool have = false;
        for (auto& r : work) {
            if (leading_index(r) != j) { rest.push_back(r); continue; }
            if (!have) { pivot = r; have = true; continue; }
            // unimodular 2x2 combine on (pivot, r)
            mpz_class a = pivot[j], b = r[j], g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            std::vector<mpz_class> comb(ncols), leftover(ncols);
            for (int k = 0; k < ncols; ++k) {
                comb[k] = s * pivot[k] + t * r[k];
                leftover[k] = (b / g) * pivot[k] - (a / g) * r[k];
                mpz_mod(comb[k].get_mpz_t(), comb[k].get_mpz_t(), n.get_mpz_t());
                mpz_mod(leftover[k].get_mpz_t(), leftover[k].get_mpz_t(), n.get_mpz_t());
            }
            pivot = comb;
            if (leading_index(leftover) >= 0) rest.push_back(leftover);
            if (leading_index(pivot) != j) {
                // possible when gcd hits 0 mod n; recycle and retry
                if (leading_index(pivot) >= 0) rest.push_back(pivot);
                have = false;
            }
        }
        work = rest;
        if (!have) continue;
        // normalize the pivot entry to gcd(pivot, n)
        mpz_class u = associate_unit(pivot[j], n);
        for (int k = 0; k < ncols; ++k) {
            pivot[k] *= u;
            mpz_mod(pivot[k].get_mpz_t(), pivot[k].get_mpz_t(), n.get_mpz_t());
        }
        // annihilator completion keeps the span Howell-closed
        mpz_class d = pivot[j];
        mpz_class ann = n / d;  // d | n after normalization
        std::vector<mpz_class> extra(ncols);
        for (int k = 0; k < ncols; ++k) {
            extra[k] = ann * pivot[k];
            mpz_mod(extra[k].get_mpz_t(), extra[k].get_mpz_t(), n.get_mpz_t());
        }
        if (leading_index(extra) >= 0) work.push_back(extra);
        result.push_back(pivot);
    }
    // reduce entries above each pivot into [0, pivot)
    for (size_t k = 0; k < result.size(); ++k) {
        int j = leading_index(result[k]);
        const mpz_class& d = result[k][j];
        for (size_t i = 0; i < k; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), result[i][j].get_mpz_t(), d.get_mpz_t());
            if (q != 0)
                for (int c = 0; c < ncols; ++c) {
                    result[i][c] -= q * result[k][c];
                    mpz_mod(result[i][c].get_mpz_t(), result[i][c].get_mpz_t(), n.get_mpz_t());
                }
        }
    }
    return result;
}

// Reduced row echelon form over a field, tracking u*a = r.
void rref_field(Mat& a, Mat& u, std::vector<int>* pivot_cols_out = nullptr) {
    const Ring& ring = a.ring();
    u = Mat::identity(ring, a.rows());
    int r = 0;
    std::vector<int> pivots;
    for (int j = 0; j < a.cols() && r < a.rows(); ++j) {
        int pi = -1;
        for (int i = r; i < a.rows(); ++i)
            if (a.at(i, j) != 0) { pi = i; break; }
        if (pi < 0) continue;
        if (pi != r) {
            for (int c = 0; c < a.cols(); ++c) {
                mpq_class tmp = a.at(r, c); a.set(r, c, a.at(pi, c)); a.set(pi, c, tmp);
            }
            for (int c = 0; c < u.cols(); ++c) {
                mpq_class tmp = u.at(r, c); u.set(r, c, u.at(pi, c)); u.set(pi, c, tmp);
            }
        }
        mpq_class piv_inv = ring.inv(a.at(r, j));
        for (int c = 0; c < a.cols(); ++c) a.set(r, c, piv_inv * a.at(r, c));
        for (int c = 0; c < u.cols(); ++c) u.set(r, c, piv_inv * u.at(r, c));
        for (int i = 0; i < a.rows(); ++i) {
            if (i == r || a.at(i, j) == 0) continue;
            mpq_class f = a.at(i, j);
            for (int c = 0; c < a.cols(); ++c) a.set(i, c, a.at(i, c) - f * a.at(r, c));
            for (int c = 0; c < u.cols(); ++c) u.set(i, c, u.at(i, c) - f * u.at(r, c));
        }
        pivots.push_back(j);
        ++r;
    }
    if (pivot_cols_out) *pivot_cols_out = pivots;
}

mpz_class det_z(ZMat a) {
    // fraction-free Gaussian elimination (Bareiss)
    int n = static_cast<int>(a.size());
    if (n == 0) return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int s = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) { s = i; break; }
            if (s < 0) return 0;
            std::swap(a[k], a[s]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

std::optional<mpz_class> solve_mod_scalar(const mpz_class& d, const mpz_class& c,
                                          const mpz_class& n) {
    // least x in [0, n) with d*x == c (mod n)
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (c % g != 0) return std::nullopt;
    mpz_class q = n / g, dp = (d / g) % q, cp = (c / g) % q, inv;
    if (q == 1) return mpz_class(0);
    if (mpz_invert(inv.get_mpz_t(), dp.get_mpz_t(), q.get_mpz_t()) == 0)
        throw Error("Internal", "solve_mod_scalar");
    mpz_class x = (cp * inv) % q;
    if (x < 0) x += q;
    return x;
}

}  // namespace

NormalFormResult normal_form(const Mat& a) {
    const Ring& ring = a.ring();
    switch (ring.kind()) {
        case RingKind::Integers: {
            ZMat z = to_z(a), u, v;
            smith_z(z, a.cols(), u, v);
            return {from_z(ring, z, a.cols()), from_z(ring, u, a.rows()),
                    from_z(ring, v, a.cols())};
        }
        case RingKind::Rationals:
        case RingKind::PrimeField: {
            Mat r = a, u(ring, 0, 0);
            rref_field(r, u);
            return {r, u, Mat::identity(ring, a.cols())};
        }
        case RingKind::IntegersMod: {
            const mpz_class& n = ring.modulus();
            ZMat z = to_z(a), u, v;
            smith_z(z, a.cols(), u, v);
            // scale rows so every diagonal entry becomes gcd(d, n) mod n
            int mn = std::min(a.rows(), a.cols());
            for (int i = 0; i < mn; ++i) {
                if (z[i][i] == 0) continue;
                mpz_class uu = associate_unit(z[i][i], n);
                row_scale(z, i, uu);
                row_scale(u, i, uu);
            }
            mod_reduce(z, n);
            mod_reduce(u, n);
            mod_reduce(v, n);
            return {from_z(ring, z, a.cols()), from_z(ring, u, a.rows()),
                    from_z(ring, v, a.cols())};
        }
    }
    throw Error("Internal", "normal_form: unknown ring");
}

std::optional<Mat> solve_right(const Mat& a, const Mat& b) {
    if (a.ring() != b.ring()) throw Error("RingMismatch", "solve_right");
    if (a.rows() != b.rows()) throw Error("DimMismatch", "solve_right: row counts differ");
    const Ring& ring = a.ring();
    int m = a.rows(), c = a.cols(), k = b.cols();
    if (c == 0) {
        if (b.is_zero()) return Mat(ring, 0, k);
        return std::nullopt;
    }
    if (ring.is_field()) {
        Mat ab = a.hstack(b), u(ring, 0, 0);
        std::vector<int> pivots;
        rref_field(ab, u, &pivots);
        Mat x(ring, c, k);
        for (size_t r = 0; r < pivots.size(); ++r) {
            if (pivots[r] >= c) return std::nullopt;  // pivot in the b block
            for (int j = 0; j < k; ++j) x.set(pivots[r], j, ab.at(static_cast<int>(r), c + j));
        }
        return x;
    }
    NormalFormResult nf = normal_form(a);
    Mat ub = nf.u * b;
    int mn = std::min(m, c);
    Mat y(ring, c, k);
    if (ring.kind() == RingKind::Integers) {
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < k; ++j) {
                mpq_class rhs = ub.at(i, j);
                if (i >= mn || nf.n.at(i, i) == 0) {
                    if (rhs != 0) return std::nullopt;
                } else {
                    mpz_class d = nf.n.at(i, i).get_num(), cnum = rhs.get_num();
                    if (cnum % d != 0) return std::nullopt;
                    y.set(i, j, mpq_class(cnum / d));
                }
            }
    } else {
        const mpz_class& n = ring.modulus();
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < k; ++j) {
                mpz_class rhs = ub.at(i, j).get_num();
                mpz_class d = (i < mn) ? nf.n.at(i, i).get_num() : mpz_class(0);
                auto s = solve_mod_scalar(d, rhs, n);
                if (!s) return std::nullopt;
                if (i < mn) y.set(i, j, mpq_class(*s));
            }
    }
    return nf.v * y;
}

Mat kernel_gens(const Mat& a) {
    const Ring& ring = a.ring();
    int m = a.rows(), c = a.cols();
    if (c == 0) return Mat(ring, 0, 0);
    if (m == 0) return Mat::identity(ring, c);
    if (ring.is_field()) {
        Mat r = a, u(ring, 0, 0);
        std::vector<int> pivots;
        rref_field(r, u, &pivots);
        std::vector<bool> is_pivot(c, false);
        for (int p : pivots) is_pivot[p] = true;
        std::vector<int> free_cols;
        for (int j = 0; j < c; ++j)
            if (!is_pivot[j]) free_cols.push_back(j);
        Mat k(ring, c, static_cast<int>(free_cols.size()));
        for (size_t t = 0; t < free_cols.size(); ++t) {
            int fc = free_cols[t];
            k.set(fc, static_cast<int>(t), 1);
            for (size_t r2 = 0; r2 < pivots.size(); ++r2)
                k.set(pivots[r2], static_cast<int>(t), -r.at(static_cast<int>(r2), fc));
        }
        return k;
    }
    if (ring.kind() == RingKind::Integers) {
        ZMat zt = to_z(a.transpose()), u;
        hnf_z(zt, m, u);
        ZMat ker_rows;
        for (size_t i = 0; i < zt.size(); ++i)
            if (leading_index(zt[i]) < 0) ker_rows.push_back(u[i]);
        ZMat uu;
        hnf_z(ker_rows, c, uu);
        // drop zero rows (there are none for a basis, but keep it tidy)
        ZMat rows;
        for (auto& r : ker_rows)
            if (leading_index(r) >= 0) rows.push_back(r);
        return from_z(ring, rows, c).transpose();
    }
    // Z/n: lift, take the integer kernel of [a | n*I], project, Howell-reduce
    const mpz_class& n = ring.modulus();
    ZMat z = to_z(a);
    ZMat big(m, std::vector<mpz_class>(c + m, 0));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < c; ++j) big[i][j] = z[i][j];
        big[i][c + i] = n;
    }
    ZMat zt(c + m, std::vector<mpz_class>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < c + m; ++j) zt[j][i] = big[i][j];
    ZMat u;
    hnf_z(zt, m, u);
    ZMat gens;
    for (size_t i = 0; i < zt.size(); ++i)
        if (leading_index(zt[i]) < 0)
            gens.emplace_back(u[i].begin(), u[i].begin() + c);
    ZMat how = howell_rows(gens, n, c);
    return from_z(ring, how, c).transpose();
}

Mat span_canonical_rows(const Mat& rows) {
    const Ring& ring = rows.ring();
    int c = rows.cols();
    if (ring.is_field()) {
        Mat r = rows, u(ring, 0, 0);
        std::vector<int> pivots;
        rref_field(r, u, &pivots);
        return r.row_range(0, static_cast<int>(pivots.size()));
    }
    if (ring.kind() == RingKind::Integers) {
        ZMat z = to_z(rows), u;
        hnf_z(z, c, u);
        ZMat nz;
        for (auto& r : z)
            if (leading_index(r) >= 0) nz.push_back(r);
        return from_z(ring, nz, c);
    }
    ZMat how = howell_rows(to_z(rows), ring.modulus(), c);
    return from_z(ring, how, c);
}

bool is_invertible(const Mat& a) {
    if (a.rows() != a.cols()) return false;
    const Ring& ring = a.ring();
    if (a.rows() == 0) return true;
    switch (ring.kind()) {
        case RingKind::Integers: {
            mpz_class d = det_z(to_z(a));
            return d == 1 || d == -1;
        }
        case RingKind::IntegersMod: {
            mpz_class d = det_z(to_z(a)), g;
            mpz_mod(d.get_mpz_t(), d.get_mpz_t(), ring.modulus().get_mpz_t());
            mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), ring.modulus().get_mpz_t());
            return g == 1;
        }
        case RingKind::Rationals:
        case RingKind::PrimeField: {
            Mat r = a, u(ring, 0, 0);
            std::vector<int> pivots;
            rref_field(r, u, &pivots);
            return static_cast<int>(pivots.size()) == a.rows();
        }
    }
    return false;
}

ModuleInvariants cokernel_invariants(const Mat& a) {
    const Ring& ring = a.ring();
    NormalFormResult nf = normal_form(a);
    ModuleInvariants inv{ring, {}, 0};
    int m = a.rows();
    if (ring.is_field()) {
        int rank = 0;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < a.cols(); ++j)
                if (nf.n.at(i, j) != 0) { ++rank; break; }
        inv.free_rank = m - rank;
        return inv;
    }
    int mn = std::min(m, a.cols());
    int handled = 0;
    for (int i = 0; i < mn; ++i) {
        mpz_class d = nf.n.at(i, i).get_num();
        if (d == 0) break;
        ++handled;
        if (d == 1) continue;
        inv.torsion.push_back(d);
    }
    inv.free_rank = m - handled;
    return inv;
}

std::string ModuleInvariants::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    std::string base = ring.kind() == RingKind::Integers ? "Z" : ring.name();
    for (const auto& d : torsion) {
        os << (first ? "" : " + ");
        if (ring.kind() == RingKind::Integers || ring.kind() == RingKind::IntegersMod)
            os << "Z/" << d.get_str();
        else
            os << base << "/" << d.get_str();
        first = false;
    }
    if (free_rank > 0) {
        os << (first ? "" : " + ") << base;
        if (free_rank > 1) os << "^" << free_rank;
    }
    return os.str();
}

}  // namespace freydlab
