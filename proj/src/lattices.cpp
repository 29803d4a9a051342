#include "qfscan/lattices.hpp"

#include <algorithm>
#include <cmath>

#include "qfscan/fields.hpp"

namespace qfscan::lattices {

MinkowskiVector minkowski_embed(i64 D, const QuadInteger& x) {
    if (x.D != D) throw DomainError("minkowski_embed: element not in O_F");
    MinkowskiVector v;
    v.sig = signature_of_disc(D);
    double a = (double)x.a, b = (double)x.b;
    if (D < 0) {
        double s = std::sqrt((double)(-D));
        v.re = {a + b * D / 2.0};
        v.im = {b * s / 2.0};
    } else {
        double s = std::sqrt((double)D);
        v.re = {a + b * (D + s) / 2.0, a + b * (D - s) / 2.0};
        v.im = {0.0, 0.0};
    }
    return v;
}

double r_norm(const MinkowskiVector& v) {
    double q = 0.0;
    for (int i = 0; i < v.sig.r1; ++i) q += v.re[i] * v.re[i];
    for (int i = v.sig.r1; i < v.sig.r1 + v.sig.r2; ++i)
        q += 2.0 * (v.re[i] * v.re[i] + v.im[i] * v.im[i]);
    return std::sqrt(q);
}

Rational IdealLattice::idele_norm() const {
    Rational inf = D < 0 ? scale1 * scale1 : scale1 * scale2;
    return inf * Rational(ideal_norm);
}

IdealLattice ring_lattice(i64 D, Rational scale) { return ring_lattice2(D, scale, scale); }

IdealLattice ring_lattice2(i64 D, Rational s1, Rational s2) {
    if (!fields::is_fundamental(D)) throw DomainError("ring_lattice: D not fundamental");
    if (s1.sign() <= 0 || s2.sign() <= 0) throw DomainError("degenerate scale");
    IdealLattice L;
    L.D = D;
    L.scale1 = s1;
    L.scale2 = s2;
    return L;
}

namespace {
// HNF of the Z-module spanned by the given (1, omega)-coordinate columns
IdealLattice hnf_lattice(i64 D, std::vector<std::array<i64, 2>> gens, Rational s1, Rational s2) {
    // integer column reduction to upper-left HNF on 2 rows
    // rows: coordinate on 1 (row 0) and omega (row 1)
    // eliminate row 1 across columns, keep one pivot per row
    auto colgcd_step = [&](int row) {
        while (true) {
            int nz = -1;
            int cnt = 0;
            i64 best = 0;
            int besti = -1;
            for (size_t i = 0; i < gens.size(); ++i) {
                if (gens[i][row] != 0) {
                    ++cnt;
                    nz = (int)i;
                    if (besti < 0 || std::llabs(gens[i][row]) < std::llabs(best)) {
                        best = gens[i][row];
                        besti = (int)i;
                    }
                }
            }
            if (cnt <= 1) return nz;
            for (size_t i = 0; i < gens.size(); ++i) {
                if ((int)i == besti || gens[i][row] == 0) continue;
                i64 qv = gens[i][row] / best;
                gens[i][0] -= qv * gens[besti][0];
                gens[i][1] -= qv * gens[besti][1];
            }
        }
    };
    int p1 = colgcd_step(1);  // column with the only nonzero omega-coordinate
    if (p1 < 0) throw DomainError("rank-deficient ideal basis");
    std::array<i64, 2> gomega = gens[p1];
    gens.erase(gens.begin() + p1);
    // remaining columns have omega-coordinate 0: reduce to single gcd column
    i64 g = 0;
    for (auto& c : gens) g = std::gcd(g, std::llabs(c[0]));
    if (g == 0) throw DomainError("rank-deficient ideal basis");
    if (gomega[1] < 0) {
        gomega[0] = -gomega[0];
        gomega[1] = -gomega[1];
    }
    // normalize the omega column modulo the rational column
    i64 r = ((gomega[0] % g) + g) % g;
    IdealLattice L;
    L.D = D;
    L.m[0][0] = g;
    L.m[1][0] = 0;
    L.m[0][1] = r;
    L.m[1][1] = gomega[1];
    L.ideal_norm = g * gomega[1];
    L.scale1 = s1;
    L.scale2 = s2;
    return L;
}
}  // namespace

IdealLattice principal_lattice(i64 D, const QuadInteger& x, Rational scale) {
    if (x.D != D) throw DomainError("principal_lattice: element not in O_F");
    if (x.a == 0 && x.b == 0) throw DomainError("principal_lattice: zero generator");
    if (scale.sign() <= 0) throw DomainError("degenerate scale");
    // generators x*1 and x*omega
    QuadInteger xo = x * QuadInteger{D, 0, 1};
    return hnf_lattice(D, {{x.a, x.b}, {xo.a, xo.b}}, scale, scale);
}

std::optional<IdealLattice> prime_lattice(i64 D, i64 p, Rational scale) {
    if (scale.sign() <= 0) throw DomainError("degenerate scale");
    // omega has minimal polynomial X^2 - D X + D(D-1)/4
    i64 n4 = D * (D - 1) / 4;
    i64 root = -1;
    for (i64 r = 0; r < p; ++r) {
        if (((r * r - D * r + n4) % p + p) % p == 0) {
            root = r;
            break;
        }
    }
    if (root < 0) return std::nullopt;  // inert
    // ideal (p, omega - root): Z-basis {p, omega - root}
    IdealLattice L;
    L.D = D;
    L.m[0][0] = p;
    L.m[1][0] = 0;
    L.m[0][1] = ((-root) % p + p) % p;
    L.m[1][1] = 1;
    L.ideal_norm = p;
    L.scale1 = scale;
    L.scale2 = scale;
    return L;
}

IdealLattice product_lattice(const IdealLattice& A, const IdealLattice& B, Rational scale) {
    if (A.D != B.D) throw DomainError("product_lattice: mismatched fields");
    std::vector<std::array<i64, 2>> gens;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            QuadInteger prod = A.gen(i) * B.gen(j);
            gens.push_back({prod.a, prod.b});
        }
    return hnf_lattice(A.D, std::move(gens), scale, scale);
}

// ---------------------------------------------------------------------------
// Exact Gram and enumeration.
// ---------------------------------------------------------------------------

std::array<QuadRat, 3> gram(const IdealLattice& L) {
    i64 D = L.D;
    auto pair_ip = [&](const QuadInteger& x, const QuadInteger& y) -> QuadRat {
        if (D < 0) {
            // <x,y> = t^2 * tr(x * conj(y)), integer trace
            QuadInteger z = x * y.conj();
            Rational t2 = L.scale1 * L.scale1;
            i128 tr = z.trace();
            return QuadRat(D, t2 * Rational((i128)tr, 1));
        }
        // <x,y> = t1^2 sigma1(xy) + t2^2 sigma2(xy), element of Q(sqrt D)
        QuadInteger z = x * y;
        Rational t1 = L.scale1 * L.scale1, t2 = L.scale2 * L.scale2;
        // sigma(z) = (z.a + z.b D/2) +- z.b sqrt(D)/2
        Rational mid = Rational(z.a) + Rational(z.b) * Rational(D, 2);
        Rational u = (t1 + t2) * mid;
        Rational v = (t1 - t2) * Rational(z.b, 2);
        return QuadRat(D, u, v);
    };
    QuadInteger g1 = L.gen(0), g2 = L.gen(1);
    return {pair_ip(g1, g1), pair_ip(g1, g2), pair_ip(g2, g2)};
}

namespace {

struct ReducedGram {
    QuadRat q11, q12, q22;
};

// Lagrange reduction; correctness of downstream counts does not depend on the
// quality of the reduction, only the loop bounds do.
ReducedGram lagrange_reduce(std::array<QuadRat, 3> g) {
    QuadRat q11 = g[0], q12 = g[1], q22 = g[2];
    for (int iter = 0; iter < 64; ++iter) {
        if (q22 < q11) {
            std::swap(q11, q22);
            // swapping basis vectors keeps q12
        }
        double r = q11.to_double() > 0 ? q12.to_double() / q11.to_double() : 0.0;
        i64 k = (i64)std::llround(r);
        if (k == 0) break;
        // g2 -> g2 - k g1
        QuadRat kq(q11.D, Rational(k));
        q22 = q22 - kq * q12 - kq * q12 + kq * kq * q11;
        q12 = q12 - kq * q11;
    }
    if (q22 < q11) std::swap(q11, q22);
    return {q11, q12, q22};
}

// enumerate lattice vectors with Q(m1, m2) <= bound; calls f(m1, m2, Q)
template <typename F>
void enumerate_quadratic(const ReducedGram& G, const QuadRat& bound, F&& f) {
    i64 D = G.q11.D;
    if (!(QuadRat(D, Rational(0)) < G.q11) || !(QuadRat(D, Rational(0)) < G.q22))
        throw DomainError("degenerate quadratic form");
    // det = q11 q22 - q12^2; m2^2 <= bound * q11 / det
    QuadRat det = G.q11 * G.q22 - G.q12 * G.q12;
    if (!(QuadRat(D, Rational(0)) < det)) throw DomainError("degenerate lattice");
    QuadRat m2sq = bound * G.q11;
    // m2 bound: floor(sqrt(m2sq / det)) with floating slack, verified per point
    double m2max_f = std::sqrt(std::max(0.0, m2sq.to_double() / det.to_double())) + 2.0;
    if (m2max_f > 2e7) throw SizeGuardError("ball enumeration too large");
    i64 m2max = (i64)m2max_f;
    for (i64 m2 = -m2max; m2 <= m2max; ++m2) {
        // Q(m1) = q11 m1^2 + 2 q12 m2 m1 + q22 m2^2 - bound <= 0
        double a = G.q11.to_double();
        double b = 2.0 * G.q12.to_double() * (double)m2;
        double c = G.q22.to_double() * (double)m2 * (double)m2 - bound.to_double();
        double disc = b * b - 4 * a * c;
        if (disc < 0) disc = 0;
        double lo = (-b - std::sqrt(disc)) / (2 * a);
        double hi = (-b + std::sqrt(disc)) / (2 * a);
        i64 m1lo = (i64)std::floor(lo) - 3;
        i64 m1hi = (i64)std::ceil(hi) + 3;
        QuadRat qm2(D, Rational(m2));
        QuadRat tail = G.q22 * qm2 * qm2;
        for (i64 m1 = m1lo; m1 <= m1hi; ++m1) {
            QuadRat qm1(D, Rational(m1));
            QuadRat Q = G.q11 * qm1 * qm1 + (G.q12 * qm1 * qm2).scale(Rational(2)) + tail;
            if (!(bound < Q)) f(m1, m2, Q);
        }
    }
}

}  // namespace

QuadRat first_minimum_exact(const IdealLattice& L) {
    if (L.scale1.sign() <= 0 || (L.D > 0 && L.scale2.sign() <= 0))
        throw DomainError("degenerate scale");
    auto G = lagrange_reduce(gram(L));
    QuadRat best = G.q11;
    enumerate_quadratic(G, G.q11, [&](i64 m1, i64 m2, const QuadRat& Q) {
        if (m1 == 0 && m2 == 0) return;
        if (Q < best) best = Q;
    });
    return best;
}

double first_minimum(const IdealLattice& L) { return first_minimum_exact(L).to_double(); }

u64 count_ball(const IdealLattice& L, Rational R) {
    if (R.sign() <= 0) throw DomainError("count_ball: need R > 0");
    auto G = lagrange_reduce(gram(L));
    QuadRat bound(L.D, R * R);
    u64 n = 0;
    enumerate_quadratic(G, bound, [&](i64 m1, i64 m2, const QuadRat&) {
        if (m1 == 0 && m2 == 0) return;
        ++n;
    });
    return n;
}

BoundReport check_point_count_bounds(const IdealLattice& L, Rational R) {
    if (R.sign() <= 0) throw DomainError("check_point_count_bounds: need R > 0");
    QuadRat lam = first_minimum_exact(L);
    Rational a = L.idele_norm();
    u64 count = count_ball(L, R);
    Rational R2 = R * R;
    Rational R2d = R2 * R2;              // R^{2d} = R^4
    Rational twoR_2d = R2d * Rational(16);  // (2R)^{2d} = 16 R^4
    bool in_regime = a >= Rational(1) || R >= Rational(1);

    bool ok_lambda = true;
    if (a >= Rational(1)) {
        // lambda_1 >= |a|^{1/d}  <=>  lambda_1^2 >= |a|
        ok_lambda = !(lam * lam < QuadRat(L.D, a));
    }
    bool ok_empty = true;
    if (in_regime && a > R2d) ok_empty = (count == 0);
    bool ok_bhw = true;
    if (!(QuadRat(L.D, R2) < lam)) {
        // lambda_1 <= R^2: count <= (floor(2R^2/lambda_1 + 1))^d
        // floor over Q(sqrt D): use exact qr_floor of 2R^2/lambda_1 via scaling
        // 2R^2/lambda exact: find f = floor(2R^2 / lambda): f <= 2R^2/lam < f+1
        // <=> f*lam <= 2R^2 < (f+1)*lam
        QuadRat twoR2(L.D, R2 * Rational(2));
        i64 f = (i64)(twoR2.to_double() / std::max(1e-300, lam.to_double())) + 2;
        while (f > 0 && twoR2 < lam.scale(Rational(f))) --f;
        u64 cap = (u64)((i128)(f + 1) * (f + 1));
        ok_bhw = count <= cap;
    }
    bool ok_norm_bound = true;
    if (a >= Rational(1)) {
        // count <= (2R)^{2d} / |a|  <=>  count * |a| <= 16 R^4
        ok_norm_bound = !(twoR_2d < Rational((i128)count, 1) * a);
    }

    CertifiedReal comp((double)count, 0.0);
    CertifiedReal bnd(twoR_2d.to_double() / a.to_double(), 1e-12);
    auto rep = BoundReport::make("lattice_point_counts", comp, bnd, L.D, GroupKind::SL2);
    rep.pass = ok_lambda && ok_empty && ok_bhw && ok_norm_bound;
    if (!rep.pass) {
        rep.note = std::string("failed:") + (ok_lambda ? "" : " lambda") +
                   (ok_empty ? "" : " emptiness") + (ok_bhw ? "" : " bhw") +
                   (ok_norm_bound ? "" : " norm-bound");
    }
    return rep;
}

i64 min_nonrational_norm_sq(i64 D) {
    if (!fields::is_fundamental(D)) throw DomainError("min_nonrational_norm: D not fundamental");
    i64 q = D < 0 ? -D : D;
    // ||a + b omega||^2 minimized over b != 0 at b = +-1 with the best integer a:
    // |D| even: |D|/2 (a kills the rational part), |D| odd: (1 + |D|)/2
    return (q & 1) ? (q + 1) / 2 : q / 2;
}

std::optional<double> min_nonrational_norm(i64 D, double Rmax) {
    double v = std::sqrt((double)min_nonrational_norm_sq(D));
    if (v > Rmax) return std::nullopt;
    return v;
}

}  // namespace qfscan::lattices
