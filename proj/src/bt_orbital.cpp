#include "qfscan/bt_orbital.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <unordered_set>

#include "qfscan/arith.hpp"
#include "qfscan/exact.hpp"
#include "qfscan/ingest.hpp"

namespace qfscan::bt_orbital {

u64 sphere_size(i64 p, int n) {
    if (n == 0) return 1;
    u64 s = (u64)(p + 1);
    for (int i = 1; i < n; ++i) s *= (u64)p;
    return s;
}

u64 ball_size(i64 p, int n) {
    u64 total = 1;
    for (int k = 1; k <= n; ++k) total += sphere_size(p, k);
    return total;
}

namespace {

struct VertexKey {
    i64 a, b, c;
    bool operator<(const VertexKey& o) const {
        return std::tie(a, b, c) < std::tie(o.a, o.b, o.c);
    }
};

// canonical primitive Hermite form of the column span of [[r, s], [t, u]]
VertexKey hermite_primitive(i64 r, i64 s, i64 t, i64 u, i64 p) {
    // column operations to clear the bottom row to one pivot
    while (t != 0 && u != 0) {
        if (std::llabs(u) >= std::llabs(t)) {
            i64 q = u / t;
            u -= q * t;
            s -= q * r;
        } else {
            std::swap(t, u);
            std::swap(r, s);
        }
    }
    if (u == 0) {
        std::swap(t, u);
        std::swap(r, s);
    }
    // now t == 0; columns (r, 0), (s, u)
    if (r < 0) r = -r;
    if (u < 0) {
        u = -u;
        s = -s;
    }
    if (r == 0) throw InternalConsistencyError("rank-deficient lattice in tree expansion");
    s = ((s % r) + r) % r;
    // strip content (power of p only, by construction)
    while (r % p == 0 && u % p == 0 && s % p == 0) {
        r /= p;
        u /= p;
        s /= p;
    }
    return {r, u, s};
}

}  // namespace

std::vector<TreeVertex> enumerate_tree(i64 p, int depth) {
    if (depth < 0) throw DomainError("enumerate_tree: negative depth");
    if (depth > 12) throw SizeGuardError("enumerate_tree: depth guard (<= 12)");
    if (ball_size(p, depth) > 2'000'000) throw SizeGuardError("enumerate_tree: too many vertices");
    std::set<VertexKey> seen;
    std::vector<TreeVertex> out;
    std::vector<VertexKey> frontier{{1, 1, 0}};
    seen.insert({1, 1, 0});
    out.push_back({1, 1, 0, 0});
    for (int level = 1; level <= depth; ++level) {
        std::vector<VertexKey> next;
        for (const auto& v : frontier) {
            // basis columns (a, 0), (c, b); p+1 index-p sublattices
            for (i64 k = -1; k < p; ++k) {
                VertexKey w = k < 0
                                  // (a, 0), (p c, p b)
                                  ? hermite_primitive(v.a, p * v.c, 0, p * v.b, p)
                                  // (p a, 0), (c + k a, b)
                                  : hermite_primitive(p * v.a, v.c + k * v.a, 0, v.b, p);
                if (seen.insert(w).second) {
                    next.push_back(w);
                    out.push_back({w.a, w.b, w.c, level});
                }
            }
        }
        frontier = std::move(next);
    }
    return out;
}

LocalType local_type(const Mat2& g, i64 p) {
    i64 disc = g.disc();
    if (disc == 0) throw DomainError("local_type: non-regular element (disc = 0)");
    int val = 0;
    i64 u = disc;
    while (u % p == 0) {
        u /= p;
        ++val;
    }
    LocalType t;
    t.disc_valuation = val;
    if (p != 2) {
        if (val % 2 == 1) {
            t.type = SplittingType::Ramified;
            t.conductor = (val - 1) / 2;
        } else {
            int k = arith::kronecker(u, (u64)p);
            t.type = k == 1 ? SplittingType::Split : SplittingType::Unramified;
            t.conductor = val / 2;
        }
    } else {
        i64 m8 = ((u % 8) + 8) % 8;
        if (val % 2 == 1) {
            t.type = SplittingType::Ramified;
            t.conductor = (val - 3) / 2;  // disc(Q_2(sqrt(2u))) has valuation 3
        } else if (m8 == 1) {
            t.type = SplittingType::Split;
            t.conductor = val / 2;
        } else if (m8 == 5) {
            t.type = SplittingType::Unramified;
            t.conductor = val / 2;
        } else {
            t.type = SplittingType::Ramified;
            t.conductor = (val - 2) / 2;  // disc(Q_2(sqrt(u))), u = 3 mod 4, valuation 2
        }
    }
    return t;
}

FixedCount count_fixed_vertices(const Mat2& g, i64 p, int depth) {
    if (depth < 0) throw DomainError("count_fixed_vertices: negative depth");
    i64 det = g.det();
    if (det == 0 || det % p == 0)
        throw DomainError("count_fixed_vertices: det must be a p-adic unit");
    LocalType lt = local_type(g, p);
    if (lt.type == SplittingType::Split) return {true, 0};
    if (ball_size(p, depth) > 200'000'000)
        throw SizeGuardError("count_fixed_vertices: depth guard");
    // vertices at distance n: primitive [[p^i, c], [0, p^j]], i + j = n
    u64 count = 0;
    i128 g00 = g.e[0][0], g01 = g.e[0][1], g10 = g.e[1][0], g11 = g.e[1][1];
    std::vector<i64> pw(depth + 1);
    pw[0] = 1;
    for (int i = 1; i <= depth; ++i) {
        if (pw[i - 1] > (i64)2e17 / p) throw SizeGuardError("count_fixed_vertices: power overflow");
        pw[i] = pw[i - 1] * p;
    }
    for (int n = 0; n <= depth; ++n) {
        for (int i = 0; i <= n; ++i) {
            int j = n - i;
            i64 a = pw[i], b = pw[j];
            i128 ab = (i128)a * b;
            for (i64 c = 0; c < a; ++c) {
                if (i > 0 && j > 0 && c % p == 0) continue;  // primitivity
                // adj(M) g M with M = [[a, c], [0, b]]; integral iff all entries = 0 mod ab
                // adj(M) = [[b, -c], [0, a]]
                i128 m00 = (i128)b * g00 - (i128)c * g10;
                i128 m01 = (i128)b * g01 - (i128)c * g11;
                i128 m10 = (i128)a * g10;
                i128 m11 = (i128)a * g11;
                // (adj(M) g) M: columns scaled: [[m00 a, m00 c + m01 b], [m10 a, m10 c + m11 b]]
                if (((i128)m00 * a) % ab != 0) continue;
                if (((i128)m10 * a) % ab != 0) continue;
                if ((m00 * c + m01 * b) % ab != 0) continue;
                if ((m10 * c + m11 * b) % ab != 0) continue;
                ++count;
            }
        }
    }
    return {false, count};
}

i64 orbital_closed_form(i64 q, int d_gamma, bool ramified) {
    if (d_gamma < 0 || d_gamma > 40) throw DomainError("orbital_closed_form: d_gamma range");
    i128 qe = 1;
    i128 geom = 0;  // (q^{d+1}-1)/(q-1) = 1 + q + ... + q^d
    for (int k = 0; k <= d_gamma; ++k) {
        geom += qe;
        qe *= q;
    }
    if (ramified) return (i64)(2 * geom);
    i128 geom2 = geom - qe / q;  // 1 + ... + q^{d-1}; zero when d = 0
    if (d_gamma == 0) geom2 = 0;
    return (i64)(geom + geom2);
}

CertifiedReal split_local_orbital(i64 q, int val_diff, i64 different_norm) {
    if (val_diff < 0) throw DomainError("split_local_orbital: negative valuation");
    if (different_norm <= 0) throw DomainError("split_local_orbital: bad different norm");
    double v = std::pow((double)q, (double)val_diff) / std::sqrt((double)different_norm);
    return {v, std::abs(v) * 1e-14};
}

CertifiedReal split_local_orbital(i64 q, i64 gamma1, i64 gamma2, i64 different_norm) {
    if (gamma1 == gamma2) throw DomainError("split_local_orbital: gamma1 = gamma2 (non-regular)");
    return split_local_orbital(q, arith::valuation(gamma1 - gamma2, q), different_norm);
}

namespace {

// conductor-0 unramified companion pairs (t0, n0) for a prime p
std::vector<std::pair<i64, i64>> conductor0_pairs(i64 p, int howmany) {
    std::vector<std::pair<i64, i64>> out;
    for (i64 t0 = 0; t0 < 4 * p && (int)out.size() < howmany; ++t0) {
        for (i64 n0 = 1; n0 < 4 * p && (int)out.size() < howmany; ++n0) {
            if (n0 % p == 0) continue;
            i64 disc = t0 * t0 - 4 * n0;
            if (disc == 0) continue;
            if (p == 2) {
                if (((disc % 8) + 8) % 8 == 5) out.push_back({t0, n0});
            } else {
                if (disc % p != 0 && arith::kronecker(disc, (u64)p) == -1) out.push_back({t0, n0});
            }
        }
    }
    if ((int)out.size() < howmany)
        throw InternalConsistencyError("not enough conductor-0 companions");
    return out;
}

}  // namespace

Mat2 centered_elliptic(i64 p, int conductor, int variant) {
    if (conductor < 0 || conductor > 8) throw DomainError("centered_elliptic: conductor range");
    auto pairs = conductor0_pairs(p, variant / 3 + 3);
    auto [t0, n0] = pairs[variant % pairs.size()];
    i64 k = 1 + (variant / (i64)pairs.size());
    while (k % p == 0) ++k;
    i64 pc = 1;
    for (int i = 0; i < conductor; ++i) pc *= p;
    // k I + p^c [[0, -n0], [1, t0]]
    return Mat2{{{k, -n0 * pc}, {pc, k + t0 * pc}}};
}

Mat2 ramified_elliptic(i64 p, int conductor, int variant) {
    if (p == 2) throw UnsupportedRegimeError("ramified_elliptic: p = 2 not supported");
    if (conductor < 0 || conductor > 6) throw DomainError("ramified_elliptic: conductor range");
    // t = 1, n = (1 - p^{2c+1} u)/4 with u = p^{2c+1} inverse mod 4, u not divisible by p
    i64 podd = 1;
    for (int i = 0; i < 2 * conductor + 1; ++i) podd *= p;
    i64 base = (podd % 4 == 1) ? 1 : 3;  // u with podd * u = 1 mod 4
    i64 u = base + 4 * variant;
    while (u % p == 0) u += 4;
    i64 n = (1 - podd * u) / 4;
    if ((1 - podd * u) % 4 != 0) throw InternalConsistencyError("ramified construction parity");
    return Mat2{{{0, -n}, {1, 1}}};
}

std::string fixed_subtree_dot(const Mat2& g, i64 p, int depth) {
    auto verts = enumerate_tree(p, depth);
    auto key = [](const TreeVertex& v) {
        return "\"" + std::to_string(v.a) + "." + std::to_string(v.c) + "." + std::to_string(v.b) +
               "\"";
    };
    auto fixed = [&](const TreeVertex& v) {
        i128 ab = (i128)v.a * v.b;
        i128 m00 = (i128)v.b * g.e[0][0] - (i128)v.c * g.e[1][0];
        i128 m01 = (i128)v.b * g.e[0][1] - (i128)v.c * g.e[1][1];
        i128 m10 = (i128)v.a * g.e[1][0];
        i128 m11 = (i128)v.a * g.e[1][1];
        return (m00 * v.a) % ab == 0 && (m10 * v.a) % ab == 0 &&
               (m00 * v.c + m01 * v.b) % ab == 0 && (m10 * v.c + m11 * v.b) % ab == 0;
    };
    std::ostringstream os;
    os << "graph fixed_subtree {\n";
    for (const auto& v : verts) {
        if (!fixed(v)) continue;
        os << "  " << key(v) << " [label=\"[" << v.a << "," << v.c << ";0," << v.b
           << "] d=" << v.level << "\"];\n";
    }
    // edges between fixed vertices at adjacent levels (index-p containment either way)
    for (const auto& v : verts) {
        if (!fixed(v)) continue;
        for (const auto& w : verts) {
            if (!fixed(w) || w.level != v.level + 1) continue;
            // w adjacent to v iff w arises from v by one expansion step
            bool adj = false;
            for (i64 k = -1; k < p && !adj; ++k) {
                VertexKey cand = k < 0 ? hermite_primitive(v.a, p * v.c, 0, p * v.b, p)
                                       : hermite_primitive(p * v.a, v.c + k * v.a, 0, v.b, p);
                adj = cand.a == w.a && cand.b == w.b && cand.c == w.c;
            }
            if (adj) os << "  " << key(v) << " -- " << key(w) << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

CertifiedReal elliptic_class_value(GroupKind grp, const fields::FieldInvariants& inv,
                                   const sigma::PolynomialClass& poly,
                                   const ingest::IngestedField* quartic, bool* bound_only) {
    QuadInteger disc = poly.disc_in(inv.D);
    i128 nd128 = disc.norm();
    if (nd128 < 0) nd128 = -nd128;
    if (nd128 == 0) throw DomainError("elliptic_class_value: unipotent polynomial");
    double Nd = (double)nd128;
    double q = (double)inv.absD();
    const int d = 2;
    double Dbar;
    CertifiedReal resbar;
    bool only_bound = true;
    if (quartic) {
        Dbar = std::abs((double)quartic->disc);
        // class number formula for the quartic: 2^{r1} (2pi)^{r2} h R / (w sqrt D)
        double num = std::pow(2.0, quartic->r1) *
                     std::pow(2.0 * std::numbers::pi, quartic->r2) * (double)quartic->h *
                     quartic->R;
        resbar = CertifiedReal(num / ((double)quartic->w * std::sqrt(Dbar)), 1e-9);
        only_bound = false;
    } else {
        // order-discriminant bound D_{F(gamma)} <= N(disc) D_F^2 and the residue bound
        Dbar = Nd * q * q;
        resbar = CertifiedReal(std::pow(std::log(std::max(5.0, Dbar)), 2 * d - 1), 1e-9);
    }
    if (bound_only) *bound_only = only_bound;
    // finite-adelic volume factors: vol(O^)vol(O^x)(^2) against the centralizer,
    // all |D|^{-1/2} by normalization: joint factor D_bar^{1/2} |D|^{-3/2}
    double volf = std::sqrt(Dbar) * std::pow(q, -1.5);
    double kappa = 1.0;
    if (grp == GroupKind::SL2) {
        // ramified places of F(gamma)/F lie over 2 N(disc)
        if (nd128 > (i128)1e12) {
            kappa = 2.0 * (double)nd128;  // omega(m) <= log2(m): crude but safe
        } else {
            i64 m = 2 * (i64)nd128;
            kappa = std::pow(2.0, (double)arith::factor(m).size());
        }
    }
    return CertifiedReal(kappa * Nd, 0.0) * resbar * CertifiedReal(volf, volf * 1e-14);
}

BoundReport global_elliptic_bound(GroupKind grp, const fields::FieldInvariants& inv,
                                  const sigma::PolynomialClass& poly,
                                  const ingest::IngestedField* quartic, double C_ell) {
    bool bound_only = false;
    CertifiedReal value = elliptic_class_value(grp, inv, poly, quartic, &bound_only);
    const int d = 2;
    double q = (double)inv.absD();
    double shape = std::pow(q, -0.5) * std::pow(inv.log_absD(), 2 * d);
    auto rep = BoundReport::make("reg_ell_class", value, CertifiedReal(C_ell * shape, 1e-12),
                                 inv.D, grp);
    if (bound_only) rep.note = "bound-only (order-discriminant path)";
    return rep;
}

}  // namespace qfscan::bt_orbital
