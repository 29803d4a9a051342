#include "qfscan/sigma.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "qfscan/exact.hpp"
#include "qfscan/lattices.hpp"

namespace qfscan::sigma {

QuadInteger PolynomialClass::disc_in(i64 D) const {
    auto lift = [&](const QuadInteger& x) -> QuadInteger {
        if (x.is_rational()) return QuadInteger{D, x.a, 0};
        if (x.D != D) throw NotInFieldError("coefficient not in O_F");
        return x;
    };
    QuadInteger a = lift(A), b = lift(B);
    return a * a - QuadInteger{D, 4, 0} * b;
}

i64 r_norm_sq(const QuadInteger& x) {
    // ||x||^2 = 2 N(x) for imaginary D, tr(x^2) for real D; both equal
    // (2a + bD)^2/2 ... computed uniformly as ((2a+bD)^2 + b^2 |D|)/2
    i128 t = 2 * (i128)x.a + (i128)x.b * x.D;
    i128 q = x.D < 0 ? -(i128)x.D : (i128)x.D;
    i128 v = (t * t + (i128)x.b * x.b * q) / 2;
    if (v > (i128)4e18) throw SizeGuardError("r_norm_sq overflow");
    return (i64)v;
}

namespace {

// append all a + b*omega_D with b != 0 and ||x - center||^2 <= R^2, center rational
void field_elements_in_ball(i64 D, i64 center, double R, std::vector<QuadInteger>& out) {
    i64 q = D < 0 ? -D : D;
    double R2 = R * R;
    // 2*||x||^2 = (2a + bD)^2 + b^2 |D| for x = a + b omega
    double bmax = std::sqrt(std::max(0.0, 2.0 * R2 / (double)q)) + 1;
    for (i64 b = -(i64)bmax; b <= (i64)bmax; ++b) {
        if (b == 0) continue;
        double rem = 2.0 * R2 - (double)b * b * (double)q;
        if (rem < 0) continue;
        // (2(a - center) + bD)^2 <= rem
        double half = std::sqrt(rem);
        double lo = (-half - (double)b * D) / 2.0 + center;
        double hi = (half - (double)b * D) / 2.0 + center;
        for (i64 a = (i64)std::floor(lo) - 1; a <= (i64)std::ceil(hi) + 1; ++a) {
            QuadInteger x{D, a - center, b};
            if ((double)r_norm_sq(x) <= R2 + 1e-12) out.push_back(QuadInteger{D, a, b});
        }
    }
}

}  // namespace

std::vector<TaggedElement> enum_integers_in_ball(i64 D0, double R, Signature sig) {
    if (sig.degree() != 2) throw UnsupportedDegreeError("enum_integers_in_ball: degree 2 only");
    if (D0 < 0 || D0 > 2'000'000) throw SizeGuardError("enum_integers_in_ball: D0 guard");
    if (R < 0 || R > 5000) throw SizeGuardError("enum_integers_in_ball: R guard");
    std::vector<TaggedElement> out;
    // rational integers: ||a||^2 = 2 a^2
    i64 amax = (i64)std::floor(R / std::sqrt(2.0) + 1e-12);
    for (i64 a = -amax; a <= amax; ++a)
        if (2.0 * a * a <= R * R + 1e-12) out.push_back({QuadInteger{0, a, 0}, 0});
    std::vector<i64> discs;
    if (D0 >= 3)
        discs = fields::list_fundamental_discriminants(
            sig.imaginary_quadratic() ? -D0 : 2, sig.imaginary_quadratic() ? -3 : D0, sig);
    for (i64 D : discs) {
        std::vector<QuadInteger> xs;
        field_elements_in_ball(D, 0, R, xs);
        for (auto& x : xs) out.push_back({x, D});
        if (out.size() > 2'000'000) throw SizeGuardError("enum_integers_in_ball: too many points");
    }
    return out;
}

std::optional<QuadInteger> sqrt_in_field(i64 D, const QuadInteger& x) {
    if (x.D != D && !x.is_rational()) throw NotInFieldError("sqrt_in_field: wrong ring");
    QuadInteger xx{D, x.a, x.b};
    if (xx.a == 0 && xx.b == 0) return QuadInteger{D, 0, 0};
    i128 n = xx.norm();
    if (n < 0) return std::nullopt;  // N(s^2) = N(s)^2 >= 0
    i128 m;
    if (!is_perfect_square(n, &m)) return std::nullopt;
    i128 tr = xx.trace();
    for (i128 sgn : {m, -m}) {
        i128 t2 = tr + 2 * sgn;  // trace(s)^2
        if (t2 < 0) continue;
        i128 tprime;
        if (!is_perfect_square(t2, &tprime)) continue;
        for (i128 tcand : {tprime, -tprime}) {
            // s = (tcand + y sqrt(D))/2 with y^2 D = tcand^2 - 4 sgn
            i128 rhs = tcand * tcand - 4 * sgn;
            if (rhs % D != 0) continue;
            i128 y2 = rhs / D;
            if (y2 < 0) continue;
            i128 y;
            if (!is_perfect_square(y2, &y)) continue;
            for (i128 ycand : {y, -y}) {
                i128 par = tcand - ycand * D;
                if (((par % 2) + 2) % 2 != 0) continue;
                QuadInteger s{D, (i64)((tcand - ycand * D) / 2), (i64)ycand};
                if (s * s == xx) return s;
            }
        }
        if (m == 0) break;
    }
    return std::nullopt;
}

std::optional<Kind> classify(const fields::FieldInvariants& inv, const PolynomialClass& p) {
    if (p.home_disc != 0 && p.home_disc != inv.D) return std::nullopt;
    QuadInteger disc = p.disc_in(inv.D);
    if (disc.a == 0 && disc.b == 0) return Kind::Unip;
    if (sqrt_in_field(inv.D, disc)) return Kind::RegSplit;
    return Kind::RegEll;
}

std::vector<PolynomialClass> sigma0_set(double R, GroupKind g, Signature sig) {
    if (R <= 0) throw DomainError("sigma0_set: R > 0 required");
    if (R > 40) throw SizeGuardError("sigma0_set: R guard");
    // traces: ||t -+ 2||_r <= 2R
    double tr_rad = 2.0 * R;
    i64 D0_tr = (i64)(2.0 * tr_rad * tr_rad) + 1;
    auto near = [&](i64 center, double rad) {
        std::vector<TaggedElement> res;
        // rational integers near center
        i64 amax = (i64)std::floor(rad / std::sqrt(2.0) + 1e-12);
        for (i64 a = center - amax; a <= center + amax; ++a)
            if (2.0 * (a - center) * (a - center) <= rad * rad + 1e-12)
                res.push_back({QuadInteger{0, a, 0}, 0});
        std::vector<i64> discs;
        if (D0_tr >= 3)
            discs = fields::list_fundamental_discriminants(
                sig.imaginary_quadratic() ? -D0_tr : 2, sig.imaginary_quadratic() ? -3 : D0_tr,
                sig);
        for (i64 D : discs) {
            std::vector<QuadInteger> xs;
            field_elements_in_ball(D, center, rad, xs);
            for (auto& x : xs) res.push_back({x, D});
        }
        return res;
    };
    std::vector<TaggedElement> traces;
    for (i64 c : {2LL, -2LL})
        for (auto& t : near(c, tr_rad)) traces.push_back(t);

    // constant terms: SL2 fixes b = 1; GL2 takes units within 2R + 2R^2 of +-1
    std::vector<TaggedElement> consts;
    if (g == GroupKind::SL2) {
        consts.push_back({QuadInteger{0, 1, 0}, 0});
    } else {
        double det_rad = 2.0 * R + 2.0 * R * R;
        i64 saved = D0_tr;
        D0_tr = (i64)(2.0 * det_rad * det_rad) + 1;
        for (i64 c : {1LL, -1LL})
            for (auto& u : near(c, det_rad)) {
                i128 norm = u.home_disc == 0 ? (i128)u.x.a * u.x.a : u.x.norm();
                if (norm == 1 || norm == -1) consts.push_back(u);
            }
        D0_tr = saved;
    }

    std::set<std::tuple<i64, i64, i64, i64, i64, i64>> seen;
    std::vector<PolynomialClass> out;
    for (auto& t : traces) {
        for (auto& u : consts) {
            if (t.home_disc != 0 && u.home_disc != 0 && t.home_disc != u.home_disc) continue;
            PolynomialClass p;
            p.A = QuadInteger{t.home_disc, -t.x.a, -t.x.b};  // a = -trace
            p.B = u.x;
            p.home_disc = t.home_disc != 0 ? t.home_disc : u.home_disc;
            auto key = std::make_tuple(p.home_disc, p.A.a, p.A.b, p.B.a, p.B.b, (i64)0);
            if (seen.insert(key).second) out.push_back(p);
            if (out.size() > 5'000'000) throw SizeGuardError("sigma0_set: too large");
        }
    }
    std::sort(out.begin(), out.end(), [](const PolynomialClass& x, const PolynomialClass& y) {
        return std::make_tuple(x.home_disc, x.A.a, x.A.b, x.B.a, x.B.b) <
               std::make_tuple(y.home_disc, y.A.a, y.A.b, y.B.a, y.B.b);
    });
    return out;
}

BoundReport verify_inclusion(const fields::FieldInvariants& inv, double R, i64 D0) {
    std::vector<QuadInteger> xs;
    field_elements_in_ball(inv.D, 0, R, xs);
    i64 needed = xs.empty() ? 0 : inv.absD();
    auto rep = BoundReport::make("sigma_inclusion", CertifiedReal((double)needed, 0.0),
                                 CertifiedReal((double)D0, 0.0), inv.D, GroupKind::SL2);
    if (xs.empty()) rep.note = "ball meets only Z (vacuous)";
    return rep;
}

std::string sigma0_json(const std::vector<PolynomialClass>& set) {
    std::ostringstream os;
    os << "[";
    bool first = true;
    for (const auto& p : set) {
        if (!first) os << ",";
        first = false;
        os << "{\"home_disc\":" << p.home_disc << ",\"a\":[" << p.A.a << "," << p.A.b
           << "],\"b\":[" << p.B.a << "," << p.B.b << "]";
        if (p.kind) os << ",\"kind\":\"" << kind_name(*p.kind) << "\"";
        os << "}";
    }
    os << "]";
    return os.str();
}

}  // namespace qfscan::sigma
