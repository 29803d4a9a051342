#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qfscan/fields.hpp"
#include "qfscan/sigma.hpp"
#include "qfscan/types.hpp"

namespace qfscan::ingest {
struct IngestedField;
}

namespace qfscan::bt_orbital {

struct Mat2 {
    i64 e[2][2];
    i64 trace() const { return e[0][0] + e[1][1]; }
    i64 det() const { return e[0][0] * e[1][1] - e[0][1] * e[1][0]; }
    i64 disc() const { return trace() * trace() - 4 * det(); }
};

// homothety class of a rank-2 Z_p lattice: primitive basis [[a, c], [0, b]],
// a = p^i, b = p^j, 0 <= c < a, gcd(a, b, c) = 1; level = i + j = distance
// from the root class
struct TreeVertex {
    i64 a, b, c;
    int level;
    bool operator==(const TreeVertex&) const = default;
};

// all vertices at distance <= depth from the root, by neighbor expansion with
// Hermite-form dedup (guards: depth <= 12, at most ~2e6 vertices)
std::vector<TreeVertex> enumerate_tree(i64 p, int depth);

// sphere/ball sizes: |S_n| = (p+1) p^{n-1}, |B_n| = 1 + sum
u64 sphere_size(i64 p, int n);
u64 ball_size(i64 p, int n);

enum class SplittingType { Split, Unramified, Ramified };

struct LocalType {
    SplittingType type;
    int disc_valuation;
    int conductor;  // Kottwitz d_gamma: val/2 unramified, (val - val disc(E))/2 ramified
};

LocalType local_type(const Mat2& g, i64 p);

struct FixedCount {
    bool split_signal = false;  // split char. poly: fixed set infinite
    u64 count = 0;
};

// number of vertices within `depth` of the root fixed by g (exact divisibility
// test on adj(M) g M); requires det g to be a p-adic unit
FixedCount count_fixed_vertices(const Mat2& g, i64 p, int depth);

// (q^{d+1}-1)/(q-1) + (q^d-1)/(q-1) unramified, 2(q^{d+1}-1)/(q-1) ramified
i64 orbital_closed_form(i64 q, int d_gamma, bool ramified);

// |gamma1-gamma2|_v^{-1} * N(partial_v)^{-1/2} = q^val / sqrt(different_norm)
CertifiedReal split_local_orbital(i64 q, int val_diff, i64 different_norm);
CertifiedReal split_local_orbital(i64 q, i64 gamma1, i64 gamma2, i64 different_norm);

// gamma = k*I + p^c * companion(t0, n0) with unramified conductor-0 companion:
// disc = p^{2c} (t0^2 - 4 n0), fixed set = the radius-c ball at the root
Mat2 centered_elliptic(i64 p, int conductor, int variant);
// odd-valuation disc (ramified), Kottwitz conductor c; p odd; experimental
Mat2 ramified_elliptic(i64 p, int conductor, int variant);

// dot export of the fixed subtree for inspection
std::string fixed_subtree_dot(const Mat2& g, i64 p, int depth);

// Corollary-shaped per-class elliptic bound; quartic invariants used when
// present, order-discriminant bound (note "bound-only") otherwise
BoundReport global_elliptic_bound(GroupKind grp, const fields::FieldInvariants& inv,
                                  const sigma::PolynomialClass& poly,
                                  const ingest::IngestedField* quartic, double C_ell);

// the un-normalized assembled value (sum over classes happens in bounds)
CertifiedReal elliptic_class_value(GroupKind grp, const fields::FieldInvariants& inv,
                                   const sigma::PolynomialClass& poly,
                                   const ingest::IngestedField* quartic, bool* bound_only);

}  // namespace qfscan::bt_orbital
