#pragma once

#include <array>
#include <optional>
#include <vector>

#include "qfscan/exact.hpp"
#include "qfscan/types.hpp"

namespace qfscan::lattices {

// point of R^{r1} x C^{r2}; real slots first
struct MinkowskiVector {
    Signature sig;
    std::vector<double> re;
    std::vector<double> im;
};

MinkowskiVector minkowski_embed(i64 D, const QuadInteger& x);

// ||v||_r = (sum real^2 + 2 sum |complex|^2)^{1/2}
double r_norm(const MinkowskiVector& v);

// a_inf * Lambda' under the Minkowski embedding; Lambda' integral with
// Z-basis columns (in 1, omega coordinates) and index ideal_norm.
struct IdealLattice {
    i64 D = 0;
    i64 m[2][2] = {{1, 0}, {0, 1}};
    i64 ideal_norm = 1;
    Rational scale1 = Rational(1);  // first real slot, or the complex slot
    Rational scale2 = Rational(1);  // second real slot (ignored for (0,1))

    Signature sig() const { return signature_of_disc(D); }
    QuadInteger gen(int j) const { return QuadInteger{D, m[0][j], m[1][j]}; }
    // |a|_{A_F} = |a_inf|_inf * N(Lambda'); |t|_C = t^2 at the complex place
    Rational idele_norm() const;
};

IdealLattice ring_lattice(i64 D, Rational scale = Rational(1));
IdealLattice ring_lattice2(i64 D, Rational s1, Rational s2);
IdealLattice principal_lattice(i64 D, const QuadInteger& x, Rational scale = Rational(1));
// prime ideal above p (split or ramified); nullopt if p is inert
std::optional<IdealLattice> prime_lattice(i64 D, i64 p, Rational scale = Rational(1));
// product ideal of two lattices' underlying ideals (HNF of the four generator products)
IdealLattice product_lattice(const IdealLattice& A, const IdealLattice& B, Rational scale);

// Gram matrix (q11, q12, q22) of the scaled basis, exact in Q(sqrt D)
std::array<QuadRat, 3> gram(const IdealLattice& L);

// first successive minimum of the quadratic form ||.||_r^2 (squared convention)
QuadRat first_minimum_exact(const IdealLattice& L);
double first_minimum(const IdealLattice& L);

// exact count of nonzero lattice points with ||X||_r <= R
u64 count_ball(const IdealLattice& L, Rational R);

// Lemma-shaped checks: lambda_1 >= |a|^{1/d}; emptiness above |a| > R^{2d};
// BHW count bound and (2R)^{2d}/|a|
BoundReport check_point_count_bounds(const IdealLattice& L, Rational R);

// min ||x||_r over x in O_F minus Z; exact squared value is an integer
i64 min_nonrational_norm_sq(i64 D);
std::optional<double> min_nonrational_norm(i64 D, double Rmax);

}  // namespace qfscan::lattices
