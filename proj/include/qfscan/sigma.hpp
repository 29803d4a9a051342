#pragma once

#include <optional>
#include <vector>

#include "qfscan/fields.hpp"
#include "qfscan/types.hpp"

namespace qfscan::sigma {

enum class Kind { RegEll, RegSplit, Unip };

inline const char* kind_name(Kind k) {
    switch (k) {
        case Kind::RegEll: return "reg.ell";
        case Kind::RegSplit: return "reg.split";
        default: return "unip";
    }
}

// monic quadratic X^2 + aX + b over a quadratic ring (or Z when home_disc = 0)
struct PolynomialClass {
    QuadInteger A;
    QuadInteger B;
    i64 home_disc = 0;
    std::optional<Kind> kind;

    QuadInteger disc_in(i64 D) const;  // a^2 - 4b as an element of O_D
};

struct TaggedElement {
    QuadInteger x;
    i64 home_disc;  // 0 for rational integers
};

// all x in Z union (union of O_E over fundamental |D_E| <= D0, signature sig)
// with ||x||_r <= R; rational integers reported once
std::vector<TaggedElement> enum_integers_in_ball(i64 D0, double R, Signature sig);

// exact squared r-norm of x (an integer for quadratic x): tr(x conj x) resp. tr(x^2)
i64 r_norm_sq(const QuadInteger& x);

// the universal coefficient set: traces within 2R of +-2*identity (and, for
// GL2, unit constant terms within 2R + 2R^2 of +-identity); SL2 fixes b = 1
std::vector<PolynomialClass> sigma0_set(double R, GroupKind g, Signature sig);

// exact square root in O_F if it exists
std::optional<QuadInteger> sqrt_in_field(i64 D, const QuadInteger& x);

// trichotomy by exact square testing of a^2 - 4b; nullopt = coefficients not in O_F
std::optional<Kind> classify(const fields::FieldInvariants& inv, const PolynomialClass& p);

// every x in O_F with ||x||_r <= R lies in Z or has |D_F| <= D0; reports the
// minimal sufficient D0 for this field
BoundReport verify_inclusion(const fields::FieldInvariants& inv, double R, i64 D0);

std::string sigma0_json(const std::vector<PolynomialClass>& set);

}  // namespace qfscan::sigma
