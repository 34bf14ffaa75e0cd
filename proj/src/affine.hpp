#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace stratprof {

using ParamValues = std::map<std::string, long long>;

// Lower bounds for named game parameters, e.g. {"v": 1} for v >= 1.
using ParamBounds = std::map<std::string, long long>;

// Exact integer affine expression over the step counter n and named game
// parameters: coeff_n * n + sum(coeff[p] * p) + constant.  All arithmetic is
// exact; there is no rounding anywhere.
struct AffineExpr {
    long long coeff_n = 0;
    std::map<std::string, long long> coeff_param;  // missing key means 0
    long long constant = 0;

    static AffineExpr number(long long c) { return AffineExpr{0, {}, c}; }
    static AffineExpr step() { return AffineExpr{1, {}, 0}; }
    static AffineExpr param(const std::string &name) { return AffineExpr{0, {{name, 1}}, 0}; }

    AffineExpr &operator+=(const AffineExpr &o);
    AffineExpr &operator-=(const AffineExpr &o);
    friend AffineExpr operator+(AffineExpr a, const AffineExpr &b) { return a += b; }
    friend AffineExpr operator-(AffineExpr a, const AffineExpr &b) { return a -= b; }
    AffineExpr operator-() const { return scaled(-1); }

    // Multiplication by an integer scalar; the only product the model allows.
    AffineExpr scaled(long long k) const;

    // Substitute n := n + delta.
    AffineExpr shifted(long long delta) const;

    // Substitute a concrete value for n, folding it into the constant.
    AffineExpr at_step(long long n) const;

    // True when neither n nor any parameter occurs with a nonzero coefficient.
    bool is_number() const;

    // Fully evaluate with a concrete n and concrete parameter values.
    // Throws ParamUnboundError if a mentioned parameter has no value.
    long long eval(long long n, const ParamValues &params) const;

    // Drops zero entries from coeff_param so that == is structural equality.
    void normalize();

    bool operator==(const AffineExpr &o) const = default;

    // Canonical rendering: parameters alphabetically, then n, then the
    // constant, e.g. "v + n - 1", "2*v", "0".
    std::string to_string() const;
};

// A concrete point (n, parameter values) together with the value e takes there.
struct AffinePoint {
    long long n = 0;
    ParamValues params;
    long long value = 0;
};

// Decides whether e >= 0 for every integer n >= 0 and every assignment of the
// mentioned parameters at or above their declared lower bounds.  Exact: the
// minimum of an affine map over the box [0,inf) x prod [bound_p, inf) is
// attained at the lower corner when all coefficients are nonnegative and is
// unbounded below otherwise.  Throws ParamUnboundError for a parameter with
// no declared bound.
bool forall_nonneg(const AffineExpr &e, const ParamBounds &bounds);

// For e failing forall_nonneg, a concrete witness with e < 0: n and parameters
// start at their bounds and the first variable with a negative coefficient is
// raised just far enough.  Returns nullopt when e is in fact nonnegative.
std::optional<AffinePoint> falsifying_point(const AffineExpr &e, const ParamBounds &bounds);

}  // namespace stratprof
