#include "affine.hpp"

#include "errors.hpp"

namespace stratprof {

AffineExpr &AffineExpr::operator+=(const AffineExpr &o) {
    coeff_n += o.coeff_n;
    for (const auto &[p, c] : o.coeff_param) coeff_param[p] += c;
    constant += o.constant;
    normalize();
    return *this;
}

AffineExpr &AffineExpr::operator-=(const AffineExpr &o) {
    coeff_n -= o.coeff_n;
    for (const auto &[p, c] : o.coeff_param) coeff_param[p] -= c;
    constant -= o.constant;
    normalize();
    return *this;
}

AffineExpr AffineExpr::scaled(long long k) const {
    AffineExpr r;
    r.coeff_n = coeff_n * k;
    for (const auto &[p, c] : coeff_param) r.coeff_param[p] = c * k;
    r.constant = constant * k;
    r.normalize();
    return r;
}

AffineExpr AffineExpr::shifted(long long delta) const {
    AffineExpr r = *this;
    r.constant += coeff_n * delta;
    return r;
}

AffineExpr AffineExpr::at_step(long long n) const {
    AffineExpr r = *this;
    r.constant += coeff_n * n;
    r.coeff_n = 0;
    return r;
}

bool AffineExpr::is_number() const {
    if (coeff_n != 0) return false;
    for (const auto &[p, c] : coeff_param)
        if (c != 0) return false;
    return true;
}

long long AffineExpr::eval(long long n, const ParamValues &params) const {
    long long v = constant + coeff_n * n;
    for (const auto &[p, c] : coeff_param) {
        if (c == 0) continue;
        auto it = params.find(p);
        if (it == params.end()) throw ParamUnboundError(p);
        v += c * it->second;
    }
    return v;
}

void AffineExpr::normalize() {
    for (auto it = coeff_param.begin(); it != coeff_param.end();)
        it = it->second == 0 ? coeff_param.erase(it) : std::next(it);
}

std::string AffineExpr::to_string() const {
    std::string out;
    auto append = [&out](long long coeff, const std::string &sym) {
        if (coeff == 0) return;
        long long mag = coeff < 0 ? -coeff : coeff;
        if (out.empty()) {
            if (coeff < 0) out += "-";
        } else {
            out += coeff < 0 ? " - " : " + ";
        }
        if (sym.empty()) {
            out += std::to_string(mag);
        } else {
            if (mag != 1) out += std::to_string(mag) + "*";
            out += sym;
        }
    };
    for (const auto &[p, c] : coeff_param) append(c, p);
    append(coeff_n, "n");
    append(constant, "");
    return out.empty() ? "0" : out;
}

bool forall_nonneg(const AffineExpr &e, const ParamBounds &bounds) {
    if (e.coeff_n < 0) return false;
    long long corner = e.constant;
    for (const auto &[p, c] : e.coeff_param) {
        if (c == 0) continue;
        if (c < 0) return false;  // unbounded above, so e is unbounded below
        auto it = bounds.find(p);
        if (it == bounds.end()) throw ParamUnboundError(p);
        corner += c * it->second;
    }
    return corner >= 0;
}

std::optional<AffinePoint> falsifying_point(const AffineExpr &e, const ParamBounds &bounds) {
    if (forall_nonneg(e, bounds)) return std::nullopt;
    AffinePoint pt;
    pt.n = 0;
    long long corner = e.constant;
    for (const auto &[p, c] : e.coeff_param) {
        if (c == 0) continue;
        auto it = bounds.find(p);
        if (it == bounds.end()) throw ParamUnboundError(p);
        pt.params[p] = it->second;
        corner += c * it->second;
    }
    if (corner < 0) {
        pt.value = corner;
        return pt;
    }
    // The lower corner is fine, so some coefficient is negative; push the
    // first such variable just past the zero crossing.
    auto raise_by = [corner](long long c) { return corner / (-c) + 1; };
    if (e.coeff_n < 0) {
        pt.n = raise_by(e.coeff_n);
    } else {
        for (const auto &[p, c] : e.coeff_param) {
            if (c < 0) {
                pt.params[p] += raise_by(c);
                break;
            }
        }
    }
    pt.value = e.eval(pt.n, pt.params);
    return pt;
}

}  // namespace stratprof
