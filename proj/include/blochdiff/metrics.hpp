#pragma once

#include <cmath>
#include <functional>

#include "blochdiff/errors.hpp"
#include "blochdiff/grid.hpp"
#include "blochdiff/series.hpp"
#include "blochdiff/symbols.hpp"

namespace blochdiff {

/// Pseudo-hyperbolic distance |(z - w)/(1 - conj(w) z)|.
inline double rho(Cplx z, Cplx w) {
    if (std::abs(z) >= 1.0 || std::abs(w) >= 1.0) throw DomainError("rho: outside disk");
    return std::abs((z - w) / (1.0 - std::conj(w) * z));
}

/// rho(phi1(z), phi2(z)) for a symbol pair.
inline double rho_pair(const SymbolPair& pair, Cplx z) {
    return rho(pair.phi1.eval(z), pair.phi2.eval(z));
}

/// Weighted boundary quotient v(z) u(z) / (1 - |phi(z)|^2)^{alpha+m-1}.
struct TValue {
    Cplx value{0.0, 0.0};
    bool overflow = false; // 1 - |phi(z)|^2 fell below 1e-15
};

inline TValue t_quantity_from(const SpaceParams& params, Cplx u_val, Cplx phi_val, double v_val) {
    TValue t;
    double s = 1.0 - std::norm(phi_val);
    t.overflow = s < 1e-15;
    t.value = v_val * u_val * std::pow(s, -params.t_exponent());
    return t;
}

inline TValue t_quantity(const SpaceParams& params, const SymbolExpr& u, const SymbolExpr& phi,
                         Cplx z) {
    return t_quantity_from(params, u.eval(z), phi.eval(z), eval_weight(params.weight, z));
}

/// u1(z) fm(phi1(z)) - u2(z) fm(phi2(z)) where fm evaluates the m-th derivative.
template <typename Fm>
Cplx apply_operator_diff(const SymbolPair& pair, Fm&& fm, Cplx z) {
    return pair.u1.eval(z) * fm(pair.phi1.eval(z)) - pair.u2.eval(z) * fm(pair.phi2.eval(z));
}

inline Cplx apply_operator_diff(const SymbolPair& pair, const SpaceParams& params,
                                const PowerSeries& f, Cplx z) {
    PowerSeries fm = f.derivative(params.m);
    return apply_operator_diff(pair, [&](Cplx w) { return fm.eval(w); }, z);
}

/// |f(0)| + sup (1-|z|^2)^alpha |f'(z)| over the grid (with refinement).
/// The series tail at the outermost radius must stay negligible next to the
/// running maximum, otherwise the estimate is not trustworthy.
inline double bloch_norm(const PowerSeries& f, double alpha, const DiskGrid& grid,
                         int refine_depth = 5, SupEstimate* detail = nullptr) {
    PowerSeries fp = f.differentiated();
    auto integrand = [&](Cplx z) {
        return std::pow(1.0 - std::norm(z), alpha) * std::abs(fp.eval(z));
    };
    SupEstimate est = sup_disk(integrand, grid, refine_depth);
    double tail = fp.tail_bound(grid.max_radius());
    if (tail > 1e-8 * std::max(est.value, 1e-300))
        throw TruncationError("bloch_norm: series tail too large at the grid radius");
    if (detail) *detail = est;
    return std::abs(f.coeff(0)) + est.value;
}

/// sup v(z) |g(z)| over the grid (with refinement).
template <typename G>
double weighted_norm(G&& g, const WeightSpec& weight, const DiskGrid& grid, int refine_depth = 5,
                     SupEstimate* detail = nullptr) {
    auto integrand = [&](Cplx z) { return eval_weight(weight, z) * std::abs(g(z)); };
    SupEstimate est = sup_disk(integrand, grid, refine_depth);
    if (detail) *detail = est;
    return est.value;
}

} // namespace blochdiff
