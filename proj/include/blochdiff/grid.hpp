#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "blochdiff/errors.hpp"
#include "blochdiff/symbols.hpp"

namespace blochdiff {

/// Deterministic boundary-refined polar sample of the unit disk.
/// Radial levels r_j = 1 - 2^-j for j = 0..J; level j carries
/// M_j = ceil(M0 / (1 - r_j)) angles (optionally capped).
class DiskGrid {
public:
    struct Point {
        Cplx z;
        double r;
        int level;
        int idx; // angular index within the level
    };

    DiskGrid(int levels, int angular_base, int angular_cap = 0)
        : levels_count_(levels), angular_base_(angular_base), angular_cap_(angular_cap) {
        if (levels < 1 || levels > 18) throw ConfigError("DiskGrid: levels must be in [1, 18]");
        if (angular_base < 1) throw ConfigError("DiskGrid: angular base must be >= 1");
        radii_.resize(levels + 1);
        counts_.resize(levels + 1);
        offsets_.resize(levels + 2);
        size_t total = 0;
        for (int j = 0; j <= levels; ++j) {
            radii_[j] = 1.0 - std::ldexp(1.0, -j);
            double m = std::ceil(angular_base / (1.0 - radii_[j]));
            long count = static_cast<long>(m);
            if (angular_cap > 0) count = std::min<long>(count, angular_cap);
            counts_[j] = static_cast<int>(count);
            offsets_[j] = total;
            total += static_cast<size_t>(count);
        }
        offsets_[levels + 1] = total;
        points_.reserve(total);
        for (int j = 0; j <= levels; ++j) {
            const double r = radii_[j];
            const int mj = counts_[j];
            for (int t = 0; t < mj; ++t) {
                double theta = 2.0 * M_PI * t / mj;
                points_.push_back(Point{Cplx{r * std::cos(theta), r * std::sin(theta)}, r, j, t});
            }
        }
    }

    static DiskGrid standard() { return DiskGrid(14, 16); }

    int levels() const { return levels_count_; }
    int angular_base() const { return angular_base_; }
    int angular_cap() const { return angular_cap_; }
    double radius(int j) const { return radii_[j]; }
    double max_radius() const { return radii_[levels_count_]; }
    int count(int j) const { return counts_[j]; }
    size_t size() const { return points_.size(); }
    const Point& point(size_t i) const { return points_[i]; }
    const std::vector<Point>& points() const { return points_; }
    size_t level_offset(int j) const { return offsets_[j]; }

private:
    int levels_count_;
    int angular_base_;
    int angular_cap_;
    std::vector<double> radii_;
    std::vector<int> counts_;
    std::vector<size_t> offsets_;
    std::vector<Point> points_;
};

/// Result of a disk supremum estimate. The value is a certified lower bound
/// of the true supremum (maximum over every point actually evaluated).
struct SupEstimate {
    double value = 0.0;
    Cplx argmax{0.0, 0.0};
    int refine_depth = 0;
    bool converged = false;          // last refinement round moved the value < 1e-6 relative
    std::vector<double> level_max;   // coarse per-level maxima, for boundary diagnostics
    size_t evaluations = 0;
};

/// Coarse grid max, then local 5x5 stencil refinement (step shrinks 4x per
/// round) around the leading candidates. Radius is clamped to the grid's
/// outermost level. Deterministic: ties resolve to the first point in
/// (level, angle) order and stencil improvements must be strict.
template <typename Fn>
SupEstimate sup_disk(Fn&& fn, const DiskGrid& grid, int refine_depth = 5,
                     const std::vector<Cplx>& probes = {}) {
    SupEstimate est;
    est.refine_depth = refine_depth;
    est.level_max.assign(grid.levels() + 1, -std::numeric_limits<double>::infinity());

    struct Cand {
        double value;
        size_t index;
    };
    constexpr int kCandidates = 8;
    std::vector<Cand> top;
    top.reserve(kCandidates + 1);

    auto check = [](double v) {
        if (std::isnan(v)) throw std::runtime_error("sup_disk: NaN from evaluator");
        return v;
    };

    const auto& pts = grid.points();
    for (size_t i = 0; i < pts.size(); ++i) {
        double v = check(fn(pts[i].z));
        ++est.evaluations;
        est.level_max[pts[i].level] = std::max(est.level_max[pts[i].level], v);
        if (top.size() < kCandidates || v > top.back().value) {
            auto pos = std::find_if(top.begin(), top.end(), [&](const Cand& c) { return v > c.value; });
            top.insert(pos, Cand{v, i});
            if (top.size() > kCandidates) top.pop_back();
        }
    }
    if (top.empty()) throw ConfigError("sup_disk: empty grid");

    est.value = top.front().value;
    est.argmax = pts[top.front().index].z;

    for (Cplx p : probes) {
        if (std::abs(p) >= 1.0) throw DomainError("sup_disk: probe outside the disk");
        double v = check(fn(p));
        ++est.evaluations;
        if (v > est.value) {
            est.value = v;
            est.argmax = p;
        }
    }

    const double r_cap = grid.max_radius();
    double before_refine = est.value;
    for (const Cand& cand : top) {
        const auto& p0 = pts[cand.index];
        double r_c = p0.r;
        double theta_c = std::atan2(p0.z.imag(), p0.z.real());
        double best = cand.value;
        // initial steps: half the gap to the neighbouring levels, one angular cell
        double h_r = (p0.level == 0) ? grid.radius(1) / 2.0 : std::ldexp(1.0, -p0.level - 1);
        double h_t = 2.0 * M_PI / grid.count(p0.level);
        for (int round = 1; round <= refine_depth; ++round) {
            h_r /= 4.0;
            h_t /= 4.0;
            double best_r = r_c, best_t = theta_c;
            for (int pr = -2; pr <= 2; ++pr) {
                double r = std::clamp(r_c + pr * h_r, 0.0, r_cap);
                for (int pt = -2; pt <= 2; ++pt) {
                    double th = theta_c + pt * h_t;
                    Cplx z{r * std::cos(th), r * std::sin(th)};
                    double v = check(fn(z));
                    ++est.evaluations;
                    if (v > best) {
                        best = v;
                        best_r = r;
                        best_t = th;
                        if (v > est.value) {
                            est.value = v;
                            est.argmax = z;
                        }
                    }
                }
            }
            r_c = best_r;
            theta_c = best_t;
        }
    }
    est.converged = est.value <= before_refine * (1.0 + 1e-6) ||
                    (est.value - before_refine) < 1e-6 * std::abs(est.value);
    // converged is heuristic: final value within 1e-6 relative of the value
    // seen one stage earlier.
    return est;
}

/// Per-level trace of a boundary estimate.
struct BoundaryLevel {
    int level = 0;
    double r = 0.0;
    size_t samples = 0;
    double sup = 0.0; // max over the level's qualifying points; 0 when empty
};

/// Estimate of lim_{r->1} sup over {modulus > r}. Values and region moduli
/// are given per grid point. The region set is nested in the level index, so
/// an empty level means every later level is empty and the limit is 0.
struct BoundaryEstimate {
    double value = 0.0;
    bool empty_region = false; // some level in range had no qualifying point
    bool sparse = false;       // outermost usable level sits below r_{J-2}
    int first_empty_level = -1;
    std::vector<BoundaryLevel> trace;
};

inline BoundaryEstimate boundary_limsup(const std::vector<double>& values,
                                        const std::vector<double>& moduli,
                                        const DiskGrid& grid,
                                        size_t min_samples = 32,
                                        int window = 3) {
    if (values.size() != grid.size() || moduli.size() != grid.size())
        throw ConfigError("boundary_limsup: value array does not match grid");
    const int jmax = grid.levels() - 1; // strict '>' against r_J is unreachable for the grid radii
    if (jmax < 1) throw ConfigError("boundary_limsup: grid too shallow");

    // bucket each point by the largest level index j with r_j < modulus
    const double neg_inf = -std::numeric_limits<double>::infinity();
    std::vector<size_t> bucket_count(jmax + 1, 0);
    std::vector<double> bucket_max(jmax + 1, neg_inf);
    for (size_t i = 0; i < values.size(); ++i) {
        if (std::isnan(values[i])) throw std::runtime_error("boundary_limsup: NaN value");
        double mod = moduli[i];
        int j = 0;
        while (j < jmax && grid.radius(j + 1) < mod) ++j;
        if (j >= 1) {
            bucket_count[j]++;
            bucket_max[j] = std::max(bucket_max[j], values[i]);
        }
    }

    BoundaryEstimate out;
    out.trace.resize(jmax);
    size_t count_acc = 0;
    double max_acc = neg_inf;
    for (int j = jmax; j >= 1; --j) {
        count_acc += bucket_count[j];
        max_acc = std::max(max_acc, bucket_max[j]);
        auto& lvl = out.trace[j - 1];
        lvl.level = j;
        lvl.r = grid.radius(j);
        lvl.samples = count_acc;
        lvl.sup = count_acc ? max_acc : 0.0;
    }

    for (int j = 1; j <= jmax; ++j) {
        if (out.trace[j - 1].samples == 0) {
            out.empty_region = true;
            out.first_empty_level = j;
            out.value = 0.0;
            return out;
        }
    }

    int outer_usable = -1;
    for (int j = jmax; j >= 1; --j) {
        if (out.trace[j - 1].samples >= min_samples) {
            outer_usable = j;
            break;
        }
    }
    if (outer_usable < 0) {
        // nothing reaches the sample quorum; fall back to the outermost level
        out.sparse = true;
        out.value = out.trace[jmax - 1].sup;
        return out;
    }
    out.sparse = outer_usable < grid.levels() - 2;
    double v = 0.0;
    int used = 0;
    for (int j = outer_usable; j >= 1 && used < window; --j) {
        if (out.trace[j - 1].samples >= min_samples) {
            v = std::max(v, out.trace[j - 1].sup);
            ++used;
        }
    }
    out.value = v;
    return out;
}

/// Estimate of limsup_{|a|->1} of a curve sampled on the rings of an a-grid:
/// max of the per-ring maxima over the last `window` rings with enough samples.
struct RingCurvePoint {
    Cplx a;
    int level;
    double value;
};

inline BoundaryEstimate ring_limsup(const std::vector<RingCurvePoint>& curve,
                                    const DiskGrid& a_grid,
                                    size_t min_samples = 32,
                                    int window = 3) {
    const int jmax = a_grid.levels();
    const double neg_inf = -std::numeric_limits<double>::infinity();
    std::vector<size_t> count(jmax + 1, 0);
    std::vector<double> ring_max(jmax + 1, neg_inf);
    for (const auto& p : curve) {
        if (std::isnan(p.value)) throw std::runtime_error("ring_limsup: NaN value");
        count[p.level]++;
        ring_max[p.level] = std::max(ring_max[p.level], p.value);
    }
    BoundaryEstimate out;
    out.trace.resize(jmax);
    for (int j = 1; j <= jmax; ++j) {
        auto& lvl = out.trace[j - 1];
        lvl.level = j;
        lvl.r = a_grid.radius(j);
        lvl.samples = count[j];
        lvl.sup = count[j] ? ring_max[j] : 0.0;
    }
    int outer_usable = -1;
    for (int j = jmax; j >= 1; --j) {
        if (count[j] >= min_samples) {
            outer_usable = j;
            break;
        }
    }
    if (outer_usable < 0) {
        out.sparse = true;
        for (int j = jmax; j >= 1; --j)
            if (count[j]) {
                out.value = ring_max[j];
                break;
            }
        return out;
    }
    out.sparse = outer_usable < jmax - 2;
    double v = 0.0;
    int used = 0;
    for (int j = outer_usable; j >= 1 && used < window; --j) {
        if (count[j] >= min_samples) {
            v = std::max(v, ring_max[j]);
            ++used;
        }
    }
    out.value = v;
    return out;
}

/// Grid-certified self-map validation: accepted iff max |phi| over the grid
/// stays below 1 - margin. Throwing variant reports the witness.
struct SelfMapVerdict {
    bool accepted = false;
    double max_modulus = 0.0;
    Cplx witness{0.0, 0.0};
};

inline SelfMapVerdict validate_self_map(const SymbolExpr& e, const DiskGrid& grid,
                                        double margin = 1e-12) {
    SelfMapVerdict v;
    for (const auto& p : grid.points()) {
        double mod = std::abs(e.eval_unchecked(p.z));
        if (mod > v.max_modulus) {
            v.max_modulus = mod;
            v.witness = p.z;
        }
    }
    v.accepted = v.max_modulus < 1.0 - margin;
    return v;
}

inline void require_self_map(const SymbolExpr& e, const DiskGrid& grid, const std::string& name,
                             double margin = 1e-12) {
    SelfMapVerdict v = validate_self_map(e, grid, margin);
    if (!v.accepted)
        throw SelfMapViolation(name + ": not a self-map (max |phi| = " + std::to_string(v.max_modulus) + ")",
                               v.witness, v.max_modulus);
}

} // namespace blochdiff
