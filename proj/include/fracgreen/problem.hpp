#pragma once

#include <functional>
#include <vector>

#include "fracgreen/symbol.hpp"

namespace fracgreen {

/// Initial datum for one of the fractional-derivative traces at t = 0.
/// Sampled data must decay toward the grid edges (checked at transform time);
/// a delta datum is handled spectrally and never sampled in x.
struct InitialData {
    enum class Kind { zero, delta, sampled };

    Kind kind = Kind::zero;
    std::vector<double> samples;  // used only when kind == sampled

    static InitialData zero_data() { return {}; }
    static InitialData delta_data() { return {Kind::delta, {}}; }
    static InitialData sampled_data(std::vector<double> v) {
        return {Kind::sampled, std::move(v)};
    }
    bool is_zero() const { return kind == Kind::zero; }
};

/// Forcing term phi(x, t). Three shapes are supported:
///  - none: no forcing;
///  - separable: phi(x, t) = spatial(x) * time_profile(t), with the spatial
///    factor sampled on the solve grid;
///  - sampled: full space-time samples, one spatial slice per mesh time,
///    interpolated linearly in t between slices.
struct SourceTerm {
    enum class Kind { none, separable, sampled };

    Kind kind = Kind::none;

    // separable
    std::vector<double> spatial;
    std::function<double(double)> time_profile;

    // sampled
    std::vector<double> time_mesh;                // strictly increasing, from 0
    std::vector<std::vector<double>> slices;      // one per mesh time

    static SourceTerm none_term() { return {}; }
    bool is_none() const { return kind == Kind::none; }
};

/// Full problem instance: time orders, space operator, initial data, and
/// forcing. The single-order solution paths read f and g only; the two-order
/// path additionally reads f2 and g2 (the data attached to the lower-order
/// derivative trace).
struct ProblemSpec {
    double alpha = 1.5;   // leading time order
    double lambda = 0.0;  // coefficient of the second time derivative term
    double beta = 0.0;    // second time order (meaningful when lambda != 0)

    SpaceOperator op;

    InitialData f;   // order alpha-1 trace
    InitialData g;   // order alpha-2 trace
    InitialData f2;  // order beta-1 trace (two-order path)
    InitialData g2;  // order beta-2 trace (two-order path)

    SourceTerm source;
};

}
