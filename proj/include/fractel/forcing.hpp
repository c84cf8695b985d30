#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "fractel/fracops.hpp"

namespace fractel {

/// Time-dependent forcing of one mode: zero, constant, a callable or a sample table.
class Forcing {
public:
    enum class Kind { zero, constant, callable, sampled };

    Forcing() = default;

    static Forcing zero() { return {}; }
    static Forcing constant(cplx c);
    /// real_valued declares that the callable returns real numbers on [0, T]
    static Forcing callable(std::function<cplx(double)> f, bool real_valued = false);
    static Forcing sampled(SampledTrajectory samples);

    cplx operator()(double t) const;

    Kind kind() const { return kind_; }
    bool is_zero() const { return kind_ == Kind::zero; }
    bool real_valued() const { return real_; }
    std::optional<cplx> constant_value() const;
    const SampledTrajectory* samples() const { return samples_.get(); }

    /// Values at the nodes of a uniform grid.
    std::vector<cplx> sample(const TimeGrid& grid) const;

private:
    Kind kind_ = Kind::zero;
    bool real_ = true;
    cplx c_ = 0.0;
    std::function<cplx(double)> f_;
    std::shared_ptr<const SampledTrajectory> samples_;
};

} // namespace fractel
