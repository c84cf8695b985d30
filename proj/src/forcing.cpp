#include "fractel/forcing.hpp"

#include <cmath>

namespace fractel {

Forcing Forcing::constant(cplx c)
{
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw InvalidParameter("forcing constant must be finite");
    Forcing f;
    if (c == cplx(0.0))
        return f;
    f.kind_ = Kind::constant;
    f.c_ = c;
    f.real_ = c.imag() == 0.0;
    return f;
}

Forcing Forcing::callable(std::function<cplx(double)> fn, bool real_valued)
{
    if (!fn)
        throw InvalidParameter("forcing callable is empty");
    Forcing f;
    f.kind_ = Kind::callable;
    f.f_ = std::move(fn);
    f.real_ = real_valued;
    return f;
}

Forcing Forcing::sampled(SampledTrajectory s)
{
    s.validate();
    Forcing f;
    f.kind_ = Kind::sampled;
    f.real_ = true;
    for (cplx v : s.values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw InvalidParameter("forcing samples must be finite");
        if (v.imag() != 0.0)
            f.real_ = false;
    }
    f.samples_ = std::make_shared<const SampledTrajectory>(std::move(s));
    return f;
}

std::optional<cplx> Forcing::constant_value() const
{
    if (kind_ == Kind::zero)
        return cplx(0.0);
    if (kind_ == Kind::constant)
        return c_;
    return std::nullopt;
}

cplx Forcing::operator()(double t) const
{
    switch (kind_) {
    case Kind::zero: return 0.0;
    case Kind::constant: return c_;
    case Kind::callable: return f_(t);
    case Kind::sampled: {
        const auto& g = samples_->grid;
        const auto& v = samples_->values;
        if (t < 0.0 || t > g.T * (1.0 + 1e-12))
            throw EvaluationOutOfDomain("forcing sampled outside its table");
        double x = std::min(t / g.h(), double(g.n));
        int i = std::min(int(x), g.n - 1);
        double w = x - i;
        return (1.0 - w) * v[i] + w * v[i + 1];
    }
    }
    return 0.0;
}

std::vector<cplx> Forcing::sample(const TimeGrid& grid) const
{
    std::vector<cplx> out(grid.n + 1);
    for (int i = 0; i <= grid.n; ++i)
        out[i] = (*this)(grid.t(i));
    return out;
}

} // namespace fractel
