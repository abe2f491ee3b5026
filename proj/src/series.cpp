#include "pdm/series.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace pdm {

namespace {

void require_same_capacity(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.capacity() != b.capacity()) {
        throw Error(errc::capacity_mismatch, "series capacities differ");
    }
}

void check_finite(const std::vector<double>& c, int valid) {
    for (int k = 0; k <= valid; ++k) {
        if (!std::isfinite(c[static_cast<std::size_t>(k)])) {
            throw Error(errc::non_finite, "series coefficient overflowed to non-finite");
        }
    }
}

}  // namespace

TruncatedSeries::TruncatedSeries(int capacity) : valid_order_(capacity) {
    if (capacity < 0) {
        throw Error(errc::precondition, "series capacity must be non-negative");
    }
    coeffs_.assign(static_cast<std::size_t>(capacity) + 1, 0.0);
}

TruncatedSeries TruncatedSeries::constant(double c, int capacity) {
    TruncatedSeries s(capacity);
    s.coeffs_[0] = c;
    return s;
}

TruncatedSeries TruncatedSeries::variable(int capacity) {
    if (capacity < 1) {
        throw Error(errc::precondition, "capacity too small for x");
    }
    TruncatedSeries s(capacity);
    s.coeffs_[1] = 1.0;
    return s;
}

TruncatedSeries TruncatedSeries::from_coeffs(std::vector<double> coeffs, int capacity) {
    TruncatedSeries s(capacity);
    const std::size_t n = std::min(coeffs.size(), s.coeffs_.size());
    std::copy_n(coeffs.begin(), n, s.coeffs_.begin());
    check_finite(s.coeffs_, s.valid_order_);
    return s;
}

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_capacity(a, b);
    TruncatedSeries out(a.capacity());
    out.valid_order_ = std::min(a.valid_order_, b.valid_order_);
    for (int k = 0; k <= out.valid_order_; ++k) {
        out.coeffs_[static_cast<std::size_t>(k)] = a.coeffs_[static_cast<std::size_t>(k)] +
                                                   b.coeffs_[static_cast<std::size_t>(k)];
    }
    check_finite(out.coeffs_, out.valid_order_);
    return out;
}

TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b) {
    return add(a, scale(b, -1.0));
}

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_capacity(a, b);
    TruncatedSeries out(a.capacity());
    out.valid_order_ = std::min(a.valid_order_, b.valid_order_);
    for (int k = 0; k <= out.valid_order_; ++k) {
        double acc = 0.0;
        for (int j = 0; j <= k; ++j) {
            acc += a.coeffs_[static_cast<std::size_t>(j)] *
                   b.coeffs_[static_cast<std::size_t>(k - j)];
        }
        out.coeffs_[static_cast<std::size_t>(k)] = acc;
    }
    check_finite(out.coeffs_, out.valid_order_);
    return out;
}

TruncatedSeries scale(const TruncatedSeries& a, double factor) {
    TruncatedSeries out(a.capacity());
    out.valid_order_ = a.valid_order_;
    for (int k = 0; k <= out.valid_order_; ++k) {
        out.coeffs_[static_cast<std::size_t>(k)] = factor * a.coeffs_[static_cast<std::size_t>(k)];
    }
    check_finite(out.coeffs_, out.valid_order_);
    return out;
}

TruncatedSeries derivative(const TruncatedSeries& a) {
    if (a.valid_order_ < 1) {
        throw Error(errc::degenerate_series, "cannot differentiate a series valid only to order 0");
    }
    TruncatedSeries out(a.capacity());
    out.valid_order_ = a.valid_order_ - 1;
    for (int k = 0; k <= out.valid_order_; ++k) {
        out.coeffs_[static_cast<std::size_t>(k)] =
            static_cast<double>(k + 1) * a.coeffs_[static_cast<std::size_t>(k + 1)];
    }
    check_finite(out.coeffs_, out.valid_order_);
    return out;
}

TruncatedSeries reciprocal(const TruncatedSeries& a) {
    const double a0 = a.coeffs_[0];
    if (std::abs(a0) <= 1e-300) {
        throw Error(errc::singular_at_origin, "reciprocal of a series vanishing at the origin");
    }
    TruncatedSeries out(a.capacity());
    out.valid_order_ = a.valid_order_;
    out.coeffs_[0] = 1.0 / a0;
    for (int k = 1; k <= out.valid_order_; ++k) {
        double acc = 0.0;
        for (int j = 1; j <= k; ++j) {
            acc += a.coeffs_[static_cast<std::size_t>(j)] *
                   out.coeffs_[static_cast<std::size_t>(k - j)];
        }
        out.coeffs_[static_cast<std::size_t>(k)] = -acc / a0;
    }
    check_finite(out.coeffs_, out.valid_order_);
    return out;
}

TruncatedSeries sqrt_series(const TruncatedSeries& a) {
    const double a0 = a.coeffs_[0];
    if (!(a0 > 0.0)) {
        throw Error(errc::sqrt_of_negative, "sqrt of a series with non-positive constant term");
    }
    TruncatedSeries out(a.capacity());
    out.valid_order_ = a.valid_order_;
    const double s0 = std::sqrt(a0);
    out.coeffs_[0] = s0;
    for (int k = 1; k <= out.valid_order_; ++k) {
        double acc = a.coeffs_[static_cast<std::size_t>(k)];
        for (int j = 1; j < k; ++j) {
            acc -= out.coeffs_[static_cast<std::size_t>(j)] *
                   out.coeffs_[static_cast<std::size_t>(k - j)];
        }
        out.coeffs_[static_cast<std::size_t>(k)] = acc / (2.0 * s0);
    }
    check_finite(out.coeffs_, out.valid_order_);
    return out;
}

double eval_at_origin(const TruncatedSeries& a) { return a[0]; }

double eval_series(const TruncatedSeries& a, double x) {
    double acc = 0.0;
    for (int k = a.valid_order(); k >= 0; --k) {
        acc = acc * x + a[k];
    }
    return acc;
}

}  // namespace pdm
