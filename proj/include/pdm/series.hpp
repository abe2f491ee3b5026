#pragma once

#include <vector>

#include "pdm/errors.hpp"

namespace pdm {

/// Taylor coefficients of a real function about x = 0, truncated at a fixed
/// capacity. valid_order marks the highest coefficient the value can vouch
/// for; operations narrow it (derivative by one, binary ops to the smaller
/// of the inputs). Values are immutable after construction.
class TruncatedSeries {
public:
    explicit TruncatedSeries(int capacity);

    static TruncatedSeries constant(double c, int capacity);
    static TruncatedSeries variable(int capacity);  // the series "x"
    static TruncatedSeries from_coeffs(std::vector<double> coeffs, int capacity);

    int capacity() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    int valid_order() const noexcept { return valid_order_; }

    /// k-th Taylor coefficient; zero beyond valid_order.
    double operator[](int k) const {
        return (k >= 0 && k <= valid_order_) ? coeffs_[static_cast<std::size_t>(k)] : 0.0;
    }

    const std::vector<double>& coeffs() const noexcept { return coeffs_; }

    friend TruncatedSeries add(const TruncatedSeries&, const TruncatedSeries&);
    friend TruncatedSeries sub(const TruncatedSeries&, const TruncatedSeries&);
    friend TruncatedSeries mul(const TruncatedSeries&, const TruncatedSeries&);
    friend TruncatedSeries scale(const TruncatedSeries&, double);
    friend TruncatedSeries derivative(const TruncatedSeries&);
    friend TruncatedSeries reciprocal(const TruncatedSeries&);
    friend TruncatedSeries sqrt_series(const TruncatedSeries&);

private:
    std::vector<double> coeffs_;
    int valid_order_;
};

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries scale(const TruncatedSeries& a, double factor);

/// Termwise derivative; valid_order drops by exactly one.
TruncatedSeries derivative(const TruncatedSeries& a);

/// Series r with mul(a, r) = 1 + O(x^{valid_order+1}); requires a(0) != 0.
TruncatedSeries reciprocal(const TruncatedSeries& a);

/// Positive branch s with mul(s, s) = a; requires a(0) > 0.
TruncatedSeries sqrt_series(const TruncatedSeries& a);

double eval_at_origin(const TruncatedSeries& a);

/// Horner partial sum over the valid coefficients.
double eval_series(const TruncatedSeries& a, double x);

}  // namespace pdm
