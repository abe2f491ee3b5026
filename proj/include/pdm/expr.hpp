#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "pdm/series.hpp"

namespace pdm {

/// Parameter values for the free identifiers of an expression (e.g. gamma,
/// m0, omega). Unbound parameters are an error at use time, never zero.
using Bindings = std::map<std::string, double>;

/// Parsed form of a user-supplied m(x) or V(x). Immutable; parse/eval/
/// to_series are pure, so concurrent use is safe.
///
/// Grammar: + - * / with usual precedence, ^ with an integer literal
/// exponent binding tighter than unary minus, functions exp, sqrt, sin,
/// cos, the variable x, and named parameters.
class Expr {
public:
    static Expr parse(std::string_view text);

    /// Canonical printed form; parsing it again yields an equal tree.
    std::string to_string() const;

    double eval(double x, const Bindings& bindings) const;

    /// Taylor expansion about x = 0, valid to `capacity`.
    TruncatedSeries to_series(const Bindings& bindings, int capacity) const;

    bool operator==(const Expr& other) const;

    struct Node;

private:
    explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
    std::shared_ptr<const Node> root_;
};

}  // namespace pdm
