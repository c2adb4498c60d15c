#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace redist {

/// Continuous real function used as a family coefficient A(t) or B(t).
///
/// The serialisable catalog (constant, identity, scale, affine, polynomial) is
/// closed under the operations duality and family conversion need, because
/// every member is a polynomial. Custom closures are accepted by the library
/// but cannot be written back as text.
class ScalarFn {
public:
    enum class Kind { Constant, Identity, Scale, Affine, Polynomial, Custom };

    static ScalarFn constant(double c);
    static ScalarFn identity();
    static ScalarFn scale(double c);
    /// t -> slope * t + intercept
    static ScalarFn affine(double slope, double intercept);
    /// Ascending coefficients: c0 + c1 t + c2 t^2 + ...
    static ScalarFn polynomial(std::vector<double> coefficients);
    static ScalarFn custom(std::string name, std::function<double(double)> fn);

    /// Simplest catalog member equal to the given polynomial (trailing exact
    /// zeros dropped, then constant/identity/scale/affine/polynomial).
    static ScalarFn from_coefficients(std::vector<double> coefficients);

    double operator()(double t) const;

    Kind kind() const noexcept { return kind_; }
    bool is_catalog() const noexcept { return kind_ != Kind::Custom; }
    /// Parameters as written in the grammar (affine: slope, intercept).
    std::span<const double> parameters() const noexcept { return params_; }
    /// Ascending polynomial coefficients; empty for custom functions.
    std::vector<double> coefficients() const;
    const std::string& name() const noexcept { return name_; }

    std::string to_string() const;

    /// Structural equality; custom functions compare by name.
    friend bool operator==(const ScalarFn& lhs, const ScalarFn& rhs);

private:
    ScalarFn(Kind kind, std::vector<double> params) : kind_(kind), params_(std::move(params)) {}

    Kind kind_ = Kind::Constant;
    std::vector<double> params_;
    std::string name_;
    std::shared_ptr<const std::function<double(double)>> custom_;
};

/// t -> f(1 - t)
ScalarFn reflect(const ScalarFn& f);
/// t -> t * f(t)
ScalarFn times_identity(const ScalarFn& f);
/// t -> offset + sum_k weight_k * f_k(t)
ScalarFn linear_combination(std::span<const std::pair<double, ScalarFn>> terms, double offset = 0.0);

/// Shortest decimal text that parses back to the same double.
std::string format_real(double value);

}  // namespace redist
