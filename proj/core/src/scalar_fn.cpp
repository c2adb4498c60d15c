#include "redist/scalar_fn.hpp"

#include <charconv>
#include <cmath>

#include "redist/error.hpp"

namespace redist {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, std::string(what) + " must be finite");
}

double horner(std::span<const double> coefficients, double t) {
    double acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * t + *it;
    return acc;
}

std::vector<double> add_scaled(std::vector<double> acc, std::span<const double> poly, double w) {
    if (acc.size() < poly.size()) acc.resize(poly.size(), 0.0);
    for (std::size_t k = 0; k < poly.size(); ++k) acc[k] += w * poly[k];
    return acc;
}

}  // namespace

ScalarFn ScalarFn::constant(double c) {
    require_finite(c, "constant");
    return ScalarFn(Kind::Constant, {c});
}

ScalarFn ScalarFn::identity() { return ScalarFn(Kind::Identity, {}); }

ScalarFn ScalarFn::scale(double c) {
    require_finite(c, "scale factor");
    return ScalarFn(Kind::Scale, {c});
}

ScalarFn ScalarFn::affine(double slope, double intercept) {
    require_finite(slope, "affine slope");
    require_finite(intercept, "affine intercept");
    return ScalarFn(Kind::Affine, {slope, intercept});
}

ScalarFn ScalarFn::polynomial(std::vector<double> coefficients) {
    if (coefficients.empty())
        throw Error(ErrorCode::InvalidArgument, "polynomial needs at least one coefficient");
    for (double c : coefficients) require_finite(c, "polynomial coefficient");
    return ScalarFn(Kind::Polynomial, std::move(coefficients));
}

ScalarFn ScalarFn::custom(std::string name, std::function<double(double)> fn) {
    if (!fn) throw Error(ErrorCode::InvalidArgument, "custom function is empty");
    ScalarFn f(Kind::Custom, {});
    f.name_ = std::move(name);
    f.custom_ = std::make_shared<const std::function<double(double)>>(std::move(fn));
    return f;
}

ScalarFn ScalarFn::from_coefficients(std::vector<double> c) {
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
    if (c.empty()) return constant(0.0);
    if (c.size() == 1) return constant(c[0]);
    if (c.size() == 2) {
        if (c[0] == 0.0) return c[1] == 1.0 ? identity() : scale(c[1]);
        return affine(c[1], c[0]);
    }
    return polynomial(std::move(c));
}

double ScalarFn::operator()(double t) const {
    switch (kind_) {
        case Kind::Constant: return params_[0];
        case Kind::Identity: return t;
        case Kind::Scale: return params_[0] * t;
        case Kind::Affine: return params_[0] * t + params_[1];
        case Kind::Polynomial: return horner(params_, t);
        case Kind::Custom: return (*custom_)(t);
    }
    return 0.0;
}

std::vector<double> ScalarFn::coefficients() const {
    switch (kind_) {
        case Kind::Constant: return {params_[0]};
        case Kind::Identity: return {0.0, 1.0};
        case Kind::Scale: return {0.0, params_[0]};
        case Kind::Affine: return {params_[1], params_[0]};
        case Kind::Polynomial: return params_;
        case Kind::Custom: return {};
    }
    return {};
}

std::string ScalarFn::to_string() const {
    switch (kind_) {
        case Kind::Constant: return "const:" + format_real(params_[0]);
        case Kind::Identity: return "id";
        case Kind::Scale: return "scale:" + format_real(params_[0]);
        case Kind::Affine: return "affine:" + format_real(params_[0]) + "," + format_real(params_[1]);
        case Kind::Polynomial: {
            std::string out = "poly:";
            for (std::size_t k = 0; k < params_.size(); ++k) {
                if (k) out += ',';
                out += format_real(params_[k]);
            }
            return out;
        }
        case Kind::Custom: return "custom:" + name_;
    }
    return {};
}

bool operator==(const ScalarFn& lhs, const ScalarFn& rhs) {
    if (lhs.kind_ != rhs.kind_) return false;
    if (lhs.kind_ == ScalarFn::Kind::Custom) return lhs.name_ == rhs.name_;
    return lhs.params_ == rhs.params_;
}

ScalarFn reflect(const ScalarFn& f) {
    if (!f.is_catalog())
        return ScalarFn::custom(f.name() + "(1-t)", [f](double t) { return f(1.0 - t); });
    // p(1 - t) = sum_k c_k (1 - t)^k, expanded by repeated multiplication.
    const auto c = f.coefficients();
    std::vector<double> result(c.size(), 0.0);
    std::vector<double> power{1.0};  // (1 - t)^k
    for (std::size_t k = 0; k < c.size(); ++k) {
        result = add_scaled(std::move(result), power, c[k]);
        std::vector<double> next(power.size() + 1, 0.0);
        for (std::size_t j = 0; j < power.size(); ++j) {
            next[j] += power[j];
            next[j + 1] -= power[j];
        }
        power = std::move(next);
    }
    return ScalarFn::from_coefficients(std::move(result));
}

ScalarFn times_identity(const ScalarFn& f) {
    if (!f.is_catalog())
        return ScalarFn::custom("t*" + f.name(), [f](double t) { return t * f(t); });
    auto c = f.coefficients();
    c.insert(c.begin(), 0.0);
    return ScalarFn::from_coefficients(std::move(c));
}

ScalarFn linear_combination(std::span<const std::pair<double, ScalarFn>> terms, double offset) {
    bool catalog = true;
    for (const auto& [w, f] : terms) catalog = catalog && f.is_catalog();
    if (!catalog) {
        std::vector<std::pair<double, ScalarFn>> copy(terms.begin(), terms.end());
        std::string name = format_real(offset);
        for (const auto& [w, f] : copy) name += "+" + format_real(w) + "*" + f.name();
        return ScalarFn::custom(name, [copy, offset](double t) {
            double acc = offset;
            for (const auto& [w, f] : copy) acc += w * f(t);
            return acc;
        });
    }
    std::vector<double> acc{offset};
    for (const auto& [w, f] : terms) acc = add_scaled(std::move(acc), f.coefficients(), w);
    return ScalarFn::from_coefficients(std::move(acc));
}

std::string format_real(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) throw Error(ErrorCode::InvalidArgument, "cannot format number");
    return std::string(buf, end);
}

}  // namespace redist
