#include "ckls/model.hpp"

#include <cmath>
#include <sstream>

#include "ckls/errors.hpp"

namespace ckls {

std::string_view to_string(Variant v) {
    return v == Variant::paper ? "paper" : "derived";
}

Variant parse_variant(std::string_view s) {
    if (s == "paper") return Variant::paper;
    if (s == "derived") return Variant::derived;
    throw InputError("unknown variant '" + std::string(s) + "' (expected paper|derived)");
}

CklsParams::CklsParams(double a, double b, double sigma, double gamma, double r0)
    : a_(a), b_(b), sigma_(sigma), gamma_(gamma), r0_(r0) {
    if (!(a > 0.0)) throw DomainError("a must be > 0");
    if (!std::isfinite(b)) throw DomainError("b must be finite");
    if (!(sigma > 0.0)) throw DomainError("sigma must be > 0");
    if (!(gamma >= 0.5) || !std::isfinite(gamma)) throw DomainError("gamma must be >= 1/2");
    if (!(r0 > 0.0)) throw DomainError("r0 must be > 0");
    if (!std::isfinite(a) || !std::isfinite(sigma) || !std::isfinite(r0))
        throw DomainError("parameters must be finite");
}

std::string_view to_string(GirsanovBranch b) {
    switch (b) {
        case GirsanovBranch::HighGamma: return "HighGamma";
        case GirsanovBranch::LowGamma: return "LowGamma";
        case GirsanovBranch::None: break;
    }
    return "None";
}

std::string_view to_string(MomentCase c) {
    switch (c) {
        case MomentCase::CaseI: return "CaseI";
        case MomentCase::CaseII: return "CaseII";
        case MomentCase::None: break;
    }
    return "None";
}

Regime classify_regime(const CklsParams& p) {
    const double g = p.gamma();
    const double s = p.sigma();
    Regime r;

    if (g > 1.0) {
        r.girsanov = GirsanovBranch::HighGamma;
    } else if (g > 0.5 && g < 1.0 && g / s >= 1.0 && p.b() > 0.0) {
        r.girsanov = GirsanovBranch::LowGamma;
    } else {
        std::ostringstream why;
        if (g == 1.0) {
            why << "gamma == 1 is excluded";
        } else if (g <= 0.5) {
            why << "gamma > 1/2 required (gamma = " << g << ")";
        } else {
            const char* sep = "";
            if (g / s < 1.0) {
                why << "gamma/sigma >= 1 violated (" << g / s << ")";
                sep = "; ";
            }
            if (!(p.b() > 0.0)) why << sep << "b > 0 violated (b = " << p.b() << ")";
        }
        r.girsanov_violation = why.str();
    }

    if (g > 1.0 && g <= 1.5) {
        r.moment = MomentCase::CaseII;
    } else if (g >= 0.5 && g < 1.0 && (2.0 * g + 1.0) * s * s <= 2.0 * p.a()) {
        r.moment = MomentCase::CaseI;
    } else {
        std::ostringstream why;
        if (g > 1.5) {
            why << "gamma <= 3/2 violated (gamma = " << g << ")";
        } else if (g == 1.0) {
            why << "gamma == 1 is excluded";
        } else {
            why << "(2 gamma + 1) sigma^2 <= 2a violated (" << (2.0 * g + 1.0) * s * s
                << " > " << 2.0 * p.a() << ")";
        }
        r.moment_violation = why.str();
    }
    return r;
}

void require_girsanov(const CklsParams& p) {
    const Regime r = classify_regime(p);
    if (!r.girsanov_valid())
        throw RegimeError("change of measure hypotheses not met: " + r.girsanov_violation);
}

double default_scale_constant(double gamma) { return 2.0 * std::abs(1.0 - gamma); }

Transform::Transform(double c, double gamma) : c_(c), gamma_(gamma) {
    const double one_minus = 1.0 - gamma;
    coeff_ = c * c / (4.0 * one_minus * one_minus);
    exponent_ = 2.0 * one_minus;
    inv_coeff_ = std::pow(std::abs(2.0 * (gamma - 1.0) / c), 1.0 / one_minus);
}

double Transform::value(double x) const {
    if (!(x > 0.0)) throw DomainError("transform argument must be > 0");
    return coeff_ * std::pow(x, exponent_);
}

double Transform::derivative(double x) const {
    if (!(x > 0.0)) throw DomainError("transform argument must be > 0");
    return c_ * c_ / (2.0 * (1.0 - gamma_)) * std::pow(x, 1.0 - 2.0 * gamma_);
}

double Transform::second_derivative(double x) const {
    if (!(x > 0.0)) throw DomainError("transform argument must be > 0");
    return c_ * c_ * (1.0 - 2.0 * gamma_) / (2.0 * (1.0 - gamma_)) * std::pow(x, -2.0 * gamma_);
}

Transform::Values Transform::evaluate(double x) const {
    return {value(x), derivative(x), second_derivative(x)};
}

double Transform::inverse(double y) const {
    if (!(y > 0.0)) throw DomainError("inverse transform argument must be > 0");
    return inv_coeff_ * std::pow(y, 1.0 / exponent_);
}

Transform make_transform(const CklsParams& p, std::optional<double> C) {
    if (p.gamma() == 1.0)
        throw DegenerateTransform("gamma == 1: the power transform x^{2(1-gamma)} is undefined");
    const double c = C.value_or(default_scale_constant(p.gamma()));
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("transform constant C must be > 0");
    return Transform(c, p.gamma());
}

CirParams derive_cir(const CklsParams& p, const Transform& t) {
    require_girsanov(p);
    if (t.gamma() != p.gamma()) throw DomainError("transform was built for a different gamma");
    const double sc = p.sigma() * t.C();
    return {sc * sc / 4.0, 2.0 * p.b() * (1.0 - p.gamma()), sc, t.value(p.r0())};
}

}  // namespace ckls
