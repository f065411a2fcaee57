#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace ckls {

// Selects between a formula as printed and the one re-derived by direct
// expansion. Used for the degrees-of-freedom rule, the auxiliary drift, the
// scale-function exponent and the drift adjustment.
enum class Variant { paper, derived };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view s);

// Model quadruple (a, b, sigma, gamma) of dr = (a - b r) dt + sigma r^gamma dB
// together with the initial rate r0.
class CklsParams {
public:
    CklsParams(double a, double b, double sigma, double gamma, double r0);

    double a() const { return a_; }
    double b() const { return b_; }
    double sigma() const { return sigma_; }
    double gamma() const { return gamma_; }
    double r0() const { return r0_; }

    friend bool operator==(const CklsParams&, const CklsParams&) = default;

private:
    double a_;
    double b_;
    double sigma_;
    double gamma_;
    double r0_;
};

enum class GirsanovBranch { HighGamma, LowGamma, None };
enum class MomentCase { CaseI, CaseII, None };

std::string_view to_string(GirsanovBranch b);
std::string_view to_string(MomentCase c);

struct Regime {
    GirsanovBranch girsanov = GirsanovBranch::None;
    MomentCase moment = MomentCase::None;
    // Human-readable list of the inequalities that failed, empty when both
    // branches matched.
    std::string girsanov_violation;
    std::string moment_violation;

    bool girsanov_valid() const { return girsanov != GirsanovBranch::None; }
    bool moment_valid() const { return moment != MomentCase::None; }
};

Regime classify_regime(const CklsParams& p);

// Throws RegimeError naming the violated inequality unless the change of
// measure hypotheses hold.
void require_girsanov(const CklsParams& p);

// 2|1 - gamma|, which turns f into the pure power x^{2(1 - gamma)}.
double default_scale_constant(double gamma);

// Power map f(x) = C^2 / (4 (1 - gamma)^2) x^{2 (1 - gamma)} with C' = 0.
class Transform {
public:
    struct Values {
        double f;
        double fprime;
        double fsecond;
    };

    double C() const { return c_; }
    double gamma() const { return gamma_; }

    double value(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;
    Values evaluate(double x) const;
    double inverse(double y) const;

private:
    friend Transform make_transform(const CklsParams& p, std::optional<double> C);
    Transform(double c, double gamma);

    double c_;
    double gamma_;
    double coeff_;     // C^2 / (4 (1-gamma)^2)
    double exponent_;  // 2 (1 - gamma)
    double inv_coeff_; // |2 (gamma-1) / C|^{1/(1-gamma)}
};

// Throws DegenerateTransform for gamma == 1 and DomainError for C <= 0.
// When C is absent the default 2|1 - gamma| is used.
Transform make_transform(const CklsParams& p, std::optional<double> C = std::nullopt);

// Coefficients of dY = (drift_const + drift_lin Y) dt + vol sqrt(Y) dB.
struct CirParams {
    double drift_const;
    double drift_lin;
    double vol;
    double y0;
};

// Image CIR model of Y = f(r) under the new measure. Requires the change of
// measure hypotheses (RegimeError otherwise).
CirParams derive_cir(const CklsParams& p, const Transform& t);

}  // namespace ckls
