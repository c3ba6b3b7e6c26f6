#include "fracspec/mittag_leffler.hpp"

#include "fracspec/error.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <mpfr.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <queue>
#include <string>
#include <vector>

namespace fracspec {
namespace {

constexpr double kPi = std::numbers::pi;

// Owning wrapper for a fixed-precision MPFR value.
class Mp {
public:
    explicit Mp(mpfr_prec_t bits) { mpfr_init2(value_, bits); }
    ~Mp() { mpfr_clear(value_); }
    Mp(const Mp&) = delete;
    Mp& operator=(const Mp&) = delete;

    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }

private:
    mpfr_t value_;
};

struct Rational {
    unsigned long num;
    unsigned long den;
};

// Best continued-fraction convergent of alpha with a small denominator, if it
// reproduces alpha to within a couple of ulps.
std::optional<Rational> small_rational(double alpha) {
    constexpr unsigned long kMaxDen = 1000;
    unsigned long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double rest = alpha;
    for (int i = 0; i < 32; ++i) {
        const double a = std::floor(rest);
        const auto ai = static_cast<unsigned long>(a);
        const unsigned long h2 = ai * h1 + h0;
        const unsigned long k2 = ai * k1 + k0;
        if (k2 > kMaxDen) {
            break;
        }
        const double approx = static_cast<double>(h2) / static_cast<double>(k2);
        if (std::abs(approx - alpha) <= 4.0 * std::numeric_limits<double>::epsilon() * alpha) {
            return Rational{h2, k2};
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        const double frac = rest - a;
        if (frac == 0.0) {
            break;
        }
        rest = 1.0 / frac;
    }
    return std::nullopt;
}

struct SeriesPlan {
    std::size_t terms = 0;
    double log_peak = 0.0;   // log of the largest term magnitude
    double log_floor = 0.0;  // stop once log|term| drops below this past the peak
};

SeriesPlan plan_series(const MLQuery& q, std::size_t budget) {
    SeriesPlan plan;
    plan.log_floor = std::log(q.tol) + std::log(ml_lower_bound(q.alpha, q.x)) - std::log(10.0);
    const double log_x = std::log(q.x);
    double previous = 0.0;
    for (std::size_t k = 1; k <= budget; ++k) {
        const double kd = static_cast<double>(k);
        const double log_term = kd * log_x - std::lgamma(q.alpha * kd + 1.0);
        plan.log_peak = std::max(plan.log_peak, log_term);
        if (log_term < previous && log_term < plan.log_floor) {
            plan.terms = k;
            return plan;
        }
        previous = log_term;
    }
    plan.terms = budget + 1;
    return plan;
}

struct Panel {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

struct Estimate {
    double value;
    double error;
};

// Globally adaptive Gauss-Kronrod (15-point rule): the panel with the largest
// error estimate is bisected until the summed estimate meets rel_tol or the
// panel budget runs out.
template <class F>
Estimate adaptive_kronrod(F&& f, const std::vector<double>& cuts, double rel_tol) {
    constexpr std::size_t kPanelBudget = 4000;
    const double roundoff = 64.0 * std::numeric_limits<double>::epsilon();
    const auto& nodes = boost::math::quadrature::gauss_kronrod<double, 15>::abscissa();
    const auto& kronrod = boost::math::quadrature::gauss_kronrod<double, 15>::weights();
    const auto& gauss = boost::math::quadrature::gauss<double, 7>::weights();

    // The error estimate is the raw Kronrod-Gauss difference; Gauss nodes sit at
    // the even positions of the Kronrod abscissae.
    auto make_panel = [&](double a, double b) {
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        const double center = f(mid);
        double k_sum = kronrod[0] * center;
        double g_sum = gauss[0] * center;
        for (std::size_t i = 1; i < nodes.size(); ++i) {
            const double dx = half * nodes[i];
            const double pair = f(mid - dx) + f(mid + dx);
            k_sum += kronrod[i] * pair;
            if (i % 2 == 0) {
                g_sum += gauss[i / 2] * pair;
            }
        }
        return Panel{a, b, half * k_sum, half * std::abs(k_sum - g_sum)};
    };

    std::priority_queue<Panel> panels;
    Estimate total{0.0, 0.0};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Panel p = make_panel(cuts[i], cuts[i + 1]);
        total.value += p.value;
        total.error += p.error;
        panels.push(p);
    }
    while (!panels.empty() && total.error > rel_tol * std::abs(total.value) + roundoff * std::abs(total.value) &&
           panels.size() < kPanelBudget) {
        const Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            panels.push(worst);
            break;
        }
        const Panel left = make_panel(worst.a, mid);
        const Panel right = make_panel(mid, worst.b);
        total.value += left.value + right.value - worst.value;
        total.error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }
    // Re-sum to shed the drift of the running updates.
    total = {0.0, 0.0};
    while (!panels.empty()) {
        total.value += panels.top().value;
        total.error += panels.top().error;
        panels.pop();
    }
    return total;
}

}  // namespace

void MLQuery::validate() const {
    detail::require(alpha > 0.0 && alpha <= 1.0, "Mittag-Leffler order must lie in (0, 1]");
    detail::require(x >= 0.0 && std::isfinite(x), "Mittag-Leffler argument must be finite and >= 0");
    detail::require(tol > 0.0 && tol < 1e-6, "Mittag-Leffler tolerance must lie in (0, 1e-6)");
}

double ml_upper_bound(double alpha, double x) { return 1.0 / (1.0 + x / std::tgamma(1.0 + alpha)); }

double ml_lower_bound(double alpha, double x) {
    if (alpha >= 1.0) {
        return std::exp(-x);
    }
    return 1.0 / (1.0 + std::tgamma(1.0 - alpha) * x);
}

std::size_t ml_series_term_estimate(const MLQuery& q) {
    q.validate();
    if (q.x == 0.0) {
        return 1;
    }
    // A generous scan budget; callers compare the result against their own cap.
    return plan_series(q, 10'000'000).terms;
}

double ml_series(const MLQuery& q, std::size_t max_terms) {
    q.validate();
    if (q.x == 0.0) {
        return 1.0;
    }
    const SeriesPlan plan = plan_series(q, max_terms);
    if (plan.terms > max_terms) {
        throw NonConvergence("Mittag-Leffler series needs more than " + std::to_string(max_terms) +
                             " terms at x = " + std::to_string(q.x));
    }

    // Cancellation costs log(peak / result) nats; keep 64 guard bits on top of the target.
    const double lost_bits = (plan.log_peak - plan.log_floor) / std::numbers::ln2;
    const auto bits = static_cast<mpfr_prec_t>(
        std::max(64.0, std::ceil(lost_bits) + 64.0 + std::log2(static_cast<double>(plan.terms))));

    Mp sum(bits), power(bits), gamma(bits), term(bits), factor(bits), threshold(bits);
    mpfr_set_ui(sum.get(), 1, MPFR_RNDN);
    mpfr_set_ui(power.get(), 1, MPFR_RNDN);
    mpfr_set_d(threshold.get(), std::exp(plan.log_floor), MPFR_RNDN);

    // Gamma(alpha k + 1) per term. A rational alpha = p/q lets each residue class
    // k mod q advance by a Pochhammer product of p factors instead of a fresh Gamma.
    const std::optional<Rational> rational = small_rational(q.alpha);
    std::vector<__mpfr_struct> residue_gamma;
    struct ResidueGuard {
        std::vector<__mpfr_struct>& values;
        ~ResidueGuard() {
            for (auto& v : values) {
                mpfr_clear(&v);
            }
        }
    } guard{residue_gamma};
    if (rational) {
        residue_gamma.resize(rational->den);
        for (auto& v : residue_gamma) {
            mpfr_init2(&v, bits);
        }
        mpfr_set_ui(&residue_gamma[0], 1, MPFR_RNDN);  // Gamma(1)
    }

    auto set_rational_arg = [&](mpfr_ptr out, unsigned long numerator) {
        mpfr_set_ui(out, numerator, MPFR_RNDN);
        mpfr_div_ui(out, out, rational->den, MPFR_RNDN);
    };

    bool past_peak = false;
    double previous_log = 0.0;
    for (std::size_t k = 1; k <= max_terms; ++k) {
        mpfr_mul_d(power.get(), power.get(), q.x, MPFR_RNDN);

        if (rational) {
            const unsigned long p = rational->num;
            const unsigned long d = rational->den;
            const std::size_t r = k % d;
            mpfr_ptr g = &residue_gamma[r];
            if (k < d) {
                // Gamma(k p / d + 1)
                set_rational_arg(factor.get(), k * p + d);
                mpfr_gamma(g, factor.get(), MPFR_RNDN);
            } else {
                // Gamma(a + p) = Gamma(a) * a (a + 1) ... (a + p - 1), a = (k - d) p / d + 1
                const unsigned long base = (k - d) * p + d;
                for (unsigned long i = 0; i < p; ++i) {
                    set_rational_arg(factor.get(), base + i * d);
                    mpfr_mul(g, g, factor.get(), MPFR_RNDN);
                }
            }
            mpfr_div(term.get(), power.get(), g, MPFR_RNDN);
        } else {
            mpfr_set_d(factor.get(), q.alpha, MPFR_RNDN);
            mpfr_mul_ui(factor.get(), factor.get(), k, MPFR_RNDN);
            mpfr_add_ui(factor.get(), factor.get(), 1, MPFR_RNDN);
            mpfr_gamma(gamma.get(), factor.get(), MPFR_RNDN);
            mpfr_div(term.get(), power.get(), gamma.get(), MPFR_RNDN);
        }

        long exp2 = 0;
        const double mantissa = mpfr_get_d_2exp(&exp2, term.get(), MPFR_RNDN);
        const double log_term = std::log(mantissa) + static_cast<double>(exp2) * std::numbers::ln2;
        past_peak = past_peak || log_term < previous_log;
        previous_log = log_term;
        if (past_peak && mpfr_cmp(term.get(), threshold.get()) < 0) {
            return std::clamp(mpfr_get_d(sum.get(), MPFR_RNDN), 0.0, 1.0);
        }

        if (k % 2 == 1) {
            mpfr_sub(sum.get(), sum.get(), term.get(), MPFR_RNDN);
        } else {
            mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
        }
    }
    throw NonConvergence("Mittag-Leffler series did not converge within " + std::to_string(max_terms) +
                         " terms at x = " + std::to_string(q.x));
}

double ml_integral(const MLQuery& q) {
    q.validate();
    detail::require(q.alpha < 1.0, "integral representation needs alpha < 1");
    detail::require(q.x > 0.0, "integral representation needs x > 0");

    const double alpha = q.alpha;
    const double x = q.x;
    const double span = alpha * kPi;
    const double sin_span = std::sin(span);
    const double cos_span = std::cos(span);

    auto integrand = [=](double phi) {
        const double denom = std::sin(span - phi);
        if (denom <= 0.0) {
            return 0.0;
        }
        const double exponent = std::pow(x * std::sin(phi) / denom, 1.0 / alpha);
        return std::exp(-exponent);
    };
    // Angle at which the exponent (x u)^{1/alpha} reaches `level`.
    auto angle_at = [=](double level) {
        const double u = std::pow(level, alpha) / x;
        return std::atan2(u * sin_span, 1.0 + u * cos_span);
    };

    // Past the last level the integrand is below the smallest subnormal.
    constexpr std::array<double, 9> kLevels{1e-3, 1e-1, 1.0, 4.0, 16.0, 64.0, 256.0, 512.0, 745.0};
    std::vector<double> cuts{0.0};
    for (double level : kLevels) {
        const double phi = angle_at(level);
        if (phi > cuts.back() && phi < span) {
            cuts.push_back(phi);
        }
    }

    const auto [total, total_error] = adaptive_kronrod(integrand, cuts, q.tol / 4.0);
    const double value = total / span;
    const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(total);
    if (!(total_error <= q.tol * std::abs(total) + roundoff) || !(value > 0.0)) {
        throw QuadratureFailure("Mittag-Leffler integral missed tolerance at x = " + std::to_string(x));
    }
    return std::min(value, 1.0);
}

double ml(const MLQuery& q) {
    q.validate();
    if (q.x == 0.0) {
        return 1.0;
    }
    if (q.alpha == 1.0) {
        return std::exp(-q.x);
    }
    if (q.x <= kSeriesSwitchThreshold && plan_series(q, kDefaultSeriesTermCap).terms <= kDefaultSeriesTermCap) {
        return ml_series(q);
    }
    return ml_integral(q);
}

}  // namespace fracspec
