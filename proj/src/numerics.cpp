#include "mdf/numerics.hpp"

#include <limits>
#include <numbers>
#include <queue>

namespace mdf::numerics {

namespace {

// QUADPACK qk21 abscissae and weights.
constexpr double kXgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr double kWgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr double kWg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gauss_kronrod21(const Integrand& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double resk = kWgk[10] * fc;
    double resg = 0.0;
    double resabs = std::abs(resk);
    double fv1[10], fv2[10];
    for (int j = 0; j < 10; ++j) {
        double dx = half * kXgk[j];
        double f1 = f(center - dx);
        double f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[10] * std::abs(fc - reskh);
    for (int j = 0; j < 10; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

    const double value = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    if (!std::isfinite(value)) throw NumericError("quad_finite: non-finite integrand value");
    return {a, b, value, err};
}

} // namespace

QuadratureResult quad_finite(const Integrand& f, double a, double b, double rel_tol, double abs_tol,
                             int max_subintervals)
{
    if (!(rel_tol > 0.0) && !(abs_tol > 0.0)) throw DomainError("quad_finite: tolerance must be positive");
    if (a == b) return {0.0, 0.0, 0};

    std::priority_queue<Panel> panels;
    Panel first = gauss_kronrod21(f, a, b);
    panels.push(first);
    double total = first.value;
    double total_err = first.error;
    int evals = 21;

    auto converged = [&] {
        return total_err <= std::max(rel_tol * std::abs(total), abs_tol);
    };
    int subintervals = 1;
    while (!converged()) {
        if (subintervals >= max_subintervals) {
            throw QuadratureError("quad_finite: subdivision budget exhausted", {total, total_err, evals});
        }
        Panel worst = panels.top();
        panels.pop();
        double mid = 0.5 * (worst.a + worst.b);
        Panel left = gauss_kronrod21(f, worst.a, mid);
        Panel right = gauss_kronrod21(f, mid, worst.b);
        evals += 42;
        ++subintervals;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        // Roundoff floor: a panel that no longer shrinks cannot help.
        if (std::abs(mid - worst.a) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(mid)) {
            throw QuadratureError("quad_finite: interval too small to subdivide", {total, total_err, evals});
        }
    }
    // Re-sum from the panels to shed accumulated cancellation in the running totals.
    double sum = 0.0, err = 0.0;
    while (!panels.empty()) {
        sum += panels.top().value;
        err += panels.top().error;
        panels.pop();
    }
    return {sum, err, evals};
}

QuadratureResult quad_semi_infinite(const Integrand& f, double a, double rel_tol, double scale)
{
    if (!(rel_tol > 0.0)) throw DomainError("quad_semi_infinite: tolerance must be positive");
    if (!(scale > 0.0)) throw DomainError("quad_semi_infinite: scale must be positive");

    constexpr double half_pi = 0.5 * std::numbers::pi;
    constexpr double s_limit = 6.5;
    constexpr double tiny = 1e-300;
    int evals = 0;

    auto term = [&](double s) {
        double e = half_pi * std::sinh(s);
        double x = a + scale * std::exp(e);
        double w = scale * half_pi * std::cosh(s) * std::exp(e);
        double fx = f(x);
        ++evals;
        if (std::isnan(fx)) throw NumericError("quad_semi_infinite: NaN integrand value");
        return w * fx;
    };

    // Sum of the trapezoid samples on the grid s = offset + k*h, walking out in
    // both directions from zero until terms stop contributing.
    auto sweep = [&](double step, double offset, double reference) {
        double sum = 0.0;
        for (int dir : {+1, -1}) {
            int quiet = 0;
            for (int k = (dir > 0 ? 0 : 1);; ++k) {
                double s = offset + dir * k * step;
                if (std::abs(s) > s_limit) {
                    if (dir > 0) throw NumericError("quad_semi_infinite: integrand does not decay");
                    break; // the inner end x -> a is exhausted by the map itself
                }
                double t = term(s);
                sum += t;
                double scale_ref = std::max(std::abs(sum), std::abs(reference));
                bool negligible = std::abs(t) <= 1e-18 * scale_ref || std::abs(t) < tiny;
                if (negligible && (scale_ref > 0.0 || std::abs(s) > 3.0)) {
                    if (++quiet >= 3) break;
                } else {
                    quiet = 0;
                }
            }
        }
        return sum;
    };

    double h = 0.5;
    double sum = sweep(h, 0.0, 0.0);
    double estimate = h * sum;
    double previous = estimate;
    double err = std::numeric_limits<double>::infinity();
    for (int level = 1; level <= 10; ++level) {
        // Odd points of the refined grid.
        double odd = sweep(h, 0.5 * h, sum);
        sum += odd;
        h *= 0.5;
        estimate = h * sum;
        err = std::abs(estimate - previous);
        if (level >= 3 && err <= rel_tol * std::abs(estimate)) return {estimate, err, evals};
        if (level >= 3 && estimate == 0.0 && err == 0.0) return {0.0, 0.0, evals};
        previous = estimate;
    }
    throw QuadratureError("quad_semi_infinite: refinement did not converge", {estimate, err, evals});
}

SeriesResult series_sum(const std::function<double(std::int64_t)>& term,
                        const std::function<double(std::int64_t)>& tail_bound, double tol, std::int64_t n0,
                        std::int64_t max_terms)
{
    if (!(tol > 0.0)) throw DomainError("series_sum: tolerance must be positive");
    SeriesResult r;
    double compensation = 0.0; // Kahan
    double claimed = tail_bound(n0 - 1);
    for (std::int64_t n = n0;; ++n) {
        if (r.terms >= max_terms) throw NumericError("series_sum: term budget exhausted");
        double t = term(n);
        if (std::abs(t) > claimed * (1.0 + 1e-12) + 1e-300) {
            throw NumericError("series_sum: term exceeds the supplied tail bound at n=" + std::to_string(n));
        }
        double y = t - compensation;
        double s = r.value + y;
        compensation = (s - r.value) - y;
        r.value = s;
        ++r.terms;
        claimed = tail_bound(n);
        if (claimed <= tol) {
            // one look-ahead term must respect the bound we stop on
            if (std::abs(term(n + 1)) > claimed * (1.0 + 1e-12) + 1e-300) {
                throw NumericError("series_sum: term exceeds the supplied tail bound at n=" + std::to_string(n + 1));
            }
            r.remainder_bound = claimed;
            return r;
        }
    }
}

double central_difference(const std::function<double(double)>& f, double x, double h)
{
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

} // namespace mdf::numerics
