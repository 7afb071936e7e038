#pragma once

#include "mdf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace mdf::numerics {

using Integrand = std::function<double(double)>;

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
};

// Thrown when a quadrature runs out of budget; carries the best estimate.
class QuadratureError : public NumericError {
public:
    QuadratureError(const std::string& what, QuadratureResult best)
        : NumericError(what), best_(best) {}
    const QuadratureResult& best() const { return best_; }

private:
    QuadratureResult best_;
};

/// Globally adaptive 21-point Gauss-Kronrod quadrature on [a, b].
/// Converges when the summed error estimate is at most
/// max(rel_tol * |I|, abs_tol).
QuadratureResult quad_finite(const Integrand& f, double a, double b, double rel_tol = 1e-12,
                             double abs_tol = 0.0, int max_subintervals = 4000);

/// Integral over [a, inf) by the exp-sinh double-exponential map
/// x = a + scale * exp(pi/2 sinh s) with trapezoid level refinement.
/// The outer tail is walked until the weighted terms become negligible;
/// an integrand that has not decayed by the map's range limit is reported
/// as a NumericError.
QuadratureResult quad_semi_infinite(const Integrand& f, double a, double rel_tol = 1e-12,
                                    double scale = 1.0);

// ---------------------------------------------------------------------------
// Monte-Carlo

struct McResult {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

template <class Point>
struct McSample {
    Point point;
    double density; // probability density of `point` under the sampler
};

/// Engine for partition `index` of a run seeded with `seed`.  Streams of
/// different partitions are decorrelated through std::seed_seq.
inline std::mt19937_64 partition_engine(std::uint64_t seed, std::uint32_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      index, 0x6d646675u};
    return std::mt19937_64(seq);
}

/// Importance-sampled estimate of the integral of f, E[f(X)/p(X)] with
/// X drawn by `sampler(engine)`.  The sample count is split into
/// `partitions` deterministic streams; the result depends only on
/// (seed, n, partitions), never on `threads`.
template <class F, class Sampler>
McResult mc_integrate(F f, Sampler sampler, std::uint64_t n, std::uint64_t seed,
                      std::uint32_t partitions = 8, unsigned threads = 0)
{
    if (n == 0) throw DomainError("mc_integrate: zero samples");
    if (partitions == 0) partitions = 1;

    struct Partial {
        double mean = 0.0;
        double m2 = 0.0;
        std::uint64_t count = 0;
        bool bad_density = false;
    };
    std::vector<Partial> parts(partitions);

    auto run_partition = [&](std::uint32_t p) {
        std::uint64_t count = n / partitions + (p < n % partitions ? 1 : 0);
        auto engine = partition_engine(seed, p);
        Partial acc;
        for (std::uint64_t i = 0; i < count; ++i) {
            auto s = sampler(engine);
            if (!(s.density > 0.0) || !std::isfinite(s.density)) {
                acc.bad_density = true;
                break;
            }
            double w = f(s.point) / s.density;
            ++acc.count;
            double delta = w - acc.mean;
            acc.mean += delta / static_cast<double>(acc.count);
            acc.m2 += delta * (w - acc.mean);
        }
        parts[p] = acc;
    };

    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = std::min<unsigned>(workers, partitions);
    if (workers <= 1) {
        for (std::uint32_t p = 0; p < partitions; ++p) run_partition(p);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::uint32_t p = w; p < partitions; p += workers) run_partition(p);
            });
        }
        for (auto& t : pool) t.join();
    }

    // Chan et al. pairwise combination in fixed partition order.
    Partial total;
    for (const auto& part : parts) {
        if (part.bad_density) throw DomainError("mc_integrate: sampler returned a non-positive density");
        if (part.count == 0) continue;
        if (total.count == 0) {
            total = part;
            continue;
        }
        double na = static_cast<double>(total.count);
        double nb = static_cast<double>(part.count);
        double delta = part.mean - total.mean;
        total.mean += delta * nb / (na + nb);
        total.m2 += part.m2 + delta * delta * na * nb / (na + nb);
        total.count += part.count;
    }
    McResult r;
    r.value = total.mean;
    r.samples = total.count;
    r.seed = seed;
    double variance = total.count > 1 ? total.m2 / static_cast<double>(total.count - 1) : 0.0;
    r.std_error = std::sqrt(variance / static_cast<double>(total.count));
    return r;
}

// ---------------------------------------------------------------------------
// Series

struct SeriesResult {
    double value = 0.0;
    double remainder_bound = 0.0;
    std::int64_t terms = 0;
};

/// Sums term(n0), term(n0+1), ... until tail_bound(N) -- an upper bound on
/// the sum of |term(n)| for n > N -- drops to tol.  A single term larger
/// than the bound that was claimed to cover it is a bound violation.
SeriesResult series_sum(const std::function<double(std::int64_t)>& term,
                        const std::function<double(std::int64_t)>& tail_bound, double tol,
                        std::int64_t n0 = 1, std::int64_t max_terms = 100'000'000);

// ---------------------------------------------------------------------------
// Finite differences

/// Fourth-order central difference of f at x with step h.
double central_difference(const std::function<double(double)>& f, double x, double h);

// ---------------------------------------------------------------------------
// Sinusoid fitting

struct SinusoidComponent {
    double frequency = 0.0; // angular
    double amplitude = 0.0;
    double phase = 0.0; // y = A cos(w t + phase)
};

struct SinusoidFit {
    std::vector<SinusoidComponent> components; // descending frequency
    double rms_residual = 0.0;
    double condition = 0.0; // of the final linear design matrix
    int iterations = 0;
};

/// Nonlinear least-squares fit of k sinusoids to uniformly sampled data.
/// Prony linear prediction supplies the starting frequencies, Gauss-Newton
/// with variable projection refines them.
SinusoidFit sinusoid_fit(std::span<const double> t, std::span<const double> y, int k);

} // namespace mdf::numerics
